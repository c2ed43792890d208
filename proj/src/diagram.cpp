#include "hkh/diagram.hpp"

#include "hkh/error.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>

namespace hkh {

namespace {

// Union-find over GF(2) unknowns with relations x_a + x_b = p.
class ParityUnionFind {
public:
    explicit ParityUnionFind(std::size_t n) : parent_(n), parity_(n, 0) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::pair<std::size_t, int> find(std::size_t v)
    {
        int p = 0;
        std::size_t r = v;
        while (parent_[r] != r) {
            p ^= parity_[r];
            r = parent_[r];
        }
        // path compression
        std::size_t cur = v;
        int acc = p;
        while (parent_[cur] != cur) {
            const std::size_t next = parent_[cur];
            const int step = parity_[cur];
            parent_[cur] = r;
            parity_[cur] = acc;
            acc ^= step;
            cur = next;
        }
        return {r, p};
    }

    // Returns false on contradiction.
    bool relate(std::size_t a, std::size_t b, int p)
    {
        auto [ra, pa] = find(a);
        auto [rb, pb] = find(b);
        if (ra == rb)
            return (pa ^ pb) == p;
        parent_[ra] = rb;
        parity_[ra] = pa ^ pb ^ p;
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<int> parity_;
};

struct EndRef {
    int crossing;
    int slot;
};

// Edge id -> its (up to) two crossing slots, in crossing/slot order.
std::map<int, std::vector<EndRef>> edge_ends(const Diagram& d)
{
    std::map<int, std::vector<EndRef>> ends;
    for (const Edge& e : d.edges)
        ends[e.id];
    for (std::size_t c = 0; c < d.crossings.size(); ++c)
        for (int k = 0; k < 4; ++k) {
            auto it = ends.find(d.crossings[c].slots[static_cast<std::size_t>(k)]);
            if (it != ends.end())
                it->second.push_back({static_cast<int>(c), k});
        }
    return ends;
}

// The end at slot k is the edge's head iff head_const(k) + (has_var(k) ? x_c : 0),
// where x_c = 1 means the crossing is positive.
int head_const(int k) { return (k == 0 || k == 1) ? 1 : 0; }
bool head_var(int k) { return k == 1 || k == 3; }

// Infers all signs; appends orientation violations to `out`. Requires the
// edge-degree structure to be sound.
std::vector<int> infer_signs(const Diagram& d, std::vector<Violation>* out)
{
    const std::size_t n = d.crossings.size();
    const std::size_t one = n;  // constant node, value 1
    ParityUnionFind uf(n + 1);
    bool ok = true;
    auto fail = [&](const std::string& msg) {
        ok = false;
        if (out)
            out->push_back({"orientation", msg});
    };

    for (std::size_t c = 0; c < n; ++c) {
        const int s = d.crossings[c].sign;
        if (s == 1 || s == -1)
            if (!uf.relate(c, one, s == 1 ? 0 : 1))
                fail("crossing " + std::to_string(d.crossings[c].id) + ": sign contradicts edge directions");
    }
    for (const auto& [id, ends] : edge_ends(d)) {
        if (ends.size() != 2)
            continue;
        const EndRef& e1 = ends[0];
        const EndRef& e2 = ends[1];
        const int rhs = head_const(e1.slot) ^ head_const(e2.slot) ^ 1;
        const bool v1 = head_var(e1.slot), v2 = head_var(e2.slot);
        bool consistent = true;
        if (v1 && v2)
            consistent = uf.relate(static_cast<std::size_t>(e1.crossing), static_cast<std::size_t>(e2.crossing), rhs);
        else if (v1)
            consistent = uf.relate(static_cast<std::size_t>(e1.crossing), one, rhs ^ 1);
        else if (v2)
            consistent = uf.relate(static_cast<std::size_t>(e2.crossing), one, rhs ^ 1);
        else
            consistent = rhs == 0;
        if (!consistent)
            fail("edge " + std::to_string(id) + ": needs exactly one incoming and one outgoing end");
    }
    if (!ok)
        return {};

    // Free components: make their lowest crossing positive.
    const auto [one_root, one_parity] = uf.find(one);
    std::map<std::size_t, int> root_value;
    root_value[one_root] = 1 ^ one_parity;
    std::vector<int> signs(n);
    for (std::size_t c = 0; c < n; ++c) {
        const auto [r, p] = uf.find(c);
        auto it = root_value.find(r);
        if (it == root_value.end())
            it = root_value.emplace(r, 1 ^ p).first;
        signs[c] = (it->second ^ p) ? 1 : -1;
    }
    return signs;
}

}  // namespace

std::vector<Violation> validate(const Diagram& d)
{
    std::vector<Violation> out;
    if (d.genus < 0)
        out.push_back({"bad-genus", "genus must be nonnegative"});

    std::map<int, int> edge_ids, crossing_ids;
    for (const Edge& e : d.edges)
        if (++edge_ids[e.id] == 2)
            out.push_back({"duplicate-id", "edge id " + std::to_string(e.id) + " is used more than once"});
    for (const Crossing& c : d.crossings)
        if (++crossing_ids[c.id] == 2)
            out.push_back({"duplicate-id", "crossing id " + std::to_string(c.id) + " is used more than once"});

    for (const Crossing& c : d.crossings) {
        if (c.sign < -1 || c.sign > 1)
            out.push_back({"bad-sign", "crossing " + std::to_string(c.id) + ": sign must be -1, 0 or +1"});
        for (int k = 0; k < 4; ++k)
            if (!edge_ids.count(c.slots[static_cast<std::size_t>(k)]))
                out.push_back({"dangling-edge", "crossing " + std::to_string(c.id) + " slot " + std::to_string(k) +
                                                    " references missing edge " +
                                                    std::to_string(c.slots[static_cast<std::size_t>(k)])});
    }

    bool degrees_ok = true;
    for (const auto& [id, ends] : edge_ends(d))
        if (ends.size() != 2) {
            degrees_ok = false;
            out.push_back({"degree", "edge " + std::to_string(id) + " appears " + std::to_string(ends.size()) +
                                         " times at crossings (expected 2)"});
        }

    auto check_word = [&](const Word& w, const std::string& where) {
        for (Letter l : w.letters)
            if (l.handle() > d.genus) {
                out.push_back({"malformed-word", where + ": letter with handle " + std::to_string(l.handle()) +
                                                     " exceeds genus " + std::to_string(d.genus)});
                return;
            }
    };
    for (const Edge& e : d.edges)
        check_word(e.word, "edge " + std::to_string(e.id));
    for (std::size_t i = 0; i < d.free_loops.size(); ++i)
        check_word(d.free_loops[i], "free loop " + std::to_string(i));

    if (out.empty() && degrees_ok)
        infer_signs(d, &out);
    return out;
}

Diagram oriented(const Diagram& d)
{
    const auto violations = validate(d);
    if (!violations.empty())
        throw Error(ErrorKind::precondition_violation, "invalid diagram: " + violations.front().message);
    Diagram out = d;
    const auto signs = infer_signs(d, nullptr);
    for (std::size_t c = 0; c < out.crossings.size(); ++c)
        out.crossings[c].sign = signs[c];
    return out;
}

Topology::Topology(const Diagram& input)
{
    const Diagram d = oriented(input);
    genus_ = d.genus;
    std::map<int, int> index;
    for (std::size_t e = 0; e < d.edges.size(); ++e) {
        index[d.edges[e].id] = static_cast<int>(e);
        words_.push_back(d.edges[e].word);
    }
    tails_.assign(words_.size(), {});
    heads_.assign(words_.size(), {});
    for (std::size_t c = 0; c < d.crossings.size(); ++c) {
        const Crossing& x = d.crossings[c];
        signs_.push_back(x.sign);
        std::array<int, 4> se{};
        std::array<bool, 4> sh{};
        for (int k = 0; k < 4; ++k) {
            const int e = index.at(x.slots[static_cast<std::size_t>(k)]);
            const bool is_head = (head_const(k) ^ (head_var(k) && x.sign == 1 ? 1 : 0)) != 0;
            se[static_cast<std::size_t>(k)] = e;
            sh[static_cast<std::size_t>(k)] = is_head;
            (is_head ? heads_ : tails_)[static_cast<std::size_t>(e)] = {static_cast<int>(c), k};
        }
        slot_edge_.push_back(se);
        slot_head_.push_back(sh);
    }
    free_loops_ = d.free_loops;
}

CrossingSigns crossing_signs(const Diagram& d)
{
    const Topology t(d);
    CrossingSigns out;
    for (int c = 0; c < t.crossing_count(); ++c) {
        out.signs.push_back(t.sign(c));
        (t.sign(c) > 0 ? out.n_plus : out.n_minus)++;
    }
    return out;
}

std::optional<SourceSink> source_sink_structure(const Diagram& d)
{
    const Topology t(d);
    // x_c = 1: slots 0 and 2 are incoming under the source-sink orientation.
    ParityUnionFind uf(static_cast<std::size_t>(t.crossing_count()));
    for (int e = 0; e < t.edge_count(); ++e) {
        const EdgeEnd a = t.tail(e), b = t.head(e);
        if (!uf.relate(static_cast<std::size_t>(a.crossing), static_cast<std::size_t>(b.crossing),
                       1 ^ (a.slot & 1) ^ (b.slot & 1)))
            return std::nullopt;
    }
    SourceSink s;
    for (int e = 0; e < t.edge_count(); ++e) {
        const EdgeEnd h = t.head(e);
        const int x = uf.find(static_cast<std::size_t>(h.crossing)).second;
        s.forward.push_back(((x ^ (h.slot & 1)) & 1) != 0);
    }
    return s;
}

SourceSink flipped(const SourceSink& s)
{
    SourceSink out;
    for (bool f : s.forward)
        out.forward.push_back(!f);
    return out;
}

Diagram reverse_orientation(const Diagram& input)
{
    Diagram d = oriented(input);
    for (Edge& e : d.edges)
        e.word = e.word.inverse();
    for (Crossing& c : d.crossings)
        c.slots = {c.slots[2], c.slots[3], c.slots[0], c.slots[1]};
    for (Word& w : d.free_loops)
        w = w.inverse();
    return d;
}

Diagram mirror(const Diagram& input)
{
    Diagram d = oriented(input);
    for (Crossing& c : d.crossings) {
        if (c.sign > 0)
            c.slots = {c.slots[3], c.slots[0], c.slots[1], c.slots[2]};
        else
            c.slots = {c.slots[1], c.slots[2], c.slots[3], c.slots[0]};
        c.sign = -c.sign;
    }
    return d;
}

bool isomorphic(const Diagram& a, const Diagram& b)
{
    if (a.genus != b.genus || a.edges.size() != b.edges.size() || a.crossings.size() != b.crossings.size() ||
        a.free_loops.size() != b.free_loops.size())
        return false;
    auto la = a.free_loops, lb = b.free_loops;
    std::sort(la.begin(), la.end());
    std::sort(lb.begin(), lb.end());
    if (la != lb)
        return false;

    const Topology ta(a), tb(b);
    const int n = ta.crossing_count();
    std::vector<int> cmap(static_cast<std::size_t>(n), -1), cused(static_cast<std::size_t>(n), 0);
    std::vector<int> emap(static_cast<std::size_t>(ta.edge_count()), -1);

    // Grows a crossing correspondence from (start, image); all-or-nothing.
    auto try_extend = [&](int start, int image) {
        auto cm = cmap;
        auto cu = cused;
        auto em = emap;
        std::deque<std::pair<int, int>> queue{{start, image}};
        cm[static_cast<std::size_t>(start)] = image;
        cu[static_cast<std::size_t>(image)] = 1;
        while (!queue.empty()) {
            auto [c1, c2] = queue.front();
            queue.pop_front();
            if (ta.sign(c1) != tb.sign(c2))
                return false;
            for (int k = 0; k < 4; ++k) {
                const int e1 = ta.slot_edge(c1, k), e2 = tb.slot_edge(c2, k);
                if (ta.edge_word(e1) != tb.edge_word(e2))
                    return false;
                int& m = em[static_cast<std::size_t>(e1)];
                if (m != -1 && m != e2)
                    return false;
                m = e2;
                const EdgeEnd o1 = ta.slot_is_head(c1, k) ? ta.tail(e1) : ta.head(e1);
                const EdgeEnd o2 = tb.slot_is_head(c2, k) ? tb.tail(e2) : tb.head(e2);
                if (o1.slot != o2.slot)
                    return false;
                int& mc = cm[static_cast<std::size_t>(o1.crossing)];
                if (mc == -1) {
                    if (cu[static_cast<std::size_t>(o2.crossing)])
                        return false;
                    mc = o2.crossing;
                    cu[static_cast<std::size_t>(o2.crossing)] = 1;
                    queue.emplace_back(o1.crossing, o2.crossing);
                } else if (mc != o2.crossing) {
                    return false;
                }
            }
        }
        cmap = std::move(cm);
        cused = std::move(cu);
        emap = std::move(em);
        return true;
    };

    for (int c = 0; c < n; ++c) {
        if (cmap[static_cast<std::size_t>(c)] != -1)
            continue;
        bool matched = false;
        for (int c2 = 0; c2 < n && !matched; ++c2)
            if (!cused[static_cast<std::size_t>(c2)])
                matched = try_extend(c, c2);
        if (!matched)
            return false;
    }
    return true;
}

int component_count(const Diagram& d)
{
    const Topology t(d);
    std::vector<int> parent(static_cast<std::size_t>(t.edge_count()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v)
            v = parent[static_cast<std::size_t>(v)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])];
        return v;
    };
    for (int c = 0; c < t.crossing_count(); ++c)
        for (int k = 0; k < 2; ++k)
            parent[static_cast<std::size_t>(find(t.slot_edge(c, k)))] = find(t.slot_edge(c, k + 2));
    int count = static_cast<int>(t.free_loops().size());
    for (int e = 0; e < t.edge_count(); ++e)
        if (find(e) == e)
            ++count;
    return count;
}

}  // namespace hkh
