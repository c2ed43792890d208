#include "hkh/moves.hpp"

#include "hkh/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace hkh {

namespace {

int next_edge_id(const Diagram& d)
{
    int m = -1;
    for (const Edge& e : d.edges)
        m = std::max(m, e.id);
    return m + 1;
}

int next_crossing_id(const Diagram& d)
{
    int m = -1;
    for (const Crossing& c : d.crossings)
        m = std::max(m, c.id);
    return m + 1;
}

std::size_t edge_index(const Diagram& d, int id)
{
    for (std::size_t i = 0; i < d.edges.size(); ++i)
        if (d.edges[i].id == id)
            return i;
    throw Error(ErrorKind::pattern_mismatch, "no edge with id " + std::to_string(id));
}

int crossing_index(const Diagram& d, int id)
{
    for (std::size_t i = 0; i < d.crossings.size(); ++i)
        if (d.crossings[i].id == id)
            return static_cast<int>(i);
    throw Error(ErrorKind::pattern_mismatch, "no crossing with id " + std::to_string(id));
}

Word slice(const Word& w, std::size_t from, std::size_t to)
{
    return Word(std::vector<Letter>(w.letters.begin() + static_cast<std::ptrdiff_t>(from),
                                    w.letters.begin() + static_cast<std::ptrdiff_t>(to)));
}

// Compass directions in counterclockwise order.
enum Dir { east = 0, north = 1, west = 2, south = 3 };

struct Arm {
    int edge = -1;
    bool incoming = false;
};

// Builds a PD crossing from the four arms around it; `under_horizontal`
// says whether the understrand runs east-west.
Crossing make_crossing(int id, const std::array<Arm, 4>& arms, bool under_horizontal)
{
    int start = -1;
    for (int dir : under_horizontal ? std::array<int, 2>{east, west} : std::array<int, 2>{north, south})
        if (arms[static_cast<std::size_t>(dir)].incoming)
            start = dir;
    Crossing c;
    c.id = id;
    for (int k = 0; k < 4; ++k)
        c.slots[static_cast<std::size_t>(k)] = arms[static_cast<std::size_t>((start + k) % 4)].edge;
    c.sign = arms[static_cast<std::size_t>((start + 3) % 4)].incoming ? 1 : -1;
    return c;
}

void redirect_slot(Diagram& d, EdgeEnd end, int new_edge)
{
    d.crossings[static_cast<std::size_t>(end.crossing)].slots[static_cast<std::size_t>(end.slot)] = new_edge;
}

// Deletes the given crossings, joining the strands that ran through them.
// Strands that close up entirely inside the removed set become free loops.
Diagram splice_out(const Diagram& d, const std::set<int>& removed)
{
    const Topology t(d);
    const auto is_removed = [&](int c) { return removed.count(c) > 0; };
    std::vector<bool> visited(static_cast<std::size_t>(t.edge_count()), false);
    auto successor = [&](int e) {
        const EdgeEnd h = t.head(e);
        return t.slot_edge(h.crossing, (h.slot + 2) % 4);
    };

    Diagram out;
    out.genus = d.genus;
    out.free_loops = d.free_loops;
    std::map<std::pair<int, int>, int> slot_updates;
    for (int e = 0; e < t.edge_count(); ++e) {
        if (is_removed(t.tail(e).crossing))
            continue;
        visited[static_cast<std::size_t>(e)] = true;
        Word w = t.edge_word(e);
        int cur = e;
        while (is_removed(t.head(cur).crossing)) {
            cur = successor(cur);
            visited[static_cast<std::size_t>(cur)] = true;
            w = w * t.edge_word(cur);
        }
        const EdgeEnd h = t.head(cur);
        slot_updates[{h.crossing, h.slot}] = d.edges[static_cast<std::size_t>(e)].id;
        out.edges.push_back({d.edges[static_cast<std::size_t>(e)].id, std::move(w)});
    }
    for (int e = 0; e < t.edge_count(); ++e) {
        if (visited[static_cast<std::size_t>(e)])
            continue;
        Word w;
        int cur = e;
        do {
            visited[static_cast<std::size_t>(cur)] = true;
            w = w * t.edge_word(cur);
            cur = successor(cur);
        } while (cur != e);
        out.free_loops.push_back(std::move(w));
    }
    for (int c = 0; c < t.crossing_count(); ++c) {
        if (is_removed(c))
            continue;
        Crossing x = d.crossings[static_cast<std::size_t>(c)];
        for (int k = 0; k < 4; ++k) {
            auto it = slot_updates.find({c, k});
            if (it != slot_updates.end())
                x.slots[static_cast<std::size_t>(k)] = it->second;
        }
        out.crossings.push_back(x);
    }
    return out;
}

Diagram apply_r1_add(Diagram d, const MoveSpec& m)
{
    if (m.sign != 1 && m.sign != -1)
        throw Error(ErrorKind::pattern_mismatch, "R1 sign must be +1 or -1");
    const int fresh = next_edge_id(d);
    const int loop = fresh + 1;
    int in = -1, out = -1;
    if (m.free_loop >= 0) {
        if (static_cast<std::size_t>(m.free_loop) >= d.free_loops.size())
            throw Error(ErrorKind::pattern_mismatch, "no free loop " + std::to_string(m.free_loop));
        const Word w = d.free_loops[static_cast<std::size_t>(m.free_loop)];
        d.free_loops.erase(d.free_loops.begin() + m.free_loop);
        d.edges.push_back({fresh, w});
        in = out = fresh;
    } else {
        const Topology t(d);
        const std::size_t idx = edge_index(d, m.edge);
        const Word w = d.edges[idx].word;
        if (m.split > w.size())
            throw Error(ErrorKind::pattern_mismatch, "split point beyond the edge word");
        redirect_slot(d, t.head(static_cast<int>(idx)), fresh);
        d.edges[idx].word = slice(w, 0, m.split);
        d.edges.push_back({fresh, slice(w, m.split, w.size())});
        in = m.edge;
        out = fresh;
    }
    d.edges.push_back({loop, Word{}});

    Crossing x;
    x.id = next_crossing_id(d);
    x.sign = m.sign;
    if (m.under_first)
        x.slots = m.sign > 0 ? std::array<int, 4>{in, out, loop, loop} : std::array<int, 4>{in, loop, loop, out};
    else
        x.slots = m.sign > 0 ? std::array<int, 4>{loop, loop, out, in} : std::array<int, 4>{loop, in, out, loop};
    d.crossings.push_back(x);
    return d;
}

Diagram apply_r1_remove(const Diagram& d, const MoveSpec& m)
{
    if (m.crossings.empty())
        throw Error(ErrorKind::pattern_mismatch, "R1 removal needs a crossing");
    const int c = crossing_index(d, m.crossings[0]);
    const Topology t(d);
    int loop = -1;
    bool decorated = false;
    for (int k = 0; k < 4; ++k) {
        const int e = t.slot_edge(c, k);
        if (e != t.slot_edge(c, (k + 1) % 4))
            continue;
        if (t.edge_word(e).empty()) {
            loop = e;
            break;
        }
        decorated = true;
    }
    if (loop < 0) {
        if (decorated)
            throw Error(ErrorKind::nonlocal_words, "the kink loop at crossing " + std::to_string(m.crossings[0]) +
                                                       " carries a word");
        throw Error(ErrorKind::pattern_mismatch, "crossing " + std::to_string(m.crossings[0]) + " is not a kink");
    }
    return splice_out(d, {c});
}

Diagram apply_r2_add(Diagram d, const MoveSpec& m)
{
    if (m.edges.size() != 2 || m.edges[0] == m.edges[1])
        throw Error(ErrorKind::pattern_mismatch, "R2 addition needs two distinct edges");
    const Topology t(d);
    const std::size_t ei = edge_index(d, m.edges[0]);
    const std::size_t fi = edge_index(d, m.edges[1]);
    const Word we = d.edges[ei].word, wf = d.edges[fi].word;
    if (m.split > we.size() || m.split_under > wf.size())
        throw Error(ErrorKind::pattern_mismatch, "split point beyond the edge word");

    const int e = m.edges[0], f = m.edges[1];
    const int base = next_edge_id(d);
    const int e_b = base, m_e = base + 1, f_b = base + 2, m_f = base + 3;
    redirect_slot(d, t.head(static_cast<int>(ei)), e_b);
    redirect_slot(d, t.head(static_cast<int>(fi)), f_b);
    d.edges[ei].word = slice(we, 0, m.split);
    d.edges[fi].word = slice(wf, 0, m.split_under);
    d.edges.push_back({e_b, slice(we, m.split, we.size())});
    d.edges.push_back({m_e, Word{}});
    d.edges.push_back({f_b, slice(wf, m.split_under, wf.size())});
    d.edges.push_back({m_f, Word{}});

    // The understrand f runs east; the overstrand e dips across it from the
    // north (left of f) or the south.
    std::array<Arm, 4> x1{}, x2{};
    x1[west] = {f, true};
    x1[east] = {m_f, false};
    x2[west] = {m_f, true};
    x2[east] = {f_b, false};
    const int near = m.left ? north : south;
    const int far = m.left ? south : north;
    auto& first = m.parallel ? x1 : x2;
    auto& second = m.parallel ? x2 : x1;
    first[static_cast<std::size_t>(near)] = {e, true};
    first[static_cast<std::size_t>(far)] = {m_e, false};
    second[static_cast<std::size_t>(far)] = {m_e, true};
    second[static_cast<std::size_t>(near)] = {e_b, false};

    const int cid = next_crossing_id(d);
    d.crossings.push_back(make_crossing(cid, x1, true));
    d.crossings.push_back(make_crossing(cid + 1, x2, true));
    return d;
}

Diagram apply_r2_remove(const Diagram& d, const MoveSpec& m)
{
    if (m.crossings.size() != 2 || m.crossings[0] == m.crossings[1])
        throw Error(ErrorKind::pattern_mismatch, "R2 removal needs two distinct crossings");
    const int a = crossing_index(d, m.crossings[0]);
    const int b = crossing_index(d, m.crossings[1]);
    const Topology t(d);
    if (t.sign(a) == t.sign(b))
        throw Error(ErrorKind::pattern_mismatch, "R2 crossings must have opposite signs");

    auto slot_of = [&](int c, int e, int parity) {
        for (int k = parity; k < 4; k += 2)
            if (t.slot_edge(c, k) == e)
                return k;
        return -1;
    };
    bool decorated = false;
    for (int over = 0; over < t.edge_count(); ++over) {
        const int a_over = slot_of(a, over, 1), b_over = slot_of(b, over, 1);
        if (a_over < 0 || b_over < 0)
            continue;
        for (int under = 0; under < t.edge_count(); ++under) {
            const int a_under = slot_of(a, under, 0), b_under = slot_of(b, under, 0);
            if (a_under < 0 || b_under < 0)
                continue;
            const bool face = (a_under == (a_over + 1) % 4 && b_over == (b_under + 1) % 4) ||
                              (a_under == (a_over + 3) % 4 && b_over == (b_under + 3) % 4);
            if (!face)
                continue;
            if (!t.edge_word(over).empty() || !t.edge_word(under).empty()) {
                decorated = true;
                continue;
            }
            return splice_out(d, {a, b});
        }
    }
    if (decorated)
        throw Error(ErrorKind::nonlocal_words, "the bigon between the two crossings carries a word");
    throw Error(ErrorKind::pattern_mismatch, "crossings do not bound an R2 bigon");
}

Diagram apply_r3(const Diagram& d, const MoveSpec& m)
{
    if (m.crossings.size() != 3)
        throw Error(ErrorKind::pattern_mismatch, "R3 needs three crossings");
    const std::array<int, 3> cs{crossing_index(d, m.crossings[0]), crossing_index(d, m.crossings[1]),
                                crossing_index(d, m.crossings[2])};
    if (cs[0] == cs[1] || cs[1] == cs[2] || cs[0] == cs[2])
        throw Error(ErrorKind::pattern_mismatch, "R3 crossings must be distinct");
    const Topology t(d);

    // Candidate sides: edges joining cs[i] and cs[i+1], with their slots.
    struct Side {
        int edge;
        int slot_from;  // at cs[i]
        int slot_to;    // at cs[i+1]
    };
    std::array<std::vector<Side>, 3> sides;
    for (int i = 0; i < 3; ++i) {
        const int p = cs[static_cast<std::size_t>(i)], q = cs[static_cast<std::size_t>((i + 1) % 3)];
        for (int e = 0; e < t.edge_count(); ++e) {
            const EdgeEnd u = t.tail(e), v = t.head(e);
            if (u.crossing == p && v.crossing == q)
                sides[static_cast<std::size_t>(i)].push_back({e, u.slot, v.slot});
            else if (u.crossing == q && v.crossing == p)
                sides[static_cast<std::size_t>(i)].push_back({e, v.slot, u.slot});
        }
    }

    bool decorated = false;
    for (const Side& s0 : sides[0])
        for (const Side& s1 : sides[1])
            for (const Side& s2 : sides[2]) {
                const std::array<Side, 3> tri{s0, s1, s2};
                if (s0.edge == s1.edge || s1.edge == s2.edge || s0.edge == s2.edge)
                    continue;
                // At corner i the incoming side is tri[i-1] (slot_to), the outgoing tri[i] (slot_from).
                bool ok = true;
                int orientation = 0;
                for (int i = 0; i < 3 && ok; ++i) {
                    const int in_slot = tri[static_cast<std::size_t>((i + 2) % 3)].slot_to;
                    const int out_slot = tri[static_cast<std::size_t>(i)].slot_from;
                    const int diff = (out_slot - in_slot + 4) % 4;
                    if (diff != 1 && diff != 3)
                        ok = false;
                    else if (orientation == 0)
                        orientation = diff;
                    else if (orientation != diff)
                        ok = false;
                }
                if (!ok)
                    continue;
                // Some strand must pass over at both of its crossings.
                bool has_top = false;
                for (const Side& s : tri)
                    if ((s.slot_from & 1) && (s.slot_to & 1))
                        has_top = true;
                if (!has_top)
                    continue;
                if (!t.edge_word(s0.edge).empty() || !t.edge_word(s1.edge).empty() ||
                    !t.edge_word(s2.edge).empty()) {
                    decorated = true;
                    continue;
                }

                // Slide: at each end of a side, the side's slot takes the
                // external edge from the strand's other crossing, and the
                // old external slot becomes the side.
                Diagram out = d;
                for (int i = 0; i < 3; ++i) {
                    const Side& s = tri[static_cast<std::size_t>(i)];
                    const int p = cs[static_cast<std::size_t>(i)], q = cs[static_cast<std::size_t>((i + 1) % 3)];
                    const int p_ext = (s.slot_from + 2) % 4, q_ext = (s.slot_to + 2) % 4;
                    const int id = d.edges[static_cast<std::size_t>(s.edge)].id;
                    auto& ps = out.crossings[static_cast<std::size_t>(p)].slots;
                    auto& qs = out.crossings[static_cast<std::size_t>(q)].slots;
                    const auto& old_ps = d.crossings[static_cast<std::size_t>(p)].slots;
                    const auto& old_qs = d.crossings[static_cast<std::size_t>(q)].slots;
                    ps[static_cast<std::size_t>(s.slot_from)] = old_qs[static_cast<std::size_t>(q_ext)];
                    ps[static_cast<std::size_t>(p_ext)] = id;
                    qs[static_cast<std::size_t>(s.slot_to)] = old_ps[static_cast<std::size_t>(p_ext)];
                    qs[static_cast<std::size_t>(q_ext)] = id;
                }
                return out;
            }
    if (decorated)
        throw Error(ErrorKind::nonlocal_words, "the R3 triangle carries a word");
    throw Error(ErrorKind::pattern_mismatch, "crossings do not bound an R3 triangle");
}

bool parse_bool(const std::string& v)
{
    if (v == "1" || v == "true" || v == "yes")
        return true;
    if (v == "0" || v == "false" || v == "no")
        return false;
    throw Error(ErrorKind::parse_error, "expected a boolean, got \"" + v + "\"");
}

int parse_int(const std::string& v)
{
    try {
        std::size_t pos = 0;
        const int x = std::stoi(v, &pos);
        if (pos != v.size())
            throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw Error(ErrorKind::parse_error, "expected an integer, got \"" + v + "\"");
    }
}

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

std::string join(const std::vector<int>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

Diagram apply_move(const Diagram& input, const MoveSpec& m)
{
    const Diagram d = oriented(input);
    switch (m.kind) {
    case MoveKind::r1_add: return apply_r1_add(d, m);
    case MoveKind::r1_remove: return apply_r1_remove(d, m);
    case MoveKind::r2_add: return apply_r2_add(d, m);
    case MoveKind::r2_remove: return apply_r2_remove(d, m);
    case MoveKind::r3: return apply_r3(d, m);
    }
    return d;
}

std::string to_string(const MoveSpec& m)
{
    std::ostringstream out;
    switch (m.kind) {
    case MoveKind::r1_add:
        out << "r1+:";
        if (m.free_loop >= 0)
            out << "loop=" << m.free_loop;
        else
            out << "edge=" << m.edge;
        out << ";sign=" << (m.sign > 0 ? "+" : "-") << ";style=" << (m.under_first ? "under" : "over")
            << ";split=" << m.split;
        break;
    case MoveKind::r1_remove: out << "r1-:crossing=" << (m.crossings.empty() ? -1 : m.crossings[0]); break;
    case MoveKind::r2_add:
        out << "r2+:edges=" << join(m.edges) << ";side=" << (m.left ? "left" : "right")
            << ";parallel=" << (m.parallel ? 1 : 0) << ";split=" << m.split << ";split_under=" << m.split_under;
        break;
    case MoveKind::r2_remove: out << "r2-:crossings=" << join(m.crossings); break;
    case MoveKind::r3: out << "r3:crossings=" << join(m.crossings); break;
    }
    return out.str();
}

std::vector<MoveSpec> parse_moves(std::string_view text)
{
    std::vector<MoveSpec> moves;
    // which list-valued parameter of moves.back() a bare number extends
    enum { none, edge_list, crossing_list } last_list = none;

    auto apply_params = [&](MoveSpec& m, const std::string& params) {
        std::size_t p = 0;
        while (p <= params.size()) {
            const std::size_t semi = std::min(params.find(';', p), params.size());
            const std::string kv = trim(std::string_view(params).substr(p, semi - p));
            p = semi + 1;
            if (kv.empty())
                continue;
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos)
                throw Error(ErrorKind::parse_error, "expected key=value in \"" + kv + "\"");
            const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
            if (key == "edge")
                m.edge = parse_int(value);
            else if (key == "loop")
                m.free_loop = parse_int(value);
            else if (key == "sign")
                m.sign = (value == "+" || value == "+1" || value == "1") ? 1 : (value == "-" || value == "-1") ? -1 : 0;
            else if (key == "style")
                m.under_first = value != "over";
            else if (key == "split")
                m.split = static_cast<std::size_t>(parse_int(value));
            else if (key == "split_under")
                m.split_under = static_cast<std::size_t>(parse_int(value));
            else if (key == "side")
                m.left = value != "right";
            else if (key == "parallel")
                m.parallel = parse_bool(value);
            else if (key == "edges" || key == "crossings" || key == "crossing") {
                const bool is_edges = key == "edges";
                (is_edges ? m.edges : m.crossings).push_back(parse_int(value));
                last_list = is_edges ? edge_list : crossing_list;
            } else
                throw Error(ErrorKind::parse_error, "unknown move parameter \"" + key + "\"");
        }
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string token = trim(text.substr(pos, comma - pos));
        pos = comma + 1;
        if (token.empty())
            continue;

        const std::size_t colon = token.find(':');
        const std::string head = token.substr(0, colon);
        static const std::map<std::string, MoveKind> kinds{
            {"r1+", MoveKind::r1_add},    {"r1-", MoveKind::r1_remove}, {"r2+", MoveKind::r2_add},
            {"r2", MoveKind::r2_add},     {"r2-", MoveKind::r2_remove}, {"r3", MoveKind::r3},
        };
        auto kind = kinds.find(head);
        if (kind == kinds.end()) {
            // "4" or "4;side=right": more of the previous list, maybe followed
            // by further parameters.
            if (last_list == none)
                throw Error(ErrorKind::parse_error, "unknown move \"" + token + "\"");
            const std::size_t semi = std::min(token.find(';'), token.size());
            const int v = parse_int(trim(std::string_view(token).substr(0, semi)));
            (last_list == edge_list ? moves.back().edges : moves.back().crossings).push_back(v);
            if (semi < token.size())
                apply_params(moves.back(), token.substr(semi + 1));
            continue;
        }
        MoveSpec m;
        m.kind = kind->second;
        last_list = none;
        apply_params(m, colon == std::string::npos ? std::string() : token.substr(colon + 1));
        moves.push_back(std::move(m));
    }
    return moves;
}

std::vector<MoveSpec> enumerate_local_sites(const Diagram& input)
{
    const Diagram d = oriented(input);
    std::vector<MoveSpec> sites;
    auto admits = [&](const MoveSpec& m) {
        try {
            apply_move(d, m);
            return true;
        } catch (const Error&) {
            return false;
        }
    };
    const std::size_t n = d.crossings.size();
    for (std::size_t a = 0; a < n; ++a) {
        MoveSpec m;
        m.kind = MoveKind::r1_remove;
        m.crossings = {d.crossings[a].id};
        if (admits(m))
            sites.push_back(m);
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) {
            MoveSpec m;
            m.kind = MoveKind::r2_remove;
            m.crossings = {d.crossings[a].id, d.crossings[b].id};
            if (admits(m))
                sites.push_back(m);
        }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b)
            for (std::size_t c = b + 1; c < n; ++c) {
                MoveSpec m;
                m.kind = MoveKind::r3;
                m.crossings = {d.crossings[a].id, d.crossings[b].id, d.crossings[c].id};
                if (admits(m))
                    sites.push_back(m);
            }
    return sites;
}

std::vector<MoveSpec> enumerate_sites(const Diagram& input)
{
    const Diagram d = oriented(input);
    std::vector<MoveSpec> sites;
    for (int sign : {1, -1})
        for (bool under_first : {true, false}) {
            for (const Edge& e : d.edges) {
                MoveSpec m;
                m.kind = MoveKind::r1_add;
                m.edge = e.id;
                m.sign = sign;
                m.under_first = under_first;
                m.split = e.word.size() / 2;
                sites.push_back(m);
            }
            for (std::size_t i = 0; i < d.free_loops.size(); ++i) {
                MoveSpec m;
                m.kind = MoveKind::r1_add;
                m.free_loop = static_cast<int>(i);
                m.sign = sign;
                m.under_first = under_first;
                sites.push_back(m);
            }
        }
    for (const Edge& e : d.edges)
        for (const Edge& f : d.edges) {
            if (e.id == f.id)
                continue;
            for (bool left : {true, false})
                for (bool parallel : {true, false}) {
                    MoveSpec m;
                    m.kind = MoveKind::r2_add;
                    m.edges = {e.id, f.id};
                    m.left = left;
                    m.parallel = parallel;
                    m.split = e.word.size();
                    sites.push_back(m);
                }
        }
    auto local = enumerate_local_sites(d);
    sites.insert(sites.end(), local.begin(), local.end());
    return sites;
}

}  // namespace hkh
