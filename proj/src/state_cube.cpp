#include "hkh/state_cube.hpp"

#include "hkh/error.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <sstream>
#include <utility>

namespace hkh {

namespace {

// Partner slot under the given smoothing: 0 joins (0,1),(2,3); 1 joins (0,3),(1,2).
int partner(int slot, bool one) { return one ? 3 - slot : slot ^ 1; }

}  // namespace

const char* to_string(BifurcationKind k)
{
    switch (k) {
    case BifurcationKind::merge: return "merge";
    case BifurcationKind::split: return "split";
    case BifurcationKind::neutral: return "neutral";
    }
    return "?";
}

StateCube::StateCube(const Diagram& d, CubeOptions options)
    : topo_(d), backend_(d.genus), options_(std::move(options))
{
    if (topo_.crossing_count() > 40)
        throw Error(ErrorKind::precondition_violation, "too many crossings for the state cube");
    if (options_.orientation && options_.orientation->forward.size() != static_cast<std::size_t>(topo_.edge_count()))
        throw Error(ErrorKind::precondition_violation, "orientation does not match the diagram's edges");
    class_id(Word{});
}

const ConjClass& StateCube::canonical(const Word& w) const
{
    auto it = classes_.find(w);
    if (it == classes_.end())
        it = classes_.emplace(w, backend_.canonical_class(w)).first;
    return it->second;
}

template <class Visit>
void StateCube::for_each_circle(State s, Visit&& visit) const
{
    const int n_edges = topo_.edge_count();
    std::vector<char> used(static_cast<std::size_t>(n_edges), 0);
    std::vector<int> ends;
    ends.reserve(static_cast<std::size_t>(2 * n_edges));
    Word word;

    for (int start = 0; start < n_edges; ++start) {
        if (used[static_cast<std::size_t>(start)])
            continue;
        ends.clear();
        word.letters.clear();
        int e = start;
        bool forward = !options_.orientation || options_.orientation->forward[static_cast<std::size_t>(start)];
        while (!used[static_cast<std::size_t>(e)]) {
            used[static_cast<std::size_t>(e)] = 1;
            ends.push_back(2 * e + (forward ? 0 : 1));
            ends.push_back(2 * e + (forward ? 1 : 0));
            const Word& w = topo_.edge_word(e);
            if (forward)
                word.letters.insert(word.letters.end(), w.letters.begin(), w.letters.end());
            else
                for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
                    word.letters.push_back(it->inverse());

            const EdgeEnd at = forward ? topo_.head(e) : topo_.tail(e);
            const int k = partner(at.slot, (s >> at.crossing) & 1);
            e = topo_.slot_edge(at.crossing, k);
            forward = !topo_.slot_is_head(at.crossing, k);
        }
        visit(std::as_const(ends), std::as_const(word));
    }
}

Resolution StateCube::resolve(State s) const
{
    Resolution r;
    r.state = s;
    r.circle_of_end.assign(static_cast<std::size_t>(2 * topo_.edge_count()), -1);
    r.circles.reserve(static_cast<std::size_t>(topo_.crossing_count()) + 1 + topo_.free_loops().size());
    for_each_circle(s, [&](const std::vector<int>& ends, const Word& word) {
        const int index = static_cast<int>(r.circles.size());
        for (int end : ends)
            r.circle_of_end[static_cast<std::size_t>(end)] = index;
        Circle circle;
        circle.ends = ends;
        circle.word = word;
        circle.cls = canonical(word);
        r.circles.push_back(std::move(circle));
    });
    for (const Word& w : topo_.free_loops()) {
        Circle circle;
        circle.word = w;
        circle.cls = canonical(w);
        r.circles.push_back(std::move(circle));
    }
    if (options_.reverse_circle_order) {
        std::reverse(r.circles.begin(), r.circles.end());
        const int m = static_cast<int>(r.circles.size());
        for (int& c : r.circle_of_end)
            c = m - 1 - c;
    }
    return r;
}

int StateCube::class_id(const Word& w) const
{
    auto it = class_ids_.find(w);
    if (it == class_ids_.end()) {
        it = class_ids_.emplace(w, static_cast<int>(class_table_.size())).first;
        class_table_.push_back(canonical(w));
    }
    return it->second;
}

void StateCube::trace(State s, std::span<int> circle_of_end, std::vector<int>& first_end,
                      std::vector<int>& class_ids) const
{
    const std::size_t begin = first_end.size();
    int index = 0;
    for_each_circle(s, [&](const std::vector<int>& ends, const Word& word) {
        for (int end : ends)
            circle_of_end[static_cast<std::size_t>(end)] = index;
        ++index;
        first_end.push_back(ends.front());
        class_ids.push_back(class_id(word));
    });
    for (const Word& w : topo_.free_loops()) {
        first_end.push_back(-1);
        class_ids.push_back(class_id(w));
        ++index;
    }
    if (options_.reverse_circle_order) {
        std::reverse(first_end.begin() + static_cast<std::ptrdiff_t>(begin), first_end.end());
        std::reverse(class_ids.begin() + static_cast<std::ptrdiff_t>(begin), class_ids.end());
        for (int& c : circle_of_end)
            c = index - 1 - c;
    }
}

CubeEdge StateCube::classify(const Resolution& source, const Resolution& target, int crossing) const
{
    CubeEdge edge;
    classify(source, target, crossing, edge);
    return edge;
}

void StateCube::classify(const Resolution& source, const Resolution& target, int crossing, CubeEdge& edge) const
{
    std::vector<int> first_end;
    first_end.reserve(source.circles.size());
    for (const Circle& c : source.circles)
        first_end.push_back(c.ends.empty() ? -1 : c.ends.front());
    classify(source.state, target.state, crossing, source.circle_of_end, first_end, target.circle_of_end,
             target.circles.size(), edge);
}

void StateCube::classify(State source, State target, int crossing, std::span<const int> source_circle_of_end,
                         std::span<const int> source_first_end, std::span<const int> target_circle_of_end,
                         std::size_t target_circles, CubeEdge& edge) const
{
    edge.source = source;
    edge.target = target;
    edge.crossing = crossing;

    std::array<int, 4> before_ids, after_ids;
    for (int k = 0; k < 4; ++k) {
        const int e = topo_.slot_edge(crossing, k);
        const int end = 2 * e + (topo_.slot_is_head(crossing, k) ? 1 : 0);
        before_ids[static_cast<std::size_t>(k)] = source_circle_of_end[static_cast<std::size_t>(end)];
        after_ids[static_cast<std::size_t>(k)] = target_circle_of_end[static_cast<std::size_t>(end)];
    }
    std::sort(before_ids.begin(), before_ids.end());
    std::sort(after_ids.begin(), after_ids.end());
    const std::span<const int> before(before_ids.begin(), std::unique(before_ids.begin(), before_ids.end()));
    const std::span<const int> after(after_ids.begin(), std::unique(after_ids.begin(), after_ids.end()));

    if (before.size() == 2 && after.size() == 1)
        edge.kind = BifurcationKind::merge;
    else if (before.size() == 1 && after.size() == 2)
        edge.kind = BifurcationKind::split;
    else if (before.size() == 1 && after.size() == 1)
        edge.kind = BifurcationKind::neutral;
    else
        throw Error(ErrorKind::corrupted_resolution, "smoothing change at crossing " + std::to_string(crossing) +
                                                         " takes " + std::to_string(before.size()) + " circles to " +
                                                         std::to_string(after.size()));
    edge.from = {-1, -1};
    edge.to = {-1, -1};
    std::copy(before.begin(), before.end(), edge.from.begin());
    std::copy(after.begin(), after.end(), edge.to.begin());

    const std::size_t m = source_first_end.size();
    if (target_circles + before.size() != m + after.size())
        throw Error(ErrorKind::corrupted_resolution, "circle counts do not add up");
    edge.carry.assign(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        if (static_cast<int>(i) == before[0] || (before.size() == 2 && static_cast<int>(i) == before[1]))
            continue;
        const int first = source_first_end[i];
        if (first >= 0) {
            edge.carry[i] = target_circle_of_end[static_cast<std::size_t>(first)];
        } else {
            // Free loops keep their position relative to the end of the list
            // (or the start, when the ordering is reversed).
            edge.carry[i] = options_.reverse_circle_order ? static_cast<int>(i)
                                                          : static_cast<int>(target_circles - (m - i));
        }
    }
}

void StateCube::for_each_edge(
    const std::function<void(const Resolution&, const Resolution&, const CubeEdge&)>& visit) const
{
    const int n = crossing_count();
    for (State s = 0; s < state_count(); ++s) {
        const Resolution src = resolve(s);
        for (int c = 0; c < n; ++c) {
            if ((s >> c) & 1)
                continue;
            const Resolution tgt = resolve(s | (State{1} << c));
            visit(src, tgt, classify(src, tgt, c));
        }
    }
}

std::vector<CubeEdge> StateCube::cube_edges() const
{
    std::vector<CubeEdge> out;
    for_each_edge([&](const Resolution&, const Resolution&, const CubeEdge& e) { out.push_back(e); });
    return out;
}

std::string state_string(State s, int n)
{
    std::string out;
    for (int c = 0; c < n; ++c)
        out += ((s >> c) & 1) ? '1' : '0';
    return out;
}

std::string dump_cube(const Diagram& d)
{
    const StateCube cube(d);
    const int n = cube.crossing_count();
    const int g = d.genus;
    std::ostringstream out;
    for (State s = 0; s < cube.state_count(); ++s) {
        const Resolution r = cube.resolve(s);
        out << "state " << state_string(s, n) << ": " << r.circles.size()
            << (r.circles.size() == 1 ? " circle: " : " circles: ");
        for (std::size_t i = 0; i < r.circles.size(); ++i)
            out << (i ? ", " : "") << to_string(r.circles[i].cls, g);
        out << '\n';
    }
    cube.for_each_edge([&](const Resolution&, const Resolution&, const CubeEdge& e) {
        out << "edge " << state_string(e.source, n) << " -> " << state_string(e.target, n) << " (crossing "
            << e.crossing << "): " << to_string(e.kind);
        switch (e.kind) {
        case BifurcationKind::merge: out << ' ' << e.from[0] << ',' << e.from[1] << " -> " << e.to[0]; break;
        case BifurcationKind::split: out << ' ' << e.from[0] << " -> " << e.to[0] << ',' << e.to[1]; break;
        case BifurcationKind::neutral: out << ' ' << e.from[0] << " -> " << e.to[0]; break;
        }
        out << '\n';
    });
    return out.str();
}

}  // namespace hkh
