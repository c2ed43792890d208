#pragma once

#include "hkh/diagram.hpp"
#include "hkh/surface_group.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hkh {

/// Bit c is the smoothing chosen at crossing index c.
using State = std::uint64_t;

inline int beta(State s) { return __builtin_popcountll(s); }

/// Edge-ends are numbered 2*e (tail of edge e) and 2*e+1 (head of edge e).
struct Circle {
    std::vector<int> ends;  ///< in traversal order; empty for a free loop
    Word word;              ///< traced from the circle's start edge
    ConjClass cls;
};

struct Resolution {
    State state = 0;
    std::vector<Circle> circles;
    std::vector<int> circle_of_end;  ///< edge-end -> circle index
};

enum class BifurcationKind { merge, split, neutral };

const char* to_string(BifurcationKind k);

/// One edge s -> s' of the cube (bit `crossing` flipped from 0 to 1).
///
/// Merge: from = {gamma1, gamma2} in s, to = {gamma, -1} in s'.
/// Split: from = {gamma, -1} in s, to = {gamma1, gamma2} in s'.
/// Neutral: from = {c, -1}, to = {c', -1}.
/// gamma1 is always the earlier circle in the canonical ordering.
/// `carry[i]` is the index in s' of the untouched circle i of s (or -1 for
/// the circles taking part).
struct CubeEdge {
    State source = 0;
    State target = 0;
    int crossing = -1;
    BifurcationKind kind = BifurcationKind::neutral;
    std::array<int, 2> from{-1, -1};
    std::array<int, 2> to{-1, -1};
    std::vector<int> carry;
};

struct CubeOptions {
    /// Read circles in the direction of this edge orientation (e.g. a
    /// source-sink structure) instead of the diagram's own.
    std::optional<SourceSink> orientation;
    /// Reverse the canonical circle ordering.
    bool reverse_circle_order = false;
};

/// Resolutions and bifurcations of the cube of states. Resolutions are
/// computed on demand, so the full cube is never held in memory. Conjugacy
/// classes are memoized per instance; an instance must not be shared between
/// threads.
class StateCube {
public:
    explicit StateCube(const Diagram& d, CubeOptions options = {});

    int crossing_count() const { return topo_.crossing_count(); }
    State state_count() const { return State{1} << crossing_count(); }
    const Topology& topology() const { return topo_; }
    const SurfaceBackend& backend() const { return backend_; }

    /// Circles are ordered by the least edge they traverse (free loops last);
    /// each is read starting from that edge.
    Resolution resolve(State s) const;

    /// Throws Error(corrupted_resolution) if the circle counts differ by more
    /// than one.
    CubeEdge classify(const Resolution& source, const Resolution& target, int crossing) const;
    /// Same, reusing `out` (and its carry buffer) to avoid allocation.
    void classify(const Resolution& source, const Resolution& target, int crossing, CubeEdge& out) const;

    /// Compact form of resolve() for bulk use. Fills `circle_of_end` (two
    /// entries per edge) and appends one first end (-1 for a free loop) and
    /// one class id per circle, in circle order. Ids index class_table().
    void trace(State s, std::span<int> circle_of_end, std::vector<int>& first_end, std::vector<int>& class_ids) const;

    /// classify() on traced states. `source_first_end` holds the source's
    /// circles; `target_circles` is the target's circle count.
    void classify(State source, State target, int crossing, std::span<const int> source_circle_of_end,
                  std::span<const int> source_first_end, std::span<const int> target_circle_of_end,
                  std::size_t target_circles, CubeEdge& out) const;

    /// Classes seen by trace() so far; entry 0 is the trivial class.
    const std::vector<ConjClass>& class_table() const { return class_table_; }

    /// Visits all n * 2^(n-1) cube edges, sources in increasing order.
    void for_each_edge(const std::function<void(const Resolution&, const Resolution&, const CubeEdge&)>& visit) const;

    std::vector<CubeEdge> cube_edges() const;

    const ConjClass& canonical(const Word& w) const;
    /// Index of w's class in class_table().
    int class_id(const Word& w) const;

private:
    Topology topo_;
    SurfaceBackend backend_;
    CubeOptions options_;
    mutable std::map<Word, ConjClass> classes_;
    mutable std::map<Word, int> class_ids_;
    mutable std::vector<ConjClass> class_table_;

    // Calls visit(ends, word) for each non-free circle of s in order.
    template <class Visit>
    void for_each_circle(State s, Visit&& visit) const;
};

/// Binary state string, crossing 0 first.
std::string state_string(State s, int n);

/// "state 0110: 3 circles: [a1], trivial, [a1 b1]" for every state, followed
/// by one line per cube edge.
std::string dump_cube(const Diagram& d);

}  // namespace hkh
