#pragma once

#include "hkh/surface_group.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace hkh {

struct Edge {
    int id = 0;
    Word word;  ///< read along the edge's direction
};

/// A crossing in PD convention: slots are listed counterclockwise starting at
/// the incoming understrand, so slot 2 is the outgoing understrand and slots
/// 1/3 carry the overstrand.
///
/// sign is +1 when the overstrand enters at slot 3, -1 when it enters at
/// slot 1, and 0 when it should be inferred from the edge structure.
struct Crossing {
    int id = 0;
    std::array<int, 4> slots{};  ///< edge ids
    int sign = 0;
};

/// Link diagram on the closed oriented surface of the given genus. Every
/// crossing sits inside one fundamental polygon; the edge words record how
/// edges wander around the surface.
struct Diagram {
    int genus = 0;
    std::vector<Edge> edges;
    std::vector<Crossing> crossings;
    std::vector<Word> free_loops;  ///< crossing-free components
};

struct Violation {
    std::string kind;  ///< dangling-edge, degree, duplicate-id, orientation, malformed-word, bad-sign
    std::string message;
};

std::vector<Violation> validate(const Diagram& d);

/// Copy of `d` with every unspecified crossing sign filled in. Components
/// that only ever pass over (so the edge structure leaves their direction
/// open) are oriented to make their lowest-index crossing positive. Throws
/// Error(precondition_violation) if `d` is invalid.
Diagram oriented(const Diagram& d);

struct EdgeEnd {
    int crossing = -1;
    int slot = -1;
};

/// Index-based view of a valid, oriented diagram. Edge and crossing indices
/// are positions in Diagram::edges / Diagram::crossings.
class Topology {
public:
    explicit Topology(const Diagram& d);

    int genus() const { return genus_; }
    int edge_count() const { return static_cast<int>(words_.size()); }
    int crossing_count() const { return static_cast<int>(signs_.size()); }

    const Word& edge_word(int e) const { return words_[static_cast<std::size_t>(e)]; }
    EdgeEnd tail(int e) const { return tails_[static_cast<std::size_t>(e)]; }
    EdgeEnd head(int e) const { return heads_[static_cast<std::size_t>(e)]; }
    int slot_edge(int c, int k) const { return slot_edge_[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)]; }
    bool slot_is_head(int c, int k) const
    {
        return slot_head_[static_cast<std::size_t>(c)][static_cast<std::size_t>(k)];
    }
    int sign(int c) const { return signs_[static_cast<std::size_t>(c)]; }
    const std::vector<Word>& free_loops() const { return free_loops_; }

private:
    int genus_;
    std::vector<Word> words_;
    std::vector<EdgeEnd> tails_, heads_;
    std::vector<std::array<int, 4>> slot_edge_;
    std::vector<std::array<bool, 4>> slot_head_;
    std::vector<int> signs_;
    std::vector<Word> free_loops_;
};

struct CrossingSigns {
    int n_plus = 0;
    int n_minus = 0;
    std::vector<int> signs;  ///< per crossing index
};

/// Right-hand rule: +1 when (overstrand, understrand) is a positive frame.
CrossingSigns crossing_signs(const Diagram& d);

/// An orientation of the edges making every crossing alternate
/// in/out/in/out around its cyclic order. `forward[e]` says whether edge e
/// keeps its diagram direction.
struct SourceSink {
    std::vector<bool> forward;
};

std::optional<SourceSink> source_sink_structure(const Diagram& d);
inline bool has_source_sink(const Diagram& d) { return source_sink_structure(d).has_value(); }
SourceSink flipped(const SourceSink& s);

/// Reverses every component; words are inverted.
Diagram reverse_orientation(const Diagram& d);

/// Exchanges over and under at every crossing (rotates the slots by one).
Diagram mirror(const Diagram& d);

/// Equality up to renumbering of edges and crossings. Words must agree
/// letter for letter.
bool isomorphic(const Diagram& a, const Diagram& b);

/// Number of link components, counting free loops.
int component_count(const Diagram& d);

}  // namespace hkh
