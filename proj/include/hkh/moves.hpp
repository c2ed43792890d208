#pragma once

#include "hkh/diagram.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace hkh {

enum class MoveKind { r1_add, r1_remove, r2_add, r2_remove, r3 };

/// A Reidemeister move at an explicit site. Which fields matter depends on
/// `kind`:
///  - r1_add: `edge` (or `free_loop` >= 0), `sign`, `under_first`, `split`
///  - r1_remove: `crossings[0]`
///  - r2_add: `edges = {over, under}`, `left`, `parallel`, `split`, `split_under`
///  - r2_remove: `crossings[0..1]`
///  - r3: `crossings[0..2]`
/// Edge and crossing fields hold ids, not indices.
struct MoveSpec {
    MoveKind kind = MoveKind::r1_add;
    int edge = -1;
    int free_loop = -1;
    int sign = 1;
    bool under_first = true;
    std::size_t split = 0;
    std::vector<int> edges;
    bool left = true;
    bool parallel = true;
    std::size_t split_under = 0;
    std::vector<int> crossings;
};

/// Applies the move; words outside the site are untouched. Throws
/// Error(pattern_mismatch) when the site does not admit the move and
/// Error(nonlocal_words) when an edge inside the move disk carries a word.
Diagram apply_move(const Diagram& d, const MoveSpec& m);

std::string to_string(const MoveSpec& m);

/// Parses a comma-separated list such as "r1+:edge=3,r2:edges=1,4". Moves are
/// r1+, r1-, r2+ (alias r2), r2-, r3; parameters after ':' are separated by
/// ';'. A bare number continues the previous list-valued parameter.
std::vector<MoveSpec> parse_moves(std::string_view text);

/// Every R1/R2 addition the diagram admits (both signs and both kink
/// styles per edge, every ordered edge pair with both sides and relative
/// directions), plus every R1/R2/R3 removal site present.
std::vector<MoveSpec> enumerate_sites(const Diagram& d);

/// Only the R1-remove, R2-remove and R3 sites currently present.
std::vector<MoveSpec> enumerate_local_sites(const Diagram& d);

}  // namespace hkh
