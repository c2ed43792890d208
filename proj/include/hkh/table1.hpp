#pragma once

#include "hkh/frobenius.hpp"
#include "hkh/gf2_matrix.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace hkh {

/// Dense linear maps between tensor powers of V. Basis element x of V^{(x)k}
/// has bit f set when factor f is v+; rows index the source basis.
GF2Matrix map_matrix(MergeMap f);
GF2Matrix map_matrix(SplitMap f);
GF2Matrix kron(const GF2Matrix& first, const GF2Matrix& second);
/// `outer` after `inner`.
GF2Matrix compose(const GF2Matrix& outer, const GF2Matrix& inner);

using FaceMap = std::variant<MergeMap, SplitMap>;

/// One side of a face relation; nullopt pair means the side is written 0.
struct FaceSide {
    std::optional<FaceMap> outer;
    std::optional<FaceMap> inner;
};

/// A cell of the commutativity table: rows 1, 2.a, ..., 4.d.ii; columns
/// A (V -> V^3), B (V^2 -> V^2), C (V^3 -> V). Column shapes:
///   A: (outer (x) id) inner        = (id (x) outer) inner
///   B: (outer (x) id)(id (x) inner) = outer inner
///   C: outer (inner (x) id)        = outer (id (x) inner)
struct FaceCell {
    std::string row;
    char column = 'A';
    FaceSide top;
    FaceSide bottom;
};

/// The relations as printed, 15 rows by 3 columns.
const std::vector<FaceCell>& printed_table();

/// The relation the bifurcation dispatch produces for the row's class
/// pattern, instantiated on genus-2 model circles.
FaceCell derived_cell(const std::string& row, char column);

GF2Matrix side_matrix(char column, bool top, const FaceSide& side);

std::string to_string(const FaceSide& side, char column, bool top);

struct CellReport {
    std::string row;
    char column = 'A';
    bool printed_holds = false;   ///< the printed sides agree as maps
    bool matches_dispatch = false;  ///< printed sides equal the derived ones
    std::string witness;          ///< basis element exposing a failure
};

std::vector<CellReport> verify_table1();

}  // namespace hkh
