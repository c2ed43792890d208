#pragma once

#include "hkh/surface_group.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hkh {

/// Basis of V: v- has degree -1, v+ degree +1.
enum class Label : unsigned char { minus = 0, plus = 1 };

inline int deg(Label x) { return x == Label::plus ? 1 : -1; }

/// Partial maps at a merge (V (x) V -> V) and a split (V -> V (x) V).
enum class MergeMap { m, m0, m1, m2, zero };
enum class SplitMap { delta, delta0, delta1, delta2, zero };

std::string to_string(MergeMap f);
std::string to_string(SplitMap f);

/// All tables send a basis vector to a single basis vector or to zero.
std::optional<Label> apply(MergeMap f, Label x, Label y);

/// Sum of basis tensors (over GF(2)); empty means zero.
std::vector<std::pair<Label, Label>> apply(SplitMap f, Label x);

/// Merge of gamma1 and gamma2 into gamma. Throws Error(corrupted_resolution)
/// for triviality patterns that cannot arise from a connected sum.
MergeMap resolve_merge_case(const ConjClass& c1, const ConjClass& c2, const ConjClass& c);

/// Split of gamma into gamma1 and gamma2.
SplitMap resolve_split_case(const ConjClass& c, const ConjClass& c1, const ConjClass& c2);

}  // namespace hkh
