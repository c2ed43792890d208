#pragma once

#include "hkh/diagram.hpp"
#include "hkh/frobenius.hpp"
#include "hkh/gf2_matrix.hpp"
#include "hkh/state_cube.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace hkh {

enum class Flavor { classical, homotopical };

const char* to_string(Flavor f);

struct ComplexOptions {
    Flavor flavor = Flavor::homotopical;
    /// Apply the orientation shifts i -= n_-, j += n_+ - 2 n_-.
    bool shift = true;
    bool reverse_circle_order = false;
    /// Direction in which circles are read (see CubeOptions).
    std::optional<SourceSink> orientation;
};

/// A basis element of V(s): bit k of `labels` set means circle k carries v+.
struct GeneratorKey {
    State state = 0;
    std::uint32_t labels = 0;

    auto operator<=>(const GeneratorKey&) const = default;
};

struct Grading {
    int i = 0;
    int j = 0;
    GradingElem h;

    auto operator<=>(const Grading&) const = default;
};

/// Gradings of a generator of the given resolution. `n_plus`/`n_minus` are
/// only used when `shift` is set.
Grading generator_grading(const Resolution& r, std::uint32_t labels, int n_plus, int n_minus, bool shift);

/// The partial map of one cube edge in the given flavor; neutral edges give
/// the zero map (nullopt for both).
struct PartialMap {
    std::optional<MergeMap> merge;
    std::optional<SplitMap> split;
};
PartialMap partial_map(const Resolution& source, const Resolution& target, const CubeEdge& e, Flavor flavor);

/// Images of a source generator under one partial map.
std::vector<std::uint32_t> apply_partial(const CubeEdge& e, const PartialMap& f, std::uint32_t labels);

/// The chain complex split into slices of fixed quantum (and, for the
/// homotopical flavor, homotopical) grading. Within a slice the complex
/// is C^{min_i} -> C^{min_i+1} -> ...
class KhovanovComplex {
public:
    struct Slice {
        int j = 0;
        GradingElem h;  ///< zero for the classical flavor
        int min_i = 0;
        std::vector<std::vector<GeneratorKey>> generators;  ///< per degree offset
        /// differentials[k]: generators[k] -> generators[k+1]; row r is the
        /// image of generators[k][r].
        std::vector<SparseGF2Matrix> differentials;
    };

    explicit KhovanovComplex(const Diagram& d, ComplexOptions options = {});

    int genus() const { return genus_; }
    Flavor flavor() const { return options_.flavor; }
    int n_plus() const { return n_plus_; }
    int n_minus() const { return n_minus_; }
    const std::vector<Slice>& slices() const { return slices_; }
    std::size_t generator_count() const { return generator_count_; }

private:
    int genus_ = 0;
    int n_plus_ = 0;
    int n_minus_ = 0;
    ComplexOptions options_;
    std::vector<Slice> slices_;
    std::size_t generator_count_ = 0;
};

/// Every nonzero matrix entry of the differential as (source, target)
/// pairs, cube edge by cube edge. Intended for small diagrams.
std::vector<std::pair<GeneratorKey, GeneratorKey>> differential_entries(const Diagram& d, const ComplexOptions& options);

}  // namespace hkh
