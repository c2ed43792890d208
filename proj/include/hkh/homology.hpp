#pragma once

#include "hkh/khovanov_complex.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hkh {

struct HomologyEntry {
    int i = 0;
    int j = 0;
    GradingElem h;
    long dim = 0;

    bool operator==(const HomologyEntry&) const = default;
};

/// Nonzero graded dimensions, sorted by i, then j, then rendered h.
struct HomologyTable {
    int genus = 0;
    std::vector<HomologyEntry> entries;

    long total_dim() const;
    bool operator==(const HomologyTable& other) const { return entries == other.entries; }
};

/// Sorts entries canonically and merges duplicates; drops zero dimensions.
void normalize(HomologyTable& t);

HomologyTable homology(const KhovanovComplex& c);

HomologyTable kh_h(const Diagram& d, ComplexOptions options = {});
HomologyTable kh_classical(const Diagram& d, ComplexOptions options = {});

struct D2Report {
    bool zero = true;
    std::size_t slices = 0;
    std::size_t products = 0;
    std::string failure;  ///< first nonzero product, if any
};

/// Checks d o d = 0 in every slice.
D2Report verify_d2(const KhovanovComplex& c);

using Remap = std::function<HomologyEntry(const HomologyEntry&)>;

/// nullopt when the tables agree (after remapping `a`), otherwise a
/// description of the first differing grading.
std::optional<std::string> compare(const HomologyTable& a, const HomologyTable& b, const Remap& remap = {});

/// (i, j, h) -> (-i, -j, -h).
HomologyEntry negate_gradings(const HomologyEntry& e);

enum class ReportFormat { text, tsv, json };

/// Text: one "(i,j,h) : dim" line per entry, then a legend of torus classes
/// as (p,q). `diagram_hash` is echoed in the JSON form.
std::string poincare_report(const HomologyTable& t, ReportFormat format, Flavor flavor,
                            const std::string& diagram_hash = {});

}  // namespace hkh
