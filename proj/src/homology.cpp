#include "hkh/homology.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace hkh {

namespace {

bool entry_less(const HomologyEntry& a, const HomologyEntry& b, int genus)
{
    if (a.i != b.i)
        return a.i < b.i;
    if (a.j != b.j)
        return a.j < b.j;
    return to_string(a.h, genus) < to_string(b.h, genus);
}

std::string grading_string(const HomologyEntry& e, int genus)
{
    return "(" + std::to_string(e.i) + "," + std::to_string(e.j) + "," + to_string(e.h, genus) + ")";
}

}  // namespace

long HomologyTable::total_dim() const
{
    long s = 0;
    for (const auto& e : entries)
        s += e.dim;
    return s;
}

void normalize(HomologyTable& t)
{
    std::sort(t.entries.begin(), t.entries.end(),
              [&](const HomologyEntry& a, const HomologyEntry& b) { return entry_less(a, b, t.genus); });
    std::vector<HomologyEntry> merged;
    for (const auto& e : t.entries) {
        if (!merged.empty() && merged.back().i == e.i && merged.back().j == e.j && merged.back().h == e.h)
            merged.back().dim += e.dim;
        else
            merged.push_back(e);
    }
    std::erase_if(merged, [](const HomologyEntry& e) { return e.dim == 0; });
    t.entries = std::move(merged);
}

HomologyTable homology(const KhovanovComplex& c)
{
    HomologyTable t;
    t.genus = c.genus();
    for (const auto& sl : c.slices()) {
        const std::size_t groups = sl.generators.size();
        std::vector<std::size_t> ranks(groups, 0);  // ranks[k]: rank of C^k -> C^{k+1}
        for (std::size_t k = 0; k + 1 < groups; ++k)
            ranks[k] = rank(sl.differentials[k]);
        for (std::size_t k = 0; k < groups; ++k) {
            const long dim = static_cast<long>(sl.generators[k].size()) - static_cast<long>(ranks[k]) -
                             static_cast<long>(k ? ranks[k - 1] : 0);
            if (dim > 0)
                t.entries.push_back({sl.min_i + static_cast<int>(k), sl.j, sl.h, dim});
        }
    }
    normalize(t);
    return t;
}

HomologyTable kh_h(const Diagram& d, ComplexOptions options)
{
    options.flavor = Flavor::homotopical;
    return homology(KhovanovComplex(d, std::move(options)));
}

HomologyTable kh_classical(const Diagram& d, ComplexOptions options)
{
    options.flavor = Flavor::classical;
    return homology(KhovanovComplex(d, std::move(options)));
}

D2Report verify_d2(const KhovanovComplex& c)
{
    D2Report r;
    for (const auto& sl : c.slices()) {
        ++r.slices;
        for (std::size_t k = 0; k + 1 < sl.differentials.size(); ++k) {
            const SparseGF2Matrix& a = sl.differentials[k];
            const SparseGF2Matrix& b = sl.differentials[k + 1];
            if (a.rows() == 0 || b.cols() == 0)
                continue;
            ++r.products;
            if (!multiply(a, b).is_zero() && r.zero) {
                r.zero = false;
                r.failure = "slice j=" + std::to_string(sl.j) + " h=" + to_string(sl.h, c.genus()) +
                            ": d o d != 0 from degree " + std::to_string(sl.min_i + static_cast<int>(k));
            }
        }
    }
    return r;
}

std::optional<std::string> compare(const HomologyTable& a, const HomologyTable& b, const Remap& remap)
{
    HomologyTable x = a;
    if (remap)
        for (auto& e : x.entries)
            e = remap(e);
    normalize(x);
    HomologyTable y = b;
    normalize(y);
    const int g = std::max(a.genus, b.genus);
    std::size_t p = 0, q = 0;
    while (p < x.entries.size() || q < y.entries.size()) {
        const HomologyEntry* ex = p < x.entries.size() ? &x.entries[p] : nullptr;
        const HomologyEntry* ey = q < y.entries.size() ? &y.entries[q] : nullptr;
        if (ex && ey && ex->i == ey->i && ex->j == ey->j && ex->h == ey->h) {
            if (ex->dim != ey->dim)
                return grading_string(*ex, g) + ": " + std::to_string(ex->dim) + " vs " + std::to_string(ey->dim);
            ++p;
            ++q;
        } else if (ey == nullptr || (ex && entry_less(*ex, *ey, g))) {
            return grading_string(*ex, g) + ": " + std::to_string(ex->dim) + " vs 0";
        } else {
            return grading_string(*ey, g) + ": 0 vs " + std::to_string(ey->dim);
        }
    }
    return std::nullopt;
}

HomologyEntry negate_gradings(const HomologyEntry& e) { return {-e.i, -e.j, -e.h, e.dim}; }

std::string poincare_report(const HomologyTable& t, ReportFormat format, Flavor flavor, const std::string& diagram_hash)
{
    std::ostringstream out;
    switch (format) {
    case ReportFormat::json: {
        nlohmann::ordered_json j;
        j["diagram"] = diagram_hash;
        j["flavor"] = to_string(flavor);
        j["table"] = nlohmann::json::array();
        for (const auto& e : t.entries)
            j["table"].push_back({{"i", e.i}, {"j", e.j}, {"h", to_string(e.h, t.genus)}, {"dim", e.dim}});
        out << j.dump(2) << '\n';
        break;
    }
    case ReportFormat::tsv:
        out << "i\tj\th\tdim\n";
        for (const auto& e : t.entries)
            out << e.i << '\t' << e.j << '\t' << to_string(e.h, t.genus) << '\t' << e.dim << '\n';
        break;
    case ReportFormat::text: {
        out << "# " << to_string(flavor) << " homology, genus " << t.genus << ", total dimension " << t.total_dim()
            << '\n';
        std::set<ConjClass> seen;
        for (const auto& e : t.entries) {
            out << grading_string(e, t.genus) << " : " << e.dim << '\n';
            for (const auto& [c, k] : e.h.terms())
                seen.insert(c);
        }
        if (t.genus == 1)
            for (const ConjClass& c : seen) {
                const auto ab = abelianize(c.canonical_word, 1);
                out << "# " << to_string(c, 1) << " = (" << ab[0] << "," << ab[1] << ")\n";
            }
        break;
    }
    }
    return out.str();
}

}  // namespace hkh
