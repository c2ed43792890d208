#include "hkh/khovanov_complex.hpp"

#include "hkh/error.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <span>
#include <unordered_map>

namespace hkh {

namespace {

bool bit(std::uint32_t x, int k) { return (x >> k) & 1u; }

Label label_at(std::uint32_t labels, int k) { return bit(labels, k) ? Label::plus : Label::minus; }

std::uint32_t with(std::uint32_t labels, int k, Label x)
{
    return x == Label::plus ? labels | (1u << k) : labels;
}

CubeOptions cube_options(const ComplexOptions& o)
{
    CubeOptions c;
    c.orientation = o.orientation;
    c.reverse_circle_order = o.reverse_circle_order;
    return c;
}

// Images of one generator under a partial map: at most two labelings.
struct Images {
    std::uint32_t y[2];
    int count = 0;
};

// A partial map evaluated once on the labels of the circles it touches.
// Untouched labels are carried over through a table indexed by the source
// labeling, filled one bit at a time.
class EdgeMap {
public:
    EdgeMap(const CubeEdge& e, const PartialMap& f, std::vector<std::uint32_t>& carried) : e_(e), carried_(carried)
    {
        if (f.merge) {
            for (std::uint32_t in = 0; in < 4; ++in)
                if (auto z = apply(*f.merge, label_at(in, 0), label_at(in, 1)))
                    add(in, with(0, e.to[0], *z));
        } else if (f.split) {
            for (std::uint32_t in = 0; in < 2; ++in)
                for (auto [a, b] : apply(*f.split, label_at(in, 0)))
                    add(in, with(with(0, e.to[0], a), e.to[1], b));
        }
        merge_ = f.merge.has_value();
        const std::size_t m = e.carry.size();
        carried_.assign(std::size_t{1} << m, 0);
        for (std::size_t x = 1; x < carried_.size(); ++x) {
            const int low = std::countr_zero(x);
            const int to = e.carry[static_cast<std::size_t>(low)];
            carried_[x] = carried_[x & (x - 1)] | (to >= 0 ? 1u << to : 0u);
        }
    }

    Images operator()(std::uint32_t labels) const
    {
        std::uint32_t in = bit(labels, e_.from[0]) ? 1u : 0u;
        if (merge_ && bit(labels, e_.from[1]))
            in |= 2u;
        Images out = table_[in];
        for (int k = 0; k < out.count; ++k)
            out.y[k] |= carried_[labels];
        return out;
    }

private:
    void add(std::uint32_t in, std::uint32_t bits) { table_[in].y[table_[in].count++] = bits; }

    const CubeEdge& e_;
    std::vector<std::uint32_t>& carried_;
    Images table_[4];
    bool merge_ = false;
};

struct KeyHash {
    std::size_t operator()(const std::pair<int, std::vector<std::pair<int, long>>>& k) const
    {
        std::size_t h = std::hash<int>{}(k.first);
        for (const auto& [id, coeff] : k.second)
            h = h * 1000003u ^ (std::hash<int>{}(id) * 31u + std::hash<long>{}(coeff));
        return h;
    }
};

// The partial map of one cube edge; source(k) and target(k) give circle classes.
template <class Source, class Target>
PartialMap partial_map_of(const CubeEdge& e, Flavor flavor, Source&& source, Target&& target)
{
    PartialMap f;
    switch (e.kind) {
    case BifurcationKind::merge:
        f.merge = flavor == Flavor::classical ? MergeMap::m
                                              : resolve_merge_case(source(e.from[0]), source(e.from[1]), target(e.to[0]));
        if (f.merge == MergeMap::zero)
            f.merge.reset();
        break;
    case BifurcationKind::split:
        f.split = flavor == Flavor::classical ? SplitMap::delta
                                              : resolve_split_case(source(e.from[0]), target(e.to[0]), target(e.to[1]));
        if (f.split == SplitMap::zero)
            f.split.reset();
        break;
    case BifurcationKind::neutral: break;
    }
    return f;
}

// Walks every nonzero entry of the differential.
template <class Visit>
void walk_entries(const StateCube& cube, const std::vector<Resolution>& res, Flavor flavor, Visit&& visit)
{
    const int n = cube.crossing_count();
    CubeEdge e;
    std::vector<std::uint32_t> carried;
    for (State s = 0; s < cube.state_count(); ++s) {
        const Resolution& src = res[s];
        const std::uint32_t count = 1u << src.circles.size();
        for (int c = 0; c < n; ++c) {
            if ((s >> c) & 1)
                continue;
            const State t = s | (State{1} << c);
            cube.classify(src, res[t], c, e);
            const PartialMap f = partial_map(src, res[t], e, flavor);
            if (!f.merge && !f.split)
                continue;
            const EdgeMap map(e, f, carried);
            for (std::uint32_t x = 0; x < count; ++x) {
                const Images im = map(x);
                for (int k = 0; k < im.count; ++k)
                    visit(s, x, t, im.y[k]);
            }
        }
    }
}

// Every state traced once, flat: circle_of_end rows of 2 * edge count,
// then first ends and class ids per circle from circles[s] on.
struct TracedCube {
    std::size_t width = 0;
    std::vector<int> circle_of_end;
    std::vector<std::size_t> circles{0};
    std::vector<int> first_end, class_id;

    explicit TracedCube(const StateCube& cube) : width(static_cast<std::size_t>(2 * cube.topology().edge_count()))
    {
        const State count = cube.state_count();
        circle_of_end.resize(count * width);
        circles.reserve(count + 1);
        for (State s = 0; s < count; ++s) {
            cube.trace(s, row(s), first_end, class_id);
            circles.push_back(first_end.size());
            if (circle_count(s) > 30)
                throw Error(ErrorKind::precondition_violation, "too many circles in a resolution");
        }
    }

    std::span<int> row(State s) { return {circle_of_end.data() + s * width, width}; }
    std::span<const int> row(State s) const { return {circle_of_end.data() + s * width, width}; }
    std::size_t circle_count(State s) const { return circles[s + 1] - circles[s]; }
    std::span<const int> first_ends(State s) const { return {first_end.data() + circles[s], circle_count(s)}; }
    int class_of(State s, int k) const { return class_id[circles[s] + static_cast<std::size_t>(k)]; }
};

std::vector<Resolution> all_resolutions(const StateCube& cube)
{
    std::vector<Resolution> res;
    res.reserve(cube.state_count());
    for (State s = 0; s < cube.state_count(); ++s) {
        res.push_back(cube.resolve(s));
        if (res.back().circles.size() > 30)
            throw Error(ErrorKind::precondition_violation, "too many circles in a resolution");
    }
    return res;
}

}  // namespace

const char* to_string(Flavor f) { return f == Flavor::classical ? "classical" : "homotopical"; }

Grading generator_grading(const Resolution& r, std::uint32_t labels, int n_plus, int n_minus, bool shift)
{
    Grading g;
    const int b = beta(r.state);
    int degree = 0;
    for (std::size_t k = 0; k < r.circles.size(); ++k) {
        const int d = deg(label_at(labels, static_cast<int>(k)));
        degree += d;
        g.h.add_term(r.circles[k].cls, d);
    }
    g.i = b - (shift ? n_minus : 0);
    g.j = degree + b + (shift ? n_plus - 2 * n_minus : 0);
    return g;
}

PartialMap partial_map(const Resolution& source, const Resolution& target, const CubeEdge& e, Flavor flavor)
{
    return partial_map_of(
        e, flavor, [&](int k) -> const ConjClass& { return source.circles[static_cast<std::size_t>(k)].cls; },
        [&](int k) -> const ConjClass& { return target.circles[static_cast<std::size_t>(k)].cls; });
}

std::vector<std::uint32_t> apply_partial(const CubeEdge& e, const PartialMap& f, std::uint32_t labels)
{
    std::vector<std::uint32_t> carried;
    const Images im = EdgeMap(e, f, carried)(labels);
    return {im.y, im.y + im.count};
}

KhovanovComplex::KhovanovComplex(const Diagram& d, ComplexOptions options) : genus_(d.genus), options_(std::move(options))
{
    const StateCube cube(d, cube_options(options_));
    const CrossingSigns signs = crossing_signs(d);
    n_plus_ = signs.n_plus;
    n_minus_ = signs.n_minus;
    const int n = cube.crossing_count();
    const bool homotopical = options_.flavor == Flavor::homotopical;
    const TracedCube traced(cube);
    const std::vector<ConjClass>& table = cube.class_table();

    // Trace ids are per word; merge them into one id per class. Nontrivial
    // classes get ids >= 1; the trivial class is 0.
    std::map<ConjClass, int> class_id;
    std::vector<ConjClass> classes{ConjClass{}};
    std::vector<int> id_of(table.size(), 0);
    for (std::size_t w = 0; w < table.size(); ++w) {
        if (table[w].trivial)
            continue;
        auto [it, fresh] = class_id.emplace(table[w], static_cast<int>(classes.size()));
        if (fresh)
            classes.push_back(table[w]);
        id_of[w] = it->second;
    }

    using HKey = std::vector<std::pair<int, long>>;
    std::unordered_map<std::pair<int, HKey>, int, KeyHash> slice_index;
    std::vector<std::size_t> offset(cube.state_count() + 1, 0);
    std::vector<int> slice_of, index_of, beta_of(cube.state_count());
    std::pair<int, HKey> probe;
    HKey& key = probe.second;
    std::size_t total = 0;
    for (State s = 0; s < cube.state_count(); ++s)
        total += std::size_t{1} << traced.circle_count(s);
    slice_of.reserve(total);
    index_of.reserve(total);

    const int i_shift = options_.shift ? -n_minus_ : 0;
    const int j_shift = options_.shift ? n_plus_ - 2 * n_minus_ : 0;
    std::vector<int> ids;
    for (State s = 0; s < cube.state_count(); ++s) {
        const int m = static_cast<int>(traced.circle_count(s));
        ids.resize(static_cast<std::size_t>(m));
        for (int k = 0; k < m; ++k)
            ids[static_cast<std::size_t>(k)] = id_of[static_cast<std::size_t>(traced.class_of(s, k))];
        const int b = beta(s);
        beta_of[s] = b;
        offset[s + 1] = offset[s] + (std::size_t{1} << m);
        for (std::uint32_t x = 0; x < (1u << m); ++x) {
            key.clear();
            int degree = 0;
            for (int k = 0; k < m; ++k) {
                const int dk = bit(x, k) ? 1 : -1;
                degree += dk;
                const int id = ids[static_cast<std::size_t>(k)];
                if (!homotopical || id == 0)
                    continue;
                auto at = std::find_if(key.begin(), key.end(), [id](const auto& p) { return p.first == id; });
                if (at == key.end())
                    key.emplace_back(id, dk);
                else
                    at->second += dk;
            }
            std::erase_if(key, [](const auto& p) { return p.second == 0; });
            std::sort(key.begin(), key.end());
            const int j = degree + b + j_shift;
            probe.first = j;
            auto it = slice_index.find(probe);
            if (it == slice_index.end()) {
                it = slice_index.emplace(probe, static_cast<int>(slices_.size())).first;
                Slice sl;
                sl.j = j;
                for (auto [id, coeff] : key)
                    sl.h.add_term(classes[static_cast<std::size_t>(id)], coeff);
                sl.min_i = i_shift;
                sl.generators.resize(static_cast<std::size_t>(n + 1));
                slices_.push_back(std::move(sl));
            }
            auto& group = slices_[static_cast<std::size_t>(it->second)].generators[static_cast<std::size_t>(b)];
            slice_of.push_back(it->second);
            index_of.push_back(static_cast<int>(group.size()));
            group.push_back({s, x});
        }
    }
    generator_count_ = slice_of.size();

    // Entries per slice and degree, turned into sparse matrices at the end.
    using Entries = std::vector<std::pair<SparseGF2Matrix::Index, SparseGF2Matrix::Index>>;
    std::vector<std::vector<Entries>> entries(slices_.size(), std::vector<Entries>(static_cast<std::size_t>(n)));
    CubeEdge e;
    std::vector<std::uint32_t> carried;
    for (State s = 0; s < cube.state_count(); ++s) {
        const std::uint32_t count = 1u << traced.circle_count(s);
        for (int c = 0; c < n; ++c) {
            if ((s >> c) & 1)
                continue;
            const State t = s | (State{1} << c);
            cube.classify(s, t, c, traced.row(s), traced.first_ends(s), traced.row(t), traced.circle_count(t), e);
            const PartialMap f = partial_map_of(
                e, options_.flavor,
                [&](int k) -> const ConjClass& { return table[static_cast<std::size_t>(traced.class_of(s, k))]; },
                [&](int k) -> const ConjClass& { return table[static_cast<std::size_t>(traced.class_of(t, k))]; });
            if (!f.merge && !f.split)
                continue;
            const EdgeMap map(e, f, carried);
            for (std::uint32_t x = 0; x < count; ++x) {
                const Images im = map(x);
                const std::size_t a = offset[s] + x;
                for (int k = 0; k < im.count; ++k) {
                    const std::size_t b = offset[t] + im.y[k];
                    if (slice_of[a] != slice_of[b])
                        throw Error(ErrorKind::corrupted_resolution, "a partial map leaves its grading slice");
                    entries[static_cast<std::size_t>(slice_of[a])][static_cast<std::size_t>(beta_of[s])].emplace_back(
                        static_cast<SparseGF2Matrix::Index>(index_of[a]),
                        static_cast<SparseGF2Matrix::Index>(index_of[b]));
                }
            }
        }
    }
    for (std::size_t q = 0; q < slices_.size(); ++q) {
        Slice& sl = slices_[q];
        for (std::size_t k = 0; k < static_cast<std::size_t>(n); ++k)
            sl.differentials.emplace_back(sl.generators[k].size(), sl.generators[k + 1].size(),
                                          std::move(entries[q][k]));
    }

    std::sort(slices_.begin(), slices_.end(), [&](const Slice& p, const Slice& q) {
        return std::tie(p.j, p.h) < std::tie(q.j, q.h);
    });
}

std::vector<std::pair<GeneratorKey, GeneratorKey>> differential_entries(const Diagram& d, const ComplexOptions& options)
{
    const StateCube cube(d, cube_options(options));
    const std::vector<Resolution> res = all_resolutions(cube);
    std::vector<std::pair<GeneratorKey, GeneratorKey>> out;
    walk_entries(cube, res, options.flavor, [&](State s, std::uint32_t x, State t, std::uint32_t y) {
        out.push_back({{s, x}, {t, y}});
    });
    return out;
}

}  // namespace hkh
