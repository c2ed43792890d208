#include "hkh/table1.hpp"

#include "hkh/error.hpp"

#include <map>

namespace hkh {

namespace {

using MM = MergeMap;
using SM = SplitMap;

GF2Matrix matrix_of(const FaceMap& f)
{
    return std::visit([](auto g) { return map_matrix(g); }, f);
}

std::string name(const FaceMap& f)
{
    return std::visit([](auto g) { return to_string(g); }, f);
}

FaceSide side(FaceMap outer, FaceMap inner) { return {outer, inner}; }
const FaceSide zero{};

FaceCell cell(std::string row, char column, FaceSide top, FaceSide bottom)
{
    return {std::move(row), column, top, bottom};
}

// Circles a, b, c of the three-circle configuration, as genus-2 words
// (x = a1, y = b1, capitals are inverses).
struct Model {
    const char* a;
    const char* b;
    const char* c;
};

const std::map<std::string, Model>& models()
{
    static const std::map<std::string, Model> m{
        {"1", {"", "", ""}},
        {"2.a", {"a1", "", ""}},
        {"2.b", {"", "a1", ""}},
        {"2.c", {"", "", "a1"}},
        {"3.a.i", {"", "a1", "A1"}},
        {"3.a.ii", {"", "a1", "b1"}},
        {"3.b.i", {"a1", "", "A1"}},
        {"3.b.ii", {"a1", "", "b1"}},
        {"3.c.i", {"a1", "A1", ""}},
        {"3.c.ii", {"a1", "b1", ""}},
        {"4.a", {"a1", "A1", "a1"}},
        {"4.b", {"a1", "A1", "b1"}},
        {"4.c", {"b1", "a1", "A1"}},
        {"4.d.i", {"a1", "b1", "B1 A1"}},
        {"4.d.ii", {"a1", "b1", "a1"}},
    };
    return m;
}

std::string basis_string(std::size_t x, std::size_t factors)
{
    std::string s;
    for (std::size_t f = 0; f < factors; ++f)
        s += (f ? "(x)" : "") + std::string((x >> f) & 1 ? "v+" : "v-");
    return s;
}

}  // namespace

GF2Matrix map_matrix(MergeMap f)
{
    GF2Matrix out(4, 2);
    for (std::size_t x = 0; x < 4; ++x) {
        const Label a = (x & 1) ? Label::plus : Label::minus;
        const Label b = (x & 2) ? Label::plus : Label::minus;
        if (auto z = apply(f, a, b))
            out.set(x, *z == Label::plus ? 1 : 0, true);
    }
    return out;
}

GF2Matrix map_matrix(SplitMap f)
{
    GF2Matrix out(2, 4);
    for (std::size_t x = 0; x < 2; ++x)
        for (auto [a, b] : apply(f, x ? Label::plus : Label::minus))
            out.flip(x, (a == Label::plus ? 1u : 0u) | (b == Label::plus ? 2u : 0u));
    return out;
}

GF2Matrix kron(const GF2Matrix& first, const GF2Matrix& second)
{
    // Factors of `first` occupy the low bits of the product basis.
    GF2Matrix out(first.rows() * second.rows(), first.cols() * second.cols());
    for (std::size_t r1 = 0; r1 < first.rows(); ++r1)
        for (std::size_t c1 = 0; c1 < first.cols(); ++c1) {
            if (!first.get(r1, c1))
                continue;
            for (std::size_t r2 = 0; r2 < second.rows(); ++r2)
                for (std::size_t c2 = 0; c2 < second.cols(); ++c2)
                    if (second.get(r2, c2))
                        out.set(r1 + first.rows() * r2, c1 + first.cols() * c2, true);
        }
    return out;
}

GF2Matrix compose(const GF2Matrix& outer, const GF2Matrix& inner) { return multiply(inner, outer); }

GF2Matrix side_matrix(char column, bool top, const FaceSide& s)
{
    static const std::map<char, std::pair<std::size_t, std::size_t>> dims{{'A', {2, 8}}, {'B', {4, 4}}, {'C', {8, 2}}};
    const auto [rows, cols] = dims.at(column);
    if (!s.outer || !s.inner)
        return GF2Matrix(rows, cols);
    const GF2Matrix id = GF2Matrix::identity(2);
    const GF2Matrix o = matrix_of(*s.outer), i = matrix_of(*s.inner);
    switch (column) {
    case 'A': return compose(top ? kron(o, id) : kron(id, o), i);
    case 'B': return top ? compose(kron(o, id), kron(id, i)) : compose(o, i);
    default: return compose(o, top ? kron(i, id) : kron(id, i));
    }
}

std::string to_string(const FaceSide& s, char column, bool top)
{
    if (!s.outer || !s.inner)
        return "0";
    const std::string o = name(*s.outer), i = name(*s.inner);
    switch (column) {
    case 'A': return (top ? "(" + o + "(x)id)" : "(id(x)" + o + ")") + i;
    case 'B': return top ? "(" + o + "(x)id)(id(x)" + i + ")" : o + " " + i;
    default: return o + (top ? "(" + i + "(x)id)" : "(id(x)" + i + ")");
    }
}

const std::vector<FaceCell>& printed_table()
{
    static const std::vector<FaceCell> t = [] {
        std::vector<FaceCell> v;
        auto row = [&](const std::string& r, FaceSide at, FaceSide ab, FaceSide bt, FaceSide bb, FaceSide ct,
                       FaceSide cb) {
            v.push_back(cell(r, 'A', at, ab));
            v.push_back(cell(r, 'B', bt, bb));
            v.push_back(cell(r, 'C', ct, cb));
        };
        row("1", side(SM::delta, SM::delta), side(SM::delta, SM::delta), side(MM::m, SM::delta),
            side(SM::delta, MM::m), side(MM::m, MM::m), side(MM::m, MM::m));
        row("2.a", side(SM::delta1, SM::delta1), side(SM::delta, SM::delta1), side(MM::m1, SM::delta),
            side(SM::delta1, MM::m1), side(MM::m1, MM::m1), side(MM::m1, MM::m));
        row("2.b", side(SM::delta2, SM::delta1), side(SM::delta1, SM::delta2), side(MM::m2, SM::delta1),
            side(SM::delta1, MM::m2), side(MM::m1, MM::m2), side(MM::m2, MM::m1));
        row("2.c", side(SM::delta, SM::delta2), side(SM::delta2, SM::delta2), side(MM::m, SM::delta2),
            side(SM::delta2, MM::m2), side(MM::m2, MM::m), side(MM::m2, MM::m2));
        row("3.a.i", side(SM::delta2, SM::delta0), side(SM::delta0, SM::delta), side(MM::m2, SM::delta0),
            side(SM::delta0, MM::m), side(MM::m0, MM::m2), side(MM::m, MM::m0));
        row("3.a.ii", zero, zero, zero, zero, zero, zero);
        row("3.b.i", side(SM::delta1, SM::delta0), side(SM::delta2, SM::delta0), side(MM::m1, SM::delta2),
            side(SM::delta0, MM::m0), side(MM::m0, MM::m1), side(MM::m0, MM::m2));
        row("3.b.ii", zero, zero, side(MM::m1, SM::delta2), zero, zero, zero);
        row("3.c.i", side(SM::delta0, SM::delta), side(SM::delta1, SM::delta0), side(MM::m0, SM::delta1),
            side(SM::delta, MM::m0), side(MM::m, MM::m0), side(MM::m0, MM::m1));
        row("3.c.ii", zero, zero, zero, zero, zero, zero);
        row("4.a", side(SM::delta0, SM::delta2), side(SM::delta0, SM::delta1), side(MM::m0, SM::delta0),
            side(SM::delta2, MM::m1), side(MM::m2, MM::m0), side(MM::m1, MM::m0));
        row("4.b", side(SM::delta0, SM::delta2), zero, zero, zero, side(MM::m2, MM::m0), zero);
        row("4.c", zero, side(SM::delta0, SM::delta1), zero, zero, zero, side(MM::m1, MM::m0));
        row("4.d.i", zero, zero, zero, side(SM::delta0, MM::m0), zero, zero);
        row("4.d.ii", zero, zero, zero, zero, zero, zero);
        return v;
    }();
    return t;
}

FaceCell derived_cell(const std::string& row, char column)
{
    const auto it = models().find(row);
    if (it == models().end())
        throw Error(ErrorKind::pattern_mismatch, "no table row " + row);
    const SurfaceBackend g2(2);
    const Word a = parse_word(it->second.a, 2), b = parse_word(it->second.b, 2), c = parse_word(it->second.c, 2);
    auto cls = [&](const Word& w) { return g2.canonical_class(w); };
    const ConjClass A = cls(a), B = cls(b), C = cls(c), AB = cls(a * b), BC = cls(b * c), ABC = cls(a * b * c);

    auto reduce = [](FaceMap outer, FaceMap inner) -> FaceSide {
        const bool dead = (std::holds_alternative<MergeMap>(outer) && std::get<MergeMap>(outer) == MergeMap::zero) ||
                          (std::holds_alternative<SplitMap>(outer) && std::get<SplitMap>(outer) == SplitMap::zero) ||
                          (std::holds_alternative<MergeMap>(inner) && std::get<MergeMap>(inner) == MergeMap::zero) ||
                          (std::holds_alternative<SplitMap>(inner) && std::get<SplitMap>(inner) == SplitMap::zero);
        return dead ? FaceSide{} : FaceSide{outer, inner};
    };

    switch (column) {
    case 'A':
        return cell(row, 'A', reduce(resolve_split_case(AB, A, B), resolve_split_case(ABC, AB, C)),
                    reduce(resolve_split_case(BC, B, C), resolve_split_case(ABC, A, BC)));
    case 'B':
        return cell(row, 'B', reduce(resolve_merge_case(A, B, AB), resolve_split_case(BC, B, C)),
                    reduce(resolve_split_case(ABC, AB, C), resolve_merge_case(A, BC, ABC)));
    case 'C':
        return cell(row, 'C', reduce(resolve_merge_case(AB, C, ABC), resolve_merge_case(A, B, AB)),
                    reduce(resolve_merge_case(A, BC, ABC), resolve_merge_case(B, C, BC)));
    default: throw Error(ErrorKind::pattern_mismatch, std::string("no table column ") + column);
    }
}

std::vector<CellReport> verify_table1()
{
    std::vector<CellReport> out;
    for (const FaceCell& printed : printed_table()) {
        CellReport r;
        r.row = printed.row;
        r.column = printed.column;
        const GF2Matrix top = side_matrix(printed.column, true, printed.top);
        const GF2Matrix bottom = side_matrix(printed.column, false, printed.bottom);
        r.printed_holds = top == bottom;
        const FaceCell derived = derived_cell(printed.row, printed.column);
        r.matches_dispatch = side_matrix(printed.column, true, derived.top) == top &&
                             side_matrix(printed.column, false, derived.bottom) == bottom;
        const std::size_t factors = printed.column == 'A' ? 1 : printed.column == 'B' ? 2 : 3;
        for (std::size_t x = 0; x < top.rows() && r.witness.empty(); ++x)
            for (std::size_t y = 0; y < top.cols(); ++y)
                if (top.get(x, y) != bottom.get(x, y)) {
                    r.witness = basis_string(x, factors);
                    break;
                }
        if (r.witness.empty() && !r.matches_dispatch)
            r.witness = "dispatch gives " + to_string(derived.top, derived.column, true) + " = " +
                        to_string(derived.bottom, derived.column, false);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace hkh
