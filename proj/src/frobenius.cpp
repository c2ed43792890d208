#include "hkh/frobenius.hpp"

#include "hkh/error.hpp"

namespace hkh {

namespace {

constexpr Label P = Label::plus;
constexpr Label M = Label::minus;

// Shared five-way dispatch; returns 0..4 for the classical map, the
// "1", "2", "0" variants and the zero map.
int dispatch(const ConjClass& c1, const ConjClass& c2, const ConjClass& c, const char* what)
{
    const bool t1 = c1.trivial, t2 = c2.trivial, t = c.trivial;
    if (t1 && t2 && t)
        return 0;
    if (t2 && !t1 && !t && c1 == c)
        return 1;
    if (t1 && !t2 && !t && c2 == c)
        return 2;
    if (t && !t1 && !t2 && c1 == c2)
        return 3;
    if (!t1 && !t2 && !t)
        return 4;
    throw Error(ErrorKind::corrupted_resolution, std::string("impossible class pattern at a ") + what);
}

}  // namespace

std::string to_string(MergeMap f)
{
    switch (f) {
    case MergeMap::m: return "m";
    case MergeMap::m0: return "m0";
    case MergeMap::m1: return "m1";
    case MergeMap::m2: return "m2";
    case MergeMap::zero: return "0";
    }
    return "?";
}

std::string to_string(SplitMap f)
{
    switch (f) {
    case SplitMap::delta: return "D";
    case SplitMap::delta0: return "D0";
    case SplitMap::delta1: return "D1";
    case SplitMap::delta2: return "D2";
    case SplitMap::zero: return "0";
    }
    return "?";
}

std::optional<Label> apply(MergeMap f, Label x, Label y)
{
    const bool xp = x == P, yp = y == P;
    switch (f) {
    case MergeMap::m:
        if (xp && yp)
            return P;
        if (xp || yp)
            return M;
        return std::nullopt;
    case MergeMap::m0:
        if (xp != yp)
            return M;
        return std::nullopt;
    case MergeMap::m1:
        if (xp && yp)
            return P;
        if (!xp && yp)
            return M;
        return std::nullopt;
    case MergeMap::m2:
        if (xp && yp)
            return P;
        if (xp && !yp)
            return M;
        return std::nullopt;
    case MergeMap::zero: return std::nullopt;
    }
    return std::nullopt;
}

std::vector<std::pair<Label, Label>> apply(SplitMap f, Label x)
{
    const bool xp = x == P;
    switch (f) {
    case SplitMap::delta:
        if (xp)
            return {{P, M}, {M, P}};
        return {{M, M}};
    case SplitMap::delta0:
        if (xp)
            return {{P, M}, {M, P}};
        return {};
    case SplitMap::delta1:
        if (xp)
            return {{P, M}};
        return {{M, M}};
    case SplitMap::delta2:
        if (xp)
            return {{M, P}};
        return {{M, M}};
    case SplitMap::zero: return {};
    }
    return {};
}

MergeMap resolve_merge_case(const ConjClass& c1, const ConjClass& c2, const ConjClass& c)
{
    static constexpr MergeMap table[] = {MergeMap::m, MergeMap::m1, MergeMap::m2, MergeMap::m0, MergeMap::zero};
    return table[dispatch(c1, c2, c, "merge")];
}

SplitMap resolve_split_case(const ConjClass& c, const ConjClass& c1, const ConjClass& c2)
{
    static constexpr SplitMap table[] = {SplitMap::delta, SplitMap::delta1, SplitMap::delta2, SplitMap::delta0,
                                         SplitMap::zero};
    return table[dispatch(c1, c2, c, "split")];
}

}  // namespace hkh
