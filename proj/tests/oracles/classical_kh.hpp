#pragma once

// Brute-force classical Khovanov homology over GF(2), written without the
// library's state cube or complex: circles come from a union-find over
// crossing slots and every chain group is a dense 0/1 matrix.

#include "hkh/diagram.hpp"
#include "naive_rank.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>
#include <vector>

namespace oracle {

struct KhEntry {
    int i;
    int j;
    long dim;

    bool operator==(const KhEntry&) const = default;
};

namespace detail {

struct Uf {
    std::vector<int> p;
    explicit Uf(int n) : p(static_cast<std::size_t>(n)) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) { return p[static_cast<std::size_t>(x)] == x ? x : p[static_cast<std::size_t>(x)] = find(p[static_cast<std::size_t>(x)]); }
    void join(int a, int b) { p[static_cast<std::size_t>(find(a))] = find(b); }
};

struct StateCircles {
    int count = 0;
    std::vector<int> circle_of_node;  // node = 4*crossing + slot
};

}  // namespace detail

// Signs from walking each strand backwards from an incoming understrand.
// Components that never pass under fall back to the sign given in the input.
inline std::vector<int> oracle_signs(const hkh::Diagram& d)
{
    const int n = static_cast<int>(d.crossings.size());
    std::map<int, std::vector<int>> where;  // edge id -> nodes
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k)
            where[d.crossings[static_cast<std::size_t>(c)].slots[static_cast<std::size_t>(k)]].push_back(4 * c + k);
    std::vector<int> is_head(static_cast<std::size_t>(4 * n), -1);
    auto other_end = [&](int node) {
        const auto& v = where.at(d.crossings[static_cast<std::size_t>(node / 4)].slots[static_cast<std::size_t>(node % 4)]);
        return v[0] == node ? v[1] : v[0];
    };
    for (int c = 0; c < n; ++c) {
        int node = 4 * c;  // slot 0: an edge's head
        while (is_head[static_cast<std::size_t>(node)] < 0) {
            is_head[static_cast<std::size_t>(node)] = 1;
            const int tail = other_end(node);
            is_head[static_cast<std::size_t>(tail)] = 0;
            node = 4 * (tail / 4) + (tail % 4 + 2) % 4;
        }
    }
    std::vector<int> signs;
    for (int c = 0; c < n; ++c) {
        if (is_head[static_cast<std::size_t>(4 * c + 3)] < 0) {
            // The strand only ever passes over, so its direction is whatever
            // the input says.
            const int given = d.crossings[static_cast<std::size_t>(c)].sign;
            if (given != 1 && given != -1)
                throw std::runtime_error("oracle: component without an undercrossing");
            signs.push_back(given);
            continue;
        }
        signs.push_back(is_head[static_cast<std::size_t>(4 * c + 3)] == 1 ? 1 : -1);
    }
    return signs;
}

inline std::vector<KhEntry> classical_kh(const hkh::Diagram& d)
{
    const int n = static_cast<int>(d.crossings.size());
    const int loops = static_cast<int>(d.free_loops.size());
    const auto signs = oracle_signs(d);
    int n_plus = 0, n_minus = 0;
    for (int s : signs)
        (s > 0 ? n_plus : n_minus)++;

    std::map<int, std::vector<int>> where;
    for (int c = 0; c < n; ++c)
        for (int k = 0; k < 4; ++k)
            where[d.crossings[static_cast<std::size_t>(c)].slots[static_cast<std::size_t>(k)]].push_back(4 * c + k);

    const long states = 1L << n;
    std::vector<detail::StateCircles> circles(static_cast<std::size_t>(states));
    for (long s = 0; s < states; ++s) {
        detail::Uf uf(4 * n);
        for (const auto& [id, nodes] : where)
            uf.join(nodes[0], nodes[1]);
        for (int c = 0; c < n; ++c) {
            if ((s >> c) & 1) {
                uf.join(4 * c + 0, 4 * c + 3);
                uf.join(4 * c + 1, 4 * c + 2);
            } else {
                uf.join(4 * c + 0, 4 * c + 1);
                uf.join(4 * c + 2, 4 * c + 3);
            }
        }
        std::map<int, int> label;
        auto& sc = circles[static_cast<std::size_t>(s)];
        for (int v = 0; v < 4 * n; ++v) {
            const int r = uf.find(v);
            if (!label.count(r))
                label[r] = static_cast<int>(label.size());
            sc.circle_of_node.push_back(label[r]);
        }
        sc.count = static_cast<int>(label.size()) + loops;
    }

    // Generators grouped by (i, j).
    using Gen = std::pair<long, unsigned>;
    std::map<std::pair<int, int>, std::vector<Gen>> groups;
    std::map<Gen, std::pair<std::pair<int, int>, std::size_t>> index;
    for (long s = 0; s < states; ++s) {
        const int b = __builtin_popcountl(static_cast<unsigned long>(s));
        const int m = circles[static_cast<std::size_t>(s)].count;
        for (unsigned x = 0; x < (1u << m); ++x) {
            const int plus = __builtin_popcount(x);
            const std::pair<int, int> key{b - n_minus, (plus - (m - plus)) + b + n_plus - 2 * n_minus};
            index[{s, x}] = {key, groups[key].size()};
            groups[key].push_back({s, x});
        }
    }

    // Matrices d: (i, j) -> (i+1, j), rows = sources.
    std::map<std::pair<int, int>, Matrix> dmat;
    for (const auto& [key, gens] : groups) {
        auto next = groups.find({key.first + 1, key.second});
        if (next == groups.end())
            continue;
        Matrix m(gens.size(), std::vector<int>(next->second.size(), 0));
        for (std::size_t r = 0; r < gens.size(); ++r) {
            const auto [s, x] = gens[r];
            const auto& src = circles[static_cast<std::size_t>(s)];
            for (int c = 0; c < n; ++c) {
                if ((s >> c) & 1)
                    continue;
                const long t = s | (1L << c);
                const auto& tgt = circles[static_cast<std::size_t>(t)];
                const int a0 = src.circle_of_node[static_cast<std::size_t>(4 * c)];
                const int a1 = src.circle_of_node[static_cast<std::size_t>(4 * c + 1)];
                const int a2 = src.circle_of_node[static_cast<std::size_t>(4 * c + 2)];
                const int b0 = tgt.circle_of_node[static_cast<std::size_t>(4 * c)];
                const int b1 = tgt.circle_of_node[static_cast<std::size_t>(4 * c + 1)];
                // In s, slot pairs (0,1),(2,3) lie on circles a0=a1, a2; in t,
                // pairs (0,3),(1,2) lie on b0, b1.
                (void)a1;
                const int ms = src.count - loops, mt = tgt.count - loops;
                // Untouched circles: source circle -> target circle via any node.
                unsigned base = 0;
                std::vector<bool> seen(static_cast<std::size_t>(ms), false);
                for (int v = 0; v < 4 * n; ++v) {
                    const int sc = src.circle_of_node[static_cast<std::size_t>(v)];
                    if (sc == a0 || sc == a2 || seen[static_cast<std::size_t>(sc)])
                        continue;
                    seen[static_cast<std::size_t>(sc)] = true;
                    if ((x >> sc) & 1)
                        base |= 1u << tgt.circle_of_node[static_cast<std::size_t>(v)];
                }
                for (int l = 0; l < loops; ++l)
                    if ((x >> (ms + l)) & 1)
                        base |= 1u << (mt + l);
                std::vector<unsigned> images;
                if (a0 != a2 && b0 == b1) {  // merge
                    const bool p = (x >> a0) & 1, q = (x >> a2) & 1;
                    if (p && q)
                        images.push_back(base | (1u << b0));
                    else if (p || q)
                        images.push_back(base);
                } else if (a0 == a2 && b0 != b1) {  // split
                    if ((x >> a0) & 1) {
                        images.push_back(base | (1u << b0));
                        images.push_back(base | (1u << b1));
                    } else {
                        images.push_back(base);
                    }
                } else {
                    throw std::runtime_error("oracle: unexpected bifurcation on a planar diagram");
                }
                for (unsigned y : images) {
                    const auto& [tkey, col] = index.at({t, y});
                    m[r][col] ^= 1;
                    (void)tkey;
                }
            }
        }
        dmat[key] = std::move(m);
    }

    std::vector<KhEntry> out;
    for (const auto& [key, gens] : groups) {
        std::size_t rk_out = 0, rk_in = 0;
        if (auto it = dmat.find(key); it != dmat.end())
            rk_out = naive_rank(it->second);
        if (auto it = dmat.find({key.first - 1, key.second}); it != dmat.end())
            rk_in = naive_rank(it->second);
        const long dim = static_cast<long>(gens.size() - rk_out - rk_in);
        if (dim > 0)
            out.push_back({key.first, key.second, dim});
    }
    std::sort(out.begin(), out.end(), [](const KhEntry& a, const KhEntry& b) {
        return std::tie(a.i, a.j) < std::tie(b.i, b.j);
    });
    return out;
}

}  // namespace oracle
