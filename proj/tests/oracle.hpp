#pragma once

// Test-only oracles, written before and kept independent of the engine's
// sparse column reduction: dense row-echelon rank over GF(2), a union-find
// component count, and brute-force cycle-space enumeration for tiny inputs.

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "hypertda/topology.hpp"

namespace oracle {

using DenseMatrix = std::vector<std::vector<std::uint8_t>>;  // row-major

inline int dense_rank_gf2(DenseMatrix m) {
    if (m.empty() || m[0].empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    int rank = 0;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
        std::size_t sel = pivot_row;
        while (sel < rows && m[sel][c] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[pivot_row]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != pivot_row && m[r][c]) {
                for (std::size_t k = c; k < cols; ++k) m[r][k] ^= m[pivot_row][k];
            }
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

// Dense boundary matrix built with its own tuple->index map.
inline DenseMatrix dense_boundary(const hypertda::SimplicialComplex& k, int d) {
    const std::size_t rows = k.simplex_count(d - 1), cols = k.simplex_count(d);
    std::map<std::vector<std::int32_t>, std::size_t> row_index;
    for (std::size_t i = 0; i < rows; ++i) {
        auto s = k.simplex(d - 1, i);
        row_index[{s.begin(), s.end()}] = i;
    }
    DenseMatrix m(rows, std::vector<std::uint8_t>(cols, 0));
    for (std::size_t j = 0; j < cols; ++j) {
        auto s = k.simplex(d, j);
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<std::int32_t> facet;
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) facet.push_back(s[i]);
            m[row_index.at(facet)][j] ^= 1;
        }
    }
    return m;
}

inline std::vector<std::int64_t> betti(const hypertda::SimplicialComplex& k, int cap) {
    std::vector<std::int64_t> out;
    std::int64_t rank_down = 0;
    for (int d = 0; d <= cap; ++d) {
        std::int64_t rank_up = 0;
        if (d + 1 <= k.dim_cap && k.simplex_count(d + 1) > 0)
            rank_up = dense_rank_gf2(dense_boundary(k, d + 1));
        out.push_back(static_cast<std::int64_t>(k.simplex_count(d)) - rank_down - rank_up);
        rank_down = rank_up;
    }
    return out;
}

// Connected components of the 1-skeleton via plain union-find.
inline std::size_t components(const hypertda::SimplicialComplex& k) {
    std::map<std::int32_t, std::size_t> id;
    for (std::size_t i = 0; i < k.simplex_count(0); ++i) id[k.simplex(0, i)[0]] = i;
    std::vector<std::size_t> parent(id.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t n = id.size();
    if (k.dim_cap >= 1) {
        for (std::size_t e = 0; e < k.simplex_count(1); ++e) {
            auto s = k.simplex(1, e);
            std::size_t a = find(id.at(s[0])), b = find(id.at(s[1]));
            if (a != b) {
                parent[a] = b;
                --n;
            }
        }
    }
    return n;
}

// All nonzero cycles (zero-boundary 1-chains) by exhaustive subset search;
// only usable when the complex has very few edges.
inline std::vector<std::vector<std::size_t>> brute_force_cycles(const hypertda::SimplicialComplex& k) {
    const std::size_t edges = k.simplex_count(1);
    std::vector<std::vector<std::size_t>> cycles;
    for (std::uint64_t mask = 1; mask < (1ULL << edges); ++mask) {
        std::map<std::int32_t, int> degree;
        for (std::size_t e = 0; e < edges; ++e) {
            if (!(mask >> e & 1)) continue;
            auto s = k.simplex(1, e);
            degree[s[0]] ^= 1;
            degree[s[1]] ^= 1;
        }
        bool zero = true;
        for (const auto& [_, parity] : degree)
            if (parity) { zero = false; break; }
        if (!zero) continue;
        std::vector<std::size_t> support;
        for (std::size_t e = 0; e < edges; ++e)
            if (mask >> e & 1) support.push_back(e);
        cycles.push_back(std::move(support));
    }
    return cycles;
}

}  // namespace oracle
