#include "hypertda/homology.hpp"

#include <algorithm>
#include <cassert>

#include "hypertda/errors.hpp"

namespace hypertda {

namespace {

void require_materialized(const SimplicialComplex& k, int d, const char* what) {
    if (d < 1 || d > k.dim_cap)
        throw DimensionError(std::string(what) + " at dimension " + std::to_string(d) +
                             " needs the complex materialized through it (cap " +
                             std::to_string(k.dim_cap) + ")");
}

// Row lookup for (d-1)-facets. Vertex rows are usually the identity map and
// edge rows fit packed 64-bit keys; wider simplices fall back to the
// complex's own binary search.
class FacetIndex {
public:
    FacetIndex(const SimplicialComplex& k, int facet_dim) : k_(k), dim_(facet_dim) {
        const auto& grade = k.grades[static_cast<std::size_t>(facet_dim)];
        if (facet_dim == 0) {
            identity_ = true;
            for (std::size_t i = 0; i < grade.size(); ++i)
                if (grade.flat[i] != static_cast<std::int32_t>(i)) { identity_ = false; break; }
        } else if (facet_dim == 1) {
            packed_.reserve(grade.size());
            for (std::size_t i = 0; i < grade.size(); ++i)
                packed_.push_back(pack(grade.flat[2 * i], grade.flat[2 * i + 1]));
        }
    }

    std::int32_t lookup(std::span<const std::int32_t> facet) const {
        if (identity_) return facet[0];
        if (dim_ == 1) {
            auto it = std::lower_bound(packed_.begin(), packed_.end(), pack(facet[0], facet[1]));
            assert(it != packed_.end() && *it == pack(facet[0], facet[1]) && "complex is not downward closed");
            return static_cast<std::int32_t>(it - packed_.begin());
        }
        std::ptrdiff_t row = k_.index_of(dim_, facet);
        assert(row >= 0 && "complex is not downward closed");
        return static_cast<std::int32_t>(row);
    }

private:
    static std::uint64_t pack(std::int32_t a, std::int32_t b) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) |
               static_cast<std::uint32_t>(b);
    }

    const SimplicialComplex& k_;
    int dim_;
    bool identity_ = false;
    std::vector<std::uint64_t> packed_;
};

// column j of the d-boundary, built on the fly
void boundary_column(const SimplicialComplex& k, int d, std::size_t j, const FacetIndex& rows,
                     std::vector<std::int32_t>& col, std::vector<std::int32_t>& facet) {
    auto s = k.simplex(d, j);
    col.clear();
    facet.resize(s.size() - 1);
    for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::size_t w = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (i != drop) facet[w++] = s[i];
        col.push_back(rows.lookup(facet));
    }
    std::sort(col.begin(), col.end());
}

// reduces every d-boundary column in canonical order; never materializes the
// whole matrix, only the surviving pivot columns
Gf2ColumnReducer reduce_boundary(const SimplicialComplex& k, int d) {
    Gf2ColumnReducer reducer(static_cast<std::int64_t>(k.simplex_count(d - 1)));
    FacetIndex rows(k, d - 1);
    std::vector<std::int32_t> col, facet;
    for (std::size_t j = 0; j < k.simplex_count(d); ++j) {
        boundary_column(k, d, j, rows, col, facet);
        reducer.absorb(col);
    }
    return reducer;
}

std::int64_t boundary_rank(const SimplicialComplex& k, int d) {
    if (d < 1 || k.simplex_count(d) == 0) return 0;
    return static_cast<std::int64_t>(reduce_boundary(k, d).rank());
}

}  // namespace

Gf2Matrix boundary_matrix(const SimplicialComplex& k, int d) {
    require_materialized(k, d, "boundary matrix");
    Gf2Matrix m;
    m.rows = static_cast<std::int64_t>(k.simplex_count(d - 1));
    m.cols.resize(k.simplex_count(d));
    FacetIndex rows(k, d - 1);
    std::vector<std::int32_t> facet;
    for (std::size_t j = 0; j < k.simplex_count(d); ++j) boundary_column(k, d, j, rows, m.cols[j], facet);
    return m;
}

std::vector<std::int64_t> betti_numbers(const SimplicialComplex& k, int cap) {
    if (cap < 0) throw ConfigError("betti cap must be >= 0");
    if (k.dim_cap < cap + 1)
        throw DimensionError("betti through dimension " + std::to_string(cap) +
                             " needs the complex materialized through " + std::to_string(cap + 1));
    std::vector<std::int64_t> betti(static_cast<std::size_t>(cap) + 1, 0);
    std::int64_t rank_down = 0;  // rank of boundary_d, starting at d = 0 (zero map)
    for (int d = 0; d <= cap; ++d) {
        std::int64_t rank_up = boundary_rank(k, d + 1);
        betti[static_cast<std::size_t>(d)] =
            static_cast<std::int64_t>(k.simplex_count(d)) - rank_down - rank_up;
        rank_down = rank_up;
    }
    return betti;
}

std::vector<CycleRep> homology_basis(const SimplicialComplex& k, int d) {
    if (d < 1) throw ConfigError("homology_basis needs d >= 1");
    if (k.dim_cap < d + 1)
        throw DimensionError("homology_basis at dimension " + std::to_string(d) +
                             " needs the complex materialized through " + std::to_string(d + 1));

    const std::int64_t n_d = static_cast<std::int64_t>(k.simplex_count(d));
    if (n_d == 0) return {};

    // image pivots from the (d+1)-boundary; the reducer keeps only pivots
    Gf2ColumnReducer image = [&] {
        Gf2ColumnReducer r(n_d);
        FacetIndex rows(k, d);
        std::vector<std::int32_t> col, facet;
        for (std::size_t j = 0; j < k.simplex_count(d + 1); ++j) {
            boundary_column(k, d + 1, j, rows, col, facet);
            r.absorb(col);
        }
        return r;
    }();
    const std::int64_t rank_up = static_cast<std::int64_t>(image.rank());

    // cheap pass first: skip kernel tracking entirely when there are no holes
    const std::int64_t beta = n_d - boundary_rank(k, d) - rank_up;
    if (beta <= 0) return {};

    // kernel basis of the d-boundary via combination tracking
    std::vector<std::vector<std::int32_t>> kernel;
    {
        Gf2ColumnReducer reducer(static_cast<std::int64_t>(k.simplex_count(d - 1)));
        FacetIndex rows(k, d - 1);
        std::vector<std::int32_t> col, facet, track;
        for (std::size_t j = 0; j < k.simplex_count(d); ++j) {
            boundary_column(k, d, j, rows, col, facet);
            track = {static_cast<std::int32_t>(j)};
            if (!reducer.absorb_tracked(col, track)) kernel.push_back(track);
        }
    }

    // reduce kernel vectors by image pivots; survivors become new pivots so
    // the emitted classes stay independent modulo the image
    std::vector<CycleRep> reps;
    for (auto& vec : kernel) {
        if (!image.absorb(vec)) continue;
        CycleRep rep;
        rep.dimension = d;
        for (std::int32_t idx : image.pivot_columns().back()) {
            auto s = k.simplex(d, static_cast<std::size_t>(idx));
            rep.support.emplace_back(s.begin(), s.end());
        }
        std::sort(rep.support.begin(), rep.support.end());
        reps.push_back(std::move(rep));
    }
    if (static_cast<std::int64_t>(reps.size()) != beta)
        throw ConsistencyError("homology basis size " + std::to_string(reps.size()) +
                               " does not match beta_" + std::to_string(d) + " = " +
                               std::to_string(beta));
    return reps;
}

HomologySummary compute_homology(const SimplicialComplex& k, int cap) {
    HomologySummary s;
    s.betti = betti_numbers(k, cap);
    s.representatives.resize(static_cast<std::size_t>(cap) + 1);
    for (int d = 1; d <= cap; ++d)
        s.representatives[static_cast<std::size_t>(d)] = homology_basis(k, d);
    for (int d = 0; d <= k.dim_cap; ++d) s.cells.push_back(k.simplex_count(d));
    return s;
}

std::int64_t euler_characteristic(const SimplicialComplex& k) {
    std::int64_t chi = 0;
    for (int d = 0; d <= k.dim_cap; ++d) {
        std::int64_t n = static_cast<std::int64_t>(k.simplex_count(d));
        chi += (d % 2 == 0) ? n : -n;
    }
    return chi;
}

bool cycle_has_zero_boundary(const SimplicialComplex& k, const CycleRep& rep) {
    if (rep.dimension < 1) return false;
    std::vector<std::vector<std::int32_t>> facets;
    for (const auto& s : rep.support) {
        if (k.index_of(rep.dimension, s) < 0) return false;
        for (std::size_t drop = 0; drop < s.size(); ++drop) {
            std::vector<std::int32_t> f;
            f.reserve(s.size() - 1);
            for (std::size_t i = 0; i < s.size(); ++i)
                if (i != drop) f.push_back(s[i]);
            facets.push_back(std::move(f));
        }
    }
    std::sort(facets.begin(), facets.end());
    for (std::size_t i = 0; i < facets.size();) {
        std::size_t j = i;
        while (j < facets.size() && facets[j] == facets[i]) ++j;
        if ((j - i) % 2 != 0) return false;
        i = j;
    }
    return true;
}

nlohmann::json to_json(const HomologySummary& s) {
    nlohmann::json j;
    j["betti"] = s.betti;
    nlohmann::json reps = nlohmann::json::object();
    for (std::size_t d = 1; d < s.representatives.size(); ++d) {
        nlohmann::json list = nlohmann::json::array();
        for (const CycleRep& r : s.representatives[d]) list.push_back(r.support);
        reps[std::to_string(d)] = std::move(list);
    }
    j["representatives"] = std::move(reps);
    j["cells"] = s.cells;
    return j;
}

}  // namespace hypertda
