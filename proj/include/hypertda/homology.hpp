#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "hypertda/gf2.hpp"
#include "hypertda/topology.hpp"

namespace hypertda {

// A zero-boundary chain exhibiting one homology class; support simplices are
// cell-vertex tuples in the complex's canonical order.
struct CycleRep {
    int dimension = 1;
    std::vector<std::vector<std::int32_t>> support;

    bool operator==(const CycleRep&) const = default;
};

struct HomologySummary {
    std::vector<std::int64_t> betti;                     // beta_0..beta_cap
    std::vector<std::vector<CycleRep>> representatives;  // per dimension 0..cap (dim 0 left empty)
    std::vector<std::size_t> cells;                      // simplex counts per materialized dimension
};

// Rows are (d-1)-simplices, columns d-simplices, entry 1 iff facet.
// Requires d >= 1 and the complex materialized through d.
Gf2Matrix boundary_matrix(const SimplicialComplex& k, int d);

// beta_d = #d-simplices - rank(boundary_d) - rank(boundary_{d+1});
// requires materialization through cap+1.
std::vector<std::int64_t> betti_numbers(const SimplicialComplex& k, int cap);

// Exactly beta_d representatives: image pivots from the (d+1)-boundary, a
// kernel basis of the d-boundary via combination tracking, kernel vectors
// reduced by image-plus-survivor pivots, nonzero survivors emitted.
std::vector<CycleRep> homology_basis(const SimplicialComplex& k, int d);

// Betti numbers and representatives for dimensions 1..cap in one pass.
HomologySummary compute_homology(const SimplicialComplex& k, int cap);

// Alternating sum of simplex counts over the materialized dimensions.
std::int64_t euler_characteristic(const SimplicialComplex& k);

// True iff the formal boundary of the support cancels pairwise over GF(2).
bool cycle_has_zero_boundary(const SimplicialComplex& k, const CycleRep& rep);

nlohmann::json to_json(const HomologySummary& s);

}  // namespace hypertda
