#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include <json.hpp>

#include "hypertda/hypergraph.hpp"

namespace hypertda {

// Full proper-subset relation among collapsed nodes (transitively closed by
// construction, not the Hasse reduction).
struct ContainmentDag {
    std::size_t node_count = 0;
    // supersets[a] = sorted ids b with member_set(a) a proper subset of member_set(b)
    std::vector<std::vector<std::int32_t>> supersets;

    std::size_t arc_count() const {
        std::size_t n = 0;
        for (const auto& s : supersets) n += s.size();
        return n;
    }
};

ContainmentDag containment_relation(const CollapsedHypergraph& ch);

// The hyperedge containment graph: one vertex per collapsed node, an
// undirected edge whenever one member set properly contains the other.
struct HcGraph {
    std::size_t node_count = 0;
    std::vector<std::array<std::int32_t, 2>> edges;  // sorted pairs, lexicographic order
    std::vector<std::vector<std::int32_t>> adj;
};

HcGraph hcg(const ContainmentDag& dag);

// A nest: node ids in containment order (strictly increasing member-set size).
using Chain = std::vector<std::int32_t>;

// All chains of length 1..max_len, each once, sorted lexicographically by
// node-id tuple (ids within a chain ordered by member-set size).
std::vector<Chain> enumerate_chains(const ContainmentDag& dag, int max_len);

enum class ComplexMode { nesting, closure };

const char* complex_mode_name(ComplexMode m);

// Graded simplex tables. grades[d] holds the d-simplices as flat runs of
// (d+1) strictly increasing cell-vertex ids, lexicographically sorted.
class SimplicialComplex {
public:
    struct Grade {
        int verts_per_simplex = 1;
        std::vector<std::int32_t> flat;

        std::size_t size() const { return verts_per_simplex ? flat.size() / static_cast<std::size_t>(verts_per_simplex) : 0; }
        std::span<const std::int32_t> operator[](std::size_t i) const {
            return {flat.data() + i * static_cast<std::size_t>(verts_per_simplex),
                    static_cast<std::size_t>(verts_per_simplex)};
        }
    };

    ComplexMode mode = ComplexMode::nesting;
    int dim_cap = 0;            // materialized through this dimension
    std::vector<Grade> grades;  // size dim_cap + 1

    std::size_t simplex_count(int d) const {
        return (d >= 0 && d <= dim_cap) ? grades[static_cast<std::size_t>(d)].size() : 0;
    }
    std::span<const std::int32_t> simplex(int d, std::size_t i) const {
        return grades[static_cast<std::size_t>(d)][i];
    }
    // index in canonical order, or -1 if absent
    std::ptrdiff_t index_of(int d, std::span<const std::int32_t> simplex) const;
};

inline constexpr std::uint64_t kDefaultSubsetBudget = 100'000'000ULL;

// Clique complex of the HCG: d-simplices are the (d+1)-chains, with
// collapsed-node ids as cell vertices. Materialized through dim_cap.
SimplicialComplex nesting_complex(const CollapsedHypergraph& ch, int dim_cap);

// Each member set contributes all of its subsets of size <= dim_cap+1,
// deduplicated across nodes; hypergraph vertex ids as cell vertices.
// Throws BudgetError when the top-dimension subset count exceeds the budget.
SimplicialComplex closure_complex(const CollapsedHypergraph& ch, int dim_cap,
                                  std::uint64_t subset_budget = kDefaultSubsetBudget);

nlohmann::json to_json(const SimplicialComplex& k);

}  // namespace hypertda
