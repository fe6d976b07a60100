#include "hypertda/topology.hpp"

#include <algorithm>
#include <numeric>

#include "hypertda/errors.hpp"

namespace hypertda {

namespace {

bool is_proper_subset(const std::vector<std::int32_t>& a, const std::vector<std::int32_t>& b) {
    return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

ContainmentDag containment_relation(const CollapsedHypergraph& ch) {
    ContainmentDag dag;
    dag.node_count = ch.nodes.size();
    dag.supersets.assign(dag.node_count, {});

    // size-sort prefilter: only |a| < |b| pairs can be proper subsets
    std::vector<std::int32_t> order(dag.node_count);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int32_t x, std::int32_t y) {
        return ch.nodes[static_cast<std::size_t>(x)].members.size() <
               ch.nodes[static_cast<std::size_t>(y)].members.size();
    });
    for (std::size_t i = 0; i < order.size(); ++i) {
        const auto& small = ch.nodes[static_cast<std::size_t>(order[i])].members;
        for (std::size_t j = i + 1; j < order.size(); ++j) {
            const auto& big = ch.nodes[static_cast<std::size_t>(order[j])].members;
            if (is_proper_subset(small, big))
                dag.supersets[static_cast<std::size_t>(order[i])].push_back(order[j]);
        }
    }
    for (auto& s : dag.supersets) std::sort(s.begin(), s.end());
    return dag;
}

HcGraph hcg(const ContainmentDag& dag) {
    HcGraph g;
    g.node_count = dag.node_count;
    g.adj.assign(dag.node_count, {});
    for (std::size_t a = 0; a < dag.node_count; ++a) {
        for (std::int32_t b : dag.supersets[a]) {
            std::int32_t lo = static_cast<std::int32_t>(a), hi = b;
            if (lo > hi) std::swap(lo, hi);
            g.edges.push_back({lo, hi});
            g.adj[static_cast<std::size_t>(lo)].push_back(hi);
            g.adj[static_cast<std::size_t>(hi)].push_back(lo);
        }
    }
    std::sort(g.edges.begin(), g.edges.end());
    for (auto& a : g.adj) std::sort(a.begin(), a.end());
    return g;
}

namespace {

void extend_chain(const ContainmentDag& dag, Chain& chain, int max_len, std::vector<Chain>& out) {
    out.push_back(chain);
    if (static_cast<int>(chain.size()) == max_len) return;
    for (std::int32_t next : dag.supersets[static_cast<std::size_t>(chain.back())]) {
        chain.push_back(next);
        extend_chain(dag, chain, max_len, out);
        chain.pop_back();
    }
}

}  // namespace

std::vector<Chain> enumerate_chains(const ContainmentDag& dag, int max_len) {
    if (max_len < 1) throw ConfigError("max_len must be >= 1");
    std::vector<Chain> out;
    Chain chain;
    for (std::size_t start = 0; start < dag.node_count; ++start) {
        chain.assign(1, static_cast<std::int32_t>(start));
        extend_chain(dag, chain, max_len, out);
    }
    std::sort(out.begin(), out.end());
    return out;
}

const char* complex_mode_name(ComplexMode m) {
    return m == ComplexMode::nesting ? "nesting" : "closure";
}

std::ptrdiff_t SimplicialComplex::index_of(int d, std::span<const std::int32_t> simplex) const {
    if (d < 0 || d > dim_cap) return -1;
    const Grade& g = grades[static_cast<std::size_t>(d)];
    const std::size_t k = static_cast<std::size_t>(g.verts_per_simplex);
    if (simplex.size() != k) return -1;
    std::size_t lo = 0, hi = g.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        auto s = g[mid];
        int cmp = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if (s[i] != simplex[i]) {
                cmp = s[i] < simplex[i] ? -1 : 1;
                break;
            }
        }
        if (cmp == 0) return static_cast<std::ptrdiff_t>(mid);
        if (cmp < 0) lo = mid + 1;
        else hi = mid;
    }
    return -1;
}

namespace {

// Sorts and dedups a grade of fixed-width tuples in place. Tuples of width
// <= 4 go through a packed array sort; wider tuples (rare: only deep chains
// or dim caps above 3) use an index sort.
void canonicalize_grade(SimplicialComplex::Grade& g) {
    const std::size_t k = static_cast<std::size_t>(g.verts_per_simplex);
    const std::size_t n = k ? g.flat.size() / k : 0;
    if (n <= 1) return;
    if (k <= 4) {
        std::vector<std::array<std::int32_t, 4>> keys(n);
        for (std::size_t i = 0; i < n; ++i) {
            keys[i].fill(-1);
            for (std::size_t j = 0; j < k; ++j) keys[i][j] = g.flat[i * k + j];
        }
        std::sort(keys.begin(), keys.end());
        keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
        g.flat.resize(keys.size() * k);
        for (std::size_t i = 0; i < keys.size(); ++i)
            for (std::size_t j = 0; j < k; ++j) g.flat[i * k + j] = keys[i][j];
        return;
    }
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    auto cmp = [&](std::size_t a, std::size_t b) {
        return std::lexicographical_compare(g.flat.begin() + static_cast<std::ptrdiff_t>(a * k),
                                            g.flat.begin() + static_cast<std::ptrdiff_t>((a + 1) * k),
                                            g.flat.begin() + static_cast<std::ptrdiff_t>(b * k),
                                            g.flat.begin() + static_cast<std::ptrdiff_t>((b + 1) * k));
    };
    std::sort(idx.begin(), idx.end(), cmp);
    std::vector<std::int32_t> out;
    out.reserve(g.flat.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0 && !cmp(idx[i - 1], idx[i])) continue;  // duplicate
        out.insert(out.end(), g.flat.begin() + static_cast<std::ptrdiff_t>(idx[i] * k),
                   g.flat.begin() + static_cast<std::ptrdiff_t>((idx[i] + 1) * k));
    }
    g.flat = std::move(out);
}

}  // namespace

SimplicialComplex nesting_complex(const CollapsedHypergraph& ch, int dim_cap) {
    if (dim_cap < 1) throw ConfigError("dim_cap must be >= 1");
    SimplicialComplex k;
    k.mode = ComplexMode::nesting;
    k.dim_cap = dim_cap;
    k.grades.resize(static_cast<std::size_t>(dim_cap) + 1);
    for (int d = 0; d <= dim_cap; ++d) k.grades[static_cast<std::size_t>(d)].verts_per_simplex = d + 1;

    ContainmentDag dag = containment_relation(ch);
    std::vector<Chain> chains = enumerate_chains(dag, dim_cap + 1);
    Chain sorted;
    for (const Chain& c : chains) {
        sorted = c;
        std::sort(sorted.begin(), sorted.end());  // simplices are id-sorted tuples
        auto& grade = k.grades[c.size() - 1];
        grade.flat.insert(grade.flat.end(), sorted.begin(), sorted.end());
    }
    for (auto& g : k.grades) canonicalize_grade(g);
    return k;
}

SimplicialComplex closure_complex(const CollapsedHypergraph& ch, int dim_cap,
                                  std::uint64_t subset_budget) {
    if (dim_cap < 1) throw ConfigError("dim_cap must be >= 1");

    // budget guard on the top-dimension subset count
    const std::uint64_t top = static_cast<std::uint64_t>(dim_cap) + 1;
    std::uint64_t total = 0;
    for (const CollapsedNode& node : ch.nodes) {
        const std::uint64_t m = node.members.size();
        if (m < top) continue;
        std::uint64_t c = 1;
        bool overflow = false;
        for (std::uint64_t i = 0; i < top; ++i) {
            if (c > subset_budget) { overflow = true; break; }
            unsigned __int128 wide = static_cast<unsigned __int128>(c) * (m - i) / (i + 1);
            if (wide > subset_budget && i + 1 < top) { overflow = true; break; }
            c = static_cast<std::uint64_t>(wide > ~0ULL ? ~0ULL : wide);
        }
        if (overflow || c > subset_budget || c > subset_budget - total) {
            std::string name = node.labels.empty() ? "?" : label_to_string(node.labels.front());
            throw BudgetError("closure subset budget exceeded at hyperedge " + name, name);
        }
        total += c;
    }

    SimplicialComplex k;
    k.mode = ComplexMode::closure;
    k.dim_cap = dim_cap;
    k.grades.resize(static_cast<std::size_t>(dim_cap) + 1);
    for (int d = 0; d <= dim_cap; ++d) k.grades[static_cast<std::size_t>(d)].verts_per_simplex = d + 1;

    std::vector<std::size_t> comb;
    for (const CollapsedNode& node : ch.nodes) {
        const auto& mem = node.members;  // sorted, so emitted tuples are increasing
        for (int d = 0; d <= dim_cap; ++d) {
            const std::size_t k_sub = static_cast<std::size_t>(d) + 1;
            if (mem.size() < k_sub) continue;
            auto& grade = k.grades[static_cast<std::size_t>(d)];
            comb.resize(k_sub);
            std::iota(comb.begin(), comb.end(), 0);
            while (true) {
                for (std::size_t i : comb) grade.flat.push_back(mem[i]);
                // next combination
                std::size_t i = k_sub;
                while (i > 0) {
                    --i;
                    if (comb[i] != i + mem.size() - k_sub) break;
                    if (i == 0) { i = k_sub; break; }
                }
                if (i == k_sub) break;
                ++comb[i];
                for (std::size_t j = i + 1; j < k_sub; ++j) comb[j] = comb[j - 1] + 1;
            }
        }
    }
    for (auto& g : k.grades) canonicalize_grade(g);
    return k;
}

nlohmann::json to_json(const SimplicialComplex& k) {
    nlohmann::json j;
    j["mode"] = complex_mode_name(k.mode);
    j["dim_cap"] = k.dim_cap;
    nlohmann::json simplices = nlohmann::json::object();
    for (int d = 0; d <= k.dim_cap; ++d) {
        nlohmann::json list = nlohmann::json::array();
        for (std::size_t i = 0; i < k.simplex_count(d); ++i) {
            auto s = k.simplex(d, i);
            list.push_back(std::vector<std::int32_t>(s.begin(), s.end()));
        }
        simplices[std::to_string(d)] = std::move(list);
    }
    j["simplices"] = std::move(simplices);
    return j;
}

}  // namespace hypertda
