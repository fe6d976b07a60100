#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hypertda/homology.hpp"
#include "hypertda/hypergraph.hpp"

namespace hypertda {

// A hole mapped back to the labeled subhypergraph that gives rise to it.
struct Motif {
    int window_id = -1;  // filled in by the pipeline; -1 standalone
    ComplexMode mode = ComplexMode::nesting;
    int dimension = 1;
    std::vector<std::string> vertex_field_names;
    std::vector<std::string> edge_field_names;
    Hypergraph edges;  // labels re-expanded over the motif's own vertex ids
    // cycle support re-expressed with labels: per simplex, per cell vertex,
    // the labels of that cell (one per contributing hyperedge in nesting
    // mode, the single vertex label in closure mode)
    std::vector<std::vector<std::vector<Label>>> support_labels;
    CycleRep cycle;  // raw ids, kept so the hole can be re-certified
};

// Matchers over motif hyperedges and vertices; total over any label.
struct WatchEntry {
    enum class Target { edge, vertex };
    enum class Op { field_equals, field_in, size_equals };

    Target target = Target::edge;
    Op op = Op::field_equals;
    std::string field;
    std::vector<std::string> values;
    int size = 0;
    std::string tag;
};

struct Watchlist {
    std::vector<WatchEntry> entries;
};

struct TagHit {
    std::string tag;
    std::string element;  // "edge:<label>" or "vertex:<label>"

    bool operator==(const TagHit&) const = default;
    auto operator<=>(const TagHit&) const = default;
};

struct AnnotatedMotif {
    Motif motif;
    std::vector<TagHit> tags;  // sorted, unique
};

// The edge-induced subhypergraph of the collapsed nodes in the cycle support.
// expand > 0 additionally pulls in nodes within that many containment-graph
// hops, for analyst context; the default keeps exactly the cycle's nodes.
Motif motif_from_nesting_cycle(const CollapsedHypergraph& ch, const CycleRep& cycle,
                               const FieldPairConfig& cfg = FieldPairConfig::defaults(),
                               int expand = 0);

// Nodes whose member set wholly contains at least one support simplex.
Motif motif_from_closure_cycle(const CollapsedHypergraph& ch, const CycleRep& cycle,
                               const FieldPairConfig& cfg = FieldPairConfig::defaults());

AnnotatedMotif annotate_motif(const Motif& m, const Watchlist& w);

Watchlist watchlist_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Motif& m);
nlohmann::json to_json(const AnnotatedMotif& am);

}  // namespace hypertda
