#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertda/ingest.hpp"

namespace hypertda {

// A label is the tuple of field values that identifies a vertex or hyperedge,
// e.g. ("142.20.57.246", "SysClient0501") for a (src_ip, host) vertex.
using Label = std::vector<std::string>;

std::string label_to_string(const Label& label);

// Which record fields form vertex labels and which form edge labels.
struct FieldPairConfig {
    std::vector<Field> vertex_fields;
    std::vector<Field> edge_fields;

    static FieldPairConfig defaults();  // (src_ip, host) / (dest_ip, dest_port)
    void validate() const;              // nonempty + disjoint
    std::vector<std::string> vertex_field_names() const;
    std::vector<std::string> edge_field_names() const;
};

struct Hyperedge {
    Label label;
    std::vector<std::int32_t> members;  // sorted vertex ids

    bool operator==(const Hyperedge&) const = default;
};

// Labeled vertices plus labeled hyperedges; vertex and edge orderings are
// lexicographic by label, member sets sorted. No isolated vertices.
struct Hypergraph {
    std::vector<Label> vertices;
    std::vector<Hyperedge> edges;

    bool operator==(const Hypergraph&) const = default;
};

// One node per distinct member set, carrying every contributing edge label.
struct CollapsedNode {
    std::vector<std::int32_t> members;
    std::vector<Label> labels;

    bool operator==(const CollapsedNode&) const = default;
};

struct CollapsedHypergraph {
    std::vector<Label> vertices;
    std::vector<CollapsedNode> nodes;  // sorted lexicographically by member set

    bool operator==(const CollapsedHypergraph&) const = default;
};

// Vertex v lands in edge E iff some record carries v's vertex-field values
// together with E's edge-field values. Empty input gives the empty hypergraph.
Hypergraph build_hypergraph(std::span<const FlowRecord> records, const FieldPairConfig& cfg);

CollapsedHypergraph collapse_edges(const Hypergraph& h);

// Edge-induced subhypergraph of the chosen collapsed nodes: their labels
// re-expanded into individual hyperedges over the union of their members.
Hypergraph induced_subhypergraph(const CollapsedHypergraph& h, std::span<const std::int32_t> node_ids);

nlohmann::json to_json(const Hypergraph& h);
Hypergraph hypergraph_from_json(const nlohmann::json& j);

}  // namespace hypertda
