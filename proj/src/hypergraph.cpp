#include "hypertda/hypergraph.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hypertda/errors.hpp"

namespace hypertda {

std::string label_to_string(const Label& label) {
    std::string out;
    for (std::size_t i = 0; i < label.size(); ++i) {
        if (i) out += ':';
        out += label[i];
    }
    return out;
}

FieldPairConfig FieldPairConfig::defaults() {
    return {{Field::src_ip, Field::host}, {Field::dest_ip, Field::dest_port}};
}

void FieldPairConfig::validate() const {
    if (vertex_fields.empty() || edge_fields.empty())
        throw ConfigError("vertex_fields and edge_fields must be nonempty");
    for (Field v : vertex_fields)
        for (Field e : edge_fields)
            if (v == e) throw ConfigError(std::string("field used on both sides: ") + field_name(v));
}

std::vector<std::string> FieldPairConfig::vertex_field_names() const {
    std::vector<std::string> out;
    for (Field f : vertex_fields) out.push_back(field_name(f));
    return out;
}

std::vector<std::string> FieldPairConfig::edge_field_names() const {
    std::vector<std::string> out;
    for (Field f : edge_fields) out.push_back(field_name(f));
    return out;
}

Hypergraph build_hypergraph(std::span<const FlowRecord> records, const FieldPairConfig& cfg) {
    cfg.validate();
    // label maps are ordered, which fixes the lexicographic vertex/edge order
    std::map<Label, std::set<Label>> edge_members;  // edge label -> vertex labels
    std::set<Label> vertex_labels;
    for (const FlowRecord& r : records) {
        Label v, e;
        v.reserve(cfg.vertex_fields.size());
        e.reserve(cfg.edge_fields.size());
        for (Field f : cfg.vertex_fields) v.push_back(field_value(r, f));
        for (Field f : cfg.edge_fields) e.push_back(field_value(r, f));
        vertex_labels.insert(v);
        edge_members[e].insert(std::move(v));
    }

    Hypergraph h;
    std::map<Label, std::int32_t> vertex_id;
    for (const Label& v : vertex_labels) {
        vertex_id.emplace(v, static_cast<std::int32_t>(h.vertices.size()));
        h.vertices.push_back(v);
    }
    for (const auto& [label, members] : edge_members) {
        Hyperedge e;
        e.label = label;
        for (const Label& v : members) e.members.push_back(vertex_id.at(v));
        std::sort(e.members.begin(), e.members.end());
        h.edges.push_back(std::move(e));
    }
    return h;
}

CollapsedHypergraph collapse_edges(const Hypergraph& h) {
    std::map<std::vector<std::int32_t>, std::vector<Label>> groups;
    for (const Hyperedge& e : h.edges) groups[e.members].push_back(e.label);

    CollapsedHypergraph ch;
    ch.vertices = h.vertices;
    for (auto& [members, labels] : groups) {
        CollapsedNode node;
        node.members = members;
        std::sort(labels.begin(), labels.end());
        node.labels = std::move(labels);
        ch.nodes.push_back(std::move(node));
    }
    return ch;
}

Hypergraph induced_subhypergraph(const CollapsedHypergraph& h, std::span<const std::int32_t> node_ids) {
    std::set<std::int32_t> chosen;
    for (std::int32_t id : node_ids) {
        if (id < 0 || static_cast<std::size_t>(id) >= h.nodes.size())
            throw LookupError("unknown collapsed node id " + std::to_string(id));
        chosen.insert(id);
    }

    std::set<std::int32_t> used;
    for (std::int32_t id : chosen)
        used.insert(h.nodes[static_cast<std::size_t>(id)].members.begin(),
                    h.nodes[static_cast<std::size_t>(id)].members.end());

    Hypergraph out;
    std::map<std::int32_t, std::int32_t> remap;
    for (std::int32_t v : used) {
        remap.emplace(v, static_cast<std::int32_t>(out.vertices.size()));
        out.vertices.push_back(h.vertices[static_cast<std::size_t>(v)]);
    }
    for (std::int32_t id : chosen) {
        const CollapsedNode& node = h.nodes[static_cast<std::size_t>(id)];
        std::vector<std::int32_t> members;
        for (std::int32_t v : node.members) members.push_back(remap.at(v));
        std::sort(members.begin(), members.end());
        for (const Label& label : node.labels) out.edges.push_back({label, members});
    }
    std::sort(out.edges.begin(), out.edges.end(),
              [](const Hyperedge& a, const Hyperedge& b) { return a.label < b.label; });
    return out;
}

nlohmann::json to_json(const Hypergraph& h) {
    nlohmann::json j;
    j["vertices"] = h.vertices;
    j["edges"] = nlohmann::json::array();
    for (const Hyperedge& e : h.edges) j["edges"].push_back({{"label", e.label}, {"members", e.members}});
    return j;
}

Hypergraph hypergraph_from_json(const nlohmann::json& j) {
    Hypergraph h;
    h.vertices = j.at("vertices").get<std::vector<Label>>();
    for (const auto& e : j.at("edges")) {
        Hyperedge edge;
        edge.label = e.at("label").get<Label>();
        edge.members = e.at("members").get<std::vector<std::int32_t>>();
        std::sort(edge.members.begin(), edge.members.end());
        h.edges.push_back(std::move(edge));
    }
    return h;
}

}  // namespace hypertda
