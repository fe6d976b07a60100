#include "hypertda/motif.hpp"

#include <algorithm>
#include <set>

#include "hypertda/errors.hpp"
#include "hypertda/topology.hpp"

namespace hypertda {

namespace {

std::vector<std::int32_t> support_cell_ids(const CycleRep& cycle) {
    std::set<std::int32_t> ids;
    for (const auto& s : cycle.support) ids.insert(s.begin(), s.end());
    return {ids.begin(), ids.end()};
}

void check_cycle(const CycleRep& cycle, std::size_t id_space, const char* what) {
    if (cycle.support.empty())
        throw ConsistencyError(std::string("empty cycle support handed to ") + what);
    for (const auto& s : cycle.support)
        for (std::int32_t id : s)
            if (id < 0 || static_cast<std::size_t>(id) >= id_space)
                throw ConsistencyError(std::string(what) + ": cell id " + std::to_string(id) +
                                       " does not belong to this hypergraph");
}

}  // namespace

Motif motif_from_nesting_cycle(const CollapsedHypergraph& ch, const CycleRep& cycle,
                               const FieldPairConfig& cfg, int expand) {
    check_cycle(cycle, ch.nodes.size(), "motif_from_nesting_cycle");
    Motif m;
    m.mode = ComplexMode::nesting;
    m.dimension = cycle.dimension;
    m.vertex_field_names = cfg.vertex_field_names();
    m.edge_field_names = cfg.edge_field_names();
    m.cycle = cycle;

    std::vector<std::int32_t> nodes = support_cell_ids(cycle);
    if (expand > 0) {
        HcGraph g = hcg(containment_relation(ch));
        std::set<std::int32_t> grown(nodes.begin(), nodes.end());
        for (int step = 0; step < expand; ++step) {
            std::set<std::int32_t> next = grown;
            for (std::int32_t n : grown)
                next.insert(g.adj[static_cast<std::size_t>(n)].begin(),
                            g.adj[static_cast<std::size_t>(n)].end());
            grown.swap(next);
        }
        nodes.assign(grown.begin(), grown.end());
    }
    m.edges = induced_subhypergraph(ch, nodes);
    for (const auto& simplex : cycle.support) {
        std::vector<std::vector<Label>> cells;
        for (std::int32_t node : simplex) cells.push_back(ch.nodes[static_cast<std::size_t>(node)].labels);
        m.support_labels.push_back(std::move(cells));
    }
    return m;
}

Motif motif_from_closure_cycle(const CollapsedHypergraph& ch, const CycleRep& cycle,
                               const FieldPairConfig& cfg) {
    check_cycle(cycle, ch.vertices.size(), "motif_from_closure_cycle");
    Motif m;
    m.mode = ComplexMode::closure;
    m.dimension = cycle.dimension;
    m.vertex_field_names = cfg.vertex_field_names();
    m.edge_field_names = cfg.edge_field_names();
    m.cycle = cycle;

    // a node joins the motif when its member set wholly contains some support simplex
    std::vector<std::int32_t> selected;
    for (std::size_t n = 0; n < ch.nodes.size(); ++n) {
        const auto& mem = ch.nodes[n].members;
        for (const auto& s : cycle.support) {
            if (std::includes(mem.begin(), mem.end(), s.begin(), s.end())) {
                selected.push_back(static_cast<std::int32_t>(n));
                break;
            }
        }
    }
    m.edges = induced_subhypergraph(ch, selected);
    for (const auto& simplex : cycle.support) {
        std::vector<std::vector<Label>> cells;
        for (std::int32_t v : simplex) cells.push_back({ch.vertices[static_cast<std::size_t>(v)]});
        m.support_labels.push_back(std::move(cells));
    }
    return m;
}

namespace {

int field_position(const std::vector<std::string>& names, const std::string& field) {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == field) return static_cast<int>(i);
    return -1;
}

bool value_matches(const WatchEntry& e, const std::string& value) {
    if (e.op == WatchEntry::Op::field_equals)
        return !e.values.empty() && value == e.values.front();
    return std::find(e.values.begin(), e.values.end(), value) != e.values.end();
}

}  // namespace

AnnotatedMotif annotate_motif(const Motif& m, const Watchlist& w) {
    std::set<TagHit> hits;
    for (const WatchEntry& e : w.entries) {
        if (e.target == WatchEntry::Target::edge) {
            for (const Hyperedge& edge : m.edges.edges) {
                bool match = false;
                if (e.op == WatchEntry::Op::size_equals) {
                    match = static_cast<int>(edge.members.size()) == e.size;
                } else {
                    int pos = field_position(m.edge_field_names, e.field);
                    match = pos >= 0 && static_cast<std::size_t>(pos) < edge.label.size() &&
                            value_matches(e, edge.label[static_cast<std::size_t>(pos)]);
                }
                if (match) hits.insert({e.tag, "edge:" + label_to_string(edge.label)});
            }
        } else {
            for (const Label& v : m.edges.vertices) {
                int pos = field_position(m.vertex_field_names, e.field);
                bool match = e.op != WatchEntry::Op::size_equals && pos >= 0 &&
                             static_cast<std::size_t>(pos) < v.size() &&
                             value_matches(e, v[static_cast<std::size_t>(pos)]);
                if (match) hits.insert({e.tag, "vertex:" + label_to_string(v)});
            }
        }
    }
    return {m, {hits.begin(), hits.end()}};
}

Watchlist watchlist_from_json(const nlohmann::json& j) {
    Watchlist w;
    for (const auto& entry : j.at("entries")) {
        WatchEntry e;
        std::string target = entry.value("target", "edge");
        e.target = target == "vertex" ? WatchEntry::Target::vertex : WatchEntry::Target::edge;
        std::string op = entry.value("op", "equals");
        if (op == "size_equals") e.op = WatchEntry::Op::size_equals;
        else if (op == "in") e.op = WatchEntry::Op::field_in;
        else e.op = WatchEntry::Op::field_equals;
        e.field = entry.value("field", "");
        if (entry.contains("values")) e.values = entry["values"].get<std::vector<std::string>>();
        else if (entry.contains("value")) e.values = {entry["value"].get<std::string>()};
        e.size = entry.value("size", 0);
        e.tag = entry.at("tag").get<std::string>();
        if (e.tag.empty()) throw ConfigError("watchlist tags must be nonempty");
        w.entries.push_back(std::move(e));
    }
    return w;
}

nlohmann::json to_json(const Motif& m) {
    nlohmann::json j;
    j["window_id"] = m.window_id;
    j["mode"] = complex_mode_name(m.mode);
    j["dimension"] = m.dimension;
    j["vertex_fields"] = m.vertex_field_names;
    j["edge_fields"] = m.edge_field_names;
    j["hyperedges"] = nlohmann::json::array();
    for (const Hyperedge& e : m.edges.edges) {
        nlohmann::json members = nlohmann::json::array();
        for (std::int32_t v : e.members) members.push_back(m.edges.vertices[static_cast<std::size_t>(v)]);
        j["hyperedges"].push_back({{"label", e.label}, {"members", members}});
    }
    j["cycle_support"] = m.support_labels;
    if (m.mode == ComplexMode::closure) j["membership_rule"] = "contains-support-simplex";
    return j;
}

nlohmann::json to_json(const AnnotatedMotif& am) {
    nlohmann::json j = to_json(am.motif);
    nlohmann::json tags = nlohmann::json::array();
    for (const TagHit& t : am.tags) tags.push_back({{"tag", t.tag}, {"element", t.element}});
    j["tags"] = std::move(tags);
    return j;
}

}  // namespace hypertda
