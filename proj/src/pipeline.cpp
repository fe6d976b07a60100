#include "hypertda/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "hypertda/errors.hpp"
#include "hypertda/homology.hpp"
#include "hypertda/topology.hpp"

namespace hypertda {

namespace fs = std::filesystem;

std::vector<std::string> AnalysisConfig::modes() const {
    if (mode == "both") return {"nesting", "closure"};
    return {mode};
}

void AnalysisConfig::validate() const {
    if (format != "csv" && format != "jsonl") throw ConfigError("format must be csv or jsonl");
    if (mode != "nesting" && mode != "closure" && mode != "both")
        throw ConfigError("mode must be nesting, closure or both");
    if (cap < 0) throw ConfigError("homology cap must be >= 0");
    if (expand < 0) throw ConfigError("expand must be >= 0");
    if (window_width <= 0.0) throw ConfigError("window width must be positive");
    if (window_stride < 0.0) throw ConfigError("window stride must be positive");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    fields.validate();
}

namespace {

std::vector<Field> fields_from_names(const nlohmann::json& arr) {
    std::vector<Field> out;
    for (const auto& name : arr) {
        auto f = field_from_name(name.get<std::string>());
        if (!f) throw ConfigError("unknown record field '" + name.get<std::string>() + "'");
        out.push_back(*f);
    }
    return out;
}

}  // namespace

AnalysisConfig analysis_config_from_json(const nlohmann::json& j) {
    AnalysisConfig cfg;
    if (j.contains("input")) {
        if (j["input"].is_array()) cfg.inputs = j["input"].get<std::vector<std::string>>();
        else cfg.inputs = {j["input"].get<std::string>()};
    }
    cfg.format = j.value("format", cfg.format);
    if (j.contains("header_map"))
        for (const auto& [k, v] : j["header_map"].items()) cfg.header_map[k] = v.get<std::string>();
    if (j.contains("field_map"))
        for (const auto& [k, v] : j["field_map"].items()) cfg.field_map[k] = v.get<std::string>();
    if (j.contains("window")) {
        const auto& w = j["window"];
        if (w.contains("start")) cfg.window_start = w["start"].get<double>();
        cfg.window_width = w.value("width", cfg.window_width);
        cfg.window_stride = w.value("stride", 0.0);
    }
    if (j.contains("vertex_fields")) cfg.fields.vertex_fields = fields_from_names(j["vertex_fields"]);
    if (j.contains("edge_fields")) cfg.fields.edge_fields = fields_from_names(j["edge_fields"]);
    cfg.mode = j.value("mode", cfg.mode);
    cfg.cap = j.value("cap", cfg.cap);
    cfg.watchlist_path = j.value("watchlist", cfg.watchlist_path);
    cfg.expand = j.value("expand", cfg.expand);
    if (j.contains("exclude_hosts")) cfg.exclude_hosts = j["exclude_hosts"].get<std::vector<std::string>>();
    cfg.subset_budget = j.value("subset_budget", cfg.subset_budget);
    cfg.workers = j.value("workers", cfg.workers);
    cfg.out_dir = j.value("out", cfg.out_dir);
    cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
    cfg.validate();
    return cfg;
}

AnalysisConfig analysis_config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read config file " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw FormatError("config file " + path + " is not valid JSON");
    return analysis_config_from_json(j);
}

SynthConfig synth_config_from_json(const nlohmann::json& j) {
    SynthConfig cfg;
    cfg.n_hosts = j.value("n_hosts", cfg.n_hosts);
    cfg.span = j.value("span", cfg.span);
    cfg.benign_rate = j.value("benign_rate", cfg.benign_rate);
    cfg.rng_seed = j.value("rng_seed", cfg.rng_seed);
    if (j.contains("campaigns")) {
        for (const auto& c : j["campaigns"]) {
            PlantedCampaign pc;
            pc.compromised_host = c.at("host").get<std::string>();
            pc.c2_ip = c.at("c2_ip").get<std::string>();
            pc.c2_port = c.value("c2_port", 443);
            pc.active_start = c.at("start").get<double>();
            pc.active_end = c.at("end").get<double>();
            if (c.contains("shared_services"))
                for (const auto& s : c["shared_services"])
                    pc.shared_services.emplace_back(s.at("ip").get<std::string>(), s.at("port").get<int>());
            cfg.campaigns.push_back(std::move(pc));
        }
    }
    return cfg;
}

SynthConfig synth_config_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot read synth config " + path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw FormatError("synth config " + path + " is not valid JSON");
    return synth_config_from_json(j);
}

std::size_t AnalysisReport::windows_with_holes(const std::string& mode) const {
    std::size_t n = 0;
    for (const WindowResult& w : windows) {
        auto it = w.modes.find(mode);
        if (it != w.modes.end() && it->second.betti.size() > 1 && it->second.betti[1] > 0) ++n;
    }
    return n;
}

std::int64_t AnalysisReport::total_beta1(const std::string& mode) const {
    std::int64_t n = 0;
    for (const WindowResult& w : windows) {
        auto it = w.modes.find(mode);
        if (it != w.modes.end() && it->second.betti.size() > 1) n += it->second.betti[1];
    }
    return n;
}

bool AnalysisReport::any_skipped() const {
    for (const WindowResult& w : windows)
        for (const auto& [_, m] : w.modes)
            if (m.status != "ok") return true;
    return false;
}

namespace {

Watchlist load_watchlist(const AnalysisConfig& cfg) {
    if (cfg.watchlist_path.empty()) return {};
    std::ifstream in(cfg.watchlist_path);
    if (!in) throw FormatError("cannot read watchlist " + cfg.watchlist_path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded()) throw FormatError("watchlist " + cfg.watchlist_path + " is not valid JSON");
    return watchlist_from_json(j);
}

ModeResult analyze_mode(const CollapsedHypergraph& ch, const std::string& mode,
                        const AnalysisConfig& cfg, const Watchlist& wl, std::size_t window_id) {
    ModeResult out;
    SimplicialComplex complex;
    try {
        complex = (mode == "nesting") ? nesting_complex(ch, cfg.cap + 1)
                                      : closure_complex(ch, cfg.cap + 1, cfg.subset_budget);
    } catch (const BudgetError& e) {
        out.status = "skipped: budget";
        out.budget_node = e.offending_node;
        return out;
    }
    out.betti = betti_numbers(complex, cfg.cap);
    for (int d = 0; d <= complex.dim_cap; ++d) out.cells.push_back(complex.simplex_count(d));
    for (int d = 1; d <= cfg.cap; ++d) {
        for (const CycleRep& rep : homology_basis(complex, d)) {
            Motif m = (mode == "nesting") ? motif_from_nesting_cycle(ch, rep, cfg.fields, cfg.expand)
                                          : motif_from_closure_cycle(ch, rep, cfg.fields);
            m.window_id = static_cast<int>(window_id);
            out.motifs.push_back(annotate_motif(m, wl));
        }
    }
    return out;
}

WindowResult analyze_window(const Window& win, const AnalysisConfig& cfg, const Watchlist& wl) {
    auto t_start = std::chrono::steady_clock::now();
    WindowResult r;
    r.window_id = win.window_id;
    r.t0 = win.t0;
    r.t1 = win.t1;
    r.record_count = win.records.size();

    Hypergraph h = build_hypergraph(win.records, cfg.fields);
    CollapsedHypergraph ch = collapse_edges(h);
    r.vertex_count = h.vertices.size();
    r.edge_count = h.edges.size();
    r.node_count = ch.nodes.size();
    for (const CollapsedNode& n : ch.nodes)
        if (n.labels.size() > 1) r.collapsed_multiplicity = true;

    for (const std::string& mode : cfg.modes())
        r.modes[mode] = analyze_mode(ch, mode, cfg, wl, win.window_id);

    r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t_start).count();
    return r;
}

std::vector<WindowResult> analyze_window_set(const std::vector<Window>& windows,
                                             const AnalysisConfig& cfg, const Watchlist& wl) {
    std::vector<WindowResult> results(windows.size());
    if (windows.empty()) return results;
    const int workers = std::max(1, std::min<int>(cfg.workers, static_cast<int>(windows.size())));
    if (workers == 1) {
        for (std::size_t i = 0; i < windows.size(); ++i) results[i] = analyze_window(windows[i], cfg, wl);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(windows.size());
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= windows.size()) return;
            try {
                results[i] = analyze_window(windows[i], cfg, wl);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return results;
}

WindowSpec resolve_spec(const std::vector<FlowRecord>& records, const AnalysisConfig& cfg) {
    WindowSpec spec;
    spec.width = cfg.window_width;
    spec.stride = cfg.window_stride > 0.0 ? cfg.window_stride : cfg.window_width;
    if (cfg.window_start) {
        spec.start = *cfg.window_start;
    } else {
        double tmin = 0.0;
        bool have = false;
        for (const FlowRecord& r : records)
            if (!have || r.timestamp < tmin) { tmin = r.timestamp; have = true; }
        spec.start = have ? std::floor(tmin / spec.width) * spec.width : 0.0;
    }
    return spec;
}

// Pads a window list with trailing empty windows so ablation halves line up.
void pad_windows(std::vector<Window>& windows, std::size_t count, const WindowSpec& spec) {
    while (windows.size() < count) {
        Window w;
        w.window_id = windows.size();
        w.t0 = spec.start + static_cast<double>(w.window_id) * spec.stride;
        w.t1 = w.t0 + spec.width;
        windows.push_back(std::move(w));
    }
}

AnalysisReport assemble_report(const std::vector<FlowRecord>& records, const AnalysisConfig& cfg,
                               const WindowSpec& spec, std::optional<std::size_t> forced_count) {
    AnalysisReport report;
    report.spec = spec;
    report.modes = cfg.modes();
    WindowingResult part = partition_windows(records, spec);
    report.dropped_before_start = part.dropped_before_start;
    if (forced_count) pad_windows(part.windows, *forced_count, spec);
    Watchlist wl = load_watchlist(cfg);
    report.windows = analyze_window_set(part.windows, cfg, wl);
    return report;
}

std::vector<FlowRecord> load_inputs(const AnalysisConfig& cfg, std::vector<Reject>& rejects,
                                    std::vector<std::string>& warnings) {
    std::vector<FlowRecord> records;
    for (const std::string& path : cfg.inputs) {
        std::ifstream in(path);
        if (!in) throw FormatError("cannot read input " + path);
        ParseResult res = cfg.format == "csv" ? parse_flow_csv(in, cfg.header_map)
                                              : parse_flow_jsonl(in, cfg.field_map);
        records.insert(records.end(), res.records.begin(), res.records.end());
        for (Reject& rej : res.rejects) {
            if (cfg.inputs.size() > 1) rej.reason = path + ": " + rej.reason;
            rejects.push_back(std::move(rej));
        }
        for (std::string& w : res.warnings) warnings.push_back(path + ": " + w);
    }
    return records;
}

void warn_missing_hosts(const std::vector<FlowRecord>& records, const std::set<std::string>& exclude,
                        std::vector<std::string>& warnings) {
    std::set<std::string> present;
    for (const FlowRecord& r : records) present.insert(r.host);
    for (const std::string& h : exclude)
        if (!present.count(h)) warnings.push_back("excluded host '" + h + "' does not appear in the input");
}

}  // namespace

AnalysisReport analyze_records(const std::vector<FlowRecord>& records, const AnalysisConfig& cfg) {
    cfg.validate();
    std::vector<FlowRecord> working = records;
    AnalysisReport report;
    std::vector<std::string> warnings;
    if (!cfg.exclude_hosts.empty()) {
        std::set<std::string> exclude(cfg.exclude_hosts.begin(), cfg.exclude_hosts.end());
        warn_missing_hosts(working, exclude, warnings);
        working = filter_hosts(working, exclude);
    }
    report = assemble_report(working, cfg, resolve_spec(working, cfg), std::nullopt);
    report.warnings.insert(report.warnings.begin(), warnings.begin(), warnings.end());
    return report;
}

AnalysisReport run_analyze(const AnalysisConfig& cfg) {
    cfg.validate();
    std::vector<Reject> rejects;
    std::vector<std::string> warnings;
    std::vector<FlowRecord> records = load_inputs(cfg, rejects, warnings);
    AnalysisReport report = analyze_records(records, cfg);
    report.rejects = std::move(rejects);
    report.warnings.insert(report.warnings.end(), warnings.begin(), warnings.end());
    if (!cfg.out_dir.empty()) write_report_files(report, cfg.out_dir);
    return report;
}

AblationReport run_ablation(const AnalysisConfig& cfg, const std::set<std::string>& exclude) {
    cfg.validate();
    AblationReport out;
    std::vector<Reject> rejects;
    std::vector<std::string> warnings;
    std::vector<FlowRecord> records = load_inputs(cfg, rejects, warnings);
    warn_missing_hosts(records, exclude, out.warnings);

    WindowSpec spec = resolve_spec(records, cfg);
    out.all_hosts = assemble_report(records, cfg, spec, std::nullopt);
    out.all_hosts.rejects = rejects;
    out.all_hosts.warnings = warnings;

    std::vector<FlowRecord> filtered = filter_hosts(records, exclude);
    out.filtered = assemble_report(filtered, cfg, spec, out.all_hosts.windows.size());

    if (!cfg.out_dir.empty()) {
        write_report_files(out.all_hosts, (fs::path(cfg.out_dir) / "all").string());
        write_report_files(out.filtered, (fs::path(cfg.out_dir) / "filtered").string());
        std::ofstream f(fs::path(cfg.out_dir) / "ablation.json");
        if (!f) throw FormatError("cannot write ablation.json under " + cfg.out_dir);
        f << ablation_to_json(out).dump(2) << '\n';
    }
    return out;
}

namespace {

const std::string& primary_mode(const std::vector<std::string>& modes) {
    static const std::string nesting = "nesting";
    for (const std::string& m : modes)
        if (m == nesting) return nesting;
    return modes.empty() ? nesting : modes.front();
}

std::int64_t mode_beta1(const WindowResult& w, const std::string& mode) {
    auto it = w.modes.find(mode);
    if (it == w.modes.end() || it->second.betti.size() < 2) return 0;
    return it->second.betti[1];
}

std::size_t motifs_with_tag(const WindowResult& w, const std::string& mode, const std::string& tag) {
    auto it = w.modes.find(mode);
    if (it == w.modes.end()) return 0;
    std::size_t n = 0;
    for (const AnnotatedMotif& m : it->second.motifs) {
        bool has = false;
        for (const TagHit& t : m.tags)
            if (t.tag == tag) { has = true; break; }
        if (has) ++n;
    }
    return n;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

}  // namespace

nlohmann::ordered_json window_to_json(const WindowResult& w) {
    nlohmann::ordered_json j;
    j["window_id"] = w.window_id;
    j["t0"] = w.t0;
    j["t1"] = w.t1;
    j["records"] = w.record_count;
    j["vertices"] = w.vertex_count;
    j["hyperedges"] = w.edge_count;
    j["collapsed_nodes"] = w.node_count;
    j["label_multiplicity"] = w.collapsed_multiplicity;
    nlohmann::ordered_json modes = nlohmann::ordered_json::object();
    for (const auto& [name, m] : w.modes) {
        nlohmann::ordered_json mj;
        mj["status"] = m.status;
        if (!m.budget_node.empty()) mj["budget_node"] = m.budget_node;
        mj["betti"] = m.betti;
        mj["cells"] = m.cells;
        nlohmann::ordered_json motifs = nlohmann::ordered_json::array();
        for (const AnnotatedMotif& am : m.motifs) motifs.push_back(nlohmann::ordered_json(to_json(am)));
        mj["motifs"] = std::move(motifs);
        modes[name] = std::move(mj);
    }
    j["modes"] = std::move(modes);
    return j;
}

nlohmann::ordered_json summary_to_json(const AnalysisReport& r) {
    nlohmann::ordered_json j;
    j["windows"] = r.windows.size();
    j["window_spec"] = {{"start", r.spec.start}, {"width", r.spec.width}, {"stride", r.spec.stride}};
    j["dropped_before_start"] = r.dropped_before_start;
    j["rejected_lines"] = r.rejects.size();
    j["warnings"] = r.warnings;

    std::size_t records = 0, vertices = 0, edges = 0, nodes = 0;
    for (const WindowResult& w : r.windows) {
        records += w.record_count;
        vertices += w.vertex_count;
        edges += w.edge_count;
        nodes += w.node_count;
    }
    j["totals"] = {{"records", records}, {"vertices", vertices}, {"hyperedges", edges}, {"collapsed_nodes", nodes}};

    nlohmann::ordered_json modes = nlohmann::ordered_json::object();
    for (const std::string& mode : r.modes) {
        std::int64_t total_b1 = 0;
        std::size_t with_holes = 0, skipped = 0;
        for (const WindowResult& w : r.windows) {
            auto it = w.modes.find(mode);
            if (it == w.modes.end()) continue;
            if (it->second.status != "ok") { ++skipped; continue; }
            std::int64_t b1 = it->second.betti.size() > 1 ? it->second.betti[1] : 0;
            total_b1 += b1;
            if (b1 > 0) ++with_holes;
        }
        if (total_b1 != r.total_beta1(mode) || with_holes != r.windows_with_holes(mode) ||
            with_holes > r.windows.size())
            throw ConsistencyError("summary totals disagree with per-window results");
        nlohmann::ordered_json mj;
        mj["total_beta1"] = total_b1;
        mj["windows_with_holes"] = with_holes;
        mj["avg_holes_per_window"] =
            r.windows.empty() ? 0.0 : static_cast<double>(total_b1) / static_cast<double>(r.windows.size());
        mj["skipped_windows"] = skipped;
        modes[mode] = std::move(mj);
    }
    j["modes"] = std::move(modes);
    j["notes"] = nlohmann::ordered_json::array(
        {"cycle representatives are reduction-order basis choices, not shortest cycles",
         "closure-mode motifs select hyperedges wholly containing a support simplex"});
    return j;
}

nlohmann::ordered_json ablation_to_json(const AblationReport& r) {
    const std::string mode = primary_mode(r.all_hosts.modes);
    nlohmann::ordered_json j;
    j["mode"] = mode;
    j["warnings"] = r.warnings;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    std::int64_t b1_all = 0, b1_f = 0;
    std::size_t v_all = 0, v_f = 0, e_all = 0, e_f = 0;
    for (std::size_t i = 0; i < r.all_hosts.windows.size(); ++i) {
        const WindowResult& a = r.all_hosts.windows[i];
        const WindowResult* f = i < r.filtered.windows.size() ? &r.filtered.windows[i] : nullptr;
        nlohmann::ordered_json row;
        row["window_id"] = a.window_id;
        row["beta1_all"] = mode_beta1(a, mode);
        row["beta1_filtered"] = f ? mode_beta1(*f, mode) : 0;
        row["vertices_all"] = a.vertex_count;
        row["vertices_filtered"] = f ? f->vertex_count : 0;
        row["hyperedges_all"] = a.edge_count;
        row["hyperedges_filtered"] = f ? f->edge_count : 0;
        rows.push_back(std::move(row));
        b1_all += mode_beta1(a, mode);
        v_all += a.vertex_count;
        e_all += a.edge_count;
        if (f) {
            b1_f += mode_beta1(*f, mode);
            v_f += f->vertex_count;
            e_f += f->edge_count;
        }
    }
    j["windows"] = std::move(rows);
    nlohmann::ordered_json s;
    s["total_beta1_all"] = b1_all;
    s["total_beta1_filtered"] = b1_f;
    s["total_vertices_all"] = v_all;
    s["total_vertices_filtered"] = v_f;
    s["total_hyperedges_all"] = e_all;
    s["total_hyperedges_filtered"] = e_f;
    s["vertex_change_ratio"] =
        v_all == 0 ? 0.0 : std::abs(static_cast<double>(v_all) - static_cast<double>(v_f)) / static_cast<double>(v_all);
    j["summary"] = std::move(s);
    return j;
}

void write_report_files(const AnalysisReport& r, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw FormatError("cannot create output directory " + out_dir);

    std::ofstream windows(fs::path(out_dir) / "windows.jsonl");
    if (!windows) throw FormatError("cannot write windows.jsonl under " + out_dir);
    for (const WindowResult& w : r.windows) windows << window_to_json(w).dump() << '\n';

    std::ofstream summary(fs::path(out_dir) / "summary.json");
    if (!summary) throw FormatError("cannot write summary.json under " + out_dir);
    summary << summary_to_json(r).dump(2) << '\n';

    std::ofstream rejects(fs::path(out_dir) / "rejects.jsonl");
    if (!rejects) throw FormatError("cannot write rejects.jsonl under " + out_dir);
    for (const Reject& rej : r.rejects) {
        nlohmann::ordered_json j;
        j["line_no"] = rej.line_no;
        j["reason"] = rej.reason;
        rejects << j.dump() << '\n';
    }

    // wall times are run-dependent, so they live outside the report proper
    std::ofstream timings(fs::path(out_dir) / "timings.csv");
    if (!timings) throw FormatError("cannot write timings.csv under " + out_dir);
    timings << "window_id,wall_ms\n";
    for (const WindowResult& w : r.windows)
        timings << w.window_id << ',' << format_double(w.wall_ms) << '\n';
}

AnalysisReport report_from_jsonl(std::istream& in) {
    AnalysisReport r;
    std::string line;
    std::set<std::string> modes_seen;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw FormatError("windows.jsonl contains an unparseable line");
        WindowResult w;
        w.window_id = j.at("window_id").get<std::size_t>();
        w.t0 = j.value("t0", 0.0);
        w.t1 = j.value("t1", 0.0);
        w.record_count = j.value("records", 0u);
        w.vertex_count = j.value("vertices", 0u);
        w.edge_count = j.value("hyperedges", 0u);
        w.node_count = j.value("collapsed_nodes", 0u);
        if (j.contains("modes")) {
            for (const auto& [name, mj] : j["modes"].items()) {
                ModeResult m;
                m.status = mj.value("status", "ok");
                if (mj.contains("betti")) m.betti = mj["betti"].get<std::vector<std::int64_t>>();
                if (mj.contains("motifs")) {
                    for (const auto& motif : mj["motifs"]) {
                        AnnotatedMotif am;
                        if (motif.contains("tags"))
                            for (const auto& t : motif["tags"])
                                am.tags.push_back({t.at("tag").get<std::string>(),
                                                   t.value("element", std::string())});
                        m.motifs.push_back(std::move(am));
                    }
                }
                modes_seen.insert(name);
                w.modes[name] = std::move(m);
            }
        }
        r.windows.push_back(std::move(w));
    }
    r.modes.assign(modes_seen.begin(), modes_seen.end());
    return r;
}

void emit_timeline(const AnalysisReport& report, const std::vector<std::string>& tags,
                   const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw FormatError("cannot create output directory " + out_dir);
    const std::string mode = primary_mode(report.modes);

    std::ofstream csv(fs::path(out_dir) / "timeline.csv");
    if (!csv) throw FormatError("cannot write timeline.csv under " + out_dir);
    csv << "window_id,start,has_hole,beta1";
    for (const std::string& t : tags) csv << ',' << t;
    csv << '\n';
    for (const WindowResult& w : report.windows) {
        std::int64_t b1 = mode_beta1(w, mode);
        csv << w.window_id << ',' << format_double(w.t0) << ',' << (b1 > 0 ? "true" : "false") << ',' << b1;
        for (const std::string& t : tags) csv << ',' << motifs_with_tag(w, mode, t);
        csv << '\n';
    }

    // strip chart: one shaded row for hole-bearing windows, one dot row per tag
    const int cell = 12, row_h = 18, left = 110, top = 24;
    const int n = static_cast<int>(report.windows.size());
    const int width = left + std::max(1, n) * cell + 10;
    const int height = top + row_h * (1 + static_cast<int>(tags.size())) + 10;
    std::ofstream svg(fs::path(out_dir) / "timeline.svg");
    if (!svg) throw FormatError("cannot write timeline.svg under " + out_dir);
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
    auto row_label = [&](int row, const std::string& text) {
        svg << "  <text x=\"4\" y=\"" << top + row * row_h + row_h - 6 << "\">" << text << "</text>\n";
    };
    if (n > 0) {
        row_label(0, "holes (b1)");
        for (int i = 0; i < n; ++i) {
            std::int64_t b1 = mode_beta1(report.windows[static_cast<std::size_t>(i)], mode);
            svg << "  <rect x=\"" << left + i * cell << "\" y=\"" << top << "\" width=\"" << cell - 1
                << "\" height=\"" << row_h - 4 << "\" fill=\"" << (b1 > 0 ? "#9a9a9a" : "#f2f2f2")
                << "\" stroke=\"#444\"><title>window " << i << ": beta1=" << b1 << "</title></rect>\n";
        }
        for (std::size_t t = 0; t < tags.size(); ++t) {
            row_label(static_cast<int>(t) + 1, tags[t]);
            for (int i = 0; i < n; ++i) {
                std::size_t count = motifs_with_tag(report.windows[static_cast<std::size_t>(i)], mode, tags[t]);
                if (count == 0) continue;
                svg << "  <circle cx=\"" << left + i * cell + cell / 2 << "\" cy=\""
                    << top + (static_cast<int>(t) + 1) * row_h + row_h / 2 - 2 << "\" r=\"4\" fill=\"#c0392b\">"
                    << "<title>window " << i << ": " << count << " motif(s) tagged " << tags[t]
                    << "</title></circle>\n";
            }
        }
    }
    svg << "</svg>\n";
}

}  // namespace hypertda
