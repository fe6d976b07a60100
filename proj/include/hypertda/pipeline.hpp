#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "hypertda/ingest.hpp"
#include "hypertda/motif.hpp"

namespace hypertda {

struct AnalysisConfig {
    std::vector<std::string> inputs;
    std::string format = "csv";  // csv | jsonl
    HeaderMap header_map = default_header_map();
    FieldMap field_map = default_field_map();

    std::optional<double> window_start;  // default: earliest record, floored to width
    double window_width = 600.0;
    double window_stride = 0.0;  // 0 means = width

    FieldPairConfig fields = FieldPairConfig::defaults();
    std::string mode = "nesting";  // nesting | closure | both
    int cap = 1;
    std::string watchlist_path;
    int expand = 0;  // extra containment-graph hops around nesting motifs
    std::vector<std::string> exclude_hosts;
    std::uint64_t subset_budget = kDefaultSubsetBudget;
    int workers = 1;
    std::string out_dir;  // empty: no files written
    std::uint64_t rng_seed = 1;

    std::vector<std::string> modes() const;
    void validate() const;
};

AnalysisConfig analysis_config_from_json(const nlohmann::json& j);
AnalysisConfig analysis_config_from_file(const std::string& path);

SynthConfig synth_config_from_json(const nlohmann::json& j);
SynthConfig synth_config_from_file(const std::string& path);

struct ModeResult {
    std::vector<std::int64_t> betti;
    std::vector<std::size_t> cells;
    std::vector<AnnotatedMotif> motifs;
    std::string status = "ok";  // "ok" | "skipped: budget"
    std::string budget_node;
};

struct WindowResult {
    std::size_t window_id = 0;
    double t0 = 0.0, t1 = 0.0;
    std::size_t record_count = 0;
    std::size_t vertex_count = 0;
    std::size_t edge_count = 0;  // pre-collapse
    std::size_t node_count = 0;  // post-collapse
    bool collapsed_multiplicity = false;  // some node carries more than one label
    std::map<std::string, ModeResult> modes;
    double wall_ms = 0.0;  // reported via the timings sidecar only
};

struct AnalysisReport {
    WindowSpec spec;
    std::vector<WindowResult> windows;
    std::size_t dropped_before_start = 0;
    std::vector<Reject> rejects;
    std::vector<std::string> warnings;
    std::vector<std::string> modes;

    std::size_t windows_with_holes(const std::string& mode) const;
    std::int64_t total_beta1(const std::string& mode) const;
    bool any_skipped() const;
};

struct AblationReport {
    AnalysisReport all_hosts;
    AnalysisReport filtered;
    std::vector<std::string> warnings;
};

// Full pipeline over already-parsed records (windowing comes from cfg).
AnalysisReport analyze_records(const std::vector<FlowRecord>& records, const AnalysisConfig& cfg);

// Reads cfg.inputs, runs analyze_records, writes report files when
// cfg.out_dir is set (windows.jsonl, summary.json, rejects.jsonl,
// timings.csv).
AnalysisReport run_analyze(const AnalysisConfig& cfg);

// Runs the analysis twice over identical windows: all hosts, then without
// the excluded hosts. Writes all/ and filtered/ trees plus ablation.json.
AblationReport run_ablation(const AnalysisConfig& cfg, const std::set<std::string>& exclude);

// Writes timeline.csv (one row per window, one column per watch tag) and
// timeline.svg (strip chart: shaded hole windows, one dot row per tag).
void emit_timeline(const AnalysisReport& report, const std::vector<std::string>& tags,
                   const std::string& out_dir);

nlohmann::ordered_json window_to_json(const WindowResult& w);
nlohmann::ordered_json summary_to_json(const AnalysisReport& r);
nlohmann::ordered_json ablation_to_json(const AblationReport& r);

// Parses windows.jsonl content back into a report (timeline subcommand).
AnalysisReport report_from_jsonl(std::istream& in);

void write_report_files(const AnalysisReport& r, const std::string& out_dir);

}  // namespace hypertda
