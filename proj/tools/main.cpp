#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hypertda/errors.hpp"
#include "hypertda/pipeline.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::vector<std::string> inputs;
    std::string format;
    std::string mode;
    int cap = -1;
    std::string windows;  // "<width>[,<stride>]"
    int workers = 0;
    std::string out_dir;
    std::string watchlist;
    std::vector<std::string> exclude_hosts;
    int expand = -1;
};

void add_common_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--config", f.config_path, "JSON config file");
    cmd->add_option("--input,-i", f.inputs, "flow log file(s)");
    cmd->add_option("--format", f.format, "input format: csv or jsonl");
    cmd->add_option("--mode", f.mode, "nesting, closure or both");
    cmd->add_option("--cap", f.cap, "homology cap (default 1)");
    cmd->add_option("--windows", f.windows, "window width[,stride] in seconds");
    cmd->add_option("--workers", f.workers, "worker thread count");
    cmd->add_option("--out,-o", f.out_dir, "output directory");
    cmd->add_option("--watchlist", f.watchlist, "watchlist JSON file");
    cmd->add_option("--expand", f.expand, "containment-graph hops added around nesting motifs");
    cmd->add_option("--exclude-hosts", f.exclude_hosts, "host names to drop before analysis");
}

hypertda::AnalysisConfig make_config(const CommonFlags& f) {
    hypertda::AnalysisConfig cfg;
    if (!f.config_path.empty()) cfg = hypertda::analysis_config_from_file(f.config_path);
    if (!f.inputs.empty()) cfg.inputs = f.inputs;
    if (!f.format.empty()) cfg.format = f.format;
    if (!f.mode.empty()) cfg.mode = f.mode;
    if (f.cap >= 0) cfg.cap = f.cap;
    if (!f.windows.empty()) {
        auto comma = f.windows.find(',');
        cfg.window_width = std::stod(f.windows.substr(0, comma));
        cfg.window_stride = comma == std::string::npos ? 0.0 : std::stod(f.windows.substr(comma + 1));
    }
    if (f.workers > 0) cfg.workers = f.workers;
    if (!f.out_dir.empty()) cfg.out_dir = f.out_dir;
    if (!f.watchlist.empty()) cfg.watchlist_path = f.watchlist;
    if (f.expand >= 0) cfg.expand = f.expand;
    if (!f.exclude_hosts.empty()) cfg.exclude_hosts = f.exclude_hosts;
    cfg.validate();
    if (cfg.inputs.empty()) throw hypertda::ConfigError("no input files given (--input or config)");
    return cfg;
}

std::set<std::string> read_hosts_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hypertda::FormatError("cannot read hosts file " + path);
    std::set<std::string> hosts;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty() && line.front() != '#') hosts.insert(line);
    }
    return hosts;
}

void print_mode_summary(const hypertda::AnalysisReport& report) {
    std::printf("windows: %zu\n", report.windows.size());
    for (const std::string& mode : report.modes) {
        std::printf("  %s: windows with holes %zu, total beta1 %lld\n", mode.c_str(),
                    report.windows_with_holes(mode),
                    static_cast<long long>(report.total_beta1(mode)));
    }
    for (const std::string& w : report.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypertda: windowed flow-log hypergraph homology analysis"};
    app.require_subcommand(1);

    CommonFlags analyze_flags, ablate_flags;
    std::string exclude_file;
    std::string synth_config, synth_out;
    std::string timeline_report, timeline_out;
    std::vector<std::string> timeline_tags;

    CLI::App* analyze = app.add_subcommand("analyze", "run the windowed analysis");
    add_common_flags(analyze, analyze_flags);

    CLI::App* ablate = app.add_subcommand("ablate", "compare full run against a host-excluded run");
    add_common_flags(ablate, ablate_flags);
    ablate->add_option("--exclude", exclude_file, "file with one host name per line")->required();

    CLI::App* synth = app.add_subcommand("synth", "generate a synthetic flow log");
    synth->add_option("--config", synth_config, "synth config JSON")->required();
    synth->add_option("--out,-o", synth_out, "output CSV path")->required();

    CLI::App* timeline = app.add_subcommand("timeline", "render timeline.csv and timeline.svg from a report");
    timeline->add_option("--report", timeline_report, "windows.jsonl from a previous run")->required();
    timeline->add_option("--out,-o", timeline_out, "output directory")->required();
    timeline->add_option("--tags", timeline_tags, "ordered watch tags (default: all tags seen)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (analyze->parsed()) {
            hypertda::AnalysisReport report = hypertda::run_analyze(make_config(analyze_flags));
            print_mode_summary(report);
            return report.any_skipped() ? 2 : 0;
        }
        if (ablate->parsed()) {
            hypertda::AnalysisConfig cfg = make_config(ablate_flags);
            std::set<std::string> exclude = read_hosts_file(exclude_file);
            hypertda::AblationReport rep = hypertda::run_ablation(cfg, exclude);
            std::printf("all hosts:\n");
            print_mode_summary(rep.all_hosts);
            std::printf("excluding %zu host(s):\n", exclude.size());
            print_mode_summary(rep.filtered);
            for (const std::string& w : rep.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
            return (rep.all_hosts.any_skipped() || rep.filtered.any_skipped()) ? 2 : 0;
        }
        if (synth->parsed()) {
            hypertda::SynthConfig cfg = hypertda::synth_config_from_file(synth_config);
            std::vector<hypertda::FlowRecord> records = hypertda::synth_generate(cfg);
            std::filesystem::path parent = std::filesystem::path(synth_out).parent_path();
            if (!parent.empty()) std::filesystem::create_directories(parent);
            std::ofstream out(synth_out);
            if (!out) throw hypertda::FormatError("cannot write " + synth_out);
            hypertda::write_flow_csv(records, out);
            std::printf("wrote %zu records to %s\n", records.size(), synth_out.c_str());
            return 0;
        }
        if (timeline->parsed()) {
            std::ifstream in(timeline_report);
            if (!in) throw hypertda::FormatError("cannot read report " + timeline_report);
            hypertda::AnalysisReport report = hypertda::report_from_jsonl(in);
            std::vector<std::string> tags = timeline_tags;
            if (tags.empty()) {
                std::set<std::string> seen;
                for (const auto& w : report.windows)
                    for (const auto& [_, m] : w.modes)
                        for (const auto& motif : m.motifs)
                            for (const auto& t : motif.tags) seen.insert(t.tag);
                tags.assign(seen.begin(), seen.end());
            }
            hypertda::emit_timeline(report, tags, timeline_out);
            std::printf("wrote timeline for %zu windows to %s\n", report.windows.size(), timeline_out.c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
