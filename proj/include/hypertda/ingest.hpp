#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hypertda {

// The normalized flow-log fields. Label construction and watchlist matchers
// refer to fields by these names.
enum class Field {
    timestamp,
    action,
    host,
    principal,
    pid,
    src_ip,
    dest_ip,
    src_port,
    dest_port,
    protocol,
    image_path,
};

inline constexpr int kFieldCount = 11;

const char* field_name(Field f);
std::optional<Field> field_from_name(std::string_view name);

// One normalized network flow log line. Timestamps are UTC seconds since
// epoch, normalized to millisecond precision at parse time.
struct FlowRecord {
    double timestamp = 0.0;
    std::string action;
    std::string host;
    std::string principal;
    std::uint64_t pid = 0;
    std::string src_ip;
    std::string dest_ip;
    std::optional<int> src_port;
    std::optional<int> dest_port;
    std::string protocol;
    std::string image_path;

    bool operator==(const FlowRecord&) const = default;
};

// Field value as it appears in labels; absent values become "none".
std::string field_value(const FlowRecord& r, Field f);

struct Reject {
    std::size_t line_no = 0;
    std::string reason;
};

struct ParseResult {
    std::vector<FlowRecord> records;
    std::vector<Reject> rejects;
    std::vector<std::string> warnings;
};

// FlowRecord field name -> CSV column name. Unmapped optional fields are
// simply absent; timestamp, host and dest_ip must resolve to real columns.
using HeaderMap = std::map<std::string, std::string>;
// FlowRecord field name -> dotted JSON key path.
using FieldMap = std::map<std::string, std::string>;

HeaderMap default_header_map();
FieldMap default_field_map();

ParseResult parse_flow_csv(std::istream& in, const HeaderMap& header_map = default_header_map());
ParseResult parse_flow_jsonl(std::istream& in, const FieldMap& field_map = default_field_map());

// Canonical CSV writer (inverse of parse_flow_csv with the default header map).
void write_flow_csv(const std::vector<FlowRecord>& records, std::ostream& out);

// Accepts epoch seconds (real-valued), RFC-3339 date-times, and the
// month/day clock form "9/24 13:51:28" (resolved against 1970 UTC).
// Returns UTC seconds rounded to millisecond precision.
std::optional<double> parse_timestamp(std::string_view text);

struct WindowSpec {
    double start = 0.0;
    double width = 600.0;
    double stride = 600.0;
};

// Half-open interval [t0, t1) of records.
struct Window {
    std::size_t window_id = 0;
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<FlowRecord> records;
};

struct WindowingResult {
    std::vector<Window> windows;
    std::size_t dropped_before_start = 0;
};

// Windows at t0 = start + i*stride; a record lands in every materialized
// window whose interval contains its timestamp (exactly one when
// stride = width). The last window is the first one containing the maximum
// timestamp; empty windows in between are retained.
WindowingResult partition_windows(const std::vector<FlowRecord>& records, const WindowSpec& spec);

std::vector<FlowRecord> filter_hosts(const std::vector<FlowRecord>& records,
                                     const std::set<std::string>& exclude);

struct PlantedCampaign {
    std::string compromised_host;
    std::string c2_ip;
    int c2_port = 443;
    double active_start = 0.0;  // [active_start, active_end) within the span
    double active_end = 0.0;
    std::vector<std::pair<std::string, int>> shared_services;
};

struct SynthConfig {
    int n_hosts = 50;
    double span = 21600.0;      // seconds
    double benign_rate = 1.0;   // flows per host per minute
    std::vector<PlantedCampaign> campaigns;
    std::uint64_t rng_seed = 1;
};

// Deterministic synthetic flow log. Benign hosts are partitioned into
// disjoint groups, one service per group, so benign traffic alone never
// produces hyperedge containments. Each planted campaign beacons to its C2
// and to its shared services once per minute while active; every distinct
// shared service additionally gets a dedicated auxiliary host so that two
// campaigns sharing services yield distinct (non-collapsing) hyperedges.
std::vector<FlowRecord> synth_generate(const SynthConfig& cfg);

// Hosts taking part in any planted campaign (the ablation exclude set).
std::set<std::string> synth_compromised_hosts(const SynthConfig& cfg);

}  // namespace hypertda
