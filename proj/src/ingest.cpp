#include "hypertda/ingest.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "hypertda/errors.hpp"

namespace hypertda {

namespace {

constexpr std::array<const char*, kFieldCount> kFieldNames = {
    "timestamp", "action", "host", "principal", "pid", "src_ip",
    "dest_ip",   "src_port", "dest_port", "protocol", "image_path",
};

constexpr std::array<Field, 3> kRequiredFields = {Field::timestamp, Field::host, Field::dest_ip};

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Splits one CSV line; supports double-quoted fields with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool in_quotes = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"' && trim(cur).empty()) {
            in_quotes = true;
            cur.clear();
        } else if (c == ',') {
            out.push_back(std::string(trim(cur)));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::string(trim(cur)));
    return out;
}

double round_ms(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
long long days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const long long era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2) / 5 + static_cast<unsigned>(d) - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<long long>(doe) - 719468;
}

bool parse_int(std::string_view s, long long& out) {
    if (s.empty()) return false;
    auto res = std::from_chars(s.data(), s.data() + s.size(), out);
    return res.ec == std::errc{} && res.ptr == s.data() + s.size();
}

bool parse_double(std::string_view s, double& out) {
    if (s.empty()) return false;
    std::string buf(s);
    char* end = nullptr;
    out = std::strtod(buf.c_str(), &end);
    return end == buf.c_str() + buf.size() && std::isfinite(out);
}

// "YYYY-MM-DD[T ]HH:MM:SS[.frac][Z|+HH:MM|-HH:MM]"
std::optional<double> parse_rfc3339(std::string_view s) {
    int y, mo, d, h, mi;
    double sec;
    int consumed = 0;
    std::string buf(s);
    if (std::sscanf(buf.c_str(), "%4d-%2d-%2d%*1[T ]%2d:%2d:%lf%n", &y, &mo, &d, &h, &mi, &sec, &consumed) != 6)
        return std::nullopt;
    std::string_view rest = s.substr(static_cast<std::size_t>(consumed));
    double offset = 0.0;
    if (rest == "Z" || rest == "z") {
        rest = {};
    } else if (!rest.empty() && (rest.front() == '+' || rest.front() == '-')) {
        int oh, om;
        if (std::sscanf(std::string(rest).c_str(), "%3d:%2d", &oh, &om) != 2) return std::nullopt;
        offset = oh * 3600.0 + (oh < 0 ? -om : om) * 60.0;
        rest = {};
    }
    if (!rest.empty()) return std::nullopt;
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec >= 61.0) return std::nullopt;
    double t = static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 + sec - offset;
    return t;
}

// "M/D HH:MM:SS" or "M/D/YYYY HH:MM:SS"; year defaults to 1970.
std::optional<double> parse_monthday_clock(std::string_view s) {
    int mo, d, y = 1970, h, mi, sec;
    std::string buf(s);
    int consumed = 0;
    if (std::sscanf(buf.c_str(), "%2d/%2d/%4d %2d:%2d:%2d%n", &mo, &d, &y, &h, &mi, &sec, &consumed) == 6 &&
        consumed == static_cast<int>(buf.size())) {
        // fall through
    } else if (std::sscanf(buf.c_str(), "%2d/%2d %2d:%2d:%2d%n", &mo, &d, &h, &mi, &sec, &consumed) == 5 &&
               consumed == static_cast<int>(buf.size())) {
        y = 1970;
    } else {
        return std::nullopt;
    }
    if (mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60) return std::nullopt;
    return static_cast<double>(days_from_civil(y, mo, d)) * 86400.0 + h * 3600.0 + mi * 60.0 + sec;
}

std::optional<int> parse_port(std::string_view s, bool& bad) {
    bad = false;
    s = trim(s);
    if (s.empty()) return std::nullopt;
    long long v;
    if (!parse_int(s, v) || v < 0 || v > 65535) {
        bad = true;
        return std::nullopt;
    }
    return static_cast<int>(v);
}

struct RowError {
    std::string reason;
};

// Assembles a FlowRecord from per-field raw strings; empty string = absent.
std::optional<FlowRecord> record_from_values(const std::array<std::string, kFieldCount>& vals,
                                             RowError& err) {
    FlowRecord r;
    for (Field f : kRequiredFields) {
        if (trim(vals[static_cast<int>(f)]).empty()) {
            err.reason = std::string("missing required field ") + field_name(f);
            return std::nullopt;
        }
    }
    auto ts = parse_timestamp(vals[static_cast<int>(Field::timestamp)]);
    if (!ts || *ts < 0.0 || !std::isfinite(*ts)) {
        err.reason = "bad timestamp '" + vals[static_cast<int>(Field::timestamp)] + "'";
        return std::nullopt;
    }
    r.timestamp = *ts;
    r.action = vals[static_cast<int>(Field::action)];
    r.host = vals[static_cast<int>(Field::host)];
    r.principal = vals[static_cast<int>(Field::principal)];
    const std::string& pid = vals[static_cast<int>(Field::pid)];
    if (!trim(pid).empty()) {
        long long v;
        if (!parse_int(trim(pid), v) || v < 0) {
            err.reason = "bad pid '" + pid + "'";
            return std::nullopt;
        }
        r.pid = static_cast<std::uint64_t>(v);
    }
    r.src_ip = vals[static_cast<int>(Field::src_ip)];
    r.dest_ip = vals[static_cast<int>(Field::dest_ip)];
    bool bad = false;
    r.src_port = parse_port(vals[static_cast<int>(Field::src_port)], bad);
    if (bad) {
        err.reason = "src_port out of range '" + vals[static_cast<int>(Field::src_port)] + "'";
        return std::nullopt;
    }
    r.dest_port = parse_port(vals[static_cast<int>(Field::dest_port)], bad);
    if (bad) {
        err.reason = "dest_port out of range '" + vals[static_cast<int>(Field::dest_port)] + "'";
        return std::nullopt;
    }
    r.protocol = vals[static_cast<int>(Field::protocol)];
    r.image_path = vals[static_cast<int>(Field::image_path)];
    return r;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

}  // namespace

const char* field_name(Field f) { return kFieldNames[static_cast<int>(f)]; }

std::optional<Field> field_from_name(std::string_view name) {
    for (int i = 0; i < kFieldCount; ++i)
        if (name == kFieldNames[i]) return static_cast<Field>(i);
    return std::nullopt;
}

std::string field_value(const FlowRecord& r, Field f) {
    switch (f) {
        case Field::timestamp: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.3f", r.timestamp);
            return buf;
        }
        case Field::action: return r.action.empty() ? "none" : r.action;
        case Field::host: return r.host.empty() ? "none" : r.host;
        case Field::principal: return r.principal.empty() ? "none" : r.principal;
        case Field::pid: return std::to_string(r.pid);
        case Field::src_ip: return r.src_ip.empty() ? "none" : r.src_ip;
        case Field::dest_ip: return r.dest_ip.empty() ? "none" : r.dest_ip;
        case Field::src_port: return r.src_port ? std::to_string(*r.src_port) : "none";
        case Field::dest_port: return r.dest_port ? std::to_string(*r.dest_port) : "none";
        case Field::protocol: return r.protocol.empty() ? "none" : r.protocol;
        case Field::image_path: return r.image_path.empty() ? "none" : r.image_path;
    }
    return "none";
}

std::optional<double> parse_timestamp(std::string_view text) {
    text = trim(text);
    if (text.empty()) return std::nullopt;
    double d;
    if (parse_double(text, d)) return round_ms(d);
    if (auto t = parse_rfc3339(text)) return round_ms(*t);
    if (auto t = parse_monthday_clock(text)) return round_ms(*t);
    return std::nullopt;
}

HeaderMap default_header_map() {
    HeaderMap m;
    for (int i = 0; i < kFieldCount; ++i) m[kFieldNames[i]] = kFieldNames[i];
    m["timestamp"] = "time";  // canonical CSV header calls the column "time"
    return m;
}

FieldMap default_field_map() {
    FieldMap m;
    for (int i = 0; i < kFieldCount; ++i) m[kFieldNames[i]] = kFieldNames[i];
    return m;
}

ParseResult parse_flow_csv(std::istream& in, const HeaderMap& header_map) {
    ParseResult result;
    std::string line;
    if (!std::getline(in, line)) throw FormatError("empty input: missing CSV header row");
    std::vector<std::string> header = split_csv_line(line);

    // column index per FlowRecord field, -1 when unmapped/absent
    std::array<int, kFieldCount> col_of;
    col_of.fill(-1);
    for (int i = 0; i < kFieldCount; ++i) {
        auto it = header_map.find(kFieldNames[i]);
        if (it == header_map.end()) continue;
        auto pos = std::find(header.begin(), header.end(), it->second);
        if (pos != header.end()) col_of[i] = static_cast<int>(pos - header.begin());
    }
    for (Field f : kRequiredFields) {
        if (col_of[static_cast<int>(f)] < 0)
            throw FormatError(std::string("CSV header has no column for required field ") + field_name(f));
    }

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            result.rejects.push_back({line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                                   std::to_string(cells.size())});
            continue;
        }
        std::array<std::string, kFieldCount> vals;
        for (int i = 0; i < kFieldCount; ++i)
            if (col_of[i] >= 0) vals[i] = cells[static_cast<std::size_t>(col_of[i])];
        RowError err;
        if (auto rec = record_from_values(vals, err))
            result.records.push_back(std::move(*rec));
        else
            result.rejects.push_back({line_no, err.reason});
    }
    return result;
}

namespace {

// Walks a dotted key path into a JSON object; returns the raw value as text.
std::optional<std::string> json_path_value(const nlohmann::json& obj, const std::string& path) {
    const nlohmann::json* cur = &obj;
    std::size_t pos = 0;
    while (pos <= path.size()) {
        std::size_t dot = path.find('.', pos);
        std::string key = path.substr(pos, dot == std::string::npos ? std::string::npos : dot - pos);
        if (!cur->is_object() || !cur->contains(key)) return std::nullopt;
        cur = &(*cur)[key];
        if (dot == std::string::npos) break;
        pos = dot + 1;
    }
    if (cur->is_string()) return cur->get<std::string>();
    if (cur->is_number_integer()) return std::to_string(cur->get<long long>());
    if (cur->is_number_unsigned()) return std::to_string(cur->get<unsigned long long>());
    if (cur->is_number_float()) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", cur->get<double>());
        return std::string(buf);
    }
    if (cur->is_boolean()) return cur->get<bool>() ? "true" : "false";
    return std::nullopt;
}

}  // namespace

ParseResult parse_flow_jsonl(std::istream& in, const FieldMap& field_map) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    std::size_t nonblank = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ++nonblank;
        nlohmann::json obj = nlohmann::json::parse(line, nullptr, false);
        if (obj.is_discarded() || !obj.is_object()) {
            result.rejects.push_back({line_no, "unparseable JSON object"});
            continue;
        }
        std::array<std::string, kFieldCount> vals;
        for (int i = 0; i < kFieldCount; ++i) {
            auto it = field_map.find(kFieldNames[i]);
            if (it == field_map.end()) continue;
            if (auto v = json_path_value(obj, it->second)) vals[i] = *v;
        }
        RowError err;
        if (auto rec = record_from_values(vals, err))
            result.records.push_back(std::move(*rec));
        else
            result.rejects.push_back({line_no, err.reason});
    }
    if (nonblank > 0 && result.records.empty())
        result.warnings.push_back("all " + std::to_string(nonblank) + " input lines were rejected");
    return result;
}

void write_flow_csv(const std::vector<FlowRecord>& records, std::ostream& out) {
    out << "time,action,host,principal,pid,src_ip,dest_ip,src_port,dest_port,protocol,image_path\n";
    char ts[64];
    for (const FlowRecord& r : records) {
        std::snprintf(ts, sizeof ts, "%.3f", r.timestamp);
        out << ts << ',' << csv_escape(r.action) << ',' << csv_escape(r.host) << ','
            << csv_escape(r.principal) << ',' << r.pid << ',' << csv_escape(r.src_ip) << ','
            << csv_escape(r.dest_ip) << ',' << (r.src_port ? std::to_string(*r.src_port) : "") << ','
            << (r.dest_port ? std::to_string(*r.dest_port) : "") << ',' << csv_escape(r.protocol)
            << ',' << csv_escape(r.image_path) << '\n';
    }
}

WindowingResult partition_windows(const std::vector<FlowRecord>& records, const WindowSpec& spec) {
    if (spec.width <= 0.0 || spec.stride <= 0.0)
        throw ConfigError("window width and stride must be positive");
    WindowingResult result;

    double tmax = -1.0;
    for (const FlowRecord& r : records) {
        if (r.timestamp < spec.start) {
            ++result.dropped_before_start;
            continue;
        }
        tmax = std::max(tmax, r.timestamp);
    }
    if (tmax < 0.0) return result;  // nothing in range

    // Last window: the first one whose interval contains tmax (or, if stride >
    // width leaves tmax in a gap, the last window starting at or before it).
    double x = (tmax - spec.start - spec.width) / spec.stride;
    long long first_containing = std::max(0LL, static_cast<long long>(std::floor(x)) + 1);
    long long last;
    if (spec.start + static_cast<double>(first_containing) * spec.stride <= tmax)
        last = first_containing;
    else
        last = static_cast<long long>(std::floor((tmax - spec.start) / spec.stride));

    result.windows.resize(static_cast<std::size_t>(last) + 1);
    for (long long i = 0; i <= last; ++i) {
        Window& w = result.windows[static_cast<std::size_t>(i)];
        w.window_id = static_cast<std::size_t>(i);
        w.t0 = spec.start + static_cast<double>(i) * spec.stride;
        w.t1 = w.t0 + spec.width;
    }
    for (const FlowRecord& r : records) {
        if (r.timestamp < spec.start) continue;
        long long hi = std::min(last, static_cast<long long>(std::floor((r.timestamp - spec.start) / spec.stride)));
        for (long long i = hi; i >= 0; --i) {
            const Window& w = result.windows[static_cast<std::size_t>(i)];
            if (r.timestamp >= w.t1) break;  // earlier windows end even sooner
            if (r.timestamp >= w.t0) result.windows[static_cast<std::size_t>(i)].records.push_back(r);
        }
    }
    return result;
}

std::vector<FlowRecord> filter_hosts(const std::vector<FlowRecord>& records,
                                     const std::set<std::string>& exclude) {
    std::vector<FlowRecord> out;
    out.reserve(records.size());
    for (const FlowRecord& r : records)
        if (!exclude.count(r.host)) out.push_back(r);
    return out;
}

namespace {

// Cross-platform deterministic helpers on top of the (standardized) mt19937_64
// output sequence; std::uniform_*_distribution is implementation-defined.
double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * (1.0 / 9007199254740992.0);
}

std::string synth_host_name(int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "Host%04d", i);
    return buf;
}

std::string synth_host_ip(int i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "10.0.%d.%d", i / 256, i % 256);
    return buf;
}

}  // namespace

std::set<std::string> synth_compromised_hosts(const SynthConfig& cfg) {
    std::set<std::string> hosts;
    for (const PlantedCampaign& c : cfg.campaigns) hosts.insert(c.compromised_host);
    return hosts;
}

std::vector<FlowRecord> synth_generate(const SynthConfig& cfg) {
    if (cfg.n_hosts <= 0) throw ConfigError("n_hosts must be positive");
    if (cfg.span <= 0.0) throw ConfigError("span must be positive");
    if (cfg.benign_rate < 0.0) throw ConfigError("benign_rate must be nonnegative");
    for (const PlantedCampaign& c : cfg.campaigns) {
        if (c.active_start < 0.0 || c.active_end > cfg.span || c.active_start >= c.active_end)
            throw ConfigError("campaign interval for " + c.compromised_host + " lies outside the span");
    }

    std::mt19937_64 rng(cfg.rng_seed);
    std::vector<FlowRecord> records;
    const std::set<std::string> reserved = synth_compromised_hosts(cfg);

    // Benign pool: disjoint groups of hosts, one service per group. Hosts in
    // different groups never contact the same service, so benign hyperedges
    // are pairwise disjoint and the containment graph stays edgeless.
    constexpr int kGroupSize = 4;
    constexpr double kBeaconPeriod = 60.0;
    std::vector<int> benign_hosts;
    for (int h = 0; h < cfg.n_hosts; ++h)
        if (!reserved.count(synth_host_name(h))) benign_hosts.push_back(h);

    if (cfg.benign_rate > 0.0) {
        const double interval = 60.0 / cfg.benign_rate;
        for (std::size_t bi = 0; bi < benign_hosts.size(); ++bi) {
            int h = benign_hosts[bi];
            int group = static_cast<int>(bi) / kGroupSize;
            char svc_ip[32];
            std::snprintf(svc_ip, sizeof svc_ip, "10.1.%d.%d", group / 256, group % 256);
            int svc_port = 8000 + group % 1000;
            for (double t = 0.0; t + interval <= cfg.span; t += interval) {
                double jitter = unit_real(rng) * interval * 0.5;
                FlowRecord r;
                r.timestamp = round_ms(t + jitter);
                r.action = "MESSAGE-FLOW";
                r.host = synth_host_name(h);
                r.principal = "user" + std::to_string(h);
                r.pid = 1000 + static_cast<std::uint64_t>(h);
                r.src_ip = synth_host_ip(h);
                r.dest_ip = svc_ip;
                r.dest_port = svc_port;
                r.protocol = "TCP";
                r.image_path = "app.exe";
                records.push_back(std::move(r));
            }
        }
    }

    // Distinct shared services, in first-appearance order, each with its own
    // auxiliary host outside the benign pool.
    std::vector<std::pair<std::string, int>> services;
    for (const PlantedCampaign& c : cfg.campaigns)
        for (const auto& s : c.shared_services)
            if (std::find(services.begin(), services.end(), s) == services.end()) services.push_back(s);

    auto aux_host_name = [](std::size_t j) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "SvcAux%02zu", j);
        return std::string(buf);
    };
    auto aux_host_ip = [](std::size_t j) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "10.2.0.%zu", j + 1);
        return std::string(buf);
    };

    for (std::size_t ci = 0; ci < cfg.campaigns.size(); ++ci) {
        const PlantedCampaign& c = cfg.campaigns[ci];
        int host_index = -1;
        for (int h = 0; h < cfg.n_hosts; ++h)
            if (synth_host_name(h) == c.compromised_host) host_index = h;
        std::string src = host_index >= 0 ? synth_host_ip(host_index) : "10.3.0." + std::to_string(ci + 1);
        for (double t = c.active_start; t < c.active_end; t += kBeaconPeriod) {
            FlowRecord beacon;
            beacon.timestamp = round_ms(t);
            beacon.action = "MESSAGE-FLOW";
            beacon.host = c.compromised_host;
            beacon.principal = "user-" + c.compromised_host;
            beacon.pid = 6000 + static_cast<std::uint64_t>(ci);
            beacon.src_ip = src;
            beacon.dest_ip = c.c2_ip;
            beacon.dest_port = c.c2_port;
            beacon.protocol = "TCP";
            beacon.image_path = "implant.exe";
            records.push_back(beacon);
            for (const auto& svc : c.shared_services) {
                FlowRecord r = beacon;
                r.dest_ip = svc.first;
                r.dest_port = svc.second;
                r.image_path = "client.exe";
                records.push_back(std::move(r));
                // auxiliary host keeps this service's hyperedge distinct
                std::size_t j = static_cast<std::size_t>(
                    std::find(services.begin(), services.end(), svc) - services.begin());
                FlowRecord aux;
                aux.timestamp = beacon.timestamp;
                aux.action = "MESSAGE-FLOW";
                aux.host = aux_host_name(j);
                aux.principal = "svc";
                aux.pid = 7000 + static_cast<std::uint64_t>(j);
                aux.src_ip = aux_host_ip(j);
                aux.dest_ip = svc.first;
                aux.dest_port = svc.second;
                aux.protocol = "TCP";
                aux.image_path = "client.exe";
                records.push_back(std::move(aux));
            }
        }
    }

    std::stable_sort(records.begin(), records.end(),
                     [](const FlowRecord& a, const FlowRecord& b) { return a.timestamp < b.timestamp; });
    return records;
}

}  // namespace hypertda
