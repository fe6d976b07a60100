#include <doctest.h>

#include <random>
#include <sstream>

#include "hypertda/errors.hpp"
#include "hypertda/ingest.hpp"
#include "test_util.hpp"

using namespace hypertda;

TEST_CASE("parse_flow_csv reads the sample excerpt") {
    std::istringstream in(testutil::sample_flow_csv());
    ParseResult res = parse_flow_csv(in);
    REQUIRE(res.records.size() == 4);
    CHECK(res.rejects.empty());
    const FlowRecord& r = res.records[0];
    CHECK(r.host == "SysClient0501");
    CHECK(r.principal == "bantonio");
    CHECK(r.pid == 2956);
    CHECK(r.src_ip == "142.20.57.246");
    CHECK(r.dest_ip == "142.20.61.189");
    CHECK(r.dest_port == 3389);
    CHECK_FALSE(r.src_port.has_value());
    CHECK(r.protocol == "TCP");
    CHECK(r.image_path == "mstsc.exe");
    CHECK(r.timestamp > 0.0);
    // rows arrive in input order
    CHECK(res.records[3].host == "SysClient0811");
    CHECK(res.records[3].dest_port == 135);
}

TEST_CASE("parse_flow_csv edge cases") {
    SUBCASE("empty stream after header") {
        std::istringstream in("time,action,host,principal,pid,src_ip,dest_ip,dest_port,protocol,image_path\n");
        ParseResult res = parse_flow_csv(in);
        CHECK(res.records.empty());
        CHECK(res.rejects.empty());
    }
    SUBCASE("out-of-range dest_port is rejected, parsing continues") {
        std::istringstream in(
            "time,host,dest_ip,dest_port\n"
            "100,hostA,1.2.3.4,99999\n"
            "101,hostB,1.2.3.5,80\n");
        ParseResult res = parse_flow_csv(in);
        CHECK(res.records.size() == 1);
        REQUIRE(res.rejects.size() == 1);
        CHECK(res.rejects[0].line_no == 2);
    }
    SUBCASE("missing required value rejects the row only") {
        std::istringstream in(
            "time,host,dest_ip\n"
            "100,hostA,\n"
            "101,hostB,1.2.3.5\n");
        ParseResult res = parse_flow_csv(in);
        CHECK(res.records.size() == 1);
        CHECK(res.rejects.size() == 1);
    }
    SUBCASE("header without a required column is fatal") {
        std::istringstream in("time,host,protocol\n100,hostA,TCP\n");
        CHECK_THROWS_AS(parse_flow_csv(in), FormatError);
    }
    SUBCASE("header remapping") {
        HeaderMap map = default_header_map();
        map["timestamp"] = "ts";
        map["host"] = "machine";
        std::istringstream in("ts,machine,dest_ip\n42,box1,9.9.9.9\n");
        ParseResult res = parse_flow_csv(in, map);
        REQUIRE(res.records.size() == 1);
        CHECK(res.records[0].host == "box1");
        CHECK(res.records[0].timestamp == 42.0);
    }
}

TEST_CASE("parse_timestamp accepts the three documented forms") {
    CHECK(parse_timestamp("1569333088.25") == doctest::Approx(1569333088.25));
    CHECK(parse_timestamp("2019-09-24T13:55:40Z").has_value());
    // same instant, two spellings
    CHECK(*parse_timestamp("2019-09-24 13:55:40") == *parse_timestamp("2019-09-24T13:55:40Z"));
    auto md = parse_timestamp("9/24 13:51:28");
    REQUIRE(md.has_value());
    CHECK(*md == doctest::Approx((266 * 86400) + 13 * 3600 + 51 * 60 + 28));  // day 266 of 1970
    // offsets shift back to UTC; fractional seconds keep millisecond precision
    CHECK(*parse_timestamp("2019-09-24T15:55:40+02:00") == *parse_timestamp("2019-09-24T13:55:40Z"));
    CHECK(*parse_timestamp("2019-09-24T13:55:40.1234Z") - *parse_timestamp("2019-09-24T13:55:40Z") ==
          doctest::Approx(0.123));
    CHECK_FALSE(parse_timestamp("not a time").has_value());
    CHECK_FALSE(parse_timestamp("").has_value());
}

TEST_CASE("parse_flow_jsonl") {
    FieldMap map = default_field_map();
    map["host"] = "hostname";
    SUBCASE("reads mapped keys") {
        std::istringstream in(
            R"({"timestamp":"2019-09-24T13:55:40Z","hostname":"SysClient0811","dest_ip":"142.20.61.130","dest_port":135,"extra":1})"
            "\n");
        ParseResult res = parse_flow_jsonl(in, map);
        REQUIRE(res.records.size() == 1);
        CHECK(res.records[0].host == "SysClient0811");
        CHECK(res.records[0].dest_port == 135);
    }
    SUBCASE("degenerate object is rejected") {
        std::istringstream in("{}\n");
        ParseResult res = parse_flow_jsonl(in, map);
        CHECK(res.records.empty());
        CHECK(res.rejects.size() == 1);
        CHECK(res.warnings.size() == 1);  // everything rejected
    }
    SUBCASE("two valid lines stay in input order") {
        std::istringstream in(
            R"({"timestamp":100,"hostname":"a","dest_ip":"1.1.1.1"})"
            "\n"
            R"({"timestamp":50,"hostname":"b","dest_ip":"1.1.1.2"})"
            "\n");
        ParseResult res = parse_flow_jsonl(in, map);
        REQUIRE(res.records.size() == 2);
        CHECK(res.records[0].host == "a");
        CHECK(res.records[1].host == "b");
        CHECK(res.warnings.empty());
    }
    SUBCASE("nested key paths") {
        FieldMap nested = default_field_map();
        nested["dest_port"] = "net.port";
        std::istringstream in(R"({"timestamp":1,"host":"h","dest_ip":"2.2.2.2","net":{"port":8080}})" "\n");
        ParseResult res = parse_flow_jsonl(in, nested);
        REQUIRE(res.records.size() == 1);
        CHECK(res.records[0].dest_port == 8080);
    }
}

TEST_CASE("csv round-trip reproduces the parsed records") {
    std::istringstream in(testutil::sample_flow_csv());
    ParseResult first = parse_flow_csv(in);
    REQUIRE_FALSE(first.records.empty());
    first.records[0].image_path = "C:\\apps\\a,b.exe";  // forces quoting
    std::ostringstream out;
    write_flow_csv(first.records, out);
    std::istringstream in2(out.str());
    ParseResult second = parse_flow_csv(in2);
    CHECK(second.rejects.empty());
    CHECK(first.records == second.records);
}

namespace {

FlowRecord rec_at(double t, const std::string& host = "h") {
    FlowRecord r;
    r.timestamp = t;
    r.host = host;
    r.dest_ip = "1.1.1.1";
    return r;
}

}  // namespace

TEST_CASE("partition_windows arithmetic") {
    std::vector<FlowRecord> records = {rec_at(10), rec_at(650), rec_at(1205)};
    SUBCASE("disjoint windows") {
        WindowingResult res = partition_windows(records, {0, 600, 600});
        REQUIRE(res.windows.size() == 3);
        for (const Window& w : res.windows) CHECK(w.records.size() == 1);
        CHECK(res.windows[2].t0 == 1200.0);
    }
    SUBCASE("sliding windows duplicate overlapping records") {
        WindowingResult res = partition_windows(records, {0, 600, 300});
        REQUIRE(res.windows.size() == 4);  // [0,600) [300,900) [600,1200) [900,1500)
        CHECK(res.windows[1].records.size() == 1);
        CHECK(res.windows[1].records[0].timestamp == 650);
        CHECK(res.windows[2].records.size() == 1);
        CHECK(res.windows[2].records[0].timestamp == 650);
    }
    SUBCASE("no records") {
        WindowingResult res = partition_windows({}, {0, 600, 600});
        CHECK(res.windows.empty());
    }
    SUBCASE("records before start are dropped and counted") {
        WindowingResult res = partition_windows({rec_at(5), rec_at(100)}, {50, 100, 100});
        CHECK(res.dropped_before_start == 1);
        REQUIRE(res.windows.size() == 1);
        CHECK(res.windows[0].records.size() == 1);
    }
    SUBCASE("empty windows are retained") {
        WindowingResult res = partition_windows({rec_at(10), rec_at(1900)}, {0, 600, 600});
        REQUIRE(res.windows.size() == 4);
        CHECK(res.windows[1].records.empty());
        CHECK(res.windows[2].records.empty());
    }
}

TEST_CASE("partition_windows with stride = width is a partition") {
    std::mt19937_64 rng(11);
    std::vector<FlowRecord> records;
    for (int i = 0; i < 300; ++i) records.push_back(rec_at(testutil::unit_real(rng) * 5000.0));
    WindowSpec spec{0, 600, 600};
    WindowingResult res = partition_windows(records, spec);
    std::size_t total = 0;
    for (const Window& w : res.windows) {
        total += w.records.size();
        for (const FlowRecord& r : w.records) {
            CHECK(r.timestamp >= w.t0);
            CHECK(r.timestamp < w.t1);
        }
    }
    CHECK(total == records.size() - res.dropped_before_start);
}

TEST_CASE("filter_hosts") {
    std::istringstream in(testutil::sample_flow_csv());
    std::vector<FlowRecord> records = parse_flow_csv(in).records;
    SUBCASE("empty exclude is the identity") {
        CHECK(filter_hosts(records, {}) == records);
    }
    SUBCASE("dropping one host from the excerpt leaves three rows") {
        CHECK(filter_hosts(records, {"SysClient0501"}).size() == 3);
    }
    SUBCASE("excluding every host empties the sequence") {
        CHECK(filter_hosts(records, {"SysClient0501", "SysClient0974", "SysClient0811"}).empty());
    }
    SUBCASE("idempotent") {
        auto once = filter_hosts(records, {"SysClient0974"});
        CHECK(filter_hosts(once, {"SysClient0974"}) == once);
    }
    SUBCASE("commutes with partition_windows") {
        WindowSpec spec{0, 120, 120};
        auto filtered_then_windowed = partition_windows(filter_hosts(records, {"SysClient0974"}), spec);
        auto windowed = partition_windows(records, spec);
        for (Window& w : windowed.windows) w.records = filter_hosts(w.records, {"SysClient0974"});
        REQUIRE(filtered_then_windowed.windows.size() == windowed.windows.size());
        for (std::size_t i = 0; i < windowed.windows.size(); ++i)
            CHECK(filtered_then_windowed.windows[i].records == windowed.windows[i].records);
    }
}

TEST_CASE("synth_generate") {
    SUBCASE("no campaigns and zero rate yield nothing") {
        SynthConfig cfg;
        cfg.n_hosts = 5;
        cfg.span = 600;
        cfg.benign_rate = 0.0;
        CHECK(synth_generate(cfg).empty());
    }
    SUBCASE("same seed, same bytes") {
        SynthConfig cfg;
        cfg.n_hosts = 8;
        cfg.span = 1800;
        cfg.benign_rate = 2.0;
        cfg.rng_seed = 99;
        PlantedCampaign c;
        c.compromised_host = "Host0000";
        c.c2_ip = "203.0.113.9";
        c.active_start = 600;
        c.active_end = 1200;
        c.shared_services = {{"198.51.100.1", 445}};
        cfg.campaigns.push_back(c);
        std::ostringstream a, b;
        write_flow_csv(synth_generate(cfg), a);
        write_flow_csv(synth_generate(cfg), b);
        CHECK(a.str() == b.str());
        CHECK_FALSE(a.str().empty());
    }
    SUBCASE("campaign interval outside the span is a config error") {
        SynthConfig cfg;
        cfg.span = 600;
        PlantedCampaign c;
        c.compromised_host = "Host0000";
        c.c2_ip = "203.0.113.9";
        c.active_start = 500;
        c.active_end = 700;
        cfg.campaigns.push_back(c);
        CHECK_THROWS_AS(synth_generate(cfg), ConfigError);
    }
}
