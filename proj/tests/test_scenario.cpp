#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>
#include <vector>

#include "spinnet/errors.hpp"
#include "spinnet/scenario.hpp"

using namespace spinnet;

namespace {

constexpr double kHalfPi = 1.5707963267948966;

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    while (begin < text.size()) {
        const std::size_t end = text.find('\n', begin);
        REQUIRE(end != std::string::npos);  // every row ends with a newline
        out.push_back(text.substr(begin, end - begin));
        begin = end + 1;
    }
    return out;
}

std::vector<std::string> fields(const std::string& row) {
    std::vector<std::string> out;
    std::size_t begin = 0;
    while (true) {
        const std::size_t end = row.find(',', begin);
        if (end == std::string::npos) {
            out.push_back(row.substr(begin));
            return out;
        }
        out.push_back(row.substr(begin, end - begin));
        begin = end + 1;
    }
}

double value(const std::string& field) { return std::stod(field); }

const char* kTransferDoc = R"({
  "network": {"builder": "y", "l1": 3, "l2": 3, "alpha": 1.0},
  "init": 0,
  "samples": {"start": 1.5707963267948966, "stop": 2.0, "count": 1},
  "observables": ["site_probabilities", {"fidelity": "plus"}, {"ef": [8, 9]}]
})";

const char* kFreezeDoc = R"({
  "network": {"builder": "bifurcated_y", "l1": 1, "l2": 1, "alpha": 1.0},
  "init": 0,
  "events": [{"site": 2, "time": "t1"}, {"site": 4, "time": "t2"}],
  "samples": {"start": 0.0, "stop": 4.71238898038469, "count": 2},
  "observables": [{"logical_ef": [[2, 3], [4, 5]]}]
})";

}  // namespace

TEST_CASE("scenario parsing resolves the network and targets") {
    const Scenario s = parse_scenario(kTransferDoc);
    CHECK(s.network.sites() == 10);
    CHECK(s.init.size() == 10);
    CHECK(s.init[0] == Complex{1.0, 0.0});
    CHECK(s.events.empty());
    CHECK(s.samples.count == 1);
    REQUIRE(s.observables.size() == 3);
    CHECK(s.observables[0].kind == ObservableSpec::Kind::all_probabilities);
    CHECK(s.observables[1].target.support == std::vector<int>{8, 9});
    CHECK(s.observables[2].pair == std::pair<int, int>{8, 9});
    CHECK_FALSE(s.sweep.has_value());
}

TEST_CASE("execution reports the rescaled time and clamped unit values") {
    const Scenario s = parse_scenario(R"({
      "network": {"builder": "chain", "sites": 2, "alpha": 2.0},
      "init": 0,
      "samples": {"start": 0.0, "stop": 0.7853981633974483, "count": 2},
      "observables": [{"p": 1}, {"fidelity": {"site": 1}}]
    })");
    const std::vector<std::string> rows = lines(execute(s));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "t_alpha,p_1,f_site_1");
    const std::vector<std::string> first = fields(rows[1]);
    CHECK(first[0] == "0");
    CHECK(first[1] == "0");
    const std::vector<std::string> last = fields(rows[2]);
    CHECK(std::abs(value(last[0]) - kHalfPi) <= 1e-15);
    // The rescaled transfer peak; clamping keeps the column inside [0,1].
    CHECK(value(last[1]) >= 1.0 - 1e-9);
    CHECK(value(last[1]) <= 1.0);
    CHECK(value(last[2]) >= 1.0 - 1e-9);
}

TEST_CASE("execution is deterministic byte for byte") {
    const Scenario s = parse_scenario(kTransferDoc);
    const std::string once = execute(s);
    const std::string twice = execute(s);
    CHECK(once == twice);
    const std::string reparsed = execute(parse_scenario(kTransferDoc));
    CHECK(once == reparsed);
}

TEST_CASE("transfer scenario lands on the documented peak") {
    const std::vector<std::string> rows = lines(execute(parse_scenario(kTransferDoc)));
    REQUIRE(rows.size() == 2);
    const std::vector<std::string> header = fields(rows[0]);
    REQUIRE(header.size() == 13);
    CHECK(header[0] == "t_alpha");
    CHECK(header[1] == "p_0");
    CHECK(header[10] == "p_9");
    CHECK(header[11] == "f_plus");
    CHECK(header[12] == "ef_8_9");
    const std::vector<std::string> row = fields(rows[1]);
    CHECK(std::abs(value(row[0]) - kHalfPi) <= 1e-15);
    CHECK(std::abs(value(row[9]) - 0.5) <= 1e-9);   // p_8
    CHECK(std::abs(value(row[10]) - 0.5) <= 1e-9);  // p_9
    CHECK(value(row[11]) >= 1.0 - 1e-9);
    CHECK(value(row[12]) >= 1.0 - 1e-9);
    for (std::size_t k = 1; k <= 8; ++k) CHECK(value(row[k]) <= 1e-9);
}

TEST_CASE("unknown keys are rejected at every level") {
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"], "horizon": 3})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2,
        "spin": 1}, "init": 0, "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "samples": {"start": 0, "stop": 1, "count": 2, "step": 0.1},
        "observables": ["site_probabilities"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "events": [{"site": 0, "time": 0.1, "kind": "flip"}],
        "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": {"site": 0, "phase": 1},
        "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "bifurcated_y",
        "l1": 1, "l2": 1}, "init": 0,
        "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"],
        "sweep": {"readout": 2.0, "mode": "fast"}})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": [{"p": 1, "ef": [0, 1]}]})"),
                    ParseError);
}

TEST_CASE("missing and malformed scenario pieces are rejected") {
    CHECK_THROWS_AS(parse_scenario("not json"), ParseError);
    CHECK_THROWS_AS(parse_scenario("[]"), ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"init": 0,
        "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": []})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 5, "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 1.5, "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "samples": {"start": 1, "stop": 0, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "events": [{"site": 0, "time": -0.5}],
        "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "events": [{"site": 0, "time": "t3"}],
        "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": ["site_probabilities"]})"),
                    ParseError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": [{"ef": [1, 1]}]})"),
                    ValidationError);
    CHECK_THROWS_AS(parse_scenario(R"({"network": {"builder": "chain", "sites": 2},
        "init": 0, "samples": {"start": 0, "stop": 1, "count": 2},
        "observables": [{"fidelity": "omega"}]})"),
                    ParseError);
}

TEST_CASE("named targets resolve against the scenario network") {
    const Scenario s = parse_scenario(R"({
      "network": {"builder": "bifurcated_y", "l1": 1, "l2": 1},
      "init": {"state": "psi_a"},
      "samples": {"start": 0.0, "stop": 3.0, "count": 4},
      "observables": [{"fidelity": "psi_a"}, {"fidelity":
        {"custom": {"support": [0, 1], "amplitudes": [[0.0, 0.6], 0.8]}}}]
    })");
    CHECK(s.observables[0].target.support == std::vector<int>{2, 3, 4, 5});
    CHECK(s.observables[1].target.amplitudes[0] == Complex{0.0, 0.6});

    const std::vector<std::string> rows = lines(execute(s));
    CHECK(fields(rows[0]) ==
          std::vector<std::string>{"t_alpha", "f_psi_a", "f_custom"});
    // The antisymmetric state is stationary, so its fidelity stays pinned at 1.
    for (std::size_t r = 1; r < rows.size(); ++r)
        CHECK(value(fields(rows[r])[1]) >= 1.0 - 1e-9);
}

TEST_CASE("alpha can be overridden at load time") {
    const Scenario s = parse_scenario(kTransferDoc, 2.0);
    CHECK(s.network.alpha() == 2.0);
    CHECK_THROWS_AS(parse_scenario(kTransferDoc, -1.0), InvalidArgumentError);
    CHECK_THROWS_AS(load_scenario_file("/nonexistent/path.json"), InvalidArgumentError);
}

TEST_CASE("placeholder events only run under a sweep") {
    const Scenario s = parse_scenario(kFreezeDoc);
    REQUIRE(s.events.size() == 2);
    CHECK(s.events[0].placeholder == 1);
    CHECK(s.events[1].placeholder == 2);
    CHECK_THROWS_AS(execute(s), ValidationError);

    const GridSpec point{kHalfPi, kHalfPi, 1};
    const std::string csv = sweep_flip_times(s, point, point);
    const std::vector<std::string> rows = lines(csv);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "t1_alpha,t2_alpha,logical_weight,logical_ef");
    const std::vector<std::string> row = fields(rows[1]);
    CHECK(std::abs(value(row[0]) - kHalfPi) <= 1e-15);
    CHECK(std::abs(value(row[1]) - kHalfPi) <= 1e-15);
    CHECK(value(row[2]) >= 1.0 - 1e-9);
    CHECK(value(row[3]) >= 1.0 - 1e-9);
}

TEST_CASE("sweep surfaces are symmetric under swapping the flip times") {
    const Scenario s = parse_scenario(kFreezeDoc);
    const GridSpec grid{kHalfPi - 0.3, kHalfPi + 0.3, 2};
    const std::vector<std::string> rows = lines(sweep_flip_times(s, grid, grid));
    REQUIRE(rows.size() == 5);
    const auto early_late = fields(rows[2]);  // t1 = lo, t2 = hi
    const auto late_early = fields(rows[3]);  // t1 = hi, t2 = lo
    CHECK(std::abs(value(early_late[2]) - value(late_early[2])) <= 1e-12);
    CHECK(std::abs(value(early_late[3]) - value(late_early[3])) <= 1e-12);
    // Off-peak flips leave less than the full population frozen.
    CHECK(value(early_late[2]) < 1.0);
    CHECK(value(early_late[3]) > 0.0);
}

TEST_CASE("sweep validation guards the schedule contract") {
    const Scenario fixed = parse_scenario(R"({
      "network": {"builder": "bifurcated_y", "l1": 1, "l2": 1},
      "init": 0, "events": [{"site": 2, "time": 0.5}, {"site": 4, "time": "t2"}],
      "samples": {"start": 0.0, "stop": 1.0, "count": 2},
      "observables": ["site_probabilities"]
    })");
    const GridSpec point{kHalfPi, kHalfPi, 1};
    CHECK_THROWS_AS(sweep_flip_times(fixed, point, point), ValidationError);

    const Scenario s = parse_scenario(kFreezeDoc);
    const GridSpec late{10.0, 11.0, 2};
    CHECK_THROWS_AS(sweep_flip_times(s, late, point), ValidationError);
    const GridSpec negative{-0.5, 0.5, 2};
    CHECK_THROWS_AS(sweep_flip_times(s, negative, point), ValidationError);
}

TEST_CASE("grid arguments parse strictly") {
    const GridSpec g = parse_grid_arg("0:2.5:6");
    CHECK(g.start == 0.0);
    CHECK(g.stop == 2.5);
    CHECK(g.count == 6);
    CHECK(g.times().size() == 6);
    CHECK(parse_grid_arg("1.5:1.5:1").times() == std::vector<double>{1.5});
    CHECK_THROWS_AS(parse_grid_arg("0:1"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_grid_arg("0:1:2:3"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_grid_arg("a:1:2"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_grid_arg("0:1:two"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_grid_arg("0:1:0"), InvalidArgumentError);
    CHECK_THROWS_AS(parse_grid_arg("1:0:5"), InvalidArgumentError);
}

TEST_CASE("oracle check replays scenarios through the brute-force engine") {
    const Scenario s = parse_scenario(R"({
      "network": {"builder": "chain", "sites": 2},
      "init": 0, "events": [{"site": 0, "time": 0.7853981633974483}],
      "samples": {"start": 0.0, "stop": 1.5707963267948966, "count": 5},
      "observables": [{"ef": [0, 1]}]
    })");
    const OracleCheckResult result = oracle_check(s, 12);
    CHECK(result.ok);
    CHECK(result.summary.find("engines agree within contract") != std::string::npos);
    CHECK(result.report.max_amplitude_deviation <= 1e-10);
    CHECK_THROWS_AS(oracle_check(s, 1), BudgetError);

    const Scenario single = parse_scenario(R"({
      "network": {"sites": 1, "edges": []},
      "init": 0, "samples": {"start": 0.0, "stop": 1.0, "count": 2},
      "observables": [{"p": 0}]
    })");
    CHECK_THROWS_AS(oracle_check(single, 12), ValidationError);
}
