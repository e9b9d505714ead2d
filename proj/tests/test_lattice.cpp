#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "spinnet/errors.hpp"
#include "spinnet/lattice.hpp"

using namespace spinnet;

TEST_CASE("transfer couplings match the closed form") {
    CHECK(pst_couplings(2, 1.0) == std::vector<double>{1.0});
    const std::vector<double> j7 = pst_couplings(7, 1.0);
    const std::vector<double> expected{std::sqrt(6.0),  std::sqrt(10.0), std::sqrt(12.0),
                                       std::sqrt(12.0), std::sqrt(10.0), std::sqrt(6.0)};
    CHECK(j7 == expected);
    CHECK(pst_couplings(3, 2.0) ==
          std::vector<double>{2.0 * std::sqrt(2.0), 2.0 * std::sqrt(2.0)});
}

TEST_CASE("coupling profile is palindromic and peaks at the centre") {
    for (int n = 2; n <= 20; ++n) {
        const std::vector<double> j = pst_couplings(n, 1.0);
        REQUIRE(j.size() == static_cast<std::size_t>(n - 1));
        for (std::size_t i = 0; i < j.size(); ++i)
            CHECK(j[i] == j[j.size() - 1 - i]);
        const double mid = j[(j.size() - 1) / 2];
        for (double v : j) CHECK(v <= mid);
    }
}

TEST_CASE("transfer couplings reject degenerate arguments") {
    CHECK_THROWS_AS(pst_couplings(1, 1.0), InvalidArgumentError);
    CHECK_THROWS_AS(pst_couplings(5, 0.0), InvalidArgumentError);
    CHECK_THROWS_AS(pst_couplings(5, -1.0), InvalidArgumentError);
}

TEST_CASE("chain builder wires consecutive sites and tags the ends") {
    const SpinNetwork chain = build_chain(4, 1.0);
    CHECK(chain.sites() == 4);
    CHECK(chain.coupling(0, 1) == std::sqrt(3.0));
    CHECK(chain.coupling(1, 2) == 2.0);
    CHECK(chain.coupling(2, 3) == std::sqrt(3.0));
    CHECK(chain.coupling(0, 2) == 0.0);
    CHECK(chain.has_role(0, Role::input));
    CHECK(chain.has_role(3, Role::output));
    CHECK_FALSE(chain.has_role(1, Role::output));
    CHECK(build_chain(2, 1.0).coupling(0, 1) == 1.0);
    CHECK_THROWS_AS(build_chain(1, 1.0), InvalidArgumentError);
    CHECK_THROWS_AS(build_chain(4, 0.0), InvalidArgumentError);
}

TEST_CASE("y builder splits the equivalent chain at the hub") {
    const SpinNetwork y = build_y({3, 3, 1.0, false});
    CHECK(y.sites() == 10);
    // Input branch keeps the equivalent-chain couplings.
    CHECK(y.coupling(0, 1) == std::sqrt(6.0));
    CHECK(y.coupling(1, 2) == std::sqrt(10.0));
    CHECK(y.coupling(2, 3) == std::sqrt(12.0));
    // The hub-crossing coupling is shared by both branches at 1/sqrt(2).
    const double hub_j = std::sqrt(12.0) / std::sqrt(2.0);
    CHECK(y.coupling(3, 4) == hub_j);
    CHECK(y.coupling(3, 5) == hub_j);
    // Deeper branch couplings keep their equivalent-chain values.
    CHECK(y.coupling(4, 6) == std::sqrt(10.0));
    CHECK(y.coupling(5, 7) == std::sqrt(10.0));
    CHECK(y.coupling(6, 8) == std::sqrt(6.0));
    CHECK(y.coupling(7, 9) == std::sqrt(6.0));
    CHECK(y.has_role(3, Role::hub));
    CHECK(output_pair(y) == std::pair<int, int>{8, 9});
}

TEST_CASE("four-site y halves the branch coupling exactly") {
    const SpinNetwork y = build_y({1, 1, 1.0, false});
    CHECK(y.sites() == 4);
    CHECK(y.coupling(0, 1) == std::sqrt(2.0));
    CHECK(y.coupling(1, 2) == 1.0);
    CHECK(y.coupling(1, 3) == 1.0);
    CHECK(y.coupling(0, 1) == y.coupling(1, 2) * std::sqrt(2.0));
    CHECK(output_pair(y) == std::pair<int, int>{2, 3});
}

TEST_CASE("hubless y couples the input straight into both branches") {
    const SpinNetwork y = build_y({0, 1, 1.0, false});
    CHECK(y.sites() == 3);
    CHECK(y.coupling(0, 1) == 1.0 / std::sqrt(2.0));
    CHECK(y.coupling(0, 2) == 1.0 / std::sqrt(2.0));
    CHECK(y.has_role(0, Role::input));
    CHECK(y.has_role(0, Role::hub));
    CHECK(output_pair(y) == std::pair<int, int>{1, 2});
}

TEST_CASE("branch depth orders sites breadth-first") {
    const SpinNetwork y = build_y({2, 2, 1.0, false});
    CHECK(y.sites() == 7);
    CHECK(y.coupling(2, 3) > 0.0);  // hub to first branch site
    CHECK(y.coupling(2, 4) > 0.0);
    CHECK(y.coupling(3, 5) > 0.0);  // depth 1 to depth 2, same branch
    CHECK(y.coupling(4, 6) > 0.0);
    CHECK(y.coupling(3, 4) == 0.0);  // branches never touch
    CHECK(output_pair(y) == std::pair<int, int>{5, 6});
}

TEST_CASE("bifurcated builder replaces each branch end with a coupled pair") {
    const SpinNetwork b = build_bifurcated_y({1, 1, 1.0, false});
    CHECK(b.sites() == 6);
    CHECK(b.coupling(0, 1) == std::sqrt(2.0));
    const double final_j = 1.0 / std::sqrt(2.0);
    CHECK(b.coupling(1, 2) == final_j);
    CHECK(b.coupling(1, 3) == final_j);
    CHECK(b.coupling(1, 4) == final_j);
    CHECK(b.coupling(1, 5) == final_j);
    const auto pairs = branch_end_pairs(b);
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0] == std::pair<int, int>{2, 3});
    CHECK(pairs[1] == std::pair<int, int>{4, 5});
}

TEST_CASE("deep bifurcated networks keep the shared trunk couplings") {
    const SpinNetwork b = build_bifurcated_y({3, 3, 1.0, false});
    const SpinNetwork y = build_y({3, 3, 1.0, false});
    CHECK(b.sites() == y.sites() + 2);
    // Everything up to the replaced end edge is unchanged.
    for (const auto& [key, w] : y.couplings()) {
        if (key == std::pair<int, int>{6, 8} || key == std::pair<int, int>{7, 9}) continue;
        CHECK(b.coupling(key.first, key.second) == w);
    }
    // The end edge carried sqrt(6); each final edge is that over sqrt(2).
    const double final_j = std::sqrt(6.0) / std::sqrt(2.0);
    CHECK(b.coupling(6, 8) == final_j);
    CHECK(b.coupling(6, 9) == final_j);
    CHECK(b.coupling(7, 10) == final_j);
    CHECK(b.coupling(7, 11) == final_j);
    const auto pairs = branch_end_pairs(b);
    CHECK(pairs[0] == std::pair<int, int>{8, 9});
    CHECK(pairs[1] == std::pair<int, int>{10, 11});
    CHECK_THROWS_AS(branch_end_pairs(y), InvalidArgumentError);
    CHECK_THROWS_AS(output_pair(b), InvalidArgumentError);
}

TEST_CASE("builders reject invalid branch lengths") {
    CHECK_THROWS_AS(build_y({-1, 1, 1.0, false}), InvalidArgumentError);
    CHECK_THROWS_AS(build_y({1, 0, 1.0, false}), InvalidArgumentError);
    CHECK_THROWS_AS(build_bifurcated_y({1, 1, -2.0, false}), InvalidArgumentError);
}

TEST_CASE("alpha is stored once, not baked into couplings") {
    const SpinNetwork y = build_y({3, 3, 2.5, false});
    CHECK(y.alpha() == 2.5);
    CHECK(y.coupling(0, 1) == std::sqrt(6.0));
    const SpinNetwork scaled = with_alpha(y, 4.0);
    CHECK(scaled.alpha() == 4.0);
    CHECK(scaled.coupling(0, 1) == std::sqrt(6.0));
    CHECK(scaled.has_role(3, Role::hub));
    CHECK(output_pair(scaled) == output_pair(y));
}

TEST_CASE("text round trip preserves the network exactly") {
    for (const SpinNetwork& net :
         {build_chain(7, 1.0), build_y({3, 3, 1.0, false}),
          build_bifurcated_y({1, 1, 0.5, false}), build_y({0, 2, 3.0, false})}) {
        const SpinNetwork back = load_network(save_network(net));
        CHECK(back == net);
        CHECK(same_structure(back, net, 0.0));
    }
}

TEST_CASE("inline documents build the same structure as the builders") {
    const SpinNetwork direct = load_network(
        R"({"sites": 2, "edges": [[0, 1, 1.0]]})");
    CHECK(direct == build_chain(2, 1.0));

    const SpinNetwork listed = load_network(
        R"({"sites": [0, 1, 2], "edges": [[0, 1, 0.70710678118654746],
            [2, 0, 0.70710678118654746]], "alpha": 1.0})");
    CHECK(same_structure(listed, build_y({0, 1, 1.0, false}), 1e-15));
}

TEST_CASE("malformed network documents are rejected with a locus") {
    CHECK_THROWS_AS(load_network("{"), ParseError);
    CHECK_THROWS_AS(load_network(R"({"sites": 2})"), ParseError);
    CHECK_THROWS_AS(load_network(R"({"sites": 2, "edges": [[0, 1, 1.0]], "extra": 1})"),
                    ParseError);
    CHECK_THROWS_AS(load_network(R"({"sites": [1, 0], "edges": [[0, 1, 1.0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(
        load_network(R"({"sites": 2, "edges": [[0, 1, 1.0], [1, 0, 1.0]]})"),
        ValidationError);
    CHECK_THROWS_AS(load_network(R"({"sites": 2, "edges": [[0, 0, 1.0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_network(R"({"sites": 2, "edges": [[0, 1, -1.0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_network(R"({"sites": 3, "edges": [[0, 1, 1.0]]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_network(R"({"sites": 2, "edges": [[0, 1, 1.0]],
                                     "energies": [0.0, 0.5]})"),
                    ValidationError);
    CHECK_THROWS_AS(load_network(R"({"builder": "ring", "sites": 4})"), ParseError);
    CHECK_THROWS_AS(load_network(R"({"builder": "chain", "sites": 4, "l1": 1})"),
                    ParseError);
}

TEST_CASE("builder documents dispatch to the matching constructor") {
    CHECK(load_network(R"({"builder": "chain", "sites": 7, "alpha": 1.0})") ==
          build_chain(7, 1.0));
    CHECK(load_network(R"({"builder": "y", "l1": 3, "l2": 3})") ==
          build_y({3, 3, 1.0, false}));
    CHECK(load_network(R"({"builder": "bifurcated_y", "l1": 1, "l2": 1, "alpha": 2.0})") ==
          build_bifurcated_y({1, 1, 2.0, false}));
}

TEST_CASE("uniform on-site energies are accepted, mixed ones are not") {
    const SpinNetwork net = load_network(
        R"({"sites": 2, "edges": [[0, 1, 1.0]], "energies": [0.25, 0.25]})");
    CHECK(net.energies() == std::vector<double>{0.25, 0.25});
    CHECK_FALSE(net == build_chain(2, 1.0));
    CHECK_FALSE(same_structure(net, build_chain(2, 1.0)));
}
