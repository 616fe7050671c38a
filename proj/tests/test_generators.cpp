#include <catch2/catch_amalgamated.hpp>

#include "hodge/complex.hpp"
#include "hodge/generators.hpp"
#include "hodge/rng.hpp"

#include "oracle.hpp"

#include <algorithm>
#include <cmath>
#include <set>

using hodge::graph_kind;
using hodge::index_t;

TEST_CASE("random stream is deterministic and well distributed") {
    hodge::rng a(123), b(123), c(124), d(555);
    bool all_equal = true, any_diff = false;
    double sum = 0;
    for (int i = 0; i < 1000; ++i) {
        auto x = a.next_u64();
        all_equal &= (x == b.next_u64());
        any_diff |= (x != c.next_u64());
        double u = d.next_double();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
        sum += u;
    }
    CHECK(all_equal);
    CHECK(any_diff);
    CHECK(std::abs(sum / 1000 - 0.5) < 0.05);

    SECTION("bounded draw is in range") {
        hodge::rng g(7);
        for (int i = 0; i < 2000; ++i) CHECK(g.below(13) < 13);
    }
    SECTION("derived seeds decorrelate cells") {
        CHECK(hodge::derive_seed(1, 0, 0) != hodge::derive_seed(1, 0, 1));
        CHECK(hodge::derive_seed(1, 0, 0) != hodge::derive_seed(1, 1, 0));
        CHECK(hodge::derive_seed(1, 2, 3) == hodge::derive_seed(1, 2, 3));
        CHECK(hodge::derive_seed(2, 2, 3) != hodge::derive_seed(1, 2, 3));
    }
}

TEST_CASE("edge-probability random graphs") {
    auto g1 = hodge::gen_erdos_renyi(50, 0.1, 42);
    auto g2 = hodge::gen_erdos_renyi(50, 0.1, 42);
    CHECK(g1.edges == g2.edges);
    CHECK_NOTHROW(g1.validate());

    auto g3 = hodge::gen_erdos_renyi(50, 0.1, 43);
    CHECK(g1.edges != g3.edges);

    // Expected edge count is p * n(n-1)/2 = 122.5; five sigma is ~52.
    double mean = 0;
    for (std::uint64_t s = 0; s < 20; ++s)
        mean += static_cast<double>(hodge::gen_erdos_renyi(50, 0.1, s).edges.size());
    mean /= 20;
    CHECK(std::abs(mean - 122.5) < 25.0);

    CHECK(hodge::gen_erdos_renyi(10, 0.0, 1).edges.empty());
    CHECK(hodge::gen_erdos_renyi(10, 1.0, 1).edges.size() == 45);
    CHECK_THROWS_AS(hodge::gen_erdos_renyi(10, 1.5, 1), hodge::invalid_input);
    CHECK_THROWS_AS(hodge::gen_erdos_renyi(-1, 0.5, 1), hodge::invalid_input);
}

TEST_CASE("small-world rewiring preserves the edge count exactly") {
    for (auto [n, k] : std::vector<std::pair<index_t, index_t>>{
             {20, 4}, {50, 6}, {100, 10}, {1000, 10}}) {
        auto g = hodge::gen_watts_strogatz(n, k, 0.3, 7);
        CHECK_NOTHROW(g.validate());
        CHECK(static_cast<index_t>(g.edges.size()) == n * k / 2);
    }
    // The two table rows used downstream: (100, k=10) -> 500 and
    // (1000, k=10) -> 5000 edges.
    CHECK(hodge::gen_watts_strogatz(100, 10, 0.3, 1).edges.size() == 500);
    CHECK(hodge::gen_watts_strogatz(1000, 10, 0.3, 1).edges.size() == 5000);

    SECTION("no rewiring reproduces the ring lattice") {
        auto g = hodge::gen_watts_strogatz(12, 4, 0.0, 3);
        std::set<std::pair<index_t, index_t>> got;
        for (auto& e : g.edges)
            got.insert({std::min(e.first, e.second), std::max(e.first, e.second)});
        for (index_t i = 0; i < 12; ++i)
            for (index_t d = 1; d <= 2; ++d) {
                index_t j = (i + d) % 12;
                CHECK(got.count({std::min(i, j), std::max(i, j)}) == 1);
            }
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(hodge::gen_watts_strogatz(10, 3, 0.1, 1), hodge::invalid_input);
        CHECK_THROWS_AS(hodge::gen_watts_strogatz(10, 10, 0.1, 1), hodge::invalid_input);
        CHECK_THROWS_AS(hodge::gen_watts_strogatz(2, 2, 0.1, 1), hodge::invalid_input);
        CHECK_THROWS_AS(hodge::gen_watts_strogatz(10, 4, 1.5, 1), hodge::invalid_input);
    }
    SECTION("determinism") {
        auto a = hodge::gen_watts_strogatz(40, 6, 0.5, 9);
        auto b = hodge::gen_watts_strogatz(40, 6, 0.5, 9);
        CHECK(a.edges == b.edges);
    }
}

TEST_CASE("preferential attachment hits the exact edge count") {
    for (auto [n, m] : std::vector<std::pair<index_t, index_t>>{
             {20, 3}, {100, 5}, {1000, 20}}) {
        auto g = hodge::gen_barabasi_albert(n, m, 11);
        CHECK_NOTHROW(g.validate());
        CHECK(static_cast<index_t>(g.edges.size()) == m * (n - m));
    }
    // Table rows used downstream: (100, m=5) -> 475 and (1000, m=20) -> 19600.
    CHECK(hodge::gen_barabasi_albert(100, 5, 2).edges.size() == 475);
    CHECK(hodge::gen_barabasi_albert(1000, 20, 2).edges.size() == 19600);

    SECTION("each arriving vertex connects to m distinct earlier vertices") {
        auto g = hodge::gen_barabasi_albert(30, 4, 13);
        std::vector<std::set<index_t>> targets(30);
        for (auto& e : g.edges) {
            index_t later = std::max(e.first, e.second);
            index_t earlier = std::min(e.first, e.second);
            targets[static_cast<std::size_t>(later)].insert(earlier);
        }
        for (index_t v = 4; v < 30; ++v)
            CHECK(targets[static_cast<std::size_t>(v)].size() == 4);
    }
    SECTION("parameter validation") {
        CHECK_THROWS_AS(hodge::gen_barabasi_albert(5, 0, 1), hodge::invalid_input);
        CHECK_THROWS_AS(hodge::gen_barabasi_albert(5, 5, 1), hodge::invalid_input);
    }
}

TEST_CASE("named graph families") {
    auto path = hodge::gen_special(graph_kind::path, 6);
    CHECK(path.edges.size() == 5);
    auto cycle = hodge::gen_special(graph_kind::cycle, 6);
    CHECK(cycle.edges.size() == 6);
    auto star = hodge::gen_special(graph_kind::star, 6);
    CHECK(star.edges.size() == 5);
    for (auto& e : star.edges) CHECK(std::min(e.first, e.second) == 0);
    auto wheel = hodge::gen_special(graph_kind::wheel, 6);
    CHECK(wheel.edges.size() == 10);  // hub spokes + rim
    auto complete = hodge::gen_special(graph_kind::complete, 6);
    CHECK(complete.edges.size() == 15);

    // Wheel = hub joined to a rim cycle, so every rim vertex has degree 3.
    auto c = hodge::build_clique_complex(wheel);
    CHECK(c.n2() == 5);  // each rim edge spans a triangle with the hub

    CHECK_THROWS_AS(hodge::gen_special(graph_kind::path, 1), hodge::invalid_input);
    CHECK_THROWS_AS(hodge::gen_special(graph_kind::cycle, 2), hodge::invalid_input);
    CHECK_THROWS_AS(hodge::gen_special(graph_kind::wheel, 3), hodge::invalid_input);
}

TEST_CASE("synthetic instances carry an exact decomposition") {
    auto g = hodge::gen_erdos_renyi(40, 0.15, 17);
    auto inst = hodge::gen_instance(g, 99, hodge::harmonic_mode::lsq_residual);
    const auto& c = inst.c;

    REQUIRE(inst.omega.size() == static_cast<std::size_t>(c.n1()));
    REQUIRE(inst.alpha_true.size() == static_cast<std::size_t>(c.n0));
    REQUIRE(inst.beta_true.size() == static_cast<std::size_t>(c.n2()));

    // omega must equal grad + curl + harmonic exactly as assembled.
    auto d1t = boundary_1(c).transpose();
    auto d2 = boundary_2(c);
    auto grad = d1t.matvec(inst.alpha_true);
    auto curl = d2.matvec(inst.beta_true);
    for (std::size_t i = 0; i < inst.omega.size(); ++i)
        CHECK(inst.omega[i] ==
              Catch::Approx(grad[i] + curl[i] + inst.harmonic_true[i]).margin(1e-14));

    CHECK(inst.grad_norm_true == Catch::Approx(oracle::norm2(grad)).margin(1e-12));
    CHECK(inst.curl_norm_true == Catch::Approx(oracle::norm2(curl)).margin(1e-12));

    // The harmonic part must actually be harmonic.
    if (inst.harmonic_norm_true > 0) {
        auto d1 = boundary_1(c);
        CHECK(oracle::norm2(d1.matvec(inst.harmonic_true)) <=
              1e-7 * inst.harmonic_norm_true);
        CHECK(oracle::norm2(d2.transpose().matvec(inst.harmonic_true)) <=
              1e-7 * inst.harmonic_norm_true);
    }

    SECTION("determinism") {
        auto again = hodge::gen_instance(g, 99, hodge::harmonic_mode::lsq_residual);
        CHECK(again.omega == inst.omega);
    }
    SECTION("harmonic suppression") {
        auto none = hodge::gen_instance(g, 99, hodge::harmonic_mode::none);
        CHECK(none.harmonic_norm_true == 0.0);
        for (double h : none.harmonic_true) CHECK(h == 0.0);
    }
}

TEST_CASE("a loop with no triangles yields a pure harmonic residual") {
    // On a bare cycle the curl space is empty and gradients cannot carry
    // circulation, so the residual mode must find a nonzero harmonic part.
    auto g = hodge::gen_special(graph_kind::cycle, 8);
    auto inst = hodge::gen_instance(g, 5, hodge::harmonic_mode::lsq_residual);
    CHECK(inst.harmonic_norm_true > 1e-8);
    CHECK(inst.beta_true.empty());
    CHECK(inst.curl_norm_true == 0.0);
}
