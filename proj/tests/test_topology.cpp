#include <catch2/catch_amalgamated.hpp>

#include "hodge/complex.hpp"
#include "hodge/generators.hpp"
#include "hodge/topology.hpp"

#include "oracle.hpp"

#include <cmath>

using hodge::build_clique_complex;
using hodge::graph;
using hodge::graph_kind;
using hodge::index_t;

namespace {

// Third, fully independent route: kernel dimension of the dense Laplacian
// by cyclic rotations.
index_t betti_by_rotations(const hodge::complex2& c, int p) {
    hodge::sparse_matrix lap;
    if (p == 0) lap = laplacian_0(c);
    else if (p == 1) lap = laplacian_1(c);
    else lap = laplacian_2(c);
    if (lap.rows() == 0) return 0;
    return static_cast<index_t>(oracle::kernel_dim(oracle::from_sparse(lap)));
}

}  // namespace

TEST_CASE("betti numbers of hand-checked complexes") {
    struct fixture {
        graph g;
        index_t b0, b1, b2;
    };
    std::vector<fixture> fixtures;

    {  // Bare square: one loop.
        graph g;
        g.n_vertices = 4;
        g.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}};
        fixtures.push_back({g, 1, 1, 0});
    }
    {  // Filled triangle: contractible.
        graph g;
        g.n_vertices = 3;
        g.edges = {{0, 1}, {0, 2}, {1, 2}};
        fixtures.push_back({g, 1, 0, 0});
    }
    {  // Two disjoint triangles plus an isolated vertex.
        graph g;
        g.n_vertices = 7;
        g.edges = {{0, 1}, {0, 2}, {1, 2}, {3, 4}, {3, 5}, {4, 5}};
        fixtures.push_back({g, 3, 0, 0});
    }
    {  // Two squares glued along an edge: a wedge of two circles.
        graph g;
        g.n_vertices = 6;
        g.edges = {{0, 1}, {1, 2}, {2, 3}, {0, 3}, {1, 4}, {4, 5}, {2, 5}};
        fixtures.push_back({g, 1, 2, 0});
    }
    {  // Octahedron boundary: a 2-sphere, beta_2 = 1.
        graph g;
        g.n_vertices = 6;
        for (index_t i = 0; i < 6; ++i)
            for (index_t j = i + 1; j < 6; ++j)
                if (!(i == 0 && j == 5) && !(i == 1 && j == 4) && !(i == 2 && j == 3))
                    g.edges.push_back({i, j});
        fixtures.push_back({g, 1, 0, 1});
    }

    for (const auto& f : fixtures) {
        auto c = build_clique_complex(f.g);
        CHECK(betti(c, 0) == f.b0);
        CHECK(betti(c, 1) == f.b1);
        CHECK(betti(c, 2) == f.b2);
        CHECK(betti1_stacked(c) == f.b1);
        CHECK(betti_by_rotations(c, 1) == f.b1);
        CHECK(component_count(c) == f.b0);
        // Euler characteristic equals the alternating Betti sum.
        CHECK(euler_characteristic(c) == f.b0 - f.b1 + f.b2);
    }
}

TEST_CASE("three independent beta_1 routes agree on random complexes") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        auto g = hodge::gen_erdos_renyi(30, 0.08 + 0.02 * static_cast<double>(seed), seed);
        auto c = build_clique_complex(g);
        index_t spectral = betti(c, 1);
        CHECK(spectral == betti1_stacked(c));
        CHECK(spectral == betti_by_rotations(c, 1));
        CHECK(betti(c, 0) == component_count(c));
        CHECK(betti(c, 0) - spectral + betti(c, 2) == euler_characteristic(c));
    }
}

TEST_CASE("harmonic fraction detects circulation") {
    // Bare cycle: everything orthogonal to the gradients is harmonic.
    auto c = build_clique_complex(hodge::gen_special(graph_kind::cycle, 6));
    std::vector<double> loop(6, 0.0);
    for (index_t i = 0; i < 6; ++i) {
        index_t j = (i + 1) % 6;
        auto e = c.edge_index(i, j);
        loop[static_cast<std::size_t>(e)] = i < j ? 1.0 : -1.0;
    }
    CHECK(hodge::harmonic_fraction(c, loop) == Catch::Approx(1.0).margin(1e-9));

    // Gradient flow has no harmonic content.
    std::vector<double> alpha = {3, 1, 4, 1, 5, 9};
    auto grad = boundary_1(c).transpose().matvec(alpha);
    CHECK(hodge::harmonic_fraction(c, grad) < 1e-7);

    CHECK_THROWS_AS(hodge::harmonic_fraction(c, std::vector<double>(6, 0.0)),
                    hodge::invalid_input);
}

TEST_CASE("density landmarks") {
    auto t = hodge::kahle_thresholds(50);
    CHECK(t[0] == Catch::Approx(0.02));
    CHECK(t[1] == Catch::Approx(1.0 / std::sqrt(50.0)));
    CHECK(t[2] == Catch::Approx(std::pow(50.0, -1.0 / 3.0)));
    CHECK(t[0] < t[1]);
    CHECK(t[1] < t[2]);
    CHECK_THROWS_AS(hodge::kahle_thresholds(1), hodge::invalid_input);
}

TEST_CASE("density sweep is reproducible and spans the regimes") {
    std::vector<double> rhos = {0.005, 0.08, 0.7};
    auto rows = hodge::density_sweep(30, rhos, 3, 2024);
    REQUIRE(rows.size() == 9);
    auto again = hodge::density_sweep(30, rhos, 3, 2024);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(rows[i].betti1 == again[i].betti1);
        CHECK(rows[i].harmonic_fraction == again[i].harmonic_fraction);
        CHECK(rows[i].n == 30);
        CHECK(rows[i].rho == rhos[i / 3]);
        CHECK(rows[i].trial == static_cast<index_t>(i % 3));
    }

    // The sparse regime has almost no edges; the dense regime fills in
    // triangles and kills the loops.
    for (std::size_t i = 0; i < 3; ++i) CHECK(rows[i].n2 == 0);
    for (std::size_t i = 6; i < 9; ++i) {
        CHECK(rows[i].n2 > 0);
        CHECK(rows[i].betti1 == 0);
        CHECK(rows[i].harmonic_fraction < 1e-6);
    }

    CHECK_THROWS_AS(hodge::density_sweep(1, rhos, 3, 1), hodge::invalid_input);
    CHECK_THROWS_AS(hodge::density_sweep(30, rhos, 0, 1), hodge::invalid_input);
}

TEST_CASE("betti argument validation") {
    auto c = build_clique_complex(hodge::gen_special(graph_kind::path, 4));
    CHECK_THROWS_AS(betti(c, 3), hodge::invalid_input);
    CHECK_THROWS_AS(betti(c, -1), hodge::invalid_input);
    CHECK(betti(c, 2) == 0);  // no triangles at all
}
