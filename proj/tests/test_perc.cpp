#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hyperperc/estimators.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/rng.hpp"
#include "hyperperc/tree_exact.hpp"

using namespace hyperperc;
using namespace hyperperc::grp;
using namespace hyperperc::perc;

namespace {

// BFS connectivity oracle, independent of the union-find path.
std::vector<int> bfs_components(const CayleyBall& ball, const PercSample& s) {
    std::vector<int> comp(ball.n_vertices(), -1);
    int next = 0;
    for (int v0 = 0; v0 < ball.n_vertices(); ++v0) {
        if (comp[v0] >= 0) continue;
        comp[v0] = next;
        std::vector<int> stack{v0};
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (auto [v, e] : ball.adjacency[u])
                if (s.open[e] && comp[v] < 0) comp[v] = next, stack.push_back(v);
        }
        ++next;
    }
    return comp;
}

double binom_sigma(double p_true, int64_t n) {
    return std::sqrt(p_true * (1 - p_true) / static_cast<double>(n));
}

}  // namespace

TEST_CASE("sampling basics") {
    CayleyBall ball = build_ball(Presentation::free_group(2), 4);
    PercSample s0 = sample(ball, 0.0, 99);
    PercSample s1 = sample(ball, 1.0, 99);
    for (int e = 0; e < ball.n_edges(); ++e) {
        CHECK(s0.open[e] == 0);
        CHECK(s1.open[e] == 1);
    }
    CHECK(sample(ball, 0.37, 7).open == sample(ball, 0.37, 7).open);
    CHECK(sample(ball, 0.37, 7).open != sample(ball, 0.37, 8).open);
    CHECK_THROWS_AS(sample(ball, 1.5, 0), std::invalid_argument);
}

TEST_CASE("open fraction matches the binomial oracle") {
    CayleyBall ball = build_ball(Presentation::free_group(2), 6);
    int64_t total = 0, n = 0;
    for (uint64_t seed = 0; seed < 10000; ++seed) {
        PercSample s = sample(ball, 0.5, rng::trial_stream(42, seed));
        for (uint8_t b : s.open) total += b;
        n += ball.n_edges();
    }
    double frac = static_cast<double>(total) / static_cast<double>(n);
    CHECK(std::abs(frac - 0.5) < 3 * binom_sigma(0.5, n));
}

TEST_CASE("uniform-variate coupling is bitwise monotone in p") {
    CayleyBall ball = build_ball(Presentation::parse("freeprod:2,3"), 5);
    for (uint64_t seed : {1u, 2u, 3u}) {
        PercSample lo = sample(ball, 0.3, seed);
        PercSample hi = sample(ball, 0.6, seed);
        for (int e = 0; e < ball.n_edges(); ++e) CHECK(lo.open[e] <= hi.open[e]);
    }
}

TEST_CASE("cluster extremes") {
    CayleyBall ball = build_ball(Presentation::lattice(2), 3);
    ClusterPartition all = clusters(ball, sample(ball, 1.0, 0));
    CHECK(all.n_clusters() == 1);
    CHECK(all.cluster_size[0] == ball.n_vertices());
    ClusterPartition none = clusters(ball, sample(ball, 0.0, 0));
    CHECK(none.n_clusters() == ball.n_vertices());
    int total = 0;
    for (int s : none.cluster_size) total += s;
    CHECK(total == ball.n_vertices());
}

TEST_CASE("path graph with explicit bit pattern") {
    // Z ball radius 4 is the 9-vertex path; path position i <-> element a^(i-4).
    Presentation z = Presentation::lattice(1);
    CayleyBall ball = build_ball(z, 4);
    std::vector<int> pos(9);  // path position -> vertex index
    for (int i = 0; i < 9; ++i) {
        GroupElement g = identity(z);
        g.part[0].coord[0] = i - 4;
        pos[i] = ball.find(g);
        REQUIRE(pos[i] >= 0);
    }
    PercSample s;
    s.p = 0.5;
    s.seed = 0;
    s.open.assign(ball.n_edges(), 0);
    const char* bits = "11011010";  // path edge i joins positions i and i+1
    for (int i = 0; i < 8; ++i) {
        if (bits[i] == '0') continue;
        for (int e = 0; e < ball.n_edges(); ++e) {
            int u = ball.edges[e][0], v = ball.edges[e][1];
            if ((u == pos[i] && v == pos[i + 1]) || (u == pos[i + 1] && v == pos[i]))
                s.open[e] = 1;
        }
    }
    ClusterPartition part = clusters(ball, s);
    // derived by hand from the bit pattern: {0,1,2},{3,4,5},{6,7},{8}
    std::vector<std::vector<int>> expect{{0, 1, 2}, {3, 4, 5}, {6, 7}, {8}};
    for (const auto& group : expect)
        for (size_t i = 1; i < group.size(); ++i)
            CHECK(part.same(pos[group[0]], pos[group[i]]));
    CHECK_FALSE(part.same(pos[2], pos[3]));
    CHECK_FALSE(part.same(pos[5], pos[6]));
    CHECK_FALSE(part.same(pos[7], pos[8]));
}

TEST_CASE("union-find equals BFS connectivity on 100 random instances") {
    std::mt19937 gen(5);
    std::vector<CayleyBall> balls;
    balls.push_back(build_ball(Presentation::parse("freeprod:2,3"), 3));
    balls.push_back(build_ball(Presentation::lattice(2), 2));
    balls.push_back(build_ball(Presentation::free_group(2), 3));
    for (int t = 0; t < 100; ++t) {
        const CayleyBall& ball = balls[t % balls.size()];
        double p = std::uniform_real_distribution<>(0.1, 0.9)(gen);
        PercSample s = sample(ball, p, gen());
        ClusterPartition part = clusters(ball, s);
        std::vector<int> comp = bfs_components(ball, s);
        for (int u = 0; u < ball.n_vertices(); ++u)
            for (int v = u + 1; v < ball.n_vertices(); ++v)
                CHECK(part.same(u, v) == (comp[u] == comp[v]));
    }
}

TEST_CASE("two-point function on the tree") {
    Presentation f2 = Presentation::free_group(2);
    CayleyBall ball = build_ball(f2, 6);
    GroupElement g = parse_word(f2, "aba");

    CHECK(two_point(ball, 0.4, identity(f2), 500, 1).value == 1.0);
    CHECK(two_point(ball, 0.0, g, 500, 1).value == 0.0);

    // unique-path oracle: tau = p^3 = 0.027
    int64_t n = 40000;
    Estimate e = two_point(ball, 0.3, g, n, 17);
    CHECK(std::abs(e.value - 0.027) < 3 * binom_sigma(0.027, n));

    // unimodular symmetry tau(g) == tau(g^-1): exact equality of the
    // estimand; estimates agree within joint 3 sigma
    Estimate ei = two_point(ball, 0.3, inverse(f2, g), n, 18);
    CHECK(std::abs(e.value - ei.value) < 3 * std::hypot(e.std_error, ei.std_error));

    // lazy estimator agrees with the same oracle on a radius-40 implicit ball
    Estimate el = two_point_lazy(f2, 40, 0.3, g, n, 19);
    CHECK(std::abs(el.value - 0.027) < 3 * binom_sigma(0.027, n));

    CHECK_THROWS_AS(two_point(ball, 0.3, parse_word(f2, "a^9"), 10, 1),
                    std::invalid_argument);
}

TEST_CASE("susceptibility matches the closed form") {
    Presentation f2 = Presentation::free_group(2);
    // chi = (1+p)/(1-3p): 5.0 at p=0.25, 13.0 at p=0.30
    CHECK(tree::chi_closed(2, 0.25) == doctest::Approx(5.0));
    CHECK(tree::chi_closed(2, 0.30) == doctest::Approx(13.0));
    // truncated series converges to it
    CHECK(tree::chi_truncated(2, 0.25, 40) == doctest::Approx(5.0).epsilon(1e-4));

    Susceptibility s = susceptibility_lazy(f2, 40, 0.25, 20000, 23, 2);
    CHECK(std::abs(s.est.value - 5.0) < 3 * s.est.std_error);
    CHECK(s.boundary_fraction < 0.01);

    CayleyBall small = build_ball(f2, 4);
    CHECK(susceptibility(small, 0.0, 100, 1).est.value == 1.0);
}

TEST_CASE("monotonicity of increasing events under common random numbers") {
    Presentation f2 = Presentation::free_group(2);
    double prev = -1;
    for (double p : {0.1, 0.2, 0.3, 0.4, 0.5}) {
        PcResult unused;  // crossing evaluated through the same coupled explorer
        Estimate e = mc_mean(2000, 7, 1, [&](int64_t t) {
            GroupElement g = parse_word(f2, "abab");
            return two_point_lazy(f2, 10, p, g, 1, rng::trial_stream(7, t)).value;
        });
        CHECK(e.value >= prev);  // exact, not 3 sigma: shared uniforms couple the configs
        prev = e.value;
    }
}

TEST_CASE("triangle diagram") {
    // p=0: only h=k=id contributes
    CHECK(tree::nabla_truncated(2, 0.0, 10).value == doctest::Approx(1.0));
    // tail shrinks: radius 20 vs 25 at p=0.2
    double n20 = tree::nabla_truncated(2, 0.2, 20).value;
    double n25 = tree::nabla_truncated(2, 0.2, 25).value;
    CHECK(std::abs(n25 - n20) < 1e-4);
    // tail increments shrink geometrically at criticality
    double i25 = tree::nabla_truncated(2, 1.0 / 3.0, 25).tail_increment;
    double i30 = tree::nabla_truncated(2, 1.0 / 3.0, 30).tail_increment;
    CHECK(i30 < i25);
    CHECK(i30 > 0);

    // Monte Carlo mode agrees with the DP oracle on a small ball.  The DP
    // runs over the same truncation radius.
    CayleyBall ball = build_ball(Presentation::free_group(2), 4);
    Estimate mc = triangle_mc(ball, 0.2, 60000, 31, 2);
    double exact = tree::nabla_truncated(2, 0.2, 4).value;
    CHECK(std::abs(mc.value - exact) < 3 * mc.std_error);
}

TEST_CASE("iota ratio") {
    Presentation f2 = Presentation::free_group(2);
    CayleyBall ball = build_ball(f2, 6);

    // A = {id}: ratio is 1/chi
    Estimate single = iota_ratio(ball, 0.25, {0}, 30000, 3, 2);
    double chi6 = tree::chi_truncated(2, 0.25, 6);
    CHECK(std::abs(single.value - 1.0 / chi6) < 3 * single.std_error);

    // exact oracle: sphere ratio decreases with radius at fixed p
    double prev = 1e9;
    for (int k = 1; k <= 5; ++k) {
        double num = tree::sphere_pair_sum(2, k, 0.3);
        double size = 4.0 * std::pow(3.0, k - 1);
        double r = num / (tree::chi_truncated(2, 0.3, 30) * size);
        CHECK(r < prev);
        prev = r;
    }

    // Monte Carlo matches the exact pair-sum oracle for A = sphere(3)
    std::vector<int> A = ball.sphere(3);
    std::vector<GroupElement> words;
    for (int v : A) words.push_back(ball.vertices[v]);
    Estimate mc = iota_ratio(ball, 0.3, A, 30000, 41, 2);
    double exact = tree::pair_sum(f2, words, 0.3) /
                   (tree::chi_truncated(2, 0.3, 6) * static_cast<double>(A.size()));
    CHECK(std::abs(mc.value - exact) < 3 * mc.std_error);

    CHECK_THROWS_AS(iota_ratio(ball, 0.3, {}, 10, 1), std::invalid_argument);
}

TEST_CASE("cluster-count proxy extremes") {
    CayleyBall ball = build_ball(Presentation::free_group(2), 5);
    CHECK(n_infinity_proxy(ball, 0.0, 200, 1, 2).value == 0.0);
    CHECK(n_infinity_proxy(ball, 1.0, 200, 1, 2).value == 1.0);
    CHECK_THROWS_AS(n_infinity_proxy(ball, 0.5, 10, 1, 5), std::invalid_argument);
}

TEST_CASE("pc bisection") {
    // Galton-Watson oracle for the 4-regular tree: the sphere-connection
    // probability is the depth-R survival s_R with s_1 = 1,
    // s_{d+1} = 1 - (1 - p s_d)^3 and a 4-way root step.  A fixed-threshold
    // bisection recovers pc = 1/(deg-1) = 1/3 exactly when the threshold is
    // the critical survival value itself; any other threshold lands where the
    // exact curve says it must.
    auto survival = [](double p, int radius) {
        double s = 1.0;
        for (int d = 1; d < radius; ++d) s = 1.0 - std::pow(1.0 - p * s, 3.0);
        return 1.0 - std::pow(1.0 - p * s, 4.0);
    };
    int radius = 10;
    double crit_threshold = survival(1.0 / 3.0, radius);
    PcResult f2 = pc_estimate(Presentation::free_group(2), radius, 4000, 11,
                              crit_threshold, 2);
    CHECK(std::abs(f2.est.value - 1.0 / 3.0) < 0.02);
    CHECK_FALSE(f2.sweep.empty());

    // default threshold 0.5: bisect the exact curve for the expected answer
    double lo = 1.0 / 3.0, hi = 1.0;
    for (int it = 0; it < 40; ++it) {
        double mid = 0.5 * (lo + hi);
        (survival(mid, radius) < 0.5 ? lo : hi) = mid;
    }
    PcResult def = pc_estimate(Presentation::free_group(2), radius, 4000, 11, 0.5, 2);
    CHECK(std::abs(def.est.value - 0.5 * (lo + hi)) < 0.02);
    // sweep curve is exactly monotone thanks to common random numbers
    for (size_t i = 1; i < f2.sweep.size(); ++i)
        CHECK(f2.sweep[i][1] >= f2.sweep[i - 1][1]);

    // pc(Z) = 1: the finite-radius estimate drifts upward with radius
    double line6 = pc_estimate(Presentation::lattice(1), 6, 2000, 5).est.value;
    double line24 = pc_estimate(Presentation::lattice(1), 24, 2000, 5).est.value;
    CHECK(line6 < line24);
    CHECK(line24 > 0.8);
}

TEST_CASE("susceptibility derivative inequality on the exact tree model") {
    // chi'/chi^2 == 4/(1+p)^2 >= 9/8 below criticality; checked by central
    // differences of the truncated series
    for (double p : {0.17, 0.20, 0.25, 0.30, 0.33}) {
        double h = 1e-6;
        int radius = 2000;
        double d = (tree::chi_truncated(2, p + h, radius) -
                    tree::chi_truncated(2, p - h, radius)) /
                   (2 * h);
        double chi = tree::chi_truncated(2, p, radius);
        double ratio = d / (chi * chi);
        CHECK(ratio == doctest::Approx(4.0 / ((1 + p) * (1 + p))).epsilon(1e-3));
        CHECK(ratio > 9.0 / 8.0);
    }
}

TEST_CASE("estimate bookkeeping") {
    Estimate e = mc_mean(1, 9, 1, [](int64_t) { return 2.5; });
    CHECK(e.value == 2.5);
    CHECK(e.std_error == 0.0);
    CHECK(e.trials == 1);
    CHECK(e.seed == 9);
    // thread count does not change the result (fixed chunking)
    auto f = [](int64_t t) { return static_cast<double>(t % 7) * 0.25; };
    Estimate a = mc_mean(5000, 3, 1, f), b = mc_mean(5000, 3, 4, f);
    CHECK(a.value == b.value);
    CHECK(a.std_error == b.std_error);
}
