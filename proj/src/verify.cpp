#include "hyperperc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>

#include "hyperperc/barrier.hpp"
#include "hyperperc/cayley_ball.hpp"
#include "hyperperc/estimators.hpp"
#include "hyperperc/free_word.hpp"
#include "hyperperc/magic.hpp"
#include "hyperperc/metric.hpp"
#include "hyperperc/rng.hpp"
#include "hyperperc/tiny_graph.hpp"
#include "hyperperc/tree_exact.hpp"

namespace hyperperc::verify {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(6) << v;
    return os.str();
}

struct Detail {
    std::ostringstream os;
    template <class T>
    Detail& operator<<(const T& t) {
        os << t;
        return *this;
    }
};

grp::Presentation f2() { return grp::Presentation::parse("free:2"); }

// seeded small connected graph: random spanning tree plus a couple of chords
oracle::TinyGraph random_graph(uint64_t seed, int instance) {
    uint64_t s = rng::mix(seed ^ (0xABCDull + static_cast<uint64_t>(instance)));
    uint64_t ctr = 0;
    auto draw = [&](uint64_t mod) { return rng::value(s, ctr++) % mod; };
    int n = 5 + static_cast<int>(draw(3));  // 5..7 vertices
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v)
        edges.emplace_back(static_cast<int>(draw(static_cast<uint64_t>(v))), v);
    auto have = [&](int u, int v) {
        for (auto [a, b] : edges)
            if ((a == u && b == v) || (a == v && b == u)) return true;
        return false;
    };
    int extra = 0;
    while (extra < 2 && edges.size() < 12) {
        int u = static_cast<int>(draw(static_cast<uint64_t>(n)));
        int v = static_cast<int>(draw(static_cast<uint64_t>(n)));
        if (u == v || have(u, v)) continue;
        edges.emplace_back(u, v);
        ++extra;
    }
    return oracle::TinyGraph::make(n, std::move(edges));
}

// ---- individual suites ------------------------------------------------------

SuiteResult s_tree_two_point(uint64_t seed, const std::string&) {
    auto pres = f2();
    grp::GroupElement g = grp::parse_word(pres, "a^3");
    double p = 0.25, exact = tree::tau(p, 3);
    perc::Estimate est = perc::two_point_lazy(pres, 12, p, g, 3000, seed);
    double dev = std::fabs(est.value - exact);
    bool pass = dev <= 3 * est.std_error + 1e-9;
    Detail d;
    d << "tau(a^3) p=" << p << " est=" << fmt(est.value) << " exact=" << fmt(exact)
      << " dev=" << fmt(dev) << " 3se=" << fmt(3 * est.std_error);
    return {"tree-two-point", pass, d.os.str()};
}

SuiteResult s_tree_susceptibility(uint64_t seed, const std::string&) {
    auto pres = f2();
    double p = 0.25;
    double closed = tree::chi_closed(2, p);
    double trunc_gap = closed - tree::chi_truncated(2, p, 25);
    perc::Susceptibility sus = perc::susceptibility_lazy(pres, 25, p, 3000, seed);
    double dev = std::fabs(sus.est.value - closed);
    bool pass = dev <= 3 * sus.est.std_error + trunc_gap + 1e-9;
    Detail d;
    d << "chi p=" << p << " est=" << fmt(sus.est.value) << " closed=" << fmt(closed)
      << " dev=" << fmt(dev) << " allowance=" << fmt(3 * sus.est.std_error + trunc_gap);
    return {"tree-susceptibility", pass, d.os.str()};
}

SuiteResult s_coupling_monotone(uint64_t seed, const std::string&) {
    auto pres = f2();
    perc::PcResult pc = perc::pc_estimate(pres, 9, 500, seed, 0.5);
    bool monotone = true;
    for (size_t i = 1; i < pc.sweep.size(); ++i)
        if (pc.sweep[i][1] + 1e-12 < pc.sweep[i - 1][1]) monotone = false;
    bool pass = monotone && pc.est.value > 0 && pc.est.value < 1;
    Detail d;
    d << "crossing curve points=" << pc.sweep.size()
      << " monotone=" << (monotone ? "yes" : "no") << " crossing_p=" << fmt(pc.est.value);
    return {"coupling-monotonicity", pass, d.os.str()};
}

SuiteResult s_fkg(uint64_t seed, const std::string&) {
    double worst = 1e300;
    int instances = 0;
    for (int i = 0; i < 8; ++i) {
        oracle::TinyGraph g = random_graph(seed, i);
        auto A = oracle::ConnectionEvent::connect(0, g.n - 1);
        auto B = oracle::ConnectionEvent::edge_open(0);
        for (const auto& rep : oracle::check_fkg(g, A, B, {0.2, 0.5, 0.8})) {
            worst = std::min(worst, rep.margin);
            ++instances;
        }
    }
    bool pass = worst >= -1e-12;
    Detail d;
    d << "checks=" << instances << " worst margin=" << fmt(worst) << " (>=0 required)";
    return {"fkg-positive-association", pass, d.os.str()};
}

SuiteResult s_bk(uint64_t seed, const std::string&) {
    double worst = -1e300;
    int instances = 0;
    for (int i = 0; i < 8; ++i) {
        oracle::TinyGraph g = random_graph(seed, 100 + i);
        int mid = g.n / 2;
        auto A = oracle::ConnectionEvent::connect(0, mid);
        auto B = oracle::ConnectionEvent::connect(mid, g.n - 1);
        for (double p : {0.2, 0.5, 0.8}) {
            double lhs = oracle::disjoint_occurrence_prob(g, A, B, p);
            double rhs = oracle::exact_prob(g, A, p) * oracle::exact_prob(g, B, p);
            worst = std::max(worst, lhs - rhs);
            ++instances;
        }
    }
    bool pass = worst <= 1e-12;
    Detail d;
    d << "checks=" << instances << " worst P(AoB)-P(A)P(B)=" << fmt(worst)
      << " (<=0 required)";
    return {"bk-disjoint-occurrence", pass, d.os.str()};
}

SuiteResult s_russo(uint64_t, const std::string&) {
    // asymmetric graph so the third derivative of p -> P_p(A) is nonzero
    oracle::TinyGraph g =
        oracle::TinyGraph::make(4, {{0, 1}, {1, 2}, {2, 3}, {0, 2}});
    auto A = oracle::ConnectionEvent::connect(0, 3);
    double p = 0.37;
    double r1 = std::fabs(oracle::russo_check(g, A, p, 0.1).margin);
    double r2 = std::fabs(oracle::russo_check(g, A, p, 0.05).margin);
    // central-difference residual is O(h^2): halving h should quarter it
    bool pass = r1 > 1e-12 && r2 <= r1 / 2 + 1e-10;
    Detail d;
    d << "residual(h=0.1)=" << fmt(r1) << " residual(h=0.05)=" << fmt(r2)
      << " ratio=" << fmt(r1 > 0 ? r1 / r2 : 0) << " (~4 expected)";
    return {"russo-derivative-order", pass, d.os.str()};
}

SuiteResult s_delta_tree(uint64_t, const std::string&) {
    auto ball = grp::build_ball(f2(), 3);
    auto m = geom::FiniteMetric::from_ball(ball);
    double delta = geom::estimate_delta(m, 0, 1);
    bool pass = delta == 0;
    Detail d;
    d << "exhaustive four-point delta on tree ball(3)=" << fmt(delta) << " (0 required)";
    return {"delta-tree-zero", pass, d.os.str()};
}

SuiteResult s_delta_lattice(uint64_t, const std::string&) {
    auto pres = grp::Presentation::parse("lattice:2");
    auto m2 = geom::FiniteMetric::from_ball(grp::build_ball(pres, 2));
    auto m4 = geom::FiniteMetric::from_ball(grp::build_ball(pres, 4));
    double d2 = geom::estimate_delta(m2, 0, 1);
    double d4 = geom::estimate_delta(m4, 0, 1);
    bool pass = d4 >= d2 && d4 >= 1;
    Detail d;
    d << "grid delta ball(2)=" << fmt(d2) << " ball(4)=" << fmt(d4)
      << " (growing, flat geometry)";
    return {"delta-lattice-growth", pass, d.os.str()};
}

SuiteResult s_projection(uint64_t seed, const std::string&) {
    auto ball = grp::build_ball(f2(), 5);
    auto m = geom::FiniteMetric::from_ball(ball);
    int n = ball.n_vertices();
    uint64_t s = rng::mix(seed ^ 0x9u);
    int checked = 0, bad = 0;
    for (int i = 0; i < 200; ++i) {
        int y = static_cast<int>(rng::value(s, 2 * static_cast<uint64_t>(i)) %
                                 static_cast<uint64_t>(n));
        int z = static_cast<int>(rng::value(s, 2 * static_cast<uint64_t>(i) + 1) %
                                 static_cast<uint64_t>(n));
        geom::Path geo = geom::geodesic(ball, y, z);
        int dist_to_geo = m.n();
        for (int v : geo) dist_to_geo = std::min<int>(dist_to_geo, m.dist[0][static_cast<size_t>(v)]);
        // on a tree: d(x, [y,z]) == (y|z)_x with zero slack
        if (static_cast<double>(dist_to_geo) != geom::gromov_product(m, 0, y, z)) ++bad;
        ++checked;
    }
    bool pass = bad == 0;
    Detail d;
    d << "random geodesics=" << checked << " gromov-product mismatches=" << bad;
    return {"projection-zero-slack", pass, d.os.str()};
}

SuiteResult s_magic(uint64_t, const std::string&) {
    auto pres = f2();
    auto A = word::ball_elements(pres, 3);
    magic::ClassifyOptions opt;
    opt.n_override = 2;
    magic::Classification c = magic::magic_classify(pres, 10, A, 1, 0.1, opt);
    bool partition = c.accepted.size() + c.problematic.size() == A.size();
    // good records witness problematic elements: their residual sets must
    // meet the threshold (disjointness is enforced inside the classifier)
    bool residuals_ok = true;
    for (const auto& gr : c.good)
        if (gr.residual.size() < c.n_threshold) residuals_ok = false;
    double frac = static_cast<double>(c.accepted.size()) / static_cast<double>(A.size());
    bool pass = partition && residuals_ok && frac >= c.certified_fraction;
    Detail d;
    d << "|A|=" << A.size() << " accepted=" << c.accepted.size()
      << " problematic=" << c.problematic.size() << " certified>=" << fmt(c.certified_fraction);
    return {"magic-classifier-invariants", pass, d.os.str()};
}

SuiteResult s_separated(uint64_t, const std::string&) {
    auto pres = f2();
    auto A = word::ball_elements(pres, 4);
    auto B = magic::separated_subset(pres, A, 2);
    bool spread = true, covering = true;
    for (size_t i = 0; i < B.size() && spread; ++i)
        for (size_t j = i + 1; j < B.size(); ++j)
            if (grp::word_distance(pres, B[i], B[j]) < 2) { spread = false; break; }
    for (const auto& g : A) {
        bool near = false;
        for (const auto& b : B)
            if (grp::word_distance(pres, g, b) <= 2) { near = true; break; }
        if (!near) { covering = false; break; }
    }
    bool pass = spread && covering && !B.empty();
    Detail d;
    d << "|A|=" << A.size() << " |subset|=" << B.size()
      << " pairwise>=2:" << (spread ? "yes" : "no")
      << " covers<=2:" << (covering ? "yes" : "no");
    return {"separated-subset", pass, d.os.str()};
}

SuiteResult s_barrier_vertical(uint64_t, const std::string&) {
    auto pres = f2();
    barrier::BarrierFamily fam = barrier::vertical_barriers(pres, 30, 5, 4);
    std::set<std::string> seen;
    bool disjoint = true;
    for (const auto& level : fam.levels)
        for (const auto& g : level)
            if (!seen.insert(grp::letter_key(pres, g)).second) disjoint = false;
    std::vector<grp::GroupElement> targets = {
        grp::parse_word(pres, "a^25"), grp::parse_word(pres, "a^25 b^5"),
        grp::parse_word(pres, "a^30"), grp::parse_word(pres, "a^25 b^-3 a^2")};
    int blocking = 0;
    for (const auto& level : fam.levels) {
        barrier::BarrierCheck chk =
            barrier::is_barrier(pres, level, grp::identity(pres), targets, 30);
        if (chk.barrier && chk.warnings.empty()) ++blocking;
    }
    bool pass = disjoint && blocking == static_cast<int>(fam.levels.size());
    Detail d;
    d << "levels=" << fam.levels.size() << " disjoint=" << (disjoint ? "yes" : "no")
      << " blocking=" << blocking << "/" << fam.levels.size();
    return {"barrier-vertical-family", pass, d.os.str()};
}

SuiteResult s_branching(uint64_t, const std::string& fault) {
    auto pres = f2();
    std::vector<grp::GroupElement> Bp = {grp::parse_word(pres, "a"),
                                         grp::parse_word(pres, "b")};
    if (fault == "branching-collision")
        Bp = {grp::parse_word(pres, "a"), grp::parse_word(pres, "a^2")};
    auto B = word::sphere_elements(pres, 1);
    // r = 2: the inverse letters sit at distance 2 from {a, b}
    barrier::BranchingCertificate cert =
        barrier::check_roughly_branching(pres, B, Bp, 2, 3);
    bool pass = cert.ok();
    Detail d;
    d << "|B'|=" << Bp.size() << " products=" << cert.products_checked
      << " covered=" << (cert.covered ? "yes" : "no")
      << " injective=" << (cert.injective ? "yes" : "no");
    if (!cert.injective)
        d << " collision product=" << grp::to_string(pres, cert.collision_product);
    return {"branching-injective", pass, d.os.str()};
}

SuiteResult s_capacity(uint64_t, const std::string& fault) {
    auto pres = f2();
    std::vector<grp::GroupElement> level;
    if (fault == "capacity-overflow") {
        level = word::ball_elements(pres, 1);
    } else {
        for (int k = -20; k <= 20; ++k)
            level.push_back(grp::parse_word(pres, "a^10 b^" + std::to_string(k)));
    }
    double p = 1.0 / 3.0;
    barrier::Capacity cap = barrier::branching_capacity(pres, level, p);
    double expected = std::pow(p, 10) * (1 + 2 * p / (1 - p));
    bool pass;
    Detail d;
    if (fault == "capacity-overflow") {
        pass = cap.within_unit;  // ball(1) capacity is 1 + 4/3: designed to fail
        d << "capacity=" << fmt(cap.value)
          << " within_unit=" << (cap.within_unit ? "yes" : "no");
    } else {
        pass = cap.within_unit && std::fabs(cap.value - expected) <= 1e-12;
        d << "level capacity=" << fmt(cap.value) << " closed form=" << fmt(expected)
          << " |diff|<=1e-12:" << (std::fabs(cap.value - expected) <= 1e-12 ? "yes" : "no");
    }
    return {"capacity-unit-bound", pass, d.os.str()};
}

using SuiteFn = SuiteResult (*)(uint64_t, const std::string&);

struct SuiteEntry {
    const char* name;
    SuiteFn fn;
};

const SuiteEntry kSuites[] = {
    {"tree-two-point", s_tree_two_point},
    {"tree-susceptibility", s_tree_susceptibility},
    {"coupling-monotonicity", s_coupling_monotone},
    {"fkg-positive-association", s_fkg},
    {"bk-disjoint-occurrence", s_bk},
    {"russo-derivative-order", s_russo},
    {"delta-tree-zero", s_delta_tree},
    {"delta-lattice-growth", s_delta_lattice},
    {"projection-zero-slack", s_projection},
    {"magic-classifier-invariants", s_magic},
    {"separated-subset", s_separated},
    {"barrier-vertical-family", s_barrier_vertical},
    {"branching-injective", s_branching},
    {"capacity-unit-bound", s_capacity},
};

}  // namespace

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& e : kSuites) v.emplace_back(e.name);
        return v;
    }();
    return names;
}

SuiteResult run_suite(const std::string& name, uint64_t seed, const std::string& fault) {
    for (const auto& e : kSuites)
        if (name == e.name) return e.fn(seed, fault);
    throw std::invalid_argument("verify: unknown suite '" + name + "'");
}

std::vector<SuiteResult> run_all(uint64_t seed, const std::string& fault) {
    std::vector<SuiteResult> out;
    for (const auto& e : kSuites) out.push_back(e.fn(seed, fault));
    return out;
}

std::string summary(const std::vector<SuiteResult>& results) {
    std::ostringstream os;
    size_t passed = 0;
    for (const auto& r : results) {
        os << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
        if (r.pass) ++passed;
    }
    os << passed << "/" << results.size() << " suites passed\n";
    return os.str();
}

}  // namespace hyperperc::verify
