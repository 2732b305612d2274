#include "hyperperc/tiny_graph.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hyperperc/errors.hpp"
#include "hyperperc/percolation.hpp"
#include "hyperperc/rng.hpp"
#include "hyperperc/tree_exact.hpp"
#include "hyperperc/union_find.hpp"

namespace hyperperc::oracle {

namespace {

void check_edges(const TinyGraph& g) {
    if (g.n_edges() > TinyGraph::kMaxEdges)
        throw resource_error("TinyGraph: enumeration cap of 20 edges exceeded");
}

// probability of a configuration with k open edges out of E
double config_prob(double p, int k, int total) {
    return std::pow(p, k) * std::pow(1.0 - p, total - k);
}

// per-configuration truth table of an event predicate
std::vector<char> truth_table(const TinyGraph& g,
                              const std::function<bool(uint32_t)>& ev) {
    check_edges(g);
    std::vector<char> table(size_t{1} << g.n_edges());
    for (uint32_t omega = 0; omega < table.size(); ++omega)
        table[omega] = ev(omega) ? 1 : 0;
    return table;
}

void require_increasing(const TinyGraph& g, const std::vector<char>& table) {
    for (uint32_t omega = 0; omega < table.size(); ++omega) {
        if (!table[omega]) continue;
        for (int e = 0; e < g.n_edges(); ++e)
            if (!table[omega | (uint32_t{1} << e)])
                throw std::invalid_argument("event failed the monotonicity self-test");
    }
}

double table_prob(const std::vector<char>& table, int n_edges, double p) {
    double total = 0;
    for (uint32_t omega = 0; omega < table.size(); ++omega)
        if (table[omega]) total += config_prob(p, std::popcount(omega), n_edges);
    return total;
}

}  // namespace

TinyGraph TinyGraph::make(int n, std::vector<std::pair<int, int>> edges) {
    if (n < 1 || n > kMaxVertices)
        throw resource_error("TinyGraph: vertex count out of range");
    if (static_cast<int>(edges.size()) > kMaxEdges)
        throw resource_error("TinyGraph: edge cap of 20 exceeded");
    UnionFind uf(n);
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n || u == v)
            throw std::invalid_argument("TinyGraph: bad edge");
        uf.unite(u, v);
    }
    for (int v = 1; v < n; ++v)
        if (!uf.same(0, v)) throw std::invalid_argument("TinyGraph: not connected");
    return TinyGraph{n, std::move(edges)};
}

uint64_t TinyGraph::hash() const {
    uint64_t h = 0xcbf29ce484222325ull;
    auto eat = [&](uint64_t x) { h = (h ^ x) * 0x100000001b3ull; };
    eat(static_cast<uint64_t>(n));
    for (auto [u, v] : edges) {
        eat(static_cast<uint64_t>(u));
        eat(static_cast<uint64_t>(v));
    }
    return h;
}

ConnectionEvent ConnectionEvent::connect(int u, int v) {
    ConnectionEvent ev;
    ev.kind = Kind::Connect;
    ev.u = u;
    ev.v = v;
    return ev;
}

ConnectionEvent ConnectionEvent::connect_set(int u, std::vector<int> targets) {
    ConnectionEvent ev;
    ev.kind = Kind::ConnectSet;
    ev.u = u;
    ev.targets = std::move(targets);
    return ev;
}

ConnectionEvent ConnectionEvent::edge_open(int e) {
    ConnectionEvent ev;
    ev.kind = Kind::EdgeOpen;
    ev.v = e;
    return ev;
}

bool ConnectionEvent::holds(const TinyGraph& g, uint32_t omega) const {
    if (kind == Kind::EdgeOpen) return (omega >> v) & 1u;
    UnionFind uf(g.n);
    for (int e = 0; e < g.n_edges(); ++e)
        if ((omega >> e) & 1u) uf.unite(g.edges[size_t(e)].first, g.edges[size_t(e)].second);
    if (kind == Kind::Connect) return uf.same(u, v);
    for (int t : targets)
        if (uf.same(u, t)) return true;
    return false;
}

double exact_prob(const TinyGraph& g, const ConnectionEvent& ev, double p) {
    check_edges(g);
    double total = 0;
    for (uint32_t omega = 0; omega < (uint32_t{1} << g.n_edges()); ++omega)
        if (ev.holds(g, omega)) total += config_prob(p, std::popcount(omega), g.n_edges());
    return total;
}

Rational exact_prob_rational(const TinyGraph& g, const ConnectionEvent& ev, int num,
                             int den) {
    check_edges(g);
    if (num < 0 || den <= 0 || num > den)
        throw std::invalid_argument("exact_prob_rational: need 0 <= num/den <= 1");
    int E = g.n_edges();
    if (E * std::log2(std::max(2, den)) > 120)
        throw resource_error("exact_prob_rational: denominator power overflows");
    // bucket configurations in the event by open-edge count
    std::vector<uint64_t> cnt(size_t(E) + 1, 0);
    for (uint32_t omega = 0; omega < (uint32_t{1} << E); ++omega)
        if (ev.holds(g, omega)) ++cnt[size_t(std::popcount(omega))];
    using u128 = unsigned __int128;
    u128 numerator = 0, denominator = 1;
    for (int i = 0; i < E; ++i) denominator *= u128(den);
    for (int k = 0; k <= E; ++k) {
        u128 term = cnt[size_t(k)];
        for (int i = 0; i < k; ++i) term *= u128(num);
        for (int i = 0; i < E - k; ++i) term *= u128(den - num);
        numerator += term;
    }
    u128 a = numerator, b = denominator;
    while (b != 0) {
        u128 t = a % b;
        a = b;
        b = t;
    }
    if (a == 0) a = 1;
    return Rational{static_cast<uint64_t>(numerator / a),
                    static_cast<uint64_t>(denominator / a)};
}

std::vector<double> cluster_count_distribution(const TinyGraph& g, double p) {
    check_edges(g);
    std::vector<double> dist(size_t(g.n) + 1, 0.0);
    for (uint32_t omega = 0; omega < (uint32_t{1} << g.n_edges()); ++omega) {
        UnionFind uf(g.n);
        int clusters = g.n;
        for (int e = 0; e < g.n_edges(); ++e)
            if ((omega >> e) & 1u)
                if (uf.unite(g.edges[size_t(e)].first, g.edges[size_t(e)].second))
                    --clusters;
        dist[size_t(clusters)] += config_prob(p, std::popcount(omega), g.n_edges());
    }
    return dist;
}

std::vector<CheckReport> check_fkg(const TinyGraph& g,
                                   const std::function<bool(uint32_t)>& A,
                                   const std::function<bool(uint32_t)>& B,
                                   const std::vector<double>& p_grid) {
    std::vector<char> ta = truth_table(g, A);
    std::vector<char> tb = truth_table(g, B);
    require_increasing(g, ta);
    require_increasing(g, tb);
    std::vector<char> both(ta.size());
    for (size_t i = 0; i < ta.size(); ++i) both[i] = ta[i] && tb[i];

    std::vector<CheckReport> reports;
    for (double p : p_grid) {
        CheckReport r;
        r.check = "fkg";
        r.graph_hash = g.hash();
        r.p = p;
        r.lhs = table_prob(both, g.n_edges(), p);
        r.rhs = table_prob(ta, g.n_edges(), p) * table_prob(tb, g.n_edges(), p);
        r.margin = r.lhs - r.rhs;
        r.verdict = r.margin >= -1e-12;
        reports.push_back(std::move(r));
    }
    return reports;
}

std::vector<CheckReport> check_fkg(const TinyGraph& g, const ConnectionEvent& A,
                                   const ConnectionEvent& B,
                                   const std::vector<double>& p_grid) {
    return check_fkg(
        g, [&](uint32_t w) { return A.holds(g, w); },
        [&](uint32_t w) { return B.holds(g, w); }, p_grid);
}

namespace {

// Enumerates simple open u-v paths by DFS; calls fn with the edge mask of
// each path.  Returns false if fn short-circuits with false.
bool for_each_open_path(const TinyGraph& g, uint32_t omega, int from, int to,
                        const std::function<bool(uint32_t)>& fn) {
    std::vector<std::vector<std::pair<int, int>>> adj(size_t(g.n));  // (nbr, edge)
    for (int e = 0; e < g.n_edges(); ++e) {
        if (!((omega >> e) & 1u)) continue;
        auto [a, b] = g.edges[size_t(e)];
        adj[size_t(a)].push_back({b, e});
        adj[size_t(b)].push_back({a, e});
    }
    std::vector<char> on_path(size_t(g.n), 0);
    uint32_t path_mask = 0;
    bool keep_going = true;
    std::function<void(int)> dfs = [&](int v) {
        if (!keep_going) return;
        if (v == to) {
            keep_going = fn(path_mask);
            return;
        }
        on_path[size_t(v)] = 1;
        for (auto [w, e] : adj[size_t(v)]) {
            if (on_path[size_t(w)]) continue;
            path_mask |= uint32_t{1} << e;
            dfs(w);
            path_mask &= ~(uint32_t{1} << e);
            if (!keep_going) break;
        }
        on_path[size_t(v)] = 0;
    };
    dfs(from);
    return keep_going;
}

}  // namespace

bool disjointly_occurs(const TinyGraph& g, const ConnectionEvent& A,
                       const ConnectionEvent& B, uint32_t omega) {
    if (A.kind != ConnectionEvent::Kind::Connect ||
        B.kind != ConnectionEvent::Kind::Connect)
        throw std::invalid_argument("disjoint occurrence: connection events only");
    if (!A.holds(g, omega) || !B.holds(g, omega)) return false;
    // exhaust simple open witnesses for A; for each, B must connect in the
    // residual configuration
    bool found = false;
    for_each_open_path(g, omega, A.u, A.v, [&](uint32_t path_mask) {
        uint32_t residual = omega & ~path_mask;
        if (B.holds(g, residual)) {
            found = true;
            return false;  // stop
        }
        return true;
    });
    return found;
}

double disjoint_occurrence_prob(const TinyGraph& g, const ConnectionEvent& A,
                                const ConnectionEvent& B, double p) {
    check_edges(g);
    double total = 0;
    for (uint32_t omega = 0; omega < (uint32_t{1} << g.n_edges()); ++omega)
        if (disjointly_occurs(g, A, B, omega))
            total += config_prob(p, std::popcount(omega), g.n_edges());
    return total;
}

CheckReport russo_check(const TinyGraph& g, const ConnectionEvent& A, double p,
                        double h) {
    std::vector<char> table = truth_table(g, [&](uint32_t w) { return A.holds(g, w); });
    require_increasing(g, table);
    int E = g.n_edges();

    CheckReport r;
    r.check = "russo";
    r.graph_hash = g.hash();
    r.p = p;
    r.lhs = (table_prob(table, E, p + h) - table_prob(table, E, p - h)) / (2 * h);
    // pivotal sum: edge e toggles the event; its own state does not enter
    double pivotal = 0;
    for (int e = 0; e < E; ++e) {
        uint32_t bit = uint32_t{1} << e;
        for (uint32_t omega = 0; omega < (uint32_t{1} << E); ++omega) {
            if (omega & bit) continue;
            if (table[omega | bit] && !table[omega])
                pivotal += config_prob(p, std::popcount(omega), E - 1);
        }
    }
    r.rhs = pivotal;
    r.margin = r.lhs - r.rhs;
    r.verdict = std::abs(r.margin) <= std::max(1e-12, 100.0 * h * h);
    return r;
}

CheckReport bk_barrier_check(const grp::CayleyBall& ball, const std::vector<int>& A,
                             const std::vector<int>& B, double p, int64_t trials,
                             uint64_t seed) {
    // B must be a vertex cut between id (vertex 0) and A inside the ball
    {
        std::vector<char> in_b(size_t(ball.n_vertices()), 0);
        for (int b : B) in_b[size_t(b)] = 1;
        std::vector<char> seen(size_t(ball.n_vertices()), 0);
        std::vector<int> queue;
        if (!in_b[0]) {
            seen[0] = 1;
            queue.push_back(0);
        }
        for (size_t i = 0; i < queue.size(); ++i)
            for (auto [w, e] : ball.adjacency[size_t(queue[i])])
                if (!seen[size_t(w)] && !in_b[size_t(w)]) {
                    seen[size_t(w)] = 1;
                    queue.push_back(w);
                }
        for (int a : A)
            if (seen[size_t(a)])
                throw std::invalid_argument("bk_barrier_check: B is not a barrier");
    }

    CheckReport r;
    r.check = "bk_barrier";
    r.graph_hash = rng::mix(static_cast<uint64_t>(ball.n_edges()));
    r.p = p;

    if (ball.n_edges() <= TinyGraph::kMaxEdges) {
        // exact: one enumeration accumulates both sides and the worst chi(b)
        int E = ball.n_edges();
        int n = static_cast<int>(ball.n_vertices());
        double lhs = 0;
        std::vector<double> sum_b(B.size(), 0);  // E#C(b) per barrier vertex
        std::vector<double> hit_b(B.size(), 0);  // P(id <-> b)
        for (uint32_t omega = 0; omega < (uint32_t{1} << E); ++omega) {
            UnionFind uf(n);
            for (int e = 0; e < E; ++e)
                if ((omega >> e) & 1u)
                    uf.unite(ball.edges[size_t(e)][0], ball.edges[size_t(e)][1]);
            double w = config_prob(p, std::popcount(omega), E);
            for (int a : A)
                if (uf.same(0, a)) lhs += w;
            for (size_t i = 0; i < B.size(); ++i) {
                sum_b[i] += w * uf.component_size(B[i]);
                if (uf.same(0, B[i])) hit_b[i] += w;
            }
        }
        double chi = *std::max_element(sum_b.begin(), sum_b.end());
        double expected_b = std::accumulate(hit_b.begin(), hit_b.end(), 0.0);
        r.lhs = lhs;
        r.rhs = expected_b * chi;
        r.margin = r.rhs - r.lhs;
        r.verdict = r.margin >= -1e-12;
        return r;
    }

    if (trials <= 0)
        throw std::invalid_argument("bk_barrier_check: ball too large for enumeration; "
                                    "pass a Monte Carlo trial count");
    if (!ball.pres.is_tree())
        throw resource_error("bk_barrier_check: Monte Carlo mode needs the tree "
                             "susceptibility closed form");
    // infinite-tree chi dominates every finite-ball chi(b)
    double chi = tree::chi_closed(ball.pres.factors()[0].rank, p);
    double sx = 0, sxx = 0, sy = 0, syy = 0;
    for (int64_t t = 0; t < trials; ++t) {
        perc::PercSample s =
            perc::sample(ball, p, rng::trial_stream(seed, static_cast<uint64_t>(t)));
        perc::ClusterPartition parts = perc::clusters(ball, s);
        double x = 0, y = 0;
        for (int a : A)
            if (parts.same(0, a)) x += 1;
        for (int b : B)
            if (parts.same(0, b)) y += 1;
        sx += x;
        sxx += x * x;
        sy += y;
        syy += y * y;
    }
    auto n = static_cast<double>(trials);
    double mx = sx / n, my = sy / n;
    double se_x = std::sqrt(std::max(0.0, sxx / n - mx * mx) / n);
    double se_y = std::sqrt(std::max(0.0, syy / n - my * my) / n);
    r.lhs = mx;
    r.rhs = my * chi;
    r.margin = r.rhs - r.lhs;
    r.verdict = r.margin >= -3.0 * (se_x + chi * se_y);
    return r;
}

}  // namespace hyperperc::oracle
