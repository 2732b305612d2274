#include "hyperperc/metric.hpp"

#include <algorithm>
#include <stdexcept>

#include "hyperperc/rng.hpp"

namespace hyperperc::geom {

std::vector<int32_t> bfs_distances(const grp::CayleyBall& ball, int src) {
    std::vector<int32_t> dist(static_cast<size_t>(ball.n_vertices()), -1);
    std::vector<int> queue{src};
    dist[static_cast<size_t>(src)] = 0;
    for (size_t i = 0; i < queue.size(); ++i) {
        int v = queue[i];
        for (auto [w, e] : ball.adjacency[static_cast<size_t>(v)])
            if (dist[static_cast<size_t>(w)] < 0) {
                dist[static_cast<size_t>(w)] = dist[static_cast<size_t>(v)] + 1;
                queue.push_back(w);
            }
    }
    return dist;
}

FiniteMetric FiniteMetric::from_ball(const grp::CayleyBall& ball) {
    FiniteMetric m;
    m.dist.reserve(static_cast<size_t>(ball.n_vertices()));
    for (int v = 0; v < ball.n_vertices(); ++v) m.dist.push_back(bfs_distances(ball, v));
    return m;
}

FiniteMetric FiniteMetric::from_matrix(std::vector<std::vector<int32_t>> mat) {
    size_t n = mat.size();
    for (size_t i = 0; i < n; ++i) {
        if (mat[i].size() != n || mat[i][i] != 0)
            throw std::invalid_argument("FiniteMetric: bad matrix shape or diagonal");
        for (size_t j = 0; j < n; ++j) {
            if (mat[i][j] != mat[j][i] || mat[i][j] < 0)
                throw std::invalid_argument("FiniteMetric: asymmetric or negative");
            for (size_t k = 0; k < n; ++k)
                if (mat[i][j] > mat[i][k] + mat[k][j])
                    throw std::invalid_argument("FiniteMetric: triangle inequality fails");
        }
    }
    FiniteMetric m;
    m.dist = std::move(mat);
    return m;
}

double gromov_product(const FiniteMetric& m, int x, int y, int z) {
    const auto& dx = m.dist[static_cast<size_t>(x)];
    return 0.5 * (dx[static_cast<size_t>(y)] + dx[static_cast<size_t>(z)] -
                  m.dist[static_cast<size_t>(y)][static_cast<size_t>(z)]);
}

namespace {

// worst deficit (in doubled units, to stay integral) over all triples for one
// base point, given that base's doubled-product matrix
int32_t base_deficit(const std::vector<std::vector<int32_t>>& prod) {
    int n = static_cast<int>(prod.size());
    int32_t worst = 0;
    for (int x = 0; x < n; ++x) {
        const auto& px = prod[static_cast<size_t>(x)];
        for (int y = 0; y < n; ++y) {
            const auto& py = prod[static_cast<size_t>(y)];
            int32_t best = 0;
            for (int z = 0; z < n; ++z) best = std::max(best, std::min(px[z], py[z]));
            worst = std::max(worst, best - px[y]);
        }
    }
    return worst;
}

std::vector<std::vector<int32_t>> doubled_products(const FiniteMetric& m, int w) {
    int n = m.n();
    const auto& dw = m.dist[static_cast<size_t>(w)];
    std::vector<std::vector<int32_t>> prod(static_cast<size_t>(n),
                                           std::vector<int32_t>(static_cast<size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            prod[static_cast<size_t>(x)][static_cast<size_t>(y)] =
                dw[static_cast<size_t>(x)] + dw[static_cast<size_t>(y)] -
                m.dist[static_cast<size_t>(x)][static_cast<size_t>(y)];
    return prod;
}

}  // namespace

double estimate_delta(const FiniteMetric& m, int64_t sample_size, uint64_t seed) {
    int n = m.n();
    if (n < 4) throw std::invalid_argument("estimate_delta: need at least 4 points");

    if (sample_size > 0) {
        double worst = 0;
        uint64_t c = 0;
        auto pick = [&] { return static_cast<int>(rng::uniform(seed, c++) * n); };
        for (int64_t t = 0; t < sample_size; ++t) {
            int w = pick(), x = pick(), y = pick(), z = pick();
            double deficit = std::min(gromov_product(m, w, x, z), gromov_product(m, w, z, y)) -
                             gromov_product(m, w, x, y);
            worst = std::max(worst, deficit);
        }
        return worst / 2.0;
    }

    if (n <= 120) {
        int32_t worst = 0;
        for (int w = 0; w < n; ++w)
            worst = std::max(worst, base_deficit(doubled_products(m, w)));
        return static_cast<double>(worst) / 4.0;  // halve doubled units, then /2
    }
    // large metric: exhaustive triples against base 0 only; the four-point
    // deficit at an arbitrary base is at most twice the fixed-base one, so
    // this is an upper bound for delta and exact when it vanishes
    return static_cast<double>(base_deficit(doubled_products(m, 0))) / 2.0;
}

Path geodesic(const grp::CayleyBall& ball, int x, int y) {
    std::vector<int32_t> dist = bfs_distances(ball, x);
    if (dist[static_cast<size_t>(y)] < 0)
        throw std::logic_error("geodesic: endpoints not connected");
    Path rev{y};
    int v = y;
    while (v != x) {
        int next = -1;
        for (auto [w, e] : ball.adjacency[static_cast<size_t>(v)])
            if (dist[static_cast<size_t>(w)] == dist[static_cast<size_t>(v)] - 1 &&
                (next < 0 || w < next))
                next = w;
        rev.push_back(next);
        v = next;
    }
    std::reverse(rev.begin(), rev.end());
    return rev;
}

std::vector<int> project(const grp::CayleyBall& ball, int x, const Path& geo) {
    std::vector<int32_t> dist = bfs_distances(ball, x);
    int32_t best = dist[static_cast<size_t>(geo.front())];
    for (int v : geo) best = std::min(best, dist[static_cast<size_t>(v)]);
    std::vector<int> out;
    for (int v : geo)
        if (dist[static_cast<size_t>(v)] == best) out.push_back(v);
    return out;
}

double proj_diameter(const grp::CayleyBall& ball, const Path& geo,
                     const std::vector<int>& points) {
    // projections live on the geodesic, where distance is the index gap
    int lo = static_cast<int>(geo.size()), hi = -1;
    for (int x : points)
        for (int v : project(ball, x, geo)) {
            auto it = std::find(geo.begin(), geo.end(), v);
            int pos = static_cast<int>(it - geo.begin());
            lo = std::min(lo, pos);
            hi = std::max(hi, pos);
        }
    return hi < lo ? 0.0 : static_cast<double>(hi - lo);
}

HalfspaceSpec HalfspaceSpec::gromov(int x, int y, double D) {
    return HalfspaceSpec{Kind::GromovHalf, x, y, D};
}

HalfspaceSpec HalfspaceSpec::metric(int x, int y) {
    return HalfspaceSpec{Kind::MetricHalf, x, y, 0};
}

std::vector<int> halfspace_members(const grp::CayleyBall& ball,
                                   const HalfspaceSpec& spec) {
    std::vector<int32_t> dx = bfs_distances(ball, spec.x);
    std::vector<int32_t> dy = bfs_distances(ball, spec.y);
    double dxy = dx[static_cast<size_t>(spec.y)];
    std::vector<int> out;
    for (int z = 0; z < ball.n_vertices(); ++z) {
        bool in;
        if (spec.kind == HalfspaceSpec::Kind::GromovHalf)
            in = 0.5 * (dx[static_cast<size_t>(z)] + dxy - dy[static_cast<size_t>(z)]) >=
                 spec.D;
        else
            in = dx[static_cast<size_t>(z)] < dy[static_cast<size_t>(z)];
        if (in) out.push_back(z);
    }
    return out;
}

}  // namespace hyperperc::geom
