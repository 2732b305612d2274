#pragma once

#include <cstdint>
#include <vector>

#include "hyperperc/cayley_ball.hpp"

namespace hyperperc::geom {

// Discrete hyperbolic-geometry primitives: Gromov products, four-point delta,
// geodesics, nearest-point projections and halfspaces on Cayley balls.

// Explicit finite metric: full integer distance matrix.
struct FiniteMetric {
    std::vector<std::vector<int32_t>> dist;

    int n() const { return static_cast<int>(dist.size()); }

    // all-pairs BFS over the ball
    static FiniteMetric from_ball(const grp::CayleyBall& ball);
    // validates symmetry, zero diagonal and the triangle inequality
    static FiniteMetric from_matrix(std::vector<std::vector<int32_t>> m);
};

// BFS distances from one source vertex.
std::vector<int32_t> bfs_distances(const grp::CayleyBall& ball, int src);

// (y|z)_x = (d(x,y) + d(x,z) - d(y,z)) / 2
double gromov_product(const FiniteMetric& m, int x, int y, int z);

// Four-point hyperbolicity constant: half the worst deficit of
//   (x|y)_w >= min((x|z)_w, (z|y)_w)
// over quadruples.  sample_size > 0 draws random quadruples (lower bound);
// sample_size == 0 is exhaustive for small metrics, and for large ones checks
// every triple against the fixed base point 0 -- in that regime the returned
// value is an upper bound on delta (base-point doubling), and 0 is exact.
double estimate_delta(const FiniteMetric& m, int64_t sample_size, uint64_t seed);

// Geodesic as a vertex path from x to y; ties broken by always stepping to
// the lowest-index neighbor that decreases the BFS distance to x.
using Path = std::vector<int>;
Path geodesic(const grp::CayleyBall& ball, int x, int y);

// All path vertices at minimal distance from x, in path order.
std::vector<int> project(const grp::CayleyBall& ball, int x, const Path& geo);

// diam of the union of projections of the given points onto the geodesic
double proj_diameter(const grp::CayleyBall& ball, const Path& geo,
                     const std::vector<int>& points);

struct HalfspaceSpec {
    enum class Kind { GromovHalf, MetricHalf };
    Kind kind = Kind::GromovHalf;
    int x = 0;  // root
    int y = 0;  // direction
    double D = 0;

    // {z : (z|y)_x >= D}
    static HalfspaceSpec gromov(int x, int y, double D);
    // {z : d(z,x) < d(z,y)}
    static HalfspaceSpec metric(int x, int y);
};

std::vector<int> halfspace_members(const grp::CayleyBall& ball,
                                   const HalfspaceSpec& spec);

}  // namespace hyperperc::geom
