#pragma once

#include <cstdint>
#include <vector>

#include "hyperperc/group_element.hpp"

namespace hyperperc::tree {

// Exact quantities on the Cayley tree of the free group of a given rank
// (2k-regular tree; every two vertices are joined by a unique path, so
// connection probabilities factor into powers of p).

// Two-point function: probability of connection across distance d.
double tau(double p, int64_t dist);

// Truncated susceptibility: sum over ball(radius) of p^norm.
double chi_truncated(int rank, double p, int radius);

// Closed form of the infinite-volume susceptibility (1+p)/(1-(2k-1)p) for
// p below 1/(2k-1); derived from the sphere-count series
//   chi_p = 1 + sum_{n>=1} 2k(2k-1)^(n-1) p^n.
double chi_closed(int rank, double p);

// Critical parameter of the 2k-regular tree: 1/(2k-1).
double pc(int rank);

// Truncated triangle diagram at base id:
//   sum over h,k in ball(radius) of p^(|h| + d(h,k) + |k|),
// computed by grouping ordered pairs by exact common-prefix length.
struct Nabla {
    double value = 0;
    double tail_increment = 0;  // contribution of the outermost radius step
};
Nabla nabla_truncated(int rank, double p, int radius);

// sum_{g,h in sphere(n)} p^(d(g,h)), again by common-prefix counting.
double sphere_pair_sum(int rank, int n, double p);

// sum_{g,h in A} p^(d(g,h)) for an explicit finite set on the tree.
double pair_sum(const grp::Presentation& pres, const std::vector<grp::GroupElement>& A,
                double p);

// Exact iota ratio: pair sum / (chi * |A|), with chi truncated at `radius`.
double iota_exact(const grp::Presentation& pres, const std::vector<grp::GroupElement>& A,
                  double p, int radius);

}  // namespace hyperperc::tree
