#include "hyperperc/tree_exact.hpp"

#include <cmath>
#include <stdexcept>

namespace hyperperc::tree {

namespace {

void check_rank(const grp::Presentation& pres) {
    if (!pres.is_tree())
        throw std::invalid_argument("tree-exact oracle requires a free group presentation");
}

double sphere_size(int rank, int n) {
    if (n == 0) return 1;
    return 2.0 * rank * std::pow(2.0 * rank - 1.0, n - 1);
}

}  // namespace

double tau(double p, int64_t dist) { return std::pow(p, static_cast<double>(dist)); }

double chi_truncated(int rank, double p, int radius) {
    // accumulate sphere_size(n) * p^n multiplicatively so large radii don't
    // overflow the count factor before the p^n damping is applied
    double total = 1;
    double term = 2.0 * rank * p;
    for (int n = 1; n <= radius; ++n) {
        total += term;
        term *= (2.0 * rank - 1.0) * p;
    }
    return total;
}

double chi_closed(int rank, double p) {
    double b = 2.0 * rank - 1.0;
    if (p * b >= 1.0) throw std::invalid_argument("chi_closed: p is at or above criticality");
    return (1.0 + p) / (1.0 - b * p);
}

double pc(int rank) { return 1.0 / (2.0 * rank - 1.0); }

Nabla nabla_truncated(int rank, double p, int radius) {
    // Ordered pairs (h, k) with |h| = m, |k| = n and common prefix exactly j:
    // the prefix has sphere_size(j) choices; continuations pick distinct
    // non-backtracking first letters (2k at the root, 2k-1 deeper).
    // Exponent: |h| + |k| + d(h,k) = 2(m + n - j).
    Nabla out;
    double prev = 0;
    for (int R = std::max(0, radius - 1); R <= radius; ++R) {
        double total = 0;
        for (int j = 0; j <= R; ++j) {
            double prefixes = sphere_size(rank, j);
            double branch = (j == 0) ? 2.0 * rank : 2.0 * rank - 1.0;
            for (int m = j; m <= R; ++m) {
                for (int n = j; n <= R; ++n) {
                    double count;
                    if (m == j && n == j)
                        count = 1;  // h == k == prefix
                    else if (m == j)
                        count = branch * std::pow(2.0 * rank - 1.0, n - j - 1);
                    else if (n == j)
                        count = branch * std::pow(2.0 * rank - 1.0, m - j - 1);
                    else
                        count = branch * (branch - 1) *
                                std::pow(2.0 * rank - 1.0, m - j - 1) *
                                std::pow(2.0 * rank - 1.0, n - j - 1);
                    total += prefixes * count * std::pow(p, 2.0 * (m + n - j));
                }
            }
        }
        prev = out.value;
        out.value = total;
    }
    out.tail_increment = out.value - prev;
    return out;
}

double sphere_pair_sum(int rank, int n, double p) {
    if (n == 0) return 1;
    double total = sphere_size(rank, n);  // diagonal pairs, distance 0
    for (int j = 0; j < n; ++j) {
        double prefixes = sphere_size(rank, j);
        double branch = (j == 0) ? 2.0 * rank : 2.0 * rank - 1.0;
        double count = prefixes * branch * (branch - 1) *
                       std::pow(2.0 * rank - 1.0, n - j - 1) *
                       std::pow(2.0 * rank - 1.0, n - j - 1);
        total += count * std::pow(p, 2.0 * (n - j));
    }
    return total;
}

double pair_sum(const grp::Presentation& pres, const std::vector<grp::GroupElement>& A,
                double p) {
    check_rank(pres);
    double total = 0;
    for (const auto& g : A)
        for (const auto& h : A)
            total += tau(p, grp::word_distance(pres, g, h));
    return total;
}

double iota_exact(const grp::Presentation& pres, const std::vector<grp::GroupElement>& A,
                  double p, int radius) {
    if (A.empty()) throw std::invalid_argument("iota_exact: A must be nonempty");
    check_rank(pres);
    int rank = pres.factors()[0].rank;
    return pair_sum(pres, A, p) /
           (chi_truncated(rank, p, radius) * static_cast<double>(A.size()));
}

}  // namespace hyperperc::tree
