#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "hyperperc/estimators.hpp"
#include "hyperperc/group_element.hpp"

namespace hyperperc::barrier {

// Barrier families between id and a distant halfspace, specialized to free
// groups.  Dictionary used throughout: the distinguished axis is the line
// <a> spanned by the first generator, its translates are the coset lines
// g<a>, and the projection distance d_gamma(u, v) along such a line is the
// exact overlap of the u-v geodesic with the line (an a-run length).  All
// membership predicates are word-wise, so sets never have to be materialized
// unless a member list is explicitly requested.

// ---- families ---------------------------------------------------------------

// Band layout for projection-defined levels, in multiples of k0: level i
// collects elements whose Gromov product with y lies in
//   I_i = [spacing*i - half_width, spacing*i + half_width] (times k0),
// subject to the per-line cap: every coset line gamma with
// d_gamma(id, g) > g_cap*k0 must satisfy d_gamma(id, y) >= y_clear*k0.
struct BandConfig {
    double k0 = 1;
    double spacing = 100;
    double half_width = 25;
    double y_clear = 5;
    double g_cap = 100;
};

struct BarrierFamily {
    std::vector<std::vector<grp::GroupElement>> levels;  // B_1 ... B_m
    grp::GroupElement target_dir;  // targets = words extending this direction
    int ball_radius = 0;
    int step = 0;      // vertical construction only
    BandConfig band;   // projection construction only
    std::string kind;  // "vertical" | "projection"
};

// B_i = {a^(step*i) b^k : |k| <= radius - step*i} for i = 1..count, truncated
// to the radius; target direction a^(step*count).  The truncation is safe:
// any path inside the ball meeting the untruncated set meets the truncation.
// Requires a free group of rank >= 2 and step*count < radius.
BarrierFamily vertical_barriers(const grp::Presentation& pres, int radius, int step,
                                int count);

// Exact projection span d_gamma(u, v) for the line gamma = rep * <a>.
int64_t coset_projection_span(const grp::Presentation& pres, const grp::GroupElement& rep,
                              const grp::GroupElement& u, const grp::GroupElement& v);

// Filters an explicit candidate list into banded levels against target y.
// The level count is the largest i with (spacing*i + half_width)*k0 <= d(id,y)
// (floored, so a short y yields an empty family).
BarrierFamily projection_barriers(const grp::Presentation& pres,
                                  const std::vector<grp::GroupElement>& candidates,
                                  const grp::GroupElement& y, const BandConfig& band = {});

// ---- barrier check ----------------------------------------------------------

using MemberFn = std::function<bool(const grp::GroupElement&)>;

struct BarrierCheck {
    bool barrier = true;
    std::vector<grp::GroupElement> path;  // an avoiding path when barrier == false
    std::vector<std::string> warnings;    // vacuous-truth endpoints
};

// Does every path from source to a target inside ball(radius) meet B?
// On a tree any walk contains the unique geodesic, so the check reduces to
// scanning the geodesic vertex chain of each target; this decides arbitrarily
// large radii.  Non-tree presentations fall back to BFS on the materialized
// ball minus B.  A source or target lying in B itself is flagged as a
// vacuous truth (the path meets B at an endpoint) and counted as blocked.
BarrierCheck is_barrier(const grp::Presentation& pres, const MemberFn& b_member,
                        const grp::GroupElement& source,
                        const std::vector<grp::GroupElement>& targets, int radius);

BarrierCheck is_barrier(const grp::Presentation& pres,
                        const std::vector<grp::GroupElement>& B,
                        const grp::GroupElement& source,
                        const std::vector<grp::GroupElement>& targets, int radius);

// ---- rough branching --------------------------------------------------------

struct BranchingCertificate {
    bool covered = true;    // B inside the r-neighborhood of B'
    bool injective = true;  // no equal products of distinct equal-length tuples
    int r = 0;
    int k_max = 0;
    int64_t products_checked = 0;
    std::vector<grp::GroupElement> uncovered;  // offending members of B
    // first collision found: two distinct tuples with the same product
    std::vector<grp::GroupElement> collision_lhs, collision_rhs;
    grp::GroupElement collision_product;

    bool ok() const { return covered && injective; }
};

// Checks that B' r-covers B and that products of up to k_max factors from B'
// determine their factor tuple (tuples of equal length compared).  Enumerates
// every tuple, so sum_k |B'|^k is capped; beyond the cap a resource error is
// thrown rather than silently subsampling.
BranchingCertificate check_roughly_branching(const grp::Presentation& pres,
                                             const std::vector<grp::GroupElement>& B,
                                             const std::vector<grp::GroupElement>& Bprime,
                                             int r, int k_max);

// ---- no-fellow-traveling sets ----------------------------------------------

// g avoids every coset line for length D: no a-run of length >= D in its
// reduced word.
bool nf_contains(const grp::Presentation& pres, const grp::GroupElement& g, int D);

// Member list of {g : nf_contains(g, D), min_norm <= |g| <= radius} in
// canonical order.  The enumeration prunes at forbidden runs but is still
// exponential; it is capped like ball materialization.
std::vector<grp::GroupElement> nf_set(const grp::Presentation& pres, int radius, int D,
                                      int min_norm = 0);

// Elements far from id whose geodesic never tracks a nearby coset line for
// long: |g| >= E and no a-run of length >= 250*D starting at prefix position
// <= Eprime + 250*D.  The prefix window over-approximates "some h of norm
// <= Eprime reaches the run", which only shrinks the set; the window used is
// recorded in the log.
bool g_de_contains(const grp::Presentation& pres, const grp::GroupElement& g, int D, int E,
                   int Eprime);

struct GdeSet {
    std::vector<grp::GroupElement> members;
    int window = 0;  // prefix-position cutoff actually applied
    std::vector<std::string> log;
};

GdeSet g_de_set(const grp::Presentation& pres, int radius, int D, int E, int Eprime);

// ---- capacity ---------------------------------------------------------------

struct Capacity {
    double value = 0;
    bool within_unit = true;  // value <= 1, the bound forced by rough branching
};

// Exact sum of connection probabilities sum_{g in B} p^|g| on the tree.
// Requires p <= 1/(2 rank - 1).
Capacity branching_capacity(const grp::Presentation& pres,
                            const std::vector<grp::GroupElement>& B, double p);

// Monte Carlo mean of #(C(id) intersect {words extending a^prefix_len})
// inside ball(radius), by lazy cluster exploration on the tree (free groups
// only).  Used to check the nested-barrier capacity bound against chi_p.
perc::Estimate halfspace_cluster_mc(const grp::Presentation& pres, int radius,
                                    int prefix_len, double p, int64_t trials,
                                    uint64_t seed, int threads = 1);

}  // namespace hyperperc::barrier
