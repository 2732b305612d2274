#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "hyperperc/cayley_ball.hpp"
#include "hyperperc/percolation.hpp"

namespace hyperperc::perc {

// Monte Carlo point estimate.  std_error = sample standard deviation / sqrt(trials).
struct Estimate {
    double value = 0;
    double std_error = 0;
    int64_t trials = 0;
    uint64_t seed = 0;
};

// Runs fn(trial) for trial in [0, trials) and aggregates mean/stderr.
// Work is split into fixed 1024-trial chunks combined in chunk order, so the
// result is independent of the thread count.
Estimate mc_mean(int64_t trials, uint64_t seed, int threads,
                 const std::function<double(int64_t)>& fn);

// ---- estimators on an explicit ball ----------------------------------------
// Per-trial randomness: edge e open iff uniform(trial_stream(seed,t), e) < p,
// the same mapping sample() uses, evaluated lazily during cluster exploration.

Estimate two_point(const grp::CayleyBall& ball, double p, const grp::GroupElement& g,
                   int64_t trials, uint64_t seed, int threads = 1);

struct Susceptibility {
    Estimate est;
    // fraction of trials whose identity cluster touched the boundary sphere;
    // large values signal finite-volume truncation bias
    double boundary_fraction = 0;
};
Susceptibility susceptibility(const grp::CayleyBall& ball, double p, int64_t trials,
                              uint64_t seed, int threads = 1);

// Triangle diagram by Monte Carlo: three independent configurations per trial,
// one two-point factor each.  biased=true in the report flags p >= p_c inputs.
Estimate triangle_mc(const grp::CayleyBall& ball, double p, int64_t trials, uint64_t seed,
                     int threads = 1);

// Ratio sum_{g,h in A} tau_p(g,h) / (chi_p * |A|); std error by the delta
// method on the (numerator, chi) pair.
Estimate iota_ratio(const grp::CayleyBall& ball, double p, const std::vector<int>& A,
                    int64_t trials, uint64_t seed, int threads = 1);

// Mean number of distinct clusters meeting both ball(core_radius) and the
// boundary sphere.
Estimate n_infinity_proxy(const grp::CayleyBall& ball, double p, int64_t trials,
                          uint64_t seed, int core_radius, int threads = 1);

// ---- estimators on the implicit ball (no materialization) ------------------
// Identical semantics on word-norm balls of unbounded radius; only the cluster
// of the start vertex is ever generated.  Edge coins are keyed by the
// canonical lesser endpoint and generator, so configurations are reproducible
// and coupled across p exactly like the explicit sampler.

Estimate two_point_lazy(const grp::Presentation& pres, int radius, double p,
                        const grp::GroupElement& g, int64_t trials, uint64_t seed,
                        int threads = 1);

Susceptibility susceptibility_lazy(const grp::Presentation& pres, int radius, double p,
                                   int64_t trials, uint64_t seed, int threads = 1);

// Estimates every tau_p(g) for g in the ball simultaneously from one trial
// batch (shared configurations).  Returns per-vertex hit counts.
std::vector<int64_t> two_point_all(const grp::CayleyBall& ball, double p, int64_t trials,
                                   uint64_t seed, int threads = 1);

// Bisection of P_p(id <-> sphere(radius)) for the p crossing `threshold`,
// with common random numbers across p so the crossing curve is monotone.
struct PcResult {
    Estimate est;
    std::vector<std::array<double, 3>> sweep;  // (p, crossing prob, std error)
};
PcResult pc_estimate(const grp::Presentation& pres, int radius, int64_t trials,
                     uint64_t seed, double threshold = 0.5, int threads = 1);

}  // namespace hyperperc::perc
