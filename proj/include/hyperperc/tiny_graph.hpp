#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hyperperc/cayley_ball.hpp"

namespace hyperperc::oracle {

// Ground-truth probabilities by full enumeration of the 2^|E| edge
// configurations.  Caps keep every enumeration sub-second.

struct TinyGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    static constexpr int kMaxVertices = 24;
    static constexpr int kMaxEdges = 20;

    // validates the caps, vertex range and connectivity
    static TinyGraph make(int n, std::vector<std::pair<int, int>> edges);

    int n_edges() const { return static_cast<int>(edges.size()); }
    uint64_t hash() const;
};

// Monotone events on a TinyGraph configuration (bitmask omega, bit e = edge
// e open).  All three kinds are increasing by construction.
struct ConnectionEvent {
    enum class Kind { Connect, ConnectSet, EdgeOpen };
    Kind kind = Kind::EdgeOpen;
    int u = -1;
    int v = -1;                // Connect partner / EdgeOpen edge index
    std::vector<int> targets;  // ConnectSet

    static ConnectionEvent connect(int u, int v);
    static ConnectionEvent connect_set(int u, std::vector<int> targets);
    static ConnectionEvent edge_open(int e);

    bool holds(const TinyGraph& g, uint32_t omega) const;
};

double exact_prob(const TinyGraph& g, const ConnectionEvent& ev, double p);

// exact arithmetic for rational p = num/den (useful for pinning enumeration
// results like 9/16 without float round-off)
struct Rational {
    uint64_t num = 0;
    uint64_t den = 1;
};
Rational exact_prob_rational(const TinyGraph& g, const ConnectionEvent& ev, int num,
                             int den);

// Distribution over the cluster count of the configuration; the probabilities
// partition Omega and sum to 1.
std::vector<double> cluster_count_distribution(const TinyGraph& g, double p);

struct CheckReport {
    std::string check;
    uint64_t graph_hash = 0;
    double p = 0;
    double lhs = 0;
    double rhs = 0;
    double margin = 0;  // sign convention documented per check
    bool verdict = false;
};

// P(A and B) >= P(A) P(B) for increasing A, B; margin = lhs - rhs >= 0.
// Both predicates are first vetted by an exhaustive monotonicity self-test;
// a non-monotone predicate is rejected with std::invalid_argument.
std::vector<CheckReport> check_fkg(const TinyGraph& g, const ConnectionEvent& A,
                                   const ConnectionEvent& B,
                                   const std::vector<double>& p_grid);
// predicate overload, used by fault-injection tests
std::vector<CheckReport> check_fkg(const TinyGraph& g,
                                   const std::function<bool(uint32_t)>& A,
                                   const std::function<bool(uint32_t)>& B,
                                   const std::vector<double>& p_grid);

// Does omega admit edge-disjoint open witnesses (simple paths) for
// {u<->v} and {v<->w}?  Exhaustive over the simple open u-v paths.
bool disjointly_occurs(const TinyGraph& g, const ConnectionEvent& A,
                       const ConnectionEvent& B, uint32_t omega);

// P(A o B) for A = Connect(u,v), B = Connect(v,w).
double disjoint_occurrence_prob(const TinyGraph& g, const ConnectionEvent& A,
                                const ConnectionEvent& B, double p);

// Finite-difference derivative of P_p(A) against the pivotal-edge sum of
// Russo's formula; equality is exact on finite graphs, so the residual
// (margin) is the O(h^2) central-difference error.
CheckReport russo_check(const TinyGraph& g, const ConnectionEvent& A, double p, double h);

// E[#(C(id) /\ A)] <= E[#(C(id) /\ B)] * chi  for a vertex cut B between id
// and A.  Exact enumeration when the ball has <= kMaxEdges edges (chi = the
// worst E#C(b) over b in B); Monte Carlo with the tree closed-form chi
// otherwise.  margin = rhs - lhs (with a 3 sigma allowance in MC mode).
CheckReport bk_barrier_check(const grp::CayleyBall& ball, const std::vector<int>& A,
                             const std::vector<int>& B, double p, int64_t trials = 0,
                             uint64_t seed = 1);

}  // namespace hyperperc::oracle
