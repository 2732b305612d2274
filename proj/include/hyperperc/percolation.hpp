#pragma once

#include <cstdint>
#include <vector>

#include "hyperperc/cayley_ball.hpp"

namespace hyperperc::perc {

// One Bernoulli bond configuration over a ball's edge list.
// Edge e is open iff uniform(seed, e) < p, so configurations at the same seed
// are coupled through shared uniforms: p <= p' implies open_p <= open_p'
// bitwise, and regeneration from (ball, p, seed) is bit-identical.
struct PercSample {
    double p = 0;
    uint64_t seed = 0;
    std::vector<uint8_t> open;  // one flag per edge index
};

PercSample sample(const grp::CayleyBall& ball, double p, uint64_t seed);

// Union-find partition of the ball's vertices under the open subgraph.
struct ClusterPartition {
    std::vector<int> cluster_id;   // compacted, ordered by least vertex index
    std::vector<int> cluster_size; // indexed by cluster id

    int n_clusters() const { return static_cast<int>(cluster_size.size()); }
    bool same(int u, int v) const { return cluster_id[u] == cluster_id[v]; }
};

ClusterPartition clusters(const grp::CayleyBall& ball, const PercSample& s);

}  // namespace hyperperc::perc
