#include "hyperperc/percolation.hpp"

#include <stdexcept>

#include "hyperperc/rng.hpp"
#include "hyperperc/union_find.hpp"

namespace hyperperc::perc {

PercSample sample(const grp::CayleyBall& ball, double p, uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    PercSample s;
    s.p = p;
    s.seed = seed;
    s.open.resize(ball.n_edges());
    for (int e = 0; e < ball.n_edges(); ++e)
        s.open[e] = rng::uniform(seed, static_cast<uint64_t>(e)) < p ? 1 : 0;
    return s;
}

ClusterPartition clusters(const grp::CayleyBall& ball, const PercSample& s) {
    if (static_cast<int>(s.open.size()) != ball.n_edges())
        throw std::invalid_argument("sample was built over a different ball");
    UnionFind uf(ball.n_vertices());
    for (int e = 0; e < ball.n_edges(); ++e)
        if (s.open[e]) uf.unite(ball.edges[e][0], ball.edges[e][1]);

    ClusterPartition part;
    part.cluster_id.assign(ball.n_vertices(), -1);
    std::vector<int> root_to_id(ball.n_vertices(), -1);
    for (int v = 0; v < ball.n_vertices(); ++v) {
        int r = uf.find(v);
        if (root_to_id[r] < 0) {
            root_to_id[r] = part.n_clusters();
            part.cluster_size.push_back(uf.component_size(r));
        }
        part.cluster_id[v] = root_to_id[r];
    }
    return part;
}

}  // namespace hyperperc::perc
