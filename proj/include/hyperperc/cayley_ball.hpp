#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "hyperperc/group_element.hpp"

namespace hyperperc::grp {

// Finite induced subgraph on all elements of word norm <= radius.
// Vertices are sorted by (norm, lexicographic canonical letters); the
// identity is always vertex 0.  Each unordered edge appears once as
// (u, v, gen) with u * gen = v or v * gen = u.
struct CayleyBall {
    Presentation pres;
    int radius = 0;
    std::vector<GroupElement> vertices;
    std::vector<int> norms;
    std::vector<std::array<int, 3>> edges;                    // u, v, 0-based global gen
    std::vector<std::vector<std::pair<int, int>>> adjacency;  // (neighbor, edge index)

    int n_vertices() const { return static_cast<int>(vertices.size()); }
    int n_edges() const { return static_cast<int>(edges.size()); }

    // Vertex index of g, or -1 when g lies outside the ball.
    int find(const GroupElement& g) const;

    // All vertex indices with norm == n.
    std::vector<int> sphere(int n) const;

private:
    friend CayleyBall build_ball(const Presentation&, int);
    std::unordered_map<std::string, int> index_;
};

// Ball/sphere cardinalities by norm, computed from the presentation's growth
// series (no enumeration).  counts[n] = #sphere(n); values saturate at
// 2^63-1.  Used for the memory-cap estimate and by the tree-exact oracles.
std::vector<uint64_t> sphere_counts(const Presentation& pres, int radius);

// Default 4e6 vertices; override with env HYPERPERC_MAX_VERTICES.
uint64_t max_vertices_cap();

// BFS-complete ball.  Throws resource_error naming the predicted vertex
// count when it exceeds the cap.
CayleyBall build_ball(const Presentation& pres, int radius);

// Edge-list export: header `vertices N radius R`, then one `u v gen` per line.
void write_ball(const CayleyBall& ball, std::ostream& os);

}  // namespace hyperperc::grp
