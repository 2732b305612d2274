#include "hyperperc/cayley_ball.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <map>
#include <ostream>
#include <tuple>

#include "hyperperc/errors.hpp"

namespace hyperperc::grp {

namespace {

constexpr uint64_t kSat = std::numeric_limits<uint64_t>::max() / 4;  // saturation guard

uint64_t sat_add(uint64_t a, uint64_t b) { return std::min(kSat, a + std::min(b, kSat)); }

// Sphere counts for one simple factor.
std::vector<uint64_t> factor_spheres(const Factor& f, int radius) {
    std::vector<uint64_t> s(radius + 1, 0);
    s[0] = 1;
    if (f.kind == Kind::Free) {
        int k = f.rank;
        for (int n = 1; n <= radius; ++n)
            s[n] = (n == 1) ? 2 * k : std::min(kSat, s[n - 1] * (2 * k - 1));
    } else if (f.kind == Kind::Lattice) {
        // convolve f.rank copies of the line counts (1,2,2,...)
        std::vector<uint64_t> acc(radius + 1, 0);
        acc[0] = 1;
        for (int d = 0; d < f.rank; ++d) {
            std::vector<uint64_t> next(radius + 1, 0);
            for (int n = 0; n <= radius; ++n) {
                if (!acc[n]) continue;
                next[n] = sat_add(next[n], acc[n]);
                for (int m = 1; n + m <= radius; ++m)
                    next[n + m] = sat_add(next[n + m], std::min(kSat, 2 * acc[n]));
            }
            acc = std::move(next);
        }
        s = acc;
    } else {  // FreeProduct: alternating-syllable DP by total norm
        std::vector<std::vector<int>> costs(2);
        for (int side = 0; side < 2; ++side) {
            int ord = f.orders[side];
            for (int e = 1; e < ord; ++e) costs[side].push_back(std::min(e, ord - e));
        }
        std::vector<uint64_t> endx(radius + 1, 0), endy(radius + 1, 0);
        for (int r = 1; r <= radius; ++r) {
            for (int c : costs[0])
                if (c <= r) endx[r] = sat_add(endx[r], (r == c ? 1 : endy[r - c]));
            for (int c : costs[1])
                if (c <= r) endy[r] = sat_add(endy[r], (r == c ? 1 : endx[r - c]));
            s[r] = sat_add(endx[r], endy[r]);
        }
    }
    return s;
}

}  // namespace

std::vector<uint64_t> sphere_counts(const Presentation& pres, int radius) {
    std::vector<uint64_t> acc = factor_spheres(pres.factors()[0], radius);
    for (size_t fi = 1; fi < pres.factors().size(); ++fi) {
        std::vector<uint64_t> b = factor_spheres(pres.factors()[fi], radius);
        std::vector<uint64_t> next(radius + 1, 0);
        for (int n = 0; n <= radius; ++n)
            for (int m = 0; n + m <= radius; ++m)
                next[n + m] = sat_add(next[n + m], std::min(kSat, acc[n] * b[m]));
        acc = std::move(next);
    }
    return acc;
}

uint64_t max_vertices_cap() {
    if (const char* env = std::getenv("HYPERPERC_MAX_VERTICES")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
        throw std::invalid_argument("HYPERPERC_MAX_VERTICES must be a positive integer");
    }
    return 4'000'000;
}

int CayleyBall::find(const GroupElement& g) const {
    auto it = index_.find(letter_key(pres, g));
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> CayleyBall::sphere(int n) const {
    std::vector<int> out;
    for (int i = 0; i < n_vertices(); ++i)
        if (norms[i] == n) out.push_back(i);
    return out;
}

CayleyBall build_ball(const Presentation& pres, int radius) {
    if (radius < 0) throw std::invalid_argument("ball radius must be >= 0");
    uint64_t predicted = 0;
    for (uint64_t s : sphere_counts(pres, radius)) predicted = sat_add(predicted, s);
    if (uint64_t cap = max_vertices_cap(); predicted > cap)
        throw resource_error("ball would hold " +
                             (predicted >= kSat ? std::string(">= 4.6e18")
                                                : std::to_string(predicted)) +
                             " vertices, above the cap of " + std::to_string(cap) +
                             " (HYPERPERC_MAX_VERTICES)");

    CayleyBall ball;
    ball.pres = pres;
    ball.radius = radius;

    int n_gens = pres.n_generators();
    std::vector<GroupElement> found{identity(pres)};
    std::unordered_map<std::string, int> seen{{letter_key(pres, found[0]), 0}};
    std::deque<int> frontier{0};
    while (!frontier.empty()) {
        int ui = frontier.front();
        frontier.pop_front();
        GroupElement u = found[ui];  // copy: found may reallocate below
        for (int gen = 0; gen < n_gens; ++gen) {
            for (int sign : {1, -1}) {
                GroupElement v = mul_letter(pres, u, sign * (gen + 1));
                if (norm(pres, v) > radius) continue;
                std::string key = letter_key(pres, v);
                if (seen.emplace(key, static_cast<int>(found.size())).second) {
                    found.push_back(std::move(v));
                    frontier.push_back(static_cast<int>(found.size()) - 1);
                }
            }
        }
    }

    // canonical (norm, lexicographic) vertex order
    std::vector<int> order(found.size());
    std::vector<std::pair<int64_t, std::vector<int>>> keys(found.size());
    for (size_t i = 0; i < found.size(); ++i)
        keys[i] = {norm(pres, found[i]), canonical_letters(pres, found[i])};
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return keys[a] < keys[b]; });

    ball.vertices.reserve(found.size());
    for (int old : order) {
        ball.index_[letter_key(pres, found[old])] = ball.n_vertices();
        ball.norms.push_back(static_cast<int>(keys[old].first));
        ball.vertices.push_back(std::move(found[old]));
    }

    // one entry per unordered edge; (u,v,gen) keeps the orientation u*gen = v
    std::map<std::tuple<int, int, int>, std::pair<int, int>> edge_set;
    for (int ui = 0; ui < ball.n_vertices(); ++ui) {
        for (int gen = 0; gen < n_gens; ++gen) {
            GroupElement v = mul_letter(pres, ball.vertices[ui], gen + 1);
            int vi = ball.find(v);
            if (vi < 0 || vi == ui) continue;
            edge_set.emplace(std::make_tuple(std::min(ui, vi), std::max(ui, vi), gen),
                             std::make_pair(ui, vi));
        }
    }
    ball.adjacency.resize(ball.n_vertices());
    for (const auto& [key, uv] : edge_set) {
        int e = ball.n_edges();
        ball.edges.push_back({uv.first, uv.second, std::get<2>(key)});
        ball.adjacency[uv.first].push_back({uv.second, e});
        ball.adjacency[uv.second].push_back({uv.first, e});
    }
    return ball;
}

void write_ball(const CayleyBall& ball, std::ostream& os) {
    os << "vertices " << ball.n_vertices() << " radius " << ball.radius << "\n";
    for (const auto& e : ball.edges) os << e[0] << " " << e[1] << " " << e[2] << "\n";
}

}  // namespace hyperperc::grp
