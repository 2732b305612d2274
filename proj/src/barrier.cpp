#include "hyperperc/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hyperperc/cayley_ball.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/free_word.hpp"
#include "hyperperc/rng.hpp"

namespace hyperperc::barrier {

namespace {

void require_free(const grp::Presentation& pres, const char* who, int min_rank = 1) {
    if (!pres.is_tree()) throw std::invalid_argument(std::string(who) + ": free groups only");
    if (pres.n_generators() < min_rank)
        throw std::invalid_argument(std::string(who) + ": free rank >= " +
                                    std::to_string(min_rank) + " required");
}

std::vector<int> letters_of(const grp::Presentation& pres, const grp::GroupElement& g) {
    return grp::canonical_letters(pres, g);
}

// maximal runs of the first generator: (start position, length, sign)
struct Run {
    int start = 0;
    int len = 0;
    int sign = 0;
};

std::vector<Run> a_runs(const std::vector<int>& w) {
    std::vector<Run> runs;
    for (size_t i = 0; i < w.size();) {
        if (w[i] == 1 || w[i] == -1) {
            size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            runs.push_back({static_cast<int>(i), static_cast<int>(j - i), w[i] > 0 ? 1 : -1});
            i = j;
        } else {
            ++i;
        }
    }
    return runs;
}

// signed length of the initial a-run; this is the position on the line <a>
// closest to the word (the projection foot on a tree)
int64_t initial_a_run(const std::vector<int>& w) {
    if (w.empty() || (w[0] != 1 && w[0] != -1)) return 0;
    int64_t n = 0;
    while (n < static_cast<int64_t>(w.size()) && w[static_cast<size_t>(n)] == w[0]) ++n;
    return w[0] > 0 ? n : -n;
}

bool starts_with_a_power(const std::vector<int>& w, int prefix_len) {
    if (static_cast<int>(w.size()) < prefix_len) return false;
    for (int i = 0; i < prefix_len; ++i)
        if (w[static_cast<size_t>(i)] != 1) return false;
    return true;
}

void sort_canonical(const grp::Presentation& pres, std::vector<grp::GroupElement>& v) {
    std::sort(v.begin(), v.end(), [&](const grp::GroupElement& x, const grp::GroupElement& y) {
        return grp::compare(pres, x, y) < 0;
    });
}

}  // namespace

// ---- families ---------------------------------------------------------------

BarrierFamily vertical_barriers(const grp::Presentation& pres, int radius, int step,
                                int count) {
    require_free(pres, "vertical_barriers", 2);
    if (radius < 1 || step < 1 || count < 1)
        throw std::invalid_argument("vertical_barriers: radius, step, count must be >= 1");
    if (step * count >= radius)
        throw std::invalid_argument(
            "vertical_barriers: ball too small, need step*count < radius");

    BarrierFamily fam;
    fam.kind = "vertical";
    fam.ball_radius = radius;
    fam.step = step;
    for (int i = 1; i <= count; ++i) {
        int prefix = step * i;
        int kmax = radius - prefix;
        std::vector<grp::GroupElement> level;
        level.reserve(static_cast<size_t>(2 * kmax + 1));
        for (int k = -kmax; k <= kmax; ++k) {
            std::vector<int> w(static_cast<size_t>(prefix), 1);
            for (int j = 0; j < std::abs(k); ++j) w.push_back(k > 0 ? 2 : -2);
            level.push_back(grp::reduce(pres, w));
        }
        sort_canonical(pres, level);
        fam.levels.push_back(std::move(level));
    }
    fam.target_dir =
        grp::reduce(pres, std::vector<int>(static_cast<size_t>(step * count), 1));
    return fam;
}

int64_t coset_projection_span(const grp::Presentation& pres, const grp::GroupElement& rep,
                              const grp::GroupElement& u, const grp::GroupElement& v) {
    require_free(pres, "coset_projection_span");
    grp::GroupElement ri = grp::inverse(pres, rep);
    int64_t ju = initial_a_run(letters_of(pres, grp::mul(pres, ri, u)));
    int64_t jv = initial_a_run(letters_of(pres, grp::mul(pres, ri, v)));
    return std::llabs(ju - jv);
}

BarrierFamily projection_barriers(const grp::Presentation& pres,
                                  const std::vector<grp::GroupElement>& candidates,
                                  const grp::GroupElement& y, const BandConfig& band) {
    require_free(pres, "projection_barriers");
    if (!(band.k0 > 0) || !(band.spacing > 0) || !(band.half_width >= 0) ||
        2 * band.half_width >= band.spacing)
        throw std::invalid_argument("projection_barriers: need 0 <= 2*half_width < spacing");

    BarrierFamily fam;
    fam.kind = "projection";
    fam.band = band;
    fam.target_dir = y;

    std::vector<int> wy = letters_of(pres, y);
    double dy = static_cast<double>(wy.size());
    int m = static_cast<int>(std::floor((dy / band.k0 - band.half_width) / band.spacing));
    if (m < 1) return fam;  // y too close: no band fits below it
    fam.levels.assign(static_cast<size_t>(m), {});

    grp::GroupElement id = grp::identity(pres);
    for (const grp::GroupElement& g : candidates) {
        std::vector<int> wg = letters_of(pres, g);
        auto gp = static_cast<double>(word::common_prefix(wg, wy));  // (g|y)_id on a tree
        int i = static_cast<int>(std::llround(gp / (band.spacing * band.k0)));
        if (i < 1 || i > m) continue;
        if (std::abs(gp - band.spacing * band.k0 * i) > band.half_width * band.k0) continue;

        // per-line cap: a long overlap of [id,g] with a coset line is an a-run
        // of g, and the line's representative is the prefix before the run
        bool capped = false;
        for (const Run& r : a_runs(wg)) {
            if (static_cast<double>(r.len) <= band.g_cap * band.k0) continue;
            grp::GroupElement rep = grp::reduce(
                pres, std::vector<int>(wg.begin(), wg.begin() + r.start));
            if (static_cast<double>(coset_projection_span(pres, rep, id, y)) <
                band.y_clear * band.k0) {
                capped = true;
                break;
            }
        }
        if (capped) continue;
        fam.levels[static_cast<size_t>(i - 1)].push_back(g);
    }
    for (auto& level : fam.levels) sort_canonical(pres, level);
    return fam;
}

// ---- barrier check ----------------------------------------------------------

namespace {

// geodesic vertex chain between two tree elements, endpoints included
std::vector<grp::GroupElement> tree_chain(const grp::Presentation& pres,
                                          const std::vector<int>& u,
                                          const std::vector<int>& v) {
    int c = word::common_prefix(u, v);
    std::vector<grp::GroupElement> chain;
    for (int i = static_cast<int>(u.size()); i >= c; --i)
        chain.push_back(grp::reduce(pres, std::vector<int>(u.begin(), u.begin() + i)));
    for (int i = c + 1; i <= static_cast<int>(v.size()); ++i)
        chain.push_back(grp::reduce(pres, std::vector<int>(v.begin(), v.begin() + i)));
    return chain;
}

BarrierCheck is_barrier_tree(const grp::Presentation& pres, const MemberFn& b_member,
                             const grp::GroupElement& source,
                             const std::vector<grp::GroupElement>& targets, int radius) {
    BarrierCheck res;
    std::vector<int> u = letters_of(pres, source);
    bool source_in_b = b_member(source);
    if (source_in_b) res.warnings.push_back("source lies in B: every path meets B at id end");
    for (const grp::GroupElement& t : targets) {
        std::vector<int> v = letters_of(pres, t);
        if (static_cast<int>(v.size()) > radius)
            throw std::invalid_argument("is_barrier: target outside the ball");
        if (source_in_b) continue;
        if (b_member(t)) {
            res.warnings.push_back("target in B (vacuous): " + grp::to_string(pres, t));
            continue;
        }
        std::vector<grp::GroupElement> chain = tree_chain(pres, u, v);
        bool blocked = false;
        for (size_t i = 1; i + 1 < chain.size(); ++i)
            if (b_member(chain[i])) {
                blocked = true;
                break;
            }
        if (!blocked) {
            res.barrier = false;
            res.path = std::move(chain);
            return res;
        }
    }
    return res;
}

BarrierCheck is_barrier_bfs(const grp::Presentation& pres, const MemberFn& b_member,
                            const grp::GroupElement& source,
                            const std::vector<grp::GroupElement>& targets, int radius) {
    BarrierCheck res;
    grp::CayleyBall ball = grp::build_ball(pres, radius);
    int src = ball.find(source);
    if (src < 0) throw std::invalid_argument("is_barrier: source outside the ball");
    std::vector<char> in_b(static_cast<size_t>(ball.n_vertices()), 0);
    for (int v = 0; v < ball.n_vertices(); ++v)
        in_b[static_cast<size_t>(v)] = b_member(ball.vertices[static_cast<size_t>(v)]) ? 1 : 0;

    std::vector<int> parent(static_cast<size_t>(ball.n_vertices()), -2);
    if (in_b[static_cast<size_t>(src)]) {
        res.warnings.push_back("source lies in B: every path meets B at id end");
    } else {
        std::deque<int> q{src};
        parent[static_cast<size_t>(src)] = -1;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (auto [w, e] : ball.adjacency[static_cast<size_t>(v)]) {
                if (parent[static_cast<size_t>(w)] != -2 || in_b[static_cast<size_t>(w)])
                    continue;
                parent[static_cast<size_t>(w)] = v;
                q.push_back(w);
            }
        }
    }
    for (const grp::GroupElement& t : targets) {
        int ti = ball.find(t);
        if (ti < 0) throw std::invalid_argument("is_barrier: target outside the ball");
        if (in_b[static_cast<size_t>(ti)]) {
            res.warnings.push_back("target in B (vacuous): " + grp::to_string(pres, t));
            continue;
        }
        if (parent[static_cast<size_t>(ti)] == -2) continue;  // unreachable: blocked
        res.barrier = false;
        std::vector<grp::GroupElement> rev;
        for (int v = ti; v != -1; v = parent[static_cast<size_t>(v)])
            rev.push_back(ball.vertices[static_cast<size_t>(v)]);
        res.path.assign(rev.rbegin(), rev.rend());
        return res;
    }
    return res;
}

}  // namespace

BarrierCheck is_barrier(const grp::Presentation& pres, const MemberFn& b_member,
                        const grp::GroupElement& source,
                        const std::vector<grp::GroupElement>& targets, int radius) {
    if (grp::norm(pres, source) > radius)
        throw std::invalid_argument("is_barrier: source outside the ball");
    if (pres.is_tree()) return is_barrier_tree(pres, b_member, source, targets, radius);
    return is_barrier_bfs(pres, b_member, source, targets, radius);
}

BarrierCheck is_barrier(const grp::Presentation& pres,
                        const std::vector<grp::GroupElement>& B,
                        const grp::GroupElement& source,
                        const std::vector<grp::GroupElement>& targets, int radius) {
    std::unordered_set<std::string> keys;
    keys.reserve(B.size());
    for (const grp::GroupElement& g : B) keys.insert(grp::letter_key(pres, g));
    return is_barrier(
        pres,
        [&](const grp::GroupElement& g) { return keys.count(grp::letter_key(pres, g)) > 0; },
        source, targets, radius);
}

// ---- rough branching --------------------------------------------------------

BranchingCertificate check_roughly_branching(const grp::Presentation& pres,
                                             const std::vector<grp::GroupElement>& B,
                                             const std::vector<grp::GroupElement>& Bprime,
                                             int r, int k_max) {
    if (k_max < 2) throw std::invalid_argument("check_roughly_branching: k_max must be >= 2");
    if (Bprime.empty())
        throw std::invalid_argument("check_roughly_branching: empty witness set");
    BranchingCertificate cert;
    cert.r = r;
    cert.k_max = k_max;

    for (const grp::GroupElement& b : B) {
        bool near = false;
        for (const grp::GroupElement& w : Bprime)
            if (grp::word_distance(pres, b, w) <= r) {
                near = true;
                break;
            }
        if (!near) cert.uncovered.push_back(b);
    }
    cert.covered = cert.uncovered.empty();

    double total = 0, layer = 1;
    for (int k = 1; k <= k_max; ++k) {
        layer *= static_cast<double>(Bprime.size());
        total += layer;
    }
    if (total > 2e6)
        throw resource_error("check_roughly_branching: " + std::to_string(total) +
                             " products exceed the enumeration cap");

    // tuples of a fixed length k, extended one factor at a time; equal-length
    // products must determine the tuple
    struct Tuple {
        grp::GroupElement prod;
        std::vector<int> seq;
    };
    std::vector<Tuple> level;
    level.push_back({grp::identity(pres), {}});
    for (int k = 1; k <= k_max && cert.injective; ++k) {
        std::vector<Tuple> next;
        next.reserve(level.size() * Bprime.size());
        std::unordered_map<std::string, size_t> seen;
        for (const Tuple& t : level) {
            for (size_t i = 0; i < Bprime.size(); ++i) {
                Tuple ext{grp::mul(pres, t.prod, Bprime[i]), t.seq};
                ext.seq.push_back(static_cast<int>(i));
                ++cert.products_checked;
                std::string key = grp::letter_key(pres, ext.prod);
                auto [it, fresh] = seen.emplace(key, next.size());
                if (!fresh) {
                    cert.injective = false;
                    const Tuple& other = next[it->second];
                    for (int j : other.seq)
                        cert.collision_lhs.push_back(Bprime[static_cast<size_t>(j)]);
                    for (int j : ext.seq)
                        cert.collision_rhs.push_back(Bprime[static_cast<size_t>(j)]);
                    cert.collision_product = ext.prod;
                    break;
                }
                next.push_back(std::move(ext));
            }
            if (!cert.injective) break;
        }
        level = std::move(next);
    }
    return cert;
}

// ---- no-fellow-traveling sets ----------------------------------------------

bool nf_contains(const grp::Presentation& pres, const grp::GroupElement& g, int D) {
    require_free(pres, "nf_contains");
    if (D < 1) throw std::invalid_argument("nf_contains: D must be >= 1");
    for (const Run& r : a_runs(letters_of(pres, g)))
        if (r.len >= D) return false;
    return true;
}

std::vector<grp::GroupElement> nf_set(const grp::Presentation& pres, int radius, int D,
                                      int min_norm) {
    require_free(pres, "nf_set");
    if (D < 1) throw std::invalid_argument("nf_set: D must be >= 1");
    std::vector<std::vector<int>> words;
    std::vector<int> buf;
    uint64_t cap = grp::max_vertices_cap();
    int n = pres.n_generators();
    // DFS with run pruning: once an a-run would reach D the whole branch is out
    auto dfs = [&](auto&& self, int run_letter, int run_len) -> void {
        if (words.size() + 1 > cap) throw resource_error("nf_set: enumeration cap exceeded");
        if (static_cast<int>(buf.size()) >= min_norm) words.push_back(buf);
        if (static_cast<int>(buf.size()) == radius) return;
        int last = buf.empty() ? 0 : buf.back();
        for (int g = 1; g <= n; ++g)
            for (int sign : {1, -1}) {
                int letter = sign * g;
                if (letter == -last) continue;
                int nrun = (g == 1) ? (letter == run_letter ? run_len + 1 : 1) : 0;
                if (g == 1 && nrun >= D) continue;
                buf.push_back(letter);
                self(self, g == 1 ? letter : 0, nrun);
                buf.pop_back();
            }
    };
    dfs(dfs, 0, 0);
    std::sort(words.begin(), words.end(),
              [](const std::vector<int>& u, const std::vector<int>& v) {
                  if (u.size() != v.size()) return u.size() < v.size();
                  return u < v;
              });
    std::vector<grp::GroupElement> out;
    out.reserve(words.size());
    for (const auto& w : words) out.push_back(grp::reduce(pres, w));
    return out;
}

bool g_de_contains(const grp::Presentation& pres, const grp::GroupElement& g, int D, int E,
                   int Eprime) {
    require_free(pres, "g_de_contains");
    if (D < 1 || E < 0 || Eprime < 0)
        throw std::invalid_argument("g_de_contains: need D >= 1 and E, Eprime >= 0");
    std::vector<int> w = letters_of(pres, g);
    if (static_cast<int>(w.size()) < E) return false;
    int window = Eprime + 250 * D;
    for (const Run& r : a_runs(w))
        if (r.len >= 250 * D && r.start <= window) return false;
    return true;
}

GdeSet g_de_set(const grp::Presentation& pres, int radius, int D, int E, int Eprime) {
    require_free(pres, "g_de_set");
    if (D < 1 || E < 0 || Eprime < 0)
        throw std::invalid_argument("g_de_set: need D >= 1 and E, Eprime >= 0");
    if (E > radius) throw std::invalid_argument("g_de_set: E exceeds the ball radius");
    uint64_t total = 0, cap = grp::max_vertices_cap();
    for (uint64_t c : grp::sphere_counts(pres, radius)) {
        total += c;
        if (total > cap) throw resource_error("g_de_set: ball exceeds the enumeration cap");
    }
    GdeSet out;
    out.window = Eprime + 250 * D;
    out.log.push_back("prefix window = Eprime + 250*D = " + std::to_string(out.window));
    for (const grp::GroupElement& g : word::ball_elements(pres, radius))
        if (g_de_contains(pres, g, D, E, Eprime)) out.members.push_back(g);
    return out;
}

// ---- capacity ---------------------------------------------------------------

Capacity branching_capacity(const grp::Presentation& pres,
                            const std::vector<grp::GroupElement>& B, double p) {
    require_free(pres, "branching_capacity");
    double pc = 1.0 / (2.0 * pres.n_generators() - 1.0);
    if (!(p >= 0.0 && p <= pc))
        throw std::invalid_argument("branching_capacity: p must lie in [0, p_c]");
    Capacity cap;
    for (const grp::GroupElement& g : B)
        cap.value += std::pow(p, static_cast<double>(grp::norm(pres, g)));
    cap.within_unit = cap.value <= 1.0 + 1e-9;
    return cap;
}

perc::Estimate halfspace_cluster_mc(const grp::Presentation& pres, int radius,
                                    int prefix_len, double p, int64_t trials,
                                    uint64_t seed, int threads) {
    require_free(pres, "halfspace_cluster_mc");
    if (prefix_len < 0 || prefix_len > radius)
        throw std::invalid_argument("halfspace_cluster_mc: prefix outside the ball");
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("halfspace_cluster_mc: p must lie in [0,1)");

    int n = pres.n_generators();
    std::vector<uint64_t> salt(static_cast<size_t>(2 * n));
    for (size_t i = 0; i < salt.size(); ++i) salt[i] = rng::mix(rng::kGolden * (i + 1));
    grp::GroupElement id = grp::identity(pres);

    return perc::mc_mean(trials, seed, threads, [&](int64_t t) {
        uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
        struct Node {
            grp::GroupElement g;
            int64_t norm;
            uint64_t hash;
        };
        std::unordered_set<std::string> visited;
        std::vector<Node> stack;
        int64_t hits = 0;
        auto visit = [&](grp::GroupElement g, int64_t nrm) {
            if (!visited.insert(grp::letter_key(pres, g)).second) return;
            if (starts_with_a_power(grp::canonical_letters(pres, g), prefix_len)) ++hits;
            uint64_t h = grp::element_hash(pres, g);
            stack.push_back({std::move(g), nrm, h});
        };
        visit(id, 0);
        while (!stack.empty()) {
            Node u = std::move(stack.back());
            stack.pop_back();
            for (int gen = 0; gen < n; ++gen)
                for (int sign : {1, -1}) {
                    int letter = sign * (gen + 1);
                    grp::GroupElement v = grp::mul_letter(pres, u.g, letter);
                    int64_t vn = grp::norm(pres, v);
                    if (vn > radius) continue;
                    // coin keyed by the deeper endpoint plus the letter that
                    // reaches it from its parent, a unique label per tree edge
                    bool v_deeper = vn > u.norm;
                    uint64_t deep = v_deeper ? grp::element_hash(pres, v) : u.hash;
                    int down = v_deeper ? letter : -letter;
                    size_t si = static_cast<size_t>(2 * gen + (down < 0 ? 1 : 0));
                    if (rng::uniform(stream, deep ^ salt[si]) >= p) continue;
                    visit(std::move(v), vn);
                }
        }
        return static_cast<double>(hits);
    });
}

}  // namespace hyperperc::barrier
