#include "hyperperc/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>
#include <unordered_set>

#include "hyperperc/rng.hpp"
#include "hyperperc/union_find.hpp"

namespace hyperperc::perc {

namespace {

constexpr int64_t kChunk = 1024;

// Per-thread scratch for stamped visited marks (avoids clearing O(V) arrays
// between trials).
struct Marks {
    std::vector<int> mark;
    int stamp = 0;
    void prepare(size_t n) {
        if (mark.size() < n) mark.assign(n, 0);
        ++stamp;
    }
    bool visit(int v) {
        if (mark[v] == stamp) return false;
        mark[v] = stamp;
        return true;
    }
};

Marks& tls_marks() {
    thread_local Marks m;
    return m;
}

// Chunked deterministic reduction: accumulators are combined in chunk order,
// so results do not depend on the number of worker threads.
template <typename Acc, typename PerTrial, typename Merge>
Acc run_chunks(int64_t trials, int threads, PerTrial per_trial, Merge merge) {
    int64_t n_chunks = (trials + kChunk - 1) / kChunk;
    std::vector<Acc> acc(static_cast<size_t>(n_chunks));
    auto work = [&](int64_t chunk) {
        int64_t lo = chunk * kChunk, hi = std::min(trials, lo + kChunk);
        for (int64_t t = lo; t < hi; ++t) per_trial(t, acc[static_cast<size_t>(chunk)]);
    };
    if (threads <= 1 || n_chunks == 1) {
        for (int64_t c = 0; c < n_chunks; ++c) work(c);
    } else {
        std::atomic<int64_t> next{0};
        std::vector<std::thread> pool;
        for (int i = 0; i < threads; ++i)
            pool.emplace_back([&] {
                for (int64_t c; (c = next.fetch_add(1)) < n_chunks;) work(c);
            });
        for (auto& th : pool) th.join();
    }
    Acc total{};
    for (const Acc& a : acc) merge(total, a);
    return total;
}

struct MeanAcc {
    double sum = 0, sumsq = 0;
};

Estimate finish(const MeanAcc& a, int64_t trials, uint64_t seed) {
    Estimate e;
    e.trials = trials;
    e.seed = seed;
    e.value = a.sum / static_cast<double>(trials);
    if (trials > 1) {
        double var = (a.sumsq - a.sum * a.sum / static_cast<double>(trials)) /
                     static_cast<double>(trials - 1);
        e.std_error = std::sqrt(std::max(0.0, var) / static_cast<double>(trials));
    }
    return e;
}

// Explores the open cluster of `start` in the explicit ball under the
// configuration (stream, p).  visit(v) is called once per cluster vertex;
// returning false aborts the walk (early exit).  Edge e is open iff
// uniform(stream, e) < p -- the exact mapping sample() uses.
template <typename Visit>
void explore(const grp::CayleyBall& ball, double p, uint64_t stream, int start, Marks& m,
             Visit visit) {
    thread_local std::vector<int> stack;
    stack.clear();
    if (!m.visit(start)) return;
    if (!visit(start)) return;
    stack.push_back(start);
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (auto [v, e] : ball.adjacency[u]) {
            if (m.mark[v] == m.stamp) continue;
            if (rng::uniform(stream, static_cast<uint64_t>(e)) >= p) continue;
            m.mark[v] = m.stamp;
            if (!visit(v)) return;
            stack.push_back(v);
        }
    }
}

void check_p(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
}

}  // namespace

Estimate mc_mean(int64_t trials, uint64_t seed, int threads,
                 const std::function<double(int64_t)>& fn) {
    if (trials < 1) throw std::invalid_argument("trials must be >= 1");
    MeanAcc total = run_chunks<MeanAcc>(
        trials, threads,
        [&](int64_t t, MeanAcc& a) {
            double v = fn(t);
            a.sum += v;
            a.sumsq += v * v;
        },
        [](MeanAcc& into, const MeanAcc& from) {
            into.sum += from.sum;
            into.sumsq += from.sumsq;
        });
    return finish(total, trials, seed);
}

Estimate two_point(const grp::CayleyBall& ball, double p, const grp::GroupElement& g,
                   int64_t trials, uint64_t seed, int threads) {
    check_p(p);
    int target = ball.find(g);
    if (target < 0) throw std::invalid_argument("two_point: g lies outside the ball");
    return mc_mean(trials, seed, threads, [&, target](int64_t t) {
        uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
        Marks& m = tls_marks();
        m.prepare(ball.n_vertices());
        bool hit = false;
        explore(ball, p, stream, 0, m, [&](int v) {
            if (v == target) {
                hit = true;
                return false;
            }
            return true;
        });
        return hit ? 1.0 : 0.0;
    });
}

Susceptibility susceptibility(const grp::CayleyBall& ball, double p, int64_t trials,
                              uint64_t seed, int threads) {
    check_p(p);
    struct Acc {
        MeanAcc mean;
        int64_t boundary = 0;
    };
    Acc total = run_chunks<Acc>(
        trials, threads,
        [&](int64_t t, Acc& a) {
            uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
            Marks& m = tls_marks();
            m.prepare(ball.n_vertices());
            int64_t size = 0;
            bool touched = false;
            explore(ball, p, stream, 0, m, [&](int v) {
                ++size;
                touched |= ball.norms[v] == ball.radius;
                return true;
            });
            a.mean.sum += static_cast<double>(size);
            a.mean.sumsq += static_cast<double>(size) * static_cast<double>(size);
            a.boundary += touched ? 1 : 0;
        },
        [](Acc& into, const Acc& from) {
            into.mean.sum += from.mean.sum;
            into.mean.sumsq += from.mean.sumsq;
            into.boundary += from.boundary;
        });
    Susceptibility result;
    result.est = finish(total.mean, trials, seed);
    result.boundary_fraction = static_cast<double>(total.boundary) / static_cast<double>(trials);
    return result;
}

Estimate triangle_mc(const grp::CayleyBall& ball, double p, int64_t trials, uint64_t seed,
                     int threads) {
    check_p(p);
    return mc_mean(trials, seed, threads, [&](int64_t t) {
        uint64_t s1 = rng::trial_stream(seed, static_cast<uint64_t>(3 * t));
        uint64_t s2 = rng::trial_stream(seed, static_cast<uint64_t>(3 * t + 1));
        uint64_t s3 = rng::trial_stream(seed, static_cast<uint64_t>(3 * t + 2));
        Marks& m = tls_marks();

        // full partition of the middle configuration
        UnionFind uf(ball.n_vertices());
        for (int e = 0; e < ball.n_edges(); ++e)
            if (rng::uniform(s2, static_cast<uint64_t>(e)) < p)
                uf.unite(ball.edges[e][0], ball.edges[e][1]);

        // tally the id-clusters of the outer configurations per middle cluster
        thread_local std::vector<int64_t> cnt1, cnt3;
        cnt1.assign(ball.n_vertices(), 0);
        cnt3.assign(ball.n_vertices(), 0);
        thread_local std::vector<int> roots;
        roots.clear();
        m.prepare(ball.n_vertices());
        explore(ball, p, s1, 0, m, [&](int v) {
            int r = uf.find(v);
            if (cnt1[r]++ == 0 && cnt3[r] == 0) roots.push_back(r);
            return true;
        });
        m.prepare(ball.n_vertices());
        explore(ball, p, s3, 0, m, [&](int v) {
            int r = uf.find(v);
            if (cnt3[r]++ == 0 && cnt1[r] == 0) roots.push_back(r);
            return true;
        });
        double total = 0;
        for (int r : roots) {
            total += static_cast<double>(cnt1[r]) * static_cast<double>(cnt3[r]);
            cnt1[r] = cnt3[r] = 0;
        }
        return total;
    });
}

Estimate iota_ratio(const grp::CayleyBall& ball, double p, const std::vector<int>& A,
                    int64_t trials, uint64_t seed, int threads) {
    check_p(p);
    if (A.empty()) throw std::invalid_argument("iota_ratio: A must be nonempty");
    std::vector<char> in_a(ball.n_vertices(), 0);
    for (int v : A) in_a.at(static_cast<size_t>(v)) = 1;

    struct Acc {
        double s = 0, c = 0, ss = 0, cc = 0, sc = 0;
    };
    Acc m2 = run_chunks<Acc>(
        trials, threads,
        [&](int64_t t, Acc& a) {
            uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
            Marks& m = tls_marks();

            // chi: size of the identity cluster
            m.prepare(ball.n_vertices());
            double chi = 0;
            explore(ball, p, stream, 0, m, [&](int) {
                ++chi;
                return true;
            });

            // numerator: sum over clusters of (#cluster-members in A)^2
            m.prepare(ball.n_vertices());
            double s = 0;
            for (int v : A) {
                if (m.mark[v] == m.stamp) continue;
                double cnt = 0;
                explore(ball, p, stream, v, m, [&](int u) {
                    cnt += in_a[u];
                    return true;
                });
                s += cnt * cnt;
            }
            a.s += s;
            a.c += chi;
            a.ss += s * s;
            a.cc += chi * chi;
            a.sc += s * chi;
        },
        [](Acc& into, const Acc& from) {
            into.s += from.s;
            into.c += from.c;
            into.ss += from.ss;
            into.cc += from.cc;
            into.sc += from.sc;
        });

    double n = static_cast<double>(trials);
    double ms = m2.s / n, mc = m2.c / n;
    double size_a = static_cast<double>(A.size());
    Estimate e;
    e.trials = trials;
    e.seed = seed;
    e.value = ms / (mc * size_a);
    if (trials > 1) {
        double vs = (m2.ss - n * ms * ms) / (n - 1);
        double vc = (m2.cc - n * mc * mc) / (n - 1);
        double cov = (m2.sc - n * ms * mc) / (n - 1);
        // delta method for the ratio of means
        double var = (vs / (mc * mc) + vc * ms * ms / (mc * mc * mc * mc) -
                      2.0 * cov * ms / (mc * mc * mc)) /
                     n;
        e.std_error = std::sqrt(std::max(0.0, var)) / size_a;
    }
    return e;
}

Estimate n_infinity_proxy(const grp::CayleyBall& ball, double p, int64_t trials,
                          uint64_t seed, int core_radius, int threads) {
    check_p(p);
    if (core_radius >= ball.radius)
        throw std::invalid_argument("n_infinity_proxy: core_radius must be < ball radius");
    std::vector<int> core;
    for (int v = 0; v < ball.n_vertices(); ++v)
        if (ball.norms[v] <= core_radius) core.push_back(v);
    return mc_mean(trials, seed, threads, [&](int64_t t) {
        uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
        Marks& m = tls_marks();
        m.prepare(ball.n_vertices());
        double count = 0;
        for (int c : core) {
            if (m.mark[c] == m.stamp) continue;
            bool touched = false;
            explore(ball, p, stream, c, m, [&](int v) {
                touched |= ball.norms[v] == ball.radius;
                return true;
            });
            count += touched ? 1 : 0;
        }
        return count;
    });
}

std::vector<int64_t> two_point_all(const grp::CayleyBall& ball, double p, int64_t trials,
                                   uint64_t seed, int threads) {
    check_p(p);
    (void)threads;  // additive counts; the single-threaded loop is already cheap
    std::vector<int64_t> hits(static_cast<size_t>(ball.n_vertices()), 0);
    Marks m;
    for (int64_t t = 0; t < trials; ++t) {
        uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
        m.prepare(ball.n_vertices());
        explore(ball, p, stream, 0, m, [&](int v) {
            ++hits[static_cast<size_t>(v)];
            return true;
        });
    }
    return hits;
}

// ---------------------------------------------------------------------------
// implicit-ball exploration

namespace {

struct LazyResult {
    int64_t size = 0;
    bool boundary = false;
    bool found = false;
};

// Cluster exploration on the word-norm ball without materializing it.  The
// coin for edge {u, v} is keyed by the canonical lesser endpoint plus the
// generator, making the configuration a pure function of (stream, edge).
LazyResult lazy_explore(const grp::Presentation& pres, int radius, double p, uint64_t stream,
                        const grp::GroupElement& start, const grp::GroupElement* target,
                        bool stop_at_boundary) {
    struct Node {
        grp::GroupElement g;
        int64_t norm;
        uint64_t hash;
    };
    LazyResult res;
    std::string target_key = target ? grp::letter_key(pres, *target) : std::string();
    std::unordered_set<std::string> visited;
    std::vector<Node> stack;

    auto push = [&](grp::GroupElement g, int64_t n) -> bool {
        std::string key = grp::letter_key(pres, g);
        if (!visited.insert(key).second) return true;
        ++res.size;
        if (target && key == target_key) {
            res.found = true;
            return false;
        }
        if (n == radius) {
            res.boundary = true;
            if (stop_at_boundary) return false;
        }
        uint64_t h = grp::element_hash(pres, g);
        stack.push_back({std::move(g), n, h});
        return true;
    };

    if (!push(start, grp::norm(pres, start))) return res;
    int n_gens = pres.n_generators();
    // order-2 generators give the same edge for +g and -g, so their coins are
    // keyed on the positive letter
    std::vector<bool> involution(static_cast<size_t>(n_gens), false);
    for (int gen = 0; gen < n_gens; ++gen) {
        auto [fi, local] = pres.locate(gen);
        const grp::Factor& f = pres.factors()[static_cast<size_t>(fi)];
        if (f.kind == grp::Kind::FreeProduct && f.orders[static_cast<size_t>(local)] == 2)
            involution[static_cast<size_t>(gen)] = true;
    }
    // per-signed-letter salts: index 2*gen for +, 2*gen+1 for -
    std::vector<uint64_t> salt(static_cast<size_t>(2 * n_gens));
    for (size_t i = 0; i < salt.size(); ++i) salt[i] = rng::mix(rng::kGolden * (i + 1));

    while (!stack.empty()) {
        Node u = std::move(stack.back());
        stack.pop_back();
        for (int gen = 0; gen < n_gens; ++gen) {
            for (int sign : {1, -1}) {
                if (sign < 0 && involution[static_cast<size_t>(gen)]) continue;
                grp::GroupElement v = grp::mul_letter(pres, u.g, sign * (gen + 1));
                int64_t vn = grp::norm(pres, v);
                if (vn > radius) continue;
                // coin keyed by the canonical lesser endpoint plus the signed
                // letter pointing away from it
                bool u_lesser = u.norm != vn ? u.norm < vn : grp::compare(pres, u.g, v) < 0;
                uint64_t lesser_hash = u_lesser ? u.hash : grp::element_hash(pres, v);
                int away_sign = u_lesser ? sign : -sign;
                if (involution[static_cast<size_t>(gen)]) away_sign = 1;
                size_t si = static_cast<size_t>(2 * gen + (away_sign < 0 ? 1 : 0));
                if (rng::uniform(stream, lesser_hash ^ salt[si]) >= p) continue;
                if (!push(std::move(v), vn)) return res;
            }
        }
    }
    return res;
}

}  // namespace

Estimate two_point_lazy(const grp::Presentation& pres, int radius, double p,
                        const grp::GroupElement& g, int64_t trials, uint64_t seed,
                        int threads) {
    check_p(p);
    if (grp::norm(pres, g) > radius)
        throw std::invalid_argument("two_point_lazy: g lies outside the ball");
    grp::GroupElement id = grp::identity(pres);
    return mc_mean(trials, seed, threads, [&](int64_t t) {
        uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
        return lazy_explore(pres, radius, p, stream, id, &g, false).found ? 1.0 : 0.0;
    });
}

Susceptibility susceptibility_lazy(const grp::Presentation& pres, int radius, double p,
                                   int64_t trials, uint64_t seed, int threads) {
    check_p(p);
    grp::GroupElement id = grp::identity(pres);
    struct Acc {
        MeanAcc mean;
        int64_t boundary = 0;
    };
    Acc total = run_chunks<Acc>(
        trials, threads,
        [&](int64_t t, Acc& a) {
            uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
            LazyResult r = lazy_explore(pres, radius, p, stream, id, nullptr, false);
            auto size = static_cast<double>(r.size);
            a.mean.sum += size;
            a.mean.sumsq += size * size;
            a.boundary += r.boundary ? 1 : 0;
        },
        [](Acc& into, const Acc& from) {
            into.mean.sum += from.mean.sum;
            into.mean.sumsq += from.mean.sumsq;
            into.boundary += from.boundary;
        });
    Susceptibility result;
    result.est = finish(total.mean, trials, seed);
    result.boundary_fraction = static_cast<double>(total.boundary) / static_cast<double>(trials);
    return result;
}

PcResult pc_estimate(const grp::Presentation& pres, int radius, int64_t trials,
                     uint64_t seed, double threshold, int threads) {
    if (radius < 1) throw std::invalid_argument("pc_estimate: radius must be >= 1");
    if (!(threshold > 0.0 && threshold < 1.0))
        throw std::invalid_argument("pc_estimate: threshold must lie in (0,1)");
    grp::GroupElement id = grp::identity(pres);

    // crossing probability with common random numbers: trial t uses the same
    // stream at every p, so the curve is exactly monotone in p
    auto crossing = [&](double p) {
        return mc_mean(trials, seed, threads, [&](int64_t t) {
            uint64_t stream = rng::trial_stream(seed, static_cast<uint64_t>(t));
            return lazy_explore(pres, radius, p, stream, id, nullptr, true).boundary ? 1.0
                                                                                     : 0.0;
        });
    };

    PcResult result;
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 20; ++it) {
        double mid = 0.5 * (lo + hi);
        Estimate c = crossing(mid);
        result.sweep.push_back({mid, c.value, c.std_error});
        if (c.value < threshold)
            lo = mid;
        else
            hi = mid;
    }
    std::sort(result.sweep.begin(), result.sweep.end());

    result.est.trials = trials;
    result.est.seed = seed;
    result.est.value = 0.5 * (lo + hi);
    // statistical error: binomial noise at the crossing divided by the local
    // slope of the sweep curve, floored by the bisection bracket width
    double slope = 0, se_c = 0;
    for (size_t i = 0; i + 1 < result.sweep.size(); ++i) {
        const auto& a = result.sweep[i];
        const auto& b = result.sweep[i + 1];
        if (a[1] <= threshold && threshold <= b[1] && b[0] > a[0]) {
            slope = (b[1] - a[1]) / (b[0] - a[0]);
            se_c = 0.5 * (a[2] + b[2]);
        }
    }
    double stat = slope > 0 ? se_c / slope : 0.0;
    result.est.std_error = std::max(0.5 * (hi - lo), stat);
    return result;
}

}  // namespace hyperperc::perc
