#include "hyperperc/magic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "hyperperc/cayley_ball.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/free_word.hpp"

namespace hyperperc::magic {

double gromov(const grp::Presentation& pres, const grp::GroupElement& x,
              const grp::GroupElement& y, const grp::GroupElement& z) {
    return 0.5 * static_cast<double>(grp::word_distance(pres, x, y) +
                                     grp::word_distance(pres, x, z) -
                                     grp::word_distance(pres, y, z));
}

bool halfspace_contains(const grp::Presentation& pres, const grp::GroupElement& root,
                        const grp::GroupElement& dir, double D,
                        const grp::GroupElement& z) {
    return gromov(pres, root, dir, z) >= D;
}

bool anti_halfspace_contains(const grp::Presentation& pres, const grp::GroupElement& x,
                             const grp::GroupElement& y, double D,
                             const grp::GroupElement& z) {
    if (grp::word_distance(pres, x, z) <= kExclusionFactor * D) return false;
    return gromov(pres, x, y, z) <= kNearThreshold * D;
}

std::vector<grp::GroupElement> anti_halfspace_members(
    const grp::Presentation& pres, const grp::GroupElement& x, const grp::GroupElement& y,
    double D, const std::vector<grp::GroupElement>& candidates) {
    std::vector<grp::GroupElement> out;
    for (const auto& z : candidates)
        if (anti_halfspace_contains(pres, x, y, D, z)) out.push_back(z);
    return out;
}

namespace {

// canonical order used throughout: (norm, lexicographic letters); on free
// groups the norm is the letter count
bool letters_less(const std::vector<int>& u, const std::vector<int>& v) {
    if (u.size() != v.size()) return u.size() < v.size();
    return u < v;
}

std::vector<std::vector<int>> letters_of(const grp::Presentation& pres,
                                         const std::vector<grp::GroupElement>& A) {
    std::vector<std::vector<int>> out;
    out.reserve(A.size());
    for (const auto& g : A) out.push_back(grp::canonical_letters(pres, g));
    return out;
}

int64_t dist_letters(const std::vector<int>& u, const std::vector<int>& v) {
    return static_cast<int64_t>(u.size()) + static_cast<int64_t>(v.size()) -
           2 * word::common_prefix(u, v);
}

// first `len` letters of the reduced word u^-1 v (caller guarantees the word
// is at least that long)
std::vector<int> direction_prefix(const std::vector<int>& u, const std::vector<int>& v,
                                  int len) {
    int c = word::common_prefix(u, v);
    std::vector<int> out;
    out.reserve(static_cast<size_t>(len));
    int back = static_cast<int>(u.size()) - c;
    for (int i = 0; i < len; ++i) {
        if (i < back)
            out.push_back(-u[u.size() - 1 - static_cast<size_t>(i)]);
        else
            out.push_back(v[static_cast<size_t>(c + i - back)]);
    }
    return out;
}

uint64_t pack_prefix(const std::vector<int>& u, const std::vector<int>& v, int len) {
    int c = word::common_prefix(u, v);
    int back = static_cast<int>(u.size()) - c;
    uint64_t key = 0;
    for (int i = 0; i < len; ++i) {
        int letter = i < back ? -u[u.size() - 1 - static_cast<size_t>(i)]
                              : v[static_cast<size_t>(c + i - back)];
        uint64_t enc = letter > 0 ? static_cast<uint64_t>(letter)
                                  : static_cast<uint64_t>(32 - letter);
        key = (key << 6) | enc;
    }
    return key;
}

struct BranchStats {
    int64_t best1 = 0, best2 = 0;  // two largest branch populations
    int rep1 = -1, rep2 = -1;      // a witness element index inside each
    int64_t total_far = 0;         // elements with d(a, z) >= ceil(D)
};

int branch_len(double D) {
    int len = static_cast<int>(std::ceil(D));
    if (len < 1) throw std::invalid_argument("halfspace parameter D must be positive");
    if (len > 10) throw resource_error("branch prefix longer than 10 letters");
    return len;
}

BranchStats branch_stats(const std::vector<int>& a,
                         const std::vector<std::vector<int>>& A, int len) {
    std::vector<std::pair<uint64_t, int>> keys;
    keys.reserve(A.size());
    for (size_t i = 0; i < A.size(); ++i)
        if (dist_letters(a, A[i]) >= len)
            keys.emplace_back(pack_prefix(a, A[i], len), static_cast<int>(i));
    std::sort(keys.begin(), keys.end());
    BranchStats st;
    st.total_far = static_cast<int64_t>(keys.size());
    size_t i = 0;
    while (i < keys.size()) {
        size_t j = i;
        while (j < keys.size() && keys[j].first == keys[i].first) ++j;
        int64_t count = static_cast<int64_t>(j - i);
        if (count > st.best1) {
            st.best2 = st.best1;
            st.rep2 = st.rep1;
            st.best1 = count;
            st.rep1 = keys[i].second;
        } else if (count > st.best2) {
            st.best2 = count;
            st.rep2 = keys[i].second;
        }
        i = j;
    }
    return st;
}

grp::GroupElement branch_dir(const grp::Presentation& pres, const std::vector<int>& a,
                             const std::vector<std::vector<int>>& A, int rep, int len,
                             const grp::GroupElement& fallback) {
    if (rep < 0) return fallback;
    std::vector<int> w = a;
    for (int l : direction_prefix(a, A[static_cast<size_t>(rep)], len)) w.push_back(l);
    return grp::reduce(pres, w);
}

uint64_t saturating_ball_count(const grp::Presentation& pres, int radius) {
    constexpr uint64_t kSat = uint64_t(1) << 62;
    std::vector<uint64_t> counts = grp::sphere_counts(pres, radius);
    uint64_t total = 0;
    for (uint64_t c : counts) {
        if (c >= kSat || total >= kSat - c) return kSat;
        total += c;
    }
    return total;
}

}  // namespace

std::vector<grp::GroupElement> separated_subset(const grp::Presentation& pres,
                                                const std::vector<grp::GroupElement>& A,
                                                double r) {
    std::vector<std::vector<int>> letters = letters_of(pres, A);
    std::vector<int> order(A.size());
    for (size_t i = 0; i < A.size(); ++i) order[static_cast<size_t>(i)] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return letters_less(letters[static_cast<size_t>(i)], letters[static_cast<size_t>(j)]);
    });
    std::vector<int> kept;
    for (int i : order) {
        bool ok = true;
        for (int k : kept)
            if (dist_letters(letters[static_cast<size_t>(i)],
                             letters[static_cast<size_t>(k)]) < r) {
                ok = false;
                break;
            }
        if (ok) kept.push_back(i);
    }
    std::vector<grp::GroupElement> out;
    out.reserve(kept.size());
    for (int i : kept) out.push_back(A[static_cast<size_t>(i)]);
    return out;
}

PairResidual best_pair_residual(const grp::Presentation& pres, const grp::GroupElement& a,
                                const std::vector<grp::GroupElement>& A, double D) {
    if (!pres.is_tree())
        throw std::invalid_argument("best_pair_residual: free groups only");
    int len = branch_len(D);
    std::vector<int> al = grp::canonical_letters(pres, a);
    std::vector<std::vector<int>> letters = letters_of(pres, A);
    BranchStats st = branch_stats(al, letters, len);
    PairResidual out;
    out.residual = static_cast<int64_t>(A.size()) - st.best1 - st.best2;
    out.dir1 = branch_dir(pres, al, letters, st.rep1, len, a);
    out.dir2 = branch_dir(pres, al, letters, st.rep2, len, a);
    return out;
}

Classification magic_classify(const grp::Presentation& pres, int context_radius,
                              const std::vector<grp::GroupElement>& A_in, double D,
                              double eps, const ClassifyOptions& opt) {
    if (!pres.is_tree()) throw std::invalid_argument("magic_classify: free groups only");
    if (D <= 0 || eps <= 0) throw std::invalid_argument("magic_classify: D, eps > 0");
    int len = branch_len(D);

    // dedupe and sort canonically
    std::vector<std::vector<int>> letters = letters_of(pres, A_in);
    std::vector<int> order(A_in.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return letters_less(letters[static_cast<size_t>(i)], letters[static_cast<size_t>(j)]);
    });
    order.erase(std::unique(order.begin(), order.end(),
                            [&](int i, int j) {
                                return letters[static_cast<size_t>(i)] ==
                                       letters[static_cast<size_t>(j)];
                            }),
                order.end());
    std::vector<grp::GroupElement> A;
    std::vector<std::vector<int>> AL;
    for (int i : order) {
        A.push_back(A_in[static_cast<size_t>(i)]);
        AL.push_back(letters[static_cast<size_t>(i)]);
    }

    Classification cls;
    if (A.empty()) {
        cls.certified_fraction = 1;
        return cls;
    }

    int64_t max_norm = 0;
    for (const auto& l : AL) max_norm = std::max(max_norm, static_cast<int64_t>(l.size()));
    if (static_cast<double>(context_radius) < static_cast<double>(max_norm) + 6 * D)
        throw std::invalid_argument(
            "magic_classify: context radius " + std::to_string(context_radius) +
            " below max norm + 6D = " + std::to_string(static_cast<double>(max_norm) + 6 * D));

    double sep = opt.sep_override > 0 ? opt.sep_override : kSeparationFactor * D;
    uint64_t M = saturating_ball_count(pres, static_cast<int>(sep));
    uint64_t N;
    if (opt.n_override > 0) {
        N = opt.n_override;
    } else {
        double dn = std::ceil(2.0 * static_cast<double>(M) / eps);
        N = dn >= 9.0e18 ? (uint64_t(1) << 62) : static_cast<uint64_t>(dn);
    }
    cls.separation = sep;
    cls.m_occupancy = M;
    cls.n_threshold = N;

    // split A into accepted / problematic by the best two-branch residual
    std::vector<int> prob_idx;
    for (size_t i = 0; i < A.size(); ++i) {
        BranchStats st = branch_stats(AL[i], AL, len);
        int64_t residual = static_cast<int64_t>(A.size()) - st.best1 - st.best2;
        if (residual >= 0 && static_cast<uint64_t>(residual) >= N) {
            cls.problematic.push_back(A[i]);
            prob_idx.push_back(static_cast<int>(i));
        } else {
            cls.accepted.push_back(A[i]);
        }
    }

    // greedy separated subset of the problematic elements; the canonical
    // order refines distance-from-identity, so this is also the loop order
    std::vector<int> sep_idx;
    for (int i : prob_idx) {
        bool ok = true;
        for (int k : sep_idx)
            if (dist_letters(AL[static_cast<size_t>(i)], AL[static_cast<size_t>(k)]) < sep) {
                ok = false;
                break;
            }
        if (ok) sep_idx.push_back(i);
    }
    for (int i : sep_idx) cls.separated.push_back(A[static_cast<size_t>(i)]);

    // good/bad/undecided loop
    grp::GroupElement x0 = grp::identity(pres);
    enum : char { kNone = 0, kU, kG, kB };
    std::vector<char> status(sep_idx.size(), kNone);
    std::unordered_map<std::string, int> pos;  // letter_key -> index into sep_idx
    for (size_t i = 0; i < sep_idx.size(); ++i)
        pos[grp::letter_key(pres, A[static_cast<size_t>(sep_idx[i])])] = static_cast<int>(i);
    std::unordered_set<std::string> used_pair_members;
    size_t nu = 0;

    auto anti = [&](int ai, const grp::GroupElement& src, int zi) {
        // tree form: d(a, z) > 6D and (src|z)_a <= D
        const auto& a = AL[static_cast<size_t>(sep_idx[static_cast<size_t>(ai)])];
        const auto& z = AL[static_cast<size_t>(sep_idx[static_cast<size_t>(zi)])];
        if (static_cast<double>(dist_letters(a, z)) <= kExclusionFactor * D) return false;
        std::vector<int> sl = grp::canonical_letters(pres, src);
        double prod = 0.5 * static_cast<double>(dist_letters(a, sl) + dist_letters(a, z) -
                                                dist_letters(sl, z));
        return prod <= kNearThreshold * D;
    };

    for (size_t i = 0; i < sep_idx.size(); ++i) {
        const grp::GroupElement& ai = A[static_cast<size_t>(sep_idx[i])];
        std::string name = grp::to_string(pres, ai);
        if (status[i] == kG || status[i] == kB)
            throw std::logic_error("magic_classify: element revisited after final label");
        int b = -1;
        for (size_t z = 0; z < sep_idx.size(); ++z)
            if (anti(static_cast<int>(i), x0, static_cast<int>(z))) {
                b = static_cast<int>(z);
                break;
            }
        int c = -1;
        if (b >= 0) {
            const grp::GroupElement& be = A[static_cast<size_t>(sep_idx[static_cast<size_t>(b)])];
            for (size_t z = 0; z < sep_idx.size(); ++z)
                if (anti(static_cast<int>(i), x0, static_cast<int>(z)) &&
                    anti(static_cast<int>(i), be, static_cast<int>(z))) {
                    c = static_cast<int>(z);
                    break;
                }
        }
        if (c < 0) {
            if (status[i] == kU) --nu;
            status[i] = kG;
            GoodRecord rec;
            rec.a = ai;
            rec.b = b < 0 ? x0 : A[static_cast<size_t>(sep_idx[static_cast<size_t>(b)])];
            cls.good.push_back(std::move(rec));
            cls.events.push_back("good " + name +
                                 (b < 0 ? " (empty first anti-halfspace)"
                                        : " (empty second anti-halfspace)"));
        } else {
            if (status[i] == kU) --nu;
            status[i] = kB;
            for (int z : {b, c}) {
                auto zi = static_cast<size_t>(z);
                if (status[zi] == kG || status[zi] == kB)
                    throw std::logic_error(
                        "magic_classify: witness already carries a final label");
                std::string zkey =
                    grp::letter_key(pres, A[static_cast<size_t>(sep_idx[zi])]);
                if (!used_pair_members.insert(zkey).second)
                    throw std::logic_error("magic_classify: witness pairs overlap");
                if (status[zi] == kNone) {
                    status[zi] = kU;
                    ++nu;
                }
            }
            BadRecord rec;
            rec.a = ai;
            rec.b = A[static_cast<size_t>(sep_idx[static_cast<size_t>(b)])];
            rec.c = A[static_cast<size_t>(sep_idx[static_cast<size_t>(c)])];
            cls.events.push_back("bad " + name + " via " + grp::to_string(pres, rec.b) +
                                 ", " + grp::to_string(pres, rec.c));
            cls.bad.push_back(std::move(rec));
        }
        if (cls.bad.size() > nu + cls.good.size())
            throw std::logic_error("magic_classify: bad count exceeds undecided + good");
    }
    if (nu != 0) throw std::logic_error("magic_classify: undecided elements at termination");
    if (cls.bad.size() > cls.good.size())
        throw std::logic_error("magic_classify: more bad than good at termination");

    // residual sets K = A \ (H_D(a, id) u H_D(a, b)) for the good elements:
    // each must keep >= N elements (the element was problematic) and they
    // must be pairwise disjoint, which re-proves the acceptance bound
    std::vector<int> id_letters;
    std::unordered_set<std::string> residual_owner;
    for (auto& rec : cls.good) {
        std::vector<int> al = grp::canonical_letters(pres, rec.a);
        std::vector<int> bl = grp::canonical_letters(pres, rec.b);
        for (size_t z = 0; z < A.size(); ++z) {
            double p1 = 0.5 * static_cast<double>(dist_letters(al, id_letters) +
                                                  dist_letters(al, AL[z]) -
                                                  dist_letters(id_letters, AL[z]));
            double p2 = 0.5 * static_cast<double>(dist_letters(al, bl) + dist_letters(al, AL[z]) -
                                                  dist_letters(bl, AL[z]));
            if (p1 < D && p2 < D) rec.residual.push_back(A[z]);
        }
        if (rec.residual.size() < N)
            throw std::logic_error("magic_classify: good element with thin residual set");
        for (const auto& z : rec.residual)
            if (!residual_owner.insert(grp::letter_key(pres, z)).second)
                throw std::logic_error("magic_classify: residual sets intersect");
    }

    // arithmetic chain: #A1 <= M #A2 <= 2M #G <= 2M #A / N; when N was
    // derived as 2M/eps this is eps even if both counters saturated
    double epsg = 2.0 * static_cast<double>(M) / static_cast<double>(N);
    if (opt.n_override == 0) epsg = std::min(epsg, eps);
    cls.certified_fraction = std::max(0.0, 1.0 - epsg);
    if (static_cast<double>(cls.problematic.size()) >
        epsg * static_cast<double>(A.size()) * (1 + 1e-12) + 1e-9)
        throw std::logic_error("magic_classify: certified bound violated");
    return cls;
}

double single_halfspace_failure(const grp::Presentation& pres, int R, double D, int64_t N) {
    if (!pres.is_tree() || pres.n_generators() < 1)
        throw std::invalid_argument("single_halfspace_failure: free groups only");
    if (R < 0) throw std::invalid_argument("single_halfspace_failure: R >= 0");
    int len = branch_len(D);
    std::vector<std::vector<int>> AL;
    for (int i = 0; i <= R; ++i)
        AL.emplace_back(static_cast<size_t>(10) * static_cast<size_t>(i), 1);
    int64_t hits = 0;
    for (const auto& a : AL) {
        BranchStats st = branch_stats(a, AL, len);
        int64_t residual = static_cast<int64_t>(AL.size()) - st.best1;
        if (residual <= N) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(AL.size());
}

namespace {

// exhaustive scan: no reduced word of length <= max_len lies in both
// {d(z, q0) < d(z, q1)} and {d(z, q2) < d(z, q3)}
struct TranslateScan {
    std::array<std::vector<int>, 4> p;
    std::array<int, 4> plen{};
    int n_gens = 0;
    int max_len = 0;

    void check(int depth, int last, std::array<int, 4> cpl, unsigned on) const {
        bool in_h = plen[0] - 2 * cpl[0] < plen[1] - 2 * cpl[1];
        bool in_th = plen[2] - 2 * cpl[2] < plen[3] - 2 * cpl[3];
        if (in_h && in_th)
            throw std::logic_error("supporting_hyperplane: translate halfspace overlaps");
        if (depth == max_len) return;
        for (int g = 1; g <= n_gens; ++g)
            for (int sign : {1, -1}) {
                int letter = sign * g;
                if (letter == -last) continue;
                std::array<int, 4> nc = cpl;
                unsigned non = 0;
                for (int i = 0; i < 4; ++i)
                    if ((on >> i & 1u) && cpl[static_cast<size_t>(i)] < plen[static_cast<size_t>(i)] &&
                        p[static_cast<size_t>(i)][static_cast<size_t>(cpl[static_cast<size_t>(i)])] ==
                            letter) {
                        ++nc[static_cast<size_t>(i)];
                        non |= 1u << i;
                    }
                check(depth + 1, letter, nc, non);
            }
    }
};

}  // namespace

SupportResult supporting_hyperplane(const grp::Presentation& pres,
                                    const std::vector<grp::GroupElement>& A, int D,
                                    double eps, const SupportOptions& opt) {
    if (!pres.is_tree() || pres.n_generators() < 2)
        throw std::invalid_argument("supporting_hyperplane: need a free group of rank >= 2");
    if (D < 1) throw std::invalid_argument("supporting_hyperplane: D >= 1");
    if (A.empty()) throw std::invalid_argument("supporting_hyperplane: empty input set");

    std::vector<std::vector<int>> AL = letters_of(pres, A);
    int64_t max_norm = 0;
    for (const auto& l : AL) max_norm = std::max(max_norm, static_cast<int64_t>(l.size()));
    if (opt.certify_radius < max_norm + 2 * D + 2)
        throw std::invalid_argument("supporting_hyperplane: certifying ball too small, need radius >= " +
                                    std::to_string(max_norm + 2 * D + 2));

    SupportResult res;
    res.d0 = opt.d0_override > 0 ? opt.d0_override : 1e4 * (1 + 1 + 1);  // 1e4 (K1+K0+delta+1)
    int max_depth = opt.max_depth > 0
                        ? opt.max_depth
                        : static_cast<int>(A.size()) + static_cast<int>(max_norm) + 2;

    std::vector<int> aD(static_cast<size_t>(D), 1);
    std::vector<int> waD;  // w a^D with w the second generator
    waD.push_back(2);
    waD.insert(waD.end(), aD.begin(), aD.end());

    auto append = [](std::vector<int> w, const std::vector<int>& ext) {
        for (int l : ext) {
            if (!w.empty() && w.back() == -l)
                w.pop_back();
            else
                w.push_back(l);
        }
        return w;
    };
    auto violators = [&](const std::vector<int>& v) {
        std::vector<int> vaD = append(v, aD);
        int64_t count = 0;
        for (const auto& z : AL)
            if (dist_letters(z, v) >= dist_letters(z, vaD)) ++count;
        return count;
    };

    for (size_t idx = 0; idx < A.size(); ++idx) {
        SupportWitness w;
        w.a = A[idx];
        std::vector<int> v = append(AL[idx], aD);
        int depth = 0;
        while (violators(v) > 0 && depth < max_depth) {
            std::vector<int> v1 = append(v, aD);
            std::vector<int> v2 = append(v, waD);
            v = violators(v1) <= violators(v2) ? v1 : v2;
            ++depth;
        }
        w.found = violators(v) == 0;
        if (w.found) {
            w.b = grp::reduce(pres, v);
            w.dist = dist_letters(AL[idx], v);
            // h = b a^D w a^-D b^-1, conjugated one-step translate along the axis
            std::vector<int> h = append(v, aD);
            h.push_back(2);
            for (int i = 0; i < D; ++i) h = append(h, {-1});
            for (auto it = v.rbegin(); it != v.rend(); ++it) h = append(h, {-*it});
            w.translate = grp::reduce(pres, h);

            TranslateScan scan;
            scan.n_gens = pres.n_generators();
            scan.max_len = opt.certify_radius;
            scan.p[0] = v;
            scan.p[1] = append(v, aD);
            scan.p[2] = append(h, v);
            scan.p[3] = append(scan.p[2], aD);
            for (int i = 0; i < 4; ++i)
                scan.plen[static_cast<size_t>(i)] =
                    static_cast<int>(scan.p[static_cast<size_t>(i)].size());
            scan.check(0, 0, {0, 0, 0, 0}, 0xF);
            ++res.n_found;
        }
        res.witnesses.push_back(std::move(w));
    }
    if (static_cast<double>(res.n_found) <
        std::ceil((1 - eps) * static_cast<double>(A.size())) - 1e-9)
        throw std::logic_error("supporting_hyperplane: witness fraction below 1 - eps");
    return res;
}

}  // namespace hyperperc::magic
