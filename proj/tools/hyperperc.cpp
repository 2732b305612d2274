// hyperperc: experiment front end.  Subcommands:
//   run CONFIG       compute one quantity (pc/chi/tau/triangle/iota/ninf) -> JSON
//   verify [SUITE..] run named invariant suites (default: all)
//   sweep CONFIG     CSV over a p-grid (exact tree trend columns or MC quantity)
//   ball             export a Cayley ball edge list
//   classify CONFIG  halfspace classifier / supporting-halfspace search -> JSON
//   barrier CONFIG   build a vertical barrier family, check it, export levels
// Exit codes: 0 success, 1 usage/config error, 2 property violation.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hyperperc/barrier.hpp"
#include "hyperperc/cayley_ball.hpp"
#include "hyperperc/config.hpp"
#include "hyperperc/errors.hpp"
#include "hyperperc/estimators.hpp"
#include "hyperperc/magic.hpp"
#include "hyperperc/rng.hpp"
#include "hyperperc/set_expr.hpp"
#include "hyperperc/tiny_graph.hpp"
#include "hyperperc/tree_exact.hpp"
#include "hyperperc/verify.hpp"

using nlohmann::json;
using namespace hyperperc;

namespace {

constexpr const char* kVersion = "1.0";
constexpr const char* kRecordSchema = "hyperperc-record-1";

struct CommonOpts {
    uint64_t seed = 0;
    bool seed_set = false;
    int threads = 1;
    std::string out;
    std::string format = "json";
};

void emit(const CommonOpts& opts, const std::string& text) {
    if (opts.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(opts.out);
    if (!f) throw std::invalid_argument("cannot open output file: " + opts.out);
    f << text;
}

json config_echo(const cfg::Config& c) {
    json j = json::object();
    for (const auto& [k, v] : c.entries) j[k] = v;
    return j;
}

// Survival recursion for the 2n-regular tree: probability that the cluster of
// the root reaches the boundary sphere of the given radius.
double tree_crossing(int rank, double p, int radius) {
    double s = 1.0;
    int deg = 2 * rank;
    for (int d = 1; d < radius; ++d) s = 1.0 - std::pow(1.0 - p * s, deg - 1);
    return 1.0 - std::pow(1.0 - p * s, deg);
}

// The crossing probability at the exact critical point: bisection against this
// threshold recovers p_c itself rather than the (radius-dependent) 0.5 point.
double critical_threshold(const grp::Presentation& pres, int radius) {
    if (!pres.is_tree())
        throw std::invalid_argument("threshold 'critical' is tree-exact only; "
                                    "give a numeric threshold");
    int rank = pres.factors()[0].rank;
    return tree_crossing(rank, 1.0 / (2 * rank - 1), radius);
}

int tree_rank(const grp::Presentation& pres) {
    if (!pres.is_tree())
        throw std::invalid_argument("exact tree quantity on a non-tree presentation");
    return pres.factors()[0].rank;
}

// ---- run --------------------------------------------------------------------

int cmd_run(const std::string& config_path, const CommonOpts& opts) {
    cfg::Config conf = cfg::parse_file(config_path);
    cfg::Reader r(conf);

    grp::Presentation pres = grp::Presentation::parse(r.get_str("presentation"));
    std::string quantity = r.get_str("quantity");
    int radius = static_cast<int>(r.require_int("radius"));
    int64_t trials = r.get_int("trials", 10000);
    uint64_t seed = opts.seed_set ? opts.seed
                                  : static_cast<uint64_t>(r.get_int("seed", 1));

    json rec;
    rec["schema"] = kRecordSchema;
    rec["version"] = kVersion;
    rec["quantity"] = quantity;
    rec["presentation"] = pres.literal();
    rec["radius"] = radius;
    rec["trials"] = trials;
    rec["seed"] = seed;
    rec["config"] = config_echo(conf);

    auto t0 = std::chrono::steady_clock::now();
    perc::Estimate est;

    if (quantity == "pc") {
        std::string th = r.get_str("threshold", "critical");
        double threshold =
            th == "critical" ? critical_threshold(pres, radius) : std::stod(th);
        r.done();
        perc::PcResult pc =
            perc::pc_estimate(pres, radius, trials, seed, threshold, opts.threads);
        est = pc.est;
        rec["p"] = nullptr;  // pc is the output, not an input
        rec["threshold"] = threshold;
        json sweep = json::array();
        for (const auto& row : pc.sweep)
            sweep.push_back({{"p", row[0]}, {"value", row[1]}, {"std_error", row[2]}});
        rec["sweep"] = sweep;
    } else if (quantity == "chi") {
        double p = r.require_double("p");
        r.done();
        if (pres.is_tree()) {
            est = perc::susceptibility_lazy(pres, radius, p, trials, seed, opts.threads).est;
        } else {
            grp::CayleyBall ball = grp::build_ball(pres, radius);
            est = perc::susceptibility(ball, p, trials, seed, opts.threads).est;
        }
        rec["p"] = p;
    } else if (quantity == "tau") {
        double p = r.require_double("p");
        grp::GroupElement g = grp::parse_word(pres, r.get_str("word"));
        r.done();
        if (pres.is_tree()) {
            est = perc::two_point_lazy(pres, radius, p, g, trials, seed, opts.threads);
        } else {
            grp::CayleyBall ball = grp::build_ball(pres, radius);
            est = perc::two_point(ball, p, g, trials, seed, opts.threads);
        }
        rec["p"] = p;
        rec["word"] = grp::to_string(pres, g);
    } else if (quantity == "triangle") {
        double p = r.require_double("p");
        r.done();
        grp::CayleyBall ball = grp::build_ball(pres, radius);
        est = perc::triangle_mc(ball, p, trials, seed, opts.threads);
        rec["p"] = p;
    } else if (quantity == "iota") {
        double p = r.require_double("p");
        std::string set_text = r.get_str("set");
        r.done();
        grp::CayleyBall ball = grp::build_ball(pres, radius);
        std::vector<int> A;
        for (const auto& g : expr::eval_set(pres, set_text)) {
            int v = ball.find(g);
            if (v < 0)
                throw std::invalid_argument("iota: set element outside ball(" +
                                            std::to_string(radius) + ")");
            A.push_back(v);
        }
        est = perc::iota_ratio(ball, p, A, trials, seed, opts.threads);
        rec["p"] = p;
        rec["set"] = set_text;
    } else if (quantity == "ninf") {
        double p = r.require_double("p");
        int core = static_cast<int>(r.get_int("core_radius", radius / 2));
        r.done();
        grp::CayleyBall ball = grp::build_ball(pres, radius);
        est = perc::n_infinity_proxy(ball, p, trials, seed, core, opts.threads);
        rec["p"] = p;
        rec["core_radius"] = core;
    } else {
        throw std::invalid_argument("unknown quantity '" + quantity +
                                    "' (pc, chi, tau, triangle, iota, ninf)");
    }

    auto t1 = std::chrono::steady_clock::now();
    rec["value"] = est.value;
    rec["std_error"] = est.std_error;
    rec["wall_time_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();

    emit(opts, rec.dump(2) + "\n");
    return 0;
}

// ---- verify -----------------------------------------------------------------

// ad-hoc positive-association sweep honoring `verify fkg --edges E --pairs P`
verify::SuiteResult fkg_sweep(uint64_t seed, int max_edges, int pairs) {
    double worst = 1e300;
    int done = 0;
    uint64_t s = rng::mix(seed ^ 0xF96ull);
    for (int i = 0; done < pairs; ++i) {
        uint64_t ctr = static_cast<uint64_t>(i) * 16;
        auto draw = [&](uint64_t mod) { return rng::value(s, ctr++) % mod; };
        int n = 4 + static_cast<int>(draw(4));
        std::vector<std::pair<int, int>> edges;
        for (int v = 1; v < n; ++v)
            edges.emplace_back(static_cast<int>(draw(static_cast<uint64_t>(v))), v);
        while (static_cast<int>(edges.size()) < max_edges) {
            int u = static_cast<int>(draw(static_cast<uint64_t>(n)));
            int v = static_cast<int>(draw(static_cast<uint64_t>(n)));
            bool dup = u == v;
            for (auto [a, b] : edges)
                if ((a == u && b == v) || (a == v && b == u)) dup = true;
            if (dup) break;
            edges.emplace_back(u, v);
        }
        oracle::TinyGraph g = oracle::TinyGraph::make(n, std::move(edges));
        auto A = oracle::ConnectionEvent::connect(0, g.n - 1);
        auto B = oracle::ConnectionEvent::edge_open(0);
        for (const auto& rep : oracle::check_fkg(g, A, B, {0.2, 0.5, 0.8}))
            worst = std::min(worst, rep.margin);
        ++done;
    }
    std::ostringstream d;
    d << "pairs=" << pairs << " max_edges=" << max_edges << " worst margin=" << worst;
    return {"fkg", worst >= -1e-12, d.str()};
}

int cmd_verify(const std::vector<std::string>& suites, const CommonOpts& opts,
               const std::string& fault, int edges, int pairs) {
    uint64_t seed = opts.seed_set ? opts.seed : 2026;
    std::vector<verify::SuiteResult> results;
    if (suites.empty()) {
        results = verify::run_all(seed, fault);
    } else {
        for (const auto& name : suites) {
            if (name == "fkg")
                results.push_back(fkg_sweep(seed, edges, pairs));
            else
                results.push_back(verify::run_suite(name, seed, fault));
        }
    }
    emit(opts, verify::summary(results));
    for (const auto& r : results)
        if (!r.pass) return 2;
    return 0;
}

// ---- sweep ------------------------------------------------------------------

int cmd_sweep(const std::string& config_path, const CommonOpts& opts) {
    cfg::Config conf = cfg::parse_file(config_path);
    cfg::Reader r(conf);
    grp::Presentation pres = grp::Presentation::parse(r.get_str("presentation"));
    double p_min = r.require_double("p_min");
    double p_max = r.require_double("p_max");
    double p_step = r.require_double("p_step");
    if (p_min < 0 || p_max > 1 || p_step <= 0 || p_max < p_min)
        throw std::invalid_argument("sweep: need 0 <= p_min <= p_max <= 1, p_step > 0");
    std::string mode = r.get_str("mode", "trend");
    std::ostringstream csv;
    csv.setf(std::ios::fmtflags(0), std::ios::floatfield);
    csv.precision(12);

    if (mode == "trend") {
        // exact tree columns: chi, (pc - p) chi, iota for the configured set, nabla
        int rank = tree_rank(pres);
        std::string set_text = r.get_str("set", "sphere(4)");
        int nabla_radius = static_cast<int>(r.get_int("nabla_radius", 30));
        int chi_radius = static_cast<int>(r.get_int("chi_radius", 2000));
        r.done();
        auto A = expr::eval_set(pres, set_text);
        double pc = tree::pc(rank);
        csv << "p,chi,gap_chi,iota,nabla\n";
        for (double p = p_min; p <= p_max + 1e-12; p += p_step) {
            if (p >= pc) break;  // closed forms hold strictly below criticality
            double chi = tree::chi_closed(rank, p);
            double iota = tree::iota_exact(pres, A, p, chi_radius);
            double nabla = tree::nabla_truncated(rank, p, nabla_radius).value;
            csv << p << "," << chi << "," << (pc - p) * chi << "," << iota << ","
                << nabla << "\n";
        }
    } else if (mode == "quantity") {
        std::string quantity = r.get_str("quantity");
        int radius = static_cast<int>(r.require_int("radius"));
        int64_t trials = r.get_int("trials", 4000);
        uint64_t seed = opts.seed_set ? opts.seed
                                      : static_cast<uint64_t>(r.get_int("seed", 1));
        grp::GroupElement g = grp::identity(pres);
        if (quantity == "tau") g = grp::parse_word(pres, r.get_str("word"));
        r.done();
        csv << "p,value,std_error\n";
        for (double p = p_min; p <= p_max + 1e-12; p += p_step) {
            perc::Estimate est;
            if (quantity == "chi")
                est = perc::susceptibility_lazy(pres, radius, p, trials, seed,
                                                opts.threads)
                          .est;
            else if (quantity == "tau")
                est = perc::two_point_lazy(pres, radius, p, g, trials, seed,
                                           opts.threads);
            else
                throw std::invalid_argument("sweep quantity must be chi or tau");
            csv << p << "," << est.value << "," << est.std_error << "\n";
        }
    } else {
        throw std::invalid_argument("sweep mode must be 'trend' or 'quantity'");
    }
    emit(opts, csv.str());
    return 0;
}

// ---- ball -------------------------------------------------------------------

int cmd_ball(const std::string& literal, int radius, const CommonOpts& opts) {
    grp::Presentation pres = grp::Presentation::parse(literal);
    grp::CayleyBall ball = grp::build_ball(pres, radius);
    std::ostringstream os;
    grp::write_ball(ball, os);
    emit(opts, os.str());
    return 0;
}

// ---- classify ---------------------------------------------------------------

json element_list(const grp::Presentation& pres,
                  const std::vector<grp::GroupElement>& v) {
    json j = json::array();
    for (const auto& g : v) j.push_back(grp::to_string(pres, g));
    return j;
}

int cmd_classify(const std::string& config_path, const CommonOpts& opts) {
    cfg::Config conf = cfg::parse_file(config_path);
    cfg::Reader r(conf);
    grp::Presentation pres = grp::Presentation::parse(r.get_str("presentation"));
    std::string mode = r.get_str("mode", "magic");
    auto A = expr::eval_set(pres, r.get_str("set"));
    double D = r.require_double("D");
    double eps = r.get_double("eps", 0.1);
    json rec;
    rec["schema"] = kRecordSchema;
    rec["version"] = kVersion;
    rec["mode"] = mode;
    rec["presentation"] = pres.literal();
    rec["set_size"] = A.size();
    rec["D"] = D;
    rec["eps"] = eps;
    rec["config"] = config_echo(conf);

    if (mode == "magic") {
        int64_t max_norm = 0;
        for (const auto& g : A) max_norm = std::max(max_norm, grp::norm(pres, g));
        int context = static_cast<int>(
            r.get_int("context_radius", max_norm + static_cast<int64_t>(6 * D) + 1));
        magic::ClassifyOptions copt;
        copt.n_override = static_cast<uint64_t>(r.get_int("n_override", 0));
        copt.sep_override = r.get_double("sep_override", 0);
        r.done();
        magic::Classification c = magic::magic_classify(pres, context, A, D, eps, copt);
        rec["accepted"] = element_list(pres, c.accepted);
        rec["problematic"] = element_list(pres, c.problematic);
        rec["separated"] = element_list(pres, c.separated);
        json good = json::array();
        for (const auto& g : c.good)
            good.push_back({{"a", grp::to_string(pres, g.a)},
                            {"b", grp::to_string(pres, g.b)},
                            {"residual", element_list(pres, g.residual)}});
        rec["good"] = good;
        json bad = json::array();
        for (const auto& b : c.bad)
            bad.push_back({{"a", grp::to_string(pres, b.a)},
                           {"b", grp::to_string(pres, b.b)},
                           {"c", grp::to_string(pres, b.c)}});
        rec["bad"] = bad;
        rec["n_threshold"] = c.n_threshold;
        rec["certified_fraction"] = c.certified_fraction;
        rec["events"] = c.events;
        emit(opts, rec.dump(2) + "\n");
        double frac =
            static_cast<double>(c.accepted.size()) / static_cast<double>(A.size());
        return frac + 1e-12 >= c.certified_fraction ? 0 : 2;
    }
    if (mode == "supporting") {
        magic::SupportOptions sopt;
        sopt.certify_radius = static_cast<int>(r.get_int("certify_radius", 12));
        r.done();
        magic::SupportResult res = magic::supporting_hyperplane(
            pres, A, static_cast<int>(D), eps, sopt);
        json wit = json::array();
        for (const auto& w : res.witnesses)
            wit.push_back({{"a", grp::to_string(pres, w.a)},
                           {"b", grp::to_string(pres, w.b)},
                           {"translate", grp::to_string(pres, w.translate)},
                           {"dist", w.dist},
                           {"found", w.found}});
        rec["witnesses"] = wit;
        rec["n_found"] = res.n_found;
        rec["d0"] = res.d0;
        emit(opts, rec.dump(2) + "\n");
        return res.n_found == A.size() ? 0 : 2;
    }
    throw std::invalid_argument("classify mode must be 'magic' or 'supporting'");
}

// ---- barrier ----------------------------------------------------------------

int cmd_barrier(const std::string& config_path, const CommonOpts& opts) {
    cfg::Config conf = cfg::parse_file(config_path);
    cfg::Reader r(conf);
    grp::Presentation pres = grp::Presentation::parse(r.get_str("presentation"));
    int radius = static_cast<int>(r.require_int("radius"));
    int step = static_cast<int>(r.require_int("step"));
    int count = static_cast<int>(r.require_int("count"));
    double p = r.get_double("p", 1.0 / (2 * tree_rank(pres) - 1));
    std::string targets_text =
        r.get_str("targets", "word(a^" + std::to_string(radius) + ")");
    r.done();

    barrier::BarrierFamily fam = barrier::vertical_barriers(pres, radius, step, count);
    auto targets = expr::eval_set(pres, targets_text);

    std::ostringstream os;
    bool violated = false;
    for (size_t i = 0; i < fam.levels.size(); ++i) {
        const auto& level = fam.levels[i];
        barrier::BarrierCheck chk =
            barrier::is_barrier(pres, level, grp::identity(pres), targets, radius);
        barrier::Capacity cap = barrier::branching_capacity(pres, level, p);
        if (!chk.barrier || !cap.within_unit) violated = true;
        json header;
        header["params"] = {{"step", step}, {"count", count}, {"p", p}};
        header["ball_radius"] = radius;
        header["level_index"] = i + 1;
        header["size"] = level.size();
        header["barrier"] = chk.barrier;
        header["vacuous_warnings"] = chk.warnings.size();
        header["capacity"] = cap.value;
        header["capacity_within_unit"] = cap.within_unit;
        os << header.dump() << "\n";
        for (const auto& g : level) os << grp::to_string(pres, g) << "\n";
        os << "\n";
    }
    emit(opts, os.str());
    return violated ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"percolation laboratory on Cayley graphs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    CommonOpts opts;
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--seed", opts.seed)->each([&](const std::string&) {
            opts.seed_set = true;
        });
        sub->add_option("--threads", opts.threads)->check(CLI::PositiveNumber);
        sub->add_option("--out", opts.out);
        sub->add_option("--format", opts.format)
            ->check(CLI::IsMember({"json", "csv"}));
    };

    std::string config_path, fault, ball_pres = "free:2";
    std::vector<std::string> suites;
    int ball_radius = 4, edges = 10, pairs = 20;

    CLI::App* run = app.add_subcommand("run", "compute one quantity from a config");
    run->add_option("config", config_path)->required();
    add_common(run);

    CLI::App* ver = app.add_subcommand("verify", "run invariant suites");
    ver->add_option("suites", suites, "suite names (default: all)");
    ver->add_option("--fault", fault, "fault-injection token");
    ver->add_option("--edges", edges);
    ver->add_option("--pairs", pairs);
    add_common(ver);

    CLI::App* swp = app.add_subcommand("sweep", "CSV over a p-grid");
    swp->add_option("config", config_path)->required();
    add_common(swp);

    CLI::App* bal = app.add_subcommand("ball", "export a Cayley ball edge list");
    bal->add_option("--presentation", ball_pres);
    bal->add_option("--radius", ball_radius)->check(CLI::NonNegativeNumber);
    add_common(bal);

    CLI::App* cls = app.add_subcommand("classify", "halfspace classification");
    cls->add_option("config", config_path)->required();
    add_common(cls);

    CLI::App* bar = app.add_subcommand("barrier", "build and check a barrier family");
    bar->add_option("config", config_path)->required();
    add_common(bar);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, opts);
        if (ver->parsed()) return cmd_verify(suites, opts, fault, edges, pairs);
        if (swp->parsed()) return cmd_sweep(config_path, opts);
        if (bal->parsed()) return cmd_ball(ball_pres, ball_radius, opts);
        if (cls->parsed()) return cmd_classify(config_path, opts);
        if (bar->parsed()) return cmd_barrier(config_path, opts);
    } catch (const resource_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::logic_error& e) {
        // violated bookkeeping invariants inside a check are property failures
        std::cerr << "violation: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
