#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

#include "hyperperc/config.hpp"
#include "hyperperc/group_element.hpp"
#include "hyperperc/set_expr.hpp"
#include "hyperperc/verify.hpp"

using namespace hyperperc;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::string temp_path(const std::string& tag) {
    return "/tmp/hyperperc_cli_" + tag + "_" + std::to_string(getpid());
}

RunResult run_bin(const std::string& args) {
    std::string out = temp_path("out"), err = temp_path("err");
    std::string cmd = std::string(HYPERPERC_BIN) + " " + args + " > " + out + " 2> " + err;
    int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    std::remove(out.c_str());
    std::remove(err.c_str());
    return r;
}

std::string write_config(const std::string& tag, const std::string& text) {
    std::string path = temp_path(tag) + ".toml";
    std::ofstream f(path);
    f << text;
    return path;
}

}  // namespace

TEST_CASE("config parser") {
    cfg::Config c = cfg::parse_text(
        "# comment\n"
        "alpha = 1\n"
        "[run]\n"
        "beta = two words  # trailing\n"
        "gamma = 0.5\n");
    CHECK(c.entries.size() == 3);
    CHECK(*c.find("alpha") == "1");
    CHECK(*c.find("run.beta") == "two words");
    CHECK(c.has("run.gamma"));
    CHECK_FALSE(c.has("beta"));  // section prefix is mandatory

    // errors name the offending line
    CHECK_THROWS_WITH_AS(cfg::parse_text("a = 1\nnonsense\n"),
                         doctest::Contains("line 2"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(cfg::parse_text("a = 1\na = 2\n"),
                         doctest::Contains("duplicate"), std::invalid_argument);
    CHECK_THROWS_AS(cfg::parse_text("[bad section\nx = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(cfg::parse_text("sp ace = 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(cfg::parse_text("empty =\n"), std::invalid_argument);
    CHECK_THROWS_AS(cfg::parse_file("/nonexistent/path.toml"), std::invalid_argument);
}

TEST_CASE("config reader consumes keys and rejects strays") {
    cfg::Config c = cfg::parse_text("n = 42\nx = 2.5\ns = hello\nstray = 1\n");
    cfg::Reader r(c);
    CHECK(r.require_int("n") == 42);
    CHECK(r.require_double("x") == 2.5);
    CHECK(r.get_str("s") == "hello");
    CHECK(r.get_int("missing", 7) == 7);
    CHECK_THROWS_WITH_AS(r.done(), doctest::Contains("stray"), std::invalid_argument);
    r.get_str("stray", "");
    CHECK_NOTHROW(r.done());

    cfg::Reader r2(c);
    CHECK_THROWS_AS(r2.require_int("s"), std::invalid_argument);
    CHECK_THROWS_AS(r2.require_double("s"), std::invalid_argument);
    CHECK_THROWS_AS(r2.get_str("absent"), std::invalid_argument);
}

TEST_CASE("set expressions") {
    auto f2 = grp::Presentation::parse("free:2");
    CHECK(expr::eval_set(f2, "sphere(2)").size() == 12);
    CHECK(expr::eval_set(f2, "ball(2)").size() == 17);
    CHECK(expr::eval_set(f2, "geodesic(a, 5)").size() == 6);  // id included
    CHECK(expr::eval_set(f2, "word(a^2 b)").size() == 1);
    // union dedupes: sphere(1) is inside ball(2)
    CHECK(expr::eval_set(f2, "union(ball(2), sphere(1))").size() == 17);
    CHECK(expr::eval_set(f2, "union(word(a), word(b), word(a))").size() == 2);

    // nested union with geodesics
    auto g = expr::eval_set(f2, "union(geodesic(a,3), geodesic(b,3))");
    CHECK(g.size() == 7);

    std::string path = temp_path("words") + ".txt";
    {
        std::ofstream f(path);
        f << "# header\na^2\nb a\n\na^2  # dup\n";
    }
    CHECK(expr::eval_set(f2, "file:" + path).size() == 2);
    std::remove(path.c_str());

    CHECK_THROWS_AS(expr::eval_set(f2, "blob(3)"), std::invalid_argument);
    CHECK_THROWS_AS(expr::eval_set(f2, "sphere(-1)"), std::invalid_argument);
    CHECK_THROWS_AS(expr::eval_set(f2, "sphere(2, 3)"), std::invalid_argument);
    CHECK_THROWS_AS(expr::eval_set(f2, ""), std::invalid_argument);
    CHECK_THROWS_AS(expr::eval_set(f2, "file:/no/such/file"), std::invalid_argument);
}

TEST_CASE("verify suites: coverage, determinism, fault injection") {
    CHECK(verify::suite_names().size() >= 12);

    auto results = verify::run_all(2026);
    CHECK(results.size() == verify::suite_names().size());
    for (const auto& r : results) {
        INFO(r.name, ": ", r.detail);
        CHECK(r.pass);
    }

    // same seed, byte-identical summary (no timing leaks into the text)
    CHECK(verify::summary(verify::run_all(7)) == verify::summary(verify::run_all(7)));

    auto faulty = verify::run_suite("branching-injective", 2026, "branching-collision");
    CHECK_FALSE(faulty.pass);
    CHECK(faulty.detail.find("collision") != std::string::npos);

    auto overflow = verify::run_suite("capacity-unit-bound", 2026, "capacity-overflow");
    CHECK_FALSE(overflow.pass);

    CHECK_THROWS_AS(verify::run_suite("no-such-suite", 1), std::invalid_argument);
}

TEST_CASE("binary: usage errors exit 1") {
    CHECK(run_bin("run /nonexistent/missing.toml").exit_code == 1);
    CHECK(run_bin("run /nonexistent/missing.toml").err.find("not found") !=
          std::string::npos);
    CHECK(run_bin("frobnicate").exit_code == 1);

    std::string bad = write_config("bad", "presentation = free:2\nquantity = chi\n"
                                          "radius = 8\np = 0.2\ntirals = 100\n");
    RunResult r = run_bin("run " + bad);
    CHECK(r.exit_code == 1);
    CHECK(r.err.find("tirals") != std::string::npos);
    std::remove(bad.c_str());
}

TEST_CASE("binary: critical-point run lands on 1/3") {
    std::string conf = write_config("pc", "presentation = free:2\nquantity = pc\n"
                                          "radius = 10\ntrials = 4000\nseed = 11\n");
    RunResult r = run_bin("run " + conf);
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["quantity"] == "pc");
    CHECK(j["presentation"] == "free:2");
    CHECK(std::abs(j["value"].get<double>() - 1.0 / 3.0) < 0.02);
    CHECK(j["sweep"].size() > 0);
    CHECK(j["config"]["trials"] == "4000");

    // reproducibility: the record's config echo regenerates the same outputs
    RunResult r2 = run_bin("run " + conf);
    nlohmann::json j2 = nlohmann::json::parse(r2.out);
    CHECK(j["value"] == j2["value"]);
    CHECK(j["std_error"] == j2["std_error"]);
    std::remove(conf.c_str());
}

TEST_CASE("binary: verify default run and planted fault") {
    RunResult ok = run_bin("verify --seed 2026");
    CHECK(ok.exit_code == 0);
    int pass_lines = 0;
    std::istringstream is(ok.out);
    for (std::string line; std::getline(is, line);)
        if (line.rfind("PASS ", 0) == 0) ++pass_lines;
    CHECK(pass_lines >= 12);
    CHECK(ok.out.find("suites passed") != std::string::npos);

    RunResult again = run_bin("verify --seed 2026");
    CHECK(again.out == ok.out);  // byte-identical summaries

    RunResult fault = run_bin("verify branching-injective --fault branching-collision");
    CHECK(fault.exit_code == 2);
    CHECK(fault.out.find("collision product=a^3") != std::string::npos);

    CHECK(run_bin("verify fkg --edges 10 --pairs 20").exit_code == 0);
}

TEST_CASE("binary: sweep CSV") {
    std::string conf = write_config("sweep", "presentation = free:2\np_min = 0\n"
                                             "p_max = 0.3\np_step = 0.05\n"
                                             "set = sphere(3)\n");
    RunResult r = run_bin("sweep " + conf);
    REQUIRE(r.exit_code == 0);
    std::istringstream is(r.out);
    std::string header, row0;
    std::getline(is, header);
    std::getline(is, row0);
    CHECK(header == "p,chi,gap_chi,iota,nabla");
    CHECK(row0.rfind("0,1,", 0) == 0);  // p=0: chi = 1
    int rows = 2;
    for (std::string line; std::getline(is, line);)
        if (!line.empty()) ++rows;
    CHECK(rows >= 6);
    std::remove(conf.c_str());

    std::string bad = write_config("sweepbad", "presentation = free:2\np_min = 0.2\n"
                                               "p_max = 0.1\np_step = 0.05\n");
    CHECK(run_bin("sweep " + bad).exit_code == 1);
    std::remove(bad.c_str());
}

TEST_CASE("binary: ball export and barrier family") {
    RunResult ball = run_bin("ball --presentation free:1 --radius 2");
    CHECK(ball.exit_code == 0);
    CHECK(ball.out.rfind("vertices 5 radius 2", 0) == 0);

    std::string conf = write_config("barrier", "presentation = free:2\nradius = 30\n"
                                               "step = 5\ncount = 4\n");
    RunResult bar = run_bin("barrier " + conf);
    CHECK(bar.exit_code == 0);
    int headers = 0;
    std::istringstream is(bar.out);
    for (std::string line; std::getline(is, line);) {
        if (line.empty() || line[0] != '{') continue;
        nlohmann::json j = nlohmann::json::parse(line);
        ++headers;
        CHECK(j["barrier"] == true);
        CHECK(j["capacity_within_unit"] == true);
        CHECK(j["ball_radius"] == 30);
        CHECK(j["level_index"] == headers);
    }
    CHECK(headers == 4);
    std::remove(conf.c_str());
}

TEST_CASE("binary: classifier subcommand") {
    std::string conf = write_config("classify", "presentation = free:2\nmode = magic\n"
                                                "set = ball(3)\nD = 1\neps = 0.1\n"
                                                "n_override = 2\n");
    RunResult r = run_bin("classify " + conf);
    REQUIRE(r.exit_code == 0);
    nlohmann::json j = nlohmann::json::parse(r.out);
    CHECK(j["accepted"].size() + j["problematic"].size() == j["set_size"].get<size_t>());
    CHECK(j["good"].size() >= 1);
    std::remove(conf.c_str());
}
