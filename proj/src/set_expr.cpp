#include "hyperperc/set_expr.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <stdexcept>

#include "hyperperc/cayley_ball.hpp"
#include "hyperperc/free_word.hpp"

namespace hyperperc::expr {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& what, const std::string& frag) {
    throw std::invalid_argument("set expression: " + what + " in '" + frag + "'");
}

// splits on top-level commas only
std::vector<std::string> split_args(const std::string& s) {
    std::vector<std::string> out;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

int parse_count(const std::string& s, const std::string& frag) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size() || v < 0) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        fail("expected a nonnegative integer, got '" + s + "'", frag);
    }
}

std::vector<grp::GroupElement> norm_slice(const grp::Presentation& pres, int radius,
                                          bool sphere_only) {
    if (pres.is_tree())
        return sphere_only ? word::sphere_elements(pres, radius)
                           : word::ball_elements(pres, radius);
    grp::CayleyBall ball = grp::build_ball(pres, radius);
    std::vector<grp::GroupElement> out;
    for (int v = 0; v < ball.n_vertices(); ++v)
        if (!sphere_only || ball.norms[static_cast<size_t>(v)] == radius)
            out.push_back(ball.vertices[static_cast<size_t>(v)]);
    return out;
}

void eval_into(const grp::Presentation& pres, const std::string& text,
               std::vector<grp::GroupElement>& out) {
    std::string s = trim(text);
    if (s.empty()) fail("empty expression", text);

    if (s.rfind("file:", 0) == 0) {
        std::string path = trim(s.substr(5));
        std::ifstream in(path);
        if (!in) fail("cannot open file '" + path + "'", s);
        std::string line;
        while (std::getline(in, line)) {
            if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
            line = trim(line);
            if (!line.empty()) out.push_back(grp::parse_word(pres, line));
        }
        return;
    }

    size_t open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        fail("expected op(args), file:path", s);
    std::string op = trim(s.substr(0, open));
    std::vector<std::string> args = split_args(s.substr(open + 1, s.size() - open - 2));

    if (op == "sphere" || op == "ball") {
        if (args.size() != 1) fail(op + " takes one argument", s);
        int k = parse_count(args[0], s);
        for (auto& g : norm_slice(pres, k, op == "sphere")) out.push_back(std::move(g));
    } else if (op == "geodesic") {
        if (args.size() != 2) fail("geodesic takes (word, count)", s);
        grp::GroupElement step = grp::parse_word(pres, args[0]);
        int n = parse_count(args[1], s);
        grp::GroupElement g = grp::identity(pres);
        out.push_back(g);
        for (int i = 1; i <= n; ++i) {
            g = grp::mul(pres, g, step);
            out.push_back(g);
        }
    } else if (op == "word") {
        if (args.size() != 1) fail("word takes one argument", s);
        out.push_back(grp::parse_word(pres, args[0]));
    } else if (op == "union") {
        if (args.empty()) fail("union needs at least one argument", s);
        for (const std::string& a : args) eval_into(pres, a, out);
    } else {
        fail("unknown op '" + op + "'", s);
    }
}

}  // namespace

std::vector<grp::GroupElement> eval_set(const grp::Presentation& pres,
                                        const std::string& text) {
    std::vector<grp::GroupElement> out;
    eval_into(pres, text, out);
    std::sort(out.begin(), out.end(),
              [&](const grp::GroupElement& a, const grp::GroupElement& b) {
                  return grp::compare(pres, a, b) < 0;
              });
    out.erase(std::unique(out.begin(), out.end(),
                          [&](const grp::GroupElement& a, const grp::GroupElement& b) {
                              return grp::compare(pres, a, b) == 0;
                          }),
              out.end());
    return out;
}

}  // namespace hyperperc::expr
