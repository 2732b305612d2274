#include "hyperperc/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hyperperc::cfg {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] void fail(int line, const std::string& what) {
    throw std::invalid_argument("config line " + std::to_string(line) + ": " + what);
}

bool valid_key(const std::string& k) {
    if (k.empty()) return false;
    for (char c : k)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

}  // namespace

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

const std::string* Config::find(const std::string& key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

Config parse_text(const std::string& text) {
    Config cfg;
    std::istringstream in(text);
    std::string line, section;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (size_t h = line.find('#'); h != std::string::npos) line.resize(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(ln, "unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!valid_key(section)) fail(ln, "bad section name '" + section + "'");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(ln, "expected `key = value`");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (!valid_key(key)) fail(ln, "bad key '" + key + "'");
        if (value.empty()) fail(ln, "empty value for key '" + key + "'");
        if (!section.empty()) key = section + "." + key;
        if (cfg.has(key)) fail(ln, "duplicate key '" + key + "'");
        cfg.entries.emplace_back(std::move(key), std::move(value));
    }
    return cfg;
}

Config parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not found: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

const std::string* Reader::look(const std::string& key) {
    used_.insert(key);
    return config_->find(key);
}

bool Reader::has(const std::string& key) { return look(key) != nullptr; }

std::string Reader::get_str(const std::string& key) {
    const std::string* v = look(key);
    if (!v) throw std::invalid_argument("config: missing required key '" + key + "'");
    return *v;
}

std::string Reader::get_str(const std::string& key, const std::string& fallback) {
    const std::string* v = look(key);
    return v ? *v : fallback;
}

int64_t Reader::require_int(const std::string& key) {
    std::string s = get_str(key);
    try {
        size_t pos = 0;
        int64_t v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not an integer: " + s);
    }
}

int64_t Reader::get_int(const std::string& key, int64_t fallback) {
    return look(key) ? require_int(key) : fallback;
}

double Reader::require_double(const std::string& key) {
    std::string s = get_str(key);
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config: key '" + key + "' is not a number: " + s);
    }
}

double Reader::get_double(const std::string& key, double fallback) {
    return look(key) ? require_double(key) : fallback;
}

void Reader::done() const {
    std::string unknown;
    for (const auto& [k, v] : config_->entries)
        if (!used_.count(k)) unknown += (unknown.empty() ? "" : ", ") + k;
    if (!unknown.empty())
        throw std::invalid_argument("config: unknown key(s): " + unknown);
}

}  // namespace hyperperc::cfg
