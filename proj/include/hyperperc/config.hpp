#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace hyperperc::cfg {

// Flat key-value experiment configuration.  One `key = value` per line,
// `#` comments, optional `[section]` headers that prefix following keys as
// `section.key` (one level only).  Duplicate keys are rejected so a config
// file always means one thing.
struct Config {
    std::vector<std::pair<std::string, std::string>> entries;

    bool has(const std::string& key) const;
    const std::string* find(const std::string& key) const;
};

// Both throw std::invalid_argument naming the offending line.
Config parse_text(const std::string& text);
Config parse_file(const std::string& path);

// Typed accessor that tracks which keys were consumed; done() rejects any
// key the caller never asked about, so misspelled options fail loudly
// instead of silently using a default.
class Reader {
public:
    explicit Reader(const Config& c) : config_(&c) {}

    bool has(const std::string& key);
    std::string get_str(const std::string& key);
    std::string get_str(const std::string& key, const std::string& fallback);
    int64_t get_int(const std::string& key, int64_t fallback);
    int64_t require_int(const std::string& key);
    double get_double(const std::string& key, double fallback);
    double require_double(const std::string& key);

    // throws listing every unconsumed key
    void done() const;

private:
    const std::string* look(const std::string& key);
    const Config* config_;
    std::set<std::string> used_;
};

}  // namespace hyperperc::cfg
