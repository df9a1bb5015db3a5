#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dlab {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Line-oriented `key = value` configuration with dotted sections.
/// '#' starts a comment; blank lines are ignored; keys are unique.
class Config {
public:
    Config() = default;

    static Config parse_string(const std::string& text);
    static Config parse_file(const std::string& path);

    bool has(const std::string& key) const { return kv_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;
    long long get_int(const std::string& key, long long def) const;
    bool get_bool(const std::string& key, bool def) const;

    void set(const std::string& key, const std::string& value) { kv_[key] = value; }

    /// every present key must appear in `known`; otherwise a ConfigError
    /// names the offender and the nearest valid key
    void require_known(const std::vector<std::string>& known) const;

    const std::map<std::string, std::string>& entries() const { return kv_; }
    std::string serialize() const; // re-parses to an equal config

    bool operator==(const Config& o) const { return kv_ == o.kv_; }

private:
    std::map<std::string, std::string> kv_;
};

/// edit distance used for the nearest-key suggestion
std::size_t levenshtein(const std::string& a, const std::string& b);

} // namespace dlab
