#pragma once

// Minimal INI reader: `[section]` headers, `key = value` lines, `#` or `;`
// comments. Every lookup is recorded so unused keys can be reported.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace hybridgate::cli {

/// Bad or missing configuration. `key` is "section.key" (or just the section).
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
    const std::string& key() const { return key_; }

private:
    std::string key_;
};

class Ini {
public:
    static Ini parse(const std::string& text);

    bool has_section(const std::string& section) const { return sections_.count(section) > 0; }
    bool has(const std::string& section, const std::string& key) const;
    /// Section names starting with `prefix` followed by a space, e.g. "species ".
    std::vector<std::string> sections_with_prefix(const std::string& prefix) const;
    /// Keys of a section in file order.
    std::vector<std::string> keys(const std::string& section) const;

    std::optional<std::string> raw(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key) const;
    std::string get_string(const std::string& section, const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    long get_long(const std::string& section, const std::string& key) const;
    long get_long(const std::string& section, const std::string& key, long fallback) const;
    bool get_bool(const std::string& section, const std::string& key, bool fallback) const;

    /// Replaces (or adds) a value. Used by sweeps.
    void set(const std::string& section, const std::string& key, const std::string& value);

    /// Throws ConfigError for the first key that was never looked up.
    void reject_unused() const;

private:
    struct Entry {
        std::string value;
        int line;
    };
    struct Section {
        std::vector<std::string> order;
        std::map<std::string, Entry> entries;
    };
    std::map<std::string, Section> sections_;
    std::vector<std::string> section_order_;
    mutable std::set<std::string> used_;
};

std::string qualified(const std::string& section, const std::string& key);

/// Strict decimal parse of the whole string.
std::optional<double> parse_double(const std::string& text);

} // namespace hybridgate::cli
