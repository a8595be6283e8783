#include "ini.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace hybridgate::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Collapses runs of whitespace so "[species  rb87]" and "[species rb87]" match.
std::string normalize_section(const std::string& s) {
    std::string out;
    bool space = false;
    for (char c : trim(s)) {
        if (c == ' ' || c == '\t') {
            space = true;
            continue;
        }
        if (space && !out.empty()) out += ' ';
        space = false;
        out += c;
    }
    return out;
}

std::string strip_comment(const std::string& line) {
    for (std::size_t i = 0; i < line.size(); ++i) {
        if (line[i] != '#' && line[i] != ';') continue;
        if (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t') return line.substr(0, i);
    }
    return line;
}

} // namespace

std::string qualified(const std::string& section, const std::string& key) {
    std::string s = section;
    for (char& c : s)
        if (c == ' ') c = '.';
    return key.empty() ? s : s + "." + key;
}

std::optional<double> parse_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    const char* first = t.data();
    if (*first == '+') ++first;
    double v = 0;
    const auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

Ini Ini::parse(const std::string& text) {
    Ini ini;
    std::istringstream in(text);
    std::string line;
    std::string current;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const std::string content = trim(strip_comment(line));
        if (content.empty()) continue;
        const std::string where = "line " + std::to_string(number);
        if (content.front() == '[') {
            if (content.back() != ']') throw ConfigError(where, "unterminated section header");
            current = normalize_section(content.substr(1, content.size() - 2));
            if (current.empty()) throw ConfigError(where, "empty section name");
            if (ini.sections_.count(current)) throw ConfigError(qualified(current, ""), "section appears twice");
            ini.sections_[current];
            ini.section_order_.push_back(current);
            continue;
        }
        const auto eq = content.find('=');
        if (eq == std::string::npos) throw ConfigError(where, "expected `key = value`");
        if (current.empty()) throw ConfigError(where, "key outside of any section");
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty()) throw ConfigError(where, "empty key");
        auto& section = ini.sections_[current];
        if (section.entries.count(key)) throw ConfigError(qualified(current, key), "key appears twice");
        section.entries[key] = {value, number};
        section.order.push_back(key);
    }
    return ini;
}

bool Ini::has(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    return s != sections_.end() && s->second.entries.count(key) > 0;
}

std::vector<std::string> Ini::sections_with_prefix(const std::string& prefix) const {
    std::vector<std::string> out;
    for (const auto& name : section_order_)
        if (name.size() > prefix.size() + 1 && name.compare(0, prefix.size(), prefix) == 0 &&
            name[prefix.size()] == ' ')
            out.push_back(name);
    return out;
}

std::vector<std::string> Ini::keys(const std::string& section) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return {};
    for (const auto& k : s->second.order) used_.insert(qualified(section, k));
    return s->second.order;
}

std::optional<std::string> Ini::raw(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return std::nullopt;
    const auto e = s->second.entries.find(key);
    if (e == s->second.entries.end()) return std::nullopt;
    used_.insert(qualified(section, key));
    return e->second.value;
}

std::string Ini::get_string(const std::string& section, const std::string& key) const {
    auto v = raw(section, key);
    if (!v) throw ConfigError(qualified(section, key), "missing required key");
    if (v->empty()) throw ConfigError(qualified(section, key), "empty value");
    return *v;
}

std::string Ini::get_string(const std::string& section, const std::string& key, const std::string& fallback) const {
    auto v = raw(section, key);
    return v ? *v : fallback;
}

double Ini::get_double(const std::string& section, const std::string& key) const {
    const std::string text = get_string(section, key);
    const auto v = parse_double(text);
    if (!v) throw ConfigError(qualified(section, key), "not a finite number: '" + text + "'");
    return *v;
}

double Ini::get_double(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? get_double(section, key) : fallback;
}

long Ini::get_long(const std::string& section, const std::string& key) const {
    const std::string text = get_string(section, key);
    long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ConfigError(qualified(section, key), "not an integer: '" + text + "'");
    return v;
}

long Ini::get_long(const std::string& section, const std::string& key, long fallback) const {
    return has(section, key) ? get_long(section, key) : fallback;
}

bool Ini::get_bool(const std::string& section, const std::string& key, bool fallback) const {
    const auto v = raw(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "1") return true;
    if (*v == "false" || *v == "no" || *v == "0") return false;
    throw ConfigError(qualified(section, key), "expected true or false, got '" + *v + "'");
}

void Ini::set(const std::string& section, const std::string& key, const std::string& value) {
    if (!sections_.count(section)) section_order_.push_back(section);
    auto& s = sections_[section];
    if (!s.entries.count(key)) s.order.push_back(key);
    s.entries[key] = {value, 0};
}

void Ini::reject_unused() const {
    for (const auto& name : section_order_) {
        const auto& s = sections_.at(name);
        for (const auto& k : s.order)
            if (!used_.count(qualified(name, k))) throw ConfigError(qualified(name, k), "unknown key");
    }
}

} // namespace hybridgate::cli
