#include "report.hpp"

#include <cmath>
#include <fstream>

#include <fmt/format.h>

#include "ini.hpp"

namespace hybridgate::cli {

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return fmt::format("{:016x}", h);
}

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) v = 0.0; // drop the sign of -0
    return fmt::format("{:.11e}", v);
}

std::string metadata_line(const OutputContext& ctx) {
    return fmt::format("# hybridgate {} config_hash={} seed={} mode={}", kToolVersion, ctx.config_hash, ctx.seed,
                       ctx.mode);
}

void CsvTable::add_row(std::vector<Cell> row) {
    if (row.size() != header_.size()) throw std::logic_error("CSV row width does not match header");
    rows_.push_back(std::move(row));
}

std::string CsvTable::render(const OutputContext& ctx) const {
    std::string out = metadata_line(ctx) + "\n";
    for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
    out += "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ",";
            std::visit(
                [&](const auto& v) {
                    using T = std::decay_t<decltype(v)>;
                    if constexpr (std::is_same_v<T, double>)
                        out += format_number(v);
                    else if constexpr (std::is_same_v<T, long>)
                        out += std::to_string(v);
                    else
                        out += v;
                },
                row[i]);
        }
        out += "\n";
    }
    return out;
}

void write_output(const OutputContext& ctx, const std::string& name, const std::string& content) {
    std::error_code ec;
    std::filesystem::create_directories(ctx.dir, ec);
    if (ec) throw ConfigError("--out", "cannot create output directory '" + ctx.dir.string() + "': " + ec.message());
    const auto path = ctx.dir / name;
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("--out", "cannot write '" + path.string() + "'");
    f << content;
    if (!f) throw ConfigError("--out", "write failed for '" + path.string() + "'");
}

void write_csv(const OutputContext& ctx, const std::string& name, const CsvTable& table) {
    write_output(ctx, name, table.render(ctx));
}

void write_curve(const OutputContext& ctx, const std::string& subcommand, const std::string& quantity,
                 const std::string& x_name, const std::vector<double>& x, const std::vector<double>& y) {
    CsvTable t({x_name, quantity});
    for (std::size_t i = 0; i < x.size(); ++i) t.add_row({x[i], y[i]});
    write_csv(ctx, subcommand + "_" + quantity + ".csv", t);
}

Json report_header(const OutputContext& ctx, const std::string& subcommand) {
    Json j;
    j["tool"] = "hybridgate";
    j["tool_version"] = kToolVersion;
    j["subcommand"] = subcommand;
    j["config_hash"] = ctx.config_hash;
    j["seed"] = ctx.seed;
    j["mode"] = ctx.mode;
    return j;
}

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

void write_json(const OutputContext& ctx, const std::string& name, const Json& report) {
    write_output(ctx, name, report.dump(2) + "\n");
}

bool Check::pass() const {
    if (!std::isfinite(value)) return false;
    switch (kind) {
    case Kind::Within:
        return std::abs(value - expected) <= tolerance;
    case Kind::AtLeast:
        return value >= expected;
    case Kind::AtMost:
        return value <= expected;
    case Kind::Below:
        return value < expected;
    case Kind::Above:
        return value > expected;
    }
    return false;
}

Json Check::to_json() const {
    static constexpr const char* kinds[] = {"within", "at_least", "at_most", "below", "above"};
    Json j;
    j["name"] = name;
    j["value"] = number(value);
    j["expected"] = number(expected);
    j["tolerance"] = number(tolerance);
    j["comparison"] = kinds[static_cast<int>(kind)];
    j["pass"] = pass();
    return j;
}

} // namespace hybridgate::cli
