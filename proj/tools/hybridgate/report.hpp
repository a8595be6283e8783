#pragma once

// Output writers. Numbers in CSV files use `%.11e` (12 significant digits);
// every CSV starts with a `#` metadata line, then the header row.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace hybridgate::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct OutputContext {
    std::filesystem::path dir;
    std::string config_hash; ///< 16 hex digits
    std::uint64_t seed = 0;
    std::string mode;
};

/// FNV-1a 64 of the raw bytes, as 16 lowercase hex digits.
std::string fnv1a_hex(const std::string& bytes);

std::string format_number(double v);

std::string metadata_line(const OutputContext& ctx);

using Cell = std::variant<double, long, std::string>;

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
    void add_row(std::vector<Cell> row);
    std::size_t rows() const { return rows_.size(); }
    std::string render(const OutputContext& ctx) const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<Cell>> rows_;
};

/// Writes `content` to ctx.dir / name, creating the directory if needed.
void write_output(const OutputContext& ctx, const std::string& name, const std::string& content);

void write_csv(const OutputContext& ctx, const std::string& name, const CsvTable& table);

/// Two-column plot file `<subcommand>_<quantity>.csv`.
void write_curve(const OutputContext& ctx, const std::string& subcommand, const std::string& quantity,
                 const std::string& x_name, const std::vector<double>& x, const std::vector<double>& y);

using Json = nlohmann::ordered_json;

/// Flat report header shared by every JSON output.
Json report_header(const OutputContext& ctx, const std::string& subcommand);

/// Non-finite values become null.
Json number(double v);

void write_json(const OutputContext& ctx, const std::string& name, const Json& report);

/// One entry of a report's `checks` array.
struct Check {
    enum class Kind { Within, AtLeast, AtMost, Below, Above };
    std::string name;
    double value;
    double expected;
    double tolerance; ///< absolute; unused by the one-sided kinds
    Kind kind = Kind::Within;

    bool pass() const;
    Json to_json() const;
};

} // namespace hybridgate::cli
