#pragma once

// Parameter sweeps over lambda_D: JSON config in, one CSV row per
// (variant, axis value) out.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "secrecy/config.hpp"

namespace secrecy::sweep {

enum class Output { sop_exact, sop_asymptotic, esr_exact, esr_high_snr, esr_asymptotic, mc, quad };

struct Variant {
    std::string id;
    SystemConfig cfg;  // base with overrides applied; dest_snr set per axis value
    double lambda_e_db = 0;
};

struct SweepSpec {
    SystemConfig base;
    double lambda_e_db = 0;
    std::string sweep_axis = "lambda_D_dB";
    std::vector<double> axis_values;  // dB
    std::vector<Variant> variants;    // never empty after parsing
    std::vector<Output> outputs;      // canonical order, no duplicates
    std::uint64_t trials = 100'000;
    std::uint64_t seed = 1;
    bool svg = false;

    bool wants(Output o) const;
};

/// Throws ConfigError naming the offending field.
SweepSpec parse_spec(const nlohmann::json& doc);
SweepSpec load_spec(const std::string& path);

/// flag > environment (SECRECY_LAB_SEED) > config.
std::uint64_t resolve_seed(std::optional<std::uint64_t> flag, const char* env, std::uint64_t config_seed);

struct Row {
    std::string variant_id;
    SystemConfig cfg;
    double lambda_d_db = 0;
    double lambda_e_db = 0;
    std::vector<double> values;  // aligned with columns()
};

struct Table {
    std::vector<std::string> columns;  // output columns only, after the fixed prefix
    std::vector<Row> rows;
};

/// Names of the output, stderr and delta columns, in CSV order.
std::vector<std::string> output_columns(const SweepSpec& spec);
extern const std::vector<std::string> kPrefixColumns;

/// Evaluates every row; row order is variant-major, then axis value.
/// Output is independent of `threads`.
Table evaluate(const SweepSpec& spec, unsigned threads = 1);

/// Tolerance flags for one row; empty when the row is clean.
std::vector<std::string> row_flags(const Table& t, const Row& r);

std::string format_number(double v);
void write_csv(const std::string& path, const Table& t);
std::string to_csv(const Table& t);

/// Header plus cells, for reading back emitted CSVs.
struct CsvData {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};
CsvData parse_csv(const std::string& text);

/// One SVG per variant and metric family, written next to `csv_path`.
std::vector<std::string> write_svgs(const std::string& csv_path, const Table& t);

}  // namespace secrecy::sweep
