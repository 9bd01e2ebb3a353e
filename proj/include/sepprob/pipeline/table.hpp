#ifndef SEPPROB_PIPELINE_TABLE_HPP
#define SEPPROB_PIPELINE_TABLE_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sepprob/numeric/rational.hpp"

namespace sepprob {

struct TableRow {
  BigRational alpha;
  BigRational value;       // exact, or the exact value of the decimal literal
  std::string value_text;  // as written in the file
  bool is_rational = true;
  std::string provenance;
};

/// {"rows": [{"alpha": "1/2", "value": "29/64" | "0.4531...", "provenance": "..."}]}
/// Rows are kept sorted by alpha; duplicate alphas are rejected.
struct ProbabilityTable {
  std::vector<TableRow> rows;

  const TableRow* find(const BigRational& alpha) const;
};

ProbabilityTable parse_probability_table(std::string_view text);
ProbabilityTable load_probability_table(const std::filesystem::path& path);
std::string to_json(const ProbabilityTable& table);

/// The twenty printed rows: alpha, exact value, and the decimal as printed.
struct ReferenceRow {
  const char* alpha;
  const char* value;
  const char* printed;
};
std::span<const ReferenceRow> reference_rows();
ProbabilityTable reference_table();

enum class CheckStatus { Match, Mismatch, Unchecked };

struct TableCheckRow {
  BigRational alpha;
  std::string rendered;                // 6 significant figures
  std::optional<std::string> printed;  // reference decimal, when known
  CheckStatus status = CheckStatus::Unchecked;
};

struct TableCheckReport {
  std::vector<TableCheckRow> rows;

  size_t count(CheckStatus s) const;
  bool ok() const { return count(CheckStatus::Mismatch) == 0; }
  std::string to_json() const;
};

/// Renders each value to 6 significant figures and compares with the printed
/// decimal. Printed decimals sometimes omit trailing zeros ("0.0025994" for
/// 0.00259940), so both sides are compared with trailing zeros removed.
TableCheckReport table_check(const ProbabilityTable& table);

}  // namespace sepprob

#endif  // SEPPROB_PIPELINE_TABLE_HPP
