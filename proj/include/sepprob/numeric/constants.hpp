#ifndef SEPPROB_NUMERIC_CONSTANTS_HPP
#define SEPPROB_NUMERIC_CONSTANTS_HPP

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "sepprob/numeric/bigfloat.hpp"

namespace sepprob {

struct NamedConstant {
  std::string name;
  std::string decimal;
  std::string description;
  std::string provenance;

  int stored_digits() const;
  BigRational exact() const;
};

/// Named high-precision constants loaded from JSON:
///   {"pi": {"decimal": "3.14...", "description": "...", "provenance": "..."}, ...}
///
/// Note: "gauss_agm" stores agm(1, sqrt(2)) itself, not Gauss's constant
/// (its reciprocal).
class ConstantTable {
 public:
  static constexpr int kMinStoredDigits = 200;

  static ConstantTable from_json(std::string_view text);
  static ConstantTable load(const std::filesystem::path& path);
  /// Copy of data/constants.json compiled into the library.
  static const ConstantTable& builtin();

  bool contains(std::string_view name) const;
  const NamedConstant& at(std::string_view name) const;
  std::vector<std::string> names() const;

  /// The constant rounded to `digits` significant digits.
  BigFloat lookup(std::string_view name, int digits) const;

 private:
  std::map<std::string, NamedConstant, std::less<>> entries_;
};

inline BigFloat constant_lookup(std::string_view name, int digits,
                                const ConstantTable& table = ConstantTable::builtin()) {
  return table.lookup(name, digits);
}

}  // namespace sepprob

#endif  // SEPPROB_NUMERIC_CONSTANTS_HPP
