#include "sepprob/numeric/constants.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sepprob/errors.hpp"
#include "sepprob/numeric/decimal.hpp"

namespace sepprob {

extern const char* const kBuiltinConstantsJson;

int NamedConstant::stored_digits() const { return parse_decimal(decimal).significant_digits; }

BigRational NamedConstant::exact() const { return parse_decimal(decimal).value; }

ConstantTable ConstantTable::from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("constants file: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("constants file: top level must be an object");
  ConstantTable table;
  for (const auto& [name, entry] : doc.items()) {
    if (!entry.is_object() || !entry.contains("decimal") || !entry["decimal"].is_string())
      throw InputError("constants file: entry '" + name + "' needs a string field 'decimal'");
    NamedConstant c;
    c.name = name;
    c.decimal = entry["decimal"].get<std::string>();
    c.description = entry.value("description", "");
    c.provenance = entry.value("provenance", "");
    DecimalLiteral lit;
    try {
      lit = parse_decimal(c.decimal);
    } catch (const InputError&) {
      throw InputError("constants file: entry '" + name + "' has a malformed decimal");
    }
    if (lit.significant_digits < kMinStoredDigits)
      throw InputError("constants file: entry '" + name + "' carries " +
                       std::to_string(lit.significant_digits) + " digits, need >= " +
                       std::to_string(kMinStoredDigits));
    table.entries_.emplace(name, std::move(c));
  }
  return table;
}

ConstantTable ConstantTable::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open constants file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return from_json(buffer.str());
}

const ConstantTable& ConstantTable::builtin() {
  static const ConstantTable table = from_json(kBuiltinConstantsJson);
  return table;
}

bool ConstantTable::contains(std::string_view name) const { return entries_.find(name) != entries_.end(); }

const NamedConstant& ConstantTable::at(std::string_view name) const {
  auto it = entries_.find(name);
  if (it == entries_.end()) throw InputError("unknown constant '" + std::string(name) + "'");
  return it->second;
}

std::vector<std::string> ConstantTable::names() const {
  std::vector<std::string> out;
  for (const auto& [name, _] : entries_) out.push_back(name);
  return out;
}

BigFloat ConstantTable::lookup(std::string_view name, int digits) const {
  const NamedConstant& c = at(name);
  if (digits < 1) throw InputError("constant_lookup: digits must be >= 1");
  if (digits > c.stored_digits())
    throw InputError("constant '" + c.name + "' is stored to " + std::to_string(c.stored_digits()) +
                     " digits; " + std::to_string(digits) + " requested");
  return BigFloat::parse(decimal_render(c.exact(), digits), digits);
}

}  // namespace sepprob
