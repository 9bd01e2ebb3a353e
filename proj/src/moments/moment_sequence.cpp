#include "sepprob/moments/moment_sequence.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sepprob/errors.hpp"

namespace sepprob {

Interval determinant_support() { return {BigRational(-1, 16), BigRational(1, 256)}; }

void MomentSequence::validate() const {
  if (!(interval.lower < interval.upper))
    throw InputError("moment sequence: interval lower end must be below upper end");
  if (moments.empty() || moments[0] != 1)
    throw InputError("moment sequence: moments[0] must equal 1");
  const BigRational bound_base = std::max(abs(interval.lower), abs(interval.upper));
  BigRational bound(1);
  for (size_t n = 1; n < moments.size(); ++n) {
    bound *= bound_base;
    if (abs(moments[n]) > bound)
      throw InputError("moment sequence: |moments[" + std::to_string(n) +
                       "]| exceeds the support bound max(|a|,|b|)^n");
  }
}

MomentSequence parse_moment_json(std::string_view text, bool allow_decimals) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("moment file: ") + e.what());
  }
  auto field = [&](const char* name) -> const nlohmann::json& {
    if (!doc.is_object() || !doc.contains(name))
      throw InputError(std::string("moment file: missing field '") + name + "'");
    return doc[name];
  };
  auto rational_field = [](const nlohmann::json& v, const std::string& where) {
    if (!v.is_string()) throw InputError("moment file: " + where + " must be a \"p/q\" string");
    try {
      return parse_rational(v.get<std::string>());
    } catch (const InputError&) {
      throw InputError("moment file: " + where + " is not a rational: '" + v.get<std::string>() + "'");
    }
  };

  MomentSequence ms;
  ms.alpha = rational_field(field("alpha"), "field 'alpha'");
  if (doc.contains("interval")) {
    const auto& iv = doc["interval"];
    if (!iv.is_array() || iv.size() != 2)
      throw InputError("moment file: field 'interval' must be a two-element array");
    ms.interval = {rational_field(iv[0], "interval[0]"), rational_field(iv[1], "interval[1]")};
  }
  const auto& moments = field("moments");
  if (!moments.is_array()) throw InputError("moment file: field 'moments' must be an array");
  ms.moments.reserve(moments.size());
  for (size_t n = 0; n < moments.size(); ++n) {
    const auto& v = moments[n];
    const std::string where = "moments[" + std::to_string(n) + "]";
    if (!v.is_string()) throw InputError("moment file: " + where + " must be a string");
    const std::string s = v.get<std::string>();
    if (looks_like_rational(s)) {
      ms.moments.push_back(parse_rational(s));
    } else if (allow_decimals) {
      try {
        ms.moments.push_back(parse_decimal(s).value);
      } catch (const InputError&) {
        throw InputError("moment file: " + where + " is neither rational nor decimal: '" + s + "'");
      }
      ms.from_decimals = true;
    } else {
      throw InputError("moment file: " + where + " is not an exact rational '" + s +
                       "' (decimals are accepted only in float mode)");
    }
  }
  ms.source = doc.value("source", "");
  ms.validate();
  return ms;
}

MomentSequence load_moment_file(const std::filesystem::path& path, bool allow_decimals) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open moment file " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  MomentSequence ms = parse_moment_json(buffer.str(), allow_decimals);
  if (ms.source.empty()) ms.source = path.string();
  return ms;
}

std::string to_moment_json(const MomentSequence& ms) {
  nlohmann::ordered_json doc;
  doc["alpha"] = to_string(ms.alpha);
  doc["interval"] = {to_string(ms.interval.lower), to_string(ms.interval.upper)};
  auto arr = nlohmann::ordered_json::array();
  for (const auto& m : ms.moments) arr.push_back(to_string(m));
  doc["moments"] = std::move(arr);
  doc["source"] = ms.source;
  return doc.dump(2) + "\n";
}

}  // namespace sepprob
