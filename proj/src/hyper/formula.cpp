#include "sepprob/hyper/formula.hpp"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sepprob/errors.hpp"

namespace sepprob {

using json = nlohmann::ordered_json;

BigRational evaluate_polynomial(const std::vector<BigRational>& coeffs, const BigRational& x) {
  BigRational acc = 0;
  for (size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

bool RationalFunction::is_zero() const {
  for (const auto& c : num)
    if (c != 0) return false;
  return true;
}

BigRational RationalFunction::evaluate(const BigRational& alpha, const std::string& label) const {
  BigRational d = evaluate_polynomial(den, alpha);
  if (d == 0) throw ParameterPole(label + " vanishes at alpha=" + to_string(alpha), label);
  return evaluate_polynomial(num, alpha) / d;
}

void FormulaConfig::validate() const {
  auto check = [](const RationalFunction& f, const std::string& where) {
    if (f.num.empty()) throw InputError(where + ".num: empty coefficient list");
    bool any = false;
    for (const auto& c : f.den) any = any || c != 0;
    if (!any) throw InputError(where + ".den: denominator is identically zero");
  };
  check(affine, "affine");
  for (int k = 0; k < FamilyMember::kCount; ++k) check(weights[k], "weights[" + std::to_string(k) + "]");
}

namespace {

std::vector<BigRational> read_coeffs(const json& node, const std::string& where) {
  if (!node.is_array()) throw InputError(where + ": expected an array of \"p/q\" strings");
  std::vector<BigRational> out;
  for (size_t i = 0; i < node.size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    if (!node[i].is_string()) throw InputError(at + ": expected a \"p/q\" string");
    try {
      out.push_back(parse_rational(node[i].get<std::string>()));
    } catch (const InputError& e) {
      throw InputError(at + ": " + e.what());
    }
  }
  return out;
}

RationalFunction read_function(const json& node, const std::string& where) {
  if (!node.is_object()) throw InputError(where + ": expected an object with \"num\" and \"den\"");
  RationalFunction f;
  if (!node.contains("num")) throw InputError(where + ".num: missing");
  f.num = read_coeffs(node["num"], where + ".num");
  f.den = node.contains("den") ? read_coeffs(node["den"], where + ".den") : std::vector<BigRational>{BigRational(1)};
  return f;
}

json write_coeffs(const std::vector<BigRational>& cs) {
  json out = json::array();
  for (const auto& c : cs) out.push_back(to_string(c));
  return out;
}

json write_function(const RationalFunction& f) { return json{{"num", write_coeffs(f.num)}, {"den", write_coeffs(f.den)}}; }

}  // namespace

FormulaConfig parse_formula_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("formula config: ") + e.what());
  }
  if (!doc.is_object()) throw InputError("formula config: top level must be an object");
  FormulaConfig cfg;
  if (!doc.contains("affine")) throw InputError("formula config: field \"affine\" is missing");
  cfg.affine = read_function(doc["affine"], "affine");
  if (!doc.contains("weights") || !doc["weights"].is_array() || doc["weights"].size() != FamilyMember::kCount)
    throw InputError("formula config: field \"weights\" must be an array of six objects");
  for (int k = 0; k < FamilyMember::kCount; ++k)
    cfg.weights[k] = read_function(doc["weights"][k], "weights[" + std::to_string(k) + "]");
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) throw InputError("formula config: \"description\" must be a string");
    cfg.description = doc["description"].get<std::string>();
  }
  cfg.validate();
  return cfg;
}

FormulaConfig load_formula_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read formula config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_formula_config(ss.str());
  } catch (const ParameterPole&) {
    throw;
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string to_json(const FormulaConfig& config) {
  json doc;
  doc["affine"] = write_function(config.affine);
  json ws = json::array();
  for (const auto& w : config.weights) ws.push_back(write_function(w));
  doc["weights"] = ws;
  doc["description"] = config.description;
  return doc.dump(2) + "\n";
}

CertifiedValue assemble_P(const FormulaConfig& config, const BigRational& alpha, int digits) {
  if (digits < 1) throw InputError("assemble_P: digits must be >= 1");
  const BigRational affine = config.affine.evaluate(alpha, "affine");
  std::array<BigRational, FamilyMember::kCount> c;
  BigRational weight_sum = 0;
  for (int k = 0; k < FamilyMember::kCount; ++k) {
    c[k] = config.weights[k].evaluate(alpha, "weights[" + std::to_string(k) + "]");
    weight_sum += abs(c[k]);
  }
  if (weight_sum == 0) {
    CertifiedValue out;
    out.exact = affine;
    out.value.midpoint = BigFloat(affine, digits + 10);
    out.value.radius = BigFloat(0);
    return out;
  }

  // sum |c_k| radius_k <= 10^-(digits+2) when each radius <= 10^-member_digits
  const int inflate = static_cast<int>(std::max<long>(0, floor_log10(weight_sum + 1) + 1));
  const int member_digits = digits + inflate + 3;
  const int work = member_digits + 10;
  BigFloat mid(affine, work);
  BigRational radius = 0, magnitude = abs(affine);
  size_t terms = 0;
  bool float_path = false;
  for (int k = 0; k < FamilyMember::kCount; ++k) {
    if (c[k] == 0) continue;
    CertifiedValue f;
    try {
      f = family_member_eval(alpha, k + 1, member_digits);
    } catch (const ParameterPole& e) {
      throw ParameterPole(std::string("assemble_P: ") + e.what(), e.parameter());
    }
    mid += BigFloat(c[k], work) * f.value.midpoint;
    radius += abs(c[k]) * f.value.radius.to_rational();
    magnitude += abs(c[k]) * (abs(f.value.midpoint.to_rational()) + 1);
    terms += f.terms;
    float_path = float_path || f.float_path;
  }
  // rounding of at most 20 operations at `work` digits, relative to the magnitudes involved
  radius += magnitude * pow10q(-(work - 2));
  CertifiedValue out;
  out.value.midpoint = mid;
  out.value.radius = BigFloat(radius * BigRational(1000000000000001, 1000000000000000), 20);
  out.terms = terms;
  out.float_path = float_path;
  return out;
}

}  // namespace sepprob
