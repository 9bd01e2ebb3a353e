#include "sepprob/pipeline/table.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sepprob/errors.hpp"
#include "sepprob/numeric/decimal.hpp"

namespace sepprob {

using json = nlohmann::ordered_json;

namespace {

constexpr std::array<ReferenceRow, 20> kReference{{
    {"1/2", "29/64", "0.453125"},
    {"1", "8/33", "0.242424"},
    {"3/2", "36061/262144", "0.137562"},
    {"2", "26/323", "0.0804954"},
    {"5/2", "51548569/1073741824", "0.0480083"},
    {"3", "2999/103385", "0.0290081"},
    {"7/2", "38911229297/2199023255552", "0.0176948"},
    {"4", "44482/4091349", "0.0108722"},
    {"9/2", "60515043681347/9007199254740992", "0.00671852"},
    {"5", "89514/21460999", "0.00417101"},
    {"11/2", "71925602948804923/27670116110564327424", "0.0025994"},
    {"6", "179808469/110638410169", "0.00162519"},
    {"13/2", "3387374833367307236269/3324546003940230230441984", "0.0010189"},
    {"7", "191151001/298529164591", "0.000640309"},
    {"15/2", "124792688228667229196729/309485009821345068724781056", "0.000403227"},
    {"8", "1331199762/5232880523393", "0.000254391"},
    {"17/2", "407557367133399293946182513/2535301200456458802993406410752", "0.000160753"},
    {"9", "74195568677/729345064647247", "0.000101729"},
    {"19/2", "1338799759394288468677657208071/20769187434139310514121985316880384", "0.0000644609"},
    {"10", "730710456538/17868447453498669", "0.0000408939"},
}};

std::string strip_trailing_zeros(std::string s) {
  if (s.find('.') == std::string::npos) return s;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Match: return "match";
    case CheckStatus::Mismatch: return "mismatch";
    case CheckStatus::Unchecked: return "unchecked";
  }
  return "unchecked";
}

}  // namespace

const TableRow* ProbabilityTable::find(const BigRational& alpha) const {
  auto it = std::lower_bound(rows.begin(), rows.end(), alpha,
                             [](const TableRow& r, const BigRational& a) { return r.alpha < a; });
  return it != rows.end() && it->alpha == alpha ? &*it : nullptr;
}

ProbabilityTable parse_probability_table(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("probability table: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_array())
    throw InputError("probability table: expected an object with a \"rows\" array");
  ProbabilityTable table;
  const json& rows = doc["rows"];
  for (size_t i = 0; i < rows.size(); ++i) {
    const std::string at = "rows[" + std::to_string(i) + "]";
    const json& r = rows[i];
    if (!r.is_object()) throw InputError(at + ": expected an object");
    for (const char* field : {"alpha", "value"})
      if (!r.contains(field) || !r[field].is_string())
        throw InputError(at + "." + field + ": missing or not a string");
    TableRow row;
    try {
      row.alpha = parse_rational(r["alpha"].get<std::string>());
    } catch (const InputError& e) {
      throw InputError(at + ".alpha: " + e.what());
    }
    row.value_text = r["value"].get<std::string>();
    try {
      row.is_rational = looks_like_rational(row.value_text);
      row.value = row.is_rational ? parse_rational(row.value_text) : parse_decimal(row.value_text).value;
    } catch (const InputError& e) {
      throw InputError(at + ".value: " + e.what());
    }
    if (r.contains("provenance")) {
      if (!r["provenance"].is_string()) throw InputError(at + ".provenance: expected a string");
      row.provenance = r["provenance"].get<std::string>();
    }
    table.rows.push_back(std::move(row));
  }
  std::stable_sort(table.rows.begin(), table.rows.end(),
                   [](const TableRow& a, const TableRow& b) { return a.alpha < b.alpha; });
  for (size_t i = 1; i < table.rows.size(); ++i)
    if (table.rows[i].alpha == table.rows[i - 1].alpha)
      throw InputError("probability table: duplicate alpha " + to_string(table.rows[i].alpha));
  return table;
}

ProbabilityTable load_probability_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read probability table " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_probability_table(ss.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string to_json(const ProbabilityTable& table) {
  json rows = json::array();
  for (const auto& r : table.rows)
    rows.push_back({{"alpha", to_string(r.alpha)}, {"value", r.value_text}, {"provenance", r.provenance}});
  return json{{"rows", rows}}.dump(2) + "\n";
}

std::span<const ReferenceRow> reference_rows() { return kReference; }

ProbabilityTable reference_table() {
  ProbabilityTable t;
  for (const auto& r : kReference)
    t.rows.push_back({parse_rational(r.alpha), parse_rational(r.value), r.value, true, "printed table"});
  std::sort(t.rows.begin(), t.rows.end(), [](const TableRow& a, const TableRow& b) { return a.alpha < b.alpha; });
  return t;
}

size_t TableCheckReport::count(CheckStatus s) const {
  return static_cast<size_t>(std::count_if(rows.begin(), rows.end(), [s](const TableCheckRow& r) { return r.status == s; }));
}

std::string TableCheckReport::to_json() const {
  json out = json::array();
  for (const auto& r : rows) {
    json row{{"alpha", sepprob::to_string(r.alpha)}, {"rendered", r.rendered}};
    row["printed"] = r.printed ? json(*r.printed) : json(nullptr);
    row["status"] = status_name(r.status);
    out.push_back(row);
  }
  json doc{{"rows", out},
           {"matched", count(CheckStatus::Match)},
           {"mismatched", count(CheckStatus::Mismatch)},
           {"unchecked", count(CheckStatus::Unchecked)}};
  return doc.dump(2) + "\n";
}

TableCheckReport table_check(const ProbabilityTable& table) {
  TableCheckReport report;
  for (const auto& row : table.rows) {
    TableCheckRow out;
    out.alpha = row.alpha;
    out.rendered = decimal_render(row.value, 6);
    for (const auto& ref : kReference) {
      if (parse_rational(ref.alpha) != row.alpha) continue;
      out.printed = ref.printed;
      out.status = strip_trailing_zeros(out.rendered) == strip_trailing_zeros(ref.printed) ? CheckStatus::Match
                                                                                           : CheckStatus::Mismatch;
    }
    report.rows.push_back(std::move(out));
  }
  return report;
}

}  // namespace sepprob
