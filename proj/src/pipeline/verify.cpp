#include "sepprob/pipeline/verify.hpp"
#include "sepprob/numeric/bigfloat.hpp"

#include <cmath>
#include <json.hpp>

#include "sepprob/errors.hpp"
#include "sepprob/numeric/decimal.hpp"

namespace sepprob {

using json = nlohmann::ordered_json;

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::LowPower: return "LOW_POWER";
    case Verdict::Skipped: return "SKIPPED";
  }
  return "SKIPPED";
}

bool VerifyReport::ok() const {
  for (const auto& r : rows)
    if (r.verdict == Verdict::Fail) return false;
  return true;
}

std::string VerifyReport::to_json() const {
  json out = json::array();
  for (const auto& r : rows) {
    json row{{"ensemble", ensemble_name(r.ring)}, {"alpha", sepprob::to_string(alpha_of(r.ring))},
             {"verdict", verdict_name(r.verdict)}};
    row["target"] = r.target ? json(sepprob::to_string(*r.target)) : json(nullptr);
    if (r.mc) {
      row["estimate"] = r.mc->estimate;
      row["std_error"] = r.mc->std_error;
      row["separable"] = r.mc->separable;
      row["sigma_at_target"] = r.sigma;
      row["deviation"] = r.deviation;
    }
    if (!r.note.empty()) row["note"] = r.note;
    out.push_back(row);
  }
  return json{{"samples", samples}, {"seed", seed}, {"threads", threads}, {"ok", ok()}, {"rows", out}}.dump(2) + "\n";
}

VerifyReport pipeline_verify(const ProbabilityTable& table, std::uint64_t samples, std::uint64_t seed, unsigned threads,
                             const std::vector<Ring>& rings) {
  if (samples < 1) throw InputError("verify: samples must be >= 1");
  VerifyReport report;
  report.samples = samples;
  report.seed = seed;
  report.threads = threads;
  for (Ring ring : rings) {
    VerifyRow row;
    row.ring = ring;
    const TableRow* t = table.find(alpha_of(ring));
    if (!t) {
      row.note = "table has no row for alpha=" + to_string(alpha_of(ring));
      report.rows.push_back(row);
      continue;
    }
    row.target = t->value;
    const double target = BigFloat(t->value, 30).to_double();
    row.mc = mc_separability(ring, samples, seed, threads);
    row.sigma = std::sqrt(target * (1 - target) / static_cast<double>(samples));
    row.deviation = std::abs(row.mc->estimate - target);
    if (3 * row.sigma > 0.1 * target) {
      row.verdict = Verdict::LowPower;
      row.note = "3 sigma exceeds 10% of the target";
    } else {
      row.verdict = row.deviation <= 3 * row.sigma ? Verdict::Pass : Verdict::Fail;
    }
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace sepprob
