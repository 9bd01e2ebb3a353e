#ifndef SEPPROB_PIPELINE_VERIFY_HPP
#define SEPPROB_PIPELINE_VERIFY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepprob/pipeline/table.hpp"
#include "sepprob/quantum/sampler.hpp"

namespace sepprob {

enum class Verdict { Pass, Fail, LowPower, Skipped };

const char* verdict_name(Verdict v);

struct VerifyRow {
  Ring ring = Ring::Real;
  Verdict verdict = Verdict::Skipped;
  std::optional<BigRational> target;
  std::optional<McResult> mc;
  double sigma = 0;      // sqrt(t (1 - t) / N) at the target t
  double deviation = 0;  // |estimate - t|
  std::string note;
};

struct VerifyReport {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::vector<VerifyRow> rows;

  bool ok() const;  // no Fail rows
  std::string to_json() const;
};

/// Monte Carlo for each ring against the table row at its alpha. PASS when the
/// estimate is within 3 sigma of the target; LOW_POWER when 3 sigma exceeds
/// 10% of the target; SKIPPED when the table has no row for that alpha.
VerifyReport pipeline_verify(const ProbabilityTable& table, std::uint64_t samples, std::uint64_t seed, unsigned threads,
                             const std::vector<Ring>& rings = {Ring::Real, Ring::Complex, Ring::Quaternion});

}  // namespace sepprob

#endif  // SEPPROB_PIPELINE_VERIFY_HPP
