#include "sepprob/quantum/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include "sepprob/errors.hpp"

namespace sepprob {
namespace {

template <typename Fn>
void parallel_ranges(std::uint64_t count, unsigned threads, Fn&& body) {
  threads = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(count, 1))));
  if (threads == 1) {
    body(0u, std::uint64_t{0}, count);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    std::uint64_t begin = count * t / threads;
    std::uint64_t end = count * (t + 1) / threads;
    pool.emplace_back([&body, t, begin, end] { body(t, begin, end); });
  }
}

template <typename Scalar>
McResult run_separability(std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  std::vector<std::uint64_t> separable(std::max(threads, 1u), 0), resampled(std::max(threads, 1u), 0);
  parallel_ranges(samples, threads, [&](unsigned t, std::uint64_t begin, std::uint64_t end) {
    std::uint64_t hits = 0, redo = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      Matrix4<Scalar> rho = sample_density<Scalar>(seed, i, &redo);
      if (ring_determinant(partial_transpose(rho)) >= 0) ++hits;
    }
    separable[t] = hits;
    resampled[t] = redo;
  });
  McResult r;
  r.samples = samples;
  r.seed = seed;
  r.ensemble = RingTraits<Scalar>::ring;
  for (auto v : separable) r.separable += v;
  for (auto v : resampled) r.resampled += v;
  r.estimate = static_cast<double>(r.separable) / static_cast<double>(samples);
  r.std_error = std::sqrt(r.estimate * (1 - r.estimate) / static_cast<double>(samples));
  return r;
}

// Per-chunk mean / sum of squared deviations, merged in chunk order (Chan et al.)
struct Accumulator {
  double count = 0, mean = 0, m2 = 0;

  void add(double x) {
    count += 1;
    double delta = x - mean;
    mean += delta / count;
    m2 += delta * (x - mean);
  }
  void merge(const Accumulator& o) {
    if (o.count == 0) return;
    double total = count + o.count;
    double delta = o.mean - mean;
    mean += delta * o.count / total;
    m2 += o.m2 + delta * delta * count * o.count / total;
    count = total;
  }
};

constexpr std::uint64_t kChunk = 1u << 14;

template <typename Scalar>
BivariateMomentTable run_moments(std::uint64_t samples, int max_n, int max_k, std::uint64_t seed,
                                 unsigned threads) {
  const size_t width = static_cast<size_t>((max_n + 1) * (max_k + 1));
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  std::vector<std::vector<Accumulator>> per_chunk(chunks, std::vector<Accumulator>(width));
  struct Range {
    double min_pt = std::numeric_limits<double>::infinity(), max_pt = -min_pt;
    double min_det = min_pt, max_det = -min_pt;
    std::uint64_t resampled = 0;
  };
  std::vector<Range> ranges(std::max(threads, 1u));

  parallel_ranges(chunks, threads, [&](unsigned t, std::uint64_t chunk_begin, std::uint64_t chunk_end) {
    Range& range = ranges[t];
    std::vector<double> pt_pow(max_n + 1), det_pow(max_k + 1);
    for (std::uint64_t c = chunk_begin; c < chunk_end; ++c) {
      auto& acc = per_chunk[c];
      std::uint64_t end = std::min(samples, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) {
        Matrix4<Scalar> rho = sample_density<Scalar>(seed, i, &range.resampled);
        double pt = ring_determinant(partial_transpose(rho));
        double det = ring_determinant(rho);
        range.min_pt = std::min(range.min_pt, pt);
        range.max_pt = std::max(range.max_pt, pt);
        range.min_det = std::min(range.min_det, det);
        range.max_det = std::max(range.max_det, det);
        pt_pow[0] = det_pow[0] = 1.0;
        for (int n = 1; n <= max_n; ++n) pt_pow[n] = pt_pow[n - 1] * pt;
        for (int k = 1; k <= max_k; ++k) det_pow[k] = det_pow[k - 1] * det;
        for (int n = 0; n <= max_n; ++n)
          for (int k = 0; k <= max_k; ++k) acc[static_cast<size_t>(n * (max_k + 1) + k)].add(pt_pow[n] * det_pow[k]);
      }
    }
  });

  BivariateMomentTable table;
  table.ensemble = RingTraits<Scalar>::ring;
  table.max_n = max_n;
  table.max_k = max_k;
  table.samples = samples;
  table.seed = seed;
  std::vector<Accumulator> total(width);
  for (const auto& chunk : per_chunk)
    for (size_t e = 0; e < width; ++e) total[e].merge(chunk[e]);
  for (const auto& acc : total) {
    double variance = samples > 1 ? acc.m2 / static_cast<double>(samples - 1) : 0.0;
    table.entries.push_back({acc.mean, std::sqrt(std::max(variance, 0.0) / static_cast<double>(samples))});
  }
  table.entries[0] = {1.0, 0.0};
  table.min_pt_det = std::numeric_limits<double>::infinity();
  table.max_pt_det = -table.min_pt_det;
  table.min_det = table.min_pt_det;
  table.max_det = -table.min_pt_det;
  for (const auto& r : ranges) {
    table.min_pt_det = std::min(table.min_pt_det, r.min_pt);
    table.max_pt_det = std::max(table.max_pt_det, r.max_pt);
    table.min_det = std::min(table.min_det, r.min_det);
    table.max_det = std::max(table.max_det, r.max_det);
    table.resampled += r.resampled;
  }
  return table;
}

}  // namespace

McResult mc_separability(Ring ring, std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw InputError("mc_separability: samples must be >= 1");
  if (threads < 1) throw InputError("mc_separability: threads must be >= 1");
  switch (ring) {
    case Ring::Real: return run_separability<double>(samples, seed, threads);
    case Ring::Complex: return run_separability<std::complex<double>>(samples, seed, threads);
    case Ring::Quaternion: return run_separability<Quaternion>(samples, seed, threads);
  }
  throw InputError("mc_separability: unknown ring");
}

BivariateMomentTable empirical_moments(Ring ring, std::uint64_t samples, int max_n, int max_k,
                                       std::uint64_t seed, unsigned threads) {
  if (samples < 1) throw InputError("empirical_moments: samples must be >= 1");
  if (max_n < 0 || max_k < 0) throw InputError("empirical_moments: max_n and max_k must be >= 0");
  if (threads < 1) throw InputError("empirical_moments: threads must be >= 1");
  switch (ring) {
    case Ring::Real: return run_moments<double>(samples, max_n, max_k, seed, threads);
    case Ring::Complex: return run_moments<std::complex<double>>(samples, max_n, max_k, seed, threads);
    case Ring::Quaternion: return run_moments<Quaternion>(samples, max_n, max_k, seed, threads);
  }
  throw InputError("empirical_moments: unknown ring");
}

}  // namespace sepprob
