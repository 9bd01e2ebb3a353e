#include "sepprob/moments/legendre.hpp"

#include <atomic>
#include <cstring>
#include <fstream>
#include <mutex>
#include <functional>
#include <thread>
#include <unistd.h>

namespace sepprob {
namespace {

constexpr char kMagic[4] = {'S', 'P', 'L', 'T'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& out, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v >> 24), static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 8), static_cast<unsigned char>(v)};
  out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw InputError("legendre cache: truncated file");
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
}

BigInt dot_scaled(std::span<const BigInt> row, int parity, std::span<const BigInt> values, OpCount* ops) {
  BigInt acc = 0;
  for (size_t i = 0; i < row.size(); ++i) {
    mpz_addmul(acc.get_mpz_t(), row[i].get_mpz_t(), values[parity + 2 * i].get_mpz_t());
  }
  if (ops) ops->multiply_adds += row.size();
  return acc;
}

}  // namespace

void advance_scaled_legendre(int k, const std::vector<BigInt>& prev, const std::vector<BigInt>& cur,
                             std::vector<BigInt>& next, OpCount* ops) {
  next.assign(static_cast<size_t>(k) + 2, BigInt(0));
  const unsigned long up = 2ul * (2ul * k + 1);
  const unsigned long down = 4ul * k;
  for (int j = (k + 1) % 2; j <= k + 1; j += 2) {
    BigInt& v = next[j];
    if (j >= 1) mpz_mul_ui(v.get_mpz_t(), cur[j - 1].get_mpz_t(), up);
    if (j <= k - 1) mpz_submul_ui(v.get_mpz_t(), prev[j].get_mpz_t(), down);
    mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(k + 1));
  }
  if (ops) ops->multiply_adds += static_cast<std::uint64_t>(k / 2 + 1);
}

LegendreTable::LegendreTable(int degree) : degree_(degree) {
  if (degree < 0) throw InputError("LegendreTable: degree must be >= 0");
  std::vector<BigInt> prev, cur{BigInt(1)}, next;
  for (int k = 0; k <= degree; ++k) {
    offsets_.push_back(data_.size());
    for (int j = k % 2; j <= k; j += 2) data_.push_back(cur[j]);
    if (k == degree) break;
    advance_scaled_legendre(k, prev, cur, next);
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  offsets_.push_back(data_.size());
}

std::span<const BigInt> LegendreTable::row(int k) const {
  if (k < 0 || k > degree_) throw InputError("LegendreTable: row " + std::to_string(k) + " out of range");
  return {data_.data() + offsets_[k], offsets_[k + 1] - offsets_[k]};
}

std::vector<BigRational> LegendreTable::coefficients(int k) const {
  auto r = row(k);
  std::vector<BigRational> out(static_cast<size_t>(k) + 1, BigRational(0));
  BigInt scale = BigInt(1) << k;
  for (size_t i = 0; i < r.size(); ++i) {
    BigRational c(r[i], scale);
    c.canonicalize();
    out[k % 2 + 2 * i] = c;
  }
  return out;
}

void LegendreTable::check_rows() const {
  // P_k(1) = 1  <=>  sum of row k = 2^k
  for (int k = 0; k <= degree_; ++k) {
    BigInt sum = 0;
    for (const auto& c : row(k)) sum += c;
    if (sum != (BigInt(1) << k))
      throw InputError("legendre cache: row " + std::to_string(k) + " fails the P_k(1) = 1 check");
  }
}

void LegendreTable::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("legendre cache: cannot write " + path.string());
  out.write(kMagic, 4);
  write_u32(out, kVersion);
  write_u32(out, static_cast<std::uint32_t>(degree_));
  std::vector<unsigned char> bytes;
  for (const auto& c : data_) {
    size_t count = (mpz_sizeinbase(c.get_mpz_t(), 2) + 7) / 8;
    bytes.resize(count);
    size_t written = 0;
    mpz_export(bytes.data(), &written, 1, 1, 1, 0, c.get_mpz_t());
    out.put(static_cast<char>(sgn(c) < 0 ? 1 : 0));
    write_u32(out, static_cast<std::uint32_t>(written));
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(written));
  }
  if (!out) throw InputError("legendre cache: write failed for " + path.string());
}

LegendreTable LegendreTable::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("legendre cache: cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0)
    throw InputError("legendre cache: bad magic in " + path.string());
  if (read_u32(in) != kVersion) throw InputError("legendre cache: unsupported version in " + path.string());
  LegendreTable t;
  t.degree_ = static_cast<int>(read_u32(in));
  std::vector<unsigned char> bytes;
  for (int k = 0; k <= t.degree_; ++k) {
    t.offsets_.push_back(t.data_.size());
    for (int j = k % 2; j <= k; j += 2) {
      int sign = in.get();
      if (sign != 0 && sign != 1) throw InputError("legendre cache: corrupt sign byte in " + path.string());
      std::uint32_t count = read_u32(in);
      bytes.resize(count);
      if (!in.read(reinterpret_cast<char*>(bytes.data()), count))
        throw InputError("legendre cache: truncated file " + path.string());
      BigInt v;
      mpz_import(v.get_mpz_t(), count, 1, 1, 1, 0, bytes.data());
      if (sign) v = -v;
      t.data_.push_back(std::move(v));
    }
  }
  t.offsets_.push_back(t.data_.size());
  t.check_rows();
  return t;
}

std::vector<BigRational> legendre_moments_exact(std::span<const BigRational> mu, int degree,
                                                const LegendreTable* table, OpCount* ops) {
  if (degree < 0) throw InputError("legendre_moments: degree must be >= 0");
  if (static_cast<size_t>(degree) >= mu.size())
    throw InsufficientMoments("legendre_moments: degree " + std::to_string(degree) + " needs " +
                              std::to_string(degree + 1) + " moments, have " + std::to_string(mu.size()));
  // mu_j = scaled_j / common
  BigInt common = 1;
  for (int j = 0; j <= degree; ++j) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), mu[j].get_den_mpz_t());
  std::vector<BigInt> scaled(static_cast<size_t>(degree) + 1);
  for (int j = 0; j <= degree; ++j) {
    BigInt f = common / mu[j].get_den();
    scaled[j] = mu[j].get_num() * f;
  }

  std::vector<BigRational> m;
  m.reserve(static_cast<size_t>(degree) + 1);
  auto emit = [&](int k, const BigInt& numerator) {
    BigRational v(numerator, common << k);
    v.canonicalize();
    m.push_back(std::move(v));
  };

  if (table && table->degree() >= degree) {
    for (int k = 0; k <= degree; ++k) emit(k, dot_scaled(table->row(k), k % 2, scaled, ops));
    return m;
  }
  std::vector<BigInt> prev, cur{BigInt(1)}, next, compact;
  for (int k = 0; k <= degree; ++k) {
    compact.clear();
    for (int j = k % 2; j <= k; j += 2) compact.push_back(cur[j]);
    emit(k, dot_scaled(compact, k % 2, scaled, ops));
    if (k == degree) break;
    advance_scaled_legendre(k, prev, cur, next, ops);
    std::swap(prev, cur);
    std::swap(cur, next);
  }
  return m;
}

LegendreCache::LegendreCache(std::optional<std::filesystem::path> directory) : directory_(std::move(directory)) {}

std::shared_ptr<const LegendreTable> LegendreCache::get(int degree) {
  if (degree > kMaxTableDegree) return nullptr;
  {
    std::shared_lock lock(mutex_);
    if (auto it = tables_.lower_bound(degree); it != tables_.end()) return it->second;
  }
  std::unique_lock lock(mutex_);
  if (auto it = tables_.lower_bound(degree); it != tables_.end()) return it->second;

  std::shared_ptr<const LegendreTable> table;
  std::filesystem::path file;
  if (directory_) {
    file = *directory_ / ("legendre-" + std::to_string(degree) + ".bin");
    std::error_code ec;
    if (std::filesystem::exists(file, ec)) {
      try {
        table = std::make_shared<const LegendreTable>(LegendreTable::load(file));
      } catch (const InputError&) {
        table.reset();  // corrupt or stale; rebuilt below
      }
    }
  }
  if (!table) {
    table = std::make_shared<const LegendreTable>(degree);
    if (directory_) {
      static std::atomic<unsigned> counter{0};
      std::filesystem::create_directories(*directory_);
      auto tmp = file;
      tmp += ".tmp." + std::to_string(::getpid()) + "." +
             std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "." +
             std::to_string(counter++);
      table->save(tmp);
      std::filesystem::rename(tmp, file);
    }
  }
  tables_[table->degree()] = table;
  return table;
}

}  // namespace sepprob
