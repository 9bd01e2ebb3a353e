#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "sepprob/errors.hpp"
#include "sepprob/pipeline/table.hpp"
#include "sepprob/recognize/recognizer.hpp"

using namespace sepprob;

namespace {

BigRational q(long p, long d = 1) {
  BigRational r(p, d);
  r.canonicalize();
  return r;
}

int ndigits(const BigInt& n) { return n == 0 ? 1 : static_cast<int>(BigInt(abs(n)).get_str().size()); }

}  // namespace

TEST_CASE("to_rational: examples") {
  auto r = to_rational("0.453125", BigInt(1000000));
  REQUIRE(r);
  CHECK(r->value == q(29, 64));
  CHECK(r->exact_match);
  CHECK(r->residual.is_zero());

  const std::string x = oracle::long_division(26, 323, 40);
  r = to_rational(x, BigInt(1000000));
  REQUIRE(r);
  CHECK(r->value == q(26, 323));
  CHECK_FALSE(r->exact_match);

  CHECK_FALSE(to_rational("0.33333", BigInt(1000000)));
  CHECK_THROWS_AS(to_rational("0.3x", BigInt(10)), InputError);
  CHECK_THROWS_AS(to_rational("0.3", BigInt(0)), InputError);
}

TEST_CASE("to_rational: round trip for random fractions") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 400; ++trial) {
    const int den_digits = 1 + trial % 12;
    std::uniform_int_distribution<long> dd(1, static_cast<long>(std::pow(10.0, den_digits)) - 1);
    long d = dd(rng);
    std::uniform_int_distribution<long> nd(-3 * d, 3 * d);
    BigRational v = q(nd(rng), d);
    // 2 digits(q) + 6 places, and enough that p is no longer than half of them
    int places = 2 * ndigits(v.get_den()) + 6;
    places = std::max(places, 2 * ndigits(v.get_num()));
    const std::string x = oracle::long_division(v.get_num(), v.get_den(), places);
    auto r = to_rational(x, BigInt(10) * v.get_den());
    INFO(x << " from " << to_string(v));
    REQUIRE(r);
    CHECK(r->value == v);
  }
}

TEST_CASE("to_rational: no false confidence on noise") {
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> digit(0, 9), len(4, 60);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = len(rng);
    std::string x = "0.";
    for (int i = 0; i < n; ++i) x += static_cast<char>('0' + digit(rng));
    auto r = to_rational(x, pow10(40));
    if (!r) continue;
    INFO(x << " -> " << to_string(r->value));
    if (r->exact_match) {
      CHECK(r->value == parse_decimal(x).value);
    } else {
      CHECK(2 * specification_length(r->value) <= n);
      CHECK(n >= 2 * ndigits(r->value.get_den()) + 6);
    }
    CHECK(verify(*r, x, n).ok);
  }
}

TEST_CASE("verify: examples") {
  RecognitionCandidate c;
  c.value = q(29, 64);
  CHECK(verify(c, "0.453125", 6).ok);
  Verification bad = verify(c, "0.453126", 6);
  CHECK_FALSE(bad.ok);
  CHECK(bad.residual > BigFloat(0));

  oracle::MpfrConstants m(130);
  RecognitionCandidate aff;
  aff.form = CandidateForm::Affine;
  aff.a = q(2);
  aff.b = q(-17, 21);
  aff.constant = "C1";
  const std::string x100 = oracle::affine_decimal(q(2), q(-17, 21), m.c1(130), 100);
  CHECK(verify(aff, x100, 100).ok);
  // a perturbed constant multiplier fails
  aff.b = q(-17, 20);
  CHECK_FALSE(verify(aff, x100, 100).ok);
  aff.b = q(-17, 21);
  // more digits than the table stores
  CHECK_THROWS_AS(verify(aff, x100, 260), InputError);
}

TEST_CASE("recognize_affine: rows of the special-value table") {
  oracle::MpfrConstants m(130);
  const std::vector<BigRational> two{q(2)};

  const std::string x1 = oracle::affine_decimal(q(2), q(-17, 21), m.c1(130), 50);
  CHECK(x1.substr(0, 8) == "0.648699");
  auto r = recognize_affine(x1, "C1", two, pow10(12));
  REQUIRE(r);
  CHECK(r->form == CandidateForm::Affine);
  CHECK(r->a == 2);
  CHECK(r->b == q(-17, 21));
  CHECK(r->constant == "C1");
  const std::string x1_100 = oracle::affine_decimal(q(2), q(-17, 21), m.c1(130), 100);
  CHECK(verify(*r, x1_100, 100).ok);

  const std::string x2 = oracle::affine_decimal(q(2), q(3, 4), m.gamma_third_cubed_over_pi2(130, 1, false), 49);
  CHECK(x2.substr(0, 6) == "3.4609");
  r = recognize_affine(x2, "C2", two, pow10(12));
  REQUIRE(r);
  CHECK(r->b == q(3, 4));
  const std::string x2_100 = oracle::affine_decimal(q(2), q(3, 4), m.gamma_third_cubed_over_pi2(130, 1, false), 99);
  CHECK(verify(*r, x2_100, 99).ok);

  // 2 - 8 pi / (sqrt(3) Gamma(1/3)^3) = 2 - (8/3) sqrt(3) pi / Gamma(1/3)^3
  const std::string c3p = m.gamma_third_cubed_over_pi2(130, -1, true);
  const std::string x3 = oracle::affine_decimal(q(2), q(-8, 3), c3p, 50);
  CHECK(x3.substr(0, 7) == "1.24527");
  CHECK_FALSE(recognize_affine(x3, "C3", two, pow10(12)));
  r = recognize_affine(x3, "C3prime", two, pow10(12));
  REQUIRE(r);
  CHECK(r->b == q(-8, 3));

  const std::vector<BigRational> zero_then_two{q(0), q(2)};
  r = recognize_affine(x1, "C1", zero_then_two, pow10(12));
  REQUIRE(r);
  CHECK(r->a == 2);

  CHECK_THROWS_AS(recognize_affine(x1, "C9", two, pow10(12)), InputError);
  CHECK_THROWS_AS(recognize_affine("0.6486993992", "C1", two, pow10(12)), InputError);
}

TEST_CASE("recognize_affine: round trip and verify consistency") {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<int> bn(-40, 40), bd(1, 30), an(-3, 3);
  oracle::MpfrConstants m(130);
  const std::string c1 = m.c1(130);
  for (int trial = 0; trial < 25; ++trial) {
    BigRational b = q(bn(rng), bd(rng));
    if (b == 0) b = 1;
    BigRational a = q(an(rng));
    const int places = 40;
    const std::string x = oracle::affine_decimal(a, b, c1, places);
    std::vector<BigRational> as{a};
    auto r = recognize_affine(x, "C1", as, pow10(10));
    INFO(x << " from " << to_string(a) << " + " << to_string(b) << "*C1");
    REQUIRE(r);
    CHECK(r->b == b);
    CHECK(verify(*r, x, places).ok);
  }
}

TEST_CASE("to_rational: the twenty reference rationals at 120 digits") {
  for (const ReferenceRow& row : reference_rows()) {
    const BigRational value = parse_rational(row.value);
    const std::string x = oracle::long_division(value.get_num(), value.get_den(), 120);
    auto r = to_rational(x, pow10(40));
    INFO(row.alpha << ": " << row.value);
    REQUIRE(r);
    CHECK(r->value == value);
    CHECK(verify(*r, x, 120).ok);
  }
}
