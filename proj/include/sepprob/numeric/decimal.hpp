#ifndef SEPPROB_NUMERIC_DECIMAL_HPP
#define SEPPROB_NUMERIC_DECIMAL_HPP

#include <string>

#include "sepprob/numeric/rational.hpp"

namespace sepprob {

/// Fixed-point rendering of `x` with `sig_figs` significant figures, rounded
/// half away from zero. decimal_render(8/33, 6) == "0.242424".
std::string decimal_render(const BigRational& x, int sig_figs);

/// Fixed-point rendering with exactly `places` digits after the point.
std::string fixed_render(const BigRational& x, int places);

/// Mantissa with `sig_figs` significant figures and a signed exponent: "4.60e-101".
std::string scientific_render(const BigRational& x, int sig_figs);

}  // namespace sepprob

#endif  // SEPPROB_NUMERIC_DECIMAL_HPP
