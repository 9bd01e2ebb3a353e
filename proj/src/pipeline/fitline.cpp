#include "sepprob/pipeline/fitline.hpp"

#include <algorithm>
#include <sstream>

#include "sepprob/errors.hpp"
#include "sepprob/numeric/decimal.hpp"

namespace sepprob {

namespace {

std::string fixed12(const BigFloat& x) { return fixed_render(x.to_rational(), 12); }

}  // namespace

FitlineResult fitline(const ProbabilityTable& table, int digits) {
  if (table.rows.empty()) throw InputError("fitline: table has no rows");
  PrecisionScope scope(digits);
  FitlineResult out;
  BigFloat sxy(BigRational(0), digits), sxx(BigRational(0), digits);
  for (const auto& row : table.rows) {
    if (row.value <= 0) throw InputError("fitline: value at alpha=" + to_string(row.alpha) + " is not positive");
    FitlinePoint p;
    p.alpha = row.alpha;
    p.ln_p = log(BigFloat(row.value, digits));
    BigFloat a(row.alpha, digits);
    sxy += a * p.ln_p;
    sxx += a * a;
    out.points.push_back(std::move(p));
  }
  if (sxx.is_zero()) throw InputError("fitline: all alphas are zero; slope through the origin is undefined");
  out.slope = sxy / sxx;
  for (auto& p : out.points) {
    p.fitted = out.slope * BigFloat(p.alpha, digits);
    p.residual = p.ln_p - p.fitted;
  }
  return out;
}

std::string FitlineResult::csv() const {
  std::ostringstream os;
  os << "alpha,lnP,fitted,residual\n";
  for (const auto& p : points)
    os << to_string(p.alpha) << ',' << fixed12(p.ln_p) << ',' << fixed12(p.fitted) << ',' << fixed12(p.residual)
       << '\n';
  return os.str();
}

std::string FitlineResult::svg() const {
  // plot coordinates in double; exact values go in the data- attributes
  const double width = 640, panel = 300, margin = 50, gap = 40;
  double amin = 0, amax = 1, ymin = 0, ymax = 0, rmax = 0;
  for (const auto& p : points) {
    double a = BigFloat(p.alpha, 20).to_double();
    amin = std::min(amin, a);
    amax = std::max(amax, a);
    ymin = std::min({ymin, p.ln_p.to_double(), p.fitted.to_double()});
    ymax = std::max({ymax, p.ln_p.to_double(), p.fitted.to_double()});
    rmax = std::max(rmax, std::abs(p.residual.to_double()));
  }
  if (ymax - ymin <= 0) ymax = ymin + 1;
  if (rmax <= 0) rmax = 1;
  auto sx = [&](double a) { return margin + (a - amin) / (amax - amin) * (width - 2 * margin); };
  auto sy = [&](double y) { return margin + (ymax - y) / (ymax - ymin) * (panel - 2 * margin); };
  auto sr = [&](double r) { return panel + gap + margin + (rmax - r) / (2 * rmax) * (panel - 2 * margin); };

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  const double height = 2 * panel + gap;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height << "\" data-slope=\""
     << slope.to_string(20) << "\">\n";
  os << "  <g id=\"log-probability\">\n";
  os << "    <line x1=\"" << sx(amin) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(amax) << "\" y2=\"" << sy(0)
     << "\" stroke=\"#999\"/>\n";
  const double s = slope.to_double();
  os << "    <line class=\"fit\" x1=\"" << sx(amin) << "\" y1=\"" << sy(s * amin) << "\" x2=\"" << sx(amax) << "\" y2=\""
     << sy(s * amax) << "\" stroke=\"#c33\" data-slope=\"" << slope.to_string(20) << "\"/>\n";
  for (const auto& p : points) {
    double a = BigFloat(p.alpha, 20).to_double();
    os << "    <circle class=\"point\" cx=\"" << sx(a) << "\" cy=\"" << sy(p.ln_p.to_double())
       << "\" r=\"3\" fill=\"#236\" data-alpha=\"" << to_string(p.alpha) << "\" data-lnp=\"" << fixed12(p.ln_p)
       << "\" data-fitted=\"" << fixed12(p.fitted) << "\"/>\n";
  }
  os << "    <text x=\"" << margin << "\" y=\"" << margin / 2 << "\">ln P versus alpha, slope " << slope.to_string(10)
     << "</text>\n";
  os << "  </g>\n  <g id=\"residuals\">\n";
  os << "    <line x1=\"" << sx(amin) << "\" y1=\"" << sr(0) << "\" x2=\"" << sx(amax) << "\" y2=\"" << sr(0)
     << "\" stroke=\"#999\"/>\n";
  for (const auto& p : points) {
    double a = BigFloat(p.alpha, 20).to_double();
    os << "    <circle class=\"residual\" cx=\"" << sx(a) << "\" cy=\"" << sr(p.residual.to_double())
       << "\" r=\"3\" fill=\"#363\" data-alpha=\"" << to_string(p.alpha) << "\" data-residual=\"" << fixed12(p.residual)
       << "\"/>\n";
  }
  os << "    <text x=\"" << margin << "\" y=\"" << panel + gap + margin / 2 << "\">residuals</text>\n";
  os << "  </g>\n</svg>\n";
  return os.str();
}

}  // namespace sepprob
