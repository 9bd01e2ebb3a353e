// sepprob command-line front end. Exit codes: 0 ok, 2 input error,
// 3 numerical failure, 4 verification failure.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <optional>
#include <sstream>

#include "sepprob/errors.hpp"
#include "sepprob/hyper/formula.hpp"
#include "sepprob/moments/reconstruction.hpp"
#include "sepprob/numeric/constants.hpp"
#include "sepprob/numeric/decimal.hpp"
#include "sepprob/pipeline/fitline.hpp"
#include "sepprob/pipeline/manifest.hpp"
#include "sepprob/pipeline/table.hpp"
#include "sepprob/pipeline/verify.hpp"
#include "sepprob/quantum/sampler.hpp"
#include "sepprob/recognize/recognizer.hpp"

using namespace sepprob;
namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string constants;
  std::string cache_dir;
  bool no_cache = false;
  std::string manifest;
  std::vector<std::string> argv;
};

Globals g;

const ConstantTable& constants() {
  static std::optional<ConstantTable> loaded;
  if (g.constants.empty()) return ConstantTable::builtin();
  if (!loaded) loaded = ConstantTable::load(g.constants);
  return *loaded;
}

std::unique_ptr<LegendreCache> make_cache() {
  if (g.no_cache) return std::make_unique<LegendreCache>();
  std::string dir = g.cache_dir;
  if (dir.empty()) {
    const char* env = std::getenv("SEPPROB_CACHE_DIR");
    dir = env && *env ? env : ".sepprob-cache";
  }
  return std::make_unique<LegendreCache>(fs::path(dir));
}

std::vector<BigRational> parse_list(const std::string& text, const std::string& flag) {
  std::vector<BigRational> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const InputError& e) {
      throw InputError(flag + ": " + e.what());
    }
  }
  return out;
}

BigRational parse_flag_rational(const std::string& text, const std::string& flag) {
  try {
    return parse_rational(text);
  } catch (const InputError& e) {
    throw InputError(flag + ": " + e.what());
  }
}

/// Writes the primary output, records it, and writes the manifest next to the
/// first output unless --manifest names another path.
class Outputs {
 public:
  explicit Outputs(const std::string& command) : manifest_(command, g.argv) {}

  RunManifest& manifest() { return manifest_; }

  void write(const fs::path& path, const std::string& content) {
    write_file_atomic(path, content);
    manifest_.add_output(path);
    if (first_.empty()) first_ = path;
  }

  void finish() {
    if (first_.empty()) return;
    fs::path where = g.manifest.empty() ? fs::path(first_.string() + ".manifest.json") : fs::path(g.manifest);
    manifest_.write(where);
  }

 private:
  RunManifest manifest_;
  fs::path first_;
};

json certified_json(const CertifiedValue& v, int digits) {
  json out;
  out["midpoint"] = v.value.midpoint.to_string(digits);
  out["radius"] = scientific_render(v.value.radius.to_rational(), 3);
  out["exact"] = v.exact ? json(to_string(*v.exact)) : json(nullptr);
  out["terms"] = v.terms;
  out["arithmetic"] = v.float_path ? "mpfr" : "rational";
  return out;
}

void emit(const json& doc, const std::string& out_path, Outputs& outputs) {
  std::string text = doc.dump(2) + "\n";
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
  } else {
    outputs.write(out_path, text);
  }
}

Ring ring_flag(const std::string& name) { return parse_ensemble(name); }

}  // namespace

int main(int argc, char** argv) {
  g.argv.assign(argv, argv + argc);
  CLI::App app{"Separability probabilities: Monte Carlo, moment reconstruction, hypergeometric formulas, recognition"};
  app.require_subcommand(1);
  app.add_option("--constants", g.constants, "constants JSON overriding the built-in table");
  app.add_option("--cache-dir", g.cache_dir, "Legendre coefficient cache (default $SEPPROB_CACHE_DIR or .sepprob-cache)");
  app.add_flag("--no-cache", g.no_cache, "keep Legendre tables in memory only");
  app.add_option("--manifest", g.manifest, "manifest path (default <first output>.manifest.json)");
  app.set_version_flag("--version", tool_version());

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo over random density matrices");
  mc->require_subcommand(1);
  std::string ensemble = "rebit", out;
  std::uint64_t samples = 4000000, seed = 1;
  unsigned threads = 1;
  int max_n = 2, max_k = 0;
  auto* mc_est = mc->add_subcommand("estimate", "estimate P(det(rho^PT) >= 0)");
  auto* mc_mom = mc->add_subcommand("moments", "empirical moments <det(rho^PT)^n det(rho)^k>");
  for (auto* c : {mc_est, mc_mom}) {
    c->add_option("--ensemble", ensemble, "rebit | qubit | quabit")->required();
    c->add_option("--samples", samples)->check(CLI::PositiveNumber);
    c->add_option("--seed", seed);
    c->add_option("--threads", threads)->check(CLI::PositiveNumber);
  }
  mc_est->add_option("--out", out, "JSON output (default mc-estimate.json)");
  mc_mom->add_option("--max-n", max_n)->check(CLI::NonNegativeNumber);
  mc_mom->add_option("--max-k", max_k)->check(CLI::NonNegativeNumber);
  mc_mom->add_option("--out", out, "JSON output (default moments-empirical.json)");

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "Legendre reconstruction of the density of det(rho^PT)");
  std::string moments_file, mode = "exact", trace_file, degrees_text;
  int degree = 0, digits = 50;
  rec->add_option("--moments", moments_file, "moment file (JSON)")->required();
  rec->add_option("--degree", degree, "expansion degree")->required()->check(CLI::NonNegativeNumber);
  rec->add_option("--degrees", degrees_text, "extra trace degrees, comma separated");
  rec->add_option("--mode", mode, "exact | float")->check(CLI::IsMember({"exact", "float"}));
  rec->add_option("--digits", digits, "result digits in float mode")->check(CLI::PositiveNumber);
  rec->add_option("--trace", trace_file, "convergence trace CSV");
  rec->add_option("--out", out, "JSON output (default stdout)");

  // hyper
  auto* hyper = app.add_subcommand("hyper", "hypergeometric series");
  hyper->require_subcommand(1);
  std::string upper_text, lower_text, z_text = "0", alpha_text;
  int k = 1;
  auto* h_eval = hyper->add_subcommand("eval", "pFq(upper; lower; z) with a certified radius");
  h_eval->add_option("--upper", upper_text, "comma-separated p/q");
  h_eval->add_option("--lower", lower_text, "comma-separated p/q");
  h_eval->add_option("--z", z_text)->required();
  h_eval->add_option("--digits", digits)->check(CLI::PositiveNumber);
  h_eval->add_option("--out", out);
  auto* h_fam = hyper->add_subcommand("family", "one member of the six-member 7F6 family at z = 27/64");
  h_fam->add_option("--alpha", alpha_text)->required();
  h_fam->add_option("--k", k)->required()->check(CLI::Range(1, 6));
  h_fam->add_option("--digits", digits)->check(CLI::PositiveNumber);
  h_fam->add_option("--out", out);

  // formula
  auto* formula = app.add_subcommand("formula", "affine-plus-weighted family formulas");
  formula->require_subcommand(1);
  std::string config_file, table_file, holdout = "half-integers", report_file;
  int ansatz = 2;
  auto* f_eval = formula->add_subcommand("eval", "evaluate a formula config at alpha");
  f_eval->add_option("--config", config_file)->required();
  f_eval->add_option("--alpha", alpha_text)->required();
  f_eval->add_option("--digits", digits)->check(CLI::PositiveNumber);
  f_eval->add_option("--out", out);
  auto* f_fit = formula->add_subcommand("fit", "fit a formula config to a probability table");
  f_fit->add_option("--table", table_file)->required();
  f_fit->add_option("--ansatz-degree", ansatz)->check(CLI::NonNegativeNumber);
  f_fit->add_option("--holdout", holdout, "integers | half-integers")
      ->check(CLI::IsMember({"integers", "half-integers"}));
  f_fit->add_option("--digits", digits)->check(CLI::PositiveNumber);
  f_fit->add_option("--out", out, "config output (default formula-config.json)");
  f_fit->add_option("--report", report_file, "residual report JSON (default <out>.report.json)");

  // recognize
  auto* recog = app.add_subcommand("recognize", "exact rational or a + b*C form of a decimal");
  std::string value_text, max_den_text = "1000000", constant_name, a_text = "2,0";
  int digits_required = 0;
  recog->add_option("--value", value_text, "decimal literal or a file holding one")->required();
  recog->add_option("--max-den", max_den_text);
  recog->add_option("--constant", constant_name, "named constant for a + b*C");
  recog->add_option("--a-candidates", a_text, "comma-separated p/q");
  recog->add_option("--digits-required", digits_required, "minimum significant digits in the input");
  recog->add_option("--out", out);

  // fitline
  auto* fl = app.add_subcommand("fitline", "least-squares line through the origin of ln P against alpha");
  std::string csv_file = "fitline.csv", svg_file = "fitline.svg";
  fl->add_option("--table", table_file)->required();
  fl->add_option("--csv", csv_file);
  fl->add_option("--svg", svg_file);

  // table check
  auto* table = app.add_subcommand("table", "probability tables");
  table->require_subcommand(1);
  auto* t_check = table->add_subcommand("check", "compare rendered values with the printed decimals");
  t_check->add_option("--table", table_file)->required();
  t_check->add_option("--out", out);

  // verify
  auto* ver = app.add_subcommand("verify", "Monte Carlo against the table at alpha = 1/2, 1, 2");
  std::string ensembles_text = "rebit,qubit,quabit";
  ver->add_option("--table", table_file)->required();
  ver->add_option("--samples", samples)->check(CLI::PositiveNumber);
  ver->add_option("--seed", seed);
  ver->add_option("--threads", threads)->check(CLI::PositiveNumber);
  ver->add_option("--ensembles", ensembles_text);
  ver->add_option("--out", out, "verdict JSON (default verdict.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (mc_est->parsed()) {
      Outputs o("mc estimate");
      Ring ring = ring_flag(ensemble);
      McResult r = mc_separability(ring, samples, seed, threads);
      json doc{{"ensemble", ensemble_name(ring)}, {"alpha", to_string(alpha_of(ring))}, {"samples", r.samples},
               {"seed", r.seed}, {"threads", threads}, {"separable", r.separable}, {"estimate", r.estimate},
               {"std_error", r.std_error}, {"resampled", r.resampled}};
      o.manifest().add_seed(seed);
      o.manifest().set_flag("ensemble", ensemble);
      o.manifest().set_flag("samples", std::to_string(samples));
      o.manifest().set_flag("threads", std::to_string(threads));
      emit(doc, out.empty() ? "mc-estimate.json" : out, o);
      o.finish();
      return 0;
    }
    if (mc_mom->parsed()) {
      Outputs o("mc moments");
      Ring ring = ring_flag(ensemble);
      BivariateMomentTable t = empirical_moments(ring, samples, max_n, max_k, seed, threads);
      json entries = json::array();
      for (int n = 0; n <= t.max_n; ++n)
        for (int kk = 0; kk <= t.max_k; ++kk)
          entries.push_back({{"n", n}, {"k", kk}, {"mean", t.at(n, kk).mean}, {"std_error", t.at(n, kk).std_error}});
      json doc{{"ensemble", ensemble_name(ring)}, {"alpha", to_string(alpha_of(ring))}, {"samples", t.samples},
               {"seed", t.seed}, {"max_n", t.max_n}, {"max_k", t.max_k},
               {"pt_det_range", {t.min_pt_det, t.max_pt_det}}, {"det_range", {t.min_det, t.max_det}},
               {"resampled", t.resampled}, {"entries", entries}};
      o.manifest().add_seed(seed);
      emit(doc, out.empty() ? "moments-empirical.json" : out, o);
      o.finish();
      return 0;
    }
    if (rec->parsed()) {
      Outputs o("reconstruct");
      const bool exact = mode == "exact";
      MomentSequence ms = load_moment_file(moments_file, !exact);
      o.manifest().add_input(moments_file);
      std::vector<int> degrees{degree};
      for (const auto& d : parse_list(degrees_text, "--degrees")) {
        if (d.get_den() != 1 || d < 0) throw InputError("--degrees: entries must be nonnegative integers");
        degrees.push_back(static_cast<int>(d.get_num().get_si()));
      }
      auto cache = make_cache();
      ReconstructionMode m = exact ? ReconstructionMode::exact() : ReconstructionMode::floating(digits);
      ConvergenceTrace trace = convergence_trace(ms, degrees, m, cache.get());
      const TraceRow* main_row = nullptr;
      for (const auto& r : trace.rows)
        if (r.degree == degree) main_row = &r;
      json doc{{"alpha", to_string(ms.alpha)},
               {"interval", {to_string(ms.interval.lower), to_string(ms.interval.upper)}},
               {"degree", degree},
               {"mode", mode}};
      if (!exact) doc["digits"] = digits;
      doc["estimate_rational"] = main_row->estimate.exact ? json(to_string(*main_row->estimate.exact)) : json(nullptr);
      doc["estimate_decimal"] = main_row->estimate.decimal(exact ? 20 : std::min(20, digits));
      doc["warnings"] = trace.warnings;
      if (!trace_file.empty()) o.write(trace_file, trace.to_csv());
      emit(doc, out, o);
      o.finish();
      return 0;
    }
    if (h_eval->parsed()) {
      Outputs o("hyper eval");
      HypergeometricSpec s{parse_list(upper_text, "--upper"), parse_list(lower_text, "--lower"),
                           parse_flag_rational(z_text, "--z")};
      CertifiedValue v = pfq_eval(s, digits);
      json doc{{"spec", s.describe()}, {"digits", digits}};
      doc.update(certified_json(v, digits));
      emit(doc, out, o);
      o.finish();
      return 0;
    }
    if (h_fam->parsed()) {
      Outputs o("hyper family");
      BigRational alpha = parse_flag_rational(alpha_text, "--alpha");
      CertifiedValue v = family_member_eval(alpha, k, digits);
      json doc{{"alpha", to_string(alpha)}, {"k", k}, {"spec", FamilyMember{k, alpha}.spec().describe()},
               {"digits", digits}};
      doc.update(certified_json(v, digits));
      emit(doc, out, o);
      o.finish();
      return 0;
    }
    if (f_eval->parsed()) {
      Outputs o("formula eval");
      FormulaConfig cfg = load_formula_config(config_file);
      o.manifest().add_input(config_file);
      BigRational alpha = parse_flag_rational(alpha_text, "--alpha");
      CertifiedValue v = assemble_P(cfg, alpha, digits);
      json doc{{"alpha", to_string(alpha)}, {"digits", digits}, {"description", cfg.description}};
      doc.update(certified_json(v, digits));
      emit(doc, out, o);
      o.finish();
      return 0;
    }
    if (f_fit->parsed()) {
      Outputs o("formula fit");
      ProbabilityTable t = load_probability_table(table_file);
      o.manifest().add_input(table_file);
      FitProblem p;
      p.ansatz_degree = ansatz;
      size_t ignored = 0;
      for (const auto& row : t.rows) {
        const bool integral = row.alpha.get_den() == 1;
        const bool half = row.alpha.get_den() == 2;
        if (!integral && !half) {
          ++ignored;
          continue;
        }
        const bool to_holdout = holdout == "integers" ? integral : half;
        (to_holdout ? p.holdout : p.samples).push_back({row.alpha, row.value});
      }
      FitResult r = fit_formula(p, digits);
      const std::string cfg_path = out.empty() ? "formula-config.json" : out;
      o.write(cfg_path, to_json(r.config));
      auto residuals = [&](const std::vector<PointResidual>& rs) {
        json a = json::array();
        for (const auto& x : rs)
          a.push_back({{"alpha", to_string(x.alpha)}, {"residual", scientific_render(x.residual.to_rational(), 3)}});
        return a;
      };
      const FitReport& rep = r.report;
      json doc{{"unknowns", rep.unknowns},
               {"equations", rep.equations},
               {"holdout_rows", p.holdout.size()},
               {"ignored_rows", ignored},
               {"working_digits", rep.working_digits},
               {"condition_estimate", scientific_render(rep.condition_estimate.to_rational(), 3)},
               {"rationalized", rep.rationalized},
               {"max_sample_residual", scientific_render(rep.max_sample_residual.to_rational(), 3)},
               {"max_holdout_residual", scientific_render(rep.max_holdout_residual.to_rational(), 3)},
               {"sample_residuals", residuals(rep.sample_residuals)},
               {"holdout_residuals", residuals(rep.holdout_residuals)}};
      o.write(report_file.empty() ? cfg_path + ".report.json" : report_file, doc.dump(2) + "\n");
      o.finish();
      return 0;
    }
    if (recog->parsed()) {
      Outputs o("recognize");
      std::string literal = value_text;
      if (fs::is_regular_file(value_text)) {
        std::ifstream in(value_text);
        std::stringstream ss;
        ss << in.rdbuf();
        literal = ss.str();
        while (!literal.empty() && std::isspace(static_cast<unsigned char>(literal.back()))) literal.pop_back();
        while (!literal.empty() && std::isspace(static_cast<unsigned char>(literal.front()))) literal.erase(0, 1);
        o.manifest().add_input(value_text);
      }
      DecimalLiteral lit = parse_decimal(literal);
      if (lit.significant_digits < digits_required)
        throw InputError("--value carries " + std::to_string(lit.significant_digits) + " significant digits; " +
                         std::to_string(digits_required) + " required");
      BigInt max_den;
      if (max_den.set_str(max_den_text, 10) != 0) {
        // allow 1e40 style
        DecimalLiteral d = parse_decimal(max_den_text);
        if (d.value.get_den() != 1) throw InputError("--max-den must be an integer");
        max_den = d.value.get_num();
      }
      std::optional<RecognitionCandidate> c;
      if (constant_name.empty()) {
        c = to_rational(literal, max_den);
      } else {
        std::vector<BigRational> as = parse_list(a_text, "--a-candidates");
        c = recognize_affine(literal, constant_name, as, max_den, constants());
      }
      json doc;
      if (!c) {
        doc = {{"form", "none"}};
      } else if (c->form == CandidateForm::Rational) {
        doc = {{"form", "rational"},
               {"p", c->value.get_num().get_str()},
               {"q", c->value.get_den().get_str()},
               {"value", to_string(c->value)}};
      } else {
        doc = {{"form", "affine"}, {"a", to_string(c->a)}, {"b", to_string(c->b)}, {"constant", c->constant},
               {"expression", c->describe()}};
      }
      if (c) {
        doc["residual"] = scientific_render(c->residual.to_rational(), 3);
        doc["confidence"] = c->confidence;
        doc["exact_match"] = c->exact_match;
      }
      emit(doc, out, o);
      o.finish();
      return 0;
    }
    if (fl->parsed()) {
      Outputs o("fitline");
      ProbabilityTable t = load_probability_table(table_file);
      o.manifest().add_input(table_file);
      FitlineResult r = fitline(t);
      o.write(csv_file, r.csv());
      o.write(svg_file, r.svg());
      o.finish();
      std::cout << json{{"slope", r.slope.to_string(20)}, {"points", r.points.size()}, {"csv", csv_file},
                        {"svg", svg_file}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (t_check->parsed()) {
      Outputs o("table check");
      ProbabilityTable t = load_probability_table(table_file);
      o.manifest().add_input(table_file);
      TableCheckReport report = table_check(t);
      std::string text = report.to_json();
      if (out.empty() || out == "-") {
        std::cout << text;
      } else {
        o.write(out, text);
        o.finish();
      }
      if (!report.ok())
        throw VerificationFailure("table check: " + std::to_string(report.count(CheckStatus::Mismatch)) +
                                  " row(s) disagree with the printed decimals");
      return 0;
    }
    if (ver->parsed()) {
      Outputs o("verify");
      ProbabilityTable t = load_probability_table(table_file);
      o.manifest().add_input(table_file);
      o.manifest().add_seed(seed);
      std::vector<Ring> rings;
      std::stringstream ss(ensembles_text);
      std::string item;
      while (std::getline(ss, item, ',')) rings.push_back(parse_ensemble(item));
      VerifyReport report = pipeline_verify(t, samples, seed, threads, rings);
      o.write(out.empty() ? "verdict.json" : out, report.to_json());
      o.finish();
      std::cout << report.to_json();
      if (!report.ok()) throw VerificationFailure("verify: at least one ensemble is outside 3 standard errors");
      return 0;
    }
  } catch (const VerificationFailure& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 4;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
