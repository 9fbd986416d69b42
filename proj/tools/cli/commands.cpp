#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/range.hpp"
#include "cli/table.hpp"
#include "poltyrev/asymptotics.hpp"
#include "poltyrev/bounds.hpp"
#include "poltyrev/dispersion.hpp"
#include "poltyrev/errors.hpp"
#include "poltyrev/lattices.hpp"
#include "poltyrev/simulation.hpp"

namespace poltyrev::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

/// Reported as a usage error (exit 2).
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Common {
  std::string format = "csv";
  std::string out_path;
  double sigma2 = 1.0;
};

struct Args {
  Common common;
  std::string n_text;
  std::string nld_text;
  std::string which = "sphere,ml,typicality,poltyrev";
  double eps = 0.01;
  std::optional<double> target_eps;
  std::string lattice;
  std::uint64_t trials = 100000;
  std::uint64_t seed = 1;
  int streams = 1;
  double scale = 1.0;
  std::string r_text = "0.5,1,2";
};

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  throw UsageError("--format must be csv or json");
}

std::vector<int> positive_dims(const std::string& text) {
  std::vector<int> ns;
  try {
    ns = parse_int_range(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--n: ") + e.what());
  }
  for (int n : ns) {
    if (n < 1) throw UsageError("--n: dimensions must be >= 1");
  }
  return ns;
}

// A number, or one of the named landmarks delta_star, delta_cr, delta_ex.
double parse_nld(const std::string& text, double sigma2) {
  if (text == "delta_star") return delta_star(sigma2);
  if (text == "delta_cr") return delta_cr(sigma2);
  if (text == "delta_ex") return delta_ex(sigma2);
  std::vector<double> v;
  try {
    v = parse_real_range(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--nld: ") + e.what());
  }
  if (v.size() != 1) throw UsageError("--nld takes a single value");
  return v[0];
}

std::vector<BoundKind> parse_which(const std::string& text) {
  std::vector<BoundKind> kinds;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "sphere") {
      kinds.push_back(BoundKind::sphere);
    } else if (item == "ml") {
      kinds.push_back(BoundKind::ml);
    } else if (item == "typicality") {
      kinds.push_back(BoundKind::typicality);
    } else if (item == "poltyrev") {
      kinds.push_back(BoundKind::poltyrev_r);
    } else {
      throw UsageError("--which: unknown bound '" + item + "'");
    }
  }
  if (kinds.empty()) throw UsageError("--which: empty");
  return kinds;
}

BoundValue evaluate(BoundKind kind, const ChannelPoint& p) {
  switch (kind) {
    case BoundKind::sphere: return sphere_bound(p);
    case BoundKind::ml: return ml_bound(p);
    case BoundKind::typicality: return typicality_bound(p);
    case BoundKind::poltyrev_r: return poltyrev_ml_bound(p);
  }
  throw std::logic_error("unreachable");
}

double log_or_nan(const LogProb& p) { return p.log(); }

double log_or_nan(const AsymptoticValue& v) { return v.infinite ? kNaN : v.value.log(); }

double ratio(double log_exact, double log_asym) {
  if (std::isnan(log_exact) || std::isnan(log_asym)) return kNaN;
  return std::exp(log_exact - log_asym);
}

void run_bounds(const Args& a, std::ostream& out) {
  const auto kinds = parse_which(a.which);
  const double nld = parse_nld(a.nld_text, a.common.sigma2);
  std::vector<std::string> cols{"n"};
  for (BoundKind k : kinds) {
    cols.emplace_back(to_string(k));
    cols.push_back("log_" + std::string(to_string(k)));
  }
  RowWriter w(out, parse_format(a.common.format), cols);
  for (int n : positive_dims(a.n_text)) {
    const ChannelPoint p(n, nld, a.common.sigma2);
    std::vector<Cell> row{static_cast<std::int64_t>(n)};
    for (BoundKind k : kinds) {
      const BoundValue b = evaluate(k, p);
      row.emplace_back(b.value());
      row.emplace_back(b.raw.log());
    }
    w.write(row);
  }
  w.finish();
}

void run_asym(const Args& a, std::ostream& out) {
  const double sigma2 = a.common.sigma2;
  const double nld = parse_nld(a.nld_text, sigma2);
  RowWriter w(out, parse_format(a.common.format),
              {"n",
               "nld",
               "rho_star",
               "upsilon",
               "psi",
               "mu",
               "log_sphere",
               "log_sphere_lower_analytic",
               "log_sphere_lower_q",
               "log_sphere_upper",
               "log_sphere_asym",
               "sphere_ratio",
               "log_ml",
               "log_ml_lower_analytic",
               "log_ml_lower_q",
               "log_ml_upper",
               "log_ml_asym",
               "ml_ratio",
               "log_typicality",
               "log_typicality_asym",
               "typicality_ratio",
               "log_poltyrev",
               "log_poltyrev_asym",
               "poltyrev_ratio",
               "regime"});
  for (int n : positive_dims(a.n_text)) {
    const ChannelPoint p(n, nld, sigma2);
    AsymptoticTerms t{kNaN, kNaN, kNaN, vnr_from_nld(nld, sigma2)};
    std::optional<SandwichBounds> sphere_sw;
    std::optional<SandwichBounds> ml_sw;
    if (n > 2) {
      t = terms(p);
      // Sandwiches outside their preconditions are reported as NaN cells.
      try {
        sphere_sw = sphere_sandwich(p);
      } catch (const DomainError&) {
      }
      try {
        ml_sw = ml_sandwich(p);
      } catch (const DomainError&) {
      }
    }
    const double ls = sphere_bound(p).raw.log();
    const double lm = ml_bound(p).raw.log();
    const double lp = poltyrev_ml_bound(p).raw.log();
    double lt = kNaN;
    try {
      lt = typicality_bound(p).raw.log();
    } catch (const DomainError&) {
    }
    const double as = log_or_nan(sphere_asymptotic(p));
    const double am = log_or_nan(ml_asymptotic(p));
    const double at = log_or_nan(typicality_asymptotic(p));
    const double ap = log_or_nan(poltyrev_r_asymptotic(p));
    auto sw = [](const std::optional<SandwichBounds>& s, LogProb SandwichBounds::*m) {
      return s ? log_or_nan((*s).*m) : kNaN;
    };
    const NldRegime regime = regime_of(nld, sigma2);
    const std::int64_t code = regime == NldRegime::below_critical ? -1 : regime == NldRegime::critical ? 0 : 1;
    w.write({static_cast<std::int64_t>(n), nld, t.rho_star, t.upsilon, t.psi, t.mu, ls,
             sw(sphere_sw, &SandwichBounds::lower_analytic), sw(sphere_sw, &SandwichBounds::lower_q),
             sw(sphere_sw, &SandwichBounds::upper), as, ratio(ls, as), lm,
             sw(ml_sw, &SandwichBounds::lower_analytic), sw(ml_sw, &SandwichBounds::lower_q),
             sw(ml_sw, &SandwichBounds::upper), am, ratio(lm, am), lt, at, ratio(lt, at), lp, ap,
             ratio(lp, ap), code});
  }
  w.finish();
}

void run_invert(const Args& a, std::ostream& out) {
  const double sigma2 = a.common.sigma2;
  if (!(a.eps > 0.0 && a.eps < 1.0)) throw UsageError("--eps must lie in (0,1)");
  RowWriter w(out, parse_format(a.common.format),
              {"n", "eps", "converse", "achievable", "approx", "delta_star", "delta_cr",
               "gap_db_converse", "gap_db_achievable", "gap_db_approx"});
  for (int n : positive_dims(a.n_text)) {
    const double conv = nld_eps_converse(n, a.eps, sigma2).delta;
    const double ach = nld_eps_achievable(n, a.eps, sigma2).delta;
    const double approx = nld_eps_approx(n, a.eps, sigma2);
    w.write({static_cast<std::int64_t>(n), a.eps, conv, ach, approx, delta_star(sigma2),
             delta_cr(sigma2), gap_db(conv, sigma2), gap_db(ach, sigma2), gap_db(approx, sigma2)});
  }
  w.finish();
}

void run_simulate(const Args& a, std::ostream& out) {
  const double sigma2 = a.common.sigma2;
  if (a.trials < 1) throw UsageError("--trials must be >= 1");
  if (a.streams < 1) throw UsageError("--streams must be >= 1");
  if (!(a.scale > 0.0)) throw UsageError("--scale must be positive");
  const LatticeSpec spec = builtin(a.lattice).scaled(a.scale);
  RowWriter w(out, parse_format(a.common.format),
              {"lattice", "n", "delta", "sigma2", "trials", "errors", "p_hat", "ci_low", "ci_high",
               "seed", "streams", "scale", "gap_db", "target_eps"});
  SimEstimate e;
  double scale = spec.scale;
  double target = kNaN;
  if (a.target_eps) {
    target = *a.target_eps;
    if (!(target > 0.0 && target < 1.0)) throw UsageError("--target-eps must lie in (0,1)");
    const ScaleSearchResult r = find_scale_for_error(spec, target, sigma2, a.trials, a.seed, a.streams);
    e = r.estimate;
    scale = r.scale;
  } else {
    e = simulate_error_prob(spec, sigma2, a.trials, a.seed, a.streams);
  }
  w.write({e.lattice, static_cast<std::int64_t>(e.n), e.delta, e.sigma2, e.trials, e.errors, e.p_hat,
           e.ci_low, e.ci_high, e.seed, static_cast<std::int64_t>(e.streams), scale,
           gap_db(e.delta, sigma2), target});
  w.finish();
}

void run_equiv(const Args& a, std::ostream& out) {
  const auto ns = positive_dims(a.n_text);
  for (int n : ns) {
    if (n < 2 || n > 8) throw UsageError("equiv: --n must lie in 2..8, got " + std::to_string(n));
  }
  std::vector<double> rs;
  try {
    rs = parse_real_range(a.r_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--r: ") + e.what());
  }
  for (double r : rs) {
    if (!(r > 0.0)) throw UsageError("--r: radii must be positive");
  }
  RowWriter w(out, parse_format(a.common.format),
              {"n", "r", "sigma2", "lhs", "rhs", "discrepancy", "converged"});
  for (int n : ns) {
    for (double r : rs) {
      const EquivalenceResult res = equivalence_check(n, r, a.common.sigma2);
      w.write({static_cast<std::int64_t>(n), r, a.common.sigma2, res.lhs, res.rhs, res.discrepancy,
               static_cast<std::int64_t>(res.converged ? 1 : 0)});
    }
  }
  w.finish();
}

void add_common(CLI::App* sub, Args& a) {
  sub->add_option("--sigma2", a.common.sigma2, "noise variance per dimension")->capture_default_str();
  sub->add_option("--format", a.common.format, "csv or json")->capture_default_str();
  sub->add_option("--out", a.common.out_path, "output path (default stdout)");
}

void report(std::ostream& err, const char* kind, const std::string& message) {
  std::string flat = message;
  for (char& c : flat) {
    if (c == '\n') c = ' ';
  }
  err << "poltyrev: error: " << kind << ": " << flat << '\n';
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite-dimensional bounds for lattices over the unconstrained AWGN channel", "poltyrev"};
  app.require_subcommand(1);
  Args a;

  CLI::App* bounds = app.add_subcommand("bounds", "sphere, ML, typicality and Poltyrev-radius bounds");
  bounds->add_option("--n", a.n_text, "dimension range")->required();
  bounds->add_option("--nld", a.nld_text, "NLD in nats (or delta_star, delta_cr, delta_ex)")->required();
  bounds->add_option("--which", a.which, "comma list of sphere,ml,typicality,poltyrev")->capture_default_str();
  add_common(bounds, a);

  CLI::App* asym = app.add_subcommand("asym", "exact bounds against sandwiches and asymptotic forms");
  asym->add_option("--n", a.n_text, "dimension range")->required();
  asym->add_option("--nld", a.nld_text, "NLD in nats (or delta_star, delta_cr, delta_ex)")->required();
  add_common(asym, a);

  CLI::App* invert = app.add_subcommand("invert", "largest NLD at a target error probability");
  invert->add_option("--n", a.n_text, "dimension range")->required();
  invert->add_option("--eps", a.eps, "target error probability")->capture_default_str();
  add_common(invert, a);

  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo error probability of a builtin lattice");
  simulate->add_option("--lattice", a.lattice, "Z<k>, Zn(<k>), A2, D<k>, E8")->required();
  simulate->add_option("--target-eps", a.target_eps, "search for the scale reaching this error probability");
  simulate->add_option("--trials", a.trials, "trials (per probe with --target-eps)")->capture_default_str();
  simulate->add_option("--seed", a.seed, "seed")->capture_default_str();
  simulate->add_option("--streams", a.streams, "parallel random streams")->capture_default_str();
  simulate->add_option("--scale", a.scale, "lattice scale without --target-eps")->capture_default_str();
  add_common(simulate, a);

  CLI::App* equiv = app.add_subcommand("equiv", "numerical check of the D-section identity");
  equiv->add_option("--n", a.n_text, "dimensions in 2..8")->required();
  equiv->add_option("--r", a.r_text, "radius list")->capture_default_str();
  add_common(equiv, a);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << e.what() << '\n';
      return kOk;
    }
    report(err, "usage", e.what());
    return kUsageError;
  }

  try {
    parse_format(a.common.format);
    std::ofstream file;
    std::ostream* sink = &out;
    if (!a.common.out_path.empty()) {
      file.open(a.common.out_path, std::ios::binary);
      if (!file) throw UsageError("cannot open --out path '" + a.common.out_path + "'");
      sink = &file;
    }
    if (bounds->parsed()) {
      run_bounds(a, *sink);
    } else if (asym->parsed()) {
      run_asym(a, *sink);
    } else if (invert->parsed()) {
      run_invert(a, *sink);
    } else if (simulate->parsed()) {
      run_simulate(a, *sink);
    } else if (equiv->parsed()) {
      run_equiv(a, *sink);
    }
    sink->flush();
  } catch (const UsageError& e) {
    report(err, "usage", e.what());
    return kUsageError;
  } catch (const UnsupportedLattice& e) {
    report(err, "unsupported", e.what());
    return kUsageError;
  } catch (const DomainError& e) {
    report(err, "domain", e.what());
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    report(err, "usage", e.what());
    return kUsageError;
  } catch (const ConvergenceError& e) {
    report(err, "numerical", e.what());
    return kNumericalFailure;
  } catch (const std::exception& e) {
    report(err, "numerical", e.what());
    return kNumericalFailure;
  }
  return kOk;
}

}  // namespace poltyrev::cli
