#pragma once

// Command-line front end. dispatch() parses argv, runs one subcommand and
// writes its CSV or JSON report. Exit codes: 0 success, 1 usage or parse
// error, 2 precondition or computation error.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <gmpxx.h>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "modapprox/approx.hpp"
#include "modapprox/bigfloat.hpp"
#include "modapprox/cache.hpp"
#include "modapprox/coefficients.hpp"
#include "modapprox/contfrac.hpp"
#include "modapprox/equidist.hpp"
#include "modapprox/error.hpp"
#include "modapprox/game.hpp"
#include "modapprox/inhomog.hpp"
#include "modapprox/rate.hpp"

namespace modapprox::cli {

using json = nlohmann::ordered_json;

inline std::string num(double v) { return fmt::format("{:.17g}", v); }

struct RunConfig {
  std::string form = "delta";
  std::string curve;  // a1,a2,a3,a4,a6,N
  int precision = 256;
  std::string cache_dir;
  std::string format = "csv";
  std::string out;
  std::uint64_t seed = 1;
};

inline NewformSpec parse_curve(const std::string& text) {
  std::vector<long> v;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stol(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--curve", "'" + item + "' is not an integer");
    }
  }
  if (v.size() != 6 || v[5] <= 0)
    throw CLI::ValidationError("--curve", "expected a1,a2,a3,a4,a6,N with a positive conductor N");
  return NewformSpec::elliptic_curve({v[0], v[1], v[2], v[3], v[4]}, static_cast<std::uint64_t>(v[5]));
}

inline NewformSpec resolve_form(const RunConfig& cfg) {
  if (!cfg.curve.empty()) return parse_curve(cfg.curve);
  return forms::by_name(cfg.form);
}

inline CoefficientTable load_table(const RunConfig& cfg, std::uint64_t limit) {
  return cache::build_or_load(resolve_form(cfg), limit, cache::resolve_dir(cfg.cache_dir));
}

/// golden | sqrt2 | e | pi, a rational a/b, or a decimal literal.
inline mp::Interval parse_real(const std::string& text, mpfr_prec_t prec) {
  if (text == "golden") return contfrac::constants::golden_ratio(prec);
  if (text == "sqrt2") return contfrac::constants::sqrt2(prec);
  if (text == "e") return contfrac::constants::e(prec);
  if (text == "pi") return contfrac::constants::pi(prec);
  if (text.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(text, 10) != 0 || q.get_den() == 0) throw CLI::ValidationError("--theta", "bad rational '" + text + "'");
    q.canonicalize();
    return mp::Interval::from_rational(q, prec);
  }
  mp::Float lo(prec), hi(prec);
  char* end = nullptr;
  if (mpfr_strtofr(lo.get(), text.c_str(), &end, 10, MPFR_RNDD), end == text.c_str() || *end != '\0')
    throw CLI::ValidationError("--theta", "bad number '" + text + "'");
  mpfr_strtofr(hi.get(), text.c_str(), &end, 10, MPFR_RNDU);
  return mp::Interval(lo, hi);
}

inline std::optional<mpq_class> parse_exact_rational(const std::string& text) {
  if (text.find('/') == std::string::npos) return std::nullopt;
  mpq_class q;
  if (q.set_str(text, 10) != 0 || q.get_den() == 0) return std::nullopt;
  q.canonicalize();
  return q;
}

inline mpq_class parse_game_ratio(const std::string& text, const std::string& flag) {
  if (auto q = parse_exact_rational(text)) return *q;
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return game::exact(v);
  } catch (const std::exception&) {
    throw CLI::ValidationError(flag, "'" + text + "' is not a number");
  }
}

class Output {
 public:
  Output(const RunConfig& cfg, std::ostream& fallback) : fallback_(fallback) {
    if (!cfg.out.empty()) {
      file_.open(cfg.out);
      if (!file_) throw ComputationError("cannot open output file " + cfg.out);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : fallback_; }

 private:
  std::ofstream file_;
  std::ostream& fallback_;
};

inline json witness_json(const std::vector<inhomog::ApproxWitness>& ws) {
  json arr = json::array();
  for (const auto& w : ws) arr.push_back({{"m", w.m}, {"distance", w.distance}, {"scaled", w.scaled}});
  return arr;
}

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// θ/(2π) for a prime of the form, or a literal real.
struct ThetaSource {
  std::uint64_t p = 0;
  std::string theta;

  mp::Interval interval(const RunConfig& cfg) const {
    if (!theta.empty()) return parse_real(theta, cfg.precision);
    if (p == 0) throw CLI::ValidationError("--p", "give --p or --theta");
    const CoefficientTable t = load_table(cfg, p);
    return angle(t, p, cfg.precision).fraction;
  }
};

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fourier coefficients of newforms, Sato-Tate angles and Diophantine approximation experiments",
               "modapprox"};
  app.require_subcommand(1, 1);
  RunConfig cfg;
  auto common = [&](CLI::App* sub, bool formats) {
    sub->add_option("--form", cfg.form, "Bundled form: delta, 11a1, 32a2, 37a1")->capture_default_str();
    sub->add_option("--curve", cfg.curve, "Elliptic curve a1,a2,a3,a4,a6,N (overrides --form)");
    sub->add_option("--precision", cfg.precision, "Working precision in bits")
        ->check(CLI::Range(64, 1 << 20))
        ->capture_default_str();
    sub->add_option("--cache-dir", cfg.cache_dir, std::string("Coefficient cache directory (or ") + cache::kEnvVar + ")");
    sub->add_option("--out", cfg.out, "Write the report to a file instead of stdout");
    sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
    if (formats)
      sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  };

  // coeffs
  std::uint64_t limit = 100;
  auto* coeffs = app.add_subcommand("coeffs", "Raw and normalized coefficients a_f(n), a(n)");
  common(coeffs, true);
  coeffs->add_option("--limit", limit, "Largest n")->check(CLI::PositiveNumber)->capture_default_str();

  // angle
  std::vector<std::uint64_t> angle_primes;
  auto* angle_cmd = app.add_subcommand("angle", "Sato-Tate angles theta_p with certified radius");
  common(angle_cmd, true);
  angle_cmd->add_option("--p", angle_primes, "Prime(s)")->required();

  // contfrac
  ThetaSource cf_src;
  std::size_t depth = 30;
  auto* cf_cmd = app.add_subcommand("contfrac", "Certified continued fraction of theta_p/(2 pi) or a given real");
  common(cf_cmd, true);
  cf_cmd->add_option("--p", cf_src.p, "Prime: expand theta_p/(2 pi)");
  cf_cmd->add_option("--theta", cf_src.theta, "Real to expand: golden, sqrt2, e, pi, a/b or a decimal");
  cf_cmd->add_option("--depth", depth, "Maximum number of partial quotients")->capture_default_str();

  // minkowski
  ThetaSource mk_src;
  std::string mk_x = "0";
  std::uint64_t m_max = 10000;
  auto* mk_cmd = app.add_subcommand("minkowski", "All m <= m-max with ||m theta + x|| < 3/m");
  common(mk_cmd, true);
  mk_cmd->add_option("--p", mk_src.p, "Prime: theta = theta_p/(2 pi)");
  mk_cmd->add_option("--theta", mk_src.theta, "theta as golden, sqrt2, e, pi, a/b or a decimal");
  mk_cmd->add_option("--x", mk_x, "Shift x")->capture_default_str();
  mk_cmd->add_option("--m-max", m_max, "Horizon")->check(CLI::PositiveNumber)->capture_default_str();

  // fk-sum
  ThetaSource fk_src;
  std::string phi_text = "1/n";
  std::size_t blocks = 20;
  std::uint64_t cap = 100000000;
  auto* fk_cmd = app.add_subcommand("fk-sum", "Partial sums of min(phi(n), ||q_r theta||) over convergent blocks");
  common(fk_cmd, true);
  fk_cmd->add_option("--p", fk_src.p, "Prime: theta = theta_p/(2 pi)");
  fk_cmd->add_option("--theta", fk_src.theta, "theta as golden, sqrt2, e, pi or a decimal");
  fk_cmd->add_option("--phi", phi_text, "Rate: 1/n, 1/n^2, 1/log, const:c, pow:c:s, nlog:c:a, invlog:c")
      ->capture_default_str();
  fk_cmd->add_option("--blocks", blocks, "Number of blocks R")->check(CLI::PositiveNumber)->capture_default_str();
  fk_cmd->add_option("--cap", cap, "Maximum directly summed terms per block")->capture_default_str();

  // afz
  double x = 0.0;
  std::uint64_t n_max = 10000;
  double constant = 1.0;
  auto* afz_cmd = app.add_subcommand("afz", "Running minima of |a(n) - x| scaled by log n");
  common(afz_cmd, false);
  afz_cmd->add_option("--x", x, "Target")->capture_default_str();
  afz_cmd->add_option("--n-max", n_max, "Horizon")->check(CLI::PositiveNumber)->capture_default_str();
  afz_cmd->add_option("--constant", constant, "Count indices with log(n)|a(n) - x| <= constant")
      ->capture_default_str();

  // thm2
  std::uint64_t p = 2;
  auto* thm2_cmd = app.add_subcommand("thm2", "Witnesses m with m |a(p^m) - x| <= 6 pi / sin theta_p");
  common(thm2_cmd, false);
  thm2_cmd->add_option("--p", p, "Prime")->capture_default_str();
  thm2_cmd->add_option("--x", x, "Target")->capture_default_str();
  thm2_cmd->add_option("--m-max", m_max, "Horizon")->check(CLI::PositiveNumber)->capture_default_str();

  // bad
  std::string rate_text = "m^2";
  std::optional<double> delta;
  auto* bad_cmd = app.add_subcommand("bad", "Finite-horizon inf of rate(m) |a(p^m) - x|");
  common(bad_cmd, false);
  bad_cmd->add_option("--p", p, "Prime")->capture_default_str();
  auto* x_opt = bad_cmd->add_option("--x", x, "Target");
  bad_cmd->add_option("--delta", delta, "Use x = sin(2 pi delta) / sin theta_p, delta in (0, 1/8)")->excludes(x_opt);
  bad_cmd->add_option("--rate", rate_text, "Rate function")->capture_default_str();
  bad_cmd->add_option("--m-max", m_max, "Horizon")->check(CLI::PositiveNumber)->capture_default_str();

  // equidist
  std::uint64_t x_limit = 10000;
  std::string measure_name = "sato-tate";
  double alpha_t = -1.0, beta_t = 1.0;
  std::size_t bins = 20;
  std::string hist_out;
  auto* eq_cmd = app.add_subcommand("equidist", "Empirical distribution of a(p)/2 against a limiting measure");
  common(eq_cmd, false);
  eq_cmd->add_option("--x-limit", x_limit, "Largest prime")->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 22))
      ->capture_default_str();
  eq_cmd->add_option("--measure", measure_name, "sato-tate, cm or arcsine")->capture_default_str();
  eq_cmd->add_option("--alpha", alpha_t, "Interval left end")->capture_default_str();
  eq_cmd->add_option("--beta", beta_t, "Interval right end")->capture_default_str();
  eq_cmd->add_option("--bins", bins, "Histogram bins")->check(CLI::PositiveNumber)->capture_default_str();
  eq_cmd->add_option("--hist-out", hist_out, "Write the histogram CSV here");

  // game
  std::string g_alpha = "1/4", g_beta = "1/2";
  std::size_t rounds = 30;
  std::uint64_t horizon = 1000;
  std::string strat_a = "avoid", strat_b = "chase";
  auto* game_cmd = app.add_subcommand("game", "Schmidt game against the targets a(p^m), m <= horizon");
  common(game_cmd, false);
  game_cmd->add_option("--alpha", g_alpha, "alpha in (0,1), decimal or a/b")->capture_default_str();
  game_cmd->add_option("--beta", g_beta, "beta in (0,1), decimal or a/b")->capture_default_str();
  game_cmd->add_option("--rounds", rounds, "Rounds")->check(CLI::PositiveNumber)->capture_default_str();
  game_cmd->add_option("--p", p, "Prime")->capture_default_str();
  game_cmd->add_option("--horizon", horizon, "Targets a(p^m) for m <= horizon")->check(CLI::PositiveNumber)
      ->capture_default_str();
  game_cmd->add_option("--strategy-a", strat_a, "avoid, leftmost, rightmost or random")
      ->check(CLI::IsMember({"avoid", "leftmost", "rightmost", "random"}))
      ->capture_default_str();
  game_cmd->add_option("--strategy-b", strat_b, "chase, leftmost, rightmost or random")
      ->check(CLI::IsMember({"chase", "leftmost", "rightmost", "random"}))
      ->capture_default_str();

  std::vector<const char*> argv{"modapprox"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    Output sink(cfg, out);
    std::ostream& o = sink.stream();
    const bool as_json = cfg.format == "json";

    if (*coeffs) {
      const CoefficientTable t = load_table(cfg, limit);
      if (as_json) {
        json rows = json::array();
        for (std::uint64_t n = 1; n <= limit; ++n)
          rows.push_back({{"n", n}, {"a_f_n", t.raw(n).get_str()}, {"a_n", t.normalized(n)}});
        o << json{{"form", t.spec().id()}, {"limit", limit}, {"rows", rows}}.dump(2) << '\n';
      } else {
        o << "n,a_f_n,a_n\n";
        for (std::uint64_t n = 1; n <= limit; ++n) o << n << ',' << t.raw(n).get_str() << ',' << num(t.normalized(n)) << '\n';
      }
    } else if (*angle_cmd) {
      std::uint64_t top = 2;
      for (auto q : angle_primes) top = std::max(top, q);
      const CoefficientTable t = load_table(cfg, top);
      json rows = json::array();
      if (!as_json) o << "p,a_f_p,theta,theta_radius,fraction,classification\n";
      for (auto q : angle_primes) {
        const AngleRecord r = angle(t, q, cfg.precision);
        const double radius = mp::div_2exp(r.theta, 1).width().to_double(MPFR_RNDU);
        if (as_json) {
          rows.push_back({{"p", q}, {"a_f_p", r.ap.get_str()}, {"theta", r.theta_mid().to_string(40)},
                          {"theta_radius", radius}, {"fraction", r.fraction_mid().to_string(40)},
                          {"cos_theta", r.cos_theta}, {"sin_theta", r.sin_theta},
                          {"classification", to_string(r.classification)}});
        } else {
          o << q << ',' << r.ap.get_str() << ',' << r.theta_mid().to_string(40) << ',' << num(radius) << ','
            << r.fraction_mid().to_string(40) << ',' << to_string(r.classification) << '\n';
        }
      }
      if (as_json) o << json{{"form", t.spec().id()}, {"precision", cfg.precision}, {"angles", rows}}.dump(2) << '\n';
    } else if (*cf_cmd) {
      contfrac::ContinuedFraction cf;
      if (auto q = parse_exact_rational(cf_src.theta)) cf = contfrac::expand(*q, depth, cfg.precision);
      else cf = contfrac::expand(cf_src.interval(cfg), depth);
      std::vector<mpz_class> quotients{cf.a0};
      quotients.insert(quotients.end(), cf.quotients.begin(), cf.quotients.end());
      if (as_json) {
        json rows = json::array();
        for (std::size_t r = 0; r < quotients.size(); ++r)
          rows.push_back({{"r", r}, {"a_r", quotients[r].get_str()}, {"s_r", cf.numerators[r].get_str()},
                          {"q_r", cf.denominators[r].get_str()}});
        o << json{{"certified_depth", cf.certified_depth()}, {"terminated", cf.terminated}, {"rows", rows}}.dump(2)
          << '\n';
      } else {
        o << "r,a_r,s_r,q_r\n";
        for (std::size_t r = 0; r < quotients.size(); ++r)
          o << r << ',' << quotients[r].get_str() << ',' << cf.numerators[r].get_str() << ','
            << cf.denominators[r].get_str() << '\n';
      }
    } else if (*mk_cmd) {
      const mp::Interval theta = mk_src.interval(cfg);
      const mp::Interval shift = parse_real(mk_x, cfg.precision);
      const auto ws = inhomog::minkowski_witnesses(theta.mid(), shift.mid(), m_max);
      if (as_json) {
        o << json{{"m_max", m_max}, {"count", ws.size()}, {"witnesses", witness_json(ws)}}.dump(2) << '\n';
      } else {
        o << "m,dist,scaled\n";
        for (const auto& w : ws) o << w.m << ',' << num(w.distance) << ',' << num(w.scaled) << '\n';
      }
    } else if (*fk_cmd) {
      const RateFunction phi = parse_rate(phi_text);
      const contfrac::ContinuedFraction cf = contfrac::expand(fk_src.interval(cfg), blocks + 1);
      inhomog::FkOptions opt;
      opt.sum.cap = cap;
      const auto sums = inhomog::fuchs_kim_partial_sum(cf, phi, blocks, opt);
      if (as_json) {
        json rows = json::array();
        for (const auto& b : sums)
          rows.push_back({{"r", b.r}, {"q_r", b.begin.get_str()}, {"distance", b.distance},
                          {"block_sum", b.block_sum}, {"cumulative", b.cumulative}});
        o << json{{"phi", phi.to_string()}, {"cap", cap}, {"blocks", rows}}.dump(2) << '\n';
      } else {
        o << "r,block_sum,cumulative\n";
        for (const auto& b : sums) o << b.r << ',' << num(b.block_sum) << ',' << num(b.cumulative) << '\n';
      }
    } else if (*afz_cmd) {
      const CoefficientTable t = load_table(cfg, n_max);
      const auto r = approx::afz_scan(t, x, n_max, constant);
      o << json{{"form", r.form_id},        {"x", x},
                {"n_max", n_max},           {"constant", constant},
                {"hits", r.hits},           {"best_constant", finite_or_null(r.best_constant)},
                {"witnesses", witness_json(r.witnesses)}}
               .dump(2)
        << '\n';
    } else if (*thm2_cmd) {
      const CoefficientTable t = load_table(cfg, p);
      const auto r = approx::theorem2_search(t, x, p, m_max, cfg.precision);
      o << json{{"form", r.form_id},
                {"p", p},
                {"x", x},
                {"m_max", m_max},
                {"bound", r.threshold},
                {"bound_holds", r.bound_holds},
                {"count", r.witnesses.size()},
                {"best_constant", finite_or_null(r.best_constant)},
                {"witnesses", witness_json(r.witnesses)}}
               .dump(2)
        << '\n';
    } else if (*bad_cmd) {
      const CoefficientTable t = load_table(cfg, p);
      const RateFunction rate = parse_rate(rate_text);
      json report = {{"form", t.spec().id()}, {"p", p}, {"rate", rate.to_string()}, {"m_max", m_max}};
      if (delta) {
        const auto c = approx::construct_bad_x(t, p, *delta, m_max, cfg.precision);
        x = c.x;
        report["construction"] = {{"delta", c.delta},
                                  {"minima", c.minima},
                                  {"argmin", c.argmin},
                                  {"gamma", c.gamma},
                                  {"screened", c.screened},
                                  {"lower_bound_m1", c.lower_bound(1)}};
      }
      const auto b = approx::bad_test(t, p, x, rate, m_max, cfg.precision);
      report["x"] = x;
      report["inf"] = b.value;
      report["argmin"] = b.argmin;
      o << report.dump(2) << '\n';
    } else if (*eq_cmd) {
      const equidist::MeasureSpec measure = equidist::parse_measure(measure_name);
      if (measure.kind == equidist::MeasureKind::Plancherel)
        throw PreconditionError("equidist: the Plancherel measure has no empirical counterpart here");
      const CoefficientTable t = load_table(cfg, x_limit);
      const auto samples = equidist::empirical_distribution(t, x_limit);
      const auto count = equidist::interval_count(samples, alpha_t, beta_t, measure);
      const auto hist = equidist::histogram(samples, bins, measure);
      json h = json::array();
      for (const auto& b : hist)
        h.push_back({{"bin_left", b.left}, {"bin_right", b.right}, {"count", b.count}, {"predicted", b.predicted}});
      o << json{{"form", t.spec().id()},
                {"x_limit", x_limit},
                {"measure", measure.name()},
                {"samples", samples.size()},
                {"ks", equidist::ks_statistic(samples, measure)},
                {"interval",
                 {{"alpha", alpha_t}, {"beta", beta_t}, {"observed", count.observed}, {"predicted", count.predicted}}},
                {"histogram", h}}
               .dump(2)
        << '\n';
      if (!hist_out.empty()) {
        std::ofstream hf(hist_out);
        if (!hf) throw ComputationError("cannot open " + hist_out);
        hf << "bin_left,bin_right,count,predicted\n";
        for (const auto& b : hist) hf << num(b.left) << ',' << num(b.right) << ',' << b.count << ',' << num(b.predicted) << '\n';
      }
    } else if (*game_cmd) {
      const mpq_class alpha = parse_game_ratio(g_alpha, "--alpha");
      const mpq_class beta = parse_game_ratio(g_beta, "--beta");
      const CoefficientTable t = load_table(cfg, p);
      const AngleRecord rec = angle(t, p, cfg.precision);
      if (rec.endpoint) throw PreconditionError("game: sin theta_p = 0");
      std::vector<game::Target> targets;
      PrimePowerEvaluator ev(rec);
      for (std::uint64_t m = 1; m <= horizon; ++m) {
        const double md = static_cast<double>(m);
        targets.push_back({ev.value(m).to_double(), 1.0 / (md * md)});
      }
      auto pick = [&](const std::string& name, std::uint64_t salt) -> game::Strategy {
        if (name == "avoid") return game::avoidance_strategy(targets);
        if (name == "chase") return game::chase_nearest_target(targets);
        if (name == "leftmost") return game::leftmost();
        if (name == "rightmost") return game::rightmost();
        return game::random_strategy(cfg.seed * 2 + salt);
      };
      const game::Segment board{0, game::exact(1.0 / (2.0 * rec.sin_theta))};
      const auto res = game::play(board, alpha, beta, pick(strat_a, 0), pick(strat_b, 1), rounds);
      json trace = json::array();
      for (std::size_t k = 0; k < res.state.history.size(); ++k) {
        const auto& s = res.state.history[k];
        trace.push_back({{"player", k % 2 == 0 ? "B" : "A"},
                         {"round", k / 2},
                         {"lo", s.lo.get_d()},
                         {"hi", s.hi.get_d()},
                         {"lo_exact", s.lo.get_str()},
                         {"hi_exact", s.hi.get_str()}});
      }
      const double point = res.point.get_d();
      const auto b = approx::bad_test(t, p, point, RateFunction::square(), horizon, cfg.precision);
      o << json{{"form", t.spec().id()},
                {"p", p},
                {"alpha", alpha.get_str()},
                {"beta", beta.get_str()},
                {"rounds", rounds},
                {"strategy_a", strat_a},
                {"strategy_b", strat_b},
                {"seed", cfg.seed},
                {"outcome", game::to_string(res.outcome)},
                {"forfeit_reason", res.forfeit_reason},
                {"verified", game::verify(res.state)},
                {"point", point},
                {"radius", res.radius.get_d()},
                {"bad_test", {{"rate", "m^2"}, {"horizon", horizon}, {"inf", b.value}, {"argmin", b.argmin}}},
                {"intervals", trace}}
               .dump(2)
        << '\n';
    }
    return 0;
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace modapprox::cli
