// Acceptance run: one PASS/FAIL line per criterion. Criteria listed in
// kKnownRed are expected to fail (see README); the exit status is nonzero
// only for failures outside that list.

#include <fmt/format.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "modapprox/modapprox.hpp"
#include "oracles.hpp"

using namespace modapprox;

namespace {

struct Verdict {
  bool pass = true;
  std::string report;

  void check(bool ok, const std::string& line) {
    pass = pass && ok;
    report += fmt::format("    [{}] {}\n", ok ? "ok" : "FAIL", line);
  }
  void note(const std::string& line) { report += "    [info] " + line + "\n"; }
};

const std::vector<std::string> kCurves = {"11a1", "37a1", "32a2"};

Verdict coefficient_correctness() {
  Verdict v;
  const auto fast = tau_table(500);
  const auto slow = oracle::tau_naive(500);
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= 500; ++n) bad += fast[n] != slow[n];
  v.check(bad == 0, fmt::format("tau(n), n <= 500, mismatches vs product expansion: {}", bad));
  for (const char* name : {"11a1", "37a1"}) {
    const NewformSpec e = forms::by_name(name);
    std::size_t checked = 0, wrong = 0;
    for (std::uint64_t p = 2; p <= 1000; ++p) {
      if (!oracle::is_prime(p) || e.is_bad_prime(p)) continue;
      ++checked;
      wrong += ec_ap(e, p) != oracle::ec_ap_enumerate(e.a, static_cast<long>(p));
    }
    v.check(wrong == 0, fmt::format("{}: a_p vs point count, {} good primes <= 1000, mismatches {}", name, checked, wrong));
  }
  return v;
}

Verdict recursion_closed_form() {
  Verdict v;
  std::vector<std::pair<std::string, NewformSpec>> forms_list = {{"delta", NewformSpec::delta()}};
  for (const auto& c : kCurves) forms_list.emplace_back(c, forms::by_name(c));
  for (const auto& [name, spec] : forms_list) {
    const CoefficientTable t = build_table(spec, 100);
    double worst = 0.0;
    std::size_t pairs = 0;
    for (std::uint64_t p = 2; p <= 100; ++p) {
      if (!t.is_good_prime(p)) continue;
      const AngleRecord rec = angle(t, p);
      std::uint64_t pm = 1;
      for (std::uint64_t m = 0; pm <= 1000000; ++m, pm *= p) {
        const double closed = prime_power_coeff(rec, m);
        const double exact = t.normalized_prime_power(p, m).to_double();
        worst = std::max(worst, std::fabs(closed - exact));
        ++pairs;
      }
    }
    v.check(worst < 1e-9, fmt::format("{}: {} pairs (p <= 100, p^m <= 1e6), max |closed - recursion| = {:.3e}", name,
                                      pairs, worst));
  }
  return v;
}

Verdict deligne() {
  Verdict v;
  std::vector<NewformSpec> specs = {NewformSpec::delta()};
  for (const auto& c : kCurves) specs.push_back(forms::by_name(c));
  for (const auto& spec : specs) {
    const CoefficientTable t = build_table(spec, 100000);
    std::size_t violations = 0;
    double worst = 0.0;
    for (std::uint64_t n = 1; n <= 100000; ++n) {
      const double ratio = std::fabs(t.normalized(n)) / static_cast<double>(t.divisor_count(n));
      worst = std::max(worst, ratio);
      violations += ratio > 1.0 + 1e-12;
    }
    v.check(violations == 0,
            fmt::format("{}: n <= 1e5, violations {}, max |a(n)|/d(n) = {:.6f}", spec.id(), violations, worst));
  }
  return v;
}

Verdict cm_atom() {
  Verdict v;
  const CoefficientTable t = build_table(forms::curve_32a2(), 10000);
  const auto samples = equidist::empirical_distribution(t, 10000);
  std::vector<double> nonzero;
  for (double s : samples)
    if (s != 0.0) nonzero.push_back(s);
  const double frac = 1.0 - static_cast<double>(nonzero.size()) / static_cast<double>(samples.size());
  v.check(std::fabs(frac - 0.5) <= 0.02,
          fmt::format("zero fraction over {} good p <= 1e4: {:.6f} (target 0.5 +- 0.02)", samples.size(), frac));
  const double ks = equidist::ks_statistic(nonzero, equidist::MeasureSpec::arcsine());
  v.check(ks < 0.05, fmt::format("KS of {} nonzero samples vs continuous part: {:.6f} (< 0.05)", nonzero.size(), ks));
  return v;
}

Verdict sato_tate_trend() {
  Verdict v;
  const CoefficientTable t = build_table(NewformSpec::delta(), 100000);
  double prev = INFINITY;
  for (std::uint64_t x : {1000, 10000, 100000}) {
    const auto samples = equidist::empirical_distribution(t, x);
    const double ks = equidist::ks_statistic(samples, equidist::MeasureSpec::sato_tate());
    const bool ok = std::isinf(prev) || ks <= 1.1 * prev;
    v.check(ok, fmt::format("x = {}: {} primes, KS = {:.6f}", x, samples.size(), ks));
    prev = ks;
  }
  v.check(prev < 0.05, fmt::format("final KS {:.6f} < 0.05", prev));
  return v;
}

Verdict prime_power_witnesses() {
  Verdict v;
  const CoefficientTable t = build_table(NewformSpec::delta(), 100);
  for (double x : {0.3, -0.7, 1.1}) {
    try {
      const auto lo = approx::theorem2_search(t, x, 2, 10000);
      const auto hi = approx::theorem2_search(t, x, 2, 100000);
      v.check(hi.witnesses.size() >= 5 && hi.bound_holds && hi.witnesses.size() > lo.witnesses.size(),
              fmt::format("x = {}: witnesses {} (m <= 1e4) -> {} (m <= 1e5), bound {:.6f}, max scaled {:.6f}", x,
                          lo.witnesses.size(), hi.witnesses.size(), hi.threshold,
                          hi.witnesses.empty() ? 0.0
                                               : std::max_element(hi.witnesses.begin(), hi.witnesses.end(),
                                                                  [](const auto& a, const auto& b) {
                                                                    return a.scaled < b.scaled;
                                                                  })->scaled));
    } catch (const PreconditionError& e) {
      v.check(false, fmt::format("x = {}: {}", x, e.what()));
      const AngleRecord rec = angle(t, 2);
      v.note(fmt::format("x = {} lies outside [-1/sin theta_2, 1/sin theta_2] = +-{:.6f}", x, 1.0 / rec.sin_theta));
      const auto alt = approx::theorem2_search(t, x, 11, 100000);
      v.note(fmt::format("same x at p = 11 (1/sin theta = {:.6f}): {} witnesses, bound holds: {}",
                         1.0 / angle(t, 11).sin_theta, alt.witnesses.size(), alt.bound_holds));
    }
  }
  return v;
}

Verdict minkowski_bound() {
  Verdict v;
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int grew = 0, pairs = 0;
  std::size_t total_lo = 0, total_hi = 0;
  while (pairs < 100) {
    const double theta = u(rng), x = u(rng);
    const mp::Float th(theta, 256);
    if (inhomog::rational_within_precision(th, 100000)) continue;
    ++pairs;
    const auto lo = inhomog::minkowski_witnesses(th, x, 10000);
    const auto hi = inhomog::minkowski_witnesses(th, x, 100000);
    total_lo += lo.size();
    total_hi += hi.size();
    grew += hi.size() > lo.size();
  }
  v.check(grew >= 95, fmt::format("{} of 100 random (theta, x) gain witnesses from m <= 1e4 to m <= 1e5 (totals {} -> {})",
                                  grew, total_lo, total_hi));
  return v;
}

Verdict fuchs_kim() {
  Verdict v;
  const auto cf = contfrac::expand(contfrac::constants::golden_ratio(512), 200);
  const auto div = inhomog::fuchs_kim_partial_sum(cf, RateFunction::inverse(), 26);
  double smallest = INFINITY;
  for (std::size_t r = 10; r <= 25; ++r) smallest = std::min(smallest, div[r].block_sum);
  v.check(smallest >= 0.1, fmt::format("phi = 1/n: smallest block increment over r = 10..25 is {:.6f}, partial sum {:.6f}",
                                       smallest, div.back().cumulative));
  const auto conv = inhomog::fuchs_kim_partial_sum(cf, RateFunction::inverse_square(), 26);
  double peak = 0.0;
  for (const auto& b : conv) peak = std::max(peak, b.cumulative);
  const double cap = std::numbers::pi * std::numbers::pi / 6.0;
  v.check(peak <= cap, fmt::format("phi = 1/n^2: max partial sum {:.9f} <= pi^2/6 = {:.9f}", peak, cap));
  return v;
}

Verdict bad_pipeline() {
  Verdict v;
  const CoefficientTable t = build_table(NewformSpec::delta(), 100);
  const RateFunction sq = RateFunction::square();
  int screened = 0;
  for (int k = 1; screened < 10 && k < 200; ++k) {
    const double delta = 0.125 * std::fmod(k * 0.6180339887498949, 1.0);
    if (delta <= 0.0) continue;
    const auto c = approx::construct_bad_x(t, 2, delta, 10000);
    if (!c.screened) continue;
    ++screened;
    const auto profile = approx::bad_profile(t, 2, c.x, sq, 20000);
    double inf1 = INFINITY, inf2 = INFINITY, margin = INFINITY, bound_min = INFINITY;
    for (std::uint64_t m = 1; m <= 20000; ++m) {
      if (m <= 10000) {
        inf1 = std::min(inf1, profile[m - 1]);
        margin = std::min(margin, profile[m - 1] - c.lower_bound(m));
        bound_min = std::min(bound_min, c.lower_bound(m));
      }
      inf2 = std::min(inf2, profile[m - 1]);
    }
    const bool ok = inf1 > 0 && inf2 > 0 && inf1 <= 4 * inf2 && margin >= -1e-9;
    v.check(ok, fmt::format("delta = {:.9f}: gamma {:.6f}, inf(1e4) {:.6e}, inf(2e4) {:.6e}, min bound {:.6e}, "
                            "min per-m margin {:.3e}",
                            delta, c.gamma, inf1, inf2, bound_min, margin));
  }
  v.check(screened == 10, fmt::format("screened delta values: {}", screened));
  return v;
}

Verdict game_engine() {
  Verdict v;
  std::mt19937_64 rng(31337);
  std::size_t failures = 0, moves = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const long den_a = 2 + rng() % 30, den_b = 2 + rng() % 30;
    const mpq_class a(1 + static_cast<long>(rng() % (den_a - 1)), den_a);
    const mpq_class b(1 + static_cast<long>(rng() % (den_b - 1)), den_b);
    const mpq_class lo(static_cast<long>(rng() % 200) - 100, 1 + static_cast<long>(rng() % 50));
    const game::Segment board{lo, lo + mpq_class(1 + static_cast<long>(rng() % 100), 1 + static_cast<long>(rng() % 7))};
    auto pick = [&]() -> game::Strategy {
      switch (rng() % 4) {
        case 0: return game::leftmost();
        case 1: return game::rightmost();
        default: return game::random_strategy(rng());
      }
    };
    const std::size_t rounds = 1 + rng() % 40;
    const auto r = game::play(board, a, b, pick(), pick(), rounds);
    moves += r.state.history.size();
    bool ok = r.outcome == game::Outcome::Completed && r.state.history.size() == 2 * rounds + 1 && game::verify(r.state);
    for (const auto& s : r.state.history) ok = ok && s.contains(r.point);
    failures += !ok;
  }
  v.check(failures == 0, fmt::format("1000 fuzzed games, {} intervals, failures {}", moves, failures));
  return v;
}

struct Criterion {
  int id;
  const char* title;
  std::function<Verdict()> run;
  double budget_s;  // <= 0: no runtime limit
};

const std::vector<Criterion> kCriteria = {
    {1, "coefficient correctness", coefficient_correctness, 60},
    {2, "recursion matches closed form", recursion_closed_form, 30},
    {3, "Deligne bound", deligne, 0},
    {4, "CM atom", cm_atom, 0},
    {5, "Sato-Tate trend", sato_tate_trend, 300},
    {6, "prime-power witnesses", prime_power_witnesses, 0},
    {7, "Minkowski witnesses", minkowski_bound, 0},
    {8, "convergent block sums", fuchs_kim, 0},
    {9, "Bad(p, m^2) pipeline", bad_pipeline, 0},
    {10, "game engine", game_engine, 0},
};

// x = 1.1 is outside the range of a(2^m) for the discriminant form; see README.
const std::set<int> kKnownRed = {6};

}  // namespace

int main() {
  std::vector<std::string> first_reports;
  int unexpected = 0;
  auto verdict_line = [&](int id, const char* title, bool pass, double secs, const std::string& report) {
    const bool known = kKnownRed.count(id) > 0;
    fmt::print("{} {:>2} {} ({:.1f} s){}\n{}", pass ? "PASS" : "FAIL", id, title, secs,
               !pass && known ? " [known red]" : "", report);
    if (!pass && !known) ++unexpected;
    std::fflush(stdout);
  };

  for (const auto& c : kCriteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    first_reports.push_back(v.report);
    if (c.budget_s > 0) v.check(secs < c.budget_s, fmt::format("runtime under {:.0f} s", c.budget_s));
    verdict_line(c.id, c.title, v.pass, secs, v.report);
  }

  Verdict det;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t i = 0; i < kCriteria.size(); ++i) {
    const bool same = kCriteria[i].run().report == first_reports[i];
    det.check(same, fmt::format("criterion {} report reproduced byte for byte", kCriteria[i].id));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  verdict_line(11, "determinism", det.pass, secs, det.report);

  fmt::print("\n{} unexpected failure(s); known red: ", unexpected);
  for (int id : kKnownRed) fmt::print("{} ", id);
  fmt::print("\n");
  return unexpected == 0 ? 0 : 1;
}
