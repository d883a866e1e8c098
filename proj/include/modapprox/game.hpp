#pragma once

// Schmidt's game on the real line with exact rational endpoints. Player B
// opens with B_0, then A and B alternate: |A_s| = alpha |B_s| and
// |B_{s+1}| = beta |A_s|, each interval inside its predecessor.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "modapprox/error.hpp"

namespace modapprox::game {

struct Segment {
  mpq_class lo;
  mpq_class hi;

  mpq_class length() const { return hi - lo; }
  mpq_class midpoint() const { return (lo + hi) / 2; }
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
  bool contains(const Segment& s) const { return lo <= s.lo && s.hi <= hi; }
  bool operator==(const Segment& o) const { return lo == o.lo && hi == o.hi; }
};

enum class Player { A, B };

inline const char* to_string(Player p) { return p == Player::A ? "A" : "B"; }

struct GameState {
  mpq_class alpha;
  mpq_class beta;
  Segment board;
  std::vector<Segment> history;  // B_0, A_0, B_1, A_1, ...

  std::size_t round() const { return history.empty() ? 0 : (history.size() - 1) / 2; }
  Player to_move() const { return history.size() % 2 == 0 ? Player::B : Player::A; }
  const Segment& current() const { return history.empty() ? board : history.back(); }
};

struct MoveRequest {
  Player player = Player::B;
  Segment within;
  std::optional<mpq_class> length;  // unset only for B's opening move
};

using Strategy = std::function<Segment(const GameState&, const MoveRequest&)>;

enum class Outcome { Completed, ForfeitA, ForfeitB };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Completed: return "completed";
    case Outcome::ForfeitA: return "forfeit-A";
    case Outcome::ForfeitB: return "forfeit-B";
  }
  return "";
}

struct PlayResult {
  GameState state;
  Outcome outcome = Outcome::Completed;
  std::string forfeit_reason;
  mpq_class point;   // midpoint of the last interval
  mpq_class radius;  // half its length
};

inline bool legal(const MoveRequest& req, const Segment& s, std::string* why = nullptr) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (s.hi < s.lo) return fail("endpoints out of order");
  if (!req.within.contains(s)) return fail("interval not contained in its predecessor");
  if (req.length) {
    if (s.length() != *req.length) return fail("interval has the wrong length");
  } else if (s.length() <= 0) {
    return fail("opening interval must have positive length");
  }
  return true;
}

/// Plays B_0, A_0, ..., A_{rounds-1}, B_rounds.
inline PlayResult play(const Segment& board, mpq_class alpha, mpq_class beta, const Strategy& strat_a,
                       const Strategy& strat_b, std::size_t rounds) {
  alpha.canonicalize();
  beta.canonicalize();
  if (!(alpha > 0 && alpha < 1 && beta > 0 && beta < 1))
    throw PreconditionError("play: alpha and beta must lie in (0, 1)");
  if (rounds < 1) throw PreconditionError("play: rounds must be >= 1");
  if (board.length() <= 0) throw PreconditionError("play: board must have positive length");

  PlayResult r;
  r.state.alpha = alpha;
  r.state.beta = beta;
  r.state.board = board;
  const std::size_t moves = 2 * rounds + 1;
  for (std::size_t k = 0; k < moves; ++k) {
    MoveRequest req;
    req.player = r.state.to_move();
    req.within = r.state.current();
    if (k > 0) req.length = req.within.length() * (req.player == Player::A ? alpha : beta);
    const Strategy& s = req.player == Player::A ? strat_a : strat_b;
    Segment chosen = s(r.state, req);
    chosen.lo.canonicalize();
    chosen.hi.canonicalize();
    std::string why;
    if (!legal(req, chosen, &why)) {
      r.outcome = req.player == Player::A ? Outcome::ForfeitA : Outcome::ForfeitB;
      r.forfeit_reason = why;
      break;
    }
    r.state.history.push_back(std::move(chosen));
  }
  const Segment& last = r.state.current();
  r.point = last.midpoint();
  r.radius = last.length() / 2;
  return r;
}

/// Exact rational of a finite double.
inline mpq_class exact(double v) {
  if (!std::isfinite(v)) throw PreconditionError("non-finite value");
  mpq_class q(v);
  q.canonicalize();
  return q;
}

/// Placement of a subinterval of length len at relative offset u in [0, 1].
inline Segment place(const Segment& within, const mpq_class& len, const mpq_class& u) {
  const mpq_class lo = within.lo + u * (within.length() - len);
  return {lo, lo + len};
}

inline mpq_class requested_length(const MoveRequest& req) { return req.length ? *req.length : req.within.length(); }

inline Strategy leftmost() {
  return [](const GameState&, const MoveRequest& req) { return place(req.within, requested_length(req), 0); };
}

inline Strategy rightmost() {
  return [](const GameState&, const MoveRequest& req) { return place(req.within, requested_length(req), 1); };
}

/// Uniform dyadic offsets from a seeded generator.
inline Strategy random_strategy(std::uint64_t seed) {
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return [rng](const GameState&, const MoveRequest& req) {
    const std::uint64_t bits = (*rng)() >> 11;  // 53 bits
    mpq_class u(mpz_class(static_cast<unsigned long>(bits)), mpz_class(1) << 53);
    u.canonicalize();
    return place(req.within, requested_length(req), u);
  };
}

struct Target {
  double value = 0.0;
  double weight = 1.0;
};

/// Centres the move on the target nearest to the centre of the current
/// interval, as far as containment allows.
inline Strategy chase_nearest_target(std::vector<Target> targets) {
  return [targets = std::move(targets)](const GameState&, const MoveRequest& req) {
    const mpq_class len = requested_length(req);
    const mpq_class slack = req.within.length() - len;
    if (targets.empty() || slack == 0) return place(req.within, len, mpq_class(1, 2));
    const mpq_class centre = req.within.midpoint();
    mpq_class best_t;
    bool have = false;
    mpq_class best_d;
    for (const auto& t : targets) {
      const mpq_class v = exact(t.value);
      const mpq_class d = abs(v - centre);
      if (!have || d < best_d) {
        best_d = d;
        best_t = v;
        have = true;
      }
    }
    mpq_class lo = best_t - len / 2;
    const mpq_class lo_max = req.within.lo + slack;
    lo = std::clamp(lo, req.within.lo, lo_max);
    return Segment{lo, lo + len};
  };
}

inline constexpr int kAvoidanceGrid = 64;

/// Player A heuristic: among 64 evenly spaced placements, the one maximising
/// the minimum over active targets (weight >= |B_s|) of signed distance /
/// weight. A target inside a placement counts as minus its depth. Ties go to
/// the leftmost placement.
inline Strategy avoidance_strategy(std::vector<Target> targets) {
  std::sort(targets.begin(), targets.end(), [](const Target& a, const Target& b) { return a.value < b.value; });
  return [targets = std::move(targets)](const GameState&, const MoveRequest& req) {
    const mpq_class len = requested_length(req);
    const mpq_class width = req.within.length();
    const double width_d = width.get_d();
    if (width == 0) return place(req.within, len, 0);
    // Active targets in coordinates relative to the current interval.
    std::vector<std::pair<double, double>> local;  // (position / width, weight)
    for (const auto& t : targets) {
      if (t.weight < width_d) continue;
      const mpq_class pos = (exact(t.value) - req.within.lo) / width;
      local.emplace_back(pos.get_d(), t.weight);
    }
    const mpq_class rel_len_q = len / width;
    const double rel_len = rel_len_q.get_d();
    int best_i = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < kAvoidanceGrid; ++i) {
      const double u = static_cast<double>(i) / (kAvoidanceGrid - 1);
      const double lo = u * (1.0 - rel_len), hi = lo + rel_len;
      double score = std::numeric_limits<double>::infinity();
      for (const auto& [pos, w] : local) {
        const double signed_dist = pos < lo ? lo - pos : pos > hi ? pos - hi : -std::min(pos - lo, hi - pos);
        score = std::min(score, signed_dist * width_d / w);
      }
      if (score > best_score) {
        best_score = score;
        best_i = i;
      }
    }
    return place(req.within, len, mpq_class(best_i, kAvoidanceGrid - 1));
  };
}

/// Containment and the exact length law |B_s| = (alpha beta)^s |B_0|, |A_s| = alpha |B_s|.
inline bool verify(const GameState& s, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (s.history.empty()) return true;
  if (!s.board.contains(s.history[0])) return fail("B_0 outside the board");
  const mpq_class b0 = s.history[0].length();
  mpq_class expect_b = b0;
  for (std::size_t k = 1; k < s.history.size(); ++k) {
    if (!s.history[k - 1].contains(s.history[k])) return fail("containment fails at move " + std::to_string(k));
    const mpq_class len = s.history[k].length();
    if (k % 2 == 1) {
      if (len != s.alpha * expect_b) return fail("A length law fails at move " + std::to_string(k));
    } else {
      expect_b *= s.alpha * s.beta;
      if (len != expect_b) return fail("B length law fails at move " + std::to_string(k));
    }
  }
  return true;
}

}  // namespace modapprox::game
