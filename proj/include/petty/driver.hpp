#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "petty/error.hpp"
#include "petty/polygon.hpp"
#include "petty/projection.hpp"
#include "petty/random.hpp"
#include "petty/vec.hpp"

namespace petty {

enum class PolicyKind { uniform_random, coordinate_cycle, cap_cover_greedy };

inline const char* to_string(PolicyKind k) {
  switch (k) {
    case PolicyKind::uniform_random: return "uniform-random";
    case PolicyKind::coordinate_cycle: return "coordinate-cycle";
    case PolicyKind::cap_cover_greedy: return "cap-cover-greedy";
  }
  return "?";
}

inline PolicyKind parse_policy(std::string_view s) {
  if (s == "uniform-random") return PolicyKind::uniform_random;
  if (s == "coordinate-cycle") return PolicyKind::coordinate_cycle;
  if (s == "cap-cover-greedy") return PolicyKind::cap_cover_greedy;
  fail(ErrorKind::invalid_input, "unknown policy '" + std::string(s) + "'");
}

inline constexpr int kDefaultCandidates = 32;
inline constexpr std::int64_t kResampleBudget = 1'000'000;
inline constexpr double kAxisPerturbation = 1e-3;

struct DirectionPolicy {
  PolicyKind kind{PolicyKind::uniform_random};
  std::uint64_t seed{0};
  int candidates{kDefaultCandidates};
};

struct TraceStep {
  int step{0};
  std::optional<Direction> u;  // empty for the initial set
  double volume{0.0};
  double perimeter{0.0};
  double circumradius{0.0};
  double petty_product{0.0};
  double dh_to_ball{0.0};
  std::int64_t resamples{0};
};

struct SymmetrizationTrace {
  std::vector<TraceStep> steps;
  std::vector<double> envelope;  // running minimum of dh_to_ball
  double ball_radius{0.0};
  bool converged{false};
  std::vector<Vec2> final_vertices;
};

/// Candidate whose symmetral has the smallest circumradius; ties go to the
/// lowest index.
inline std::size_t cap_cover_greedy_index(const PolygonSet& e, const std::vector<Direction>& candidates) {
  if (candidates.empty()) fail(ErrorKind::domain, "empty candidate list");
  std::size_t best = 0;
  double best_r = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (!is_regular_direction(e, candidates[i]).regular)
      fail(ErrorKind::unsupported_direction, "candidate " + std::to_string(i) + " is not a regular direction");
    const double r = circumradius(steiner_symmetrize(e, candidates[i]));
    if (i == 0 || r < best_r - 1e-12 * best_r) {
      best = i;
      best_r = r;
    }
  }
  return best;
}

inline Direction cap_cover_greedy_step(const PolygonSet& e, const std::vector<Direction>& candidates) {
  return candidates[cap_cover_greedy_index(e, candidates)];
}

namespace detail {

class DirectionSource {
 public:
  explicit DirectionSource(const DirectionPolicy& p) : policy_(p), rng_(p.seed) {
    if (p.kind == PolicyKind::cap_cover_greedy && p.candidates < 1)
      fail(ErrorKind::invalid_input, "candidate count must be positive");
  }

  /// Next regular direction for `e`; `resamples` counts rejected draws.
  Direction next(const PolygonSet& e, int step, std::int64_t& resamples) {
    switch (policy_.kind) {
      case PolicyKind::uniform_random:
        return draw(e, resamples, [&] { return random_direction(rng_, 2); });
      case PolicyKind::coordinate_cycle: {
        const Direction axis = Direction::axis(2, step % 2);
        if (is_regular_direction(e, axis).regular) return axis;
        ++resamples;
        const double base = step % 2 == 0 ? 0.0 : std::numbers::pi / 2.0;
        return draw(e, resamples,
                    [&] { return Direction::from_angle(base + (1.0 - rng_.uniform()) * kAxisPerturbation); });
      }
      case PolicyKind::cap_cover_greedy: {
        // One random direction in each of `candidates` equal arcs of the
        // half circle; together they meet every cap of that angular size.
        const int m = policy_.candidates;
        std::vector<Direction> cands;
        cands.reserve(static_cast<std::size_t>(m));
        for (int j = 0; j < m; ++j)
          cands.push_back(draw(e, resamples, [&] {
            return Direction::from_angle((j + rng_.uniform()) * std::numbers::pi / m);
          }));
        return cap_cover_greedy_step(e, cands);
      }
    }
    fail(ErrorKind::domain, "unknown policy");
  }

 private:
  template <typename Draw>
  Direction draw(const PolygonSet& e, std::int64_t& resamples, Draw&& d) {
    for (std::int64_t tries = 0; tries < kResampleBudget; ++tries) {
      const Direction u = d();
      if (is_regular_direction(e, u).regular) return u;
      ++resamples;
    }
    fail(ErrorKind::pathological_input, "no regular direction found within the resample budget");
  }

  DirectionPolicy policy_;
  Rng rng_;
};

}  // namespace detail

/// E_i = S_{u_i} E_{i-1} from the centered E0, u_i regular for E_{i-1}; stops
/// once d_H(E_i, B) / r <= stop_tol, B the centered ball of equal area.
inline SymmetrizationTrace run_symmetrization(const PolygonSet& e0, const DirectionPolicy& policy, int max_steps,
                                              double stop_tol) {
  if (!(stop_tol > 0.0)) fail(ErrorKind::invalid_input, "stop tolerance must be positive");
  if (max_steps < 0) fail(ErrorKind::invalid_input, "max steps must be non-negative");
  PolygonSet e = e0.translated(-e0.centroid());
  SymmetrizationTrace trace;
  trace.ball_radius = spherical_symmetral(e);
  detail::DirectionSource source(policy);

  auto record = [&](int step, std::optional<Direction> u, std::int64_t resamples) {
    TraceStep s;
    s.step = step;
    s.u = u;
    s.volume = volume(e);
    s.perimeter = perimeter(e);
    s.circumradius = circumradius(e);
    s.petty_product = petty_product(e).product;
    s.dh_to_ball = hausdorff_to_ball(e, trace.ball_radius).value;
    s.resamples = resamples;
    trace.steps.push_back(s);
    trace.envelope.push_back(trace.envelope.empty() ? s.dh_to_ball : std::min(trace.envelope.back(), s.dh_to_ball));
    return s.dh_to_ball / trace.ball_radius <= stop_tol;
  };

  trace.converged = record(0, std::nullopt, 0);
  for (int i = 1; i <= max_steps && !trace.converged; ++i) {
    std::int64_t resamples = 0;
    const Direction u = source.next(e, i - 1, resamples);
    e = steiner_symmetrize(e, u);
    trace.converged = record(i, u, resamples);
  }
  trace.final_vertices = e.vertices();
  return trace;
}

}  // namespace petty
