#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "confounder_lab/effects.hpp"
#include "confounder_lab/model.hpp"

namespace confounder_lab {

enum class Direction { NonDecreasing, NonIncreasing, Constant, Neither };

std::string_view to_string(Direction d);
std::optional<Direction> parse_direction(std::string_view s);

/// Weakly nondecreasing or nonincreasing (Constant counts as both).
constexpr bool is_monotone(Direction d) { return d != Direction::Neither; }
constexpr bool allows_nondecreasing(Direction d) {
  return d == Direction::NonDecreasing || d == Direction::Constant;
}
constexpr bool allows_nonincreasing(Direction d) {
  return d == Direction::NonIncreasing || d == Direction::Constant;
}

/// Joint direction of two rows, each given as (value at level 1, value at
/// level 0). Pass the same row twice to classify a single row.
Direction direction_of(double hi1, double lo1, double hi2, double lo2, double tol = 0.0);

/// Tolerance for weak inequalities in the theorem suites. Continuous draws
/// make exact ties measure-zero, so none is needed.
inline constexpr double kTheoremTol = 0.0;
/// Tolerance for Constant detection on hand-built parameterizations.
inline constexpr double kConstantTol = 1e-12;
/// Tolerance for algebraic identities and theorem conclusions.
inline constexpr double kIdentityTol = 1e-12;

struct MonotonicityReport {
  Direction y_in_d = Direction::Neither;  // E[Y|A,D] in D
  Direction y_in_c = Direction::Neither;  // E[Y|A,C] in C
  Direction a_in_d = Direction::Neither;  // E[A|D] in D
  Direction a_in_c = Direction::Neither;  // E[A|C] in C
};

MonotonicityReport report(const ProxyParams& params, double tol = kTheoremTol);
MonotonicityReport report(const DriverParams& params, double tol = kTheoremTol);
MonotonicityReport report(const GraphParams& params, double tol = kTheoremTol);

/// Relative direction of an outcome-mean direction and a treatment direction.
enum class Alignment { Same, Opposite, Undetermined };

std::string_view to_string(Alignment a);

/// Same when both allow nondecreasing or both allow nonincreasing, Opposite
/// when one is nondecreasing and the other nonincreasing, Undetermined when
/// either is Neither.
Alignment alignment(Direction y_direction, Direction a_direction);

/// RD_obs lies in the closed interval spanned by RD_true and RD_crude.
bool in_between(const EffectSummary& summary, double tol = kIdentityTol);

// Precondition checkers for the nonmonotone orderings. Equalities are
// tested to within 1e-9; inequalities with `tol`.
//
//   thm2: p(c)=.5, p(a|c)=p(ā|c̄)=p(d|c)=p(d̄|c̄) >= .5,
//         mu[a][c]-mu[a][c̄] >= mu[ā][c̄]-mu[ā][c] >= 0
//         => RD_crude >= RD_obs >= RD_true
//   thm3: same probabilities, mean gaps reversed (<= ... <= 0)
//         => RD_crude <= RD_obs <= RD_true
//   thm4: p(c)=.5, p(d|c)=p(d̄|c̄) >= .5, p(ā|c̄) >= p(a|c) >= .5, thm2 means
//         => RD_crude >= RD_true and RD_obs >= RD_true
//   thm5: thm4 probabilities, thm3 means
//         => RD_crude <= RD_true and RD_obs <= RD_true
inline constexpr double kEqualityTol = 1e-9;

bool check_thm2(const ProxyParams& params, double tol = kTheoremTol);
bool check_thm3(const ProxyParams& params, double tol = kTheoremTol);
bool check_thm4(const ProxyParams& params, double tol = kTheoremTol);
bool check_thm5_mirror(const ProxyParams& params, double tol = kTheoremTol);

enum class TheoremCase { Thm2, Thm3, Thm4, Thm5 };

std::string_view to_string(TheoremCase which);

bool check_preconditions(const ProxyParams& params, TheoremCase which, double tol = kTheoremTol);

/// Draws uniformly over the precondition region of `which`: the shared
/// conditionals uniformly on [0.5,1), the thm4/thm5 treatment pair as a
/// sorted pair of such draws, and the means by rejection from U(0,1)^4.
ProxyParams sample_constrained(std::uint64_t seed, TheoremCase which);

/// Whether the ordering that `which` concludes holds for `summary`.
bool ordering_holds(const EffectSummary& summary, TheoremCase which, double tol = kIdentityTol);

/// Upper: S ≥ E[Y_do] for that arm. Lower: S ≤ E[Y_do].
enum class BoundSide { Upper, Lower };

std::string_view to_string(BoundSide side);

struct BoundsVerdict {
  BoundSide treated = BoundSide::Upper;  // S_a vs E[Y_a]
  BoundSide control = BoundSide::Upper;  // S_ā vs E[Y_ā]
};

/// Side on which S lies relative to E[Y_do] for each arm, decided from the
/// single-arm direction of E[Y|A=arm, D] and the direction of E[A|D]:
/// treated arm is Upper when aligned, control arm is Lower when aligned.
/// A Constant factor makes S equal E[Y_do]; that case is reported as Upper.
BoundsVerdict bounds_verdict(const ProxyParams& params);
BoundsVerdict bounds_verdict(const DriverParams& params);
BoundsVerdict bounds_verdict(const GraphParams& params);

}  // namespace confounder_lab
