#ifndef HP_SESHADRI_HPP_
#define HP_SESHADRI_HPP_

#include <cstdint>
#include <optional>
#include <string>

#include "hp/lattice.hpp"

// Multi-point Seshadri-constant lower bounds for an ample class
// l = a*C_e + b*f on the Hirzebruch surface, blown up at r points.
namespace hp::seshadri {

using lattice::BaseDivisorClass;
using lattice::Int;
using lattice::Position;
using lattice::Rat;

// A nonnegative bound, either an exact rational or the square root of an
// exact rational.  radicand = value^2 is always set, so candidates compare
// exactly without touching the float.  value carries at most 1e-12 relative
// error; expr preserves the defining expression, e.g. "3/5" or
// "sqrt(192/130)" (radical arguments are kept unreduced as constructed).
struct ExactBound {
  bool is_rational = true;
  Rat rational;
  Rat radicand;
  double value = 0.0;
  std::string expr;
  Position required_position = Position::Arbitrary;
};

// Convert with at most 1e-12 relative error.
double rat_to_double(const Rat& x);
// sqrt of a nonnegative rational, same error budget.
double rat_sqrt_double(const Rat& x);

// min(b/r, a).  Requires e >= 1, r >= 1 and l ample (a >= 1, b >= ae+1);
// otherwise absent.  Points off C_e on distinct fibers suffice.
std::optional<ExactBound> bound_from_I(const BaseDivisorClass& l, std::int64_t e, std::int64_t r);

// min over e <= i <= lambda of (b + (i-e)a)/k_i, and a.  Additionally
// requires b > a*lambda; very general points.
std::optional<ExactBound> bound_from_II(const BaseDivisorClass& l, std::int64_t e, std::int64_t r);

// min of sqrt((r+2) l^2 / ((r+3) r)), sqrt((r+2)(b^2 - e l^2) / (3r)) and a,
// decided by exact square comparison.  Requires e >= 1, r >= 3, l ample,
// l^2 > 0 and b^2 - e l^2 >= 0; very general points.
std::optional<ExactBound> bound_from_III(const BaseDivisorClass& l, std::int64_t e, std::int64_t r);

struct SeshadriBoundReport {
  std::optional<ExactBound> bound_I;
  std::optional<ExactBound> bound_II;
  std::optional<ExactBound> bound_III;
  std::optional<ExactBound> best;  // max over present bounds, exact comparison
};

SeshadriBoundReport seshadri_bounds(const BaseDivisorClass& l, std::int64_t e, std::int64_t r);

}  // namespace hp::seshadri

#endif  // HP_SESHADRI_HPP_
