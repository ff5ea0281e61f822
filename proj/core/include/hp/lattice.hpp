#ifndef HP_LATTICE_HPP_
#define HP_LATTICE_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Exact arithmetic in the Picard lattice of a Hirzebruch surface F_e blown up
// at r distinct points.  Basis: H (pullback of the section class C_e with
// C_e^2 = -e), F (pullback of a fiber, F^2 = 0, H.F = 1), and the exceptional
// classes E_1..E_r (E_i^2 = -1, mutually orthogonal, orthogonal to H and F).

namespace hp::lattice {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Hypothesis regime on the blown-up points, ordered by strength.  The flag is
// metadata asserted by the caller; nothing verifies it geometrically.
enum class Position {
  Arbitrary,
  OffCeDistinctFibers,  // no point on C_e, no two points on one fiber
  VeryGeneral,
};

// true when points satisfying `have` also satisfy `need`
bool position_implies(Position have, Position need);

const char* position_name(Position p);

struct BlowupModel {
  std::int64_t e = 0;
  std::size_t r = 0;
  Position position = Position::Arbitrary;
};

// L = a*H + b*F - sum_i m[i]*E_i.  m stores the subtracted multiplicities,
// so the class E_i itself has a = b = 0 and m[i] = -1.
struct DivisorClass {
  Int a;
  Int b;
  std::vector<Int> m;
};

// a*C_e + b*f on the base surface F_e (no blown-up points)
struct BaseDivisorClass {
  Int a;
  Int b;
};

// throws std::invalid_argument when an m-vector length differs from model.r
Int intersect(const DivisorClass& L, const DivisorClass& M, const BlowupModel& model);

// K = -2H - (e+2)F + sum E_i, i.e. m = [-1, ..., -1]
DivisorClass canonical_class(const BlowupModel& model);

Int self_intersection(const DivisorClass& L, const BlowupModel& model);

// Section count h^0(a*C_e + b*f) = (a+1)(b+1) - a(a+1)e/2 on the domain
// a >= 0, b >= a*e; throws std::domain_error outside it.
Int hzero_base(const BaseDivisorClass& D, std::int64_t e);

// N = L - K = (a+2, b+e+2, m_i+1)
DivisorClass adjoint_shift(const DivisorClass& L, const BlowupModel& model);

// "7/3", or just "7" when the denominator is 1
std::string rat_string(const Rat& x);

}  // namespace hp::lattice

#endif  // HP_LATTICE_HPP_
