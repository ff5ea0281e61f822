#include "hp/lattice.hpp"

#include <stdexcept>
#include <string>

namespace hp::lattice {

bool position_implies(Position have, Position need) {
  return static_cast<int>(have) >= static_cast<int>(need);
}

const char* position_name(Position p) {
  switch (p) {
    case Position::Arbitrary: return "arbitrary";
    case Position::OffCeDistinctFibers: return "off-ce-distinct-fibers";
    case Position::VeryGeneral: return "very-general";
  }
  return "?";
}

namespace {

void require_dimension(const DivisorClass& L, const BlowupModel& model, const char* who) {
  if (L.m.size() != model.r) {
    throw std::invalid_argument(std::string(who) + ": m has length " +
                                std::to_string(L.m.size()) + ", model.r is " +
                                std::to_string(model.r));
  }
}

}  // namespace

Int intersect(const DivisorClass& L, const DivisorClass& M, const BlowupModel& model) {
  require_dimension(L, model, "intersect");
  require_dimension(M, model, "intersect");
  Int out = L.a * M.b + L.b * M.a - L.a * M.a * model.e;
  for (std::size_t i = 0; i < model.r; ++i) out -= L.m[i] * M.m[i];
  return out;
}

DivisorClass canonical_class(const BlowupModel& model) {
  DivisorClass K;
  K.a = -2;
  K.b = -(Int(model.e) + 2);
  K.m.assign(model.r, Int(-1));
  return K;
}

Int self_intersection(const DivisorClass& L, const BlowupModel& model) {
  return intersect(L, L, model);
}

Int hzero_base(const BaseDivisorClass& D, std::int64_t e) {
  if (e < 0) throw std::domain_error("hzero_base: e must be nonnegative");
  if (D.a < 0 || D.b < D.a * e) {
    throw std::domain_error("hzero_base: outside domain a >= 0, b >= a*e");
  }
  // a(a+1) is even, so the halving is exact
  return (D.a + 1) * (D.b + 1) - D.a * (D.a + 1) / 2 * e;
}

DivisorClass adjoint_shift(const DivisorClass& L, const BlowupModel& model) {
  require_dimension(L, model, "adjoint_shift");
  DivisorClass N;
  N.a = L.a + 2;
  N.b = L.b + model.e + 2;
  N.m.reserve(model.r);
  for (const Int& mi : L.m) N.m.push_back(mi + 1);
  return N;
}

std::string rat_string(const Rat& x) {
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace hp::lattice
