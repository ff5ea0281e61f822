#include "hp/seshadri.hpp"

#include <cmath>

#include "hp/criteria.hpp"

namespace hp::seshadri {

double rat_to_double(const Rat& x) {
  using boost::multiprecision::msb;
  Int num = boost::multiprecision::numerator(x);
  Int den = boost::multiprecision::denominator(x);
  if (num == 0) return 0.0;
  bool neg = num < 0;
  if (neg) num = -num;
  // scale the quotient into [2^61, 2^63) so the floor division below keeps
  // well over 53 significant bits, then undo the scaling in the exponent
  std::int64_t shift = 62 - (static_cast<std::int64_t>(msb(num)) -
                             static_cast<std::int64_t>(msb(den)));
  if (shift >= 0)
    num <<= static_cast<unsigned>(shift);
  else
    den <<= static_cast<unsigned>(-shift);
  double q = (num / den).convert_to<double>();
  double out = std::ldexp(q, static_cast<int>(-shift));
  return neg ? -out : out;
}

double rat_sqrt_double(const Rat& x) { return std::sqrt(rat_to_double(x)); }

namespace {

using lattice::rat_string;

ExactBound make_rational(Rat value, Position pos) {
  ExactBound b;
  b.is_rational = true;
  b.rational = value;
  b.radicand = value * value;
  b.value = rat_to_double(value);
  b.expr = rat_string(value);
  b.required_position = pos;
  return b;
}

// expr keeps the unreduced num/den as constructed
ExactBound make_radical(const Int& num, const Int& den, Position pos) {
  ExactBound b;
  b.is_rational = false;
  b.radicand = Rat(num, den);
  b.value = rat_sqrt_double(b.radicand);
  b.expr = "sqrt(" + num.str() + "/" + den.str() + ")";
  b.required_position = pos;
  return b;
}

bool is_ample_base(const BaseDivisorClass& l, std::int64_t e) {
  return l.a >= 1 && l.b >= l.a * e + 1;
}

}  // namespace

std::optional<ExactBound> bound_from_I(const BaseDivisorClass& l, std::int64_t e,
                                       std::int64_t r) {
  if (e < 1 || r < 1 || !is_ample_base(l, e)) return std::nullopt;
  Rat candidate(l.b, Int(r));
  if (Rat(l.a) < candidate) candidate = Rat(l.a);
  return make_rational(candidate, Position::OffCeDistinctFibers);
}

std::optional<ExactBound> bound_from_II(const BaseDivisorClass& l, std::int64_t e,
                                        std::int64_t r) {
  if (e < 1 || r < 1 || !is_ample_base(l, e)) return std::nullopt;
  auto th = criteria::lambda_of(e, r);
  if (!(l.b > l.a * th.lambda)) return std::nullopt;
  Rat best(l.b + Int(0), Int(1));
  bool have = false;
  for (const auto& [i, ki] : th.k_values) {
    Rat candidate(l.b + (i - e) * l.a, Int(ki));
    if (!have || candidate < best) {
      best = candidate;
      have = true;
    }
  }
  if (Rat(l.a) < best) best = Rat(l.a);
  return make_rational(best, Position::VeryGeneral);
}

std::optional<ExactBound> bound_from_III(const BaseDivisorClass& l, std::int64_t e,
                                         std::int64_t r) {
  if (e < 1 || r < 3 || !is_ample_base(l, e)) return std::nullopt;
  Int l2 = 2 * l.a * l.b - l.a * l.a * e;
  Int disc = l.b * l.b - e * l2;  // = (b - ae)^2
  if (!(l2 > 0) || disc < 0) return std::nullopt;

  // candidate radicands; the min is decided on these, never on floats
  Int num1 = (r + 2) * l2, den1 = (Int(r) + 3) * r;
  Int num2 = (r + 2) * disc, den2 = 3 * Int(r);
  Rat rad1(num1, den1), rad2(num2, den2), rad3 = Rat(l.a) * l.a;

  int which = 1;
  Rat best = rad1;
  if (rad2 < best) {
    best = rad2;
    which = 2;
  }
  if (rad3 < best) which = 3;

  switch (which) {
    case 1: return make_radical(num1, den1, Position::VeryGeneral);
    case 2: return make_radical(num2, den2, Position::VeryGeneral);
    default: return make_rational(Rat(l.a), Position::VeryGeneral);
  }
}

SeshadriBoundReport seshadri_bounds(const BaseDivisorClass& l, std::int64_t e, std::int64_t r) {
  SeshadriBoundReport rep;
  rep.bound_I = bound_from_I(l, e, r);
  rep.bound_II = bound_from_II(l, e, r);
  rep.bound_III = bound_from_III(l, e, r);
  for (const auto* b : {&rep.bound_I, &rep.bound_II, &rep.bound_III}) {
    if (!b->has_value()) continue;
    if (!rep.best || (*b)->radicand > rep.best->radicand) rep.best = **b;
  }
  return rep;
}

}  // namespace hp::seshadri
