#include "hp/criteria.hpp"

#include <algorithm>
#include <stdexcept>

namespace hp::criteria {

const char* family_name(Family f) {
  switch (f) {
    case Family::Ample: return "ample";
    case Family::GloballyGenerated: return "globally-generated";
    case Family::VeryAmple: return "very-ample";
    case Family::KVeryAmple: return "k-very-ample";
  }
  return "?";
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::I: return "I";
    case Variant::II: return "II";
    case Variant::III: return "III";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Satisfied: return "satisfied";
    case Verdict::NotSatisfied: return "not-satisfied";
    case Verdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

ThresholdData lambda_of(std::int64_t e, std::int64_t r) {
  if (e < 1) throw std::invalid_argument("lambda_of: requires e >= 1");
  if (r < 0) throw std::invalid_argument("lambda_of: requires r >= 0");
  // least lambda >= e with 2*lambda - e + 2 > r
  std::int64_t num = r + e - 2;
  std::int64_t half = (num >= 0) ? num / 2 : -((-num + 1) / 2);
  ThresholdData th;
  th.lambda = std::max<std::int64_t>(e, half + 1);
  for (std::int64_t i = e; i <= th.lambda; ++i) th.k_values.emplace_back(i, 2 * i - e + 1);
  return th;
}

namespace {

std::vector<Int> transformed_desc(const std::vector<Int>& values, Transform t) {
  std::vector<Int> out;
  out.reserve(values.size());
  for (const Int& v : values) {
    switch (t) {
      case Transform::Identity: out.push_back(v); break;
      case Transform::PlusOne: out.push_back(v + 1); break;
      case Transform::Square: out.push_back(v * v); break;
      case Transform::PlusOneSquared: out.push_back((v + 1) * (v + 1)); break;
    }
  }
  std::sort(out.begin(), out.end(), std::greater<Int>());
  return out;
}

std::vector<Int> prefix_sums(const std::vector<Int>& sorted) {
  std::vector<Int> pre(sorted.size() + 1, Int(0));
  for (std::size_t i = 0; i < sorted.size(); ++i) pre[i + 1] = pre[i] + sorted[i];
  return pre;
}

struct ReportBuilder {
  CriterionReport rep;
  bool all_passed = true;

  void push(std::string label, bool passed, Rat lhs, Rat rhs, bool strict) {
    all_passed = all_passed && passed;
    rep.conditions.push_back(
        {std::move(label), passed, std::move(lhs), std::move(rhs), strict});
  }

  void simple(const char* label, const Int& lhs, const Int& rhs, bool strict) {
    bool ok = strict ? lhs > rhs : lhs >= rhs;
    push(label, ok, Rat(lhs), Rat(rhs), strict);
  }

  void finish() {
    rep.verdict = all_passed ? Verdict::Satisfied : Verdict::NotSatisfied;
  }
};

// Accumulates a universally quantified condition; keeps the first failing
// witness (callers iterate in ascending order), otherwise the witness with
// the smallest margin lhs - rhs.
struct Quantified {
  const char* base;
  const char* var;
  bool strict;
  bool any = false;
  bool failed = false;
  std::int64_t witness = 0;
  Rat lhs, rhs;

  Quantified(const char* base_label, const char* var_name, bool is_strict)
      : base(base_label), var(var_name), strict(is_strict) {}

  void consider(std::int64_t w, Rat l, Rat r) {
    if (failed) return;
    bool ok = strict ? l > r : l >= r;
    if (!ok) {
      failed = true;
      witness = w;
      lhs = std::move(l);
      rhs = std::move(r);
      any = true;
      return;
    }
    if (!any || l - r < lhs - rhs) {
      witness = w;
      lhs = std::move(l);
      rhs = std::move(r);
      any = true;
    }
  }

  void commit(ReportBuilder& b) {
    std::string label = std::string(base) + "[" + var + "=" + std::to_string(witness) + "]";
    b.push(std::move(label), !failed, lhs, rhs, strict);
  }
};

// clause (1) pattern "hi > m_i + off > lower", reported as the two
// one-sided conditions 1a and 1b
void clause_one(ReportBuilder& b, const std::vector<Int>& m, const Int& hi, const Int& off,
                const Int& lower) {
  Quantified qa("1a", "i", true);
  Quantified qb("1b", "i", true);
  for (std::size_t i = 0; i < m.size(); ++i) {
    qa.consider(static_cast<std::int64_t>(i) + 1, Rat(hi), Rat(m[i] + off));
    qb.consider(static_cast<std::int64_t>(i) + 1, Rat(m[i] + off), Rat(lower));
  }
  qa.commit(b);
  qb.commit(b);
}

// clause (2) of the lambda/k_i variants: for e <= i <= lambda,
//   base_b + (i - e) * base_a > top_{k_i}(transformed m) + slack
void clause_lambda(ReportBuilder& b, const ThresholdData& th, std::int64_t e,
                   const std::vector<Int>& m, const Int& base_a, const Int& base_b,
                   Transform t, const Int& slack) {
  auto pre = prefix_sums(transformed_desc(m, t));
  Quantified q("2", "i", true);
  for (const auto& [i, ki] : th.k_values) {
    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(ki), m.size());
    q.consider(i, Rat(base_b + (i - e) * base_a), Rat(pre[take] + slack));
  }
  q.commit(b);
}

// the two quadratic clauses of the variant-III criteria: for 2 <= s <= r,
//   lhs3 >=/>  (3/(s+2) + extra) * T_s      (label "3")
//   lhs4 >/>=  ((s+3)/(s+2) + extra) * T_s  (label "4")
// where T_s is the top-s sum of the transformed m.  Comparisons are
// cross-multiplied by (s+2).
void clauses_quadratic(ReportBuilder& b, const std::vector<Int>& m, const Int& lhs3,
                       const Int& lhs4, Transform t, const Int& extra, bool strict3,
                       bool strict4) {
  auto pre = prefix_sums(transformed_desc(m, t));
  Quantified q3("3", "s", strict3);
  Quantified q4("4", "s", strict4);
  for (std::size_t s = 2; s <= m.size(); ++s) {
    const Int& ts = pre[s];
    Int sp2 = Int(s) + 2;
    q3.consider(static_cast<std::int64_t>(s), Rat(lhs3), Rat((3 + extra * sp2) * ts, sp2));
    q4.consider(static_cast<std::int64_t>(s), Rat(lhs4),
                Rat((Int(s) + 3 + extra * sp2) * ts, sp2));
  }
  q3.commit(b);
  q4.commit(b);
}

// Applicability gate shared by all checkers.  Returns false after stamping a
// NotApplicable report when a model-level hypothesis fails; numeric
// hypothesis violations are NOT handled here (they yield NotSatisfied).
bool applicable(ReportBuilder& b, const BlowupModel& model, Position need, std::size_t r_floor,
                std::int64_t k) {
  std::string why;
  if (model.e < 1) {
    why = "requires e >= 1";
  } else if (model.r < 1) {
    why = "requires at least one blown-up point (r >= 1)";
  } else if (!lattice::position_implies(model.position, need)) {
    why = std::string("requires position ") + lattice::position_name(need) +
          " or stronger; model has " + lattice::position_name(model.position);
  } else if (model.r < r_floor) {
    why = "requires r >= " + std::to_string(r_floor);
  } else if (k < 1) {
    why = "requires k >= 1";
  }
  if (why.empty()) return true;
  b.rep.verdict = Verdict::NotApplicable;
  if (!b.rep.applicability_note.empty()) b.rep.applicability_note += "; ";
  b.rep.applicability_note += "not applicable: " + why;
  return false;
}

void require_dim(const DivisorClass& L, const BlowupModel& model, const char* who) {
  if (L.m.size() != model.r) {
    throw std::invalid_argument(std::string(who) + ": m has length " +
                                std::to_string(L.m.size()) + ", model.r is " +
                                std::to_string(model.r));
  }
}

constexpr const char* kVerbatimNote =
    "condition (3) left-hand side is evaluated verbatim as "
    "(b+e+2)^2 - (a+2)e[2(b+e+2) - ae]; the analogous global-generation and "
    "very-ampleness conditions use (b+e+2)^2 - e[2(a+2)(b+e+2) - (a+2)^2 e], "
    "which differs by 2(a+2)e^2; the stated form may be a typo but is not "
    "substituted";

}  // namespace

CriterionReport check_ampleness(const DivisorClass& L, const BlowupModel& model,
                                Variant variant) {
  require_dim(L, model, "check_ampleness");
  ReportBuilder b;
  b.rep.id = {Family::Ample, variant, 0};
  Position need = variant == Variant::I ? Position::OffCeDistinctFibers : Position::VeryGeneral;
  std::size_t r_floor = variant == Variant::III ? 3 : 1;
  if (!applicable(b, model, need, r_floor, 1)) return b.rep;

  const Int e(model.e);
  const Int& a = L.a;
  const Int& bc = L.b;

  switch (variant) {
    case Variant::I: {
      clause_one(b, L.m, a, Int(0), Int(0));
      b.simple("2", bc, a * e, true);
      Int sum = 0;
      for (const Int& mi : L.m) sum += mi;
      b.simple("3", bc, sum, true);
      break;
    }
    case Variant::II: {
      auto th = lambda_of(model.e, static_cast<std::int64_t>(model.r));
      clause_one(b, L.m, a, Int(0), Int(0));
      clause_lambda(b, th, model.e, L.m, a, bc, Transform::Identity, Int(0));
      b.simple("3", bc, a * th.lambda, true);
      break;
    }
    case Variant::III: {
      clause_one(b, L.m, a, Int(0), Int(0));
      b.simple("2", bc, a * e, true);
      Int lhs4 = 2 * a * bc - a * a * e;
      Int lhs3 = bc * bc - e * lhs4;
      clauses_quadratic(b, L.m, lhs3, lhs4, Transform::Square, Int(0), false, true);
      break;
    }
  }
  b.finish();
  return b.rep;
}

CriterionReport check_global_generation(const DivisorClass& L, const BlowupModel& model,
                                        Variant variant) {
  require_dim(L, model, "check_global_generation");
  ReportBuilder b;
  b.rep.id = {Family::GloballyGenerated, variant, 0};
  Position need = variant == Variant::I ? Position::OffCeDistinctFibers : Position::VeryGeneral;
  std::size_t r_floor = variant == Variant::III ? 3 : 1;
  if (!applicable(b, model, need, r_floor, 1)) return b.rep;

  const Int e(model.e);
  const Int A = L.a + 2;
  const Int B = L.b + e + 2;

  switch (variant) {
    case Variant::I: {
      clause_one(b, L.m, A, Int(1), Int(0));
      b.simple("2", B, A * e, true);
      Int sum = 0;
      for (const Int& mi : L.m) sum += mi + 1;
      b.simple("3", B, sum, true);
      break;
    }
    case Variant::II: {
      auto th = lambda_of(model.e, static_cast<std::int64_t>(model.r));
      clause_one(b, L.m, A, Int(1), Int(0));
      clause_lambda(b, th, model.e, L.m, A, B, Transform::PlusOne, Int(1));
      b.simple("3", B, A * th.lambda + 1, false);
      break;
    }
    case Variant::III: {
      clause_one(b, L.m, A, Int(1), Int(2));
      b.simple("2", B, A * e, true);
      Int lhs4 = 2 * A * B - A * A * e;
      Int lhs3 = B * B - e * lhs4;
      clauses_quadratic(b, L.m, lhs3, lhs4, Transform::PlusOneSquared, Int(0), false, true);
      break;
    }
  }
  b.finish();
  return b.rep;
}

CriterionReport check_very_ample(const DivisorClass& L, const BlowupModel& model,
                                 Variant variant) {
  require_dim(L, model, "check_very_ample");
  ReportBuilder b;
  b.rep.id = {Family::VeryAmple, variant, 0};
  std::size_t r_floor = variant == Variant::III ? 4 : 1;
  if (!applicable(b, model, Position::VeryGeneral, r_floor, 1)) return b.rep;

  const Int e(model.e);
  const Int A = L.a + 2;
  const Int B = L.b + e + 2;

  switch (variant) {
    case Variant::I: {
      clause_one(b, L.m, A, Int(2), Int(2));
      b.simple("2", B, A * e + 1, true);
      Int sum = 0;
      for (const Int& mi : L.m) sum += mi + 1;
      b.simple("3", B, sum + 2, true);
      break;
    }
    case Variant::II: {
      auto th = lambda_of(model.e, static_cast<std::int64_t>(model.r));
      clause_one(b, L.m, A, Int(2), Int(2));
      clause_lambda(b, th, model.e, L.m, A, B, Transform::PlusOne, Int(2));
      b.simple("3", B, A * th.lambda + 1, true);
      break;
    }
    case Variant::III: {
      clause_one(b, L.m, A, Int(2), Int(2));
      b.simple("2", B, A * e + 1, true);
      Int lhs4 = 2 * A * B - A * A * e;
      Int lhs3 = B * B - e * lhs4;
      clauses_quadratic(b, L.m, lhs3, lhs4, Transform::PlusOneSquared, Int(2), false, true);
      break;
    }
  }
  b.finish();
  return b.rep;
}

CriterionReport check_k_very_ample(const DivisorClass& L, const BlowupModel& model,
                                   Variant variant, std::int64_t k) {
  require_dim(L, model, "check_k_very_ample");
  ReportBuilder b;
  b.rep.id = {Family::KVeryAmple, variant, k};
  if (variant == Variant::III) b.rep.applicability_note = kVerbatimNote;
  std::size_t r_floor = variant == Variant::III ? 4 : 1;
  if (!applicable(b, model, Position::VeryGeneral, r_floor, k)) return b.rep;

  const Int e(model.e);
  const Int A = L.a + 2;
  const Int B = L.b + e + 2;
  const Int kk(k);

  switch (variant) {
    case Variant::I: {
      clause_one(b, L.m, A, 2 * kk, 3 * kk - 1);
      b.simple("2", B, A * e + 2 * kk + 1, true);
      Int sum = 0;
      for (const Int& mi : L.m) sum += mi + 1;
      b.simple("3", B, sum + 2 * kk, false);
      break;
    }
    case Variant::II: {
      auto th = lambda_of(model.e, static_cast<std::int64_t>(model.r));
      clause_one(b, L.m, A, 2 * kk, 3 * kk - 1);
      clause_lambda(b, th, model.e, L.m, A, B, Transform::PlusOne, 2 * kk + 1);
      b.simple("3", B, A * (th.lambda + 1), true);
      break;
    }
    case Variant::III: {
      clause_one(b, L.m, A, 2 * kk, 3 * kk - 1);
      b.simple("2", B, A * e + 2 * kk + 1, true);
      Int lhs4 = 2 * A * B - A * A * e;
      Int lhs3 = B * B - A * e * (2 * B - L.a * e);
      clauses_quadratic(b, L.m, lhs3, lhs4, Transform::PlusOneSquared, 2 * kk + 1, false, false);
      break;
    }
  }
  b.finish();
  return b.rep;
}

std::vector<CriterionReport> check_all(const DivisorClass& L, const BlowupModel& model,
                                       std::int64_t k) {
  std::vector<CriterionReport> out;
  out.reserve(12);
  for (Variant v : {Variant::I, Variant::II, Variant::III}) out.push_back(check_ampleness(L, model, v));
  for (Variant v : {Variant::I, Variant::II, Variant::III})
    out.push_back(check_global_generation(L, model, v));
  for (Variant v : {Variant::I, Variant::II, Variant::III}) out.push_back(check_very_ample(L, model, v));
  for (Variant v : {Variant::I, Variant::II, Variant::III})
    out.push_back(check_k_very_ample(L, model, v, k));
  return out;
}

Int topk_sum(const std::vector<Int>& values, std::size_t k, Transform t) {
  auto sorted = transformed_desc(values, t);
  std::size_t take = std::min(k, sorted.size());
  Int sum = 0;
  for (std::size_t i = 0; i < take; ++i) sum += sorted[i];
  return sum;
}

}  // namespace hp::criteria
