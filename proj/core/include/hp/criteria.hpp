#ifndef HP_CRITERIA_HPP_
#define HP_CRITERIA_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hp/lattice.hpp"

// The twelve sufficient positivity criteria for L = aH + bF - sum m_i E_i on
// the blown-up Hirzebruch surface: ampleness, global generation, very
// ampleness, and k-very ampleness, in three variants each.  Variant I assumes
// points off C_e on distinct fibers; variants II and III assume very general
// points.  Every inequality is evaluated exactly as printed in its source
// statement, including strict/non-strict asymmetries; fractional thresholds
// are compared by integer cross-multiplication.

namespace hp::criteria {

using lattice::BlowupModel;
using lattice::DivisorClass;
using lattice::Int;
using lattice::Position;
using lattice::Rat;

enum class Family { Ample, GloballyGenerated, VeryAmple, KVeryAmple };
enum class Variant { I, II, III };
enum class Verdict { Satisfied, NotSatisfied, NotApplicable };

const char* family_name(Family f);
const char* variant_name(Variant v);
const char* verdict_name(Verdict v);

struct CriterionId {
  Family family;
  Variant variant;
  std::int64_t k = 0;  // only meaningful for Family::KVeryAmple, where k >= 1
};

// One evaluated inequality, lhs REL rhs with REL = (strict ? ">" : ">=").
// Quantified clauses carry the binding witness in the label, e.g. "2[i=11]"
// or "3[s=2]": the first failing witness when the clause fails, otherwise the
// witness with the smallest margin.
struct Condition {
  std::string label;
  bool passed;
  Rat lhs;
  Rat rhs;
  bool strict;
};

struct CriterionReport {
  CriterionId id;
  Verdict verdict = Verdict::NotApplicable;
  std::vector<Condition> conditions;
  std::string applicability_note;
};

// lambda >= e least with 2*lambda - e + 2 > r, and k_i = 2i - e + 1 for
// e <= i <= lambda
struct ThresholdData {
  std::int64_t lambda = 0;
  std::vector<std::pair<std::int64_t, std::int64_t>> k_values;  // (i, k_i)
};

// requires e >= 1
ThresholdData lambda_of(std::int64_t e, std::int64_t r);

enum class Transform { Identity, PlusOne, Square, PlusOneSquared };

// applies the transform elementwise, sorts descending, sums the first
// min(k, values.size()) entries
Int topk_sum(const std::vector<Int>& values, std::size_t k, Transform t);

CriterionReport check_ampleness(const DivisorClass& L, const BlowupModel& model, Variant variant);
CriterionReport check_global_generation(const DivisorClass& L, const BlowupModel& model, Variant variant);
CriterionReport check_very_ample(const DivisorClass& L, const BlowupModel& model, Variant variant);
CriterionReport check_k_very_ample(const DivisorClass& L, const BlowupModel& model, Variant variant,
                                   std::int64_t k);

// all twelve, in order ample I..III, gg I..III, va I..III, kva I..III
std::vector<CriterionReport> check_all(const DivisorClass& L, const BlowupModel& model,
                                       std::int64_t k);

}  // namespace hp::criteria

#endif  // HP_CRITERIA_HPP_
