#ifndef HP_OBSTRUCTIONS_HPP_
#define HP_OBSTRUCTIONS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "hp/lattice.hpp"

// Candidate obstruction classes and the numeric window tests that a verdict
// is cross-checked against: necessary positivity of pairings, the two
// adjoint-bundle obstruction pair lists, and the (k+2)-style window with its
// generalized-inequality oracle.
namespace hp::obstructions {

using lattice::BlowupModel;
using lattice::DivisorClass;
using lattice::Int;

// How a candidate class entered the catalog.  The shape is determined by the
// tag: Exceptional = E_i, Fiber = F, FiberMinusE = F - E_i, SectionH = H,
// SectionType = H + beta*F - sum of unit E_i, Generic = arbitrary sweep cell.
enum class Provenance { Exceptional, Fiber, FiberMinusE, SectionH, SectionType, Generic };

const char* provenance_name(Provenance p);

// A candidate curve class alpha*H + beta*F - sum n_i E_i.  For Exceptional
// the stored n is the +1 unit vector and the class denoted is +E_i itself;
// every other provenance stores the subtracted multiplicities directly.
struct CurveClass {
  Int alpha;
  Int beta;
  std::vector<Int> n;
  Provenance provenance = Provenance::Generic;

  // Human-readable form, e.g. "E_3", "F-E_1", "H+2F-E_1-E_4".
  std::string describe() const;
};

// Divisor-class coordinates of the curve (m in the subtracted convention).
DivisorClass to_divisor(const CurveClass& c);

enum class WindowKind { ReiderGG, ReiderVA, Bfs, NecessaryPositivity };

const char* window_name(WindowKind w);

struct ObstructionFinding {
  CurveClass curve;
  Int pairing;   // N.D (or L.D / L^2 for necessary positivity)
  Int self_int;  // D^2
  WindowKind window = WindowKind::NecessaryPositivity;
  std::int64_t k = 0;  // meaningful only for Bfs
};

// Catalog of classes the proof machinery pairs against, per position flag:
// always E_i and F; off-C_e positions add F - E_i and H; very general points
// add the section-type family H + beta*F - E_{i_1} - ... for e <= beta <=
// beta_max, with min(r, 2*beta - e + 1) unit entries placed on the largest
// multiplicities of L_or_N (ties to the lowest index).  The section-type
// family requires e >= 1 and beta_max >= e, otherwise it is omitted.
std::vector<CurveClass> candidate_classes(const BlowupModel& model, const DivisorClass& L_or_N,
                                          std::int64_t beta_max);

// Every catalog class D with L.D <= 0, plus a finding for L itself when
// L^2 <= 0.  These are necessary conditions: any finding refutes ampleness.
std::vector<ObstructionFinding> necessary_positivity(const DivisorClass& L,
                                                     const BlowupModel& model,
                                                     const std::vector<CurveClass>& catalog);

enum class ReiderMode { GG, VA };

// Whether (N.D, D^2) is one of the printed obstruction pairs:
//   GG: (0,-1), (1,0);  VA: additionally (0,-2), (1,-1), (2,0).
bool reider_window(const Int& n_dot_d, const Int& d_sq, ReiderMode mode);

// Whether N.D - k - 1 <= D^2 <= (N.D)/2 < k+1, with the halving compared
// exactly by cross-multiplication.  Requires k >= 0.
bool bfs_window(const Int& n_dot_d, const Int& d_sq, std::int64_t k);

enum class ScanMode { GG, VA, BFS };

struct ScanResult {
  std::vector<ObstructionFinding> findings;
  Int n_squared;   // N^2
  Int floor;       // 5 (GG), 10 (VA), 4k+5 (BFS)
  bool floor_ok = false;
};

// Evaluates the catalog plus a bounded generic sweep against the requested
// window.  Swept cells have 0 <= alpha, beta <= generic_bound and
// 0 <= n_i <= alpha, honor beta >= alpha*e for alpha >= 1, and in very
// general position the multiplicity bound sum n_i <= beta + (lambda-e)*alpha.
// The zero class is excluded.  N should be the adjoint shift of the bundle
// under test.  The sweep is a heuristic search for counterexamples: empty
// findings do not certify the positivity property.
ScanResult scan_obstructions(const DivisorClass& N, const BlowupModel& model, ScanMode mode,
                             std::int64_t k, std::int64_t beta_max, std::int64_t generic_bound);

// Exact test of ((r+3)/(r+2) + t) * (sum m_i^2) * (sum n_i^2 - nmin) >
// (sum m_i n_i + t)^2, cross-multiplied by (r+2).  Preconditions: equal
// lengths r >= 4, all m_i >= 1, all n_i >= 1 with some n_i >= 2, t >= 1,
// nmin >= 1, sum m_i^2 >= t; violations raise std::invalid_argument.
bool lemma_general_inequality(const std::vector<Int>& m, const std::vector<Int>& n, const Int& t,
                              const Int& nmin);

}  // namespace hp::obstructions

#endif  // HP_OBSTRUCTIONS_HPP_
