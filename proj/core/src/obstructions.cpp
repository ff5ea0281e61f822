#include "hp/obstructions.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <utility>

#include "hp/criteria.hpp"

namespace hp::obstructions {

const char* provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Exceptional: return "exceptional";
    case Provenance::Fiber: return "fiber";
    case Provenance::FiberMinusE: return "fiber-minus-exceptional";
    case Provenance::SectionH: return "section-h";
    case Provenance::SectionType: return "section-type";
    case Provenance::Generic: return "generic";
  }
  return "?";
}

const char* window_name(WindowKind w) {
  switch (w) {
    case WindowKind::ReiderGG: return "reider-gg";
    case WindowKind::ReiderVA: return "reider-va";
    case WindowKind::Bfs: return "bfs";
    case WindowKind::NecessaryPositivity: return "necessary-positivity";
  }
  return "?";
}

DivisorClass to_divisor(const CurveClass& c) {
  DivisorClass d;
  d.a = c.alpha;
  d.b = c.beta;
  d.m = c.n;
  // E_i is stored with n = +unit but denotes the class +E_i, whose
  // subtracted multiplicity is -1.
  if (c.provenance == Provenance::Exceptional)
    for (Int& v : d.m) v = -v;
  return d;
}

namespace {

void append_term(std::string& s, const Int& coef, const std::string& sym) {
  if (coef == 0) return;
  Int c = coef;
  if (s.empty()) {
    if (c < 0) {
      s += '-';
      c = -c;
    }
  } else {
    s += c < 0 ? '-' : '+';
    if (c < 0) c = -c;
  }
  if (c != 1) s += c.str();
  s += sym;
}

void require_dim(const DivisorClass& L, const BlowupModel& model, const char* who) {
  if (L.m.size() != model.r) {
    throw std::invalid_argument(std::string(who) + ": m has length " +
                                std::to_string(L.m.size()) + ", model.r is " +
                                std::to_string(model.r));
  }
}

}  // namespace

std::string CurveClass::describe() const {
  DivisorClass d = to_divisor(*this);
  std::string s;
  append_term(s, d.a, "H");
  append_term(s, d.b, "F");
  for (std::size_t i = 0; i < d.m.size(); ++i)
    append_term(s, -d.m[i], "E_" + std::to_string(i + 1));
  return s.empty() ? "0" : s;
}

std::vector<CurveClass> candidate_classes(const BlowupModel& model, const DivisorClass& L_or_N,
                                          std::int64_t beta_max) {
  require_dim(L_or_N, model, "candidate_classes");
  const std::size_t r = model.r;
  const std::vector<Int> zeros(r, Int(0));
  std::vector<CurveClass> out;

  for (std::size_t i = 0; i < r; ++i) {
    CurveClass c{Int(0), Int(0), zeros, Provenance::Exceptional};
    c.n[i] = 1;
    out.push_back(std::move(c));
  }
  out.push_back({Int(0), Int(1), zeros, Provenance::Fiber});

  if (!lattice::position_implies(model.position, lattice::Position::OffCeDistinctFibers))
    return out;
  for (std::size_t i = 0; i < r; ++i) {
    CurveClass c{Int(0), Int(1), zeros, Provenance::FiberMinusE};
    c.n[i] = 1;
    out.push_back(std::move(c));
  }
  out.push_back({Int(1), Int(0), zeros, Provenance::SectionH});

  if (!lattice::position_implies(model.position, lattice::Position::VeryGeneral)) return out;
  if (model.e < 1 || beta_max < model.e) return out;

  // adversarial placement: units go on the largest multiplicities
  std::vector<std::size_t> ord(r);
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(),
                   [&](std::size_t x, std::size_t y) { return L_or_N.m[x] > L_or_N.m[y]; });
  for (std::int64_t beta = model.e; beta <= beta_max; ++beta) {
    std::size_t units = std::min<std::size_t>(r, static_cast<std::size_t>(2 * beta - model.e + 1));
    CurveClass c{Int(1), Int(beta), zeros, Provenance::SectionType};
    for (std::size_t j = 0; j < units; ++j) c.n[ord[j]] = 1;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<ObstructionFinding> necessary_positivity(const DivisorClass& L,
                                                     const BlowupModel& model,
                                                     const std::vector<CurveClass>& catalog) {
  require_dim(L, model, "necessary_positivity");
  std::vector<ObstructionFinding> out;
  for (const CurveClass& c : catalog) {
    DivisorClass D = to_divisor(c);
    Int nd = lattice::intersect(L, D, model);
    if (nd <= 0) {
      out.push_back({c, nd, lattice::self_intersection(D, model),
                     WindowKind::NecessaryPositivity, 0});
    }
  }
  Int l2 = lattice::self_intersection(L, model);
  if (l2 <= 0) {
    CurveClass self{L.a, L.b, L.m, Provenance::Generic};
    out.push_back({std::move(self), l2, l2, WindowKind::NecessaryPositivity, 0});
  }
  return out;
}

bool reider_window(const Int& n_dot_d, const Int& d_sq, ReiderMode mode) {
  if (n_dot_d == 0 && d_sq == -1) return true;
  if (n_dot_d == 1 && d_sq == 0) return true;
  if (mode == ReiderMode::GG) return false;
  if (n_dot_d == 0 && d_sq == -2) return true;
  if (n_dot_d == 1 && d_sq == -1) return true;
  if (n_dot_d == 2 && d_sq == 0) return true;
  return false;
}

bool bfs_window(const Int& n_dot_d, const Int& d_sq, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("bfs_window: requires k >= 0");
  return n_dot_d - k - 1 <= d_sq && 2 * d_sq <= n_dot_d && n_dot_d < 2 * k + 2;
}

ScanResult scan_obstructions(const DivisorClass& N, const BlowupModel& model, ScanMode mode,
                             std::int64_t k, std::int64_t beta_max, std::int64_t generic_bound) {
  require_dim(N, model, "scan_obstructions");
  if (mode == ScanMode::BFS && k < 0)
    throw std::invalid_argument("scan_obstructions: requires k >= 0 in BFS mode");

  const std::size_t r = model.r;
  const std::int64_t e = model.e;

  ScanResult res;
  res.n_squared = lattice::self_intersection(N, model);
  switch (mode) {
    case ScanMode::GG: res.floor = 5; break;
    case ScanMode::VA: res.floor = 10; break;
    case ScanMode::BFS: res.floor = 4 * Int(k) + 5; break;
  }
  res.floor_ok = res.n_squared >= res.floor;

  const WindowKind wk = mode == ScanMode::GG   ? WindowKind::ReiderGG
                        : mode == ScanMode::VA ? WindowKind::ReiderVA
                                               : WindowKind::Bfs;
  const std::int64_t fk = mode == ScanMode::BFS ? k : 0;
  auto in_window = [&](const Int& nd, const Int& d2) {
    switch (mode) {
      case ScanMode::GG: return reider_window(nd, d2, ReiderMode::GG);
      case ScanMode::VA: return reider_window(nd, d2, ReiderMode::VA);
      case ScanMode::BFS: return bfs_window(nd, d2, k);
    }
    return false;
  };

  std::set<std::vector<Int>> seen;
  auto consider = [&](const CurveClass& c) {
    DivisorClass D = to_divisor(c);
    std::vector<Int> key;
    key.reserve(r + 2);
    key.push_back(D.a);
    key.push_back(D.b);
    key.insert(key.end(), D.m.begin(), D.m.end());
    if (!seen.insert(std::move(key)).second) return;
    Int nd = lattice::intersect(N, D, model);
    Int d2 = lattice::self_intersection(D, model);
    if (in_window(nd, d2)) res.findings.push_back({c, nd, d2, wk, fk});
  };

  for (const CurveClass& c : candidate_classes(model, N, beta_max)) consider(c);

  // bounded generic sweep
  const std::int64_t g = generic_bound;
  const bool vg = lattice::position_implies(model.position, lattice::Position::VeryGeneral) &&
                  e >= 1;
  std::int64_t lambda = 0;
  if (vg) lambda = criteria::lambda_of(e, static_cast<std::int64_t>(r)).lambda;

  // the (0,-1)/(1,0)-style pair lists, for range feasibility checks
  static const std::pair<int, int> kGgPairs[] = {{0, -1}, {1, 0}};
  static const std::pair<int, int> kVaPairs[] = {{0, -1}, {0, -2}, {1, 0}, {1, -1}, {2, 0}};

  // process the largest multiplicities first so the pairing prunes early
  std::vector<std::size_t> ord(r);
  std::iota(ord.begin(), ord.end(), 0);
  std::stable_sort(ord.begin(), ord.end(),
                   [&](std::size_t x, std::size_t y) { return N.m[x] > N.m[y]; });

  for (std::int64_t alpha = 0; alpha <= g; ++alpha) {
    std::int64_t beta_lo = alpha >= 1 ? alpha * e : 0;
    for (std::int64_t beta = beta_lo; beta <= g; ++beta) {
      if (alpha == 0 && beta == 0) continue;  // zero class

      const std::int64_t cap = alpha;  // n_i <= alpha <= g
      const Int C1 = Int(alpha) * N.b + Int(beta) * N.a - Int(alpha) * N.a * e;
      const Int C2 = 2 * Int(alpha) * beta - Int(alpha) * alpha * e;
      const std::int64_t smax = vg ? beta + (lambda - e) * alpha : 0;

      if (cap == 0 || r == 0) {
        // only n = 0 is admissible
        if (in_window(C1, C2))
          consider({Int(alpha), Int(beta), std::vector<Int>(r, Int(0)), Provenance::Generic});
        continue;
      }

      // suffix bounds on the pairing contribution, in sorted order
      std::vector<Int> suff_pos(r + 1, Int(0)), suff_neg(r + 1, Int(0));
      for (std::size_t j = r; j-- > 0;) {
        const Int& M = N.m[ord[j]];
        suff_pos[j] = suff_pos[j + 1] + (M > 0 ? M * cap : Int(0));
        suff_neg[j] = suff_neg[j + 1] + (M < 0 ? M * cap : Int(0));
      }

      // true when the window can still be met with N.D in [ndlo, ndhi] and
      // D^2 in [d2lo, d2hi] (independent relaxation, so pruning is sound)
      auto feasible = [&](const Int& ndlo, const Int& ndhi, const Int& d2lo, const Int& d2hi) {
        switch (mode) {
          case ScanMode::GG:
            for (auto [x, y] : kGgPairs)
              if (ndlo <= x && x <= ndhi && d2lo <= y && y <= d2hi) return true;
            return false;
          case ScanMode::VA:
            for (auto [x, y] : kVaPairs)
              if (ndlo <= x && x <= ndhi && d2lo <= y && y <= d2hi) return true;
            return false;
          case ScanMode::BFS: {
            Int lo = 2 * d2lo;
            if (ndlo > lo) lo = ndlo;
            Int hi = d2hi + k + 1;
            if (ndhi < hi) hi = ndhi;
            if (2 * k + 1 < hi) hi = 2 * k + 1;
            return lo <= hi;
          }
        }
        return false;
      };

      std::vector<std::int64_t> nbuf(r, 0);
      auto dfs = [&](auto&& self, std::size_t j, const Int& P, const Int& Q,
                     std::int64_t S) -> void {
        if (vg && S > smax) return;
        Int ndlo = C1 - P - suff_pos[j];
        Int ndhi = C1 - P - suff_neg[j];
        Int d2hi = C2 - Q;
        Int d2lo = d2hi - Int(r - j) * cap * cap;
        if (!feasible(ndlo, ndhi, d2lo, d2hi)) return;
        if (j == r) {
          CurveClass c{Int(alpha), Int(beta), std::vector<Int>(r, Int(0)), Provenance::Generic};
          for (std::size_t jj = 0; jj < r; ++jj) c.n[ord[jj]] = nbuf[jj];
          consider(c);
          return;
        }
        const Int& M = N.m[ord[j]];
        for (std::int64_t v = 0; v <= cap; ++v) {
          nbuf[j] = v;
          self(self, j + 1, P + M * v, Q + Int(v) * v, S + v);
        }
        nbuf[j] = 0;
      };
      dfs(dfs, 0, Int(0), Int(0), 0);
    }
  }
  return res;
}

bool lemma_general_inequality(const std::vector<Int>& m, const std::vector<Int>& n, const Int& t,
                              const Int& nmin) {
  if (m.size() != n.size())
    throw std::invalid_argument("lemma_general_inequality: length mismatch");
  const std::size_t r = m.size();
  if (r < 4) throw std::invalid_argument("lemma_general_inequality: requires r >= 4");
  for (const Int& v : m)
    if (v < 1) throw std::invalid_argument("lemma_general_inequality: requires all m_i >= 1");
  bool has_two = false;
  for (const Int& v : n) {
    if (v < 1) throw std::invalid_argument("lemma_general_inequality: requires all n_i >= 1");
    if (v >= 2) has_two = true;
  }
  if (!has_two) throw std::invalid_argument("lemma_general_inequality: requires some n_i >= 2");
  if (t < 1) throw std::invalid_argument("lemma_general_inequality: requires t >= 1");
  if (nmin < 1) throw std::invalid_argument("lemma_general_inequality: requires nmin >= 1");

  Int A = 0, B = 0, C = 0;
  for (std::size_t i = 0; i < r; ++i) {
    A += m[i] * m[i];
    B += n[i] * n[i];
    C += m[i] * n[i];
  }
  if (A < t) throw std::invalid_argument("lemma_general_inequality: requires sum m_i^2 >= t");

  const Int R(static_cast<std::int64_t>(r));
  return (R + 3 + t * (R + 2)) * A * (B - nmin) > (R + 2) * (C + t) * (C + t);
}

}  // namespace hp::obstructions
