// hp: positivity checks for divisor classes on blown-up Hirzebruch surfaces.
//
// Subcommands: check, seshadri, scan, hzero, intersect, catalog.
// Exit codes: 0 success, 2 input error, 3 I/O error (1: scan audit failure).

#include <atomic>
#include <cctype>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hp/criteria.hpp"
#include "hp/lattice.hpp"
#include "hp/obstructions.hpp"
#include "hp/seshadri.hpp"

namespace {

using json = nlohmann::json;
using hp::lattice::BaseDivisorClass;
using hp::lattice::BlowupModel;
using hp::lattice::DivisorClass;
using hp::lattice::Int;
using hp::lattice::Position;
using hp::lattice::Rat;
namespace criteria = hp::criteria;
namespace lattice = hp::lattice;
namespace obstructions = hp::obstructions;
namespace seshadri = hp::seshadri;

struct InputError {
  std::string msg;
};
struct IoError {
  std::string msg;
};

[[noreturn]] void input_error(const std::string& field, const std::string& why) {
  throw InputError{"field '" + field + "': " + why};
}

// ---------------------------------------------------------------- parsing

Int parse_int(const std::string& raw, const std::string& field) {
  std::string s = raw;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) s = s.substr(1);
  if (s.empty()) input_error(field, "expected an integer, got '" + raw + "'");
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      input_error(field, "expected an integer, got '" + raw + "'");
  return Int(raw);
}

std::vector<Int> parse_int_list(const std::string& raw, const std::string& field) {
  std::vector<Int> out;
  if (raw.empty()) return out;
  std::stringstream ss(raw);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_int(tok, field));
  return out;
}

Position parse_position(const std::string& s) {
  if (s == "arbitrary") return Position::Arbitrary;
  if (s == "off-ce-distinct-fibers") return Position::OffCeDistinctFibers;
  if (s == "very-general") return Position::VeryGeneral;
  input_error("position",
              "must be one of arbitrary, off-ce-distinct-fibers, very-general");
}

// Command-line pieces shared by the bundle-taking subcommands.
struct BundleOpts {
  std::int64_t e = 0;
  std::int64_t r = -1;  // -1: infer from m
  std::string position = "very-general";
  std::string a, b;
  std::string m;          // comma-separated
  std::string m_uniform;  // single value, repeated r times
  std::string json_file;
  std::int64_t k = 1;

  // which flags were actually given (filled by finalize after parsing)
  bool has_e = false, has_a = false, has_b = false, has_m = false, has_mu = false;
  CLI::App* cmd = nullptr;

  void add_to(CLI::App* sub, bool with_k = true) {
    cmd = sub;
    cmd->add_option("--e", e, "Hirzebruch invariant e >= 0");
    cmd->add_option("--r", r, "number of blown-up points");
    cmd->add_option("--position", position,
                    "point position: arbitrary | off-ce-distinct-fibers | very-general");
    cmd->add_option("--a", a, "coefficient of H");
    cmd->add_option("--b", b, "coefficient of F");
    cmd->add_option("--m", m, "subtracted multiplicities, comma-separated (e.g. 32,32,1)");
    cmd->add_option("--m-uniform", m_uniform, "uniform multiplicity, repeated r times");
    cmd->add_option("--json", json_file, "read the bundle spec from a JSON file");
    if (with_k) cmd->add_option("--k", k, "order of k-very-ampleness to test (default 1)");
  }

  bool finalized = false;

  void finalize() {
    if (finalized) return;
    finalized = true;
    has_e = cmd->count("--e") > 0;
    has_a = cmd->count("--a") > 0;
    has_b = cmd->count("--b") > 0;
    has_m = cmd->count("--m") > 0;
    has_mu = cmd->count("--m-uniform") > 0;
  }
};

Int json_to_int(const json& v, const std::string& field) {
  if (v.is_number_integer()) return Int(v.get<std::int64_t>());
  if (v.is_string()) return parse_int(v.get<std::string>(), field);
  input_error(field, "expected an integer or a decimal string");
}

// Resolve flags (or a JSON spec file) into (model, L, k).
std::tuple<BlowupModel, DivisorClass, std::int64_t> resolve_bundle(BundleOpts& opt) {
  opt.finalize();
  BlowupModel model;
  DivisorClass L;
  std::int64_t k = opt.k;

  if (!opt.json_file.empty()) {
    if (opt.has_e || opt.has_a || opt.has_b || opt.has_m || opt.has_mu)
      input_error("json", "cannot be combined with explicit bundle flags");
    std::ifstream in(opt.json_file);
    if (!in) throw IoError{"cannot read '" + opt.json_file + "'"};
    json j;
    try {
      in >> j;
    } catch (const json::parse_error& e) {
      input_error("json", std::string("parse failure: ") + e.what());
    }
    if (!j.is_object()) input_error("json", "top-level value must be an object");
    if (!j.contains("e")) input_error("e", "missing");
    model.e = j["e"].get<std::int64_t>();
    model.position = parse_position(j.value("position", std::string("very-general")));
    if (!j.contains("a")) input_error("a", "missing");
    if (!j.contains("b")) input_error("b", "missing");
    L.a = json_to_int(j["a"], "a");
    L.b = json_to_int(j["b"], "b");
    if (j.contains("m")) {
      if (!j["m"].is_array()) input_error("m", "must be an array");
      for (const auto& v : j["m"]) L.m.push_back(json_to_int(v, "m"));
    }
    std::int64_t r = j.value("r", static_cast<std::int64_t>(L.m.size()));
    if (r < 0) input_error("r", "must be nonnegative");
    if (!j.contains("m") && j.contains("m_uniform"))
      L.m.assign(static_cast<std::size_t>(r), json_to_int(j["m_uniform"], "m_uniform"));
    if (static_cast<std::int64_t>(L.m.size()) != r)
      input_error("m", "length " + std::to_string(L.m.size()) + " does not match r = " +
                           std::to_string(r));
    model.r = static_cast<std::size_t>(r);
    if (j.contains("k")) k = j["k"].get<std::int64_t>();
    return {model, L, k};
  }

  if (!opt.has_e) input_error("e", "missing (--e or --json required)");
  if (opt.e < 0) input_error("e", "must be nonnegative");
  model.e = opt.e;
  model.position = parse_position(opt.position);
  if (!opt.has_a) input_error("a", "missing");
  if (!opt.has_b) input_error("b", "missing");
  L.a = parse_int(opt.a, "a");
  L.b = parse_int(opt.b, "b");
  if (opt.has_m && opt.has_mu) input_error("m", "--m and --m-uniform are mutually exclusive");
  if (opt.has_m) {
    L.m = parse_int_list(opt.m, "m");
    if (opt.r >= 0 && static_cast<std::int64_t>(L.m.size()) != opt.r)
      input_error("m", "length " + std::to_string(L.m.size()) + " does not match r = " +
                           std::to_string(opt.r));
  } else if (opt.has_mu) {
    if (opt.r < 0) input_error("r", "required with --m-uniform");
    L.m.assign(static_cast<std::size_t>(opt.r), parse_int(opt.m_uniform, "m-uniform"));
  } else if (opt.r > 0) {
    input_error("m", "missing (--m or --m-uniform required when r > 0)");
  }
  std::int64_t r = opt.r >= 0 ? opt.r : static_cast<std::int64_t>(L.m.size());
  if (r < 0) input_error("r", "must be nonnegative");
  model.r = static_cast<std::size_t>(r);
  return {model, L, k};
}

// ---------------------------------------------------------------- output

struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path);
    if (!file) throw IoError{"cannot write '" + path + "'"};
    out = &file;
  }
};

std::string timestamp_utc() {
  std::time_t t = std::time(nullptr);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string describe_class(const DivisorClass& L) {
  obstructions::CurveClass c{L.a, L.b, L.m, obstructions::Provenance::Generic};
  return c.describe();
}

json int_json(const Int& v) { return v.str(); }

json int_list_json(const std::vector<Int>& v) {
  json out = json::array();
  for (const Int& x : v) out.push_back(int_json(x));
  return out;
}

json divisor_json(const DivisorClass& L) {
  return json{{"a", int_json(L.a)}, {"b", int_json(L.b)}, {"m", int_list_json(L.m)}};
}

json condition_json(const criteria::Condition& c) {
  return json{{"label", c.label},
              {"passed", c.passed},
              {"lhs", lattice::rat_string(c.lhs)},
              {"rhs", lattice::rat_string(c.rhs)},
              {"strict", c.strict}};
}

json report_json(const criteria::CriterionReport& rep) {
  json out{{"family", criteria::family_name(rep.id.family)},
           {"variant", criteria::variant_name(rep.id.variant)},
           {"verdict", criteria::verdict_name(rep.verdict)}};
  if (rep.id.family == criteria::Family::KVeryAmple) out["k"] = rep.id.k;
  json conds = json::array();
  for (const auto& c : rep.conditions) conds.push_back(condition_json(c));
  out["conditions"] = conds;
  if (!rep.applicability_note.empty()) out["note"] = rep.applicability_note;
  return out;
}

json finding_json(const obstructions::ObstructionFinding& f) {
  json out{{"class", f.curve.describe()},
           {"provenance", obstructions::provenance_name(f.curve.provenance)},
           {"pairing", int_json(f.pairing)},
           {"self_int", int_json(f.self_int)},
           {"window", obstructions::window_name(f.window)}};
  if (f.window == obstructions::WindowKind::Bfs) out["k"] = f.k;
  return out;
}

json scan_result_json(const obstructions::ScanResult& sr) {
  json out{{"n_squared", int_json(sr.n_squared)},
           {"floor", int_json(sr.floor)},
           {"floor_ok", sr.floor_ok}};
  json fnd = json::array();
  for (const auto& f : sr.findings) fnd.push_back(finding_json(f));
  out["findings"] = fnd;
  return out;
}

json bound_json(const seshadri::ExactBound& b) {
  json out{{"value", b.value},
           {"expr", b.expr},
           {"radicand", lattice::rat_string(b.radicand)},
           {"position", lattice::position_name(b.required_position)}};
  if (b.is_rational) out["rational"] = lattice::rat_string(b.rational);
  return out;
}

const char* verdict_code(criteria::Verdict v) {
  switch (v) {
    case criteria::Verdict::Satisfied: return "1";
    case criteria::Verdict::NotSatisfied: return "0";
    case criteria::Verdict::NotApplicable: return "NA";
  }
  return "?";
}

// the twelve criteria in report order and their column keys
const std::vector<std::string>& criterion_keys() {
  static const std::vector<std::string> keys{"ampI", "ampII", "ampIII", "ggI",  "ggII",
                                             "ggIII", "vaI",  "vaII",   "vaIII", "kvaI",
                                             "kvaII", "kvaIII"};
  return keys;
}

// ---------------------------------------------------------------- check

struct CheckOpts {
  BundleOpts bundle;
  std::string format = "text";
  std::string out_path;
  std::int64_t beta_max = -1;      // -1: lambda + 2
  std::int64_t generic_bound = 2;
  bool timestamps = false;
};

std::int64_t default_beta_max(const BlowupModel& model) {
  if (model.e < 1) return 0;
  return criteria::lambda_of(model.e, static_cast<std::int64_t>(model.r)).lambda + 2;
}

void render_check_text(std::ostream& os, const BlowupModel& model, const DivisorClass& L,
                       std::int64_t k, const std::vector<criteria::CriterionReport>& reports,
                       const std::vector<obstructions::ObstructionFinding>& necessary,
                       const obstructions::ScanResult& gg, const obstructions::ScanResult& va,
                       const obstructions::ScanResult* bfs, std::int64_t bfs_k) {
  const BlowupModel base = model;
  os << "model: e=" << base.e << " r=" << base.r
     << " position=" << lattice::position_name(base.position) << "\n";
  os << "bundle: L = " << describe_class(L) << "\n";
  DivisorClass N = lattice::adjoint_shift(L, model);
  os << "L^2 = " << lattice::self_intersection(L, model)
     << "  K^2 = " << lattice::self_intersection(lattice::canonical_class(model), model)
     << "  N = L - K = " << describe_class(N) << "\n\ncriteria (k=" << k << "):\n";
  for (const auto& rep : reports) {
    os << "  " << criteria::family_name(rep.id.family) << "-"
       << criteria::variant_name(rep.id.variant) << ": " << criteria::verdict_name(rep.verdict)
       << "\n";
    for (const auto& c : rep.conditions) {
      os << "    " << c.label << ": " << lattice::rat_string(c.lhs)
         << (c.strict ? " > " : " >= ") << lattice::rat_string(c.rhs)
         << (c.passed ? "" : "  [FAILS]") << "\n";
    }
    if (!rep.applicability_note.empty()) os << "    note: " << rep.applicability_note << "\n";
  }
  os << "\nnecessary positivity (pairings of L that must be positive):\n";
  if (necessary.empty()) {
    os << "  no violations\n";
  } else {
    for (const auto& f : necessary)
      os << "  " << f.curve.describe() << ": L.D = " << f.pairing << ", D^2 = " << f.self_int
         << "\n";
  }
  auto render_scan = [&os](const char* name, const obstructions::ScanResult& sr) {
    os << "obstruction scan (" << name << "): N^2 = " << sr.n_squared << ", floor "
       << sr.floor << (sr.floor_ok ? " met" : " NOT met") << "; ";
    if (sr.findings.empty()) {
      os << "no findings\n";
    } else {
      os << sr.findings.size() << " finding(s):\n";
      for (const auto& f : sr.findings)
        os << "  " << f.curve.describe() << " [" << obstructions::provenance_name(f.curve.provenance)
           << "]: N.D = " << f.pairing << ", D^2 = " << f.self_int << "\n";
    }
  };
  os << "\n";
  render_scan("gg", gg);
  render_scan("va", va);
  if (bfs) {
    os << "obstruction scan (bfs, k=" << bfs_k << "): N^2 = " << bfs->n_squared << ", floor "
       << bfs->floor << (bfs->floor_ok ? " met" : " NOT met") << "; ";
    if (bfs->findings.empty())
      os << "no findings\n";
    else {
      os << bfs->findings.size() << " finding(s):\n";
      for (const auto& f : bfs->findings)
        os << "  " << f.curve.describe() << ": N.D = " << f.pairing << ", D^2 = " << f.self_int
           << "\n";
    }
  }
}

int run_check(CheckOpts& opt) {
  auto [model, L, k] = resolve_bundle(opt.bundle);
  Sink sink;
  sink.open(opt.out_path);

  std::int64_t beta_max = opt.beta_max >= 0 ? opt.beta_max : default_beta_max(model);
  auto reports = criteria::check_all(L, model, k);
  auto catalog = obstructions::candidate_classes(model, L, beta_max);
  auto necessary = obstructions::necessary_positivity(L, model, catalog);
  DivisorClass N = lattice::adjoint_shift(L, model);
  auto gg = obstructions::scan_obstructions(N, model, obstructions::ScanMode::GG, 0, beta_max,
                                            opt.generic_bound);
  auto va = obstructions::scan_obstructions(N, model, obstructions::ScanMode::VA, 0, beta_max,
                                            opt.generic_bound);
  std::optional<obstructions::ScanResult> bfs;
  if (k >= 0)
    bfs = obstructions::scan_obstructions(N, model, obstructions::ScanMode::BFS, k, beta_max,
                                          opt.generic_bound);

  if (opt.format == "text") {
    render_check_text(*sink.out, model, L, k, reports, necessary, gg, va,
                      bfs ? &*bfs : nullptr, k);
    return 0;
  }

  json doc;
  doc["schema"] = "1";
  doc["input"] = json{{"e", model.e},
                      {"r", static_cast<std::int64_t>(model.r)},
                      {"position", lattice::position_name(model.position)},
                      {"a", int_json(L.a)},
                      {"b", int_json(L.b)},
                      {"m", int_list_json(L.m)},
                      {"k", k}};
  doc["lattice"] = json{
      {"L2", int_json(lattice::self_intersection(L, model))},
      {"K2", int_json(lattice::self_intersection(lattice::canonical_class(model), model))},
      {"N", divisor_json(N)}};
  json reps = json::array();
  for (const auto& rep : reports) reps.push_back(report_json(rep));
  doc["criteria"] = reps;
  json pairings = json::array();
  for (const auto& c : catalog) {
    DivisorClass D = obstructions::to_divisor(c);
    pairings.push_back(json{{"class", c.describe()},
                            {"provenance", obstructions::provenance_name(c.provenance)},
                            {"pairing_with_L", int_json(lattice::intersect(L, D, model))},
                            {"pairing_with_N", int_json(lattice::intersect(N, D, model))},
                            {"self_int", int_json(lattice::self_intersection(D, model))}});
  }
  doc["catalog_pairings"] = pairings;
  json nec = json::array();
  for (const auto& f : necessary) nec.push_back(finding_json(f));
  doc["necessary_positivity"] = nec;
  json obs;
  obs["gg"] = scan_result_json(gg);
  obs["va"] = scan_result_json(va);
  if (bfs) {
    obs["bfs"] = scan_result_json(*bfs);
    obs["bfs"]["k"] = k;
  }
  doc["obstructions"] = obs;
  if (opt.timestamps) doc["generated_at"] = timestamp_utc();
  *sink.out << doc.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- seshadri

struct SeshadriOpts {
  std::string a, b;
  std::int64_t e = 0;
  std::int64_t r = 0;
  std::string format = "text";
  std::string out_path;
  bool timestamps = false;
};

int run_seshadri(const SeshadriOpts& opt) {
  if (opt.e < 0) input_error("e", "must be nonnegative");
  if (opt.r < 0) input_error("r", "must be nonnegative");
  BaseDivisorClass l{parse_int(opt.a, "a"), parse_int(opt.b, "b")};
  Sink sink;
  sink.open(opt.out_path);

  auto rep = seshadri::seshadri_bounds(l, opt.e, opt.r);
  std::vector<std::string> warnings;
  if (!(l.a >= 1 && l.b >= l.a * opt.e + 1))
    warnings.push_back("l is not ample (requires a >= 1 and b >= a*e + 1)");
  if (opt.e < 1) warnings.push_back("bounds require e >= 1");
  if (opt.r < 1) warnings.push_back("bounds require r >= 1");

  if (opt.format == "text") {
    auto& os = *sink.out;
    os << "l = " << l.a << "C+" << l.b << "f on e=" << opt.e << ", r=" << opt.r << "\n";
    auto line = [&os](const char* name, const std::optional<seshadri::ExactBound>& b) {
      os << "bound " << name << ": ";
      if (!b) {
        os << "absent\n";
        return;
      }
      os << b->expr;
      if (!b->is_rational) {
        std::ostringstream tmp;
        tmp.precision(15);
        tmp << b->value;
        os << " = " << tmp.str();
      }
      os << "  (points: " << lattice::position_name(b->required_position) << ")\n";
    };
    line("I", rep.bound_I);
    line("II", rep.bound_II);
    line("III", rep.bound_III);
    line("best", rep.best);
    for (const auto& w : warnings) os << "warning: " << w << "\n";
    return 0;
  }

  json doc;
  doc["schema"] = "1";
  doc["input"] = json{{"a", int_json(l.a)}, {"b", int_json(l.b)}, {"e", opt.e}, {"r", opt.r}};
  json bounds;
  bounds["I"] = rep.bound_I ? bound_json(*rep.bound_I) : json(nullptr);
  bounds["II"] = rep.bound_II ? bound_json(*rep.bound_II) : json(nullptr);
  bounds["III"] = rep.bound_III ? bound_json(*rep.bound_III) : json(nullptr);
  doc["bounds"] = bounds;
  doc["best"] = rep.best ? bound_json(*rep.best) : json(nullptr);
  doc["warnings"] = warnings;
  if (opt.timestamps) doc["generated_at"] = timestamp_utc();
  *sink.out << doc.dump(2) << "\n";
  return 0;
}

// ---------------------------------------------------------------- scan

struct ScanOpts {
  std::int64_t e = 0;
  std::int64_t r = -1;
  std::string position = "very-general";
  std::int64_t a_min = 0, a_max = -1, b_min = 0, b_max = -1;
  std::string m;
  std::string m_uniform;
  std::string criteria_list;
  std::int64_t k = 1;
  std::string format = "csv";
  std::string out_path;
  bool audit_b_monotonicity = false;
  bool timestamps = false;
  bool has_m = false, has_mu = false;
  CLI::App* cmd = nullptr;
};

int scan_threads() {
  const char* env = std::getenv("HP_THREADS");
  long n = 0;
  if (env && *env) {
    n = std::strtol(env, nullptr, 10);
  } else {
    n = static_cast<long>(std::thread::hardware_concurrency());
  }
  if (n < 1) n = 1;
  if (n > 64) n = 64;
  return static_cast<int>(n);
}

int run_scan(ScanOpts& opt) {
  opt.has_m = opt.cmd->count("--m") > 0;
  opt.has_mu = opt.cmd->count("--m-uniform") > 0;
  if (opt.e < 0) input_error("e", "must be nonnegative");
  BlowupModel model;
  model.e = opt.e;
  model.position = parse_position(opt.position);

  std::vector<Int> pattern;
  if (opt.has_m && opt.has_mu) input_error("m", "--m and --m-uniform are mutually exclusive");
  if (opt.has_m) {
    pattern = parse_int_list(opt.m, "m");
    if (opt.r >= 0 && static_cast<std::int64_t>(pattern.size()) != opt.r)
      input_error("m", "length does not match r");
  } else if (opt.has_mu) {
    if (opt.r < 0) input_error("r", "required with --m-uniform");
    pattern.assign(static_cast<std::size_t>(opt.r), parse_int(opt.m_uniform, "m-uniform"));
  } else if (opt.r > 0) {
    input_error("m", "missing (--m or --m-uniform required when r > 0)");
  }
  model.r = opt.r >= 0 ? static_cast<std::size_t>(opt.r) : pattern.size();

  // criteria subset, in canonical order
  std::vector<std::size_t> selected;
  {
    const auto& keys = criterion_keys();
    if (opt.criteria_list.empty()) {
      for (std::size_t i = 0; i < keys.size(); ++i) selected.push_back(i);
    } else {
      std::stringstream ss(opt.criteria_list);
      std::string tok;
      std::vector<bool> chosen(keys.size(), false);
      while (std::getline(ss, tok, ',')) {
        auto it = std::find(keys.begin(), keys.end(), tok);
        if (it == keys.end()) input_error("criteria", "unknown criterion '" + tok + "'");
        chosen[static_cast<std::size_t>(it - keys.begin())] = true;
      }
      for (std::size_t i = 0; i < keys.size(); ++i)
        if (chosen[i]) selected.push_back(i);
    }
  }

  Sink sink;
  sink.open(opt.out_path);

  const std::int64_t na = opt.a_max >= opt.a_min ? opt.a_max - opt.a_min + 1 : 0;
  const std::int64_t nb = opt.b_max >= opt.b_min ? opt.b_max - opt.b_min + 1 : 0;
  const std::int64_t cells = na * nb;

  struct Row {
    std::int64_t a, b;
    std::string l2;
    std::vector<criteria::Verdict> verdicts;
  };
  std::vector<Row> rows(static_cast<std::size_t>(cells));

  auto eval_cell = [&](std::int64_t idx) {
    std::int64_t a = opt.a_min + idx / nb;
    std::int64_t b = opt.b_min + idx % nb;
    DivisorClass L{Int(a), Int(b), pattern};
    auto all = criteria::check_all(L, model, opt.k);
    Row row;
    row.a = a;
    row.b = b;
    row.l2 = lattice::self_intersection(L, model).str();
    for (std::size_t i : selected) row.verdicts.push_back(all[i].verdict);
    rows[static_cast<std::size_t>(idx)] = std::move(row);
  };

  const int nthreads = scan_threads();
  if (nthreads <= 1 || cells <= 1) {
    for (std::int64_t i = 0; i < cells; ++i) eval_cell(i);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < nthreads; ++t) {
      pool.emplace_back([&] {
        for (std::int64_t i = next.fetch_add(1); i < cells; i = next.fetch_add(1)) eval_cell(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  // verdict-combination summary, lexicographically sorted by std::map
  std::map<std::string, std::int64_t> combos;
  auto combo_of = [](const Row& row) {
    std::string s;
    for (auto v : row.verdicts)
      s += v == criteria::Verdict::Satisfied ? '1'
           : v == criteria::Verdict::NotSatisfied ? '0' : 'N';
    return s;
  };
  for (const auto& row : rows) ++combos[combo_of(row)];

  // b-monotonicity audit: within a column (fixed a, b ascending) a Satisfied
  // verdict must never fall back, and NA must be column-constant
  struct Violation {
    std::string criterion;
    std::int64_t a, b_prev, b;
  };
  std::vector<Violation> violations;
  if (opt.audit_b_monotonicity) {
    const auto& keys = criterion_keys();
    for (std::int64_t ia = 0; ia < na; ++ia) {
      for (std::int64_t ib = 1; ib < nb; ++ib) {
        const Row& prev = rows[static_cast<std::size_t>(ia * nb + ib - 1)];
        const Row& cur = rows[static_cast<std::size_t>(ia * nb + ib)];
        for (std::size_t j = 0; j < selected.size(); ++j) {
          bool bad =
              (prev.verdicts[j] == criteria::Verdict::Satisfied &&
               cur.verdicts[j] != criteria::Verdict::Satisfied) ||
              ((prev.verdicts[j] == criteria::Verdict::NotApplicable) !=
               (cur.verdicts[j] == criteria::Verdict::NotApplicable));
          if (bad) violations.push_back({keys[selected[j]], cur.a, prev.b, cur.b});
        }
      }
    }
  }

  const auto& keys = criterion_keys();
  if (opt.format == "csv") {
    auto& os = *sink.out;
    if (opt.timestamps) os << "# generated at " << timestamp_utc() << "\n";
    os << "e,r,position,a,b";
    for (std::size_t i = 1; i <= model.r; ++i) os << ",m" << i;
    os << ",L2";
    for (std::size_t i : selected) os << "," << keys[i];
    os << "\n";
    std::string mtail;
    for (const Int& v : pattern) mtail += "," + v.str();
    for (const auto& row : rows) {
      os << model.e << "," << model.r << "," << lattice::position_name(model.position) << ","
         << row.a << "," << row.b << mtail << "," << row.l2;
      for (auto v : row.verdicts) os << "," << verdict_code(v);
      os << "\n";
    }
    for (const auto& [combo, count] : combos) os << "# " << combo << " " << count << "\n";
    if (opt.audit_b_monotonicity) {
      for (const auto& v : violations)
        os << "# audit-violation " << v.criterion << " a=" << v.a << " b=" << v.b_prev << "->"
           << v.b << "\n";
      if (violations.empty()) os << "# audit-ok\n";
    }
  } else {
    json doc;
    doc["schema"] = "1";
    doc["model"] = json{{"e", model.e},
                        {"r", static_cast<std::int64_t>(model.r)},
                        {"position", lattice::position_name(model.position)}};
    doc["pattern"] = json{{"m", int_list_json(pattern)}};
    doc["k"] = opt.k;
    json crit = json::array();
    for (std::size_t i : selected) crit.push_back(keys[i]);
    doc["criteria"] = crit;
    json jrows = json::array();
    for (const auto& row : rows) {
      json jr{{"a", std::to_string(row.a)}, {"b", std::to_string(row.b)}, {"L2", row.l2}};
      json verd;
      for (std::size_t j = 0; j < selected.size(); ++j)
        verd[keys[selected[j]]] = verdict_code(row.verdicts[j]);
      jr["verdicts"] = verd;
      jrows.push_back(jr);
    }
    doc["rows"] = jrows;
    json summary;
    for (const auto& [combo, count] : combos) summary[combo] = count;
    doc["summary"] = summary;
    if (opt.audit_b_monotonicity) {
      json audit;
      audit["enabled"] = true;
      json jv = json::array();
      for (const auto& v : violations)
        jv.push_back(json{{"criterion", v.criterion},
                          {"a", std::to_string(v.a)},
                          {"b_prev", std::to_string(v.b_prev)},
                          {"b", std::to_string(v.b)}});
      audit["violations"] = jv;
      doc["audit"] = audit;
    }
    if (opt.timestamps) doc["generated_at"] = timestamp_utc();
    *sink.out << doc.dump(2) << "\n";
  }
  return violations.empty() ? 0 : 1;
}

// ---------------------------------------------------------------- small cmds

int run_hzero(const std::string& a, const std::string& b, std::int64_t e) {
  if (e < 0) input_error("e", "must be nonnegative");
  BaseDivisorClass D{parse_int(a, "a"), parse_int(b, "b")};
  std::cout << lattice::hzero_base(D, e) << "\n";
  return 0;
}

struct IntersectOpts {
  BundleOpts bundle;
  std::string a2, b2, m2, m2_uniform;
  bool has_a2 = false, has_b2 = false, has_m2 = false, has_m2u = false;
  CLI::App* cmd = nullptr;
};

int run_intersect(IntersectOpts& opt) {
  opt.has_a2 = opt.cmd->count("--a2") > 0;
  opt.has_b2 = opt.cmd->count("--b2") > 0;
  opt.has_m2 = opt.cmd->count("--m2") > 0;
  opt.has_m2u = opt.cmd->count("--m2-uniform") > 0;
  auto [model, L, k] = resolve_bundle(opt.bundle);
  (void)k;
  DivisorClass M = L;
  if (opt.has_a2 || opt.has_b2 || opt.has_m2 || opt.has_m2u) {
    if (!opt.has_a2) input_error("a2", "missing");
    if (!opt.has_b2) input_error("b2", "missing");
    M.a = parse_int(opt.a2, "a2");
    M.b = parse_int(opt.b2, "b2");
    if (opt.has_m2 && opt.has_m2u)
      input_error("m2", "--m2 and --m2-uniform are mutually exclusive");
    if (opt.has_m2) {
      M.m = parse_int_list(opt.m2, "m2");
    } else if (opt.has_m2u) {
      M.m.assign(model.r, parse_int(opt.m2_uniform, "m2-uniform"));
    } else {
      M.m.assign(model.r, Int(0));
    }
  }
  std::cout << lattice::intersect(L, M, model) << "\n";
  return 0;
}

struct CatalogOpts {
  BundleOpts bundle;
  std::int64_t beta_max = -1;
  std::string format = "text";
  std::string out_path;
};

int run_catalog(CatalogOpts& opt) {
  BundleOpts b = opt.bundle;
  b.finalize();
  // the bundle only steers section-type unit placement; default to 0
  if (!b.has_a && b.json_file.empty()) {
    b.a = "0";
    b.has_a = true;
  }
  if (!b.has_b && b.json_file.empty()) {
    b.b = "0";
    b.has_b = true;
  }
  if (!b.has_m && !b.has_mu && b.json_file.empty() && b.r > 0) {
    b.m_uniform = "0";
    b.has_mu = true;
  }
  auto [model, L, k] = resolve_bundle(b);
  (void)k;
  std::int64_t beta_max = opt.beta_max >= 0 ? opt.beta_max : default_beta_max(model);
  auto catalog = obstructions::candidate_classes(model, L, beta_max);
  Sink sink;
  sink.open(opt.out_path);
  if (opt.format == "text") {
    for (const auto& c : catalog)
      *sink.out << c.describe() << "\t" << obstructions::provenance_name(c.provenance) << "\n";
  } else {
    json doc;
    doc["schema"] = "1";
    json arr = json::array();
    for (const auto& c : catalog) {
      arr.push_back(json{{"class", c.describe()},
                         {"provenance", obstructions::provenance_name(c.provenance)},
                         {"alpha", int_json(c.alpha)},
                         {"beta", int_json(c.beta)},
                         {"n", int_list_json(c.n)}});
    }
    doc["catalog"] = arr;
    *sink.out << doc.dump(2) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"positivity checks for divisor classes on blown-up Hirzebruch surfaces"};
  app.require_subcommand(0, 1);

  CheckOpts check;
  auto* cmd_check = app.add_subcommand(
      "check", "evaluate all criteria and obstruction windows for one bundle");
  check.bundle.add_to(cmd_check);
  cmd_check->add_option("--format", check.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_check->add_option("--out", check.out_path, "write the report to a file");
  cmd_check->add_option("--beta-max", check.beta_max,
                        "largest section-type beta in the catalog (default lambda+2)");
  cmd_check->add_option("--generic-bound", check.generic_bound,
                        "coefficient bound for the generic obstruction sweep (default 2)");
  cmd_check->add_flag("--timestamps", check.timestamps, "include a generation timestamp");

  SeshadriOpts sesh;
  auto* cmd_sesh = app.add_subcommand("seshadri", "Seshadri-constant lower bounds for a*C+b*f");
  cmd_sesh->add_option("--a", sesh.a, "coefficient of C_e")->required();
  cmd_sesh->add_option("--b", sesh.b, "coefficient of f")->required();
  cmd_sesh->add_option("--e", sesh.e, "Hirzebruch invariant")->required();
  cmd_sesh->add_option("--r", sesh.r, "number of points")->required();
  cmd_sesh->add_option("--format", sesh.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_sesh->add_option("--out", sesh.out_path, "write the report to a file");
  cmd_sesh->add_flag("--timestamps", sesh.timestamps, "include a generation timestamp");

  ScanOpts scan;
  auto* cmd_scan = app.add_subcommand("scan", "classify every bundle in a coefficient box");
  cmd_scan->add_option("--e", scan.e, "Hirzebruch invariant")->required();
  cmd_scan->add_option("--r", scan.r, "number of points");
  cmd_scan->add_option("--position", scan.position, "point position flag");
  cmd_scan->add_option("--a-min", scan.a_min)->required();
  cmd_scan->add_option("--a-max", scan.a_max)->required();
  cmd_scan->add_option("--b-min", scan.b_min)->required();
  cmd_scan->add_option("--b-max", scan.b_max)->required();
  cmd_scan->add_option("--m", scan.m, "multiplicity pattern, fixed across the box");
  cmd_scan->add_option("--m-uniform", scan.m_uniform, "uniform multiplicity");
  cmd_scan->add_option("--criteria", scan.criteria_list,
                       "comma-separated subset of ampI..kvaIII (default all)");
  cmd_scan->add_option("--k", scan.k, "k for the k-very-ample family (default 1)");
  cmd_scan->add_option("--format", scan.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_scan->add_option("--out", scan.out_path, "write to a file");
  cmd_scan->add_flag("--audit-b-monotonicity", scan.audit_b_monotonicity,
                     "assert verdicts never fall back as b grows (exit 1 on violation)");
  cmd_scan->add_flag("--timestamps", scan.timestamps, "include a generation timestamp");
  scan.cmd = cmd_scan;

  std::string hz_a, hz_b;
  std::int64_t hz_e = 0;
  auto* cmd_hz = app.add_subcommand("hzero", "section count of a*C_e + b*f on the base surface");
  cmd_hz->add_option("--a", hz_a)->required();
  cmd_hz->add_option("--b", hz_b)->required();
  cmd_hz->add_option("--e", hz_e)->required();

  IntersectOpts isect;
  auto* cmd_isect =
      app.add_subcommand("intersect", "intersection number of two classes (default: L.L)");
  isect.bundle.add_to(cmd_isect, /*with_k=*/false);
  cmd_isect->add_option("--a2", isect.a2, "coefficient of H in the second class");
  cmd_isect->add_option("--b2", isect.b2, "coefficient of F in the second class");
  cmd_isect->add_option("--m2", isect.m2, "multiplicities of the second class");
  cmd_isect->add_option("--m2-uniform", isect.m2_uniform, "uniform second-class multiplicity");
  isect.cmd = cmd_isect;

  CatalogOpts cat;
  auto* cmd_cat = app.add_subcommand("catalog", "print the obstruction-class catalog");
  cat.bundle.add_to(cmd_cat, /*with_k=*/false);
  cmd_cat->add_option("--beta-max", cat.beta_max,
                      "largest section-type beta (default lambda+2)");
  cmd_cat->add_option("--format", cat.format, "text | json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd_cat->add_option("--out", cat.out_path, "write to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.msg << "\n";
    return 2;
  }

  try {
    if (cmd_check->parsed()) return run_check(check);
    if (cmd_sesh->parsed()) return run_seshadri(sesh);
    if (cmd_scan->parsed()) return run_scan(scan);
    if (cmd_hz->parsed()) return run_hzero(hz_a, hz_b, hz_e);
    if (cmd_isect->parsed()) return run_intersect(isect);
    if (cmd_cat->parsed()) return run_catalog(cat);
    std::cout << app.help();
    return 0;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.msg << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.msg << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
