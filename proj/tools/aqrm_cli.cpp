// Copyright 2026 The aqrm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Batch front end over the C API. Exit codes: 0 success, 1 usage or input
// error, 2 verification failure.

#include <aqrm/aqrm.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct Failure {
  int code;
  std::string message;
};

int exit_code(aqrm_status s) {
  switch (s) {
    case AQRM_OK: return kExitOk;
    case AQRM_INVALID_ARGUMENT:
    case AQRM_DOMAIN_ERROR: return kExitUsage;
    default: return kExitVerification;
  }
}

void check(aqrm_status s, const char* what) {
  if (s != AQRM_OK) throw Failure{exit_code(s), std::string(what) + ": " + aqrm_last_error()};
}

template <class T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(ptr_); }
  T** out() { return &ptr_; }
  T* get() const { return ptr_; }

 private:
  T* ptr_ = nullptr;
};

using Poly = Handle<aqrm_poly, aqrm_poly_free>;
using Crossings = Handle<aqrm_crossings, aqrm_crossings_free>;
using Observation = Handle<aqrm_observation, aqrm_observation_free>;
using Report = Handle<aqrm_report, aqrm_report_free>;
using Exceptional = Handle<aqrm_exceptional, aqrm_exceptional_free>;
using Sweep = Handle<aqrm_sweep, aqrm_sweep_free>;
using GValue = Handle<aqrm_gvalue, aqrm_gvalue_free>;

// Calls a C API function that fills a char** and returns the owned string.
template <class Fn>
std::string fetch(Fn&& fn, const char* what) {
  char* s = nullptr;
  check(fn(&s), what);
  std::string out(s ? s : "");
  aqrm_string_free(s);
  return out;
}

struct Global {
  std::string format;
  std::string out;
  uint64_t seed = 1;
  int perturb_step = -1;
};

std::string resolve_format(const Global& g, const std::string& fallback, std::initializer_list<const char*> allowed) {
  const std::string f = g.format.empty() ? fallback : g.format;
  for (const char* a : allowed)
    if (f == a) return f;
  throw Failure{kExitUsage, "format '" + f + "' is not available for this subcommand"};
}

void emit(const Global& g, std::string text) {
  if (text.empty() || text.back() != '\n') text += '\n';
  if (g.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) throw Failure{kExitUsage, "cannot open output file " + g.out};
  f << text;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

json report_json(const Report& r) {
  return json::parse(fetch([&](char** s) { return aqrm_report_to_json(r.get(), s); }, "report"));
}

bool report_passed(const Report& r) {
  int passed = 0;
  check(aqrm_report_passed(r.get(), &passed), "report");
  return passed != 0;
}

// ---- poly ----

struct PolyArgs {
  int N = 1;
  int two_eps = 0;
  std::optional<int> k;
  bool tilde = false;
  bool continuant = false;
};

int run_poly(const Global& g, const PolyArgs& a) {
  const std::string format = resolve_format(g, "text", {"text", "json"});
  Poly p;
  const int k = a.k.value_or(a.N);
  if (a.continuant)
    check(aqrm_poly_continuant(a.N, a.two_eps, a.tilde, k, p.out()), "continuant");
  else
    check(aqrm_poly_constraint(a.N, a.two_eps, a.tilde, k, g.perturb_step, p.out()), "constraint polynomial");
  if (format == "text")
    emit(g, fetch([&](char** s) { return aqrm_poly_to_text(p.get(), s); }, "poly"));
  else
    emit(g, fetch([&](char** s) { return aqrm_poly_to_json(p.get(), s); }, "poly"));
  return kExitOk;
}

// ---- roots ----

struct RootsArgs {
  int N = 1;
  int two_eps = 0;
  bool tilde = false;
  std::string delta2;
  std::string precision = "1/1000000000000";
};

int run_roots(const Global& g, const RootsArgs& a) {
  const std::string format = resolve_format(g, "json", {"json", "csv"});
  Poly p;
  check(aqrm_poly_constraint(a.N, a.two_eps, a.tilde, a.N, g.perturb_step, p.out()), "constraint polynomial");
  json roots = json::parse(fetch(
      [&](char** s) { return aqrm_poly_positive_roots(p.get(), a.delta2.c_str(), a.precision.c_str(), s); },
      "roots"));
  if (format == "json") {
    emit(g, roots.dump(2));
  } else {
    std::string csv = "lo,hi\n";
    for (const auto& r : roots) csv += r["lo"].get<std::string>() + "," + r["hi"].get<std::string>() + "\n";
    emit(g, csv);
  }
  return kExitOk;
}

// ---- crossings ----

struct CrossingArgs {
  int N = 1;
  int two_eps = 0;
  std::string delta2;
  std::string precision = "1/1000000000000";
  bool confirm = false;
  std::optional<double> perturb_g;
  int nmax = 0;
  double tol = 1e-7;
  double separation = 1e-3;
};

json observation_json(const Observation& o) {
  return json::parse(fetch([&](char** s) { return aqrm_observation_to_json(o.get(), s); }, "observation"));
}

int run_crossings(const Global& g, const CrossingArgs& a) {
  const std::string format = resolve_format(g, "json", {"json", "csv"});
  Crossings c;
  check(aqrm_crossings_find(a.N, a.two_eps, a.delta2.c_str(), a.precision.c_str(), g.perturb_step, c.out()),
        "crossings");
  json records = json::parse(fetch([&](char** s) { return aqrm_crossings_to_json(c.get(), s); }, "crossings"));

  bool ok = true;
  for (size_t i = 0; i < records.size(); ++i) {
    json& rec = records[i];
    if (a.confirm) {
      Observation o;
      const aqrm_status st = aqrm_crossings_confirm(c.get(), i, a.nmax, a.tol, o.out());
      if (st != AQRM_VERIFICATION_FAILED) check(st, "confirm");
      const std::string reason = aqrm_last_error();
      rec["observation"] = observation_json(o);
      rec["confirmed"] = st == AQRM_OK;
      if (st != AQRM_OK) {
        ok = false;
        std::cerr << "crossing " << i << " not confirmed: " << reason << "\n";
      }
    }
    if (a.perturb_g) {
      Observation o;
      check(aqrm_crossings_perturbed(c.get(), i, *a.perturb_g, a.nmax, o.out()), "perturbed observation");
      json obs = observation_json(o);
      const bool separated = obs["gap"].get<double>() > a.separation;
      rec["perturbed"] = {{"fraction", *a.perturb_g}, {"observation", obs}, {"separated", separated}};
      if (!separated) {
        ok = false;
        std::cerr << "crossing " << i << ": perturbed coupling still degenerate\n";
      }
    }
  }

  if (format == "json") {
    emit(g, records.dump(2));
  } else {
    std::string csv = "N,two_eps,d,x_lo,x_hi,g,lambda,gap,confirmed\n";
    for (const auto& r : records) {
      csv += std::to_string(r["N"].get<int>()) + "," + std::to_string(r["two_eps"].get<int>()) + "," +
             r["d"].get<std::string>() + "," + r["x_lo"].get<std::string>() + "," + r["x_hi"].get<std::string>() +
             "," + fmt(r["g"].get<double>()) + "," + fmt(r["lambda"].get<double>()) + ",";
      csv += r.contains("observation") ? fmt(r["observation"]["gap"].get<double>()) : "";
      csv += ",";
      csv += r.contains("confirmed") ? (r["confirmed"].get<bool>() ? "1" : "0") : "";
      csv += "\n";
    }
    emit(g, csv);
  }
  return ok ? kExitOk : kExitVerification;
}

// ---- verify-identity / verify-conjecture ----

struct RangeArgs {
  int N = 1;
  std::optional<int> N_min;
  int ell = 1;
  std::optional<int> ell_min;
  std::string grid;
};

int emit_reports(const Global& g, const std::string& title, json results, bool all) {
  const std::string format = resolve_format(g, "json", {"json", "text"});
  if (format == "json") {
    emit(g, json{{"check", title}, {"passed", all}, {"results", std::move(results)}}.dump(2));
  } else {
    std::ostringstream os;
    for (const auto& r : results) os << title << " " << r.dump() << "\n";
    os << title << (all ? " PASSED" : " FAILED") << "\n";
    emit(g, os.str());
  }
  return all ? kExitOk : kExitVerification;
}

int run_verify_identity(const Global& g, const RangeArgs& a) {
  json results = json::array();
  bool all = true;
  for (int N = a.N_min.value_or(a.N); N <= a.N; ++N) {
    Report r;
    check(aqrm_verify_identity(N, g.perturb_step, r.out()), "verify-identity");
    all = all && report_passed(r);
    results.push_back(report_json(r));
  }
  return emit_reports(g, "verify-identity", std::move(results), all);
}

int run_verify_conjecture(const Global& g, const RangeArgs& a) {
  json results = json::array();
  bool all = true;
  for (int ell = a.ell_min.value_or(a.ell); ell <= a.ell; ++ell)
    for (int N = a.N_min.value_or(a.N); N <= a.N; ++N) {
      Report r;
      check(aqrm_verify_conjecture(N, ell, a.grid.empty() ? nullptr : a.grid.c_str(), g.perturb_step, r.out()),
            "verify-conjecture");
      all = all && report_passed(r);
      results.push_back(report_json(r));
    }
  return emit_reports(g, "verify-conjecture", std::move(results), all);
}

// ---- rep-check / heun-check ----

struct SuiteArgs {
  int samples = 20;
  int which = 1;
  std::string lambda, g2, d, eps = "0";
};

int emit_suite(const Global& g, const Report& r) {
  const std::string format = resolve_format(g, "json", {"json", "text"});
  const json j = report_json(r);
  const bool passed = report_passed(r);
  if (format == "json") {
    emit(g, j.dump(2));
  } else {
    std::ostringstream os;
    if (j.contains("checks"))
      for (const auto& c : j["checks"]) os << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << "\n";
    os << (passed ? "PASSED" : "FAILED") << "\n";
    emit(g, os.str());
  }
  return passed ? kExitOk : kExitVerification;
}

int run_rep_check(const Global& g, const SuiteArgs& a) {
  Report r;
  check(aqrm_rep_check(g.seed, a.samples, r.out()), "rep-check");
  return emit_suite(g, r);
}

int run_heun_check(const Global& g, const SuiteArgs& a) {
  Report r;
  if (!a.lambda.empty()) {
    if (a.g2.empty() || a.d.empty()) throw Failure{kExitUsage, "--lambda needs --g2 and --d"};
    check(aqrm_heun_operator(a.which, a.lambda.c_str(), a.g2.c_str(), a.d.c_str(), a.eps.c_str(), r.out()),
          "heun operator");
  } else {
    check(aqrm_heun_check(g.seed, a.samples, r.out()), "heun-check");
  }
  return emit_suite(g, r);
}

// ---- gfunction ----

struct GArgs {
  int N = 1;
  double delta = 1.0;
  double g_lo = 0.01;
  double g_hi = 1.5;
  double tol = 1e-10;
  std::optional<double> at;
  bool confirm = false;
  int nmax = 0;
};

int run_gfunction(const Global& g, const GArgs& a) {
  if (a.at) {
    resolve_format(g, "json", {"json"});
    GValue plus, minus;
    check(aqrm_g_plus(a.N, *a.at, a.delta, 1e-15, plus.out()), "G+");
    check(aqrm_g_minus(a.N, *a.at, a.delta, 1e-15, minus.out()), "G-");
    double vp = 0, vm = 0, bp = 0, bm = 0;
    check(aqrm_gvalue_value(plus.get(), &vp), "G+");
    check(aqrm_gvalue_value(minus.get(), &vm), "G-");
    check(aqrm_gvalue_tail_bound(plus.get(), &bp), "G+");
    check(aqrm_gvalue_tail_bound(minus.get(), &bm), "G-");
    emit(g, json{{"N", a.N}, {"g", *a.at}, {"delta", a.delta}, {"G_plus", vp}, {"G_minus", vm},
                 {"tail_bound_plus", bp}, {"tail_bound_minus", bm}}.dump(2));
    return kExitOk;
  }
  const std::string format = resolve_format(g, "csv", {"csv", "json"});
  Exceptional e;
  check(aqrm_exceptional_find(a.N, a.delta, a.g_lo, a.g_hi, a.tol, e.out()), "gfunction");
  int code = kExitOk;
  json confirmation;
  if (a.confirm) {
    char* s = nullptr;
    const aqrm_status st = aqrm_exceptional_confirm(e.get(), a.nmax, 1e-6, 1e-4, &s);
    if (st != AQRM_VERIFICATION_FAILED) check(st, "confirm");
    confirmation = json::parse(s);
    aqrm_string_free(s);
    if (st != AQRM_OK) {
      code = kExitVerification;
      std::cerr << "exceptional eigenvalue not confirmed by the truncated spectrum\n";
    }
  }
  if (format == "csv") {
    emit(g, fetch([&](char** s) { return aqrm_exceptional_to_csv(e.get(), s); }, "gfunction"));
  } else {
    json j = json::parse(fetch([&](char** s) { return aqrm_exceptional_to_json(e.get(), s); }, "gfunction"));
    if (a.confirm) j["confirmation"] = confirmation;
    emit(g, j.dump(2));
  }
  return code;
}

// ---- sweep ----

struct SweepArgs {
  double delta = 0.5;
  double eps = 0.0;
  double g_min = 0.0;
  double g_max = 1.0;
  double g_step = 0.01;
  int count = 12;
  int nmax = 0;
  bool gaps = false;
};

int run_sweep(const Global& g, const SweepArgs& a) {
  if (!(a.g_step > 0) || a.g_max < a.g_min) throw Failure{kExitUsage, "need g-step > 0 and g-max >= g-min"};
  if (a.count < 1) throw Failure{kExitUsage, "--count must be positive"};
  std::vector<double> grid;
  const long steps = std::lround((a.g_max - a.g_min) / a.g_step);
  for (long i = 0; i <= steps; ++i) grid.push_back(a.g_min + static_cast<double>(i) * a.g_step);
  Sweep s;
  check(aqrm_sweep_run(a.delta, a.eps, grid.data(), grid.size(), a.nmax, static_cast<size_t>(a.count), s.out()),
        "sweep");
  if (a.gaps) {
    resolve_format(g, "json", {"json"});
    emit(g, json::parse(fetch([&](char** o) { return aqrm_sweep_min_gaps(s.get(), o); }, "gaps")).dump(2));
    return kExitOk;
  }
  const std::string format = resolve_format(g, "csv", {"csv", "json"});
  if (format == "csv")
    emit(g, fetch([&](char** o) { return aqrm_sweep_to_csv(s.get(), o); }, "sweep"));
  else
    emit(g, json::parse(fetch([&](char** o) { return aqrm_sweep_to_json(s.get(), o); }, "sweep")).dump(2));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exceptional spectrum tools for the asymmetric quantum Rabi model"};
  app.require_subcommand(1);
  app.fallthrough();

  Global global;
  app.add_option("--format", global.format, "Output format: json, csv or text")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", global.out, "Write output to this file instead of stdout");
  app.add_option("--seed", global.seed, "Seed for randomized sweeps");
  app.add_option("--perturb-step", global.perturb_step,
                 "Fault injection: add 1 to the constant of this recurrence step")
      ->check(CLI::PositiveNumber);

  PolyArgs poly;
  auto* poly_cmd = app.add_subcommand("poly", "Print a constraint polynomial P or P~");
  poly_cmd->add_option("--N", poly.N, "N >= 1")->required();
  poly_cmd->add_option("--two-eps", poly.two_eps, "2 eps");
  poly_cmd->add_option("--k", poly.k, "Recurrence step (default N)");
  poly_cmd->add_flag("--tilde", poly.tilde, "Tilde family");
  poly_cmd->add_flag("--continuant", poly.continuant, "Print the tridiagonal determinant instead");

  RootsArgs roots;
  auto* roots_cmd = app.add_subcommand("roots", "Isolate positive roots of P_N at fixed Delta^2");
  roots_cmd->add_option("--N", roots.N, "N >= 1")->required();
  roots_cmd->add_option("--two-eps", roots.two_eps, "2 eps (integer)");
  roots_cmd->add_option("--delta2", roots.delta2, "Delta^2 as p/q or decimal")->required();
  roots_cmd->add_option("--precision", roots.precision, "Interval width");
  roots_cmd->add_flag("--tilde", roots.tilde, "Tilde family");

  CrossingArgs cross;
  auto* cross_cmd = app.add_subcommand("crossings", "Level crossings from constraint roots");
  cross_cmd->add_option("--N", cross.N, "N >= 1")->required();
  cross_cmd->add_option("--two-eps", cross.two_eps, "2 eps (integer)");
  cross_cmd->add_option("--delta2", cross.delta2, "Delta^2 as p/q or decimal")->required();
  cross_cmd->add_option("--precision", cross.precision, "Interval width (default 1e-12)");
  cross_cmd->add_flag("--confirm", cross.confirm, "Confirm each crossing by diagonalisation");
  cross_cmd->add_option("--perturb-g", cross.perturb_g, "Also observe at g*(1+f); expects an open gap");
  cross_cmd->add_option("--nmax", cross.nmax, "Fock cutoff (default AQRM_NMAX or 60)");
  cross_cmd->add_option("--tol", cross.tol, "Degeneracy tolerance");

  RangeArgs ident;
  auto* ident_cmd = app.add_subcommand("verify-identity", "Exact eps = 1/2 identity between P~ and P");
  ident_cmd->add_option("--N", ident.N, "Largest N")->required();
  ident_cmd->add_option("--N-min", ident.N_min, "Smallest N (default N)");

  RangeArgs conj;
  auto* conj_cmd = app.add_subcommand("verify-conjecture", "Divisibility of P~ by P at eps = ell/2");
  conj_cmd->add_option("--N", conj.N, "Largest N")->required();
  conj_cmd->add_option("--N-min", conj.N_min, "Smallest N (default N)");
  conj_cmd->add_option("--ell", conj.ell, "Largest ell, eps = ell/2")->required();
  conj_cmd->add_option("--ell-min", conj.ell_min, "Smallest ell (default ell)");
  conj_cmd->add_option("--grid", conj.grid, "Extra positivity samples x:d,x:d");

  SuiteArgs rep;
  auto* rep_cmd = app.add_subcommand("rep-check", "sl2 representation suite");
  rep_cmd->add_option("--samples", rep.samples, "Random samples per randomized check");

  SuiteArgs heun;
  heun.samples = 100;
  auto* heun_cmd = app.add_subcommand("heun-check", "Heun operator equivalences and exponents");
  heun_cmd->add_option("--samples", heun.samples, "Random parameter tuples");
  heun_cmd->add_option("--which", heun.which, "1 or 2, with --lambda");
  heun_cmd->add_option("--lambda", heun.lambda, "Single exact evaluation");
  heun_cmd->add_option("--g2", heun.g2, "g^2, rational");
  heun_cmd->add_option("--d", heun.d, "Delta^2, rational");
  heun_cmd->add_option("--eps", heun.eps, "Bias eps (default 0)");

  GArgs gf;
  auto* gf_cmd = app.add_subcommand("gfunction", "Zeros of G+ and G- (eps = 0)");
  gf_cmd->add_option("--N", gf.N, "N >= 1")->required();
  gf_cmd->add_option("--delta", gf.delta, "Delta")->required();
  gf_cmd->add_option("--g-lo", gf.g_lo, "Search start (default 0.01)");
  gf_cmd->add_option("--g-hi", gf.g_hi, "Search end (default 1.5)");
  gf_cmd->add_option("--tol", gf.tol, "Bisection target |G| (default 1e-10)");
  gf_cmd->add_option("--at", gf.at, "Evaluate G+ and G- at this g instead of searching");
  gf_cmd->add_flag("--confirm", gf.confirm, "Check each zero against the truncated spectrum");
  gf_cmd->add_option("--nmax", gf.nmax, "Fock cutoff (default AQRM_NMAX or 60)");

  SweepArgs sw;
  auto* sw_cmd = app.add_subcommand("sweep", "Eigenvalue curves over a g grid");
  sw_cmd->add_option("--delta", sw.delta, "Delta")->required();
  sw_cmd->add_option("--eps", sw.eps, "Bias eps (default 0)");
  sw_cmd->add_option("--g-min", sw.g_min, "Default 0");
  sw_cmd->add_option("--g-max", sw.g_max, "Default 1");
  sw_cmd->add_option("--g-step", sw.g_step, "Default 0.01");
  sw_cmd->add_option("--count", sw.count, "Number of lowest curves");
  sw_cmd->add_option("--nmax", sw.nmax, "Fock cutoff (default AQRM_NMAX or 60)");
  sw_cmd->add_flag("--gaps", sw.gaps, "Report the minimum gap of every adjacent pair");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*poly_cmd) return run_poly(global, poly);
    if (*roots_cmd) return run_roots(global, roots);
    if (*cross_cmd) return run_crossings(global, cross);
    if (*ident_cmd) return run_verify_identity(global, ident);
    if (*conj_cmd) return run_verify_conjecture(global, conj);
    if (*rep_cmd) return run_rep_check(global, rep);
    if (*heun_cmd) return run_heun_check(global, heun);
    if (*gf_cmd) return run_gfunction(global, gf);
    if (*sw_cmd) return run_sweep(global, sw);
  } catch (const Failure& f) {
    std::cerr << "aqrm: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "aqrm: " << e.what() << "\n";
    return kExitVerification;
  }
  return kExitUsage;
}
