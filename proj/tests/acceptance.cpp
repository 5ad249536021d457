#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "kgsym/noether.hpp"
#include "kgsym/parallel.hpp"
#include "kgsym/reduction.hpp"
#include "properties.hpp"

using namespace kgsym;

namespace {

struct Verdict {
  bool pass;
  std::string detail;
};

std::string counts(const Report& r) {
  return std::to_string(r.count(Status::Pass)) + " pass, " + std::to_string(r.count(Status::Fail)) + " fail, " +
         std::to_string(r.count(Status::Flagged)) + " flagged";
}

std::string first_failures(const Report& r, int n = 3) {
  std::string s;
  for (const auto& c : r.records)
    if (c.status == Status::Fail && n-- > 0) s += "; " + c.id;
  return s;
}

Verdict suite(const Report& r) { return {r.ok(), r.suite + ": " + counts(r) + first_failures(r)}; }

Verdict combine(std::initializer_list<Verdict> vs) {
  Verdict out{true, ""};
  for (const auto& v : vs) {
    out.pass = out.pass && v.pass;
    out.detail += (out.detail.empty() ? "" : " | ") + v.detail;
  }
  return out;
}

Verdict catalog_classes() {
  static const Collineation expect[] = {Collineation::KV, Collineation::KV,   Collineation::KV,  Collineation::HV,
                                        Collineation::KV, Collineation::KV,   Collineation::KV,  Collineation::SCKV,
                                        Collineation::SCKV, Collineation::SCKV};
  static const char* psi[] = {"0", "0", "0", "1", "0", "0", "0", "2*y", "2*x", "2*t"};
  int bad = 0;
  for (int k = 0; k < 10; ++k) {
    const auto& c = catalog()[static_cast<std::size_t>(k)];
    if (c.cls.kind != expect[k] || !c.cls.psi || c.cls.psi->str() != psi[k]) ++bad;
  }
  return combine({suite(verify_catalog(default_data_dir())), {bad == 0, std::to_string(10 - bad) + "/10 classes"}});
}

Verdict table3() {
  const Report r = verify_potentials_table("3", default_data_dir());
  Verdict v = suite(r);
  for (const auto& c : r.records)
    if (c.id == "table3/row9/u-term") v.detail += " | " + c.note;
  return v;
}

Verdict table4() {
  const Report r = verify_potentials_table("4", default_data_dir());
  Verdict v = suite(r);
  for (const auto& c : r.records)
    if (c.id.rfind("table4/row9/", 0) == 0) v.detail += " | " + c.id + " " + std::string(to_string(c.status));
  return v;
}

Verdict grids() {
  const auto dir = default_data_dir();
  const Report sub = verify_subalgebras(dir);
  int flagged_f6 = 0;
  for (const auto& c : sub.records)
    if (c.status == Status::Flagged && c.id.find("F_{6,") != std::string::npos) ++flagged_f6;
  return combine({suite(verify_potentials_table("grid", dir)), suite(verify_potentials_table("grid1", dir)), suite(sub),
                  {flagged_f6 == 2, std::to_string(flagged_f6) + " F_{6,x} entries flagged"}});
}

Verdict properties() {
  Verdict out{true, ""};
  for (const auto& o : {props::normalize_idempotence(200, 101), props::total_derivative_commutation(200, 102),
                        props::leibniz(200, 103), props::bracket_antisymmetry_jacobi(200, 104),
                        props::on_shell_confluence(200, 105), props::noether_conservation(200, 106)}) {
    const bool ok = o.failures == 0 && o.cases >= 200;
    out.pass = out.pass && ok;
    out.detail += (out.detail.empty() ? "" : " | ") + o.name + " " + std::to_string(o.cases - o.failures) + "/" +
                  std::to_string(o.cases) + (o.first_failure.empty() ? "" : " (" + o.first_failure + ")");
  }
  return out;
}

}  // namespace

int main() {
  set_jobs(4);
  struct Criterion {
    int number;
    const char* title;
    double budget_s;
    std::function<Verdict()> run;
  };
  const auto dir = default_data_dir();
  const Criterion criteria[] = {
      {1, "bracket table", 5, [&] { return suite(verify_brackets(dir)); }},
      {2, "catalog classification", 1, catalog_classes},
      {3, "table3.txt constraint and invariance", 10, table3},
      {4, "table4.txt constraint", 20, table4},
      {5, "grid tables and subalgebra closure", 60, grids},
      {6, "conservation laws", 60,
       [&] { return combine({suite(verify_conservation_table(dir)), suite(verify_noether_claims(dir))}); }},
      {7, "worked reductions", 10, [] { return suite(verify_reductions()); }},
      {8, "V = 0 and constant-potential remarks", 10, [] { return suite(wave_and_constant_checks()); }},
      {9, "property suites", 60, properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = s < c.budget_s;
    const bool pass = v.pass && in_time;
    failed += pass ? 0 : 1;
    std::printf("criterion %d %s: %s (%.2fs of %.0fs) %s\n", c.number, c.title, pass ? "PASS" : "FAIL", s, c.budget_s,
                v.detail.c_str());
  }
  std::printf("%d of 9 criteria pass\n", 9 - failed);
  return failed == 0 ? 0 : 1;
}
