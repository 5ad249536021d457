#include "kgsym/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <optional>

#include "kgsym/noether.hpp"
#include "kgsym/parallel.hpp"
#include "kgsym/parse.hpp"
#include "kgsym/reduction.hpp"

namespace kgsym {

using json = nlohmann::ordered_json;

void write_report(std::ostream& out, const Report& r, ReportFormat fmt) {
  if (fmt == ReportFormat::Records) {
    for (const auto& c : r.records) {
      json j{{"suite", r.suite}, {"id", c.id}, {"location", c.location}, {"status", std::string(to_string(c.status))}};
      if (!c.residual.empty()) j["residual"] = c.residual;
      if (!c.note.empty()) j["note"] = c.note;
      out << j.dump() << '\n';
    }
    return;
  }
  std::size_t wid = 2;
  std::size_t wloc = 8;
  for (const auto& c : r.records) {
    wid = std::max(wid, c.id.size());
    wloc = std::max(wloc, c.location.size());
  }
  auto pad = [](const std::string& s, std::size_t w) { return s + std::string(w - s.size(), ' '); };
  out << pad("status", 8) << "  " << pad("id", wid) << "  " << pad("location", wloc) << "  note\n";
  for (const auto& c : r.records) {
    out << pad(std::string(to_string(c.status)), 8) << "  " << pad(c.id, wid) << "  " << pad(c.location, wloc) << "  "
        << c.note << '\n';
    if (!c.residual.empty()) out << std::string(10, ' ') << "residual: " << c.residual << '\n';
  }
  out << r.suite << ": " << r.count(Status::Pass) << " pass, " << r.count(Status::Fail) << " fail, "
      << r.count(Status::Flagged) << " flagged\n";
}

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

VectorField parse_vector(const std::string& text, const std::string& eta) {
  const auto parts = split_top_level(text);
  if (parts.size() != 3) throw UsageError("--vector needs three comma-separated components, got " +
                                          std::to_string(parts.size()));
  VectorField X{parse(parts[0]), parse(parts[1]), parse(parts[2]), Expr()};
  if (!eta.empty()) X.eta = parse(eta);
  return X;
}

Report run_verify(const std::string& what, const std::string& table, const std::filesystem::path& dir) {
  if (what == "brackets") return verify_brackets(dir);
  if (what == "subalgebras") return verify_subalgebras(dir);
  if (what == "potentials") {
    if (table.empty()) throw UsageError("verify potentials needs --table <3|4|grid|grid1>");
    return verify_potentials_table(table, dir);
  }
  if (what == "invariants") return verify_table3_invariants(dir);
  if (what == "noether") return verify_noether_claims(dir);
  if (what == "conservation") return verify_conservation_table(dir);
  if (what == "reductions") return verify_reductions();
  if (what == "wave") return wave_and_constant_checks();
  if (what == "catalog") return verify_catalog(dir);
  throw UsageError("unknown suite '" + what + "'");
}

Report check_vector(const VectorField& X, const std::string& psi_text, bool explicit_eta, const PotentialSpec& V) {
  Report rep{"check", {}};
  const CollineationClass cls = classify_collineation(X, MetricSpec::flat());
  std::optional<Expr> psi = cls.psi;
  CheckRecord c{"check/constraint", "", Status::Pass, "", ""};
  if (!psi_text.empty()) {
    const Expr given = parse(psi_text);
    if (!psi || !is_zero(given - *psi)) {
      c.status = Status::Fail;
      c.note = "psi = " + given.str() + " is not the conformal factor of the vector";
      if (psi) c.note += " (" + psi->str() + ")";
      psi.reset();
    }
  } else if (!psi) {
    c.status = Status::Fail;
    c.note = "not a conformal vector";
  }
  if (psi) {
    c.note = std::string(to_string(cls.kind)) + ", psi = " + psi->str();
    const Expr r = constraint_residual(X, *psi, V);
    if (!is_zero(r)) {
      c.status = Status::Fail;
      c.residual = r.str();
    }
  }
  rep.add(std::move(c));

  SymmetryCandidate S = SymmetryCandidate::of(X);
  CheckRecord inv{"check/invariance", "", Status::Pass, "", ""};
  if (!explicit_eta && cls.psi && cls.kind != Collineation::None) {
    const UCoefficient uc = determine_u_coefficient(X, *cls.psi, V);
    if (uc.kind == UCoefficient::Kind::Found) {
      S.u_coeff = uc.term;
      inv.note = "u-term " + uc.term.str();
    }
  }
  const Expr r = lie_invariance_residual(S, V);
  if (!is_zero(r)) {
    inv.status = Status::Fail;
    inv.residual = r.str();
  }
  rep.add(std::move(inv));
  return rep;
}

Report derive_conserved(const VectorField& X, bool explicit_eta, const PotentialSpec& V) {
  Report rep{"derive", {}};
  const Lagrangian L = lagrangian(V);
  const SymmetryCandidate S = explicit_eta ? SymmetryCandidate::of(X) : noether_symmetry(X, V);
  const auto gauge = solve_gauge(S, L);
  if (!gauge) {
    rep.add({"derive/gauge", "", Status::Fail, noether_residual(S, L, GaugeTriple{}).str(),
             "not a Noether symmetry: no gauge function fits"});
    return rep;
  }
  const ConservedVector T = conserved_vector(S, L, *gauge);
  rep.add({"derive/gauge", "", Status::Pass, "",
           "f = (" + gauge->f[0].str() + ", " + gauge->f[1].str() + ", " + gauge->f[2].str() + ")" +
               (S.a0.is_literal_zero() ? "" : "; u-scaling " + S.a0.str())});
  static const char* names[] = {"T^t", "T^x", "T^y"};
  for (int i = 0; i < 3; ++i) rep.add({std::string("derive/") + names[i], "", Status::Pass, "", T.T[i].str()});
  CheckRecord d{"derive/divergence", "", Status::Pass, "", "on-shell divergence"};
  const Expr div = divergence_on_shell(T, V);
  if (!is_zero(div)) {
    d.status = Status::Fail;
    d.residual = div.str();
  }
  rep.add(std::move(d));
  return rep;
}

Report reduce(const std::string& ansatz, const PotentialSpec& V) {
  Report rep{"reduce", {}};
  const Ansatz A = Ansatz::parse(ansatz);
  try {
    const Reduction r = reduce_residual(A, V);
    rep.add({"reduce/equation", "", Status::Pass, "", r.reduced.str() + " = 0"});
  } catch (const MathError& e) {
    rep.add({"reduce/equation", "", Status::Fail, "", e.what()});
  }
  return rep;
}

void write_catalog(std::ostream& out, ReportFormat fmt) {
  for (const auto& c : catalog()) {
    const std::string label = "X" + std::to_string(c.index);
    const std::string psi = c.cls.psi ? c.cls.psi->str() : "-";
    if (fmt == ReportFormat::Records) {
      json j{{"generator", label},
             {"xi_t", c.field.xi_t.str()},
             {"xi_x", c.field.xi_x.str()},
             {"xi_y", c.field.xi_y.str()},
             {"class", std::string(to_string(c.cls.kind))},
             {"psi", psi}};
      out << j.dump() << '\n';
    } else {
      out << label << (c.index < 10 ? "   " : "  ") << std::string(to_string(c.cls.kind))
          << std::string(4 - to_string(c.cls.kind).size(), ' ') << "  psi = " << psi << "  " << c.field.str() << '\n';
    }
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symmetry, conservation-law and reduction checks for the Klein-Gordon equation on flat 3-space",
               "kgsym"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "table";
  std::string data_dir;
  std::string eps = "both";
  int njobs = 1;
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"table", "records"}));
  app.add_option("--data-dir", data_dir, "Directory holding the data files");
  app.add_option("--eps", eps, "Signatures to test")->check(CLI::IsMember({"+1", "-1", "both"}));
  app.add_option("--jobs", njobs, "Worker threads")->check(CLI::PositiveNumber);

  auto* cat = app.add_subcommand("catalog", "Print X1..X10 with their classes and conformal factors");

  auto* ver = app.add_subcommand("verify", "Verify a data-driven suite");
  std::string suite;
  std::string table;
  ver->add_option("suite", suite,
                  "brackets, subalgebras, potentials, invariants, noether, conservation, reductions, wave or all")
      ->required()
      ->check(CLI::IsMember({"brackets", "subalgebras", "potentials", "invariants", "noether", "conservation",
                             "reductions", "wave", "catalog", "all"}));
  ver->add_option("--table", table, "Potentials table")->check(CLI::IsMember({"3", "4", "grid", "grid1"}));

  std::string vec;
  std::string eta;
  std::string psi;
  std::string potential;
  auto* chk = app.add_subcommand("check", "Constraint and invariance check for one vector and potential");
  chk->add_option("--vector", vec, "xi_t, xi_x, xi_y")->required();
  chk->add_option("--eta", eta, "u-component; disables the automatic u-term");
  chk->add_option("--psi", psi, "Conformal factor");
  chk->add_option("--potential", potential, "V(t, x, y)")->required();

  auto* der = app.add_subcommand("derive", "Derive a conserved vector through Noether's theorem");
  auto* derc = der->add_subcommand("conserved", "Conserved vector of one symmetry");
  der->require_subcommand(1);
  derc->add_option("--vector", vec, "xi_t, xi_x, xi_y")->required();
  derc->add_option("--eta", eta, "u-component; disables the automatic u-scaling");
  derc->add_option("--potential", potential, "V(t, x, y)")->required();

  std::string ansatz;
  auto* red = app.add_subcommand("reduce", "Insert an ansatz and print the reduced equation");
  red->add_option("--ansatz", ansatz, "shape * F(args), F in zeta, phi, beta, rho")->required();
  red->add_option("--potential", potential, "V(t, x, y)")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const ReportFormat fmt = format == "records" ? ReportFormat::Records : ReportFormat::Table;
  const std::filesystem::path dir = data_dir.empty() ? default_data_dir() : std::filesystem::path(data_dir);
  set_jobs(njobs);
  ScopedEpsPolicy policy(eps == "+1" ? EpsPolicy::Plus : (eps == "-1" ? EpsPolicy::Minus : EpsPolicy::Both));

  try {
    std::vector<Report> reports;
    if (cat->parsed()) {
      write_catalog(out, fmt);
      return 0;
    }
    if (ver->parsed()) {
      if (suite == "all") {
        for (const char* s : {"catalog", "brackets", "subalgebras"}) reports.push_back(run_verify(s, "", dir));
        for (const char* t : {"3", "4", "grid", "grid1"}) reports.push_back(run_verify("potentials", t, dir));
        for (const char* s : {"invariants", "noether", "conservation", "reductions", "wave"})
          reports.push_back(run_verify(s, "", dir));
      } else {
        reports.push_back(run_verify(suite, table, dir));
      }
    } else if (chk->parsed()) {
      reports.push_back(check_vector(parse_vector(vec, eta), psi, !eta.empty(), PotentialSpec::parse(potential)));
    } else if (derc->parsed()) {
      reports.push_back(derive_conserved(parse_vector(vec, eta), !eta.empty(), PotentialSpec::parse(potential)));
    } else if (red->parsed()) {
      reports.push_back(reduce(ansatz, PotentialSpec::parse(potential)));
    }
    bool failed = false;
    for (const auto& r : reports) {
      write_report(out, r, fmt);
      failed = failed || !r.ok();
    }
    return failed ? 1 : 0;
  } catch (const ParseError& e) {
    err << "kgsym: malformed expression: " << e.what() << '\n';
  } catch (const DataError& e) {
    err << "kgsym: " << e.what() << '\n';
  } catch (const UsageError& e) {
    err << "kgsym: " << e.what() << '\n';
  } catch (const MathError& e) {
    err << "kgsym: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace kgsym
