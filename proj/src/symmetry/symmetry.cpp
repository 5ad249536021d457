#include "kgsym/symmetry.hpp"

#include <set>

#include "kgsym/parse.hpp"

namespace kgsym {

namespace {

void collect_function_names(const Expr& e, std::set<std::string>& names) {
  for (Atom a : e.atoms()) {
    if (a->kind == AtomKind::Function) names.insert(a->name);
    for (const auto& arg : a->args) collect_function_names(arg, names);
  }
}

Expr jet(int t, int x, int y) { return Expr::jet({t, x, y}); }

std::array<int, 3> unit(int i) {
  std::array<int, 3> c{};
  c[i] = 1;
  return c;
}

}  // namespace

PotentialSpec PotentialSpec::from(const Expr& e) {
  if (e.deps() & (dep::U | dep::Jets)) throw MathError("potential must not contain u or its derivatives");
  std::set<std::string> names;
  collect_function_names(e, names);
  if (names.size() > 1) throw MathError("potential uses more than one abstract function");
  return {e};
}

PotentialSpec PotentialSpec::parse(std::string_view text) { return from(kgsym::parse(text)); }

Expr klein_gordon(const PotentialSpec& V) {
  return jet(2, 0, 0) / Expr::eps() + jet(0, 2, 0) + jet(0, 0, 2) + V.expr * Expr::u();
}

Bindings on_shell_rules(const PotentialSpec& V) {
  Expr rhs = -Expr::eps() * (jet(0, 2, 0) + jet(0, 0, 2) + V.expr * Expr::u());
  Bindings b;
  b.emplace(jet_atom({2, 0, 0}), rhs);
  b.emplace(jet_atom({3, 0, 0}), total_diff(rhs, Coord::T));
  b.emplace(jet_atom({2, 1, 0}), total_diff(rhs, Coord::X));
  b.emplace(jet_atom({2, 0, 1}), total_diff(rhs, Coord::Y));
  return b;
}

Expr on_shell(const Expr& e, const PotentialSpec& V) { return substitute(e, on_shell_rules(V)); }

Expr solution_term() {
  static const Expr b = function("B", {Expr::coord(Coord::T), Expr::coord(Coord::X), Expr::coord(Coord::Y)});
  return b;
}

VectorField SymmetryCandidate::field() const {
  VectorField v = base;
  v.eta = v.eta + (u_coeff + a0) * Expr::u();
  if (include_solution_term) v.eta = v.eta + solution_term();
  return v;
}

Expr characteristic(const VectorField& X) {
  Expr w = X.eta;
  for (int j = 0; j < 3; ++j) w -= X.xi(j) * Expr::jet(unit(j));
  return w;
}

ProlongedField prolong(const VectorField& X) {
  ProlongedField p;
  std::array<std::array<Expr, 3>, 3> dxi;  // dxi[i][k] = D_i xi^k
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) dxi[i][k] = total_diff(X.xi(k), kCoords[i]);
  for (int i = 0; i < 3; ++i) {
    Expr e = total_diff(X.eta, kCoords[i]);
    for (int j = 0; j < 3; ++j)
      if (!dxi[i][j].is_literal_zero()) e -= Expr::jet(unit(j)) * dxi[i][j];
    p.first[i] = e;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) {
      Expr e = total_diff(p.first[i], kCoords[j]);
      for (int k = 0; k < 3; ++k) {
        if (dxi[j][k].is_literal_zero()) continue;
        auto c = unit(i);
        ++c[k];
        e -= Expr::jet(c) * dxi[j][k];
      }
      p.second[i][j] = e;
      p.second[j][i] = e;
    }
  return p;
}

ProlongedField prolong(const SymmetryCandidate& S) { return prolong(S.field()); }

Expr lie_invariance_residual(const SymmetryCandidate& S, const PotentialSpec& V) {
  const VectorField X = S.field();
  const ProlongedField p = prolong(X);
  const Expr F = klein_gordon(V);
  Expr r = X.apply(F);
  for (Atom a : F.atoms()) {
    if (a->kind != AtomKind::Jet || a->jet_order() == 0) continue;
    Expr dF = partial(F, a);
    std::vector<int> idx;
    for (int c = 0; c < 3; ++c)
      for (int n = 0; n < a->jet[c]; ++n) idx.push_back(c);
    r += dF * (idx.size() == 1 ? p.first[idx[0]] : p.second[idx[0]][idx[1]]);
  }
  r = on_shell(r, V);
  if (S.include_solution_term) {
    // B solves the equation too: eliminate B_tt the same way.
    const auto& args = solution_term().atoms()[0]->args;
    Expr rhs = -Expr::eps() * (function("B", args, {0, 2, 0}) + function("B", args, {0, 0, 2}) + V.expr * solution_term());
    r = substitute(r, {{function_atom("B", {2, 0, 0}, args), rhs}});
  }
  return r;
}

Expr constraint_residual(const VectorField& X, const Expr& psi, const PotentialSpec& V) {
  const MetricSpec g = MetricSpec::flat();
  Matrix3 L = lie_derivative_metric(X, g);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Expr expected = a == b ? Expr(2) * psi * g.diag[a] : Expr();
      if (!is_zero(L[a][b] - expected)) throw MathError("psi = " + psi.str() + " is not the conformal factor of the field");
    }
  Expr r = Expr(2) * psi * V.expr + laplacian(psi, g) / Expr(2);
  for (int k = 0; k < 3; ++k)
    if (!X.xi(k).is_literal_zero()) r += X.xi(k) * diff(V.expr, kCoords[k]);
  return r;
}

UCoefficient determine_u_coefficient(const VectorField& X, const Expr& psi, const PotentialSpec& V) {
  UCoefficient out;
  bool constant = true;
  for (Coord c : kCoords)
    if (!is_zero(diff(psi, c))) constant = false;
  if (constant) {
    out.kind = UCoefficient::Kind::Absorbed;
    out.note = "constant conformal factor: the u-term is absorbed into a0";
    return out;
  }
  const Expr lam = Expr::symbol("lambda");
  SymmetryCandidate S{X, lam * psi, Expr(), false};
  const Expr r = lie_invariance_residual(S, V);
  const Expr r1 = partial(r, symbol_atom("lambda"));
  const Expr r0 = substitute(r, {{symbol_atom("lambda"), Expr()}});

  std::optional<Rational> found;
  bool degenerate = true;
  const EpsPolicy policy = eps_policy();
  for (int sign : {+1, -1}) {
    if ((sign > 0 && policy == EpsPolicy::Minus) || (sign < 0 && policy == EpsPolicy::Plus)) continue;
    Expr a = instantiate_eps(r1, sign);
    Expr b = instantiate_eps(r0, sign);
    if (a.is_literal_zero()) {
      if (!b.is_literal_zero()) {
        out.note = "no lambda: residual independent of lambda and nonzero";
        return out;
      }
      continue;
    }
    degenerate = false;
    Expr q = -b / a;
    auto v = q.constant_value();
    if (!v) {
      out.note = "no constant lambda solves the determining equations";
      return out;
    }
    if (found && *found != *v) {
      out.note = "the two signatures need different lambda";
      return out;
    }
    found = *v;
  }
  if (degenerate) {
    out.kind = UCoefficient::Kind::Degenerate;
    out.note = "every lambda works";
    return out;
  }
  out.lambda = *found;
  out.term = Expr(out.lambda) * psi;
  if (!is_zero(lie_invariance_residual(SymmetryCandidate{X, out.term, Expr(), false}, V))) {
    out.note = "candidate lambda fails verification";
    return out;
  }
  out.kind = UCoefficient::Kind::Found;
  return out;
}

}  // namespace kgsym
