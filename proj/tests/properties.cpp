#include "properties.hpp"

#include <functional>
#include <random>
#include <vector>

#include "kgsym/noether.hpp"
#include "kgsym/parse.hpp"

namespace kgsym::props {

namespace {

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  Rational coefficient() {
    int n = 0;
    while (n == 0) n = uniform(-6, 6);
    Rational q(n, uniform(1, 4));
    q.canonicalize();
    return q;
  }

  // Sum of 1..4 monomials over `atoms`, each of total degree <= 3.
  Expr poly(const std::vector<Expr>& atoms) {
    Expr e;
    const int terms = uniform(1, 4);
    for (int i = 0; i < terms; ++i) {
      Expr m(coefficient());
      const int deg = uniform(0, 3);
      for (int d = 0; d < deg; ++d) m *= atoms[static_cast<std::size_t>(uniform(0, static_cast<int>(atoms.size()) - 1))];
      e += m;
    }
    return e;
  }

  // A small expression tree with a nonzero denominator drawn from a fixed list.
  Expr rational(const std::vector<Expr>& atoms) {
    static const std::vector<Expr> dens{parse("x + 2"), parse("t*y - 3"), parse("eps*t^2 + y^2"), parse("x^2 + 1"),
                                        parse("1")};
    Expr e = poly(atoms);
    if (uniform(0, 2) > 0) e = e / dens[static_cast<std::size_t>(uniform(0, static_cast<int>(dens.size()) - 1))];
    if (uniform(0, 1)) e = e * poly(atoms) + poly(atoms);
    return e;
  }

 private:
  std::mt19937_64 rng_;
};

std::vector<Expr> atoms_of(std::initializer_list<const char*> texts) {
  std::vector<Expr> out;
  for (const char* s : texts) out.push_back(parse(s));
  return out;
}

const std::vector<Expr>& coordinate_atoms() {
  static const auto a = atoms_of({"t", "x", "y", "eps", "a", "V(x, y)", "exp(x)", "arctan(t/y)", "sqrt(x)"});
  return a;
}

const std::vector<Expr>& first_order_atoms() {
  static const auto a = atoms_of({"t", "x", "y", "eps", "u", "u_t", "u_x", "u_y", "V(t, x, y)", "exp(t*x)"});
  return a;
}

const std::vector<Expr>& second_order_atoms() {
  static const auto a = atoms_of({"x", "y", "u", "u_t", "u_x", "u_tt", "u_tx", "u_yy", "u_xy", "eps"});
  return a;
}

Outcome run(const std::string& name, int cases, const std::function<std::string(int)>& one) {
  Outcome o{name, cases, 0, ""};
  for (int i = 0; i < cases; ++i) {
    std::string failure;
    try {
      failure = one(i);
    } catch (const std::exception& e) {
      failure = std::string("exception: ") + e.what();
    }
    if (!failure.empty()) {
      ++o.failures;
      if (o.first_failure.empty()) o.first_failure = "case " + std::to_string(i) + ": " + failure;
    }
  }
  return o;
}

VectorField random_combination(Gen& g) {
  VectorField v;
  const int terms = g.uniform(1, 3);
  for (int i = 0; i < terms; ++i) v = v + Expr(g.coefficient()) * generator(g.uniform(1, 11));
  return v;
}

}  // namespace

Outcome normalize_idempotence(int cases, std::uint64_t seed) {
  Gen g(seed);
  return run("normalize idempotence", cases, [&](int) -> std::string {
    const Expr e = g.rational(coordinate_atoms());
    const Expr f = g.rational(coordinate_atoms());
    const Expr once = parse(e.str());
    if (!(once == e) || once.str() != e.str()) return "parse(print(e)) != e for " + e.str();
    if (!((e + f) - f == e)) return "(e + f) - f != e for " + e.str();
    if (!f.is_literal_zero() && !((e * f) / f == e)) return "(e f)/f != e for " + e.str();
    return {};
  });
}

Outcome total_derivative_commutation(int cases, std::uint64_t seed) {
  Gen g(seed);
  return run("total-derivative commutation", cases, [&](int) -> std::string {
    const Expr e = g.rational(first_order_atoms());
    const Coord a = kCoords[static_cast<std::size_t>(g.uniform(0, 2))];
    const Coord b = kCoords[static_cast<std::size_t>(g.uniform(0, 2))];
    if (!(total_diff(total_diff(e, a), b) == total_diff(total_diff(e, b), a)))
      return "D D e differs by order for " + e.str();
    return {};
  });
}

Outcome leibniz(int cases, std::uint64_t seed) {
  Gen g(seed);
  return run("Leibniz rule", cases, [&](int) -> std::string {
    const Expr e = g.rational(first_order_atoms());
    const Expr f = g.rational(first_order_atoms());
    const Coord c = kCoords[static_cast<std::size_t>(g.uniform(0, 2))];
    if (!(total_diff(e * f, c) == total_diff(e, c) * f + e * total_diff(f, c)))
      return "D(ef) != De f + e Df for " + e.str() + ", " + f.str();
    return {};
  });
}

Outcome bracket_antisymmetry_jacobi(int cases, std::uint64_t seed) {
  Gen g(seed);
  return run("bracket antisymmetry and Jacobi", cases, [&](int) -> std::string {
    const VectorField A = random_combination(g);
    const VectorField B = random_combination(g);
    const VectorField C = random_combination(g);
    if (!is_zero(lie_bracket(A, B) + lie_bracket(B, A))) return "[A,B] + [B,A] != 0 for " + A.str() + ", " + B.str();
    const VectorField j =
        lie_bracket(A, lie_bracket(B, C)) + lie_bracket(B, lie_bracket(C, A)) + lie_bracket(C, lie_bracket(A, B));
    if (!is_zero(j)) return "Jacobi sum " + j.str();
    return {};
  });
}

Outcome on_shell_confluence(int cases, std::uint64_t seed) {
  Gen g(seed);
  static const std::vector<PotentialSpec> potentials{PotentialSpec::parse("V(x, y)"),
                                                     PotentialSpec::parse("1/t^2*V(x/t, y/t)"),
                                                     PotentialSpec::parse("V(eps*t^2 + y^2)"), PotentialSpec::parse("x*y")};
  return run("on-shell confluence", cases, [&](int) -> std::string {
    const Expr e = g.rational(second_order_atoms());
    const PotentialSpec& V = potentials[static_cast<std::size_t>(g.uniform(0, 3))];
    const Coord c = kCoords[static_cast<std::size_t>(g.uniform(0, 2))];
    const Expr once = on_shell(e, V);
    if (!(on_shell(once, V) == once)) return "on_shell not idempotent for " + e.str();
    if (!(on_shell(total_diff(e, c), V) == on_shell(total_diff(once, c), V)))
      return "eliminating before or after D differs for " + e.str();
    return {};
  });
}

Outcome noether_conservation(int cases, std::uint64_t seed) {
  Gen g(seed);
  struct Row {
    const char* sym;
    const char* pot;
  };
  static const std::vector<Row> rows{{"X1", "V(x, y)"},
                                     {"X4", "1/t^2*V(x/t, y/t)"},
                                     {"X5", "V(t, x^2 + y^2)"},
                                     {"X6", "V(eps*t^2 + x^2, y)"},
                                     {"X8", "1/t^2*V(x/t, (eps*t^2 + x^2 + y^2)/t)"},
                                     {"X10", "1/x^2*V(y/x, (eps*t^2 + x^2 + y^2)/(eps*x))"}};
  return run("Noether implies conservation", cases, [&](int i) -> std::string {
    PotentialSpec V;
    VectorField X;
    if (i % 2 == 0) {
      // Translation a d_t + b d_x + c d_y, a != 0, with a potential of its invariants.
      const Expr a(g.coefficient());
      const Expr b = g.uniform(0, 3) ? Expr(g.coefficient()) : Expr();
      const Expr c = g.uniform(0, 3) ? Expr(g.coefficient()) : Expr();
      X = a * generator(1) + b * generator(2) + c * generator(3);
      V = PotentialSpec::from(function("V", {b * Expr::coord(Coord::T) - a * Expr::coord(Coord::X),
                                              c * Expr::coord(Coord::T) - a * Expr::coord(Coord::Y)}));
    } else {
      const Row& r = rows[static_cast<std::size_t>(g.uniform(0, static_cast<int>(rows.size()) - 1))];
      V = PotentialSpec::parse(r.pot);
      X = Expr(g.coefficient()) * combination(parse(r.sym));
    }
    const Lagrangian L = lagrangian(V);
    const SymmetryCandidate S = noether_symmetry(X, V);
    const auto f = solve_gauge(S, L);
    if (!f) return "no gauge for " + X.str();
    const Expr d = divergence_on_shell(conserved_vector(S, L, *f), V);
    if (!is_zero(d)) return "divergence " + d.str() + " for " + X.str();
    return {};
  });
}

}  // namespace kgsym::props
