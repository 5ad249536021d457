#include <doctest.h>

#include "kgsym/noether.hpp"
#include "kgsym/parse.hpp"

using namespace kgsym;

namespace {

Expr P(const char* s) { return parse(s); }
PotentialSpec V(const char* s) { return PotentialSpec::parse(s); }

}  // namespace

TEST_CASE("Lagrangian and its Euler-Lagrange expression") {
  const Lagrangian L = lagrangian(V("V(x, y)"));
  CHECK(L.expr == P("1/2*V(x, y)*u^2 - 1/2*u_x^2 - 1/2*u_y^2 - u_t^2/(2*eps)"));
  CHECK(euler_lagrange(L) == klein_gordon(L.V));
  CHECK(euler_lagrange(P("u*u_x")) == Expr());  // a null Lagrangian
}

TEST_CASE("time translation gives the energy current") {
  const Lagrangian L = lagrangian(V("V(x, y)"));
  const SymmetryCandidate S = SymmetryCandidate::of(generator(1));
  CHECK(noether_residual(S, L, {}).is_literal_zero());
  const ConservedVector T = conserved_vector(S, L, {});
  // T^i = -(xi^i L + W dL/du_i), W = -u_t
  CHECK(T.T[0] == P("-1/2*V(x, y)*u^2 + 1/2*u_x^2 + 1/2*u_y^2 - u_t^2/(2*eps)"));
  CHECK(T.T[1] == P("-u_t*u_x"));
  CHECK(T.T[2] == P("-u_t*u_y"));
  CHECK(is_zero(divergence_on_shell(T, L.V)));
}

TEST_CASE("the homothety needs the u-scaling") {
  const Lagrangian L = lagrangian(V("1/t^2*V(x/t, y/t)"));
  const SymmetryCandidate bare = SymmetryCandidate::of(generator(4));
  CHECK(noether_residual(bare, L, {}) == L.expr);
  CHECK_FALSE(solve_gauge(bare, L));
  CHECK_THROWS_AS(conserved_vector(bare, L, {}), MathError);

  const auto a0 = noether_u_scaling(bare, L);
  REQUIRE(a0);
  CHECK(*a0 == P("-1/2"));
  const SymmetryCandidate S = noether_symmetry("X4", L.V);
  CHECK(S.a0 == P("-1/2"));
  const auto f = solve_gauge(S, L);
  REQUIRE(f);
  CHECK(is_zero(divergence_on_shell(conserved_vector(S, L, *f), L.V)));
}

TEST_CASE("special conformal vectors need a quadratic gauge") {
  struct Case {
    const char* sym;
    const char* pot;
    int slot;
    const char* gauge;
  };
  for (const Case& c : {Case{"X8", "1/t^2*V(x/t, (eps*t^2 + x^2 + y^2)/t)", 2, "1/2*u^2"},
                        Case{"X9", "1/t^2*V(y/t, (eps*t^2 + x^2 + y^2)/t)", 1, "1/2*u^2"},
                        Case{"X10", "1/x^2*V(y/x, (eps*t^2 + x^2 + y^2)/x)", 0, "u^2/(2*eps)"}}) {
    CAPTURE(c.sym);
    const PotentialSpec pot = V(c.pot);
    const SymmetryCandidate S = noether_symmetry(c.sym, pot);
    const auto f = solve_gauge(S, lagrangian(pot));
    REQUIRE(f);
    for (int i = 0; i < 3; ++i) CHECK(f->f[i] == (i == c.slot ? P(c.gauge) : Expr()));
    CHECK(is_zero(divergence_on_shell(conserved_vector(S, lagrangian(pot), *f), pot)));
  }
}

TEST_CASE("a Lie symmetry that is not variational") {
  // u d/du scales L by 2, which no gauge absorbs.
  const Lagrangian L = lagrangian(V("V(t, x, y)"));
  CHECK_FALSE(solve_gauge(SymmetryCandidate::of(generator(11)), L));
}

TEST_CASE("conservation.txt and the Noether column") {
  const Report c = verify_conservation_table(default_data_dir());
  CHECK(c.records.size() == 21);
  CHECK(c.count(Status::Fail) == 0);
  CHECK(c.count(Status::Flagged) == 1);
  for (const auto& r : c.records)
    if (r.status == Status::Flagged) CHECK(r.id == "conservation/T8/divergence-alt");
  CHECK(verify_noether_claims(default_data_dir()).ok());
}
