#include <doctest.h>

#include "kgsym/parse.hpp"
#include "kgsym/symmetry.hpp"

using namespace kgsym;

namespace {

Expr P(const char* s) { return parse(s); }
PotentialSpec V(const char* s) { return PotentialSpec::parse(s); }

Expr invariance(int k, const Expr& u_term, const PotentialSpec& pot) {
  return lie_invariance_residual({generator(k), u_term, Expr(), false}, pot);
}

}  // namespace

TEST_CASE("potential validation") {
  CHECK_NOTHROW(V("1/t^2*V(x/t, y/t)"));
  CHECK_NOTHROW(V("x*y"));
  CHECK_THROWS(V("V(x)*W(y)"));
  CHECK_THROWS(V("u*x"));
  CHECK_THROWS(V("V(u_x)"));
}

TEST_CASE("on-shell rules") {
  const PotentialSpec pot = V("V(x, y)");
  CHECK(on_shell(P("u_tt"), pot) == P("-eps*(u_xx + u_yy + V(x, y)*u)"));
  // D_x of the equation itself
  CHECK(on_shell(P("u_ttx"), pot) == P("-eps*(u_xxx + u_xyy + V[1,0](x, y)*u + V(x, y)*u_x)"));
  CHECK(on_shell(klein_gordon(pot), pot).is_literal_zero());
}

TEST_CASE("characteristic and prolongation") {
  CHECK(characteristic(generator(4)) == P("-t*u_t - x*u_x - y*u_y"));
  const ProlongedField pr = prolong(generator(1));
  for (int i = 0; i < 3; ++i) CHECK(pr.first[i].is_literal_zero());
  // u d/du prolongs to u_J d/du_J
  const ProlongedField pu = prolong(generator(11));
  CHECK(pu.first[1] == P("u_x"));
  CHECK(pu.second[0][2] == P("u_ty"));
}

TEST_CASE("constraint residuals worked by hand") {
  // xi^k V_k + 2 psi V + (1/2) Lap(psi)
  CHECK(constraint_residual(generator(1), Expr(), V("V(t, x)")) == P("V[1,0](t, x)"));
  CHECK(constraint_residual(generator(4), Expr(1), V("V0")) == P("2*V0"));
  CHECK(constraint_residual(generator(4), Expr(1), V("1/t^2*V(x/t, y/t)")).is_literal_zero());
  CHECK(constraint_residual(generator(2), Expr(), V("V(t, y)")).is_literal_zero());
  CHECK_THROWS_AS(constraint_residual(generator(1), Expr(1), V("V(x, y)")), MathError);
}

TEST_CASE("Lie invariance for Killing and homothetic vectors") {
  CHECK(is_zero(invariance(1, Expr(), V("V(x, y)"))));
  CHECK(is_zero(invariance(5, Expr(), V("V(t, x^2 + y^2)"))));
  CHECK(is_zero(invariance(4, Expr(), V("1/t^2*V(x/t, y/t)"))));
  CHECK_FALSE(is_zero(invariance(1, Expr(), V("V(t, x)"))));
  CHECK(is_zero(lie_invariance_residual({generator(1), Expr(), Expr(), true}, V("V(x, y)"))));
}

TEST_CASE("u-term oracle for the special conformal vectors") {
  const PotentialSpec pot = V("1/t^2*V(x/t, (eps*t^2 + x^2 + y^2)/t)");
  const UCoefficient uc = determine_u_coefficient(generator(8), P("2*y"), pot);
  REQUIRE(uc.kind == UCoefficient::Kind::Found);
  CHECK(uc.lambda == Rational(-1, 2));
  CHECK(uc.term == P("-y"));
  CHECK(is_zero(invariance(8, uc.term, pot)));
  // The two u-terms differ by psi u d/du, psi = 2y, which adds
  // 2 grad(psi).grad(u) + Lap(psi) u = 4 u_y on solutions.
  CHECK(invariance(8, P("y"), pot) == invariance(8, P("-y"), pot) + P("4*u_y"));

  const UCoefficient none = determine_u_coefficient(generator(8), P("2*y"), V("V(x, y)"));
  CHECK(none.kind == UCoefficient::Kind::None);
  const UCoefficient kv = determine_u_coefficient(generator(1), Expr(), V("V(x, y)"));
  CHECK(kv.kind == UCoefficient::Kind::Absorbed);
}

TEST_CASE("table3.txt and the V = 0 / V = V0 checks") {
  const Report t3 = verify_potentials_table("3", default_data_dir());
  CHECK(t3.count(Status::Fail) == 0);
  CHECK(t3.count(Status::Flagged) == 3);
  const Report w = wave_and_constant_checks();
  CHECK(w.records.size() == 20);
  CHECK(w.ok());
  CHECK_THROWS_AS(verify_potentials_table("7", default_data_dir()), DataError);
}

TEST_CASE("table4.txt keeps the misprinted row red") {
  const Report t4 = verify_potentials_table("4", default_data_dir());
  int failures = 0;
  for (const auto& c : t4.records)
    if (c.status == Status::Fail) {
      ++failures;
      CHECK(c.id == "table4/row15/constraint");
    }
  CHECK(failures == 1);
  bool corrected = false;
  for (const auto& c : t4.records)
    if (c.id == "table4/row15/constraint-corrected") corrected = c.status == Status::Pass;
  CHECK(corrected);
}

TEST_CASE("eps policy restricts the zero test") {
  const Expr e = P("eps^2 - 1 + (eps - 1)*x");
  CHECK_FALSE(is_zero(e));
  CHECK(is_zero(e, EpsPolicy::Plus));
  {
    ScopedEpsPolicy p(EpsPolicy::Plus);
    CHECK(is_zero(e));
  }
  CHECK_FALSE(is_zero(e));
}
