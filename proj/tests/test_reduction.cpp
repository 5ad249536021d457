#include <doctest.h>

#include "kgsym/parse.hpp"
#include "kgsym/reduction.hpp"

using namespace kgsym;

namespace {

Expr P(const char* s) { return parse(s); }
PotentialSpec V(const char* s) { return PotentialSpec::parse(s); }

const CheckRecord& find(const Report& r, const std::string& id) {
  for (const auto& c : r.records)
    if (c.id == id) return c;
  FAIL("no record " << id);
  throw std::logic_error(id);
}

}  // namespace

TEST_CASE("ansatz splitting") {
  const Ansatz A = Ansatz::parse("exp(k*x)*phi(t)/t");
  CHECK(A.function == "phi");
  CHECK(A.shape == P("exp(k*x)/t"));
  REQUIRE(A.args.size() == 1);
  CHECK(A.args[0] == P("t"));
  CHECK_THROWS_AS(Ansatz::parse("phi(t) + 1"), MathError);
  CHECK_THROWS_AS(Ansatz::parse("phi(t)*rho(x)"), MathError);
  CHECK_THROWS_AS(Ansatz::parse("phi[1](t)"), MathError);
  CHECK_THROWS_AS(Ansatz::parse("exp(x)"), MathError);
}

TEST_CASE("separation in x") {
  // u = exp(k x) phi(t): phi''/eps + (k^2 + V(t)) phi = 0
  const Reduction r = reduce_residual(Ansatz::parse("exp(k*x)*phi(t)"), V("V(t)"));
  CHECK(r.reduced == P("phi[2](t)/eps + (k^2 + V(t))*phi(t)"));
}

TEST_CASE("reductions that do not close") {
  CHECK_THROWS_WITH_AS(reduce_residual(Ansatz::parse("exp(x)*phi(t)"), V("V(t, x, y)")),
                       doctest::Contains("not expressible"), MathError);
  CHECK_THROWS_WITH_AS(reduce_residual(Ansatz::parse("zeta(x, 2*x)"), V("V(x)")), doctest::Contains("dependent"),
                       MathError);
}

TEST_CASE("substitute_function follows derivatives") {
  const Expr e = P("phi[2](t) + x*phi[1](t) + phi(t)");
  CHECK(substitute_function(e, "phi", {Coord::T}, P("t^3")) == P("6*t + 3*x*t^2 + t^3"));
  CHECK_THROWS_AS(substitute_function(P("phi(2*t)"), "phi", {Coord::T}, P("t")), MathError);
}

TEST_CASE("matching up to a factor") {
  const Expr printed = P("phi[1](t) + V(t)*phi(t)");
  const auto mu = match_up_to_factor(P("t*phi[1](t) + t*V(t)*phi(t)"), printed);
  REQUIRE(mu);
  CHECK(*mu == P("t"));
  CHECK_FALSE(match_up_to_factor(P("phi[1](t) - V(t)*phi(t)"), printed));
  CHECK_FALSE(match_up_to_factor(Expr(), printed));
}

TEST_CASE("invariants and their rank") {
  const Report r = check_invariants(SymmetryCandidate::of(generator(5)), {P("t"), P("x^2 + y^2"), P("x*y")}, "rot");
  CHECK(r.count(Status::Pass) == 2);
  CHECK(find(r, "rot/W3").status == Status::Fail);
  CHECK(jacobian_rank({P("x"), P("y"), P("u")}, 1) == 3);
  CHECK(jacobian_rank({P("x"), P("2*x + 1"), P("u")}, 1) == 2);
  CHECK(jacobian_rank({P("eps*t^2 + y^2"), P("t^2 - y^2")}, 1) == 2);
}

TEST_CASE("worked reductions") {
  const Report r = verify_reductions();
  for (const char* id : {"reductions/a/[Y1,Y2]", "reductions/b/[Z1,Z2]", "reductions/a/zeta-equation",
                         "reductions/a/phi-equation", "reductions/b/rho-equation", "reductions/b/ansatz",
                         "reductions/a/ansatz+-corrected", "reductions/a/ansatz--corrected",
                         "reductions/b/beta-equation/k3^2*beta"}) {
    CAPTURE(id);
    CHECK(find(r, id).status == Status::Pass);
  }
  CHECK(find(r, "reductions/b/beta-equation/printed").status == Status::Flagged);
  for (const char* id : {"reductions/a/ansatz+", "reductions/a/ansatz-"}) {
    const CheckRecord& c = find(r, id);
    CHECK(c.status == Status::Fail);
    CHECK(c.note.find("eps = +1 only") != std::string::npos);
  }
  {
    ScopedEpsPolicy plus(EpsPolicy::Plus);
    CHECK(verify_reductions().count(Status::Fail) == 0);
  }
}

TEST_CASE("invariants column of table3.txt") {
  const Report r = verify_table3_invariants(default_data_dir());
  CHECK(r.count(Status::Fail) == 0);
  CHECK(find(r, "invariants/row9/transposed").status == Status::Flagged);
  CHECK(find(r, "invariants/row10/transposed").status == Status::Flagged);
  CHECK(find(r, "invariants/row11/transposed").status == Status::Pass);
}
