#include <doctest.h>

#include "properties.hpp"

using namespace kgsym::props;

namespace {

constexpr int kCases = 250;

void require_clean(const Outcome& o) {
  CAPTURE(o.first_failure);
  CHECK(o.cases >= 200);
  CHECK(o.failures == 0);
}

}  // namespace

TEST_CASE("normalize is idempotent") { require_clean(normalize_idempotence(kCases, 11)); }
TEST_CASE("total derivatives commute") { require_clean(total_derivative_commutation(kCases, 12)); }
TEST_CASE("total derivatives obey Leibniz") { require_clean(leibniz(kCases, 13)); }
TEST_CASE("brackets are antisymmetric and satisfy Jacobi") { require_clean(bracket_antisymmetry_jacobi(kCases, 14)); }
TEST_CASE("on-shell elimination is confluent") { require_clean(on_shell_confluence(kCases, 15)); }
TEST_CASE("Noether symmetries yield conserved vectors") { require_clean(noether_conservation(kCases, 16)); }
