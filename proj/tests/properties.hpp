#pragma once

#include <cstdint>
#include <string>

namespace kgsym::props {

struct Outcome {
  std::string name;
  int cases = 0;
  int failures = 0;
  std::string first_failure;
};

Outcome normalize_idempotence(int cases, std::uint64_t seed);
Outcome total_derivative_commutation(int cases, std::uint64_t seed);
Outcome leibniz(int cases, std::uint64_t seed);
Outcome bracket_antisymmetry_jacobi(int cases, std::uint64_t seed);
Outcome on_shell_confluence(int cases, std::uint64_t seed);
Outcome noether_conservation(int cases, std::uint64_t seed);

}  // namespace kgsym::props
