#include <iostream>

#include "kgsym/cli.hpp"

int main(int argc, char** argv) {
  return kgsym::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
