#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "kgsym/cli.hpp"

using namespace kgsym;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

int lines(const std::string& s) { return static_cast<int>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST_CASE("top-level splitting keeps function arguments together") {
  CHECK(split_top_level("1, V(x, y), F[1,0](t, x)") == std::vector<std::string>{"1", "V(x, y)", "F[1,0](t, x)"});
  CHECK(split_top_level("a") == std::vector<std::string>{"a"});
}

TEST_CASE("one-off check") {
  const Run r = run({"check", "--vector", "1,0,0", "--psi", "0", "--potential", "V(x,y)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("check: 2 pass, 0 fail") != std::string::npos);

  const Run bad = run({"check", "--vector", "1,0,0", "--potential", "V(t,x)"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("residual: V[1,0](t, x)") != std::string::npos);

  const Run wrong_psi = run({"check", "--vector", "1,0,0", "--psi", "1", "--potential", "V(x,y)"});
  CHECK(wrong_psi.code == 1);
  CHECK(wrong_psi.out.find("is not the conformal factor") != std::string::npos);
}

TEST_CASE("records format is one JSON object per check and deterministic") {
  const Run a = run({"verify", "brackets", "--format", "records", "--jobs", "4"});
  const Run b = run({"--format", "records", "verify", "brackets"});
  CHECK(a.code == 1);
  CHECK(lines(a.out) == 100);
  CHECK(a.out == b.out);
  CHECK(a.out.rfind("{\"suite\":\"brackets\",\"id\":\"bracket/X1,X1\"", 0) == 0);
}

TEST_CASE("eps selection") {
  const Run both = run({"verify", "reductions"});
  const Run plus = run({"verify", "reductions", "--eps", "+1"});
  CHECK(both.code == 1);
  CHECK(plus.code == 0);
}

TEST_CASE("derive and reduce") {
  const Run d = run({"derive", "conserved", "--vector", "0, 1, 0", "--potential", "V(t, y)"});
  CHECK(d.code == 0);
  CHECK(d.out.find("-u_t*u_x/eps") != std::string::npos);
  const Run r = run({"reduce", "--ansatz", "exp(k*x)*phi(t)", "--potential", "V(t)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("phi[2](t)") != std::string::npos);
}

TEST_CASE("errors") {
  const auto empty = std::filesystem::temp_directory_path() / "kgsym-empty-data";
  std::filesystem::create_directories(empty);
  const Run missing = run({"verify", "all", "--data-dir", empty.string()});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("missing data file") != std::string::npos);

  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"verify", "potentials"}).code == 2);
  const Run parse = run({"check", "--vector", "1,0,0", "--potential", "V(x,"});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("position") != std::string::npos);
  CHECK(run({"check", "--vector", "1,0", "--potential", "V"}).code == 2);
}

TEST_CASE("catalog listing") {
  const Run r = run({"catalog", "--format", "records"});
  CHECK(r.code == 0);
  CHECK(lines(r.out) == 10);
  CHECK(r.out.find("{\"generator\":\"X8\"") != std::string::npos);
  CHECK(r.out.find("\"psi\":\"2*y\"") != std::string::npos);
}
