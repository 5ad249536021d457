#include <charconv>

#include "kgsym/geometry.hpp"
#include "kgsym/parse.hpp"

namespace kgsym {

std::optional<int> generator_index(std::string_view token) {
  if (token.size() < 2 || token[0] != 'X') return std::nullopt;
  int k = 0;
  auto [p, ec] = std::from_chars(token.data() + 1, token.data() + token.size(), k);
  if (ec != std::errc() || p != token.data() + token.size() || k < 1 || k > 10) return std::nullopt;
  return k;
}

Report verify_catalog(const std::filesystem::path& data_dir) {
  const DataFile f = read_data_file(data_dir / "catalog.txt");
  const MetricSpec g = MetricSpec::flat();
  Report rep{"catalog", {}};
  for (int k = 1; k <= 10; ++k) {
    const std::string name = "X" + std::to_string(k);
    const DataSection* s = f.find(name);
    if (!s) throw DataError(f.path + ": no section [" + name + "]");
    CheckRecord r{"catalog/" + name, f.location(s->line), Status::Pass, "", ""};
    VectorField v{parse(s->require("xi_t").value), parse(s->require("xi_x").value), parse(s->require("xi_y").value),
                  Expr()};
    const Expr psi = parse(s->require("psi").value);
    const std::string kind = s->require("class").value;
    CollineationClass c = classify_collineation(v, g);
    if (!equal(v, generator(k))) {
      r.status = Status::Fail;
      r.note = "differs from the built-in generator";
      r.residual = (v - generator(k)).str();
    } else if (to_string(c.kind) != kind) {
      r.status = Status::Fail;
      r.note = "classifies as " + std::string(to_string(c.kind)) + ", listed as " + kind;
    } else if (!c.psi || !is_zero(*c.psi - psi)) {
      r.status = Status::Fail;
      r.note = "conformal factor differs from the listed psi";
      if (c.psi) r.residual = (*c.psi - psi).str();
    } else {
      r.note = kind + ", psi = " + c.psi->str();
    }
    rep.add(std::move(r));
  }
  return rep;
}

Report verify_brackets(const std::filesystem::path& data_dir) {
  const DataFile f = read_data_file(data_dir / "brackets.txt");
  Report rep{"brackets", {}};
  for (int i = 1; i <= 10; ++i) {
    const std::string row = "X" + std::to_string(i);
    const DataSection* s = f.find(row);
    if (!s) throw DataError(f.path + ": no section [" + row + "]");
    for (int j = 1; j <= 10; ++j) {
      const std::string col = "X" + std::to_string(j);
      const DataEntry& e = s->require(col);
      CheckRecord r{"bracket/" + row + "," + col, f.location(e.line), Status::Pass, "", ""};
      const VectorField computed = lie_bracket(generator(i), generator(j));
      const VectorField printed = combination(parse(e.value));
      const VectorField diff = computed - printed;
      if (!is_zero(diff)) {
        r.status = Status::Fail;
        r.residual = diff.str();
        r.note = is_zero(computed + printed) ? "computed bracket is the negative of the entry " + e.value
                                             : "entry " + e.value + " is not the computed bracket";
      }
      rep.add(std::move(r));
    }
  }
  return rep;
}

std::vector<SubalgebraEntry> read_subalgebras(const std::filesystem::path& data_dir) {
  const DataFile f = read_data_file(data_dir / "subalgebras.txt");
  std::vector<SubalgebraEntry> out;
  for (const auto& s : f.sections) {
    SubalgebraEntry e{s.name, {}, s.line};
    for (const auto& tok : split(s.require("generators").value, ',')) e.tokens.push_back(trim(tok));
    if (e.tokens.empty()) throw DataError(f.location(s.line) + ": empty generator list");
    out.push_back(std::move(e));
  }
  return out;
}

Report verify_subalgebras(const std::filesystem::path& data_dir) {
  const DataFile f = read_data_file(data_dir / "subalgebras.txt");
  const auto entries = read_subalgebras(data_dir);
  Report rep{"subalgebras", {}};
  for (const auto& e : entries) {
    CheckRecord r{"subalgebra/" + e.name, f.location(e.line), Status::Pass, "", ""};
    std::vector<VectorField> gens;
    std::vector<std::string> labels;
    std::vector<std::string> unknown;
    for (const auto& tok : e.tokens) {
      if (auto k = generator_index(tok)) {
        gens.push_back(generator(*k));
        labels.push_back(tok);
      } else {
        unknown.push_back(tok);
      }
    }
    ClosureResult c = subalgebra_closure(gens, labels);
    if (!unknown.empty()) {
      r.status = Status::Flagged;
      std::string list;
      for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
      r.note = "token " + list + " names no generator; the remaining generators " +
               (c.closed ? std::string("close") : "do not close: " + c.offending);
    } else if (!c.closed) {
      r.status = Status::Fail;
      r.residual = c.offending;
      r.note = "bracket outside the span";
    } else {
      r.note = "closed";
    }
    rep.add(std::move(r));
  }
  return rep;
}

}  // namespace kgsym
