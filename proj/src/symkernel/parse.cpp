#include "kgsym/parse.hpp"

#include <cctype>

namespace kgsym {

bool is_function_name(std::string_view name) {
  if (name.empty()) return false;
  if (std::isupper(static_cast<unsigned char>(name[0]))) {
    for (char c : name.substr(1))
      if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    return true;
  }
  return name == "zeta" || name == "phi" || name == "beta" || name == "rho";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Expr run() {
    Expr e = sum();
    skip();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Expr sum() {
    Expr e = product();
    while (true) {
      if (eat('+')) e += product();
      else if (eat('-')) e -= product();
      else return e;
    }
  }

  Expr product() {
    Expr e = unary();
    while (true) {
      if (eat('*')) {
        e *= unary();
      } else if (eat('/')) {
        std::size_t at = pos_;
        Expr d = unary();
        if (d.is_literal_zero()) throw ParseError("division by zero", at);
        e = e / d;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!eat('^')) return base;
    std::size_t at = pos_;
    Expr ex = unary();
    auto v = ex.constant_value();
    if (!v || v->get_den() != 1 || !v->get_num().fits_sint_p()) throw ParseError("non-integer exponent", at);
    long n = v->get_num().get_si();
    if (n < 0 && base.is_literal_zero()) throw ParseError("division by zero", at);
    return base.pow(static_cast<int>(n));
  }

  Expr number() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    std::string digits(s_.substr(start, pos_ - start));
    mpz_class scale = 1;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      std::size_t fs = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      digits += std::string(s_.substr(fs, pos_ - fs));
      for (std::size_t i = fs; i < pos_; ++i) scale *= 10;
    }
    Rational r(mpz_class(digits, 10), scale);
    r.canonicalize();
    return Expr(r);
  }

  std::vector<Expr> call_args() {
    std::vector<Expr> args;
    expect('(');
    if (eat(')')) return args;
    do args.push_back(sum());
    while (eat(','));
    expect(')');
    return args;
  }

  Expr jet(std::string_view name, std::size_t at) {
    std::array<int, 3> counts{};
    for (char c : name.substr(2)) {
      if (c == 't') ++counts[0];
      else if (c == 'x') ++counts[1];
      else if (c == 'y') ++counts[2];
      else throw ParseError("invalid jet '" + std::string(name) + "'", at);
    }
    if (counts[0] + counts[1] + counts[2] > 3) throw ParseError("jet order above 3 in '" + std::string(name) + "'", at);
    return Expr::jet(counts);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");

    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    std::string_view name = s_.substr(start, pos_ - start);

    skip();
    const bool call = pos_ < s_.size() && (s_[pos_] == '(' || s_[pos_] == '[');
    if (!call) {
      if (name == "u") return Expr::u();
      if (name.size() > 2 && name.substr(0, 2) == "u_") return jet(name, start);
      return Expr::symbol(name);
    }
    for (ElementaryFn fn : {ElementaryFn::Exp, ElementaryFn::Arctan, ElementaryFn::Sqrt}) {
      if (name != elementary_name(fn)) continue;
      auto args = call_args();
      if (args.size() != 1) throw ParseError(std::string(name) + " takes one argument", start);
      return apply(fn, args[0]);
    }
    if (!is_function_name(name)) throw ParseError("unknown function '" + std::string(name) + "'", start);
    std::vector<int> derivs;
    if (eat('[')) {
      do {
        skip();
        std::size_t ds = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (ds == pos_) fail("expected derivative order");
        derivs.push_back(std::stoi(std::string(s_.substr(ds, pos_ - ds))));
      } while (eat(','));
      expect(']');
    }
    auto args = call_args();
    if (args.empty()) throw ParseError("function '" + std::string(name) + "' needs arguments", start);
    if (!derivs.empty() && derivs.size() != args.size())
      throw ParseError("derivative index of '" + std::string(name) + "' does not match its arity", start);
    return function(std::string(name), std::move(args), std::move(derivs));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).run(); }

}  // namespace kgsym
