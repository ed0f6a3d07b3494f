#include "fockq/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

namespace fockq {

namespace {

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Symbol parse() {
    Symbol e = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  Symbol expr() {
    Symbol lhs = term();
    for (;;) {
      if (accept('+'))
        lhs = lhs + term();
      else if (accept('-'))
        lhs = lhs - term();
      else
        return lhs;
    }
  }

  Symbol term() {
    Symbol lhs = unary();
    while (accept('*')) lhs = lhs * unary();
    return lhs;
  }

  Symbol unary() {
    if (accept('-')) {
      Symbol inner = unary();
      if (const auto* c = inner.as<node::Constant>()) return constant(-c->value);
      return -inner;
    }
    return primary();
  }

  std::string identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Symbol number() {
    const std::string rest(s_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    if (pos_ < s_.size() && s_[pos_] == 'i') {
      ++pos_;
      return constant(cplx(0.0, v));
    }
    return constant(v);
  }

  Symbol primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of expression");
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (accept('(')) {
      Symbol e = expr();
      expect(')');
      return e;
    }
    if (!std::isalpha(static_cast<unsigned char>(c))) fail(std::string("unexpected '") + c + "'");
    const std::size_t name_pos = pos_;
    const std::string name = identifier();
    if (name == "z") return coord_z();
    if (name == "zbar") return coord_zbar();
    if (name == "i") return constant(cplx(0.0, 1.0));
    if (!accept('(')) {
      pos_ = name_pos;
      fail("unknown identifier '" + name + "'");
    }
    Symbol out = call(name, name_pos);
    expect(')');
    return out;
  }

  cplx constant_arg() {
    const std::size_t at = pos_;
    Symbol e = expr();
    if (!is_constant(e)) {
      pos_ = at;
      fail("argument must be a constant expression");
    }
    return eval(e, 0.0);
  }

  double real_arg() {
    const std::size_t at = pos_;
    const cplx v = constant_arg();
    if (v.imag() != 0.0) {
      pos_ = at;
      fail("argument must be real");
    }
    return v.real();
  }

  std::vector<cplx> list_arg() {
    expect('[');
    std::vector<cplx> out;
    if (accept(']')) return out;
    do {
      out.push_back(constant_arg());
    } while (accept(','));
    expect(']');
    return out;
  }

  Symbol call(const std::string& name, std::size_t name_pos) {
    try {
      if (name == "const") {
        const double re = real_arg();
        expect(',');
        const double im = real_arg();
        return constant(cplx(re, im));
      }
      if (name == "phase") return quadratic_phase(real_arg());
      if (name == "planewave") return plane_wave(constant_arg());
      if (name == "conj") return conj(expr());
      if (name == "re") return real_part(expr());
      if (name == "scale") {
        Symbol f = expr();
        expect(',');
        return scale(f, real_arg());
      }
      if (name == "translate") {
        Symbol f = expr();
        expect(',');
        return translate(f, constant_arg());
      }
      if (name == "radial_dyadic") {
        const double j = real_arg();
        if (j != std::floor(j)) fail("radial_dyadic expects an integer");
        return radial_dyadic(static_cast<int>(j));
      }
      if (name == "indicator") return disk_indicator(real_arg());
      if (name == "sampled") {
        skip_ws();
        const std::string id = identifier();
        auto s = named_radial_profile(id);
        if (!s) fail("unknown sampled profile '" + id + "'");
        return *s;
      }
      if (name == "piecewise") {
        std::vector<double> breaks;
        for (auto b : list_arg()) {
          if (b.imag() != 0.0) fail("piecewise breaks must be real");
          breaks.push_back(b.real());
        }
        expect(',');
        auto values = list_arg();
        expect(',');
        const cplx at_zero = constant_arg();
        return radial_piecewise(std::move(breaks), std::move(values), at_zero);
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(e.what(), name_pos);
    }
    pos_ = name_pos;
    fail("unknown function '" + name + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

Symbol parse_symbol(std::string_view text) { return Parser(text).parse(); }

}  // namespace fockq
