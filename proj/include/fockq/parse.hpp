#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "fockq/symbol.hpp"

namespace fockq {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

/// Parses the symbol mini-grammar:
///
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := '-' unary | primary
///   primary := number ['i'] | 'i' | 'z' | 'zbar' | '(' expr ')' | call
///   call    := const(re, im) | phase(alpha) | planewave(xi) | conj(e) | re(e)
///            | scale(e, s) | translate(e, w) | radial_dyadic(J)
///            | indicator(r) | sampled(name)
///            | piecewise([b0, b1, ...], [v0, v1, ...], v_at_zero)
///
/// Numeric arguments are themselves expressions that must reduce to
/// constants, so planewave(1+0i) and phase(-2*0.5) both work.
Symbol parse_symbol(std::string_view text);

}  // namespace fockq
