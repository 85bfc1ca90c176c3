#ifndef RRSURF_PARSE_HPP
#define RRSURF_PARSE_HPP

// Polynomial text syntax: integers, variable names, + - * ^ and
// parentheses; juxtaposition multiplies ("2XY^2" == "2*X*Y^2").
// Coefficients are integers reduced into the prime field.

#include <cctype>
#include <string>
#include <vector>

#include "rrsurf/mpoly.hpp"
#include "rrsurf/surface.hpp"

namespace rrsurf {

namespace detail {

class PolyParser {
 public:
  PolyParser(const FieldDesc& F, const std::vector<std::string>& names, const std::string& text)
      : F_(F), names_(names), s_(text), nv_(static_cast<int>(names.size())) {}

  MPoly parse() {
    MPoly r = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw error("cannot parse polynomial '" + s_ + "' at position " + std::to_string(i_) + ": " + msg);
  }
  bool starts_atom() {
    skip();
    if (i_ >= s_.size()) return false;
    const char c = s_[i_];
    return std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c)) || c == '(';
  }

  MPoly expr() {
    skip();
    MPoly r(F_, nv_);
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
      neg = s_[i_] == '-';
      ++i_;
    }
    MPoly t = term();
    r = neg ? r - t : r + t;
    while (true) {
      skip();
      if (i_ >= s_.size() || (s_[i_] != '+' && s_[i_] != '-')) break;
      const bool minus = s_[i_] == '-';
      ++i_;
      MPoly u = term();
      r = minus ? r - u : r + u;
    }
    return r;
  }

  MPoly term() {
    MPoly r = factor();
    while (true) {
      skip();
      if (i_ < s_.size() && s_[i_] == '*') {
        ++i_;
        r = r * factor();
      } else if (starts_atom()) {
        r = r * factor();
      } else {
        break;
      }
    }
    return r;
  }

  MPoly factor() {
    MPoly a = atom();
    skip();
    if (i_ < s_.size() && s_[i_] == '^') {
      ++i_;
      skip();
      const std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      a = a.pow(std::stoi(s_.substr(st, i_ - st)));
    }
    return a;
  }

  MPoly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      MPoly r = expr();
      skip();
      if (i_ >= s_.size() || s_[i_] != ')') fail("expected ')'");
      ++i_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return MPoly::constant(F_, nv_, F_.from_int(std::stoll(s_.substr(st, i_ - st))));
    }
    // longest matching variable name
    int best = -1;
    std::size_t blen = 0;
    for (int v = 0; v < nv_; ++v) {
      const auto& n = names_[v];
      if (s_.compare(i_, n.size(), n) == 0 && n.size() > blen) {
        best = v;
        blen = n.size();
      }
    }
    if (best < 0) fail("unknown variable");
    i_ += blen;
    return MPoly::var(F_, nv_, best);
  }

  const FieldDesc& F_;
  const std::vector<std::string>& names_;
  std::string s_;
  std::size_t i_ = 0;
  int nv_;
};

}  // namespace detail

inline MPoly parse_poly(const Surface& S, const std::string& text) {
  const auto names = S.names();
  return detail::PolyParser(S.base, names, text).parse();
}

inline Curve parse_curve(const Surface& S, const std::string& text, std::string name = {}) {
  return curve_make(S, parse_poly(S, text), name.empty() ? text : std::move(name));
}

/// "num / den" or a single form of class 0.
inline RationalFunction parse_function(const Surface& S, const std::string& text) {
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0)
      return RationalFunction(S, parse_poly(S, text.substr(0, i)), parse_poly(S, text.substr(i + 1)));
  }
  return RationalFunction(S, parse_poly(S, text), MPoly::constant(S.base, S.nvars(), 1));
}

}  // namespace rrsurf

#endif  // RRSURF_PARSE_HPP
