// Copyright 2026 The algdiff Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Recursive-descent parser for bivariate polynomial text such as
// "Y^2 - X*(1+X)". Grammar:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor (['*'] factor)*        (juxtaposition "2X" is a product)
//   factor := atom ('^' integer)?
//   atom   := integer | 'X' | 'Y' | '(' expr ')'

#pragma once

#include <cctype>
#include <string>
#include <string_view>

#include "algdiff/bipoly.hpp"
#include "algdiff/errors.hpp"

namespace algdiff {

template <Field K>
class PolyParser {
 public:
  PolyParser(const K& k, std::string_view text) : k_(k), s_(text) {}

  BiPoly<K> parse() {
    BiPoly<K> r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("polynomial text, column " + std::to_string(pos_ + 1) + ": " + what);
  }

  BiPoly<K> expr() {
    BiPoly<K> r(k_);
    bool first = true;
    for (;;) {
      char c = peek();
      bool neg = false;
      if (c == '+' || c == '-') {
        neg = c == '-';
        ++pos_;
      } else if (!first) {
        return r;
      }
      BiPoly<K> t = term();
      r = neg ? r - t : r + t;
      first = false;
    }
  }

  BiPoly<K> term() {
    BiPoly<K> r = factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        r = r * factor();
      } else if (c == '(' || c == 'X' || c == 'Y' || c == 'x' || c == 'y' ||
                 std::isdigit(static_cast<unsigned char>(c))) {
        r = r * factor();
      } else {
        return r;
      }
    }
  }

  BiPoly<K> factor() {
    BiPoly<K> base = atom();
    if (peek() == '^') {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent must be a nonnegative integer");
      const unsigned long e = std::stoul(std::string(s_.substr(start, pos_ - start)));
      if (e > 100000) fail("exponent too large");
      return base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  BiPoly<K> atom() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      BiPoly<K> r = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return r;
    }
    if (c == 'X' || c == 'x') {
      ++pos_;
      return BiPoly<K>::x(k_);
    }
    if (c == 'Y' || c == 'y') {
      ++pos_;
      return BiPoly<K>::y(k_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return BiPoly<K>::constant(k_, k_.from_integer(Integer(std::string(s_.substr(start, pos_ - start)))));
    }
    if (c == '\0') fail("unexpected end of input");
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const K& k_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

template <Field K>
BiPoly<K> parse_bipoly(const K& k, std::string_view text) {
  return PolyParser<K>(k, text).parse();
}

}  // namespace algdiff
