// Copyright 2026 The Authors.
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

#include "permitlab/rational.h"

#include <cctype>
#include <string>

#include "permitlab/errors.h"

namespace permitlab {
namespace {

std::string Trim(std::string_view text) {
  size_t begin = 0;
  size_t end = text.size();
  while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  while (end > begin &&
         std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return std::string(text.substr(begin, end - begin));
}

bool IsSignedDigits(const std::string& s) {
  size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
  if (start == s.size()) return false;
  for (size_t k = start; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  return true;
}

mpz_class ParseInteger(const std::string& s, std::string_view original) {
  if (!IsSignedDigits(s)) {
    throw InvalidInput("malformed rational: '" + std::string(original) + "'");
  }
  return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
}

}  // namespace

Rational ParseRational(std::string_view text) {
  std::string s = Trim(text);
  size_t slash = s.find('/');
  if (slash != std::string::npos) {
    mpz_class num = ParseInteger(Trim(s.substr(0, slash)), text);
    mpz_class den = ParseInteger(Trim(s.substr(slash + 1)), text);
    if (den == 0) {
      throw InvalidInput("zero denominator: '" + std::string(text) + "'");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  size_t dot = s.find('.');
  if (dot == std::string::npos) return Rational(ParseInteger(s, text));
  std::string whole = s.substr(0, dot);
  std::string frac = s.substr(dot + 1);
  bool negative = !whole.empty() && whole[0] == '-';
  if (!whole.empty() && (whole[0] == '-' || whole[0] == '+')) {
    whole = whole.substr(1);
  }
  if (whole.empty()) whole = "0";
  if (frac.empty() || !IsSignedDigits(whole) || !IsSignedDigits(frac) ||
      frac[0] == '-' || frac[0] == '+') {
    throw InvalidInput("malformed rational: '" + std::string(text) + "'");
  }
  mpz_class den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational r(mpz_class(whole + frac, 10), den);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

std::string FormatRational(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational Sum(const std::vector<Rational>& values) {
  Rational total = 0;
  for (const Rational& v : values) total += v;
  return total;
}

}  // namespace permitlab
