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

#ifndef PERMITLAB_RATIONAL_H_
#define PERMITLAB_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace permitlab {

using Rational = mpq_class;

// Parses "p/q", "p" or a finite decimal such as "0.25" into an exact value.
// Throws InvalidInput on malformed text or a zero denominator.
Rational ParseRational(std::string_view text);

// Canonical "p/q" text; integers are printed with denominator 1.
std::string FormatRational(const Rational& value);

// p/q in lowest terms.
inline Rational Frac(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

inline Rational PositivePart(const Rational& value) {
  return value > 0 ? value : Rational(0);
}

inline Rational Max(const Rational& a, const Rational& b) {
  return a < b ? b : a;
}

inline Rational Min(const Rational& a, const Rational& b) {
  return a < b ? a : b;
}

Rational Sum(const std::vector<Rational>& values);

}  // namespace permitlab

#endif  // PERMITLAB_RATIONAL_H_
