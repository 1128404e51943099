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

#pragma once

#include <gmpxx.h>

#include <string>

namespace msl {

// Exact rational arithmetic. All equality- and tie-sensitive quantities
// (densities, LP coefficients, policy success probabilities, exhaustive
// expectations) are kept in this type end to end.
using Rat = mpq_class;
using Int = mpz_class;

// H_n = sum_{i=1}^{n} 1/i as an exact fraction. H_0 = 0.
Rat harmonic_number(int n);

// Exact binomial coefficient; 0 when k < 0 or k > n.
Int binomial(int n, int k);

// "num/den" in lowest terms ("num" when the denominator is 1).
std::string fraction_string(const Rat& r);

// Parses "num", "num/den", or a plain decimal like "0.25" (exact).
Rat parse_fraction(const std::string& s);

inline double to_double(const Rat& r) { return r.get_d(); }

}  // namespace msl
