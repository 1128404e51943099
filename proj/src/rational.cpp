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

#include "msl/rational.hpp"

#include <stdexcept>

namespace msl {

Rat harmonic_number(int n) {
  if (n < 0) throw std::invalid_argument("harmonic_number: n must be >= 0");
  Rat h = 0;
  for (int i = 1; i <= n; ++i) h += Rat(1, i);
  return h;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return out;
}

std::string fraction_string(const Rat& r) { return r.get_str(); }

Rat parse_fraction(const std::string& s) {
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rat r;
    if (r.set_str(s, 10) != 0) {
      throw std::invalid_argument("parse_fraction: bad rational '" + s + "'");
    }
    r.canonicalize();
    return r;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac_len = s.size() - dot - 1;
  Rat num;
  if (num.set_str(digits, 10) != 0) {
    throw std::invalid_argument("parse_fraction: bad decimal '" + s + "'");
  }
  Rat den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  Rat r = num / den;
  r.canonicalize();
  return r;
}

}  // namespace msl
