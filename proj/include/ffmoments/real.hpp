/*
   Copyright 2026 The ffmoments Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef FFMOMENTS_REAL_HPP
#define FFMOMENTS_REAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <boost/math/special_functions/log1p.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "poly.hpp"

namespace ffm {

/// 100 significant decimal digits; expression templates off so that the type
/// behaves like a plain value in generic code.
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                           boost::multiprecision::et_off>;

inline Real log1p(const Real& x) { return boost::math::log1p(x); }

inline std::string to_string(const Real& x, int digits = 20) { return x.str(digits, std::ios_base::scientific); }

/// pi_q(d) for d = 1..n as high-precision reals (kept exact as integers).
class PrimeCountTable {
 public:
  explicit PrimeCountTable(std::uint64_t q) : q_(q) {}
  const Real& operator[](int d) {
    while (static_cast<int>(counts_.size()) <= d) {
      const int e = static_cast<int>(counts_.size());
      counts_.push_back(e == 0 ? Real(0) : Real(count_irreducibles(q_, e)));
    }
    return counts_[d];
  }

 private:
  std::uint64_t q_;
  std::vector<Real> counts_;
};

}  // namespace ffm

#endif  // FFMOMENTS_REAL_HPP
