// Copyright 2026 The ivauction Authors.
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

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace ivauction {

using Rational = boost::multiprecision::cpp_rational;

/// Money and probabilities are exact rationals throughout.
using Money = Rational;

/// Accepts integers, decimals ("-12.25") and fractions ("3/4").
Rational parse_rational(std::string_view text);

/// Decimal form when the value terminates in base ten, "p/q" otherwise.
std::string format_money(Rational const &value);

/// Always "p/q" (or "p" for integers).
std::string format_fraction(Rational const &value);

/// Floating approximation, for Monte Carlo comparisons and display only.
double to_double(Rational const &value);

}  // namespace ivauction
