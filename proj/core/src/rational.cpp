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

#include "ivauction/rational.hpp"

#include "ivauction/errors.hpp"

#include <cctype>

namespace ivauction {

using boost::multiprecision::cpp_int;

namespace {

cpp_int parse_digits(std::string_view digits, std::string_view whole)
{
  if (digits.empty())
  {
    throw InvalidInput("malformed number '" + std::string(whole) + "'");
  }
  cpp_int value = 0;
  for (char c : digits)
  {
    if (!std::isdigit(static_cast<unsigned char>(c)))
    {
      throw InvalidInput("malformed number '" + std::string(whole) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text)
{
  std::string_view const whole = text;
  bool negative                = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+'))
  {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos)
  {
    cpp_int num = parse_digits(text.substr(0, slash), whole);
    cpp_int den = parse_digits(text.substr(slash + 1), whole);
    if (den == 0)
    {
      throw InvalidInput("zero denominator in '" + std::string(whole) + "'");
    }
    result = Rational(num, den);
  }
  else if (auto dot = text.find('.'); dot != std::string_view::npos)
  {
    auto int_part  = text.substr(0, dot);
    auto frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty())
    {
      throw InvalidInput("malformed number '" + std::string(whole) + "'");
    }
    cpp_int num   = int_part.empty() ? cpp_int(0) : parse_digits(int_part, whole);
    cpp_int scale = 1;
    for (char c : frac_part)
    {
      if (!std::isdigit(static_cast<unsigned char>(c)))
      {
        throw InvalidInput("malformed number '" + std::string(whole) + "'");
      }
      num   = num * 10 + (c - '0');
      scale = scale * 10;
    }
    result = Rational(num, scale);
  }
  else
  {
    result = Rational(parse_digits(text, whole));
  }
  return negative ? Rational(-result) : result;
}

std::string format_fraction(Rational const &value)
{
  return value.str();
}

std::string format_money(Rational const &value)
{
  cpp_int num = boost::multiprecision::numerator(value);
  cpp_int den = boost::multiprecision::denominator(value);
  if (den == 1)
  {
    return num.str();
  }

  // Terminating decimal iff den = 2^a 5^b.
  cpp_int rest = den;
  int     twos = 0;
  int     fives = 0;
  while (rest % 2 == 0)
  {
    rest /= 2;
    ++twos;
  }
  while (rest % 5 == 0)
  {
    rest /= 5;
    ++fives;
  }
  if (rest != 1)
  {
    return value.str();
  }

  int const digits = std::max(twos, fives);
  cpp_int   pow10  = 1;
  for (int i = 0; i < digits; ++i)
  {
    pow10 *= 10;
  }
  bool const negative = num < 0;
  cpp_int    scaled   = (negative ? cpp_int(-num) : num) * (pow10 / den);
  std::string s       = scaled.str();
  if (static_cast<int>(s.size()) <= digits)
  {
    s.insert(0, static_cast<std::size_t>(digits - static_cast<int>(s.size()) + 1), '0');
  }
  s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  return negative ? "-" + s : s;
}

double to_double(Rational const &value)
{
  return value.convert_to<double>();
}

}  // namespace ivauction
