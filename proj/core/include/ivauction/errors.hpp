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

#include <stdexcept>
#include <string>
#include <vector>

namespace ivauction {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Malformed arguments: wrong profile length, signal out of range, bad coins,
/// a mechanism applied to an incompatible instance.
class InvalidInput : public Error
{
public:
  using Error::Error;
};

/// Instance text that is not well-formed JSON or misses required fields.
class ParseError : public Error
{
public:
  ParseError(std::string const &message, int line, int column);

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

/// Exhaustive enumeration would exceed the configured budget.
class ResourceLimit : public Error
{
public:
  using Error::Error;
};

/// A lower-bound certificate whose monotonicity chains do not check out.
class CertificateInvalid : public Error
{
public:
  using Error::Error;
};

/// The bidder is never allocated for the given signals of the others.
class NoThreshold : public Error
{
public:
  using Error::Error;
};

/// A clock strategy failed while deciding.
class ClockAbort : public Error
{
public:
  using Error::Error;
};

}  // namespace ivauction
