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

#include "ivauction/model.hpp"

#include <string>
#include <string_view>

namespace ivauction {

/// Parses the JSON instance format and validates the result.
///
/// Throws ParseError (with line and column) for malformed text or missing
/// fields and InvalidInstance when the described instance breaks a rule.
Instance parse_instance(std::string_view text);

/// Parses without validating; used by tooling that wants the violation list.
InstanceData parse_instance_data(std::string_view text);

std::string serialize_instance(InstanceData const &data);
inline std::string serialize_instance(Instance const &instance)
{
  return serialize_instance(instance.data());
}

Instance load_instance_file(std::string const &path);
void     save_instance_file(std::string const &path, InstanceData const &data);

}  // namespace ivauction
