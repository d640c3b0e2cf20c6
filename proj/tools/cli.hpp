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

#include <ostream>

namespace ivauction::cli {

/// Exit codes: 0 success or all checks passed, 1 a check failed, 2 invalid
/// input or an exceeded budget.
int run_cli(int argc, char const *const *argv, std::ostream &out, std::ostream &err);

}  // namespace ivauction::cli
