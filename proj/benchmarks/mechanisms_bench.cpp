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

#include "ivauction/general_auction.hpp"
#include "ivauction/generators.hpp"
#include "ivauction/kary_auction.hpp"
#include "ivauction/verification.hpp"

#include <benchmark/benchmark.h>

namespace iv = ivauction;

namespace {

void BM_RunBinary(benchmark::State &state)
{
  int const          n = static_cast<int>(state.range(0));
  iv::Instance const inst(iv::random_instance(n, 2, 1, iv::RandomFamily::Binary, 1));
  iv::SignalProfile  s(static_cast<std::size_t>(n), 1);
  auto const         coins = iv::coins_from_seed(3, n, 1, 1, 2);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(iv::run_binary(inst, s, coins, iv::Pricing::Revenue));
  }
}
BENCHMARK(BM_RunBinary)->Arg(4)->Arg(16)->Arg(64);

void BM_RunKary(benchmark::State &state)
{
  int const          n = static_cast<int>(state.range(0));
  iv::Instance const inst(iv::random_instance(n, 4, 1, iv::RandomFamily::Shared, 2));
  iv::SignalProfile  s(static_cast<std::size_t>(n), 2);
  auto const         coins = iv::coins_from_seed(5, n, 3, 1, 12);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(iv::run_kary(inst, s, coins, iv::Pricing::Revenue));
  }
}
BENCHMARK(BM_RunKary)->Arg(4)->Arg(16)->Arg(64);

void BM_BuildAllocationTable(benchmark::State &state)
{
  int const          n = static_cast<int>(state.range(0));
  iv::Instance const inst(iv::random_instance(n, 3, 1, iv::RandomFamily::General, 3));
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(iv::build_allocation_table(inst));
  }
}
BENCHMARK(BM_BuildAllocationTable)->Arg(3)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

void BM_ExpectedOutcome(benchmark::State &state)
{
  int const          n = static_cast<int>(state.range(0));
  iv::Instance const inst(iv::random_instance(n, 3, 1, iv::RandomFamily::Shared, 4));
  auto const         mech = iv::make_mechanism(inst, iv::MechanismKind::Kary, iv::Pricing::Revenue);
  iv::SignalProfile  s(static_cast<std::size_t>(n), 1);
  for (auto _ : state)
  {
    benchmark::DoNotOptimize(iv::expected_outcome(inst, mech, s));
  }
}
BENCHMARK(BM_ExpectedOutcome)->Arg(3)->Arg(4)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
