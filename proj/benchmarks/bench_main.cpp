// Copyright 2026 bitlab authors
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

#include <benchmark/benchmark.h>

#include "bitlab/distance.hpp"
#include "bitlab/hard_instance.hpp"
#include "bitlab/recovery.hpp"
#include "bitlab/stream_engine.hpp"
#include "bitlab/toeplitz.hpp"
#include "bitlab/util.hpp"

using namespace bitlab;

static void BM_L2Rearrangement(benchmark::State& state) {
  const std::uint64_t len = static_cast<std::uint64_t>(state.range(0));
  const BitArray a = sample_u(len, 1);
  const BitArray b = sample_u(len, 2);
  for (auto _ : state) {
    auto d = l2_rearrangement(a, b);
    benchmark::DoNotOptimize(d);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_L2Rearrangement)->RangeMultiplier(4)->Range(1 << 10, 1 << 16)->Complexity();

static void BM_SlideL2(benchmark::State& state) {
  const std::uint64_t ell = static_cast<std::uint64_t>(state.range(0));
  const BitArray f = build_f_ell(ell);
  const BitArray u = sample_u(u_ell_length(ell), 3);
  for (auto _ : state) {
    auto out = slide_l2(f, u);
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_SlideL2)->Arg(16)->Arg(64)->Arg(256);

static void BM_StreamPush(benchmark::State& state) {
  const std::uint64_t n = std::uint64_t{1} << 16;
  const Mode mode = state.range(0) ? Mode::l2_rearrangement : Mode::convolution;
  const HardInstance inst = mode == Mode::l2_rearrangement
                                ? make_l2_instance(n, 4)
                                : make_conv_instance(n, 4);
  StreamEngine engine(inst.pattern, mode);
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto out = engine.push(inst.updates[i]);
    benchmark::DoNotOptimize(out);
    i = (i + 1) % n;
  }
}
BENCHMARK(BM_StreamPush)->Arg(0)->Arg(1);

static void BM_RecoverEvenBlocks(benchmark::State& state) {
  const std::uint64_t ell = static_cast<std::uint64_t>(state.range(0));
  const BitArray f = build_f_ell(ell);
  const BitArray u = sample_u(u_ell_length(ell), 5);
  const RecoveryInstance inst = make_recovery_instance(ell, f, u);
  for (auto _ : state) {
    auto blocks = recover_even_blocks(inst);
    benchmark::DoNotOptimize(blocks);
  }
}
BENCHMARK(BM_RecoverEvenBlocks)->Arg(16)->Arg(64)->Arg(256);

static void BM_ExactEntropy(benchmark::State& state) {
  const std::uint64_t width = static_cast<std::uint64_t>(state.range(0));
  const ToeplitzSpec m = toeplitz_from_key(4, width, 0x5a5a5a & ((1u << (4 + width - 1)) - 1));
  for (auto _ : state) {
    auto r = exact_entropy(m);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExactEntropy)->Arg(8)->Arg(12)->Arg(16);

BENCHMARK_MAIN();
