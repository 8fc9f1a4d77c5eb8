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

// Experiment driver. Subcommands:
//   gen-instance    build a fixed array + sampled updates, write instance JSON
//   stream          run the online engine over an instance, check outputs
//   recover         seeded recovery round-trips, entropy certificate report
//   verify          full pipeline: generate, stream, adapt, decode, compare
//   toeplitz-search entropy search over Toeplitz candidates (CSV or JSON)
//   geometry-check  interval ranges, nesting margins, offset-grid disjointness
//
// Exit codes: 0 all checks pass, 1 invariant failure (report written),
// 2 configuration or I/O error. Reports embed the config and are
// byte-identical for identical configs. BITSTREAM_LAB_THREADS caps fan-out.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <bit>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "bitlab/distance.hpp"
#include "bitlab/errors.hpp"
#include "bitlab/geometry.hpp"
#include "bitlab/hard_instance.hpp"
#include "bitlab/instance_io.hpp"
#include "bitlab/recovery.hpp"
#include "bitlab/stream_engine.hpp"
#include "bitlab/toeplitz.hpp"
#include "bitlab/util.hpp"

using nlohmann::ordered_json;
using namespace bitlab;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitInvariantFailure = 1;
constexpr int kExitConfigError = 2;

struct CheckList {
  ordered_json checks = ordered_json::array();
  bool all_pass = true;

  void add(const std::string& name, bool pass, const std::string& detail = "") {
    ordered_json c;
    c["name"] = name;
    c["pass"] = pass;
    if (!detail.empty()) c["detail"] = detail;
    checks.push_back(c);
    all_pass = all_pass && pass;
  }
};

ordered_json base_report(const std::string& command, ordered_json config) {
  ordered_json r;
  r["version"] = kArtifactVersion;
  r["command"] = command;
  r["config"] = std::move(config);
  return r;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open for writing: " + path);
  out << text;
  if (!out) throw std::ios_base::failure("write failed: " + path);
}

int finish(ordered_json report, const CheckList& checks,
           const std::string& out_path) {
  report["checks"] = checks.checks;
  report["pass"] = checks.all_pass;
  write_text(out_path, report.dump(2) + "\n");
  return checks.all_pass ? kExitPass : kExitInvariantFailure;
}

void require_instance_n(std::uint64_t n) {
  if (!std::has_single_bit(n) || n < kMinStreamLength)
    throw CLI::ValidationError(
        "--n", "must be a power of two >= 65536 for instance commands");
}

ordered_json distance_to_json(const Distance& d) {
  if (d.is_finite()) return ordered_json(d.value());
  return ordered_json("inf");
}

HardInstance load_instance(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::ios_base::failure("cannot open instance: " + path);
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return instance_from_json(text);
}

Mode parse_mode(const std::string& mode) {
  if (mode == "conv") return Mode::convolution;
  if (mode == "l2") return Mode::l2_rearrangement;
  throw CLI::ValidationError("--mode", "must be conv or l2");
}

// ---------------------------------------------------------------------------

int cmd_gen_instance(std::uint64_t n, std::uint64_t seed,
                     const std::string& mode, const std::string& out) {
  require_instance_n(n);
  const HardInstance inst = mode == "conv" ? make_conv_instance(n, seed)
                                           : make_l2_instance(n, seed);
  write_text(out, instance_to_json(inst));
  std::cerr << "instance written: n=" << n << " seed=" << seed
            << " mode=" << mode << " regions=" << inst.layout.size() << "\n";
  return kExitPass;
}

int cmd_stream(const std::string& instance_path, const std::string& mode_name,
               std::uint64_t repeats, std::uint64_t check_stride,
               const std::string& out) {
  const HardInstance inst = load_instance(instance_path);
  const Mode mode = parse_mode(mode_name);
  const std::uint64_t n = inst.n;
  if (check_stride == 0) check_stride = 1;

  ordered_json config{{"instance", instance_path}, {"mode", mode_name},
                      {"repeats", repeats},        {"check_stride", check_stride},
                      {"n", n},                    {"seed", inst.seed}};
  ordered_json report = base_report("stream", config);
  CheckList checks;

  StreamEngine engine(inst.pattern, mode);
  ordered_json outputs = ordered_json::array();
  std::uint64_t offline_mismatches = 0, aligned_infinite = 0, rechecked = 0;
  for (std::uint64_t r = 0; r < repeats; ++r) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto res = engine.push(inst.updates[i]);
      const std::uint64_t c = engine.arrivals_seen();
      ordered_json o;
      o["arrival"] = c;
      o["value"] = distance_to_json(res.value);
      o["warmup"] = res.warmup;
      outputs.push_back(std::move(o));
      if (res.warmup || c % 4 != 0) continue;
      // Full windows aligned with the update blocks: value must be finite
      // in rearrangement mode and must equal the from-scratch evaluation.
      if (mode == Mode::l2_rearrangement && !res.value.is_finite())
        ++aligned_infinite;
      if ((c / 4) % check_stride == 0) {
        ++rechecked;
        if (offline_output(inst.pattern, engine.window(), mode) != res.value)
          ++offline_mismatches;
      }
    }
  }
  report["outputs"] = std::move(outputs);
  checks.add("offline-recomputation-matches", offline_mismatches == 0,
             std::to_string(rechecked) + " arrivals rechecked");
  if (mode == Mode::l2_rearrangement)
    checks.add("aligned-arrivals-finite", aligned_infinite == 0,
               aligned_infinite == 0
                   ? ""
                   : std::to_string(aligned_infinite) + " infinite outputs");
  return finish(std::move(report), checks, out);
}

int cmd_recover(std::uint64_t ell, std::uint64_t trials, std::uint64_t seed,
                const std::string& out) {
  if (trials < 1) throw CLI::ValidationError("--trials", "must be >= 1");
  ordered_json config{{"ell", ell}, {"trials", trials}, {"seed", seed}};
  ordered_json report = base_report("recover", config);
  CheckList checks;

  const CertificateReport cert =
      entropy_certificate(ell, trials, seed, thread_cap());
  report["ell"] = cert.ell;
  report["trials"] = cert.trials;
  report["successes"] = cert.successes;
  report["distinct_configurations"] = cert.distinct_configurations;
  report["certified_bits"] = cert.certified_bits;
  ordered_json failures = ordered_json::array();
  for (const auto& f : cert.failures)
    failures.push_back(
        {{"trial", f.trial}, {"k", f.k}, {"j", f.j}, {"detail", f.detail}});
  report["failures"] = std::move(failures);

  checks.add("all-round-trips-recovered", cert.successes == cert.trials,
             std::to_string(cert.successes) + "/" + std::to_string(cert.trials));
  return finish(std::move(report), checks, out);
}

// Sliding outputs recovered from the stream for one region, plus the
// matching ground-truth update blocks (recovery start t0 = 0).
struct StreamedRegion {
  RecoveryInstance instance;
  BitArray u_ell;
};

StreamedRegion adapt_region(const HardInstance& inst,
                            const std::vector<Distance>& streamed,
                            const RegionLayout& region) {
  const std::uint64_t n = inst.n;
  const std::uint64_t ell = region.ell;
  const std::uint64_t m = u_ell_length(ell);
  const IntervalSpec spec = interval_spec(n, ell, 0);

  StreamedRegion out;
  out.u_ell = inst.updates.slice(0, m);
  out.instance.ell = ell;
  out.instance.f_ell = inst.pattern.slice(region.start, region.len);
  BitArray window(n);
  for (std::uint64_t i = 0; i < ell / 4; ++i) {
    const std::uint64_t arrival = n + spec.t3 - 4 * i;  // 0-based, second pass
    for (std::uint64_t p = 0; p < n; ++p)
      window.set(p, inst.updates[(arrival - n + 1 + p) % n]);
    const Distance& a = streamed[arrival];
    if (!a.is_finite())
      throw CorruptInstanceError("streamed output infinite at an aligned arrival");
    out.instance.outputs.push_back(Distance::finite(strip_outside_contribution(
        inst.pattern, window, a.value(), region.start + 4 * i, m)));
  }
  const std::uint64_t blocks = floor_log2(ell);
  for (std::uint64_t b = 1; b < blocks; b += 2)
    out.instance.odd_blocks.push_back(out.u_ell.slice(b * ell, ell));
  return out;
}

void verify_l2(const HardInstance& inst, CheckList& checks,
               ordered_json& detail) {
  const std::uint64_t n = inst.n;
  StreamEngine engine(inst.pattern, Mode::l2_rearrangement);
  std::vector<Distance> streamed;
  streamed.reserve(2 * n);
  std::uint64_t offline_mismatches = 0, aligned_infinite = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto res = engine.push(inst.updates[i]);
      streamed.push_back(res.value);
      const std::uint64_t c = engine.arrivals_seen();
      if (res.warmup || c % 4 != 0) continue;
      if (!res.value.is_finite()) ++aligned_infinite;
      if ((c / 4) % 64 == 0 &&
          offline_output(inst.pattern, engine.window(),
                         Mode::l2_rearrangement) != res.value)
        ++offline_mismatches;
    }
  }
  checks.add("l2-aligned-arrivals-finite", aligned_infinite == 0);
  checks.add("l2-streamed-matches-offline-sample", offline_mismatches == 0);

  ordered_json regions = ordered_json::array();
  for (const RegionLayout& region : inst.layout) {
    const StreamedRegion sr = adapt_region(inst, streamed, region);
    const auto direct = slide_l2(sr.instance.f_ell, sr.u_ell);
    const bool adapter_ok = sr.instance.outputs == direct;
    checks.add(
        "l2-adapter-matches-sliding-outputs ell=" + std::to_string(region.ell),
        adapter_ok);

    bool recovered_ok = true;
    std::string fail_detail;
    try {
      const auto blocks = recover_even_blocks(sr.instance);
      for (std::uint64_t j = 0; j < blocks.size(); ++j)
        if (blocks[j] != sr.u_ell.slice(2 * j * region.ell, region.ell))
          recovered_ok = false;
    } catch (const std::exception& e) {
      recovered_ok = false;
      fail_detail = e.what();
    }
    checks.add("l2-recovery-from-stream ell=" + std::to_string(region.ell),
               recovered_ok, fail_detail);
    regions.push_back({{"ell", region.ell},
                       {"outputs", region.ell / 4},
                       {"adapter_ok", adapter_ok},
                       {"recovered", recovered_ok}});
  }
  detail["l2_regions"] = std::move(regions);
}

void verify_conv(const HardInstance& inst, std::uint64_t seed,
                 CheckList& checks, ordered_json& detail) {
  const std::uint64_t n = inst.n;
  StreamEngine engine(inst.pattern, Mode::convolution);
  std::vector<Distance> streamed;
  streamed.reserve(2 * n);
  std::uint64_t offline_mismatches = 0;
  for (int pass = 0; pass < 2; ++pass) {
    for (std::uint64_t i = 0; i < n; ++i) {
      const auto res = engine.push(inst.updates[i]);
      streamed.push_back(res.value);
      const std::uint64_t c = engine.arrivals_seen();
      if (!res.warmup && c % 256 == 0 &&
          offline_output(inst.pattern, engine.window(), Mode::convolution) !=
              res.value)
        ++offline_mismatches;
    }
  }
  checks.add("conv-streamed-matches-offline-sample", offline_mismatches == 0);

  const auto mats = conv_matrices(n, seed);
  ordered_json regions = ordered_json::array();
  for (const RegionLayout& region : inst.layout) {
    const std::uint64_t ell = region.ell;
    const std::uint64_t m = u_ell_length(ell);
    const IntervalSpec spec = interval_spec(n, ell, 0);
    const BitArray u_ell = inst.updates.slice(0, m);
    const auto product = toeplitz_apply(mats.at(ell), u_ell);

    // Streamed route vs matrix route, sampled across the sliding offsets.
    const std::uint64_t stride = ell <= 64 ? 1 : ell / 64;
    bool route_ok = true;
    BitArray window(n);
    for (std::uint64_t i = 0; i < ell; i += stride) {
      const std::uint64_t arrival = n + spec.t2 + ell - 1 - i;
      for (std::uint64_t p = 0; p < n; ++p)
        window.set(p, inst.updates[(arrival - n + 1 + p) % n]);
      std::int64_t outside = 0;
      const auto pf = inst.pattern.bits();
      const auto pw = window.bits();
      for (std::uint64_t p = 0; p < n; ++p)
        if (p < region.start + i || p >= region.start + i + m)
          outside += static_cast<std::int64_t>(pf[p] & pw[p]);
      const std::int64_t adapted = streamed[arrival].value() - outside;
      if (adapted != product[ell - 1 - i]) route_ok = false;
    }
    checks.add(
        "conv-stream-route-matches-matrix-route ell=" + std::to_string(ell),
        route_ok);
    regions.push_back({{"ell", ell}, {"route_ok", route_ok}});
  }
  detail["conv_regions"] = std::move(regions);
}

int cmd_verify(std::uint64_t n, std::uint64_t seed, const std::string& mode,
               const std::string& out) {
  require_instance_n(n);
  if (mode != "l2" && mode != "conv" && mode != "both")
    throw CLI::ValidationError("--mode", "must be conv, l2 or both");
  ordered_json config{{"n", n}, {"seed", seed}, {"mode", mode}};
  ordered_json report = base_report("verify", config);
  CheckList checks;
  if (mode == "l2" || mode == "both") {
    const HardInstance inst = make_l2_instance(n, seed);
    verify_l2(inst, checks, report);
  }
  if (mode == "conv" || mode == "both") {
    const HardInstance inst = make_conv_instance(n, seed);
    verify_conv(inst, seed, checks, report);
  }
  return finish(std::move(report), checks, out);
}

int cmd_toeplitz_search(std::uint64_t h, std::uint64_t width,
                        const std::string& strategy_name, std::uint64_t budget,
                        std::uint64_t seed, const std::string& format,
                        const std::string& out) {
  SearchStrategy strategy;
  if (strategy_name == "exhaustive")
    strategy = SearchStrategy::exhaustive;
  else if (strategy_name == "random")
    strategy = SearchStrategy::random;
  else if (strategy_name == "greedy")
    strategy = SearchStrategy::greedy;
  else
    throw CLI::ValidationError("--strategy",
                               "must be exhaustive, random or greedy");

  if (budget == 0) {
    // Strategy defaults: the full space for exhaustive, a fixed sample
    // otherwise.
    if (strategy == SearchStrategy::exhaustive)
      budget = std::uint64_t{1} << (h + width - 1);
    else
      budget = strategy == SearchStrategy::random ? 1024 : 256;
  }

  const SearchResult result =
      search_witnesses(h, width, budget, seed, strategy);
  if (format == "csv") {
    write_text(out, search_result_csv(result, h, width, strategy, seed, budget));
    return kExitPass;
  }
  if (format != "json")
    throw CLI::ValidationError("--format", "must be json or csv");
  ordered_json config{{"h", h},           {"width", width},
                      {"strategy", strategy_name}, {"budget", budget},
                      {"seed", seed},     {"format", format}};
  ordered_json report = base_report("toeplitz-search", config);
  report["evaluated"] = result.evaluated;
  report["partial"] = result.partial;
  if (result.best) {
    report["entropy_bits"] = result.best->entropy_bits;
    report["distinct_outputs"] = result.best->distinct_outputs;
    report["gamma"] = result.gamma;
    report["alpha"] = result.alpha;
    report["diagonal_string_hex"] = diagonal_string_hex(result.best->matrix);
    report["sampled"] = result.best->method == EntropyMethod::sampled;
  }
  CheckList checks;
  checks.add("search-completed", true);
  return finish(std::move(report), checks, out);
}

int cmd_geometry_check(std::uint64_t n, const std::string& out) {
  ordered_json config{{"n", n}};
  ordered_json report = base_report("geometry-check", config);
  CheckList checks;

  const LengthSet ls = lengths_set(n);
  report["lengths"] = ls.lengths;

  ordered_json per_ell = ordered_json::array();
  bool ranges_ok = true, disjoint_ok = true, grids_ok = true;
  for (std::uint64_t ell : ls.lengths) {
    const std::uint64_t t_max = max_admissible_start(n, ell);
    const bool full_range = t_max == n / 2 - 1;
    // Interval positions are affine in t: range/disjointness verified at
    // both admissible extremes.
    for (std::uint64_t t : {std::uint64_t{0}, t_max}) {
      const IntervalSpec s = interval_spec(n, ell, t);
      if (s.t3 > n - 1) ranges_ok = false;
      if (!(s.t0 <= s.t1 && s.t1 + 1 <= s.t2 - 1 && s.t2 <= s.t3))
        disjoint_ok = false;
    }
    // Past the admissible range the overflow must be signalled, not hidden.
    if (!full_range) {
      try {
        interval_spec(n, ell, t_max + 1);
        ranges_ok = false;
      } catch (const GeometryOverflowError&) {
      }
    }

    // Gap windows across distinct offsets must never intersect.
    const auto offsets = offset_set(n, ell);
    std::vector<std::pair<std::uint64_t, std::uint64_t>> windows;
    for (std::uint64_t f : offsets) {
      const OffsetGrid grid = arrival_grid(n, ell, f);
      for (std::uint64_t t : grid.arrivals) {
        const std::uint64_t lo = t + ell * floor_log2(ell);
        windows.emplace_back(lo, lo + gap_length(n, ell) - 1);
      }
    }
    std::sort(windows.begin(), windows.end());
    for (std::size_t i = 0; i + 1 < windows.size(); ++i)
      if (windows[i].second >= windows[i + 1].first) grids_ok = false;

    per_ell.push_back({{"ell", ell},
                       {"gap_len", gap_length(n, ell)},
                       {"span", interval_span(n, ell)},
                       {"t_max", t_max},
                       {"full_range", full_range},
                       {"offsets", offsets},
                       {"gap_windows", windows.size()}});
  }
  report["per_ell"] = std::move(per_ell);

  const NestingReport nest = validate_nesting(n);
  ordered_json pairs = ordered_json::array();
  for (const NestingPair& p : nest.pairs)
    pairs.push_back({{"ell", p.ell},
                     {"ell_next", p.ell_next},
                     {"span", p.span},
                     {"gap_next", p.gap_next},
                     {"margin", p.margin},
                     {"pass", p.pass}});
  report["nesting"] = std::move(pairs);

  checks.add("intervals-in-range", ranges_ok);
  checks.add("intervals-disjoint", disjoint_ok);
  checks.add("nesting-margins-nonnegative", nest.all_pass);
  checks.add("offset-grid-gap-windows-disjoint", grids_ok);
  return finish(std::move(report), checks, out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"online bit-stream distance laboratory"};
  app.require_subcommand(1);

  std::uint64_t n = std::uint64_t{1} << 16;
  std::uint64_t ell = 16;
  std::uint64_t seed = 0;
  std::uint64_t trials = 1000;
  std::uint64_t h = 4;
  std::uint64_t width = 8;
  std::uint64_t budget = 0;
  std::uint64_t repeats = 2;
  std::uint64_t check_stride = 16;
  std::string mode = "l2";
  std::string strategy = "exhaustive";
  std::string format = "csv";
  std::string out;
  std::string instance_path;

  auto* gen = app.add_subcommand("gen-instance", "generate an instance file");
  gen->add_option("--n", n, "stream length (power of two >= 65536)");
  gen->add_option("--seed", seed, "root seed");
  gen->add_option("--mode", mode, "conv or l2")->capture_default_str();
  gen->add_option("--out", out, "output path (default stdout)");

  auto* stream = app.add_subcommand("stream", "stream an instance");
  stream->add_option("--instance", instance_path, "instance JSON path")
      ->required();
  stream->add_option("--mode", mode, "conv or l2")->capture_default_str();
  stream->add_option("--repeats", repeats, "times to stream U")
      ->capture_default_str();
  stream->add_option("--check-stride", check_stride,
                     "recompute every k-th aligned arrival offline")
      ->capture_default_str();
  stream->add_option("--out", out, "report path (default stdout)");

  auto* recover = app.add_subcommand("recover", "recovery round-trips");
  recover->add_option("--ell", ell, "window length (power of two >= 16)");
  recover->add_option("--trials", trials, "number of round-trips")
      ->capture_default_str();
  recover->add_option("--seed", seed, "root seed");
  recover->add_option("--out", out, "report path (default stdout)");

  auto* verify = app.add_subcommand("verify", "full pipeline verification");
  verify->add_option("--n", n, "stream length (power of two >= 65536)");
  verify->add_option("--seed", seed, "root seed");
  verify->add_option("--mode", mode, "conv, l2 or both")->capture_default_str();
  verify->add_option("--out", out, "report path (default stdout)");

  auto* search = app.add_subcommand("toeplitz-search", "entropy search");
  search->set_help_flag("--help", "print help");  // frees -h for --h
  search->add_option("--h", h, "matrix height");
  search->add_option("--width", width, "matrix width");
  search->add_option("--strategy", strategy, "exhaustive, random or greedy")
      ->capture_default_str();
  search->add_option("--budget", budget, "entropy evaluations (0 = default)");
  search->add_option("--seed", seed, "root seed");
  search->add_option("--format", format, "csv or json")->capture_default_str();
  search->add_option("--out", out, "output path (default stdout)");

  auto* geo = app.add_subcommand("geometry-check", "interval arithmetic checks");
  geo->add_option("--n", n, "stream length (power of two >= 65536)");
  geo->add_option("--out", out, "report path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_instance(n, seed, mode, out);
    if (stream->parsed())
      return cmd_stream(instance_path, mode, repeats, check_stride, out);
    if (recover->parsed()) return cmd_recover(ell, trials, seed, out);
    if (verify->parsed()) return cmd_verify(n, seed, mode, out);
    if (search->parsed())
      return cmd_toeplitz_search(h, width, strategy, budget, seed, format, out);
    if (geo->parsed()) return cmd_geometry_check(n, out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "config error: malformed JSON: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return kExitInvariantFailure;
  }
  return kExitConfigError;
}
