#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "swapnet/protocol.hpp"

namespace swapnet {

struct Setting {
  int x = 0;
  int y = 0;
  int z = 0;
};

struct ExperimentConfig {
  double trigger_rate_hz = 250e6;
  double pair_prob = 0.0025;       // per trigger, per source
  double eta_a = 0.0794;
  double eta_b1 = 0.0794;
  double eta_b2 = 0.0794;
  double eta_c = 0.0794;
  double collect_seconds = 20.0;
  int num_cycles = 21742;
  NoiseParams noise;
  std::uint64_t seed = 1;
  int bootstrap_resamples = 1000;
  bool record_cycles = false;

  double triggers_per_cycle() const { return trigger_rate_hz * collect_seconds; }
  void validate() const;

  std::string to_json() const;
  static ExperimentConfig from_json(const std::string& text);
};

/// Uniform detection probability giving `target` four-fold coincidences per
/// cycle (counting both central-node outcomes): solves R g^2 eta^4 = target.
double calibrate_uniform_eta(double target_fourfolds, double trigger_rate_hz,
                             double pair_prob, double collect_seconds);

/// Per-cycle counts. n4[a][c] are the four-fold events with b=+1; n4_minus
/// lumps the b=-1 four-folds, so n4_total = sum(n4) + n4_minus.
struct CountsRecord {
  Setting setting;
  std::int64_t n_a = 0, n_c = 0;
  std::int64_t n_ab = 0, n_bc = 0, n_ac = 0;
  std::array<std::array<std::int64_t, 2>, 2> n4{};
  std::int64_t n4_minus = 0;

  std::int64_t n4_plus_total() const {
    return n4[0][0] + n4[0][1] + n4[1][0] + n4[1][1];
  }
  std::int64_t n4_total() const { return n4_plus_total() + n4_minus; }
};

/// Exact per-cycle count expectations (sampling disabled). The estimators
/// reproduce the exact protocol values when fed these.
struct MeanCounts {
  Setting setting;
  double n_a = 0, n_c = 0;
  double n_ab = 0, n_bc = 0, n_ac = 0;
  std::array<std::array<double, 2>, 2> n4{};
  double n4_minus = 0;
};

MeanCounts expected_counts(const ExperimentConfig& cfg, const Setting& s,
                           const ProbabilityTable& table);

std::optional<double> estimate_pb(const MeanCounts& rec);
std::optional<double> estimate_s(const MeanCounts& rec, double pb_hat);

/// One collection cycle; deterministic given (cfg.seed, cycle_index).
CountsRecord simulate_cycle(const ExperimentConfig& cfg, const Setting& s,
                            const ProbabilityTable& table, std::mt19937_64& rng);

std::mt19937_64 cycle_rng(std::uint64_t seed, std::uint64_t stream);

/// p(b=+1|y) estimator N4(b=+1) * N_A * N_C / (N_AC * N_AB * N_BC).
/// Empty when a denominator count is zero (degenerate cycle).
std::optional<double> estimate_pb(const CountsRecord& rec);

/// Conditional correlator rescaled by the estimated success probability:
/// S = pb_hat * (n++ - n+- - n-+ + n--) / n4_plus_total, pooled over records.
std::optional<double> estimate_s(const std::vector<const CountsRecord*>& group,
                                 double pb_hat);

struct WEstimate {
  double w = 0.0;
  double sigma = 0.0;
  std::array<double, 72> s_values{};  // (x,z,y) lexicographic
  std::array<bool, 72> s_defined{};
  std::array<double, 4> pb{};
  double sum_pb = 0.0;
  std::int64_t fourfold_events = 0;  // both outcomes
  std::int64_t fourfold_plus_events = 0;
  int degenerate_cycles = 0;
  int empty_groups = 0;
};

struct RunResult {
  WEstimate estimate;
  ExperimentConfig config;
  std::vector<CountsRecord> cycles;  // populated when record_cycles

  std::string to_json() const;
  std::string s_table_csv() const;  // 72 rows, (x,z,y) lexicographic
};

RunResult run_experiment(const ExperimentConfig& cfg);

/// Estimate recomputed from an arbitrary multiset of cycles (bootstrap core).
WEstimate aggregate(const std::vector<CountsRecord>& cycles);

}  // namespace swapnet
