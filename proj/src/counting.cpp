#include "swapnet/counting.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "swapnet/version.hpp"

namespace swapnet {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::int64_t poisson(double mean, std::mt19937_64& rng) {
  if (mean < 0) throw std::invalid_argument("poisson: negative mean");
  if (mean > 9e15) throw std::overflow_error("poisson: mean too large");
  if (mean == 0) return 0;
  std::poisson_distribution<std::int64_t> d(mean);
  return d(rng);
}

int group_index(const Setting& s) { return (s.x * 6 + s.z) * 4 + s.y; }

}  // namespace

void ExperimentConfig::validate() const {
  auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!(trigger_rate_hz > 0) || !(collect_seconds > 0))
    throw std::invalid_argument("rates and durations must be positive");
  if (!prob(pair_prob) || !prob(eta_a) || !prob(eta_b1) || !prob(eta_b2) ||
      !prob(eta_c))
    throw std::invalid_argument("probabilities must be in [0,1]");
  if (num_cycles <= 0) throw std::invalid_argument("num_cycles must be positive");
  if (bootstrap_resamples < 0)
    throw std::invalid_argument("bootstrap_resamples must be nonnegative");
  if (!prob(noise.v_source) || !prob(noise.v_interference))
    throw std::invalid_argument("visibilities must be in [0,1]");
}

std::string ExperimentConfig::to_json() const {
  nlohmann::json j;
  j["trigger_rate_hz"] = trigger_rate_hz;
  j["pair_prob"] = pair_prob;
  j["eta_a"] = eta_a;
  j["eta_b1"] = eta_b1;
  j["eta_b2"] = eta_b2;
  j["eta_c"] = eta_c;
  j["collect_seconds"] = collect_seconds;
  j["num_cycles"] = num_cycles;
  j["noise"] = {{"v_source", noise.v_source},
                {"v_interference", noise.v_interference},
                {"model", to_string(noise.model)}};
  j["seed"] = seed;
  j["bootstrap_resamples"] = bootstrap_resamples;
  j["record_cycles"] = record_cycles;
  return j.dump(2);
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  ExperimentConfig c;
  c.trigger_rate_hz = j.value("trigger_rate_hz", c.trigger_rate_hz);
  c.pair_prob = j.value("pair_prob", c.pair_prob);
  c.eta_a = j.value("eta_a", c.eta_a);
  c.eta_b1 = j.value("eta_b1", c.eta_b1);
  c.eta_b2 = j.value("eta_b2", c.eta_b2);
  c.eta_c = j.value("eta_c", c.eta_c);
  c.collect_seconds = j.value("collect_seconds", c.collect_seconds);
  c.num_cycles = j.value("num_cycles", c.num_cycles);
  if (j.contains("noise")) {
    const auto& n = j["noise"];
    c.noise.v_source = n.value("v_source", 1.0);
    c.noise.v_interference = n.value("v_interference", 1.0);
    std::string m = n.value("model", "subspace");
    if (m == "subspace")
      c.noise.model = MixtureModel::Subspace;
    else if (m == "depolarizing")
      c.noise.model = MixtureModel::Depolarizing;
    else
      throw std::invalid_argument("unknown mixture model: " + m);
  }
  c.seed = j.value("seed", c.seed);
  c.bootstrap_resamples = j.value("bootstrap_resamples", c.bootstrap_resamples);
  c.record_cycles = j.value("record_cycles", c.record_cycles);
  return c;
}

double calibrate_uniform_eta(double target_fourfolds, double trigger_rate_hz,
                             double pair_prob, double collect_seconds) {
  double r = trigger_rate_hz * collect_seconds;
  double g = pair_prob;
  return std::pow(target_fourfolds / (r * g * g), 0.25);
}

std::mt19937_64 cycle_rng(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) ^ stream));
}

namespace {

struct CycleMeans {
  double n_a, n_c, n_ab, n_bc, n_ac;
  double n4[2][2];
  double n4_minus;
};

CycleMeans cycle_means(const ExperimentConfig& cfg, const Setting& s,
                       const ProbabilityTable& table) {
  const double r = cfg.triggers_per_cycle();
  const double g = cfg.pair_prob;
  CycleMeans m;
  m.n_a = r * g * cfg.eta_a;
  m.n_c = r * g * cfg.eta_c;
  m.n_ab = r * g * cfg.eta_a * cfg.eta_b1;
  m.n_bc = r * g * cfg.eta_c * cfg.eta_b2;
  m.n_ac = r * g * g * cfg.eta_a * cfg.eta_c;
  const double four = r * g * g * cfg.eta_a * cfg.eta_b1 * cfg.eta_b2 * cfg.eta_c;
  double pb_minus = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) {
      m.n4[a][c] = four * table.at(s.x, s.y, s.z, a, 0, c);
      pb_minus += table.at(s.x, s.y, s.z, a, 1, c);
    }
  m.n4_minus = four * pb_minus;
  return m;
}

}  // namespace

CountsRecord expected_counts(const ExperimentConfig& cfg, const Setting& s,
                             const ProbabilityTable& table) {
  CycleMeans m = cycle_means(cfg, s, table);
  CountsRecord rec;
  rec.setting = s;
  rec.n_a = std::llround(m.n_a);
  rec.n_c = std::llround(m.n_c);
  rec.n_ab = std::llround(m.n_ab);
  rec.n_bc = std::llround(m.n_bc);
  rec.n_ac = std::llround(m.n_ac);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) rec.n4[a][c] = std::llround(1e9 * m.n4[a][c]);
  rec.n4_minus = std::llround(1e9 * m.n4_minus);
  return rec;
}

CountsRecord simulate_cycle(const ExperimentConfig& cfg, const Setting& s,
                            const ProbabilityTable& table, std::mt19937_64& rng) {
  CycleMeans m = cycle_means(cfg, s, table);
  CountsRecord rec;
  rec.setting = s;
  rec.n_a = poisson(m.n_a, rng);
  rec.n_c = poisson(m.n_c, rng);
  rec.n_ab = poisson(m.n_ab, rng);
  rec.n_bc = poisson(m.n_bc, rng);
  rec.n_ac = poisson(m.n_ac, rng);
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) rec.n4[a][c] = poisson(m.n4[a][c], rng);
  rec.n4_minus = poisson(m.n4_minus, rng);
  // four-folds are subsets of the two-fold classes
  rec.n_ab = std::max(rec.n_ab, rec.n4_total());
  rec.n_bc = std::max(rec.n_bc, rec.n4_total());
  return rec;
}

std::optional<double> estimate_pb(const CountsRecord& rec) {
  if (rec.n_ac == 0 || rec.n_ab == 0 || rec.n_bc == 0) return std::nullopt;
  double num = static_cast<double>(rec.n4_plus_total()) *
               static_cast<double>(rec.n_a) * static_cast<double>(rec.n_c);
  double den = static_cast<double>(rec.n_ac) * static_cast<double>(rec.n_ab) *
               static_cast<double>(rec.n_bc);
  return num / den;
}

std::optional<double> estimate_s(const std::vector<const CountsRecord*>& group,
                                 double pb_hat) {
  std::int64_t npp = 0, npm = 0, nmp = 0, nmm = 0;
  for (const auto* r : group) {
    npp += r->n4[0][0];
    npm += r->n4[0][1];
    nmp += r->n4[1][0];
    nmm += r->n4[1][1];
  }
  std::int64_t total = npp + npm + nmp + nmm;
  if (total == 0) return std::nullopt;
  double corr = static_cast<double>(npp - npm - nmp + nmm) /
                static_cast<double>(total);
  return pb_hat * corr;
}

WEstimate aggregate(const std::vector<CountsRecord>& cycles) {
  WEstimate est;

  std::array<double, 4> pb_sum{};
  std::array<int, 4> pb_count{};
  std::array<std::vector<const CountsRecord*>, 72> groups;
  for (const auto& rec : cycles) {
    est.fourfold_events += rec.n4_total();
    est.fourfold_plus_events += rec.n4_plus_total();
    auto pb = estimate_pb(rec);
    if (pb) {
      pb_sum[rec.setting.y] += *pb;
      pb_count[rec.setting.y] += 1;
    } else {
      est.degenerate_cycles += 1;
    }
    groups[group_index(rec.setting)].push_back(&rec);
  }

  for (int y = 0; y < 4; ++y) {
    est.pb[y] = pb_count[y] > 0 ? pb_sum[y] / pb_count[y] : 0.0;
    est.sum_pb += est.pb[y];
  }

  double t_sum = 0.0;
  for (int y = 0; y < 4; ++y) {
    for (const auto& term : t_terms(y)) {
      int g = ((term.x - 1) * 6 + (term.z - 1)) * 4 + y;
      auto s = estimate_s(groups[g], est.pb[y]);
      if (s) t_sum += term.coef * *s;
    }
  }
  for (int x = 0; x < 3; ++x)
    for (int z = 0; z < 6; ++z)
      for (int y = 0; y < 4; ++y) {
        int g = (x * 6 + z) * 4 + y;
        int out = (x * 6 + z) * 4 + y;
        auto s = estimate_s(groups[g], est.pb[y]);
        est.s_defined[out] = s.has_value();
        est.s_values[out] = s.value_or(0.0);
        if (!s) est.empty_groups += 1;
      }

  est.w = t_sum / 5.0 - 4.0 * est.sum_pb / 5.0;
  return est;
}

RunResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ProbabilityTable table =
      probability_table(Scenario::with_noise(cfg.noise), cfg.noise);

  std::vector<CountsRecord> cycles;
  cycles.reserve(cfg.num_cycles);
  for (int i = 0; i < cfg.num_cycles; ++i) {
    auto rng = cycle_rng(cfg.seed, static_cast<std::uint64_t>(i));
    Setting s;
    s.x = static_cast<int>(rng() % 3);
    s.y = static_cast<int>(rng() % 4);
    s.z = static_cast<int>(rng() % 6);
    cycles.push_back(simulate_cycle(cfg, s, table, rng));
  }

  RunResult result;
  result.config = cfg;
  result.estimate = aggregate(cycles);

  if (cfg.bootstrap_resamples > 0) {
    std::vector<double> ws;
    ws.reserve(cfg.bootstrap_resamples);
    std::vector<CountsRecord> sample(cycles.size());
    for (int r = 0; r < cfg.bootstrap_resamples; ++r) {
      auto rng = cycle_rng(cfg.seed, 0x8000000000000000ULL + r);
      for (size_t i = 0; i < cycles.size(); ++i)
        sample[i] = cycles[rng() % cycles.size()];
      ws.push_back(aggregate(sample).w);
    }
    double mean = std::accumulate(ws.begin(), ws.end(), 0.0) / ws.size();
    double var = 0.0;
    for (double w : ws) var += (w - mean) * (w - mean);
    result.estimate.sigma =
        ws.size() > 1 ? std::sqrt(var / (ws.size() - 1)) : 0.0;
  }

  if (cfg.record_cycles) result.cycles = cycles;
  return result;
}

std::string RunResult::to_json() const {
  nlohmann::json j;
  j["version"] = kVersion;
  j["config"] = nlohmann::json::parse(config.to_json());
  j["w"] = estimate.w;
  j["sigma"] = estimate.sigma;
  j["sum_pb"] = estimate.sum_pb;
  j["pb"] = estimate.pb;
  j["fourfold_events"] = estimate.fourfold_events;
  j["fourfold_plus_events"] = estimate.fourfold_plus_events;
  j["degenerate_cycles"] = estimate.degenerate_cycles;
  j["empty_groups"] = estimate.empty_groups;
  nlohmann::json s = nlohmann::json::array();
  for (int x = 1; x <= 3; ++x)
    for (int z = 1; z <= 6; ++z)
      for (int y = 0; y < 4; ++y) {
        int i = ((x - 1) * 6 + (z - 1)) * 4 + y;
        s.push_back({{"x", x},
                     {"z", z},
                     {"y", y},
                     {"s", estimate.s_values[i]},
                     {"defined", estimate.s_defined[i]}});
      }
  j["s_table"] = s;
  if (!cycles.empty()) {
    nlohmann::json jc = nlohmann::json::array();
    for (const auto& r : cycles) {
      jc.push_back({{"x", r.setting.x},
                    {"y", r.setting.y},
                    {"z", r.setting.z},
                    {"n_a", r.n_a},
                    {"n_c", r.n_c},
                    {"n_ab", r.n_ab},
                    {"n_bc", r.n_bc},
                    {"n_ac", r.n_ac},
                    {"n4", {r.n4[0][0], r.n4[0][1], r.n4[1][0], r.n4[1][1]}},
                    {"n4_minus", r.n4_minus}});
    }
    j["cycles"] = jc;
  }
  return j.dump(2);
}

std::string RunResult::s_table_csv() const {
  std::ostringstream out;
  out << "x,z,y,s,defined\n";
  for (int x = 1; x <= 3; ++x)
    for (int z = 1; z <= 6; ++z)
      for (int y = 0; y < 4; ++y) {
        int i = ((x - 1) * 6 + (z - 1)) * 4 + y;
        out << x << ',' << z << ',' << y << ',' << estimate.s_values[i] << ','
            << (estimate.s_defined[i] ? 1 : 0) << '\n';
      }
  return out.str();
}

}  // namespace swapnet
