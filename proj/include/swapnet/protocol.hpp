#pragma once

#include <array>
#include <string>

#include "swapnet/linalg.hpp"

namespace swapnet {

// Three-party entanglement-swapping protocol: settings x in 0..2,
// y in 0..3, z in 0..5, outcomes a,b,c in {+1,-1} (stored index 0 = +1).

enum class MixtureModel { Subspace, Depolarizing };

struct NoiseParams {
  double v_source = 1.0;       // source visibility
  double v_interference = 1.0; // two-photon interference visibility
  MixtureModel model = MixtureModel::Subspace;
};

std::string to_string(MixtureModel m);

/// Source state v |Phi+><Phi+| + (1-v) I/4.
DensityMatrix epr_state(double v_source);

/// Central node's b=+1 effect for setting y. The subspace model mixes the
/// target Bell projector with the uniform mixture on its two-dimensional
/// interference sector; the depolarizing model mixes with I/4 instead.
Mat bob_effect(int y, double v_interference, MixtureModel model);

struct Scenario {
  std::array<Mat, 3> alice;           // dichotomic observables
  std::array<Mat, 6> charlie;
  std::array<Mat, 4> bob_plus;        // b=+1 effects on the middle qubits

  static Scenario ideal();
  static Scenario with_noise(const NoiseParams& noise);
};

/// Full conditional distribution p(a,b,c|x,y,z).
class ProbabilityTable {
 public:
  double& at(int x, int y, int z, int a, int b, int c);
  double at(int x, int y, int z, int a, int b, int c) const;

  /// Largest deviation from sum-to-one over all (x,y,z).
  double normalization_error() const;
  /// Largest no-signaling violation over single-party marginals.
  double no_signaling_error() const;

  double p_b_plus(int y) const;  // p(b=+1|y), x=z=0 slice

  std::string to_json() const;
  static ProbabilityTable from_json(const std::string& text);

 private:
  std::array<double, 3 * 4 * 6 * 2 * 2 * 2> values_{};
};

/// Normalized conditional state of the outer parties given (y, b),
/// plus its weight p(b|y).
struct ConditionalState {
  DensityMatrix state;
  double weight;
};
ConditionalState conditional_state(int y, int b_plus, const NoiseParams& noise);

ProbabilityTable probability_table(const Scenario& s, const NoiseParams& noise);

/// S_{xzy} = sum_{a,c} ac p(a, b=+1, c | x,y,z); x in 1..3, z in 1..6
/// (the printed 1-based labels; settings are stored 0-based).
double s_value(const ProbabilityTable& p, int x, int z, int y);

/// Signed combination of twelve S values for setting y; the sign table is
/// generated from the printed formula with y = y2 y1 in binary.
struct STerm {
  int x;  // 1..3
  int z;  // 1..6
  double coef;
};
std::array<STerm, 12> t_terms(int y);
double t_value(const ProbabilityTable& p, int y);

/// W = (1/5) sum_y T_y - (4/5) sum_y p(b=+1|y).
double w_value(const ProbabilityTable& p);

/// Closed forms for the noisy W under each mixture model (used as an
/// independent oracle against the table computation).
double w_depolarizing_closed_form(double v_source, double v_interference);
double w_subspace_closed_form(double v_source, double v_interference);

}  // namespace swapnet
