#include "swapnet/protocol.hpp"

#include <cmath>

#include <json.hpp>

namespace swapnet {

namespace {

int idx(int x, int y, int z, int a, int b, int c) {
  return ((((x * 4 + y) * 6 + z) * 2 + a) * 2 + b) * 2 + c;
}

Mat bell_proj(int k) {
  Vec v = bell_ket(k);
  return v * v.adjoint();
}

void check_visibility(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::invalid_argument(std::string(name) + " must be in [0,1]");
}

}  // namespace

std::string to_string(MixtureModel m) {
  return m == MixtureModel::Subspace ? "subspace" : "depolarizing";
}

DensityMatrix epr_state(double v_source) {
  check_visibility(v_source, "source visibility");
  return DensityMatrix(v_source * bell_proj(0) +
                       (1.0 - v_source) * identity(4) / 4.0);
}

Mat bob_effect(int y, double v_interference, MixtureModel model) {
  check_visibility(v_interference, "interference visibility");
  if (y < 0 || y > 3) throw std::out_of_range("bob_effect: y must be 0..3");
  Mat target = bell_proj(y);
  if (model == MixtureModel::Depolarizing)
    return v_interference * target + (1.0 - v_interference) * identity(4) / 4.0;
  // Interference sector: {Phi+, Phi-} for y = 0,1 and {Psi-, Psi+} for y = 2,3.
  Mat sector = (y < 2) ? (bell_proj(0) + bell_proj(1)) / 2.0
                       : (bell_proj(2) + bell_proj(3)) / 2.0;
  return v_interference * target + (1.0 - v_interference) * sector;
}

Scenario Scenario::ideal() { return with_noise(NoiseParams{}); }

Scenario Scenario::with_noise(const NoiseParams& noise) {
  const double isq = 1.0 / std::sqrt(2.0);
  Scenario s;
  s.alice = {pauli_x(), pauli_y(), pauli_z()};
  s.charlie = {(pauli_x() + pauli_y()) * isq, (pauli_x() - pauli_y()) * isq,
               (pauli_y() + pauli_z()) * isq, (pauli_y() - pauli_z()) * isq,
               (pauli_x() + pauli_z()) * isq, (pauli_x() - pauli_z()) * isq};
  for (int y = 0; y < 4; ++y)
    s.bob_plus[y] = bob_effect(y, noise.v_interference, noise.model);
  return s;
}

double& ProbabilityTable::at(int x, int y, int z, int a, int b, int c) {
  return values_[idx(x, y, z, a, b, c)];
}

double ProbabilityTable::at(int x, int y, int z, int a, int b, int c) const {
  return values_[idx(x, y, z, a, b, c)];
}

double ProbabilityTable::normalization_error() const {
  double worst = 0.0;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 6; ++z) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) s += at(x, y, z, a, b, c);
        worst = std::max(worst, std::abs(s - 1.0));
      }
  return worst;
}

double ProbabilityTable::no_signaling_error() const {
  double worst = 0.0;
  // Alice's marginal must not depend on (y, z); likewise for the others.
  for (int x = 0; x < 3; ++x)
    for (int a = 0; a < 2; ++a) {
      double ref = 0.0;
      bool first = true;
      for (int y = 0; y < 4; ++y)
        for (int z = 0; z < 6; ++z) {
          double m = 0.0;
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) m += at(x, y, z, a, b, c);
          if (first) {
            ref = m;
            first = false;
          }
          worst = std::max(worst, std::abs(m - ref));
        }
    }
  for (int y = 0; y < 4; ++y)
    for (int b = 0; b < 2; ++b) {
      double ref = 0.0;
      bool first = true;
      for (int x = 0; x < 3; ++x)
        for (int z = 0; z < 6; ++z) {
          double m = 0.0;
          for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c) m += at(x, y, z, a, b, c);
          if (first) {
            ref = m;
            first = false;
          }
          worst = std::max(worst, std::abs(m - ref));
        }
    }
  for (int z = 0; z < 6; ++z)
    for (int c = 0; c < 2; ++c) {
      double ref = 0.0;
      bool first = true;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 4; ++y) {
          double m = 0.0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) m += at(x, y, z, a, b, c);
          if (first) {
            ref = m;
            first = false;
          }
          worst = std::max(worst, std::abs(m - ref));
        }
    }
  return worst;
}

double ProbabilityTable::p_b_plus(int y) const {
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) s += at(0, y, 0, a, 0, c);
  return s;
}

std::string ProbabilityTable::to_json() const {
  nlohmann::json jx = nlohmann::json::array();
  for (int x = 0; x < 3; ++x) {
    nlohmann::json jy = nlohmann::json::array();
    for (int y = 0; y < 4; ++y) {
      nlohmann::json jz = nlohmann::json::array();
      for (int z = 0; z < 6; ++z) {
        nlohmann::json ja = nlohmann::json::array();
        for (int a = 0; a < 2; ++a) {
          nlohmann::json jb = nlohmann::json::array();
          for (int b = 0; b < 2; ++b) {
            nlohmann::json jc = nlohmann::json::array();
            for (int c = 0; c < 2; ++c) jc.push_back(at(x, y, z, a, b, c));
            jb.push_back(jc);
          }
          ja.push_back(jb);
        }
        jz.push_back(ja);
      }
      jy.push_back(jz);
    }
    jx.push_back(jy);
  }
  return jx.dump();
}

ProbabilityTable ProbabilityTable::from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  ProbabilityTable t;
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 4; ++y)
      for (int z = 0; z < 6; ++z)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
              t.at(x, y, z, a, b, c) = j.at(x).at(y).at(z).at(a).at(b).at(c);
  return t;
}

ConditionalState conditional_state(int y, int b_plus, const NoiseParams& noise) {
  Mat rho = epr_state(noise.v_source).mat;
  Mat pair = kron(rho, rho);  // ordering A, B, B', C
  Mat effect = bob_effect(y, noise.v_interference, noise.model);
  if (!b_plus) effect = identity(4) - effect;
  Mat unnorm =
      partial_trace(Mat(pair * kron(identity(2), kron(effect, identity(2)))),
                    {2, 2, 2, 2}, {0, 3});
  double weight = unnorm.trace().real();
  Mat normalized = (unnorm + unnorm.adjoint()) / (2.0 * weight);
  return {DensityMatrix(normalized), weight};
}

ProbabilityTable probability_table(const Scenario& s, const NoiseParams& noise) {
  Mat rho = epr_state(noise.v_source).mat;
  Mat pair = kron(rho, rho);

  ProbabilityTable t;
  for (int y = 0; y < 4; ++y)
    for (int b = 0; b < 2; ++b) {
      Mat effect = s.bob_plus[y];
      if (b == 1) effect = identity(4) - effect;
      Mat cond =
          partial_trace(Mat(pair * kron(identity(2), kron(effect, identity(2)))),
                        {2, 2, 2, 2}, {0, 3});
      for (int x = 0; x < 3; ++x)
        for (int a = 0; a < 2; ++a) {
          Mat ea = (identity(2) + (a == 0 ? 1.0 : -1.0) * s.alice[x]) / 2.0;
          for (int z = 0; z < 6; ++z)
            for (int c = 0; c < 2; ++c) {
              Mat gc = (identity(2) + (c == 0 ? 1.0 : -1.0) * s.charlie[z]) / 2.0;
              t.at(x, y, z, a, b, c) = (cond * kron(ea, gc)).trace().real();
            }
        }
    }
  return t;
}

double s_value(const ProbabilityTable& p, int x, int z, int y) {
  if (x < 1 || x > 3 || z < 1 || z > 6 || y < 0 || y > 3)
    throw std::out_of_range("s_value: index out of range");
  double s = 0.0;
  for (int a = 0; a < 2; ++a)
    for (int c = 0; c < 2; ++c) {
      double sign = ((a == 0) == (c == 0)) ? 1.0 : -1.0;
      s += sign * p.at(x - 1, y, z - 1, a, 0, c);
    }
  return s;
}

std::array<STerm, 12> t_terms(int y) {
  const int y1 = y & 1;
  const int y2 = (y >> 1) & 1;
  const double s12 = ((y1 + y2) % 2 == 0) ? 1.0 : -1.0;  // (-1)^(y1+y2)
  const double s1 = (y1 == 0) ? 1.0 : -1.0;              // (-1)^y1
  const double s2 = (y2 == 0) ? 1.0 : -1.0;              // (-1)^y2
  return {{{1, 1, s12},
           {1, 2, s12},
           {2, 1, -s1},
           {2, 2, s1},
           {1, 5, s12},
           {1, 6, s12},
           {3, 5, s2},
           {3, 6, -s2},
           {2, 3, -s1},
           {2, 4, -s1},
           {3, 3, s2},
           {3, 4, -s2}}};
}

double t_value(const ProbabilityTable& p, int y) {
  double t = 0.0;
  for (const auto& term : t_terms(y))
    t += term.coef * s_value(p, term.x, term.z, y);
  return t;
}

double w_value(const ProbabilityTable& p) {
  double t_sum = 0.0, p_sum = 0.0;
  for (int y = 0; y < 4; ++y) {
    t_sum += t_value(p, y);
    p_sum += p.p_b_plus(y);
  }
  return t_sum / 5.0 - 4.0 * p_sum / 5.0;
}

double w_depolarizing_closed_form(double v_source, double v_interference) {
  return v_source * v_source * v_interference * 6.0 * std::sqrt(2.0) / 5.0 -
         4.0 / 5.0;
}

double w_subspace_closed_form(double v_source, double v_interference) {
  return 4.0 * v_source * v_source * (2.0 * v_interference + 1.0) /
             (5.0 * std::sqrt(2.0)) -
         4.0 / 5.0;
}

}  // namespace swapnet
