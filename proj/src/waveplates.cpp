#include "swapnet/waveplates.hpp"

#include <cmath>

namespace swapnet {

namespace {

constexpr double kDeg = M_PI / 180.0;

Mat rot(double t) {
  Mat r(2, 2);
  r << std::cos(t), -std::sin(t), std::sin(t), std::cos(t);
  return r;
}

Mat qwp_with_retardance(double angle_deg, Complex phase) {
  double t = angle_deg * kDeg;
  Mat d = Mat::Zero(2, 2);
  d(0, 0) = 1;
  d(1, 1) = phase;
  return rot(t) * d * rot(-t);
}

// x -> (Q1, H1); z -> (H4, H5); y -> (H2, H3). Angles in degrees.
constexpr double kAliceQ[3] = {45, 45, 0};
constexpr double kAliceH[3] = {22.5, 0, 0};
constexpr double kCharlieH4[6] = {11.25, 33.75, 22.5, 22.5, 0, 0};
constexpr double kCharlieH5[6] = {22.5, 22.5, 11.25, 33.75, 33.75, 11.25};
constexpr double kCharlieQ[6] = {45, 45, 0, 0, 22.5, 67.5};
constexpr double kBobH2[4] = {0, 0, 45, 45};
constexpr double kBobH3[4] = {22.5, 67.5, 22.5, 67.5};

// Outcome-sign freedoms of the realized observables vs the published ones.
constexpr int kAliceSign[3] = {+1, +1, +1};
constexpr int kCharlieSign[6] = {-1, +1, +1, -1, -1, -1};

}  // namespace

Mat jones_matrix(const WavePlateSetting& w) {
  double t = w.angle_deg * kDeg;
  if (w.kind == WavePlateSetting::Kind::HalfWave) {
    Mat m(2, 2);
    m << std::cos(2 * t), std::sin(2 * t), std::sin(2 * t), -std::cos(2 * t);
    return m;
  }
  return qwp_with_retardance(w.angle_deg, Complex(0, 1));
}

Mat jones_qwp_conjugate(double angle_deg) {
  return qwp_with_retardance(angle_deg, Complex(0, -1));
}

Observable observable_from_waveplates(const std::vector<WavePlateSetting>& plates) {
  if (plates.empty())
    throw std::invalid_argument("observable_from_waveplates: empty chain");
  Mat u = identity(2);
  for (const auto& p : plates) u = jones_matrix(p) * u;
  return Observable(u.adjoint() * pauli_z() * u);
}

WavePlateSetting alice_qwp(int x) {
  return {WavePlateSetting::Kind::QuarterWave, kAliceQ[x]};
}

WavePlateSetting alice_hwp(int x) {
  return {WavePlateSetting::Kind::HalfWave, kAliceH[x]};
}

Observable alice_observable(int x) {
  return observable_from_waveplates({alice_qwp(x), alice_hwp(x)});
}

WavePlateSetting charlie_h4(int z) {
  return {WavePlateSetting::Kind::HalfWave, kCharlieH4[z]};
}

WavePlateSetting charlie_h5(int z) {
  return {WavePlateSetting::Kind::HalfWave, kCharlieH5[z]};
}

double charlie_station_qwp_deg(int z) { return kCharlieQ[z]; }

Observable charlie_observable(int z) {
  Mat u = jones_qwp_conjugate(kCharlieQ[z]);
  u = jones_matrix(charlie_h4(z)) * u;
  u = jones_matrix(charlie_h5(z)) * u;
  return Observable(u.adjoint() * pauli_z() * u);
}

double bell_analyzer_h2(int y) { return kBobH2[y]; }
double bell_analyzer_h3(int y) { return kBobH3[y]; }

Mat bell_analyzer_effect(int y) {
  Mat h2 = jones_matrix({WavePlateSetting::Kind::HalfWave, kBobH2[y]});
  Mat h0 = jones_matrix({WavePlateSetting::Kind::HalfWave, 0});
  Mat v = h2 * h0;  // calibrated: the station zero acts as identity
  Mat h3 = jones_matrix({WavePlateSetting::Kind::HalfWave, kBobH3[y]});
  Mat mu = h3.adjoint() * pauli_z() * h3;

  Mat p_phi = Mat::Zero(4, 4);
  p_phi(0, 0) = 1;
  p_phi(3, 3) = 1;
  Mat parity = (identity(4) + kron(mu, pauli_x())) / 2.0;
  Mat v1 = kron(v, identity(2));
  return v1.adjoint() * p_phi * parity * p_phi * v1;
}

std::vector<StationRow> verify_waveplate_tables() {
  std::vector<StationRow> rows;
  const double isq = 1.0 / std::sqrt(2.0);

  for (int y = 0; y < 4; ++y) {
    Mat target = bell_ket(y) * bell_ket(y).adjoint();
    Mat got = bell_analyzer_effect(y);
    rows.push_back({"bell-analyzer y=" + std::to_string(y), got, target, +1,
                    max_abs(got - target)});
  }

  const Mat alice_targets[3] = {pauli_x(), pauli_y(), pauli_z()};
  for (int x = 0; x < 3; ++x) {
    Mat got = alice_observable(x).mat;
    Mat t = static_cast<double>(kAliceSign[x]) * alice_targets[x];
    rows.push_back({"alice x=" + std::to_string(x), got, alice_targets[x],
                    kAliceSign[x], max_abs(got - t)});
  }

  const Mat charlie_targets[6] = {
      (pauli_x() + pauli_y()) * isq, (pauli_x() - pauli_y()) * isq,
      (pauli_y() + pauli_z()) * isq, (pauli_y() - pauli_z()) * isq,
      (pauli_x() + pauli_z()) * isq, (pauli_x() - pauli_z()) * isq};
  for (int z = 0; z < 6; ++z) {
    Mat got = charlie_observable(z).mat;
    Mat t = static_cast<double>(kCharlieSign[z]) * charlie_targets[z];
    rows.push_back({"charlie z=" + std::to_string(z), got, charlie_targets[z],
                    kCharlieSign[z], max_abs(got - t)});
  }
  return rows;
}

}  // namespace swapnet
