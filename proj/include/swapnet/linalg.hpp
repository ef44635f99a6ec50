#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace swapnet {

using Complex = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

// Tolerances for exact algebraic identities vs eigenvalue positivity.
constexpr double kHermTol = 1e-12;
constexpr double kPsdTol = 1e-10;

const Mat& pauli_x();
const Mat& pauli_y();
const Mat& pauli_z();
Mat identity(int dim);

/// Kronecker product; dims multiply.
Mat kron(const Mat& a, const Mat& b);
RMat kron(const RMat& a, const RMat& b);

/// Trace out the subsystems not listed in `keep` (indices into `dims`).
/// The product of `dims` must equal the side of `rho`; trace is preserved.
Mat partial_trace(const Mat& rho, const std::vector<int>& dims,
                  const std::vector<int>& keep);
RMat partial_trace(const RMat& rho, const std::vector<int>& dims,
                   const std::vector<int>& keep);

double max_abs(const Mat& m);
bool is_hermitian(const Mat& m, double tol = kHermTol);
double min_eigenvalue(const Mat& hermitian);
double min_eigenvalue(const RMat& symmetric);

/// Hermitian, unit-trace, PSD complex matrix on one or more qubits.
struct DensityMatrix {
  Mat mat;

  explicit DensityMatrix(Mat m);
  int dim() const { return static_cast<int>(mat.rows()); }

  static DensityMatrix pure(const Vec& psi);
};

/// Dichotomic observable: Hermitian with A^2 = I.
struct Observable {
  Mat mat;

  explicit Observable(Mat m);
  int dim() const { return static_cast<int>(mat.rows()); }
};

/// Bell kets, ordered (Phi+, Phi-, Psi-, Psi+) to match the central
/// node's setting labels y = 0..3.
Vec bell_ket(int k);
DensityMatrix bell_state(int k);

/// Uhlmann fidelity, squared-overlap convention: F(|u><u|, rho) = <u|rho|u>.
double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace swapnet
