#include "swapnet/linalg.hpp"

#include <Eigen/Eigenvalues>

namespace swapnet {

const Mat& pauli_x() {
  static const Mat m = (Mat(2, 2) << 0, 1, 1, 0).finished();
  return m;
}

const Mat& pauli_y() {
  static const Mat m =
      (Mat(2, 2) << 0, Complex(0, -1), Complex(0, 1), 0).finished();
  return m;
}

const Mat& pauli_z() {
  static const Mat m = (Mat(2, 2) << 1, 0, 0, -1).finished();
  return m;
}

Mat identity(int dim) { return Mat::Identity(dim, dim); }

namespace {

template <typename M>
M kron_impl(const M& a, const M& b) {
  M out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Row-major multi-index decode for the subsystem list.
std::vector<int> unpack(int idx, const std::vector<int>& dims) {
  std::vector<int> out(dims.size());
  for (int s = static_cast<int>(dims.size()) - 1; s >= 0; --s) {
    out[s] = idx % dims[s];
    idx /= dims[s];
  }
  return out;
}

template <typename M>
M partial_trace_impl(const M& rho, const std::vector<int>& dims,
                     const std::vector<int>& keep) {
  int total = 1;
  for (int d : dims) total *= d;
  if (total != rho.rows() || rho.rows() != rho.cols())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep empty");

  std::vector<bool> kept(dims.size(), false);
  int dkeep = 1;
  for (int k : keep) {
    kept.at(k) = true;
    dkeep *= dims[k];
  }

  auto project = [&](const std::vector<int>& full) {
    int idx = 0;
    for (int k : keep) idx = idx * dims[k] + full[k];
    return idx;
  };

  M out = M::Zero(dkeep, dkeep);
  for (int r = 0; r < total; ++r) {
    auto ri = unpack(r, dims);
    for (int c = 0; c < total; ++c) {
      auto ci = unpack(c, dims);
      bool diag = true;
      for (size_t s = 0; s < dims.size(); ++s)
        if (!kept[s] && ri[s] != ci[s]) {
          diag = false;
          break;
        }
      if (diag) out(project(ri), project(ci)) += rho(r, c);
    }
  }
  return out;
}

}  // namespace

Mat kron(const Mat& a, const Mat& b) { return kron_impl(a, b); }
RMat kron(const RMat& a, const RMat& b) { return kron_impl(a, b); }

Mat partial_trace(const Mat& rho, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
  return partial_trace_impl(rho, dims, keep);
}

RMat partial_trace(const RMat& rho, const std::vector<int>& dims,
                   const std::vector<int>& keep) {
  return partial_trace_impl(rho, dims, keep);
}

double max_abs(const Mat& m) { return m.cwiseAbs().maxCoeff(); }

bool is_hermitian(const Mat& m, double tol) {
  return max_abs(m - m.adjoint()) <= tol;
}

double min_eigenvalue(const Mat& hermitian) {
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_eigenvalue(const RMat& symmetric) {
  Eigen::SelfAdjointEigenSolver<RMat> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix::DensityMatrix(Mat m) : mat(std::move(m)) {
  if (mat.rows() != mat.cols())
    throw std::invalid_argument("DensityMatrix: not square");
  if (!is_hermitian(mat))
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  if (std::abs(mat.trace().real() - 1.0) > kHermTol ||
      std::abs(mat.trace().imag()) > kHermTol)
    throw std::invalid_argument("DensityMatrix: trace != 1");
  if (min_eigenvalue(mat) < -kPsdTol)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(const Vec& psi) {
  Vec n = psi / psi.norm();
  return DensityMatrix(n * n.adjoint());
}

Observable::Observable(Mat m) : mat(std::move(m)) {
  if (!is_hermitian(mat))
    throw std::invalid_argument("Observable: not Hermitian");
  Mat sq = mat * mat;
  if (max_abs(sq - identity(static_cast<int>(mat.rows()))) > kPsdTol)
    throw std::invalid_argument("Observable: not an involution");
}

Vec bell_ket(int k) {
  const double s = 1.0 / std::sqrt(2.0);
  Vec v = Vec::Zero(4);
  switch (k) {
    case 0:  // Phi+
      v(0) = s;
      v(3) = s;
      break;
    case 1:  // Phi-
      v(0) = s;
      v(3) = -s;
      break;
    case 2:  // Psi-
      v(1) = s;
      v(2) = -s;
      break;
    case 3:  // Psi+
      v(1) = s;
      v(2) = s;
      break;
    default:
      throw std::out_of_range("bell_ket: index must be 0..3");
  }
  return v;
}

DensityMatrix bell_state(int k) { return DensityMatrix::pure(bell_ket(k)); }

double fidelity(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim())
    throw std::invalid_argument("fidelity: dimension mismatch");
  // F = (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2
  Eigen::SelfAdjointEigenSolver<Mat> es(rho.mat);
  Vec ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().cast<Complex>();
  Mat sqrt_rho = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
  Mat inner = sqrt_rho * sigma.mat * sqrt_rho;
  Eigen::SelfAdjointEigenSolver<Mat> es2(inner, Eigen::EigenvaluesOnly);
  double tr = es2.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return tr * tr;
}

}  // namespace swapnet
