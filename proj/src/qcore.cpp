#include "epr/qcore.hpp"

#include <algorithm>
#include <cmath>

namespace epr {

namespace {

void require_dim(Eigen::Index dim, std::string_view what) {
  if (!is_supported_dim(dim)) {
    throw ValidationError(std::string(what) + ": dimension " + std::to_string(dim) +
                          " is not one of 2, 4, 8");
  }
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > 8 || cols > 8) {
    throw ValidationError("tensor: product dimension exceeds 8");
  }
  Eigen::MatrixXcd out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace

std::string_view to_string(BellKind kind) {
  switch (kind) {
    case BellKind::PsiMinus: return "psi-";
    case BellKind::PsiPlus: return "psi+";
    case BellKind::PhiMinus: return "phi-";
    case BellKind::PhiPlus: return "phi+";
  }
  return "?";
}

bool is_supported_dim(Eigen::Index dim) { return dim == 2 || dim == 4 || dim == 8; }

PureState::PureState(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  require_dim(amplitudes_.size(), "PureState");
  const double norm2 = amplitudes_.squaredNorm();
  if (std::abs(norm2 - 1.0) > tol::kAlgebraic) {
    throw ValidationError("PureState: squared norm " + std::to_string(norm2) + " is not 1");
  }
}

PureState PureState::basis(int dim, int index) {
  require_dim(dim, "PureState::basis");
  if (index < 0 || index >= dim) {
    throw ValidationError("PureState::basis: index out of range");
  }
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

Operator::Operator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ValidationError("Operator: matrix is not square");
  }
  require_dim(matrix_.rows(), "Operator");
}

Operator Operator::identity(int dim) {
  return Operator(Eigen::MatrixXcd::Identity(dim, dim));
}

DensityOperator::DensityOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw ValidationError("DensityOperator: matrix is not square");
  }
  require_dim(matrix_.rows(), "DensityOperator");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > tol::kAlgebraic) {
    throw ValidationError("DensityOperator: matrix is not Hermitian");
  }
  const Complex tr = matrix_.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > tol::kAlgebraic) {
    throw ValidationError("DensityOperator: trace is not 1");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(matrix_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < tol::kPsdFloor) {
    throw ValidationError("DensityOperator: matrix is not positive semidefinite");
  }
}

DensityOperator DensityOperator::maximally_mixed(int dim) {
  require_dim(dim, "DensityOperator::maximally_mixed");
  return DensityOperator(Eigen::MatrixXcd::Identity(dim, dim) / static_cast<double>(dim));
}

PureState tensor(const PureState& a, const PureState& b) {
  return PureState(kron(a.amplitudes(), b.amplitudes()));
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
  return DensityOperator(kron(a.matrix(), b.matrix()));
}

Operator tensor(const Operator& a, const Operator& b) {
  return Operator(kron(a.matrix(), b.matrix()));
}

PureState bell_state(BellKind kind) {
  const double h = 1.0 / std::sqrt(2.0);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  switch (kind) {
    case BellKind::PsiMinus: v(1) = h; v(2) = -h; break;
    case BellKind::PsiPlus: v(1) = h; v(2) = h; break;
    case BellKind::PhiMinus: v(0) = h; v(3) = -h; break;
    case BellKind::PhiPlus: v(0) = h; v(3) = h; break;
  }
  return PureState(std::move(v));
}

PureState linear_polarization_state(double angle) {
  Eigen::VectorXcd v(2);
  v << std::cos(angle), std::sin(angle);
  return PureState(std::move(v));
}

double born_expectation(const DensityOperator& rho, const PureState& phi) {
  if (rho.dim() != phi.dim()) {
    throw ValidationError("born_expectation: dimension mismatch");
  }
  const Complex value = phi.amplitudes().dot(rho.matrix() * phi.amplitudes());
  if (std::abs(value.imag()) > tol::kConsistency) {
    throw ConsistencyError("born_expectation: imaginary part " + std::to_string(value.imag()));
  }
  const double re = value.real();
  if (re < -tol::kConsistency || re > 1.0 + tol::kConsistency) {
    throw ConsistencyError("born_expectation: value " + std::to_string(re) + " outside [0,1]");
  }
  return std::clamp(re, 0.0, 1.0);
}

DensityOperator projector(const PureState& psi) {
  // PureState already guarantees unit norm.
  return DensityOperator(psi.amplitudes() * psi.amplitudes().adjoint());
}

Complex inner(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim()) {
    throw ValidationError("inner: dimension mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());
}

bool equal_up_to_phase(const PureState& a, const PureState& b) {
  return a.dim() == b.dim() && std::abs(std::abs(inner(a, b)) - 1.0) <= tol::kConsistency;
}

Eigen::VectorXcd apply(const Operator& op, const PureState& psi) {
  if (op.dim() != psi.dim()) {
    throw ValidationError("apply: dimension mismatch");
  }
  return op.matrix() * psi.amplitudes();
}

Eigen::VectorXd hermitian_eigenvalues(const Operator& op) {
  if ((op.matrix() - op.matrix().adjoint()).cwiseAbs().maxCoeff() > tol::kAlgebraic) {
    throw ValidationError("hermitian_eigenvalues: operator is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(op.matrix(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

DensityOperator partial_trace(const DensityOperator& rho, int photon) {
  const int dim = rho.dim();
  const int n_photons = dim == 4 ? 2 : dim == 8 ? 3 : 0;
  if (n_photons == 0) {
    throw ValidationError("partial_trace: needs a 4- or 8-dimensional operator");
  }
  if (photon < 0 || photon >= n_photons) {
    throw ValidationError("partial_trace: photon index out of range");
  }
  const int bit = n_photons - 1 - photon;
  const int out_dim = dim / 2;

  // Reinsert a zero/one bit at position `bit` of a reduced index.
  auto expand = [bit](int reduced, int value) {
    const int low = reduced & ((1 << bit) - 1);
    const int high = reduced >> bit;
    return (high << (bit + 1)) | (value << bit) | low;
  };

  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(out_dim, out_dim);
  for (int r = 0; r < out_dim; ++r) {
    for (int c = 0; c < out_dim; ++c) {
      out(r, c) = rho(expand(r, 0), expand(c, 0)) + rho(expand(r, 1), expand(c, 1));
    }
  }
  return DensityOperator(std::move(out));
}

}  // namespace epr
