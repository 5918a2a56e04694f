#pragma once

// Dense complex linear algebra on the 2-, 4- and 8-dimensional polarization
// spaces of up to three photons.
//
// Index convention: photons are ordered 1,2,3 from the most significant bit
// to the least significant bit, and |+> is bit 0, |-> is bit 1. The two-photon
// basis is therefore (++, +-, -+, --) and the three-photon index is
// 4*i1 + 2*i2 + i3.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace epr {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double kAlgebraic = 1e-12;
inline constexpr double kConsistency = 1e-9;
inline constexpr double kPsdFloor = -1e-10;
}  // namespace tol

// Input rejected by a precondition.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Operation not defined for the requested combination of inputs.
class UnsupportedError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// A numerical result violated an invariant that should hold by construction.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class BellKind { PsiMinus, PsiPlus, PhiMinus, PhiPlus };

std::string_view to_string(BellKind kind);

bool is_supported_dim(Eigen::Index dim);

class PureState {
 public:
  // Rejects dimensions outside {2,4,8} and vectors whose norm differs from
  // one by more than tol::kAlgebraic.
  explicit PureState(Eigen::VectorXcd amplitudes);

  static PureState basis(int dim, int index);

  int dim() const { return static_cast<int>(amplitudes_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  Complex operator[](int i) const { return amplitudes_(i); }

 private:
  Eigen::VectorXcd amplitudes_;
};

// Square complex matrix on a supported dimension with no further invariants.
class Operator {
 public:
  explicit Operator(Eigen::MatrixXcd matrix);

  static Operator identity(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Complex operator()(int r, int c) const { return matrix_(r, c); }

  Complex trace() const { return matrix_.trace(); }

 private:
  Eigen::MatrixXcd matrix_;
};

// Hermitian, unit-trace, positive semidefinite operator.
class DensityOperator {
 public:
  explicit DensityOperator(Eigen::MatrixXcd matrix);

  static DensityOperator maximally_mixed(int dim);

  int dim() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }
  Complex operator()(int r, int c) const { return matrix_(r, c); }
  Operator as_operator() const { return Operator(matrix_); }

 private:
  Eigen::MatrixXcd matrix_;
};

// Kronecker products. The left operand occupies the more significant index
// bits. Products larger than 8 dimensions are rejected.
PureState tensor(const PureState& a, const PureState& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
Operator tensor(const Operator& a, const Operator& b);

PureState bell_state(BellKind kind);

// (cos angle, sin angle): linear polarization at `angle` from the |+> axis.
PureState linear_polarization_state(double angle);

// <phi|rho|phi>. Throws ConsistencyError when the result is not real within
// tol::kConsistency or falls outside [0,1] by more than that.
double born_expectation(const DensityOperator& rho, const PureState& phi);

DensityOperator projector(const PureState& psi);

// <a|b>
Complex inner(const PureState& a, const PureState& b);

// |<a|b>| = 1 within tol::kConsistency.
bool equal_up_to_phase(const PureState& a, const PureState& b);

Eigen::VectorXcd apply(const Operator& op, const PureState& psi);

// Ascending eigenvalues of a Hermitian operator.
Eigen::VectorXd hermitian_eigenvalues(const Operator& op);

// Traces out one photon (0-based, most significant first) of a 4- or
// 8-dimensional density operator.
DensityOperator partial_trace(const DensityOperator& rho, int photon);

}  // namespace epr
