#pragma once

#include <Eigen/Core>

namespace optocat {

/// Density matrix of the cavity field on span{|0>, |n>}, in that order.
struct CavityQubitState {
	Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();

	[[nodiscard]] double trace() const { return rho.trace().real(); }
	[[nodiscard]] double purity() const { return (rho * rho).trace().real(); }
	/// Largest |rho - rho^dagger| entry.
	[[nodiscard]] double hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }
	/// Smallest eigenvalue of the Hermitian part.
	[[nodiscard]] double min_eigenvalue() const;
};

} // namespace optocat
