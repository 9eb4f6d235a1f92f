#include "optocat/qubit_state.hpp"

#include <Eigen/Eigenvalues>

namespace optocat {

double CavityQubitState::min_eigenvalue() const
{
	const Eigen::Matrix2cd herm = 0.5 * (rho + rho.adjoint());
	Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> solver(herm, Eigen::EigenvaluesOnly);
	return solver.eigenvalues().minCoeff();
}

} // namespace optocat
