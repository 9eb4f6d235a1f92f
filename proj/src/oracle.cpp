#include "optocat/oracle.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "optocat/constants.hpp"
#include "optocat/errors.hpp"

namespace optocat {

SectorHamiltonian build_sector_hamiltonian(int n, const ExperimentParams& p, std::size_t dim)
{
	if(dim < 2) {
		throw InvalidArgument("build_sector_hamiltonian: dim must be >= 2");
	}
	if(n < 0) {
		throw InvalidArgument("build_sector_hamiltonian: sector must be >= 0");
	}
	const DerivedCouplings c = derive_couplings(p);
	const auto d = static_cast<Eigen::Index>(dim);
	SectorHamiltonian h{n, dim, Eigen::MatrixXcd::Zero(d, d)};
	const double drive = c.g * static_cast<double>(n);
	for(Eigen::Index k = 0; k < d; ++k) {
		h.matrix(k, k) = p.omega_m * static_cast<double>(k);
		if(k + 1 < d) {
			const double off = -drive * std::sqrt(static_cast<double>(k + 1));
			h.matrix(k, k + 1) = off;
			h.matrix(k + 1, k) = off;
		}
	}
	return h;
}

SectorPropagator::SectorPropagator(const SectorHamiltonian& h) : n_(h.n)
{
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h.matrix);
	if(solver.info() != Eigen::Success) {
		throw std::runtime_error("SectorPropagator: eigendecomposition failed");
	}
	energies_ = solver.eigenvalues();
	modes_ = solver.eigenvectors();
}

FockVector SectorPropagator::propagate(const FockVector& psi0, double t) const
{
	if(psi0.dim() != dim()) {
		throw InvalidArgument("propagate: state and Hamiltonian dimensions differ");
	}
	if(!(t >= 0.0)) {
		throw InvalidArgument("propagate: t must be >= 0");
	}
	if(t == 0.0) {
		return psi0;
	}
	Eigen::VectorXcd coeffs = modes_.adjoint() * psi0.amps;
	for(Eigen::Index j = 0; j < coeffs.size(); ++j) {
		coeffs[j] *= std::polar(1.0, -energies_[j] * t);
	}
	return FockVector{modes_ * coeffs};
}

double SectorPropagator::energy(const FockVector& psi) const
{
	const Eigen::VectorXcd coeffs = modes_.adjoint() * psi.amps;
	return (coeffs.cwiseAbs2().array() * energies_.array()).sum();
}

FockVector propagate(const FockVector& psi0, const SectorHamiltonian& h, double t)
{
	if(psi0.dim() != h.dim) {
		throw InvalidArgument("propagate: state and Hamiltonian dimensions differ");
	}
	return SectorPropagator(h).propagate(psi0, t);
}

double wrap_angle(double angle)
{
	double r = std::remainder(angle, constants::two_pi); // [-pi, pi]
	if(r <= -constants::pi) {
		r += constants::two_pi;
	}
	return r;
}

bool meets_contract(const FidelityReport& r)
{
	return r.truncation_ok && r.overlap_modulus >= 1.0 - oracle_overlap_tolerance &&
	       std::abs(r.phase_residual) <= oracle_phase_tolerance;
}

FidelityReport verify_analytic(const SectorPropagator& propagator, CoherentLabel beta, const ExperimentParams& p,
                               double t, double deficit_budget)
{
	const DerivedCouplings c = derive_couplings(p);
	const int n = propagator.sector();
	const std::size_t dim = propagator.dim();

	const TruncatedCoherent initial = coherent_vector(beta, dim);
	const CoherentLabel phi = mirror_trajectory(beta, n, c.kappa, p.omega_m, t);
	const TruncatedCoherent expected = coherent_vector(phi, dim);

	const FockVector numeric = propagator.propagate(initial.state, t);
	const complex amplitude = inner_product(expected.state, numeric);
	const double measured = std::arg(amplitude);
	const double kerr = kerr_phase(n, c.kappa, p.omega_m, t);
	const double disp = displacement_phase(beta, n, c.kappa, p.omega_m, t);

	FidelityReport r;
	r.overlap_modulus = std::abs(amplitude);
	r.phase_residual = wrap_angle(measured - kerr - disp);
	r.kerr_only_residual = wrap_angle(measured - kerr);
	r.truncation_deficit = std::max(initial.deficit, expected.deficit);
	r.truncation_ok = r.truncation_deficit <= deficit_budget;
	return r;
}

FidelityReport verify_analytic(CoherentLabel beta, const ExperimentParams& p, double t, std::size_t dim,
                               double deficit_budget)
{
	const SectorPropagator propagator(build_sector_hamiltonian(p.n_fock, p, dim));
	return verify_analytic(propagator, beta, p, t, deficit_budget);
}

} // namespace optocat
