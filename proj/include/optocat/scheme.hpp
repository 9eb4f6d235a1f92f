#pragma once

#include <optional>
#include <string_view>

#include "optocat/dynamics.hpp"
#include "optocat/qubit_state.hpp"

namespace optocat {

enum class GammaSource { external, eid_model, or_model };

[[nodiscard]] std::string_view to_string(GammaSource source);
[[nodiscard]] GammaSource parse_gamma_source(std::string_view text);

/// Mirror decoherence rate Gamma_m applied as a constant average rate.
struct DecoherenceInputs {
	double gamma_m_rate = 0.0;
	GammaSource source = GammaSource::external;

	/// Rate taken from the EID or OR model for p, or the given external value.
	[[nodiscard]] static DecoherenceInputs resolve(GammaSource source, const ExperimentParams& p,
	                                               double external_rate = 0.0);
};

struct BranchProbabilities {
	double p_noloss = 1.0;
	double p_loss = 0.0;
};

/// Photon-loss branching for the initial field (|0> - |1>)/sqrt(2).
[[nodiscard]] BranchProbabilities branch_probabilities(double gamma_a, double t);

/// Joint blocks conditioned on no photon having leaked, normalised to unit trace:
/// w_00 = 1/(1+e^{-gamma_a t}), w_11 = e^{-gamma_a t}/(1+e^{-gamma_a t}),
/// w_01 = e^{-(gamma_a/2 + Gamma_m) t} e^{-i phase}/(1+e^{-gamma_a t}).
/// Adding p_loss |0><0| weighted by the branch probabilities gives the full state.
/// Requires n_fock == 1.
[[nodiscard]] JointBlocks evolve_with_decoherence(CoherentLabel beta, const ExperimentParams& p,
                                                  const DecoherenceInputs& d, double t);

/// Time-resolved alternative to the constant rate: exp(-integral_0^t dt'/t_D(dx(t'))).
/// Not part of the averaged-rate model; exposed for sensitivity studies.
[[nodiscard]] double instantaneous_eid_suppression(const ExperimentParams& p, double t);

/// Cavity field at t = 2 pi / omega_m with both branches summed. Independent of
/// the mirror's initial label and temperature. Requires n_fock == 1.
[[nodiscard]] CavityQubitState final_cavity_state(const ExperimentParams& p, const DecoherenceInputs& d);

/// Field state for one mirror label at time t: both branches summed and the
/// mirror traced out, rho_n0 = -p_noloss w_n0 <phi_0|phi_n>. At a whole period
/// it equals final_cavity_state up to rounding in the mirror phase.
/// Requires n_fock == 1.
[[nodiscard]] CavityQubitState reduced_field_state(CoherentLabel beta, const ExperimentParams& p,
                                                   const DecoherenceInputs& d, double t);

struct AtomReadout {
	/// Closed form 1/2 [1 - e^{-(pi/omega_m)(gamma_a + 2 Gamma_m)} cos(2 pi kappa^2)].
	double closed_form = 0.0;
	/// <+|rho|+> of the final cavity state after the swap |0> -> |g>, |1> -> |e>.
	double projection = 0.0;

	[[nodiscard]] double discrepancy() const;
};

[[nodiscard]] AtomReadout atom_readout(const ExperimentParams& p, const DecoherenceInputs& d);

/// Probability of finding the exiting atom in |+>; the closed form.
[[nodiscard]] double atom_plus_probability(const ExperimentParams& p, const DecoherenceInputs& d);

struct InferredRate {
	double gamma_m = 0.0;
	/// First-order uncertainty |dGamma/dP| sigma_P; empty when no sigma was given.
	std::optional<double> sigma;
};

/// Inverts the readout probability for Gamma_m. Throws UnidentifiableError when
/// cos(2 pi kappa^2) is within 1e-12 of zero and InfeasibleMeasurementError when
/// no non-negative rate reproduces p_measured.
[[nodiscard]] InferredRate infer_gamma_m(double p_measured, const ExperimentParams& p,
                                         std::optional<double> p_sigma = std::nullopt);

} // namespace optocat
