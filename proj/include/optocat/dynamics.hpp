#pragma once

#include <string_view>

#include "optocat/hilbert.hpp"
#include "optocat/qubit_state.hpp"

namespace optocat {

/// How frequencies written in configuration files are turned into the
/// omega values that enter the formulas.
///   angular:     a value given in Hz is multiplied by 2 pi.
///   paper_plain: a value given in Hz is used as omega directly, reproducing
///                the order-of-magnitude arithmetic that quotes omega_m ~ 10^4
///                for a 10 kHz mirror.
enum class FreqConvention { angular, paper_plain };

[[nodiscard]] std::string_view to_string(FreqConvention convention);
[[nodiscard]] FreqConvention parse_freq_convention(std::string_view text);

/// Physical knobs of the setup. Frequencies are stored already resolved to
/// the omega used in every formula (rad/s in the angular convention).
struct ExperimentParams {
	double omega_0 = 0.0;   ///< cavity field frequency
	double omega_m = 0.0;   ///< mirror oscillation frequency
	double length_L = 0.0;  ///< cavity length, m
	double mass_m = 0.0;    ///< mirror mass, kg
	double gamma_a = 0.0;   ///< cavity photon damping rate, 1/s
	double gamma_m = 0.0;   ///< mirror mechanical damping rate, 1/s
	double theta_env = 0.0; ///< enclosure temperature, K
	double T_mirror = 0.0;  ///< initial mirror temperature, K (independent of theta_env)
	int n_fock = 1;         ///< photon number of the |n> branch
	double density_D = 1.0e3; ///< mirror material density, kg/m^3
	FreqConvention freq_convention = FreqConvention::angular;

	/// Throws InvalidArgument naming the first violated invariant.
	void validate() const;

	friend bool operator==(const ExperimentParams&, const ExperimentParams&) = default;
};

struct DerivedCouplings {
	double g = 0.0;         ///< optomechanical coupling, 1/s
	double kappa = 0.0;     ///< g / omega_m
	double x_zp = 0.0;      ///< sqrt(hbar / 2 m omega_m), m
	double nbar = 0.0;      ///< initial thermal occupation at T_mirror
	double lambda_th = 0.0; ///< hbar / sqrt(2 m k_B theta_env), m (infinite at theta_env = 0)
	double omega_m = 0.0;
};

[[nodiscard]] DerivedCouplings derive_couplings(const ExperimentParams& p);

/// 2 pi / omega_m: the time at which field and mirror disentangle.
[[nodiscard]] double full_period(const ExperimentParams& p);

/// Copy of p with omega_0 rescaled so that derive_couplings(...).kappa == kappa.
[[nodiscard]] ExperimentParams with_kappa(const ExperimentParams& p, double kappa);

/// phi_n(t) = beta e^{-i omega_m t} + kappa n (1 - e^{-i omega_m t}).
[[nodiscard]] CoherentLabel mirror_trajectory(CoherentLabel beta, int n, double kappa, double omega_m, double t);

/// kappa^2 n^2 (omega_m t - sin omega_m t), unwrapped.
[[nodiscard]] double kerr_phase(int n, double kappa, double omega_m, double t);

/// Phase of the displaced-frame ket: e^{-i H_n t}|beta> = e^{i(kerr + this)} |phi_n(t)>
/// with |phi> = D(phi)|0>. Equals kappa n Im[beta (1 - e^{-i omega_m t})]; vanishes
/// at whole periods and for beta = 0.
[[nodiscard]] double displacement_phase(CoherentLabel beta, int n, double kappa, double omega_m, double t);

/// Distance between the position expectations of |phi_0(t)> and |phi_n(t)>:
/// x_zp 2 kappa n (1 - cos omega_m t).
[[nodiscard]] double separation(int n, const DerivedCouplings& c, double t);

/// Decoherence-free blocks of the joint state for one coherent label of the mirror.
/// rho = w_00 |0><0| (x) |phi_0><phi_0| - w_0n |0><n| (x) |phi_0><phi_n|
///     - w_n0 |n><0| (x) |phi_n><phi_0| + w_nn |n><n| (x) |phi_n><phi_n|
struct JointBlocks {
	CoherentLabel beta;
	double t = 0.0;
	CoherentLabel phi_0;
	CoherentLabel phi_n;
	double kerr_angle = 0.0;
	double displacement_angle = 0.0;
	complex w_00;
	complex w_0n;
	complex w_n0;
	complex w_nn;
};

[[nodiscard]] JointBlocks joint_blocks(CoherentLabel beta, const ExperimentParams& p, double t);

/// Field state after one full mirror period without any decoherence:
/// (|0> - e^{i 2 pi kappa^2 n^2}|n>)/sqrt(2).
[[nodiscard]] CavityQubitState ideal_field_state(const ExperimentParams& p);

} // namespace optocat
