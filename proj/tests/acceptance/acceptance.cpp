// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "optocat/config.hpp"
#include "optocat/constants.hpp"
#include "optocat/errors.hpp"
#include "optocat/oracle.hpp"
#include "optocat/presets.hpp"
#include "optocat/rates.hpp"
#include "optocat/report.hpp"
#include "optocat/scheme.hpp"
#include "../support/generators.hpp"

using namespace optocat;
using namespace optocat::constants;
using optocat::testing::Gen;

namespace {

struct Outcome {
	bool pass = true;
	std::ostringstream detail;

	void require(bool ok, const std::string& what)
	{
		if(!ok) {
			pass = false;
			detail << " [violated: " << what << "]";
		}
	}
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start)
{
	return std::chrono::duration<double>(Clock::now() - start).count();
}

bool within(double v, double lo, double hi)
{
	return v >= lo && v <= hi;
}

RunConfig preset_config(const char* name)
{
	return parse_config(std::string("preset = ") + name + "\nfreq_convention = paper-plain\n");
}

Outcome criterion1()
{
	Outcome o;
	const auto start = Clock::now();
	const RunConfig cfg = preset_config("regime-a");
	const ConstraintReport c = check_constraints(cfg.params);
	const RateReport r = rate_report(cfg.params);
	const std::string rendered = render(run_constraints(cfg), cfg, OutputFormat::csv);
	const double elapsed = seconds_since(start);
	o.detail << "regime A c2=" << c.c2_value << " kappa=" << c.c3_kappa << " Gamma_m=" << r.gamma_m_eid
	         << " dx_max=" << r.dx_max << " runtime=" << elapsed << "s";
	o.require(within(c.c2_value, 1e6, 2e6), "c2 in [1e6, 2e6]");
	o.require(within(c.c3_kappa, 0.5, 1.5), "kappa in [0.5, 1.5]");
	o.require(within(r.gamma_m_eid, 3e4, 5e4), "Gamma_m in [3e4, 5e4]");
	o.require(within(r.dx_max, 1e-16, 4e-16), "dx_max in [1e-16, 4e-16]");
	o.require(!rendered.empty() && elapsed < 1.0, "runtime < 1 s");
	return o;
}

Outcome criterion2()
{
	Outcome o;
	const auto start = Clock::now();
	const RunConfig cfg = preset_config("regime-b");
	const ConstraintReport c = check_constraints(cfg.params);
	const std::string rendered = render(run_constraints(cfg), cfg, OutputFormat::csv);
	const double elapsed = seconds_since(start);
	o.detail << "regime B c2=" << c.c2_value << " Gamma_m=" << c.gamma_m << " runtime=" << elapsed << "s";
	o.require(within(c.c2_value, 1e5, 2e5), "c2 in [1e5, 2e5]");
	o.require(within(c.gamma_m, 4.1e7 / 2.0, 4.1e7 * 2.0), "Gamma_m within x2 of 4.1e7");
	o.require(!rendered.empty() && elapsed < 1.0, "runtime < 1 s");
	return o;
}

Outcome criterion3()
{
	Outcome o;
	const ExperimentParams p = preset_params("microwave", FreqConvention::paper_plain);
	const double w = solve_omega_m_for_kappa(p, 1.0);
	ExperimentParams at = p;
	at.omega_m = w;
	o.detail << "microwave L=" << p.length_L << " m=" << p.mass_m << " omega_0=" << p.omega_0
	         << ": kappa=1 at omega_m=" << w << " (kappa check " << derive_couplings(at).kappa << ")";
	o.require(within(w, 1e-3, 1e-1), "omega_m within one decade of 1e-2");
	o.require(std::abs(derive_couplings(at).kappa - 1.0) <= 1e-9, "solved kappa = 1");
	return o;
}

Outcome criterion4()
{
	Outcome o;
	ExperimentParams p = preset_params("regime-a", FreqConvention::paper_plain);
	p.density_D = 1e3;
	p.theta_env = 0.1;
	p.gamma_m = 1e-2;
	const OrThreshold th = or_dominance_threshold(p);
	const double gap = th.theta_gamma_product / th.threshold;
	o.detail << "G hbar D / k_B=" << th.threshold << " K/s, theta*gamma_m=" << th.theta_gamma_product
	         << " K/s, gap=" << gap;
	o.require(within(th.threshold, 3e-19, 7e-19), "threshold in [3e-19, 7e-19]");
	o.require(gap >= 1e15, "gap >= 1e15");
	o.require(!th.dominant, "collapse not dominant at theta*gamma_m = 1e-3");
	return o;
}

Outcome criterion5()
{
	Outcome o;
	const auto start = Clock::now();
	const ExperimentParams base = preset_params("regime-a", FreqConvention::paper_plain);
	const std::vector<CoherentLabel> betas = {CoherentLabel{0.0},       CoherentLabel{1.0},        CoherentLabel{0.0, 3.0},
	                                          CoherentLabel{2.0, 2.0},  CoherentLabel{-3.0},       CoherentLabel{-1.5, -2.5},
	                                          CoherentLabel{0.5, -0.7}};
	double worst_overlap = 1.0;
	double worst_phase = 0.0;
	double worst_kerr_literal = 0.0;  // where the bare Kerr angle is the whole phase
	double worst_kerr_anywhere = 0.0; // literal Kerr-only residual over the whole grid
	std::size_t checks = 0;
	std::size_t truncation_failures = 0;
	for(const double kappa : {0.3, 0.73, 1.5}) {
		const ExperimentParams p = with_kappa(base, kappa);
		const double period = full_period(p);
		for(const int n : {0, 1, 2}) {
			double max_beta = 0.0;
			for(const auto& b : betas) {
				max_beta = std::max(max_beta, b.abs());
			}
			const SectorPropagator prop(build_sector_hamiltonian(n, p, truncation_dim(max_beta, kappa, n)));
			for(const auto& beta : betas) {
				for(int k = 1; k <= 8; ++k) {
					const double t = period * k / 8.0;
					const FidelityReport r = verify_analytic(prop, beta, p, t);
					++checks;
					if(!r.truncation_ok) {
						++truncation_failures;
					}
					worst_overlap = std::min(worst_overlap, r.overlap_modulus);
					worst_phase = std::max(worst_phase, std::abs(r.phase_residual));
					worst_kerr_anywhere = std::max(worst_kerr_anywhere, std::abs(r.kerr_only_residual));
					if(beta.abs() == 0.0 || k == 8) {
						worst_kerr_literal = std::max(worst_kerr_literal, std::abs(r.kerr_only_residual));
					}
				}
			}
		}
	}
	const double elapsed = seconds_since(start);
	o.detail << checks << " (beta, n, kappa, t) points: worst overlap 1-" << 1.0 - worst_overlap
	         << ", worst phase residual " << worst_phase << " rad (Kerr + displacement phase), bare Kerr residual "
	         << worst_kerr_literal << " rad at beta=0 or full period (" << worst_kerr_anywhere
	         << " rad mid-period with beta != 0), runtime=" << elapsed << "s";
	o.require(truncation_failures == 0, "truncation within budget");
	o.require(worst_overlap >= 1.0 - 1e-6, "overlap >= 1 - 1e-6");
	o.require(worst_phase <= 1e-6, "phase residual <= 1e-6");
	o.require(worst_kerr_literal <= 1e-6, "bare Kerr residual <= 1e-6 where the displacement phase vanishes");
	o.require(elapsed < 60.0, "runtime < 60 s");
	return o;
}

Outcome criterion6()
{
	Outcome o;
	Gen gen(6);
	double worst_trace = 0.0;
	double worst_eigen = 0.0;
	bool hermitian = true;
	for(int i = 0; i < 10000; ++i) {
		const ExperimentParams p = gen.params();
		double rate = 0.0;
		switch(i % 4) {
		case 0: rate = 0.0; break;
		case 1: rate = std::numeric_limits<double>::infinity(); break;
		default: rate = gen.log_uniform(1e-9, 1e12); break;
		}
		const CavityQubitState s = final_cavity_state(p, {rate, GammaSource::external});
		hermitian = hermitian && s.rho(0, 1) == std::conj(s.rho(1, 0)) && s.rho(0, 0).imag() == 0.0 &&
		            s.rho(1, 1).imag() == 0.0;
		worst_trace = std::max(worst_trace, std::abs(s.trace() - 1.0));
		worst_eigen = std::min(worst_eigen, s.min_eigenvalue());
	}

	bool bitwise = true;
	double worst_label_gap = 0.0;
	for(int i = 0; i < 100; ++i) {
		const ExperimentParams p = with_kappa(gen.params(), gen.uniform(0.05, 3.0));
		const DecoherenceInputs d{gen.log_uniform(1e-6, 1e6), GammaSource::external};
		ExperimentParams other = p;
		other.T_mirror = gen.log_uniform(1e-6, 1e3);
		const CavityQubitState a = final_cavity_state(p, d);
		const CavityQubitState b = final_cavity_state(other, d);
		bitwise = bitwise && a.rho == b.rho;
		// the label-resolved state reaches the same point for every beta
		const CavityQubitState via_label = reduced_field_state(gen.beta(5.0), other, d, full_period(other));
		worst_label_gap = std::max(worst_label_gap, (via_label.rho - a.rho).cwiseAbs().maxCoeff());
	}

	double worst_purity = 0.0;
	for(int i = 0; i < 1000; ++i) {
		ExperimentParams p = gen.params();
		p.n_fock = gen.integer(1, 3);
		worst_purity = std::max(worst_purity, std::abs(ideal_field_state(p).purity() - 1.0));
	}

	o.detail << "10^4 draws: |trace-1|<=" << worst_trace << ", min eigenvalue " << worst_eigen
	         << (hermitian ? ", Hermitian" : ", NOT Hermitian") << "; 10^2 draws: T_mirror/beta "
	         << (bitwise ? "bitwise identical" : "DIFFER") << ", label-resolved path within " << worst_label_gap
	         << "; ideal purity |1-P|<=" << worst_purity;
	o.require(hermitian, "Hermitian");
	o.require(worst_trace <= 1e-12, "unit trace within 1e-12");
	o.require(worst_eigen >= -1e-12, "PSD (eigenvalues >= -1e-12)");
	o.require(bitwise, "bitwise T_mirror and beta independence");
	o.require(worst_label_gap <= 1e-13, "label-resolved state at full period");
	o.require(worst_purity <= 1e-12, "ideal purity within 1e-12");
	return o;
}

// Identifiable domain: x = 2 pi Gamma_m / omega_m in [1e-6, ln 1e6]. Below it the
// decay is lost in the rounding of P; above it the contrast is < 1e-6.
Outcome criterion7()
{
	Outcome o;
	const ExperimentParams base = preset_params("regime-a", FreqConvention::paper_plain);
	const std::vector<double> gammas = log_spaced(1e-2, 1e8, 41);
	const std::vector<double> omegas = log_spaced(1e-4, 1e10, 15);
	double worst = 0.0;
	std::size_t evaluated = 0;
	std::size_t uncovered = 0;
	for(const double gamma : gammas) {
		bool covered = false;
		for(const double w : omegas) {
			const double x = two_pi * gamma / w;
			if(x < 1e-6 || x > std::log(1e6)) {
				continue;
			}
			for(const double kappa : {0.3, 0.73, 1.2}) {
				ExperimentParams p = base;
				p.omega_m = w;
				p.gamma_a = 0.1 * w;
				p = with_kappa(p, kappa);
				const double prob = atom_plus_probability(p, {gamma, GammaSource::external});
				const double back = infer_gamma_m(prob, p).gamma_m;
				worst = std::max(worst, std::abs(back - gamma) / gamma);
				++evaluated;
				covered = true;
			}
		}
		if(!covered) {
			++uncovered;
		}
	}
	int rejected = 0;
	for(const double k2 : {0.25, 0.75}) {
		const ExperimentParams p = with_kappa(base, std::sqrt(k2));
		try {
			(void)infer_gamma_m(0.4, p);
		} catch(const UnidentifiableError&) {
			++rejected;
		} catch(const std::exception&) {
		}
	}
	o.detail << evaluated << " roundtrips over Gamma_m in [1e-2, 1e8]: worst relative error " << worst
	         << "; singular kappa^2 in {0.25, 0.75} rejected " << rejected << "/2";
	o.require(uncovered == 0, "every Gamma_m covered");
	o.require(worst <= 1e-9, "roundtrip within 1e-9 relative");
	o.require(rejected == 2, "unidentifiable error at kappa^2 = 0.25, 0.75");
	return o;
}

Outcome criterion8()
{
	Outcome o;
	Gen gen(8);
	double worst = 0.0;
	for(int i = 0; i < 1000; ++i) {
		ExperimentParams p = gen.params();
		p.n_fock = gen.integer(1, 3);
		const DerivedCouplings c = derive_couplings(p);
		const double period = full_period(p);
		auto inverse_td = [&](double t) {
			const double dx = separation(p.n_fock, c, t);
			return dx > 0.0 ? 1.0 / decoherence_timescale(p, dx).t_d : 0.0;
		};
		const int intervals = 512;
		const double h = period / intervals;
		double sum = inverse_td(0.0) + inverse_td(period);
		for(int k = 1; k < intervals; ++k) {
			sum += (k % 2 == 1 ? 4.0 : 2.0) * inverse_td(k * h);
		}
		const double average = sum * h / 3.0 / period;
		worst = std::max(worst, std::abs(average - eid_rate(p)) / eid_rate(p));
	}
	o.detail << "10^3 draws, composite Simpson (512 intervals) of 1/t_D(dx(t)) vs closed form: worst relative "
	         << worst;
	o.require(worst <= 1e-6, "within 1e-6 relative");
	return o;
}

Outcome criterion9()
{
	Outcome o;
	const std::string extra = "scan.mass_m_kg = log:1e-9:1e-3:7\nscan.theta_env_k = 0.01, 0.1, 1\n"
	                          "oracle_nbar_max = 3\nensemble_size = 256\nseed = 1234\n";
	std::size_t compared = 0;
	bool identical = true;
	for(const auto format : {OutputFormat::csv, OutputFormat::json}) {
		std::vector<std::function<Report(const RunConfig&)>> runs = {
		    run_simulate, run_rates, run_constraints, run_scan, run_oracle_check,
		    [](const RunConfig& c) { return run_invert(c, 0.52, 0.01); }};
		for(const auto& run : runs) {
			const RunConfig a = parse_config("preset = regime-a\nfreq_convention = paper-plain\n" + extra);
			const RunConfig b = parse_config("preset = regime-a\nfreq_convention = paper-plain\n" + extra);
			const std::string first = render(run(a), a, format);
			const std::string second = render(run(b), b, format);
			identical = identical && first == second && !first.empty();
			++compared;
		}
	}
	o.detail << compared << " report pairs (6 commands x csv/json) " << (identical ? "byte-identical" : "DIFFER");
	o.require(identical, "byte-identical output");
	return o;
}

} // namespace

int main()
{
	const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
	                                                        criterion6, criterion7, criterion8, criterion9};
	int failures = 0;
	for(std::size_t i = 0; i < criteria.size(); ++i) {
		Outcome o;
		try {
			o = criteria[i]();
		} catch(const std::exception& e) {
			o.pass = false;
			o.detail << "threw: " << e.what();
		}
		std::printf("[%s] criterion %zu: %s\n", o.pass ? "PASS" : "FAIL", i + 1, o.detail.str().c_str());
		failures += o.pass ? 0 : 1;
	}
	std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
	return failures == 0 ? 0 : 1;
}
