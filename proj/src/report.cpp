#include "optocat/report.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "optocat/constants.hpp"
#include "optocat/errors.hpp"
#include "optocat/format.hpp"
#include "optocat/oracle.hpp"
#include "optocat/rates.hpp"
#include "optocat/scan.hpp"
#include "optocat/scheme.hpp"
#include "parallel.hpp"

namespace optocat {

namespace {

Cell str(std::string_view s)
{
	return Cell{std::string(s)};
}

Cell integer(std::int64_t v)
{
	return Cell{v};
}

} // namespace

Report run_simulate(const RunConfig& cfg)
{
	const ExperimentParams& p = cfg.params;
	if(p.n_fock != 1) {
		throw ConfigError("simulate requires n_fock = 1", "n_fock");
	}
	const DerivedCouplings c = derive_couplings(p);
	const double period = full_period(p);

	Report report;
	report.command = "simulate";

	Table timeline{"timeline",
	               {"t_s", "t_over_period", "dx_m", "kerr_phase_rad", "p_noloss", "p_loss", "offdiag_weight_abs",
	                "mirror_overlap_abs", "field_coherence_abs", "instantaneous_eid_suppression"},
	               {}};
	for(const double t : cfg.times) {
		const BranchProbabilities branch = branch_probabilities(p.gamma_a, t);
		// coherence magnitudes do not depend on the mirror label
		const JointBlocks blocks = evolve_with_decoherence(CoherentLabel{}, p, cfg.decoherence, t);
		const double offdiag = branch.p_noloss * std::abs(blocks.w_0n);
		const double overlap = std::abs(coherent_overlap(blocks.phi_n, blocks.phi_0));
		timeline.rows.push_back({t, t / period, separation(p.n_fock, c, t), kerr_phase(p.n_fock, c.kappa, p.omega_m, t),
		                         branch.p_noloss, branch.p_loss, offdiag, overlap, offdiag * overlap,
		                         instantaneous_eid_suppression(p, t)});
	}

	const CavityQubitState s = final_cavity_state(p, cfg.decoherence);
	const AtomReadout readout = atom_readout(p, cfg.decoherence);
	Table final_state{"final_state",
	                  {"t_s", "kappa", "gamma_m_per_s", "gamma_source", "rho_00", "rho_11", "rho_10_re", "rho_10_im",
	                   "purity", "p_plus", "p_plus_projection", "readout_discrepancy"},
	                  {}};
	final_state.rows.push_back({period, c.kappa, cfg.decoherence.gamma_m_rate, str(to_string(cfg.decoherence.source)),
	                            s.rho(0, 0).real(), s.rho(1, 1).real(), s.rho(1, 0).real(), s.rho(1, 0).imag(),
	                            s.purity(), readout.closed_form, readout.projection, readout.discrepancy()});

	report.tables = {std::move(timeline), std::move(final_state)};
	return report;
}

Report run_rates(const RunConfig& cfg)
{
	const ExperimentParams& p = cfg.params;
	const DerivedCouplings c = derive_couplings(p);
	const RateReport r = rate_report(p);

	Report report;
	report.command = "rates";
	Table t{"rates",
	        {"g_per_s", "kappa", "x_zp_m", "nbar", "lambda_th_m", "dx_max_m", "gamma_m_eid_per_s", "t_d_at_dx_max_s",
	         "t_d_valid", "gamma_or_per_s", "radius_r_m", "or_applicable", "ratio_or_over_eid",
	         "theta_gamma_product_k_per_s", "or_threshold_k_per_s", "or_dominant"},
	        {}};
	t.rows.push_back({c.g, c.kappa, c.x_zp, c.nbar, r.lambda_th, r.dx_max, r.gamma_m_eid, r.t_d_at, r.t_d_valid,
	                  r.gamma_or, r.radius_R, r.or_applicable, r.ratio_or_over_eid, r.threshold.theta_gamma_product,
	                  r.threshold.threshold, r.threshold.dominant});
	report.tables.push_back(std::move(t));
	return report;
}

Report run_constraints(const RunConfig& cfg)
{
	const ExperimentParams& p = cfg.params;
	const std::optional<double> override = cfg.decoherence.source == GammaSource::eid_model
	                                           ? std::nullopt
	                                           : std::optional<double>(cfg.decoherence.gamma_m_rate);
	const ConstraintReport r = check_constraints(p, override);

	Report report;
	report.command = "constraints";
	Table t{"constraints",
	        {"gamma_m_per_s", "gamma_source", "c1_ratio_wm", "c1_ratio_ga", "c1_verdict", "c2_value", "c2_verdict",
	         "c3_kappa", "c3_verdict"},
	        {}};
	t.rows.push_back({r.gamma_m, str(to_string(cfg.decoherence.source)), r.c1_ratio_wm, r.c1_ratio_ga,
	                  str(to_string(r.c1)), r.c2_value, str(to_string(r.c2)), r.c3_kappa, str(to_string(r.c3))});
	report.tables.push_back(std::move(t));
	return report;
}

Report run_scan(const RunConfig& cfg)
{
	if(cfg.scan_axes.empty()) {
		throw ConfigError("scan needs at least one 'scan.<key> = ...' axis");
	}
	GridSpec grid;
	grid.base = cfg.params;
	grid.axes = cfg.scan_axes;
	grid.gamma_source = cfg.decoherence.source;
	grid.external_gamma_m = cfg.decoherence.source == GammaSource::external ? cfg.decoherence.gamma_m_rate : 0.0;
	const ScanTable table = scan(grid);

	Report report;
	report.command = "scan";
	Table t{"scan", table.axis_names, {}};
	for(const auto* col : {"kappa", "g_per_s", "gamma_m_eid_per_s", "gamma_or_per_s", "dx_max_m", "lambda_th_m",
	                       "gamma_m_used_per_s", "c1_ratio_wm", "c1_ratio_ga", "c1_verdict", "c2_value", "c2_verdict",
	                       "c3_kappa", "c3_verdict", "p_plus"}) {
		t.columns.emplace_back(col);
	}
	for(const auto& row : table.rows) {
		std::vector<Cell> cells(row.coordinates.begin(), row.coordinates.end());
		const ConstraintReport& k = row.constraints;
		for(Cell cell : std::initializer_list<Cell>{
		        row.couplings.kappa, row.couplings.g, row.rates.gamma_m_eid, row.rates.gamma_or, row.rates.dx_max,
		        row.rates.lambda_th, row.gamma_m_used, k.c1_ratio_wm, k.c1_ratio_ga, str(to_string(k.c1)), k.c2_value,
		        str(to_string(k.c2)), k.c3_kappa, str(to_string(k.c3)), row.p_plus}) {
			cells.push_back(std::move(cell));
		}
		t.rows.push_back(std::move(cells));
	}
	report.tables.push_back(std::move(t));
	return report;
}

Report run_invert(const RunConfig& cfg, double p_plus, std::optional<double> p_sigma)
{
	const ExperimentParams& p = cfg.params;
	const DerivedCouplings c = derive_couplings(p);
	const InferredRate inferred = infer_gamma_m(p_plus, p, p_sigma);

	Report report;
	report.command = "invert";
	Table t{"inversion",
	        {"p_plus", "p_sigma", "kappa", "cos_2pi_kappa2", "gamma_m_per_s", "gamma_m_sigma_per_s"},
	        {}};
	const double nan = std::numeric_limits<double>::quiet_NaN();
	t.rows.push_back({p_plus, p_sigma.value_or(nan), c.kappa, std::cos(constants::two_pi * c.kappa * c.kappa),
	                  inferred.gamma_m, inferred.sigma.value_or(nan)});
	report.tables.push_back(std::move(t));
	return report;
}

namespace {

// Truncation sizes are rounded up to a short ladder so that many labels share
// one eigendecomposition.
std::size_t dim_bucket(std::size_t needed)
{
	std::size_t b = 16;
	while(b < needed) {
		b = (b % 3 == 0) ? b / 3 * 4 : b / 2 * 3; // 16, 24, 32, 48, 64, ...
	}
	return b;
}

} // namespace

Report run_oracle_check(const RunConfig& cfg)
{
	const ExperimentParams& p = cfg.params;
	const DerivedCouplings c = derive_couplings(p);
	const int n = p.n_fock;

	Report report;
	report.command = "oracle-check";

	const double nbar_used = std::min(c.nbar, cfg.oracle.nbar_max);
	if(nbar_used < c.nbar) {
		report.warnings.push_back("thermal occupation " + format_double(c.nbar) + " clipped to " +
		                          format_double(nbar_used) + " for the truncated-space oracle");
	}
	const ThermalEnsemble ensemble =
	    thermal_ensemble(nbar_used, cfg.ensemble.scheme, cfg.ensemble.size, cfg.ensemble.seed);
	std::vector<CoherentLabel> labels = ensemble.labels;
	const std::size_t ensemble_labels = labels.size();
	if(cfg.oracle.spot_beta > 0.0) {
		labels.emplace_back(cfg.oracle.spot_beta, 0.0);
	}

	std::vector<std::size_t> dims(labels.size());
	std::map<std::size_t, std::unique_ptr<SectorPropagator>> propagators;
	for(std::size_t i = 0; i < labels.size(); ++i) {
		dims[i] = cfg.oracle.dim > 0 ? cfg.oracle.dim : dim_bucket(truncation_dim(labels[i].abs(), c.kappa, n));
		propagators.try_emplace(dims[i], nullptr);
	}
	std::vector<std::size_t> distinct;
	for(const auto& kv : propagators) {
		distinct.push_back(kv.first);
	}
	std::vector<std::unique_ptr<SectorPropagator>> built(distinct.size());
	detail::parallel_for(distinct.size(), [&](std::size_t i) {
		built[i] = std::make_unique<SectorPropagator>(build_sector_hamiltonian(n, p, distinct[i]));
	});
	for(std::size_t i = 0; i < distinct.size(); ++i) {
		propagators[distinct[i]] = std::move(built[i]);
	}

	std::vector<std::vector<FidelityReport>> results(labels.size());
	detail::parallel_for(labels.size(), [&](std::size_t i) {
		const SectorPropagator& prop = *propagators.at(dims[i]);
		for(const double t : cfg.times) {
			results[i].push_back(verify_analytic(prop, labels[i], p, t));
		}
	});

	Table checks{"checks",
	             {"label", "spot_check", "beta_re", "beta_im", "sector", "t_s", "dim", "overlap_modulus",
	              "phase_residual_rad", "kerr_only_residual_rad", "truncation_deficit", "truncation_ok", "pass"},
	             {}};
	double worst_overlap = 1.0;
	double worst_phase = 0.0;
	double worst_kerr_only = 0.0;
	std::int64_t failures = 0;
	std::int64_t truncation_failures = 0;
	for(std::size_t i = 0; i < labels.size(); ++i) {
		for(std::size_t k = 0; k < cfg.times.size(); ++k) {
			const FidelityReport& r = results[i][k];
			const bool pass = meets_contract(r);
			failures += pass ? 0 : 1;
			truncation_failures += r.truncation_ok ? 0 : 1;
			worst_overlap = std::min(worst_overlap, r.overlap_modulus);
			worst_phase = std::max(worst_phase, std::abs(r.phase_residual));
			worst_kerr_only = std::max(worst_kerr_only, std::abs(r.kerr_only_residual));
			checks.rows.push_back({integer(static_cast<std::int64_t>(i)), i >= ensemble_labels,
			                       labels[i].value().real(), labels[i].value().imag(), integer(n), cfg.times[k],
			                       integer(static_cast<std::int64_t>(dims[i])), r.overlap_modulus, r.phase_residual,
			                       r.kerr_only_residual, r.truncation_deficit, r.truncation_ok, pass});
		}
	}

	Table summary{"summary",
	              {"rows", "ensemble_labels", "spot_labels", "nbar_physical", "nbar_used", "sector", "kappa",
	               "worst_overlap_modulus", "worst_phase_residual_rad", "worst_kerr_only_residual_rad", "failures",
	               "truncation_failures", "overlap_tolerance", "phase_tolerance_rad"},
	              {}};
	summary.rows.push_back({integer(static_cast<std::int64_t>(checks.rows.size())),
	                        integer(static_cast<std::int64_t>(ensemble_labels)),
	                        integer(static_cast<std::int64_t>(labels.size() - ensemble_labels)), c.nbar, nbar_used,
	                        integer(n), c.kappa, worst_overlap, worst_phase, worst_kerr_only, integer(failures),
	                        integer(truncation_failures), oracle_overlap_tolerance, oracle_phase_tolerance});

	report.tables = {std::move(summary), std::move(checks)};
	if(failures > 0) {
		report.exit_code = exit_contract_violation;
	}
	return report;
}

namespace {

std::string cell_text(const Cell& cell)
{
	return std::visit(
	    [](const auto& v) -> std::string {
		    using T = std::decay_t<decltype(v)>;
		    if constexpr(std::is_same_v<T, double>) {
			    return format_double(v);
		    } else if constexpr(std::is_same_v<T, std::int64_t>) {
			    return std::to_string(v);
		    } else if constexpr(std::is_same_v<T, bool>) {
			    return v ? "true" : "false";
		    } else {
			    if(v.find_first_of(",\"\n") == std::string::npos) {
				    return v;
			    }
			    std::string quoted = "\"";
			    for(const char ch : v) {
				    quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
			    }
			    return quoted + "\"";
		    }
	    },
	    cell);
}

nlohmann::ordered_json cell_json(const Cell& cell)
{
	return std::visit(
	    [](const auto& v) -> nlohmann::ordered_json {
		    using T = std::decay_t<decltype(v)>;
		    if constexpr(std::is_same_v<T, double>) {
			    if(!std::isfinite(v)) {
				    return nullptr;
			    }
			    return v;
		    } else {
			    return v;
		    }
	    },
	    cell);
}

struct ConstantEntry {
	const char* name;
	double value;
};

constexpr ConstantEntry constant_table[] = {
    {"hbar_j_s", constants::hbar},
    {"k_b_j_per_k", constants::k_boltzmann},
    {"g_m3_per_kg_s2", constants::gravitational},
};

} // namespace

std::string render(const Report& report, const RunConfig& cfg, OutputFormat format)
{
	if(format == OutputFormat::json) {
		nlohmann::ordered_json doc;
		doc["schema_version"] = schema_version;
		doc["program"] = program_name;
		doc["version"] = program_version;
		doc["command"] = report.command;
		auto& consts = doc["constants"] = nlohmann::ordered_json::object();
		for(const auto& k : constant_table) {
			consts[k.name] = k.value;
		}
		auto& config = doc["config"] = nlohmann::ordered_json::object();
		for(const auto& [key, value] : cfg.effective) {
			config[key] = value;
		}
		doc["warnings"] = report.warnings;
		auto& tables = doc["tables"] = nlohmann::ordered_json::object();
		for(const auto& table : report.tables) {
			auto& t = tables[table.name];
			t["columns"] = table.columns;
			auto& rows = t["rows"] = nlohmann::ordered_json::array();
			for(const auto& row : table.rows) {
				nlohmann::ordered_json obj = nlohmann::ordered_json::object();
				for(std::size_t i = 0; i < table.columns.size(); ++i) {
					obj[table.columns[i]] = cell_json(row[i]);
				}
				rows.push_back(std::move(obj));
			}
		}
		return doc.dump(2) + "\n";
	}

	std::ostringstream out;
	out << "# schema_version = " << schema_version << '\n';
	out << "# program = " << program_name << ' ' << program_version << '\n';
	out << "# command = " << report.command << '\n';
	for(const auto& k : constant_table) {
		out << "# constant " << k.name << " = " << format_double(k.value) << '\n';
	}
	for(const auto& [key, value] : cfg.effective) {
		out << "# config " << key << " = " << value << '\n';
	}
	for(const auto& w : report.warnings) {
		out << "# warning: " << w << '\n';
	}
	for(std::size_t ti = 0; ti < report.tables.size(); ++ti) {
		const Table& table = report.tables[ti];
		if(ti > 0) {
			out << '\n';
		}
		out << "# table: " << table.name << '\n';
		for(std::size_t i = 0; i < table.columns.size(); ++i) {
			out << (i ? "," : "") << table.columns[i];
		}
		out << '\n';
		for(const auto& row : table.rows) {
			for(std::size_t i = 0; i < row.size(); ++i) {
				out << (i ? "," : "") << cell_text(row[i]);
			}
			out << '\n';
		}
	}
	return out.str();
}

} // namespace optocat
