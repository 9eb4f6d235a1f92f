#include "optocat/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <optional>

#include "optocat/constants.hpp"
#include "optocat/errors.hpp"
#include "optocat/format.hpp"
#include "optocat/presets.hpp"

namespace optocat {

std::string_view to_string(OutputFormat format)
{
	return format == OutputFormat::csv ? "csv" : "json";
}

OutputFormat parse_output_format(std::string_view text)
{
	if(text == "csv") {
		return OutputFormat::csv;
	}
	if(text == "json") {
		return OutputFormat::json;
	}
	throw InvalidArgument("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

namespace {

struct Entry {
	std::string value;
	std::size_t line = 0; // 0: command line or preset
};

// Physical keys that map onto one ExperimentParams field. Frequencies come in
// two spellings; `hz` values are resolved through the frequency convention.
struct PhysicalKey {
	std::string_view key;
	ParamField field;
	bool frequency_hz;
	bool frequency_rad;
};

constexpr PhysicalKey physical_keys[] = {
    {"omega_0_hz", ParamField::omega_0, true, false},
    {"omega_0_rad_s", ParamField::omega_0, false, true},
    {"omega_m_hz", ParamField::omega_m, true, false},
    {"omega_m_rad_s", ParamField::omega_m, false, true},
    {"length_l_m", ParamField::length_L, false, false},
    {"mass_m_kg", ParamField::mass_m, false, false},
    {"gamma_a_per_s", ParamField::gamma_a, false, false},
    {"gamma_m_per_s", ParamField::gamma_m, false, false},
    {"theta_env_k", ParamField::theta_env, false, false},
    {"t_mirror_k", ParamField::T_mirror, false, false},
    {"density_d_kg_m3", ParamField::density_D, false, false},
};

constexpr std::string_view other_keys[] = {
    "freq_convention", "preset",         "n_fock",          "gamma_source",     "gamma_m_rate_per_s",
    "times_s",         "times_per_period", "ensemble_scheme", "ensemble_size",    "seed",
    "oracle_nbar_max", "oracle_spot_beta", "oracle_dim",      "output_format",    "output_path",
};

const PhysicalKey* find_physical(std::string_view key)
{
	for(const auto& k : physical_keys) {
		if(k.key == key) {
			return &k;
		}
	}
	return nullptr;
}

bool is_known_key(std::string_view key)
{
	if(find_physical(key) != nullptr) {
		return true;
	}
	if(std::find(std::begin(other_keys), std::end(other_keys), key) != std::end(other_keys)) {
		return true;
	}
	if(key.starts_with("scan.")) {
		const PhysicalKey* k = find_physical(key.substr(5));
		return k != nullptr;
	}
	return false;
}

std::string_view trim(std::string_view s)
{
	const auto first = s.find_first_not_of(" \t\r\n");
	if(first == std::string_view::npos) {
		return {};
	}
	const auto last = s.find_last_not_of(" \t\r\n");
	return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
	std::vector<std::string_view> out;
	std::size_t start = 0;
	while(true) {
		const auto pos = s.find(sep, start);
		out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
		if(pos == std::string_view::npos) {
			break;
		}
		start = pos + 1;
	}
	return out;
}

class Reader {
public:
	explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

	[[nodiscard]] bool has(std::string_view key) const { return entries_.count(std::string(key)) > 0; }

	[[nodiscard]] const Entry& at(std::string_view key) const { return entries_.at(std::string(key)); }

	[[nodiscard]] double number(std::string_view key) const { return parse_number(at(key), key); }

	[[nodiscard]] double number_or(std::string_view key, double fallback) const
	{
		return has(key) ? number(key) : fallback;
	}

	[[nodiscard]] std::uint64_t unsigned_or(std::string_view key, std::uint64_t fallback) const
	{
		if(!has(key)) {
			return fallback;
		}
		const Entry& e = at(key);
		std::uint64_t v = 0;
		const char* first = e.value.data();
		const char* last = first + e.value.size();
		const auto [ptr, ec] = std::from_chars(first, last, v);
		if(ec != std::errc{} || ptr != last) {
			throw ConfigError("expected a non-negative integer, got '" + e.value + "'", std::string(key), e.line);
		}
		return v;
	}

	[[nodiscard]] std::string text_or(std::string_view key, std::string fallback) const
	{
		return has(key) ? at(key).value : std::move(fallback);
	}

	[[nodiscard]] static double parse_number(const Entry& e, std::string_view key)
	{
		return parse_number_text(e.value, key, e.line);
	}

	[[nodiscard]] static double parse_number_text(std::string_view text, std::string_view key, std::size_t line)
	{
		std::string_view t = trim(text);
		if(!t.empty() && t.front() == '+') {
			t.remove_prefix(1);
		}
		double v = 0.0;
		const char* first = t.data();
		const char* last = first + t.size();
		const auto [ptr, ec] = std::from_chars(first, last, v);
		if(t.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
			throw ConfigError("expected a finite number in SI units implied by the key, got '" + std::string(text) +
			                      "'",
			                  std::string(key), line);
		}
		return v;
	}

	[[nodiscard]] const std::map<std::string, Entry>& entries() const { return entries_; }

private:
	std::map<std::string, Entry> entries_;
};

void check_value(bool ok, const char* what, std::string_view key, std::size_t line)
{
	if(!ok) {
		throw ConfigError(what, std::string(key), line);
	}
}

double resolve_frequency(double value, const PhysicalKey& k, FreqConvention convention)
{
	if(k.frequency_hz && convention == FreqConvention::angular) {
		return constants::two_pi * value;
	}
	return value;
}

void check_physical(const PhysicalKey& k, double v, std::size_t line)
{
	switch(k.field) {
	case ParamField::omega_0:
	case ParamField::omega_m:
	case ParamField::length_L:
	case ParamField::mass_m:
	case ParamField::density_D:
		check_value(v > 0.0, "value must be > 0", k.key, line);
		break;
	default:
		check_value(v >= 0.0, "value must be >= 0", k.key, line);
		break;
	}
}

std::string join_numbers(const std::vector<double>& values)
{
	std::string out;
	for(std::size_t i = 0; i < values.size(); ++i) {
		if(i > 0) {
			out += ", ";
		}
		out += format_double(values[i]);
	}
	return out;
}

std::string_view canonical_key(ParamField field)
{
	switch(field) {
	case ParamField::omega_0:
		return "omega_0_rad_s";
	case ParamField::omega_m:
		return "omega_m_rad_s";
	case ParamField::length_L:
		return "length_l_m";
	case ParamField::mass_m:
		return "mass_m_kg";
	case ParamField::gamma_a:
		return "gamma_a_per_s";
	case ParamField::gamma_m:
		return "gamma_m_per_s";
	case ParamField::theta_env:
		return "theta_env_k";
	case ParamField::T_mirror:
		return "t_mirror_k";
	case ParamField::density_D:
		return "density_d_kg_m3";
	}
	return "unknown";
}

std::vector<double> parse_axis_values(const Entry& e, std::string_view key)
{
	std::vector<double> values;
	const std::string_view v = trim(e.value);
	if(v.starts_with("log:")) {
		const auto parts = split(v.substr(4), ':');
		if(parts.size() != 3) {
			throw ConfigError("log axis must be written log:<lo>:<hi>:<points>", std::string(key), e.line);
		}
		const double lo = Reader::parse_number_text(parts[0], key, e.line);
		const double hi = Reader::parse_number_text(parts[1], key, e.line);
		const double points = Reader::parse_number_text(parts[2], key, e.line);
		check_value(lo > 0.0 && hi > 0.0, "log axis bounds must be > 0", key, e.line);
		check_value(points >= 2.0 && points == std::floor(points) && points <= 1e6,
		            "log axis needs an integer number of points >= 2", key, e.line);
		return log_spaced(lo, hi, static_cast<std::size_t>(points));
	}
	for(const auto part : split(v, ',')) {
		values.push_back(Reader::parse_number_text(part, key, e.line));
	}
	check_value(values.size() >= 2, "an axis needs at least 2 values", key, e.line);
	return values;
}

} // namespace

std::vector<std::string_view> mandatory_keys()
{
	return {"freq_convention", "omega_0_hz|omega_0_rad_s", "omega_m_hz|omega_m_rad_s",
	        "length_l_m",      "mass_m_kg",                "gamma_a_per_s",
	        "gamma_m_per_s",   "theta_env_k",              "t_mirror_k"};
}

RunConfig parse_config(std::string_view text, const std::vector<ConfigOverride>& overrides)
{
	std::map<std::string, Entry> entries;
	std::vector<std::string> scan_order;

	auto record = [&](std::string key, std::string value, std::size_t line, bool replace) {
		if(!is_known_key(key)) {
			throw ConfigError("unknown key", key, line);
		}
		const bool exists = entries.count(key) > 0;
		if(exists && !replace) {
			throw ConfigError("key given more than once (first on line " + std::to_string(entries[key].line) + ")",
			                  key, line);
		}
		if(!exists && key.starts_with("scan.")) {
			scan_order.push_back(key);
		}
		entries[key] = Entry{std::move(value), line};
	};

	std::size_t line_no = 0;
	std::size_t pos = 0;
	while(pos <= text.size()) {
		const auto eol = text.find('\n', pos);
		std::string_view raw = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
		++line_no;
		pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

		if(const auto hash = raw.find('#'); hash != std::string_view::npos) {
			raw = raw.substr(0, hash);
		}
		const std::string_view line = trim(raw);
		if(line.empty()) {
			continue;
		}
		const auto eq = line.find('=');
		if(eq == std::string_view::npos) {
			throw ConfigError("expected 'key = value'", std::string(line), line_no);
		}
		const std::string key(trim(line.substr(0, eq)));
		const std::string value(trim(line.substr(eq + 1)));
		if(key.empty()) {
			throw ConfigError("missing key before '='", {}, line_no);
		}
		if(value.empty()) {
			throw ConfigError("missing value", key, line_no);
		}
		record(key, value, line_no, false);
	}
	for(const auto& o : overrides) {
		record(o.key, o.value, 0, true);
	}

	// Paired frequency spellings are exclusive.
	for(const std::string_view base : {"omega_0", "omega_m"}) {
		for(const std::string_view prefix : {"", "scan."}) {
			const std::string hz = std::string(prefix) + std::string(base) + "_hz";
			const std::string rad = std::string(prefix) + std::string(base) + "_rad_s";
			if(entries.count(hz) && entries.count(rad)) {
				throw ConfigError("give either " + hz + " or " + rad + ", not both", rad, entries[rad].line);
			}
		}
	}

	// Preset values fill in whatever the text leaves unset.
	if(entries.count("preset")) {
		const Entry preset = entries["preset"];
		const std::vector<std::pair<std::string_view, std::string_view>>* values = nullptr;
		try {
			values = &preset_entries(preset.value);
		} catch(const InvalidArgument& e) {
			throw ConfigError(e.what(), "preset", preset.line);
		}
		for(const auto& [k, v] : *values) {
			const std::string key(k);
			std::string sibling;
			if(key.ends_with("_hz")) {
				sibling = key.substr(0, key.size() - 3) + "_rad_s";
			}
			if(!entries.count(key) && (sibling.empty() || !entries.count(sibling))) {
				entries[key] = Entry{std::string(v), 0};
			}
		}
	}

	std::vector<std::string> missing;
	for(const auto key : mandatory_keys()) {
		bool present = false;
		for(const auto alt : split(key, '|')) {
			present = present || entries.count(std::string(alt)) > 0;
		}
		if(!present) {
			missing.emplace_back(key);
		}
	}
	if(!missing.empty()) {
		std::string list;
		for(const auto& m : missing) {
			list += (list.empty() ? "" : ", ") + m;
		}
		throw ConfigError("missing mandatory keys: " + list);
	}

	const Reader r(std::move(entries));
	RunConfig cfg;

	try {
		cfg.params.freq_convention = parse_freq_convention(r.at("freq_convention").value);
	} catch(const InvalidArgument& e) {
		throw ConfigError(e.what(), "freq_convention", r.at("freq_convention").line);
	}
	const FreqConvention convention = cfg.params.freq_convention;

	for(const auto& k : physical_keys) {
		if(!r.has(k.key)) {
			continue;
		}
		const Entry& e = r.at(k.key);
		const double v = r.number(k.key);
		check_physical(k, v, e.line);
		field_ref(cfg.params, k.field) = resolve_frequency(v, k, convention);
	}
	if(r.has("n_fock")) {
		const Entry& e = r.at("n_fock");
		const auto n = r.unsigned_or("n_fock", 1);
		check_value(n >= 1 && n <= 1000000, "n_fock must be an integer >= 1", "n_fock", e.line);
		cfg.params.n_fock = static_cast<int>(n);
	}
	try {
		cfg.params.validate();
	} catch(const InvalidArgument& e) {
		throw ConfigError(e.what());
	}

	// decoherence source
	GammaSource source = GammaSource::eid_model;
	if(r.has("gamma_source")) {
		try {
			source = parse_gamma_source(r.at("gamma_source").value);
		} catch(const InvalidArgument& e) {
			throw ConfigError(e.what(), "gamma_source", r.at("gamma_source").line);
		}
	}
	double external_rate = 0.0;
	if(source == GammaSource::external) {
		if(!r.has("gamma_m_rate_per_s")) {
			throw ConfigError("required when gamma_source = external", "gamma_m_rate_per_s");
		}
		external_rate = r.number("gamma_m_rate_per_s");
		check_value(external_rate >= 0.0, "value must be >= 0", "gamma_m_rate_per_s", r.at("gamma_m_rate_per_s").line);
	} else if(r.has("gamma_m_rate_per_s")) {
		throw ConfigError("only meaningful with gamma_source = external", "gamma_m_rate_per_s",
		                  r.at("gamma_m_rate_per_s").line);
	}
	cfg.decoherence = DecoherenceInputs::resolve(source, cfg.params, external_rate);

	// sample times
	if(r.has("times_s") && r.has("times_per_period")) {
		throw ConfigError("give either times_s or times_per_period, not both", "times_per_period",
		                  r.at("times_per_period").line);
	}
	if(r.has("times_s")) {
		const Entry& e = r.at("times_s");
		for(const auto part : split(e.value, ',')) {
			cfg.times.push_back(Reader::parse_number_text(part, "times_s", e.line));
		}
		for(std::size_t i = 0; i < cfg.times.size(); ++i) {
			check_value(cfg.times[i] >= 0.0, "times must be >= 0", "times_s", e.line);
			check_value(i == 0 || cfg.times[i] > cfg.times[i - 1], "times must be strictly increasing", "times_s",
			            e.line);
		}
	} else {
		const auto per_period = r.unsigned_or("times_per_period", 8);
		check_value(per_period >= 1 && per_period <= 1000000, "times_per_period must be >= 1", "times_per_period",
		            r.has("times_per_period") ? r.at("times_per_period").line : 0);
		const double period = full_period(cfg.params);
		for(std::uint64_t k = 0; k <= per_period; ++k) {
			cfg.times.push_back(period * static_cast<double>(k) / static_cast<double>(per_period));
		}
		cfg.times.back() = period;
	}

	// ensemble
	if(r.has("ensemble_scheme")) {
		try {
			cfg.ensemble.scheme = parse_sampling_scheme(r.at("ensemble_scheme").value);
		} catch(const InvalidArgument& e) {
			throw ConfigError(e.what(), "ensemble_scheme", r.at("ensemble_scheme").line);
		}
	}
	cfg.ensemble.size = r.unsigned_or("ensemble_size", cfg.ensemble.size);
	check_value(cfg.ensemble.size >= 1, "ensemble_size must be >= 1", "ensemble_size",
	            r.has("ensemble_size") ? r.at("ensemble_size").line : 0);
	if(cfg.ensemble.scheme == SamplingScheme::radial_quadrature) {
		check_value(cfg.ensemble.size <= 512, "radial-quadrature supports at most 512 nodes", "ensemble_size",
		            r.has("ensemble_size") ? r.at("ensemble_size").line : 0);
	}
	cfg.ensemble.seed = r.unsigned_or("seed", 0);

	// oracle
	cfg.oracle.nbar_max = r.number_or("oracle_nbar_max", cfg.oracle.nbar_max);
	check_value(cfg.oracle.nbar_max >= 0.0, "value must be >= 0", "oracle_nbar_max",
	            r.has("oracle_nbar_max") ? r.at("oracle_nbar_max").line : 0);
	cfg.oracle.spot_beta = r.number_or("oracle_spot_beta", cfg.oracle.spot_beta);
	check_value(cfg.oracle.spot_beta >= 0.0, "value must be >= 0", "oracle_spot_beta",
	            r.has("oracle_spot_beta") ? r.at("oracle_spot_beta").line : 0);
	cfg.oracle.dim = r.unsigned_or("oracle_dim", 0);
	check_value(cfg.oracle.dim == 0 || cfg.oracle.dim >= 2, "oracle_dim must be 0 (heuristic) or >= 2", "oracle_dim",
	            r.has("oracle_dim") ? r.at("oracle_dim").line : 0);

	// output
	if(r.has("output_format")) {
		try {
			cfg.format = parse_output_format(r.at("output_format").value);
		} catch(const InvalidArgument& e) {
			throw ConfigError(e.what(), "output_format", r.at("output_format").line);
		}
	}
	cfg.output_path = r.text_or("output_path", "");

	// scan axes, in order of appearance
	for(const auto& key : scan_order) {
		const PhysicalKey* k = find_physical(std::string_view(key).substr(5));
		const Entry& e = r.at(key);
		ScanAxis axis{k->field, parse_axis_values(e, key)};
		for(double& v : axis.values) {
			check_physical(*k, v, e.line);
			v = resolve_frequency(v, *k, convention);
		}
		for(const auto& other : cfg.scan_axes) {
			check_value(other.field != axis.field, "parameter swept twice", key, e.line);
		}
		cfg.scan_axes.push_back(std::move(axis));
	}
	if(cfg.scan_axes.size() > 3) {
		throw ConfigError("at most 3 scan axes are supported", scan_order[3], r.at(scan_order[3]).line);
	}

	// effective configuration, canonical and re-parseable
	auto& eff = cfg.effective;
	eff.emplace_back("freq_convention", std::string(to_string(convention)));
	for(const auto field : {ParamField::omega_0, ParamField::omega_m, ParamField::length_L, ParamField::mass_m,
	                        ParamField::gamma_a, ParamField::gamma_m, ParamField::theta_env, ParamField::T_mirror}) {
		eff.emplace_back(std::string(canonical_key(field)), format_double(field_ref(cfg.params, field)));
	}
	eff.emplace_back("n_fock", std::to_string(cfg.params.n_fock));
	eff.emplace_back("density_d_kg_m3", format_double(cfg.params.density_D));
	eff.emplace_back("gamma_source", std::string(to_string(source)));
	if(source == GammaSource::external) {
		eff.emplace_back("gamma_m_rate_per_s", format_double(external_rate));
	}
	eff.emplace_back("times_s", join_numbers(cfg.times));
	eff.emplace_back("ensemble_scheme", std::string(to_string(cfg.ensemble.scheme)));
	eff.emplace_back("ensemble_size", std::to_string(cfg.ensemble.size));
	eff.emplace_back("seed", std::to_string(cfg.ensemble.seed));
	eff.emplace_back("oracle_nbar_max", format_double(cfg.oracle.nbar_max));
	eff.emplace_back("oracle_spot_beta", format_double(cfg.oracle.spot_beta));
	eff.emplace_back("oracle_dim", std::to_string(cfg.oracle.dim));
	eff.emplace_back("output_format", std::string(to_string(cfg.format)));
	for(const auto& axis : cfg.scan_axes) {
		eff.emplace_back("scan." + std::string(canonical_key(axis.field)), join_numbers(axis.values));
	}
	return cfg;
}

} // namespace optocat
