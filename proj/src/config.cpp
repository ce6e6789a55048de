#include <tdgslat/config.hpp>
#include <tdgslat/errors.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace tdgslat {

namespace {

std::string join(std::vector<std::string> const& items, char const* sep) {
	std::string out;
	for(std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
	return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
	: std::runtime_error(join(problems, "\n")), problems_(std::move(problems)) {}

std::string to_string(PotentialKind kind) { return kind == PotentialKind::chain ? "chain" : "harmonic"; }

namespace {

std::string trim(std::string_view s) {
	auto const first = s.find_first_not_of(" \t\r");
	if(first == std::string_view::npos) return {};
	auto const last = s.find_last_not_of(" \t\r");
	return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_list(std::string const& value) {
	std::vector<std::string> out;
	std::stringstream ss(value);
	std::string item;
	while(std::getline(ss, item, ',')) out.push_back(trim(item));
	if(out.size() == 1 && out.front().empty()) out.clear();
	return out;
}

// shortest text that reads back to the same double
std::string format_double(double v) {
	char buf[64];
	auto const res = std::to_chars(buf, buf + sizeof buf, v);
	return std::string(buf, res.ptr);
}

std::string format_list(std::vector<double> const& values) {
	std::vector<std::string> parts;
	for(auto v : values) parts.push_back(format_double(v));
	return join(parts, ", ");
}

double parse_double(std::string const& text) {
	double v = 0.0;
	auto const* end = text.data() + text.size();
	auto const res = std::from_chars(text.data(), end, v);
	if(res.ec != std::errc{} || res.ptr != end || !std::isfinite(v)) throw std::invalid_argument("expected a number, got '" + text + "'");
	return v;
}

std::int64_t parse_int(std::string const& text) {
	std::int64_t v = 0;
	auto const* end = text.data() + text.size();
	auto const res = std::from_chars(text.data(), end, v);
	if(res.ec != std::errc{} || res.ptr != end) throw std::invalid_argument("expected an integer, got '" + text + "'");
	return v;
}

int parse_small_int(std::string const& text) {
	auto const v = parse_int(text);
	if(v < -1000000000 || v > 1000000000) throw std::invalid_argument("integer out of range: " + text);
	return static_cast<int>(v);
}

bool parse_bool(std::string const& text) {
	if(text == "true") return true;
	if(text == "false") return false;
	throw std::invalid_argument("expected true or false, got '" + text + "'");
}

std::vector<double> parse_doubles(std::string const& text) {
	std::vector<double> out;
	for(auto const& item : split_list(text)) out.push_back(parse_double(item));
	return out;
}

// one or two values, the second defaulting to the first
std::array<double, 2> parse_pair(std::string const& text) {
	auto const v = parse_doubles(text);
	if(v.empty() || v.size() > 2) throw std::invalid_argument("expected one or two numbers");
	return {v[0], v.size() == 2 ? v[1] : v[0]};
}

struct Key {
	std::string section;
	std::string name;
	std::function<void(RunConfig&, std::string const&)> set;
	std::function<std::string(RunConfig const&)> get;
};

std::vector<Key> const& keys() {
	static std::vector<Key> const table = [] {
		std::vector<Key> k;
		auto add = [&](std::string section, std::string name, auto set, auto get) {
			k.push_back({std::move(section), std::move(name), set, get});
		};

		add("system", "dim", [](RunConfig& c, std::string const& v) { c.system.dim = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.system.dim); });
		add("system", "points",
		    [](RunConfig& c, std::string const& v) {
			    auto const items = split_list(v);
			    if(items.empty() || items.size() > 2) throw std::invalid_argument("expected one or two point counts");
			    c.system.points = {parse_small_int(items[0]), items.size() == 2 ? parse_small_int(items[1]) : 1};
		    },
		    [](RunConfig const& c) {
			    return c.system.dim == 2 ? std::to_string(c.system.points[0]) + ", " + std::to_string(c.system.points[1])
			                             : std::to_string(c.system.points[0]);
		    });
		add("system", "spacing", [](RunConfig& c, std::string const& v) { c.system.spacing = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.system.spacing); });
		add("system", "boundary", [](RunConfig& c, std::string const& v) { c.system.boundary = parse_boundary(v); },
		    [](RunConfig const& c) { return to_string(c.system.boundary); });
		add("system", "stencil_order", [](RunConfig& c, std::string const& v) { c.system.stencil_order = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.system.stencil_order); });
		add("system", "electrons", [](RunConfig& c, std::string const& v) { c.system.electrons = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.system.electrons); });
		add("system", "potential",
		    [](RunConfig& c, std::string const& v) {
			    if(v == "chain") c.system.potential = PotentialKind::chain;
			    else if(v == "harmonic") c.system.potential = PotentialKind::harmonic;
			    else throw std::invalid_argument("potential must be chain or harmonic");
		    },
		    [](RunConfig const& c) { return to_string(c.system.potential); });
		add("system", "centers", [](RunConfig& c, std::string const& v) { c.system.centers = parse_doubles(v); },
		    [](RunConfig const& c) { return format_list(c.system.centers); });
		add("system", "charges", [](RunConfig& c, std::string const& v) { c.system.charges = parse_doubles(v); },
		    [](RunConfig const& c) { return format_list(c.system.charges); });
		add("system", "nuclear_softening", [](RunConfig& c, std::string const& v) { c.system.nuclear_softening = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.system.nuclear_softening); });
		add("system", "omega", [](RunConfig& c, std::string const& v) { c.system.omega = parse_pair(v); },
		    [](RunConfig const& c) {
			    auto const& w = c.system.omega;
			    return w[0] == w[1] ? format_double(w[0]) : format_list({w[0], w[1]});
		    });

		add("functional", "kernel", [](RunConfig& c, std::string const& v) { c.functional.kernel = parse_kernel_kind(v); },
		    [](RunConfig const& c) { return to_string(c.functional.kernel); });
		add("functional", "softening", [](RunConfig& c, std::string const& v) { c.functional.softening = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.functional.softening); });
		add("functional", "strength", [](RunConfig& c, std::string const& v) { c.functional.strength = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.functional.strength); });
		add("functional", "xc_amplitude", [](RunConfig& c, std::string const& v) { c.functional.xc_amplitude = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.functional.xc_amplitude); });
		add("functional", "xc_exponent", [](RunConfig& c, std::string const& v) { c.functional.xc_exponent = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.functional.xc_exponent); });

		add("scheme", "name", [](RunConfig& c, std::string const& v) { c.scheme = parse_scheme(v); },
		    [](RunConfig const& c) { return to_string(c.scheme); });
		add("scheme", "gkli_tol", [](RunConfig& c, std::string const& v) { c.propagation.gkli.tol = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.propagation.gkli.tol); });
		add("scheme", "gkli_max_iter", [](RunConfig& c, std::string const& v) { c.propagation.gkli.max_iter = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.propagation.gkli.max_iter); });
		add("scheme", "gkli_mixing", [](RunConfig& c, std::string const& v) { c.propagation.gkli.mixing = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.propagation.gkli.mixing); });
		add("scheme", "gkli_gauge",
		    [](RunConfig& c, std::string const& v) { c.propagation.gkli.gauge_orbital = v == "last" ? -1 : parse_small_int(v); },
		    [](RunConfig const& c) {
			    return c.propagation.gkli.gauge_orbital < 0 ? std::string("last") : std::to_string(c.propagation.gkli.gauge_orbital);
		    });

		add("ground", "source",
		    [](RunConfig& c, std::string const& v) {
			    if(v == "own") c.ground.source.reset();
			    else c.ground.source = parse_scheme(v);
		    },
		    [](RunConfig const& c) { return c.ground.source ? to_string(*c.ground.source) : std::string("own"); });
		add("ground", "step_size", [](RunConfig& c, std::string const& v) { c.ground.solver.step_size = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.ground.solver.step_size); });
		add("ground", "threshold", [](RunConfig& c, std::string const& v) { c.ground.solver.threshold = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.ground.solver.threshold); });
		add("ground", "max_iter", [](RunConfig& c, std::string const& v) { c.ground.solver.max_iter = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.ground.solver.max_iter); });
		add("ground", "localization_stride", [](RunConfig& c, std::string const& v) { c.ground.solver.stride = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.ground.solver.stride); });
		add("ground", "symmetry_tol", [](RunConfig& c, std::string const& v) { c.ground.solver.symmetry_tol = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.ground.solver.symmetry_tol); });
		add("ground", "seed",
		    [](RunConfig& c, std::string const& v) {
			    auto const s = parse_int(v);
			    if(s < 0) throw std::invalid_argument("seed must be non-negative");
			    c.ground.solver.seed = static_cast<std::uint64_t>(s);
		    },
		    [](RunConfig const& c) { return std::to_string(c.ground.solver.seed); });

		add("propagation", "dt", [](RunConfig& c, std::string const& v) { c.propagation.dt = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.propagation.dt); });
		add("propagation", "steps", [](RunConfig& c, std::string const& v) { c.propagation.steps = parse_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.propagation.steps); });
		add("propagation", "taylor_order", [](RunConfig& c, std::string const& v) { c.propagation.taylor_order = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.propagation.taylor_order); });
		add("propagation", "midpoint_iterations",
		    [](RunConfig& c, std::string const& v) { c.propagation.midpoint_iterations = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.propagation.midpoint_iterations); });
		add("propagation", "midpoint_symmetry",
		    [](RunConfig& c, std::string const& v) {
			    if(v == "auto") c.propagation.midpoint_symmetry.reset();
			    else c.propagation.midpoint_symmetry = parse_bool(v);
		    },
		    [](RunConfig const& c) {
			    auto const& m = c.propagation.midpoint_symmetry;
			    return m ? std::string(*m ? "true" : "false") : std::string("auto");
		    });
		add("propagation", "symmetry_stride",
		    [](RunConfig& c, std::string const& v) { c.propagation.symmetry_stride = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.propagation.symmetry_stride); });
		add("propagation", "symmetry_tol", [](RunConfig& c, std::string const& v) { c.propagation.symmetry_tol = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.propagation.symmetry_tol); });
		add("propagation", "symmetry_max_iter",
		    [](RunConfig& c, std::string const& v) { c.propagation.symmetry_max_iter = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.propagation.symmetry_max_iter); });
		add("propagation", "orthonormality_warning",
		    [](RunConfig& c, std::string const& v) { c.propagation.orthonormality_warning = parse_double(v); },
		    [](RunConfig const& c) { return format_double(c.propagation.orthonormality_warning); });

		add("boost", "k", [](RunConfig& c, std::string const& v) {
			    auto const items = parse_doubles(v);
			    if(items.empty() || items.size() > 2) throw std::invalid_argument("expected one or two wave-vector components");
			    c.boost = {items[0], items.size() == 2 ? items[1] : 0.0};
		    },
		    [](RunConfig const& c) {
			    return c.system.dim == 2 ? format_list({c.boost[0], c.boost[1]}) : format_double(c.boost[0]);
		    });

		add("output", "dir", [](RunConfig& c, std::string const& v) { c.output.dir = v; },
		    [](RunConfig const& c) { return c.output.dir; });
		add("output", "output_stride", [](RunConfig& c, std::string const& v) { c.output.output_stride = parse_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.output.output_stride); });
		add("output", "checkpoint_stride", [](RunConfig& c, std::string const& v) { c.output.checkpoint_stride = parse_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.output.checkpoint_stride); });

		add("benchmark", "schemes",
		    [](RunConfig& c, std::string const& v) {
			    c.benchmark.schemes.clear();
			    for(auto const& item : split_list(v)) c.benchmark.schemes.push_back(parse_scheme(item));
		    },
		    [](RunConfig const& c) {
			    std::vector<std::string> names;
			    for(auto s : c.benchmark.schemes) names.push_back(to_string(s));
			    return join(names, ", ");
		    });
		add("benchmark", "steps", [](RunConfig& c, std::string const& v) { c.benchmark.steps = parse_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.benchmark.steps); });
		add("benchmark", "repeats", [](RunConfig& c, std::string const& v) { c.benchmark.repeats = parse_small_int(v); },
		    [](RunConfig const& c) { return std::to_string(c.benchmark.repeats); });
		return k;
	}();
	return table;
}

std::vector<std::string> const section_order = {"system", "functional", "scheme", "ground", "propagation", "boost", "output", "benchmark"};

struct Entry {
	std::string value;
	int line;
};

// section -> key -> entry
using Entries = std::map<std::string, std::map<std::string, Entry>>;

struct Lexed {
	Entries entries;
	std::optional<Entry> preset;
};

Lexed lex(std::string const& text, std::vector<std::string>& errors, std::string const& origin) {
	Lexed out;
	std::istringstream in(text);
	std::string raw;
	std::string section;
	int line = 0;
	auto fail = [&](std::string const& msg) { errors.push_back(origin + "line " + std::to_string(line) + ": " + msg); };
	while(std::getline(in, raw)) {
		++line;
		auto const hash = raw.find('#');
		auto const content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
		if(content.empty()) continue;
		if(content.front() == '[') {
			if(content.back() != ']') {
				fail("unterminated section header");
				continue;
			}
			section = trim(content.substr(1, content.size() - 2));
			if(std::find(section_order.begin(), section_order.end(), section) == section_order.end()) {
				fail("unknown section [" + section + "]");
			}
			out.entries[section];
			continue;
		}
		auto const eq = content.find('=');
		if(eq == std::string::npos) {
			fail("expected 'key = value'");
			continue;
		}
		auto const key = trim(content.substr(0, eq));
		auto const value = trim(content.substr(eq + 1));
		if(key.empty()) {
			fail("missing key before '='");
			continue;
		}
		if(section.empty()) {
			if(key == "preset") {
				if(out.preset) fail("preset given twice");
				out.preset = Entry{value, line};
			} else {
				fail("key '" + key + "' outside any section");
			}
			continue;
		}
		auto& sec = out.entries[section];
		if(sec.count(key)) fail("duplicate key '" + section + "." + key + "'");
		sec[key] = Entry{value, line};
	}
	return out;
}

void validate(RunConfig const& c, std::map<std::string, int> const& lines, std::vector<std::string>& errors) {
	auto at = [&](std::string const& key) {
		auto const it = lines.find(key);
		return it == lines.end() ? std::string() : "line " + std::to_string(it->second) + ": ";
	};
	auto const& s = c.system;
	std::size_t const before = errors.size();
	if(s.dim != 1 && s.dim != 2) errors.push_back(at("system.dim") + "dim must be 1 or 2");
	if(!lines.count("system.points")) errors.push_back("missing system.points");
	if(!lines.count("system.spacing")) errors.push_back("missing system.spacing");
	if(!lines.count("system.electrons")) errors.push_back("missing system.electrons");
	if(s.dim == 2 && lines.count("system.points") && s.points[1] == 1) errors.push_back(at("system.points") + "a 2D grid needs two point counts");
	if(s.dim == 1 && s.points[1] != 1) errors.push_back(at("system.points") + "a 1D grid takes one point count");
	std::optional<Grid> grid;
	if(errors.size() == before) {
		try {
			grid.emplace(s.dim, s.points, s.spacing, s.boundary, s.stencil_order);
		} catch(std::exception const& e) {
			errors.push_back(at("system.points") + e.what());
		}
	}
	if(grid && (s.electrons < 1 || static_cast<std::size_t>(s.electrons) > grid->size())) {
		errors.push_back(at("system.electrons") + "electrons must lie between 1 and the number of grid points");
	}
	if(s.potential == PotentialKind::chain) {
		if(s.centers.empty()) errors.push_back(at("system.centers") + "a chain potential needs at least one centre");
		if(s.centers.size() != s.charges.size()) errors.push_back(at("system.charges") + "charges must match centres one to one");
		if(!(s.nuclear_softening > 0.0)) errors.push_back(at("system.nuclear_softening") + "nuclear_softening must be positive");
	} else if(!(s.omega[0] > 0.0 && s.omega[1] > 0.0)) {
		errors.push_back(at("system.omega") + "omega must be positive");
	}

	InteractionKernel const kernel{c.functional.kernel, c.functional.softening, c.functional.strength};
	try {
		kernel.validate();
	} catch(std::exception const& e) {
		errors.push_back(at("functional.softening") + e.what());
	}
	try {
		XcFunctional(c.functional.xc_amplitude, c.functional.xc_exponent);
	} catch(std::exception const& e) {
		errors.push_back(at("functional.xc_exponent") + e.what());
	}

	for(auto const& p : c.ground.solver.problems()) errors.push_back(p);
	if(grid) {
		for(auto const& p : c.propagation.problems(*grid)) errors.push_back((p.rfind("dt", 0) == 0 ? at("propagation.dt") : "") + p);
	}
	if(c.propagation.gkli.gauge_orbital >= s.electrons) errors.push_back(at("scheme.gkli_gauge") + "gauge orbital out of range");
	if(s.dim == 1 && c.boost[1] != 0.0) errors.push_back(at("boost.k") + "a 1D boost takes one component");
	if(c.output.output_stride < 1) errors.push_back(at("output.output_stride") + "output_stride must be at least 1");
	if(c.output.checkpoint_stride < 0) errors.push_back(at("output.checkpoint_stride") + "checkpoint_stride must be non-negative");
	if(c.output.dir.empty()) errors.push_back(at("output.dir") + "output dir must not be empty");
	if(c.benchmark.steps < 1) errors.push_back(at("benchmark.steps") + "benchmark steps must be at least 1");
	if(c.benchmark.repeats < 1) errors.push_back(at("benchmark.repeats") + "benchmark repeats must be at least 1");
}

RunConfig build(Lexed const& base, Lexed const& user, std::vector<std::string>& errors) {
	Entries merged = base.entries;
	for(auto const& [section, items] : user.entries) {
		for(auto const& [key, entry] : items) merged[section][key] = entry;
		merged[section];
	}
	if(!merged.count("system")) {
		errors.push_back("missing system block");
		return {};
	}

	RunConfig c;
	c.benchmark.schemes = {Scheme::alda, Scheme::gslat, Scheme::tdsic};
	std::map<std::string, int> lines;
	for(auto const& [section, items] : merged) {
		for(auto const& [key, entry] : items) {
			auto const it = std::find_if(keys().begin(), keys().end(), [&](Key const& k) { return k.section == section && k.name == key; });
			std::string const where = "line " + std::to_string(entry.line) + ": ";
			if(it == keys().end()) {
				errors.push_back(where + "unknown key '" + section + "." + key + "'");
				continue;
			}
			try {
				it->set(c, entry.value);
				lines[section + "." + key] = entry.line;
			} catch(std::exception const& e) {
				errors.push_back(where + section + "." + key + ": " + e.what());
			}
		}
	}
	c.propagation.scheme = c.scheme;
	if(errors.empty()) validate(c, lines, errors);
	return c;
}

}  // namespace

RunConfig parse_config(std::string const& text) {
	std::vector<std::string> errors;
	auto const user = lex(text, errors, "");
	Lexed base;
	if(user.preset) {
		try {
			auto const preset = preset_text(user.preset->value);
			base = lex(preset, errors, "preset " + user.preset->value + ": ");
			if(base.preset) errors.push_back("preset " + user.preset->value + ": presets cannot reference other presets");
		} catch(IoError const& e) {
			errors.push_back("line " + std::to_string(user.preset->line) + ": " + e.what());
		}
	}
	auto config = build(base, user, errors);
	if(!errors.empty()) throw ConfigError(errors);
	return config;
}

RunConfig load_config(std::filesystem::path const& path) {
	std::ifstream in(path);
	if(!in) throw IoError("cannot open config " + path.string());
	std::stringstream ss;
	ss << in.rdbuf();
	return parse_config(ss.str());
}

std::string serialize(RunConfig const& config) {
	std::ostringstream out;
	bool first = true;
	for(auto const& section : section_order) {
		out << (first ? "" : "\n") << '[' << section << "]\n";
		first = false;
		for(auto const& k : keys()) {
			if(k.section != section) continue;
			// keys of the other potential kind stay at their defaults and are omitted
			bool const chain_only = k.name == "centers" || k.name == "charges" || k.name == "nuclear_softening";
			if(section == "system" && chain_only && config.system.potential != PotentialKind::chain) continue;
			if(section == "system" && k.name == "omega" && config.system.potential != PotentialKind::harmonic) continue;
			out << k.name << " = " << k.get(config) << '\n';
		}
	}
	return out.str();
}

std::filesystem::path preset_directory() { return TDGSLAT_PRESET_DIR; }

std::vector<std::string> preset_names() {
	std::vector<std::string> names;
	std::error_code ec;
	for(auto const& entry : std::filesystem::directory_iterator(preset_directory(), ec)) {
		if(entry.path().extension() == ".cfg") names.push_back(entry.path().stem().string());
	}
	std::sort(names.begin(), names.end());
	return names;
}

std::string preset_text(std::string const& name) {
	bool const plain = !name.empty() && std::all_of(name.begin(), name.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
	if(!plain) throw IoError("invalid preset name '" + name + "'");
	auto const path = preset_directory() / (name + ".cfg");
	std::ifstream in(path);
	if(!in) throw IoError("unknown preset '" + name + "'");
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

RunConfig load_preset(std::string const& name) { return parse_config("preset = " + name + "\n"); }

System make_system(RunConfig const& config) {
	auto const& s = config.system;
	Grid const grid(s.dim, s.points, s.spacing, s.boundary, s.stencil_order);
	RealField v_ext(grid);
	if(s.potential == PotentialKind::chain) {
		double const a2 = s.nuclear_softening * s.nuclear_softening;
		v_ext = sample<double>(grid, [&](double x, double y) {
			double v = 0.0;
			for(std::size_t c = 0; c < s.centers.size(); ++c) {
				double const dx = x - s.centers[c];
				v -= s.charges[c] / std::sqrt(dx * dx + y * y + a2);
			}
			return v;
		});
	} else {
		v_ext = sample<double>(grid, [&](double x, double y) {
			return 0.5 * (s.omega[0] * s.omega[0] * x * x + s.omega[1] * s.omega[1] * y * y);
		});
	}
	InteractionKernel const kernel{config.functional.kernel, config.functional.softening, config.functional.strength};
	XcFunctional const xc(config.functional.xc_amplitude, config.functional.xc_exponent);
	return System{grid, std::move(v_ext), s.electrons, AldaFunctional(grid, kernel, xc)};
}

}  // namespace tdgslat
