#include <tdgslat/commands.hpp>
#include <tdgslat/errors.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace tdgslat {

namespace {

Scheme preparing_scheme(RunConfig const& config) { return config.ground.source.value_or(config.scheme); }

void ensure_dir(std::filesystem::path const& dir) {
	std::error_code ec;
	std::filesystem::create_directories(dir, ec);
	if(ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

std::ofstream open_out(std::filesystem::path const& path, std::ios::openmode mode = std::ios::out) {
	std::ofstream out(path, mode);
	if(!out) throw IoError("cannot write " + path.string());
	return out;
}

void check_written(std::ofstream& out, std::filesystem::path const& path) {
	out.flush();
	if(!out) throw IoError("write failed for " + path.string());
}

OrbitalState load_or_make_ground(RunConfig const& config, System const& system) {
	auto const path = ground_checkpoint_path(config);
	if(std::filesystem::exists(path)) {
		auto ground = load_checkpoint(path).state;
		bool const fits = ground.size() == system.electrons && ground.grid() == system.grid;
		if(fits) return ground;
	}
	return cmd_ground(config);
}

// Keeps the header and the first `rows` data lines.
void truncate_csv(std::filesystem::path const& path, std::size_t rows) {
	std::ifstream in(path);
	if(!in) throw IoError("cannot resume: missing " + path.string());
	std::vector<std::string> lines;
	std::string line;
	while(lines.size() < rows + 1 && std::getline(in, line)) lines.push_back(line);
	if(lines.size() < rows + 1) throw IoError("cannot resume: " + path.string() + " is shorter than the checkpoint");
	in.close();
	auto out = open_out(path, std::ios::out | std::ios::trunc);
	for(auto const& l : lines) out << l << '\n';
	check_written(out, path);
}

std::optional<std::pair<std::int64_t, std::filesystem::path>> latest_checkpoint(std::filesystem::path const& dir) {
	std::optional<std::pair<std::int64_t, std::filesystem::path>> best;
	std::error_code ec;
	for(auto const& entry : std::filesystem::directory_iterator(dir, ec)) {
		auto const name = entry.path().filename().string();
		if(name.rfind("checkpoint_", 0) != 0 || entry.path().extension() != ".ckpt") continue;
		auto const digits = entry.path().stem().string().substr(11);
		if(digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) continue;
		auto const step = std::stoll(digits);
		if(!best || step > best->first) best = {step, entry.path()};
	}
	return best;
}

}  // namespace

OrbitalState initial_state(RunConfig const& config, System const& system, OrbitalState ground) {
	if(!is_two_set(config.scheme)) {
		ground.u = Matrix::Identity(ground.size(), ground.size());
	} else if(!is_two_set(preparing_scheme(config))) {
		// a one-set ground state has no localizing set yet; start from a seeded rotation
		ground.u = random_unitary(ground.size(), config.ground.solver.seed);
	}
	OrbitalState s = boost(ground, config.boost);
	if(is_two_set(config.scheme)) {
		Propagator prop(system, config.propagation);
		prop.resolve_symmetry(s);
	}
	return s;
}

std::filesystem::path ground_checkpoint_path(RunConfig const& config) {
	return std::filesystem::path(config.output.dir) / ("ground_" + to_string(preparing_scheme(config)) + ".ckpt");
}

std::filesystem::path ground_csv_path(RunConfig const& config) {
	return std::filesystem::path(config.output.dir) / ("ground_" + to_string(preparing_scheme(config)) + ".csv");
}

std::filesystem::path checkpoint_path(RunConfig const& config, std::int64_t step) {
	return std::filesystem::path(config.output.dir) / ("checkpoint_" + std::to_string(step) + ".ckpt");
}

OrbitalState cmd_ground(RunConfig const& config) {
	auto const system = make_system(config);
	auto const scheme = preparing_scheme(config);
	GroundStateReport report;
	auto const ground = ground_state(system, scheme, config.ground.solver, &report);

	ensure_dir(config.output.dir);
	save_checkpoint(ground_checkpoint_path(config), Checkpoint{ground, 0, 1.0});
	auto const csv = ground_csv_path(config);
	auto out = open_out(csv);
	write_csv_header(out, system.grid.dim());
	write_csv_row(out, observe(ground, system, scheme, config.propagation.gkli));
	check_written(out, csv);
	return ground;
}

RunSummary cmd_propagate(RunConfig const& config, bool resume) {
	auto const system = make_system(config);
	config.propagation.validate(system.grid);
	ensure_dir(config.output.dir);
	auto const csv = std::filesystem::path(config.output.dir) / observables_file;

	OrbitalState s;
	RunOptions options;
	options.output_stride = config.output.output_stride;
	options.checkpoint_stride = config.output.checkpoint_stride;
	std::ofstream out;
	if(resume) {
		auto const latest = latest_checkpoint(config.output.dir);
		if(!latest) throw IoError("cannot resume: no checkpoint in " + config.output.dir);
		auto ckpt = load_checkpoint(latest->second);
		if(ckpt.state.size() != system.electrons || !(ckpt.state.grid() == system.grid)) {
			throw IoError("checkpoint " + latest->second.string() + " does not match the configuration");
		}
		truncate_csv(csv, static_cast<std::size_t>(ckpt.step / options.output_stride + 1));
		s = std::move(ckpt.state);
		options.first_step = ckpt.step;
		options.solver_step = ckpt.solver_step;
		out = open_out(csv, std::ios::out | std::ios::app);
	} else {
		s = initial_state(config, system, load_or_make_ground(config, system));
		out = open_out(csv);
		write_csv_header(out, system.grid.dim());
	}

	options.on_record = [&](ObservableRecord const& r) {
		write_csv_row(out, r);
		out.flush();
	};
	options.on_checkpoint = [&](Checkpoint const& c) { save_checkpoint(checkpoint_path(config, c.step), c); };
	auto const summary = run(system, s, config.propagation, options);
	check_written(out, csv);
	return summary;
}

std::vector<Peak> cmd_spectrum(RunConfig const& config) {
	auto const dir = std::filesystem::path(config.output.dir);
	std::ifstream in(dir / observables_file);
	if(!in) throw IoError("cannot read " + (dir / observables_file).string() + "; run propagate first");
	auto const table = read_csv(in);
	auto const t = table.column("t");
	auto signal = table.column("dipole_x");
	if(config.system.dim == 2) {
		double const kx = config.boost[0], ky = config.boost[1];
		double const k = std::hypot(kx, ky);
		auto const dy = table.column("dipole_y");
		for(std::size_t i = 0; i < signal.size(); ++i) signal[i] = k > 0.0 ? (kx * signal[i] + ky * dy[i]) / k : signal[i];
	}
	std::vector<Peak> peaks;
	try {
		peaks = spectrum(t, signal);
	} catch(std::invalid_argument const& e) {
		throw NumericalError(std::string("spectrum: ") + e.what());
	}

	auto const path = dir / spectrum_file;
	auto out = open_out(path);
	out << "omega,intensity\n";
	char buf[96];
	for(auto const& p : peaks) {
		std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.omega, p.intensity);
		out << buf;
	}
	check_written(out, path);
	return peaks;
}

std::vector<BenchRow> cmd_bench(RunConfig const& config) {
	auto const system = make_system(config);
	std::vector<Scheme> schemes{Scheme::alda};
	for(auto s : config.benchmark.schemes) {
		if(s != Scheme::alda) schemes.push_back(s);
	}

	std::vector<BenchRow> rows;
	for(auto scheme : schemes) {
		BenchRow row;
		row.scheme = scheme;
		try {
			RunConfig c = config;
			c.scheme = scheme;
			c.propagation.scheme = scheme;
			c.propagation.steps = config.benchmark.steps;
			c.ground.source.reset();
			auto const start = initial_state(c, system, ground_state(system, scheme, c.ground.solver));
			double best = std::numeric_limits<double>::infinity();
			for(int r = 0; r < config.benchmark.repeats; ++r) {
				OrbitalState s = start;
				auto const t0 = std::chrono::steady_clock::now();
				run(system, s, c.propagation, RunOptions{});
				auto const t1 = std::chrono::steady_clock::now();
				best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
			}
			row.seconds = best;
			row.ok = true;
		} catch(std::exception const& e) {
			row.seconds = std::numeric_limits<double>::quiet_NaN();
			row.error = e.what();
		}
		rows.push_back(row);
	}
	double const base = rows.front().ok ? rows.front().seconds : std::numeric_limits<double>::quiet_NaN();
	for(auto& row : rows) row.ratio = row.ok ? row.seconds / base : std::numeric_limits<double>::quiet_NaN();

	ensure_dir(config.output.dir);
	auto const path = std::filesystem::path(config.output.dir) / bench_file;
	auto out = open_out(path);
	out << "scheme,electrons,steps,seconds,ratio_to_alda,status\n";
	char buf[160];
	for(auto const& row : rows) {
		std::snprintf(buf, sizeof buf, "%s,%d,%lld,%.17g,%.17g,%s\n", to_string(row.scheme).c_str(), system.electrons,
		              static_cast<long long>(config.benchmark.steps), row.seconds, row.ratio, row.ok ? "ok" : "failed");
		out << buf;
	}
	check_written(out, path);
	return rows;
}

int exit_code(std::exception_ptr error) {
	if(!error) return 0;
	try {
		std::rethrow_exception(error);
	} catch(ConfigError const&) {
		return 2;
	} catch(std::invalid_argument const&) {
		return 2;
	} catch(NumericalError const&) {
		return 3;
	} catch(IoError const&) {
		return 4;
	} catch(...) {
		return 1;
	}
}

}  // namespace tdgslat
