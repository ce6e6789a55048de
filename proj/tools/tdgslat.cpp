#include <tdgslat/commands.hpp>
#include <tdgslat/errors.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>

using namespace tdgslat;

namespace {

struct Args {
	std::string config;
	std::string preset;
	std::string out;
	std::optional<std::int64_t> steps;
	std::optional<std::uint64_t> seed;
	bool resume = false;
};

RunConfig resolve(Args const& a) {
	if(a.config.empty() && a.preset.empty()) throw ConfigError({"give --config PATH or --preset NAME"});
	if(!a.config.empty() && !a.preset.empty()) throw ConfigError({"--config and --preset are mutually exclusive"});
	RunConfig c = a.config.empty() ? load_preset(a.preset) : load_config(a.config);
	if(!a.out.empty()) c.output.dir = a.out;
	if(a.steps) {
		c.propagation.steps = *a.steps;
		c.benchmark.steps = *a.steps;
	}
	if(a.seed) c.ground.solver.seed = *a.seed;
	return c;
}

void report(RunSummary const& s) {
	std::printf("%lld steps, max orthonormality defect %.3g", static_cast<long long>(s.steps), s.max_orthonormality_defect);
	if(s.orthonormality_warnings) std::printf(", %lld repair warnings", static_cast<long long>(s.orthonormality_warnings));
	if(s.symmetry_failures) std::printf(", %lld symmetry warnings", static_cast<long long>(s.symmetry_failures));
	std::printf("\n");
}

}  // namespace

int main(int argc, char** argv) {
	CLI::App app{"Real-space TDDFT with self-interaction-corrected propagation schemes"};
	app.require_subcommand(1);
	Args args;
	auto add_common = [&](CLI::App* cmd) {
		cmd->add_option("--config", args.config, "run configuration file");
		cmd->add_option("--preset", args.preset, "committed scenario preset");
		cmd->add_option("--out", args.out, "output directory (overrides output.dir)");
	};
	auto* ground = app.add_subcommand("ground", "prepare and save the ground state");
	auto* propagate = app.add_subcommand("propagate", "boost the ground state and propagate");
	auto* spectrum = app.add_subcommand("spectrum", "dipole spectrum of a finished propagation");
	auto* bench = app.add_subcommand("bench", "scheme cost relative to ALDA");
	for(auto* cmd : {ground, propagate, spectrum, bench}) add_common(cmd);
	for(auto* cmd : {ground, propagate, bench}) cmd->add_option("--seed", args.seed, "seed of the random initial rotation");
	for(auto* cmd : {propagate, bench}) cmd->add_option("--steps", args.steps, "number of time steps");
	propagate->add_flag("--resume", args.resume, "continue from the latest checkpoint");

	try {
		app.parse(argc, argv);
	} catch(CLI::ParseError const& e) {
		return app.exit(e) == 0 ? 0 : 2;
	}

	try {
		auto const config = resolve(args);
		if(*ground) {
			cmd_ground(config);
			std::printf("wrote %s\n", ground_checkpoint_path(config).string().c_str());
		} else if(*propagate) {
			report(cmd_propagate(config, args.resume));
		} else if(*spectrum) {
			auto const peaks = cmd_spectrum(config);
			for(std::size_t i = 0; i < std::min<std::size_t>(peaks.size(), 5); ++i) {
				std::printf("omega %.6f  intensity %.6g\n", peaks[i].omega, peaks[i].intensity);
			}
		} else if(*bench) {
			int failures = 0;
			for(auto const& row : cmd_bench(config)) {
				if(row.ok) {
					std::printf("%-10s %10.4f s  ratio %.3f\n", to_string(row.scheme).c_str(), row.seconds, row.ratio);
				} else {
					std::printf("%-10s failed: %s\n", to_string(row.scheme).c_str(), row.error.c_str());
					++failures;
				}
			}
			if(failures) return 3;
		}
	} catch(std::exception const& e) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_code(std::current_exception());
	}
	return 0;
}
