#ifndef TDGSLAT_COMMANDS_HPP
#define TDGSLAT_COMMANDS_HPP

#include <tdgslat/config.hpp>

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

namespace tdgslat {

// Files written below RunConfig::output.dir
inline constexpr char const* observables_file = "observables.csv";
inline constexpr char const* spectrum_file = "spectrum.csv";
inline constexpr char const* bench_file = "bench.csv";

/// ground_<scheme>.ckpt and ground_<scheme>.csv, named after the scheme that prepared the state.
std::filesystem::path ground_checkpoint_path(RunConfig const& config);
std::filesystem::path ground_csv_path(RunConfig const& config);
std::filesystem::path checkpoint_path(RunConfig const& config, std::int64_t step);

/// Ground state of the preparing scheme converted for the propagated one:
/// u reset or seeded, boost applied, symmetry condition re-solved.
OrbitalState initial_state(RunConfig const& config, System const& system, OrbitalState ground);

/// Ground state of the preparing scheme (ground.source, else scheme), written to disk.
OrbitalState cmd_ground(RunConfig const& config);

/// Ground state (from disk when present) -> boost -> propagation. With `resume`
/// the latest step checkpoint is continued and the CSV is cut back to it.
RunSummary cmd_propagate(RunConfig const& config, bool resume = false);

/// Peak table of the dipole along the boost direction (x when unboosted).
std::vector<Peak> cmd_spectrum(RunConfig const& config);

struct BenchRow {
	Scheme scheme;
	double seconds = 0.0;  // minimum over repeats
	double ratio = 0.0;    // seconds / ALDA seconds
	bool ok = false;
	std::string error;
};

/// Wall time of benchmark.steps propagation steps per scheme, normalized by
/// an ALDA run made in the same invocation. Failing schemes are marked, not thrown.
std::vector<BenchRow> cmd_bench(RunConfig const& config);

/// 0 success, 2 configuration, 3 numerical failure, 4 I/O, 1 anything else.
int exit_code(std::exception_ptr error);

}  // namespace tdgslat

#endif
