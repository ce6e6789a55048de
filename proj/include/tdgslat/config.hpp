#ifndef TDGSLAT_CONFIG_HPP
#define TDGSLAT_CONFIG_HPP

#include <tdgslat/dynamics.hpp>

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace tdgslat {

enum class PotentialKind { chain, harmonic };

std::string to_string(PotentialKind kind);

struct SystemConfig {
	int dim = 1;
	std::array<int, 2> points{1, 1};
	double spacing = 0.0;
	Boundary boundary = Boundary::zero;
	int stencil_order = 2;
	int electrons = 0;
	PotentialKind potential = PotentialKind::chain;
	// chain: soft-Coulomb centres on the x axis with their charges
	std::vector<double> centers;
	std::vector<double> charges;
	double nuclear_softening = 1.0;
	// harmonic: trap frequency per axis
	std::array<double, 2> omega{1.0, 1.0};

	friend bool operator==(SystemConfig const&, SystemConfig const&) = default;
};

struct FunctionalConfig {
	InteractionKernel::Kind kernel = InteractionKernel::Kind::soft_coulomb;
	double softening = 1.0;
	double strength = 1.0;
	double xc_amplitude = 1.0;
	double xc_exponent = 4.0 / 3.0;

	friend bool operator==(FunctionalConfig const&, FunctionalConfig const&) = default;
};

struct GroundConfig {
	GroundStateConfig solver;
	// prepare the initial state with another scheme (shared-initial-state mode)
	std::optional<Scheme> source;

	friend bool operator==(GroundConfig const&, GroundConfig const&) = default;
};

struct OutputConfig {
	std::string dir = "out";
	std::int64_t output_stride = 1;
	std::int64_t checkpoint_stride = 0;

	friend bool operator==(OutputConfig const&, OutputConfig const&) = default;
};

struct BenchmarkConfig {
	std::vector<Scheme> schemes;
	std::int64_t steps = 100;
	int repeats = 3;

	friend bool operator==(BenchmarkConfig const&, BenchmarkConfig const&) = default;
};

struct RunConfig {
	SystemConfig system;
	FunctionalConfig functional;
	Scheme scheme = Scheme::alda;
	GroundConfig ground;
	PropagatorConfig propagation;  // its scheme field mirrors `scheme`
	std::array<double, 2> boost{0.0, 0.0};
	OutputConfig output;
	BenchmarkConfig benchmark;

	friend bool operator==(RunConfig const&, RunConfig const&) = default;
};

/// Parses the sectioned key = value format described in docs/config.md.
/// Throws ConfigError listing every problem found, each with its line number.
RunConfig parse_config(std::string const& text);
RunConfig load_config(std::filesystem::path const& path);

/// Canonical text form; parse_config(serialize(c)) == c.
std::string serialize(RunConfig const& config);

/// Directory holding the committed scenario presets.
std::filesystem::path preset_directory();
std::vector<std::string> preset_names();
std::string preset_text(std::string const& name);
RunConfig load_preset(std::string const& name);

/// Grid, external potential and functional described by the configuration.
System make_system(RunConfig const& config);

}  // namespace tdgslat

#endif
