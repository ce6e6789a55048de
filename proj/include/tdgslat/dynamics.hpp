#ifndef TDGSLAT_DYNAMICS_HPP
#define TDGSLAT_DYNAMICS_HPP

#include <tdgslat/checkpoint.hpp>
#include <tdgslat/hamiltonian.hpp>
#include <tdgslat/observables.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace tdgslat {

struct PropagatorConfig {
	double dt = 0.01;
	std::int64_t steps = 0;
	Scheme scheme = Scheme::alda;
	int taylor_order = 4;
	int symmetry_stride = 1;
	int midpoint_iterations = 2;
	// re-solve the symmetry condition at every midpoint, not only after the step;
	// unset means only for TDSIC, whose Hermiticity on the occupied space depends on it
	std::optional<bool> midpoint_symmetry;
	double symmetry_tol = 1e-6;
	int symmetry_max_iter = 200;
	// pre-repair defect above which a step is flagged
	double orthonormality_warning = 1e-6;
	GkliOptions gkli;

	/// Every violated invariant, empty when the config can be used on `grid`.
	std::vector<std::string> problems(Grid const& grid) const;
	void validate(Grid const& grid) const;
	bool solves_at_midpoint() const { return midpoint_symmetry.value_or(scheme == Scheme::tdsic); }

	friend bool operator==(PropagatorConfig const&, PropagatorConfig const&) = default;
};

/// Largest admissible time step on a grid, h^2 / pi.
double stability_bound(Grid const& grid);

struct GroundStateConfig {
	// <= 0 selects 1 / (kinetic bound + range of v_ext + 1)
	double step_size = 0.0;
	double threshold = 1e-10;
	int max_iter = 50000;
	int stride = 10;
	double symmetry_tol = 1e-8;
	std::uint64_t seed = 1;

	std::vector<std::string> problems() const;
	void validate() const;

	friend bool operator==(GroundStateConfig const&, GroundStateConfig const&) = default;
};

struct GroundStateReport {
	int iterations = 0;
	double variance = 0.0;
	double symmetry_residual = 0.0;
};

/// Lowest N eigenvectors of the dense matrix of -1/2 Lap + v_ext.
Orbitals independent_particle_orbitals(Grid const& grid, RealField const& v_ext, int n);

/// Damped-gradient ground state of one scheme. Two-set schemes start from a
/// seeded random rotation of the independent-particle orbitals.
OrbitalState ground_state(System const& system, Scheme scheme, GroundStateConfig const& cfg,
                          GroundStateReport* report = nullptr);

/// Multiplies every phi_i by exp(i k.r); u is left unchanged.
OrbitalState boost(OrbitalState const& s, std::array<double, 2> k);

/// Sum over orbitals of the per-orbital energy variance ||h phi_i||^2 - |<phi_i|h|phi_i>|^2.
double energy_variance(Hamiltonian const& h, Orbitals const& phi);

/// exp(-i dt h) f by its Taylor series to `order`.
Field taylor_exponential(Hamiltonian const& h, Field const& f, double dt, int order);

struct StepReport {
	double pre_repair_defect = 0.0;
	bool orthonormality_warning = false;
	bool symmetry_solved = false;
	SymmetryReport symmetry;
	bool symmetry_warning = false;
};

/// Exponential-midpoint propagation for one scheme.
class Propagator {
public:
	Propagator(System const& system, PropagatorConfig const& cfg);

	/// One step from s at step index `step` (which decides the symmetry stride).
	OrbitalState step(OrbitalState const& s, std::int64_t step);

	void resolve_symmetry(OrbitalState& s);

	StepReport const& last_report() const { return report_; }
	double solver_step() const { return solver_step_; }
	void set_solver_step(double eta) { solver_step_ = eta; }
	PropagatorConfig const& config() const { return cfg_; }

private:
	Hamiltonian build(OrbitalState const& s) const;
	Orbitals propagate(Hamiltonian const& h, Orbitals const& phi) const;
	SymmetryReport solve(OrbitalState& s);

	System const& system_;
	PropagatorConfig cfg_;
	double solver_step_ = 1.0;
	StepReport report_;
};

/// One local-potential step (ALDA, SIC-Slater, GSlat, GKLI).
OrbitalState step_local(OrbitalState const& s, System const& system, PropagatorConfig const& cfg);
/// One step of the nonlocal TDSIC Hamiltonian.
OrbitalState step_tdsic(OrbitalState const& s, System const& system, PropagatorConfig const& cfg);

struct RunOptions {
	std::int64_t output_stride = 1;
	std::int64_t checkpoint_stride = 0;  // 0 disables checkpoints
	std::int64_t first_step = 0;         // nonzero when resuming
	double solver_step = 1.0;
	std::function<void(ObservableRecord const&)> on_record;
	// called with the state itself at every output stride, before on_record
	std::function<void(OrbitalState const&)> on_state;
	std::function<void(Checkpoint const&)> on_checkpoint;
};

struct RunSummary {
	std::int64_t steps = 0;
	std::int64_t orthonormality_warnings = 0;
	std::int64_t symmetry_failures = 0;
	double max_orthonormality_defect = 0.0;
};

/// Propagates s in place for cfg.steps - options.first_step steps, emitting a
/// record at every output stride (including the first step index) and a
/// checkpoint at every checkpoint stride.
RunSummary run(System const& system, OrbitalState& s, PropagatorConfig const& cfg, RunOptions const& options);

}  // namespace tdgslat

#endif
