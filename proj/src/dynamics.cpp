#include <tdgslat/dynamics.hpp>
#include <tdgslat/errors.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace tdgslat {

double stability_bound(Grid const& grid) { return grid.spacing() * grid.spacing() / std::numbers::pi; }

std::vector<std::string> PropagatorConfig::problems(Grid const& grid) const {
	std::vector<std::string> out;
	if(!(dt > 0.0)) out.push_back("dt must be positive");
	else if(dt >= stability_bound(grid)) {
		std::ostringstream msg;
		msg.precision(6);
		msg << "dt = " << dt << " exceeds the stability bound h^2/pi = " << stability_bound(grid);
		out.push_back(msg.str());
	}
	if(steps < 0) out.push_back("steps must be non-negative");
	if(taylor_order < 2) out.push_back("taylor_order must be at least 2");
	if(symmetry_stride < 1) out.push_back("symmetry_stride must be at least 1");
	if(midpoint_iterations < 0) out.push_back("midpoint_iterations must be non-negative");
	if(!(symmetry_tol > 0.0)) out.push_back("symmetry_tol must be positive");
	if(symmetry_max_iter < 1) out.push_back("symmetry_max_iter must be at least 1");
	if(!(gkli.mixing > 0.0 && gkli.mixing <= 1.0)) out.push_back("gkli mixing must lie in (0, 1]");
	if(!(gkli.tol > 0.0)) out.push_back("gkli tol must be positive");
	return out;
}

void PropagatorConfig::validate(Grid const& grid) const {
	auto const p = problems(grid);
	if(!p.empty()) throw std::invalid_argument(p.front());
}

std::vector<std::string> GroundStateConfig::problems() const {
	std::vector<std::string> out;
	if(!(threshold > 0.0)) out.push_back("ground threshold must be positive");
	if(stride < 1) out.push_back("localization stride must be at least 1");
	if(max_iter < 1) out.push_back("ground max_iter must be at least 1");
	if(!(symmetry_tol > 0.0)) out.push_back("ground symmetry_tol must be positive");
	return out;
}

void GroundStateConfig::validate() const {
	auto const p = problems();
	if(!p.empty()) throw std::invalid_argument(p.front());
}

Orbitals independent_particle_orbitals(Grid const& grid, RealField const& v_ext, int n) {
	auto const size = static_cast<Eigen::Index>(grid.size());
	if(n < 1 || n > size) throw std::invalid_argument("orbital count must lie between 1 and the grid size");
	Eigen::MatrixXd h(size, size);
	RealField unit(grid);
	for(Eigen::Index j = 0; j < size; ++j) {
		unit[static_cast<std::size_t>(j)] = 1.0;
		auto const col = laplacian(unit, grid);
		for(Eigen::Index i = 0; i < size; ++i) h(i, j) = -0.5 * col[static_cast<std::size_t>(i)];
		h(j, j) += v_ext[static_cast<std::size_t>(j)];
		unit[static_cast<std::size_t>(j)] = 0.0;
	}
	Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h);
	if(eig.info() != Eigen::Success) throw NumericalError("dense diagonalisation failed");
	double const scale = 1.0 / std::sqrt(grid.cell_volume());
	Orbitals out;
	for(int k = 0; k < n; ++k) {
		Field f(grid);
		// fix the sign so that the largest component is positive
		Eigen::Index big = 0;
		eig.eigenvectors().col(k).cwiseAbs().maxCoeff(&big);
		double const sign = eig.eigenvectors()(big, k) < 0.0 ? -1.0 : 1.0;
		for(Eigen::Index i = 0; i < size; ++i) f[static_cast<std::size_t>(i)] = sign * scale * eig.eigenvectors()(i, k);
		out.push_back(std::move(f));
	}
	return out;
}

namespace {

// exp of a small real antisymmetric matrix: a generic starting rotation that
// keeps real orbitals real
Matrix initial_rotation(int n, std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	std::normal_distribution<double> normal(0.0, 0.5);
	Matrix a = Matrix::Zero(n, n);
	for(int i = 0; i < n; ++i) {
		for(int j = i + 1; j < n; ++j) {
			double const x = normal(rng);
			a(i, j) = x;
			a(j, i) = -x;
		}
	}
	Matrix u = exp_antihermitian(a);
	for(auto& z : u.reshaped()) z = complex(z.real(), 0.0);
	return u;
}

Orbitals apply_all(Hamiltonian const& h, Orbitals const& phi) {
	Orbitals out;
	out.reserve(phi.size());
	for(auto const& f : phi) out.push_back(h.apply(f));
	return out;
}

Matrix projected_matrix(Orbitals const& phi, Orbitals const& hphi) {
	auto const n = static_cast<Eigen::Index>(phi.size());
	Matrix lambda(n, n);
	for(Eigen::Index i = 0; i < n; ++i) {
		for(Eigen::Index j = 0; j < n; ++j) lambda(j, i) = inner(phi[j], hphi[i]);
	}
	return lambda;
}

}  // namespace

double energy_variance(Hamiltonian const& h, Orbitals const& phi) {
	double acc = 0.0;
	for(auto const& f : phi) {
		auto const hf = h.apply(f);
		acc += std::max(0.0, std::pow(norm(hf), 2) - std::norm(inner(f, hf)));
	}
	return acc;
}

OrbitalState ground_state(System const& system, Scheme scheme, GroundStateConfig const& cfg, GroundStateReport* report) {
	cfg.validate();
	int const n = system.electrons;
	auto phi = independent_particle_orbitals(system.grid, system.v_ext, n);
	Matrix u = is_two_set(scheme) ? initial_rotation(n, cfg.seed) : Matrix::Identity(n, n);

	SymmetryOptions sym;
	sym.tol = cfg.symmetry_tol;
	auto localize = [&](Matrix const& start) {
		auto sol = solve_symmetry_condition(phi, start, system.functional, sym);
		sym.initial_step = sol.report.step_size;
		return sol.u;
	};
	if(is_two_set(scheme)) u = localize(u);

	HamiltonianOptions hopt;
	hopt.symmetry_tol = cfg.symmetry_tol;
	auto const [vmin, vmax] = std::minmax_element(system.v_ext.begin(), system.v_ext.end());
	double const delta = cfg.step_size > 0.0 ? cfg.step_size : 1.0 / (system.grid.kinetic_bound() + *vmax - *vmin + 1.0);
	double previous = std::numeric_limits<double>::infinity();
	int increases = 0;
	double variance = 0.0;

	for(int it = 1; it <= cfg.max_iter; ++it) {
		OrbitalState s(phi, u);
		Hamiltonian h(system, s, scheme, hopt);
		auto hphi = apply_all(h, phi);
		Matrix lambda = projected_matrix(phi, hphi);

		// rotate to the eigenbasis of the Hermitian part; psi is kept fixed through u
		Eigen::SelfAdjointEigenSolver<Matrix> eig(Matrix(0.5 * (lambda + lambda.adjoint())));
		Matrix const w = eig.eigenvectors();
		phi = combine(phi, w);
		hphi = combine(hphi, w);
		u = w.adjoint() * u;
		lambda = w.adjoint() * lambda * w;

		variance = 0.0;
		for(int i = 0; i < n; ++i) variance += std::max(0.0, std::pow(norm(hphi[i]), 2) - std::norm(lambda(i, i)));

		bool const localized = !is_two_set(scheme) || h.symmetry_residual() < cfg.symmetry_tol;
		if(variance < cfg.threshold) {
			if(localized) {
				if(report) *report = {it, variance, h.symmetry_residual()};
				return OrbitalState(std::move(phi), std::move(u));
			}
			u = localize(u);
			continue;
		}

		increases = variance > previous ? increases + 1 : 0;
		if(increases >= 100) {
			std::ostringstream msg;
			msg << "ground state diverged: variance rose for 100 consecutive iterations (last " << variance << ")";
			throw NumericalError(msg.str());
		}
		previous = variance;

		for(int i = 0; i < n; ++i) {
			auto& f = phi[i];
			for(std::size_t p = 0; p < f.size(); ++p) {
				complex r = hphi[i][p];
				for(int j = 0; j < n; ++j) r -= phi[j][p] * lambda(j, i);
				f[p] -= delta * r;
			}
		}
		phi = gram_schmidt(phi);
		if(is_two_set(scheme) && it % cfg.stride == 0) u = localize(u);
	}
	std::ostringstream msg;
	msg << "ground state did not converge in " << cfg.max_iter << " iterations (variance " << variance << ")";
	throw NumericalError(msg.str());
}

OrbitalState boost(OrbitalState const& s, std::array<double, 2> k) {
	auto const& g = s.grid();
	OrbitalState out = s;
	for(auto& f : out.phi) {
		for(std::size_t p = 0; p < g.size(); ++p) {
			double phase = k[0] * g.position(p, 0);
			if(g.dim() == 2) phase += k[1] * g.position(p, 1);
			f[p] *= std::polar(1.0, phase);
		}
	}
	return out;
}

Field taylor_exponential(Hamiltonian const& h, Field const& f, double dt, int order) {
	Field out = f;
	Field term = f;
	for(int k = 1; k <= order; ++k) {
		term = h.apply(term);
		term *= complex(0.0, -dt / k);
		out += term;
	}
	return out;
}

Propagator::Propagator(System const& system, PropagatorConfig const& cfg) : system_(system), cfg_(cfg) {
	cfg_.validate(system.grid);
}

Hamiltonian Propagator::build(OrbitalState const& s) const {
	HamiltonianOptions opt;
	opt.gkli = cfg_.gkli;
	opt.symmetry_tol = cfg_.symmetry_tol;
	return Hamiltonian(system_, s, cfg_.scheme, opt);
}

Orbitals Propagator::propagate(Hamiltonian const& h, Orbitals const& phi) const {
	Orbitals out;
	out.reserve(phi.size());
	for(auto const& f : phi) out.push_back(taylor_exponential(h, f, cfg_.dt, cfg_.taylor_order));
	return out;
}

SymmetryReport Propagator::solve(OrbitalState& s) {
	SymmetryOptions opt;
	opt.tol = cfg_.symmetry_tol;
	opt.max_iter = cfg_.symmetry_max_iter;
	opt.initial_step = solver_step_;
	auto sol = solve_symmetry_condition(s.phi, s.u, system_.functional, opt);
	s.u = std::move(sol.u);
	solver_step_ = sol.report.step_size;
	if(!sol.report.converged && sol.report.residual > 10.0 * cfg_.symmetry_tol) {
		std::ostringstream msg;
		msg << "symmetry condition not solved at t = " << s.t << " (residual " << sol.report.residual << ")";
		throw NumericalError(msg.str());
	}
	return sol.report;
}

void Propagator::resolve_symmetry(OrbitalState& s) {
	if(is_two_set(cfg_.scheme)) solve(s);
}

OrbitalState Propagator::step(OrbitalState const& s, std::int64_t step) {
	report_ = {};
	bool const localize = is_two_set(cfg_.scheme) && step % cfg_.symmetry_stride == 0;
	// the localized set moves slowly; aligning u with it gives the solver a close start
	Orbitals const psi_ref = localize ? s.localized() : Orbitals{};

	auto pred = propagate(build(s), s.phi);
	Matrix u = s.u;
	for(int pass = 0; pass < cfg_.midpoint_iterations; ++pass) {
		Orbitals mid;
		mid.reserve(pred.size());
		for(std::size_t i = 0; i < pred.size(); ++i) {
			Field f = s.phi[i];
			f += pred[i];
			f *= 0.5;
			mid.push_back(std::move(f));
		}
		OrbitalState ms(lowdin_orthonormalize(mid), u, s.t + 0.5 * cfg_.dt);
		if(localize) {
			ms.u = closest_unitary(ms.phi, psi_ref);
			if(cfg_.solves_at_midpoint()) solve(ms);
			u = ms.u;
		}
		pred = propagate(build(ms), s.phi);
	}

	report_.pre_repair_defect = orthonormality_defect(pred);
	report_.orthonormality_warning = report_.pre_repair_defect > cfg_.orthonormality_warning;
	OrbitalState out(lowdin_orthonormalize(pred), u, s.t + cfg_.dt);
	if(localize) {
		out.u = closest_unitary(out.phi, psi_ref);
		report_.symmetry = solve(out);
		report_.symmetry_solved = true;
		report_.symmetry_warning = !report_.symmetry.converged;
	}
	return out;
}

OrbitalState step_local(OrbitalState const& s, System const& system, PropagatorConfig const& cfg) {
	if(cfg.scheme == Scheme::tdsic) throw std::invalid_argument("step_local needs a local-potential scheme");
	return Propagator(system, cfg).step(s, 0);
}

OrbitalState step_tdsic(OrbitalState const& s, System const& system, PropagatorConfig const& cfg) {
	if(cfg.scheme != Scheme::tdsic) throw std::invalid_argument("step_tdsic needs the tdsic scheme");
	return Propagator(system, cfg).step(s, 0);
}

RunSummary run(System const& system, OrbitalState& s, PropagatorConfig const& cfg, RunOptions const& options) {
	if(options.output_stride < 1) throw std::invalid_argument("output stride must be at least 1");
	if(options.checkpoint_stride < 0) throw std::invalid_argument("checkpoint stride must be non-negative");
	Propagator prop(system, cfg);
	prop.set_solver_step(options.solver_step);
	RunSummary summary;
	auto emit = [&] {
		if(options.on_state) options.on_state(s);
		if(options.on_record) options.on_record(observe(s, system, cfg.scheme, cfg.gkli));
	};

	std::int64_t k = options.first_step;
	if(k == 0) emit();
	while(k < cfg.steps) {
		s = prop.step(s, k);
		++k;
		auto const& r = prop.last_report();
		summary.steps += 1;
		summary.orthonormality_warnings += r.orthonormality_warning ? 1 : 0;
		summary.symmetry_failures += r.symmetry_warning ? 1 : 0;
		summary.max_orthonormality_defect = std::max(summary.max_orthonormality_defect, orthonormality_defect(s));
		if(k % options.output_stride == 0) emit();
		if(options.checkpoint_stride > 0 && k % options.checkpoint_stride == 0 && options.on_checkpoint) {
			options.on_checkpoint(Checkpoint{s, k, prop.solver_step()});
		}
	}
	return summary;
}

}  // namespace tdgslat
