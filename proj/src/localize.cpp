#include <tdgslat/localize.hpp>

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <stdexcept>

namespace tdgslat {

double OrbitalPotentials::total_self_energy() const {
	double acc = 0.0;
	for(auto e : self_energy) acc += e;
	return acc;
}

OrbitalPotentials orbital_potentials(Orbitals const& psi, AldaFunctional const& functional) {
	OrbitalPotentials out;
	for(auto const& f : psi) {
		auto rho = abs2(f);
		auto vh = functional.hartree_potential(rho);
		out.self_energy.push_back(functional.e_alda(rho, vh));
		vh += functional.xc_potential(rho);
		out.u.push_back(std::move(vh));
		out.rho.push_back(std::move(rho));
	}
	return out;
}

RealField density_weighted_average(std::vector<RealField> const& rho, std::vector<RealField> const& v) {
	if(rho.empty() || rho.size() != v.size()) throw std::invalid_argument("need one potential per orbital density");
	auto const& g = rho.front().grid();
	auto const n = static_cast<double>(rho.size());
	RealField out(g);
	for(std::size_t p = 0; p < g.size(); ++p) {
		double total = 0.0;
		for(auto const& r : rho) total += r[p];
		double acc = 0.0;
		if(total < density_floor) {
			for(auto const& f : v) acc += f[p];
			out[p] = acc / n;
		} else {
			for(std::size_t a = 0; a < rho.size(); ++a) acc += rho[a][p] * v[a][p];
			out[p] = acc / total;
		}
	}
	return out;
}

Matrix symmetry_matrix(Orbitals const& psi, std::vector<RealField> const& orbital_u) {
	auto const n = static_cast<Eigen::Index>(psi.size());
	Matrix k(n, n);
	for(Eigen::Index a = 0; a < n; ++a) {
		Field w = psi[a];
		auto const& ua = orbital_u[static_cast<std::size_t>(a)];
		for(std::size_t p = 0; p < w.size(); ++p) w[p] *= ua[p];
		for(Eigen::Index b = 0; b < n; ++b) k(b, a) = inner(psi[b], w);
	}
	return k;
}

Matrix symmetry_matrix(Orbitals const& psi, AldaFunctional const& functional) {
	return symmetry_matrix(psi, orbital_potentials(psi, functional).u);
}

double symmetry_residual(Matrix const& k) {
	if(k.rows() != k.cols()) throw std::invalid_argument("symmetry matrix must be square");
	if(k.rows() == 0) return 0.0;
	return (k - k.adjoint()).cwiseAbs().maxCoeff();
}

namespace {

struct Evaluation {
	Matrix k;
	double objective;
	double residual;
};

Evaluation evaluate(Orbitals const& phi, Matrix const& u, AldaFunctional const& functional) {
	auto const psi = combine(phi, u);
	auto const pots = orbital_potentials(psi, functional);
	Evaluation e{symmetry_matrix(psi, pots.u), pots.total_self_energy(), 0.0};
	e.residual = symmetry_residual(e.k);
	return e;
}

}  // namespace

SymmetrySolution solve_symmetry_condition(Orbitals const& phi, Matrix const& u0, AldaFunctional const& functional,
                                          SymmetryOptions const& options) {
	if(u0.rows() != static_cast<Eigen::Index>(phi.size()) || u0.cols() != u0.rows()) {
		throw std::invalid_argument("initial unitary has wrong shape");
	}
	if(unitarity_defect(u0) > unitarity_tolerance) throw std::invalid_argument("initial matrix is not unitary");

	SymmetrySolution sol{u0, {}};
	double eta = options.initial_step;
	auto cur = evaluate(phi, sol.u, functional);
	sol.report.residual = cur.residual;
	sol.report.step_size = eta;
	if(phi.size() == 1 || cur.residual < options.tol) {
		sol.report.converged = true;
		return sol;
	}

	// directional derivative of the objective along u exp(t d) is Re tr(d^dagger (K - K^dagger))
	auto slope = [](Matrix const& d, Evaluation const& e) { return (d.adjoint() * (e.k - e.k.adjoint())).trace().real(); };

	Matrix grad = cur.k - cur.k.adjoint();
	Matrix dir = grad;
	bool restarted = false;
	for(int it = 1; it <= options.max_iter; ++it) {
		double g0 = slope(dir, cur);
		if(!(g0 > 0.0)) {
			dir = grad;
			g0 = grad.squaredNorm();
		}

		// secant search for a zero of the directional derivative, bracketed once it turns negative
		double lo = 0.0, g_lo = g0;
		double hi = -1.0, g_hi = 0.0;
		double t = eta;
		double const noise = 1e-14 * std::max(1.0, std::abs(cur.objective));
		std::optional<std::pair<double, Evaluation>> best;
		for(int trial_count = 0; trial_count <= options.max_line_search; ++trial_count) {
			auto trial = evaluate(phi, sol.u * exp_antihermitian(t * dir), functional);
			double const gt = slope(dir, trial);
			bool const ascended = trial.objective >= cur.objective - noise;
			if(ascended && (!best || trial.objective >= best->second.objective - noise)) best.emplace(t, trial);
			if(ascended && std::abs(gt) <= 0.1 * g0) break;
			if(!ascended || gt < 0.0) {
				hi = t;
				g_hi = ascended ? gt : -g0;
			} else {
				lo = t;
				g_lo = gt;
			}
			if(hi < 0.0) {
				// still climbing: extrapolate, at most fourfold
				double const ext = g_lo < g0 ? t * g0 / (g0 - g_lo) : 4.0 * t;
				t = std::min(std::max(ext, 1.5 * t), 4.0 * t);
			} else {
				double const sec = lo + (hi - lo) * g_lo / (g_lo - g_hi);
				t = std::clamp(sec, lo + 0.05 * (hi - lo), hi - 0.05 * (hi - lo));
			}
		}
		sol.report.iterations = it;
		if(!best) {
			// no ascent along a stale direction or step: retry once along the gradient, rotating by about 0.1
			if(restarted) break;
			restarted = true;
			dir = grad;
			eta = 0.1 / grad.norm();
			continue;
		}
		restarted = false;
		eta = best->first;
		sol.u = sol.u * exp_antihermitian(eta * dir);
		cur = std::move(best->second);
		sol.report.residual = cur.residual;
		sol.report.step_size = eta;
		if(cur.residual < options.tol) {
			sol.report.converged = true;
			break;
		}
		// Polak-Ribiere with restart
		Matrix const next = cur.k - cur.k.adjoint();
		double const beta = std::max(0.0, (next.adjoint() * (next - grad)).trace().real() / grad.squaredNorm());
		dir = next + beta * dir;
		grad = next;
	}
	return sol;
}

double localization_quality(Orbitals const& psi, AldaFunctional const& functional) {
	return localization_quality(psi, orbital_potentials(psi, functional));
}

double localization_quality(Orbitals const& psi, OrbitalPotentials const& pots) {
	auto const& g = psi.front().grid();
	RealField rho(g);
	for(auto const& r : pots.rho) rho += r;
	auto const average = density_weighted_average(pots.rho, pots.u);
	double worst = 0.0;
	for(std::size_t a = 0; a < psi.size(); ++a) {
		double num = 0.0;
		double den = 0.0;
		for(std::size_t p = 0; p < g.size(); ++p) {
			if(rho[p] < density_floor) continue;
			num += std::norm((average[p] - pots.u[a][p]) * psi[a][p]);
			den += std::norm(pots.u[a][p] * psi[a][p]);
		}
		if(den > 0.0) worst = std::max(worst, std::sqrt(num / den));
	}
	return worst;
}

}  // namespace tdgslat
