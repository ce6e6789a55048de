#include <tdgslat/hamiltonian.hpp>

#include <cmath>
#include <stdexcept>

namespace tdgslat {

std::string to_string(Scheme s) {
	switch(s) {
	case Scheme::alda: return "alda";
	case Scheme::sic_slater: return "slater";
	case Scheme::tdsic: return "tdsic";
	case Scheme::gslat: return "gslat";
	case Scheme::gkli: return "gkli";
	}
	throw std::logic_error("unreachable scheme");
}

Scheme parse_scheme(std::string const& name) {
	for(auto s : all_schemes()) {
		if(to_string(s) == name) return s;
	}
	throw std::invalid_argument("unknown scheme '" + name + "'");
}

std::vector<Scheme> all_schemes() { return {Scheme::alda, Scheme::sic_slater, Scheme::tdsic, Scheme::gslat, Scheme::gkli}; }

namespace {

Field kinetic_plus_local(Field const& f, RealField const& v_local) {
	auto out = laplacian(f);
	for(std::size_t p = 0; p < out.size(); ++p) out[p] = -0.5 * out[p] + v_local[p] * f[p];
	return out;
}

RealField plus(RealField a, RealField const& b) { return a += b; }

// |phi_i|^2 / rho with the 1/N vacuum fallback of density_weighted_average
std::vector<RealField> occupation_weights(Orbitals const& phi) {
	auto const& g = phi.front().grid();
	auto const n = static_cast<double>(phi.size());
	auto const rho = total_density(phi);
	std::vector<RealField> w;
	for(auto const& f : phi) {
		RealField wi(g);
		for(std::size_t p = 0; p < g.size(); ++p) wi[p] = rho[p] < density_floor ? 1.0 / n : std::norm(f[p]) / rho[p];
		w.push_back(std::move(wi));
	}
	return w;
}

}  // namespace

Field h_alda_apply(Field const& f, RealField const& rho, RealField const& v_ext, AldaFunctional const& functional) {
	check_grid(f.grid(), rho.grid());
	check_grid(f.grid(), v_ext.grid());
	return kinetic_plus_local(f, plus(v_ext, functional.u_alda(rho)));
}

Field h_sic_apply(Field const& f, OrbitalState const& state, System const& system) {
	return Hamiltonian(system, state, Scheme::tdsic).apply(f);
}

RealField slater_potential_one_set(Orbitals const& phi, AldaFunctional const& functional) {
	auto const pots = orbital_potentials(phi, functional);
	return density_weighted_average(pots.rho, pots.u);
}

RealField gslat_potential(Orbitals const& psi, AldaFunctional const& functional) {
	auto const pots = orbital_potentials(psi, functional);
	return density_weighted_average(pots.rho, pots.u);
}

RealField gkli_map(OrbitalState const& state, Orbitals const& psi, OrbitalPotentials const& pots, RealField const& v_slater,
                   RealField const& v0) {
	int const n = state.size();
	auto const weights = occupation_weights(state.phi);
	// C_{beta alpha} = <psi_beta| v0 - U[rho_alpha] |psi_alpha>
	Matrix c(n, n);
	for(int a = 0; a < n; ++a) {
		RealField diff = v0;
		diff -= pots.u[static_cast<std::size_t>(a)];
		for(int b = 0; b < n; ++b) c(b, a) = sandwich(psi[b], diff, psi[a]);
	}
	// sum_{alpha beta} u*_{i alpha} u_{i beta} C_{beta alpha} = (u C u^dagger)_{ii}
	Eigen::VectorXcd const d = (state.u * c * state.u.adjoint()).diagonal();
	RealField out = v_slater;
	for(int i = 0; i < n; ++i) {
		double const di = d(i).real();
		auto const& wi = weights[static_cast<std::size_t>(i)];
		for(std::size_t p = 0; p < out.size(); ++p) out[p] += wi[p] * di;
	}
	return out;
}

GkliResult gkli_potential(OrbitalState const& state, AldaFunctional const& functional, GkliOptions const& options) {
	int const n = state.size();
	int const gauge = options.gauge_orbital < 0 ? n - 1 : options.gauge_orbital;
	if(gauge >= n) throw std::invalid_argument("gauge orbital out of range");

	auto const psi = state.localized();
	auto const pots = orbital_potentials(psi, functional);
	auto const v_slater = density_weighted_average(pots.rho, pots.u);
	auto const& gauge_phi = state.phi[static_cast<std::size_t>(gauge)];
	// (u K u^dagger)_{gg}: the orbital-potential part of the gauge orbital's correction
	Matrix const k = symmetry_matrix(psi, pots.u);
	double const gauge_offset = (state.u * k * state.u.adjoint())(gauge, gauge).real();

	// shift so that <phi_g|v|phi_g> - (u K u^dagger)_{gg} = 0
	auto fix_gauge = [&](RealField& v) {
		double const shift = sandwich(gauge_phi, v, gauge_phi).real() - gauge_offset;
		for(auto& x : v) x -= shift;
	};

	GkliResult result{v_slater, 0, false, 0.0};
	fix_gauge(result.v0);
	for(int it = 1; it <= options.max_iter; ++it) {
		auto next = gkli_map(state, psi, pots, v_slater, result.v0);
		fix_gauge(next);
		double change = 0.0;
		for(std::size_t p = 0; p < next.size(); ++p) change = std::max(change, std::abs(next[p] - result.v0[p]));
		for(std::size_t p = 0; p < next.size(); ++p) {
			result.v0[p] = (1.0 - options.mixing) * result.v0[p] + options.mixing * next[p];
		}
		result.iterations = it;
		result.change = change;
		if(change < options.tol) {
			result.converged = true;
			return result;
		}
	}
	// diagnostic scheme only: fall back to the Slater part
	result.v0 = v_slater;
	return result;
}

Hamiltonian::Hamiltonian(System const& system, OrbitalState const& state, Scheme scheme, HamiltonianOptions const& options)
	: scheme_(scheme), pots_{system.v_ext, RealField(system.grid), std::nullopt, RealField(system.grid), {}} {
	check_grid(system.grid, state.grid());
	auto const& functional = system.functional;
	auto const rho = total_density(state.phi);
	pots_.u_total = functional.u_alda(rho);
	pots_.v_local = plus(system.v_ext, pots_.u_total);

	if(scheme == Scheme::alda) {
		pots_.v0 = RealField(system.grid);
		return;
	}

	// one-set Slater uses the diagonal orbitals themselves
	psi_ = scheme == Scheme::sic_slater ? state.phi : state.localized();
	auto pots = orbital_potentials(psi_, functional);
	if(is_two_set(scheme)) {
		symmetry_residual_ = tdgslat::symmetry_residual(symmetry_matrix(psi_, pots.u));
		symmetry_warning_ = symmetry_residual_ > options.warn_factor * options.symmetry_tol;
	}

	switch(scheme) {
	case Scheme::tdsic:
		for(std::size_t a = 0; a < psi_.size(); ++a) {
			Field w = psi_[a];
			for(std::size_t p = 0; p < w.size(); ++p) w[p] *= pots.u[a][p];
			projected_.push_back(std::move(w));
		}
		break;
	case Scheme::sic_slater:
	case Scheme::gslat:
		pots_.v0 = density_weighted_average(pots.rho, pots.u);
		break;
	case Scheme::gkli:
		gkli_ = gkli_potential(state, functional, options.gkli);
		pots_.v0 = gkli_->v0;
		break;
	case Scheme::alda: break;
	}
	if(pots_.v0) pots_.v_local -= *pots_.v0;
	pots_.orbital_u = std::move(pots.u);
}

Field Hamiltonian::apply(Field const& f) const {
	auto out = kinetic_plus_local(f, pots_.v_local);
	for(std::size_t a = 0; a < projected_.size(); ++a) {
		complex const c = inner(psi_[a], f);
		auto const& w = projected_[a];
		for(std::size_t p = 0; p < out.size(); ++p) out[p] -= c * w[p];
	}
	return out;
}

}  // namespace tdgslat
