#ifndef TDGSLAT_TEST_ORACLES_HPP
#define TDGSLAT_TEST_ORACLES_HPP

// Independent reference computations shared by the unit tests and the acceptance run.

#include "support.hpp"

#include <functional>
#include <numbers>

namespace tdgslat::test {

inline Matrix rotation(double theta, double chi) {
	Matrix u(2, 2);
	complex const ph = std::exp(complex(0.0, chi));
	u << std::cos(theta), -ph * std::sin(theta), std::conj(ph) * std::sin(theta), std::cos(theta);
	return u;
}

/// sum_alpha E_ALDA[|psi_alpha|^2] for psi = phi u
inline double self_energy_sum(Orbitals const& phi, Matrix const& u, AldaFunctional const& f) {
	double e = 0.0;
	for(auto const& psi : apply_unitary(phi, u)) e += f.e_alda(abs2(psi));
	return e;
}

struct AngleOptimum {
	double theta;  // in [0, pi/2)
	double chi;
	double objective;
};

/// Brute-force maximum of the self-energy sum over the two-orbital rotations
/// u(theta, chi); column phases do not change any density, so these cover U(2).
inline AngleOptimum angle_scan(Orbitals const& phi, AldaFunctional const& f) {
	AngleOptimum best{0.0, 0.0, -1e300};
	int const nt = 180;
	int const nc = 36;
	for(int i = 0; i < nt; ++i) {
		for(int j = 0; j < nc; ++j) {
			double const th = 0.5 * std::numbers::pi * i / nt;
			double const ch = 2.0 * std::numbers::pi * j / nc;
			double const v = self_energy_sum(phi, rotation(th, ch), f);
			if(v > best.objective) best = {th, ch, v};
		}
	}
	// shrink a local box around the coarse maximum by coordinate golden sections
	double dt = 0.5 * std::numbers::pi / nt;
	double dc = 2.0 * std::numbers::pi / nc;
	double const gr = 0.5 * (std::sqrt(5.0) - 1.0);
	auto golden = [&](auto objective, double lo, double hi) {
		double a = hi - gr * (hi - lo), b = lo + gr * (hi - lo);
		double fa = objective(a), fb = objective(b);
		while(hi - lo > 1e-10) {
			if(fa > fb) {
				hi = b;
				b = a;
				fb = fa;
				a = hi - gr * (hi - lo);
				fa = objective(a);
			} else {
				lo = a;
				a = b;
				fa = fb;
				b = lo + gr * (hi - lo);
				fb = objective(b);
			}
		}
		return 0.5 * (lo + hi);
	};
	for(int sweep = 0; sweep < 20; ++sweep) {
		best.theta = golden([&](double t) { return self_energy_sum(phi, rotation(t, best.chi), f); }, best.theta - dt, best.theta + dt);
		best.chi = golden([&](double c) { return self_energy_sum(phi, rotation(best.theta, c), f); }, best.chi - dc, best.chi + dc);
		dt *= 0.5;
		dc *= 0.5;
	}
	best.objective = self_energy_sum(phi, rotation(best.theta, best.chi), f);
	return best;
}

/// Rotation angle of a 2x2 unitary, folded into [0, pi/2) like angle_scan.
inline double rotation_angle(Matrix const& u) {
	double th = std::acos(std::clamp(std::abs(u(0, 0)), 0.0, 1.0));
	return th;
}

/// Dense matrix of -1/2 Lap + v from the stencil coefficients written out,
/// zero boundary only.
inline Eigen::MatrixXd dense_hamiltonian(Grid const& g, RealField const& v) {
	std::vector<double> const c = g.stencil_order() == 2 ? std::vector<double>{-2.0, 1.0}
	                                                      : std::vector<double>{-30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0};
	auto const n = static_cast<Eigen::Index>(g.size());
	Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
	double const h2 = g.spacing() * g.spacing();
	int const nx = g.points(0), ny = g.points(1);
	for(int ix = 0; ix < nx; ++ix) {
		for(int iy = 0; iy < ny; ++iy) {
			auto const p = static_cast<Eigen::Index>(ix * ny + iy);
			h(p, p) = v[static_cast<std::size_t>(p)] - 0.5 * g.dim() * c[0] / h2;
			for(int o = 1; o < static_cast<int>(c.size()); ++o) {
				for(int s : {-o, o}) {
					if(ix + s >= 0 && ix + s < nx) h(p, p + s * ny) -= 0.5 * c[o] / h2;
					if(g.dim() == 2 && iy + s >= 0 && iy + s < ny) h(p, p + s) -= 0.5 * c[o] / h2;
				}
			}
		}
	}
	return h;
}

/// Hartree potential by the direct double loop over grid points.
inline RealField naive_hartree(RealField const& rho, InteractionKernel const& k) {
	auto const& g = rho.grid();
	RealField out(g);
	for(std::size_t p = 0; p < g.size(); ++p) {
		double acc = 0.0;
		for(std::size_t q = 0; q < g.size(); ++q) {
			double r2 = 0.0;
			for(int a = 0; a < g.dim(); ++a) {
				double const d = g.position(p, a) - g.position(q, a);
				r2 += d * d;
			}
			acc += k.strength / std::sqrt(r2 + k.softening * k.softening) * rho[q];
		}
		out[p] = acc * g.cell_volume();
	}
	return out;
}

/// Worst relative error of the potential against central differences of the energy,
/// one point at a time over points with rho >= 1e-3.
inline double derivative_error(Grid const& g, RealField const& rho, std::function<double(RealField const&)> const& energy,
                        RealField const& potential) {
	double worst = 0.0;
	for(std::size_t p = 0; p < g.size(); p += 7) {
		if(rho[p] < 1e-3) continue;
		double const eps = 1e-5 * rho[p];
		auto up = rho;
		auto dn = rho;
		up[p] += eps;
		dn[p] -= eps;
		double const fd = (energy(up) - energy(dn)) / (2 * eps) / g.cell_volume();
		if(std::abs(potential[p]) > 1e-8) worst = std::max(worst, std::abs(fd - potential[p]) / std::abs(potential[p]));
	}
	return worst;
}

}  // namespace tdgslat::test

#endif
