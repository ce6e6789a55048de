#ifndef TDGSLAT_TEST_SUPPORT_HPP
#define TDGSLAT_TEST_SUPPORT_HPP

#include <tdgslat/dynamics.hpp>

#include <cmath>
#include <random>
#include <vector>

namespace tdgslat::test {

inline RealField soft_coulomb_wells(Grid const& g, std::vector<double> const& centers, std::vector<double> const& charges,
                                    double a = 1.0) {
	return sample<double>(g, [&](double x, double y) {
		double v = 0.0;
		for(std::size_t i = 0; i < centers.size(); ++i) v -= charges[i] / std::sqrt((x - centers[i]) * (x - centers[i]) + y * y + a * a);
		return v;
	});
}

inline RealField harmonic(Grid const& g, double wx, double wy) {
	return sample<double>(g, [&](double x, double y) { return 0.5 * (wx * wx * x * x + wy * wy * y * y); });
}

inline System make(Grid const& g, RealField v, int n, double amplitude = 0.5, double strength = 1.0) {
	return System{g, std::move(v), n, AldaFunctional(g, InteractionKernel{InteractionKernel::Kind::soft_coulomb, 1.0, strength},
	                                                 XcFunctional(amplitude))};
}

/// Two electrons in a slightly asymmetric double well on a line.
inline System two_well(double sep = 4.0, double h = 0.4) {
	auto const g = Grid::line(static_cast<int>((sep + 24.0) / h) | 1, h);
	return make(g, soft_coulomb_wells(g, {-0.5 * sep, 0.5 * sep}, {1.05, 1.0}), 2);
}

inline Field random_field(Grid const& g, std::mt19937_64& rng) {
	std::normal_distribution<double> n(0.0, 1.0);
	Field f(g);
	for(auto& v : f) v = {n(rng), n(rng)};
	return f;
}

/// Random smooth-ish orthonormal orbitals: Gaussian envelopes times random complex noise.
inline Orbitals random_orbitals(Grid const& g, int n, std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	double const width = 0.15 * g.spacing() * g.points(0);
	Orbitals phi;
	for(int i = 0; i < n; ++i) {
		auto f = random_field(g, rng);
		double const c = (i - 0.5 * (n - 1)) * 0.1 * width;
		for(std::size_t p = 0; p < g.size(); ++p) {
			double const x = g.position(p, 0) - c;
			double const y = g.dim() == 2 ? g.position(p, 1) : 0.0;
			f[p] = complex(1.0, 0.0) * std::exp(-(x * x + y * y) / (2 * width * width)) + 0.05 * f[p];
		}
		phi.push_back(f);
	}
	return lowdin_orthonormalize(phi);
}

inline double max_abs_diff(RealField const& a, RealField const& b) {
	double m = 0.0;
	for(std::size_t p = 0; p < a.size(); ++p) m = std::max(m, std::abs(a[p] - b[p]));
	return m;
}

inline double max_abs(RealField const& a) {
	double m = 0.0;
	for(auto v : a) m = std::max(m, std::abs(v));
	return m;
}

}  // namespace tdgslat::test

#endif
