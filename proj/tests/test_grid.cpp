#include "support.hpp"

#include <doctest.h>

#include <numbers>

using namespace tdgslat;

namespace {

Field plane_wave(Grid const& g, double kx, double ky) {
	return sample<complex>(g, [&](double x, double y) { return std::exp(complex(0.0, kx * x + ky * y)); });
}

// Fourier symbol of the second-derivative stencil
double symbol(int order, double k, double h) {
	double const c = std::cos(k * h);
	if(order == 2) return (2.0 * c - 2.0) / (h * h);
	return (-(2.0 * std::cos(2.0 * k * h)) / 12.0 + (4.0 / 3.0) * 2.0 * c - 2.5) / (h * h);
}

}  // namespace

TEST_CASE("periodic plane waves are eigenfunctions of the stencil") {
	for(int order : {2, 4}) {
		Grid const g = Grid::plane(16, 12, 0.3, Boundary::periodic, order);
		double const kx = 2 * std::numbers::pi * 3 / (16 * 0.3);
		double const ky = 2 * std::numbers::pi * 2 / (12 * 0.3);
		auto const f = plane_wave(g, kx, ky);
		auto const lap = laplacian(f);
		complex const expected = symbol(order, kx, 0.3) + symbol(order, ky, 0.3);
		double err = 0.0;
		for(std::size_t p = 0; p < g.size(); ++p) err = std::max(err, std::abs(lap[p] - expected * f[p]));
		CHECK(err < 1e-11);
	}
}

TEST_CASE("fourth-order stencil converges at fourth order") {
	auto error = [](double h) {
		int const n = static_cast<int>(16.0 / h) | 1;
		Grid const g = Grid::line(n, h, Boundary::zero, 4);
		auto const f = sample<double>(g, [](double x, double) { return std::exp(-x * x); });
		auto const lap = laplacian(f, g);
		double err = 0.0;
		for(std::size_t p = 0; p < g.size(); ++p) {
			double const x = g.position(p, 0);
			err = std::max(err, std::abs(lap[p] - (4 * x * x - 2) * std::exp(-x * x)));
		}
		return err;
	};
	double const ratio = error(0.2) / error(0.1);
	CHECK(ratio > 14.0);
	CHECK(ratio < 18.0);
}

TEST_CASE("gradient and integral of a Gaussian") {
	Grid const g = Grid::plane(121, 121, 0.1);
	auto const f = sample<double>(g, [](double x, double y) { return std::exp(-(x * x + y * y)); });
	CHECK(integrate(f) == doctest::Approx(std::numbers::pi).epsilon(1e-10));
	auto const grad = gradient(f, g);
	double err = 0.0;
	for(std::size_t p = 0; p < g.size(); ++p) {
		double const x = g.position(p, 0);
		double const y = g.position(p, 1);
		err = std::max(err, std::abs(grad[0][p] + 2 * x * f[p]));
		err = std::max(err, std::abs(grad[1][p] + 2 * y * f[p]));
	}
	CHECK(err < 1e-2);
}

TEST_CASE("coordinates are centred and indexed with y fastest") {
	Grid const g = Grid::plane(9, 11, 0.5);
	CHECK(g.position(0, 0) == doctest::Approx(-2.0));
	CHECK(g.position(0, 1) == doctest::Approx(-2.5));
	CHECK(g.position(1, 1) == doctest::Approx(-2.0));
	CHECK(g.position(11, 0) == doctest::Approx(-1.5));
	CHECK(g.position(4 * 11 + 5, 0) == 0.0);
	CHECK(g.position(4 * 11 + 5, 1) == 0.0);
}

TEST_CASE("kinetic bound is the largest eigenvalue of -1/2 Lap") {
	Grid const g = Grid::line(40, 0.25, Boundary::periodic);
	double const k = std::numbers::pi / 0.25;  // zone boundary
	auto const f = plane_wave(g, k, 0.0);
	auto const lap = laplacian(f);
	CHECK(std::abs(-0.5 * lap[3] / f[3]) == doctest::Approx(g.kinetic_bound()).epsilon(1e-12));
}

TEST_CASE("invalid grids and mixed fields are rejected") {
	CHECK_THROWS_AS(Grid::line(4, 0.1), std::invalid_argument);
	CHECK_THROWS_AS(Grid::line(20, -0.1), std::invalid_argument);
	CHECK_THROWS_AS(Grid::line(20, 0.1, Boundary::zero, 3), std::invalid_argument);
	RealField a(Grid::line(20, 0.1));
	RealField b(Grid::line(20, 0.2));
	CHECK_THROWS_AS(a += b, std::invalid_argument);
	CHECK_THROWS_AS(parse_boundary("mirror"), std::invalid_argument);
	CHECK(parse_boundary(to_string(Boundary::periodic)) == Boundary::periodic);
}
