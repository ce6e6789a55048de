#include "support.hpp"

#include <doctest.h>

#include <numbers>
#include <sstream>

using namespace tdgslat;
using namespace tdgslat::test;

namespace {

struct Trajectory {
	std::vector<OrbitalState> states;
	std::vector<ObservableRecord> records;
};

Trajectory trajectory(System const& sys, Scheme scheme, double k, double dt, std::int64_t steps) {
	GroundStateConfig gc;
	gc.threshold = 1e-12;
	auto s = boost(ground_state(sys, scheme, gc), {k, 0.0});
	PropagatorConfig cfg;
	cfg.scheme = scheme;
	cfg.dt = dt;
	cfg.steps = steps;
	cfg.symmetry_tol = 1e-10;
	cfg.midpoint_symmetry = true;
	Propagator prop(sys, cfg);
	prop.resolve_symmetry(s);
	Trajectory out;
	for(std::int64_t i = 0; i <= steps; ++i) {
		if(i > 0) s = prop.step(s, i - 1);
		out.states.push_back(s);
		out.records.push_back(observe(s, sys, scheme));
	}
	return out;
}

// Orbital set with random complex content and a random localizing rotation.
OrbitalState random_state(Grid const& g, int n, std::uint64_t seed) {
	return OrbitalState(random_orbitals(g, n, seed), random_unitary(n, seed + 100));
}

}  // namespace

TEST_CASE("energy breakdown components sum to the total") {
	auto const sys = two_well();
	auto const s = random_state(sys.grid, 2, 4);
	for(auto scheme : all_schemes()) {
		auto const e = total_energy(s, sys, scheme);
		CHECK(e.total == e.kinetic + e.external + e.alda - e.sic_subtraction);
		if(scheme == Scheme::alda) CHECK(e.sic_subtraction == 0.0);
		else CHECK(e.sic_subtraction != 0.0);
	}
	// only the subtraction depends on u, and only for the two-set schemes
	auto t = s;
	t.u = random_unitary(2, 77);
	auto const a = total_energy(s, sys, Scheme::gslat), b = total_energy(t, sys, Scheme::gslat);
	CHECK(a.kinetic == doctest::Approx(b.kinetic).epsilon(1e-13));
	CHECK(a.alda == doctest::Approx(b.alda).epsilon(1e-13));
	CHECK(std::abs(a.sic_subtraction - b.sic_subtraction) > 1e-6);
	CHECK(total_energy(s, sys, Scheme::sic_slater).total == total_energy(t, sys, Scheme::sic_slater).total);
}

TEST_CASE("dipole is linear and translates with the density") {
	auto const g = Grid::plane(21, 21, 0.3);
	auto const a = abs2(random_orbitals(g, 1, 1)[0]);
	auto const b = abs2(random_orbitals(g, 1, 2)[0]);
	auto da = dipole(a), db = dipole(b);
	RealField c = a;
	c *= 2.0;
	c += b;
	auto const dc = dipole(c);
	for(int axis = 0; axis < 2; ++axis) CHECK(dc[axis] == doctest::Approx(2.0 * da[axis] + db[axis]).epsilon(1e-13));

	// a compact blob shifted by three points along x
	auto blob = [](Grid const& grid, double x0) { return sample<double>(grid, [x0](double x, double y) { return std::exp(-((x - x0) * (x - x0) + y * y)); }); };
	auto const wide = Grid::plane(61, 21, 0.3);
	auto const r0 = blob(wide, 0.0), r1 = blob(wide, 0.9);
	double const n = integrate(r0);
	CHECK(dipole(r1)[0] - dipole(r0)[0] == doctest::Approx(n * 0.9).epsilon(1e-6));
	CHECK(std::abs(dipole(r0)[1]) < 1e-12);
}

TEST_CASE("diagnostics vanish for one electron and for ALDA") {
	auto const g = Grid::line(61, 0.3);
	auto const sys1 = make(g, harmonic(g, 0.5, 0.0), 1);
	auto const sys2 = make(g, harmonic(g, 0.5, 0.0), 3);
	for(std::uint64_t seed = 1; seed <= 4; ++seed) {
		auto const one = random_state(g, 1, seed);
		for(auto scheme : all_schemes()) {
			CAPTURE(to_string(scheme));
			CHECK(std::abs(energy_rate_diagnostic(one, sys1, scheme)) < 1e-12);
			CHECK(std::abs(zft_residual(one, sys1, scheme)[0]) < 1e-12);
		}
		auto const many = random_state(g, 3, seed);
		CHECK(energy_rate_diagnostic(many, sys2, Scheme::alda) == 0.0);
		CHECK(zft_residual(many, sys2, Scheme::alda)[0] == 0.0);
		CHECK(zft_residual(many, sys2, Scheme::tdsic)[0] == 0.0);
		// the diagnostics are alive on generic many-electron states
		CHECK(std::abs(zft_residual(many, sys2, Scheme::gslat)[0]) > 1e-8);
		CHECK(std::abs(energy_rate_diagnostic(many, sys2, Scheme::gslat)) > 1e-8);
	}
}

TEST_CASE("energy rate vanishes on real orbitals") {
	auto const sys = two_well();
	auto const s = ground_state(sys, Scheme::gslat, GroundStateConfig{});
	CHECK(std::abs(energy_rate_diagnostic(s, sys, Scheme::gslat)) < 1e-14);
	CHECK(std::abs(energy_rate_diagnostic(s, sys, Scheme::sic_slater)) < 1e-14);
}

TEST_CASE("energy rate and zero-force residual match finite differences along a GSlat run") {
	auto const g = Grid::line(71, 0.4, Boundary::zero, 4);
	auto const sys = make(g, soft_coulomb_wells(g, {-2.0, 2.0}, {1.05, 1.0}), 2);
	double const dt = 0.01;
	auto const tr = trajectory(sys, Scheme::gslat, 0.2, dt, 40);
	REQUIRE(tr.records.size() == tr.states.size());
	int checked = 0;
	for(std::size_t i = 10; i + 1 < tr.records.size(); i += 10) {
		CAPTURE(i);
		double const de = (tr.records[i + 1].energy.total - tr.records[i - 1].energy.total) / (2 * dt);
		double const rate = tr.records[i].energy_rate;
		CHECK(std::abs(de - rate) < 0.1 * std::abs(rate));

		double const dp = (momentum(tr.states[i + 1].phi)[0] - momentum(tr.states[i - 1].phi)[0]) / (2 * dt);
		double const fext = external_force(total_density(tr.states[i].phi), sys.v_ext)[0];
		double const zft = tr.records[i].zft[0];
		CAPTURE(dp - fext);
		CAPTURE(zft);
		CHECK(std::abs(dp - fext - zft) < 0.1 * std::abs(zft));
		++checked;
	}
	CHECK(checked == 3);
}

TEST_CASE("observe agrees with the standalone observables") {
	auto const sys = two_well();
	auto const s = random_state(sys.grid, 2, 9);
	for(auto scheme : all_schemes()) {
		CAPTURE(to_string(scheme));
		auto const r = observe(s, sys, scheme);
		CHECK(r.energy.total == doctest::Approx(total_energy(s, sys, scheme).total).epsilon(1e-14));
		CHECK(r.energy_rate == doctest::Approx(energy_rate_diagnostic(s, sys, scheme)).epsilon(1e-12));
		CHECK(r.zft[0] == doctest::Approx(zft_residual(s, sys, scheme)[0]).epsilon(1e-12));
		CHECK(r.dipole[0] == dipole(total_density(s.phi))[0]);
		CHECK(r.orthonormality_defect < 1e-12);
		if(is_two_set(scheme)) CHECK(r.symmetry_residual > 0.0);
		else CHECK(r.symmetry_residual == 0.0);
	}
	auto const v0 = scheme_correction(s, sys, Scheme::gslat);
	REQUIRE(v0.has_value());
	CHECK(max_abs_diff(*v0, gslat_potential(s.localized(), sys.functional)) == 0.0);
	CHECK_FALSE(scheme_correction(s, sys, Scheme::tdsic).has_value());
}

TEST_CASE("momentum of a boosted real orbital") {
	auto const g = Grid::line(121, 0.2);
	auto f = sample<complex>(g, [](double x, double) { return complex(std::exp(-0.5 * x * x), 0.0); });
	f *= 1.0 / norm(f);
	double const k = 0.3;
	auto const s = boost(OrbitalState(Orbitals{f}), {k, 0.0});
	CHECK(momentum(s.phi)[0] == doctest::Approx(k).epsilon(1e-2));
	CHECK(std::abs(momentum(Orbitals{f})[0]) < 1e-14);
}

TEST_CASE("spectrum finds the frequencies of sampled sines") {
	double const dt = 0.1;
	std::vector<double> t, one, two;
	for(int i = 0; i < 10000; ++i) {
		t.push_back(i * dt);
		one.push_back(std::sin(0.37 * t.back()));
		two.push_back(std::sin(0.37 * t.back()) + 0.5 * std::sin(std::numbers::sqrt2 * t.back()));
	}
	double const bin = 2.0 * std::numbers::pi / (t.back() - t.front());
	auto const p1 = spectrum(t, one);
	REQUIRE(!p1.empty());
	CHECK(std::abs(p1[0].omega - 0.37) < bin);
	if(p1.size() > 1) CHECK(p1[1].intensity < 1e-2 * p1[0].intensity);

	auto const p2 = spectrum(t, two);
	REQUIRE(p2.size() >= 2);
	CHECK(std::abs(p2[0].omega - 0.37) < bin);
	CHECK(std::abs(p2[1].omega - std::numbers::sqrt2) < bin);
	CHECK(p2[0].intensity > p2[1].intensity);
}

TEST_CASE("spectrum rejects unusable series") {
	std::vector<double> t(40), v(40);
	for(std::size_t i = 0; i < t.size(); ++i) t[i] = 0.1 * static_cast<double>(i);
	CHECK_THROWS_AS(spectrum(t, v), std::invalid_argument);
	t.resize(100);
	v.resize(100);
	for(std::size_t i = 0; i < t.size(); ++i) t[i] = 0.1 * static_cast<double>(i * i);
	CHECK_THROWS_AS(spectrum(t, v), std::invalid_argument);
	v.resize(50);
	CHECK_THROWS_AS(spectrum(t, v), std::invalid_argument);
}

TEST_CASE("observable CSV round trips at full precision") {
	CHECK(csv_columns(1) == std::vector<std::string>{"t", "E_total", "E_kinetic", "E_external", "E_ALDA", "E_SIC_subtraction",
	                                                 "dipole_x", "zft_x", "energy_rate", "symmetry_residual",
	                                                 "orthonormality_defect", "localization_quality"});
	CHECK(csv_columns(2).size() == 14);

	auto const sys = two_well();
	auto const s = random_state(sys.grid, 2, 3);
	auto const r = observe(s, sys, Scheme::gkli);
	std::stringstream ss;
	write_csv_header(ss, 1);
	write_csv_row(ss, r);
	write_csv_row(ss, r);
	auto const table = read_csv(ss);
	CHECK(table.columns == csv_columns(1));
	REQUIRE(table.rows.size() == 2);
	std::vector<double> const expected = {r.t, r.energy.total, r.energy.kinetic, r.energy.external, r.energy.alda,
	                                      r.energy.sic_subtraction, r.dipole[0], r.zft[0], r.energy_rate, r.symmetry_residual,
	                                      r.orthonormality_defect, r.localization_quality};
	for(std::size_t c = 0; c < expected.size(); ++c) CHECK(table.rows[1][c] == expected[c]);
	CHECK(table.column("E_total")[0] == r.energy.total);
	CHECK_THROWS_AS(table.column("E_tot"), std::invalid_argument);
}
