#include <tdgslat/config.hpp>
#include <tdgslat/errors.hpp>

#include <doctest.h>

#include <fstream>
#include <sstream>

using namespace tdgslat;

namespace {

std::string const data_dir = TDGSLAT_TEST_DATA;

std::string read_file(std::string const& path) {
	std::ifstream in(path);
	REQUIRE(in);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

std::string const minimal = "[system]\npoints = 41\nspacing = 0.3\nelectrons = 2\ncenters = -1, 1\ncharges = 1, 1\n";

// every error message of a rejected config
std::vector<std::string> errors_of(std::string const& text) {
	try {
		parse_config(text);
	} catch(ConfigError const& e) {
		return e.problems();
	}
	FAIL("config was accepted");
	return {};
}

bool mentions(std::vector<std::string> const& errors, std::string const& needle) {
	for(auto const& e : errors) {
		if(e.find(needle) != std::string::npos) return true;
	}
	return false;
}

}  // namespace

TEST_CASE("empty text is missing the system block") {
	auto const e = errors_of("");
	REQUIRE(e.size() == 1);
	CHECK(e[0] == "missing system block");
	CHECK(errors_of("# only a comment\n\n")[0] == "missing system block");
}

TEST_CASE("a minimal config takes the documented defaults") {
	auto const c = parse_config(minimal);
	CHECK(c.system.dim == 1);
	CHECK(c.system.points[0] == 41);
	CHECK(c.scheme == Scheme::alda);
	CHECK(c.propagation.scheme == Scheme::alda);
	CHECK(c.propagation.taylor_order == 4);
	CHECK(c.propagation.midpoint_iterations == 2);
	CHECK(c.propagation.symmetry_stride == 1);
	CHECK(c.propagation.symmetry_tol == 1e-6);
	CHECK(c.ground.solver.symmetry_tol == 1e-8);
	CHECK_FALSE(c.ground.source.has_value());
	CHECK(c.benchmark.schemes == std::vector<Scheme>{Scheme::alda, Scheme::gslat, Scheme::tdsic});
	CHECK(c.benchmark.repeats == 3);
	CHECK(c.output.output_stride == 1);
}

TEST_CASE("the conformance file exercises the whole grammar") {
	auto const c = load_config(data_dir + "/conformance.cfg");
	CHECK(c.system.dim == 2);
	CHECK(c.system.points == std::array<int, 2>{17, 15});
	CHECK(c.system.spacing == 0.45);
	CHECK(c.system.stencil_order == 4);
	CHECK(c.system.electrons == 3);
	CHECK(c.system.potential == PotentialKind::harmonic);
	CHECK(c.system.omega == std::array<double, 2>{0.5, 0.625});
	CHECK(c.functional.kernel == InteractionKernel::Kind::contact);
	CHECK(c.functional.strength == 0.75);
	CHECK(c.scheme == Scheme::gkli);
	CHECK(c.propagation.scheme == Scheme::gkli);
	CHECK(c.propagation.gkli.gauge_orbital == 0);
	CHECK(c.propagation.midpoint_symmetry == std::optional<bool>(true));
	CHECK(c.propagation.steps == 40);
	CHECK(c.boost == std::array<double, 2>{0.05, -0.025});
	CHECK(c.output.dir == "runs/conformance");
	CHECK(c.output.output_stride == 4);
	CHECK(c.benchmark.schemes == std::vector<Scheme>{Scheme::alda, Scheme::gslat});
	CHECK(parse_config(serialize(c)) == c);
}

TEST_CASE("every problem is reported with its line number") {
	auto const e = errors_of(read_file(data_dir + "/invalid.cfg"));
	CAPTURE(e.size());
	CHECK(mentions(e, "line 6: duplicate key 'system.spacing'"));
	CHECK(mentions(e, "line 7: unknown key 'system.colour'"));
	CHECK(mentions(e, "line 9: unterminated section header"));
	CHECK(mentions(e, "line 13: propagation.dt"));
	CHECK(mentions(e, "line 14: expected 'key = value'"));
	CHECK(mentions(e, "line 16: unknown section [extras]"));
	// after a broken header the keys stay in the previous section
	CHECK(mentions(e, "line 10: unknown key 'system.kernel'"));
	CHECK(e.size() == 7);
}

TEST_CASE("values are range-checked") {
	CHECK(mentions(errors_of(minimal + "[propagation]\ndt = 0.05\n"), "h^2/pi"));
	auto const dt = errors_of(minimal + "[propagation]\ndt = 0.05\n")[0];
	CHECK(dt.rfind("line 8: ", 0) == 0);
	CHECK(mentions(errors_of(minimal + "[scheme]\nname = lda\n"), "line 8: scheme.name"));
	CHECK(mentions(errors_of(minimal + "[functional]\nxc_exponent = 0.5\n"), "xc"));
	CHECK(mentions(errors_of(minimal + "[output]\noutput_stride = 0\n"), "output_stride"));
	CHECK(mentions(errors_of(minimal + "[boost]\nk = 0.1, 0.2\n"), "boost"));
	CHECK(mentions(errors_of(minimal + "[ground]\nthreshold = -1\n"), "threshold"));
	CHECK(mentions(errors_of(minimal + "[scheme]\ngkli_gauge = 4\n"), "gauge"));
	CHECK(mentions(errors_of("[system]\nspacing = 0.3\n"), "missing system.points"));
	CHECK(mentions(errors_of("dim = 1\n"), "outside any section"));
	CHECK(mentions(errors_of("[system]\npoints = 41\nspacing = 0.3\nelectrons = 2\ncenters = 0\ncharges = 1, 1\n"), "charges"));
	CHECK(mentions(errors_of(minimal + "[system]\nspacing = nan\n"), "spacing"));
}

TEST_CASE("serialize round trips") {
	auto c = parse_config(minimal);
	CHECK(parse_config(serialize(c)) == c);
	c.scheme = Scheme::tdsic;
	c.propagation.scheme = Scheme::tdsic;
	c.propagation.dt = 0.1 / 3.0 * 0.5;
	c.propagation.midpoint_symmetry = false;
	c.boost = {0.0123456789012345, 0.0};
	c.ground.source = Scheme::alda;
	c.functional.xc_exponent = 1.5;
	c.output.dir = "some/dir";
	c.benchmark.schemes = {Scheme::gkli};
	auto const text = serialize(c);
	CHECK(parse_config(text) == c);
	CHECK(serialize(parse_config(text)) == text);
}

TEST_CASE("presets expand to their committed files byte for byte") {
	auto const names = preset_names();
	CHECK(names == std::vector<std::string>{"hchain4", "hchain8", "qdot6", "twowell2"});
	for(auto const& name : names) {
		CAPTURE(name);
		auto const text = preset_text(name);
		CHECK(serialize(load_preset(name)) == text);
		CHECK(load_preset(name) == parse_config(text));
		CHECK(parse_config("preset = " + name + "\n") == load_preset(name));
	}
}

TEST_CASE("user keys override a preset") {
	auto const c = parse_config("preset = twowell2\n[scheme]\nname = tdsic\n[propagation]\nsteps = 7\n");
	auto const base = load_preset("twowell2");
	CHECK(c.scheme == Scheme::tdsic);
	CHECK(c.propagation.scheme == Scheme::tdsic);
	CHECK(c.propagation.steps == 7);
	CHECK(c.system == base.system);
	CHECK(mentions(errors_of("preset = nosuch\n"), "line 1: unknown preset 'nosuch'"));
	CHECK(mentions(errors_of("preset = ../etc\n"), "invalid preset name"));
	CHECK(mentions(errors_of("preset = twowell2\npreset = qdot6\n"), "preset given twice"));
}

TEST_CASE("make_system builds the configured potential") {
	auto const c = load_preset("hchain4");
	auto const sys = make_system(c);
	CHECK(sys.electrons == 4);
	CHECK(sys.grid.size() == static_cast<std::size_t>(c.system.points[0]));
	// at a centre the four soft-Coulomb wells add up
	std::size_t best = 0;
	for(std::size_t p = 0; p < sys.v_ext.size(); ++p) {
		if(sys.v_ext[p] < sys.v_ext[best]) best = p;
	}
	double expected = 0.0;
	double const x = sys.grid.position(best, 0);
	for(double x0 : c.system.centers) expected -= 1.0 / std::sqrt((x - x0) * (x - x0) + 1.0);
	CHECK(sys.v_ext[best] == doctest::Approx(expected).epsilon(1e-14));

	auto const q = make_system(load_preset("qdot6"));
	auto const& g = q.grid;
	std::size_t const corner = 0;
	double const cx = g.position(corner, 0), cy = g.position(corner, 1);
	CHECK(q.v_ext[corner] == doctest::Approx(0.5 * 0.25 * (cx * cx + cy * cy)).epsilon(1e-14));
	CHECK_THROWS_AS(load_config(data_dir + "/does-not-exist.cfg"), IoError);
}
