#include <tdgslat/checkpoint.hpp>
#include <tdgslat/errors.hpp>

#include <array>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

// Layout (host byte order, little-endian on every supported platform):
//   char[8]  magic "TDGSCKPT"
//   u32      version
//   i32      dim, nx, ny
//   f64      spacing
//   i32      boundary (0 zero, 1 periodic), stencil order
//   i32      N
//   f64      t
//   i64      step
//   f64      solver step
//   f64[2 * N * npoints]  phi_i(p) as (re, im), orbital-major
//   f64[2 * N * N]        u_{i alpha} as (re, im), row-major in i

namespace tdgslat {

namespace {

constexpr std::array<char, 8> magic = {'T', 'D', 'G', 'S', 'C', 'K', 'P', 'T'};

template <class T>
void put(std::ostream& os, T v) {
	os.write(reinterpret_cast<char const*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
	T v{};
	is.read(reinterpret_cast<char*>(&v), sizeof(T));
	if(!is) throw IoError("truncated checkpoint");
	return v;
}

}  // namespace

void write_checkpoint(std::ostream& os, Checkpoint const& ckpt) {
	auto const& s = ckpt.state;
	auto const& g = s.grid();
	os.write(magic.data(), magic.size());
	put<std::uint32_t>(os, checkpoint_version);
	put<std::int32_t>(os, g.dim());
	put<std::int32_t>(os, g.points(0));
	put<std::int32_t>(os, g.points(1));
	put<double>(os, g.spacing());
	put<std::int32_t>(os, g.boundary() == Boundary::zero ? 0 : 1);
	put<std::int32_t>(os, g.stencil_order());
	put<std::int32_t>(os, s.size());
	put<double>(os, s.t);
	put<std::int64_t>(os, ckpt.step);
	put<double>(os, ckpt.solver_step);
	for(auto const& f : s.phi) {
		for(auto const& v : f) {
			put<double>(os, v.real());
			put<double>(os, v.imag());
		}
	}
	for(int i = 0; i < s.size(); ++i) {
		for(int a = 0; a < s.size(); ++a) {
			put<double>(os, s.u(i, a).real());
			put<double>(os, s.u(i, a).imag());
		}
	}
	if(!os) throw IoError("failed writing checkpoint");
}

Checkpoint read_checkpoint(std::istream& is) {
	std::array<char, 8> head{};
	is.read(head.data(), head.size());
	if(!is || head != magic) throw IoError("not a checkpoint file");
	auto const version = get<std::uint32_t>(is);
	if(version != checkpoint_version) throw IoError("unsupported checkpoint version " + std::to_string(version));
	auto const dim = get<std::int32_t>(is);
	auto const nx = get<std::int32_t>(is);
	auto const ny = get<std::int32_t>(is);
	auto const h = get<double>(is);
	auto const bc = get<std::int32_t>(is) == 0 ? Boundary::zero : Boundary::periodic;
	auto const order = get<std::int32_t>(is);
	auto const g = [&] {
		try {
			return Grid(dim, {nx, ny}, h, bc, order);
		} catch(std::invalid_argument const& e) {
			throw IoError(std::string("checkpoint holds an invalid grid: ") + e.what());
		}
	}();
	auto const n = get<std::int32_t>(is);
	if(n < 1) throw IoError("checkpoint has no orbitals");
	Checkpoint ckpt;
	double const t = get<double>(is);
	ckpt.step = get<std::int64_t>(is);
	ckpt.solver_step = get<double>(is);
	Orbitals phi;
	for(int i = 0; i < n; ++i) {
		Field f(g);
		for(auto& v : f) {
			double const re = get<double>(is);
			double const im = get<double>(is);
			v = complex(re, im);
		}
		phi.push_back(std::move(f));
	}
	Matrix u(n, n);
	for(int i = 0; i < n; ++i) {
		for(int a = 0; a < n; ++a) {
			double const re = get<double>(is);
			double const im = get<double>(is);
			u(i, a) = complex(re, im);
		}
	}
	ckpt.state = OrbitalState(std::move(phi), std::move(u), t);
	return ckpt;
}

void save_checkpoint(std::filesystem::path const& path, Checkpoint const& ckpt) {
	std::ofstream os(path, std::ios::binary | std::ios::trunc);
	if(!os) throw IoError("cannot open " + path.string() + " for writing");
	write_checkpoint(os, ckpt);
}

Checkpoint load_checkpoint(std::filesystem::path const& path) {
	std::ifstream is(path, std::ios::binary);
	if(!is) throw IoError("cannot open " + path.string());
	return read_checkpoint(is);
}

}  // namespace tdgslat
