#include <tdgslat/grid.hpp>

#include <cmath>

namespace tdgslat {

std::string to_string(Boundary bc) { return bc == Boundary::zero ? "zero" : "periodic"; }

Boundary parse_boundary(std::string const& name) {
	if(name == "zero") return Boundary::zero;
	if(name == "periodic") return Boundary::periodic;
	throw std::invalid_argument("unknown boundary condition '" + name + "'");
}

Grid::Grid(int dim, std::array<int, 2> points, double spacing, Boundary bc, int stencil_order)
	: dim_(dim), points_(points), spacing_(spacing), bc_(bc), stencil_order_(stencil_order) {
	if(dim != 1 && dim != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
	if(dim == 1) points_[1] = 1;
	if(!(spacing > 0.0)) throw std::invalid_argument("grid spacing must be positive");
	for(int a = 0; a < dim; ++a) {
		if(points_[a] < 8) throw std::invalid_argument("grid needs at least 8 points per axis");
	}
	if(stencil_order != 2 && stencil_order != 4) throw std::invalid_argument("stencil order must be 2 or 4");
}

double Grid::kinetic_bound() const {
	double const per_axis = stencil_order_ == 2 ? 2.0 : 8.0 / 3.0;
	return dim_ * per_axis / (spacing_ * spacing_);
}

void check_grid(Grid const& expected, Grid const& actual) {
	if(!(expected == actual)) throw std::invalid_argument("field is not defined on the requested grid");
}

namespace {

struct Stencil {
	int half;
	double coeff[5];  // offsets -half..half
};

Stencil laplacian_stencil(int order) {
	if(order == 2) return {1, {1.0, -2.0, 1.0, 0.0, 0.0}};
	return {2, {-1.0 / 12.0, 4.0 / 3.0, -5.0 / 2.0, 4.0 / 3.0, -1.0 / 12.0}};
}

Stencil gradient_stencil(int order) {
	if(order == 2) return {1, {-0.5, 0.0, 0.5, 0.0, 0.0}};
	return {2, {1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0}};
}

// out += scale * (stencil along axis) f
template <class T>
void apply_axis(BasicField<T> const& f, int axis, Stencil const& st, double scale, BasicField<T>& out) {
	auto const& g = f.grid();
	int const nx = g.points(0);
	int const ny = g.points(1);
	int const n = g.points(axis);
	bool const periodic = g.boundary() == Boundary::periodic;
	for(int ix = 0; ix < nx; ++ix) {
		for(int iy = 0; iy < ny; ++iy) {
			int const i = axis == 0 ? ix : iy;
			T acc{};
			for(int o = -st.half; o <= st.half; ++o) {
				double const c = st.coeff[o + st.half];
				if(c == 0.0) continue;
				int j = i + o;
				if(j < 0 || j >= n) {
					if(!periodic) continue;
					j = (j + n) % n;
				}
				std::size_t const q = axis == 0 ? static_cast<std::size_t>(j) * ny + iy
				                                : static_cast<std::size_t>(ix) * ny + j;
				acc += c * f[q];
			}
			out[static_cast<std::size_t>(ix) * ny + iy] += scale * acc;
		}
	}
}

template <class T>
BasicField<T> laplacian_impl(BasicField<T> const& f, Grid const& g) {
	check_grid(g, f.grid());
	BasicField<T> out(g);
	auto const st = laplacian_stencil(g.stencil_order());
	double const scale = 1.0 / (g.spacing() * g.spacing());
	for(int a = 0; a < g.dim(); ++a) apply_axis(f, a, st, scale, out);
	return out;
}

template <class T>
std::vector<BasicField<T>> gradient_impl(BasicField<T> const& f, Grid const& g) {
	check_grid(g, f.grid());
	auto const st = gradient_stencil(g.stencil_order());
	std::vector<BasicField<T>> out;
	for(int a = 0; a < g.dim(); ++a) {
		out.emplace_back(g);
		apply_axis(f, a, st, 1.0 / g.spacing(), out.back());
	}
	return out;
}

}  // namespace

Field laplacian(Field const& f, Grid const& g) { return laplacian_impl(f, g); }
RealField laplacian(RealField const& f, Grid const& g) { return laplacian_impl(f, g); }
std::vector<Field> gradient(Field const& f, Grid const& g) { return gradient_impl(f, g); }
std::vector<RealField> gradient(RealField const& f, Grid const& g) { return gradient_impl(f, g); }

complex integrate(Field const& f, Grid const& g) {
	check_grid(g, f.grid());
	complex acc{};
	for(auto const& v : f) acc += v;
	return acc * g.cell_volume();
}

double integrate(RealField const& f, Grid const& g) {
	check_grid(g, f.grid());
	double acc = 0.0;
	for(auto const& v : f) acc += v;
	return acc * g.cell_volume();
}

complex inner(Field const& f, Field const& h, Grid const& g) {
	check_grid(g, f.grid());
	check_grid(g, h.grid());
	complex acc{};
	for(std::size_t i = 0; i < f.size(); ++i) acc += std::conj(f[i]) * h[i];
	return acc * g.cell_volume();
}

double norm(Field const& f) { return std::sqrt(inner(f, f).real()); }

complex sandwich(Field const& f, RealField const& v, Field const& h) {
	check_grid(f.grid(), v.grid());
	check_grid(f.grid(), h.grid());
	complex acc{};
	for(std::size_t i = 0; i < f.size(); ++i) acc += std::conj(f[i]) * (v[i] * h[i]);
	return acc * f.grid().cell_volume();
}

RealField real_part(Field const& f) {
	RealField out(f.grid());
	for(std::size_t i = 0; i < f.size(); ++i) out[i] = f[i].real();
	return out;
}

Field to_complex(RealField const& f) {
	Field out(f.grid());
	for(std::size_t i = 0; i < f.size(); ++i) out[i] = f[i];
	return out;
}

RealField abs2(Field const& f) {
	RealField out(f.grid());
	for(std::size_t i = 0; i < f.size(); ++i) out[i] = std::norm(f[i]);
	return out;
}

}  // namespace tdgslat
