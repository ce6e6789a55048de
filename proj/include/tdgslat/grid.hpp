#ifndef TDGSLAT_GRID_HPP
#define TDGSLAT_GRID_HPP

#include <array>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace tdgslat {

using complex = std::complex<double>;

enum class Boundary { zero, periodic };

std::string to_string(Boundary bc);
Boundary parse_boundary(std::string const& name);

/// Uniform Cartesian mesh in one or two dimensions, centred on the origin.
///
/// Points are stored in lexicographic order with the last axis fastest,
/// index = ix * ny + iy. Coordinates are x_i = (i - (n - 1) / 2) h, so a grid
/// with an odd point count has a point exactly at the origin.
class Grid {
public:
	Grid(int dim, std::array<int, 2> points, double spacing, Boundary bc = Boundary::zero, int stencil_order = 2);

	static Grid line(int nx, double spacing, Boundary bc = Boundary::zero, int stencil_order = 2) {
		return Grid(1, {nx, 1}, spacing, bc, stencil_order);
	}
	static Grid plane(int nx, int ny, double spacing, Boundary bc = Boundary::zero, int stencil_order = 2) {
		return Grid(2, {nx, ny}, spacing, bc, stencil_order);
	}

	int dim() const { return dim_; }
	int points(int axis) const { return points_[axis]; }
	std::array<int, 2> const& points() const { return points_; }
	std::size_t size() const { return static_cast<std::size_t>(points_[0]) * points_[1]; }
	double spacing() const { return spacing_; }
	Boundary boundary() const { return bc_; }
	int stencil_order() const { return stencil_order_; }
	double cell_volume() const { return dim_ == 1 ? spacing_ : spacing_ * spacing_; }
	double volume() const { return cell_volume() * static_cast<double>(size()); }

	double coordinate(int axis, int index) const { return (index - 0.5 * (points_[axis] - 1)) * spacing_; }

	/// Coordinate of flat point `p` along `axis`.
	double position(std::size_t p, int axis) const {
		auto const ny = static_cast<std::size_t>(points_[1]);
		return axis == 0 ? coordinate(0, static_cast<int>(p / ny)) : coordinate(1, static_cast<int>(p % ny));
	}

	/// Largest eigenvalue of the discrete -1/2 Laplacian.
	double kinetic_bound() const;

	friend bool operator==(Grid const&, Grid const&) = default;

private:
	int dim_;
	std::array<int, 2> points_;
	double spacing_;
	Boundary bc_;
	int stencil_order_;
};

/// A scalar function sampled on a grid. Carries its grid so that binary
/// operations can refuse to mix fields from different meshes.
template <class T>
class BasicField {
public:
	using value_type = T;

	explicit BasicField(Grid const& g, T fill = T{}) : grid_(g), values_(g.size(), fill) {}
	BasicField(Grid const& g, std::vector<T> values) : grid_(g), values_(std::move(values)) {
		if(values_.size() != grid_.size()) throw std::invalid_argument("field length does not match grid");
	}

	Grid const& grid() const { return grid_; }
	std::size_t size() const { return values_.size(); }

	T& operator[](std::size_t i) { return values_[i]; }
	T const& operator[](std::size_t i) const { return values_[i]; }
	T* data() { return values_.data(); }
	T const* data() const { return values_.data(); }
	auto begin() { return values_.begin(); }
	auto end() { return values_.end(); }
	auto begin() const { return values_.begin(); }
	auto end() const { return values_.end(); }
	std::span<T> values() { return values_; }
	std::span<T const> values() const { return values_; }

	BasicField& operator+=(BasicField const& o) {
		check_same(o);
		for(std::size_t i = 0; i < size(); ++i) values_[i] += o.values_[i];
		return *this;
	}
	BasicField& operator-=(BasicField const& o) {
		check_same(o);
		for(std::size_t i = 0; i < size(); ++i) values_[i] -= o.values_[i];
		return *this;
	}
	template <class S>
	BasicField& operator*=(S s) {
		for(auto& v : values_) v *= s;
		return *this;
	}

	void check_same(BasicField const& o) const {
		if(!(grid_ == o.grid_)) throw std::invalid_argument("fields live on different grids");
	}

private:
	Grid grid_;
	std::vector<T> values_;
};

using Field = BasicField<complex>;
using RealField = BasicField<double>;

template <class T>
BasicField<T> operator+(BasicField<T> a, BasicField<T> const& b) { return a += b; }
template <class T>
BasicField<T> operator-(BasicField<T> a, BasicField<T> const& b) { return a -= b; }

void check_grid(Grid const& expected, Grid const& actual);

Field laplacian(Field const& f, Grid const& g);
inline Field laplacian(Field const& f) { return laplacian(f, f.grid()); }
RealField laplacian(RealField const& f, Grid const& g);

/// Central-difference gradient, one field per axis.
std::vector<Field> gradient(Field const& f, Grid const& g);
inline std::vector<Field> gradient(Field const& f) { return gradient(f, f.grid()); }
std::vector<RealField> gradient(RealField const& f, Grid const& g);

/// Riemann sum in lexicographic point order times the cell volume.
complex integrate(Field const& f, Grid const& g);
double integrate(RealField const& f, Grid const& g);
inline complex integrate(Field const& f) { return integrate(f, f.grid()); }
inline double integrate(RealField const& f) { return integrate(f, f.grid()); }

/// integrate(conj(f) * h)
complex inner(Field const& f, Field const& h, Grid const& g);
inline complex inner(Field const& f, Field const& h) { return inner(f, h, f.grid()); }
double norm(Field const& f);

/// <f| v |h> for a real local multiplier v.
complex sandwich(Field const& f, RealField const& v, Field const& h);

RealField real_part(Field const& f);
Field to_complex(RealField const& f);
RealField abs2(Field const& f);

/// Field filled by evaluating `fn(x, y)` at every point (y = 0 in 1D).
template <class T, class Fn>
BasicField<T> sample(Grid const& g, Fn&& fn) {
	BasicField<T> out(g);
	for(std::size_t p = 0; p < g.size(); ++p) {
		double const x = g.position(p, 0);
		double const y = g.dim() == 2 ? g.position(p, 1) : 0.0;
		out[p] = static_cast<T>(fn(x, y));
	}
	return out;
}

}  // namespace tdgslat

#endif
