#include <tdgslat/potentials.hpp>

#include <cmath>
#include <stdexcept>

namespace tdgslat {

double InteractionKernel::operator()(double r2) const { return strength / std::sqrt(r2 + softening * softening); }

void InteractionKernel::validate() const {
	if(kind == Kind::soft_coulomb && !(softening > 0.0)) throw std::invalid_argument("soft-Coulomb softening must be positive");
	if(strength < 0.0) throw std::invalid_argument("interaction strength must be non-negative");
}

std::string to_string(InteractionKernel::Kind kind) {
	return kind == InteractionKernel::Kind::soft_coulomb ? "soft-coulomb" : "contact";
}

InteractionKernel::Kind parse_kernel_kind(std::string const& name) {
	if(name == "soft-coulomb") return InteractionKernel::Kind::soft_coulomb;
	if(name == "contact") return InteractionKernel::Kind::contact;
	throw std::invalid_argument("unknown interaction kernel '" + name + "'");
}

XcFunctional::XcFunctional(double amplitude, double exponent) : amplitude_(amplitude), exponent_(exponent) {
	if(!(exponent > 1.0)) throw std::invalid_argument("xc exponent must exceed 1");
	if(amplitude < 0.0) throw std::invalid_argument("xc amplitude must be non-negative");
}

double XcFunctional::energy_density(double rho) const {
	if(rho <= 0.0) return 0.0;
	return -amplitude_ * std::pow(rho, exponent_);
}

double XcFunctional::potential(double rho) const {
	if(rho <= 0.0) return 0.0;
	return -amplitude_ * exponent_ * std::pow(rho, exponent_ - 1.0);
}

void check_density(RealField const& rho) {
	for(auto v : rho) {
		if(v < -negative_density_tolerance) throw std::domain_error("density is negative beyond round-off");
	}
}

namespace {

double dot(double const* a, double const* b, int n) {
	double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
	int i = 0;
	for(; i + 3 < n; i += 4) {
		s0 += a[i] * b[i];
		s1 += a[i + 1] * b[i + 1];
		s2 += a[i + 2] * b[i + 2];
		s3 += a[i + 3] * b[i + 3];
	}
	for(; i < n; ++i) s0 += a[i] * b[i];
	return (s0 + s1) + (s2 + s3);
}

}  // namespace

AldaFunctional::AldaFunctional(Grid const& g, InteractionKernel kernel, XcFunctional xc)
	: grid_(g), kernel_(kernel), xc_(xc) {
	kernel_.validate();
	if(kernel_.kind != InteractionKernel::Kind::soft_coulomb) return;
	int const nx = g.points(0);
	int const ny = g.points(1);
	int const wx = 2 * nx - 1;
	int const wy = 2 * ny - 1;
	double const h = g.spacing();
	table_.resize(static_cast<std::size_t>(wx) * wy);
	for(int a = 0; a < wx; ++a) {
		double const dx = (a - (nx - 1)) * h;
		for(int b = 0; b < wy; ++b) {
			// reversed along y: entry b holds offset dy = (ny - 1) - b
			double const dy = ((ny - 1) - b) * h;
			table_[static_cast<std::size_t>(a) * wy + b] = kernel_(dx * dx + dy * dy);
		}
	}
}

bool AldaFunctional::interacting() const { return kernel_.strength != 0.0 || xc_.amplitude() != 0.0; }

RealField AldaFunctional::hartree_potential(RealField const& rho) const {
	check_grid(grid_, rho.grid());
	check_density(rho);
	RealField out(grid_);
	if(kernel_.strength == 0.0) return out;
	if(kernel_.kind == InteractionKernel::Kind::contact) {
		for(std::size_t p = 0; p < rho.size(); ++p) out[p] = kernel_.strength * rho[p];
		return out;
	}
	int const nx = grid_.points(0);
	int const ny = grid_.points(1);
	int const wy = 2 * ny - 1;
	double const dv = grid_.cell_volume();
	if(ny == 1) {
		// 1D: the table is a plain row over dx; reverse once so the sum is contiguous
		std::vector<double> rev(table_.rbegin(), table_.rend());
		for(int ix = 0; ix < nx; ++ix) {
			// w(x_ix - x_jx) = table[ix - jx + nx - 1] = rev[nx - 1 - ix + jx]
			out[ix] = dv * dot(rev.data() + (nx - 1 - ix), rho.data(), nx);
		}
		return out;
	}
	for(int ix = 0; ix < nx; ++ix) {
		for(int iy = 0; iy < ny; ++iy) {
			double acc = 0.0;
			for(int jx = 0; jx < nx; ++jx) {
				double const* row = table_.data() + static_cast<std::size_t>(ix - jx + nx - 1) * wy;
				// w(dy = iy - jy) sits at reversed column (ny - 1) - (iy - jy)
				acc += dot(row + (ny - 1 - iy), rho.data() + static_cast<std::size_t>(jx) * ny, ny);
			}
			out[static_cast<std::size_t>(ix) * ny + iy] = dv * acc;
		}
	}
	return out;
}

RealField AldaFunctional::xc_potential(RealField const& rho) const {
	check_grid(grid_, rho.grid());
	check_density(rho);
	RealField out(grid_);
	if(xc_.amplitude() == 0.0) return out;
	for(std::size_t p = 0; p < rho.size(); ++p) out[p] = xc_.potential(rho[p]);
	return out;
}

RealField AldaFunctional::u_alda(RealField const& rho) const {
	auto out = hartree_potential(rho);
	out += xc_potential(rho);
	return out;
}

double AldaFunctional::hartree_energy(RealField const& rho) const {
	auto const vh = hartree_potential(rho);
	double acc = 0.0;
	for(std::size_t p = 0; p < rho.size(); ++p) acc += rho[p] * vh[p];
	return 0.5 * acc * grid_.cell_volume();
}

double AldaFunctional::xc_energy(RealField const& rho) const {
	check_grid(grid_, rho.grid());
	check_density(rho);
	if(xc_.amplitude() == 0.0) return 0.0;
	double acc = 0.0;
	for(auto v : rho) acc += xc_.energy_density(v);
	return acc * grid_.cell_volume();
}

double AldaFunctional::e_alda(RealField const& rho) const { return hartree_energy(rho) + xc_energy(rho); }

double AldaFunctional::e_alda(RealField const& rho, RealField const& v_hartree) const {
	double acc = 0.0;
	for(std::size_t p = 0; p < rho.size(); ++p) acc += rho[p] * v_hartree[p];
	return 0.5 * acc * grid_.cell_volume() + xc_energy(rho);
}

RealField hartree_potential(RealField const& rho, InteractionKernel const& kernel) {
	return AldaFunctional(rho.grid(), kernel, XcFunctional(0.0)).hartree_potential(rho);
}

RealField xc_potential(RealField const& rho, XcFunctional const& xc) {
	check_density(rho);
	RealField out(rho.grid());
	for(std::size_t p = 0; p < rho.size(); ++p) out[p] = xc.potential(rho[p]);
	return out;
}

}  // namespace tdgslat
