#ifndef TDGSLAT_POTENTIALS_HPP
#define TDGSLAT_POTENTIALS_HPP

#include <tdgslat/grid.hpp>

#include <vector>

namespace tdgslat {

/// Electron-electron interaction w(r - r').
struct InteractionKernel {
	enum class Kind { soft_coulomb, contact };

	Kind kind = Kind::soft_coulomb;
	double softening = 1.0;  // a
	double strength = 1.0;   // lambda

	/// Soft-Coulomb value at squared separation r2. Contact kernels have no pointwise value.
	double operator()(double r2) const;
	void validate() const;
};

std::string to_string(InteractionKernel::Kind kind);
InteractionKernel::Kind parse_kernel_kind(std::string const& name);

/// Exchange-only local functional e_xc(rho) = -A rho^p.
class XcFunctional {
public:
	XcFunctional(double amplitude = 1.0, double exponent = 4.0 / 3.0);

	double amplitude() const { return amplitude_; }
	double exponent() const { return exponent_; }

	double energy_density(double rho) const;
	double potential(double rho) const;

private:
	double amplitude_;
	double exponent_;
};

/// Densities below this count as round-off; anything more negative is rejected.
inline constexpr double negative_density_tolerance = 1e-14;

void check_density(RealField const& rho);

/// Hartree + exchange-correlation energy functional on a fixed grid.
///
/// The direct O(N^2) convolution uses a kernel table over all grid offsets,
/// built once at construction.
class AldaFunctional {
public:
	AldaFunctional(Grid const& g, InteractionKernel kernel, XcFunctional xc);

	Grid const& grid() const { return grid_; }
	InteractionKernel const& kernel() const { return kernel_; }
	XcFunctional const& xc() const { return xc_; }

	RealField hartree_potential(RealField const& rho) const;
	RealField xc_potential(RealField const& rho) const;
	RealField u_alda(RealField const& rho) const;

	double hartree_energy(RealField const& rho) const;
	double xc_energy(RealField const& rho) const;
	double e_alda(RealField const& rho) const;

	/// Hartree + XC energy given a precomputed Hartree potential of rho.
	double e_alda(RealField const& rho, RealField const& v_hartree) const;

	bool interacting() const;

private:
	Grid grid_;
	InteractionKernel kernel_;
	XcFunctional xc_;
	// kernel values for offsets (dx, dy) with dy reversed, one row per dx
	std::vector<double> table_;
};

RealField hartree_potential(RealField const& rho, InteractionKernel const& kernel);
RealField xc_potential(RealField const& rho, XcFunctional const& xc);

}  // namespace tdgslat

#endif
