#ifndef TDGSLAT_LOCALIZE_HPP
#define TDGSLAT_LOCALIZE_HPP

#include <tdgslat/potentials.hpp>
#include <tdgslat/state.hpp>

#include <vector>

namespace tdgslat {

/// Points where the total density falls below this are treated as vacuum.
inline constexpr double density_floor = 1e-12;

/// Orbital densities rho_alpha = |psi_alpha|^2 with their U_ALDA[rho_alpha] and self energies.
struct OrbitalPotentials {
	std::vector<RealField> rho;
	std::vector<RealField> u;
	std::vector<double> self_energy;  // E_ALDA[rho_alpha]

	double total_self_energy() const;
};

OrbitalPotentials orbital_potentials(Orbitals const& psi, AldaFunctional const& functional);

/// sum_alpha (rho_alpha / rho) v_alpha, with rho = sum_alpha rho_alpha.
///
/// In vacuum (rho < density_floor) the weights are undefined; there the plain
/// mean (1/N) sum_alpha v_alpha is used, which keeps N = 1 exact everywhere.
RealField density_weighted_average(std::vector<RealField> const& rho, std::vector<RealField> const& v);

/// K_{beta alpha} = <psi_beta| U_ALDA[|psi_alpha|^2] |psi_alpha>. The symmetry
/// condition holds iff K is Hermitian.
Matrix symmetry_matrix(Orbitals const& psi, AldaFunctional const& functional);
Matrix symmetry_matrix(Orbitals const& psi, std::vector<RealField> const& orbital_u);

/// max |K - K^dagger|
double symmetry_residual(Matrix const& k);

struct SymmetryOptions {
	double tol = 1e-8;
	int max_iter = 1000;
	double initial_step = 1.0;
	int max_line_search = 20;  // trial points per iteration
};

struct SymmetryReport {
	double residual = 0.0;
	int iterations = 0;
	bool converged = false;
	double step_size = 0.0;
};

struct SymmetrySolution {
	Matrix u;
	SymmetryReport report;
};

/// Finds u with Hermitian K(psi(u)) at fixed diagonal orbitals.
///
/// Conjugate-gradient ascent on sum_alpha E_ALDA[|psi_alpha|^2] along the
/// unitary group, u <- u exp(t D), where the gradient direction is K - K^dagger.
/// Every iterate is unitary to round-off. Non-convergence is reported, not thrown.
SymmetrySolution solve_symmetry_condition(Orbitals const& phi, Matrix const& u0, AldaFunctional const& functional,
                                          SymmetryOptions const& options = {});

/// Relative error of replacing U_ALDA[rho_alpha] psi_alpha by the density-weighted
/// average potential acting on psi_alpha, maximised over alpha. Vacuum points are skipped.
double localization_quality(Orbitals const& psi, AldaFunctional const& functional);
double localization_quality(Orbitals const& psi, OrbitalPotentials const& pots);

}  // namespace tdgslat

#endif
