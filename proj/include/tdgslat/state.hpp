#ifndef TDGSLAT_STATE_HPP
#define TDGSLAT_STATE_HPP

#include <tdgslat/grid.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace tdgslat {

using Matrix = Eigen::MatrixXcd;
using Orbitals = std::vector<Field>;

inline constexpr double unitarity_tolerance = 1e-8;

/// Two-set orbital state: diagonal orbitals phi_i and the unitary u_{i alpha}
/// that defines the localized set psi_alpha = sum_i phi_i u_{i alpha}.
///
/// psi is never stored; it is rebuilt from (phi, u) whenever needed.
struct OrbitalState {
	Orbitals phi;
	Matrix u;
	double t = 0.0;

	OrbitalState() = default;
	OrbitalState(Orbitals phi_in, Matrix u_in, double time = 0.0);
	/// u = identity
	explicit OrbitalState(Orbitals phi_in, double time = 0.0);

	int size() const { return static_cast<int>(phi.size()); }
	Grid const& grid() const { return phi.front().grid(); }
	Orbitals localized() const;
};

/// Per-orbital and total densities plus the currents of the diagonal orbitals.
struct DensitySet {
	RealField rho;
	std::vector<RealField> rho_alpha;           // |psi_alpha|^2
	std::vector<std::vector<RealField>> current;  // J_i per axis
};

/// max |(u^dagger u - 1)_{ab}|
double unitarity_defect(Matrix const& u);

/// psi_alpha = sum_i phi_i u_{i alpha}; throws std::invalid_argument if u is not unitary.
Orbitals apply_unitary(Orbitals const& phi, Matrix const& u);

/// out_j = sum_i phi_i c_{ij} for an arbitrary coefficient matrix.
Orbitals combine(Orbitals const& phi, Matrix const& c);

Matrix gram_matrix(Orbitals const& phi);
double orthonormality_defect(Orbitals const& phi);
double orthonormality_defect(OrbitalState const& s);

RealField total_density(Orbitals const& orbitals);
DensitySet density(OrbitalState const& s);

/// J = (1/2i)(f* grad f - f grad f*) = Im(f* grad f)
std::vector<RealField> current_density(Field const& f);

/// Symmetric orthonormalization phi S^{-1/2}.
Orbitals lowdin_orthonormalize(Orbitals const& phi);
Orbitals gram_schmidt(Orbitals const& phi);

/// Haar-like random unitary from the QR decomposition of a complex Gaussian matrix.
Matrix random_unitary(int n, std::uint64_t seed);

/// Unitary u minimising sum_alpha ||sum_i phi_i u_{i alpha} - target_alpha||, the
/// polar factor of <phi_i|target_alpha>.
Matrix closest_unitary(Orbitals const& phi, Orbitals const& target);

/// exp(g) for anti-Hermitian g via the eigendecomposition of the Hermitian i g.
Matrix exp_antihermitian(Matrix const& g);

/// Throws std::invalid_argument when any state invariant is violated.
void validate(OrbitalState const& s, double ortho_tol = 1e-9, double unitary_tol = 1e-10);

}  // namespace tdgslat

#endif
