#ifndef TDGSLAT_HAMILTONIAN_HPP
#define TDGSLAT_HAMILTONIAN_HPP

#include <tdgslat/localize.hpp>
#include <tdgslat/potentials.hpp>
#include <tdgslat/state.hpp>

#include <optional>
#include <string>
#include <vector>

namespace tdgslat {

enum class Scheme {
	alda,        // no self-interaction correction
	sic_slater,  // one-set Slater potential built from the diagonal orbitals
	tdsic,       // two-set, nonlocal SIC Hamiltonian
	gslat,       // two-set, local generalized SIC-Slater potential
	gkli,        // two-set, local adiabatic generalized SIC-KLI potential
};

std::string to_string(Scheme s);
Scheme parse_scheme(std::string const& name);
std::vector<Scheme> all_schemes();

/// Schemes that carry a localizing unitary solved from the symmetry condition.
constexpr bool is_two_set(Scheme s) { return s == Scheme::tdsic || s == Scheme::gslat || s == Scheme::gkli; }
constexpr bool is_sic(Scheme s) { return s != Scheme::alda; }

/// Physical system: mesh, external potential, electron count and functional.
struct System {
	Grid grid;
	RealField v_ext;
	int electrons;
	AldaFunctional functional;
};

struct GkliOptions {
	double tol = 1e-10;
	int max_iter = 20000;
	double mixing = 0.5;
	// orbital whose averaged correction is pinned to zero; -1 selects the last (highest) one
	int gauge_orbital = -1;

	friend bool operator==(GkliOptions const&, GkliOptions const&) = default;
};

struct GkliResult {
	RealField v0;
	int iterations = 0;
	bool converged = false;
	double change = 0.0;
};

/// Fields shared by every operator application within one step.
struct PotentialSet {
	RealField v_ext;
	RealField u_total;  // U_ALDA[rho]
	// local SIC correction V0 subtracted from h_ALDA; zero for ALDA, absent for TDSIC
	std::optional<RealField> v0;
	// v_ext + U_ALDA[rho] - V0: the complete local potential
	RealField v_local;
	// U_ALDA[rho_alpha] for SIC schemes
	std::vector<RealField> orbital_u;
};

/// -1/2 Lap f + (v_ext + U_ALDA[rho]) f
Field h_alda_apply(Field const& f, RealField const& rho, RealField const& v_ext, AldaFunctional const& functional);

/// h_ALDA f - sum_alpha U_ALDA[rho_alpha] psi_alpha <psi_alpha|f>, with psi rebuilt from the state's u.
Field h_sic_apply(Field const& f, OrbitalState const& state, System const& system);

RealField slater_potential_one_set(Orbitals const& phi, AldaFunctional const& functional);
RealField gslat_potential(Orbitals const& psi, AldaFunctional const& functional);
GkliResult gkli_potential(OrbitalState const& state, AldaFunctional const& functional, GkliOptions const& options = {});

/// Gauge-fixed fixed-point map of the GKLI equation evaluated once: V_S + Re V_K[v0].
RealField gkli_map(OrbitalState const& state, Orbitals const& psi, OrbitalPotentials const& pots, RealField const& v_slater,
                   RealField const& v0);

struct HamiltonianOptions {
	GkliOptions gkli;
	// a symmetry residual above warn_factor * symmetry_tol raises the diagnostic flag
	double symmetry_tol = 1e-6;
	double warn_factor = 10.0;
};

/// Mean-field operator of one scheme, frozen at a given state.
class Hamiltonian {
public:
	Hamiltonian(System const& system, OrbitalState const& state, Scheme scheme, HamiltonianOptions const& options = {});

	Field apply(Field const& f) const;

	Scheme scheme() const { return scheme_; }
	PotentialSet const& potentials() const { return pots_; }
	Orbitals const& localized() const { return psi_; }
	double symmetry_residual() const { return symmetry_residual_; }
	bool symmetry_warning() const { return symmetry_warning_; }
	std::optional<GkliResult> const& gkli() const { return gkli_; }

private:
	Scheme scheme_;
	PotentialSet pots_;
	Orbitals psi_;
	// U_alpha psi_alpha, the left factors of the nonlocal projector
	Orbitals projected_;
	double symmetry_residual_ = 0.0;
	bool symmetry_warning_ = false;
	std::optional<GkliResult> gkli_;
};

}  // namespace tdgslat

#endif
