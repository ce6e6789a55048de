#ifndef TDGSLAT_OBSERVABLES_HPP
#define TDGSLAT_OBSERVABLES_HPP

#include <tdgslat/hamiltonian.hpp>

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tdgslat {

struct EnergyBreakdown {
	double kinetic = 0.0;
	double external = 0.0;
	double alda = 0.0;
	double sic_subtraction = 0.0;  // sum_alpha E_ALDA[|psi_alpha|^2], zero for ALDA
	double total = 0.0;
};

double kinetic_energy(Orbitals const& phi);

/// E = T + E_ext + E_ALDA[rho] - sum_alpha E_ALDA[|psi_alpha|^2].
/// The one-set Slater scheme uses the diagonal orbitals as its psi.
EnergyBreakdown total_energy(OrbitalState const& s, System const& system, Scheme scheme);

/// Integral of r rho(r) per axis.
std::vector<double> dipole(RealField const& rho);

/// Total momentum sum_i <phi_i| -i grad |phi_i>.
std::vector<double> momentum(Orbitals const& phi);

/// Integral of v_ext grad rho, the external-force part of d/dt momentum.
std::vector<double> external_force(RealField const& rho, RealField const& v_ext);

/// Local correction V0 of a local SIC scheme evaluated at the state; empty for ALDA and TDSIC.
std::optional<RealField> scheme_correction(OrbitalState const& s, System const& system, Scheme scheme,
                                           GkliOptions const& gkli = {});

/// Instantaneous dE/dt of a local SIC scheme,
/// sum_alpha Im int (U_ALDA[rho_alpha] - V0) psi_alpha^* Lap psi_alpha.
/// Zero for ALDA and TDSIC, whose equations conserve the energy.
double energy_rate_diagnostic(OrbitalState const& s, System const& system, Scheme scheme);

/// Anomalous internal force of a local SIC scheme,
/// sum_alpha int (U_ALDA[rho_alpha] - V0) grad rho_alpha, per axis.
/// Zero for ALDA and TDSIC.
std::vector<double> zft_residual(OrbitalState const& s, System const& system, Scheme scheme);

struct ObservableRecord {
	double t = 0.0;
	EnergyBreakdown energy;
	std::vector<double> dipole;
	std::vector<double> zft;
	double energy_rate = 0.0;
	double symmetry_residual = 0.0;
	double orthonormality_defect = 0.0;
	double localization_quality = 0.0;
};

/// All record fields from one snapshot; the orbital potentials are evaluated once.
ObservableRecord observe(OrbitalState const& s, System const& system, Scheme scheme, GkliOptions const& gkli = {});

std::vector<std::string> csv_columns(int dim);
void write_csv_header(std::ostream& os, int dim);
void write_csv_row(std::ostream& os, ObservableRecord const& r);

/// Column-name -> values table read back from an observable CSV.
struct CsvTable {
	std::vector<std::string> columns;
	std::vector<std::vector<double>> rows;

	std::vector<double> column(std::string const& name) const;
};
CsvTable read_csv(std::istream& is);

struct Peak {
	double omega;
	double intensity;
};

/// Damped power spectrum of a uniformly sampled signal; local maxima sorted
/// by decreasing intensity. gamma <= 0 selects the default damping that
/// decays the window to 1e-3 at the end of the series.
std::vector<Peak> spectrum(std::span<double const> times, std::span<double const> values, double gamma = 0.0);

}  // namespace tdgslat

#endif
