#include <tdgslat/observables.hpp>

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace tdgslat {

double kinetic_energy(Orbitals const& phi) {
	double acc = 0.0;
	for(auto const& f : phi) acc += -0.5 * inner(f, laplacian(f)).real();
	return acc;
}

namespace {

struct Snapshot {
	Orbitals psi;
	OrbitalPotentials pots;
	RealField rho;
	std::optional<RealField> v0;
};

Snapshot take_snapshot(OrbitalState const& s, System const& system, Scheme scheme, GkliOptions const& gkli) {
	Snapshot snap{is_two_set(scheme) ? s.localized() : s.phi, {}, total_density(s.phi), std::nullopt};
	snap.pots = orbital_potentials(snap.psi, system.functional);
	switch(scheme) {
	case Scheme::sic_slater:
	case Scheme::gslat: snap.v0 = density_weighted_average(snap.pots.rho, snap.pots.u); break;
	case Scheme::gkli: snap.v0 = gkli_potential(s, system.functional, gkli).v0; break;
	case Scheme::alda:
	case Scheme::tdsic: break;
	}
	return snap;
}

EnergyBreakdown energy_from(Snapshot const& snap, OrbitalState const& s, System const& system, Scheme scheme) {
	EnergyBreakdown e;
	e.kinetic = kinetic_energy(s.phi);
	double ext = 0.0;
	for(std::size_t p = 0; p < snap.rho.size(); ++p) ext += snap.rho[p] * system.v_ext[p];
	e.external = ext * system.grid.cell_volume();
	e.alda = system.functional.e_alda(snap.rho);
	e.sic_subtraction = is_sic(scheme) ? snap.pots.total_self_energy() : 0.0;
	e.total = e.kinetic + e.external + e.alda - e.sic_subtraction;
	return e;
}

double rate_from(Snapshot const& snap) {
	if(!snap.v0) return 0.0;
	double acc = 0.0;
	for(std::size_t a = 0; a < snap.psi.size(); ++a) {
		auto const& f = snap.psi[a];
		auto const lap = laplacian(f);
		auto const& ua = snap.pots.u[a];
		complex sum{};
		for(std::size_t p = 0; p < f.size(); ++p) sum += (ua[p] - (*snap.v0)[p]) * std::conj(f[p]) * lap[p];
		acc += sum.imag();
	}
	return acc * snap.rho.grid().cell_volume();
}

std::vector<double> zft_from(Snapshot const& snap) {
	auto const& g = snap.rho.grid();
	std::vector<double> out(static_cast<std::size_t>(g.dim()), 0.0);
	if(!snap.v0) return out;
	for(std::size_t a = 0; a < snap.psi.size(); ++a) {
		auto const grad = gradient(snap.pots.rho[a], g);
		auto const& ua = snap.pots.u[a];
		for(int axis = 0; axis < g.dim(); ++axis) {
			double acc = 0.0;
			for(std::size_t p = 0; p < g.size(); ++p) acc += (ua[p] - (*snap.v0)[p]) * grad[axis][p];
			out[axis] += acc * g.cell_volume();
		}
	}
	return out;
}

}  // namespace

EnergyBreakdown total_energy(OrbitalState const& s, System const& system, Scheme scheme) {
	Snapshot snap{is_two_set(scheme) ? s.localized() : s.phi, {}, total_density(s.phi), std::nullopt};
	if(is_sic(scheme)) snap.pots = orbital_potentials(snap.psi, system.functional);
	return energy_from(snap, s, system, scheme);
}

std::vector<double> dipole(RealField const& rho) {
	auto const& g = rho.grid();
	std::vector<double> d(static_cast<std::size_t>(g.dim()), 0.0);
	for(int axis = 0; axis < g.dim(); ++axis) {
		double acc = 0.0;
		for(std::size_t p = 0; p < g.size(); ++p) acc += g.position(p, axis) * rho[p];
		d[axis] = acc * g.cell_volume();
	}
	return d;
}

std::vector<double> momentum(Orbitals const& phi) {
	auto const& g = phi.front().grid();
	std::vector<double> out(static_cast<std::size_t>(g.dim()), 0.0);
	for(auto const& f : phi) {
		auto const j = current_density(f);
		for(int axis = 0; axis < g.dim(); ++axis) out[axis] += integrate(j[axis]);
	}
	return out;
}

std::vector<double> external_force(RealField const& rho, RealField const& v_ext) {
	check_grid(rho.grid(), v_ext.grid());
	auto const grad = gradient(rho, rho.grid());
	std::vector<double> out;
	for(auto const& d : grad) {
		double acc = 0.0;
		for(std::size_t p = 0; p < d.size(); ++p) acc += v_ext[p] * d[p];
		out.push_back(acc * rho.grid().cell_volume());
	}
	return out;
}

std::optional<RealField> scheme_correction(OrbitalState const& s, System const& system, Scheme scheme, GkliOptions const& gkli) {
	return take_snapshot(s, system, scheme, gkli).v0;
}

double energy_rate_diagnostic(OrbitalState const& s, System const& system, Scheme scheme) {
	if(scheme == Scheme::alda || scheme == Scheme::tdsic) return 0.0;
	return rate_from(take_snapshot(s, system, scheme, {}));
}

std::vector<double> zft_residual(OrbitalState const& s, System const& system, Scheme scheme) {
	if(scheme == Scheme::alda || scheme == Scheme::tdsic) return std::vector<double>(static_cast<std::size_t>(system.grid.dim()), 0.0);
	return zft_from(take_snapshot(s, system, scheme, {}));
}

ObservableRecord observe(OrbitalState const& s, System const& system, Scheme scheme, GkliOptions const& gkli) {
	auto const snap = take_snapshot(s, system, scheme, gkli);
	ObservableRecord r;
	r.t = s.t;
	r.energy = energy_from(snap, s, system, scheme);
	r.dipole = dipole(snap.rho);
	r.zft = zft_from(snap);
	r.energy_rate = rate_from(snap);
	if(is_two_set(scheme)) r.symmetry_residual = symmetry_residual(symmetry_matrix(snap.psi, snap.pots.u));
	r.orthonormality_defect = orthonormality_defect(s);

	r.localization_quality = localization_quality(snap.psi, snap.pots);
	return r;
}

std::vector<std::string> csv_columns(int dim) {
	std::vector<std::string> c = {"t", "E_total", "E_kinetic", "E_external", "E_ALDA", "E_SIC_subtraction"};
	char const* axes[] = {"x", "y"};
	for(int a = 0; a < dim; ++a) c.push_back(std::string("dipole_") + axes[a]);
	for(int a = 0; a < dim; ++a) c.push_back(std::string("zft_") + axes[a]);
	for(auto name : {"energy_rate", "symmetry_residual", "orthonormality_defect", "localization_quality"}) c.emplace_back(name);
	return c;
}

void write_csv_header(std::ostream& os, int dim) {
	auto const cols = csv_columns(dim);
	for(std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
	os << '\n';
}

namespace {

void put_number(std::ostream& os, double v, bool first = false) {
	char buf[40];
	std::snprintf(buf, sizeof buf, "%.17g", v);
	if(!first) os << ',';
	os << buf;
}

}  // namespace

void write_csv_row(std::ostream& os, ObservableRecord const& r) {
	put_number(os, r.t, true);
	put_number(os, r.energy.total);
	put_number(os, r.energy.kinetic);
	put_number(os, r.energy.external);
	put_number(os, r.energy.alda);
	put_number(os, r.energy.sic_subtraction);
	for(auto v : r.dipole) put_number(os, v);
	for(auto v : r.zft) put_number(os, v);
	put_number(os, r.energy_rate);
	put_number(os, r.symmetry_residual);
	put_number(os, r.orthonormality_defect);
	put_number(os, r.localization_quality);
	os << '\n';
}

std::vector<double> CsvTable::column(std::string const& name) const {
	for(std::size_t c = 0; c < columns.size(); ++c) {
		if(columns[c] != name) continue;
		std::vector<double> out;
		out.reserve(rows.size());
		for(auto const& row : rows) out.push_back(row.at(c));
		return out;
	}
	throw std::invalid_argument("no column named '" + name + "'");
}

CsvTable read_csv(std::istream& is) {
	CsvTable t;
	std::string line;
	if(!std::getline(is, line)) throw std::runtime_error("empty CSV");
	{
		std::stringstream ss(line);
		std::string cell;
		while(std::getline(ss, cell, ',')) t.columns.push_back(cell);
	}
	while(std::getline(is, line)) {
		if(line.empty()) continue;
		std::stringstream ss(line);
		std::string cell;
		std::vector<double> row;
		while(std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
		if(row.size() != t.columns.size()) throw std::runtime_error("CSV row has wrong number of cells");
		t.rows.push_back(std::move(row));
	}
	return t;
}

}  // namespace tdgslat
