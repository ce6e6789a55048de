#include <tdgslat/state.hpp>

#include <cmath>
#include <random>
#include <stdexcept>

namespace tdgslat {

OrbitalState::OrbitalState(Orbitals phi_in, Matrix u_in, double time) : phi(std::move(phi_in)), u(std::move(u_in)), t(time) {
	if(phi.empty()) throw std::invalid_argument("state needs at least one orbital");
	if(u.rows() != size() || u.cols() != size()) throw std::invalid_argument("unitary has wrong shape");
}

OrbitalState::OrbitalState(Orbitals phi_in, double time) : phi(std::move(phi_in)), t(time) {
	if(phi.empty()) throw std::invalid_argument("state needs at least one orbital");
	u = Matrix::Identity(size(), size());
}

Orbitals OrbitalState::localized() const { return apply_unitary(phi, u); }

double unitarity_defect(Matrix const& u) {
	Matrix const d = u.adjoint() * u - Matrix::Identity(u.cols(), u.cols());
	return d.cwiseAbs().maxCoeff();
}

Orbitals combine(Orbitals const& phi, Matrix const& c) {
	if(static_cast<Eigen::Index>(phi.size()) != c.rows()) throw std::invalid_argument("coefficient matrix does not match orbital count");
	auto const& g = phi.front().grid();
	Orbitals out;
	out.reserve(static_cast<std::size_t>(c.cols()));
	for(Eigen::Index j = 0; j < c.cols(); ++j) {
		Field f(g);
		for(Eigen::Index i = 0; i < c.rows(); ++i) {
			complex const w = c(i, j);
			if(w == complex{}) continue;
			auto const& src = phi[static_cast<std::size_t>(i)];
			src.check_same(f);
			for(std::size_t p = 0; p < f.size(); ++p) f[p] += src[p] * w;
		}
		out.push_back(std::move(f));
	}
	return out;
}

Orbitals apply_unitary(Orbitals const& phi, Matrix const& u) {
	if(u.rows() != u.cols()) throw std::invalid_argument("unitary must be square");
	if(unitarity_defect(u) > unitarity_tolerance) throw std::invalid_argument("matrix is not unitary");
	return combine(phi, u);
}

Matrix gram_matrix(Orbitals const& phi) {
	auto const n = static_cast<Eigen::Index>(phi.size());
	Matrix s(n, n);
	for(Eigen::Index i = 0; i < n; ++i) {
		for(Eigen::Index j = i; j < n; ++j) {
			s(i, j) = inner(phi[i], phi[j]);
			s(j, i) = std::conj(s(i, j));
		}
	}
	return s;
}

double orthonormality_defect(Orbitals const& phi) {
	auto const s = gram_matrix(phi);
	return (s - Matrix::Identity(s.rows(), s.cols())).cwiseAbs().maxCoeff();
}

double orthonormality_defect(OrbitalState const& s) { return orthonormality_defect(s.phi); }

RealField total_density(Orbitals const& orbitals) {
	RealField rho(orbitals.front().grid());
	for(auto const& f : orbitals) {
		check_grid(rho.grid(), f.grid());
		for(std::size_t p = 0; p < f.size(); ++p) rho[p] += std::norm(f[p]);
	}
	return rho;
}

std::vector<RealField> current_density(Field const& f) {
	auto const grad = gradient(f);
	std::vector<RealField> j;
	for(auto const& d : grad) {
		RealField c(f.grid());
		for(std::size_t p = 0; p < f.size(); ++p) c[p] = (std::conj(f[p]) * d[p]).imag();
		j.push_back(std::move(c));
	}
	return j;
}

DensitySet density(OrbitalState const& s) {
	auto const psi = s.localized();
	DensitySet out{total_density(psi), {}, {}};
	for(auto const& f : psi) out.rho_alpha.push_back(abs2(f));
	for(auto const& f : s.phi) out.current.push_back(current_density(f));
	return out;
}

Orbitals lowdin_orthonormalize(Orbitals const& phi) {
	Eigen::SelfAdjointEigenSolver<Matrix> es(gram_matrix(phi));
	auto const& ev = es.eigenvalues();
	if(ev.minCoeff() <= 0.0) throw std::domain_error("orbitals are linearly dependent");
	Eigen::VectorXd const inv_sqrt = ev.array().rsqrt();
	Matrix const s_inv_half = es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().adjoint();
	return combine(phi, s_inv_half);
}

Orbitals gram_schmidt(Orbitals const& phi) {
	Orbitals out;
	out.reserve(phi.size());
	for(auto const& f : phi) {
		Field v = f;
		// two passes keep the projection accurate to round-off
		for(int pass = 0; pass < 2; ++pass) {
			for(auto const& q : out) {
				complex const c = inner(q, v);
				for(std::size_t p = 0; p < v.size(); ++p) v[p] -= c * q[p];
			}
		}
		double const n = norm(v);
		if(!(n > 0.0)) throw std::domain_error("orbitals are linearly dependent");
		v *= 1.0 / n;
		out.push_back(std::move(v));
	}
	return out;
}

Matrix random_unitary(int n, std::uint64_t seed) {
	std::mt19937_64 rng(seed);
	std::normal_distribution<double> gauss;
	Matrix a(n, n);
	for(int i = 0; i < n; ++i) {
		for(int j = 0; j < n; ++j) a(i, j) = complex(gauss(rng), gauss(rng));
	}
	Eigen::HouseholderQR<Matrix> qr(a);
	Matrix q = qr.householderQ();
	// fix column phases with the diagonal of R so the distribution is uniform
	Matrix const r = qr.matrixQR().triangularView<Eigen::Upper>();
	for(int j = 0; j < n; ++j) {
		complex const d = r(j, j);
		if(std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
	}
	return q;
}

Matrix closest_unitary(Orbitals const& phi, Orbitals const& target) {
	if(phi.size() != target.size()) throw std::invalid_argument("orbital sets differ in size");
	auto const n = static_cast<Eigen::Index>(phi.size());
	Matrix m(n, n);
	for(Eigen::Index i = 0; i < n; ++i) {
		for(Eigen::Index a = 0; a < n; ++a) m(i, a) = inner(phi[i], target[a]);
	}
	Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
	return svd.matrixU() * svd.matrixV().adjoint();
}

Matrix exp_antihermitian(Matrix const& g) {
	if(g.rows() == 0) return g;
	Matrix const h = complex(0.0, 1.0) * g;
	Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
	Eigen::VectorXcd phases(es.eigenvalues().size());
	for(Eigen::Index k = 0; k < phases.size(); ++k) phases(k) = std::exp(complex(0.0, -es.eigenvalues()(k)));
	return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

void validate(OrbitalState const& s, double ortho_tol, double unitary_tol) {
	if(s.phi.empty()) throw std::invalid_argument("state has no orbitals");
	if(s.u.rows() != s.size() || s.u.cols() != s.size()) throw std::invalid_argument("unitary has wrong shape");
	for(auto const& f : s.phi) check_grid(s.grid(), f.grid());
	if(orthonormality_defect(s) > ortho_tol) throw std::invalid_argument("diagonal orbitals are not orthonormal");
	if(unitarity_defect(s.u) > unitary_tol) throw std::invalid_argument("u is not unitary");
}

}  // namespace tdgslat
