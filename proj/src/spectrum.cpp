#include <tdgslat/observables.hpp>

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace tdgslat {

namespace {

constexpr std::size_t min_samples = 64;
constexpr std::size_t padding = 8;

struct FftwDeleter {
	void operator()(void* p) const { fftw_free(p); }
};

}  // namespace

std::vector<Peak> spectrum(std::span<double const> times, std::span<double const> values, double gamma) {
	if(times.size() != values.size()) throw std::invalid_argument("spectrum needs one value per sample time");
	if(values.size() < min_samples) throw std::invalid_argument("spectrum needs at least 64 samples");
	auto const n = values.size();
	double const dt = (times.back() - times.front()) / static_cast<double>(n - 1);
	if(!(dt > 0.0)) throw std::invalid_argument("sample times must increase");
	for(std::size_t i = 1; i < n; ++i) {
		if(std::abs(times[i] - times[i - 1] - dt) > 1e-6 * dt) throw std::invalid_argument("samples are not uniform in time");
	}
	double const duration = times.back() - times.front();
	if(gamma <= 0.0) gamma = std::log(1000.0) / duration;

	double mean = 0.0;
	for(auto v : values) mean += v;
	mean /= static_cast<double>(n);

	std::size_t const m = padding * n;
	std::size_t const bins = m / 2 + 1;
	std::unique_ptr<double, FftwDeleter> in(fftw_alloc_real(m));
	std::unique_ptr<fftw_complex, FftwDeleter> out(fftw_alloc_complex(bins));
	for(std::size_t i = 0; i < m; ++i) {
		in.get()[i] = i < n ? (values[i] - mean) * std::exp(-gamma * (times[i] - times.front())) : 0.0;
	}
	fftw_plan plan = fftw_plan_dft_r2c_1d(static_cast<int>(m), in.get(), out.get(), FFTW_ESTIMATE);
	fftw_execute(plan);
	fftw_destroy_plan(plan);

	std::vector<double> power(bins);
	for(std::size_t k = 0; k < bins; ++k) {
		auto const& c = out.get()[k];
		power[k] = (c[0] * c[0] + c[1] * c[1]) * dt * dt;
	}

	double const domega = 2.0 * M_PI / (static_cast<double>(m) * dt);
	std::vector<Peak> peaks;
	for(std::size_t k = 1; k + 1 < bins; ++k) {
		if(!(power[k] > power[k - 1] && power[k] >= power[k + 1])) continue;
		// parabola through the log power of the three bins
		double const a = std::log(std::max(power[k - 1], 1e-300));
		double const b = std::log(power[k]);
		double const c = std::log(std::max(power[k + 1], 1e-300));
		double const denom = a - 2.0 * b + c;
		double const shift = denom < 0.0 ? std::clamp(0.5 * (a - c) / denom, -0.5, 0.5) : 0.0;
		peaks.push_back({(static_cast<double>(k) + shift) * domega, power[k]});
	}
	std::stable_sort(peaks.begin(), peaks.end(), [](Peak const& x, Peak const& y) { return x.intensity > y.intensity; });
	return peaks;
}

}  // namespace tdgslat
