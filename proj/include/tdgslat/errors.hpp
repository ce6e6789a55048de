#ifndef TDGSLAT_ERRORS_HPP
#define TDGSLAT_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace tdgslat {

/// Invalid or inconsistent run configuration. Carries every problem found.
class ConfigError : public std::runtime_error {
public:
	explicit ConfigError(std::vector<std::string> problems);
	std::vector<std::string> const& problems() const { return problems_; }

private:
	std::vector<std::string> problems_;
};

/// A numerical procedure failed (divergence, non-convergence where it is fatal).
class NumericalError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
	using std::runtime_error::runtime_error;
};

}  // namespace tdgslat

#endif
