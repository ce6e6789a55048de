#ifndef TDGSLAT_CHECKPOINT_HPP
#define TDGSLAT_CHECKPOINT_HPP

#include <tdgslat/state.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>

namespace tdgslat {

inline constexpr std::uint32_t checkpoint_version = 1;

/// Everything needed to continue a propagation bit-for-bit.
struct Checkpoint {
	OrbitalState state;
	std::int64_t step = 0;
	// last accepted step size of the symmetry-condition solver (its warm start)
	double solver_step = 1.0;
};

void write_checkpoint(std::ostream& os, Checkpoint const& ckpt);
Checkpoint read_checkpoint(std::istream& is);

void save_checkpoint(std::filesystem::path const& path, Checkpoint const& ckpt);
Checkpoint load_checkpoint(std::filesystem::path const& path);

}  // namespace tdgslat

#endif
