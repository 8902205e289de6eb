#pragma once

#include "nldw/grid.hpp"

#include <string>

namespace nldw {

// Binary field checkpoint:
//   magic "NLDW", format version u32 LE, n u32 LE, h f64 LE,
//   then n^3 f64 LE values row-major.
// Readers reject unknown versions and malformed files.
inline constexpr unsigned kCheckpointVersion = 1;

void save_checkpoint(const ScalarField3D& u, const std::string& path);
ScalarField3D load_checkpoint(const std::string& path);

}  // namespace nldw
