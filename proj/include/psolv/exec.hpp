#pragma once

namespace psolv {

// Selects between the OpenMP kernels and their serial reference versions.
// Results are identical either way; the serial path exists for testing and
// benchmarking.
enum class Exec { serial, parallel };

}  // namespace psolv
