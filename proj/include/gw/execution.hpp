#pragma once

namespace gw {

/// Kernels with an OpenMP path keep a serial twin; both return identical results.
enum class Execution { serial, parallel };

}  // namespace gw
