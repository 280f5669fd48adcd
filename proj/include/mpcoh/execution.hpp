#pragma once

namespace mpcoh {

/// Serial is the reference path; Parallel distributes independent grid points
/// (or sweep cells) over OpenMP threads and must produce identical results.
enum class Execution { Serial, Parallel };

/// Number of OpenMP threads available to Parallel kernels (1 without OpenMP).
int max_threads();

}  // namespace mpcoh
