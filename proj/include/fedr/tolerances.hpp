#pragma once

namespace fedr::tol {

// Shared numerical thresholds. Tests and docs refer to these names.
inline constexpr double hermiticity = 1e-12;
inline constexpr double unitarity = 1e-11;
inline constexpr double oracle_relative = 1e-9;
inline constexpr double imaginary_part = 1e-12;

// |sin 2g| at or below this is treated as a calibration singularity.
inline constexpr double calibration_singular = 1e-9;

// Band around 1 inside which an uncertainty relation is reported as boundary.
inline constexpr double relation_band = 1e-9;

inline constexpr double default_tail = 1e-12;
inline constexpr double max_tail = 1e-6;
inline constexpr int default_cutoff_ceiling = 200;

// Weak interaction approximation is flagged outside chi < wia_validity.
inline constexpr double wia_validity = 0.3;

}  // namespace fedr::tol
