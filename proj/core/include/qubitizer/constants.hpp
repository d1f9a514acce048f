#pragma once

// Global numerical tolerances. Every comparison in the library and in the
// verification paths reads from here.

namespace qubitizer::tol {

/// Unitary / Hermitian equality assertions.
inline constexpr double kUnitary = 1e-10;
/// Algebraic identities between materialized operators.
inline constexpr double kAlgebraic = 1e-12;
/// Eigenvalue snapping used by spectral classification.
inline constexpr double kSpectral = 1e-9;
/// Hermiticity precondition of the eigensolver.
inline constexpr double kHermitian = 1e-10;
/// Off-diagonal Frobenius mass at which Jacobi sweeps stop.
inline constexpr double kJacobi = 1e-12;
/// Walk-operator eigenphase cross-check.
inline constexpr double kEigenphase = 1e-8;
/// Angles closer than this to a multiple of pi/2 are not "arbitrary".
inline constexpr double kAngle = 1e-12;
/// Normalization check on state vectors.
inline constexpr double kNorm = 1e-12;

}  // namespace qubitizer::tol
