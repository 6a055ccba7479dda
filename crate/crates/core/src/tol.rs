//! Numeric thresholds shared across the crate.
//!
//! Everything here is stated against unit-norm f64 state vectors, so the
//! values are absolute unless noted otherwise.

/// Unit-norm check after explicit normalization.
pub const NORM_TOL: f64 = 1e-12;

/// Vectors with norm at or below this are treated as zero.
pub const ZERO_VECTOR_TOL: f64 = 1e-14;

/// Superposition coefficients with modulus at or below this are trivial.
pub const TRIVIAL_COEFF_TOL: f64 = 1e-14;

/// Default relative cutoff for Schmidt rank: coefficients above
/// `RANK_TOL * coeffs[0]` count toward the rank.
pub const RANK_TOL: f64 = 1e-9;

/// Orthonormality checks on state collections and Schmidt factors.
pub const ORTHO_TOL: f64 = 1e-10;

/// Residual allowed when a structural decomposition is rebuilt and compared
/// against its source state.
pub const RECON_TOL: f64 = 1e-9;

/// Cross-term test for a product vector against an entangled vector's
/// Schmidt product basis.
pub const BI_ORTH_TOL: f64 = 1e-10;

/// Two Schmidt coefficients closer than this are treated as degenerate,
/// which unlocks the gauge search over equivalent decompositions.
pub const DEGEN_TOL: f64 = 1e-9;

/// Number of rotation angles sampled when a degenerate decomposition leaves
/// a one-parameter family of equivalent Schmidt bases.
pub const GAUGE_SAMPLES: usize = 64;

/// Residual `||p - P_V p||` below which a state counts as lying in span V.
pub const SUBSPACE_RESIDUAL_TOL: f64 = 1e-9;

/// A subspace-search restart qualifies once its objective reaches
/// `1 - SUBSPACE_OBJECTIVE_TOL`.
pub const SUBSPACE_OBJECTIVE_TOL: f64 = 1e-9;

/// Minimum overlap modulus for the nonorthogonality constraint.
pub const NONORTH_MIN: f64 = 1e-7;

/// Gate on the rank-two fit residual before a numerically found collapse
/// candidate is handed to full verification.
pub const COLLAPSE_RESIDUAL_TOL: f64 = 1e-12;

/// Three-tangle threshold separating the two genuinely entangled
/// three-qubit classes on normalized states.
pub const TANGLE_TOL: f64 = 1e-9;

/// Coefficients in the two-by-two pencil below this are treated as zero
/// when hunting product directions.
pub const PENCIL_TOL: f64 = 1e-11;
