//! Acceptance bands used by the experiment checks.

/// Mean of `L(0,(r,r))/r` at `r = 300`, classical weights.
pub const GAMMA_CLASSICAL: (f64, f64) = (1.90, 2.00);
/// Relative width of the 95% interval for `γ̂` at 200 or more replicates.
pub const GAMMA_CI_REL_WIDTH: f64 = 0.05;

/// KS significance level used throughout.
pub const KS_LEVEL: f64 = 0.01;
/// Fraction of seeds that must not reject.
pub const KS_PASS_RATE: f64 = 0.95;

/// Relative tolerance on evolved intensities.
pub const INTENSITY_REL: f64 = 0.05;

/// Relative tolerance on the off-critical variance factor.
pub const CLT_VARIANCE_REL: f64 = 0.15;
/// Band for the log-variance slope on the critical direction.
pub const CLT_SLOPE: (f64, f64) = (0.55, 0.80);
/// Standard errors allowed for the exact Poisson directions.
pub const CLT_POISSON_SE: f64 = 3.0;

/// Relative discrepancy between the two sides of the crossing formula.
pub const CROSSING_REL: f64 = 0.15;

/// Second-class speed bands for unit and double density.
pub const SECOND_CLASS_UNIT: (f64, f64) = (0.85, 1.15);
pub const SECOND_CLASS_DOUBLE: (f64, f64) = (0.18, 0.32);
/// Relative band for other densities.
pub const SECOND_CLASS_REL: f64 = 0.15;

/// Product relation bands.
pub const PRODUCT_CLASSICAL: (f64, f64) = (0.90, 1.10);
pub const PRODUCT_GENERAL: (f64, f64) = (0.85, 1.15);
/// Relative tolerance on the individual classical intensities.
pub const PRODUCT_INTENSITY_REL: f64 = 0.10;

/// Diagonal lattice shape `L(0,(n,n))/n` at `n = 500`.
pub const LATTICE_SHAPE: (f64, f64) = (3.80, 4.00);
/// Relative tolerance on the lattice Busemann mean.
pub const LATTICE_BUSEMANN_REL: f64 = 0.15;
/// Bound on the `ρ` identity residual.
pub const RHO_RESIDUAL: f64 = 1e-12;

/// Mean horizontal Busemann increment over a unit step.
pub const BUSEMANN_UNIT_MEAN: (f64, f64) = (0.85, 1.15);

/// Absolute tolerance for float comparisons that are exact in theory.
pub const EXACT_TOL: f64 = 1e-9;
/// Residual tolerance for the variational identity.
pub const MARKOV_TOL: f64 = 1e-12;
