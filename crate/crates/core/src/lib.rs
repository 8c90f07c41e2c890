//! Inverse Eshelby-Mori-Tanaka micromechanics for isotropic composites with
//! spherical inclusions: given complex dielectric constants of a composite and
//! of all of its components at one or more frequencies, recover the
//! per-component volume fractions by linear programming, together with
//! minimizer-set geometry and sensitivity diagnostics.
//!
//! # Sign convention
//!
//! All complex permittivities use the `e^{-i omega t}` time convention: loss
//! is carried on the positive imaginary axis (conductivity contributes
//! `+i s / (omega eps_vacuum)`). This convention is adopted once, here, and
//! never mixed anywhere in the crate.
//!
//! # Units
//!
//! Frequencies are plain Hz at every public API boundary and converted to
//! angular frequency `omega = 2 pi f` internally. Conductivities are S/m,
//! relaxation times are seconds, permittivities are relative (dimensionless).

pub mod diagnostics;
pub mod error;
pub mod forward;
pub mod harness;
pub mod inverse;
pub mod linalg;
pub mod lp;
pub mod minimizers;
pub mod permittivity;
pub mod system;

pub use error::Error;
pub use forward::{
    build_pq, concentration_factor, depolarization_q, effective_permittivity, ContrastVector,
    PqVectors, SpheroidShape, VolumeFractions,
};
pub use permittivity::{ComplexPermittivity, DispersionModel, VACUUM_PERMITTIVITY};
pub use system::MaterialSystem;

/// Convenience alias used throughout: one complex number per permittivity.
pub type Complex = num_complex::Complex64;

/// Result alias over the crate error type.
pub type Result<T> = std::result::Result<T, Error>;
