//! Complex relative permittivities and the dispersion models of the material
//! systems this crate ships: constant, single Debye relaxation with
//! conductivity, Cole-Cole relaxation with DC conductivity, and Cole-Cole
//! with an added Universal Dielectric Response term.
//!
//! Loss sign convention is set crate-wide in the crate root: `e^{-i omega t}`
//! time dependence, loss on the positive imaginary axis.

use crate::{Complex, Error, Result};
use serde::{Deserialize, Serialize};

/// Vacuum permittivity in F/m. Fixed, never configurable.
pub const VACUUM_PERMITTIVITY: f64 = 8.854187817e-12;

/// Complex relative permittivity. `re > 0` for physical components; `im >= 0`
/// under the crate's loss convention.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexPermittivity {
    pub re: f64,
    pub im: f64,
}

impl ComplexPermittivity {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexPermittivity { re, im }
    }

    pub fn to_complex(self) -> Complex {
        Complex::new(self.re, self.im)
    }

    fn validate(&self) -> Result<()> {
        if !self.re.is_finite() || !self.im.is_finite() {
            return Err(Error::InvalidParameter(
                "permittivity must be finite".into(),
            ));
        }
        if self.re <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "real permittivity must be positive (got {})",
                self.re
            )));
        }
        if self.im < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "imaginary permittivity must be non-negative under the +i loss convention (got {})",
                self.im
            )));
        }
        Ok(())
    }
}

impl From<ComplexPermittivity> for Complex {
    fn from(e: ComplexPermittivity) -> Complex {
        e.to_complex()
    }
}

/// Frequency-dependent permittivity model of one component.
///
/// Serialized form uses a `type` discriminator:
/// `"constant" | "debye" | "cole_cole" | "cole_cole_udr"` with SI-unit
/// numeric fields (`tau` in seconds, `s`/`s_dc` in S/m, `A` in S/m*s^s_exp).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum DispersionModel {
    Constant {
        eps: ComplexPermittivity,
    },
    Debye {
        eps_inf: f64,
        delta_eps: f64,
        tau: f64,
        s: f64,
    },
    ColeCole {
        eps_inf: f64,
        delta_eps: f64,
        tau: f64,
        beta: f64,
        s_dc: f64,
    },
    ColeColeUdr {
        eps_inf: f64,
        delta_eps: f64,
        tau: f64,
        beta: f64,
        s_dc: f64,
        #[serde(rename = "A")]
        a: f64,
        s_exp: f64,
    },
}

impl DispersionModel {
    pub fn constant(re: f64, im: f64) -> Self {
        DispersionModel::Constant {
            eps: ComplexPermittivity::new(re, im),
        }
    }

    /// Checks the documented parameter invariants:
    /// `tau > 0`, `0 <= beta < 1`, `delta_eps >= 0`, `s >= 0`, `s_dc >= 0`,
    /// `A >= 0`, `0 < s_exp < 1`.
    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, what: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidParameter(what.into()))
            }
        }
        match *self {
            DispersionModel::Constant { eps } => eps.validate(),
            DispersionModel::Debye {
                eps_inf,
                delta_eps,
                tau,
                s,
            } => {
                check(eps_inf > 0.0, "eps_inf must be positive")?;
                check(delta_eps >= 0.0, "delta_eps must be non-negative")?;
                check(tau > 0.0, "tau must be positive")?;
                check(s >= 0.0, "s must be non-negative")
            }
            DispersionModel::ColeCole {
                eps_inf,
                delta_eps,
                tau,
                beta,
                s_dc,
            } => {
                check(eps_inf > 0.0, "eps_inf must be positive")?;
                check(delta_eps >= 0.0, "delta_eps must be non-negative")?;
                check(tau > 0.0, "tau must be positive")?;
                check((0.0..1.0).contains(&beta), "beta must lie in [0, 1)")?;
                check(s_dc >= 0.0, "s_dc must be non-negative")
            }
            DispersionModel::ColeColeUdr {
                eps_inf,
                delta_eps,
                tau,
                beta,
                s_dc,
                a,
                s_exp,
            } => {
                check(eps_inf > 0.0, "eps_inf must be positive")?;
                check(delta_eps >= 0.0, "delta_eps must be non-negative")?;
                check(tau > 0.0, "tau must be positive")?;
                check((0.0..1.0).contains(&beta), "beta must lie in [0, 1)")?;
                check(s_dc >= 0.0, "s_dc must be non-negative")?;
                check(a >= 0.0, "A must be non-negative")?;
                check(
                    s_exp > 0.0 && s_exp < 1.0,
                    "s_exp must lie strictly in (0, 1)",
                )
            }
        }
    }

    /// Evaluates the model at angular frequency `omega` (rad/s).
    ///
    /// Closed forms, principal branch for the fractional complex power:
    /// Debye `eps_inf + delta_eps/(1 - i omega tau) + i s/(omega eps_vac)`;
    /// Cole-Cole replaces the relaxation denominator by
    /// `1 + (-i omega tau)^(1-beta)`; the UDR variant adds
    /// `i A omega^s_exp / (omega eps_vac)`.
    pub fn evaluate(&self, omega: f64) -> Result<ComplexPermittivity> {
        let i = Complex::i();
        let value = match *self {
            DispersionModel::Constant { eps } => {
                if omega < 0.0 {
                    return Err(Error::NonPositiveFrequency(omega));
                }
                eps.to_complex()
            }
            DispersionModel::Debye {
                eps_inf,
                delta_eps,
                tau,
                s,
            } => {
                if omega <= 0.0 {
                    return Err(Error::NonPositiveFrequency(omega));
                }
                Complex::new(eps_inf, 0.0)
                    + delta_eps / (Complex::new(1.0, 0.0) - i * omega * tau)
                    + i * s / (omega * VACUUM_PERMITTIVITY)
            }
            DispersionModel::ColeCole {
                eps_inf,
                delta_eps,
                tau,
                beta,
                s_dc,
            } => {
                if omega <= 0.0 {
                    return Err(Error::NonPositiveFrequency(omega));
                }
                let relax = (-i * omega * tau).powf(1.0 - beta);
                Complex::new(eps_inf, 0.0) + delta_eps / (Complex::new(1.0, 0.0) + relax)
                    + i * s_dc / (omega * VACUUM_PERMITTIVITY)
            }
            DispersionModel::ColeColeUdr {
                eps_inf,
                delta_eps,
                tau,
                beta,
                s_dc,
                a,
                s_exp,
            } => {
                if omega <= 0.0 {
                    return Err(Error::NonPositiveFrequency(omega));
                }
                let relax = (-i * omega * tau).powf(1.0 - beta);
                Complex::new(eps_inf, 0.0) + delta_eps / (Complex::new(1.0, 0.0) + relax)
                    + i * (s_dc + a * omega.powf(s_exp)) / (omega * VACUUM_PERMITTIVITY)
            }
        };
        Ok(ComplexPermittivity::new(value.re, value.im))
    }

    /// Evaluates at frequency `f` in Hz.
    pub fn evaluate_hz(&self, f_hz: f64) -> Result<ComplexPermittivity> {
        self.evaluate(2.0 * std::f64::consts::PI * f_hz)
    }
}
