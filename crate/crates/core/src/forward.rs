//! Mori-Tanaka effective permittivity for n-component composites with
//! spherical (and, forward-only, randomly oriented spheroidal) inclusions,
//! plus the coefficient vectors of the equivalent linear-fractional form.
//!
//! Component index 0 is always the matrix. The normalized value
//! `eps_bar = eps_eff / eps_normalizer` is a linear-fractional function
//! `(p.phi)/(q.phi)` of the volume fractions when all inclusions are spheres;
//! `p` and `q` are built here from the matrix-relative contrasts.

use crate::{Complex, Error, Result};
use serde::{Deserialize, Serialize};

/// Per-component volume fractions, index 0 = matrix. Entries lie in the
/// closed simplex; the sum must equal 1 within `1e-12`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VolumeFractions(Vec<f64>);

impl VolumeFractions {
    pub fn new(phi: Vec<f64>) -> Result<Self> {
        if phi.len() < 2 {
            return Err(Error::InvalidParameter(
                "at least two components required".into(),
            ));
        }
        for (i, &v) in phi.iter().enumerate() {
            if !v.is_finite() || !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidParameter(format!(
                    "phi[{i}] = {v} outside [0, 1]"
                )));
            }
        }
        let sum: f64 = phi.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "volume fractions must sum to 1 (got {sum})"
            )));
        }
        Ok(VolumeFractions(phi))
    }

    /// The pure-matrix split `e_0` for `n` components.
    pub fn pure_matrix(n: usize) -> Self {
        let mut phi = vec![0.0; n];
        phi[0] = 1.0;
        VolumeFractions(phi)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl std::ops::Index<usize> for VolumeFractions {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// Spheroid aspect ratio `alpha = l/d`. `alpha = 1` is the exact sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpheroidShape {
    pub alpha: f64,
}

impl SpheroidShape {
    pub const SPHERE: SpheroidShape = SpheroidShape { alpha: 1.0 };

    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "aspect ratio must be positive (got {alpha})"
            )));
        }
        Ok(SpheroidShape { alpha })
    }
}

/// Diagonal entry `Q` of the depolarization tensor `diag(Q, Q, 1-2Q)` for a
/// spheroid of aspect ratio `alpha`: prolate branch for `alpha > 1`, oblate
/// for `alpha < 1`, exactly `1/3` for the sphere. Within `1e-6` of the sphere
/// the sphere branch is used; the closed forms lose all precision there to
/// cancellation in the `(alpha^2 - 1)^{3/2}` factors.
pub fn depolarization_q(shape: SpheroidShape) -> f64 {
    let a = shape.alpha;
    if (a - 1.0).abs() < 1e-6 {
        return 1.0 / 3.0;
    }
    if a > 1.0 {
        let w = a * a - 1.0;
        a / (2.0 * w.powf(1.5)) * (a * w.sqrt() - a.acosh())
    } else {
        let w = 1.0 - a * a;
        a / (2.0 * w.powf(1.5)) * (a.acos() - a * w.sqrt())
    }
}

/// Orientation-averaged concentration factor of one inclusion:
/// `R = (1/3) sum_j [1 + A_jj (eps_i - eps_0)/eps_0]^{-1}` with
/// `A = diag(Q, Q, 1-2Q)`. For spheres this is `3/(3 + r)` with
/// `r = eps_i/eps_0 - 1`.
pub fn concentration_factor(
    eps_i: Complex,
    eps_0: Complex,
    shape: SpheroidShape,
) -> Result<Complex> {
    if eps_0.norm() == 0.0 {
        return Err(Error::SingularDenominator);
    }
    let r = eps_i / eps_0 - 1.0;
    let q = depolarization_q(shape);
    let one = Complex::new(1.0, 0.0);
    let mut sum = Complex::new(0.0, 0.0);
    for a_jj in [q, q, 1.0 - 2.0 * q] {
        let denom = one + a_jj * r;
        if denom.norm() < 1e-14 * (1.0 + r.norm()) {
            return Err(Error::SingularDenominator);
        }
        sum += one / denom;
    }
    Ok(sum / 3.0)
}

/// Effective permittivity of the composite:
/// `eps_eff = sum(phi_i eps_i R_i) / sum(phi_i R_i)`, matrix at index 0
/// (its concentration factor is identically 1).
pub fn effective_permittivity(
    eps: &[Complex],
    shapes: &[SpheroidShape],
    phi: &VolumeFractions,
) -> Result<Complex> {
    let n = phi.n();
    if eps.len() != n || shapes.len() != n {
        return Err(Error::InvalidParameter(format!(
            "component count mismatch: {} permittivities, {} shapes, {} fractions",
            eps.len(),
            shapes.len(),
            n
        )));
    }
    let eps_0 = eps[0];
    let mut num = Complex::new(0.0, 0.0);
    let mut den = Complex::new(0.0, 0.0);
    for i in 0..n {
        let r_i = concentration_factor(eps[i], eps_0, shapes[i])?;
        num += phi[i] * eps[i] * r_i;
        den += phi[i] * r_i;
    }
    if den.norm() == 0.0 {
        return Err(Error::SingularDenominator);
    }
    Ok(num / den)
}

/// All-sphere convenience wrapper.
pub fn effective_permittivity_spheres(eps: &[Complex], phi: &VolumeFractions) -> Result<Complex> {
    let shapes = vec![SpheroidShape::SPHERE; phi.n()];
    effective_permittivity(eps, &shapes, phi)
}

/// Matrix-relative complex contrasts `r_i = eps_i/eps_0 - 1` of the n-1
/// inclusion components, evaluated at one frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ContrastVector {
    r: Vec<Complex>,
}

impl ContrastVector {
    /// Builds from the full component permittivity list (matrix first).
    pub fn from_components(eps: &[Complex]) -> Result<Self> {
        if eps.len() < 2 {
            return Err(Error::InvalidParameter(
                "at least two components required".into(),
            ));
        }
        let eps_0 = eps[0];
        if eps_0.norm() == 0.0 {
            return Err(Error::SingularDenominator);
        }
        Ok(ContrastVector {
            r: eps[1..].iter().map(|&e| e / eps_0 - 1.0).collect(),
        })
    }

    pub fn from_raw(r: Vec<Complex>) -> Self {
        ContrastVector { r }
    }

    /// Number of components including the matrix.
    pub fn n(&self) -> usize {
        self.r.len() + 1
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.r
    }

    /// Indices (1-based component index) of inclusions with negligible
    /// contrast: such components are invisible to the measurement.
    pub fn uninformative(&self, tol: f64) -> Vec<usize> {
        self.r
            .iter()
            .enumerate()
            .filter(|(_, r)| r.norm() <= tol)
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Coefficient vectors of the linear-fractional form
/// `eps_bar(phi) = (p.phi)/(q.phi)` for an all-sphere composite.
#[derive(Debug, Clone, PartialEq)]
pub struct PqVectors {
    pub p: Vec<Complex>,
    pub q: Vec<Complex>,
    pub frequency_hz: f64,
}

/// Builds `p` and `q` from the matrix-relative contrasts:
/// `p_0 = q_0 = prod_k (3 + r_k)`, `p_i = 3 (1 + r_i) prod_{j != i} (3 + r_j)`,
/// `q_i = 3 prod_{j != i} (3 + r_j)`.
pub fn build_pq(contrasts: &ContrastVector, frequency_hz: f64) -> PqVectors {
    let r = contrasts.as_slice();
    let n = contrasts.n();
    let three = Complex::new(3.0, 0.0);
    let full: Complex = r.iter().map(|&ri| three + ri).product();
    let mut p = Vec::with_capacity(n);
    let mut q = Vec::with_capacity(n);
    p.push(full);
    q.push(full);
    for i in 0..r.len() {
        let partial: Complex = r
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &rj)| three + rj)
            .product();
        p.push(3.0 * (1.0 + r[i]) * partial);
        q.push(3.0 * partial);
    }
    PqVectors {
        p,
        q,
        frequency_hz,
    }
}

impl PqVectors {
    pub fn n(&self) -> usize {
        self.p.len()
    }

    /// `eps_bar(phi) = (p.phi)/(q.phi)`.
    pub fn eps_bar(&self, phi: &VolumeFractions) -> Complex {
        let num = dot_cphi(&self.p, phi.as_slice());
        let den = dot_cphi(&self.q, phi.as_slice());
        num / den
    }

    /// Rescales `p` in place; used to renormalize the linear-fractional form
    /// by a component other than the matrix (`eps_bar` is then
    /// `eps_eff / eps_norm = (eps_0/eps_norm) * (p.phi)/(q.phi)`).
    pub fn scale_p(&mut self, factor: Complex) {
        for v in &mut self.p {
            *v *= factor;
        }
    }
}

pub(crate) fn dot_cphi(a: &[Complex], phi: &[f64]) -> Complex {
    a.iter()
        .zip(phi)
        .map(|(&c, &x)| c * x)
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn sphere_depolarization_is_one_third() {
        assert_eq!(depolarization_q(SpheroidShape::SPHERE), 1.0 / 3.0);
    }

    #[test]
    fn depolarization_golden_values() {
        // frozen from an independent evaluation of the prolate/oblate forms
        let q2 = depolarization_q(SpheroidShape::new(2.0).unwrap());
        assert_relative_eq!(q2, 0.4132180012330179, max_relative = 1e-12);
        let q_half = depolarization_q(SpheroidShape::new(0.5).unwrap());
        assert_relative_eq!(q_half, 0.23639985871871505, max_relative = 1e-12);
    }

    #[test]
    fn depolarization_continuous_at_sphere() {
        for a in [1.0 - 1e-4, 1.0 + 1e-4] {
            let q = depolarization_q(SpheroidShape::new(a).unwrap());
            assert!((q - 1.0 / 3.0).abs() < 1e-3, "Q({a}) = {q}");
        }
    }

    #[test]
    fn concentration_zero_contrast_is_unity() {
        let e = c(4.2, 0.3);
        for alpha in [0.3, 1.0, 2.5] {
            let r = concentration_factor(e, e, SpheroidShape::new(alpha).unwrap()).unwrap();
            assert_relative_eq!(r.re, 1.0, max_relative = 1e-14);
            assert!(r.im.abs() < 1e-14);
        }
    }

    #[test]
    fn concentration_sphere_closed_form() {
        // r = 2 -> R = 3/5
        let r = concentration_factor(c(3.0, 0.0), c(1.0, 0.0), SpheroidShape::SPHERE).unwrap();
        assert_relative_eq!(r.re, 0.6, max_relative = 1e-14);
        assert!(r.im.abs() < 1e-15);
    }

    #[test]
    fn concentration_spheroid_golden_value() {
        // alpha = 2, eps_i/eps_0 = 3; frozen independent evaluation
        let r = concentration_factor(c(3.0, 0.0), c(1.0, 0.0), SpheroidShape::new(2.0).unwrap())
            .unwrap();
        assert_relative_eq!(r.re, 0.6124495824211886, max_relative = 1e-12);
    }

    #[test]
    fn concentration_singular_contrast_detected() {
        // sphere bracket zero: 1 + r/3 = 0 -> r = -3 -> eps_i = -2 eps_0
        let err = concentration_factor(c(-2.0, 0.0), c(1.0, 0.0), SpheroidShape::SPHERE);
        assert_eq!(err, Err(Error::SingularDenominator));
    }

    #[test]
    fn pure_matrix_returns_matrix_permittivity() {
        let eps = [c(3.03, 0.25), c(5.5, 0.05), c(1.0006, 0.0)];
        let phi = VolumeFractions::pure_matrix(3);
        let e = effective_permittivity_spheres(&eps, &phi).unwrap();
        assert_relative_eq!(e.re, eps[0].re, max_relative = 1e-14);
        assert_relative_eq!(e.im, eps[0].im, max_relative = 1e-14);
    }

    #[test]
    fn two_phase_closed_form() {
        // eps_0 = 2, eps_1 = 6 (r = 2), phi_1 = 0.3 -> ebar = 6.2/4.4
        let eps = [c(2.0, 0.0), c(6.0, 0.0)];
        let phi = VolumeFractions::new(vec![0.7, 0.3]).unwrap();
        let e = effective_permittivity_spheres(&eps, &phi).unwrap();
        assert_relative_eq!(e.re / 2.0, 6.2 / 4.4, max_relative = 1e-13);
    }

    #[test]
    fn ms1_effective_golden_value() {
        // MS-1 at 2 GHz, phi = (0.7, 0.2, 0.1); frozen independent evaluation
        let eps = [
            c(3.0317795764448032, 0.24839864956028904),
            c(5.5, 0.05),
            c(1.0006, 0.0),
        ];
        let phi = VolumeFractions::new(vec![0.7, 0.2, 0.1]).unwrap();
        let e = effective_permittivity_spheres(&eps, &phi).unwrap();
        assert_relative_eq!(e.re, 3.1617930695061958, max_relative = 1e-12);
        assert_relative_eq!(e.im, 0.19389103602099833, max_relative = 1e-12);
    }

    #[test]
    fn two_phase_monotone_in_inclusion_fraction() {
        let eps = [c(2.0, 0.0), c(6.0, 0.0)];
        let mut prev = f64::NEG_INFINITY;
        for k in 1..10 {
            let phi1 = 0.1 * k as f64;
            let phi = VolumeFractions::new(vec![1.0 - phi1, phi1]).unwrap();
            let e = effective_permittivity_spheres(&eps, &phi).unwrap();
            assert!(e.re > prev);
            prev = e.re;
        }
    }

    #[test]
    fn two_phase_derivative_matches_closed_form() {
        // finite differences of the forward model against
        // d(ebar)/d(phi1) = 3 r (3+r) / (3 + r - r phi1)^2
        let r = 2.0;
        let eps = [c(2.0, 0.0), c(2.0 * (1.0 + r), 0.0)];
        let h = 1e-7;
        for k in 1..=20 {
            let phi1 = k as f64 / 21.0;
            let ebar = |p1: f64| {
                let phi = VolumeFractions::new(vec![1.0 - p1, p1]).unwrap();
                (effective_permittivity_spheres(&eps, &phi).unwrap() / eps[0]).re
            };
            let fd = (ebar(phi1 + h) - ebar(phi1 - h)) / (2.0 * h);
            let closed = 3.0 * r * (3.0 + r) / (3.0 + r - r * phi1).powi(2);
            assert_relative_eq!(fd, closed, max_relative = 1e-6);
        }
    }

    #[test]
    fn pq_hand_expansion_n2() {
        let contrasts = ContrastVector::from_raw(vec![c(2.0, 0.0)]);
        let pq = build_pq(&contrasts, 2e9);
        assert_eq!(pq.p, vec![c(5.0, 0.0), c(9.0, 0.0)]);
        assert_eq!(pq.q, vec![c(5.0, 0.0), c(3.0, 0.0)]);
    }

    #[test]
    fn pq_zero_contrast_gives_unity() {
        let contrasts = ContrastVector::from_raw(vec![c(0.0, 0.0), c(0.0, 0.0)]);
        let pq = build_pq(&contrasts, 1e9);
        assert_eq!(pq.p, pq.q);
        let phi = VolumeFractions::new(vec![0.2, 0.5, 0.3]).unwrap();
        let e = pq.eps_bar(&phi);
        assert_relative_eq!(e.re, 1.0, max_relative = 1e-14);
    }

    #[test]
    fn uninformative_components_flagged() {
        let contrasts = ContrastVector::from_raw(vec![c(0.0, 0.0), c(1.5, 0.0)]);
        assert_eq!(contrasts.uninformative(1e-12), vec![1]);
    }

    /// Deterministic congruential stream for spreading sample points.
    fn lcg(state: &mut u64) -> f64 {
        *state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*state >> 11) as f64 / (1u64 << 53) as f64
    }

    fn random_simplex(n: usize, state: &mut u64) -> VolumeFractions {
        let draws: Vec<f64> = (0..n).map(|_| -lcg(state).max(1e-12).ln()).collect();
        let sum: f64 = draws.iter().sum();
        let mut phi: Vec<f64> = draws.iter().map(|d| d / sum).collect();
        let correction: f64 = 1.0 - phi.iter().sum::<f64>();
        phi[0] += correction;
        VolumeFractions::new(phi).unwrap()
    }

    #[test]
    fn pq_matches_forward_model_n3() {
        let eps = [c(2.0, 0.0), c(6.0, 0.0), c(1.0, 0.0)]; // r = (2, -0.5)
        let contrasts = ContrastVector::from_components(&eps).unwrap();
        assert_relative_eq!(contrasts.as_slice()[0].re, 2.0, max_relative = 1e-14);
        assert_relative_eq!(contrasts.as_slice()[1].re, -0.5, max_relative = 1e-14);
        let pq = build_pq(&contrasts, 1e9);
        let mut state = 0x9e3779b97f4a7c15;
        for _ in 0..100 {
            let phi = random_simplex(3, &mut state);
            let direct = effective_permittivity_spheres(&eps, &phi).unwrap() / eps[0];
            let frac = pq.eps_bar(&phi);
            assert_relative_eq!(frac.re, direct.re, max_relative = 1e-12);
            assert!((frac.im - direct.im).abs() < 1e-12);
        }
    }

    proptest! {
        /// Quasilinearity guard: q.phi > 0 for real contrasts in (-1, inf).
        #[test]
        fn quasilinearity_guard(
            raw_r in proptest::collection::vec(-0.99f64..30.0, 1..5),
            raw_w in proptest::collection::vec(1e-6f64..1.0, 2..6),
        ) {
            let n = raw_r.len() + 1;
            let w = &raw_w[..raw_w.len().min(n)];
            let mut phi = vec![1e-3; n];
            for (dst, src) in phi.iter_mut().zip(w) {
                *dst = *src;
            }
            let total: f64 = phi.iter().sum();
            for v in &mut phi {
                *v /= total;
            }
            let contrasts = ContrastVector::from_raw(
                raw_r.iter().map(|&r| c(r, 0.0)).collect(),
            );
            let pq = build_pq(&contrasts, 1e9);
            let qphi = dot_cphi(&pq.q, &phi);
            prop_assert!(qphi.re > 0.0);
        }

        /// Range property: for real sphere systems and interior phi,
        /// min_i(eps_i/eps_0) < ebar < max_i(eps_i/eps_0), including 1.
        #[test]
        fn effective_value_within_component_range(
            ratios in proptest::collection::vec(0.05f64..20.0, 1..4),
            weights in proptest::collection::vec(0.05f64..1.0, 4),
        ) {
            let n = ratios.len() + 1;
            let eps: Vec<Complex> = std::iter::once(1.0)
                .chain(ratios.iter().copied())
                .map(|v| c(v, 0.0))
                .collect();
            let mut phi: Vec<f64> = weights[..n].to_vec();
            let total: f64 = phi.iter().sum();
            for v in &mut phi {
                *v /= total;
            }
            let correction: f64 = 1.0 - phi.iter().sum::<f64>();
            phi[0] += correction;
            let phi = VolumeFractions::new(phi).unwrap();
            let ebar = (effective_permittivity_spheres(&eps, &phi).unwrap() / eps[0]).re;
            let lo = ratios.iter().copied().fold(1.0f64, f64::min);
            let hi = ratios.iter().copied().fold(1.0f64, f64::max);
            prop_assert!(ebar > lo - 1e-12 && ebar < hi + 1e-12);
        }

        /// diag(Q, Q, 1-2Q) always sums to 1 and each entry is in (0, 1).
        #[test]
        fn depolarization_diagonal_valid(alpha in 0.02f64..50.0) {
            let q = depolarization_q(SpheroidShape::new(alpha).unwrap());
            let diag = [q, q, 1.0 - 2.0 * q];
            let sum: f64 = diag.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-12);
            for d in diag {
                prop_assert!(d > 0.0 && d < 1.0);
            }
        }
    }

    #[test]
    fn volume_fraction_validation() {
        assert!(VolumeFractions::new(vec![0.5, 0.5]).is_ok());
        assert!(VolumeFractions::new(vec![0.5, 0.6]).is_err());
        assert!(VolumeFractions::new(vec![1.1, -0.1]).is_err());
        assert!(VolumeFractions::new(vec![1.0]).is_err());
    }
}
