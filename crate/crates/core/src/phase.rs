//! Gapless-locus classification in the (y, z) plane.
//!
//! The gap closes iff alpha_0 = alpha(0,0) or alpha_pi = alpha(pi,0)
//! vanishes; alpha_0 = 0 on the four lines z = +-1 +- y, alpha_pi = 0 on the
//! hyperbola y^2 - z^2 = 1. The gapless set splits into five regions by the
//! leading Taylor coefficients of (alpha, beta) at the band-touching momenta.

use num_complex::ComplexFloat;
use crate::bcs::alpha_extremes;
use crate::C64;

/// Tolerance below which a closed-form polynomial value counts as zero.
/// The closed forms are exact polynomials, so this only absorbs rounding.
pub const GAPLESS_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseLabel {
    Gapped,
    /// (A) strong-pairing lines z = y +- 1 away from intersections.
    StrongPairingLine,
    /// (B) weak-pairing lines z = -y +- 1 away from intersections.
    WeakPairingLine,
    /// (C) hyperbola branches y^2 - z^2 = 1 away from (+-1, 0).
    HyperbolaLine,
    /// (D) intersection points (0, +-1).
    WeakCouplingD,
    /// (E) intersection points (+-1, 0): both gaps close.
    WeakCouplingE,
}

impl PhaseLabel {
    pub fn tag(&self) -> &'static str {
        match self {
            PhaseLabel::Gapped => "gapped",
            PhaseLabel::StrongPairingLine => "A",
            PhaseLabel::WeakPairingLine => "B",
            PhaseLabel::HyperbolaLine => "C",
            PhaseLabel::WeakCouplingD => "D",
            PhaseLabel::WeakCouplingE => "E",
        }
    }

    pub fn is_gapless(&self) -> bool {
        !matches!(self, PhaseLabel::Gapped)
    }
}

/// Leading small-k expansion coefficients that separate the regions:
/// beta_1 (linear term of beta, with 2 t^2 stripped) and alpha_2.
fn expansion_coefficients(y: C64, z: C64) -> (C64, C64) {
    let one = C64::new(1.0, 0.0);
    let beta1 = (one + (y + z) * (y + z)) * (one - (y - z) * (y - z)) * (one - (y - z) * (y - z));
    let y2 = y * y;
    let y4 = y2 * y2;
    let y6 = y4 * y2;
    let z2 = z * z;
    let alpha2 = 2.0
        * (2.0 * y6 + z2 * (z2 - one) * (z2 - one) + 2.0 * y2 * (one + z2)
            - y4 * (4.0 + 3.0 * z2));
    (beta1, alpha2)
}

/// Region classification; valid for complex (y, z) through the same case
/// analysis on the expansion coefficients.
pub fn classify_phase(y: C64, z: C64) -> PhaseLabel {
    let (alpha0, alpha_pi) = alpha_extremes(y, z);
    let zero0 = alpha0.abs() < GAPLESS_TOL;
    let zero_pi = alpha_pi.abs() < GAPLESS_TOL;
    match (zero0, zero_pi) {
        (false, false) => PhaseLabel::Gapped,
        (true, true) => PhaseLabel::WeakCouplingE,
        (false, true) => PhaseLabel::HyperbolaLine,
        (true, false) => {
            let (beta1, alpha2) = expansion_coefficients(y, z);
            if beta1.abs() < GAPLESS_TOL {
                if alpha2.abs() < GAPLESS_TOL {
                    PhaseLabel::WeakCouplingD
                } else {
                    PhaseLabel::StrongPairingLine
                }
            } else {
                PhaseLabel::WeakPairingLine
            }
        }
    }
}

/// Exact distance from (y, z) to the nearest gapless curve, used by scans to
/// decide what counts as on-curve at a given grid resolution.
pub fn distance_to_gapless_locus(y: f64, z: f64) -> f64 {
    let mut d = f64::INFINITY;
    for s1 in [-1.0, 1.0] {
        for s2 in [-1.0, 1.0] {
            // z = s1 + s2 * y
            d = d.min((z - s1 - s2 * y).abs() / std::f64::consts::SQRT_2);
        }
    }
    // hyperbola y^2 - z^2 = 1: Newton projection from a few starts
    for z0 in [-3.0f64, -1.0, 0.0, 1.0, 3.0] {
        let mut zz = z0;
        for _ in 0..60 {
            let yy = (1.0 + zz * zz).sqrt();
            for sy in [-1.0f64, 1.0] {
                let dist2 = (sy * yy - y).powi(2) + (zz - z).powi(2);
                d = d.min(dist2.sqrt());
            }
            // gradient step on the closer branch
            let sy = if y >= 0.0 { 1.0 } else { -1.0 };
            let yy_s = sy * yy;
            let dydz = sy * zz / yy;
            let grad = (yy_s - y) * dydz + (zz - z);
            zz -= 0.25 * grad;
            if !zz.is_finite() {
                break;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use std::f64::consts::SQRT_2;

    #[test]
    fn paper_anchor_points() {
        assert_eq!(classify_phase(c(0.0, 0.0), c(1.0, 0.0)), PhaseLabel::WeakCouplingD);
        assert_eq!(classify_phase(c(1.0, 0.0), c(0.0, 0.0)), PhaseLabel::WeakCouplingE);
        assert_eq!(classify_phase(c(1.0, 0.0), c(SQRT_2, 0.0)), PhaseLabel::Gapped);
        // generic points on each line family
        assert_eq!(
            classify_phase(c(0.7, 0.0), c(1.7, 0.0)),
            PhaseLabel::StrongPairingLine
        );
        assert_eq!(
            classify_phase(c(0.4, 0.0), c(0.6, 0.0)),
            PhaseLabel::WeakPairingLine
        );
        let y = 1.25;
        let z = 0.75; // 1.25^2 - 0.75^2 = 1
        assert_eq!(classify_phase(c(y, 0.0), c(z, 0.0)), PhaseLabel::HyperbolaLine);
    }

    #[test]
    fn line_tags_match_dispersion_zero() {
        use crate::bcs::dispersion;
        use crate::tmatrix::PepsParameters;
        for (y, z) in [(0.7, 1.7), (0.4, 0.6), (1.25, 0.75)] {
            let lbl = classify_phase(c(y, 0.0), c(z, 0.0));
            assert!(lbl.is_gapless());
            let p = PepsParameters::real(0.8, y, z, 8, 8).unwrap();
            let kmin = crate::bcs::UNPAIRED_MOMENTA
                .iter()
                .map(|&k| dispersion(&p, k))
                .fold(f64::INFINITY, f64::min);
            assert!(kmin < 1e-12);
        }
    }

    #[test]
    fn distance_function_vanishes_on_curves() {
        assert!(distance_to_gapless_locus(0.3, 1.3) < 1e-9);
        assert!(distance_to_gapless_locus(1.25, 0.75) < 1e-6);
        assert!(distance_to_gapless_locus(0.5, 0.1) > 0.2);
    }
}
