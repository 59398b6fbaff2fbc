//! Closed-form BCS amplitudes alpha(k), beta(k) of the paired momentum
//! modes, the unpaired amplitudes at the four self-conjugate momenta, the
//! dispersion E(k) = |alpha|^2 + |beta|^2 and the pairing function g = beta/alpha.

use num_complex::ComplexFloat;
use crate::tmatrix::PepsParameters;
use crate::{c, C64};
use std::collections::BTreeMap;

/// The four self-conjugate momenta, in the fixed order
/// (0,0), (pi,pi), (pi,0), (0,pi).
pub const UNPAIRED_MOMENTA: [(f64, f64); 4] = [
    (0.0, 0.0),
    (std::f64::consts::PI, std::f64::consts::PI),
    (std::f64::consts::PI, 0.0),
    (0.0, std::f64::consts::PI),
];

/// Polynomial coefficients of alpha in (y, z).
pub fn alpha_coefficients(y: C64, z: C64) -> [C64; 4] {
    let one = c(1.0, 0.0);
    let y2 = y * y;
    let y4 = y2 * y2;
    let y6 = y4 * y2;
    let z2 = z * z;
    let z4 = z2 * z2;
    let z6 = z4 * z2;
    let z8 = z4 * z4;
    let a0 = (one + y4) * (one + y4) - 4.0 * y6 * z2 + 3.0 * (one + 2.0 * y4) * z4
        - 4.0 * y2 * z6
        + z8;
    let a1 = -2.0 * z2 * (one + y4 + z4 - 2.0 * y2 * (one + z2));
    let a2 = 4.0 * y4 * z2 - 2.0 * y2 * (z4 + one) + z4 - 2.0 * y6;
    let a3 = 0.5 * (z2 - 2.0 * y2) * (z2 - 2.0 * y2);
    [a0, a1, a2, a3]
}

/// Polynomial coefficients of beta in (y, z): (B1, B2, B2star). For complex
/// parameters B2star is the displayed polynomial, not the complex conjugate.
pub fn beta_coefficients(y: C64, z: C64) -> [C64; 3] {
    let one = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    let y2 = y * y;
    let y3 = y2 * y;
    let y4 = y2 * y2;
    let y5 = y4 * y;
    let z2 = z * z;
    let z3 = z2 * z;
    let z4 = z2 * z2;
    let b1 = (one + z2) * (one + z4 - 2.0 * y * z3)
        + y2 * (one + 2.0 * z2 - z4)
        + 2.0 * z * y3 * (2.0 * z2 - one)
        - y4 * (z2 - one)
        + y5 * (y - 2.0 * z);
    let re = y * (z - y) * (one + y2 - z2);
    let im = 0.5 * z * (-2.0 * y + 2.0 * y3 + z - 3.0 * y2 * z + z3);
    let b2 = re + i * im;
    let b2s = re - i * im;
    [b1, b2, b2s]
}

/// alpha(k) from statement-level closed form.
pub fn alpha(params: &PepsParameters, k: (f64, f64)) -> C64 {
    let [a0, a1, a2, a3] = alpha_coefficients(params.y, params.z);
    let (k1, k2) = k;
    a0 + a1 * ((k1 + k2).cos() + (k1 - k2).cos())
        + a2 * ((2.0 * k1).cos() + (2.0 * k2).cos())
        + a3 * ((2.0 * k1 + 2.0 * k2).cos() + (2.0 * k1 - 2.0 * k2).cos())
}

/// beta(k); proportional to t^2 throughout.
pub fn beta(params: &PepsParameters, k: (f64, f64)) -> C64 {
    let [b1, b2, b2s] = beta_coefficients(params.y, params.z);
    let t2 = 2.0 * params.t * params.t;
    let (k1, k2) = k;
    let i = c(0.0, 1.0);
    t2 * b1 * (c(k1.sin(), 0.0) - i * k2.sin())
        + t2 * b2 * (c((k1 + 2.0 * k2).sin(), 0.0) - i * (k2 - 2.0 * k1).sin())
        - t2 * b2s * (c((2.0 * k2 - k1).sin(), 0.0) + i * (k2 + 2.0 * k1).sin())
}

/// Both amplitudes at once.
pub fn alpha_beta(params: &PepsParameters, k: (f64, f64)) -> (C64, C64) {
    (alpha(params, k), beta(params, k))
}

/// Unpaired amplitudes [alpha~(0,0), alpha~(pi,pi), alpha~(pi,0), alpha~(0,pi)].
/// Each one squares to alpha at the same momentum.
pub fn unpaired_amplitudes(params: &PepsParameters) -> [C64; 4] {
    let one = c(1.0, 0.0);
    let (y, z) = (params.y, params.z);
    let a00 = (one - (y + z) * (y + z)) * (one - (y - z) * (y - z));
    let api0 = (one - (y * y - z * z)) * (one - (y * y - z * z));
    [a00, a00, api0, api0]
}

/// alpha at k = (0,0) and k = (pi,0): the two gap-controlling values.
pub fn alpha_extremes(y: C64, z: C64) -> (C64, C64) {
    let one = c(1.0, 0.0);
    let f = (one - (y + z) * (y + z)) * (one - (y - z) * (y - z));
    let g = one - y * y + z * z;
    (f * f, g * g * g * g)
}

/// Dispersion E(k) = |alpha|^2 + |beta|^2 (proportional to the parent
/// Hamiltonian band energy).
pub fn dispersion(params: &PepsParameters, k: (f64, f64)) -> f64 {
    let (a, b) = alpha_beta(params, k);
    a.norm_sqr() + b.norm_sqr()
}

/// Pairing function g(k) = beta/alpha; `None` where alpha vanishes.
pub fn pairing_function(params: &PepsParameters, k: (f64, f64)) -> Option<C64> {
    let (a, b) = alpha_beta(params, k);
    if a.abs() < 1e-14 {
        None
    } else {
        Some(b / a)
    }
}

/// Unnormalized BdG coefficients built from the amplitudes:
/// R0 = |alpha|^2 - |beta|^2, Delta0 = 2 conj(alpha) beta = P0 - i I0.
pub fn bdg_coefficients(params: &PepsParameters, k: (f64, f64)) -> (f64, f64, f64) {
    let (a, b) = alpha_beta(params, k);
    let r0 = a.norm_sqr() - b.norm_sqr();
    let delta0 = 2.0 * a.conj() * b;
    (r0, delta0.re, -delta0.im) // (R0, P0, I0)
}

/// Real-space pairing wavefunction: the DFT of g(k) over the (l1, l2) grid,
/// keyed by displacement folded into [-L/2, L/2). Momenta where alpha
/// vanishes (the unpaired four included) contribute nothing; the unpaired
/// modes carry no pair by construction.
pub fn pairing_function_real_space(params: &PepsParameters) -> BTreeMap<(i64, i64), C64> {
    pairing_transform(params, false)
}

/// Same transform on the half-step-offset grid k = 2 pi (n + 1/2) / L, which
/// never samples the band-touching momenta. Used to read off the
/// thermodynamic-limit structure of g^hat on gapless parameter points.
pub fn pairing_function_real_space_offset(params: &PepsParameters) -> BTreeMap<(i64, i64), C64> {
    pairing_transform(params, true)
}

fn pairing_transform(params: &PepsParameters, offset: bool) -> BTreeMap<(i64, i64), C64> {
    let (l1, l2) = (params.l1 as i64, params.l2 as i64);
    let shift = if offset { 0.5 } else { 0.0 };
    let mut out = BTreeMap::new();
    for x1 in -(l1 / 2)..(l1 - l1 / 2) {
        for x2 in -(l2 / 2)..(l2 - l2 / 2) {
            let mut acc = c(0.0, 0.0);
            for n1 in 0..l1 {
                for n2 in 0..l2 {
                    let k1 = 2.0 * std::f64::consts::PI * (n1 as f64 + shift) / l1 as f64;
                    let k2 = 2.0 * std::f64::consts::PI * (n2 as f64 + shift) / l2 as f64;
                    if let Some(g) = pairing_function(params, (k1, k2)) {
                        acc += g * C64::from_polar(1.0, k1 * x1 as f64 + k2 * x2 as f64);
                    }
                }
            }
            out.insert((x1, x2), acc / (l1 * l2) as f64);
        }
    }
    out
}
