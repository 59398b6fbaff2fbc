//! Physical two-point functions from the normalized covariance:
//! <psi^dag_0 psi_x> = (delta_x0 - R^hat(x)) / 2 and
//! <psi^dag_0 psi^dag_x> = -Delta^hat(x) / 2, with R^hat, Delta^hat the
//! transforms of the normalized momentum functions.

use num_complex::ComplexFloat;
use crate::bcs::{alpha_beta, UNPAIRED_MOMENTA};
use crate::error::{CoreError, Result};
use crate::tmatrix::PepsParameters;
use crate::{c, C64};
use std::collections::BTreeMap;

/// Normalized (R, Delta) at one momentum. The four self-conjugate momenta
/// carry no pair: R = 1, Delta = 0 there exactly.
fn normalized_r_delta(params: &PepsParameters, k: (f64, f64)) -> Result<(f64, C64)> {
    let special = UNPAIRED_MOMENTA.iter().any(|&(a, b)| {
        let d1 = (k.0 - a).abs().min((k.0 - a + 2.0 * std::f64::consts::PI).abs());
        let d2 = (k.1 - b).abs().min((k.1 - b + 2.0 * std::f64::consts::PI).abs());
        d1 < 1e-12 && d2 < 1e-12
    });
    if special {
        return Ok((1.0, c(0.0, 0.0)));
    }
    let (a, b) = alpha_beta(params, k);
    let e = a.norm_sqr() + b.norm_sqr();
    if e < 1e-28 {
        return Err(CoreError::Parameter(format!(
            "dispersion vanishes at paired momentum ({}, {}): gapless parameters",
            k.0, k.1
        )));
    }
    Ok(((a.norm_sqr() - b.norm_sqr()) / e, 2.0 * a.conj() * b / e))
}

/// Two-point correlators keyed by displacement (folded into [-L/2, L/2)):
/// the hopping correlator <psi^dag_0 psi_x> (real) and the pairing
/// correlator <psi^dag_0 psi^dag_x>.
pub fn correlators(
    params: &PepsParameters,
) -> Result<(BTreeMap<(i64, i64), f64>, BTreeMap<(i64, i64), C64>)> {
    let (l1, l2) = (params.l1 as i64, params.l2 as i64);
    if l1 < 8 || l2 < 8 || l1 % 2 != 0 || l2 % 2 != 0 {
        return Err(CoreError::Parameter(format!(
            "correlator grid needs even extents >= 8, got {l1}x{l2}"
        )));
    }
    let mut r_grid = vec![0.0f64; (l1 * l2) as usize];
    let mut d_grid = vec![c(0.0, 0.0); (l1 * l2) as usize];
    for n1 in 0..l1 {
        for n2 in 0..l2 {
            let k = (
                2.0 * std::f64::consts::PI * n1 as f64 / l1 as f64,
                2.0 * std::f64::consts::PI * n2 as f64 / l2 as f64,
            );
            let (r, d) = normalized_r_delta(params, k)?;
            r_grid[(n1 * l2 + n2) as usize] = r;
            d_grid[(n1 * l2 + n2) as usize] = d;
        }
    }
    let mut hop = BTreeMap::new();
    let mut pair = BTreeMap::new();
    let norm = 1.0 / (l1 * l2) as f64;
    for x1 in -(l1 / 2)..(l1 - l1 / 2) {
        for x2 in -(l2 / 2)..(l2 - l2 / 2) {
            let mut rhat = c(0.0, 0.0);
            let mut dhat = c(0.0, 0.0);
            for n1 in 0..l1 {
                for n2 in 0..l2 {
                    let phase = C64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI
                            * (n1 as f64 * x1 as f64 / l1 as f64
                                + n2 as f64 * x2 as f64 / l2 as f64),
                    );
                    rhat += phase * r_grid[(n1 * l2 + n2) as usize];
                    dhat += phase * d_grid[(n1 * l2 + n2) as usize];
                }
            }
            rhat *= norm;
            dhat *= norm;
            let delta = if x1 == 0 && x2 == 0 { 1.0 } else { 0.0 };
            hop.insert((x1, x2), 0.5 * (delta - rhat.re));
            pair.insert((x1, x2), -0.5 * dhat);
        }
    }
    Ok((hop, pair))
}
