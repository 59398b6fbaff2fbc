//! Real-space parent-Hamiltonian coefficients: Fourier transforms of the
//! BdG trig polynomials R0(k) and Delta0(k) = P0(k) - i I0(k) over the
//! (l1, l2) momentum grid. Support is bounded by range 4 because the
//! polynomials have maximum order 4 in each momentum component.

use crate::bcs::bdg_coefficients;
use crate::error::{CoreError, Result};
use crate::tmatrix::PepsParameters;
use crate::{c, C64};
use std::collections::BTreeMap;

/// Hopping and pairing amplitude maps keyed by displacement, folded into
/// [-L/2, L/2).
#[derive(Debug, Clone)]
pub struct ParentHamiltonianCoeffs {
    pub hopping: BTreeMap<(i64, i64), f64>,
    pub pairing: BTreeMap<(i64, i64), C64>,
}

impl ParentHamiltonianCoeffs {
    pub fn hopping_at(&self, x: (i64, i64)) -> f64 {
        self.hopping.get(&x).copied().unwrap_or(0.0)
    }

    pub fn pairing_at(&self, x: (i64, i64)) -> C64 {
        self.pairing.get(&x).copied().unwrap_or(c(0.0, 0.0))
    }
}

/// Inverse transform of (R0, Delta0) on the grid; needs l1, l2 >= 8 so the
/// range-4 support is resolvable without wrap-around aliasing.
pub fn parent_hamiltonian(params: &PepsParameters) -> Result<ParentHamiltonianCoeffs> {
    let (l1, l2) = (params.l1 as i64, params.l2 as i64);
    if l1 < 8 || l2 < 8 {
        return Err(CoreError::Parameter(format!(
            "parent Hamiltonian needs extents >= 8, got {l1}x{l2}"
        )));
    }
    let mut r0_grid = vec![0.0f64; (l1 * l2) as usize];
    let mut d0_grid = vec![c(0.0, 0.0); (l1 * l2) as usize];
    for n1 in 0..l1 {
        for n2 in 0..l2 {
            let k = (
                2.0 * std::f64::consts::PI * n1 as f64 / l1 as f64,
                2.0 * std::f64::consts::PI * n2 as f64 / l2 as f64,
            );
            let (r0, p0, i0) = bdg_coefficients(params, k);
            r0_grid[(n1 * l2 + n2) as usize] = r0;
            d0_grid[(n1 * l2 + n2) as usize] = c(p0, -i0);
        }
    }
    let mut hopping = BTreeMap::new();
    let mut pairing = BTreeMap::new();
    let norm = 1.0 / (l1 * l2) as f64;
    for x1 in -(l1 / 2)..(l1 - l1 / 2) {
        for x2 in -(l2 / 2)..(l2 - l2 / 2) {
            let mut hr = c(0.0, 0.0);
            let mut pr = c(0.0, 0.0);
            for n1 in 0..l1 {
                for n2 in 0..l2 {
                    let phase = C64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI
                            * (n1 as f64 * x1 as f64 / l1 as f64
                                + n2 as f64 * x2 as f64 / l2 as f64),
                    );
                    hr += phase * r0_grid[(n1 * l2 + n2) as usize];
                    pr += phase * d0_grid[(n1 * l2 + n2) as usize];
                }
            }
            hopping.insert((x1, x2), (hr * norm).re);
            pairing.insert((x1, x2), pr * norm);
        }
    }
    Ok(ParentHamiltonianCoeffs { hopping, pairing })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::ComplexFloat;

    #[test]
    fn trivial_point_has_quoted_hopping_and_pairing() {
        let p = PepsParameters::real(0.9, 0.0, 0.0, 8, 8).unwrap();
        let t2 = p.t * p.t;
        let t4 = t2 * t2;
        let coeffs = parent_hamiltonian(&p).unwrap();
        assert!((coeffs.hopping_at((0, 0)) - (1.0 - 4.0 * t4)).abs() < 1e-10);
        for x in [(2, 0), (-2, 0), (0, 2), (0, -2)] {
            assert!((coeffs.hopping_at(x) - t4).abs() < 1e-10);
        }
        // nearest-neighbor pairing with the i/1 phase split
        assert!((coeffs.pairing_at((1, 0)) - c(0.0, 2.0 * t2)).abs() < 1e-10);
        assert!((coeffs.pairing_at((0, 1)) - c(2.0 * t2, 0.0)).abs() < 1e-10);
        // everything else is zero
        let mut other_max = 0.0f64;
        for (&x, &v) in &coeffs.hopping {
            if ![(0, 0), (2, 0), (-2, 0), (0, 2), (0, -2)].contains(&x) {
                other_max = other_max.max(v.abs());
            }
        }
        assert!(other_max < 1e-10);
    }

    #[test]
    fn support_bounded_by_range_4_and_sublattice_rules() {
        let p = PepsParameters::real(0.7, 0.8, 1.9, 12, 12).unwrap();
        let coeffs = parent_hamiltonian(&p).unwrap();
        for (&(x1, x2), &v) in &coeffs.hopping {
            if x1.abs() > 4 || x2.abs() > 4 {
                assert!(v.abs() < 1e-9, "hopping out of range at ({x1},{x2}): {v}");
            }
            if (x1 + x2).rem_euclid(2) == 1 {
                assert!(v.abs() < 1e-9, "hopping across sublattices at ({x1},{x2})");
            }
        }
        for (&(x1, x2), &v) in &coeffs.pairing {
            if x1.abs() > 4 || x2.abs() > 4 {
                assert!(v.abs() < 1e-9, "pairing out of range at ({x1},{x2})");
            }
            if (x1 + x2).rem_euclid(2) == 0 {
                assert!(v.abs() < 1e-9, "pairing within a sublattice at ({x1},{x2})");
            }
        }
    }

    #[test]
    fn rotation_covariance_in_real_space() {
        let p = PepsParameters::real(0.7, 0.5, 1.2, 8, 8).unwrap();
        let coeffs = parent_hamiltonian(&p).unwrap();
        for x1 in -3i64..=3 {
            for x2 in -3i64..=3 {
                let rx = (-x2, x1);
                let dh = (coeffs.hopping_at(rx) - coeffs.hopping_at((x1, x2))).abs();
                assert!(dh < 1e-9, "hopping not rotation invariant at ({x1},{x2})");
                let dp = (coeffs.pairing_at(rx) - c(0.0, -1.0) * coeffs.pairing_at((x1, x2))).abs();
                assert!(dp < 1e-9, "pairing rotation rule fails at ({x1},{x2})");
            }
        }
    }

    #[test]
    fn magic_point_pairing_is_nearest_neighbor_only() {
        let p = PepsParameters::real(0.8, 1.0, std::f64::consts::SQRT_2, 8, 8).unwrap();
        let coeffs = parent_hamiltonian(&p).unwrap();
        for (&x, &v) in &coeffs.pairing {
            let nn = [(1, 0), (-1, 0), (0, 1), (0, -1)].contains(&x);
            if !nn {
                assert!(v.abs() < 1e-9, "pairing beyond nearest neighbors at {x:?}");
            }
        }
    }

    #[test]
    fn small_grid_is_rejected() {
        let p = PepsParameters::real(0.7, 0.5, 1.2, 6, 8).unwrap();
        assert!(matches!(parent_hamiltonian(&p), Err(CoreError::Parameter(_))));
    }
}
