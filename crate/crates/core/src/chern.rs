//! Lattice Chern number of the BdG vector field (P0, I0, R0) by plaquette
//! solid-angle summation over an offset momentum grid.
//!
//! The grid k = 2 pi (n + 1/2) / N never samples the four band-touching
//! momenta, so the unit vector is defined at every grid point even on the
//! gapless lines (where the vector field extends continuously into the
//! touching points). The summed solid angle is an exact multiple of 4 pi
//! unless some plaquette triangle degenerates; that case is reported as
//! `NondeterminateChern` rather than rounded.

use crate::bcs::bdg_coefficients;
use crate::error::{CoreError, Result};
use crate::tmatrix::PepsParameters;

fn unit_vector(params: &PepsParameters, k: (f64, f64)) -> [f64; 3] {
    let (r0, p0, i0) = bdg_coefficients(params, k);
    let n = (p0 * p0 + i0 * i0 + r0 * r0).sqrt();
    [p0 / n, i0 / n, r0 / n]
}

fn solid_angle_triangle(a: [f64; 3], b: [f64; 3], d: [f64; 3]) -> f64 {
    let dot = |x: [f64; 3], y: [f64; 3]| x[0] * y[0] + x[1] * y[1] + x[2] * y[2];
    let cross = |x: [f64; 3], y: [f64; 3]| {
        [
            x[1] * y[2] - x[2] * y[1],
            x[2] * y[0] - x[0] * y[2],
            x[0] * y[1] - x[1] * y[0],
        ]
    };
    let num = dot(a, cross(b, d));
    let den = 1.0 + dot(a, b) + dot(b, d) + dot(d, a);
    2.0 * num.atan2(den)
}

/// Chern number on an N x N offset grid (default callers use N = 72).
pub fn chern_number_grid(params: &PepsParameters, n_grid: usize) -> Result<i32> {
    let n = n_grid;
    let step = 2.0 * std::f64::consts::PI / n as f64;
    let kat = |i: usize, j: usize| {
        (
            step * (i as f64 + 0.5) - std::f64::consts::PI,
            step * (j as f64 + 0.5) - std::f64::consts::PI,
        )
    };
    let mut field: Vec<[f64; 3]> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            field.push(unit_vector(params, kat(i, j)));
        }
    }
    let at = |i: usize, j: usize| field[(i % n) * n + (j % n)];
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let v1 = at(i, j);
            let v2 = at(i + 1, j);
            let v3 = at(i + 1, j + 1);
            let v4 = at(i, j + 1);
            let o1 = solid_angle_triangle(v1, v2, v3);
            let o2 = solid_angle_triangle(v1, v3, v4);
            for o in [o1, o2] {
                if (o.abs() - std::f64::consts::PI).abs() < 1e-6 {
                    return Err(CoreError::NondeterminateChern(o));
                }
            }
            total += o1 + o2;
        }
    }
    let chern = total / (4.0 * std::f64::consts::PI);
    let rounded = chern.round();
    if (chern - rounded).abs() > 1e-6 {
        return Err(CoreError::NondeterminateChern(chern));
    }
    Ok(rounded as i32)
}

/// Default-resolution Chern number.
pub fn chern_number(params: &PepsParameters) -> Result<i32> {
    chern_number_grid(params, 72)
}

/// The regularization pair the scans report: the value on the line itself
/// (offset-grid, touching points between grid sites) and at the point
/// displaced off the line by `offset` in z.
pub fn chern_number_with_offset(params: &PepsParameters, offset: f64) -> Result<(i32, i32)> {
    let on_line = chern_number(params)?;
    let mut displaced = *params;
    displaced.z += crate::c(offset, 0.0);
    let off_line = chern_number(&displaced)?;
    Ok((on_line, off_line))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::ComplexFloat;
    use std::f64::consts::SQRT_2;

    #[test]
    fn gapped_points_have_zero_chern() {
        for (y, z) in [(1.0, SQRT_2), (0.0, 0.0), (2.0, 0.3), (0.2, 2.5), (1.5, 1.5)] {
            let p = PepsParameters::real(0.8, y, z, 8, 8).unwrap();
            assert_eq!(chern_number(&p).unwrap(), 0, "at ({y}, {z})");
        }
    }

    #[test]
    fn weak_pairing_line_is_minus_two() {
        let p = PepsParameters::real(0.8, 0.4, 0.6, 8, 8).unwrap(); // z = -y + 1
        assert_eq!(chern_number(&p).unwrap(), -2);
    }

    #[test]
    fn hyperbola_is_plus_two() {
        let p = PepsParameters::real(0.8, SQRT_2, 1.0, 8, 8).unwrap(); // y^2 - z^2 = 1
        assert_eq!(chern_number(&p).unwrap(), 2);
    }
}
