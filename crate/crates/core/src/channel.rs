//! Majorana covariance matrices and the Gaussian channel
//! `G_out = A + B (D - G_in)^-1 B^T`.
//!
//! The channel is implemented over complex matrices; the real (position
//! space) case is the special case of real inputs. A pivot `D - G_in` with
//! condition number above `SINGULAR_COND` raises `SingularChannel` instead
//! of returning garbage: those points are physically meaningful (gapless or
//! degenerate) and callers are expected to report them.

use crate::error::{CoreError, Result};
use crate::linalg::{condition_estimate, lu_factor};
use crate::{c, C64};
use ndarray::Array2;

pub const SINGULAR_COND: f64 = 1e12;

/// Real antisymmetric covariance of a set of Majorana modes, together with
/// the mode labels fixing the row/column convention.
#[derive(Debug, Clone)]
pub struct MajoranaCovariance {
    pub matrix: Array2<f64>,
    pub mode_order: Vec<String>,
}

impl MajoranaCovariance {
    /// Validates antisymmetry (1e-12) and the physicality bound on singular
    /// values (<= 1 + 1e-10).
    pub fn new(matrix: Array2<f64>, mode_order: Vec<String>) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() {
            return Err(CoreError::Shape(format!(
                "covariance must be square, got {}x{}",
                n,
                matrix.ncols()
            )));
        }
        if n != 2 * mode_order.len() {
            return Err(CoreError::Shape(format!(
                "{} modes need a {}x{} matrix",
                mode_order.len(),
                2 * mode_order.len(),
                2 * mode_order.len()
            )));
        }
        let scale = matrix.iter().map(|x| x.abs()).fold(1.0, f64::max);
        for i in 0..n {
            for j in i..n {
                if (matrix[(i, j)] + matrix[(j, i)]).abs() > 1e-12 * scale {
                    return Err(CoreError::Shape(format!(
                        "covariance not antisymmetric at ({i},{j})"
                    )));
                }
            }
        }
        // singular values of a real antisymmetric matrix: sqrt(eig(M^T M))
        let mtm = matrix.t().dot(&matrix).mapv(|x| c(x, 0.0));
        let (vals, _) = crate::linalg::hermitian_eig(&mtm);
        if let Some(max) = vals.last() {
            if max.max(0.0).sqrt() > 1.0 + 1e-10 {
                return Err(CoreError::Shape(format!(
                    "unphysical covariance: max singular value {}",
                    max.sqrt()
                )));
            }
        }
        Ok(Self { matrix, mode_order })
    }

    /// Pure iff M^2 = -1 within `tol`.
    pub fn is_pure(&self, tol: f64) -> bool {
        let sq = self.matrix.dot(&self.matrix);
        let n = self.matrix.nrows();
        let mut err = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { -1.0 } else { 0.0 };
                err = err.max((sq[(i, j)] - expect).abs());
            }
        }
        err < tol
    }
}

/// Fiducial-state covariance split into physical (A), mixed (B) and virtual
/// (D) blocks, assembled as [[A, B], [-B^T, D]].
#[derive(Debug, Clone)]
pub struct ChannelBlocks {
    pub a: Array2<f64>,
    pub b: Array2<f64>,
    pub d: Array2<f64>,
}

impl ChannelBlocks {
    pub fn new(a: Array2<f64>, b: Array2<f64>, d: Array2<f64>) -> Result<Self> {
        let (na, nd) = (a.nrows(), d.nrows());
        if a.ncols() != na || d.ncols() != nd || b.nrows() != na || b.ncols() != nd {
            return Err(CoreError::Shape(format!(
                "inconsistent channel blocks: A {}x{}, B {}x{}, D {}x{}",
                a.nrows(),
                a.ncols(),
                b.nrows(),
                b.ncols(),
                d.nrows(),
                d.ncols()
            )));
        }
        Ok(Self { a, b, d })
    }

    /// Reassemble the full covariance (used by validity checks and tests).
    pub fn assemble(&self, mode_order: Vec<String>) -> Result<MajoranaCovariance> {
        let (na, nd) = (self.a.nrows(), self.d.nrows());
        let n = na + nd;
        let mut m = Array2::zeros((n, n));
        for i in 0..na {
            for j in 0..na {
                m[(i, j)] = self.a[(i, j)];
            }
            for j in 0..nd {
                m[(i, na + j)] = self.b[(i, j)];
                m[(na + j, i)] = -self.b[(i, j)];
            }
        }
        for i in 0..nd {
            for j in 0..nd {
                m[(na + i, na + j)] = self.d[(i, j)];
            }
        }
        MajoranaCovariance::new(m, mode_order)
    }
}

fn pivot_matrix(blocks: &ChannelBlocks, g_in: &Array2<C64>) -> Result<Array2<C64>> {
    let nd = blocks.d.nrows();
    if g_in.nrows() != nd || g_in.ncols() != nd {
        return Err(CoreError::Shape(format!(
            "g_in is {}x{}, virtual block is {}x{}",
            g_in.nrows(),
            g_in.ncols(),
            nd,
            nd
        )));
    }
    Ok(Array2::from_shape_fn((nd, nd), |(i, j)| {
        c(blocks.d[(i, j)], 0.0) - g_in[(i, j)]
    }))
}

/// `G_out = A + B (D - g_in)^-1 B^T`. The `k` pair only labels the error.
pub fn gaussian_channel_at(
    blocks: &ChannelBlocks,
    g_in: &Array2<C64>,
    k: (f64, f64),
) -> Result<Array2<C64>> {
    let pivot = pivot_matrix(blocks, g_in)?;
    let cond = condition_estimate(&pivot);
    if !cond.is_finite() || cond > SINGULAR_COND {
        return Err(CoreError::SingularChannel { k1: k.0, k2: k.1, cond });
    }
    let na = blocks.a.nrows();
    let nd = blocks.d.nrows();
    let bt = Array2::from_shape_fn((nd, na), |(i, j)| c(blocks.b[(j, i)], 0.0));
    let x = lu_factor(&pivot).solve(&bt); // (D - g_in)^-1 B^T
    let bc = blocks.b.mapv(|v| c(v, 0.0));
    let mut out = bc.dot(&x);
    for i in 0..na {
        for j in 0..na {
            out[(i, j)] += c(blocks.a[(i, j)], 0.0);
        }
    }
    Ok(out)
}

pub fn gaussian_channel(blocks: &ChannelBlocks, g_in: &Array2<C64>) -> Result<Array2<C64>> {
    gaussian_channel_at(blocks, g_in, (f64::NAN, f64::NAN))
}

/// `det(D - g_in)`; the unnormalized dispersion D(k) of the construction.
pub fn channel_determinant(blocks: &ChannelBlocks, g_in: &Array2<C64>) -> Result<C64> {
    let pivot = pivot_matrix(blocks, g_in)?;
    Ok(lu_factor(&pivot).det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::ComplexFloat;

    #[test]
    fn zero_b_returns_a() {
        let a = ndarray::array![[0.0, 0.5], [-0.5, 0.0]];
        let b = Array2::zeros((2, 4));
        let mut d = Array2::zeros((4, 4));
        d[(0, 1)] = 1.0;
        d[(1, 0)] = -1.0;
        d[(2, 3)] = 1.0;
        d[(3, 2)] = -1.0;
        let blocks = ChannelBlocks::new(a.clone(), b, d).unwrap();
        let g_in = Array2::from_elem((4, 4), c(0.0, 0.0));
        let out = gaussian_channel(&blocks, &g_in).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!((out[(i, j)] - c(a[(i, j)], 0.0)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn g_in_equal_d_is_singular_with_zero_determinant() {
        let a = Array2::zeros((2, 2));
        let b = Array2::from_elem((2, 2), 0.1);
        let mut d = Array2::zeros((2, 2));
        d[(0, 1)] = 0.3;
        d[(1, 0)] = -0.3;
        let blocks = ChannelBlocks::new(a, b, d.clone()).unwrap();
        let g_in = d.mapv(|x| c(x, 0.0));
        assert!(matches!(
            gaussian_channel(&blocks, &g_in),
            Err(CoreError::SingularChannel { .. })
        ));
        let det = channel_determinant(&blocks, &g_in).unwrap();
        assert!(det.abs() < 1e-14);
    }
}
