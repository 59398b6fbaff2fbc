//! Covariance matrix of the single-vertex fiducial state, computed by the
//! SVD route: T = W_n Lambda W_p^dag brings the state to a BCS normal form
//! whose covariance is diagonal-by-pairs; rotating back and converting
//! Dirac -> Majorana yields the 18x18 channel blocks.
//!
//! Mode orderings used here:
//! * "gauge" order (negatives first):  psi, l+, r-, u-, d+ | l-, r+, u+, d-
//! * channel order (horizontal/vertical grouped):
//!   psi, l+, r-, l-, r+, u-, d+, u+, d-
//! On odd vertices the same matrix applies with every +/- label swapped.

use num_complex::ComplexFloat;
use crate::channel::ChannelBlocks;
use crate::error::{CoreError, Result};
use crate::linalg::{conj_t, svd};
use crate::tmatrix::{TMatrix, VertexParity};
use crate::{c, C64};
use ndarray::Array2;

/// Dirac-picture covariance blocks R (anti-Hermitian) and Q (antisymmetric)
/// in gauge mode order.
#[derive(Debug, Clone)]
pub struct DiracCovarianceBlocks {
    pub rmat: Array2<C64>,
    pub qmat: Array2<C64>,
}

impl DiracCovarianceBlocks {
    /// Max deviation of Gamma Gamma^dag from identity/4 (purity).
    pub fn purity_defect(&self) -> f64 {
        let n = self.rmat.nrows();
        let mut gamma = Array2::zeros((2 * n, 2 * n));
        for i in 0..n {
            for j in 0..n {
                gamma[(i, j)] = self.rmat[(i, j)].conj();
                gamma[(i, n + j)] = self.qmat[(i, j)].conj();
                gamma[(n + i, j)] = self.qmat[(i, j)];
                gamma[(n + i, n + j)] = self.rmat[(i, j)];
            }
        }
        let prod = gamma.dot(&conj_t(&gamma));
        let mut defect = 0.0f64;
        for i in 0..2 * n {
            for j in 0..2 * n {
                let expect = if i == j { 0.25 } else { 0.0 };
                defect = defect.max((prod[(i, j)] - expect).abs());
            }
        }
        defect
    }
}

/// Channel-order mode labels of an even vertex.
pub fn channel_mode_order(parity: VertexParity) -> Vec<String> {
    let even = ["psi", "l+", "r-", "l-", "r+", "u-", "d+", "u+", "d-"];
    let odd = ["psi", "l-", "r+", "l+", "r-", "u+", "d-", "u-", "d+"];
    let names = match parity {
        VertexParity::Even => even,
        VertexParity::Odd => odd,
    };
    names.iter().map(|s| s.to_string()).collect()
}

// gauge position of each channel-order slot
const GAUGE_OF_CHANNEL: [usize; 9] = [0, 1, 2, 5, 6, 3, 4, 7, 8];

/// Full 18x18 Majorana covariance of |F> in channel mode order, plus the
/// Dirac blocks in gauge order.
pub fn fiducial_covariance_full(tm: &TMatrix) -> Result<(Array2<f64>, DiracCovarianceBlocks)> {
    let t = &tm.entries;
    if t.nrows() != 5 || t.ncols() != 4 {
        return Err(CoreError::Shape(format!(
            "T must be 5x4, got {}x{}",
            t.nrows(),
            t.ncols()
        )));
    }
    let (w_n, lambda, w_p) = svd(t);
    // BCS normal-form covariance over [a~_0..a~_4 | b~_0..b~_3]; pairs
    // (a~_k, b~_k) carry lambda_k, a~_4 stays in vacuum.
    let mut r0: Array2<C64> = Array2::zeros((9, 9));
    let mut q0: Array2<C64> = Array2::zeros((9, 9));
    for k in 0..4 {
        let l2 = lambda[k] * lambda[k];
        let r = (1.0 - l2) / (1.0 + l2);
        r0[(k, k)] = c(0.0, 0.5 * r);
        r0[(5 + k, 5 + k)] = c(0.0, 0.5 * r);
        let q = lambda[k] / (1.0 + l2);
        q0[(k, 5 + k)] = c(0.0, -q);
        q0[(5 + k, k)] = c(0.0, q);
    }
    r0[(4, 4)] = c(0.0, 0.5);
    // rotate back: a = U_n^dag a~ with U_n = W_n^dag, likewise U_p = W_p^T
    let u_n = conj_t(&w_n);
    let u_p = w_p.t().to_owned();
    let mut u: Array2<C64> = Array2::zeros((9, 9));
    for i in 0..5 {
        for j in 0..5 {
            u[(i, j)] = u_n[(i, j)];
        }
    }
    for i in 0..4 {
        for j in 0..4 {
            u[(5 + i, 5 + j)] = u_p[(i, j)];
        }
    }
    let uh = conj_t(&u);
    let rmat = uh.dot(&r0).dot(&u);
    let qmat = uh.dot(&q0).dot(&u.mapv(|z| z.conj()));

    // Majorana conversion in gauge order: c_{2j} = a_j + a_j^dag,
    // c_{2j+1} = i (a_j - a_j^dag); X is the covariance of (a, a^dag).
    let n = 9;
    let mut x: Array2<C64> = Array2::zeros((2 * n, 2 * n));
    for i in 0..n {
        for j in 0..n {
            x[(i, j)] = qmat[(i, j)];
            x[(i, n + j)] = rmat[(i, j)];
            x[(n + i, j)] = -rmat[(j, i)];
            x[(n + i, n + j)] = qmat[(i, j)].conj();
        }
    }
    let mut omega: Array2<C64> = Array2::zeros((2 * n, 2 * n));
    for j in 0..n {
        omega[(2 * j, j)] = c(1.0, 0.0);
        omega[(2 * j, n + j)] = c(1.0, 0.0);
        omega[(2 * j + 1, j)] = c(0.0, 1.0);
        omega[(2 * j + 1, n + j)] = c(0.0, -1.0);
    }
    let gamma_gauge = omega.dot(&x).dot(&omega.t());
    // permute modes gauge -> channel order
    let mut gamma = Array2::zeros((18, 18));
    let mut imag_max = 0.0f64;
    for p in 0..9 {
        for q in 0..9 {
            for s in 0..2 {
                for s2 in 0..2 {
                    let v = gamma_gauge[(2 * GAUGE_OF_CHANNEL[p] + s, 2 * GAUGE_OF_CHANNEL[q] + s2)];
                    imag_max = imag_max.max(v.im.abs());
                    gamma[(2 * p + s, 2 * q + s2)] = v.re;
                }
            }
        }
    }
    if imag_max > 1e-10 {
        return Err(CoreError::Shape(format!(
            "Majorana covariance came out complex ({imag_max:.3e})"
        )));
    }
    Ok((gamma, DiracCovarianceBlocks { rmat, qmat }))
}

/// The channel split of the fiducial covariance: A physical 2x2,
/// B 2x16 mixed, D 16x16 virtual.
pub fn fiducial_covariance(tm: &TMatrix) -> Result<ChannelBlocks> {
    let (gamma, _) = fiducial_covariance_full(tm)?;
    split_blocks(&gamma)
}

pub fn split_blocks(gamma: &Array2<f64>) -> Result<ChannelBlocks> {
    let a = gamma.slice(ndarray::s![0..2, 0..2]).to_owned();
    let b = gamma.slice(ndarray::s![0..2, 2..18]).to_owned();
    let d = gamma.slice(ndarray::s![2..18, 2..18]).to_owned();
    ChannelBlocks::new(a, b, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tmatrix::{build_t_matrix, PepsParameters};
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn random_params(rng: &mut impl Rng) -> PepsParameters {
        PepsParameters::new(
            rng.gen_range(0.2..1.4),
            c(rng.gen_range(-1.5..1.5), rng.gen_range(-0.6..0.6)),
            c(rng.gen_range(-1.5..1.5), rng.gen_range(-0.6..0.6)),
            4,
            4,
        )
        .unwrap()
    }

    #[test]
    fn covariance_is_pure_real_antisymmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10 {
            let p = random_params(&mut rng);
            let tm = build_t_matrix(&p, VertexParity::Even).unwrap();
            let (gamma, dirac) = fiducial_covariance_full(&tm).unwrap();
            for i in 0..18 {
                for j in 0..18 {
                    assert!((gamma[(i, j)] + gamma[(j, i)]).abs() < 1e-10);
                }
            }
            let sq = gamma.dot(&gamma);
            for i in 0..18 {
                for j in 0..18 {
                    let expect = if i == j { -1.0 } else { 0.0 };
                    assert!(
                        (sq[(i, j)] - expect).abs() < 1e-9,
                        "purity defect at ({i},{j}): {}",
                        (sq[(i, j)] - expect).abs()
                    );
                }
            }
            assert!(dirac.purity_defect() < 1e-10);
        }
    }

    #[test]
    fn gauge_block_structure_of_dirac_blocks() {
        // R_ab = R_ba = 0, Q_aa = Q_bb = 0 (negatives = 0..5, positives = 5..9),
        // and Tr R_bb - Tr R_aa = i/2 (N_p - N_n) = -i/2 with q = 0.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let p = random_params(&mut rng);
            let tm = build_t_matrix(&p, VertexParity::Even).unwrap();
            let (_, dirac) = fiducial_covariance_full(&tm).unwrap();
            for i in 0..5 {
                for j in 5..9 {
                    assert!(dirac.rmat[(i, j)].abs() < 1e-10);
                    assert!(dirac.rmat[(j, i)].abs() < 1e-10);
                }
            }
            for i in 0..5 {
                for j in 0..5 {
                    assert!(dirac.qmat[(i, j)].abs() < 1e-10);
                }
            }
            for i in 5..9 {
                for j in 5..9 {
                    assert!(dirac.qmat[(i, j)].abs() < 1e-10);
                }
            }
            let tr_aa: C64 = (0..5).map(|i| dirac.rmat[(i, i)]).sum();
            let tr_bb: C64 = (5..9).map(|i| dirac.rmat[(i, i)]).sum();
            let diff = tr_bb - tr_aa - c(0.0, -0.5);
            assert!(diff.abs() < 1e-10, "trace condition violated by {}", diff.abs());
        }
    }

    #[test]
    fn small_t_with_zero_tau_decouples_physical_mode() {
        let p = PepsParameters::real(1e-6, 0.0, 0.0, 4, 4).unwrap();
        let tm = build_t_matrix(&p, VertexParity::Even).unwrap();
        let blocks = fiducial_covariance(&tm).unwrap();
        let bmax = blocks.b.iter().map(|x| x.abs()).fold(0.0, f64::max);
        assert!(bmax < 1e-5, "B block should vanish as t -> 0, got {bmax}");
    }
}
