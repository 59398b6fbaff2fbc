//! Momentum-space covariance of the translation-invariant state: the bond
//! covariance G_in(k), the per-k Gaussian channel, and the Brillouin-zone
//! grid record.

use num_complex::ComplexFloat;
use crate::bcs;
use crate::channel::{channel_determinant, gaussian_channel_at, ChannelBlocks};
use crate::error::{CoreError, Result};
use crate::fiducial::fiducial_covariance;
use crate::tmatrix::{build_t_matrix_gauge, PepsParameters, VertexParity};
use crate::C64;
use ndarray::Array2;
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Per-k record: normalized covariance functions (P, R, I), the trig
/// polynomials (P0, R0, I0) recovered through the channel determinant, the
/// determinant norm, and the closed-form BCS amplitudes.
#[derive(Debug, Clone)]
pub struct MomentumBlock {
    pub k: (f64, f64),
    pub p: f64,
    pub r: f64,
    pub i: f64,
    pub p0: f64,
    pub r0: f64,
    pub i0: f64,
    pub dnorm: f64,
    pub alpha: C64,
    pub beta: C64,
}

/// Fourier transform of the bond covariance over the 8 virtual modes in
/// channel order (l+, r-, l-, r+, u-, d+, u+, d-), two Majoranas per mode.
pub fn g_in_k(k: (f64, f64)) -> Array2<C64> {
    let (k1, k2) = k;
    let mut g = Array2::zeros((16, 16));
    let e1 = C64::from_polar(1.0, k1);
    let e2 = C64::from_polar(1.0, k2);
    // sigma_x blocks between mode pairs (slot a, slot b) with phase ph:
    // entries [2a, 2b+1] and [2a+1, 2b]
    let mut put = |a: usize, b: usize, ph: C64| {
        g[(2 * a, 2 * b + 1)] = ph;
        g[(2 * a + 1, 2 * b)] = ph;
    };
    // horizontal group, slots 0..3
    put(0, 1, e1);
    put(1, 0, -e1.conj());
    put(2, 3, e1);
    put(3, 2, -e1.conj());
    // vertical group, slots 4..7
    put(4, 5, e2.conj());
    put(5, 4, -e2);
    put(6, 7, e2.conj());
    put(7, 6, -e2);
    g
}

/// Channel blocks of the even-vertex fiducial state for these parameters;
/// the same blocks serve the whole Brillouin zone.
pub fn momentum_channel_blocks(params: &PepsParameters) -> Result<ChannelBlocks> {
    let tm = build_t_matrix_gauge(params, VertexParity::Even);
    fiducial_covariance(&tm)
}

pub fn fold_momentum(k: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    let mut v = k.rem_euclid(two_pi);
    if v > std::f64::consts::PI + 1e-12 {
        v -= two_pi;
    }
    v
}

/// One momentum block through the Gaussian channel. A numerically singular
/// pivot propagates as `SingularChannel` with k attached.
pub fn momentum_block_with(
    params: &PepsParameters,
    blocks: &ChannelBlocks,
    k: (f64, f64),
) -> Result<MomentumBlock> {
    let k = (fold_momentum(k.0), fold_momentum(k.1));
    let g_in = g_in_k(k);
    let g_out = gaussian_channel_at(blocks, &g_in, k)?;
    let det = channel_determinant(blocks, &g_in)?;
    if det.im.abs() > 1e-8 * (1.0 + det.re.abs()) {
        return Err(CoreError::Shape(format!(
            "channel determinant not real at k = ({}, {}): {det}",
            k.0, k.1
        )));
    }
    let dnorm = det.re;
    let p = g_out[(0, 0)].im;
    let q = g_out[(0, 1)];
    let (r, i) = (q.re, q.im);
    let (alpha, beta) = bcs::alpha_beta(params, k);
    Ok(MomentumBlock {
        k,
        p,
        r,
        i,
        p0: p * dnorm,
        r0: r * dnorm,
        i0: i * dnorm,
        dnorm,
        alpha,
        beta,
    })
}

pub fn momentum_block(params: &PepsParameters, k: (f64, f64)) -> Result<MomentumBlock> {
    let blocks = momentum_channel_blocks(params)?;
    momentum_block_with(params, &blocks, k)
}

/// The discrete Brillouin-zone record for (l1, l2): blocks at every paired
/// momentum and the four unpaired amplitudes.
#[derive(Debug, Clone)]
pub struct BcsState {
    pub params: PepsParameters,
    pub grid: BTreeMap<(i64, i64), MomentumBlock>,
    pub unpaired: [C64; 4],
}

impl BcsState {
    pub fn momentum_of(&self, n: (i64, i64)) -> (f64, f64) {
        (
            fold_momentum(2.0 * std::f64::consts::PI * n.0 as f64 / self.params.l1 as f64),
            fold_momentum(2.0 * std::f64::consts::PI * n.1 as f64 / self.params.l2 as f64),
        )
    }
}

/// Build the full grid; lattice extents must be even so the staggered
/// structure and the four unpaired momenta are representable.
pub fn bcs_state(params: &PepsParameters) -> Result<BcsState> {
    if params.l1 % 2 != 0 || params.l2 % 2 != 0 {
        return Err(CoreError::Parameter(format!(
            "momentum grid needs even extents, got {}x{}",
            params.l1, params.l2
        )));
    }
    let blocks = momentum_channel_blocks(params)?;
    let l1 = params.l1 as i64;
    let l2 = params.l2 as i64;
    let points: Vec<(i64, i64)> = (0..l1).flat_map(|n1| (0..l2).map(move |n2| (n1, n2))).collect();
    let computed: Vec<((i64, i64), Result<MomentumBlock>)> = points
        .par_iter()
        .map(|&(n1, n2)| {
            let k = (
                2.0 * std::f64::consts::PI * n1 as f64 / l1 as f64,
                2.0 * std::f64::consts::PI * n2 as f64 / l2 as f64,
            );
            ((n1, n2), momentum_block_with(params, &blocks, k))
        })
        .collect();
    let mut grid = BTreeMap::new();
    for (n, res) in computed {
        grid.insert(n, res?);
    }
    Ok(BcsState {
        params: *params,
        grid,
        unpaired: bcs::unpaired_amplitudes(params),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn g_in_is_anti_hermitian_and_pure() {
        for k in [(0.3, -1.1), (PI, 0.0), (1.0, 2.0)] {
            let g = g_in_k(k);
            for i in 0..16 {
                for j in 0..16 {
                    assert!((g[(i, j)] + g[(j, i)].conj()).abs() < 1e-14);
                }
            }
            let sq = g.dot(&g);
            for i in 0..16 {
                for j in 0..16 {
                    let expect = if i == j { c(-1.0, 0.0) } else { c(0.0, 0.0) };
                    assert!((sq[(i, j)] - expect).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn normalized_block_is_pure_and_determinant_positive() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..12 {
            let p = PepsParameters::real(
                rng.gen_range(0.3..1.2),
                rng.gen_range(-1.3..1.3),
                rng.gen_range(-1.3..1.3),
                8,
                8,
            )
            .unwrap();
            let k = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let mb = match momentum_block(&p, k) {
                Ok(mb) => mb,
                Err(CoreError::SingularChannel { .. }) => continue,
                Err(e) => panic!("{e}"),
            };
            let norm = mb.p * mb.p + mb.r * mb.r + mb.i * mb.i;
            assert!((norm - 1.0).abs() < 1e-8, "P^2+R^2+I^2 = {norm}");
            assert!(mb.dnorm > 0.0, "determinant should be positive, got {}", mb.dnorm);
            let dn = (mb.p0 * mb.p0 + mb.r0 * mb.r0 + mb.i0 * mb.i0).sqrt();
            assert!((dn - mb.dnorm).abs() < 1e-8 * (1.0 + mb.dnorm));
        }
    }

    #[test]
    fn k_zero_has_r_one_delta_zero() {
        let p = PepsParameters::real(0.8, 1.0, std::f64::consts::SQRT_2, 8, 8).unwrap();
        let mb = momentum_block(&p, (0.0, 0.0)).unwrap();
        assert!((mb.r - 1.0).abs() < 1e-9, "R(0) = {}", mb.r);
        assert!(mb.p.abs() < 1e-9);
        assert!(mb.i.abs() < 1e-9);
    }

    #[test]
    fn rotation_relations_on_normalized_functions() {
        let p = PepsParameters::real(0.6, 0.4, 0.9, 8, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..6 {
            let k = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let lk = (-k.1, k.0);
            let a = momentum_block(&p, k).unwrap();
            let b = momentum_block(&p, lk).unwrap();
            assert!((b.r - a.r).abs() < 1e-10, "R(Lk) != R(k)");
            assert!((b.p + a.i).abs() < 1e-10, "P(Lk) != -I(k)");
            assert!((b.i - a.p).abs() < 1e-10, "I(Lk) != P(k)");
        }
    }

    #[test]
    fn parity_relations_under_k_negation() {
        let p = PepsParameters::real(0.6, -0.7, 0.5, 8, 8).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..6 {
            let k = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let a = momentum_block(&p, k).unwrap();
            let b = momentum_block(&p, (-k.0, -k.1)).unwrap();
            assert!((b.p + a.p).abs() < 1e-10);
            assert!((b.r - a.r).abs() < 1e-10);
            assert!((b.i + a.i).abs() < 1e-10);
        }
    }
}
