//! The three-parameter fiducial-state matrix T(t, y, z).
//!
//! Rows index the negative modes (psi, l+, r-, u-, d+), columns the positive
//! modes (l-, r+, u+, d-). Row 0 couples the physical fermion with phases
//! eta = exp(i pi/4); the virtual 4x4 block tau is antisymmetric and carries
//! the 1/sqrt(2) normalization of z.

use num_complex::ComplexFloat;
use crate::error::{CoreError, Result};
use crate::{c, C64};
use ndarray::{array, Array2};

pub const SQRT_HALF: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// The variational triple plus lattice extents; the single source of truth
/// for every computation downstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PepsParameters {
    pub t: f64,
    pub y: C64,
    pub z: C64,
    pub l1: usize,
    pub l2: usize,
}

impl PepsParameters {
    pub fn new(t: f64, y: C64, z: C64, l1: usize, l2: usize) -> Result<Self> {
        if !(t >= 0.0) {
            return Err(CoreError::Parameter(format!("t must be >= 0, got {t}")));
        }
        if l1 == 0 || l2 == 0 {
            return Err(CoreError::Parameter("lattice extents must be positive".into()));
        }
        Ok(Self { t, y, z, l1, l2 })
    }

    pub fn real(t: f64, y: f64, z: f64, l1: usize, l2: usize) -> Result<Self> {
        Self::new(t, c(y, 0.0), c(z, 0.0), l1, l2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexParity {
    Even,
    Odd,
}

impl VertexParity {
    pub fn of_site(x1: i64, x2: i64) -> Self {
        if (x1 + x2).rem_euclid(2) == 0 {
            VertexParity::Even
        } else {
            VertexParity::Odd
        }
    }
}

/// 5x4 fiducial matrix with its vertex-parity tag. The numerical entries are
/// identical on both sublattices; the parity records whether the rows pair
/// with negative (even) or positive (odd) modes.
#[derive(Debug, Clone)]
pub struct TMatrix {
    pub entries: Array2<C64>,
    pub parity: VertexParity,
}

pub fn eta_p() -> C64 {
    C64::from_polar(1.0, std::f64::consts::FRAC_PI_4)
}

/// Closed form of T: row 0 is t * (1, eta^2, eta, eta^3), the lower block is
/// the antisymmetric tau(y, z).
pub fn build_t_matrix(params: &PepsParameters, parity: VertexParity) -> Result<TMatrix> {
    if params.t <= 0.0 {
        return Err(CoreError::Parameter(format!(
            "the fermionic state needs t > 0, got {}",
            params.t
        )));
    }
    Ok(TMatrix {
        entries: t_matrix_entries(params.t, params.y, params.z),
        parity,
    })
}

/// Same closed form with t = 0 allowed; the pure-gauge limit of the gauged
/// module uses this.
pub fn build_t_matrix_gauge(params: &PepsParameters, parity: VertexParity) -> TMatrix {
    TMatrix {
        entries: t_matrix_entries(params.t, params.y, params.z),
        parity,
    }
}

fn t_matrix_entries(t: f64, y: C64, z: C64) -> Array2<C64> {
    let eta = eta_p();
    let tc = c(t, 0.0);
    let mut m = Array2::zeros((5, 4));
    for (j, phase) in [c(1.0, 0.0), eta * eta, eta, eta * eta * eta]
        .into_iter()
        .enumerate()
    {
        m[(0, j)] = tc * phase;
    }
    let tau = tau_block(y, z);
    for i in 0..4 {
        for j in 0..4 {
            m[(i + 1, j)] = tau[(i, j)];
        }
    }
    m
}

/// The antisymmetric virtual block tau(y, z) (rows l+, r-, u-, d+; columns
/// l-, r+, u+, d-).
pub fn tau_block(y: C64, z: C64) -> Array2<C64> {
    let zs = z * SQRT_HALF;
    let zero = c(0.0, 0.0);
    array![
        [zero, y, zs, zs],
        [-y, zero, -zs, zs],
        [-zs, zs, zero, y],
        [-zs, -zs, -y, zero]
    ]
}

/// Momentum-space bond matrix S(k) of the paired-mode construction.
pub fn s_matrix(k: (f64, f64)) -> Array2<C64> {
    let (k1, k2) = k;
    let e1 = C64::from_polar(1.0, k1);
    let e2 = C64::from_polar(1.0, k2);
    let zero = c(0.0, 0.0);
    array![
        [zero, -e1.conj(), zero, zero],
        [e1, zero, zero, zero],
        [zero, zero, zero, -e2.conj()],
        [zero, zero, e2, zero]
    ]
}

/// S_X = diag(-X) (+) S(k): the physical-mode extension used to extract the
/// paired amplitude beta as the linear-in-X coefficient.
pub fn s_x_matrix(k: (f64, f64), x: f64) -> Array2<C64> {
    let s = s_matrix(k);
    let mut m = Array2::zeros((5, 5));
    m[(0, 0)] = c(-x, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            m[(i + 1, j + 1)] = s[(i, j)];
        }
    }
    m
}
