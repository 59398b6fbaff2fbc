//! The pair-vacuum overlap determinant: `F(A, B, C, D) = det(A D B C^T + 1)`
//! for the expectation of four Gaussian pair exponentials. Cyclic reorderings
//! of the product leave the value unchanged.

use crate::error::{CoreError, Result};
use crate::linalg::det;
use crate::C64;
use ndarray::Array2;

/// `det(am . dm . bm . cm^T + 1)`.
///
/// `am` is square (na), `bm` square (nb), `cm` and `dm` are na x nb.
pub fn det_identity_f(
    am: &Array2<C64>,
    bm: &Array2<C64>,
    cm: &Array2<C64>,
    dm: &Array2<C64>,
) -> Result<C64> {
    let na = am.nrows();
    let nb = bm.nrows();
    if am.ncols() != na || bm.ncols() != nb {
        return Err(CoreError::Shape(format!(
            "A and B must be square, got {}x{} and {}x{}",
            am.nrows(),
            am.ncols(),
            bm.nrows(),
            bm.ncols()
        )));
    }
    if cm.nrows() != na || cm.ncols() != nb || dm.nrows() != na || dm.ncols() != nb {
        return Err(CoreError::Shape(format!(
            "C and D must be {}x{}, got {}x{} and {}x{}",
            na,
            nb,
            cm.nrows(),
            cm.ncols(),
            dm.nrows(),
            dm.ncols()
        )));
    }
    let ct = cm.t().to_owned();
    let mut m = am.dot(dm).dot(bm).dot(&ct);
    for i in 0..na {
        m[(i, i)] += 1.0;
    }
    Ok(det(&m))
}
