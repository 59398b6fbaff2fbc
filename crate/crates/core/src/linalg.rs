//! Small dense complex kernels: LU (det / solve / inverse), a Jacobi
//! Hermitian eigensolver, SVD built on it, and eigenvalues of complex upper
//! Hessenberg matrices via shifted QR.
//!
//! Everything here runs on matrices of dimension <= a few dozen (channel
//! pivots are 16x16, Arnoldi subspaces ~40), so plain O(n^3) loops are the
//! right tool; no external LAPACK is involved.

use crate::{c, C64};
use ndarray::{Array1, Array2};
use num_complex::ComplexFloat;

/// LU factorization with partial pivoting, kept packed in `lu`.
pub struct Lu {
    lu: Array2<C64>,
    piv: Vec<usize>,
    sign: f64,
    n: usize,
}

pub fn lu_factor(a: &Array2<C64>) -> Lu {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "lu_factor needs a square matrix");
    let mut lu = a.clone();
    let mut piv = Vec::with_capacity(n);
    let mut sign = 1.0;
    for k in 0..n {
        let mut p = k;
        let mut best = lu[(k, k)].abs();
        for i in k + 1..n {
            let v = lu[(i, k)].abs();
            if v > best {
                best = v;
                p = i;
            }
        }
        piv.push(p);
        if p != k {
            sign = -sign;
            for j in 0..n {
                let tmp = lu[(k, j)];
                lu[(k, j)] = lu[(p, j)];
                lu[(p, j)] = tmp;
            }
        }
        let pivot = lu[(k, k)];
        if pivot.abs() == 0.0 {
            continue;
        }
        for i in k + 1..n {
            let f = lu[(i, k)] / pivot;
            lu[(i, k)] = f;
            for j in k + 1..n {
                let sub = f * lu[(k, j)];
                lu[(i, j)] -= sub;
            }
        }
    }
    Lu { lu, piv, sign, n }
}

impl Lu {
    pub fn det(&self) -> C64 {
        let mut d = c(self.sign, 0.0);
        for k in 0..self.n {
            d *= self.lu[(k, k)];
        }
        d
    }

    pub fn is_singular(&self) -> bool {
        (0..self.n).any(|k| self.lu[(k, k)].abs() == 0.0)
    }

    /// Solve A X = B for a matrix of right-hand sides.
    pub fn solve(&self, b: &Array2<C64>) -> Array2<C64> {
        let n = self.n;
        assert_eq!(b.nrows(), n);
        let mut x = b.clone();
        let m = b.ncols();
        for k in 0..n {
            let p = self.piv[k];
            if p != k {
                for j in 0..m {
                    let tmp = x[(k, j)];
                    x[(k, j)] = x[(p, j)];
                    x[(p, j)] = tmp;
                }
            }
        }
        // forward: L y = P b
        for k in 0..n {
            for i in k + 1..n {
                let f = self.lu[(i, k)];
                for j in 0..m {
                    let sub = f * x[(k, j)];
                    x[(i, j)] -= sub;
                }
            }
        }
        // back: U x = y
        for k in (0..n).rev() {
            let pivot = self.lu[(k, k)];
            for j in 0..m {
                x[(k, j)] /= pivot;
            }
            for i in 0..k {
                let f = self.lu[(i, k)];
                for j in 0..m {
                    let sub = f * x[(k, j)];
                    x[(i, j)] -= sub;
                }
            }
        }
        x
    }

    pub fn inverse(&self) -> Array2<C64> {
        self.solve(&Array2::eye(self.n))
    }
}

pub fn det(a: &Array2<C64>) -> C64 {
    lu_factor(a).det()
}

fn norm_1(a: &Array2<C64>) -> f64 {
    (0..a.ncols())
        .map(|j| (0..a.nrows()).map(|i| a[(i, j)].abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// 1-norm condition estimate; `f64::INFINITY` for exactly singular pivots.
pub fn condition_estimate(a: &Array2<C64>) -> f64 {
    let lu = lu_factor(a);
    if lu.is_singular() {
        return f64::INFINITY;
    }
    norm_1(a) * norm_1(&lu.inverse())
}

/// Cyclic Jacobi eigensolver for a complex Hermitian matrix.
/// Returns eigenvalues ascending with the matching eigenvector columns.
pub fn hermitian_eig(a: &Array2<C64>) -> (Vec<f64>, Array2<C64>) {
    let n = a.nrows();
    assert_eq!(n, a.ncols());
    let mut m = a.clone();
    let mut v: Array2<C64> = Array2::eye(n);
    for _sweep in 0..60 {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // phase so the rotated off-diagonal is real, then a classical
                // 2x2 symmetric Jacobi rotation
                let phase = apq / apq.abs();
                let g = apq.abs();
                let theta = 0.5 * (2.0 * g).atan2(aqq - app);
                let (s, co) = theta.sin_cos();
                let cp = c(co, 0.0);
                let sp = phase * s;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * cp - mkq * sp.conj();
                    m[(k, q)] = mkp * sp + mkq * cp;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = mpk * cp - mqk * sp;
                    m[(q, k)] = mpk * sp.conj() + mqk * cp;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * cp - vkq * sp.conj();
                    v[(k, q)] = vkp * sp + vkq * cp;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    let evals: Vec<f64> = (0..n).map(|i| m[(i, i)].re).collect();
    order.sort_by(|&i, &j| evals[i].partial_cmp(&evals[j]).unwrap());
    let sorted_vals: Vec<f64> = order.iter().map(|&i| evals[i]).collect();
    let mut sorted_vecs = Array2::zeros((n, n));
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            sorted_vecs[(k, new)] = v[(k, old)];
        }
    }
    (sorted_vals, sorted_vecs)
}

/// SVD of a complex m x n matrix (m >= n): `a = u * diag(s) * v^H`.
/// `u` is m x m (columns beyond n complete an orthonormal basis), `s` has
/// length n descending, `v` is n x n.
pub fn svd(a: &Array2<C64>) -> (Array2<C64>, Vec<f64>, Array2<C64>) {
    let (m, n) = (a.nrows(), a.ncols());
    assert!(m >= n, "svd expects m >= n");
    let ah = conj_t(a);
    let gram = ah.dot(a); // n x n Hermitian
    let (mut vals, vecs) = hermitian_eig(&gram);
    // descending
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    vals = order.iter().map(|&i| vals[i]).collect();
    let mut v = Array2::zeros((n, n));
    for (new, &old) in order.iter().enumerate() {
        for k in 0..n {
            v[(k, new)] = vecs[(k, old)];
        }
    }
    let s: Vec<f64> = vals.iter().map(|&x| x.max(0.0).sqrt()).collect();
    let av = a.dot(&v);
    let mut u = Array2::zeros((m, m));
    for j in 0..n {
        if s[j] > 1e-12 {
            for i in 0..m {
                u[(i, j)] = av[(i, j)] / s[j];
            }
        }
    }
    complete_orthonormal(&mut u, &s);
    (u, s, v)
}

fn complete_orthonormal(u: &mut Array2<C64>, s: &[f64]) {
    let m = u.nrows();
    let defined: Vec<usize> = (0..s.len()).filter(|&j| s[j] > 1e-12).collect();
    let mut cols: Vec<Array1<C64>> = defined
        .iter()
        .map(|&j| Array1::from_iter((0..m).map(|i| u[(i, j)])))
        .collect();
    let missing: Vec<usize> = (0..m).filter(|j| !defined.contains(j)).collect();
    let mut probe = 0;
    for &j in &missing {
        loop {
            let mut colv: Array1<C64> = Array1::zeros(m);
            colv[probe % m] = c(1.0, 0.0);
            probe += 1;
            for cexist in &cols {
                let mut ov = c(0.0, 0.0);
                for i in 0..m {
                    ov += cexist[i].conj() * colv[i];
                }
                for i in 0..m {
                    let sub = ov * cexist[i];
                    colv[i] -= sub;
                }
            }
            let nrm: f64 = colv.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if nrm > 1e-6 {
                for i in 0..m {
                    u[(i, j)] = colv[i] / nrm;
                }
                cols.push(colv.mapv(|z| z / nrm));
                break;
            }
        }
    }
}

pub fn conj_t(a: &Array2<C64>) -> Array2<C64> {
    let (m, n) = (a.nrows(), a.ncols());
    Array2::from_shape_fn((n, m), |(i, j)| a[(j, i)].conj())
}

/// Eigenvalues of a complex upper Hessenberg matrix by shifted QR with
/// Givens rotations. Good enough for Arnoldi Ritz values (n <= ~60).
pub fn hessenberg_eigenvalues(h_in: &Array2<C64>) -> Vec<C64> {
    let n = h_in.nrows();
    assert_eq!(n, h_in.ncols());
    let mut h = h_in.clone();
    let mut eigs = Vec::with_capacity(n);
    let mut hi = n; // active block is 0..hi
    let mut iters_since_deflate = 0;
    while hi > 0 {
        if hi == 1 {
            eigs.push(h[(0, 0)]);
            hi = 0;
            continue;
        }
        // deflate tiny subdiagonals
        let mut deflated = false;
        for k in (1..hi).rev() {
            let sub = h[(k, k - 1)].abs();
            let scale = h[(k, k)].abs() + h[(k - 1, k - 1)].abs();
            if sub <= 1e-14 * scale.max(1e-300) {
                if k == hi - 1 {
                    eigs.push(h[(hi - 1, hi - 1)]);
                    hi -= 1;
                    deflated = true;
                    iters_since_deflate = 0;
                    break;
                }
            }
        }
        if deflated {
            continue;
        }
        // Wilkinson-style shift from the trailing 2x2
        let a = h[(hi - 2, hi - 2)];
        let b = h[(hi - 2, hi - 1)];
        let cc = h[(hi - 1, hi - 2)];
        let d = h[(hi - 1, hi - 1)];
        let tr = a + d;
        let disc = ((a - d) * (a - d) + c(4.0, 0.0) * b * cc).sqrt();
        let l1 = (tr + disc) * 0.5;
        let l2 = (tr - disc) * 0.5;
        let mut shift = if (l1 - d).abs() < (l2 - d).abs() { l1 } else { l2 };
        iters_since_deflate += 1;
        if iters_since_deflate % 12 == 0 {
            // exceptional shift to break cycles
            shift = h[(hi - 1, hi - 1)] + c(h[(hi - 1, hi - 2)].abs(), 0.0);
        }
        if iters_since_deflate > 300 {
            // give up on further refinement: report the diagonal of the block
            for k in 0..hi {
                eigs.push(h[(k, k)]);
            }
            break;
        }
        for k in 0..hi {
            h[(k, k)] -= shift;
        }
        // QR via Givens on the subdiagonal, then RQ
        let mut rot = Vec::with_capacity(hi - 1);
        for k in 0..hi - 1 {
            let x = h[(k, k)];
            let y = h[(k + 1, k)];
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (cs, sn) = if r == 0.0 {
                (c(1.0, 0.0), c(0.0, 0.0))
            } else {
                (x.conj() / r, y.conj() / r)
            };
            rot.push((cs, sn));
            for j in k..hi {
                let hkj = h[(k, j)];
                let hk1j = h[(k + 1, j)];
                h[(k, j)] = cs * hkj + sn * hk1j;
                h[(k + 1, j)] = -sn.conj() * hkj + cs.conj() * hk1j;
            }
        }
        for k in 0..hi - 1 {
            let (cs, sn) = rot[k];
            for i in 0..(k + 2).min(hi) {
                let hik = h[(i, k)];
                let hik1 = h[(i, k + 1)];
                h[(i, k)] = hik * cs.conj() + hik1 * sn.conj();
                h[(i, k + 1)] = -hik * sn + hik1 * cs;
            }
        }
        for k in 0..hi {
            h[(k, k)] += shift;
        }
    }
    eigs
}
