//! Matrix decompositions: Householder QR, one-sided Jacobi SVD, Jacobi
//! eigendecomposition of Hermitian matrices, and eigenspaces of unitary
//! matrices via their Hermitian parts.
//!
//! Jacobi everywhere: the dimensions this crate sees are tiny, and Jacobi
//! iterations deliver the reconstruction accuracy the callers contract for
//! (1e-12 relative) without any tuning.

use super::{C64, CMatrix};
use crate::{Error, Result};

const SWEEP_LIMIT: usize = 64;
const CONVERGENCE_EPS: f64 = 1e-14;

/// Economy singular value decomposition `M = U · diag(sigma) · Vdag`.
#[derive(Debug, Clone)]
pub struct Svd {
    /// `rows x k` matrix with orthonormal columns, `k = min(rows, cols)`.
    pub u: CMatrix,
    /// Singular values in descending order, length `k`.
    pub sigma: Vec<f64>,
    /// `k x cols` matrix with orthonormal rows.
    pub vdag: CMatrix,
}

impl Svd {
    /// `U · diag(sigma) · Vdag`, for reconstruction checks.
    pub fn reconstruct(&self) -> CMatrix {
        let k = self.sigma.len();
        let mut scaled = self.u.clone();
        for j in 0..k {
            for i in 0..scaled.rows() {
                scaled[(i, j)] *= C64::new(self.sigma[j], 0.0);
            }
        }
        scaled.mul(&self.vdag)
    }

    /// Number of singular values exceeding `cutoff * sigma_0`.
    pub fn rank(&self, cutoff: f64) -> usize {
        match self.sigma.first() {
            Some(&s0) if s0 > 0.0 => self.sigma.iter().filter(|&&s| s > cutoff * s0).count(),
            _ => 0,
        }
    }
}

/// Eigendecomposition of a Hermitian matrix, `H = V · diag(values) · V†`.
#[derive(Debug, Clone)]
pub struct HermitianEig {
    /// Real eigenvalues in descending order.
    pub values: Vec<f64>,
    /// Unitary matrix whose columns are the matching eigenvectors.
    pub vectors: CMatrix,
}

/// One eigenspace of a unitary matrix.
#[derive(Debug, Clone)]
pub struct UnitaryEigenspace {
    /// Unimodular eigenvalue shared by the whole space.
    pub eigenvalue: C64,
    /// Orthonormal basis columns.
    pub basis: CMatrix,
    /// Worst `‖S v − λ v‖` over the basis, as a diagnostic.
    pub residual: f64,
}

impl CMatrix {
    /// Singular value decomposition by one-sided Jacobi rotations.
    ///
    /// Reconstruction holds to `1e-12 * max(1, ‖M‖)`; see [`Svd`].
    pub fn svd(&self) -> Result<Svd> {
        // Finiteness is a constructor invariant; recheck cheaply since this
        // is the contract boundary named by callers.
        if self
            .entries()
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Input("svd input must be finite".into()));
        }
        if self.rows() >= self.cols() {
            Ok(one_sided_jacobi(self))
        } else {
            let Svd { u, sigma, vdag } = one_sided_jacobi(&self.adjoint());
            Ok(Svd {
                u: vdag.adjoint(),
                sigma,
                vdag: u.adjoint(),
            })
        }
    }

    /// Eigendecomposition of a Hermitian matrix via two-sided Jacobi.
    ///
    /// The input must be Hermitian up to roundoff; the iteration works on
    /// `(M + M†)/2` so tiny asymmetries are folded away rather than amplified.
    pub fn hermitian_eig(&self) -> Result<HermitianEig> {
        if !self.is_square() {
            return Err(Error::Input(format!(
                "eigendecomposition of a non-square {}x{} matrix",
                self.rows(),
                self.cols()
            )));
        }
        let n = self.rows();
        let mut h = self.add(&self.adjoint()).scale(C64::new(0.5, 0.0));
        let mut v = CMatrix::identity(n);
        let scale = h.frobenius_norm().max(1.0);
        for _ in 0..SWEEP_LIMIT {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += h[(p, q)].norm_sqr();
                }
            }
            if off.sqrt() <= CONVERGENCE_EPS * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    jacobi_rotate(&mut h, &mut v, p, q);
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<f64> = (0..n).map(|i| h[(i, i)].re).collect();
        order.sort_by(|&a, &b| diag[b].total_cmp(&diag[a]));
        let values = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = CMatrix::zeros(n, n);
        for (new_j, &old_j) in order.iter().enumerate() {
            for i in 0..n {
                vectors[(i, new_j)] = v[(i, old_j)];
            }
        }
        Ok(HermitianEig { values, vectors })
    }

    /// Eigenspaces of a unitary matrix, grouped by eigenvalue.
    ///
    /// Works through the commuting Hermitian pair `(S + S†)/2` and
    /// `(S − S†)/2i`: real and imaginary parts of the eigenvalues. Spaces
    /// whose eigenvalues fall within `cluster_tol` of each other on the unit
    /// circle are merged. Results are sorted by phase angle in `[0, 2π)`.
    pub fn unitary_eigenspaces(&self, cluster_tol: f64) -> Result<Vec<UnitaryEigenspace>> {
        if !self.is_square() {
            return Err(Error::Input("unitary eigenspaces need a square matrix".into()));
        }
        let n = self.rows();
        let adj = self.adjoint();
        let re_part = self.add(&adj).scale(C64::new(0.5, 0.0));
        let im_part = self.sub(&adj).scale(C64::new(0.0, -0.5));

        let outer = re_part.hermitian_eig()?;
        let mut spaces: Vec<(C64, Vec<Vec<C64>>)> = Vec::new();
        for group in cluster_ranges(&outer.values, cluster_tol) {
            let basis = columns_submatrix(&outer.vectors, &group);
            // The group spans a union of eigenspaces of S, so the imaginary
            // part restricts to it exactly.
            let restricted = basis.adjoint().mul(&im_part).mul(&basis);
            let inner = restricted.hermitian_eig()?;
            let refined = basis.mul(&inner.vectors);
            for sub in cluster_ranges(&inner.values, cluster_tol) {
                let cols: Vec<Vec<C64>> = sub.iter().map(|&j| refined.column_vec(j)).collect();
                let mut eigenvalue = C64::ZERO;
                for col in &cols {
                    let v = CMatrix::column(col);
                    eigenvalue += v.adjoint().mul(&self.mul(&v))[(0, 0)];
                }
                eigenvalue /= C64::new(cols.len() as f64, 0.0);
                let modulus = eigenvalue.norm();
                if modulus > 0.0 {
                    eigenvalue /= C64::new(modulus, 0.0);
                }
                spaces.push((eigenvalue, cols));
            }
        }

        // Merge clusters that ended up within cluster_tol on the circle.
        let mut merged: Vec<(C64, Vec<Vec<C64>>)> = Vec::new();
        for (val, cols) in spaces {
            match merged
                .iter_mut()
                .find(|(existing, _)| (*existing - val).norm() <= cluster_tol)
            {
                Some((_, existing_cols)) => existing_cols.extend(cols),
                None => merged.push((val, cols)),
            }
        }
        merged.sort_by(|a, b| phase_angle(a.0).total_cmp(&phase_angle(b.0)));

        let mut out = Vec::with_capacity(merged.len());
        for (eigenvalue, cols) in merged {
            let mut basis = CMatrix::zeros(n, cols.len());
            for (j, col) in cols.iter().enumerate() {
                for i in 0..n {
                    basis[(i, j)] = col[i];
                }
            }
            let mut residual = 0.0f64;
            for j in 0..basis.cols() {
                let v = CMatrix::column(&basis.column_vec(j));
                let r = self.mul(&v).sub(&v.scale(eigenvalue)).frobenius_norm();
                residual = residual.max(r);
            }
            out.push(UnitaryEigenspace {
                eigenvalue,
                basis,
                residual,
            });
        }
        Ok(out)
    }
}

fn phase_angle(z: C64) -> f64 {
    let mut t = z.arg();
    if t < 0.0 {
        t += 2.0 * std::f64::consts::PI;
    }
    t
}

/// Consecutive index ranges over a sorted value list, chaining values that
/// sit within `tol` of their predecessor.
fn cluster_ranges(sorted: &[f64], tol: f64) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..sorted.len() {
        match out.last_mut() {
            Some(group) if (sorted[*group.last().unwrap()] - sorted[i]).abs() <= tol => {
                group.push(i);
            }
            _ => out.push(vec![i]),
        }
    }
    out
}

fn columns_submatrix(m: &CMatrix, cols: &[usize]) -> CMatrix {
    let mut out = CMatrix::zeros(m.rows(), cols.len());
    for (j, &c) in cols.iter().enumerate() {
        for i in 0..m.rows() {
            out[(i, j)] = m[(i, c)];
        }
    }
    out
}

/// One complex Jacobi rotation annihilating the (p, q) entry of Hermitian `h`,
/// accumulated into `v` on the right.
fn jacobi_rotate(h: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let hpq = h[(p, q)];
    let mag = hpq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = hpq / C64::new(mag, 0.0);
    let a = h[(p, p)].re;
    let b = h[(q, q)].re;
    let tau = (b - a) / (2.0 * mag);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let cs = 1.0 / (1.0 + t * t).sqrt();
    let sn = t * cs;

    // G differs from the identity in the (p, q) block:
    //   [ cs            sn          ]
    //   [ -sn e^{-iφ}   cs e^{-iφ}  ]
    let g_pp = C64::new(cs, 0.0);
    let g_pq = C64::new(sn, 0.0);
    let g_qp = phase.conj() * C64::new(-sn, 0.0);
    let g_qq = phase.conj() * C64::new(cs, 0.0);

    let n = h.rows();
    // h <- h G (columns p, q)
    for i in 0..n {
        let hp = h[(i, p)];
        let hq = h[(i, q)];
        h[(i, p)] = hp * g_pp + hq * g_qp;
        h[(i, q)] = hp * g_pq + hq * g_qq;
    }
    // h <- G† h (rows p, q)
    for j in 0..n {
        let hp = h[(p, j)];
        let hq = h[(q, j)];
        h[(p, j)] = g_pp.conj() * hp + g_qp.conj() * hq;
        h[(q, j)] = g_pq.conj() * hp + g_qq.conj() * hq;
    }
    // v <- v G
    for i in 0..v.rows() {
        let vp = v[(i, p)];
        let vq = v[(i, q)];
        v[(i, p)] = vp * g_pp + vq * g_qp;
        v[(i, q)] = vp * g_pq + vq * g_qq;
    }
}

/// One-sided Jacobi SVD for `rows >= cols`.
fn one_sided_jacobi(m: &CMatrix) -> Svd {
    let rows = m.rows();
    let cols = m.cols();
    debug_assert!(rows >= cols);
    let mut w: Vec<Vec<C64>> = (0..cols).map(|j| m.column_vec(j)).collect();
    let mut v = CMatrix::identity(cols);

    for _ in 0..SWEEP_LIMIT {
        let mut rotated = false;
        for p in 0..cols {
            for q in (p + 1)..cols {
                let a: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                let b: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                let c: C64 = w[p]
                    .iter()
                    .zip(&w[q])
                    .map(|(x, y)| x.conj() * y)
                    .sum();
                let mag = c.norm();
                if mag <= CONVERGENCE_EPS * (a * b).sqrt() || mag == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = c / C64::new(mag, 0.0);
                let tau = (b - a) / (2.0 * mag);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let cs = C64::new(1.0 / (1.0 + t * t).sqrt(), 0.0);
                let sn = C64::new(t, 0.0) * cs;
                let phase_conj = phase.conj();
                for i in 0..rows {
                    let wp = w[p][i];
                    let wq = w[q][i] * phase_conj;
                    w[p][i] = cs * wp - sn * wq;
                    w[q][i] = sn * wp + cs * wq;
                }
                for i in 0..cols {
                    let vp = v[(i, p)];
                    let vq = v[(i, q)] * phase_conj;
                    v[(i, p)] = cs * vp - sn * vq;
                    v[(i, q)] = sn * vp + cs * vq;
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let mut norms: Vec<f64> = w
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..cols).collect();
    order.sort_by(|&a, &b| norms[b].total_cmp(&norms[a]));
    let permuted_w: Vec<Vec<C64>> = order.iter().map(|&j| w[j].clone()).collect();
    let permuted_norms: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut vdag = CMatrix::zeros(cols, cols);
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..cols {
            vdag[(new_j, i)] = v[(i, old_j)].conj();
        }
    }
    norms = permuted_norms;

    let floor = norms.first().copied().unwrap_or(0.0) * 1e-300;
    let mut u = CMatrix::zeros(rows, cols);
    let mut fixed_columns: Vec<Vec<C64>> = Vec::new();
    for j in 0..cols {
        if norms[j] > floor && norms[j] > 0.0 {
            let inv = C64::new(1.0 / norms[j], 0.0);
            let col: Vec<C64> = permuted_w[j].iter().map(|z| z * inv).collect();
            for i in 0..rows {
                u[(i, j)] = col[i];
            }
            fixed_columns.push(col);
        } else {
            norms[j] = 0.0;
            let col = complete_orthonormal(rows, &fixed_columns);
            for i in 0..rows {
                u[(i, j)] = col[i];
            }
            fixed_columns.push(col);
        }
    }

    Svd {
        u,
        sigma: norms,
        vdag,
    }
}

/// Any unit vector orthogonal to the given orthonormal columns.
fn complete_orthonormal(dim: usize, existing: &[Vec<C64>]) -> Vec<C64> {
    for k in 0..dim {
        let mut cand = vec![C64::ZERO; dim];
        cand[k] = C64::new(1.0, 0.0);
        for _ in 0..2 {
            for col in existing {
                let overlap: C64 = col.iter().zip(&cand).map(|(a, b)| a.conj() * b).sum();
                for i in 0..dim {
                    let sub = overlap * col[i];
                    cand[i] -= sub;
                }
            }
        }
        let norm = cand.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.5 {
            let inv = C64::new(1.0 / norm, 0.0);
            return cand.iter().map(|z| z * inv).collect();
        }
    }
    unreachable!("orthonormal completion always succeeds below full dimension");
}

/// Householder QR, `m = Q R` with `Q` square unitary and `R` upper triangular.
pub(crate) fn householder_qr(m: &CMatrix) -> (CMatrix, CMatrix) {
    let rows = m.rows();
    let cols = m.cols();
    let mut r = m.clone();
    let mut q = CMatrix::identity(rows);
    let steps = cols.min(rows.saturating_sub(1));
    for k in 0..steps {
        let mut x = vec![C64::ZERO; rows - k];
        for i in k..rows {
            x[i - k] = r[(i, k)];
        }
        let norm_x = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let alpha = if x[0].norm() > 0.0 {
            -(x[0] / C64::new(x[0].norm(), 0.0)) * C64::new(norm_x, 0.0)
        } else {
            C64::new(-norm_x, 0.0)
        };
        let mut v = x;
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= C64::new(vnorm, 0.0);
        }
        // r <- (I - 2 v v†) r on the trailing block
        for j in 0..cols {
            let dot: C64 = (k..rows).map(|i| v[i - k].conj() * r[(i, j)]).sum();
            let twice = dot * C64::new(2.0, 0.0);
            for i in k..rows {
                let sub = twice * v[i - k];
                r[(i, j)] -= sub;
            }
        }
        // q <- q (I - 2 v v†)
        for i in 0..rows {
            let dot: C64 = (k..rows).map(|j| q[(i, j)] * v[j - k]).sum();
            let twice = dot * C64::new(2.0, 0.0);
            for j in k..rows {
                let sub = twice * v[j - k].conj();
                q[(i, j)] -= sub;
            }
        }
    }
    (q, r)
}

/// Orthonormalize independent columns by modified Gram-Schmidt (two passes).
pub fn orthonormal_columns(m: &CMatrix) -> Result<CMatrix> {
    let rows = m.rows();
    let cols = m.cols();
    if cols > rows {
        return Err(Error::Input(format!(
            "cannot orthonormalize {cols} columns in dimension {rows}"
        )));
    }
    let mut out: Vec<Vec<C64>> = Vec::with_capacity(cols);
    for j in 0..cols {
        let mut col = m.column_vec(j);
        let original = col
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
            .max(1.0);
        for _ in 0..2 {
            for prev in &out {
                let overlap: C64 = prev.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
                for i in 0..rows {
                    let sub = overlap * prev[i];
                    col[i] -= sub;
                }
            }
        }
        let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm <= 1e-10 * original {
            return Err(Error::Input(format!(
                "column {j} is linearly dependent on its predecessors"
            )));
        }
        let inv = C64::new(1.0 / norm, 0.0);
        out.push(col.iter().map(|z| z * inv).collect());
    }
    let mut q = CMatrix::zeros(rows, cols);
    for (j, col) in out.iter().enumerate() {
        for i in 0..rows {
            q[(i, j)] = col[i];
        }
    }
    Ok(q)
}
