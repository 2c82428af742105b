//! Dense complex-matrix kernel: products, Kronecker products, adjoints,
//! determinants, SVD, eigendecompositions, Haar-random unitaries, and the
//! "equal up to a phase" comparator used throughout the crate.
//!
//! Everything here targets tiny dense problems (dimensions well below ~64)
//! at double precision, so the decompositions favor robustness over speed:
//! Jacobi iterations and Householder reflections, no blocking, no pivoting
//! heroics.

mod decomp;

pub use decomp::{orthonormal_columns, HermitianEig, Svd, UnitaryEigenspace};

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::{Error, Result};

/// Complex scalar used everywhere in the crate.
pub type C64 = Complex<f64>;

/// Dense row-major complex matrix.
///
/// Entry `(i, j)` lives at `entries[i * cols + j]`. All entries are finite;
/// constructors reject NaN and infinity.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<C64>,
}

impl std::fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl CMatrix {
    /// Build a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::Input(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if entries.len() != rows * cols {
            return Err(Error::Input(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Input("matrix entries must be finite".into()));
        }
        Ok(Self { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![C64::new(0.0, 0.0); rows * cols],
        }
    }

    /// Identity matrix of dimension `d`.
    pub fn identity(d: usize) -> Self {
        let mut m = Self::zeros(d, d);
        for i in 0..d {
            m[(i, i)] = C64::new(1.0, 0.0);
        }
        m
    }

    /// Matrix literal from nested rows; panics on ragged or empty input.
    pub fn from_rows(rows: &[Vec<C64>]) -> Self {
        let r = rows.len();
        assert!(r > 0, "matrix literal needs at least one row");
        let c = rows[0].len();
        assert!(
            rows.iter().all(|row| row.len() == c) && c > 0,
            "matrix literal rows must be non-empty and equal length"
        );
        Self::new(r, c, rows.iter().flatten().copied().collect())
            .expect("matrix literal entries must be finite")
    }

    /// Real matrix literal, mostly for tests and fixtures.
    pub fn from_real(rows: &[&[f64]]) -> Self {
        let converted: Vec<Vec<C64>> = rows
            .iter()
            .map(|row| row.iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&converted)
    }

    /// Column vector wrapping a slice of amplitudes.
    pub fn column(v: &[C64]) -> Self {
        Self {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    /// Pauli X.
    pub fn pauli_x() -> Self {
        Self::from_real(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    /// Pauli Y.
    pub fn pauli_y() -> Self {
        let i = C64::new(0.0, 1.0);
        Self::from_rows(&[vec![C64::ZERO, -i], vec![i, C64::ZERO]])
    }

    /// Pauli Z.
    pub fn pauli_z() -> Self {
        Self::from_real(&[&[1.0, 0.0], &[0.0, -1.0]])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entry slice.
    pub fn entries(&self) -> &[C64] {
        &self.entries
    }

    /// Column `j` as an owned vector.
    pub fn column_vec(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "dimension mismatch in matrix product: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let mut out = CMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == C64::ZERO {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    /// Entrywise sum.
    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Entrywise difference.
    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z * factor).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Entrywise transpose in the fixed computational basis.
    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)];
            }
        }
        out
    }

    /// Entrywise complex conjugate.
    pub fn conj(&self) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> C64 {
        assert!(self.is_square(), "trace of a non-square matrix");
        (0..self.rows).map(|i| self[(i, i)]).sum()
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Frobenius inner product `tr(self† rhs)` without forming the product.
    pub fn frobenius_inner(&self, rhs: &CMatrix) -> C64 {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        self.entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Kronecker product with index ordering `(i_a * rows_b + i_b)`, matching
    /// the amplitude layout of bipartite state vectors.
    pub fn kron(&self, rhs: &CMatrix) -> CMatrix {
        let mut out = CMatrix::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self[(ia, ja)];
                if a == C64::ZERO {
                    continue;
                }
                for ib in 0..rhs.rows {
                    for jb in 0..rhs.cols {
                        out[(ia * rhs.rows + ib, ja * rhs.cols + jb)] = a * rhs[(ib, jb)];
                    }
                }
            }
        }
        out
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::Input(format!(
                "determinant of a non-square {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut lu = self.entries.clone();
        let mut det = C64::new(1.0, 0.0);
        for k in 0..n {
            let pivot = (k..n)
                .max_by(|&a, &b| {
                    lu[a * n + k]
                        .norm_sqr()
                        .total_cmp(&lu[b * n + k].norm_sqr())
                })
                .unwrap();
            if lu[pivot * n + k].norm_sqr() == 0.0 {
                return Ok(C64::ZERO);
            }
            if pivot != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot * n + j);
                }
                det = -det;
            }
            let inv = C64::new(1.0, 0.0) / lu[k * n + k];
            det *= lu[k * n + k];
            for i in (k + 1)..n {
                let factor = lu[i * n + k] * inv;
                if factor == C64::ZERO {
                    continue;
                }
                for j in (k + 1)..n {
                    let sub = factor * lu[k * n + j];
                    lu[i * n + j] -= sub;
                }
            }
        }
        Ok(det)
    }

    /// `true` when the Frobenius distance to `other` is at most
    /// `tol * max(1, self norm, other norm)`.
    pub fn approx_eq(&self, other: &CMatrix, tol: f64) -> bool {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return false;
        }
        let scale = self.frobenius_norm().max(other.frobenius_norm()).max(1.0);
        self.sub(other).frobenius_norm() <= tol * scale
    }

    /// Hermiticity residual `‖M − M†‖_F`.
    pub fn hermiticity_residual(&self) -> f64 {
        self.sub(&self.adjoint()).frobenius_norm()
    }

    /// Unitarity residual `‖M†M − I‖_F`.
    pub fn unitarity_residual(&self) -> f64 {
        assert!(self.is_square());
        self.adjoint()
            .mul(self)
            .sub(&CMatrix::identity(self.rows))
            .frobenius_norm()
    }
}

/// Outcome of comparing two equal-shape matrices up to one global phase.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseMatch {
    /// Whether the two operands agree up to a phase at the requested
    /// tolerance: `residual <= tol * max(input norms)`.
    pub matched: bool,
    /// Aligning phase in `[0, 2π)`; present only when `matched`.
    pub theta: Option<f64>,
    /// Frobenius distance after optimal phase alignment.
    pub residual: f64,
}

/// Compare `A` with `e^{iθ}B` at the best possible `θ`.
///
/// The optimum is `θ = arg(tr(B†A))`; when that trace vanishes with both
/// matrices nonzero no alignment exists and the residual is the common
/// distance `sqrt(‖A‖² + ‖B‖²)`. Two zero matrices match with `θ = 0`.
pub fn phase_align(a: &CMatrix, b: &CMatrix, tol: f64) -> Result<PhaseMatch> {
    if (a.rows(), a.cols()) != (b.rows(), b.cols()) {
        return Err(Error::Input(format!(
            "phase_align shape mismatch: {}x{} vs {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let norm_a = a.frobenius_norm();
    let norm_b = b.frobenius_norm();
    let scale = norm_a.max(norm_b);
    let overlap = b.frobenius_inner(a);
    if norm_a == 0.0 && norm_b == 0.0 {
        return Ok(PhaseMatch {
            matched: true,
            theta: Some(0.0),
            residual: 0.0,
        });
    }
    // ‖A − e^{iθ}B‖² = ‖A‖² + ‖B‖² − 2 Re(e^{−iθ} tr(B†A)) is minimized at
    // θ = arg tr(B†A). Evaluate the residual by direct subtraction at that θ:
    // the closed form cancels catastrophically when the matrices agree.
    let (theta, residual) = if overlap.norm() > 0.0 {
        let mut t = overlap.arg();
        if t < 0.0 {
            t += 2.0 * std::f64::consts::PI;
        }
        // arg can return exactly -0.0 -> 2π after the wrap; fold it back.
        if t >= 2.0 * std::f64::consts::PI {
            t = 0.0;
        }
        let aligned = b.scale(C64::from_polar(1.0, t));
        (Some(t), a.sub(&aligned).frobenius_norm())
    } else {
        // A vanishing trace admits no preferred phase; every θ leaves the
        // same distance.
        (
            None,
            (norm_a * norm_a + norm_b * norm_b).max(0.0).sqrt(),
        )
    };
    let matched = residual <= tol * scale;
    Ok(PhaseMatch {
        matched,
        theta: if matched { theta.or(Some(0.0)) } else { theta },
        residual,
    })
}

/// Haar-distributed `d x d` unitary, a deterministic function of `seed`.
///
/// QR of a seeded complex Ginibre matrix with the R diagonal's phases folded
/// into Q, which makes the distribution exactly Haar.
pub fn haar_unitary(d: usize, seed: u64) -> Result<CMatrix> {
    if d == 0 {
        return Err(Error::Input("unitary dimension must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = complex_gaussian(d, d, &mut rng);
    let (q, r) = decomp::householder_qr(&g);
    let mut phases = CMatrix::zeros(d, d);
    for j in 0..d {
        let rd = r[(j, j)];
        phases[(j, j)] = if rd.norm() > 0.0 {
            rd / rd.norm()
        } else {
            C64::new(1.0, 0.0)
        };
    }
    Ok(q.mul(&phases))
}

/// Matrix of iid standard complex Gaussians (variance 1 per entry).
pub(crate) fn complex_gaussian<R: rand::Rng>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let entries = (0..rows * cols)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re * inv_sqrt2, im * inv_sqrt2)
        })
        .collect();
    CMatrix {
        rows,
        cols,
        entries,
    }
}
