//! Bipartite pure states: Schmidt decomposition with descending coefficients,
//! Schmidt rank, support projectors, and the map-state duality between kets
//! on `H_A ⊗ H_B` and `dA x dB` matrices.
//!
//! The computational basis is fixed once and for all as the canonical basis
//! of the amplitude layout: amplitude index `a·dB + b` holds `⟨a,b|ψ⟩`, and
//! every transpose or conjugate below is taken in that basis.

use crate::numerics::{C64, CMatrix};
use crate::{Error, Result, DEFAULT_TOL};
use rand::SeedableRng;

/// Pure state of a bipartite system, normalized at construction.
#[derive(Debug, Clone, PartialEq)]
pub struct BipartiteState {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<C64>,
}

/// Schmidt form `|ψ⟩ = Σ_j λ_j |ā_j⟩ ⊗ |b̄_j⟩` with `λ_0 ≥ λ_1 ≥ …`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    /// Descending nonnegative coefficients, `min(dA, dB)` of them.
    pub coefficients: Vec<f64>,
    /// Orthonormal columns `|ā_j⟩` on the A side.
    pub basis_a: CMatrix,
    /// Orthonormal columns `|b̄_j⟩` on the B side.
    pub basis_b: CMatrix,
    /// Count of coefficients above the relative cutoff.
    pub rank: usize,
}

/// Projectors onto the local supports of a state.
#[derive(Debug, Clone)]
pub struct SupportProjectors {
    /// Rank-`r` projector on `H_A`.
    pub proj_a: CMatrix,
    /// Rank-`r` projector on `H_B`.
    pub proj_b: CMatrix,
    /// Common rank of both projectors (the Schmidt rank).
    pub rank: usize,
}

/// The matrix `χ : H_B → H_A` dual to a ket, entry `(a, b) = ⟨a,b|ψ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualOperator {
    pub matrix: CMatrix,
}

impl BipartiteState {
    /// Validate dimensions, finiteness, and unit norm (within 1e-9).
    ///
    /// Non-normalized inputs are rejected rather than renormalized, so a
    /// caller that dropped a factor hears about it.
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::Input("state dimensions must be positive".into()));
        }
        if amplitudes.len() != dim_a * dim_b {
            return Err(Error::Input(format!(
                "amplitude vector has length {}, expected {}x{} = {}",
                amplitudes.len(),
                dim_a,
                dim_b,
                dim_a * dim_b
            )));
        }
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Input("amplitudes must be finite".into()));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::Input(format!(
                "state norm is {norm}, expected 1 within {DEFAULT_TOL:e}"
            )));
        }
        Ok(Self {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    /// Column-vector form of the ket.
    pub fn ket(&self) -> CMatrix {
        CMatrix::column(&self.amplitudes)
    }

    /// Rank-one density matrix `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> CMatrix {
        let k = self.ket();
        k.mul(&k.adjoint())
    }

    /// Reshape the amplitudes into the dual matrix (pure re-indexing).
    pub fn to_dual(&self) -> DualOperator {
        let mut m = CMatrix::zeros(self.dim_a, self.dim_b);
        for a in 0..self.dim_a {
            for b in 0..self.dim_b {
                m[(a, b)] = self.amplitudes[a * self.dim_b + b];
            }
        }
        DualOperator { matrix: m }
    }

    /// Inverse re-indexing; fails when the matrix is not unit Frobenius norm.
    pub fn from_dual(chi: &DualOperator) -> Result<Self> {
        let m = &chi.matrix;
        let mut amplitudes = Vec::with_capacity(m.rows() * m.cols());
        for a in 0..m.rows() {
            for b in 0..m.cols() {
                amplitudes.push(m[(a, b)]);
            }
        }
        Self::new(m.rows(), m.cols(), amplitudes)
    }

    /// Schmidt decomposition via SVD of the dual matrix.
    ///
    /// `rank` counts coefficients `λ_j > cutoff · λ_0`.
    pub fn schmidt_decompose(&self, cutoff: f64) -> Result<SchmidtDecomposition> {
        let dual = self.to_dual();
        let svd = dual.matrix.svd()?;
        if svd.sigma.first().copied().unwrap_or(0.0) == 0.0 {
            return Err(Error::Input("cannot decompose the zero vector".into()));
        }
        // ψ_{ab} = Σ_j σ_j U_{aj} (V†)_{jb}: the B-side Schmidt vectors are
        // the rows of V† read as columns, i.e. the conjugated columns of V.
        let basis_b = svd.vdag.transpose();
        let rank = svd.rank(cutoff);
        Ok(SchmidtDecomposition {
            coefficients: svd.sigma,
            basis_a: svd.u,
            basis_b,
            rank,
        })
    }

    /// Projectors onto the spans of the first `rank` Schmidt vectors.
    pub fn supports(&self, cutoff: f64) -> Result<SupportProjectors> {
        let s = self.schmidt_decompose(cutoff)?;
        Ok(SupportProjectors {
            proj_a: projector_from_columns(&s.basis_a, s.rank),
            proj_b: projector_from_columns(&s.basis_b, s.rank),
            rank: s.rank,
        })
    }

    /// Haar-like random state, a deterministic function of `seed`, redrawn
    /// until it has full Schmidt rank at the default cutoff.
    pub fn random(dim_a: usize, dim_b: usize, seed: u64) -> Result<Self> {
        if dim_a == 0 || dim_b == 0 {
            return Err(Error::Input("state dimensions must be positive".into()));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        loop {
            let g = crate::numerics::complex_gaussian(dim_a * dim_b, 1, &mut rng);
            let norm = g.frobenius_norm();
            if norm < 1e-3 {
                continue;
            }
            let amplitudes: Vec<C64> = g
                .entries()
                .iter()
                .map(|z| z / C64::new(norm, 0.0))
                .collect();
            let state = Self::new(dim_a, dim_b, amplitudes)?;
            let s = state.schmidt_decompose(crate::RANK_CUTOFF)?;
            if s.rank == dim_a.min(dim_b) {
                return Ok(state);
            }
        }
    }
}

impl SchmidtDecomposition {
    /// Squared coefficients, the distribution compared under majorization.
    pub fn squared(&self) -> Vec<f64> {
        self.coefficients.iter().map(|x| x * x).collect()
    }

    /// Rebuild the amplitude vector `Σ_j λ_j |ā_j⟩ ⊗ |b̄_j⟩`.
    pub fn reconstruct(&self) -> Vec<C64> {
        let da = self.basis_a.rows();
        let db = self.basis_b.rows();
        let mut out = vec![C64::ZERO; da * db];
        for (j, &lam) in self.coefficients.iter().enumerate() {
            for a in 0..da {
                for b in 0..db {
                    out[a * db + b] += C64::new(lam, 0.0) * self.basis_a[(a, j)] * self.basis_b[(b, j)];
                }
            }
        }
        out
    }
}

impl DualOperator {
    /// Rank by singular values above `cutoff` relative to the largest.
    pub fn rank(&self, cutoff: f64) -> Result<usize> {
        Ok(self.matrix.svd()?.rank(cutoff))
    }
}

fn projector_from_columns(basis: &CMatrix, rank: usize) -> CMatrix {
    let n = basis.rows();
    let mut p = CMatrix::zeros(n, n);
    for j in 0..rank {
        for r in 0..n {
            for c in 0..n {
                p[(r, c)] += basis[(r, j)] * basis[(c, j)].conj();
            }
        }
    }
    p
}
