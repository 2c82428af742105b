//! Separable operations as lists of product Kraus pairs: closure validation,
//! action on density matrices, certification of deterministic pure-to-pure
//! maps, restriction to the supports of an input state,
//! proportional-to-unitary detection, and a two-qubit LOCC fixture
//! constructor realizing any majorization-allowed qubit transformation.

use crate::criteria::SchmidtSpectrum;
use crate::numerics::{phase_align, C64, CMatrix};
use crate::states::{BipartiteState, SupportProjectors};
use crate::{Error, Result, DEFAULT_TOL, RANK_CUTOFF};

/// One product Kraus term `A ⊗ B`.
#[derive(Debug, Clone)]
pub struct KrausPair {
    /// Operator on the A factor, `dA x dA`.
    pub a: CMatrix,
    /// Operator on the B factor, `dB x dB`.
    pub b: CMatrix,
}

/// A separable operation `ρ ↦ Σ_m (A_m ⊗ B_m) ρ (A_m ⊗ B_m)†`.
///
/// Construction checks shapes only; whether the closure condition
/// `Σ_m A_m†A_m ⊗ B_m†B_m = I ⊗ I` holds is reported by
/// [`SeparableOperation::validate_closure`], so that near-miss operations can
/// be represented and diagnosed.
#[derive(Debug, Clone)]
pub struct SeparableOperation {
    dim_a: usize,
    dim_b: usize,
    pairs: Vec<KrausPair>,
}

/// Closure-condition check result.
#[derive(Debug, Clone)]
pub struct ClosureReport {
    /// `residual ≤ tol`.
    pub valid: bool,
    /// `‖Σ_m A_m†A_m ⊗ B_m†B_m − I⊗I‖_F`.
    pub residual: f64,
}

/// Witness that an operation maps a specific pure state to a pure state.
#[derive(Debug, Clone)]
pub struct DeterministicCertificate {
    /// The common output state φ.
    pub phi: BipartiteState,
    /// Branch probabilities `p_m = ‖(A_m⊗B_m)|ψ⟩‖²`; sums to 1 for a
    /// closure-valid operation.
    pub probabilities: Vec<f64>,
    /// Per-branch phases θ_m with `(A_m⊗B_m)|ψ⟩ = e^{iθ_m} √p_m |φ⟩`.
    pub branch_phases: Vec<f64>,
}

/// Result of testing whether every branch emits the same pure state.
#[derive(Debug, Clone)]
pub enum DeterministicOutcome {
    Deterministic(DeterministicCertificate),
    /// `witness_m` is the 1-based index of the first branch whose output is
    /// not phase-proportional to the reference branch's.
    NotDeterministic { witness_m: usize },
}

/// A separable operation cut down to the supports of an input state.
#[derive(Debug, Clone)]
pub struct RestrictedOperation {
    /// Pairs `A′_m = A_m P_A`, `B′_m = B_m P_B`.
    pub operation: SeparableOperation,
    /// The support projectors that were multiplied in.
    pub supports: SupportProjectors,
}

/// Per-pair proportionality record of [`SeparableOperation::unitary_proportionality`].
#[derive(Debug, Clone)]
pub struct PairProportionality {
    pub unitary_proportional_a: bool,
    /// Common singular value of `A′_m` on the support (0 for a vanishing branch).
    pub scale_a: f64,
    pub unitary_proportional_b: bool,
    pub scale_b: f64,
}

/// Outcome of testing every restricted Kraus factor for proportionality to a
/// unitary on the input supports.
#[derive(Debug, Clone)]
pub struct ProportionalityCertificate {
    pub per_pair: Vec<PairProportionality>,
    /// `f[m][n]` with `A_m†A_m ⊗ B_m†B_m = f[m][n] · (A_n†A_n ⊗ B_n†B_n)` on
    /// the supports; present exactly when every pair is proportional.
    pub pairwise_factors: Option<Vec<Vec<f64>>>,
}

impl ProportionalityCertificate {
    pub fn all_proportional(&self) -> bool {
        self.per_pair
            .iter()
            .all(|p| p.unitary_proportional_a && p.unitary_proportional_b)
    }
}

impl SeparableOperation {
    /// Structural constructor: nonempty pair list, square factors, equal
    /// dimensions across pairs.
    pub fn new(pairs: Vec<KrausPair>) -> Result<Self> {
        let first = pairs
            .first()
            .ok_or_else(|| Error::Input("operation needs at least one Kraus pair".into()))?;
        if !first.a.is_square() || !first.b.is_square() {
            return Err(Error::Input("Kraus factors must be square".into()));
        }
        let dim_a = first.a.rows();
        let dim_b = first.b.rows();
        for (i, p) in pairs.iter().enumerate() {
            if p.a.rows() != dim_a || p.a.cols() != dim_a || p.b.rows() != dim_b || p.b.cols() != dim_b
            {
                return Err(Error::Input(format!(
                    "pair {i} has dimensions {}x{} ⊗ {}x{}, expected {dim_a}x{dim_a} ⊗ {dim_b}x{dim_b}",
                    p.a.rows(),
                    p.a.cols(),
                    p.b.rows(),
                    p.b.cols()
                )));
            }
        }
        Ok(Self {
            dim_a,
            dim_b,
            pairs,
        })
    }

    /// The identity channel as a single-pair operation.
    pub fn identity(dim_a: usize, dim_b: usize) -> Self {
        Self {
            dim_a,
            dim_b,
            pairs: vec![KrausPair {
                a: CMatrix::identity(dim_a),
                b: CMatrix::identity(dim_b),
            }],
        }
    }

    /// Seeded random separable operation from two independent local
    /// instruments (`branches_a` x `branches_b` pairs); closure holds by
    /// construction.
    pub fn random_product_instrument(
        dim_a: usize,
        dim_b: usize,
        branches_a: usize,
        branches_b: usize,
        seed: u64,
    ) -> Result<Self> {
        let ops_a = random_instrument(dim_a, branches_a, seed)?;
        let ops_b = random_instrument(dim_b, branches_b, seed.wrapping_add(0x9e37_79b9_7f4a_7c15))?;
        let mut pairs = Vec::with_capacity(branches_a * branches_b);
        for a in &ops_a {
            for b in &ops_b {
                pairs.push(KrausPair {
                    a: a.clone(),
                    b: b.clone(),
                });
            }
        }
        Self::new(pairs)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn pairs(&self) -> &[KrausPair] {
        &self.pairs
    }

    /// Check the closure condition `Σ_m A_m†A_m ⊗ B_m†B_m = I⊗I`.
    pub fn validate_closure(&self, tol: f64) -> ClosureReport {
        let residual = self
            .closure_sum()
            .sub(&CMatrix::identity(self.dim_a * self.dim_b))
            .frobenius_norm();
        ClosureReport {
            valid: residual <= tol,
            residual,
        }
    }

    fn closure_sum(&self) -> CMatrix {
        let mut sum = CMatrix::zeros(self.dim_a * self.dim_b, self.dim_a * self.dim_b);
        for p in &self.pairs {
            let ga = p.a.adjoint().mul(&p.a);
            let gb = p.b.adjoint().mul(&p.b);
            sum = sum.add(&ga.kron(&gb));
        }
        sum
    }

    /// Apply to a density matrix: `Σ_m (A_m⊗B_m) ρ (A_m⊗B_m)†`.
    ///
    /// The input must be Hermitian, positive semidefinite, unit trace, and of
    /// matching dimension.
    pub fn apply(&self, rho: &CMatrix) -> Result<CMatrix> {
        let d = self.dim_a * self.dim_b;
        if rho.rows() != d || rho.cols() != d {
            return Err(Error::Input(format!(
                "density matrix is {}x{}, operation acts on {d}x{d}",
                rho.rows(),
                rho.cols()
            )));
        }
        validate_density(rho, DEFAULT_TOL)?;
        let mut out = CMatrix::zeros(d, d);
        for p in &self.pairs {
            let k = p.a.kron(&p.b);
            out = out.add(&k.mul(rho).mul(&k.adjoint()));
        }
        Ok(out)
    }

    /// Does this operation map `psi` deterministically to a pure state?
    ///
    /// Each branch output is compared, as a dual matrix, against the first
    /// branch with norm above `tol`; a branch that fails to phase-align
    /// names itself as the witness. Branches annihilating `psi` are allowed
    /// with probability 0.
    pub fn check_deterministic(
        &self,
        psi: &BipartiteState,
        tol: f64,
    ) -> Result<DeterministicOutcome> {
        if psi.dim_a() != self.dim_a || psi.dim_b() != self.dim_b {
            return Err(Error::Input(format!(
                "state is {}x{}, operation acts on {}x{}",
                psi.dim_a(),
                psi.dim_b(),
                self.dim_a,
                self.dim_b
            )));
        }
        let dual = psi.to_dual().matrix;
        let outputs: Vec<CMatrix> = self
            .pairs
            .iter()
            .map(|p| p.a.mul(&dual).mul(&p.b.transpose()))
            .collect();
        let norms: Vec<f64> = outputs.iter().map(|m| m.frobenius_norm()).collect();
        let reference = norms
            .iter()
            .position(|&n| n > tol)
            .ok_or_else(|| Error::Input("every branch annihilates the state".into()))?;
        let phi_matrix = outputs[reference].scale(C64::new(1.0 / norms[reference], 0.0));

        let mut probabilities = Vec::with_capacity(outputs.len());
        let mut branch_phases = Vec::with_capacity(outputs.len());
        for (m, out) in outputs.iter().enumerate() {
            probabilities.push(norms[m] * norms[m]);
            if norms[m] <= tol {
                branch_phases.push(0.0);
                continue;
            }
            let direction = out.scale(C64::new(1.0 / norms[m], 0.0));
            let aligned = phase_align(&direction, &phi_matrix, tol)?;
            if !aligned.matched {
                return Ok(DeterministicOutcome::NotDeterministic { witness_m: m + 1 });
            }
            branch_phases.push(aligned.theta.unwrap_or(0.0));
        }

        let phi = BipartiteState::from_dual(&crate::states::DualOperator {
            matrix: phi_matrix,
        })?;
        Ok(DeterministicOutcome::Deterministic(
            DeterministicCertificate {
                phi,
                probabilities,
                branch_phases,
            },
        ))
    }

    /// Multiply the support projectors of `psi` into every pair.
    ///
    /// The restricted operation acts identically on `psi` and satisfies the
    /// closure condition with `P_A ⊗ P_B` in place of the identity.
    pub fn restrict_to_supports(&self, psi: &BipartiteState) -> Result<RestrictedOperation> {
        let supports = psi.supports(RANK_CUTOFF)?;
        let pairs = self
            .pairs
            .iter()
            .map(|p| KrausPair {
                a: p.a.mul(&supports.proj_a),
                b: p.b.mul(&supports.proj_b),
            })
            .collect();
        Ok(RestrictedOperation {
            operation: SeparableOperation {
                dim_a: self.dim_a,
                dim_b: self.dim_b,
                pairs,
            },
            supports,
        })
    }

    /// After restricting to the supports of `psi`, test each Kraus factor
    /// for proportionality to a unitary (all singular values on the support
    /// equal) and compute the pairwise scale factors when all pass.
    pub fn unitary_proportionality(
        &self,
        psi: &BipartiteState,
        tol: f64,
    ) -> Result<ProportionalityCertificate> {
        let restricted = self.restrict_to_supports(psi)?;
        let rank = restricted.supports.rank;
        let mut per_pair = Vec::with_capacity(self.pairs.len());
        for p in &restricted.operation.pairs {
            let (prop_a, scale_a) = proportional_on_support(&p.a, rank, tol)?;
            let (prop_b, scale_b) = proportional_on_support(&p.b, rank, tol)?;
            per_pair.push(PairProportionality {
                unitary_proportional_a: prop_a,
                scale_a,
                unitary_proportional_b: prop_b,
                scale_b,
            });
        }
        let cert = ProportionalityCertificate {
            pairwise_factors: None,
            per_pair,
        };
        if !cert.all_proportional() {
            return Ok(cert);
        }
        let weights: Vec<f64> = cert
            .per_pair
            .iter()
            .map(|p| (p.scale_a * p.scale_b).powi(2))
            .collect();
        let factors = weights
            .iter()
            .map(|&wm| {
                weights
                    .iter()
                    .map(|&wn| if wn > 0.0 { wm / wn } else { 0.0 })
                    .collect()
            })
            .collect();
        Ok(ProportionalityCertificate {
            pairwise_factors: Some(factors),
            ..cert
        })
    }
}

impl RestrictedOperation {
    /// `‖Σ_m A′_m†A′_m ⊗ B′_m†B′_m − P_A⊗P_B‖_F`.
    pub fn closure_residual_vs_supports(&self) -> f64 {
        self.operation
            .closure_sum()
            .sub(&self.supports.proj_a.kron(&self.supports.proj_b))
            .frobenius_norm()
    }
}

/// Singular values of `M` on a rank-`r` support: proportional-to-unitary
/// means the top `r` values are equal within `tol` (relative), or the whole
/// operator vanishes (scale 0).
fn proportional_on_support(m: &CMatrix, rank: usize, tol: f64) -> Result<(bool, f64)> {
    let svd = m.svd()?;
    let top = svd.sigma.first().copied().unwrap_or(0.0);
    if top <= tol {
        return Ok((true, 0.0));
    }
    let values = &svd.sigma[..rank.min(svd.sigma.len())];
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let scale = values.iter().sum::<f64>() / values.len() as f64;
    Ok(((top - min) <= tol * top.max(1.0), scale))
}

/// Deterministic two-outcome LOCC protocol turning a two-qubit state with
/// spectrum `lambda` into one with spectrum `mu`, written in the Schmidt
/// bases of the two states.
///
/// Branch 1 applies `diag(a_0, a_1) ⊗ I`; branch 2 applies
/// `X·diag(b_0, b_1) ⊗ X`, i.e. a measurement on A whose second outcome is
/// corrected by bit flips on both sides. Requires `μ_0 ≥ λ_0` (majorization),
/// a non-degenerate target, and an entangled source.
pub fn construct_two_qubit_locc(
    lambda: &SchmidtSpectrum,
    mu: &SchmidtSpectrum,
) -> Result<SeparableOperation> {
    if lambda.values().len() != 2 || mu.values().len() != 2 {
        return Err(Error::Input("spectra must have exactly two entries".into()));
    }
    let (l0, l1) = (lambda.values()[0], lambda.values()[1]);
    let (m0, m1) = (mu.values()[0], mu.values()[1]);
    if l1 <= 0.0 {
        return Err(Error::Input(
            "source spectrum is product (λ_1 = 0); nothing to transform".into(),
        ));
    }
    if m0 < l0 - 1e-12 {
        return Err(Error::Input(format!(
            "target must majorize source: μ_0 = {m0} < λ_0 = {l0}"
        )));
    }
    if (l0 - m0).abs() <= 1e-12 {
        // Equal spectra: the transformation is the identity.
        return Ok(SeparableOperation::identity(2, 2));
    }
    if m0 - m1 <= 1e-12 {
        return Err(Error::Input(
            "degenerate target spectrum needs no measurement; use equal spectra instead".into(),
        ));
    }

    let p = (l0 * l0 - m1 * m1) / (m0 * m0 - m1 * m1);
    let sp = p.sqrt();
    let sq = (1.0 - p).max(0.0).sqrt();
    let a0 = sp * m0 / l0;
    let a1 = sp * m1 / l1;
    let b0 = sq * m1 / l0;
    let b1 = sq * m0 / l1;
    let zero = C64::ZERO;
    let a_first = CMatrix::from_rows(&[
        vec![C64::new(a0, 0.0), zero],
        vec![zero, C64::new(a1, 0.0)],
    ]);
    // X · diag(b0, b1): the flip is folded into the measurement operator so
    // the branch lands on the target support.
    let a_second = CMatrix::from_rows(&[
        vec![zero, C64::new(b1, 0.0)],
        vec![C64::new(b0, 0.0), zero],
    ]);
    SeparableOperation::new(vec![
        KrausPair {
            a: a_first,
            b: CMatrix::identity(2),
        },
        KrausPair {
            a: a_second,
            b: CMatrix::pauli_x(),
        },
    ])
}

/// Seeded local instrument: `branches` square Kraus operators with
/// `Σ_m K_m†K_m = I`, drawn from the Haar isometry construction.
pub fn random_instrument(dim: usize, branches: usize, seed: u64) -> Result<Vec<CMatrix>> {
    if dim == 0 || branches == 0 {
        return Err(Error::Input("instrument needs positive dimensions".into()));
    }
    let big = crate::numerics::haar_unitary(dim * branches, seed)?;
    let mut blocks = Vec::with_capacity(branches);
    for m in 0..branches {
        let mut k = CMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                k[(i, j)] = big[(m * dim + i, j)];
            }
        }
        blocks.push(k);
    }
    Ok(blocks)
}

/// Partial transpose on the B factor, the positivity surrogate for
/// separability at small dimensions.
pub fn partial_transpose(rho: &CMatrix, dim_a: usize, dim_b: usize) -> Result<CMatrix> {
    let d = dim_a * dim_b;
    if rho.rows() != d || rho.cols() != d {
        return Err(Error::Input(format!(
            "matrix is {}x{}, expected {d}x{d}",
            rho.rows(),
            rho.cols()
        )));
    }
    let mut out = CMatrix::zeros(d, d);
    for a1 in 0..dim_a {
        for b1 in 0..dim_b {
            for a2 in 0..dim_a {
                for b2 in 0..dim_b {
                    out[(a1 * dim_b + b2, a2 * dim_b + b1)] =
                        rho[(a1 * dim_b + b1, a2 * dim_b + b2)];
                }
            }
        }
    }
    Ok(out)
}

/// Hermitian, PSD (within a `−tol` eigenvalue floor), unit trace.
fn validate_density(rho: &CMatrix, tol: f64) -> Result<()> {
    let scale = rho.frobenius_norm().max(1.0);
    if rho.hermiticity_residual() > tol * scale {
        return Err(Error::Input("density matrix is not Hermitian".into()));
    }
    if (rho.trace().re - 1.0).abs() > tol {
        return Err(Error::Input(format!(
            "density matrix has trace {}, expected 1",
            rho.trace().re
        )));
    }
    let eig = rho.hermitian_eig()?;
    if let Some(&min) = eig.values.last() {
        if min < -tol * scale {
            return Err(Error::Input(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// The two-qubit random-unitary example: branches `√p·I⊗I` and
    /// `√(1−p)·X⊗Z`.
    fn example_op(p: f64) -> SeparableOperation {
        let sp = p.sqrt();
        let sq = (1.0 - p).sqrt();
        SeparableOperation::new(vec![
            KrausPair {
                a: CMatrix::identity(2).scale(c(sp, 0.0)),
                b: CMatrix::identity(2),
            },
            KrausPair {
                a: CMatrix::pauli_x().scale(c(sq, 0.0)),
                b: CMatrix::pauli_z(),
            },
        ])
        .unwrap()
    }

    /// The balanced state ½(|00⟩+|01⟩+|10⟩−|11⟩) fixed by the example.
    fn balanced_state() -> BipartiteState {
        BipartiteState::new(
            2,
            2,
            vec![c(0.5, 0.0), c(0.5, 0.0), c(0.5, 0.0), c(-0.5, 0.0)],
        )
        .unwrap()
    }

    fn basis_ket(dim_a: usize, dim_b: usize, a: usize, b: usize) -> BipartiteState {
        let mut amps = vec![C64::ZERO; dim_a * dim_b];
        amps[a * dim_b + b] = c(1.0, 0.0);
        BipartiteState::new(dim_a, dim_b, amps).unwrap()
    }

    fn spec2(squares: [f64; 2]) -> SchmidtSpectrum {
        SchmidtSpectrum::from_squares(&squares).unwrap()
    }

    #[test]
    fn constructor_validates_shapes() {
        assert!(SeparableOperation::new(vec![]).is_err());
        let bad = SeparableOperation::new(vec![
            KrausPair {
                a: CMatrix::identity(2),
                b: CMatrix::identity(2),
            },
            KrausPair {
                a: CMatrix::identity(3),
                b: CMatrix::identity(2),
            },
        ]);
        assert!(bad.is_err());
        assert!(SeparableOperation::new(vec![KrausPair {
            a: CMatrix::zeros(2, 3),
            b: CMatrix::identity(2),
        }])
        .is_err());
    }

    #[test]
    fn identity_operation_closure_is_exact() {
        let op = SeparableOperation::identity(2, 2);
        let r = op.validate_closure(1e-9);
        assert!(r.valid);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn example_operation_satisfies_closure() {
        let r = example_op(0.3).validate_closure(1e-9);
        assert!(r.valid, "residual {}", r.residual);
    }

    #[test]
    fn deleting_a_branch_breaks_closure_by_known_amount() {
        let full = example_op(0.3);
        let only_first = SeparableOperation::new(vec![KrausPair {
            a: full.pairs()[0].a.clone(),
            b: full.pairs()[0].b.clone(),
        }])
        .unwrap();
        let r = only_first.validate_closure(1e-9);
        assert!(!r.valid);
        // Missing term is 0.7·I₄, whose Frobenius norm is 0.7·2.
        assert!((r.residual - 1.4).abs() <= 1e-12);
    }

    #[test]
    fn apply_identity_preserves_rho() {
        let rho = balanced_state().density();
        let out = SeparableOperation::identity(2, 2).apply(&rho).unwrap();
        assert!(out.approx_eq(&rho, 1e-12));
    }

    #[test]
    fn apply_example_fixes_balanced_state() {
        for p in [0.1, 0.3, 0.5, 0.9] {
            let rho = balanced_state().density();
            let out = example_op(p).apply(&rho).unwrap();
            assert!(out.approx_eq(&rho, 1e-12), "not fixed at p={p}");
        }
    }

    #[test]
    fn apply_example_mixes_basis_ket() {
        let rho = basis_ket(2, 2, 0, 0).density();
        let out = example_op(0.5).apply(&rho).unwrap();
        // Half stays at |00⟩, half is moved to |10⟩ by X⊗Z.
        let mut expected = CMatrix::zeros(4, 4);
        expected[(0, 0)] = c(0.5, 0.0);
        expected[(2, 2)] = c(0.5, 0.0);
        assert!(out.approx_eq(&expected, 1e-12));
    }

    #[test]
    fn apply_rejects_malformed_densities() {
        let op = SeparableOperation::identity(2, 2);
        assert!(op.apply(&CMatrix::identity(3)).is_err());
        // Trace 2:
        assert!(op.apply(&CMatrix::identity(4)).is_err());
        // Not Hermitian:
        let mut bad = CMatrix::zeros(4, 4);
        bad[(0, 0)] = c(1.0, 0.0);
        bad[(0, 1)] = c(0.5, 0.0);
        assert!(op.apply(&bad).is_err());
        // Hermitian, unit trace, not PSD:
        let mut neg = CMatrix::zeros(4, 4);
        neg[(0, 0)] = c(1.5, 0.0);
        neg[(1, 1)] = c(-0.5, 0.0);
        assert!(op.apply(&neg).is_err());
    }

    #[test]
    fn apply_preserves_trace_on_random_instruments() {
        for seed in 0..10u64 {
            let op = SeparableOperation::random_product_instrument(2, 3, 2, 2, seed).unwrap();
            assert!(op.validate_closure(1e-9).valid);
            let psi = BipartiteState::random(2, 3, seed.wrapping_add(100)).unwrap();
            let out = op.apply(&psi.density()).unwrap();
            assert!((out.trace().re - 1.0).abs() <= 1e-9);
            // Output stays PSD.
            let eig = out.hermitian_eig().unwrap();
            assert!(eig.values.iter().all(|&v| v >= -1e-10));
        }
    }

    #[test]
    fn apply_to_product_state_keeps_ppt() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (da, db) in [(2usize, 2usize), (2, 3)] {
            for trial in 0..5u64 {
                let seed = trial * 17 + da as u64;
                let op =
                    SeparableOperation::random_product_instrument(da, db, 2, 2, seed).unwrap();
                // Random product density: mixture of two product kets.
                let mut rho = CMatrix::zeros(da * db, da * db);
                for _ in 0..2 {
                    let ka = crate::numerics::complex_gaussian(da, 1, &mut rng);
                    let kb = crate::numerics::complex_gaussian(db, 1, &mut rng);
                    let prod = ka.kron(&kb);
                    rho = rho.add(&prod.mul(&prod.adjoint()));
                }
                let trace = rho.trace().re;
                rho = rho.scale(c(1.0 / trace, 0.0));
                let out = op.apply(&rho).unwrap();
                let pt = partial_transpose(&out, da, db).unwrap();
                let eig = pt.hermitian_eig().unwrap();
                assert!(
                    eig.values.iter().all(|&v| v >= -1e-9),
                    "PPT violated at ({da},{db}) seed {seed}"
                );
            }
        }
    }

    #[test]
    fn identity_is_deterministic_on_any_state() {
        let psi = BipartiteState::random(2, 2, 5).unwrap();
        let out = SeparableOperation::identity(2, 2)
            .check_deterministic(&psi, 1e-9)
            .unwrap();
        match out {
            DeterministicOutcome::Deterministic(cert) => {
                assert_eq!(cert.probabilities.len(), 1);
                assert!((cert.probabilities[0] - 1.0).abs() <= 1e-12);
                assert!(cert
                    .phi
                    .ket()
                    .approx_eq(&psi.ket(), 1e-12));
            }
            DeterministicOutcome::NotDeterministic { .. } => panic!("identity must be deterministic"),
        }
    }

    #[test]
    fn example_is_deterministic_on_its_pure_state_family() {
        // a|00⟩ + b|01⟩ + a|10⟩ − b|11⟩, normalized.
        let a = c(0.6, 0.0);
        let b = C64::from_polar(0.8, std::f64::consts::FRAC_PI_4);
        let norm = (2.0 * (a.norm_sqr() + b.norm_sqr())).sqrt();
        let amps: Vec<C64> = [a, b, a, -b].iter().map(|z| z / c(norm, 0.0)).collect();
        let psi = BipartiteState::new(2, 2, amps).unwrap();
        for p in [0.1, 0.3, 0.5, 0.9] {
            let out = example_op(p).check_deterministic(&psi, 1e-9).unwrap();
            match out {
                DeterministicOutcome::Deterministic(cert) => {
                    let total: f64 = cert.probabilities.iter().sum();
                    assert!((total - 1.0).abs() <= 1e-9);
                    assert!((cert.probabilities[0] - p).abs() <= 1e-9);
                }
                DeterministicOutcome::NotDeterministic { witness_m } => {
                    panic!("family state must be deterministic, witness {witness_m}")
                }
            }
        }
    }

    #[test]
    fn example_is_not_deterministic_on_basis_ket() {
        let out = example_op(0.5)
            .check_deterministic(&basis_ket(2, 2, 0, 0), 1e-9)
            .unwrap();
        match out {
            DeterministicOutcome::NotDeterministic { witness_m } => assert_eq!(witness_m, 2),
            DeterministicOutcome::Deterministic(_) => panic!("|00⟩ must mix under the example"),
        }
    }

    #[test]
    fn zero_branches_are_allowed_with_probability_zero() {
        let proj0 = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let proj1 = CMatrix::from_real(&[&[0.0, 0.0], &[0.0, 1.0]]);
        let op = SeparableOperation::new(vec![
            KrausPair {
                a: proj0,
                b: CMatrix::identity(2),
            },
            KrausPair {
                a: proj1,
                b: CMatrix::identity(2),
            },
        ])
        .unwrap();
        assert!(op.validate_closure(1e-12).valid);
        let out = op.check_deterministic(&basis_ket(2, 2, 0, 0), 1e-9).unwrap();
        match out {
            DeterministicOutcome::Deterministic(cert) => {
                assert!((cert.probabilities[0] - 1.0).abs() <= 1e-12);
                assert!(cert.probabilities[1].abs() <= 1e-12);
            }
            DeterministicOutcome::NotDeterministic { .. } => {
                panic!("projective measurement of an eigenket is deterministic")
            }
        }
    }

    #[test]
    fn reference_branch_skips_zero_branches() {
        let proj0 = CMatrix::from_real(&[&[1.0, 0.0], &[0.0, 0.0]]);
        let proj1 = CMatrix::from_real(&[&[0.0, 0.0], &[0.0, 1.0]]);
        // First listed branch annihilates |00⟩; the second is the reference.
        let op = SeparableOperation::new(vec![
            KrausPair {
                a: proj1,
                b: CMatrix::identity(2),
            },
            KrausPair {
                a: proj0,
                b: CMatrix::identity(2),
            },
        ])
        .unwrap();
        let out = op.check_deterministic(&basis_ket(2, 2, 0, 0), 1e-9).unwrap();
        match out {
            DeterministicOutcome::Deterministic(cert) => {
                assert!(cert.probabilities[0].abs() <= 1e-12);
                assert!((cert.probabilities[1] - 1.0).abs() <= 1e-12);
                assert!(cert.phi.ket().approx_eq(&basis_ket(2, 2, 0, 0).ket(), 1e-12));
            }
            DeterministicOutcome::NotDeterministic { .. } => panic!("must be deterministic"),
        }
    }

    #[test]
    fn all_branches_annihilating_is_an_error() {
        let proj1 = CMatrix::from_real(&[&[0.0, 0.0], &[0.0, 1.0]]);
        let op = SeparableOperation::new(vec![KrausPair {
            a: proj1,
            b: CMatrix::identity(2),
        }])
        .unwrap();
        assert!(op
            .check_deterministic(&basis_ket(2, 2, 0, 0), 1e-9)
            .is_err());
    }

    #[test]
    fn restriction_of_full_rank_state_is_identity_projection() {
        let op = example_op(0.3);
        let psi = balanced_state();
        let restricted = op.restrict_to_supports(&psi).unwrap();
        assert!(restricted.supports.proj_a.approx_eq(&CMatrix::identity(2), 1e-10));
        for (orig, r) in op.pairs().iter().zip(restricted.operation.pairs()) {
            assert!(orig.a.approx_eq(&r.a, 1e-10));
            assert!(orig.b.approx_eq(&r.b, 1e-10));
        }
        assert!(restricted.closure_residual_vs_supports() <= 1e-9);
    }

    #[test]
    fn restriction_closes_on_supports_of_embedded_state() {
        // Embed the example op block-diagonally into 3x3 factors.
        let embed = |m: &CMatrix| {
            let mut out = CMatrix::zeros(3, 3);
            for i in 0..2 {
                for j in 0..2 {
                    out[(i, j)] = m[(i, j)];
                }
            }
            // Keep the third direction intact so closure still holds.
            out[(2, 2)] = c(1.0, 0.0);
            out
        };
        let small = example_op(0.3);
        let op = SeparableOperation::new(
            small
                .pairs()
                .iter()
                .enumerate()
                .map(|(i, p)| KrausPair {
                    // Scale third directions so Σ over pairs stays = I.
                    a: {
                        let mut a = embed(&p.a);
                        a[(2, 2)] = c(if i == 0 { 1.0 } else { 0.0 }, 0.0);
                        a
                    },
                    b: embed(&p.b),
                })
                .collect(),
        )
        .unwrap();
        assert!(op.validate_closure(1e-9).valid);
        // Rank-2 state living on the embedded block.
        let mut amps = vec![C64::ZERO; 9];
        amps[0] = c(0.8, 0.0);
        amps[4] = c(0.6, 0.0);
        let psi = BipartiteState::new(3, 3, amps).unwrap();
        let restricted = op.restrict_to_supports(&psi).unwrap();
        assert_eq!(restricted.supports.rank, 2);
        assert!(restricted.closure_residual_vs_supports() <= 1e-9);
        // Action on the state is unchanged.
        let dual = psi.to_dual().matrix;
        for (orig, r) in op.pairs().iter().zip(restricted.operation.pairs()) {
            let full = orig.a.mul(&dual).mul(&orig.b.transpose());
            let cut = r.a.mul(&dual).mul(&r.b.transpose());
            assert!(full.approx_eq(&cut, 1e-12));
        }
    }

    #[test]
    fn example_pairs_are_proportional_to_unitaries() {
        let p = 0.3;
        let cert = example_op(p)
            .unitary_proportionality(&balanced_state(), 1e-9)
            .unwrap();
        assert!(cert.all_proportional());
        let pp = &cert.per_pair;
        assert!((pp[0].scale_a - p.sqrt()).abs() <= 1e-12);
        assert!((pp[0].scale_b - 1.0).abs() <= 1e-12);
        assert!((pp[1].scale_a - (1.0 - p).sqrt()).abs() <= 1e-12);
        assert!((pp[1].scale_b - 1.0).abs() <= 1e-12);
        let f = cert.pairwise_factors.unwrap();
        assert!((f[1][0] - (1.0 - p) / p).abs() <= 1e-9);
        assert!((f[0][0] - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn identity_is_proportional_with_unit_scale() {
        let psi = BipartiteState::random(2, 2, 31).unwrap();
        let cert = SeparableOperation::identity(2, 2)
            .unitary_proportionality(&psi, 1e-9)
            .unwrap();
        assert!(cert.all_proportional());
        assert!((cert.per_pair[0].scale_a - 1.0).abs() <= 1e-10);
        assert!((cert.per_pair[0].scale_b - 1.0).abs() <= 1e-10);
    }

    #[test]
    fn locc_fixture_pairs_are_not_proportional_when_spectra_differ() {
        let lambda = spec2([0.7, 0.3]);
        let mu = spec2([0.8, 0.2]);
        let op = construct_two_qubit_locc(&lambda, &mu).unwrap();
        let psi = BipartiteState::new(
            2,
            2,
            vec![c(0.7f64.sqrt(), 0.0), C64::ZERO, C64::ZERO, c(0.3f64.sqrt(), 0.0)],
        )
        .unwrap();
        let cert = op.unitary_proportionality(&psi, 1e-9).unwrap();
        assert!(!cert.all_proportional());
        assert!(cert.pairwise_factors.is_none());
    }

    #[test]
    fn locc_fixture_realizes_target_with_known_probability() {
        let lambda = spec2([0.7, 0.3]);
        let mu = spec2([0.8, 0.2]);
        let op = construct_two_qubit_locc(&lambda, &mu).unwrap();
        let closure = op.validate_closure(1e-10);
        assert!(closure.valid, "closure residual {}", closure.residual);
        let psi = BipartiteState::new(
            2,
            2,
            vec![c(0.7f64.sqrt(), 0.0), C64::ZERO, C64::ZERO, c(0.3f64.sqrt(), 0.0)],
        )
        .unwrap();
        match op.check_deterministic(&psi, 1e-10).unwrap() {
            DeterministicOutcome::Deterministic(cert) => {
                assert!((cert.probabilities[0] - 5.0 / 6.0).abs() <= 1e-10);
                assert!((cert.probabilities[1] - 1.0 / 6.0).abs() <= 1e-10);
                let phi_expected = [c(0.8f64.sqrt(), 0.0), C64::ZERO, C64::ZERO, c(0.2f64.sqrt(), 0.0)];
                let expected = CMatrix::column(&phi_expected);
                assert!(cert.phi.ket().approx_eq(&expected, 1e-10));
            }
            DeterministicOutcome::NotDeterministic { witness_m } => {
                panic!("fixture must be deterministic, witness {witness_m}")
            }
        }
    }

    #[test]
    fn locc_fixture_equal_spectra_is_identity() {
        let lambda = spec2([0.7, 0.3]);
        let op = construct_two_qubit_locc(&lambda, &lambda).unwrap();
        assert_eq!(op.pairs().len(), 1);
        assert!(op.pairs()[0].a.approx_eq(&CMatrix::identity(2), 1e-15));
    }

    #[test]
    fn locc_fixture_rejects_bad_inputs() {
        // Target does not majorize source.
        assert!(construct_two_qubit_locc(&spec2([0.8, 0.2]), &spec2([0.7, 0.3])).is_err());
        // Degenerate target with different source.
        assert!(construct_two_qubit_locc(&spec2([0.6, 0.4]), &spec2([0.5, 0.5])).is_err());
        // Product source.
        assert!(construct_two_qubit_locc(&spec2([1.0, 0.0]), &spec2([1.0, 0.0])).is_err());
        // Wrong length.
        let triple = SchmidtSpectrum::from_squares(&[0.5, 0.3, 0.2]).unwrap();
        assert!(construct_two_qubit_locc(&triple, &spec2([0.8, 0.2])).is_err());
    }

    #[test]
    fn deterministic_certificates_respect_rank_and_product_monotonicity() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(404);
        let mut certified = 0;
        for trial in 0..100u64 {
            let l0: f64 = rng.random_range(0.5..1.0);
            let m0: f64 = rng.random_range(l0..1.0001f64).min(1.0 - 1e-6);
            let lambda = spec2([l0, 1.0 - l0]);
            let mu = spec2([m0, 1.0 - m0]);
            if mu.values()[0] - mu.values()[1] <= 1e-6 || lambda.values()[1] <= 1e-6 {
                continue;
            }
            let op = match construct_two_qubit_locc(&lambda, &mu) {
                Ok(op) => op,
                Err(_) => continue,
            };
            let l = lambda.values();
            let psi = BipartiteState::new(
                2,
                2,
                vec![c(l[0], 0.0), C64::ZERO, C64::ZERO, c(l[1], 0.0)],
            )
            .unwrap();
            match op.check_deterministic(&psi, 1e-9).unwrap() {
                DeterministicOutcome::Deterministic(cert) => {
                    certified += 1;
                    let phi_spec = SchmidtSpectrum::of_state(&cert.phi).unwrap();
                    let psi_spec = SchmidtSpectrum::of_state(&psi).unwrap();
                    assert!(phi_spec.rank() <= psi_spec.rank(), "rank grew at trial {trial}");
                    let pc = crate::criteria::product_condition(&psi_spec, &phi_spec, 1e-9);
                    assert!(pc.holds, "product condition failed at trial {trial}");
                }
                DeterministicOutcome::NotDeterministic { witness_m } => {
                    panic!("fixture not deterministic at trial {trial}, witness {witness_m}")
                }
            }
        }
        assert!(certified >= 50, "too few certified trials: {certified}");
    }
}
