//! Separable random unitary channels `ρ ↦ Σ_m p_m (U_m⊗V_m) ρ (U_m⊗V_m)†`
//! on two factors of equal dimension: validation, the pair conditions that
//! decide when a whole collection of full-rank pure states is mapped
//! deterministically to pure states, and a solver that computes the family
//! of states fixed (up to phase) by every branch via eigenspaces of
//! conjugation superoperators.

use crate::numerics::{phase_align, C64, CMatrix};
use crate::sepops::{DeterministicOutcome, KrausPair, SeparableOperation};
use crate::states::BipartiteState;
use crate::{Error, Result, DEFAULT_TOL, RANK_CUTOFF};
use rand::SeedableRng;

/// One branch of a random unitary channel.
#[derive(Debug, Clone)]
pub struct ChannelTerm {
    /// Branch probability, positive.
    pub probability: f64,
    /// Unitary on the A factor.
    pub u: CMatrix,
    /// Unitary on the B factor.
    pub v: CMatrix,
}

/// A separable random unitary channel on `H_d ⊗ H_d`.
///
/// Construction checks shapes and probability positivity; probability
/// normalization and unitarity are reported by
/// [`RandomUnitaryChannel::validate_channel`] so defective channels can be
/// diagnosed rather than merely rejected.
#[derive(Debug, Clone)]
pub struct RandomUnitaryChannel {
    d: usize,
    terms: Vec<ChannelTerm>,
}

/// Validation report for a channel.
#[derive(Debug, Clone)]
pub struct ChannelReport {
    pub valid: bool,
    /// `Σ_m p_m`, expected 1.
    pub probability_sum: f64,
    /// Per-term `(‖U†U − I‖_F, ‖V†V − I‖_F)`.
    pub unitarity_residuals: Vec<(f64, f64)>,
    /// Closure residual of the induced separable operation.
    pub closure_residual: f64,
}

/// Which of the two dot-equality grids an entry belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionSide {
    /// `U_m†U_n ψ_jψ_k† ≐ ψ_jψ_k† U_m†U_n`.
    USide,
    /// `V_m†V_n ψ_j†ψ_k ≐ ψ_j†ψ_k V_m†V_n`.
    VSide,
}

/// One realized dot-equality. Indices are 1-based, matching the convention
/// that branch and state numbering starts at 1.
#[derive(Debug, Clone)]
pub struct PhaseEntry {
    pub side: ConditionSide,
    pub m: usize,
    pub n: usize,
    pub j: usize,
    pub k: usize,
    pub theta: f64,
}

/// Per-state outcome inside a collection check.
#[derive(Debug, Clone)]
pub struct PerStateReport {
    pub deterministic: bool,
    /// The pure output when deterministic.
    pub phi: Option<BipartiteState>,
}

/// Result of checking a collection of full-rank states against a channel.
#[derive(Debug, Clone)]
pub struct CollectionReport {
    /// The U-side pair condition over the whole grid.
    pub pair_condition_a: bool,
    /// The V-side pair condition over the whole grid.
    pub pair_condition_b: bool,
    pub per_state: Vec<PerStateReport>,
    /// Phases for every matched dot-equality.
    pub phase_table: Vec<PhaseEntry>,
}

/// A common eigenspace of all conjugation superoperators of a channel.
///
/// Every member `C` (a `d x d` dual matrix) satisfies
/// `W_g · C · Ȳ_g = phases[g] · C` for each generator `g`.
#[derive(Debug, Clone)]
pub struct FamilyEigenspace {
    /// One unimodular eigenvalue per generator.
    pub phases: Vec<C64>,
    /// Orthonormal (Frobenius inner product) dual-matrix basis.
    pub basis: Vec<CMatrix>,
    /// Matrix rank of a generic member; full rank means the space supplies
    /// states satisfying the full-Schmidt-rank hypothesis.
    pub generic_member_rank: usize,
}

/// The family of states each branch maps to a common pure state.
#[derive(Debug, Clone)]
pub struct FixedFamily {
    /// `(W_m, Ȳ_m) = (U_1†U_m, V̄_m V̄_1†)` for each term beyond the first.
    pub generator_pairs: Vec<(CMatrix, CMatrix)>,
    pub eigenspaces: Vec<FamilyEigenspace>,
    /// `compatibility[s][t]`: members drawn from spaces `s` and `t` jointly
    /// satisfy both pair-condition grids.
    pub compatibility: Vec<Vec<bool>>,
}

/// End-to-end report of the two-qubit worked example at parameter `p`.
#[derive(Debug, Clone)]
pub struct ExampleReport {
    pub p: f64,
    /// Overlap `|⟨ψ_ref|φ⟩|²` between the known fixed state and the
    /// certified channel output.
    pub fixed_point_fidelity: f64,
    /// Distance of the fixed state's dual matrix from its known closed form.
    pub dual_residual: f64,
    /// Seeded family states checked (both sign branches).
    pub family_samples: usize,
    pub family_failures: usize,
    /// Whether the solver recovered both sign families as eigenspaces.
    pub families_recovered: bool,
    /// Worst projector distance between computed and expected family spans.
    pub family_span_distance: f64,
    pub all_pass: bool,
}

impl RandomUnitaryChannel {
    /// Structural constructor: nonempty terms, square `d x d` factors of a
    /// common dimension, finite positive probabilities.
    pub fn new(terms: Vec<ChannelTerm>) -> Result<Self> {
        let first = terms
            .first()
            .ok_or_else(|| Error::Input("channel needs at least one term".into()))?;
        if !first.u.is_square() || first.u.rows() == 0 {
            return Err(Error::Input("channel unitaries must be square".into()));
        }
        let d = first.u.rows();
        for (i, t) in terms.iter().enumerate() {
            if !t.probability.is_finite() || t.probability <= 0.0 {
                return Err(Error::Input(format!(
                    "term {i} has non-positive probability {}",
                    t.probability
                )));
            }
            for (name, m) in [("U", &t.u), ("V", &t.v)] {
                if m.rows() != d || m.cols() != d {
                    return Err(Error::Input(format!(
                        "term {i} has {name} of shape {}x{}, expected {d}x{d}",
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        Ok(Self { d, terms })
    }

    /// The two-qubit mixing channel `ρ ↦ pρ + (1−p)(X⊗Z)ρ(X⊗Z)`.
    pub fn two_qubit_example(p: f64) -> Result<Self> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Input(format!(
                "mixing parameter must lie strictly inside (0, 1), got {p}"
            )));
        }
        Self::new(vec![
            ChannelTerm {
                probability: p,
                u: CMatrix::identity(2),
                v: CMatrix::identity(2),
            },
            ChannelTerm {
                probability: 1.0 - p,
                u: CMatrix::pauli_x(),
                v: CMatrix::pauli_z(),
            },
        ])
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &[ChannelTerm] {
        &self.terms
    }

    /// The channel as a separable operation with pairs `(√p_m U_m, V_m)`.
    pub fn induced_operation(&self) -> SeparableOperation {
        let pairs = self
            .terms
            .iter()
            .map(|t| KrausPair {
                a: t.u.scale(C64::new(t.probability.sqrt(), 0.0)),
                b: t.v.clone(),
            })
            .collect();
        SeparableOperation::new(pairs).expect("channel terms are shape-checked")
    }

    /// Check probability normalization, unitarity of every factor, and the
    /// induced operation's closure condition.
    pub fn validate_channel(&self, tol: f64) -> ChannelReport {
        let probability_sum: f64 = self.terms.iter().map(|t| t.probability).sum();
        let unitarity_residuals: Vec<(f64, f64)> = self
            .terms
            .iter()
            .map(|t| (t.u.unitarity_residual(), t.v.unitarity_residual()))
            .collect();
        let closure_residual = self.induced_operation().validate_closure(tol).residual;
        let valid = (probability_sum - 1.0).abs() <= tol
            && unitarity_residuals
                .iter()
                .all(|&(ru, rv)| ru <= tol && rv <= tol)
            && closure_residual <= tol;
        ChannelReport {
            valid,
            probability_sum,
            unitarity_residuals,
            closure_residual,
        }
    }

    /// Evaluate both pair-condition grids on a collection of full-Schmidt-rank
    /// states, decide per-state determinism, and cross-validate the
    /// implications connecting them.
    ///
    /// The grids run over ordered term pairs `m ≠ n` and all state pairs
    /// `(j, k)`; equal terms satisfy the conditions identically and are
    /// skipped. A failure of the internal implications (full grid follows
    /// from the `m = 1` slice; one deterministic state plus the conditions
    /// forces all states deterministic; determinism of all states forces the
    /// conditions) is reported as an inconsistency.
    pub fn check_collection(
        &self,
        states: &[BipartiteState],
        tol: f64,
    ) -> Result<CollectionReport> {
        for (j, psi) in states.iter().enumerate() {
            if psi.dim_a() != self.d || psi.dim_b() != self.d {
                return Err(Error::Input(format!(
                    "state {} is {}x{}, channel acts on {}x{}",
                    j + 1,
                    psi.dim_a(),
                    psi.dim_b(),
                    self.d,
                    self.d
                )));
            }
            let rank = psi.schmidt_decompose(RANK_CUTOFF)?.rank;
            if rank != self.d {
                return Err(Error::Input(format!(
                    "state {} has Schmidt rank {rank}, the collection conditions require full rank {}",
                    j + 1,
                    self.d
                )));
            }
        }

        let duals: Vec<CMatrix> = states.iter().map(|s| s.to_dual().matrix).collect();
        let mut phase_table = Vec::new();
        let mut cond = [[true; 2]; 2]; // [side][restricted-to-m1? 1 : full 0]
        for (side_idx, side) in [ConditionSide::USide, ConditionSide::VSide]
            .into_iter()
            .enumerate()
        {
            for m in 0..self.terms.len() {
                for n in 0..self.terms.len() {
                    if m == n {
                        continue;
                    }
                    let t = match side {
                        ConditionSide::USide => {
                            self.terms[m].u.adjoint().mul(&self.terms[n].u)
                        }
                        ConditionSide::VSide => {
                            self.terms[m].v.adjoint().mul(&self.terms[n].v)
                        }
                    };
                    for j in 0..duals.len() {
                        for k in 0..duals.len() {
                            let pair = match side {
                                ConditionSide::USide => duals[j].mul(&duals[k].adjoint()),
                                ConditionSide::VSide => duals[j].adjoint().mul(&duals[k]),
                            };
                            let lhs = t.mul(&pair);
                            let rhs = pair.mul(&t);
                            let aligned = phase_align(&lhs, &rhs, tol)?;
                            if aligned.matched {
                                phase_table.push(PhaseEntry {
                                    side,
                                    m: m + 1,
                                    n: n + 1,
                                    j: j + 1,
                                    k: k + 1,
                                    theta: aligned.theta.unwrap_or(0.0),
                                });
                            } else {
                                cond[side_idx][0] = false;
                                if m == 0 {
                                    cond[side_idx][1] = false;
                                }
                            }
                        }
                    }
                }
            }
        }
        let [pair_condition_a, a_on_m1] = cond[0];
        let [pair_condition_b, b_on_m1] = cond[1];

        let op = self.induced_operation();
        let mut per_state = Vec::with_capacity(states.len());
        for psi in states {
            match op.check_deterministic(psi, tol)? {
                DeterministicOutcome::Deterministic(cert) => per_state.push(PerStateReport {
                    deterministic: true,
                    phi: Some(cert.phi),
                }),
                DeterministicOutcome::NotDeterministic { .. } => per_state.push(PerStateReport {
                    deterministic: false,
                    phi: None,
                }),
            }
        }

        let all_det = per_state.iter().all(|s| s.deterministic);
        let any_det = per_state.iter().any(|s| s.deterministic);
        if all_det && !states.is_empty() && !(pair_condition_a && pair_condition_b) {
            return Err(Error::Inconsistency(
                "every state is deterministic yet a pair condition fails".into(),
            ));
        }
        if (a_on_m1 && !pair_condition_a) || (b_on_m1 && !pair_condition_b) {
            return Err(Error::Inconsistency(
                "pair condition holds on the m = 1 slice but fails on the full grid".into(),
            ));
        }
        if (pair_condition_a || pair_condition_b) && any_det && !all_det {
            return Err(Error::Inconsistency(
                "pair conditions with one deterministic state must make every state deterministic"
                    .into(),
            ));
        }

        Ok(CollectionReport {
            pair_condition_a,
            pair_condition_b,
            per_state,
            phase_table,
        })
    }

    /// Solve for the family of dual matrices fixed up to phase by every
    /// branch: common eigenspaces of the conjugation superoperators
    /// `C ↦ W_m C Ȳ_m`.
    ///
    /// Eigenvalues within 1e-8 of each other on the unit circle are merged.
    /// Rank is reported per space (from a generic member), never filtered:
    /// the linear family legitimately contains rank-deficient members.
    pub fn fixed_states(&self, tol: f64) -> Result<FixedFamily> {
        let d = self.d;
        let dim = d * d;
        let generator_pairs: Vec<(CMatrix, CMatrix)> = self
            .terms
            .iter()
            .skip(1)
            .map(|t| {
                let w = self.terms[0].u.adjoint().mul(&t.u);
                // Ȳ = V̄_m V̄_1† with V̄ the plain transpose.
                let ybar = t.v.transpose().mul(&self.terms[0].v.conj());
                (w, ybar)
            })
            .collect();

        // Intersect eigenspaces generator by generator.
        let mut spaces: Vec<(Vec<C64>, CMatrix)> = vec![(Vec::new(), CMatrix::identity(dim))];
        for (w, ybar) in &generator_pairs {
            let superop = w.kron(&ybar.transpose());
            let eigen = superop.unitary_eigenspaces(1e-8)?;
            let mut next = Vec::new();
            for (phases, basis) in &spaces {
                for space in &eigen {
                    if let Some(common) = subspace_intersection(basis, &space.basis) {
                        let mut p = phases.clone();
                        p.push(space.eigenvalue);
                        next.push((p, common));
                    }
                }
            }
            spaces = next;
        }

        let mut eigenspaces = Vec::with_capacity(spaces.len());
        for (phases, basis) in &spaces {
            let members: Vec<CMatrix> = (0..basis.cols())
                .map(|c| vec_to_matrix(&basis.column_vec(c), d))
                .collect();
            let generic_member_rank = generic_rank(&members)?;
            eigenspaces.push(FamilyEigenspace {
                phases: phases.clone(),
                basis: members,
                generic_member_rank,
            });
        }

        let compatibility = self.compatibility_matrix(&eigenspaces, tol)?;
        Ok(FixedFamily {
            generator_pairs,
            eigenspaces,
            compatibility,
        })
    }

    /// Honest numerical check of both dot-equality grids across members of
    /// two eigenspaces (including a space against itself).
    fn compatibility_matrix(
        &self,
        spaces: &[FamilyEigenspace],
        tol: f64,
    ) -> Result<Vec<Vec<bool>>> {
        let member_sets: Vec<Vec<CMatrix>> = spaces
            .iter()
            .map(|s| {
                let mut members = s.basis.clone();
                if s.basis.len() > 1 {
                    members.push(mixed_member(&s.basis));
                }
                members
            })
            .collect();
        let mut out = vec![vec![true; spaces.len()]; spaces.len()];
        for s in 0..spaces.len() {
            for t in 0..spaces.len() {
                'pairs: for cj in &member_sets[s] {
                    for ck in &member_sets[t] {
                        for m in 0..self.terms.len() {
                            for n in 0..self.terms.len() {
                                if m == n {
                                    continue;
                                }
                                let tu = self.terms[m].u.adjoint().mul(&self.terms[n].u);
                                let du = cj.mul(&ck.adjoint());
                                let au = phase_align(&tu.mul(&du), &du.mul(&tu), tol)?;
                                let tv = self.terms[m].v.adjoint().mul(&self.terms[n].v);
                                let dv = cj.adjoint().mul(ck);
                                let av = phase_align(&tv.mul(&dv), &dv.mul(&tv), tol)?;
                                if !au.matched || !av.matched {
                                    out[s][t] = false;
                                    break 'pairs;
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}

impl FixedFamily {
    /// Worst `‖W_g C Ȳ_g − phase_g C‖_F` over all generators and basis
    /// members of one eigenspace.
    pub fn member_defect(&self, space: usize) -> f64 {
        let s = &self.eigenspaces[space];
        let mut worst = 0.0f64;
        for c in &s.basis {
            for (g, (w, ybar)) in self.generator_pairs.iter().enumerate() {
                let moved = w.mul(c).mul(ybar);
                let expected = c.scale(s.phases[g]);
                worst = worst.max(moved.sub(&expected).frobenius_norm());
            }
        }
        worst
    }
}

/// A normalized state from the example's fixed family:
/// `a|00⟩ + b|01⟩ ± a|10⟩ ∓ b|11⟩`.
pub fn example_family_state(sign_plus: bool, a: C64, b: C64) -> Result<BipartiteState> {
    let norm = (2.0 * (a.norm_sqr() + b.norm_sqr())).sqrt();
    if norm < 1e-9 {
        return Err(Error::Input("family state needs (a, b) ≠ (0, 0)".into()));
    }
    let scale = C64::new(1.0 / norm, 0.0);
    let sign = if sign_plus { 1.0 } else { -1.0 };
    BipartiteState::new(
        2,
        2,
        vec![
            a * scale,
            b * scale,
            a * scale * C64::new(sign, 0.0),
            b * scale * C64::new(-sign, 0.0),
        ],
    )
}

/// Run the full worked-example battery at mixing parameter `p`: the known
/// fixed state, its dual matrix, seeded members of both sign families, and
/// recovery of those families by the eigenspace solver.
pub fn cross_check_example(p: f64) -> Result<ExampleReport> {
    let tol = DEFAULT_TOL;
    let channel = RandomUnitaryChannel::two_qubit_example(p)?;
    let op = channel.induced_operation();

    // The balanced state ½(|00⟩+|01⟩+|10⟩−|11⟩) and its dual.
    let psi_ref = example_family_state(true, C64::new(0.5, 0.0), C64::new(0.5, 0.0))?;
    let expected_dual = CMatrix::from_real(&[&[0.5, 0.5], &[0.5, -0.5]]);
    let dual_residual = psi_ref
        .to_dual()
        .matrix
        .sub(&expected_dual)
        .frobenius_norm();

    let fixed_point_fidelity = match op.check_deterministic(&psi_ref, tol)? {
        DeterministicOutcome::Deterministic(cert) => {
            let overlap = cert.phi.ket().frobenius_inner(&psi_ref.ket());
            overlap.norm_sqr()
        }
        DeterministicOutcome::NotDeterministic { .. } => 0.0,
    };

    let mut family_samples = 0;
    let mut family_failures = 0;
    for sign_plus in [true, false] {
        let mut rng =
            rand_chacha::ChaCha8Rng::seed_from_u64(0x5EED_0000 + u64::from(sign_plus));
        for _ in 0..32 {
            let g = crate::numerics::complex_gaussian(2, 1, &mut rng);
            let (a, b) = (g[(0, 0)], g[(1, 0)]);
            if a.norm_sqr() + b.norm_sqr() < 1e-6 {
                continue;
            }
            let psi = example_family_state(sign_plus, a, b)?;
            family_samples += 1;
            match op.check_deterministic(&psi, tol)? {
                DeterministicOutcome::Deterministic(_) => {}
                DeterministicOutcome::NotDeterministic { .. } => family_failures += 1,
            }
        }
    }

    // Expected family spans, as vectorized projectors.
    let family = channel.fixed_states(tol)?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let plus_span = [
        vec![C64::new(r, 0.0), C64::ZERO, C64::new(r, 0.0), C64::ZERO],
        vec![C64::ZERO, C64::new(r, 0.0), C64::ZERO, C64::new(-r, 0.0)],
    ];
    let minus_span = [
        vec![C64::new(r, 0.0), C64::ZERO, C64::new(-r, 0.0), C64::ZERO],
        vec![C64::ZERO, C64::new(r, 0.0), C64::ZERO, C64::new(r, 0.0)],
    ];
    let mut family_span_distance = f64::INFINITY;
    let mut families_recovered = false;
    if family.eigenspaces.len() == 2 {
        let computed: Vec<CMatrix> = family
            .eigenspaces
            .iter()
            .map(|s| {
                let mut basis = CMatrix::zeros(4, s.basis.len());
                for (c, member) in s.basis.iter().enumerate() {
                    let v = matrix_to_vec(member);
                    for (rix, val) in v.iter().enumerate() {
                        basis[(rix, c)] = *val;
                    }
                }
                projector(&basis)
            })
            .collect();
        let expected: Vec<CMatrix> = [plus_span, minus_span]
            .iter()
            .map(|span| {
                let mut basis = CMatrix::zeros(4, 2);
                for (c, v) in span.iter().enumerate() {
                    for (rix, val) in v.iter().enumerate() {
                        basis[(rix, c)] = *val;
                    }
                }
                projector(&basis)
            })
            .collect();
        // Match computed spaces to expected spans in either order.
        let d00 = computed[0].sub(&expected[0]).frobenius_norm();
        let d11 = computed[1].sub(&expected[1]).frobenius_norm();
        let d01 = computed[0].sub(&expected[1]).frobenius_norm();
        let d10 = computed[1].sub(&expected[0]).frobenius_norm();
        family_span_distance = d00.max(d11).min(d01.max(d10));
        families_recovered = family_span_distance <= tol;
    }

    let all_pass = fixed_point_fidelity >= 1.0 - 1e-10
        && dual_residual <= 1e-12
        && family_failures == 0
        && family_samples >= 60
        && families_recovered;
    Ok(ExampleReport {
        p,
        fixed_point_fidelity,
        dual_residual,
        family_samples,
        family_failures,
        families_recovered,
        family_span_distance,
        all_pass,
    })
}

/// Orthonormal basis of `span(a) ∩ span(b)` via canonical correlations;
/// `None` when the intersection is trivial.
fn subspace_intersection(a: &CMatrix, b: &CMatrix) -> Option<CMatrix> {
    if a.cols() == 0 || b.cols() == 0 {
        return None;
    }
    let overlap = a.adjoint().mul(b);
    let svd = overlap.svd().ok()?;
    let count = svd.sigma.iter().filter(|&&s| s >= 1.0 - 1e-8).count();
    if count == 0 {
        return None;
    }
    // Columns of a·X with unit canonical correlation lie in both spans.
    let mut x = CMatrix::zeros(a.cols(), count);
    for c in 0..count {
        for rix in 0..a.cols() {
            x[(rix, c)] = svd.u[(rix, c)];
        }
    }
    Some(a.mul(&x))
}

/// Projector `B B†` onto the span of orthonormal columns.
fn projector(basis: &CMatrix) -> CMatrix {
    basis.mul(&basis.adjoint())
}

fn vec_to_matrix(col: &[C64], d: usize) -> CMatrix {
    let mut m = CMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = col[i * d + j];
        }
    }
    m
}

fn matrix_to_vec(m: &CMatrix) -> Vec<C64> {
    let mut out = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.push(m[(i, j)]);
        }
    }
    out
}

/// Rank of a generic member: maximum over a few seeded random combinations.
fn generic_rank(members: &[CMatrix]) -> Result<usize> {
    if members.is_empty() {
        return Ok(0);
    }
    let mut best = 0;
    for seed in 0..2u64 {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0xF1A5 + seed);
        let coeffs = crate::numerics::complex_gaussian(members.len(), 1, &mut rng);
        let mut combo = CMatrix::zeros(members[0].rows(), members[0].cols());
        for (i, m) in members.iter().enumerate() {
            combo = combo.add(&m.scale(coeffs[(i, 0)]));
        }
        best = best.max(combo.svd()?.rank(RANK_CUTOFF));
    }
    Ok(best)
}

/// A normalized random mixture of basis members, for compatibility probing.
fn mixed_member(members: &[CMatrix]) -> CMatrix {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x4D49_5845);
    let coeffs = crate::numerics::complex_gaussian(members.len(), 1, &mut rng);
    let mut combo = CMatrix::zeros(members[0].rows(), members[0].cols());
    for (i, m) in members.iter().enumerate() {
        combo = combo.add(&m.scale(coeffs[(i, 0)]));
    }
    let norm = combo.frobenius_norm();
    if norm > 0.0 {
        combo.scale(C64::new(1.0 / norm, 0.0))
    } else {
        members[0].clone()
    }
}
