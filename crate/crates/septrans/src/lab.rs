//! Seeded samplers and brute-force oracles backing property sweeps: random
//! spectra, majorizing-pair generators, random PSD families, a purity oracle
//! independent of the certification path, and named sweep drivers with
//! reproducible machine-readable reports.

use crate::criteria::{dim2_collapse, majorizes, minkowski_check, product_condition, SchmidtSpectrum};
use crate::numerics::{complex_gaussian, C64, CMatrix};
use crate::ruchannel::{example_family_state, RandomUnitaryChannel};
use crate::sepops::{construct_two_qubit_locc, DeterministicOutcome, SeparableOperation};
use crate::states::BipartiteState;
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

/// Outcome of a named property sweep. Every field except `elapsed` is a pure
/// function of `(name, trials, master_seed)`.
#[derive(Debug, Clone)]
pub struct SweepReport {
    pub name: String,
    pub trials: u64,
    pub failures: u64,
    /// Per-trial seeds of the failing trials, sorted, each replayable.
    pub seeds_of_failures: Vec<u64>,
    /// Largest near-violation observed (sweep-specific residual; 0 is clean).
    pub worst_residual: f64,
    pub elapsed: Duration,
}

/// Purity decision on a density matrix.
#[derive(Debug, Clone, Copy)]
pub struct PurityReport {
    /// True iff the largest eigenvalue is at least `1 − tol`.
    pub pure: bool,
    pub largest_eigenvalue: f64,
}

/// The registered sweep names accepted by [`run_sweep`].
pub const SWEEP_NAMES: [&str; 6] = [
    "theorem1_product",
    "corollary2_collapse",
    "majorization_implies_product",
    "minkowski",
    "theorem2_example",
    "determinism_oracle_agreement",
];

/// A Schmidt spectrum whose squares are a flat (uniform) simplex sample,
/// sorted descending; deterministic in the seed.
pub fn sample_spectrum(d: usize, seed: u64) -> SchmidtSpectrum {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let squares = simplex_sample(d, &mut rng);
    SchmidtSpectrum::from_squares(&squares).expect("simplex sample is normalized")
}

/// Flat simplex sample by exponential spacing: normalized `−ln(u_i)`.
fn simplex_sample<R: Rng>(d: usize, rng: &mut R) -> Vec<f64> {
    assert!(d >= 1, "spectrum dimension must be at least 1");
    loop {
        let draws: Vec<f64> = (0..d).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let total: f64 = draws.iter().sum();
        if total > 0.0 && total.is_finite() {
            return draws.iter().map(|e| e / total).collect();
        }
    }
}

/// A pair `(λ, μ)` with `μ` majorizing `λ`: the squares of `μ` are a simplex
/// sample and the squares of `λ` are obtained from them by up to three
/// random pairwise-averaging transforms, each of which provably preserves
/// the majorization order (zero transforms leaves `λ = μ`).
pub fn sample_majorizing_pair(d: usize, seed: u64) -> Result<(SchmidtSpectrum, SchmidtSpectrum)> {
    if d < 2 {
        return Err(Error::Input(format!(
            "majorizing pairs need dimension at least 2, got {d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mu_squares = simplex_sample(d, &mut rng);
    let mut lambda_squares = mu_squares.clone();
    let transforms = rng.random_range(0..=3);
    for _ in 0..transforms {
        let i = rng.random_range(0..d);
        let mut j = rng.random_range(0..d - 1);
        if j >= i {
            j += 1;
        }
        // Mix a fraction t ∈ [0, ½] of each entry into the other; the result
        // is an average of the identity and a transposition, hence majorized
        // by the input.
        let t = 0.5 * rng.random::<f64>();
        let (a, b) = (lambda_squares[i], lambda_squares[j]);
        lambda_squares[i] = (1.0 - t) * a + t * b;
        lambda_squares[j] = t * a + (1.0 - t) * b;
    }
    Ok((
        SchmidtSpectrum::from_squares(&lambda_squares)?,
        SchmidtSpectrum::from_squares(&mu_squares)?,
    ))
}

/// Ground-truth purity decision from the spectrum of a density matrix.
///
/// Independent of the branch-by-branch certification path, so agreement
/// between the two is a meaningful cross-check.
pub fn purity_oracle(rho: &CMatrix, tol: f64) -> Result<PurityReport> {
    if !rho.is_square() || rho.rows() == 0 {
        return Err(Error::Input("density matrix must be square".into()));
    }
    let scale = rho.frobenius_norm().max(1.0);
    if rho.hermiticity_residual() > tol.max(1e-12) * scale {
        return Err(Error::Input("density matrix is not Hermitian".into()));
    }
    let eig = rho.hermitian_eig()?;
    let trace: f64 = eig.values.iter().sum();
    if (trace - 1.0).abs() > 1e-8 {
        return Err(Error::Input(format!(
            "density matrix has trace {trace}, expected 1"
        )));
    }
    if eig.values.iter().any(|&v| v < -1e-10 * scale) {
        return Err(Error::Input(
            "density matrix has a negative eigenvalue".into(),
        ));
    }
    let largest_eigenvalue = eig.values[0];
    Ok(PurityReport {
        pure: largest_eigenvalue >= 1.0 - tol,
        largest_eigenvalue,
    })
}

/// The state `Σ_j λ_j |jj⟩` carrying a given spectrum in the computational
/// bases.
pub fn diagonal_state(spectrum: &SchmidtSpectrum) -> Result<BipartiteState> {
    let d = spectrum.values().len();
    let mut amps = vec![C64::ZERO; d * d];
    for (j, &v) in spectrum.values().iter().enumerate() {
        amps[j * d + j] = C64::new(v, 0.0);
    }
    BipartiteState::new(d, d, amps)
}

/// Run a registered sweep. Trial `i` is seeded by a fixed mix of
/// `(master_seed, i)`, so reports are bit-for-bit reproducible in every
/// field except `elapsed`, and every failure seed replays one trial.
pub fn run_sweep(name: &str, trials: u64, master_seed: u64) -> Result<SweepReport> {
    let trial: fn(u64) -> Result<(bool, f64)> = match name {
        "theorem1_product" => trial_theorem1_product,
        "corollary2_collapse" => trial_corollary2_collapse,
        "majorization_implies_product" => trial_majorization_implies_product,
        "minkowski" => trial_minkowski,
        "theorem2_example" => trial_theorem2_example,
        "determinism_oracle_agreement" => trial_determinism_oracle_agreement,
        other => {
            return Err(Error::Input(format!(
                "unknown sweep '{other}'; registered sweeps: {}",
                SWEEP_NAMES.join(", ")
            )))
        }
    };
    let start = Instant::now();
    let mut failures = 0u64;
    let mut seeds_of_failures = Vec::new();
    let mut worst_residual = 0.0f64;
    for i in 0..trials {
        let seed = trial_seed(master_seed, i);
        let (pass, residual) = trial(seed)?;
        worst_residual = worst_residual.max(residual);
        if !pass {
            failures += 1;
            seeds_of_failures.push(seed);
        }
    }
    seeds_of_failures.sort_unstable();
    Ok(SweepReport {
        name: name.to_string(),
        trials,
        failures,
        seeds_of_failures,
        worst_residual,
        elapsed: start.elapsed(),
    })
}

/// SplitMix-style derivation of one trial's seed from the master seed.
fn trial_seed(master_seed: u64, index: u64) -> u64 {
    let mut z = master_seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Two well-conditioned qubit spectra ordered so the second majorizes the
/// first.
fn ordered_qubit_spectra<R: Rng>(rng: &mut R) -> (SchmidtSpectrum, SchmidtSpectrum) {
    let draw = |rng: &mut R| loop {
        let s = simplex_sample(2, rng);
        let mut sorted = s.clone();
        sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
        if sorted[1] > 1e-9 {
            return sorted;
        }
    };
    let a = draw(rng);
    let b = draw(rng);
    let (lam, mu) = if a[0] <= b[0] { (a, b) } else { (b, a) };
    (
        SchmidtSpectrum::from_squares(&lam).expect("normalized"),
        SchmidtSpectrum::from_squares(&mu).expect("normalized"),
    )
}

/// Build a two-outcome local-measurement fixture from a random
/// majorization-ordered qubit pair, certify it end to end, and check the
/// product condition on the certified map.
fn trial_theorem1_product(seed: u64) -> Result<(bool, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lambda, mu) = ordered_qubit_spectra(&mut rng);
    let op = construct_two_qubit_locc(&lambda, &mu)?;
    let closure = op.validate_closure(1e-9);
    let psi = diagonal_state(&lambda)?;
    let phi_expected = diagonal_state(&mu)?;
    let (deterministic, fidelity_defect) = match op.check_deterministic(&psi, 1e-9)? {
        DeterministicOutcome::Deterministic(cert) => {
            let overlap = cert.phi.ket().frobenius_inner(&phi_expected.ket());
            (true, (1.0 - overlap.norm_sqr()).abs())
        }
        DeterministicOutcome::NotDeterministic { .. } => (false, 1.0),
    };
    let pc = product_condition(&lambda, &mu, 1e-9);
    let violation = (pc.rhs - pc.lhs).max(0.0);
    let pass = closure.valid && deterministic && fidelity_defect <= 1e-9 && pc.holds;
    Ok((pass, closure.residual.max(fidelity_defect).max(violation)))
}

/// Product condition and majorization must coincide on qubit spectra, in
/// both comparison directions.
fn trial_corollary2_collapse(seed: u64) -> Result<(bool, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = SchmidtSpectrum::from_squares(&simplex_sample(2, &mut rng))?;
    let b = SchmidtSpectrum::from_squares(&simplex_sample(2, &mut rng))?;
    let fwd = dim2_collapse(&a, &b, 1e-12)?;
    let rev = dim2_collapse(&b, &a, 1e-12)?;
    let pass = fwd.agree && rev.agree;
    Ok((pass, if pass { 0.0 } else { 1.0 }))
}

/// Majorization implies the product condition at d = 4.
fn trial_majorization_implies_product(seed: u64) -> Result<(bool, f64)> {
    let (lambda, mu) = sample_majorizing_pair(4, seed)?;
    let ordered = majorizes(&mu, &lambda, 1e-9);
    let pc = product_condition(&lambda, &mu, 1e-9);
    let violation = (pc.rhs - pc.lhs).max(0.0);
    Ok((ordered && pc.holds, violation))
}

/// Determinant inequality on random unit-trace PSD families; every fourth
/// family (on average) is an exactly proportional one, where the gap must
/// vanish.
fn trial_minkowski(seed: u64) -> Result<(bool, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = rng.random_range(2..=4usize);
    let dim = rng.random_range(2..=9usize);
    let proportional_family = rng.random::<f64>() < 0.25;
    let qs: Vec<CMatrix> = if proportional_family {
        let q = random_unit_trace_psd(dim, &mut rng);
        (0..size)
            .map(|_| q.scale(C64::new(0.2 + rng.random::<f64>(), 0.0)))
            .collect()
    } else {
        (0..size)
            .map(|_| random_unit_trace_psd(dim, &mut rng))
            .collect()
    };
    let report = minkowski_check(&qs, 1e-9)?;
    let mut pass = report.gap >= -1e-12;
    let mut residual = (-report.gap).max(0.0);
    if proportional_family {
        pass = pass && report.proportional && report.gap.abs() <= 1e-10;
        residual = residual.max(report.gap.abs());
    }
    Ok((pass, residual))
}

fn random_unit_trace_psd<R: Rng>(dim: usize, rng: &mut R) -> CMatrix {
    let g = complex_gaussian(dim, dim, rng);
    let q = g.mul(&g.adjoint());
    let trace: f64 = (0..dim).map(|i| q[(i, i)].re).sum();
    q.scale(C64::new(1.0 / trace, 0.0))
}

/// Random members of the worked example's fixed families stay pure under
/// the channel at random mixing parameters, with certificate and purity
/// oracle in agreement.
fn trial_theorem2_example(seed: u64) -> Result<(bool, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = 0.05 + 0.9 * rng.random::<f64>();
    let op = RandomUnitaryChannel::two_qubit_example(p)?.induced_operation();
    let sign_plus = rng.random::<bool>();
    let (a, b) = loop {
        let g = complex_gaussian(2, 1, &mut rng);
        if g[(0, 0)].norm() > 1e-3 && g[(1, 0)].norm() > 1e-3 {
            break (g[(0, 0)], g[(1, 0)]);
        }
    };
    let psi = example_family_state(sign_plus, a, b)?;
    let (deterministic, fidelity_defect) = match op.check_deterministic(&psi, 1e-9)? {
        DeterministicOutcome::Deterministic(cert) => {
            let overlap = cert.phi.ket().frobenius_inner(&psi.ket());
            (true, (1.0 - overlap.norm_sqr()).abs())
        }
        DeterministicOutcome::NotDeterministic { .. } => (false, 1.0),
    };
    let oracle = purity_oracle(&op.apply(&psi.density())?, 1e-9)?;
    let pass = deterministic && oracle.pure && fidelity_defect <= 1e-9;
    Ok((
        pass,
        fidelity_defect.max((1.0 - oracle.largest_eigenvalue).max(0.0)),
    ))
}

/// The branch-by-branch determinism certificate and the spectral purity
/// oracle must agree on random product instruments and random states.
fn trial_determinism_oracle_agreement(seed: u64) -> Result<(bool, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dim_a = rng.random_range(2..=3usize);
    let dim_b = rng.random_range(2..=3usize);
    let branches_a = rng.random_range(1..=2usize);
    let branches_b = rng.random_range(1..=2usize);
    let op = SeparableOperation::random_product_instrument(
        dim_a,
        dim_b,
        branches_a,
        branches_b,
        rng.random::<u64>(),
    )?;
    let psi = BipartiteState::random(dim_a, dim_b, rng.random::<u64>())?;
    let deterministic = matches!(
        op.check_deterministic(&psi, 1e-9)?,
        DeterministicOutcome::Deterministic(_)
    );
    let oracle = purity_oracle(&op.apply(&psi.density())?, 1e-9)?;
    let pass = deterministic == oracle.pure;
    let residual = if deterministic {
        (1.0 - oracle.largest_eigenvalue).max(0.0)
    } else {
        0.0
    };
    Ok((pass, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RANK_CUTOFF;

    #[test]
    fn spectrum_of_dimension_one_is_trivial() {
        let s = sample_spectrum(1, 7);
        assert_eq!(s.values(), &[1.0]);
    }

    #[test]
    fn spectrum_sampling_is_deterministic_and_normalized() {
        let a = sample_spectrum(4, 11);
        let b = sample_spectrum(4, 11);
        assert_eq!(a.values(), b.values());
        let sum: f64 = a.squared().iter().sum();
        assert!((sum - 1.0).abs() <= 1e-12, "sum of squares = {sum}");
        for w in a.values().windows(2) {
            assert!(w[0] >= w[1]);
        }
        assert_ne!(a.values(), sample_spectrum(4, 12).values());
    }

    #[test]
    fn majorizing_pairs_are_ordered() {
        let (lambda, mu) = sample_majorizing_pair(4, 9).unwrap();
        assert!(majorizes(&mu, &lambda, 1e-12));
        for seed in 0..60 {
            let (lambda, mu) = sample_majorizing_pair(4, seed).unwrap();
            assert!(majorizes(&mu, &lambda, 1e-12), "seed {seed}");
            let sl: f64 = lambda.squared().iter().sum();
            assert!((sl - 1.0).abs() <= 1e-12);
        }
        assert!(sample_majorizing_pair(1, 0).is_err());
    }

    #[test]
    fn purity_oracle_matches_hand_cases() {
        let psi = BipartiteState::random(2, 2, 5).unwrap();
        let pure = purity_oracle(&psi.density(), 1e-9).unwrap();
        assert!(pure.pure);
        assert!((pure.largest_eigenvalue - 1.0).abs() <= 1e-10);

        // ½|00⟩⟨00| + ½|10⟩⟨10| has spectrum (½, ½, 0, 0).
        let mut rho = CMatrix::zeros(4, 4);
        rho[(0, 0)] = C64::new(0.5, 0.0);
        rho[(2, 2)] = C64::new(0.5, 0.0);
        let mixed = purity_oracle(&rho, 1e-9).unwrap();
        assert!(!mixed.pure);
        assert!((mixed.largest_eigenvalue - 0.5).abs() <= 1e-12);

        let not_hermitian = CMatrix::from_rows(&[
            vec![C64::new(0.5, 0.0), C64::new(0.3, 0.1)],
            vec![C64::new(0.0, 0.0), C64::new(0.5, 0.0)],
        ]);
        assert!(purity_oracle(&not_hermitian, 1e-9).is_err());
        assert!(purity_oracle(&CMatrix::identity(3), 1e-9).is_err());
    }

    #[test]
    fn channel_output_on_family_state_is_pure() {
        let op = RandomUnitaryChannel::two_qubit_example(0.3)
            .unwrap()
            .induced_operation();
        let psi = example_family_state(false, C64::new(0.6, 0.2), C64::new(0.1, -0.4)).unwrap();
        let report = purity_oracle(&op.apply(&psi.density()).unwrap(), 1e-9).unwrap();
        assert!(report.pure);
    }

    #[test]
    fn diagonal_state_round_trips_spectrum() {
        let s = sample_spectrum(3, 21);
        let psi = diagonal_state(&s).unwrap();
        let recovered = SchmidtSpectrum::of_state(&psi).unwrap();
        assert!(recovered.approx_eq(&s, 1e-12));
    }

    #[test]
    fn unknown_sweep_is_rejected() {
        assert!(run_sweep("no_such_sweep", 1, 0).is_err());
    }

    #[test]
    fn zero_trials_pass_vacuously() {
        for name in SWEEP_NAMES {
            let r = run_sweep(name, 0, 1).unwrap();
            assert_eq!(r.failures, 0, "{name}");
            assert!(r.seeds_of_failures.is_empty());
            assert_eq!(r.worst_residual, 0.0);
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let a = run_sweep("corollary2_collapse", 40, 7).unwrap();
        let b = run_sweep("corollary2_collapse", 40, 7).unwrap();
        assert_eq!(a.name, b.name);
        assert_eq!(a.trials, b.trials);
        assert_eq!(a.failures, b.failures);
        assert_eq!(a.seeds_of_failures, b.seeds_of_failures);
        assert_eq!(a.worst_residual, b.worst_residual);
    }

    #[test]
    fn registered_sweeps_run_clean_at_small_scale() {
        for (name, trials) in [
            ("theorem1_product", 50u64),
            ("corollary2_collapse", 100),
            ("majorization_implies_product", 100),
            ("minkowski", 60),
            ("theorem2_example", 20),
            ("determinism_oracle_agreement", 30),
        ] {
            let r = run_sweep(name, trials, 1).unwrap();
            assert_eq!(
                r.failures, 0,
                "{name}: failing seeds {:?}, worst residual {:.3e}",
                r.seeds_of_failures, r.worst_residual
            );
            assert_eq!(r.failures as usize, r.seeds_of_failures.len());
            assert!(r.worst_residual.is_finite());
        }
    }

    #[test]
    fn no_deterministic_state_outside_example_family_spans() {
        // Completeness of the solved family at d = 2: purity of the channel
        // output implies membership in one recovered eigenspace span.
        let channel = RandomUnitaryChannel::two_qubit_example(0.35).unwrap();
        let op = channel.induced_operation();
        let family = channel.fixed_states(1e-9).unwrap();
        for seed in 0..200u64 {
            let psi = BipartiteState::random(2, 2, 0xC0DE + seed).unwrap();
            let report = purity_oracle(&op.apply(&psi.density()).unwrap(), 1e-9).unwrap();
            if report.pure {
                let dual = psi.to_dual().matrix;
                let in_some_span = family.eigenspaces.iter().any(|space| {
                    let mut projected = CMatrix::zeros(2, 2);
                    for member in &space.basis {
                        projected = projected.add(&member.scale(member.frobenius_inner(&dual)));
                    }
                    projected.sub(&dual).frobenius_norm() <= 1e-8
                });
                assert!(in_some_span, "pure output from outside the family, seed {seed}");
            }
        }
    }

    #[test]
    fn failure_seeds_replay_single_trials() {
        // A passing sweep has no failure seeds; replaying arbitrary trial
        // seeds reproduces the same per-trial outcome.
        let s1 = trial_seed(3, 17);
        let s2 = trial_seed(3, 17);
        assert_eq!(s1, s2);
        assert_ne!(trial_seed(3, 18), s1);
        let a = trial_minkowski(s1).unwrap();
        let b = trial_minkowski(s1).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn locc_fixture_spectra_remain_well_conditioned() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..50 {
            let (lambda, mu) = ordered_qubit_spectra(&mut rng);
            assert!(lambda.rank() == 2);
            assert!(mu.values()[0] >= lambda.values()[0] - 1e-15);
            let psi = diagonal_state(&lambda).unwrap();
            assert_eq!(psi.schmidt_decompose(RANK_CUTOFF).unwrap().rank, 2);
        }
    }
}
