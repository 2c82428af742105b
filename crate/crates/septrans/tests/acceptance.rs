//! Acceptance suite: one test per acceptance criterion, each printing a
//! single pass line (the harness line doubles as the pass/fail record).
//!
//! The criteria pin down the worked two-qubit example end to end, the
//! spectrum-level conditions at statistical scale, the proportionality
//! structure of equal-spectra maps, the determinant inequality, the
//! collection conditions, and agreement between the two independent purity
//! deciders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use septrans::criteria::SchmidtSpectrum;
use septrans::lab::{diagonal_state, purity_oracle, run_sweep};
use septrans::numerics::haar_unitary;
use septrans::ruchannel::{
    example_family_state, ChannelTerm, RandomUnitaryChannel,
};
use septrans::sepops::{construct_two_qubit_locc, DeterministicOutcome};
use septrans::{BipartiteState, C64, CMatrix};
use std::time::Instant;

fn balanced_reference_state() -> BipartiteState {
    example_family_state(true, C64::new(0.5, 0.0), C64::new(0.5, 0.0)).unwrap()
}

/// Criterion 1: at p in {0.1, 0.3, 0.5, 0.9} the example channel maps the
/// balanced reference state to itself with fidelity >= 1 - 1e-10, and the
/// state's dual matrix is exactly ((1,1),(1,-1))/2. Runtime < 1 s.
#[test]
fn criterion_01_golden_fixture() {
    let start = Instant::now();
    let psi = balanced_reference_state();
    let expected_dual = CMatrix::from_real(&[&[0.5, 0.5], &[0.5, -0.5]]);
    assert_eq!(
        psi.to_dual().matrix.sub(&expected_dual).frobenius_norm(),
        0.0,
        "dual matrix must match the closed form exactly"
    );
    for p in [0.1, 0.3, 0.5, 0.9] {
        let op = RandomUnitaryChannel::two_qubit_example(p)
            .unwrap()
            .induced_operation();
        match op.check_deterministic(&psi, 1e-9).unwrap() {
            DeterministicOutcome::Deterministic(cert) => {
                let fidelity = cert.phi.ket().frobenius_inner(&psi.ket()).norm_sqr();
                assert!(
                    fidelity >= 1.0 - 1e-10,
                    "fidelity {fidelity} at p = {p}"
                );
            }
            DeterministicOutcome::NotDeterministic { witness_m } => {
                panic!("reference state not fixed at p = {p}, witness {witness_m}")
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}");
    println!("criterion 1: PASS (golden fixture, {elapsed:?})");
}

/// Criterion 2: 64 seeded members per sign family are certified
/// deterministic with purity-oracle agreement; 64 seeded full-rank states
/// outside the family spans are all non-deterministic. Tolerance 1e-9,
/// runtime < 5 s.
#[test]
fn criterion_02_family_membership() {
    let start = Instant::now();
    let channel = RandomUnitaryChannel::two_qubit_example(0.3).unwrap();
    let op = channel.induced_operation();

    for sign_plus in [true, false] {
        let mut rng = ChaCha8Rng::seed_from_u64(0xFA_0 + u64::from(sign_plus));
        let mut accepted = 0;
        while accepted < 64 {
            let re: f64 = rng.random_range(-1.0..1.0);
            let im: f64 = rng.random_range(-1.0..1.0);
            let re2: f64 = rng.random_range(-1.0..1.0);
            let im2: f64 = rng.random_range(-1.0..1.0);
            let (a, b) = (C64::new(re, im), C64::new(re2, im2));
            if a.norm() < 1e-3 || b.norm() < 1e-3 {
                continue;
            }
            let psi = example_family_state(sign_plus, a, b).unwrap();
            let deterministic = matches!(
                op.check_deterministic(&psi, 1e-9).unwrap(),
                DeterministicOutcome::Deterministic(_)
            );
            assert!(deterministic, "family member rejected (sign {sign_plus})");
            let oracle = purity_oracle(&op.apply(&psi.density()).unwrap(), 1e-9).unwrap();
            assert!(oracle.pure, "oracle disagrees on family member");
            accepted += 1;
        }
    }

    // Outside states: full rank, bounded away from both family spans.
    let family = channel.fixed_states(1e-9).unwrap();
    let mut outside_checked = 0;
    let mut seed = 0u64;
    while outside_checked < 64 {
        seed += 1;
        let psi = BipartiteState::random(2, 2, 0xBEEF + seed).unwrap();
        let dual = psi.to_dual().matrix;
        let near_a_span = family.eigenspaces.iter().any(|space| {
            let mut projected = CMatrix::zeros(2, 2);
            for member in &space.basis {
                projected = projected.add(&member.scale(member.frobenius_inner(&dual)));
            }
            projected.sub(&dual).frobenius_norm() < 1e-2
        });
        if near_a_span {
            continue;
        }
        let deterministic = matches!(
            op.check_deterministic(&psi, 1e-9).unwrap(),
            DeterministicOutcome::Deterministic(_)
        );
        assert!(!deterministic, "outside state certified, seed {seed}");
        let oracle = purity_oracle(&op.apply(&psi.density()).unwrap(), 1e-9).unwrap();
        assert!(!oracle.pure, "oracle disagrees on outside state, seed {seed}");
        outside_checked += 1;
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!("criterion 2: PASS (128 family + 64 outside states, {elapsed:?})");
}

/// Criterion 3: the fixed-family solver returns exactly two 2-dimensional
/// eigenspaces with phases +1 and -1 whose spans match the known closed
/// forms with subspace distance < 1e-9.
#[test]
fn criterion_03_fixed_family_spans() {
    let channel = RandomUnitaryChannel::two_qubit_example(0.5).unwrap();
    let family = channel.fixed_states(1e-9).unwrap();
    assert_eq!(family.eigenspaces.len(), 2, "expected exactly two eigenspaces");

    // Expected spans as vectorized orthonormal bases (row-major vec).
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let expected_plus = [
        [r, 0.0, r, 0.0],   // ((1,0),(1,0))/sqrt(2)
        [0.0, r, 0.0, -r],  // ((0,1),(0,-1))/sqrt(2)
    ];
    let expected_minus = [
        [r, 0.0, -r, 0.0],  // ((1,0),(-1,0))/sqrt(2)
        [0.0, r, 0.0, r],   // ((0,1),(0,1))/sqrt(2)
    ];

    let projector_of = |vectors: &[[f64; 4]]| {
        let mut basis = CMatrix::zeros(4, vectors.len());
        for (c, v) in vectors.iter().enumerate() {
            for (row, x) in v.iter().enumerate() {
                basis[(row, c)] = C64::new(*x, 0.0);
            }
        }
        basis.mul(&basis.adjoint())
    };

    for space in &family.eigenspaces {
        assert_eq!(space.basis.len(), 2, "each eigenspace is 2-dimensional");
        assert_eq!(space.phases.len(), 1);
        let phase = space.phases[0];
        let expected = if (phase - C64::new(1.0, 0.0)).norm() <= 1e-9 {
            &expected_plus
        } else {
            assert!(
                (phase + C64::new(1.0, 0.0)).norm() <= 1e-9,
                "phase {phase} is neither +1 nor -1"
            );
            &expected_minus
        };
        let mut computed_basis = CMatrix::zeros(4, 2);
        for (c, member) in space.basis.iter().enumerate() {
            for i in 0..2 {
                for j in 0..2 {
                    computed_basis[(i * 2 + j, c)] = member[(i, j)];
                }
            }
        }
        let computed_proj = computed_basis.mul(&computed_basis.adjoint());
        let distance = computed_proj
            .sub(&projector_of(expected))
            .frobenius_norm();
        assert!(distance < 1e-9, "subspace distance {distance:.3e}");
    }
    println!("criterion 3: PASS (two 2-dim eigenspaces at phases +1/-1)");
}

/// Criterion 4: 500 random majorization-ordered qubit fixtures are built,
/// certified, and satisfy the product condition; 0 failures.
#[test]
fn criterion_04_product_condition_sweep() {
    let report = run_sweep("theorem1_product", 500, 1).unwrap();
    assert_eq!(
        report.failures, 0,
        "failing seeds: {:?}",
        report.seeds_of_failures
    );
    println!(
        "criterion 4: PASS (500 fixtures, worst residual {:.2e})",
        report.worst_residual
    );
}

/// Criterion 5: 200 equal-spectra instances (product-unitary channels on
/// random full-rank states at d in {2, 3}) report every Kraus factor
/// proportional to a unitary; 200 unequal-spectra measurement fixtures each
/// report at least one non-proportional factor; 0 failures.
#[test]
fn criterion_05_unitary_proportionality() {
    // Equal spectra: random product-unitary channels.
    for trial in 0..200u64 {
        let d = 2 + (trial % 2) as usize;
        let mut rng = ChaCha8Rng::seed_from_u64(0x0501 + trial);
        let terms_count = 1 + (trial % 3) as usize;
        let mut weights: Vec<f64> = (0..terms_count).map(|_| rng.random::<f64>() + 0.1).collect();
        let total: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= total;
        }
        let terms: Vec<ChannelTerm> = weights
            .iter()
            .map(|&p| ChannelTerm {
                probability: p,
                u: haar_unitary(d, rng.random::<u64>()).unwrap(),
                v: haar_unitary(d, rng.random::<u64>()).unwrap(),
            })
            .collect();
        let op = RandomUnitaryChannel::new(terms).unwrap().induced_operation();
        let psi = BipartiteState::random(d, d, rng.random::<u64>()).unwrap();
        let cert = op.unitary_proportionality(&psi, 1e-9).unwrap();
        assert!(
            cert.all_proportional(),
            "trial {trial}: unitary channel flagged non-proportional"
        );
        assert!(cert.pairwise_factors.is_some());
    }

    // Unequal spectra: two-outcome measurement fixtures.
    let mut rng = ChaCha8Rng::seed_from_u64(0x0502);
    let mut done = 0u64;
    while done < 200 {
        let l0: f64 = rng.random_range(0.5..0.99);
        let m0: f64 = rng.random_range((l0 + 0.005).min(0.995)..1.0);
        let lambda = SchmidtSpectrum::from_squares(&[l0, 1.0 - l0]).unwrap();
        let mu = SchmidtSpectrum::from_squares(&[m0, 1.0 - m0]).unwrap();
        let op = construct_two_qubit_locc(&lambda, &mu).unwrap();
        let psi = diagonal_state(&lambda).unwrap();
        let cert = op.unitary_proportionality(&psi, 1e-9).unwrap();
        assert!(
            !cert.all_proportional(),
            "unequal spectra but all factors proportional (l0 = {l0}, m0 = {m0})"
        );
        done += 1;
    }
    println!("criterion 5: PASS (200 + 200 proportionality instances)");
}

/// Criterion 6: product condition and majorization agree on 1000 random
/// qubit spectra pairs; 0 disagreements.
#[test]
fn criterion_06_qubit_collapse_sweep() {
    let report = run_sweep("corollary2_collapse", 1000, 2).unwrap();
    assert_eq!(
        report.failures, 0,
        "failing seeds: {:?}",
        report.seeds_of_failures
    );
    println!("criterion 6: PASS (1000 spectra pairs, 0 disagreements)");
}

/// Criterion 7: on 1000 majorization-ordered pairs at d = 4 the product
/// condition always holds; 0 failures.
#[test]
fn criterion_07_majorization_implies_product_sweep() {
    let report = run_sweep("majorization_implies_product", 1000, 3).unwrap();
    assert_eq!(
        report.failures, 0,
        "failing seeds: {:?}",
        report.seeds_of_failures
    );
    println!(
        "criterion 7: PASS (1000 pairs at d = 4, worst violation {:.2e})",
        report.worst_residual
    );
}

/// Criterion 8: the determinant inequality holds on 1000 random PSD
/// families (sizes 2..=4, dimensions 2..=9) with gap >= -1e-12, and
/// proportional families stay within |gap| <= 1e-10; 0 failures.
#[test]
fn criterion_08_minkowski_sweep() {
    let report = run_sweep("minkowski", 1000, 4).unwrap();
    assert_eq!(
        report.failures, 0,
        "failing seeds: {:?}",
        report.seeds_of_failures
    );
    println!(
        "criterion 8: PASS (1000 PSD families, worst residual {:.2e})",
        report.worst_residual
    );
}

/// Criterion 9: on the worked-example collection both pair-condition grids
/// hold for all index tuples, the m = 1 slice reproduces the full grid,
/// and swapping in an out-of-family state flips the report; all calls
/// return cleanly (no internal inconsistency).
#[test]
fn criterion_09_collection_consistency() {
    let channel = RandomUnitaryChannel::two_qubit_example(0.3).unwrap();
    let collection = vec![
        balanced_reference_state(),
        example_family_state(true, C64::new(0.7, 0.1), C64::new(0.3, -0.2)).unwrap(),
        example_family_state(false, C64::new(0.2, 0.4), C64::new(0.6, 0.0)).unwrap(),
        example_family_state(false, C64::new(-0.5, 0.3), C64::new(0.4, 0.4)).unwrap(),
    ];
    let report = channel
        .check_collection(&collection, 1e-9)
        .expect("no inconsistency on the exact family");
    assert!(report.pair_condition_a && report.pair_condition_b);
    assert!(report.per_state.iter().all(|s| s.deterministic));

    // Full grid: 2 sides x 2 ordered branch pairs x 16 state pairs, every
    // tuple matched with a recorded phase.
    let j = collection.len();
    assert_eq!(report.phase_table.len(), 2 * 2 * j * j);

    // The m = 1 slice alone covers every (n, j, k) tuple — and since the
    // full grid holds, the reduction is consistent (a failure of that
    // implication inside the library would have surfaced as an error).
    let m1_entries = report.phase_table.iter().filter(|e| e.m == 1).count();
    assert_eq!(m1_entries, 2 * j * j);

    // Swapping in an out-of-family state flips the verdict.
    let mut tampered = collection.clone();
    tampered[1] = BipartiteState::random(2, 2, 77).unwrap();
    let flipped = channel
        .check_collection(&tampered, 1e-9)
        .expect("mixed collection is not an inconsistency");
    assert!(!flipped.pair_condition_a);
    assert!(!flipped.pair_condition_b);
    assert!(!flipped.per_state[1].deterministic);
    assert!(flipped.per_state[0].deterministic);
    println!("criterion 9: PASS (collection grids, reduction, and flip)");
}

/// Criterion 10: the branch-by-branch certificate and the spectral purity
/// oracle agree on every instance generated here; the check itself stays
/// far inside the 2-minute budget.
#[test]
fn criterion_10_oracle_agreement() {
    let start = Instant::now();
    let report = run_sweep("determinism_oracle_agreement", 300, 5).unwrap();
    assert_eq!(
        report.failures, 0,
        "disagreement seeds: {:?}",
        report.seeds_of_failures
    );

    // Also cross the oracle against the certified golden instances.
    let psi = balanced_reference_state();
    for p in [0.1, 0.5, 0.9] {
        let op = RandomUnitaryChannel::two_qubit_example(p)
            .unwrap()
            .induced_operation();
        let deterministic = matches!(
            op.check_deterministic(&psi, 1e-9).unwrap(),
            DeterministicOutcome::Deterministic(_)
        );
        let oracle = purity_oracle(&op.apply(&psi.density()).unwrap(), 1e-9).unwrap();
        assert_eq!(deterministic, oracle.pure);
        assert!(deterministic);
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 120.0, "took {elapsed:?}");
    println!("criterion 10: PASS (303 instances, {elapsed:?})");
}
