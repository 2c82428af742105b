//! Certifying that a concrete operation performs a transformation.
//!
//! Deciding possibility from spectra is one thing; exhibiting an operation
//! and *proving it works* is another. This example builds the classic
//! two-branch local measurement that converts one two-qubit entangled state
//! into another, validates its closure condition, certifies branch-by-branch
//! determinism, and inspects the unitary-proportionality structure that is
//! forced exactly when the spectra are equal.
//!
//! Run with: `cargo run --example locc_certificates`

use septrans::criteria::SchmidtSpectrum;
use septrans::lab::diagonal_state;
use septrans::sepops::{construct_two_qubit_locc, DeterministicOutcome, SeparableOperation};

fn main() {
    let lambda = SchmidtSpectrum::from_squares(&[0.7, 0.3]).unwrap();
    let mu = SchmidtSpectrum::from_squares(&[0.8, 0.2]).unwrap();

    // A two-outcome measurement on A, with a conditional bit flip on both
    // sides in the second branch, realizes the transformation.
    let op = construct_two_qubit_locc(&lambda, &mu).expect("target majorizes source");
    let closure = op.validate_closure(1e-9);
    println!(
        "closure condition: valid = {}, residual = {:.2e}",
        closure.valid, closure.residual
    );
    assert!(closure.valid);

    // Certify determinism on the source state (written in Schmidt bases, so
    // the diagonal state carries the spectrum).
    let psi = diagonal_state(&lambda).unwrap();
    let phi_expected = diagonal_state(&mu).unwrap();
    let cert = match op.check_deterministic(&psi, 1e-9).unwrap() {
        DeterministicOutcome::Deterministic(cert) => cert,
        DeterministicOutcome::NotDeterministic { witness_m } => {
            panic!("branch {witness_m} broke determinism")
        }
    };
    println!("branch probabilities: {:?}", cert.probabilities);
    println!("branch phases:        {:?}", cert.branch_phases);
    let overlap = cert.phi.ket().frobenius_inner(&phi_expected.ket());
    println!("output fidelity:      {:.15}", overlap.norm_sqr());
    assert!(overlap.norm_sqr() >= 1.0 - 1e-12);
    let p_total: f64 = cert.probabilities.iter().sum();
    assert!((p_total - 1.0).abs() < 1e-12);

    // For λ² = (0.7, 0.3) → μ² = (0.8, 0.2) the first branch fires with
    // probability (λ_0² − μ_1²)/(μ_0² − μ_1²) = (0.7 − 0.2)/(0.8 − 0.2) = 5/6.
    assert!((cert.probabilities[0] - 5.0 / 6.0).abs() < 1e-12);

    // The same state fed to a *different* instrument generally is not
    // mapped deterministically: the witness branch is reported.
    let other = SeparableOperation::random_product_instrument(2, 2, 2, 1, 42).unwrap();
    match other.check_deterministic(&psi, 1e-9).unwrap() {
        DeterministicOutcome::Deterministic(_) => {
            println!("(random instrument happened to be deterministic — rare but legal)")
        }
        DeterministicOutcome::NotDeterministic { witness_m } => {
            println!("random instrument: not deterministic, witness branch {witness_m}");
        }
    }

    // When source and target spectra are EQUAL, every Kraus factor must be
    // proportional to a unitary on the supports. The equal-spectra
    // construction is the identity, which trivially satisfies it.
    let same = construct_two_qubit_locc(&lambda, &lambda).unwrap();
    let prop = same.unitary_proportionality(&psi, 1e-9).unwrap();
    println!(
        "\nequal spectra: all factors proportional to unitaries = {}",
        prop.all_proportional()
    );
    assert!(prop.all_proportional());

    // With unequal spectra the measurement branches are genuinely
    // non-unitary on the support — the certificate shows which.
    let prop = op.unitary_proportionality(&psi, 1e-9).unwrap();
    for (m, pair) in prop.per_pair.iter().enumerate() {
        println!(
            "branch {}: A proportional to unitary = {} (scale {:.4}), B = {} (scale {:.4})",
            m + 1,
            pair.unitary_proportional_a,
            pair.scale_a,
            pair.unitary_proportional_b,
            pair.scale_b,
        );
    }
    assert!(!prop.all_proportional());
    println!("all checks passed.");
}
