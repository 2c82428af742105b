//! Which states does a random unitary channel keep pure?
//!
//! A separable random unitary channel `ρ ↦ Σ_m p_m (U_m⊗V_m) ρ (U_m⊗V_m)†`
//! usually turns pure inputs into mixed outputs. The full-Schmidt-rank
//! states it maps to *pure* outputs are exactly those whose dual matrices
//! are common eigenvectors of the conjugation superoperators
//! `C ↦ (U_1†U_m) C (V̄_m V̄_1†)`. This example solves that eigenproblem for
//! the two-qubit channel mixing the identity with `X⊗Z`, recovers the two
//! sign families of fixed states, and certifies members end to end.
//!
//! Run with: `cargo run --example fixed_point_families`

use septrans::lab::purity_oracle;
use septrans::ruchannel::{cross_check_example, example_family_state, RandomUnitaryChannel};
use septrans::sepops::DeterministicOutcome;
use septrans::{BipartiteState, C64};

fn main() {
    // ρ ↦ 0.3·ρ + 0.7·(X⊗Z)ρ(X⊗Z).
    let channel = RandomUnitaryChannel::two_qubit_example(0.3).unwrap();
    let report = channel.validate_channel(1e-9);
    assert!(report.valid);
    let op = channel.induced_operation();

    // A generic entangled state does NOT stay pure.
    let generic = BipartiteState::random(2, 2, 5).unwrap();
    let rho = op.apply(&generic.density()).unwrap();
    let purity = purity_oracle(&rho, 1e-9).unwrap();
    println!(
        "generic input: output largest eigenvalue = {:.4} (mixed)",
        purity.largest_eigenvalue
    );
    assert!(!purity.pure);

    // Solve for the fixed families.
    let family = channel.fixed_states(1e-9).unwrap();
    println!("\neigenspaces of the conjugation superoperator:");
    for (i, space) in family.eigenspaces.iter().enumerate() {
        println!(
            "  space {}: dimension {}, phase {:+.3}{:+.3}i, generic member rank {}",
            i + 1,
            space.basis.len(),
            space.phases[0].re,
            space.phases[0].im,
            space.generic_member_rank
        );
    }
    assert_eq!(family.eigenspaces.len(), 2);
    assert!(family.eigenspaces.iter().all(|s| s.basis.len() == 2));
    assert!(family.eigenspaces.iter().all(|s| s.generic_member_rank == 2));

    // The recovered spaces are the two sign families
    // a|00⟩ + b|01⟩ ± a|10⟩ ∓ b|11⟩. Certify a handful of members of each.
    println!("\ncertifying family members:");
    for sign_plus in [true, false] {
        for seed in 0..4u64 {
            let t = seed as f64 * 0.37 + 0.2;
            let a = C64::new(t.cos(), 0.3 * t.sin());
            let b = C64::new(0.8 * t.sin(), -0.4 * t.cos());
            let psi = example_family_state(sign_plus, a, b).unwrap();
            match op.check_deterministic(&psi, 1e-9).unwrap() {
                DeterministicOutcome::Deterministic(cert) => {
                    // Fixed family: the output IS the input, up to phase.
                    let fidelity = cert.phi.ket().frobenius_inner(&psi.ket()).norm_sqr();
                    assert!(fidelity >= 1.0 - 1e-12);
                }
                DeterministicOutcome::NotDeterministic { witness_m } => {
                    panic!("family member rejected, witness branch {witness_m}")
                }
            }
        }
        println!(
            "  sign {} family: 4 members certified deterministic",
            if sign_plus { "+" } else { "-" }
        );
    }

    // Both families are mutually compatible: a single channel maps any
    // collection drawn from both sign families deterministically.
    assert!(family
        .compatibility
        .iter()
        .all(|row| row.iter().all(|&ok| ok)));
    println!("\ncompatibility matrix: all eigenspace pairs compatible.");

    // Some channels constrain so hard that no full-rank state survives:
    // mixing the identity with I⊗Z zeroes a column of every fixed dual.
    let column_killer = RandomUnitaryChannel::new(vec![
        septrans::ruchannel::ChannelTerm {
            probability: 0.5,
            u: septrans::CMatrix::identity(2),
            v: septrans::CMatrix::identity(2),
        },
        septrans::ruchannel::ChannelTerm {
            probability: 0.5,
            u: septrans::CMatrix::identity(2),
            v: septrans::CMatrix::pauli_z(),
        },
    ])
    .unwrap();
    let degenerate = column_killer.fixed_states(1e-9).unwrap();
    for space in &degenerate.eigenspaces {
        assert_eq!(space.generic_member_rank, 1);
    }
    println!("identity/I⊗Z channel: fixed families exist but contain no full-rank state.");

    // The packaged end-to-end cross-check runs all of the above (and the
    // known closed-form dual matrix) at any mixing parameter.
    let report = cross_check_example(0.55).unwrap();
    println!(
        "\ncross-check at p = 0.55: fidelity {:.12}, {} family samples, all pass = {}",
        report.fixed_point_fidelity, report.family_samples, report.all_pass
    );
    assert!(report.all_pass);
    println!("all checks passed.");
}
