//! Deterministic transformation of a whole collection of states at once.
//!
//! A separable random unitary channel maps a collection of full-Schmidt-rank
//! pure states to pure states exactly when two families of operator
//! identities hold up to phases: for all branches `m ≠ n` and all state
//! pairs `(j, k)`, `U_m†U_n` must commute with `ψ_jψ_k†` up to a phase
//! (with `ψ` the dual matrices), and likewise for the `V` side with
//! `ψ_j†ψ_k`. It is enough to check the slice `m = 1`. This example
//! evaluates the full grid, shows the realized phases, and watches the
//! conditions break when an outside state joins the collection.
//!
//! Run with: `cargo run --example collection_check`

use septrans::ruchannel::{example_family_state, ConditionSide, RandomUnitaryChannel};
use septrans::{BipartiteState, C64};

fn main() {
    let channel = RandomUnitaryChannel::two_qubit_example(0.4).unwrap();

    // Draw members of both sign families of the channel's fixed states.
    let states = vec![
        example_family_state(true, C64::new(0.5, 0.0), C64::new(0.5, 0.0)).unwrap(),
        example_family_state(true, C64::new(0.8, 0.1), C64::new(-0.2, 0.3)).unwrap(),
        example_family_state(false, C64::new(0.3, -0.4), C64::new(0.6, 0.2)).unwrap(),
    ];

    let report = channel.check_collection(&states, 1e-9).unwrap();
    println!("pair condition, U side: {}", report.pair_condition_a);
    println!("pair condition, V side: {}", report.pair_condition_b);
    assert!(report.pair_condition_a && report.pair_condition_b);
    assert!(report.per_state.iter().all(|s| s.deterministic));
    println!("all {} states mapped deterministically", states.len());

    // The phase table records the phase realizing each dot-equality. With 2
    // branches and 3 states: 2 sides × 2 ordered branch pairs × 9 = 36.
    assert_eq!(report.phase_table.len(), 36);
    println!("\nfirst few realized phases:");
    for entry in report.phase_table.iter().take(6) {
        println!(
            "  side {}, branches ({}, {}), states ({}, {}): theta = {:+.4}",
            match entry.side {
                ConditionSide::USide => "U",
                ConditionSide::VSide => "V",
            },
            entry.m,
            entry.n,
            entry.j,
            entry.k,
            entry.theta,
        );
    }

    // Mixing the two sign families is fine — both belong to the channel's
    // fixed structure. An arbitrary full-rank state is not, and a single
    // intruder breaks the grid AND fails to stay pure.
    let mut with_intruder = states.clone();
    with_intruder.push(BipartiteState::random(2, 2, 99).unwrap());
    let broken = channel.check_collection(&with_intruder, 1e-9).unwrap();
    println!(
        "\nwith an intruder: U-side condition = {}, V-side condition = {}",
        broken.pair_condition_a, broken.pair_condition_b
    );
    assert!(!broken.pair_condition_a);
    assert!(!broken.pair_condition_b);
    assert!(broken.per_state[..3].iter().all(|s| s.deterministic));
    assert!(!broken.per_state[3].deterministic);
    println!("original members still deterministic; the intruder is not.");

    // The conditions require full Schmidt rank — a product state is
    // rejected up front, not silently mis-evaluated.
    let mut amps = vec![C64::new(0.0, 0.0); 4];
    amps[0] = C64::new(1.0, 0.0);
    let product = BipartiteState::new(2, 2, amps).unwrap();
    assert!(channel.check_collection(&[product], 1e-9).is_err());
    println!("rank-deficient input rejected as expected.");
    println!("all checks passed.");
}
