//! Schmidt decompositions and map-state duality.
//!
//! Every bipartite pure state `|ψ⟩ ∈ H_A ⊗ H_B` can be written as
//! `Σ_j λ_j |ā_j⟩|b̄_j⟩` with orthonormal local bases and nonnegative
//! coefficients — and, equivalently, flattened into a `dA × dB` matrix
//! whose singular values are exactly those coefficients. This example walks
//! through both pictures and the covariance that connects them.
//!
//! Run with: `cargo run --example schmidt_basics`

use septrans::numerics::haar_unitary;
use septrans::{BipartiteState, C64, CMatrix};

fn main() {
    // The state ½(|00⟩ + |01⟩ + |10⟩ − |11⟩) — maximally entangled, but
    // written in a basis where that is not obvious.
    let amps = vec![
        C64::new(0.5, 0.0),
        C64::new(0.5, 0.0),
        C64::new(0.5, 0.0),
        C64::new(-0.5, 0.0),
    ];
    let psi = BipartiteState::new(2, 2, amps).expect("normalized amplitudes");

    let dec = psi.schmidt_decompose(1e-10).expect("nonzero state");
    println!("Schmidt coefficients: {:?}", dec.coefficients);
    println!("Schmidt rank:         {}", dec.rank);
    assert_eq!(dec.rank, 2);
    assert!((dec.coefficients[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);

    // The decomposition really reconstructs the state.
    let rebuilt = dec.reconstruct();
    let ket = psi.ket();
    let err: f64 = rebuilt
        .iter()
        .enumerate()
        .map(|(i, z)| (*z - ket[(i, 0)]).norm_sqr())
        .sum::<f64>()
        .sqrt();
    println!("reconstruction error: {err:.2e}");
    assert!(err < 1e-12);

    // Map-state duality: the same amplitudes arranged as a matrix. For this
    // state the dual is ½[[1, 1], [1, −1]] — a rescaled Hadamard.
    let dual = psi.to_dual();
    println!("\ndual matrix:");
    for i in 0..2 {
        println!(
            "  [{:+.3}, {:+.3}]",
            dual.matrix[(i, 0)].re,
            dual.matrix[(i, 1)].re
        );
    }
    assert_eq!(dual.rank(1e-10).unwrap(), 2);
    let back = BipartiteState::from_dual(&dual).expect("unit Frobenius norm");
    assert!(back.ket().approx_eq(&psi.ket(), 1e-14));

    // Duality covariance: acting with A ⊗ B on the ket is the same as the
    // matrix sandwich A · M · Bᵀ on the dual side.
    let a = haar_unitary(2, 7).unwrap();
    let b = haar_unitary(2, 8).unwrap();
    let moved_ket = a.kron(&b).mul(&psi.ket());
    let moved_dual = a.mul(&dual.matrix).mul(&b.transpose());
    let mut flattened = CMatrix::zeros(4, 1);
    for i in 0..2 {
        for j in 0..2 {
            flattened[(i * 2 + j, 0)] = moved_dual[(i, j)];
        }
    }
    assert!(flattened.approx_eq(&moved_ket, 1e-12));
    println!("\nduality covariance (A⊗B)ψ ↔ A·M·Bᵀ verified.");

    // Local unitaries never change Schmidt coefficients.
    let rotated = BipartiteState::new(
        2,
        2,
        (0..4).map(|i| moved_ket[(i, 0)]).collect(),
    )
    .unwrap();
    let rotated_dec = rotated.schmidt_decompose(1e-10).unwrap();
    for (x, y) in dec.coefficients.iter().zip(&rotated_dec.coefficients) {
        assert!((x - y).abs() < 1e-12);
    }
    println!("local unitary invariance of the spectrum verified.");

    // Supports: for an entangled state embedded in a larger space, the
    // support projectors pick out the subspaces the state actually lives on.
    let mut embedded = vec![C64::ZERO; 9];
    embedded[0] = C64::new(0.8f64.sqrt(), 0.0); // |00⟩
    embedded[4] = C64::new(0.2f64.sqrt(), 0.0); // |11⟩
    let tall = BipartiteState::new(3, 3, embedded).unwrap();
    let supports = tall.supports(1e-10).unwrap();
    println!("\nembedded state support rank: {}", supports.rank);
    assert_eq!(supports.rank, 2);
    let trace_a: f64 = (0..3).map(|i| supports.proj_a[(i, i)].re).sum();
    assert!((trace_a - 2.0).abs() < 1e-12);
    println!("all checks passed.");
}
