//! When can one entangled state reach another? The verdict ladder.
//!
//! For a deterministic separable operation to map `|ψ⟩` to `|φ⟩` the
//! Schmidt spectra must satisfy two necessary conditions — rank cannot
//! increase, and the product of the first `r` coefficients cannot increase
//! — while majorization of the squared spectra is sufficient (it is the
//! LOCC criterion, and LOCC operations are separable). In between sits an
//! open region where the product condition holds but majorization fails.
//! On one-qubit factors the region closes: the two tests provably agree.
//!
//! Run with: `cargo run --example verdict_ladder`

use septrans::criteria::{
    dim2_collapse, majorizes, product_condition, reverse_verdict, transform_verdict,
    SchmidtSpectrum, VerdictTag,
};

fn show(name: &str, lambda: &SchmidtSpectrum, mu: &SchmidtSpectrum) -> VerdictTag {
    let verdict = transform_verdict(lambda, mu, 1e-9).expect("consistent spectra");
    println!(
        "{name}: {:?}\n    source rank {}, target rank {}, products {:.4} vs {:.4}, majorization {}",
        verdict.tag,
        verdict.details.r_psi,
        verdict.details.r_phi,
        verdict.details.product_psi,
        verdict.details.product_phi,
        verdict.details.majorization,
    );
    verdict.tag
}

fn main() {
    // A qubit pair where the target majorizes the source: reachable.
    let lambda = SchmidtSpectrum::from_squares(&[0.7, 0.3]).unwrap();
    let mu = SchmidtSpectrum::from_squares(&[0.9, 0.1]).unwrap();
    assert_eq!(show("qubit, ordered", &lambda, &mu), VerdictTag::LoccPossible);
    assert!(majorizes(&mu, &lambda, 1e-12));

    // The reverse direction fails the product condition: entanglement
    // cannot be concentrated deterministically.
    assert_eq!(
        show("qubit, reversed", &mu, &lambda),
        VerdictTag::ImpossibleProduct
    );
    // So the map is one-way: a transformation is reversible only between
    // equal spectra.
    assert!(!reverse_verdict(&lambda, &mu, 1e-9));
    assert!(reverse_verdict(&lambda, &lambda, 1e-9));

    // Rank can never increase.
    let product = SchmidtSpectrum::from_squares(&[1.0, 0.0]).unwrap();
    assert_eq!(
        show("product to entangled", &product, &lambda),
        VerdictTag::ImpossibleRank
    );

    // Equal spectra: only trivial (local-unitary) transformations remain.
    assert_eq!(
        show("equal spectra", &lambda, &lambda),
        VerdictTag::EqualSpectra
    );

    // Dimension 3 opens a gap. These spectra are incomparable under
    // majorization, yet the product condition holds: the necessary
    // condition does not decide, so the verdict is open.
    let l3 = SchmidtSpectrum::from_squares(&[0.4, 0.35, 0.25]).unwrap();
    let m3 = SchmidtSpectrum::from_squares(&[0.45, 0.28, 0.27]).unwrap();
    assert_eq!(show("incomparable triple", &l3, &m3), VerdictTag::OpenRegion);
    let pc = product_condition(&l3, &m3, 1e-9);
    println!(
        "    product condition holds ({:.6} >= {:.6}) but majorization fails",
        pc.lhs, pc.rhs
    );
    assert!(pc.holds && !majorizes(&m3, &l3, 1e-9));

    // On qubits the ladder collapses: product condition <=> majorization.
    // Check the equivalence over a grid of spectra pairs.
    println!("\nqubit collapse over a 99x99 grid of spectra pairs:");
    let mut checked = 0;
    for i in 1..100 {
        for j in 1..100 {
            let a = SchmidtSpectrum::from_squares(&[i as f64 / 100.0, 1.0 - i as f64 / 100.0]);
            let b = SchmidtSpectrum::from_squares(&[j as f64 / 100.0, 1.0 - j as f64 / 100.0]);
            let (a, b) = (a.unwrap(), b.unwrap());
            let report = dim2_collapse(&a, &b, 1e-12).unwrap();
            assert!(report.agree, "disagreement at ({i}, {j})");
            checked += 1;
        }
    }
    println!("    {checked} pairs, product condition and majorization always agree.");
    println!("all checks passed.");
}
