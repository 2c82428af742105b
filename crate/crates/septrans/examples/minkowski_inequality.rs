//! The determinant inequality behind the product condition.
//!
//! For positive semidefinite `D × D` matrices,
//! `det(Σ_m Q_m)^{1/D} ≥ Σ_m det(Q_m)^{1/D}`, with equality exactly when
//! all summands are proportional. Applied to `Q_m = scaled Kraus products`
//! this inequality is what forces the product of Schmidt coefficients to
//! shrink under deterministic separable operations — and its equality case
//! is what forces every Kraus factor to be proportional to a unitary when
//! the product is preserved.
//!
//! Run with: `cargo run --example minkowski_inequality`

use rand::SeedableRng;
use septrans::criteria::minkowski_check;
use septrans::numerics::haar_unitary;
use septrans::{C64, CMatrix};

fn random_psd(dim: usize, seed: u64) -> CMatrix {
    // U diag(s) U† with random nonnegative diagonal: PSD by construction.
    let u = haar_unitary(dim, seed).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xD1A6);
    let mut d = CMatrix::zeros(dim, dim);
    for i in 0..dim {
        d[(i, i)] = C64::new(rand::Rng::random::<f64>(&mut rng), 0.0);
    }
    u.mul(&d).mul(&u.adjoint())
}

fn main() {
    // A generic family: strict inequality.
    let qs: Vec<CMatrix> = (0..3).map(|i| random_psd(4, 100 + i)).collect();
    let report = minkowski_check(&qs, 1e-9).unwrap();
    println!(
        "generic family:      det(ΣQ)^(1/D) = {:.6}, Σ det(Q)^(1/D) = {:.6}, gap = {:.3e}",
        report.lhs, report.rhs, report.gap
    );
    assert!(report.gap > 1e-6, "generic families have a strict gap");
    assert!(!report.proportional);

    // A proportional family: equality to machine precision.
    let base = random_psd(4, 7);
    let qs: Vec<CMatrix> = [0.5, 1.25, 2.0]
        .iter()
        .map(|&c| base.scale(C64::new(c, 0.0)))
        .collect();
    let report = minkowski_check(&qs, 1e-9).unwrap();
    println!(
        "proportional family: gap = {:.3e}, detected proportional = {}",
        report.gap, report.proportional
    );
    assert!(report.gap.abs() <= 1e-10);
    assert!(report.proportional);

    // Rank-deficient summands are fine: determinants vanish, and the right
    // side loses those terms while the left side keeps growing.
    let mut rank_one = CMatrix::zeros(3, 3);
    rank_one[(0, 0)] = C64::new(1.0, 0.0);
    let full = random_psd(3, 21);
    let report = minkowski_check(&[rank_one, full], 1e-9).unwrap();
    println!(
        "rank-deficient + full: lhs = {:.6}, rhs = {:.6} (only the full term contributes)",
        report.lhs, report.rhs
    );
    assert!(report.gap >= -1e-12);

    // Sweep: the inequality never fails across dimensions and family sizes.
    println!("\nsweeping sizes 2..=4 and dimensions 2..=6:");
    let mut families = 0;
    for size in 2..=4usize {
        for dim in 2..=6usize {
            for trial in 0..20u64 {
                let seed = (size as u64) << 16 | (dim as u64) << 8 | trial;
                let qs: Vec<CMatrix> =
                    (0..size).map(|i| random_psd(dim, seed * 31 + i as u64)).collect();
                let report = minkowski_check(&qs, 1e-9).unwrap();
                assert!(
                    report.gap >= -1e-12,
                    "violation at size {size}, dim {dim}, trial {trial}: {:.3e}",
                    report.gap
                );
                families += 1;
            }
        }
    }
    println!("    {families} random families, no violations.");
    println!("all checks passed.");
}
