//! Spectrum-level transformability verdicts for deterministic separable
//! operations: rank monotonicity, the Schmidt-product necessary condition,
//! Nielsen majorization, the equal-spectra equality case, reverse-map
//! impossibility, the two-dimensional collapse where product and
//! majorization conditions coincide, and the Minkowski determinant
//! inequality for sums of positive semidefinite matrices.

use crate::numerics::CMatrix;
use crate::{Error, Result, RANK_CUTOFF};
use serde::Serialize;

/// Descending Schmidt coefficients `λ_0 ≥ λ_1 ≥ … ≥ 0` with `Σ λ_j² = 1`.
///
/// These are the coefficients themselves; majorization statements below are
/// about their squares (a probability vector).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchmidtSpectrum {
    values: Vec<f64>,
}

impl SchmidtSpectrum {
    /// Sorts descending (ordering is pure convention), then validates
    /// nonnegativity and normalization of the squares within 1e-9.
    pub fn new(mut values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Input("spectrum must be nonempty".into()));
        }
        if values.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Input(
                "spectrum entries must be finite and nonnegative".into(),
            ));
        }
        let total: f64 = values.iter().map(|x| x * x).sum();
        if (total - 1.0).abs() > crate::DEFAULT_TOL {
            return Err(Error::Input(format!(
                "squared spectrum sums to {total}, expected 1"
            )));
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self { values })
    }

    /// Build from squared coefficients (a probability vector).
    pub fn from_squares(squares: &[f64]) -> Result<Self> {
        if squares.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Input(
                "squared spectrum entries must be finite and nonnegative".into(),
            ));
        }
        Self::new(squares.iter().map(|x| x.sqrt()).collect())
    }

    /// Spectrum of a state's Schmidt decomposition.
    pub fn of_state(psi: &crate::BipartiteState) -> Result<Self> {
        Ok(Self {
            values: psi.schmidt_decompose(RANK_CUTOFF)?.coefficients,
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Squared coefficients.
    pub fn squared(&self) -> Vec<f64> {
        self.values.iter().map(|x| x * x).collect()
    }

    /// Count of coefficients above the relative cutoff.
    pub fn rank(&self) -> usize {
        let top = self.values[0];
        if top <= 0.0 {
            return 0;
        }
        self.values.iter().filter(|&&x| x > RANK_CUTOFF * top).count()
    }

    /// Entrywise agreement within `tol`, padding the shorter with zeros.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let n = self.values.len().max(other.values.len());
        (0..n).all(|j| {
            let a = self.values.get(j).copied().unwrap_or(0.0);
            let b = other.values.get(j).copied().unwrap_or(0.0);
            (a - b).abs() <= tol
        })
    }
}

/// Outcome tag of the transformability decision ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VerdictTag {
    /// Target rank exceeds source rank: no deterministic separable map.
    ImpossibleRank,
    /// Schmidt-product condition fails: no deterministic separable map.
    ImpossibleProduct,
    /// Products equal, hence spectra identical and any map is local unitary.
    EqualSpectra,
    /// Majorization holds: an LOCC protocol (hence separable map) exists.
    LoccPossible,
    /// Necessary conditions pass, majorization fails: existence unknown.
    OpenRegion,
}

/// Numbers behind a verdict.
#[derive(Debug, Clone, Serialize)]
pub struct VerdictDetails {
    /// Schmidt rank of the source spectrum.
    pub r_psi: usize,
    /// Schmidt rank of the target spectrum.
    pub r_phi: usize,
    /// Product of the first `r_psi` source coefficients.
    pub product_psi: f64,
    /// Product of the first `r_psi` target coefficients.
    pub product_phi: f64,
    /// Whether the target majorizes the source (squared coefficients).
    pub majorization: bool,
}

/// Verdict on deterministically mapping a source to a target spectrum.
#[derive(Debug, Clone, Serialize)]
pub struct TransformVerdict {
    pub tag: VerdictTag,
    pub details: VerdictDetails,
}

/// Report of the two condition families on one-qubit-factor spectra.
#[derive(Debug, Clone, Serialize)]
pub struct Dim2Collapse {
    pub product_holds: bool,
    pub majorization_holds: bool,
    /// The two predicates agree (a theorem in dimension 2).
    pub agree: bool,
}

/// Two sides of the Minkowski determinant inequality.
#[derive(Debug, Clone, Serialize)]
pub struct MinkowskiReport {
    /// `det(Σ Q_m)^{1/D}`.
    pub lhs: f64,
    /// `Σ det(Q_m)^{1/D}`.
    pub rhs: f64,
    /// `lhs − rhs`, nonnegative up to tolerance.
    pub gap: f64,
    /// Whether all summands are scalar multiples of one another.
    pub proportional: bool,
}

/// Does `mu` majorize `lambda` on squared coefficients?
///
/// True iff every leading partial sum of `μ_j²` weakly dominates the
/// corresponding sum of `λ_j²` (within `tol`), padding with zeros.
pub fn majorizes(mu: &SchmidtSpectrum, lambda: &SchmidtSpectrum, tol: f64) -> bool {
    let msq = mu.squared();
    let lsq = lambda.squared();
    let n = msq.len().max(lsq.len());
    let mut cum_m = 0.0;
    let mut cum_l = 0.0;
    for j in 0..n {
        cum_m += msq.get(j).copied().unwrap_or(0.0);
        cum_l += lsq.get(j).copied().unwrap_or(0.0);
        if cum_m < cum_l - tol {
            return false;
        }
    }
    true
}

/// Left and right products of the Schmidt-product condition.
#[derive(Debug, Clone, Serialize)]
pub struct ProductCondition {
    pub holds: bool,
    /// `Π_{j<r} λ_j` over the source rank `r`.
    pub lhs: f64,
    /// `Π_{j<r} μ_j`.
    pub rhs: f64,
}

/// Product condition: the product of the source's positive coefficients must
/// weakly dominate the same-length leading product of the target's.
///
/// The range is the source rank `r`; a lower-rank target contributes zeros
/// and passes automatically.
pub fn product_condition(lambda: &SchmidtSpectrum, mu: &SchmidtSpectrum, tol: f64) -> ProductCondition {
    let r = lambda.rank();
    let lhs: f64 = lambda.values()[..r].iter().product();
    let rhs: f64 = (0..r)
        .map(|j| mu.values().get(j).copied().unwrap_or(0.0))
        .product();
    ProductCondition {
        holds: lhs >= rhs - tol,
        lhs,
        rhs,
    }
}

/// Decision ladder for "does some deterministic separable operation map a
/// state with spectrum `lambda` to one with spectrum `mu`?"
///
/// In order: target rank above source rank is impossible; a failed product
/// condition is impossible; equal (positive) products force identical
/// spectra, where only local unitaries remain; majorization certifies an
/// LOCC protocol; otherwise the necessary conditions pass but existence is
/// undecided.
///
/// Equal products with unequal spectra would contradict the equality case
/// above, so that combination is reported as an internal inconsistency
/// rather than a verdict.
pub fn transform_verdict(
    lambda: &SchmidtSpectrum,
    mu: &SchmidtSpectrum,
    tol: f64,
) -> Result<TransformVerdict> {
    let r_psi = lambda.rank();
    let r_phi = mu.rank();
    let product = product_condition(lambda, mu, tol);
    let majorization = majorizes(mu, lambda, tol);
    let details = VerdictDetails {
        r_psi,
        r_phi,
        product_psi: product.lhs,
        product_phi: product.rhs,
        majorization,
    };
    let tag = if r_phi > r_psi {
        VerdictTag::ImpossibleRank
    } else if !product.holds {
        VerdictTag::ImpossibleProduct
    } else if (product.lhs - product.rhs).abs() <= tol && product.lhs > 0.0 {
        if !lambda.approx_eq(mu, tol.sqrt()) {
            return Err(Error::Inconsistency(format!(
                "equal Schmidt products ({} vs {}) with unequal spectra: {:?} vs {:?}",
                product.lhs,
                product.rhs,
                lambda.values(),
                mu.values()
            )));
        }
        VerdictTag::EqualSpectra
    } else if majorization {
        VerdictTag::LoccPossible
    } else {
        VerdictTag::OpenRegion
    };
    Ok(TransformVerdict { tag, details })
}

/// Necessary condition for the reverse map (target back to source): spectra
/// must be identical; anything else rules the reverse direction out.
pub fn reverse_verdict(lambda: &SchmidtSpectrum, mu: &SchmidtSpectrum, tol: f64) -> bool {
    lambda.approx_eq(mu, tol)
}

/// Evaluate both the product and the majorization condition on length-2
/// spectra, where they provably agree.
pub fn dim2_collapse(
    lambda: &SchmidtSpectrum,
    mu: &SchmidtSpectrum,
    tol: f64,
) -> Result<Dim2Collapse> {
    if lambda.values().len() != 2 || mu.values().len() != 2 {
        return Err(Error::Input(
            "dimension-2 collapse needs length-2 spectra".into(),
        ));
    }
    let product_holds = product_condition(lambda, mu, tol).holds;
    let majorization_holds = majorizes(mu, lambda, tol);
    Ok(Dim2Collapse {
        product_holds,
        majorization_holds,
        agree: product_holds == majorization_holds,
    })
}

/// Minkowski determinant inequality `det(Σ Q)^{1/D} ≥ Σ det(Q_m)^{1/D}` for
/// Hermitian positive semidefinite matrices of common dimension `D`, with
/// equality exactly on proportional families.
pub fn minkowski_check(qs: &[CMatrix], tol: f64) -> Result<MinkowskiReport> {
    let first = qs
        .first()
        .ok_or_else(|| Error::Input("minkowski check needs at least one matrix".into()))?;
    let d = first.rows();
    if !first.is_square() {
        return Err(Error::Input("minkowski check needs square matrices".into()));
    }
    for q in qs {
        if q.rows() != d || q.cols() != d {
            return Err(Error::Input(format!(
                "dimension mismatch: expected {d}x{d}, found {}x{}",
                q.rows(),
                q.cols()
            )));
        }
        let scale = q.frobenius_norm().max(1.0);
        if q.hermiticity_residual() > tol * scale {
            return Err(Error::Input("matrix is not Hermitian".into()));
        }
        let eig = q.hermitian_eig()?;
        if eig.values.iter().any(|&v| v < -tol * scale) {
            return Err(Error::Input(format!(
                "matrix has negative eigenvalue {:.3e}",
                eig.values.last().copied().unwrap_or(0.0)
            )));
        }
    }

    let mut total = CMatrix::zeros(d, d);
    for q in qs {
        total = total.add(q);
    }
    let root = 1.0 / d as f64;
    let lhs = total.det()?.re.max(0.0).powf(root);
    let rhs: f64 = qs
        .iter()
        .map(|q| q.det().map(|det| det.re.max(0.0).powf(root)))
        .sum::<Result<f64>>()?;

    // Proportionality: compare everything to the first summand with nonzero
    // norm, at the scale ratio fixed by traces (PSD traces are real ≥ 0).
    let mut proportional = true;
    if let Some(reference) = qs.iter().find(|q| q.frobenius_norm() > 0.0) {
        let ref_trace = reference.trace().re;
        for q in qs {
            if q.frobenius_norm() == 0.0 {
                continue;
            }
            let f = q.trace().re / ref_trace;
            let diff = q.sub(&reference.scale(crate::numerics::C64::new(f, 0.0)));
            if diff.frobenius_norm() > tol.max(1e-12) * q.frobenius_norm().max(1.0) {
                proportional = false;
                break;
            }
        }
    }

    Ok(MinkowskiReport {
        lhs,
        rhs,
        gap: lhs - rhs,
        proportional,
    })
}
