//! Reverse Cauchy-Schwarz statements about projections, as checkable
//! predicates.
//!
//! Margins are the signed slack of each inequality divided by the product of
//! the norms involved plus one, so thresholds do not depend on scale.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{angle_to_complement, project, Radians, RealVector, SubspaceBasis};
use crate::projection::projected_aperture;

/// A conclusion counts as holding down to this (negative) margin.
pub const CONCLUSION_SLACK: f64 = 1e-9;

/// Hypotheses of the enhanced inequality must hold with at least this margin.
pub const STRICT_MARGIN: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CbsCheck {
    pub premise_holds: bool,
    pub conclusion_holds: bool,
    pub premise_margin: f64,
    pub conclusion_margin: f64,
    /// For the sign lemma only: whether `⟨Pu, Pv⟩ > 0`, reported when the
    /// premise holds, `Pu ≠ O` and `0 < ψ < π/2`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strict_conclusion_holds: Option<bool>,
}

/// `(⟨x, y⟩ − c ‖x‖‖y‖) / (‖x‖‖y‖ + 1)`
pub fn normalized_slack(x: &RealVector, y: &RealVector, c: f64) -> f64 {
    let scale = x.norm() * y.norm();
    (x.dot(y) - c * scale) / (scale + 1.0)
}

/// `⟨u, v⟩ ≥ cos φ ‖u‖‖v‖ ⟹ ⟨Pu, Pv⟩ ≥ cos φ₁ ‖Pu‖‖Pv‖` for `φ < ∠(v, V⊥)`.
///
/// The premise holds at margin `≥ 0`; the conclusion is allowed
/// [`CONCLUSION_SLACK`].
pub fn check_projection_implication(
    u: &RealVector,
    v: &RealVector,
    space: &SubspaceBasis,
    phi: Radians,
) -> Result<CbsCheck> {
    u.check_dim(space.ambient_dim())?;
    let psi = angle_to_complement(v, space)?;
    if phi >= psi {
        return Err(Error::regime(format!(
            "implication needs phi < psi, got phi={}, psi={}",
            phi.value(),
            psi.value()
        )));
    }
    let phi1 = projected_aperture(phi, psi)?;
    let pu = space.project_onto(u)?;
    let pv = space.project_onto(v)?;
    let premise_margin = normalized_slack(u, v, phi.cos());
    let conclusion_margin = normalized_slack(&pu, &pv, phi1.cos());
    Ok(CbsCheck {
        premise_holds: premise_margin >= 0.0,
        conclusion_holds: conclusion_margin >= -CONCLUSION_SLACK,
        premise_margin,
        conclusion_margin,
        strict_conclusion_holds: None,
    })
}

/// Margins of the two hypotheses of the enhanced inequality
/// `⟨u, v⟩ < α ‖u‖‖v‖` for every `u = u₁ ∔ u₂`:
///
/// 1. `‖v₂‖ < α ‖v₁‖ / √(1 − α²)`
/// 2. `⟨u₁, v₁⟩ < √((α²‖v‖² − ‖v₂‖²) / (‖v‖² − ‖v₂‖²)) ‖u₁‖‖v₁‖`
///
/// The second margin is `None` when the first hypothesis fails, since its
/// coefficient is then undefined.
pub fn enhanced_cbs_margins(
    u1: &RealVector,
    v: &RealVector,
    space: &SubspaceBasis,
    alpha: f64,
) -> Result<(f64, Option<f64>)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha {alpha} must lie in (0, 1)")));
    }
    u1.check_dim(space.ambient_dim())?;
    v.check_dim(space.ambient_dim())?;
    if !space.contains(u1, 1e-10) {
        return Err(Error::invalid("u1 must lie in the subspace"));
    }
    let d = project(space, v)?;
    let (n1, n2) = (d.parallel.norm(), d.perpendicular.norm());
    let first = (alpha * n1 / (1.0 - alpha * alpha).sqrt() - n2) / (v.norm() + 1.0);
    if first <= STRICT_MARGIN {
        return Ok((first, None));
    }
    // ‖v‖² − ‖v₂‖² = ‖v₁‖²
    let coefficient = ((alpha * alpha * v.norm_squared() - n2 * n2) / (n1 * n1))
        .clamp(0.0, 1.0)
        .sqrt();
    let scale = u1.norm() * n1;
    let second = (coefficient * scale - u1.dot(&d.parallel)) / (scale + 1.0);
    Ok((first, Some(second)))
}

/// Whether both hypotheses of the enhanced inequality hold with margin
/// above [`STRICT_MARGIN`].
pub fn enhanced_cbs_condition(
    u1: &RealVector,
    v: &RealVector,
    space: &SubspaceBasis,
    alpha: f64,
) -> Result<bool> {
    let (first, second) = enhanced_cbs_margins(u1, v, space, alpha)?;
    Ok(first > STRICT_MARGIN && second.is_some_and(|m| m > STRICT_MARGIN))
}

/// `⟨u, v⟩ ≥ cos ψ ‖u‖‖v‖ ⟹ ⟨Pu, Pv⟩ ≥ 0` with `ψ = ∠(v, V⊥)`, and the
/// strict version when `Pu ≠ O` and `0 < ψ < π/2`.
pub fn check_sign_lemma(u: &RealVector, v: &RealVector, space: &SubspaceBasis) -> Result<CbsCheck> {
    u.check_dim(space.ambient_dim())?;
    if space.is_full() {
        return Err(Error::regime("sign lemma needs V != H"));
    }
    if v.is_zero() {
        return Err(Error::regime("sign lemma needs v != O"));
    }
    let psi = angle_to_complement(v, space)?;
    if psi.value() <= 0.0 {
        return Err(Error::regime("sign lemma needs psi > 0"));
    }
    let dv = project(space, v)?;
    let pu = space.project_onto(u)?;
    // cos ψ straight from the decomposition.
    let cos_psi = dv.perpendicular.norm() / v.norm();
    let premise_margin = normalized_slack(u, v, cos_psi);
    let conclusion_margin = normalized_slack(&pu, &dv.parallel, 0.0);
    let premise_holds = premise_margin >= 0.0;
    let strict_applies = premise_holds
        && !pu.is_zero()
        && psi.value() < std::f64::consts::FRAC_PI_2
        && !dv.perpendicular.is_zero();
    Ok(CbsCheck {
        premise_holds,
        conclusion_holds: conclusion_margin >= -CONCLUSION_SLACK,
        premise_margin,
        conclusion_margin,
        strict_conclusion_holds: strict_applies.then_some(conclusion_margin > 0.0),
    })
}
