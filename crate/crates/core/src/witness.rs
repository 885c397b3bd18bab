//! Explicit vectors realizing the extreme configurations of the projection
//! table, plus the lift that turns one such vector into a whole projected cone.

use serde::Serialize;

use crate::cone::RoundCone;
use crate::error::{Error, LiftViolation, Result};
use crate::linalg::{
    angle_between, angle_to_complement, project, Radians, RealVector, SubspaceBasis,
};
use crate::projection::projected_aperture;

/// Bisection steps used by the root searches.
const BISECTION_STEPS: usize = 80;
/// The doubling search gives up beyond this parameter.
const MAX_PARAMETER: f64 = (1u64 << 60) as f64;
/// Lift preconditions are checked at this tolerance.
const LIFT_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    /// `u = cos φ₁ v₁ + ‖v₁‖ sin φ₁ z + v₂ / cos φ₁`, saturating both the
    /// cone inequality and the projected-aperture bound.
    Equality,
    /// `u = t v₁ + v₂` with `t < 0` (axis has parts in both `V` and `V⊥`).
    AntipodalMixed,
    /// `u = t z + v₂` with `z ∈ V` (axis orthogonal to `V`).
    AntipodalAxisInComplement,
    /// `u = t v₁ + z` with `z ∈ V⊥` (axis inside `V`).
    AntipodalAxisInSubspace,
    /// `u = ε v₁ + t v₂ + z` on the `φ = ψ` border.
    Border,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub vector: RealVector,
    /// `∠(u, v)`
    pub certified_original_angle: Radians,
    /// `∠(Pu, Pv)`
    pub certified_projected_angle: Radians,
    pub construction: Construction,
}

impl Witness {
    fn certify(
        vector: RealVector,
        axis: &RealVector,
        space: &SubspaceBasis,
        construction: Construction,
    ) -> Result<Self> {
        let pu = space.project_onto(&vector)?;
        if vector.is_zero() || pu.is_zero() {
            return Err(Error::RootNotFound(format!(
                "{construction:?} construction degenerated to a vector with Pu = O"
            )));
        }
        let pv = space.project_onto(axis)?;
        Ok(Witness {
            certified_original_angle: angle_between(&vector, axis)?,
            certified_projected_angle: angle_between(&pu, &pv)?,
            vector,
            construction,
        })
    }
}

struct Setup {
    v1: RealVector,
    v2: RealVector,
    psi: Radians,
}

fn setup(axis: &RealVector, space: &SubspaceBasis) -> Result<Setup> {
    axis.check_dim(space.ambient_dim())?;
    if axis.is_zero() {
        return Err(Error::regime("axis must be nonzero"));
    }
    let d = project(space, axis)?;
    Ok(Setup {
        v1: d.parallel,
        v2: d.perpendicular,
        psi: angle_to_complement(axis, space)?,
    })
}

/// A cone member whose projection sits exactly on the boundary of the
/// projected cone `C_V(Pv, φ₁)`; shows `φ₁` cannot be narrowed.
///
/// Requires `dim V ≥ 2`, `v ≠ O` and `φ < ∠(v, V⊥)`.
pub fn equality_witness(axis: &RealVector, space: &SubspaceBasis, phi: Radians) -> Result<Witness> {
    let s = setup(axis, space)?;
    if space.rank() < 2 {
        return Err(Error::regime("equality witness needs dim V >= 2"));
    }
    if phi >= s.psi {
        return Err(Error::regime(format!(
            "equality witness needs phi < psi, got phi={}, psi={}",
            phi.value(),
            s.psi.value()
        )));
    }
    let phi1 = projected_aperture(phi, s.psi)?;
    let z = space
        .unit_vector_orthogonal_to(std::slice::from_ref(&s.v1))
        .ok_or_else(|| Error::regime("no unit vector in V orthogonal to Pv"))?;

    let mut u = s.v1.scale(phi1.cos());
    u.axpy(s.v1.norm() * phi1.sin(), &z);
    if !s.v2.is_zero() {
        let c = phi1.cos();
        if c <= 1e-14 {
            return Err(Error::regime("projected aperture too close to pi/2"));
        }
        u.axpy(1.0 / c, &s.v2);
    }
    Witness::certify(u, axis, space, Construction::Equality)
}

/// A cone member whose projection points exactly against `Pv`, showing the
/// projection is all of `V` when `φ > ∠(v, V⊥)`.
///
/// Requires `1 ≤ dim V < n`, `v ≠ O` and `φ > ∠(v, V⊥)`.
pub fn antipodal_witness(
    axis: &RealVector,
    space: &SubspaceBasis,
    phi: Radians,
) -> Result<Witness> {
    let s = setup(axis, space)?;
    if space.is_zero_subspace() || space.is_full() {
        return Err(Error::regime("antipodal witness needs {O} != V != H"));
    }
    if phi <= s.psi {
        return Err(Error::regime(format!(
            "antipodal witness needs phi > psi, got phi={}, psi={}",
            phi.value(),
            s.psi.value()
        )));
    }
    let (moving, fixed, construction) = match (s.v1.is_zero(), s.v2.is_zero()) {
        (false, false) => (s.v1.clone(), s.v2.clone(), Construction::AntipodalMixed),
        (true, _) => (
            space.basis()[0].clone(),
            s.v2.clone(),
            Construction::AntipodalAxisInComplement,
        ),
        (false, true) => (
            s.v1.clone(),
            space
                .complement_unit_vector()
                .expect("V != H has a nonzero complement"),
            Construction::AntipodalAxisInSubspace,
        ),
    };
    let cos_phi = phi.cos();
    let axis_norm = axis.norm();
    let at = |t: f64| {
        let mut u = fixed.clone();
        u.axpy(t, &moving);
        u
    };
    let slack = |t: f64| {
        let u = at(t);
        u.dot(axis) - cos_phi * u.norm() * axis_norm
    };
    let t0 = negative_parameter(slack)?;
    Witness::certify(at(t0), axis, space, construction)
}

/// Some `t < 0` with `f(t) > 0`, given `f(0) > 0`.
fn negative_parameter(f: impl Fn(f64) -> f64) -> Result<f64> {
    if f(0.0) <= 0.0 {
        return Err(Error::RootNotFound(
            "slack is not positive at t = 0".to_string(),
        ));
    }
    let start = -1.0;
    if f(start) > 0.0 {
        return Ok(start);
    }
    let (mut lo, mut hi) = (start, 0.0);
    for _ in 0..BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    // Halfway back toward 0 keeps a margin when f is concave on [hi, 0].
    let half = 0.5 * hi;
    if half < 0.0 && f(half) > 0.0 {
        Ok(half)
    } else if hi < 0.0 {
        Ok(hi)
    } else {
        Err(Error::RootNotFound(
            "no negative parameter with positive slack".to_string(),
        ))
    }
}

/// A member of `C(v, ψ)` with `ψ = ∠(v, V⊥)` whose projection satisfies
/// `⟨Pu, Pv⟩ = ε ‖Pu‖‖Pv‖`; as `ε → 0⁺` the projected angle approaches `π/2`.
///
/// Requires `dim V ≥ 2`, `v ≠ O`, `ψ > 0` and `ε ∈ (0, 1]`.
pub fn border_witness(axis: &RealVector, space: &SubspaceBasis, epsilon: f64) -> Result<Witness> {
    if !(epsilon > 0.0 && epsilon <= 1.0) {
        return Err(Error::invalid(format!(
            "epsilon {epsilon} must lie in (0, 1]"
        )));
    }
    let s = setup(axis, space)?;
    if space.rank() < 2 {
        return Err(Error::regime("border witness needs dim V >= 2"));
    }
    if s.psi.value() <= 0.0 || s.v1.is_zero() {
        return Err(Error::regime("border witness needs psi > 0"));
    }
    let scale = 1.0 / s.v1.norm();
    let v1 = s.v1.scale(scale);
    let v2 = s.v2.scale(scale);
    let z = space
        .unit_vector_orthogonal_to(std::slice::from_ref(&v1))
        .ok_or_else(|| Error::regime("no unit vector in V orthogonal to Pv"))?
        .scale((1.0 - epsilon * epsilon).max(0.0).sqrt());

    // cos ψ = ‖v₂‖/‖v‖, or −1 under the V = H convention.
    let axis_norm = axis.norm();
    let cos_psi = if space.is_full() {
        -1.0
    } else {
        s.v2.norm() / axis_norm
    };
    let at = |t: f64| {
        let mut u = v1.scale(epsilon);
        u.axpy(t, &v2);
        u.add(&z)
    };
    let slack = |t: f64| {
        let u = at(t);
        u.dot(axis) - cos_psi * u.norm() * axis_norm
    };

    // The slack is increasing in t with limit proportional to ε.
    let mut t = 1.0;
    while slack(t) <= 0.0 {
        t *= 2.0;
        if t > MAX_PARAMETER {
            return Err(Error::RootNotFound(format!(
                "border slack still non-positive at t = 2^60 (epsilon = {epsilon})"
            )));
        }
    }
    // One more doubling moves away from the crossing for a positive margin.
    let t0 = if 2.0 * t <= MAX_PARAMETER { 2.0 * t } else { t };
    Witness::certify(at(t0), axis, space, Construction::Border)
}

/// Given `seed ∈ C(a, v, φ)` with `P(seed − a) ≠ O` and a target `w ∈ V`
/// no farther from `Pv` than `P(seed − a)` is (measured around `Pa`),
/// returns `ũ ∈ C(a, v, φ)` with `Pũ = w`.
///
/// The construction is `ũ = w + (seed − a)₂ · ‖w − Pa‖ / ‖(seed − a)₁‖ + a₂`.
pub fn lift_to_cone(
    target: &RealVector,
    seed: &RealVector,
    cone: &RoundCone,
    space: &SubspaceBasis,
) -> Result<RealVector> {
    let n = space.ambient_dim();
    cone.apex().check_dim(n)?;
    target.check_dim(n)?;
    seed.check_dim(n)?;

    let closed = cone.with_flavor(crate::cone::Flavor::Closed);
    if !closed.contains(seed, LIFT_TOL)? {
        return Err(Error::Lift(LiftViolation::SeedOutsideCone));
    }
    let apex = cone.apex();
    let seed_parts = project(space, &seed.sub(apex))?;
    if seed_parts.parallel.is_zero() {
        return Err(Error::Lift(LiftViolation::SeedProjectsToApex));
    }
    if !space.contains(target, LIFT_TOL) {
        return Err(Error::Lift(LiftViolation::TargetOutsideSubspace));
    }
    let apex_parts = project(space, apex)?;
    let w = target.sub(&apex_parts.parallel);
    let pv = space.project_onto(cone.axis())?;
    let theta = angle_between(&seed_parts.parallel, &pv)?;
    let scale = w.norm() * pv.norm();
    if (w.dot(&pv) - theta.cos() * scale) / (scale + 1.0) < -LIFT_TOL {
        return Err(Error::Lift(LiftViolation::TargetOutsideProjectedCone));
    }

    let stretch = w.norm() / seed_parts.parallel.norm();
    let mut lifted = target.clone();
    lifted.axpy(stretch, &seed_parts.perpendicular);
    Ok(lifted.add(&apex_parts.perpendicular))
}
