//! Dense real vectors, orthonormal subspace bases and orthogonal projection.
//!
//! Angles follow the convention that any angle involving the zero vector is
//! `π`. The angle between a vector and a subspace is the infimum over the
//! subspace, so `∠(u, {O}) = π` and, for `u ≠ O`,
//! `∠(u, V⊥) = arccos(‖u₂‖ / ‖u‖)` where `u₂ = u − P u`.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Zero test: `‖v‖ ≤ ZERO_TOL · √dim` means `v` is treated as `O`.
pub const ZERO_TOL: f64 = 1e-12;

/// Gram matrix deviation accepted by [`SubspaceBasis::from_orthonormal`].
pub const ORTHO_TOL: f64 = 1e-10;

/// Rank threshold for [`SubspaceBasis::orthonormalize`], relative to the
/// largest input norm.
pub const RANK_TOL: f64 = 1e-12;

/// A finite real coordinate vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct RealVector(Vec<f64>);

impl RealVector {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("vector must have at least one coordinate"));
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(RealVector(coords))
    }

    pub fn zeros(dim: usize) -> Self {
        assert!(dim > 0, "zero-dimensional vector");
        RealVector(vec![0.0; dim])
    }

    /// The `index`-th standard basis vector.
    pub fn unit(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = 1.0;
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.0
    }

    pub fn dot(&self, other: &Self) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn norm_squared(&self) -> f64 {
        self.dot(self)
    }

    pub fn is_zero(&self) -> bool {
        self.norm() <= ZERO_TOL * (self.dim() as f64).sqrt()
    }

    pub fn scale(&self, factor: f64) -> Self {
        RealVector(self.0.iter().map(|c| c * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        RealVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        RealVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// `self += factor · other`
    pub fn axpy(&mut self, factor: f64, other: &Self) {
        debug_assert_eq!(self.dim(), other.dim());
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a += factor * b;
        }
    }

    /// Unit vector in the direction of `self`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.scale(1.0 / self.norm()))
        }
    }

    pub fn check_dim(&self, expected: usize) -> Result<()> {
        if self.dim() == expected {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected,
                found: self.dim(),
            })
        }
    }
}

impl TryFrom<Vec<f64>> for RealVector {
    type Error = Error;

    fn try_from(coords: Vec<f64>) -> Result<Self> {
        RealVector::new(coords)
    }
}

impl From<RealVector> for Vec<f64> {
    fn from(v: RealVector) -> Self {
        v.0
    }
}

impl fmt::Display for RealVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An angle in `[0, π]`.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Radians(f64);

impl Radians {
    pub const ZERO: Radians = Radians(0.0);
    pub const RIGHT: Radians = Radians(FRAC_PI_2);
    pub const STRAIGHT: Radians = Radians(PI);

    pub fn new(value: f64) -> Result<Self> {
        if (0.0..=PI).contains(&value) {
            Ok(Radians(value))
        } else {
            Err(Error::AngleOutOfRange(value))
        }
    }

    /// Clamps into `[0, π]`; for values produced by trigonometric routines
    /// that may overshoot by an ulp.
    pub(crate) fn clamped(value: f64) -> Self {
        Radians(value.clamp(0.0, PI))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn cos(self) -> f64 {
        self.0.cos()
    }

    pub fn sin(self) -> f64 {
        self.0.sin()
    }
}

impl TryFrom<f64> for Radians {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Radians::new(value)
    }
}

impl From<Radians> for f64 {
    fn from(r: Radians) -> f64 {
        r.0
    }
}

impl fmt::Display for Radians {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rad", self.0)
    }
}

/// Orthonormal basis of a subspace `V` of `R^n`. The empty basis is `{O}`;
/// a basis of `n` vectors is the whole space.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    basis: Vec<RealVector>,
}

impl SubspaceBasis {
    /// Orthonormal basis of the span of `raw`. Vectors whose residual after
    /// orthogonalization falls below `RANK_TOL × max input norm` are dropped.
    /// Every residual is orthogonalized twice.
    pub fn orthonormalize(raw: &[RealVector], ambient_dim: usize) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::invalid("ambient dimension must be positive"));
        }
        for v in raw {
            v.check_dim(ambient_dim)?;
        }
        let max_norm = raw.iter().map(RealVector::norm).fold(0.0, f64::max);
        let threshold = RANK_TOL * max_norm;
        let mut basis: Vec<RealVector> = Vec::new();
        for v in raw {
            if basis.len() == ambient_dim {
                break;
            }
            let mut r = v.clone();
            for _ in 0..2 {
                for q in &basis {
                    let c = r.dot(q);
                    r.axpy(-c, q);
                }
            }
            let n = r.norm();
            if n > threshold && n > 0.0 {
                basis.push(r.scale(1.0 / n));
            }
        }
        Ok(SubspaceBasis { ambient_dim, basis })
    }

    /// Accepts a basis that is already orthonormal within [`ORTHO_TOL`].
    pub fn from_orthonormal(basis: Vec<RealVector>, ambient_dim: usize) -> Result<Self> {
        if basis.len() > ambient_dim {
            return Err(Error::invalid(format!(
                "{} basis vectors exceed ambient dimension {ambient_dim}",
                basis.len()
            )));
        }
        for v in &basis {
            v.check_dim(ambient_dim)?;
        }
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate().skip(i) {
                let expected = if i == j { 1.0 } else { 0.0 };
                if (a.dot(b) - expected).abs() > ORTHO_TOL {
                    return Err(Error::invalid(format!(
                        "basis is not orthonormal at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SubspaceBasis { ambient_dim, basis })
    }

    /// The zero subspace `{O}`.
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    /// The whole space.
    pub fn full(ambient_dim: usize) -> Self {
        Self::coordinates(ambient_dim, &(0..ambient_dim).collect::<Vec<_>>())
            .expect("all indices are in range")
    }

    /// Span of the listed standard basis directions (duplicates ignored).
    pub fn coordinates(ambient_dim: usize, indices: &[usize]) -> Result<Self> {
        let mut sorted = indices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&i| i >= ambient_dim) {
            return Err(Error::invalid(format!(
                "coordinate index {bad} out of range for dimension {ambient_dim}"
            )));
        }
        Ok(SubspaceBasis {
            ambient_dim,
            basis: sorted
                .into_iter()
                .map(|i| RealVector::unit(ambient_dim, i))
                .collect(),
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RealVector] {
        &self.basis
    }

    pub fn is_zero_subspace(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    /// `P u`, without the dimension check.
    pub(crate) fn apply(&self, u: &RealVector) -> RealVector {
        let mut out = RealVector::zeros(self.ambient_dim);
        for b in &self.basis {
            out.axpy(u.dot(b), b);
        }
        out
    }

    /// `P u` (the component of `u` in `V`).
    pub fn project_onto(&self, u: &RealVector) -> Result<RealVector> {
        u.check_dim(self.ambient_dim)?;
        Ok(self.apply(u))
    }

    /// Whether `w` lies in `V` up to `tol · (‖w‖ + 1)`.
    pub fn contains(&self, w: &RealVector, tol: f64) -> bool {
        w.dim() == self.ambient_dim && w.sub(&self.apply(w)).norm() <= tol * (w.norm() + 1.0)
    }

    /// A unit vector in `V` orthogonal to every vector in `against`, picked
    /// deterministically from the basis. `None` if no such vector exists.
    pub fn unit_vector_orthogonal_to(&self, against: &[RealVector]) -> Option<RealVector> {
        // For z ∈ V, ⟨z, a⟩ = ⟨z, P a⟩, so orthogonalize within V.
        let inside: Vec<RealVector> = against.iter().map(|a| self.apply(a)).collect();
        let frame = SubspaceBasis::orthonormalize(&inside, self.ambient_dim).ok()?;
        best_residual(self.basis.iter().cloned(), &frame)
    }

    /// A unit vector in `V⊥`, picked deterministically from the standard
    /// basis. `None` when `V` is the whole space.
    pub fn complement_unit_vector(&self) -> Option<RealVector> {
        let candidates = (0..self.ambient_dim).map(|i| RealVector::unit(self.ambient_dim, i));
        best_residual(candidates, self)
    }
}

/// Among `candidates`, the one with the largest component orthogonal to
/// `frame`, normalized.
fn best_residual(
    candidates: impl Iterator<Item = RealVector>,
    frame: &SubspaceBasis,
) -> Option<RealVector> {
    let mut best: Option<RealVector> = None;
    for c in candidates {
        let mut r = c.sub(&frame.apply(&c));
        r = r.sub(&frame.apply(&r));
        if best.as_ref().is_none_or(|b| r.norm() > b.norm()) {
            best = Some(r);
        }
    }
    best.filter(|b| b.norm() > 1e-8)
        .map(|b| b.scale(1.0 / b.norm()))
}

/// `u = u₁ ∔ u₂` with `u₁ ∈ V`, `u₂ ∈ V⊥`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub parallel: RealVector,
    pub perpendicular: RealVector,
}

pub fn project(space: &SubspaceBasis, u: &RealVector) -> Result<Decomposition> {
    let parallel = space.project_onto(u)?;
    let perpendicular = u.sub(&parallel);
    Ok(Decomposition {
        parallel,
        perpendicular,
    })
}

/// `∠(u, v)`, `π` when either vector is zero.
///
/// Evaluated as `2·atan2(‖û − v̂‖, ‖û + v̂‖)`, which agrees with
/// `arccos(⟨u,v⟩ / (‖u‖‖v‖))` but stays accurate near `0` and `π`.
pub fn angle_between(u: &RealVector, v: &RealVector) -> Result<Radians> {
    v.check_dim(u.dim())?;
    let (Some(uh), Some(vh)) = (u.normalized(), v.normalized()) else {
        return Ok(Radians::STRAIGHT);
    };
    let angle = 2.0 * uh.sub(&vh).norm().atan2(uh.add(&vh).norm());
    Ok(Radians::clamped(angle))
}

/// `∠(u, V) = arccos(‖u₁‖ / ‖u‖)`; `π` for `u = O` or `V = {O}`.
pub fn angle_to_subspace(u: &RealVector, space: &SubspaceBasis) -> Result<Radians> {
    let d = project(space, u)?;
    if u.is_zero() || space.is_zero_subspace() {
        return Ok(Radians::STRAIGHT);
    }
    Ok(Radians::clamped(
        d.perpendicular.norm().atan2(d.parallel.norm()),
    ))
}

/// `∠(u, V⊥) = arccos(‖u₂‖ / ‖u‖)`; `π` for `u = O` or `V = H`.
pub fn angle_to_complement(u: &RealVector, space: &SubspaceBasis) -> Result<Radians> {
    let d = project(space, u)?;
    if u.is_zero() || space.is_full() {
        return Ok(Radians::STRAIGHT);
    }
    Ok(Radians::clamped(
        d.parallel.norm().atan2(d.perpendicular.norm()),
    ))
}
