//! Brute-force checks of the classifier: sample a cone, project every sample
//! and test it against the predicted set; certify the reverse inclusion with
//! explicit lifts; run the discretized `L²(0, 1)` threshold experiment.
//!
//! Sample `i` is drawn from a ChaCha8 stream selected by `i` under the
//! configured seed, and all reductions are counts, minima and maxima, so
//! reports do not depend on the thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cone::{Flavor, RoundCone};
use crate::error::{Error, Result};
use crate::linalg::{angle_between, Radians, RealVector, SubspaceBasis};
use crate::projection::{
    classify, project_open_cone, ClassifierPolicy, ProjectionClass, ProjectionTag,
};
use crate::reverse_cbs::normalized_slack;
use crate::witness::{antipodal_witness, equality_witness, lift_to_cone};

/// Membership tolerance for projected samples and lifted preimages.
pub const VERIFY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// Directions at exactly the half-aperture from the axis.
    BoundaryOnly,
    /// Angle from the axis uniform in `[0, φ]`.
    FilledCone,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub sample_count: usize,
    pub mode: SampleMode,
}

impl SamplerConfig {
    pub fn new(seed: u64, sample_count: usize, mode: SampleMode) -> Result<Self> {
        if sample_count == 0 {
            return Err(Error::invalid("sample_count must be at least 1"));
        }
        Ok(SamplerConfig {
            seed,
            sample_count,
            mode,
        })
    }
}

/// Deterministic, index-addressable sampler over a cone.
///
/// Emits `a + d` with `‖d‖ = 1`. The flavor is ignored: an apex-open cone is
/// sampled through its closure.
#[derive(Clone, Debug)]
pub struct ConeSampler {
    apex: RealVector,
    axis_hat: RealVector,
    phi: Radians,
    cfg: SamplerConfig,
}

impl ConeSampler {
    pub fn new(cone: &RoundCone, cfg: SamplerConfig) -> Result<Self> {
        if cfg.sample_count == 0 {
            return Err(Error::invalid("sample_count must be at least 1"));
        }
        let axis_hat = cone
            .axis()
            .normalized()
            .ok_or_else(|| Error::invalid("cannot sample a cone with a zero axis"))?;
        let phi = cone.half_aperture();
        if cfg.mode == SampleMode::BoundaryOnly && phi > Radians::RIGHT {
            return Err(Error::invalid(
                "boundary sampling needs phi <= pi/2; use the filled mode for wide cones",
            ));
        }
        Ok(ConeSampler {
            apex: cone.apex().clone(),
            axis_hat,
            phi,
            cfg,
        })
    }

    pub fn len(&self) -> usize {
        self.cfg.sample_count
    }

    pub fn is_empty(&self) -> bool {
        self.cfg.sample_count == 0
    }

    pub fn sample(&self, index: u64) -> RealVector {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cfg.seed);
        rng.set_stream(index);
        let theta = match self.cfg.mode {
            SampleMode::BoundaryOnly => self.phi.value(),
            SampleMode::FilledCone => rng.random_range(0.0..=self.phi.value()),
        };
        let mut d = self.axis_hat.scale(theta.cos());
        if let Some(w) = self.orthogonal_direction(&mut rng) {
            d.axpy(theta.sin(), &w);
        }
        let d = d.normalized().unwrap_or_else(|| self.axis_hat.clone());
        self.apex.add(&d)
    }

    pub fn iter(&self) -> impl Iterator<Item = RealVector> + '_ {
        (0..self.cfg.sample_count as u64).map(move |i| self.sample(i))
    }

    /// Uniform unit vector orthogonal to the axis; `None` in dimension 1.
    fn orthogonal_direction(&self, rng: &mut ChaCha8Rng) -> Option<RealVector> {
        let n = self.axis_hat.dim();
        if n == 1 {
            return None;
        }
        loop {
            let g: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
            let mut g = RealVector::new(g).expect("gaussian draws are finite");
            let along = g.dot(&self.axis_hat);
            g.axpy(-along, &self.axis_hat);
            if let Some(w) = g.normalized() {
                return Some(w);
            }
        }
    }
}

/// Iterator over `cfg.sample_count` cone samples.
pub fn sample_cone(
    cone: &RoundCone,
    cfg: SamplerConfig,
) -> Result<impl Iterator<Item = RealVector>> {
    let sampler = ConeSampler::new(cone, cfg)?;
    Ok((0..cfg.sample_count as u64).map(move |i| sampler.sample(i)))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub dimension: usize,
    pub subspace_rank: usize,
    pub flavor: Flavor,
    pub half_aperture: Radians,
    pub axis_complement_angle: Radians,
    pub seed: u64,
    pub mode: SampleMode,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub instance: InstanceSummary,
    pub tag: ProjectionTag,
    pub samples_tested: usize,
    pub violations: usize,
    /// Smallest normalized margin of a projected sample; `None` when the
    /// predicted set is the whole subspace.
    pub worst_margin: Option<f64>,
    pub empirical_max_projected_angle: Radians,
    pub predicted_aperture: Radians,
    pub lift_attempts: usize,
    pub lift_failures: usize,
}

impl VerificationReport {
    pub fn is_clean(&self) -> bool {
        self.violations == 0 && self.lift_failures == 0
    }
}

#[derive(Clone, Copy)]
struct Tally {
    violations: usize,
    worst_margin: f64,
    max_angle: f64,
}

impl Tally {
    const EMPTY: Tally = Tally {
        violations: 0,
        worst_margin: f64::INFINITY,
        max_angle: 0.0,
    };

    fn merge(self, other: Tally) -> Tally {
        Tally {
            violations: self.violations + other.violations,
            worst_margin: self.worst_margin.min(other.worst_margin),
            max_angle: self.max_angle.max(other.max_angle),
        }
    }
}

fn classify_any(
    cone: &RoundCone,
    space: &SubspaceBasis,
    policy: ClassifierPolicy,
) -> Result<ProjectionClass> {
    match cone.flavor() {
        Flavor::Closed => classify(cone, space, policy),
        Flavor::ApexOpen => project_open_cone(cone, space, policy),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyOptions {
    pub policy: ClassifierPolicy,
    /// Membership tolerance for projected samples and lifted preimages.
    pub tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            policy: ClassifierPolicy::default(),
            tol: VERIFY_TOL,
        }
    }
}

/// Samples the cone, projects every sample and checks membership in the
/// classified set at [`VERIFY_TOL`]; then lifts a grid of targets back into
/// the cone where a constructive seed is available.
pub fn empirical_projection_check(
    cone: &RoundCone,
    space: &SubspaceBasis,
    cfg: SamplerConfig,
) -> Result<VerificationReport> {
    empirical_projection_check_with(cone, space, cfg, VerifyOptions::default())
}

pub fn empirical_projection_check_with(
    cone: &RoundCone,
    space: &SubspaceBasis,
    cfg: SamplerConfig,
    opts: VerifyOptions,
) -> Result<VerificationReport> {
    if !(opts.tol >= 0.0 && opts.tol.is_finite()) {
        return Err(Error::invalid(format!(
            "tolerance {} must be finite and non-negative",
            opts.tol
        )));
    }
    let class = classify_any(cone, space, opts.policy)?;
    let sampler = ConeSampler::new(cone, cfg)?;
    let pv = space.project_onto(cone.axis())?;

    let tally = (0..cfg.sample_count as u64)
        .into_par_iter()
        .map(|i| {
            let w = space.apply(&sampler.sample(i));
            let margin = class.margin(&w);
            let offset = w.sub(&class.projected_apex);
            let angle = if offset.is_zero() {
                0.0
            } else {
                angle_between(&offset, &pv).map_or(0.0, Radians::value)
            };
            Tally {
                violations: usize::from(margin < -opts.tol),
                worst_margin: margin,
                max_angle: angle,
            }
        })
        .reduce(|| Tally::EMPTY, Tally::merge);

    let (lift_attempts, lift_failures) = lift_grid(cone, space, &class, opts.tol)?;

    Ok(VerificationReport {
        instance: InstanceSummary {
            dimension: space.ambient_dim(),
            subspace_rank: space.rank(),
            flavor: cone.flavor(),
            half_aperture: cone.half_aperture(),
            axis_complement_angle: class.axis_complement_angle,
            seed: cfg.seed,
            mode: cfg.mode,
        },
        tag: class.tag,
        samples_tested: cfg.sample_count,
        violations: tally.violations,
        worst_margin: tally.worst_margin.is_finite().then_some(tally.worst_margin),
        empirical_max_projected_angle: Radians::clamped(tally.max_angle),
        predicted_aperture: class.predicted_aperture(),
        lift_attempts,
        lift_failures,
    })
}

/// Targets (relative to `Pa`) and the seed (relative to `a`) whose lifts
/// certify the reverse inclusion, or `None` when the instance has no
/// constructive seed.
pub fn lift_targets(
    cone: &RoundCone,
    space: &SubspaceBasis,
    class: &ProjectionClass,
) -> Result<Option<(RealVector, Vec<RealVector>)>> {
    let n = space.ambient_dim();
    let axis = cone.axis();
    let phi = cone.half_aperture();
    let pv = space.project_onto(axis)?;
    match class.tag {
        ProjectionTag::ClosedCone if space.rank() >= 2 && cone.flavor() == Flavor::Closed => {
            let Ok(witness) = equality_witness(axis, space, phi) else {
                return Ok(None);
            };
            let Some(pv_hat) = pv.normalized() else {
                return Ok(None);
            };
            let phi1 = class.predicted_aperture();
            let across: Vec<RealVector> = space
                .basis()
                .iter()
                .map(|b| {
                    let mut r = b.clone();
                    r.axpy(-b.dot(&pv_hat), &pv_hat);
                    r
                })
                .collect();
            let across = SubspaceBasis::orthonormalize(&across, n)?;
            let mut targets = vec![pv_hat.clone(), space.apply(&witness.vector)];
            for e in across.basis() {
                for sign in [1.0, -1.0] {
                    let mut t = pv_hat.scale(phi1.cos());
                    t.axpy(sign * phi1.sin(), e);
                    targets.push(t);
                }
            }
            Ok(Some((witness.vector, targets)))
        }
        ProjectionTag::FullSubspace if space.rank() >= 1 => {
            let Ok(witness) = antipodal_witness(axis, space, phi) else {
                return Ok(None);
            };
            let mut targets = vec![pv.clone(), pv.scale(-1.0)];
            for b in space.basis() {
                targets.push(b.clone());
                targets.push(b.scale(-1.0));
            }
            Ok(Some((witness.vector, targets)))
        }
        _ => Ok(None),
    }
}

fn lift_grid(
    cone: &RoundCone,
    space: &SubspaceBasis,
    class: &ProjectionClass,
    tol: f64,
) -> Result<(usize, usize)> {
    let Some((seed, targets)) = lift_targets(cone, space, class)? else {
        return Ok((0, 0));
    };
    let closed = cone.with_flavor(Flavor::Closed);
    let seed = cone.apex().add(&seed);
    let failures = targets
        .iter()
        .filter(|t| {
            let target = class.projected_apex.add(t);
            match lift_to_cone(&target, &seed, &closed, space) {
                Ok(lifted) => {
                    let back = space.apply(&lifted);
                    let off = back.sub(&target).norm() > tol * (target.norm() + 1.0);
                    off || !closed.contains(&lifted, tol).unwrap_or(false)
                }
                Err(_) => true,
            }
        })
        .count();
    Ok((targets.len(), failures))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct L2Experiment {
    pub alpha: f64,
    pub grid_points: usize,
    /// Smallest grid `t = k/N` at which the projected cone is not all of
    /// `V_t`.
    pub threshold: f64,
    /// `1 − α²`.
    pub predicted: f64,
    pub samples_checked: usize,
    /// Smallest `∫₀ᵗ u / ‖u‖` over cone samples at the threshold.
    pub min_partial_sum: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct L2Counterexample {
    pub t: f64,
    pub cutoff: usize,
    /// `∫₀ᵗ u`, negative for a genuine counterexample.
    pub partial_sum: f64,
    /// Normalized slack of `⟨u, 1⟩ ≥ α ‖u‖‖1‖`.
    pub premise_margin: f64,
    pub vector: RealVector,
}

fn l2_setup(alpha: f64, grid_points: usize) -> Result<RoundCone> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::invalid(format!("alpha {alpha} must lie in (0, 1)")));
    }
    if grid_points < 10 {
        return Err(Error::invalid("grid needs at least 10 points"));
    }
    let ones = RealVector::new(vec![1.0; grid_points])?;
    Ok(RoundCone::closed(ones, Radians::new(alpha.acos())?))
}

fn prefix(grid_points: usize, cutoff: usize) -> SubspaceBasis {
    let indices: Vec<usize> = (0..cutoff).collect();
    SubspaceBasis::coordinates(grid_points, &indices).expect("indices below the grid size")
}

/// `(1/N) Σ_{i<k} uᵢ`
fn partial_sum(u: &RealVector, cutoff: usize) -> f64 {
    u.coords()[..cutoff].iter().sum::<f64>() / u.dim() as f64
}

/// `L²(0, 1)` as `R^N`, `v = 1`, `V_t` the first `⌊tN⌋` coordinates and
/// `C(v, arccos α)`. Returns the smallest grid `t` for which the projection is
/// a proper cone, and spot-checks it with `cfg` samples.
///
/// The `1/N` weight on the inner product cancels in every angle, so the
/// classification runs on the plain Euclidean structure.
pub fn l2_discretized_experiment(
    alpha: f64,
    grid_points: usize,
    cfg: SamplerConfig,
) -> Result<L2Experiment> {
    let cone = l2_setup(alpha, grid_points)?;
    let policy = ClassifierPolicy::default();
    let cutoff = (1..=grid_points)
        .into_par_iter()
        .map(|k| classify(&cone, &prefix(grid_points, k), policy).map(|c| (k, c.tag)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .find(|(_, tag)| *tag != ProjectionTag::FullSubspace)
        .map(|(k, _)| k)
        .expect("the full space is never classified as a proper subspace");

    let sampler = ConeSampler::new(&cone, cfg)?;
    let min_partial_sum = (0..cfg.sample_count as u64)
        .into_par_iter()
        .map(|i| {
            let u = sampler.sample(i);
            partial_sum(&u, cutoff) / (u.norm() / (grid_points as f64).sqrt())
        })
        .reduce(|| f64::INFINITY, f64::min);

    Ok(L2Experiment {
        alpha,
        grid_points,
        threshold: cutoff as f64 / grid_points as f64,
        predicted: 1.0 - alpha * alpha,
        samples_checked: cfg.sample_count,
        min_partial_sum,
    })
}

/// A `u` with `⟨u, 1⟩ ≥ α ‖u‖‖1‖` and `∫₀ᵗ u < 0`, built from the antipodal
/// witness. Fails with a regime error when `t` is at or above the threshold.
pub fn l2_counterexample(alpha: f64, grid_points: usize, t: f64) -> Result<L2Counterexample> {
    let cone = l2_setup(alpha, grid_points)?;
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::invalid(format!("t {t} must lie in (0, 1)")));
    }
    let cutoff = (t * grid_points as f64 + 1e-9).floor() as usize;
    if cutoff == 0 {
        return Err(Error::invalid("t is below the grid resolution"));
    }
    let space = prefix(grid_points, cutoff);
    let class = classify(&cone, &space, ClassifierPolicy::default())?;
    if class.tag != ProjectionTag::FullSubspace {
        return Err(Error::regime(format!(
            "no counterexample at t={t}: the projected set is a proper cone"
        )));
    }
    let u = antipodal_witness(cone.axis(), &space, cone.half_aperture())?.vector;
    Ok(L2Counterexample {
        t,
        cutoff,
        partial_sum: partial_sum(&u, cutoff),
        premise_margin: normalized_slack(&u, cone.axis(), alpha),
        vector: u,
    })
}
