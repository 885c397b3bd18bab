//! Test-side reference computations, written independently of the library
//! internals (only the orthonormal basis vectors are taken from it).

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use roundcone::{RealVector, SubspaceBasis};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.sample(StandardNormal)).collect()
}

pub fn vector(rng: &mut ChaCha8Rng, n: usize) -> RealVector {
    RealVector::new(gaussian(rng, n)).unwrap()
}

/// Span of `k` Gaussian vectors in `R^n`.
pub fn subspace(rng: &mut ChaCha8Rng, n: usize, k: usize) -> SubspaceBasis {
    loop {
        let raw: Vec<RealVector> = (0..k).map(|_| vector(rng, n)).collect();
        let s = SubspaceBasis::orthonormalize(&raw, n).unwrap();
        if s.rank() == k {
            return s;
        }
    }
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `Σ ⟨u, bᵢ⟩ bᵢ`
pub fn proj(space: &SubspaceBasis, u: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; u.len()];
    for b in space.basis() {
        let c = dot(u, b.coords());
        for (o, x) in out.iter_mut().zip(b.coords()) {
            *o += c * x;
        }
    }
    out
}

/// Angle between nonzero vectors, accurate near `0` and `π`; `π` when
/// either vector is zero.
pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return std::f64::consts::PI;
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x / na - y / nb).collect();
    let s: Vec<f64> = a.iter().zip(b).map(|(x, y)| x / na + y / nb).collect();
    2.0 * norm(&d).atan2(norm(&s))
}

/// `∠(v, V⊥)` from the two components of `v`.
pub fn psi(space: &SubspaceBasis, v: &[f64]) -> f64 {
    let p = proj(space, v);
    norm(&p).atan2(norm(&sub(v, &p)))
}

/// `cos φ₁ = √((cos²φ − cos²ψ) / (1 − cos²ψ))`
pub fn cos_phi1(phi: f64, psi: f64) -> f64 {
    let (c, k) = (phi.cos(), psi.cos());
    ((c * c - k * k) / (1.0 - k * k)).sqrt()
}

/// `(⟨x, y⟩ − c ‖x‖‖y‖) / (‖x‖‖y‖ + 1)`
pub fn slack(x: &[f64], y: &[f64], c: f64) -> f64 {
    let s = norm(x) * norm(y);
    (dot(x, y) - c * s) / (s + 1.0)
}
