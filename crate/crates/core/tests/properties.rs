mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use common::*;
use proptest::prelude::*;
use rand::Rng;
use roundcone::linalg::{angle_to_complement, project};
use roundcone::oracle::{empirical_projection_check, sample_cone, SampleMode, SamplerConfig};
use roundcone::projection::{classify, classify_affine, projected_aperture};
use roundcone::reverse_cbs::{check_projection_implication, check_sign_lemma};
use roundcone::witness::{equality_witness, lift_to_cone};
use roundcone::{ClassifierPolicy, ProjectionTag, Radians, RealVector, RoundCone, SubspaceBasis};

fn rad(x: f64) -> Radians {
    Radians::new(x).unwrap()
}

#[test]
fn gram_matrix_of_random_span() {
    let mut r = rng(11);
    for _ in 0..20 {
        let raw: Vec<RealVector> = (0..5).map(|_| vector(&mut r, 8)).collect();
        let s = SubspaceBasis::orthonormalize(&raw, 8).unwrap();
        assert_eq!(s.rank(), 5);
        for (i, a) in s.basis().iter().enumerate() {
            for (j, b) in s.basis().iter().enumerate() {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot(a.coords(), b.coords()) - want).abs() <= 1e-10);
            }
        }
        for u in &raw {
            assert!(s.contains(u, 1e-10));
        }
    }
}

#[test]
fn equality_witness_random_instances() {
    let mut r = rng(12);
    for i in 0..100 {
        let n = r.random_range(3..=8);
        let k = r.random_range(2..=n);
        let space = subspace(&mut r, n, k);
        let v = vector(&mut r, n);
        let p = psi(&space, v.coords());
        let bound = if k == n { FRAC_PI_2 } else { p };
        let phi = r.random_range(0.0..0.98) * bound;
        let w = equality_witness(&v, &space, rad(phi)).unwrap();
        let u = w.vector.coords();
        assert!(
            slack(u, v.coords(), phi.cos()).abs() <= 1e-8,
            "instance {i}"
        );
        let pv = proj(&space, v.coords());
        let phi1 = projected_aperture(rad(phi), angle_to_complement(&v, &space).unwrap()).unwrap();
        assert!(
            slack(&proj(&space, u), &pv, phi1.cos()).abs() <= 1e-8,
            "instance {i}"
        );
        assert!((w.certified_original_angle.value() - angle(u, v.coords())).abs() <= 1e-9);
    }
}

#[test]
fn lift_random_targets() {
    let mut r = rng(13);
    for trial in 0..100 {
        let n = r.random_range(3..=7);
        let k = r.random_range(2..n);
        let space = subspace(&mut r, n, k);
        let v = vector(&mut r, n);
        let phi = r.random_range(0.1..0.9) * psi(&space, v.coords());
        let apex = vector(&mut r, n);
        let cone =
            RoundCone::new(apex.clone(), v.clone(), rad(phi), roundcone::Flavor::Closed).unwrap();
        let seed = apex.add(&equality_witness(&v, &space, rad(phi)).unwrap().vector);
        let pv = proj(&space, v.coords());
        let theta = angle(&proj(&space, seed.sub(&apex).coords()), &pv);
        // Random direction in V within theta of Pv.
        let pv_hat: Vec<f64> = pv.iter().map(|x| x / norm(&pv)).collect();
        let h = proj(&space, &gaussian(&mut r, n));
        let across = sub(
            &h,
            &pv_hat
                .iter()
                .map(|x| x * dot(&h, &pv_hat))
                .collect::<Vec<_>>(),
        );
        let across: Vec<f64> = across.iter().map(|x| x / norm(&across)).collect();
        let t = r.random_range(0.0..1.0) * theta;
        let len = r.random_range(0.1..10.0);
        let pa = proj(&space, apex.coords());
        let target: Vec<f64> = (0..n)
            .map(|i| pa[i] + len * (t.cos() * pv_hat[i] + t.sin() * across[i]))
            .collect();
        let target = RealVector::new(target).unwrap();
        let lifted = lift_to_cone(&target, &seed, &cone, &space).unwrap();
        assert!(
            norm(&sub(&proj(&space, lifted.coords()), target.coords())) <= 1e-9 * (len + 1.0),
            "trial {trial}"
        );
        assert!(cone.contains(&lifted, 1e-9).unwrap(), "trial {trial}");
    }
}

#[test]
fn affine_shift_commutes() {
    let mut r = rng(14);
    for _ in 0..100 {
        let n = r.random_range(2..=6);
        let k = r.random_range(0..n);
        let space = subspace(&mut r, n, k);
        let g = vector(&mut r, n);
        let d = g.sub(&space.project_onto(&g).unwrap());
        let cone = RoundCone::new(
            vector(&mut r, n),
            vector(&mut r, n),
            rad(r.random_range(0.0..PI)),
            roundcone::Flavor::Closed,
        )
        .unwrap();
        let policy = ClassifierPolicy::default();
        let plain = classify(&cone, &space, policy).unwrap();
        let shifted = classify_affine(&cone, &space, &d, policy).unwrap();
        assert_eq!(plain.tag, shifted.tag);
        assert_eq!(plain.projected_aperture, shifted.projected_aperture);
        assert!(
            norm(&sub(
                shifted.projected_apex.coords(),
                plain.projected_apex.add(&d).coords()
            )) < 1e-12
        );
    }
}

#[test]
fn forward_implication_sweep() {
    let mut r = rng(15);
    let mut premise = 0;
    for i in 0..1000 {
        let n = r.random_range(2..=10);
        let k = r.random_range(1..n);
        let space = subspace(&mut r, n, k);
        let v = vector(&mut r, n);
        let phi = r.random_range(0.0..1.0) * psi(&space, v.coords());
        let cone = RoundCone::closed(v.clone(), rad(phi));
        let mode = if i % 2 == 0 {
            SampleMode::BoundaryOnly
        } else {
            SampleMode::FilledCone
        };
        let cfg = SamplerConfig::new(r.random(), 1000, mode).unwrap();
        for u in sample_cone(&cone, cfg).unwrap() {
            let c = check_projection_implication(&u, &v, &space, rad(phi)).unwrap();
            if c.premise_holds {
                premise += 1;
                assert!(c.conclusion_margin >= -1e-9, "{c:?}");
            }
        }
    }
    assert!(premise > 500_000, "{premise}");
}

#[test]
fn sign_lemma_at_the_border() {
    let mut r = rng(16);
    for i in 0..10u64 {
        let n = r.random_range(3..=7);
        let k = r.random_range(1..n);
        let space = subspace(&mut r, n, k);
        let v = vector(&mut r, n);
        let cone = RoundCone::closed(v.clone(), angle_to_complement(&v, &space).unwrap());
        let cfg = SamplerConfig::new(i, 10_000, SampleMode::BoundaryOnly).unwrap();
        for u in sample_cone(&cone, cfg).unwrap() {
            let c = check_sign_lemma(&u, &v, &space).unwrap();
            assert!(c.conclusion_margin >= -1e-9);
            // 0 < psi < pi/2 for a generic axis: strict positivity, up to
            // rounding on the boundary.
            if c.premise_holds && c.strict_conclusion_holds == Some(false) {
                assert!(c.conclusion_margin.abs() <= 1e-12);
            }
        }
    }
}

#[test]
fn strict_sign_fails_exactly_when_axis_lies_in_subspace() {
    // psi = pi/2: u ⊥ v inside V gives <Pu, Pv> = 0 with Pu != O.
    let mut r = rng(17);
    for _ in 0..20 {
        let n = r.random_range(3..=7);
        let k = r.random_range(2..n);
        let space = subspace(&mut r, n, k);
        let v = space.project_onto(&vector(&mut r, n)).unwrap();
        let z = space
            .unit_vector_orthogonal_to(std::slice::from_ref(&v))
            .unwrap();
        let c = check_sign_lemma(&z, &v, &space).unwrap();
        assert!(c.premise_margin >= -1e-12);
        assert!(c.conclusion_margin.abs() <= 1e-12);
        assert!(space.project_onto(&z).unwrap().norm() > 0.5);
    }
    // 0 < psi < pi/2: every premise-holding sample with Pu != O is strictly positive.
    for i in 0..10u64 {
        let n = r.random_range(3..=7);
        let k = r.random_range(1..n);
        let space = subspace(&mut r, n, k);
        let v = vector(&mut r, n);
        let psi = angle_to_complement(&v, &space).unwrap().value();
        let cone = RoundCone::closed(v.clone(), rad(psi * 0.999));
        let cfg = SamplerConfig::new(i, 10_000, SampleMode::FilledCone).unwrap();
        for u in sample_cone(&cone, cfg).unwrap() {
            let c = check_sign_lemma(&u, &v, &space).unwrap();
            assert_eq!(c.strict_conclusion_holds, Some(true));
        }
    }
}

#[test]
fn reports_do_not_depend_on_thread_count() {
    let mut r = rng(18);
    let space = subspace(&mut r, 6, 3);
    let v = vector(&mut r, 6);
    let cone = RoundCone::closed(v.clone(), rad(0.7 * psi(&space, v.coords())));
    let cfg = SamplerConfig::new(42, 20_000, SampleMode::BoundaryOnly).unwrap();
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let serial = single.install(|| empirical_projection_check(&cone, &space, cfg).unwrap());
    let parallel = empirical_projection_check(&cone, &space, cfg).unwrap();
    assert_eq!(serial, parallel);
    assert_eq!(
        serial.worst_margin.unwrap().to_bits(),
        parallel.worst_margin.unwrap().to_bits()
    );
}

#[test]
fn wide_cones_cover_every_tag() {
    let xy = SubspaceBasis::coordinates(3, &[0, 1]).unwrap();
    let v = RealVector::new(vec![1.0, 0.0, 1.0]).unwrap();
    let mut seen = Vec::new();
    for phi in [0.3, std::f64::consts::FRAC_PI_4, 1.2, 2.5, PI] {
        let rep = empirical_projection_check(
            &RoundCone::closed(v.clone(), rad(phi)),
            &xy,
            SamplerConfig::new(0, 5000, SampleMode::FilledCone).unwrap(),
        )
        .unwrap();
        assert!(rep.is_clean(), "{rep:?}");
        seen.push(rep.tag);
    }
    assert_eq!(
        seen,
        [
            ProjectionTag::ClosedCone,
            ProjectionTag::ApexPlusOpenCone,
            ProjectionTag::FullSubspace,
            ProjectionTag::FullSubspace,
            ProjectionTag::FullSubspace
        ]
    );
}

fn coords(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0..100.0f64, n)
}

proptest! {
    #[test]
    fn decomposition_invariants((u, raw) in (1usize..8).prop_flat_map(|n| (coords(n), prop::collection::vec(coords(n), 0..n + 1)))) {
        let n = u.len();
        let raw: Vec<RealVector> = raw.into_iter().map(|c| RealVector::new(c).unwrap()).collect();
        let space = SubspaceBasis::orthonormalize(&raw, n).unwrap();
        let u = RealVector::new(u).unwrap();
        let d = project(&space, &u).unwrap();
        let nu = u.norm();
        for i in 0..n {
            let back = d.parallel.coords()[i] + d.perpendicular.coords()[i];
            prop_assert!((back - u.coords()[i]).abs() <= 1e-12 * nu.max(1e-300) + 1e-300);
        }
        prop_assert!(d.parallel.dot(&d.perpendicular).abs() <= 1e-10 * nu * nu);
        let pyth = d.parallel.norm_squared() + d.perpendicular.norm_squared();
        prop_assert!((pyth - nu * nu).abs() <= 1e-10 * nu * nu);
        // Idempotence.
        let again = space.project_onto(&d.parallel).unwrap();
        prop_assert!(again.sub(&d.parallel).norm() <= 1e-10 * (nu + 1.0));
    }
}
