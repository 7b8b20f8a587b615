mod common;

use conecorr::correspondence::corr_norm;
use conecorr::semigroup::{
    continuity_modulus, deviation_norm, growth_fit, identity_defect, lemma32_check, lemma_linuni_constant,
    sample_pairs, semigroup_defect,
};
use conecorr::{Cone, LinearCorrespondence, NormSpec, Point, SemigroupFamily, SetMap, SublinearCorrespondence};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const E: NormSpec = NormSpec::Euclidean;

fn interval(a: f64, b: f64) -> SemigroupFamily {
    SemigroupFamily::interval_scalar(Cone::standard(1), a, b).unwrap()
}

fn grid(k: usize, step: f64) -> Vec<f64> {
    (0..=k).map(|i| i as f64 * step).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn interval_family_is_a_semigroup(a in 0.0..1.0f64, gap in 0.0..1.0f64, x in 0.1..3.0f64) {
        let fam = interval(a, a + gap);
        let d = semigroup_defect(&fam, &grid(4, 0.25), &[Point::from([x])], &E).unwrap();
        prop_assert!(d.max_defect <= 1e-9 * x.max(1.0) * 10.0);
        prop_assert!(identity_defect(&fam, &[Point::from([x])], &E).unwrap() <= 1e-12);
    }

    #[test]
    fn interval_growth_is_the_upper_rate(a in 0.0..1.0f64, gap in 0.0..1.0f64) {
        let fam = interval(a, a + gap);
        let fit = growth_fit(&fam, &grid(8, 0.25), &E, 16).unwrap();
        prop_assert!((fit.gamma - (a + gap)).abs() < 1e-9);
        prop_assert!((fit.beta0 - 1.0).abs() < 1e-9);
        prop_assert!(fit.residuals.iter().all(|r| *r <= 0.0));
    }

    #[test]
    fn modulus_matches_closed_form(a in 0.0..1.0f64, gap in 0.0..1.0f64, w in 0.0..2.0f64, x in 0.1..2.0f64) {
        let b = a + gap;
        let fam = interval(a, b);
        let deltas: Vec<f64> = (0..=6).map(|k| 2f64.powi(-k)).collect();
        let rows = continuity_modulus(&fam, w, &Point::from([x]), &deltas, 16, &E).unwrap();
        for row in rows {
            let d = row.delta;
            let up = ((b * (w + d)).exp() - (b * w).exp()).max((a * (w + d)).exp() - (a * w).exp());
            let sl = (w - d).max(0.0);
            let down = ((b * w).exp() - (b * sl).exp()).max((a * w).exp() - (a * sl).exp());
            let oracle = x * up.max(down);
            prop_assert!((row.modulus - oracle).abs() <= 1e-9 * oracle.max(1.0), "delta {d}: {} vs {oracle}", row.modulus);
        }
    }

    #[test]
    fn linuni_constant_is_scale_invariant(seed in any::<u64>(), c in 0.5..4.0f64) {
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let phi = common::random_endomorphism(2, true, &mut r);
        let scaled = LinearCorrespondence::new(
            phi.cone().clone(),
            phi.basis_images().iter().map(|s| s.scale(c)).collect(),
        ).unwrap();
        let pairs = sample_pairs(phi.cone(), 32, seed);
        let m1 = lemma_linuni_constant(&phi, &pairs, &E, 64).unwrap();
        let m2 = lemma_linuni_constant(&scaled, &pairs, &E, 64).unwrap();
        prop_assert!((m1.m_est - m2.m_est).abs() <= 0.1 * m1.m_est);
        prop_assert!(m1.m_est >= 1.0);
    }

    #[test]
    fn interval_family_satisfies_the_perturbation_bound(w in 0.0..1.0f64, s in 0.0..1.0f64, x in 0.1..2.0f64) {
        let fam = interval(0.5, 1.0);
        let pairs = sample_pairs(fam.cone(), 32, 1);
        let c = lemma32_check(&fam, w, s, &Point::from([x]), &pairs, &E, 64, 1e-9).unwrap();
        prop_assert!(c.holds, "lhs {} rhs {}", c.lhs, c.rhs);
    }
}

#[test]
fn doubling_power_grows_at_log_two() {
    let doubling = SublinearCorrespondence::from_linear(LinearCorrespondence::scalar(Cone::standard(2), 2.0));
    let fam = SemigroupFamily::discrete_power(doubling).unwrap();
    let fit = growth_fit(&fam, &[0.0, 1.0, 2.0, 3.0, 4.0], &E, 16).unwrap();
    assert!((fit.gamma - 2f64.ln()).abs() < 1e-9);
    assert!((fit.beta0 - 1.0).abs() < 1e-9);
    let d = semigroup_defect(&fam, &[0.0, 1.0, 2.0], &[Point::from([1.0, 2.0])], &E).unwrap();
    assert!(d.max_defect <= 1e-9);
}

#[test]
fn discrete_power_rejects_fractional_times() {
    let fam = SemigroupFamily::discrete_power(SublinearCorrespondence::paper_example()).unwrap();
    assert!(fam.at(0.5).is_err());
    assert!(fam.at(2.0).is_ok());
}

#[test]
fn norms_follow_the_exponential() {
    let fam = interval(0.5, 1.0);
    for i in 0..=8 {
        let t = i as f64 * 0.25;
        let n = corr_norm(&fam.at(t).unwrap(), &E, 16).unwrap().value;
        assert!((n - t.exp()).abs() <= 1e-9, "t {t}: {n}");
    }
}

#[test]
fn idempotent_hat_deviation_is_constant() {
    let fam = SemigroupFamily::hat_of(SemigroupFamily::idempotent(SublinearCorrespondence::paper_example()).unwrap());
    let d1 = deviation_norm(&fam, 0.5, &E, 64).unwrap();
    let d2 = deviation_norm(&fam, 1.0, &E, 64).unwrap();
    assert!((d1 - d2).abs() < 1e-12);
    assert!(deviation_norm(&fam, 0.0, &E, 64).unwrap() < 1e-12);
}
