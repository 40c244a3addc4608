use std::sync::Arc;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use complete_ideals::generate::{random_cluster, random_free_extension, random_ideal};
use complete_ideals::oracle::{exhaustive_antinef_closure, simulated_intersection_matrix};
use complete_ideals::realize::reverify;
use complete_ideals::*;

fn cluster_from(seed: u64, max: usize) -> (ChaCha8Rng, Arc<Cluster>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(1..=max);
    let c = Arc::new(random_cluster(&mut rng, n));
    (rng, c)
}

fn divisor_on(rng: &mut ChaCha8Rng, c: &Arc<Cluster>, lo: i64, hi: i64) -> Divisor {
    Divisor::new(c.clone(), (0..c.len()).map(|_| rng.gen_range(lo..=hi)).collect()).unwrap()
}

fn exponent() -> impl Strategy<Value = Exponent> {
    (1i64..=40, 1i64..=12).prop_map(|(p, q)| Exponent::ratio(p, q).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_clusters_validate(seed in any::<u64>()) {
        let (_, c) = cluster_from(seed, 12);
        prop_assert!(validate(c.records()).is_ok());
    }

    #[test]
    fn intersection_form_matches_blowup_simulation(seed in any::<u64>()) {
        let (_, c) = cluster_from(seed, 10);
        let form = intersection_matrix(&c);
        prop_assert_eq!(form.entries.clone(), simulated_intersection_matrix(&c));
        prop_assert_eq!(form.determinant().abs(), 1);
        prop_assert!(form.is_negative_definite());
    }

    #[test]
    fn multiplicities_and_values_invert(seed in any::<u64>()) {
        let (mut rng, c) = cluster_from(seed, 10);
        let d = divisor_on(&mut rng, &c, -5, 9);
        let back = Divisor::from_multiplicities(c.clone(), &d.multiplicities()).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn unload_agrees_with_exhaustive_closure(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=5);
        let c = Arc::new(random_cluster(&mut rng, n));
        let d = divisor_on(&mut rng, &c, -2, 4);
        prop_assert_eq!(d.unload(), exhaustive_antinef_closure(&d).unwrap());
    }

    #[test]
    fn unload_is_a_closure(seed in any::<u64>()) {
        let (mut rng, c) = cluster_from(seed, 10);
        let d = divisor_on(&mut rng, &c, -3, 8);
        let u = d.unload();
        prop_assert!(u.is_antinef());
        prop_assert!(u.dominates(&d).unwrap());
        prop_assert_eq!(u.unload(), u.clone());
        let bump = divisor_on(&mut rng, &c, 0, 3);
        let bigger = d.try_add(&bump).unwrap();
        prop_assert!(bigger.unload().dominates(&u).unwrap());
    }

    #[test]
    fn pullback_preserves_pairings(seed in any::<u64>(), added in 1usize..=3) {
        let (mut rng, c) = cluster_from(seed, 8);
        let ext = Arc::new(random_free_extension(&mut rng, &c, added));
        let d = divisor_on(&mut rng, &c, -3, 8);
        let up = d.pullback(&ext).unwrap();
        let pairings = up.pairings();
        let (old, new) = pairings.split_at(c.len());
        prop_assert_eq!(old.to_vec(), d.pairings());
        prop_assert!(new.iter().all(|&x| x == 0));
        prop_assert_eq!(up.truncated(&c).unwrap(), d.clone());
        prop_assert_eq!(up.unload(), d.unload().pullback(&ext).unwrap());
    }

    #[test]
    fn canonical_divisor_grows_along_free_chains(seed in any::<u64>(), len in 1usize..=6) {
        let (mut rng, c) = cluster_from(seed, 8);
        let at = PointId(rng.gen_range(1..=c.len()));
        let (ext, chain) = c.extend_with_chain(at, len).unwrap();
        let ext = Arc::new(ext);
        let k_ext = canonical_divisor(&ext).try_sub(&canonical_divisor(&c).pullback(&ext).unwrap()).unwrap();
        for (t, p) in chain.iter().enumerate() {
            prop_assert_eq!(k_ext.coeff(*p), t as i64 + 1);
        }
        prop_assert!(c.points().all(|p| k_ext.coeff(p) == 0));
    }

    #[test]
    fn simple_generators_are_dual_to_points(seed in any::<u64>()) {
        let (_, c) = cluster_from(seed, 10);
        for i in c.points() {
            let g = simple_generator(&c, i).unwrap();
            for j in c.points() {
                prop_assert_eq!(g.pair(j).unwrap(), if i == j { -1 } else { 0 });
            }
        }
    }

    #[test]
    fn factorization_round_trips(seed in any::<u64>()) {
        let (mut rng, c) = cluster_from(seed, 8);
        let i = random_ideal(&mut rng, &c, 3);
        let j = random_ideal(&mut rng, &c, 3);
        prop_assert_eq!(&CompleteIdeal::reconstruct(&i.factor_simple(), &c).unwrap(), i.divisor());
        let prod = i.product(&j).unwrap();
        prop_assert_eq!(prod.divisor(), &i.divisor().try_add(j.divisor()).unwrap());
        prop_assert!(i.contains(&prod).unwrap());
        prop_assert_eq!(prod.colength() >= i.colength() + j.colength(), true);
    }

    #[test]
    fn multiplicity_sequences_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = rng.gen_range(1..=9);
        let mut c = Cluster::root();
        for k in 1..n {
            let last = PointId(k);
            let targets: Vec<PointId> = c.targets(last).collect();
            let rec = if !targets.is_empty() && rng.gen_bool(0.4) {
                PointRecord::satellite(last, targets[rng.gen_range(0..targets.len())])
            } else {
                PointRecord::free(last)
            };
            c = c.with_point(rec).unwrap().0;
        }
        let c = Arc::new(c);
        let g = CompleteIdeal::simple(&c, PointId(n)).unwrap();
        let mults: Vec<u64> = g.point_basis().0.iter().map(|&m| m as u64).collect();
        let rebuilt = Cluster::from_multiplicity_sequence(&mults).unwrap();
        prop_assert_eq!(&rebuilt, &*c);
    }

    #[test]
    fn multiplier_ideals_shrink_with_exponent(seed in any::<u64>(), a in exponent(), b in exponent()) {
        let (mut rng, c) = cluster_from(seed, 7);
        let i = random_ideal(&mut rng, &c, 3);
        let (lo, hi) = if a.value() <= b.value() { (a, b) } else { (b, a) };
        prop_assert!(multiplier_ideal(&i, lo).contains(&multiplier_ideal(&i, hi)).unwrap());
    }

    #[test]
    fn jumping_numbers_are_jumps(seed in any::<u64>()) {
        let (mut rng, c) = cluster_from(seed, 5);
        let i = random_ideal(&mut rng, &c, 2);
        let max = Exponent::integer(2).unwrap();
        let jumps = jumping_numbers(&i, max).unwrap();
        prop_assert!(!jumps.is_empty());
        for w in jumps.windows(2) {
            prop_assert!(w[0].value() < w[1].value());
        }
        for x in &jumps {
            let below = Exponent::new(x.value() - Rational::new(1, 10_000)).unwrap();
            prop_assert!(!multiplier_ideal(&i, below).same_ideal(&multiplier_ideal(&i, *x)).unwrap());
        }
    }

    #[test]
    fn multiplier_ideals_ignore_extra_blowups(seed in any::<u64>(), c in exponent(), added in 1usize..=3) {
        let (mut rng, cl) = cluster_from(seed, 7);
        let i = random_ideal(&mut rng, &cl, 3);
        let ext = Arc::new(random_free_extension(&mut rng, &cl, added));
        prop_assert!(resolution_independent(&i, c, &ext).unwrap());
    }

    #[test]
    fn realization_certificates_verify(seed in any::<u64>()) {
        let (mut rng, c) = cluster_from(seed, 7);
        let j = random_ideal(&mut rng, &c, 3);
        let cert = realize(&j).unwrap();
        prop_assert!(cert.is_verified());
        prop_assert!(cert.windows.all_ok());
        prop_assert!(reverify(&cert).unwrap());
        prop_assert!(floor_report(&cert).unwrap().holds());
        let one = Rational::from_integer(1);
        prop_assert!(cert.parameters.c.value() > one);
        prop_assert!(cert.parameters.c.value() < one + cert.epsilon_bound.unwrap());
    }

    #[test]
    fn simple_ideals_realize_with_simple_companions(seed in any::<u64>()) {
        let (mut rng, c) = cluster_from(seed, 7);
        let p = PointId(rng.gen_range(1..=c.len()));
        let j = CompleteIdeal::simple(&c, p).unwrap();
        let cert = realize(&j).unwrap();
        prop_assert!(cert.companion.is_simple());
        prop_assert!(j.pullback(&cert.extended).unwrap().contains(&cert.companion).unwrap());
    }
}
