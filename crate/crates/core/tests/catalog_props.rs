use baire_games::catalog::{normalize_gauges, shrink_gauges, FamilySpec, GaugeFamily, Target};
use baire_games::exactnum::{pow2_neg, rat, Point, QuadPoint, Rat};
use num_bigint::BigInt;
use proptest::prelude::*;

const BAIRE1: &[&str] = &[
    "lip@1",
    "lip@2",
    "step@1/2",
    "step@1/3",
    "pow@3",
    "pow@5",
    "pwa-sample",
    "power-family",
    "finite:step@1/2|lip@1",
];

fn family(id: &str) -> FamilySpec {
    Target::parse_id(id).unwrap().family()
}

fn unit_rat() -> impl Strategy<Value = Rat> {
    (1i64..=512).prop_flat_map(|d| (0..=d).prop_map(move |n| Rat::new(BigInt::from(n), BigInt::from(d))))
}

fn unit_point() -> impl Strategy<Value = Point> {
    prop_oneof![
        4 => unit_rat().prop_map(|r| Point::Line(QuadPoint::from_rat(r))),
        1 => (unit_rat(), -8i64..=8).prop_map(|(a, b)| {
            let q = QuadPoint::new(a, Rat::new(BigInt::from(b), BigInt::from(64)));
            Point::Line(q.max(QuadPoint::zero()).min(QuadPoint::one()))
        }),
    ]
}

fn eps() -> impl Strategy<Value = Rat> {
    prop::sample::select(vec![rat(1, 1), rat(1, 2), rat(1, 4), rat(1, 8), rat(1, 16)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// Pairs closer than both gauges never separate by `eps`.
    #[test]
    fn analytic_gauges_hold_near_each_point(
        id in prop::sample::select(BAIRE1),
        x0 in unit_point(),
        t in -255i64..=255,
        e in eps(),
    ) {
        let fam = family(id);
        let g = GaugeFamily::analytic(&fam).unwrap();
        let d0 = g.delta(&e, &x0).unwrap();
        let q0 = x0.as_line().unwrap().clone();
        let q1 = &q0 + &QuadPoint::from_rat(&d0 * Rat::new(BigInt::from(t), BigInt::from(256)));
        let x1 = Point::Line(q1.max(QuadPoint::zero()).min(QuadPoint::one()));
        let d1 = g.delta(&e, &x1).unwrap();
        let reach = d0.clone().min(d1);
        if baire_games::exactnum::cmp_dist(&x0, &x1, &reach).unwrap().is_lt() {
            prop_assert!(!fam.exceeds(&x0, &x1, &e).unwrap().is_yes(), "{id} {x0} {x1} eps={e}");
        }
    }

    #[test]
    fn normalized_gauges_are_monotone_smaller_and_idempotent(
        id in prop::sample::select(BAIRE1),
        x in unit_point(),
    ) {
        let fam = family(id);
        let raw = GaugeFamily::analytic(&fam).unwrap();
        let norm = normalize_gauges(&raw);
        let twice = normalize_gauges(&norm);
        let shrunk = shrink_gauges(&norm);
        let mut prev: Option<Rat> = None;
        for n in 1..=10u64 {
            let d = norm.at_index(n, &x).unwrap();
            prop_assert!(d > rat(0, 1));
            prop_assert!(d <= raw.at_index(n, &x).unwrap());
            prop_assert_eq!(twice.at_index(n, &x).unwrap(), d.clone());
            if let Some(p) = &prev {
                prop_assert!(d <= *p);
            }
            let s = shrunk.at_index(n, &x).unwrap();
            prop_assert_eq!(s, d.clone().min(pow2_neg(n as i64 + 1)));
            prev = Some(d);
        }
    }

    #[test]
    fn sup_gap_brackets_every_member(
        id in prop::sample::select(&["power-family", "step-family", "finite:step@1/2|lip@1"][..]),
        u in unit_point(),
        v in unit_point(),
    ) {
        let fam = family(id);
        let gs = fam.sup_gap(&u, &v).unwrap();
        prop_assert!(gs.lower <= gs.upper);
        if let Some(ms) = fam.members() {
            let mut best = QuadPoint::zero();
            for m in 0..ms.len() {
                let a = ms[m].eval(&u).unwrap();
                let b = ms[m].eval(&v).unwrap();
                best = best.max((&a - &b).abs());
            }
            prop_assert!(gs.lower <= best && best <= gs.upper);
        }
    }

    #[test]
    fn oscillation_estimate_brackets_the_exact_value(
        id in prop::sample::select(&["step-family", "power-family", "lip@1", "step@1/2", "pwa-sample"][..]),
        x in unit_point(),
    ) {
        let fam = family(id);
        let exact = fam.osc_point(&x).unwrap();
        let est = fam.osc_point_estimate(&x, 10).unwrap();
        prop_assert!(est.lower <= exact && exact <= est.upper, "{id} at {x}: {exact} vs [{}, {}]", est.lower, est.upper);
    }

    /// Equi-Baire-1 entries are equicontinuous off their hotspots; the others
    /// oscillate uniformly.
    #[test]
    fn oscillation_matches_the_classification(x in unit_rat()) {
        let p = Point::Line(QuadPoint::from_rat(x.clone()));
        prop_assert_eq!(family("step-family").osc_point(&p).unwrap(), QuadPoint::one());
        if x < rat(1, 1) {
            prop_assert_eq!(family("power-family").osc_point(&p).unwrap(), QuadPoint::zero());
        }
        prop_assert_eq!(family("lip@2").osc_point(&p).unwrap(), QuadPoint::zero());
    }
}
