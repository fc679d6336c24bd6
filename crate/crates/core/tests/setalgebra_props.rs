use baire_games::catalog::Exceptional;
use baire_games::exactnum::{QuadPoint, Rat, Span};
use baire_games::setalgebra::{minus, refine_closed, union, Category, RepSet};
use num_bigint::BigInt;
use proptest::prelude::*;

fn r(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

fn q(n: i64, d: i64) -> QuadPoint {
    QuadPoint::from_rat(r(n, d))
}

/// An interval on the 1/64 grid inside `[0,1]`, any mix of closed ends.
fn span() -> impl Strategy<Value = Span> {
    (0i64..64, 1i64..=32, any::<bool>(), any::<bool>()).prop_map(|(a, len, lc, hc)| Span {
        lo: q(a, 64),
        lo_closed: lc,
        hi: q((a + len).min(64), 64),
        hi_closed: hc,
    })
    .prop_filter("nonempty", |s| s.lo < s.hi)
}

fn except() -> impl Strategy<Value = Exceptional> {
    prop_oneof![
        Just(Exceptional::None),
        Just(Exceptional::AllRationals),
        prop::collection::vec((0i64..=64).prop_map(|n| q(n, 64)), 1..4).prop_map(Exceptional::Listed),
    ]
}

fn repset() -> impl Strategy<Value = RepSet> {
    (
        prop::collection::vec(span(), 0..4),
        prop::collection::vec((0i64..=128).prop_map(|n| q(n, 128)), 0..4),
        except(),
    )
        .prop_map(|(s, a, e)| RepSet::new(s, a, e))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normalization_is_idempotent(s in repset()) {
        let mut again = s.clone();
        again.normalize();
        prop_assert_eq!(&again, &s);
        prop_assert_eq!(again.measure(), s.measure());
        prop_assert_eq!(again.classify_category(), s.classify_category());
        let text = s.to_string();
        let back: RepSet = text.parse().unwrap();
        prop_assert_eq!(&back, &s);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn measure_is_additive_on_disjoint_sets(a in 0i64..32, b in 1i64..16, c in 1i64..16, d in 1i64..16) {
        // [a, a+b] and (a+b+c, a+b+c+d] on the 1/64 grid never touch
        let left = RepSet::closed(q(a, 64), q(a + b, 64));
        let right = RepSet::interval(Span { lo: q(a + b + c, 64), lo_closed: false, hi: q(a + b + c + d, 64), hi_closed: true });
        let both = union(&left, &right).unwrap();
        prop_assert_eq!(both.measure(), &left.measure() + &right.measure());
        let holes = minus(&both, Exceptional::AllRationals).unwrap();
        prop_assert_eq!(holes.measure(), both.measure());
    }

    #[test]
    fn refine_closed_promises(
        a in 0i64..48,
        len in 1i64..=16,
        forbidden in prop::collection::vec((0i64..=256).prop_map(|n| q(n, 256)), 0..8),
        irr in prop::collection::vec(1i64..=20, 0..2),
        n in 0usize..30,
    ) {
        let f = RepSet::closed(q(a, 64), q(a + len, 64));
        let mut forb = forbidden.clone();
        // irrational cuts exercise the grid rounding
        for k in irr {
            forb.push(&q(a, 64) + &QuadPoint::new(r(0, 1), r(len, 64 * (k + 2))));
        }
        let out = refine_closed(&f, &forb, n).unwrap();
        prop_assert!(out.measure().is_positive());
        let iv = out.intervals();
        prop_assert_eq!(iv.len(), 1);
        let s = &iv[0];
        prop_assert!(s.lo_closed && s.hi_closed);
        prop_assert!(&s.hi - &s.lo < q(1, n as i64 + 2));
        prop_assert!(f.contains(&s.lo) && f.contains(&s.hi));
        for p in &forb {
            prop_assert!(!out.contains(p), "{p} in {out}");
        }
    }

    #[test]
    fn non_meager_sets_have_points_in_every_component(s in repset()) {
        if s.classify_category() == Category::NonMeagerBP {
            for iv in s.intervals().iter().filter(|iv| iv.lo < iv.hi) {
                let sub = s.restrict(iv);
                let p = sub.fresh_point(None, &[]).expect("dense interval part");
                prop_assert!(s.contains(&p) && iv.contains(&p));
            }
        } else {
            prop_assert!(s.measure().is_zero());
        }
    }
}
