//! Strategy behaviour on concrete matches.

use baire_games::arena::{
    play_match, referee, Certificate, Ctx, Game, History, IIMove, MatchConfig, PlayerI, Verdict,
};
use baire_games::catalog::{normalize_gauges, shrink_gauges, FuncSpec, GaugeFamily, Target};
use baire_games::error::Result;
use baire_games::exactnum::{cmp_dist, pow2_neg, rat, Point, QuadPoint, Rat};
use baire_games::harness::run_match;
use baire_games::setalgebra::Category;
use baire_games::strategies::{make_ii, BallII, GaugeII};

fn cfg(rounds: usize, eps: Rat, seed: u64) -> MatchConfig {
    MatchConfig::new(rounds, eps).unwrap().with_seed(seed)
}

fn gauge_ii(id: &str) -> GaugeII {
    let fam = Target::parse_id(id).unwrap().family();
    let g = normalize_gauges(&GaugeFamily::analytic(&fam).unwrap());
    GaugeII::new("gauge-ii", g, fam.hotspots()).unwrap()
}

fn ball_ii(id: &str) -> BallII {
    let fam = Target::parse_id(id).unwrap().family();
    let g = shrink_gauges(&normalize_gauges(&GaugeFamily::analytic(&fam).unwrap()));
    BallII::new("ball-ii", g).unwrap()
}

fn hist(xs: &[(i64, i64)]) -> History {
    History { xs: xs.iter().map(|&(n, d)| Point::rat(n, d)).collect(), ii: vec![] }
}

#[test]
fn gauge_ii_falls_back_to_the_last_move_early() {
    let s = gauge_ii("lip@1");
    let h = hist(&[(1, 2), (3, 4)]);
    assert_eq!(s.witness(&h).unwrap(), Point::rat(3, 4));
}

#[test]
fn gauge_ii_lipschitz_keeps_the_last_move() {
    // Γ(1/m, x) = 1/m covers K_4 = B[x_4, 1/8] up to m = 3, first candidate x_4
    let s = gauge_ii("lip@1");
    let h = hist(&[(1, 2), (3, 4), (5, 8), (11, 16), (21, 32)]);
    assert_eq!(s.witness(&h).unwrap(), Point::rat(21, 32));
}

#[test]
fn gauge_ii_on_a_constant_run_at_the_jump() {
    let s = gauge_ii("step@1/2");
    let f = FuncSpec::parse_id("step@1/2").unwrap();
    for n in 2..8 {
        let h = hist(&vec![(1, 2); n]);
        let w = s.witness(&h).unwrap();
        assert_eq!(w, Point::rat(1, 2));
        assert_eq!(f.eval(&w).unwrap(), QuadPoint::one());
    }
}

#[test]
fn gauge_ii_prefers_a_hotspot_covering_k() {
    let s = gauge_ii("pwa-sample");
    let h = History {
        xs: vec![Point::rat(1, 2), Point::rat(3, 4), Point::rat(7, 10), Point::rat(1259, 2000)],
        ii: vec![],
    };
    assert_eq!(s.witness(&h).unwrap(), Point::rat(2, 3));
}

#[test]
fn gauge_ii_refuses_a_non_monotone_gauge() {
    let g = GaugeFamily::new("raw", false, false, |e, _| Ok(e.clone()));
    assert!(GaugeII::new("x", g, vec![]).is_err());
}

#[test]
fn ball_ii_radii() {
    let s = ball_ii("step@1/2");
    let b = s.ball(3, &Point::rat(3, 4)).unwrap();
    assert_eq!(b.radius(), &rat(1, 32));
    let p = ball_ii("power-family");
    let b = p.ball(2, &Point::rat(3, 4)).unwrap();
    assert_eq!(b.radius(), &rat(1, 16));
}

#[test]
fn ball_ii_diameters_shrink_geometrically() {
    for target in ["step@1/2", "lip@1", "pwa-sample", "power-family", "pow@5"] {
        let kind = if target == "power-family" { "GppF" } else { "Gpp" };
        let g = Game::parse(kind, target).unwrap();
        let out = run_match(&g, "walk-i@11", "ball-ii", &cfg(30, rat(1, 8), 11)).unwrap();
        assert!(out.transcript.forfeit.is_none(), "{target}: {:?}", out.transcript.forfeit);
        for (n, m) in out.transcript.history.ii.iter().enumerate() {
            let IIMove::Ball(b) = m else { panic!("{target}: not a ball") };
            assert!(b.radius() * rat(2, 1) <= pow2_neg(n as i64), "{target} round {n}");
        }
    }
}

#[test]
fn borrowed_gauges_must_share_the_space() {
    let g = Game::parse("Gpp", "dirichlet-cantor").unwrap();
    assert!(make_ii("ball-ii@step@1/2", &g).is_err());
    let g = Game::parse("Gpp", "dirichlet-quad").unwrap();
    assert!(make_ii("ball-ii@step@1/2", &g).is_ok());
}

#[test]
fn echo_beats_const_in_gp() {
    let g = Game::parse("Gp", "step@1/2").unwrap();
    let out = run_match(&g, "const-i@2", "echo-ii", &cfg(5, rat(1, 8), 2)).unwrap();
    assert_eq!(out.transcript.history.xs.len(), 5);
    assert!(matches!(out.verdict, Verdict::IIWins { .. } | Verdict::Undecided { .. }));
    let out = run_match(&g, "const-i@2", "echo-ii", &cfg(40, rat(1, 8), 2)).unwrap();
    assert!(matches!(out.verdict, Verdict::IIWins { .. }), "{}", out.verdict);
}

#[test]
fn dense_i_alternates_against_ball_ii() {
    for (target, ii) in [("dirichlet-quad", "ball-ii@lip@1"), ("dirichlet-cantor", "center-ball-ii")] {
        let g = Game::parse("Gpp", target).unwrap();
        let out = run_match(&g, "dense-i", ii, &cfg(10, rat(1, 2), 0)).unwrap();
        assert!(out.transcript.forfeit.is_none());
        let f = FuncSpec::parse_id(target).unwrap();
        let vals: Vec<QuadPoint> = out.transcript.history.xs.iter().map(|x| f.eval(x).unwrap()).collect();
        for (n, v) in vals.iter().enumerate() {
            // odd → A and even → B, so every consecutive pair differs by 1
            let want = if n % 2 == 1 { QuadPoint::one() } else { QuadPoint::zero() };
            assert_eq!(v, &want, "{target} round {n}");
        }
        match &out.verdict {
            Verdict::IWins { certificate: Certificate::ValueGap { gap, .. } } => assert_eq!(gap, &QuadPoint::one()),
            v => panic!("{target}: {v}"),
        }
    }
}

#[test]
fn dense_i_with_shrinking_steps_is_legal_in_gp() {
    let g = Game::parse("Gp", "dirichlet-quad").unwrap();
    let out = run_match(&g, "dense-i", "echo-ii", &cfg(20, rat(1, 2), 0)).unwrap();
    assert!(out.transcript.forfeit.is_none());
    assert!(matches!(out.verdict, Verdict::IWins { .. }));
}

struct Jumper;

impl PlayerI for Jumper {
    fn id(&self) -> String {
        "jumper".into()
    }
    fn play(&mut self, _ctx: &mut Ctx<'_>, h: &History) -> Result<Point> {
        Ok(if h.round() % 2 == 0 { Point::rat(0, 1) } else { Point::rat(1, 1) })
    }
}

#[test]
fn step_violation_forfeits() {
    let g = Game::parse("Gp", "step@1/2").unwrap();
    let mut ii = make_ii("echo-ii", &g).unwrap();
    let c = cfg(10, rat(1, 8), 0);
    let t = play_match(&g, &mut Jumper, ii.as_mut(), &c).unwrap();
    let v = referee(&t).unwrap();
    assert!(v.is_forfeit());
    assert_eq!(v.exit_code(), 30);
    match v {
        Verdict::IIWins { certificate: Certificate::Forfeit { violation } } => {
            assert_eq!(violation.rule, "step");
            assert_eq!(violation.round, 2);
        }
        v => panic!("{v}"),
    }
}

#[test]
fn gauge_ii_beats_walk_i() {
    let g = Game::parse("Gp", "step@1/2").unwrap();
    let out = run_match(&g, "walk-i@7", "gauge-ii", &cfg(40, rat(1, 8), 7)).unwrap();
    assert!(matches!(out.verdict, Verdict::IIWins { .. }), "{}", out.verdict);
    assert_eq!(out.verdict.exit_code(), 0);
}

#[test]
fn gauge_ii_beats_the_adversarial_walk_at_a_break() {
    let g = Game::parse("Gp", "pwa-sample").unwrap();
    for seed in 0..6 {
        let out = run_match(&g, &format!("adv-walk-i@{seed}"), "gauge-ii", &cfg(40, rat(1, 8), seed)).unwrap();
        assert!(matches!(out.verdict, Verdict::IIWins { .. }), "seed {seed}: {}", out.verdict);
    }
}

#[test]
fn comeager_ii_sets_are_non_meager_and_hold_the_move() {
    let g = Game::parse("cGpp", "dirichlet-quad").unwrap();
    for i in ["sigma-i", "walk-i@5"] {
        let out = run_match(&g, i, "comeager-ii", &cfg(40, rat(1, 16), 5)).unwrap();
        let h = &out.transcript.history;
        for (x, m) in h.xs.iter().zip(&h.ii) {
            let IIMove::Set(s) = m else { panic!("not a set") };
            assert!(s.contains_point(x));
            assert_eq!(s.classify_category(), Category::NonMeagerBP);
        }
        assert!(matches!(out.verdict, Verdict::IIWins { .. }), "{i}: {}", out.verdict);
    }
}

#[test]
fn comeager_ii_rejects_a_rational_centre() {
    let g = Game::parse("cGpp", "dirichlet-quad").unwrap();
    assert!(make_ii("comeager-ii@1/2", &g).is_err());
}

#[test]
fn lusin_ii_keeps_positive_measure_and_shrinks() {
    let g = Game::parse("mGpp", "dirichlet-quad").unwrap();
    let out = run_match(&g, "walk-i@4", "lusin-ii", &cfg(10, rat(1, 16), 4)).unwrap();
    assert!(out.transcript.forfeit.is_none());
    for (n, m) in out.transcript.history.ii.iter().enumerate() {
        let IIMove::Set(s) = m else { panic!("not a set") };
        assert!(s.measure().is_positive());
        let iv = s.intervals();
        let diam = &iv[iv.len() - 1].hi - &iv[0].lo;
        assert!(diam < QuadPoint::from_ratio(1, n as i64 + 2), "round {n}: {diam}");
    }
    assert!(matches!(out.verdict, Verdict::IIWins { .. }), "{}", out.verdict);
}

#[test]
fn sigma_i_gaps_are_exact() {
    for kind in ["cGpp", "mGpp"] {
        let g = Game::parse(kind, "nonmeas-oracle").unwrap();
        let ii = if kind == "cGpp" { "constant-ii" } else { "lusin-ii" };
        let out = run_match(&g, "sigma-i", ii, &cfg(20, rat(1, 4), 0)).unwrap();
        let oracle = out.transcript.oracle.as_ref().expect("oracle snapshot");
        let vals: Vec<QuadPoint> = out
            .transcript
            .history
            .xs
            .iter()
            .map(|x| oracle.peek(x.as_line().unwrap()).unwrap())
            .collect();
        for pair in vals.chunks(2).filter(|c| c.len() == 2) {
            assert!((&pair[0] - &pair[1]).abs() >= QuadPoint::from_ratio(1, 4), "{kind}");
        }
        assert!(matches!(out.verdict, Verdict::IWins { .. }), "{kind}: {}", out.verdict);
    }
}

#[test]
fn walks_are_reproducible_and_step_legal() {
    for (kind, target) in [("Gp", "lip@1"), ("G", "dirichlet-cantor"), ("GpF", "power-family")] {
        let g = Game::parse(kind, target).unwrap();
        let c = cfg(25, rat(1, 8), 9);
        let a = run_match(&g, "walk-i@9", "echo-ii", &c).unwrap();
        let b = run_match(&g, "walk-i@9", "echo-ii", &c).unwrap();
        assert_eq!(a.transcript.to_jsonl(), b.transcript.to_jsonl());
        let xs = &a.transcript.history.xs;
        for n in 1..xs.len() {
            let r = pow2_neg(n as i64 - 1);
            assert!(cmp_dist(&xs[n - 1], &xs[n], &r).unwrap().is_le(), "{kind} {target} step {n}");
        }
    }
}

#[test]
fn center_ball_vs_dense_i_is_won_by_i() {
    let g = Game::parse("Gpp", "dirichlet-quad").unwrap();
    let out = run_match(&g, "dense-i", "center-ball-ii", &cfg(40, rat(1, 2), 0)).unwrap();
    assert!(matches!(out.verdict, Verdict::IWins { .. }));
}
