use baire_games::arena::{
    referee, replay, verify_certificate, Certificate, Game, GameKind, IIMove, MatchConfig, Side, Transcript,
    Verdict, Violation,
};
use baire_games::error::Error;
use baire_games::exactnum::{cmp_dist, pow2_neg, rat};
use baire_games::harness::{run_match, Matrix};
use baire_games::strategies::{I_STRATEGIES, II_STRATEGIES};
use proptest::prelude::*;

const TARGETS: &[&str] = &[
    "lip@1",
    "step@1/2",
    "pow@5",
    "pwa-sample",
    "dirichlet-quad",
    "dirichlet-cantor",
    "nonmeas-oracle",
    "power-family",
    "step-family",
    "finite:step@1/2|lip@1",
];

fn with_seed(id: &str, seed: u64) -> String {
    if id.ends_with("-i") && (id.starts_with("walk") || id.starts_with("const") || id.starts_with("adv-walk")) {
        format!("{id}@{seed}")
    } else {
        id.to_string()
    }
}

/// Every playable cell of the full matrix at a short horizon.
fn all_cells(seed: u64, rounds: usize) -> Vec<baire_games::harness::Cell> {
    Matrix {
        kinds: GameKind::ALL.to_vec(),
        targets: TARGETS.iter().map(|s| s.to_string()).collect(),
        strategies_i: I_STRATEGIES.iter().map(|(n, _)| with_seed(n, seed)).collect(),
        strategies_ii: II_STRATEGIES.iter().map(|(n, _)| n.to_string()).collect(),
        seeds: vec![seed],
        rounds,
        eps_dec: rat(1, 8),
        window: None,
    }
    .cells()
}

fn dense_run(target: &str, ii: &str, rounds: usize) -> Transcript {
    let g = Game::parse("Gpp", target).unwrap();
    let cfg = MatchConfig::new(rounds, rat(1, 2)).unwrap();
    run_match(&g, "dense-i", ii, &cfg).unwrap().transcript
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    /// Built-in strategies never break a rule, against any opponent.
    #[test]
    fn built_ins_play_legally(seed in 0u64..1000) {
        for cell in all_cells(seed, 12) {
            // strategies that need a witness the target lacks refuse to start
            let out = match cell.run() {
                Ok(out) => out,
                Err(Error::Classification(_)) => continue,
                Err(e) => panic!("{cell:?}: {e}"),
            };
            prop_assert!(out.transcript.forfeit.is_none(), "{cell:?}: {:?}", out.transcript.forfeit);
            prop_assert!(replay(&out.transcript, &out.verdict).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn forfeits_take_precedence(seed in 0u64..1000, at in 0usize..10, by_i in any::<bool>()) {
        let g = Game::parse("Gp", "step@1/2").unwrap();
        let cfg = MatchConfig::new(10, rat(1, 8)).unwrap().with_seed(seed);
        let mut t = run_match(&g, &format!("walk-i@{seed}"), "gauge-ii", &cfg).unwrap().transcript;
        let player = if by_i { Side::I } else { Side::II };
        t.history.xs.truncate(at + 1);
        t.history.ii.truncate(if by_i { at } else { at + 1 });
        t.limit = None;
        t.forfeit = Some(Violation { round: at, player, rule: "step".into(), detail: "injected".into() });
        let v = referee(&t).unwrap();
        prop_assert!(v.is_forfeit());
        prop_assert_eq!(v.winner(), Some(player.other()));
        prop_assert!(verify_certificate(&t, &v).unwrap());
    }

    /// A value gap found on a prefix survives every extension.
    #[test]
    fn failure_pairs_survive_extension(cut in 34usize..40, target in prop::sample::select(&["dirichlet-quad", "dirichlet-cantor"][..])) {
        let full = dense_run(target, "center-ball-ii", 40);
        let mut short = full.clone();
        short.history.xs.truncate(cut);
        short.history.ii.truncate(cut);
        short.limit = None;
        let v = referee(&short).unwrap();
        prop_assert!(matches!(v, Verdict::IWins { certificate: Certificate::ValueGap { .. } }), "{v}");
        prop_assert!(verify_certificate(&full, &v).unwrap());
        let long = referee(&full).unwrap();
        prop_assert!(matches!(long, Verdict::IWins { .. }), "{long}");
    }

    /// Shrunk gauge balls halve every round, so I's moves obey the step rule.
    #[test]
    fn shrunk_balls_have_diameter_at_most_two_to_minus_n(
        seed in 0u64..1000,
        target in prop::sample::select(&["lip@1", "step@1/2", "pow@5", "pwa-sample"][..]),
    ) {
        let g = Game::parse("Gpp", target).unwrap();
        let cfg = MatchConfig::new(24, rat(1, 8)).unwrap().with_seed(seed);
        for i in [format!("walk-i@{seed}"), format!("const-i@{seed}")] {
            let t = run_match(&g, &i, "ball-ii", &cfg).unwrap().transcript;
            prop_assert!(t.forfeit.is_none());
            for (n, m) in t.history.ii.iter().enumerate() {
                let IIMove::Ball(b) = m else { panic!("not a ball") };
                prop_assert!(b.radius() * rat(2, 1) <= pow2_neg(n as i64));
            }
            let xs = &t.history.xs;
            for n in 1..xs.len() {
                prop_assert!(cmp_dist(&xs[n - 1], &xs[n], &pow2_neg(n as i64 - 1)).unwrap().is_le());
            }
        }
    }

    #[test]
    fn transcripts_round_trip_and_replay(seed in 0u64..1000, kind in prop::sample::select(&["G", "Gp", "Gpp"][..])) {
        let g = Game::parse(kind, "pwa-sample").unwrap();
        let ii = if kind == "Gpp" { "ball-ii" } else { "gauge-ii" };
        let cfg = MatchConfig::new(20, rat(1, 8)).unwrap().with_seed(seed);
        let out = run_match(&g, &format!("walk-i@{seed}"), ii, &cfg).unwrap();
        let back = Transcript::from_jsonl(&out.transcript.to_jsonl()).unwrap();
        prop_assert_eq!(&back, &out.transcript);
        prop_assert!(replay(&back, &out.verdict).unwrap());
        prop_assert_eq!(referee(&back).unwrap(), referee(&back).unwrap());
    }
}
