//! Game engines, the match driver, and the finite-horizon referee.

mod engine;
mod equi;
mod game;
mod referee;
mod transcript;

pub use engine::{play_match, Ctx, Evaluator, PlayerI, PlayerII};
pub use equi::{check_equi_cauchy, check_equi_cauchy_from, check_equi_conv, check_equi_conv_from};
pub use game::{check_limit, validate_i, validate_ii, validate_move, Game, GameKind, History, IIMove, Move, Side, Violation};
pub use referee::{referee, replay, verify_certificate, Certificate, LimitSource, Verdict};
pub use transcript::{default_window, write_atomic, DeclaredLimit, MatchConfig, Transcript};
