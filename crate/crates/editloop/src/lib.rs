//! Recurrent text editing on synthetic arithmetic equation tasks.
//!
//! The crate provides three inference methods over a shared encoder-decoder
//! programmer:
//!
//! * **End2end** — decode the fully edited sequence directly.
//! * **Tagging** — decode per-token edit tags, then realize them over the source.
//! * **Recurrence** — alternate a programmer (predicts one short editing action)
//!   with a parameter-free interpreter until a termination action.
//!
//! Everything is exercised on three equation-editing tasks: operator
//! restoration (AOR), equation simplification (AES), and equation correction
//! (AEC), with seeded data generation, gold-trace derivation, training, and
//! evaluation wired together behind the `editloop` CLI.

pub mod actions;
pub mod arith;
pub mod cli;
pub mod config;
pub mod dataio;
pub mod engine;
pub mod eval;
pub mod model;
pub mod seeding;
pub mod task;
pub mod taskgen;
pub mod trace;

pub use arith::{check_equation, eval_expr, tokenize, Token, TokenSeq};
pub use task::{Method, Mode, Task};
