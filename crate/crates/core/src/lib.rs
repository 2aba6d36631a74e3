//! Controlled query evaluation over propositional knowledge bases.
//!
//! A censor answers queries against a secret-bearing knowledge base with
//! `t`, `u` or `r`. What a user learns from the answers is a set of modal
//! formulas over `box(..)`; the censor must keep every secret out of it.

pub mod censor;
pub mod config;
mod error;
pub mod logic;
pub mod modal;
pub mod privacy;
pub mod repl;
pub mod scenarios;
pub mod syntax;
pub mod verifier;

pub use censor::{
    exposure, extend, run, AllRefuse, Censor, CensorKind, Exposure, Honest, LyingNonRefusing,
    Response, Scripted, TieBreak, TruthfulMin,
};
pub use error::Error;
pub use logic::{derives, is_consistent, Atom, LFormula, LTheory};
pub use modal::{entails, holds, satisfiable, MFormula, MFormulaSet, MModel};
pub use privacy::{
    answer_content, eval, transcript_content, validate, Answer, PrivacyConfiguration, Transcript,
    ValidationReport,
};
pub use syntax::{parse_l, parse_m, ParseError, Render, Style};
pub use verifier::{check_all, Property, PropertyReport, Verdict, Witness};
