//! Censors: answering strategies that see the configuration, the transcript
//! so far and the current query, and nothing else. Continuity is therefore
//! structural.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::logic::LFormula;
use crate::modal::{self, MFormula, MFormulaSet};
use crate::privacy::{answer_content, eval, Answer, PrivacyConfiguration, Transcript};

/// What a set of content formulas gives away.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Exposure {
    Safe,
    /// The content entails `box(s)` for this secret.
    Secret(LFormula),
    /// The content is unsatisfiable.
    Contradiction,
}

impl Exposure {
    pub fn is_safe(&self) -> bool {
        matches!(self, Exposure::Safe)
    }
}

/// Contradiction is reported before leaked secrets; among secrets the
/// least one in set order is named.
pub fn exposure<'a>(
    content: &MFormulaSet,
    secrets: impl IntoIterator<Item = &'a LFormula>,
) -> Exposure {
    if !modal::satisfiable(content) {
        return Exposure::Contradiction;
    }
    secrets
        .into_iter()
        .find(|s| modal::entails(content, &MFormula::Box((*s).clone())))
        .map_or(Exposure::Safe, |s| Exposure::Secret(s.clone()))
}

/// Exposure after appending the content of `a` to `q` to `content`.
fn exposure_with(
    content: &MFormulaSet,
    config: &PrivacyConfiguration,
    q: &LFormula,
    a: Answer,
) -> Exposure {
    let mut next = content.clone();
    next.insert(answer_content(q, a));
    exposure(&next, &config.sec)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Response {
    pub answer: Answer,
    /// Set when no admissible answer kept the secrets hidden.
    pub forced_leak: bool,
}

impl Response {
    fn plain(answer: Answer) -> Self {
        Response {
            answer,
            forced_leak: false,
        }
    }
}

pub trait Censor: Send + Sync {
    fn name(&self) -> &str;

    /// Whether this censor ever answers `r`.
    fn may_refuse(&self) -> bool;

    /// Answers `q` given the configuration and everything asked so far.
    /// Must be a deterministic function of its arguments.
    fn respond(
        &self,
        config: &PrivacyConfiguration,
        history: &Transcript,
        q: &LFormula,
    ) -> Response;

    fn next_answer(
        &self,
        config: &PrivacyConfiguration,
        history: &Transcript,
        q: &LFormula,
    ) -> Answer {
        self.respond(config, history, q).answer
    }
}

/// Runs `censor` over `queries`. The configuration must be valid.
pub fn run(
    censor: &dyn Censor,
    config: &PrivacyConfiguration,
    queries: &[LFormula],
) -> Result<Transcript, Error> {
    let report = config.validate();
    if !report.is_valid() {
        return Err(Error::InvalidConfiguration(describe_invalid(&report)));
    }
    Ok(extend(censor, config, Transcript::new(), queries))
}

fn describe_invalid(report: &crate::privacy::ValidationReport) -> String {
    let mut parts = Vec::new();
    if !report.consistent {
        parts.push("knowledge base is inconsistent".to_string());
    }
    if !report.untruthful_ak.is_empty() {
        parts.push(format!(
            "{} a priori formula(s) false in the knowledge base",
            report.untruthful_ak.len()
        ));
    }
    if !report.exposed_secrets.is_empty() {
        parts.push(format!(
            "{} secret(s) entailed by a priori knowledge",
            report.exposed_secrets.len()
        ));
    }
    parts.join("; ")
}

/// Continues `history` by answering `queries` in order.
pub fn extend(
    censor: &dyn Censor,
    config: &PrivacyConfiguration,
    mut history: Transcript,
    queries: &[LFormula],
) -> Transcript {
    for q in queries {
        let response = censor.respond(config, &history, q);
        history.push(q.clone(), response.answer);
        if response.forced_leak {
            history.flag_forced_leak();
        }
    }
    history
}

fn current_content(config: &PrivacyConfiguration, history: &Transcript) -> MFormulaSet {
    history
        .content(&config.ak, history.len())
        .expect("full prefix is in range")
}

/// Refuses everything.
#[derive(Clone, Copy, Debug, Default)]
pub struct AllRefuse;

impl Censor for AllRefuse {
    fn name(&self) -> &str {
        "all-refuse"
    }

    fn may_refuse(&self) -> bool {
        true
    }

    fn respond(&self, _: &PrivacyConfiguration, _: &Transcript, _: &LFormula) -> Response {
        Response::plain(Answer::R)
    }
}

/// Answers honestly and protects nothing.
#[derive(Clone, Copy, Debug, Default)]
pub struct Honest;

impl Censor for Honest {
    fn name(&self) -> &str {
        "honest"
    }

    fn may_refuse(&self) -> bool {
        false
    }

    fn respond(&self, config: &PrivacyConfiguration, _: &Transcript, q: &LFormula) -> Response {
        Response::plain(eval(&config.kb, q))
    }
}

/// Truthful censor that refuses exactly when the honest answer would, on
/// its own, expose a secret or contradict earlier content.
#[derive(Clone, Copy, Debug, Default)]
pub struct TruthfulMin;

impl Censor for TruthfulMin {
    fn name(&self) -> &str {
        "truthful-min"
    }

    fn may_refuse(&self) -> bool {
        true
    }

    fn respond(
        &self,
        config: &PrivacyConfiguration,
        history: &Transcript,
        q: &LFormula,
    ) -> Response {
        let honest = eval(&config.kb, q);
        let content = current_content(config, history);
        if exposure_with(&content, config, q, honest).is_safe() {
            Response::plain(honest)
        } else {
            Response::plain(Answer::R)
        }
    }
}

/// What a lying censor does when neither `t` nor `u` is safe.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum TieBreak {
    #[default]
    Honest,
    Lie,
}

impl FromStr for TieBreak {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "honest" => Ok(TieBreak::Honest),
            "lie" => Ok(TieBreak::Lie),
            _ => Err(Error::Unknown {
                kind: "tie-break",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for TieBreak {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TieBreak::Honest => "honest",
            TieBreak::Lie => "lie",
        })
    }
}

/// Never refuses: answers honestly when that is safe, otherwise the
/// opposite value, and falls back to `tie_break` when both expose.
#[derive(Clone, Copy, Debug, Default)]
pub struct LyingNonRefusing {
    pub tie_break: TieBreak,
}

impl LyingNonRefusing {
    pub fn new(tie_break: TieBreak) -> Self {
        LyingNonRefusing { tie_break }
    }
}

impl Censor for LyingNonRefusing {
    fn name(&self) -> &str {
        match self.tie_break {
            TieBreak::Honest => "lying",
            TieBreak::Lie => "lying(tie-break=lie)",
        }
    }

    fn may_refuse(&self) -> bool {
        false
    }

    fn respond(
        &self,
        config: &PrivacyConfiguration,
        history: &Transcript,
        q: &LFormula,
    ) -> Response {
        let honest = eval(&config.kb, q);
        let content = current_content(config, history);
        if exposure_with(&content, config, q, honest).is_safe() {
            return Response::plain(honest);
        }
        let lie = honest.flipped();
        if exposure_with(&content, config, q, lie).is_safe() {
            return Response::plain(lie);
        }
        Response {
            answer: match self.tie_break {
                TieBreak::Honest => honest,
                TieBreak::Lie => lie,
            },
            forced_leak: true,
        }
    }
}

/// Replays fixed answers by position, whatever the configuration; positions
/// past the script are refused. Used to put hand-built transcripts through
/// the checkers that need a censor.
#[derive(Clone, Debug)]
pub struct Scripted {
    answers: Vec<Answer>,
}

impl Scripted {
    pub fn new(answers: impl Into<Vec<Answer>>) -> Self {
        Scripted {
            answers: answers.into(),
        }
    }
}

impl Censor for Scripted {
    fn name(&self) -> &str {
        "scripted"
    }

    fn may_refuse(&self) -> bool {
        true
    }

    fn respond(&self, _: &PrivacyConfiguration, history: &Transcript, _: &LFormula) -> Response {
        Response::plain(
            self.answers
                .get(history.len())
                .copied()
                .unwrap_or(Answer::R),
        )
    }
}

/// Censor selection by name, as used on the command line.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CensorKind {
    AllRefuse,
    TruthfulMin,
    Lying(TieBreak),
    Honest,
}

impl CensorKind {
    pub fn build(self) -> Box<dyn Censor> {
        match self {
            CensorKind::AllRefuse => Box::new(AllRefuse),
            CensorKind::TruthfulMin => Box::new(TruthfulMin),
            CensorKind::Lying(t) => Box::new(LyingNonRefusing::new(t)),
            CensorKind::Honest => Box::new(Honest),
        }
    }

    pub fn parse(name: &str, tie_break: TieBreak) -> Result<Self, Error> {
        match name {
            "all-refuse" => Ok(CensorKind::AllRefuse),
            "truthful-min" => Ok(CensorKind::TruthfulMin),
            "lying" => Ok(CensorKind::Lying(tie_break)),
            "honest" => Ok(CensorKind::Honest),
            _ => Err(Error::Unknown {
                kind: "censor",
                name: name.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Answer::*;

    fn l(name: &str) -> LFormula {
        LFormula::atom(name)
    }
    fn bx(f: LFormula) -> MFormula {
        MFormula::Box(f)
    }

    fn running_example() -> PrivacyConfiguration {
        PrivacyConfiguration::new([l("a"), l("c")], [], [l("c")])
    }

    fn second_nogo() -> PrivacyConfiguration {
        let (a, b, c) = (l("a"), l("b"), l("c"));
        PrivacyConfiguration::new(
            [a.clone(), b.clone()],
            [
                bx(c.clone().implies(a.clone())).implies(bx(c.clone().not()).or(bx(a.clone()))),
                bx(c.clone().not().implies(b.clone())).implies(bx(c.clone()).or(bx(b.clone()))),
            ],
            [a, b],
        )
    }

    #[test]
    fn all_refuse_refuses() {
        let tr = run(&AllRefuse, &running_example(), &[l("a"), l("b"), l("c")]).unwrap();
        assert_eq!(tr.answers(), [R, R, R]);
    }

    #[test]
    fn truthful_min_on_running_example() {
        let tr = run(&TruthfulMin, &running_example(), &[l("a"), l("b"), l("c")]).unwrap();
        assert_eq!(tr.answers(), [T, U, R]);
    }

    #[test]
    fn truthful_min_refuses_secret_query() {
        let config = PrivacyConfiguration::new([l("s")], [], [l("s")]);
        let tr = run(&TruthfulMin, &config, &[l("s"), l("s"), l("s")]).unwrap();
        assert_eq!(tr.answers(), [R, R, R]);
    }

    #[test]
    fn benign_query_answered_honestly() {
        let config = PrivacyConfiguration::new([l("a"), l("s")], [], [l("s")]);
        let tr = run(&TruthfulMin, &config, &[l("a"), l("b")]).unwrap();
        assert_eq!(tr.answers(), [T, U]);
    }

    #[test]
    fn lying_lies_where_truthful_refuses() {
        let tr = run(
            &LyingNonRefusing::default(),
            &running_example(),
            &[l("a"), l("b"), l("c")],
        )
        .unwrap();
        assert_eq!(tr.answers(), [T, U, U]);
        assert!(tr.forced_leaks().is_empty());
    }

    #[test]
    fn lying_dilemma_is_flagged() {
        let (a, b, c) = (l("a"), l("b"), l("c"));
        let queries = [c.clone().implies(a), c.clone().not().implies(b), c];
        let tr = run(&LyingNonRefusing::default(), &second_nogo(), &queries).unwrap();
        assert_eq!(tr.answers(), [T, T, U]);
        assert_eq!(tr.forced_leaks(), [2]);
        let tr = run(
            &LyingNonRefusing::new(TieBreak::Lie),
            &second_nogo(),
            &queries,
        )
        .unwrap();
        assert_eq!(tr.answers(), [T, T, T]);
        assert_eq!(tr.forced_leaks(), [2]);
    }

    #[test]
    fn lying_without_secrets_is_honest() {
        let config = PrivacyConfiguration::new([l("a")], [], []);
        let queries = [l("a"), l("b"), l("a").or(l("b"))];
        let tr = run(&LyingNonRefusing::default(), &config, &queries).unwrap();
        assert_eq!(tr.answers(), [T, U, T]);
    }

    #[test]
    fn invalid_configuration_is_an_error() {
        let config = PrivacyConfiguration::new([l("a"), l("a").not()], [], []);
        assert!(matches!(
            run(&TruthfulMin, &config, &[l("a")]),
            Err(Error::InvalidConfiguration(_))
        ));
    }

    #[test]
    fn censor_names_parse() {
        assert_eq!(
            CensorKind::parse("lying", TieBreak::Lie).unwrap(),
            CensorKind::Lying(TieBreak::Lie)
        );
        assert!(CensorKind::parse("nope", TieBreak::Honest).is_err());
        assert_eq!("lie".parse::<TieBreak>().unwrap(), TieBreak::Lie);
    }
}
