//! Privacy configurations, query evaluation and the content an attacker
//! learns from answers.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;
use crate::logic::{self, LFormula, LTheory};
use crate::modal::{self, MFormula, MFormulaSet, MModel};

/// The answer alphabet: true, unknown, refused.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Answer {
    T,
    U,
    R,
}

impl Answer {
    pub const ALL: [Answer; 3] = [Answer::T, Answer::U, Answer::R];

    pub fn symbol(self) -> char {
        match self {
            Answer::T => 't',
            Answer::U => 'u',
            Answer::R => 'r',
        }
    }

    pub fn from_symbol(c: char) -> Option<Answer> {
        match c {
            't' => Some(Answer::T),
            'u' => Some(Answer::U),
            'r' => Some(Answer::R),
            _ => None,
        }
    }

    /// The other non-refusal answer. `r` maps to itself.
    pub fn flipped(self) -> Answer {
        match self {
            Answer::T => Answer::U,
            Answer::U => Answer::T,
            Answer::R => Answer::R,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Knowledge base, a priori knowledge of the attacker, and secrets.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct PrivacyConfiguration {
    pub kb: LTheory,
    pub ak: MFormulaSet,
    pub sec: BTreeSet<LFormula>,
}

impl PrivacyConfiguration {
    pub fn new(
        kb: impl IntoIterator<Item = LFormula>,
        ak: impl IntoIterator<Item = MFormula>,
        sec: impl IntoIterator<Item = LFormula>,
    ) -> Self {
        PrivacyConfiguration {
            kb: kb.into_iter().collect(),
            ak: ak.into_iter().collect(),
            sec: sec.into_iter().collect(),
        }
    }

    /// The same attacker knowledge and secrets over a different knowledge base.
    pub fn with_kb(&self, kb: LTheory) -> Self {
        PrivacyConfiguration {
            kb,
            ak: self.ak.clone(),
            sec: self.sec.clone(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate(self)
    }

    /// All atoms mentioned by the knowledge base, the a priori knowledge and
    /// the secrets.
    pub fn atoms(&self) -> BTreeSet<logic::Atom> {
        let mut out = logic::atoms_of(&self.kb);
        for inner in modal::box_atoms_of(&self.ak) {
            inner.collect_atoms(&mut out);
        }
        for s in &self.sec {
            s.collect_atoms(&mut out);
        }
        out
    }
}

/// Outcome of checking the three conditions on a configuration. Each list
/// names the offending formulas; empty means the condition holds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ValidationReport {
    pub consistent: bool,
    /// AK formulas false in the model `{KB}`.
    pub untruthful_ak: Vec<MFormula>,
    /// Secrets `s` with `AK ⊨ box(s)`.
    pub exposed_secrets: Vec<LFormula>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.consistent && self.untruthful_ak.is_empty() && self.exposed_secrets.is_empty()
    }
}

pub fn validate(config: &PrivacyConfiguration) -> ValidationReport {
    let kb_model = MModel::single(config.kb.clone());
    ValidationReport {
        consistent: logic::is_consistent(&config.kb),
        untruthful_ak: config
            .ak
            .iter()
            .filter(|phi| !modal::holds(&kb_model, phi))
            .cloned()
            .collect(),
        exposed_secrets: config
            .sec
            .iter()
            .filter(|s| modal::entails(&config.ak, &MFormula::Box((*s).clone())))
            .cloned()
            .collect(),
    }
}

/// Honest evaluation: `t` iff the knowledge base derives the query.
pub fn eval(kb: &LTheory, q: &LFormula) -> Answer {
    if logic::derives(kb, q) {
        Answer::T
    } else {
        Answer::U
    }
}

/// What an attacker learns from answer `a` to query `q`.
pub fn answer_content(q: &LFormula, a: Answer) -> MFormula {
    match a {
        Answer::T => MFormula::Box(q.clone()),
        Answer::U => MFormula::Box(q.clone()).not(),
        Answer::R => MFormula::Top,
    }
}

/// A finite run of queries and answers.
///
/// `forced_leaks` lists the 0-based positions where the censor had no
/// answer left that kept every secret hidden.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Transcript {
    queries: Vec<LFormula>,
    answers: Vec<Answer>,
    forced_leaks: Vec<usize>,
}

impl Transcript {
    pub fn new() -> Self {
        Transcript::default()
    }

    /// Pairs up queries and answers. Fails on a length mismatch.
    pub fn from_parts(queries: Vec<LFormula>, answers: Vec<Answer>) -> Result<Self, Error> {
        if queries.len() != answers.len() {
            return Err(Error::TranscriptLength {
                queries: queries.len(),
                answers: answers.len(),
            });
        }
        Ok(Transcript {
            queries,
            answers,
            forced_leaks: Vec::new(),
        })
    }

    pub fn push(&mut self, q: LFormula, a: Answer) {
        self.queries.push(q);
        self.answers.push(a);
    }

    pub(crate) fn flag_forced_leak(&mut self) {
        self.forced_leaks.push(self.len() - 1);
    }

    pub fn len(&self) -> usize {
        self.queries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.queries.is_empty()
    }

    pub fn queries(&self) -> &[LFormula] {
        &self.queries
    }

    pub fn answers(&self) -> &[Answer] {
        &self.answers
    }

    pub fn forced_leaks(&self) -> &[usize] {
        &self.forced_leaks
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LFormula, Answer)> + '_ {
        self.queries.iter().zip(self.answers.iter().copied())
    }

    /// The first `n` steps.
    pub fn prefix(&self, n: usize) -> Transcript {
        let n = n.min(self.len());
        Transcript {
            queries: self.queries[..n].to_vec(),
            answers: self.answers[..n].to_vec(),
            forced_leaks: self
                .forced_leaks
                .iter()
                .copied()
                .filter(|&i| i < n)
                .collect(),
        }
    }

    /// Content of the first `n` answers together with `ak`.
    pub fn content(&self, ak: &MFormulaSet, n: usize) -> Result<MFormulaSet, Error> {
        transcript_content(self, ak, n)
    }
}

pub fn transcript_content(
    tr: &Transcript,
    ak: &MFormulaSet,
    n: usize,
) -> Result<MFormulaSet, Error> {
    if n > tr.len() {
        return Err(Error::PrefixOutOfRange { n, len: tr.len() });
    }
    let mut out = ak.clone();
    out.extend(tr.iter().take(n).map(|(q, a)| answer_content(q, a)));
    Ok(out)
}

/// Honest content of `kb` restricted to a finite universe of formulas.
pub fn full_content<'a>(
    kb: &LTheory,
    universe: impl IntoIterator<Item = &'a LFormula>,
) -> MFormulaSet {
    universe
        .into_iter()
        .map(|a| answer_content(a, eval(kb, a)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(name: &str) -> LFormula {
        LFormula::atom(name)
    }
    fn bx(f: LFormula) -> MFormula {
        MFormula::Box(f)
    }

    #[test]
    fn first_nogo_configuration_is_valid() {
        let c = PrivacyConfiguration::new([l("s")], [], [l("s")]);
        assert!(validate(&c).is_valid());
    }

    #[test]
    fn inconsistent_kb_is_rejected() {
        let c = PrivacyConfiguration::new([l("a"), l("a").not()], [], []);
        let r = validate(&c);
        assert!(!r.consistent);
        assert!(r.untruthful_ak.is_empty() && r.exposed_secrets.is_empty());
    }

    #[test]
    fn untruthful_start_is_rejected() {
        let c = PrivacyConfiguration::new([l("a")], [bx(l("b"))], []);
        let r = validate(&c);
        assert!(r.consistent);
        assert_eq!(r.untruthful_ak, vec![bx(l("b"))]);
    }

    #[test]
    fn exposed_secret_is_rejected() {
        let c = PrivacyConfiguration::new([l("a"), l("b")], [bx(l("a"))], [l("a"), l("b")]);
        let r = validate(&c);
        assert!(r.consistent && r.untruthful_ak.is_empty());
        assert_eq!(r.exposed_secrets, vec![l("a")]);
    }

    #[test]
    fn eval_examples() {
        let kb = LTheory::from([l("a"), l("c")]);
        assert_eq!(eval(&kb, &l("a")), Answer::T);
        assert_eq!(eval(&kb, &l("b")), Answer::U);
        assert_eq!(eval(&LTheory::new(), &l("a")), Answer::U);
    }

    #[test]
    fn content_of_answers() {
        assert_eq!(answer_content(&l("a"), Answer::T), bx(l("a")));
        assert_eq!(answer_content(&l("a"), Answer::U), bx(l("a")).not());
        assert_eq!(answer_content(&l("a"), Answer::R), MFormula::Top);
    }

    #[test]
    fn transcript_content_examples() {
        let tr = Transcript::from_parts(vec![l("a"), l("b")], vec![Answer::T, Answer::U]).unwrap();
        let ak: MFormulaSet = [bx(l("c").or(l("d")))].into();
        assert_eq!(transcript_content(&tr, &ak, 0).unwrap(), ak);
        let expected: MFormulaSet = [bx(l("a")), bx(l("b")).not()].into();
        assert_eq!(
            transcript_content(&tr, &MFormulaSet::new(), 2).unwrap(),
            expected
        );
        let one = transcript_content(&tr, &ak, 1).unwrap();
        let two = transcript_content(&tr, &ak, 2).unwrap();
        assert!(one.is_subset(&two));
        assert!(matches!(
            transcript_content(&tr, &ak, 3),
            Err(Error::PrefixOutOfRange { n: 3, len: 2 })
        ));
    }

    #[test]
    fn mismatched_transcript_is_rejected() {
        assert!(Transcript::from_parts(vec![l("a")], vec![]).is_err());
    }

    #[test]
    fn full_content_examples() {
        let kb = LTheory::from([l("a")]);
        let expected: MFormulaSet = [bx(l("a"))].into();
        assert_eq!(full_content(&kb, &[l("a")]), expected);
        let expected: MFormulaSet = [bx(l("a")), bx(l("b")).not()].into();
        assert_eq!(full_content(&kb, &[l("a"), l("b")]), expected);
    }

    #[test]
    fn refusals_keep_top_in_content() {
        let tr = Transcript::from_parts(vec![l("a")], vec![Answer::R]).unwrap();
        let c = transcript_content(&tr, &MFormulaSet::new(), 1).unwrap();
        assert!(c.contains(&MFormula::Top));
    }
}
