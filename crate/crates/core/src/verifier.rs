//! Property checkers for finite runs.
//!
//! Every check looks at one configuration and one finite query sequence.
//! A `violated` verdict always carries a witness that can be replayed with
//! the operations it names.

use std::fmt;

use crate::censor::{exposure, extend, Censor, Exposure};
use crate::error::Error;
use crate::logic::{self, Atom, LFormula, LTheory};
use crate::privacy::{eval, Answer, PrivacyConfiguration, Transcript};
use crate::syntax::compact;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Property {
    Effective,
    Credible,
    Truthful,
    MinInvasive,
    Repudiating,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Effective => "effective",
            Property::Credible => "credible",
            Property::Truthful => "truthful",
            Property::MinInvasive => "min-invasive",
            Property::Repudiating => "repudiating",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Holds,
    Violated,
    /// Reserved for bounded searches that can neither confirm nor refute.
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Undetermined => "undetermined",
        })
    }
}

/// How a distortion was shown to be avoidable.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Continuation {
    /// The censor itself, continued after the honest answer, stayed effective
    /// and credible over the remaining queries.
    Censor,
    /// Refusing every later query keeps the content unchanged, so the
    /// replaced prefix stays effective and credible forever.
    RefuseAll,
}

/// Positions are 1-based, matching prefix lengths.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Witness {
    Leak {
        n: usize,
        secret: LFormula,
    },
    Unsatisfiable {
        n: usize,
    },
    Lie {
        i: usize,
        query: LFormula,
        answer: Answer,
        honest: Answer,
    },
    AvoidableDistortion {
        i: usize,
        query: LFormula,
        answer: Answer,
        honest: Answer,
        continuation: Continuation,
    },
    /// No candidate knowledge base reproduces the first `n` answers.
    Undeniable {
        n: usize,
        candidates: usize,
    },
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Leak { n, secret } => write!(f, "n={n},secret={}", compact(secret)),
            Witness::Unsatisfiable { n } => write!(f, "n={n},unsatisfiable"),
            Witness::Lie {
                i,
                query,
                answer,
                honest,
            } => write!(
                f,
                "i={i},query={},answer={answer},eval={honest}",
                compact(query)
            ),
            Witness::AvoidableDistortion {
                i,
                query,
                answer,
                honest,
                continuation,
            } => write!(
                f,
                "i={i},query={},answer={answer},eval={honest},continuation={}",
                compact(query),
                match continuation {
                    Continuation::Censor => "censor",
                    Continuation::RefuseAll => "refuse-all",
                }
            ),
            Witness::Undeniable { n, candidates } => {
                write!(f, "n={n},candidates={candidates}")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PropertyReport {
    pub property: Property,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    fn holds(property: Property) -> Self {
        PropertyReport {
            property,
            verdict: Verdict::Holds,
            witness: None,
        }
    }

    fn violated(property: Property, witness: Witness) -> Self {
        PropertyReport {
            property,
            verdict: Verdict::Violated,
            witness: Some(witness),
        }
    }

    pub fn is_holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn is_violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    /// The machine-readable line `property=<name> verdict=<v> witness=<...>`.
    pub fn line(&self) -> String {
        let witness = self
            .witness
            .as_ref()
            .map_or_else(|| "-".to_string(), |w| w.to_string());
        format!(
            "property={} verdict={} witness={}",
            self.property.name(),
            self.verdict,
            witness
        )
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.line())
    }
}

/// Violated iff some prefix content entails `box(s)` for a secret `s`;
/// the witness is the least such prefix.
pub fn check_effective(config: &PrivacyConfiguration, tr: &Transcript) -> PropertyReport {
    for n in 0..=tr.len() {
        let content = tr.content(&config.ak, n).expect("n within transcript");
        let leaked = config
            .sec
            .iter()
            .find(|s| crate::modal::entails(&content, &crate::modal::MFormula::Box((*s).clone())));
        if let Some(secret) = leaked {
            return PropertyReport::violated(
                Property::Effective,
                Witness::Leak {
                    n,
                    secret: secret.clone(),
                },
            );
        }
    }
    PropertyReport::holds(Property::Effective)
}

pub fn check_credible(config: &PrivacyConfiguration, tr: &Transcript) -> PropertyReport {
    for n in 0..=tr.len() {
        let content = tr.content(&config.ak, n).expect("n within transcript");
        if !crate::modal::satisfiable(&content) {
            return PropertyReport::violated(Property::Credible, Witness::Unsatisfiable { n });
        }
    }
    PropertyReport::holds(Property::Credible)
}

pub fn check_truthful(config: &PrivacyConfiguration, tr: &Transcript) -> PropertyReport {
    for (idx, (q, a)) in tr.iter().enumerate() {
        let honest = eval(&config.kb, q);
        if a != honest && a != Answer::R {
            return PropertyReport::violated(
                Property::Truthful,
                Witness::Lie {
                    i: idx + 1,
                    query: q.clone(),
                    answer: a,
                    honest,
                },
            );
        }
    }
    PropertyReport::holds(Property::Truthful)
}

/// Checks that every distorted answer was necessary.
///
/// For a distortion at position `i`, the honest answer is substituted. If
/// the content up to `i` then already leaks a secret or is unsatisfiable,
/// every censor agreeing on the prefix fails, so the distortion is
/// justified. Otherwise refusing all later queries is a censor that stays
/// effective and credible forever, and the distortion was avoidable. The
/// censor's own continuation is tried first since it gives a more
/// informative witness.
pub fn check_min_invasive(
    config: &PrivacyConfiguration,
    censor: &dyn Censor,
    queries: &[LFormula],
) -> PropertyReport {
    let tr = extend(censor, config, Transcript::new(), queries);
    for (idx, (q, a)) in tr.iter().enumerate() {
        let honest = eval(&config.kb, q);
        if a == honest {
            continue;
        }
        let mut replaced = tr.prefix(idx);
        replaced.push(q.clone(), honest);
        let content = replaced
            .content(&config.ak, idx + 1)
            .expect("n within transcript");
        if !exposure(&content, &config.sec).is_safe() {
            continue;
        }
        let continued = extend(censor, config, replaced, &queries[idx + 1..]);
        let stays_clean = ((idx + 1)..=continued.len()).all(|n| {
            let content = continued
                .content(&config.ak, n)
                .expect("n within transcript");
            exposure(&content, &config.sec) == Exposure::Safe
        });
        return PropertyReport::violated(
            Property::MinInvasive,
            Witness::AvoidableDistortion {
                i: idx + 1,
                query: q.clone(),
                answer: a,
                honest,
                continuation: if stays_clean {
                    Continuation::Censor
                } else {
                    Continuation::RefuseAll
                },
            },
        );
    }
    PropertyReport::holds(Property::MinInvasive)
}

/// All consistent sets of literals over `atoms`: each atom is absent,
/// positive or negative.
pub fn literal_theories(atoms: &[Atom]) -> Vec<LTheory> {
    let mut out = vec![LTheory::new()];
    for atom in atoms {
        let pos = LFormula::Atom(atom.clone());
        let neg = pos.clone().not();
        out = out
            .into_iter()
            .flat_map(|t| [t.clone(), t.with(pos.clone()), t.with(neg.clone())])
            .collect();
    }
    out
}

/// Default candidate knowledge bases for [`check_repudiating`]: literal
/// theories over the atoms of the configuration and the queries.
pub fn default_universe(config: &PrivacyConfiguration, queries: &[LFormula]) -> Vec<LTheory> {
    let mut atoms = config.atoms();
    for q in queries {
        q.collect_atoms(&mut atoms);
    }
    literal_theories(&atoms.into_iter().collect::<Vec<_>>())
}

/// Searches `universe` for secret-free knowledge bases that make the censor
/// reproduce the actual answers. Holds iff every prefix is reproduced by
/// some admissible candidate; verdicts are relative to `universe`.
pub fn check_repudiating(
    config: &PrivacyConfiguration,
    censor: &dyn Censor,
    queries: &[LFormula],
    universe: &[LTheory],
) -> Result<PropertyReport, Error> {
    if universe.is_empty() {
        return Err(Error::EmptyUniverse);
    }
    let actual = extend(censor, config, Transcript::new(), queries);
    let mut admissible = 0;
    let mut best: Option<usize> = None;
    for kb in universe {
        if config.sec.iter().any(|s| logic::derives(kb, s)) {
            continue;
        }
        let candidate = config.with_kb(kb.clone());
        if !candidate.validate().is_valid() {
            continue;
        }
        admissible += 1;
        let matched = matching_prefix(censor, &candidate, &actual);
        best = Some(best.map_or(matched, |b| b.max(matched)));
        if matched == actual.len() {
            return Ok(PropertyReport::holds(Property::Repudiating));
        }
    }
    let n = best.map_or(0, |m| m + 1);
    Ok(PropertyReport::violated(
        Property::Repudiating,
        Witness::Undeniable {
            n,
            candidates: admissible,
        },
    ))
}

/// Length of the longest prefix on which `censor` under `candidate` gives
/// the same answers as `actual`.
fn matching_prefix(
    censor: &dyn Censor,
    candidate: &PrivacyConfiguration,
    actual: &Transcript,
) -> usize {
    let mut history = Transcript::new();
    for (q, a) in actual.iter() {
        if censor.next_answer(candidate, &history, q) != a {
            break;
        }
        history.push(q.clone(), a);
    }
    history.len()
}

/// All five checks for one run, repudiation over the default universe.
pub fn check_all(
    config: &PrivacyConfiguration,
    censor: &dyn Censor,
    queries: &[LFormula],
) -> Vec<PropertyReport> {
    let tr = extend(censor, config, Transcript::new(), queries);
    let universe = default_universe(config, queries);
    vec![
        check_effective(config, &tr),
        check_credible(config, &tr),
        check_truthful(config, &tr),
        check_min_invasive(config, censor, queries),
        check_repudiating(config, censor, queries, &universe)
            .expect("default universe contains the empty theory"),
    ]
}
