//! Executable reproductions of the impossibility results and the running
//! example, plus a seeded fuzzing driver.

mod demos;
mod fuzz;

use std::fmt;

pub use demos::{demo_nogo1, demo_nogo2, demo_nogo2_fixed, demo_running_example, DEMOS};
pub use fuzz::{fuzz, Counterexample, FuzzBounds, FuzzOutcome, FuzzStats, StrategySummary};

use crate::censor::exposure;
use crate::privacy::{answer_content, PrivacyConfiguration, Transcript};
use crate::syntax::Render;

/// A checked claim and the operation call that decided it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Claim {
    pub statement: String,
    pub via: String,
    pub passed: bool,
}

#[derive(Clone, Debug, Default)]
pub struct ScenarioReport {
    pub name: String,
    pub notes: Vec<String>,
    pub trace: Vec<String>,
    pub claims: Vec<Claim>,
}

impl ScenarioReport {
    pub fn new(name: impl Into<String>) -> Self {
        ScenarioReport {
            name: name.into(),
            ..Default::default()
        }
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    pub fn claim(&mut self, statement: impl Into<String>, via: impl Into<String>, passed: bool) {
        self.claims.push(Claim {
            statement: statement.into(),
            via: via.into(),
            passed,
        });
    }

    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }

    pub fn failed_claims(&self) -> impl Iterator<Item = &Claim> + '_ {
        self.claims.iter().filter(|c| !c.passed)
    }

    /// Appends one line per step: query, answer, the content it adds, and
    /// the exposure check on the accumulated content.
    pub(crate) fn trace_run(&mut self, config: &PrivacyConfiguration, tr: &Transcript) {
        for (i, (q, a)) in tr.iter().enumerate() {
            let content = tr.content(&config.ak, i + 1).expect("in range");
            let check = match exposure(&content, &config.sec) {
                crate::censor::Exposure::Safe => "no secret entailed, satisfiable".to_string(),
                crate::censor::Exposure::Secret(s) => format!("entails box({s})"),
                crate::censor::Exposure::Contradiction => "unsatisfiable".to_string(),
            };
            let forced = if tr.forced_leaks().contains(&i) {
                "  [forced leak]"
            } else {
                ""
            };
            self.trace.push(format!(
                "{}. {}  ->  {a}   adds {}   ({check}){forced}",
                i + 1,
                q,
                answer_content(q, a).render(crate::syntax::Style::ASCII),
            ));
        }
    }
}

impl fmt::Display for ScenarioReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "== {}", self.name)?;
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        if !self.trace.is_empty() {
            writeln!(f, "trace:")?;
            for t in &self.trace {
                writeln!(f, "  {t}")?;
            }
        }
        writeln!(f, "claims:")?;
        for c in &self.claims {
            writeln!(
                f,
                "  [{}] {}\n         via {}",
                if c.passed { "pass" } else { "FAIL" },
                c.statement,
                c.via
            )?;
        }
        let passed = self.claims.iter().filter(|c| c.passed).count();
        write!(f, "{passed}/{} claims passed", self.claims.len())
    }
}
