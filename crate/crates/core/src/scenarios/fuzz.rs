//! Seeded random testing of the content lemmas, continuity, and the two
//! impossibility results.
//!
//! Censor properties quantify over all configurations and query sequences,
//! so the theorem checks classify each censor over the whole corpus: a
//! censor counts as effective only if every one of its runs is. A single
//! run can easily be truthful, effective, minimally invasive and
//! repudiable at once (e.g. when no query touches a secret); the
//! impossibility is about the censor, not the run.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::censor::{extend, AllRefuse, Censor, Honest, LyingNonRefusing, TieBreak, TruthfulMin};
use crate::config::config_to_text;
use crate::error::Error;
use crate::logic::LFormula;
use crate::modal::MFormula;
use crate::privacy::{Answer, PrivacyConfiguration, Transcript};
use crate::scenarios::ScenarioReport;
use crate::verifier::{
    check_credible, check_effective, check_min_invasive, check_repudiating, check_truthful,
    default_universe,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FuzzBounds {
    pub max_atoms: usize,
    pub max_queries: usize,
    pub instances: usize,
}

impl Default for FuzzBounds {
    fn default() -> Self {
        FuzzBounds {
            max_atoms: 4,
            max_queries: 6,
            instances: 300,
        }
    }
}

impl FuzzBounds {
    fn check(&self) -> Result<(), Error> {
        if self.max_atoms == 0 || self.max_queries == 0 || self.instances == 0 {
            return Err(Error::FuzzBounds("all bounds must be positive".into()));
        }
        if self.max_atoms > 26 {
            return Err(Error::FuzzBounds("at most 26 atoms are supported".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Shape {
    /// `KB={x}, Sec={x}`, queries `x, x, ...`.
    FirstNoGo,
    /// The atomic configuration with queries `z -> x, ~z -> y, z, ...`.
    SecondNoGo,
    Random,
}

#[derive(Clone, Debug)]
struct Instance {
    index: usize,
    shape: Shape,
    /// Atomic knowledge base with AK made of atomicity schema instances.
    atomic_schema: bool,
    config: PrivacyConfiguration,
    queries: Vec<LFormula>,
    /// Alternative continuation used by the continuity check.
    alt_suffix: Vec<LFormula>,
}

/// A failed per-run check, with the query sequence shrunk as far as the
/// failure persists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub check: &'static str,
    pub censor: String,
    pub instance: usize,
    pub config: String,
    pub queries: Vec<String>,
    pub answers: Vec<Answer>,
    pub detail: String,
}

/// How one censor fared over the whole corpus.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StrategySummary {
    pub censor: String,
    pub may_refuse: bool,
    pub runs: usize,
    pub truthful: usize,
    pub effective: usize,
    pub credible: usize,
    pub min_invasive: usize,
    pub repudiating: usize,
    pub refusals: usize,
    pub schema_runs: usize,
    pub schema_effective: usize,
    pub schema_min_invasive: usize,
}

impl StrategySummary {
    pub fn always_truthful(&self) -> bool {
        self.truthful == self.runs
    }

    /// Classified truthful, effective, minimally invasive and repudiating
    /// on every run of the corpus.
    pub fn all_four(&self) -> bool {
        self.always_truthful()
            && self.effective == self.runs
            && self.min_invasive == self.runs
            && self.repudiating == self.runs
    }

    pub fn non_refusing(&self) -> bool {
        !self.may_refuse && self.refusals == 0
    }

    /// Effective and minimally invasive on every atomic-schema run.
    pub fn schema_effective_and_min_invasive(&self) -> bool {
        self.schema_runs > 0
            && self.schema_effective == self.schema_runs
            && self.schema_min_invasive == self.schema_runs
    }
}

#[derive(Clone, Debug, Default)]
pub struct FuzzStats {
    pub instances: usize,
    pub schema_instances: usize,
    pub continuity_violations: usize,
    pub monotonicity_violations: usize,
    pub credibility_violations: usize,
    pub same_answer_violations: usize,
    pub law_violations: usize,
    /// Truthful censors classified effective + min-invasive + repudiating.
    pub first_theorem_findings: Vec<String>,
    /// Non-refusing censors classified effective + min-invasive on the
    /// atomic-schema runs.
    pub second_theorem_findings: Vec<String>,
    pub summaries: Vec<StrategySummary>,
    pub counterexamples: Vec<Counterexample>,
}

impl FuzzStats {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty()
            && self.law_violations == 0
            && self.first_theorem_findings.is_empty()
            && self.second_theorem_findings.is_empty()
    }
}

pub struct FuzzOutcome {
    pub report: ScenarioReport,
    pub stats: FuzzStats,
}

fn censors() -> Vec<Box<dyn Censor>> {
    vec![
        Box::new(Honest),
        Box::new(AllRefuse),
        Box::new(TruthfulMin),
        Box::new(LyingNonRefusing::new(TieBreak::Honest)),
        Box::new(LyingNonRefusing::new(TieBreak::Lie)),
    ]
}

pub fn fuzz(seed: u64, bounds: FuzzBounds) -> Result<FuzzOutcome, Error> {
    bounds.check()?;
    let instances: Vec<Instance> = (0..bounds.instances)
        .map(|i| generate(seed, i, &bounds))
        .collect();
    let results: Vec<InstanceResult> = instances.par_iter().map(evaluate).collect();

    let mut stats = FuzzStats {
        instances: instances.len(),
        schema_instances: instances.iter().filter(|i| i.atomic_schema).count(),
        summaries: censors()
            .iter()
            .map(|c| StrategySummary {
                censor: c.name().to_string(),
                may_refuse: c.may_refuse(),
                ..Default::default()
            })
            .collect(),
        ..Default::default()
    };
    for result in results {
        stats.law_violations += result.law_violations;
        for (summary, run) in stats.summaries.iter_mut().zip(&result.runs) {
            summary.runs += 1;
            summary.truthful += run.truthful as usize;
            summary.effective += run.effective as usize;
            summary.credible += run.credible as usize;
            summary.min_invasive += run.min_invasive as usize;
            summary.repudiating += run.repudiating as usize;
            summary.refusals += run.refusals;
            if result.atomic_schema {
                summary.schema_runs += 1;
                summary.schema_effective += run.effective as usize;
                summary.schema_min_invasive += run.min_invasive as usize;
            }
        }
        for cx in result.counterexamples {
            match cx.check {
                "continuity" => stats.continuity_violations += 1,
                "monotonicity" => stats.monotonicity_violations += 1,
                "truthful-implies-credible" => stats.credibility_violations += 1,
                "same-query-same-answer" => stats.same_answer_violations += 1,
                _ => {}
            }
            stats.counterexamples.push(cx);
        }
    }
    stats.first_theorem_findings = stats
        .summaries
        .iter()
        .filter(|s| s.all_four())
        .map(|s| s.censor.clone())
        .collect();
    stats.second_theorem_findings = stats
        .summaries
        .iter()
        .filter(|s| s.non_refusing() && s.schema_effective_and_min_invasive())
        .map(|s| s.censor.clone())
        .collect();

    let report = build_report(seed, &bounds, &instances, &stats);
    Ok(FuzzOutcome { report, stats })
}

fn build_report(
    seed: u64,
    bounds: &FuzzBounds,
    instances: &[Instance],
    stats: &FuzzStats,
) -> ScenarioReport {
    let mut r = ScenarioReport::new(format!(
        "fuzz: seed={seed} instances={} max-atoms={} max-queries={}",
        bounds.instances, bounds.max_atoms, bounds.max_queries
    ));
    let count = |shape| instances.iter().filter(|i| i.shape == shape).count();
    r.note(format!(
        "corpus: {} random, {} first-theorem shaped, {} second-theorem shaped; {} with an atomic KB and schema AK",
        count(Shape::Random),
        count(Shape::FirstNoGo),
        count(Shape::SecondNoGo),
        stats.schema_instances
    ));
    r.note("censor properties are classified over the whole corpus: a censor has a property only if every run has it");
    r.trace.push(format!(
        "{:<22} {:>5} {:>9} {:>9} {:>9} {:>12} {:>11} {:>9}",
        "censor",
        "runs",
        "truthful",
        "effective",
        "credible",
        "min-invasive",
        "repudiating",
        "refusals"
    ));
    for s in &stats.summaries {
        r.trace.push(format!(
            "{:<22} {:>5} {:>9} {:>9} {:>9} {:>12} {:>11} {:>9}",
            s.censor,
            s.runs,
            s.truthful,
            s.effective,
            s.credible,
            s.min_invasive,
            s.repudiating,
            s.refusals
        ));
    }
    for cx in &stats.counterexamples {
        r.trace.push(format!(
            "counterexample [{}] censor={} instance={}: {}\n    queries: {}\n    answers: {}\n    config:\n{}",
            cx.check,
            cx.censor,
            cx.instance,
            cx.detail,
            cx.queries.join("; "),
            cx.answers.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","),
            cx.config
                .lines()
                .map(|l| format!("      {l}"))
                .collect::<Vec<_>>()
                .join("\n"),
        ));
    }
    r.claim(
        format!("continuity violations: {}", stats.continuity_violations),
        "run(c, cfg, q|m) vs run(c, cfg, q)|m and run(c, cfg, q|m ++ q')|m",
        stats.continuity_violations == 0,
    );
    r.claim(
        format!(
            "content monotonicity violations: {}",
            stats.monotonicity_violations
        ),
        "transcript_content(tr, ak, n) ⊆ transcript_content(tr, ak, n+1)",
        stats.monotonicity_violations == 0,
    );
    r.claim(
        format!(
            "truthful runs that are not credible: {}",
            stats.credibility_violations
        ),
        "check_truthful(..) holds ⇒ check_credible(..) holds",
        stats.credibility_violations == 0,
    );
    r.claim(
        format!(
            "truthful-min answering a repeated query differently: {}",
            stats.same_answer_violations
        ),
        "q_i == q_j ⇒ a_i == a_j on run(truthful-min, ..)",
        stats.same_answer_violations == 0,
    );
    r.claim(
        format!(
            "consequence-relation law violations (reflexivity, weakening, cut): {}",
            stats.law_violations
        ),
        "derives(..) on formulas drawn from each instance",
        stats.law_violations == 0,
    );
    r.claim(
        format!(
            "truthful censors classified effective + min-invasive + repudiating: {}",
            describe(&stats.first_theorem_findings)
        ),
        "check_truthful/check_effective/check_min_invasive/check_repudiating over all runs",
        stats.first_theorem_findings.is_empty(),
    );
    r.claim(
        format!(
            "non-refusing censors classified effective + min-invasive on atomic-schema runs: {}",
            describe(&stats.second_theorem_findings)
        ),
        "check_effective/check_min_invasive over runs with atomic KB and schema AK",
        stats.second_theorem_findings.is_empty(),
    );
    r
}

fn describe(names: &[String]) -> String {
    if names.is_empty() {
        "none".to_string()
    } else {
        names.join(", ")
    }
}

// ---------------------------------------------------------------- generation

fn atom_names(k: usize) -> Vec<LFormula> {
    (0..k)
        .map(|i| LFormula::atom(((b'a' + i as u8) as char).to_string()))
        .collect()
}

fn negate_literal(lit: &LFormula) -> LFormula {
    match lit {
        LFormula::Not(inner) => (**inner).clone(),
        other => other.clone().not(),
    }
}

/// `box(x -> y) -> box(~x) | box(y)` for a literal `x` and an atom `y` on
/// different atoms. True in every atomic knowledge base.
fn schema_instance(x: &LFormula, y: &LFormula) -> MFormula {
    MFormula::Box(x.clone().implies(y.clone()))
        .implies(MFormula::Box(negate_literal(x)).or(MFormula::Box(y.clone())))
}

fn random_literal(rng: &mut ChaCha8Rng, atoms: &[LFormula]) -> LFormula {
    let a = atoms.choose(rng).expect("at least one atom").clone();
    if rng.gen_bool(0.3) {
        a.not()
    } else {
        a
    }
}

fn random_formula(rng: &mut ChaCha8Rng, atoms: &[LFormula], depth: usize) -> LFormula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..20) {
            0 => LFormula::Top,
            1 => LFormula::Bottom,
            _ => atoms.choose(rng).expect("at least one atom").clone(),
        };
    }
    let sub = |rng: &mut ChaCha8Rng| random_formula(rng, atoms, depth - 1);
    match rng.gen_range(0..4) {
        0 => sub(rng).not(),
        1 => sub(rng).and(sub(rng)),
        2 => sub(rng).or(sub(rng)),
        _ => sub(rng).implies(sub(rng)),
    }
}

fn instance_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn generate(seed: u64, index: usize, bounds: &FuzzBounds) -> Instance {
    let mut rng = instance_rng(seed, index);
    let roll: f64 = rng.gen();
    let shape = match index {
        0 => Shape::FirstNoGo,
        1 if bounds.max_atoms >= 3 => Shape::SecondNoGo,
        _ if roll < 0.1 => Shape::FirstNoGo,
        _ if roll < 0.2 && bounds.max_atoms >= 3 => Shape::SecondNoGo,
        _ => Shape::Random,
    };
    let atoms = atom_names(rng.gen_range(1..=bounds.max_atoms));
    let (config, atomic_schema, mut queries) = match shape {
        Shape::FirstNoGo => {
            let x = atoms.choose(&mut rng).expect("non-empty").clone();
            let n = rng.gen_range(1..=bounds.max_queries);
            (
                PrivacyConfiguration::new([x.clone()], [], [x.clone()]),
                false,
                vec![x; n],
            )
        }
        Shape::SecondNoGo => {
            let atoms = atom_names(rng.gen_range(3..=bounds.max_atoms));
            let mut picked: Vec<LFormula> = atoms.choose_multiple(&mut rng, 3).cloned().collect();
            let z = picked.pop().expect("three atoms");
            let y = picked.pop().expect("three atoms");
            let x = picked.pop().expect("three atoms");
            let config = PrivacyConfiguration::new(
                [x.clone(), y.clone()],
                [
                    schema_instance(&z, &x),
                    schema_instance(&z.clone().not(), &y),
                ],
                [x.clone(), y.clone()],
            );
            let queries = vec![z.clone().implies(x), z.clone().not().implies(y), z];
            (config, true, queries)
        }
        Shape::Random => {
            let (config, schema) = random_config(&mut rng, &atoms);
            (config, schema, Vec::new())
        }
    };
    if shape == Shape::Random {
        let n = rng.gen_range(1..=bounds.max_queries);
        let secrets: Vec<LFormula> = config.sec.iter().cloned().collect();
        while queries.len() < n {
            let roll: f64 = rng.gen();
            let q = if roll < 0.15 && !queries.is_empty() {
                queries.choose(&mut rng).expect("non-empty").clone()
            } else if roll < 0.45 && !secrets.is_empty() {
                secrets.choose(&mut rng).expect("non-empty").clone()
            } else if roll < 0.65 {
                random_literal(&mut rng, &atoms)
            } else {
                random_formula(&mut rng, &atoms, 2)
            };
            queries.push(q);
        }
    }
    queries.truncate(bounds.max_queries);
    let suffix_len = rng.gen_range(1..=bounds.max_queries);
    let alt_suffix = (0..suffix_len)
        .map(|_| random_formula(&mut rng, &atoms, 2))
        .collect();
    Instance {
        index,
        shape,
        atomic_schema,
        config,
        queries,
        alt_suffix,
    }
}

/// A valid configuration over an atomic knowledge base. With probability
/// one half (and at least two atoms) AK holds atomicity schema instances.
fn random_config(rng: &mut ChaCha8Rng, atoms: &[LFormula]) -> (PrivacyConfiguration, bool) {
    for _ in 0..64 {
        let kb: Vec<LFormula> = atoms
            .iter()
            .filter_map(|a| match rng.gen_range(0..20) {
                0..=8 => Some(a.clone()),
                9..=12 => Some(a.clone().not()),
                _ => None,
            })
            .collect();
        let schema = atoms.len() >= 2 && rng.gen_bool(0.5);
        let mut ak = Vec::new();
        if schema {
            for _ in 0..rng.gen_range(1..=2) {
                let mut pair: Vec<&LFormula> = atoms.choose_multiple(rng, 2).collect();
                let y = pair.pop().expect("two atoms").clone();
                let x = pair.pop().expect("two atoms").clone();
                let x = if rng.gen_bool(0.5) { x.not() } else { x };
                ak.push(schema_instance(&x, &y));
            }
        }
        let mut sec = Vec::new();
        for _ in 0..rng.gen_range(1..=2) {
            let roll: f64 = rng.gen();
            let s = if roll < 0.6 && !kb.is_empty() {
                kb.choose(rng).expect("non-empty").clone()
            } else if roll < 0.85 {
                random_literal(rng, atoms)
            } else {
                random_literal(rng, atoms).or(random_literal(rng, atoms))
            };
            sec.push(s);
        }
        let config = PrivacyConfiguration::new(kb, ak, sec);
        if config.validate().is_valid() {
            return (config, schema);
        }
    }
    (PrivacyConfiguration::new([], [], [atoms[0].clone()]), false)
}

// ---------------------------------------------------------------- evaluation

/// A per-run check over a query sequence; `Some` describes a failure.
type RunCheck<'a> = Box<dyn Fn(&[LFormula]) -> Option<String> + 'a>;

struct RunClass {
    truthful: bool,
    effective: bool,
    credible: bool,
    min_invasive: bool,
    repudiating: bool,
    refusals: usize,
}

struct InstanceResult {
    atomic_schema: bool,
    runs: Vec<RunClass>,
    counterexamples: Vec<Counterexample>,
    law_violations: usize,
}

fn answers_of(
    censor: &dyn Censor,
    config: &PrivacyConfiguration,
    queries: &[LFormula],
) -> Transcript {
    extend(censor, config, Transcript::new(), queries)
}

fn evaluate(instance: &Instance) -> InstanceResult {
    let config = &instance.config;
    let universe = default_universe(config, &instance.queries);
    let mut runs = Vec::new();
    let mut counterexamples = Vec::new();
    for censor in censors() {
        let censor = censor.as_ref();
        let tr = answers_of(censor, config, &instance.queries);
        let truthful = check_truthful(config, &tr).is_holds();
        let credible = check_credible(config, &tr).is_holds();
        runs.push(RunClass {
            truthful,
            effective: check_effective(config, &tr).is_holds(),
            credible,
            min_invasive: check_min_invasive(config, censor, &instance.queries).is_holds(),
            repudiating: check_repudiating(config, censor, &instance.queries, &universe)
                .expect("default universe is non-empty")
                .is_holds(),
            refusals: tr.answers().iter().filter(|a| **a == Answer::R).count(),
        });

        let mut checks: Vec<(&'static str, RunCheck<'_>)> = vec![
            (
                "continuity",
                Box::new(|qs: &[LFormula]| {
                    continuity_failure(censor, config, qs, &instance.alt_suffix)
                }),
            ),
            (
                "monotonicity",
                Box::new(|qs: &[LFormula]| monotonicity_failure(censor, config, qs)),
            ),
            (
                "truthful-implies-credible",
                Box::new(|qs: &[LFormula]| {
                    let tr = answers_of(censor, config, qs);
                    let credible = check_credible(config, &tr);
                    (check_truthful(config, &tr).is_holds() && !credible.is_holds())
                        .then(|| credible.line())
                }),
            ),
        ];
        if censor.name() == TruthfulMin.name() {
            checks.push((
                "same-query-same-answer",
                Box::new(|qs: &[LFormula]| same_answer_failure(censor, config, qs)),
            ));
        }
        for (name, check) in &checks {
            if check(&instance.queries).is_some() {
                let queries = shrink(&instance.queries, check.as_ref());
                let detail = check(&queries).unwrap_or_default();
                let tr = answers_of(censor, config, &queries);
                counterexamples.push(Counterexample {
                    check: name,
                    censor: censor.name().to_string(),
                    instance: instance.index,
                    config: config_to_text(config),
                    queries: queries.iter().map(|q| q.to_string()).collect(),
                    answers: tr.answers().to_vec(),
                    detail,
                });
            }
        }
    }
    InstanceResult {
        atomic_schema: instance.atomic_schema,
        runs,
        counterexamples,
        law_violations: law_violations(instance),
    }
}

/// Greedily drops queries while the failure persists.
fn shrink(queries: &[LFormula], fails: &dyn Fn(&[LFormula]) -> Option<String>) -> Vec<LFormula> {
    let mut current = queries.to_vec();
    let mut i = 0;
    while i < current.len() {
        let mut candidate = current.clone();
        candidate.remove(i);
        if fails(&candidate).is_some() {
            current = candidate;
        } else {
            i += 1;
        }
    }
    current
}

fn continuity_failure(
    censor: &dyn Censor,
    config: &PrivacyConfiguration,
    queries: &[LFormula],
    alt_suffix: &[LFormula],
) -> Option<String> {
    let full = answers_of(censor, config, queries);
    for m in 0..=queries.len() {
        let prefix = answers_of(censor, config, &queries[..m]);
        if prefix.answers() != &full.answers()[..m] {
            return Some(format!(
                "run on the first {m} queries differs from the full run"
            ));
        }
        let mut other = queries[..m].to_vec();
        other.extend_from_slice(alt_suffix);
        let alt = answers_of(censor, config, &other);
        if alt.answers()[..m] != full.answers()[..m] {
            return Some(format!(
                "changing queries after position {m} changed an earlier answer"
            ));
        }
    }
    None
}

fn monotonicity_failure(
    censor: &dyn Censor,
    config: &PrivacyConfiguration,
    queries: &[LFormula],
) -> Option<String> {
    let tr = answers_of(censor, config, queries);
    (0..tr.len()).find_map(|n| {
        let before = tr.content(&config.ak, n).expect("in range");
        let after = tr.content(&config.ak, n + 1).expect("in range");
        (!before.is_subset(&after))
            .then(|| format!("content at {n} is not contained in content at {}", n + 1))
    })
}

fn same_answer_failure(
    censor: &dyn Censor,
    config: &PrivacyConfiguration,
    queries: &[LFormula],
) -> Option<String> {
    let tr = answers_of(censor, config, queries);
    for i in 0..tr.len() {
        for j in i + 1..tr.len() {
            if queries[i] == queries[j] && tr.answers()[i] != tr.answers()[j] {
                return Some(format!(
                    "query {} answered {} at {} and {} at {}",
                    queries[i],
                    tr.answers()[i],
                    i + 1,
                    tr.answers()[j],
                    j + 1
                ));
            }
        }
    }
    None
}

/// Reflexivity, weakening and cut on formulas drawn from the instance.
fn law_violations(instance: &Instance) -> usize {
    use crate::logic::{derives, LTheory};
    let mut pool: Vec<LFormula> = instance.queries.clone();
    pool.extend(instance.config.kb.iter().cloned());
    pool.extend(instance.config.sec.iter().cloned());
    pool.extend(instance.alt_suffix.iter().cloned());
    let mut violations = 0;
    for f in &pool {
        if !derives(&LTheory::from([f.clone()]), f) {
            violations += 1;
        }
    }
    let kb = &instance.config.kb;
    for (i, c) in pool.iter().enumerate() {
        let extra = LTheory::from([pool[(i + 1) % pool.len()].clone()]);
        for f in &pool {
            if derives(kb, f) && !derives(&kb.union(&extra), f) {
                violations += 1;
            }
            if derives(kb, c)
                && derives(&extra.with(c.clone()), f)
                && !derives(&kb.union(&extra), f)
            {
                violations += 1;
            }
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_zero_bounds() {
        let bounds = FuzzBounds {
            instances: 0,
            ..Default::default()
        };
        assert!(fuzz(0, bounds).is_err());
    }

    #[test]
    fn generated_configurations_are_valid() {
        let bounds = FuzzBounds::default();
        for i in 0..100 {
            let inst = generate(7, i, &bounds);
            assert!(inst.config.validate().is_valid(), "instance {i}");
            assert!(!inst.queries.is_empty() && inst.queries.len() <= bounds.max_queries);
            assert!(inst.config.kb.iter().all(|f| f.is_literal()));
        }
    }

    #[test]
    fn small_run_is_clean_and_reproducible() {
        let bounds = FuzzBounds {
            instances: 20,
            ..Default::default()
        };
        let a = fuzz(3, bounds).unwrap();
        assert!(a.report.passed(), "{}", a.report);
        let b = fuzz(3, bounds).unwrap();
        assert_eq!(a.report.to_string(), b.report.to_string());
    }

    #[test]
    fn shrink_keeps_failure() {
        let qs: Vec<LFormula> = ["a", "b", "c", "b"]
            .iter()
            .map(|n| LFormula::atom(*n))
            .collect();
        let fails = |qs: &[LFormula]| qs.contains(&LFormula::atom("c")).then(String::new);
        assert_eq!(shrink(&qs, &fails), vec![LFormula::atom("c")]);
    }
}
