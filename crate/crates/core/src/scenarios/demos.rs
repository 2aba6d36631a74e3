use crate::censor::{run, Censor, LyingNonRefusing, Scripted, TieBreak, TruthfulMin};
use crate::logic::{derives, Atom, LFormula, LTheory};
use crate::modal::{entails, satisfiable, MFormula, MFormulaSet};
use crate::privacy::{answer_content, eval, Answer, PrivacyConfiguration, Transcript};
use crate::scenarios::ScenarioReport;
use crate::syntax::{parse_l, parse_m};
use crate::verifier::{
    check_effective, check_min_invasive, check_repudiating, check_truthful, literal_theories,
    Witness,
};

use Answer::{R, T, U};

/// Demo names accepted by the command line.
pub const DEMOS: [&str; 4] = ["nogo1", "nogo2", "nogo2-fixed", "example"];

fn l(text: &str) -> LFormula {
    parse_l(text).expect("demo formula parses")
}

fn m(text: &str) -> MFormula {
    parse_m(text).expect("demo formula parses")
}

fn answers_text(answers: &[Answer]) -> String {
    let inner: Vec<String> = answers.iter().map(|a| a.to_string()).collect();
    format!("({})", inner.join(","))
}

/// Truthful censors: a run on `KB={s}, Sec={s}` that is effective, truthful
/// and minimally invasive cannot be repudiated.
pub fn demo_nogo1() -> ScenarioReport {
    let mut r = ScenarioReport::new(
        "nogo1: effective + minimally invasive + repudiating is impossible for truthful censors",
    );
    r.note(
        "the infinite query sequence (s, s, ...) is represented by its first three queries; \
         answers depend only on the prefix and a repeated query gets the same answer, \
         so longer prefixes only repeat the pattern",
    );
    let s = l("s");
    let config = PrivacyConfiguration::new([s.clone()], [], [s.clone()]);
    r.claim(
        "KB={s}, AK={}, Sec={s} is a privacy configuration",
        "validate(kb={s}, ak={}, sec={s})",
        config.validate().is_valid(),
    );

    let queries = vec![s.clone(); 3];
    let tr = run(&TruthfulMin, &config, &queries).expect("configuration is valid");
    r.trace_run(&config, &tr);
    r.claim(
        format!("truthful-min answers {}", answers_text(tr.answers())),
        "run(truthful-min, config, (s,s,s)) == (r,r,r)",
        tr.answers() == [R, R, R],
    );
    let content_ok = (0..=tr.len()).all(|n| {
        let c = tr.content(&config.ak, n).expect("in range");
        let expected: MFormulaSet = if n == 0 {
            MFormulaSet::new()
        } else {
            [MFormula::Top].into()
        };
        c == expected && satisfiable(&c)
    });
    r.claim(
        "content after every prefix is AK ∪ {top} = {top} (empty at n=0) and satisfiable",
        "transcript_content(tr, {}, n), satisfiable(..) for n=0..3",
        content_ok,
    );
    r.claim(
        "the run is effective",
        "check_effective(config, tr)",
        check_effective(&config, &tr).is_holds(),
    );
    r.claim(
        "the run is truthful",
        "check_truthful(config, tr)",
        check_truthful(&config, &tr).is_holds(),
    );
    r.claim(
        "the run is minimally invasive: honest t at s gives content {box(s)}, which entails box(s)",
        "check_min_invasive(config, truthful-min, (s,s,s))",
        check_min_invasive(&config, &TruthfulMin, &queries).is_holds(),
    );

    let universe = literal_theories(&[Atom::new("s")]);
    let report = check_repudiating(&config, &TruthfulMin, &queries, &universe)
        .expect("universe is non-empty");
    r.claim(
        format!(
            "repudiation fails at n=1 over the {} literal theories over {{s}} ({})",
            universe.len(),
            report.line()
        ),
        "check_repudiating(config, truthful-min, (s,s,s), {{}, {s}, {~s}})",
        universe.len() == 3 && matches!(report.witness, Some(Witness::Undeniable { n: 1, .. })),
    );

    // Why no secret-free KB_1 reproduces the first answer r.
    for kb1 in [LTheory::new(), LTheory::from([l("~s")])] {
        let name = if kb1.is_empty() { "{}" } else { "{~s}" };
        let alt = config.with_kb(kb1.clone());
        r.claim(
            format!("KB_1={name} gives a privacy configuration and does not derive s"),
            format!("validate(kb={name}, ak={{}}, sec={{s}}), derives({name}, s)"),
            alt.validate().is_valid() && !derives(&kb1, &s),
        );
        r.claim(
            format!("under KB_1={name} a truthful censor answers s with u or r, since eval = u"),
            format!("eval({name}, s)"),
            eval(&kb1, &s) == U,
        );
        let honest_content: MFormulaSet = [answer_content(&s, U)].into();
        r.claim(
            format!("under KB_1={name}, u differs from the actual first answer r"),
            "compare(u, run(truthful-min, config, (s))_1)",
            tr.answers()[0] == R,
        );
        r.claim(
            format!(
                "under KB_1={name}, answering r is not minimally invasive: honest content {{~box(s)}} \
                 neither entails box(s) nor is unsatisfiable"
            ),
            format!(
                "entails({{~box(s)}}, box(s)), satisfiable(..), check_min_invasive(kb={name}, scripted(r), (s))"
            ),
            !entails(&honest_content, &MFormula::Box(s.clone()))
                && satisfiable(&honest_content)
                && check_min_invasive(&alt, &Scripted::new([R]), std::slice::from_ref(&s)).is_violated(),
        );
        let alt_tr = run(&TruthfulMin, &alt, std::slice::from_ref(&s)).expect("valid");
        r.claim(
            format!("truthful-min under KB_1={name} answers u"),
            format!("run(truthful-min, kb={name}, (s))"),
            alt_tr.answers() == [U],
        );
    }
    r
}

fn second_nogo_config(secrets: &[&str]) -> PrivacyConfiguration {
    PrivacyConfiguration::new(
        [l("a"), l("b")],
        [
            m("box(c -> a) -> box(~c) | box(a)"),
            m("box(~c -> b) -> box(c) | box(b)"),
        ],
        secrets.iter().map(|s| l(s)),
    )
}

fn second_nogo_queries() -> Vec<LFormula> {
    vec![l("c -> a"), l("~c -> b"), l("c")]
}

/// Non-refusing censors: a minimally invasive lying censor on the atomic
/// configuration `KB={a,b}, Sec={a,b}` must leak at the third query.
pub fn demo_nogo2() -> ScenarioReport {
    let mut r = ScenarioReport::new(
        "nogo2: a non-refusing censor cannot be both effective and minimally invasive",
    );
    let config = second_nogo_config(&["a", "b"]);
    let queries = second_nogo_queries();
    r.note("AK holds the two instances of the atomicity schema box(x -> y) -> box(~x) | box(y) used by the argument");
    r.claim(
        "KB={a,b}, Sec={a,b} with the two atomicity instances in AK is a privacy configuration",
        "validate(config)",
        config.validate().is_valid(),
    );

    let censor = LyingNonRefusing::new(TieBreak::Honest);
    let tr = run(&censor, &config, &queries).expect("valid");
    r.trace_run(&config, &tr);
    r.claim(
        "the first two answers are (t,t)",
        "run(lying, config, (c->a, ~c->b, c))_1..2",
        tr.answers()[..2] == [T, T],
    );

    // Answering u to either of the first two queries would be an avoidable lie.
    for (i, (why, q)) in [
        ("KB might contain ~c", "c -> a"),
        ("KB might contain c", "~c -> b"),
    ]
    .into_iter()
    .enumerate()
    {
        let mut script = vec![T; i];
        script.push(U);
        let report = check_min_invasive(&config, &Scripted::new(script.clone()), &queries[..=i]);
        r.claim(
            format!("answering u to {q} is not minimally invasive ({why})"),
            format!(
                "check_min_invasive(config, scripted{}, queries[..{}])",
                answers_text(&script),
                i + 1
            ),
            report.is_violated(),
        );
    }

    let content2 = tr.content(&config.ak, 2).expect("in range");
    let facts = [
        "box(c -> a)",
        "box(~c -> b)",
        "box(c) -> box(a)",
        "box(~c) -> box(b)",
        "box(~c) | box(a)",
        "box(c) | box(b)",
        "box(a) | box(b)",
    ];
    for fact in facts {
        r.claim(
            format!("content at 2 entails {fact}"),
            format!("entails(cont(tr, 2), {fact})"),
            entails(&content2, &m(fact)),
        );
    }
    for secret in ["a", "b"] {
        r.claim(
            format!("content at 2 does not entail box({secret}): no secret leaked yet"),
            format!("entails(cont(tr, 2), box({secret}))"),
            !entails(&content2, &m(&format!("box({secret})"))),
        );
    }

    let c = l("c");
    for (answer, secret) in [(U, "b"), (T, "a")] {
        let mut branch = content2.clone();
        branch.insert(answer_content(&c, answer));
        r.claim(
            format!("third answer {answer} makes the content entail box({secret})"),
            format!(
                "entails(cont(tr, 2) ∪ {{{}}}, box({secret}))",
                answer_content(&c, answer)
            ),
            entails(&branch, &m(&format!("box({secret})"))),
        );
    }

    r.claim(
        "the lying censor meets the dilemma at the third query and flags it",
        "run(lying, config, queries).forced_leaks == [3]",
        tr.forced_leaks() == [2],
    );
    let eff = check_effective(&config, &tr);
    r.claim(
        format!(
            "with the honest tie-break (answer u) the run leaks b at n=3 ({})",
            eff.line()
        ),
        "check_effective(config, run(lying(tie-break=honest), config, queries))",
        eff.witness
            == Some(Witness::Leak {
                n: 3,
                secret: l("b"),
            }),
    );
    let liar = LyingNonRefusing::new(TieBreak::Lie);
    let tr_lie = run(&liar, &config, &queries).expect("valid");
    let eff = check_effective(&config, &tr_lie);
    r.claim(
        format!(
            "with the lying tie-break (answer t) the run leaks a at n=3 ({})",
            eff.line()
        ),
        "check_effective(config, run(lying(tie-break=lie), config, queries))",
        tr_lie.answers() == [T, T, T]
            && eff.witness
                == Some(Witness::Leak {
                    n: 3,
                    secret: l("a"),
                }),
    );
    for censor in [&censor as &dyn Censor, &liar] {
        r.claim(
            format!(
                "{} is minimally invasive on this run, so it cannot be effective",
                censor.name()
            ),
            format!("check_min_invasive(config, {}, queries)", censor.name()),
            check_min_invasive(&config, censor, &queries).is_holds(),
        );
    }
    r
}

/// The remedy: also protecting `a | b` makes the censor lie already at the
/// second query, and nothing leaks.
pub fn demo_nogo2_fixed() -> ScenarioReport {
    let mut r = ScenarioReport::new("nogo2-fixed: protecting the disjunction of the secrets");
    let config = second_nogo_config(&["a", "b", "a | b"]);
    let queries = second_nogo_queries();
    r.claim(
        "KB={a,b}, Sec={a,b,a|b} with the atomicity instances is a privacy configuration",
        "validate(config)",
        config.validate().is_valid(),
    );
    let censor = LyingNonRefusing::default();
    let tr = run(&censor, &config, &queries).expect("valid");
    r.trace_run(&config, &tr);
    r.claim(
        format!(
            "answers are {}; the second query is answered u",
            answers_text(tr.answers())
        ),
        "run(lying, config, (c->a, ~c->b, c))_2 == u",
        tr.answers().get(1) == Some(&U),
    );

    let mut honest_second = Transcript::new();
    honest_second.push(queries[0].clone(), tr.answers()[0]);
    honest_second.push(queries[1].clone(), T);
    let content = honest_second.content(&config.ak, 2).expect("in range");
    r.claim(
        "the honest answer t to ~c -> b would reveal a | b",
        "entails(cont((c->a,t),(~c->b,t)), box(a | b))",
        entails(&content, &m("box(a | b)")),
    );
    let protected = ["box(a)", "box(b)", "box(a | b)"];
    let clean = (0..=tr.len()).all(|n| {
        let c = tr.content(&config.ak, n).expect("in range");
        protected.iter().all(|p| !entails(&c, &m(p)))
    });
    r.claim(
        "no prefix content entails box(a), box(b) or box(a | b)",
        "entails(cont(tr, n), ·) for n=0..3",
        clean,
    );
    r.claim(
        "the run is effective",
        "check_effective(config, tr)",
        check_effective(&config, &tr).is_holds(),
    );
    r.claim(
        "no forced leak occurred",
        "tr.forced_leaks == []",
        tr.forced_leaks().is_empty(),
    );
    r
}

/// `KB={a,c}, Sec={c}` queried with `(a, b, c)`.
pub fn demo_running_example() -> ScenarioReport {
    let mut r = ScenarioReport::new("example: refusing versus lying to protect c");
    let config = PrivacyConfiguration::new([l("a"), l("c")], [], [l("c")]);
    let queries = vec![l("a"), l("b"), l("c")];
    r.claim(
        "eval(KB, a) = t and eval(KB, b) = u",
        "eval({a,c}, a), eval({a,c}, b)",
        eval(&config.kb, &queries[0]) == T && eval(&config.kb, &queries[1]) == U,
    );
    let tr = run(&TruthfulMin, &config, &queries).expect("valid");
    r.trace_run(&config, &tr);
    r.claim(
        format!("truthful-min answers {}", answers_text(tr.answers())),
        "run(truthful-min, config, (a,b,c)) == (t,u,r)",
        tr.answers() == [T, U, R],
    );
    let lying = run(&LyingNonRefusing::default(), &config, &queries).expect("valid");
    r.claim(
        format!(
            "the lying censor answers {} instead",
            answers_text(lying.answers())
        ),
        "run(lying, config, (a,b,c)) == (t,u,u)",
        lying.answers() == [T, U, U],
    );
    r.claim(
        "the lying run is not truthful",
        "check_truthful(config, lying run)",
        check_truthful(&config, &lying).is_violated(),
    );
    let refuse = run(&crate::censor::AllRefuse, &config, &queries).expect("valid");
    r.claim(
        "refusing everything protects the secret",
        "check_effective(config, run(all-refuse, config, (a,b,c)))",
        refuse.answers() == [R, R, R] && check_effective(&config, &refuse).is_holds(),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_passes(report: ScenarioReport) {
        let failed: Vec<_> = report.failed_claims().collect();
        assert!(failed.is_empty(), "{report}");
    }

    #[test]
    fn nogo1_passes() {
        assert_passes(demo_nogo1());
    }

    #[test]
    fn nogo2_passes() {
        assert_passes(demo_nogo2());
    }

    #[test]
    fn nogo2_fixed_passes() {
        assert_passes(demo_nogo2_fixed());
    }

    #[test]
    fn running_example_passes() {
        assert_passes(demo_running_example());
    }

    #[test]
    fn demos_are_deterministic() {
        assert_eq!(demo_nogo2().to_string(), demo_nogo2().to_string());
    }
}
