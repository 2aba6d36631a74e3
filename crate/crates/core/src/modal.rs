//! The modal layer over propositional logic: boolean combinations of
//! `box(A)` atoms, models as sets of worlds, and decision procedures for
//! satisfiability and entailment.
//!
//! A formula only depends on the truth values of its finitely many box
//! atoms. An assignment `T ⊆ S` of those atoms is produced by some model iff
//! `T` derives no member of `S \ T`: the single world `T` realizes it, and
//! any world that derives all of `T` derives everything `T` does. The
//! procedures below search over such assignments.

use std::collections::BTreeSet;

use crate::logic::{derives, Atom, LFormula, LTheory, ModelSet, Signature};

/// A formula of the modal layer. `Top`, `Not`, `And` and `Or` are
/// abbreviations over `Box`, `Bottom` and `Implies`; see [`MFormula::expand`].
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MFormula {
    Box(LFormula),
    Bottom,
    Top,
    Not(Box<MFormula>),
    And(Box<MFormula>, Box<MFormula>),
    Or(Box<MFormula>, Box<MFormula>),
    Implies(Box<MFormula>, Box<MFormula>),
}

pub type MFormulaSet = BTreeSet<MFormula>;

impl MFormula {
    pub fn boxed(inner: LFormula) -> Self {
        MFormula::Box(inner)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        MFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: MFormula) -> Self {
        MFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: MFormula) -> Self {
        MFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: MFormula) -> Self {
        MFormula::Implies(Box::new(self), Box::new(rhs))
    }

    /// Distinct inner formulas of the box atoms.
    pub fn box_atoms(&self) -> BTreeSet<LFormula> {
        let mut out = BTreeSet::new();
        self.collect_box_atoms(&mut out);
        out
    }

    fn collect_box_atoms(&self, out: &mut BTreeSet<LFormula>) {
        match self {
            MFormula::Box(a) => {
                out.insert(a.clone());
            }
            MFormula::Bottom | MFormula::Top => {}
            MFormula::Not(f) => f.collect_box_atoms(out),
            MFormula::And(l, r) | MFormula::Or(l, r) | MFormula::Implies(l, r) => {
                l.collect_box_atoms(out);
                r.collect_box_atoms(out);
            }
        }
    }

    /// Rewrites the abbreviations into `Box`, `Bottom` and `Implies`.
    pub fn expand(&self) -> MFormula {
        let bot = || MFormula::Bottom;
        match self {
            MFormula::Box(a) => MFormula::Box(a.clone()),
            MFormula::Bottom => MFormula::Bottom,
            MFormula::Top => bot().implies(bot()),
            MFormula::Not(f) => f.expand().implies(bot()),
            MFormula::Implies(l, r) => l.expand().implies(r.expand()),
            // A ∨ B := ¬A → B
            MFormula::Or(l, r) => l.expand().implies(bot()).implies(r.expand()),
            // A ∧ B := ¬(A → ¬B)
            MFormula::And(l, r) => l.expand().implies(r.expand().implies(bot())).implies(bot()),
        }
    }

    /// Evaluates the formula given the truth value of each box atom.
    pub fn eval_with(&self, boxed: &impl Fn(&LFormula) -> bool) -> bool {
        match self {
            MFormula::Box(a) => boxed(a),
            MFormula::Bottom => false,
            MFormula::Top => true,
            MFormula::Not(f) => !f.eval_with(boxed),
            MFormula::And(l, r) => l.eval_with(boxed) && r.eval_with(boxed),
            MFormula::Or(l, r) => l.eval_with(boxed) || r.eval_with(boxed),
            MFormula::Implies(l, r) => !l.eval_with(boxed) || r.eval_with(boxed),
        }
    }
}

pub fn box_atoms_of<'a>(gamma: impl IntoIterator<Item = &'a MFormula>) -> BTreeSet<LFormula> {
    let mut out = BTreeSet::new();
    for f in gamma {
        f.collect_box_atoms(&mut out);
    }
    out
}

/// A set of worlds, each world a set of propositional formulas. Worlds may
/// be inconsistent and the model may be empty.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct MModel {
    worlds: BTreeSet<LTheory>,
}

impl MModel {
    pub fn new(worlds: impl IntoIterator<Item = LTheory>) -> Self {
        MModel {
            worlds: worlds.into_iter().collect(),
        }
    }

    pub fn single(world: LTheory) -> Self {
        MModel::new([world])
    }

    pub fn worlds(&self) -> impl Iterator<Item = &LTheory> + '_ {
        self.worlds.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    /// `box(A)` holds iff every world derives `A`.
    pub fn holds_box(&self, inner: &LFormula) -> bool {
        self.worlds.iter().all(|w| derives(w, inner))
    }
}

pub fn holds(model: &MModel, phi: &MFormula) -> bool {
    phi.eval_with(&|a| model.holds_box(a))
}

pub fn holds_all<'a>(model: &MModel, gamma: impl IntoIterator<Item = &'a MFormula>) -> bool {
    gamma.into_iter().all(|phi| holds(model, phi))
}

/// A truth assignment to a finite universe of box atoms: `true_set ⊆ universe`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoxAssignment {
    universe: BTreeSet<LFormula>,
    true_set: BTreeSet<LFormula>,
}

impl BoxAssignment {
    /// Returns `None` unless `true_set ⊆ universe`.
    pub fn new(universe: BTreeSet<LFormula>, true_set: BTreeSet<LFormula>) -> Option<Self> {
        true_set
            .is_subset(&universe)
            .then_some(BoxAssignment { universe, true_set })
    }

    pub fn universe(&self) -> &BTreeSet<LFormula> {
        &self.universe
    }

    pub fn true_set(&self) -> &BTreeSet<LFormula> {
        &self.true_set
    }

    pub fn is_true(&self, inner: &LFormula) -> bool {
        self.true_set.contains(inner)
    }

    /// The single-world model realizing this assignment, if it is realizable.
    pub fn witness(&self) -> MModel {
        MModel::single(self.true_set.iter().cloned().collect())
    }
}

/// Whether some model makes exactly `true_set` true among `universe`.
pub fn realizable(assignment: &BoxAssignment) -> bool {
    let premises: LTheory = assignment.true_set.iter().cloned().collect();
    assignment
        .universe
        .iter()
        .filter(|b| !assignment.true_set.contains(*b))
        .all(|b| !derives(&premises, b))
}

pub fn satisfiable<'a>(gamma: impl IntoIterator<Item = &'a MFormula>) -> bool {
    satisfying_assignment(gamma).is_some()
}

/// A realizable box assignment under which all of `gamma` is true, if any.
/// [`BoxAssignment::witness`] turns it into a model.
pub fn satisfying_assignment<'a>(
    gamma: impl IntoIterator<Item = &'a MFormula>,
) -> Option<BoxAssignment> {
    let gamma: Vec<&MFormula> = gamma.into_iter().collect();
    Search::new(&gamma).run()
}

pub fn satisfying_model<'a>(gamma: impl IntoIterator<Item = &'a MFormula>) -> Option<MModel> {
    satisfying_assignment(gamma).map(|t| t.witness())
}

/// `gamma ⊨ phi`: every model of `gamma` satisfies `phi`.
pub fn entails<'a>(gamma: impl IntoIterator<Item = &'a MFormula>, phi: &MFormula) -> bool {
    let negated = phi.clone().not();
    let mut all: Vec<&MFormula> = gamma.into_iter().collect();
    all.push(&negated);
    Search::new(&all).run().is_none()
}

/// A formula with its box atoms replaced by indices.
enum Compiled {
    Atom(usize),
    Const(bool),
    Not(Box<Compiled>),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
}

impl Compiled {
    fn new(f: &MFormula, atoms: &[LFormula]) -> Self {
        let sub = |g: &MFormula| Box::new(Compiled::new(g, atoms));
        match f {
            MFormula::Box(a) => {
                Compiled::Atom(atoms.binary_search(a).expect("box atom was collected"))
            }
            MFormula::Bottom => Compiled::Const(false),
            MFormula::Top => Compiled::Const(true),
            MFormula::Not(g) => Compiled::Not(sub(g)),
            MFormula::And(l, r) => Compiled::And(sub(l), sub(r)),
            MFormula::Or(l, r) => Compiled::Or(sub(l), sub(r)),
            MFormula::Implies(l, r) => Compiled::Implies(sub(l), sub(r)),
        }
    }

    /// Three-valued evaluation under a partial assignment.
    fn eval(&self, values: &[Option<bool>]) -> Option<bool> {
        match self {
            Compiled::Atom(i) => values[*i],
            Compiled::Const(b) => Some(*b),
            Compiled::Not(f) => f.eval(values).map(|v| !v),
            Compiled::And(l, r) => match (l.eval(values), r.eval(values)) {
                (Some(false), _) | (_, Some(false)) => Some(false),
                (Some(true), Some(true)) => Some(true),
                _ => None,
            },
            Compiled::Or(l, r) => match (l.eval(values), r.eval(values)) {
                (Some(true), _) | (_, Some(true)) => Some(true),
                (Some(false), Some(false)) => Some(false),
                _ => None,
            },
            Compiled::Implies(l, r) => match (l.eval(values), r.eval(values)) {
                (Some(false), _) | (_, Some(true)) => Some(true),
                (Some(true), Some(false)) => Some(false),
                _ => None,
            },
        }
    }
}

/// Tracks what the currently true box atoms derive.
enum Closure<'a> {
    Table {
        masks: Vec<ModelSet>,
        stack: Vec<ModelSet>,
    },
    Naive {
        atoms: &'a [LFormula],
        premises: Vec<LFormula>,
    },
}

impl<'a> Closure<'a> {
    fn new(atoms: &'a [LFormula]) -> Self {
        let mut sig_atoms = BTreeSet::<Atom>::new();
        for a in atoms {
            a.collect_atoms(&mut sig_atoms);
        }
        let sig = Signature::from_atoms(sig_atoms);
        match sig.table() {
            Some(table) => Closure::Table {
                masks: atoms.iter().map(|a| table.models(a)).collect(),
                stack: vec![table.all()],
            },
            None => Closure::Naive {
                atoms,
                premises: Vec::new(),
            },
        }
    }

    fn push(&mut self, i: usize) {
        match self {
            Closure::Table { masks, stack } => {
                let mut top = stack.last().expect("non-empty stack").clone();
                top.intersect(&masks[i]);
                stack.push(top);
            }
            Closure::Naive { atoms, premises } => premises.push(atoms[i].clone()),
        }
    }

    fn pop(&mut self) {
        match self {
            Closure::Table { stack, .. } => {
                stack.pop();
            }
            Closure::Naive { premises, .. } => {
                premises.pop();
            }
        }
    }

    /// Do the currently true atoms derive atom `i`?
    fn derives(&self, i: usize) -> bool {
        match self {
            Closure::Table { masks, stack } => {
                stack.last().expect("non-empty stack").is_subset(&masks[i])
            }
            Closure::Naive { atoms, premises } => {
                derives(&premises.iter().cloned().collect(), &atoms[i])
            }
        }
    }
}

/// Depth-first search over realizable assignments, pruned by partial
/// evaluation of the formulas and by the realizability constraints.
struct Search {
    atoms: Vec<LFormula>,
    formulas: Vec<Compiled>,
}

impl Search {
    fn new(gamma: &[&MFormula]) -> Self {
        let atoms: Vec<LFormula> = box_atoms_of(gamma.iter().copied()).into_iter().collect();
        let formulas = gamma.iter().map(|f| Compiled::new(f, &atoms)).collect();
        Search { atoms, formulas }
    }

    fn run(&self) -> Option<BoxAssignment> {
        let mut values = vec![None; self.atoms.len()];
        let mut closure = Closure::new(&self.atoms);
        if !self.descend(0, &mut values, &mut closure) {
            return None;
        }
        let universe: BTreeSet<LFormula> = self.atoms.iter().cloned().collect();
        let true_set = self
            .atoms
            .iter()
            .zip(&values)
            .filter(|(_, v)| **v == Some(true))
            .map(|(a, _)| a.clone())
            .collect();
        BoxAssignment::new(universe, true_set)
    }

    fn consistent_so_far(&self, values: &[Option<bool>]) -> bool {
        self.formulas.iter().all(|f| f.eval(values) != Some(false))
    }

    fn descend(&self, i: usize, values: &mut [Option<bool>], closure: &mut Closure<'_>) -> bool {
        if !self.consistent_so_far(values) {
            return false;
        }
        if i == self.atoms.len() {
            return true;
        }
        let forced = closure.derives(i);

        // Try atom i true: every atom already set false must stay underivable.
        closure.push(i);
        let ok = (0..i).all(|j| values[j] != Some(false) || !closure.derives(j));
        if ok {
            values[i] = Some(true);
            if self.descend(i + 1, values, closure) {
                return true;
            }
        }
        closure.pop();

        if !forced {
            values[i] = Some(false);
            if self.descend(i + 1, values, closure) {
                return true;
            }
        }
        values[i] = None;
        false
    }
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
    fn theory<const N: usize>(fs: [LFormula; N]) -> LTheory {
        LTheory::from(fs)
    }

    #[test]
    fn truth_clauses() {
        assert!(holds(&MModel::single(theory([l("a")])), &bx(l("a"))));
        assert!(holds(&MModel::single(LTheory::new()), &bx(l("a")).not()));
        // No worlds: every box atom holds vacuously.
        assert!(holds(&MModel::default(), &bx(l("a"))));
        assert!(!holds(&MModel::default(), &MFormula::Bottom));
    }

    #[test]
    fn holds_all_examples() {
        let m = MModel::single(theory([l("a")]));
        assert!(holds_all(&m, &MFormulaSet::new()));
        let gamma: MFormulaSet = [bx(l("a")), bx(l("b")).not()].into();
        assert!(holds_all(&m, &gamma));
        let inconsistent = MModel::single(theory([l("a"), l("a").not()]));
        let gamma: MFormulaSet = [bx(l("b")).not()].into();
        assert!(!holds_all(&inconsistent, &gamma));
    }

    #[test]
    fn realizable_examples() {
        let set = |fs: Vec<LFormula>| fs.into_iter().collect::<BTreeSet<_>>();
        let a = BoxAssignment::new(set(vec![l("a")]), set(vec![l("a")])).unwrap();
        assert!(realizable(&a));
        let ab = l("a").implies(l("b"));
        let a = BoxAssignment::new(set(vec![ab.clone(), l("a"), l("b")]), set(vec![ab, l("a")]))
            .unwrap();
        assert!(!realizable(&a));
        let a = BoxAssignment::new(set(vec![l("a"), l("b")]), set(vec![])).unwrap();
        assert!(realizable(&a));
        assert!(BoxAssignment::new(set(vec![l("a")]), set(vec![l("b")])).is_none());
    }

    #[test]
    fn satisfiability_examples() {
        let s = bx(l("s"));
        assert!(satisfiable(&[s.clone().not()]));
        assert!(!satisfiable(&[s.clone(), s.clone().not()]));
        let gamma = [bx(l("a").implies(l("b"))), bx(l("a")), bx(l("b")).not()];
        assert!(!satisfiable(&gamma));
    }

    #[test]
    fn witness_satisfies() {
        let gamma = [
            bx(l("a").or(l("b"))),
            bx(l("a")).not(),
            bx(l("c")).implies(MFormula::Bottom),
        ];
        let model = satisfying_model(&gamma).expect("satisfiable");
        assert!(holds_all(&model, &gamma));
    }

    #[test]
    fn entailment_examples() {
        assert!(entails(&[bx(l("a"))], &bx(l("a"))));
        assert!(entails(
            &[bx(l("a").implies(l("b"))), bx(l("a"))],
            &bx(l("b"))
        ));
        assert!(!entails(&[], &bx(l("s"))));
        // Box does not distribute over disjunction.
        assert!(!entails(
            &[bx(l("a").or(l("b")))],
            &bx(l("a")).or(bx(l("b")))
        ));
        assert!(entails(
            &[bx(l("a")).or(bx(l("b")))],
            &bx(l("a").or(l("b")))
        ));
    }

    #[test]
    fn tautologies_are_boxed() {
        assert!(entails(&[], &bx(l("a").or(l("a").not()))));
        assert!(entails(&[], &bx(LFormula::Top)));
        assert!(!entails(&[], &bx(LFormula::Bottom)));
        // The empty model makes box(bot) true, so its negation is not valid either.
        assert!(!entails(&[], &bx(LFormula::Bottom).not()));
    }

    #[test]
    fn expansion_preserves_truth() {
        let phi = bx(l("a"))
            .and(bx(l("b")).not())
            .or(MFormula::Top.implies(bx(l("c"))));
        for bits in 0..8u8 {
            let v = |f: &LFormula| match f {
                LFormula::Atom(a) => bits >> (a.name().as_bytes()[0] - b'a') & 1 == 1,
                _ => unreachable!(),
            };
            assert_eq!(phi.eval_with(&v), phi.expand().eval_with(&v));
        }
    }
}
