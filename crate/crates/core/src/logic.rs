//! Classical propositional logic: formulas, theories and a truth-table
//! consequence relation.

use std::collections::BTreeSet;
use std::fmt;

/// A propositional variable.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Self {
        Atom(name.into())
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A formula of classical propositional logic.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LFormula {
    Atom(Atom),
    Bottom,
    Top,
    Not(Box<LFormula>),
    And(Box<LFormula>, Box<LFormula>),
    Or(Box<LFormula>, Box<LFormula>),
    Implies(Box<LFormula>, Box<LFormula>),
}

impl LFormula {
    pub fn atom(name: impl Into<String>) -> Self {
        LFormula::Atom(Atom::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        LFormula::Not(Box::new(self))
    }

    pub fn and(self, rhs: LFormula) -> Self {
        LFormula::And(Box::new(self), Box::new(rhs))
    }

    pub fn or(self, rhs: LFormula) -> Self {
        LFormula::Or(Box::new(self), Box::new(rhs))
    }

    pub fn implies(self, rhs: LFormula) -> Self {
        LFormula::Implies(Box::new(self), Box::new(rhs))
    }

    /// The atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub(crate) fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            LFormula::Atom(a) => {
                out.insert(a.clone());
            }
            LFormula::Bottom | LFormula::Top => {}
            LFormula::Not(f) => f.collect_atoms(out),
            LFormula::And(l, r) | LFormula::Or(l, r) | LFormula::Implies(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Is this an atom or a negated atom?
    pub fn is_literal(&self) -> bool {
        match self {
            LFormula::Atom(_) => true,
            LFormula::Not(inner) => matches!(**inner, LFormula::Atom(_)),
            _ => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            LFormula::Atom(_) | LFormula::Bottom | LFormula::Top => 0,
            LFormula::Not(f) => 1 + f.depth(),
            LFormula::And(l, r) | LFormula::Or(l, r) | LFormula::Implies(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    /// Truth value under an assignment given as a predicate on atoms.
    pub fn evaluate(&self, value: &impl Fn(&Atom) -> bool) -> bool {
        match self {
            LFormula::Atom(a) => value(a),
            LFormula::Bottom => false,
            LFormula::Top => true,
            LFormula::Not(f) => !f.evaluate(value),
            LFormula::And(l, r) => l.evaluate(value) && r.evaluate(value),
            LFormula::Or(l, r) => l.evaluate(value) || r.evaluate(value),
            LFormula::Implies(l, r) => !l.evaluate(value) || r.evaluate(value),
        }
    }
}

/// A finite set of formulas.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct LTheory(BTreeSet<LFormula>);

impl LTheory {
    pub fn new() -> Self {
        LTheory(BTreeSet::new())
    }

    pub fn insert(&mut self, f: LFormula) -> bool {
        self.0.insert(f)
    }

    pub fn contains(&self, f: &LFormula) -> bool {
        self.0.contains(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = &LFormula> + '_ {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn union(&self, other: &LTheory) -> LTheory {
        self.0.union(&other.0).cloned().collect()
    }

    pub fn with(&self, f: LFormula) -> LTheory {
        let mut out = self.clone();
        out.insert(f);
        out
    }

    pub fn as_set(&self) -> &BTreeSet<LFormula> {
        &self.0
    }
}

impl FromIterator<LFormula> for LTheory {
    fn from_iter<I: IntoIterator<Item = LFormula>>(iter: I) -> Self {
        LTheory(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[LFormula; N]> for LTheory {
    fn from(fs: [LFormula; N]) -> Self {
        fs.into_iter().collect()
    }
}

impl IntoIterator for LTheory {
    type Item = LFormula;
    type IntoIter = std::collections::btree_set::IntoIter<LFormula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a LTheory {
    type Item = &'a LFormula;
    type IntoIter = std::collections::btree_set::Iter<'a, LFormula>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A single-conclusion consequence relation over [`LFormula`].
///
/// The rest of the engine only needs `derives`; consistency is defined in
/// terms of it.
pub trait Consequence {
    fn derives(&self, premises: &LTheory, goal: &LFormula) -> bool;

    fn is_consistent(&self, theory: &LTheory) -> bool {
        !self.derives(theory, &LFormula::Bottom)
    }
}

/// Classical propositional consequence, decided by truth tables.
#[derive(Clone, Copy, Debug, Default)]
pub struct Classical;

impl Consequence for Classical {
    fn derives(&self, premises: &LTheory, goal: &LFormula) -> bool {
        let mut atoms = goal.atoms();
        for p in premises {
            p.collect_atoms(&mut atoms);
        }
        let sig = Signature::from_atoms(atoms);
        match sig.table() {
            Some(table) => {
                let mut models = table.all();
                for p in premises {
                    models.intersect(&table.models(p));
                    if models.is_empty() {
                        return true;
                    }
                }
                models.is_subset(&table.models(goal))
            }
            None => derives_by_enumeration(&sig, premises, goal),
        }
    }
}

/// `premises ⊢ goal` in classical propositional logic.
pub fn derives(premises: &LTheory, goal: &LFormula) -> bool {
    Classical.derives(premises, goal)
}

pub fn is_consistent(theory: &LTheory) -> bool {
    Classical.is_consistent(theory)
}

pub fn atoms_of(theory: &LTheory) -> BTreeSet<Atom> {
    let mut out = BTreeSet::new();
    for f in theory {
        f.collect_atoms(&mut out);
    }
    out
}

fn derives_by_enumeration(sig: &Signature, premises: &LTheory, goal: &LFormula) -> bool {
    let n = sig.len();
    let mut row: u128 = 0;
    loop {
        let value = |a: &Atom| sig.index(a).is_some_and(|i| (row >> i) & 1 == 1);
        if premises.iter().all(|p| p.evaluate(&value)) && !goal.evaluate(&value) {
            return false;
        }
        row += 1;
        if row >> n != 0 {
            return true;
        }
    }
}

/// Largest signature for which full truth tables are materialized.
pub const MAX_TABLE_ATOMS: usize = 20;

/// A sorted, duplicate-free list of atoms fixing the row order of truth
/// tables: in row `r`, atom `i` is true iff bit `i` of `r` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    atoms: Vec<Atom>,
}

impl Signature {
    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Self {
        let set: BTreeSet<Atom> = atoms.into_iter().collect();
        Signature {
            atoms: set.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn index(&self, atom: &Atom) -> Option<usize> {
        self.atoms.binary_search(atom).ok()
    }

    /// Truth tables over this signature, or `None` when it is too large.
    pub fn table(&self) -> Option<TruthTable<'_>> {
        (self.len() <= MAX_TABLE_ATOMS).then(|| TruthTable::new(self))
    }
}

/// Set of rows (valuations) of a truth table, as a bitset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSet {
    words: Vec<u64>,
}

impl ModelSet {
    pub fn intersect(&mut self, other: &ModelSet) {
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w &= o;
        }
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(w, o)| w & !o == 0)
    }

    pub fn count(&self) -> u32 {
        self.words.iter().map(|w| w.count_ones()).sum()
    }
}

// Bit patterns of the first six atoms within one 64-row word.
const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Computes the model set of formulas over a fixed signature.
#[derive(Clone, Debug)]
pub struct TruthTable<'a> {
    sig: &'a Signature,
    words: usize,
    last_mask: u64,
}

impl<'a> TruthTable<'a> {
    fn new(sig: &'a Signature) -> Self {
        let rows = 1usize << sig.len();
        let words = rows.div_ceil(64);
        let last_mask = if rows >= 64 {
            u64::MAX
        } else {
            (1u64 << rows) - 1
        };
        TruthTable {
            sig,
            words,
            last_mask,
        }
    }

    pub fn signature(&self) -> &Signature {
        self.sig
    }

    pub fn all(&self) -> ModelSet {
        let mut words = vec![u64::MAX; self.words];
        *words.last_mut().expect("at least one word") = self.last_mask;
        ModelSet { words }
    }

    pub fn none(&self) -> ModelSet {
        ModelSet {
            words: vec![0; self.words],
        }
    }

    fn complement(&self, mut set: ModelSet) -> ModelSet {
        for w in &mut set.words {
            *w = !*w;
        }
        *set.words.last_mut().expect("at least one word") &= self.last_mask;
        set
    }

    fn atom(&self, atom: &Atom) -> ModelSet {
        let i = self
            .sig
            .index(atom)
            .expect("atom outside the truth table signature");
        let words = (0..self.words)
            .map(|w| {
                if i < 6 {
                    LOW_PATTERNS[i]
                } else if (w >> (i - 6)) & 1 == 1 {
                    u64::MAX
                } else {
                    0
                }
            })
            .collect::<Vec<_>>();
        let mut set = ModelSet { words };
        *set.words.last_mut().expect("at least one word") &= self.last_mask;
        set
    }

    /// The rows satisfying `f`. Panics if `f` mentions an atom outside the
    /// signature.
    pub fn models(&self, f: &LFormula) -> ModelSet {
        match f {
            LFormula::Atom(a) => self.atom(a),
            LFormula::Bottom => self.none(),
            LFormula::Top => self.all(),
            LFormula::Not(g) => self.complement(self.models(g)),
            LFormula::And(l, r) => {
                let mut m = self.models(l);
                m.intersect(&self.models(r));
                m
            }
            LFormula::Or(l, r) => {
                let mut m = self.models(l);
                for (w, o) in m.words.iter_mut().zip(&self.models(r).words) {
                    *w |= o;
                }
                m
            }
            LFormula::Implies(l, r) => {
                let mut m = self.complement(self.models(l));
                for (w, o) in m.words.iter_mut().zip(&self.models(r).words) {
                    *w |= o;
                }
                m
            }
        }
    }

    pub fn theory_models(&self, theory: &LTheory) -> ModelSet {
        let mut m = self.all();
        for f in theory {
            m.intersect(&self.models(f));
        }
        m
    }
}
