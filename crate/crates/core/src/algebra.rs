//! Finite MV-algebras as products of Łukasiewicz chains.
//!
//! An algebra `Ł_{n_1} × … × Ł_{n_t}` is stored by its chain profile
//! `[n_1, …, n_t]`, sorted ascending. Two algebras are isomorphic exactly when
//! their profiles are equal. An element is a tuple of numerators
//! `(k_1, …, k_t)` with `0 ≤ k_i ≤ n_i`, standing for `(k_1/n_1, …, k_t/n_t)`.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;

use crate::error::{contract, inconsistency};
use crate::hom::Hom;
use crate::{Error, Result};

/// Algebras with at most this many elements have their ideals checked by
/// brute force in [`FiniteMvAlgebra::ideal_structure`].
pub const IDEAL_VALIDATION_BOUND: u128 = 512;

/// A finite MV-algebra in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteMvAlgebra {
    chains: Vec<u32>,
}

/// An element of a finite MV-algebra, given by its numerators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MvElement {
    numerators: Vec<u32>,
}

impl MvElement {
    pub fn new(numerators: Vec<u32>) -> Self {
        Self { numerators }
    }

    pub fn numerators(&self) -> &[u32] {
        &self.numerators
    }

    pub fn into_numerators(self) -> Vec<u32> {
        self.numerators
    }
}

impl fmt::Display for MvElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.numerators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}")?;
        }
        write!(f, ")")
    }
}

/// Operation symbols accepted by [`FiniteMvAlgebra::op_eval`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    Oplus,
    Neg,
    Odot,
    Ominus,
    Join,
    Meet,
    Distance,
    Leq,
    Zero,
    One,
}

impl Op {
    pub const ALL: [Op; 10] = [
        Op::Oplus,
        Op::Neg,
        Op::Odot,
        Op::Ominus,
        Op::Join,
        Op::Meet,
        Op::Distance,
        Op::Leq,
        Op::Zero,
        Op::One,
    ];

    pub fn arity(self) -> usize {
        match self {
            Op::Zero | Op::One => 0,
            Op::Neg => 1,
            _ => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Oplus => "oplus",
            Op::Neg => "neg",
            Op::Odot => "odot",
            Op::Ominus => "ominus",
            Op::Join => "join",
            Op::Meet => "meet",
            Op::Distance => "distance",
            Op::Leq => "leq",
            Op::Zero => "zero",
            Op::One => "one",
        }
    }
}

impl FromStr for Op {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "oplus" | "⊕" | "+" => Op::Oplus,
            "neg" | "¬" | "not" => Op::Neg,
            "odot" | "⊙" | "*" => Op::Odot,
            "ominus" | "⊖" | "-" => Op::Ominus,
            "join" | "∨" | "or" => Op::Join,
            "meet" | "∧" | "and" => Op::Meet,
            "distance" | "d" => Op::Distance,
            "leq" | "≤" | "<=" => Op::Leq,
            "zero" | "0" => Op::Zero,
            "one" | "1" => Op::One,
            other => return Err(contract!("unknown operation symbol {other:?}")),
        })
    }
}

/// Result of [`FiniteMvAlgebra::op_eval`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpValue {
    Element(MvElement),
    Bool(bool),
}

/// Result of the Archimedean test; in a finite algebra it always succeeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Archimedean {
    pub archimedean: bool,
    /// Least `n ≥ 1` with `na` idempotent.
    pub witness: u32,
}

/// The Boolean center `B(A) ≅ Ł_1^t` with its inclusion into `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BooleanCenter {
    pub algebra: FiniteMvAlgebra,
    pub inclusion: Hom,
}

/// An ideal, represented by its factor support: the elements vanishing
/// outside `support`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal {
    support: Vec<usize>,
}

impl Ideal {
    /// Builds the ideal with the given support; indices are deduplicated and
    /// sorted.
    pub fn new(algebra: &FiniteMvAlgebra, support: &[usize]) -> Result<Self> {
        let t = algebra.factor_count();
        if let Some(&bad) = support.iter().find(|&&i| i >= t) {
            return Err(contract!(
                "support index {bad} out of range for {t} factors"
            ));
        }
        let set: BTreeSet<usize> = support.iter().copied().collect();
        Ok(Self {
            support: set.into_iter().collect(),
        })
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn contains(&self, x: &MvElement) -> bool {
        x.numerators
            .iter()
            .enumerate()
            .all(|(i, &k)| k == 0 || self.support.binary_search(&i).is_ok())
    }

    pub fn is_maximal(&self, algebra: &FiniteMvAlgebra) -> bool {
        self.support.len() + 1 == algebra.factor_count()
    }

    pub fn is_proper(&self, algebra: &FiniteMvAlgebra) -> bool {
        self.support.len() < algebra.factor_count()
    }

    /// The elements of the ideal, in lexicographic order.
    pub fn elements(&self, algebra: &FiniteMvAlgebra) -> Vec<MvElement> {
        algebra.elements().filter(|x| self.contains(x)).collect()
    }
}

/// All ideals of an algebra together with the maximal ones and the radical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealStructure {
    pub ideals: Vec<Ideal>,
    pub maximal: Vec<Ideal>,
    pub radical: Ideal,
}

/// `A/I` together with its projection. The quotient by the improper ideal is
/// the one-element algebra, which has no canonical profile, so `chains` may be
/// empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Factor indices of `A` that survive, in order.
    pub kept: Vec<usize>,
    pub chains: Vec<u32>,
}

impl Quotient {
    pub fn algebra(&self) -> Option<FiniteMvAlgebra> {
        FiniteMvAlgebra::new(&self.chains).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.kept.is_empty()
    }

    pub fn cardinality(&self) -> u128 {
        self.chains.iter().map(|&n| n as u128 + 1).product()
    }

    pub fn project(&self, x: &MvElement) -> MvElement {
        MvElement::new(self.kept.iter().map(|&i| x.numerators[i]).collect())
    }

    /// The projection as a homomorphism, unless the quotient is trivial.
    pub fn projection(&self, algebra: &FiniteMvAlgebra) -> Option<Hom> {
        let codomain = self.algebra()?;
        Hom::new(algebra.clone(), codomain, self.kept.clone()).ok()
    }
}

/// A subalgebra given both as a concrete element set and as an abstract
/// canonical algebra with its inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    /// Elements of the ambient algebra, sorted.
    pub elements: Vec<MvElement>,
    pub algebra: FiniteMvAlgebra,
    /// Embedding of `algebra` onto `elements`.
    pub inclusion: Hom,
}

impl FiniteMvAlgebra {
    /// Canonical representative of `Ł_{n_1} × … × Ł_{n_t}`.
    pub fn new(chains: &[u32]) -> Result<Self> {
        if chains.is_empty() {
            return Err(Error::InvalidProfile("empty chain sequence".to_string()));
        }
        if chains.contains(&0) {
            return Err(Error::InvalidProfile(format!(
                "chain orders must be positive, got {chains:?}"
            )));
        }
        let mut chains = chains.to_vec();
        chains.sort_unstable();
        Ok(Self { chains })
    }

    /// `Ł_n`.
    pub fn chain(n: u32) -> Result<Self> {
        Self::new(&[n])
    }

    /// `Ł_n^t`.
    pub fn power(n: u32, t: usize) -> Result<Self> {
        Self::new(&vec![n; t])
    }

    pub fn chains(&self) -> &[u32] {
        &self.chains
    }

    pub fn factor_count(&self) -> usize {
        self.chains.len()
    }

    /// `∏ (n_i + 1)`, saturating.
    pub fn cardinality(&self) -> u128 {
        self.chains
            .iter()
            .fold(1u128, |acc, &n| acc.saturating_mul(n as u128 + 1))
    }

    pub fn is_boolean(&self) -> bool {
        self.chains.iter().all(|&n| n == 1)
    }

    /// Least common multiple of the chain orders.
    pub fn chain_lcm(&self) -> u64 {
        self.chains
            .iter()
            .fold(1u64, |acc, &n| acc.lcm(&(n as u64)))
    }

    pub fn zero(&self) -> MvElement {
        MvElement::new(vec![0; self.chains.len()])
    }

    pub fn one(&self) -> MvElement {
        MvElement::new(self.chains.clone())
    }

    /// The element `1/n_i` on factor `i` and `0` elsewhere. These elements
    /// generate the algebra.
    pub fn generator(&self, factor: usize) -> MvElement {
        let mut k = vec![0; self.chains.len()];
        k[factor] = 1;
        MvElement::new(k)
    }

    /// The central element that is `1` exactly on `factor`.
    pub fn factor_unit(&self, factor: usize) -> MvElement {
        let mut k = vec![0; self.chains.len()];
        k[factor] = self.chains[factor];
        MvElement::new(k)
    }

    pub fn element(&self, numerators: Vec<u32>) -> Result<MvElement> {
        let x = MvElement::new(numerators);
        self.check(&x)?;
        Ok(x)
    }

    pub fn contains(&self, x: &MvElement) -> bool {
        x.numerators.len() == self.chains.len()
            && x.numerators.iter().zip(&self.chains).all(|(k, n)| k <= n)
    }

    fn check(&self, x: &MvElement) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(contract!(
                "element {x} does not belong to the algebra with chains {:?}",
                self.chains
            ))
        }
    }

    /// All elements in lexicographic order of their numerators.
    pub fn elements(&self) -> Elements<'_> {
        Elements {
            chains: &self.chains,
            next: Some(vec![0; self.chains.len()]),
        }
    }

    /// Position of `x` in [`Self::elements`].
    pub fn index_of(&self, x: &MvElement) -> usize {
        x.numerators
            .iter()
            .zip(&self.chains)
            .fold(0usize, |acc, (&k, &n)| acc * (n as usize + 1) + k as usize)
    }

    /// Inverse of [`Self::index_of`].
    pub fn element_at(&self, mut index: usize) -> MvElement {
        let mut k = vec![0; self.chains.len()];
        for (slot, &n) in k.iter_mut().zip(&self.chains).rev() {
            let base = n as usize + 1;
            *slot = (index % base) as u32;
            index /= base;
        }
        MvElement::new(k)
    }

    fn zip_with(
        &self,
        x: &MvElement,
        y: &MvElement,
        f: impl Fn(u32, u32, u32) -> u32,
    ) -> MvElement {
        MvElement::new(
            x.numerators
                .iter()
                .zip(&y.numerators)
                .zip(&self.chains)
                .map(|((&a, &b), &n)| f(a, b, n))
                .collect(),
        )
    }

    /// `x ⊕ y`, componentwise `min(k + l, n)`.
    pub fn oplus(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.zip_with(x, y, |a, b, n| (a + b).min(n))
    }

    /// `¬x`, componentwise `n − k`.
    pub fn neg(&self, x: &MvElement) -> MvElement {
        MvElement::new(
            x.numerators
                .iter()
                .zip(&self.chains)
                .map(|(&a, &n)| n - a)
                .collect(),
        )
    }

    /// `x ⊙ y = ¬(¬x ⊕ ¬y)`.
    pub fn odot(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.neg(&self.oplus(&self.neg(x), &self.neg(y)))
    }

    /// `x ⊖ y = x ⊙ ¬y`.
    pub fn ominus(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.odot(x, &self.neg(y))
    }

    /// `x ∨ y = (x ⊙ ¬y) ⊕ y`.
    pub fn join(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.oplus(&self.ominus(x, y), y)
    }

    /// `x ∧ y = ¬(¬x ∨ ¬y)`.
    pub fn meet(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.neg(&self.join(&self.neg(x), &self.neg(y)))
    }

    /// `d(x, y) = (x ⊙ ¬y) ⊕ (y ⊙ ¬x)`.
    pub fn distance(&self, x: &MvElement, y: &MvElement) -> MvElement {
        self.oplus(&self.ominus(x, y), &self.ominus(y, x))
    }

    /// `x ≤ y` iff `¬x ⊕ y = 1`.
    pub fn leq(&self, x: &MvElement, y: &MvElement) -> bool {
        self.oplus(&self.neg(x), y) == self.one()
    }

    /// `kx = x ⊕ … ⊕ x` (`k` times); `0x = 0`.
    pub fn multiple(&self, k: u32, x: &MvElement) -> MvElement {
        MvElement::new(
            x.numerators
                .iter()
                .zip(&self.chains)
                .map(|(&a, &n)| (a.saturating_mul(k)).min(n))
                .collect(),
        )
    }

    /// Evaluates an operation symbol on owned elements.
    pub fn op_eval(&self, op: Op, args: &[&MvElement]) -> Result<OpValue> {
        if args.len() != op.arity() {
            return Err(contract!(
                "{} takes {} argument(s), got {}",
                op.name(),
                op.arity(),
                args.len()
            ));
        }
        for x in args {
            self.check(x)?;
        }
        let el = OpValue::Element;
        Ok(match op {
            Op::Zero => el(self.zero()),
            Op::One => el(self.one()),
            Op::Neg => el(self.neg(args[0])),
            Op::Oplus => el(self.oplus(args[0], args[1])),
            Op::Odot => el(self.odot(args[0], args[1])),
            Op::Ominus => el(self.ominus(args[0], args[1])),
            Op::Join => el(self.join(args[0], args[1])),
            Op::Meet => el(self.meet(args[0], args[1])),
            Op::Distance => el(self.distance(args[0], args[1])),
            Op::Leq => OpValue::Bool(self.leq(args[0], args[1])),
        })
    }

    /// Every numerator is `0` or `n_i`.
    pub fn is_central(&self, x: &MvElement) -> bool {
        x.numerators
            .iter()
            .zip(&self.chains)
            .all(|(&k, &n)| k == 0 || k == n)
    }

    /// The elements of the Boolean center, in lexicographic order.
    pub fn central_elements(&self) -> Vec<MvElement> {
        let t = self.chains.len();
        let mut out: Vec<MvElement> = (0u64..1 << t)
            .map(|mask| {
                MvElement::new(
                    (0..t)
                        .map(|i| {
                            if mask >> (t - 1 - i) & 1 == 1 {
                                self.chains[i]
                            } else {
                                0
                            }
                        })
                        .collect(),
                )
            })
            .collect();
        out.sort();
        out
    }

    pub fn boolean_center(&self) -> BooleanCenter {
        let t = self.chains.len();
        let algebra = FiniteMvAlgebra::power(1, t).expect("t ≥ 1");
        let inclusion = Hom::new(algebra.clone(), self.clone(), (0..t).collect())
            .expect("1 divides every chain");
        BooleanCenter { algebra, inclusion }
    }

    /// Checks the three equivalent Archimedean conditions and returns the
    /// shared least witness.
    pub fn archimedean(&self, a: &MvElement) -> Result<Archimedean> {
        self.check(a)?;
        let one = self.one();
        // na stabilises once n reaches the largest chain order.
        let limit = self.chains.iter().copied().max().unwrap_or(1) + 1;
        let least = |cond: &dyn Fn(u32) -> bool| (1..=limit).find(|&n| cond(n));
        let by_center = least(&|n| self.is_central(&self.multiple(n, a)));
        let by_join = least(&|n| self.join(&self.neg(a), &self.multiple(n, a)) == one);
        let by_stable = least(&|n| self.multiple(n, a) == self.multiple(n + 1, a));
        match (by_center, by_join, by_stable) {
            (Some(x), Some(y), Some(z)) if x == y && y == z => Ok(Archimedean {
                archimedean: true,
                witness: x,
            }),
            other => Err(inconsistency!(
                "Archimedean conditions disagree on {a}: {other:?}"
            )),
        }
    }

    /// The `t` maximal ideals, each supported on all factors but one, by
    /// decreasing missing factor.
    pub fn maximal_ideals(&self) -> Vec<Ideal> {
        let t = self.chains.len();
        (0..t)
            .rev()
            .map(|missing| Ideal {
                support: (0..t).filter(|&i| i != missing).collect(),
            })
            .collect()
    }

    /// All `2^t` ideals (by support, in increasing bitmask order), the `t`
    /// maximal ideals, and the radical.
    pub fn ideal_structure(&self) -> Result<IdealStructure> {
        let t = self.chains.len();
        if t > 20 {
            return Err(Error::Budget {
                needed: 1u128 << t,
                budget: 1 << 20,
            });
        }
        let ideals: Vec<Ideal> = (0u32..1 << t)
            .map(|mask| Ideal {
                support: (0..t).filter(|&i| mask >> i & 1 == 1).collect(),
            })
            .collect();
        let maximal = self.maximal_ideals();
        let mut radical_support: BTreeSet<usize> = (0..t).collect();
        for m in &maximal {
            radical_support.retain(|i| m.support.contains(i));
        }
        let radical = Ideal {
            support: radical_support.into_iter().collect(),
        };
        if self.cardinality() <= IDEAL_VALIDATION_BOUND {
            for ideal in &ideals {
                if !self.is_ideal_brute_force(&ideal.elements(self)) {
                    return Err(inconsistency!(
                        "support {:?} does not give an ideal",
                        ideal.support
                    ));
                }
            }
        }
        Ok(IdealStructure {
            ideals,
            maximal,
            radical,
        })
    }

    /// Non-empty, downward closed and closed under `⊕`, checked element by
    /// element.
    pub fn is_ideal_brute_force(&self, set: &[MvElement]) -> bool {
        if set.is_empty() {
            return false;
        }
        let members: BTreeSet<&MvElement> = set.iter().collect();
        for x in set {
            if !self.contains(x) {
                return false;
            }
            for y in self.elements() {
                if self.leq(&y, x) && !members.contains(&y) {
                    return false;
                }
            }
            for y in set {
                if !members.contains(&self.oplus(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    /// `A/I`: the product of the factors outside the support of `I`.
    pub fn quotient(&self, ideal: &Ideal) -> Result<Quotient> {
        if ideal.support.iter().any(|&i| i >= self.chains.len()) {
            return Err(contract!(
                "ideal support {:?} is not an ideal of this algebra",
                ideal.support
            ));
        }
        let kept: Vec<usize> = (0..self.chains.len())
            .filter(|i| ideal.support.binary_search(i).is_err())
            .collect();
        let chains = kept.iter().map(|&i| self.chains[i]).collect();
        Ok(Quotient { kept, chains })
    }

    /// Closure of `gens ∪ {0, 1}` under `⊕` and `¬`, with its canonical
    /// profile and inclusion.
    ///
    /// Each atom `e` of the closure's Boolean center carries the chain
    /// `{x ∈ S : x ≤ e}`; the quotient by the maximal ideal `{x : x ∧ e = 0}`
    /// is a chain of that length, so the atoms give the canonical factors.
    pub fn generated_subalgebra(&self, gens: &[MvElement]) -> Result<Subalgebra> {
        for g in gens {
            self.check(g)?;
        }
        let mut set: BTreeSet<MvElement> = BTreeSet::new();
        let mut members: Vec<MvElement> = Vec::new();
        let mut queue: Vec<MvElement> = Vec::new();
        for x in [self.zero(), self.one()]
            .into_iter()
            .chain(gens.iter().cloned())
        {
            if set.insert(x.clone()) {
                queue.push(x);
            }
        }
        while let Some(x) = queue.pop() {
            members.push(x.clone());
            let mut fresh = vec![self.neg(&x)];
            for y in &members {
                fresh.push(self.oplus(&x, y));
            }
            for z in fresh {
                if set.insert(z.clone()) {
                    queue.push(z);
                }
            }
        }
        let elements: Vec<MvElement> = set.into_iter().collect();

        let zero = self.zero();
        let central: Vec<&MvElement> = elements.iter().filter(|x| self.is_central(x)).collect();
        let atoms: Vec<&MvElement> = central
            .iter()
            .copied()
            .filter(|&e| {
                *e != zero
                    && !central
                        .iter()
                        .any(|&d| d != e && *d != zero && self.leq(d, e))
            })
            .collect();
        // (chain order, atom) in canonical order.
        let mut blocks: Vec<(u32, &MvElement)> = atoms
            .iter()
            .map(|&e| {
                let below = elements.iter().filter(|x| self.leq(x, e)).count();
                (below as u32 - 1, e)
            })
            .collect();
        blocks.sort();
        let chains: Vec<u32> = blocks.iter().map(|b| b.0).collect();
        let algebra = FiniteMvAlgebra::new(&chains)?;
        let mut sigma = vec![usize::MAX; self.chains.len()];
        for (pos, (_, e)) in blocks.iter().enumerate() {
            for (j, (&k, &n)) in e.numerators.iter().zip(&self.chains).enumerate() {
                if k == n {
                    sigma[j] = pos;
                }
            }
        }
        if sigma.contains(&usize::MAX) {
            return Err(inconsistency!(
                "center atoms of the closure do not cover all factors"
            ));
        }
        let inclusion = Hom::new(algebra.clone(), self.clone(), sigma)?;
        let image: BTreeSet<MvElement> = algebra
            .elements()
            .map(|x| inclusion.apply_unchecked(&x))
            .collect();
        if image.len() != elements.len() || !elements.iter().all(|x| image.contains(x)) {
            return Err(inconsistency!(
                "closure of size {} is not the image of {:?}",
                elements.len(),
                chains
            ));
        }
        Ok(Subalgebra {
            elements,
            algebra,
            inclusion,
        })
    }
}

impl fmt::Display for FiniteMvAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, n) in self.chains.iter().enumerate() {
            if i > 0 {
                write!(f, "×")?;
            }
            write!(f, "Ł{n}")?;
        }
        Ok(())
    }
}

/// Iterator over the elements of an algebra in lexicographic order.
#[derive(Debug, Clone)]
pub struct Elements<'a> {
    chains: &'a [u32],
    next: Option<Vec<u32>>,
}

impl Iterator for Elements<'_> {
    type Item = MvElement;

    fn next(&mut self) -> Option<MvElement> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if succ[i] < self.chains[i] {
                succ[i] += 1;
                break true;
            }
            succ[i] = 0;
        };
        if advanced {
            self.next = Some(succ);
        }
        Some(MvElement::new(current))
    }
}
