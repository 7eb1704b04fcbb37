//! Rational step functions on dyadic cylinders.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use rand::Rng;

use super::word::{is_complete_code, is_prefix_free, Word};
use crate::error::contract;
use crate::Result;

pub type Rational = Ratio<u64>;

fn one() -> Rational {
    Rational::from_integer(1)
}

fn zero() -> Rational {
    Rational::from_integer(0)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    Leaf(Rational),
    Split(Box<Node>, Box<Node>),
}

impl Node {
    /// Joins two halves, merging equal leaves.
    fn split(left: Node, right: Node) -> Node {
        match (&left, &right) {
            (Node::Leaf(a), Node::Leaf(b)) if a == b => left,
            _ => Node::Split(Box::new(left), Box::new(right)),
        }
    }

    fn halves(&self) -> (&Node, &Node) {
        match self {
            Node::Leaf(_) => (self, self),
            Node::Split(l, r) => (l, r),
        }
    }

    fn map(&self, f: &impl Fn(Rational) -> Rational) -> Node {
        match self {
            Node::Leaf(q) => Node::Leaf(f(*q)),
            Node::Split(l, r) => Node::split(l.map(f), r.map(f)),
        }
    }

    fn zip(&self, other: &Node, f: &impl Fn(Rational, Rational) -> Rational) -> Node {
        match (self, other) {
            (Node::Leaf(a), Node::Leaf(b)) => Node::Leaf(f(*a, *b)),
            _ => {
                let (al, ar) = self.halves();
                let (bl, br) = other.halves();
                Node::split(al.zip(bl, f), ar.zip(br, f))
            }
        }
    }

    fn subtree(&self, w: &Word, from: u32) -> &Node {
        match self {
            Node::Leaf(_) => self,
            Node::Split(l, r) if from < w.len() => {
                if w.bit(from) {
                    r.subtree(w, from + 1)
                } else {
                    l.subtree(w, from + 1)
                }
            }
            Node::Split(..) => self,
        }
    }

    fn set(&self, w: &Word, from: u32, value: Rational) -> Node {
        if from == w.len() {
            return Node::Leaf(value);
        }
        let (l, r) = self.halves();
        if w.bit(from) {
            Node::split(l.clone(), r.set(w, from + 1, value))
        } else {
            Node::split(l.set(w, from + 1, value), r.clone())
        }
    }

    fn pieces(&self, at: Word, out: &mut Vec<(Word, Rational)>) {
        match self {
            Node::Leaf(q) => out.push((at, *q)),
            Node::Split(l, r) => {
                l.pieces(at.child(false), out);
                r.pieces(at.child(true), out);
            }
        }
    }

    fn depth(&self) -> u32 {
        match self {
            Node::Leaf(_) => 0,
            Node::Split(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    fn any_leaf(&self, p: &impl Fn(&Rational) -> bool) -> bool {
        match self {
            Node::Leaf(q) => p(q),
            Node::Split(l, r) => l.any_leaf(p) || r.any_leaf(p),
        }
    }

    fn fold_leaves<T>(&self, init: T, f: &impl Fn(T, &Rational) -> T) -> T {
        match self {
            Node::Leaf(q) => f(init, q),
            Node::Split(l, r) => {
                let init = l.fold_leaves(init, f);
                r.fold_leaves(init, f)
            }
        }
    }
}

/// Builds the tree carrying `items[i].1` on the cylinder `items[i].0`;
/// `items` is sorted, forms a complete code below the current position, and
/// every word has length at least `depth`.
fn graft(items: &[(Word, &Node)], depth: u32) -> Node {
    if let [(w, node)] = items {
        if w.len() == depth {
            return (*node).clone();
        }
    }
    let cut = items.partition_point(|(w, _)| !w.bit(depth));
    Node::split(
        graft(&items[..cut], depth + 1),
        graft(&items[cut..], depth + 1),
    )
}

/// A normalized step function `C → [0,1] ∩ ℚ` constant on finitely many
/// cylinders. Equal sibling pieces are always merged, so structural
/// equality is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyadicElement {
    root: Node,
}

/// Operations of the model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ModelOp {
    Oplus,
    Neg,
    Odot,
    Ominus,
    Join,
    Meet,
}

impl ModelOp {
    pub const ALL: [ModelOp; 6] = [
        ModelOp::Oplus,
        ModelOp::Neg,
        ModelOp::Odot,
        ModelOp::Ominus,
        ModelOp::Join,
        ModelOp::Meet,
    ];

    pub fn arity(self) -> usize {
        if self == ModelOp::Neg {
            1
        } else {
            2
        }
    }

    /// The operation on `[0,1]`.
    pub fn on_values(self, x: Rational, y: Rational) -> Rational {
        match self {
            ModelOp::Oplus => (x + y).min(one()),
            ModelOp::Neg => one() - x,
            ModelOp::Odot => {
                if x + y > one() {
                    x + y - one()
                } else {
                    zero()
                }
            }
            ModelOp::Ominus => {
                if x > y {
                    x - y
                } else {
                    zero()
                }
            }
            ModelOp::Join => x.max(y),
            ModelOp::Meet => x.min(y),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ModelOp::Oplus => "oplus",
            ModelOp::Neg => "neg",
            ModelOp::Odot => "odot",
            ModelOp::Ominus => "ominus",
            ModelOp::Join => "join",
            ModelOp::Meet => "meet",
        }
    }
}

impl core::str::FromStr for ModelOp {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        let op = match s {
            "⊕" | "+" => ModelOp::Oplus,
            "¬" | "!" => ModelOp::Neg,
            "⊙" | "*" => ModelOp::Odot,
            "⊖" | "-" => ModelOp::Ominus,
            "∨" | "|" => ModelOp::Join,
            "∧" | "&" => ModelOp::Meet,
            _ => ModelOp::ALL
                .into_iter()
                .find(|op| op.name() == s)
                .ok_or_else(|| contract!("unknown model operation {s:?}"))?,
        };
        Ok(op)
    }
}

fn check_value(q: Rational) -> Result<()> {
    if q > one() {
        return Err(contract!("value {q} is not in [0,1]"));
    }
    Ok(())
}

impl DyadicElement {
    pub fn constant(q: Rational) -> Result<Self> {
        check_value(q)?;
        Ok(Self {
            root: Node::Leaf(q),
        })
    }

    pub fn zero() -> Self {
        Self {
            root: Node::Leaf(zero()),
        }
    }

    pub fn one() -> Self {
        Self {
            root: Node::Leaf(one()),
        }
    }

    /// `q̄_U`: value `q` on the cylinders of `cylinders`, `0` elsewhere.
    pub fn basic(q: Rational, cylinders: &[Word]) -> Result<Self> {
        check_value(q)?;
        if !is_prefix_free(cylinders) {
            return Err(contract!("{cylinders:?} is not prefix free"));
        }
        let mut root = Node::Leaf(zero());
        for w in cylinders {
            root = root.set(w, 0, q);
        }
        Ok(Self { root })
    }

    /// The indicator of the cylinders.
    pub fn crisp(cylinders: &[Word]) -> Result<Self> {
        Self::basic(one(), cylinders)
    }

    /// The step function with the given pieces, which must form a complete
    /// prefix code.
    pub fn from_pieces(pieces: &[(Word, Rational)]) -> Result<Self> {
        let words: Vec<Word> = pieces.iter().map(|p| p.0).collect();
        if !is_complete_code(&words) {
            return Err(contract!("{words:?} is not a complete prefix code"));
        }
        let leaves: Vec<Node> = pieces
            .iter()
            .map(|&(_, q)| check_value(q).map(|()| Node::Leaf(q)))
            .collect::<Result<_>>()?;
        let mut items: Vec<(Word, &Node)> = words.into_iter().zip(&leaves).collect();
        items.sort_by_key(|a| a.0);
        Ok(Self {
            root: graft(&items, 0),
        })
    }

    /// The element equal to `parts[i].1(w)` at `parts[i].0 · w`; the words
    /// must form a complete prefix code.
    pub fn assemble(parts: &[(Word, DyadicElement)]) -> Result<Self> {
        let words: Vec<Word> = parts.iter().map(|p| p.0).collect();
        if !is_complete_code(&words) {
            return Err(contract!("{words:?} is not a complete prefix code"));
        }
        let mut items: Vec<(Word, &Node)> = parts.iter().map(|(w, e)| (*w, &e.root)).collect();
        items.sort_by_key(|a| a.0);
        Ok(Self {
            root: graft(&items, 0),
        })
    }

    /// The element `w ↦ self(prefix · w)`.
    pub fn restrict(&self, prefix: &Word) -> DyadicElement {
        DyadicElement {
            root: self.root.subtree(prefix, 0).clone(),
        }
    }

    /// The value on the cylinder `w`, if constant there.
    pub fn value_on(&self, w: &Word) -> Option<Rational> {
        match self.root.subtree(w, 0) {
            Node::Leaf(q) => Some(*q),
            Node::Split(..) => None,
        }
    }

    /// Maximal cylinders with their values, in lexicographic order.
    pub fn pieces(&self) -> Vec<(Word, Rational)> {
        let mut out = Vec::new();
        self.root.pieces(Word::EMPTY, &mut out);
        out
    }

    /// Length of the longest piece.
    pub fn depth(&self) -> u32 {
        self.root.depth()
    }

    /// `{0,1}`-valued.
    pub fn is_crisp(&self) -> bool {
        !self.root.any_leaf(&|q| *q != zero() && *q != one())
    }

    /// The cylinders where the value is `1`.
    pub fn support_of_one(&self) -> Vec<Word> {
        self.pieces()
            .into_iter()
            .filter(|(_, q)| *q == one())
            .map(|(w, _)| w)
            .collect()
    }

    /// Least common denominator of the values.
    pub fn denominator_lcm(&self) -> u64 {
        self.root.fold_leaves(1u64, &|acc, q| acc.lcm(q.denom()))
    }

    pub fn apply(&self, op: ModelOp, other: &DyadicElement) -> DyadicElement {
        if op == ModelOp::Neg {
            return self.neg();
        }
        DyadicElement {
            root: self.root.zip(&other.root, &|x, y| op.on_values(x, y)),
        }
    }

    /// Evaluates `op` on `args`, checking the arity.
    pub fn op_eval(op: ModelOp, args: &[&DyadicElement]) -> Result<DyadicElement> {
        if args.len() != op.arity() {
            return Err(contract!(
                "{} takes {} arguments, got {}",
                op.name(),
                op.arity(),
                args.len()
            ));
        }
        Ok(args[0].apply(op, args.last().expect("nonempty")))
    }

    pub fn oplus(&self, other: &DyadicElement) -> DyadicElement {
        self.apply(ModelOp::Oplus, other)
    }

    pub fn neg(&self) -> DyadicElement {
        DyadicElement {
            root: self.root.map(&|x| one() - x),
        }
    }

    pub fn odot(&self, other: &DyadicElement) -> DyadicElement {
        self.apply(ModelOp::Odot, other)
    }

    pub fn join(&self, other: &DyadicElement) -> DyadicElement {
        self.apply(ModelOp::Join, other)
    }

    pub fn meet(&self, other: &DyadicElement) -> DyadicElement {
        self.apply(ModelOp::Meet, other)
    }

    /// A random element with one piece per word of length `depth` and values
    /// `k / denominator`.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, depth: u32, denominator: u64) -> DyadicElement {
        let pieces: Vec<(Word, Rational)> = Word::all_of_length(depth)
            .map(|w| {
                (
                    w,
                    Rational::new(rng.gen_range(0..=denominator), denominator),
                )
            })
            .collect();
        Self::from_pieces(&pieces).expect("uniform code")
    }
}

impl fmt::Debug for DyadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DyadicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (w, q)) in self.pieces().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if w.is_empty() {
                write!(f, "ε↦{q}")?;
            } else {
                write!(f, "{w}↦{q}")?;
            }
        }
        write!(f, "}}")
    }
}
