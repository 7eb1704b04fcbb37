//! Prefix-exchange homeomorphisms of the Cantor set.

use alloc::vec::Vec;
use core::fmt;

use super::dyadic::DyadicElement;
use super::word::{is_complete_code, Word};
use crate::error::contract;
use crate::Result;

/// Two complete prefix codes of equal size paired in order: the point
/// `source[i] · w` is sent to `target[i] · w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TreePair {
    source: Vec<Word>,
    target: Vec<Word>,
}

impl TreePair {
    pub fn new(source: Vec<Word>, target: Vec<Word>) -> Result<Self> {
        if source.len() != target.len() {
            return Err(contract!(
                "codes of sizes {} and {}",
                source.len(),
                target.len()
            ));
        }
        if !is_complete_code(&source) || !is_complete_code(&target) {
            return Err(contract!(
                "{source:?} → {target:?} is not a pair of complete prefix codes"
            ));
        }
        Ok(Self { source, target })
    }

    pub fn identity() -> Self {
        Self {
            source: alloc::vec![Word::EMPTY],
            target: alloc::vec![Word::EMPTY],
        }
    }

    pub fn source(&self) -> &[Word] {
        &self.source
    }

    pub fn target(&self) -> &[Word] {
        &self.target
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    /// `a ∘ g`: on `source[i]`, the values of `a` on `target[i]`.
    pub fn apply(&self, a: &DyadicElement) -> DyadicElement {
        let parts: Vec<(Word, DyadicElement)> = self
            .source
            .iter()
            .zip(&self.target)
            .map(|(s, t)| (*s, a.restrict(t)))
            .collect();
        DyadicElement::assemble(&parts).expect("source is a complete code")
    }

    pub fn inverse(&self) -> TreePair {
        TreePair {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// The image of the cylinder `w`, if `w` lies inside one source cylinder.
    pub fn map_word(&self, w: &Word) -> Option<Word> {
        self.source
            .iter()
            .zip(&self.target)
            .find_map(|(s, t)| s.strip_from(w).map(|tail| t.concat(&tail)))
    }

    /// `self ∘ first` as point maps, reduced.
    pub fn compose(&self, first: &TreePair) -> TreePair {
        let mut source = Vec::new();
        let mut target = Vec::new();
        for (fs, ft) in first.source.iter().zip(&first.target) {
            for (s, t) in self.source.iter().zip(&self.target) {
                if let Some(tail) = ft.strip_from(s) {
                    source.push(fs.concat(&tail));
                    target.push(*t);
                } else if let Some(tail) = s.strip_from(ft) {
                    source.push(*fs);
                    target.push(t.concat(&tail));
                }
            }
        }
        TreePair { source, target }.reduced()
    }

    /// Sorted by source with sibling pairs `u0 → v0, u1 → v1` merged into
    /// `u → v` until none remain.
    pub fn reduced(&self) -> TreePair {
        let mut pairs: Vec<(Word, Word)> = self
            .source
            .iter()
            .copied()
            .zip(self.target.iter().copied())
            .collect();
        pairs.sort();
        loop {
            let mut merged = Vec::with_capacity(pairs.len());
            let mut changed = false;
            let mut i = 0;
            while i < pairs.len() {
                if i + 1 < pairs.len() {
                    let ((s0, t0), (s1, t1)) = (pairs[i], pairs[i + 1]);
                    let siblings = |a: Word, b: Word| {
                        a.last_bit() == Some(false)
                            && b.last_bit() == Some(true)
                            && a.parent() == b.parent()
                    };
                    if siblings(s0, s1) && siblings(t0, t1) {
                        merged.push((s0.parent().unwrap(), t0.parent().unwrap()));
                        changed = true;
                        i += 2;
                        continue;
                    }
                }
                merged.push(pairs[i]);
                i += 1;
            }
            pairs = merged;
            if !changed {
                break;
            }
        }
        TreePair {
            source: pairs.iter().map(|p| p.0).collect(),
            target: pairs.iter().map(|p| p.1).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.reduced() == TreePair::identity()
    }
}

impl fmt::Debug for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TreePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (s, t)) in self.source.iter().zip(&self.target).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s:?}→{t:?}")?;
        }
        write!(f, "}}")
    }
}
