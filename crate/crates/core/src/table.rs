//! Finite MV-algebras given abstractly by `⊕` and `¬` tables.
//!
//! Tables back the axiom checker, the homomorphism oracle, and the profile
//! computation for algebras that are not presented as products of chains
//! (closures inside the Cantor model, corrupted test doubles).

use alloc::vec::Vec;

use crate::algebra::FiniteMvAlgebra;
use crate::error::{contract, inconsistency};
use crate::{Error, Result};

/// Largest algebra [`OperationTable::from_algebra`] will tabulate.
pub const MAX_TABLE_SIZE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperationTable {
    size: usize,
    zero: usize,
    oplus: Vec<u32>,
    neg: Vec<u32>,
}

impl OperationTable {
    /// Builds a table from explicit operations on `0..size`.
    pub fn from_fn(
        size: usize,
        zero: usize,
        oplus: impl Fn(usize, usize) -> usize,
        neg: impl Fn(usize) -> usize,
    ) -> Result<Self> {
        if size == 0 || zero >= size {
            return Err(contract!("empty table or zero out of range"));
        }
        if size > MAX_TABLE_SIZE {
            return Err(Error::Budget {
                needed: size as u128,
                budget: MAX_TABLE_SIZE as u128,
            });
        }
        let mut sum = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                let z = oplus(x, y);
                if z >= size {
                    return Err(contract!("oplus({x},{y}) = {z} out of range"));
                }
                sum.push(z as u32);
            }
        }
        let mut negs = Vec::with_capacity(size);
        for x in 0..size {
            let z = neg(x);
            if z >= size {
                return Err(contract!("neg({x}) = {z} out of range"));
            }
            negs.push(z as u32);
        }
        Ok(Self {
            size,
            zero,
            oplus: sum,
            neg: negs,
        })
    }

    /// Tabulates a product of chains; element `i` is `algebra.element_at(i)`.
    pub fn from_algebra(algebra: &FiniteMvAlgebra) -> Result<Self> {
        let card = algebra.cardinality();
        if card > MAX_TABLE_SIZE as u128 {
            return Err(Error::Budget {
                needed: card,
                budget: MAX_TABLE_SIZE as u128,
            });
        }
        let elements: Vec<_> = algebra.elements().collect();
        Self::from_fn(
            elements.len(),
            0,
            |x, y| algebra.index_of(&algebra.oplus(&elements[x], &elements[y])),
            |x| algebra.index_of(&algebra.neg(&elements[x])),
        )
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.neg(self.zero)
    }

    #[inline]
    pub fn oplus(&self, x: usize, y: usize) -> usize {
        self.oplus[x * self.size + y] as usize
    }

    #[inline]
    pub fn neg(&self, x: usize) -> usize {
        self.neg[x] as usize
    }

    #[inline]
    pub fn odot(&self, x: usize, y: usize) -> usize {
        self.neg(self.oplus(self.neg(x), self.neg(y)))
    }

    #[inline]
    pub fn ominus(&self, x: usize, y: usize) -> usize {
        self.odot(x, self.neg(y))
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.oplus(self.ominus(x, y), y)
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.neg(self.join(self.neg(x), self.neg(y)))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.oplus(self.neg(x), y) == self.one()
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.oplus(x, x) == x
    }

    /// Overwrites one entry of the `⊕` table. Only useful for fault
    /// injection.
    pub fn set_oplus(&mut self, x: usize, y: usize, value: usize) {
        self.oplus[x * self.size + y] = value as u32;
    }

    /// The canonical chain profile of the tabulated algebra.
    ///
    /// Locates the atoms of the Boolean center; each atom `e` determines the
    /// maximal ideal `{x : x ∧ e = 0}` whose quotient is the chain
    /// `{x : x ≤ e}`. Fails if the sizes do not multiply out, which happens
    /// only for tables that are not MV-algebras.
    pub fn decompose(&self) -> Result<Decomposition> {
        let zero = self.zero;
        let idempotents: Vec<usize> = (0..self.size).filter(|&x| self.is_idempotent(x)).collect();
        let atoms: Vec<usize> = idempotents
            .iter()
            .copied()
            .filter(|&e| {
                e != zero
                    && !idempotents
                        .iter()
                        .any(|&d| d != e && d != zero && self.leq(d, e))
            })
            .collect();
        let mut blocks: Vec<(u32, usize)> = atoms
            .iter()
            .map(|&e| {
                let below = (0..self.size).filter(|&x| self.leq(x, e)).count();
                (below as u32 - 1, e)
            })
            .collect();
        blocks.sort();
        let product: u128 = blocks.iter().map(|b| b.0 as u128 + 1).product();
        if blocks.is_empty() || product != self.size as u128 {
            return Err(inconsistency!(
                "table of size {} does not split along its center atoms",
                self.size
            ));
        }
        let chains: Vec<u32> = blocks.iter().map(|b| b.0).collect();
        Ok(Decomposition {
            algebra: FiniteMvAlgebra::new(&chains)?,
            atoms: blocks.iter().map(|b| b.1).collect(),
        })
    }

    /// The elements below `atom`, in increasing order.
    pub fn chain_below(&self, atom: usize) -> Vec<usize> {
        let mut below: Vec<usize> = (0..self.size).filter(|&x| self.leq(x, atom)).collect();
        below.sort_by(|&x, &y| {
            if x == y {
                core::cmp::Ordering::Equal
            } else if self.leq(x, y) {
                core::cmp::Ordering::Less
            } else {
                core::cmp::Ordering::Greater
            }
        });
        below
    }
}

/// Canonical profile of a tabulated algebra with the center atoms that
/// realise each factor (in the same order as `algebra.chains()`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub algebra: FiniteMvAlgebra,
    pub atoms: Vec<usize>,
}
