//! The Boolean-center functor `G` on embeddings, the inclusion `F` of
//! Boolean algebras, and lexicographic order expansions.

use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::algebra::{FiniteMvAlgebra, MvElement};
use crate::error::{contract, inconsistency};
use crate::hom::{enumerate_homs, Hom, HomMode};
use crate::Result;

/// Largest domain for which [`order_preservation_check`] compares every
/// pair; above it, consecutive pairs (enough for a total order).
pub const ALL_PAIRS_BOUND: u128 = 1024;

/// `G(A) = B(A) ≅ Ł_1^t`.
pub fn center_object(a: &FiniteMvAlgebra) -> FiniteMvAlgebra {
    a.boolean_center().algebra
}

/// `G(h)`: the restriction of an embedding to the Boolean centers. It has
/// the same factor map with unit scales; the restriction is checked on every
/// central element against the center inclusions.
pub fn center_hom(h: &Hom) -> Result<Hom> {
    if !h.is_injective() {
        return Err(contract!("the center functor acts on embeddings only"));
    }
    let ca = h.domain().boolean_center();
    let cb = h.codomain().boolean_center();
    let g = Hom::new(ca.algebra.clone(), cb.algebra.clone(), h.sigma().to_vec())?;
    for x in ca.algebra.elements() {
        let via_h = h.apply(&ca.inclusion.apply(&x)?)?;
        let via_g = cb.inclusion.apply(&g.apply(&x)?)?;
        if via_h != via_g {
            return Err(inconsistency!("restriction of {h:?} disagrees at {x}"));
        }
    }
    Ok(g)
}

/// `F`: Boolean algebras are MV-algebras; the identity on objects and maps.
pub fn include_boolean(a: &FiniteMvAlgebra) -> Result<FiniteMvAlgebra> {
    if !a.is_boolean() {
        return Err(contract!("{a} is not Boolean"));
    }
    Ok(a.clone())
}

/// Counts from [`functor_laws_check`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FunctorLawReport {
    pub identities: usize,
    pub compositions: usize,
    pub left_inverse: usize,
    /// First failing law, as a short description with its data.
    pub failure: Option<alloc::string::String>,
}

impl FunctorLawReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// `G(id) = id`, `G(h ∘ g) = G(h) ∘ G(g)` on every composable pair of
/// embeddings among `algebras`, and `G(F(A)) = A`, `G(F(h)) = h` on the
/// Boolean ones.
pub fn functor_laws_check(algebras: &[FiniteMvAlgebra]) -> Result<FunctorLawReport> {
    let mut report = FunctorLawReport::default();
    let embeddings =
        |a: &FiniteMvAlgebra, b: &FiniteMvAlgebra| enumerate_homs(a, b, HomMode::Embeddings);
    for a in algebras {
        report.identities += 1;
        let ga = center_object(a);
        if center_hom(&Hom::identity(a))? != Hom::identity(&ga) {
            report
                .failure
                .get_or_insert_with(|| alloc::format!("G(id_{a}) ≠ id"));
        }
        if a.is_boolean() {
            report.left_inverse += 1;
            if center_object(&include_boolean(a)?) != *a {
                report
                    .failure
                    .get_or_insert_with(|| alloc::format!("G(F({a})) ≠ {a}"));
            }
            for b in algebras.iter().filter(|b| b.is_boolean()) {
                for h in embeddings(a, b) {
                    report.left_inverse += 1;
                    if center_hom(&h)? != h {
                        report
                            .failure
                            .get_or_insert_with(|| alloc::format!("G(F(h)) ≠ h for {h:?}"));
                    }
                }
            }
        }
    }
    for a in algebras {
        for b in algebras {
            let ab = embeddings(a, b);
            if ab.is_empty() {
                continue;
            }
            for c in algebras {
                let bc = embeddings(b, c);
                for g in &ab {
                    let gg = center_hom(g)?;
                    for h in &bc {
                        report.compositions += 1;
                        let lhs = center_hom(&h.compose(g)?)?;
                        let rhs = center_hom(h)?.compose(&gg)?;
                        if lhs != rhs {
                            report.failure.get_or_insert_with(|| {
                                alloc::format!("G(h∘g) ≠ G(h)∘G(g) for {h:?}, {g:?}")
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The restriction map `Emb(A, B) → Emb(B(A), B(B))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaithfulnessReport {
    pub embeddings: usize,
    pub image: usize,
    pub codomain: usize,
    pub injective: bool,
}

impl FaithfulnessReport {
    pub fn surjective(&self) -> bool {
        self.image == self.codomain
    }
}

pub fn faithfulness_check(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Result<FaithfulnessReport> {
    let homs = enumerate_homs(a, b, HomMode::Embeddings);
    let mut image: Vec<Hom> = homs.iter().map(center_hom).collect::<Result<_>>()?;
    image.sort();
    image.dedup();
    let codomain = enumerate_homs(&center_object(a), &center_object(b), HomMode::Embeddings).len();
    Ok(FaithfulnessReport {
        embeddings: homs.len(),
        image: image.len(),
        codomain,
        injective: image.len() == homs.len(),
    })
}

/// Hom-set sizes on both sides of the would-be adjunction: `hom(G(A), C)`
/// and `hom(A, F(C))` for a Boolean `C`.
pub fn adjunction_counts(
    a: &FiniteMvAlgebra,
    c: &FiniteMvAlgebra,
    mode: HomMode,
) -> Result<(usize, usize)> {
    let fc = include_boolean(c)?;
    Ok((
        enumerate_homs(&center_object(a), c, mode).len(),
        enumerate_homs(a, &fc, mode).len(),
    ))
}

/// An algebra with a total order on its elements, listed increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedAlgebra {
    pub algebra: FiniteMvAlgebra,
    pub order: Vec<MvElement>,
}

impl OrderedAlgebra {
    pub fn position(&self, x: &MvElement) -> Option<usize> {
        self.order.iter().position(|y| y == x)
    }

    /// The listing has every element exactly once, so the induced relation
    /// is total and antisymmetric.
    pub fn is_total_order(&self) -> bool {
        let mut sorted = self.order.clone();
        sorted.sort();
        sorted.dedup();
        sorted.len() == self.order.len()
            && self.order.len() as u128 == self.algebra.cardinality()
            && self.order.iter().all(|x| self.algebra.contains(x))
    }
}

/// Lexicographic comparison of numerator tuples, factor 0 first.
pub fn lex_cmp(x: &MvElement, y: &MvElement) -> Ordering {
    x.numerators().cmp(y.numerators())
}

pub fn lex_order(a: &FiniteMvAlgebra) -> OrderedAlgebra {
    let mut order: Vec<MvElement> = a.elements().collect();
    order.sort_by(lex_cmp);
    OrderedAlgebra {
        algebra: a.clone(),
        order,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub pairs_checked: u64,
    /// `x < y` with `h(x) ≥ h(y)`.
    pub witness: Option<(MvElement, MvElement)>,
}

impl OrderReport {
    pub fn monotone(&self) -> bool {
        self.witness.is_none()
    }
}

/// Whether `h` is strictly monotone for the lexicographic orders.
pub fn order_preservation_check(h: &Hom) -> OrderReport {
    let order = lex_order(h.domain()).order;
    let images: Vec<MvElement> = order.iter().map(|x| h.apply_unchecked(x)).collect();
    let mut pairs_checked = 0;
    let all_pairs = h.domain().cardinality() <= ALL_PAIRS_BOUND;
    for i in 0..order.len() {
        let upper = if all_pairs {
            order.len()
        } else {
            (i + 2).min(order.len())
        };
        for j in i + 1..upper {
            pairs_checked += 1;
            if lex_cmp(&images[i], &images[j]) != Ordering::Less {
                return OrderReport {
                    pairs_checked,
                    witness: Some((order[i].clone(), order[j].clone())),
                };
            }
        }
    }
    OrderReport {
        pairs_checked,
        witness: None,
    }
}
