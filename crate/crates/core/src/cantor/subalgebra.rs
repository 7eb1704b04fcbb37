//! Finite subalgebras of the dyadic model and the extension of their
//! isomorphisms to tree pairs.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::dyadic::{DyadicElement, Rational};
use super::treepair::TreePair;
use super::word::Word;
use crate::algebra::{FiniteMvAlgebra, MvElement};
use crate::error::{contract, inconsistency};
use crate::hom::Hom;
use crate::table::{OperationTable, MAX_TABLE_SIZE};
use crate::{Error, Result};

/// Default bound on the common denominator of generators.
pub const DEFAULT_DENOMINATOR_CAP: u64 = 1 << 12;

/// An atom of the Boolean center: a crisp element, the cylinders where it is
/// one, and the chain of elements below it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub atom: DyadicElement,
    pub cylinders: Vec<Word>,
    pub chain: u32,
}

/// A finite subalgebra of the model with its canonical profile.
///
/// Every element is constant on each block, with value `k / chain`; the
/// value tuple is its coordinate in `algebra`, factor `i` being block `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSubalgebra {
    elements: Vec<DyadicElement>,
    algebra: FiniteMvAlgebra,
    blocks: Vec<Block>,
}

impl ModelSubalgebra {
    pub fn elements(&self) -> &[DyadicElement] {
        &self.elements
    }

    pub fn algebra(&self) -> &FiniteMvAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn contains(&self, x: &DyadicElement) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// The coordinates of `x` in the canonical profile.
    pub fn coordinates(&self, x: &DyadicElement) -> Result<MvElement> {
        if !self.contains(x) {
            return Err(contract!("{x} is not in the subalgebra"));
        }
        let mut numerators = Vec::with_capacity(self.blocks.len());
        for block in &self.blocks {
            let value = block
                .cylinders
                .iter()
                .map(|w| x.value_on(w))
                .try_fold(None, |seen: Option<Rational>, v| match (seen, v) {
                    (_, None) => Err(()),
                    (None, Some(v)) => Ok(Some(v)),
                    (Some(s), Some(v)) if s == v => Ok(Some(s)),
                    _ => Err(()),
                })
                .ok()
                .flatten()
                .ok_or_else(|| inconsistency!("{x} is not constant on a center block"))?;
            let k = value * Rational::from_integer(block.chain as u64);
            if !k.is_integer() {
                return Err(inconsistency!(
                    "{x} takes value {value} outside Ł_{}",
                    block.chain
                ));
            }
            numerators.push(k.to_integer() as u32);
        }
        Ok(MvElement::new(numerators))
    }

    /// The element with the given coordinates.
    pub fn element(&self, x: &MvElement) -> Result<DyadicElement> {
        if !self.algebra.contains(x) {
            return Err(contract!("{x} is not an element of {}", self.algebra));
        }
        let mut pieces = Vec::new();
        for (block, &k) in self.blocks.iter().zip(x.numerators()) {
            let q = Rational::new(k as u64, block.chain as u64);
            pieces.extend(block.cylinders.iter().map(|w| (*w, q)));
        }
        DyadicElement::from_pieces(&pieces)
    }
}

/// The subalgebra generated by `gens`, closing under `⊕` and `¬`.
pub fn generated_model_subalgebra(
    gens: &[DyadicElement],
    denominator_cap: u64,
) -> Result<ModelSubalgebra> {
    let lcm = gens
        .iter()
        .fold(1u64, |acc, g| acc.lcm(&g.denominator_lcm()));
    if lcm > denominator_cap {
        return Err(Error::Budget {
            needed: lcm as u128,
            budget: denominator_cap as u128,
        });
    }
    let mut index: BTreeMap<DyadicElement, usize> = BTreeMap::new();
    let mut list: Vec<DyadicElement> = Vec::new();
    for x in [DyadicElement::zero(), DyadicElement::one()]
        .into_iter()
        .chain(gens.iter().cloned())
    {
        insert_new(x, &mut index, &mut list)?;
    }
    // Each element is combined with itself and every earlier element.
    let mut done = 0;
    while done < list.len() {
        let x = list[done].clone();
        insert_new(x.neg(), &mut index, &mut list)?;
        for y in 0..=done {
            let sum = x.oplus(&list[y]);
            insert_new(sum, &mut index, &mut list)?;
        }
        done += 1;
    }
    from_closed_set(list)
}

fn insert_new(
    x: DyadicElement,
    index: &mut BTreeMap<DyadicElement, usize>,
    list: &mut Vec<DyadicElement>,
) -> Result<()> {
    if index.contains_key(&x) {
        return Ok(());
    }
    if list.len() == MAX_TABLE_SIZE {
        return Err(Error::Budget {
            needed: MAX_TABLE_SIZE as u128 + 1,
            budget: MAX_TABLE_SIZE as u128,
        });
    }
    index.insert(x.clone(), list.len());
    list.push(x);
    Ok(())
}

/// Builds the subalgebra from an element set already closed under `⊕`, `¬`.
fn from_closed_set(mut elements: Vec<DyadicElement>) -> Result<ModelSubalgebra> {
    elements.sort();
    let lookup = |x: &DyadicElement| -> usize { elements.binary_search(x).expect("set is closed") };
    let zero = lookup(&DyadicElement::zero());
    let table = OperationTable::from_fn(
        elements.len(),
        zero,
        |i, j| lookup(&elements[i].oplus(&elements[j])),
        |i| lookup(&elements[i].neg()),
    )?;
    let decomposition = table.decompose()?;
    let blocks = decomposition
        .atoms
        .iter()
        .zip(decomposition.algebra.chains())
        .map(|(&atom, &chain)| {
            let atom = elements[atom].clone();
            Block {
                cylinders: atom.support_of_one(),
                atom,
                chain,
            }
        })
        .collect();
    let sub = ModelSubalgebra {
        algebra: decomposition.algebra,
        blocks,
        elements,
    };
    // The coordinate map must be a bijection onto the profile.
    let mut coords: Vec<MvElement> = sub
        .elements
        .iter()
        .map(|x| sub.coordinates(x))
        .collect::<Result<_>>()?;
    coords.sort();
    coords.dedup();
    if coords.len() as u128 != sub.algebra.cardinality() {
        return Err(inconsistency!(
            "coordinates of the closure are not a bijection"
        ));
    }
    Ok(sub)
}

/// A copy of `A` in the model: factor `i` lives on block `i` of a depth-`d`
/// partition with `2^d ≥ t`, the last factor taking the leftover words, and
/// is realised by the constants `k / n_i` there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelEmbedding {
    pub depth: u32,
    pub generators: Vec<DyadicElement>,
    pub subalgebra: ModelSubalgebra,
    /// `A → subalgebra profile`, an isomorphism.
    pub iso: Hom,
}

pub fn embed_algebra_in_model(a: &FiniteMvAlgebra) -> Result<ModelEmbedding> {
    if a.cardinality() > MAX_TABLE_SIZE as u128 {
        return Err(Error::Budget {
            needed: a.cardinality(),
            budget: MAX_TABLE_SIZE as u128,
        });
    }
    let t = a.factor_count();
    let depth = usize::BITS - (t - 1).leading_zeros();
    let words: Vec<Word> = Word::all_of_length(depth).collect();
    let block_of = |i: usize| -> &[Word] {
        if i + 1 == t {
            &words[i..]
        } else {
            &words[i..i + 1]
        }
    };
    let generators: Vec<DyadicElement> = (0..t)
        .map(|i| DyadicElement::basic(Rational::new(1, a.chains()[i] as u64), block_of(i)))
        .collect::<Result<_>>()?;
    let subalgebra =
        generated_model_subalgebra(&generators, DEFAULT_DENOMINATOR_CAP.max(a.chain_lcm()))?;
    if subalgebra.algebra() != a {
        return Err(inconsistency!(
            "model copy of {a} has profile {}",
            subalgebra.algebra()
        ));
    }
    // Factor i of A sits on the block whose cylinders start with words[i].
    let mut sigma = vec![0; t];
    for (j, block) in subalgebra.blocks().iter().enumerate() {
        let first = block
            .cylinders
            .first()
            .ok_or_else(|| inconsistency!("empty block"))?;
        let i = (0..t)
            .find(|&i| {
                block_of(i)
                    .iter()
                    .any(|w| w.is_prefix_of(first) || first.is_prefix_of(w))
            })
            .ok_or_else(|| inconsistency!("block {first:?} has no factor"))?;
        sigma[j] = i;
    }
    let iso = Hom::new(a.clone(), subalgebra.algebra().clone(), sigma)?;
    for (i, g) in generators.iter().enumerate() {
        if subalgebra.element(&iso.apply(&a.generator(i))?)? != *g {
            return Err(inconsistency!("generator {i} is misplaced"));
        }
    }
    Ok(ModelEmbedding {
        depth,
        generators,
        subalgebra,
        iso,
    })
}

/// An isomorphism between two model subalgebras, carried by an isomorphism
/// of their profiles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelIso {
    pub domain: ModelSubalgebra,
    pub codomain: ModelSubalgebra,
    pub hom: Hom,
}

impl ModelIso {
    pub fn new(domain: ModelSubalgebra, codomain: ModelSubalgebra, hom: Hom) -> Result<Self> {
        if hom.domain() != domain.algebra()
            || hom.codomain() != codomain.algebra()
            || !hom.is_isomorphism()
        {
            return Err(contract!("not an isomorphism between the subalgebras"));
        }
        Ok(Self {
            domain,
            codomain,
            hom,
        })
    }

    pub fn identity(sub: &ModelSubalgebra) -> Self {
        Self {
            domain: sub.clone(),
            codomain: sub.clone(),
            hom: Hom::identity(sub.algebra()),
        }
    }

    /// The isomorphism determined by images of generators of `domain`,
    /// checked to extend to a bijective homomorphism.
    pub fn from_generator_images(
        domain: ModelSubalgebra,
        codomain: ModelSubalgebra,
        images: &[(DyadicElement, DyadicElement)],
    ) -> Result<Self> {
        let mut map: BTreeMap<DyadicElement, DyadicElement> = BTreeMap::new();
        let mut order: Vec<DyadicElement> = Vec::new();
        let add = |x: DyadicElement,
                   y: DyadicElement,
                   map: &mut BTreeMap<_, _>,
                   order: &mut Vec<_>|
         -> Result<()> {
            match map.get(&x) {
                Some(prev) if prev != &y => Err(contract!("{x} would map to both {prev} and {y}")),
                Some(_) => Ok(()),
                None => {
                    if !codomain.contains(&y) {
                        return Err(contract!("{y} is not in the codomain"));
                    }
                    map.insert(x.clone(), y);
                    order.push(x);
                    Ok(())
                }
            }
        };
        add(
            DyadicElement::zero(),
            DyadicElement::zero(),
            &mut map,
            &mut order,
        )?;
        add(
            DyadicElement::one(),
            DyadicElement::one(),
            &mut map,
            &mut order,
        )?;
        for (x, y) in images {
            if !domain.contains(x) {
                return Err(contract!("{x} is not in the domain"));
            }
            add(x.clone(), y.clone(), &mut map, &mut order)?;
        }
        let mut done = 0;
        while done < order.len() {
            let x = order[done].clone();
            let fx = map[&x].clone();
            add(x.neg(), fx.neg(), &mut map, &mut order)?;
            for i in 0..=done {
                let y = order[i].clone();
                let fy = map[&y].clone();
                add(x.oplus(&y), fx.oplus(&fy), &mut map, &mut order)?;
            }
            done += 1;
        }
        if map.len() != domain.elements().len() {
            return Err(contract!(
                "the images do not determine the map on the whole domain"
            ));
        }
        // Each codomain atom is the image of a domain atom; this gives σ.
        let mut sigma = Vec::with_capacity(codomain.blocks().len());
        for target in codomain.blocks() {
            let i = domain
                .blocks()
                .iter()
                .position(|b| map[&b.atom] == target.atom)
                .ok_or_else(|| contract!("not a bijection on the Boolean centers"))?;
            sigma.push(i);
        }
        let hom = Hom::new(domain.algebra().clone(), codomain.algebra().clone(), sigma)?;
        let iso = Self::new(domain, codomain, hom)?;
        for (x, y) in &map {
            if &iso.apply(x)? != y {
                return Err(contract!("the generated map is not a homomorphism"));
            }
        }
        Ok(iso)
    }

    pub fn apply(&self, x: &DyadicElement) -> Result<DyadicElement> {
        self.codomain
            .element(&self.hom.apply(&self.domain.coordinates(x)?)?)
    }
}

/// Extends `f: D → E` to a tree pair `g` with `f(x) ∘ g = x` for every `x`
/// in `D`.
///
/// Codomain block `j` corresponds to domain block `σ(j)`. Each such pair of
/// blocks is matched cylinder by cylinder after splitting the first
/// shortest cylinders of the side with fewer pieces until the counts agree;
/// the result is reduced.
pub fn extend_isomorphism(f: &ModelIso) -> Result<TreePair> {
    let mut source = Vec::new();
    let mut target = Vec::new();
    for (j, e_block) in f.codomain.blocks().iter().enumerate() {
        let d_block = &f.domain.blocks()[f.hom.sigma()[j]];
        if d_block.chain != e_block.chain {
            return Err(inconsistency!(
                "blocks with chains {} and {} are matched",
                d_block.chain,
                e_block.chain
            ));
        }
        let mut ds = d_block.cylinders.clone();
        let mut es = e_block.cylinders.clone();
        while ds.len() < es.len() {
            split_shortest(&mut ds);
        }
        while es.len() < ds.len() {
            split_shortest(&mut es);
        }
        source.extend(ds);
        target.extend(es);
    }
    let g = TreePair::new(source, target)?.reduced();
    for x in f.domain.elements() {
        if g.apply(&f.apply(x)?) != *x {
            return Err(inconsistency!(
                "tree pair does not extend the isomorphism at {x}"
            ));
        }
    }
    Ok(g)
}

fn split_shortest(words: &mut Vec<Word>) {
    let (pos, w) = words
        .iter()
        .copied()
        .enumerate()
        .min_by_key(|(i, w)| (w.len(), *i))
        .expect("blocks are nonempty");
    words.splice(pos..=pos, [w.child(false), w.child(true)]);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn q(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    fn generated(gens: &[DyadicElement]) -> ModelSubalgebra {
        generated_model_subalgebra(gens, DEFAULT_DENOMINATOR_CAP).unwrap()
    }

    #[test]
    fn closures() {
        let half0 = DyadicElement::basic(q(1, 2), &[w("0")]).unwrap();
        let sub = generated(&[half0]);
        assert_eq!(sub.algebra(), &FiniteMvAlgebra::new(&[1, 2]).unwrap());
        assert_eq!(sub.elements().len(), 6);
        assert_eq!(
            generated(&[]).algebra(),
            &FiniteMvAlgebra::chain(1).unwrap()
        );
        let third = DyadicElement::constant(q(1, 3)).unwrap();
        let sub = generated(&[third]);
        assert_eq!(sub.algebra(), &FiniteMvAlgebra::chain(3).unwrap());
        assert_eq!(sub.blocks()[0].cylinders, vec![Word::EMPTY]);
    }

    #[test]
    fn embeddings() {
        for chains in [&[2u32, 3][..], &[1], &[4], &[1, 2, 2], &[1, 1, 1, 1, 1]] {
            let a = FiniteMvAlgebra::new(chains).unwrap();
            let e = embed_algebra_in_model(&a).unwrap();
            assert_eq!(e.subalgebra.algebra(), &a);
            assert!(e.iso.is_isomorphism());
        }
    }

    #[test]
    fn swap_extends() {
        let d = generated(&[DyadicElement::basic(q(1, 2), &[w("0")]).unwrap()]);
        let e = generated(&[DyadicElement::basic(q(1, 2), &[w("1")]).unwrap()]);
        let f = ModelIso::from_generator_images(
            d,
            e,
            &[(
                DyadicElement::basic(q(1, 2), &[w("0")]).unwrap(),
                DyadicElement::basic(q(1, 2), &[w("1")]).unwrap(),
            )],
        )
        .unwrap();
        let g = extend_isomorphism(&f).unwrap();
        assert_eq!(
            g,
            TreePair::new(vec![w("0"), w("1")], vec![w("1"), w("0")]).unwrap()
        );
    }

    #[test]
    fn identity_extends_to_identity() {
        let d = generated(&[DyadicElement::basic(q(1, 3), &[w("01")]).unwrap()]);
        assert!(extend_isomorphism(&ModelIso::identity(&d))
            .unwrap()
            .is_identity());
    }

    #[test]
    fn uneven_blocks_are_refined() {
        let a = DyadicElement::crisp(&[w("0")]).unwrap();
        let b = DyadicElement::crisp(&[w("00")]).unwrap();
        let f = ModelIso::from_generator_images(
            generated(core::slice::from_ref(&a)),
            generated(core::slice::from_ref(&b)),
            &[(a, b)],
        )
        .unwrap();
        let g = extend_isomorphism(&f).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.source(), &[w("0"), w("10"), w("11")]);
        assert_eq!(g.target(), &[w("00"), w("01"), w("1")]);
    }

    #[test]
    fn non_homomorphisms_are_rejected() {
        let a = DyadicElement::basic(q(1, 2), &[w("0")]).unwrap();
        let b = DyadicElement::crisp(&[w("0")]).unwrap();
        let d = generated(core::slice::from_ref(&a));
        assert!(ModelIso::from_generator_images(d.clone(), d, &[(a, b)]).is_err());
    }
}
