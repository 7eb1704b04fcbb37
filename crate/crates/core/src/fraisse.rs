//! Amalgamation, joint embedding and a generic chain of finite MV-algebras.

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::algebra::FiniteMvAlgebra;
use crate::duality::{clop, MvSpace};
use crate::error::{contract, inconsistency};
use crate::hom::{count_homs, enumerate_homs, factor_through, Hom, HomMode};
use crate::{Error, Result};

/// Largest domain checked element by element in [`amalgamate`]; beyond it
/// the square is checked on the generators, which determine every hom.
pub const ELEMENTWISE_BOUND: u128 = 1 << 16;

/// Most (embedding, extension) pairs [`extension_property_check`] will try.
pub const DEFAULT_EP_BUDGET: u128 = 10_000_000;

/// Two embeddings `f: A → B`, `g: A → C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VFormation {
    pub f: Hom,
    pub g: Hom,
}

impl VFormation {
    pub fn new(f: Hom, g: Hom) -> Result<Self> {
        if f.domain() != g.domain() {
            return Err(contract!(
                "{} and {} are different domains",
                f.domain(),
                g.domain()
            ));
        }
        if !f.is_injective() || !g.is_injective() {
            return Err(contract!("both legs of a V-formation must be embeddings"));
        }
        Ok(Self { f, g })
    }

    pub fn domain(&self) -> &FiniteMvAlgebra {
        self.f.domain()
    }
}

/// Embeddings `h: B → D`, `k: C → D` with `h ∘ f = k ∘ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Amalgam {
    pub d: FiniteMvAlgebra,
    pub h: Hom,
    pub k: Hom,
}

/// Amalgamates over the fibered product of the duals: `D` is the clopen
/// algebra of `W = {(y, z) : σ_f(y) = σ_g(z)}` with `ν(y, z) = lcm(ν(y), ν(z))`.
pub fn amalgamate(v: &VFormation) -> Result<Amalgam> {
    let (b, c) = (v.f.codomain(), v.g.codomain());
    let mut pairs = Vec::new();
    let mut labels = Vec::new();
    for (y, &x) in v.f.sigma().iter().enumerate() {
        for (z, &x2) in v.g.sigma().iter().enumerate() {
            if x == x2 {
                pairs.push((y, z));
                labels.push(b.chains()[y].lcm(&c.chains()[z]));
            }
        }
    }
    let w = MvSpace::new(labels)?;
    let dual = clop(&w)?;
    let mut sigma_h = vec![0; pairs.len()];
    let mut sigma_k = vec![0; pairs.len()];
    for (p, &(y, z)) in pairs.iter().enumerate() {
        sigma_h[dual.factor_of_point[p]] = y;
        sigma_k[dual.factor_of_point[p]] = z;
    }
    let h = Hom::new(b.clone(), dual.algebra.clone(), sigma_h)?;
    let k = Hom::new(c.clone(), dual.algebra.clone(), sigma_k)?;
    let amalgam = Amalgam {
        d: dual.algebra,
        h,
        k,
    };
    if !square_commutes(v, &amalgam)? || !amalgam.h.is_injective() || !amalgam.k.is_injective() {
        return Err(inconsistency!(
            "amalgam of {} and {} over {} fails",
            b,
            c,
            v.domain()
        ));
    }
    Ok(amalgam)
}

/// `h ∘ f = k ∘ g` on elements.
pub fn square_commutes(v: &VFormation, amalgam: &Amalgam) -> Result<bool> {
    let hf = amalgam.h.compose(&v.f)?;
    let kg = amalgam.k.compose(&v.g)?;
    let a = v.domain();
    if a.cardinality() <= ELEMENTWISE_BOUND {
        Ok(a.elements()
            .all(|x| hf.apply_unchecked(&x) == kg.apply_unchecked(&x)))
    } else {
        Ok((0..a.factor_count()).all(|i| {
            let x = a.generator(i);
            hf.apply_unchecked(&x) == kg.apply_unchecked(&x)
        }))
    }
}

/// `C = Ł_N^{t_A + t_B}` with embeddings of `A` and `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointEmbedding {
    pub c: FiniteMvAlgebra,
    pub f: Hom,
    pub g: Hom,
}

/// Joint embedding into a power of `Ł_N`, `N` the lcm of all chains. The
/// first `t_A` factors of `C` copy `A` and the last `t_B` copy `B`; every
/// other factor repeats a factor cyclically so both maps stay injective.
pub fn joint_embed(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Result<JointEmbedding> {
    let n = a.chain_lcm().lcm(&b.chain_lcm());
    let n = u32::try_from(n).map_err(|_| contract!("lcm of {a} and {b} overflows"))?;
    let (ta, tb) = (a.factor_count(), b.factor_count());
    let c = FiniteMvAlgebra::power(n, ta + tb)?;
    let sigma_a = (0..ta + tb)
        .map(|j| if j < ta { j } else { (j - ta) % ta })
        .collect();
    let sigma_b = (0..ta + tb)
        .map(|j| if j >= ta { j - ta } else { j % tb })
        .collect();
    let f = Hom::new(a.clone(), c.clone(), sigma_a)?;
    let g = Hom::new(b.clone(), c.clone(), sigma_b)?;
    if !f.is_injective() || !g.is_injective() {
        return Err(inconsistency!(
            "joint embedding of {a} and {b} is not injective"
        ));
    }
    Ok(JointEmbedding { c, f, g })
}

/// A sequence of algebras joined by embeddings `links[i]: stages[i] → stages[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    stages: Vec<FiniteMvAlgebra>,
    links: Vec<Hom>,
}

impl Chain {
    pub fn new(stages: Vec<FiniteMvAlgebra>, links: Vec<Hom>) -> Result<Self> {
        if stages.is_empty() || links.len() + 1 != stages.len() {
            return Err(contract!(
                "{} stages need {} links",
                stages.len(),
                stages.len().saturating_sub(1)
            ));
        }
        for (i, link) in links.iter().enumerate() {
            if link.domain() != &stages[i] || link.codomain() != &stages[i + 1] {
                return Err(contract!(
                    "link {i} does not join stage {i} to stage {}",
                    i + 1
                ));
            }
            if !link.is_injective() {
                return Err(contract!("link {i} is not an embedding"));
            }
        }
        Ok(Self { stages, links })
    }

    /// `Ł_1 ↪ Ł_1 ↪ …` with identity links.
    pub fn constant(algebra: &FiniteMvAlgebra, stages: usize) -> Result<Self> {
        let stages = vec![algebra.clone(); stages.max(1)];
        let links = vec![Hom::identity(algebra); stages.len() - 1];
        Self::new(stages, links)
    }

    pub fn stages(&self) -> &[FiniteMvAlgebra] {
        &self.stages
    }

    pub fn links(&self) -> &[Hom] {
        &self.links
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn last(&self) -> &FiniteMvAlgebra {
        self.stages.last().expect("chains are nonempty")
    }

    /// The composite embedding of stage `from` into stage `to`.
    pub fn embedding(&self, from: usize, to: usize) -> Result<Hom> {
        if from > to || to >= self.stages.len() {
            return Err(contract!("no embedding from stage {from} to stage {to}"));
        }
        let mut h = Hom::identity(&self.stages[from]);
        for link in &self.links[from..to] {
            h = link.compose(&h)?;
        }
        Ok(h)
    }

    pub fn push(&mut self, link: Hom) -> Result<()> {
        if link.domain() != self.last() || !link.is_injective() {
            return Err(contract!("link does not extend the chain"));
        }
        self.stages.push(link.codomain().clone());
        self.links.push(link);
        Ok(())
    }
}

/// The generic chain with `stages` stages.
///
/// Stage 1 is `Ł_1`; stage `s+1` amalgamates stage `s` with `Ł_{(s+1)!}²`
/// over `Ł_1`, so stage `s` is `Ł_{s!}^{2^{s-1}}` and each link doubles every
/// factor. A demand "extend `ι: A ↪ S_i` along `ε: A ↪ A′`" is met at every
/// stage `m ≥ i` with `2^{m-i}` at least the largest fibre of `ε` and `m!`
/// divisible by the chains of `A′`, so every demand is met eventually.
pub fn generic_chain(stages: usize) -> Result<Chain> {
    if stages == 0 {
        return Err(contract!("a chain needs at least one stage"));
    }
    let mut chain = Chain::new(vec![FiniteMvAlgebra::chain(1)?], Vec::new())?;
    extend_generic_chain(&mut chain, stages - 1)?;
    Ok(chain)
}

/// Appends `extra` stages to a chain whose last stage is stage `len` of
/// the generic schedule.
pub fn extend_generic_chain(chain: &mut Chain, extra: usize) -> Result<()> {
    for _ in 0..extra {
        let s = chain.len() as u64;
        let factorial = (1..=s + 1).product::<u64>();
        let n = u32::try_from(factorial).map_err(|_| contract!("({})! overflows", s + 1))?;
        let seed = FiniteMvAlgebra::chain(1)?;
        let left = enumerate_homs(&seed, chain.last(), HomMode::Embeddings);
        let fresh = FiniteMvAlgebra::power(n, 2)?;
        let right = enumerate_homs(&seed, &fresh, HomMode::Embeddings);
        let (Some(f), Some(g)) = (left.into_iter().next(), right.into_iter().next()) else {
            return Err(inconsistency!("Ł_1 does not embed into a chain stage"));
        };
        let amalgam = amalgamate(&VFormation::new(f, g)?)?;
        chain.push(amalgam.h)?;
    }
    Ok(())
}

/// Every canonical profile with at most `bound` elements, by cardinality and
/// then profile.
pub fn algebras_up_to(bound: u128) -> Vec<FiniteMvAlgebra> {
    fn grow(prefix: &mut Vec<u32>, size: u128, bound: u128, out: &mut Vec<FiniteMvAlgebra>) {
        let min = prefix.last().copied().unwrap_or(1);
        let mut n = min;
        while size * (n as u128 + 1) <= bound {
            prefix.push(n);
            out.push(FiniteMvAlgebra::new(prefix).expect("positive profile"));
            grow(prefix, size * (n as u128 + 1), bound, out);
            prefix.pop();
            n += 1;
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 1, bound, &mut out);
    out.sort_by(|a, b| (a.cardinality(), a.chains()).cmp(&(b.cardinality(), b.chains())));
    out
}

/// An extension `A ↪ A′` of an embedding `A ↪ S_i` that no stage realizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unrealized {
    pub stage: usize,
    pub embedding: Hom,
    pub extension: Hom,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionReport {
    pub bound: u128,
    pub algebras: usize,
    pub embeddings: u128,
    pub pairs_checked: u128,
    pub unrealized: Vec<Unrealized>,
}

impl ExtensionReport {
    pub fn passed(&self) -> bool {
        self.unrealized.is_empty()
    }
}

/// For every `A` with `|A| ≤ bound`, every embedding `ι: A ↪ S_i` into a
/// stage and every embedding `ε: A ↪ A′` with `|A′| ≤ bound`, looks for
/// `φ: A′ ↪ S_m` with `φ ∘ ε = ι` at some stage `m ≥ i`.
///
/// Links are embeddings, so realisation at stage `m` implies realisation at
/// the last stage; only the last stage is searched. At most `max_listed`
/// failures are recorded.
pub fn extension_property_check(
    chain: &Chain,
    bound: u128,
    max_listed: usize,
) -> Result<ExtensionReport> {
    extension_property_check_with_budget(chain, bound, max_listed, DEFAULT_EP_BUDGET)
}

pub fn extension_property_check_with_budget(
    chain: &Chain,
    bound: u128,
    max_listed: usize,
    budget: u128,
) -> Result<ExtensionReport> {
    let algebras = algebras_up_to(bound);
    let last = chain.len() - 1;
    let mut ext_table = Vec::with_capacity(algebras.len());
    let mut needed = 0u128;
    for a in &algebras {
        let exts: Vec<Hom> = algebras
            .iter()
            .flat_map(|a2| enumerate_homs(a, a2, HomMode::Embeddings))
            .collect();
        for stage in chain.stages() {
            needed += count_homs(a, stage, HomMode::Embeddings) as u128 * exts.len() as u128;
        }
        ext_table.push(exts);
    }
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    let mut report = ExtensionReport {
        bound,
        algebras: algebras.len(),
        embeddings: 0,
        pairs_checked: 0,
        unrealized: Vec::new(),
    };
    let links: Vec<Hom> = (0..chain.len())
        .map(|i| chain.embedding(i, last))
        .collect::<Result<_>>()?;
    for (a, exts) in algebras.iter().zip(&ext_table) {
        for (i, stage) in chain.stages().iter().enumerate() {
            for iota in enumerate_homs(a, stage, HomMode::Embeddings) {
                report.embeddings += 1;
                let pushed = links[i].compose(&iota)?;
                for eps in exts {
                    report.pairs_checked += 1;
                    if factor_through(eps, &pushed)?.is_none()
                        && report.unrealized.len() < max_listed
                    {
                        report.unrealized.push(Unrealized {
                            stage: i,
                            embedding: iota.clone(),
                            extension: eps.clone(),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
