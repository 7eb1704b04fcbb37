//! Homomorphisms between finite MV-algebras.
//!
//! A homomorphism `h: Ł_{m_1}×…×Ł_{m_s} → Ł_{n_1}×…×Ł_{n_t}` is determined by
//! a factor map `σ` from codomain factors to domain factors with
//! `m_{σ(j)} | n_j`: the `j`-th numerator of `h(x)` is `k_{σ(j)} · n_j / m_{σ(j)}`.
//! [`brute_force_homs`] searches all maps preserving `⊕`, `¬` and `0` and is
//! used to validate this description.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{FiniteMvAlgebra, MvElement};
use crate::error::contract;
use crate::table::OperationTable;
use crate::{Error, Result};

/// Default number of candidate generator assignments [`brute_force_homs`]
/// may explore.
pub const DEFAULT_ORACLE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hom {
    domain: FiniteMvAlgebra,
    codomain: FiniteMvAlgebra,
    sigma: Vec<usize>,
    scales: Vec<u32>,
}

/// Injectivity and surjectivity of a homomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomKind {
    pub injective: bool,
    pub surjective: bool,
    pub isomorphism: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomMode {
    All,
    Embeddings,
    Surjections,
    Isomorphisms,
}

impl HomMode {
    pub const ALL: [HomMode; 4] = [
        HomMode::All,
        HomMode::Embeddings,
        HomMode::Surjections,
        HomMode::Isomorphisms,
    ];

    pub fn admits(self, kind: HomKind) -> bool {
        match self {
            HomMode::All => true,
            HomMode::Embeddings => kind.injective,
            HomMode::Surjections => kind.surjective,
            HomMode::Isomorphisms => kind.isomorphism,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            HomMode::All => "all",
            HomMode::Embeddings => "embeddings",
            HomMode::Surjections => "surjections",
            HomMode::Isomorphisms => "isomorphisms",
        }
    }
}

impl core::str::FromStr for HomMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HomMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| contract!("unknown hom mode {s:?}"))
    }
}

impl Hom {
    /// Builds the homomorphism with factor map `sigma` (indexed by codomain
    /// factors), checking divisibility.
    pub fn new(
        domain: FiniteMvAlgebra,
        codomain: FiniteMvAlgebra,
        sigma: Vec<usize>,
    ) -> Result<Self> {
        if sigma.len() != codomain.factor_count() {
            return Err(contract!(
                "sigma has {} entries but the codomain has {} factors",
                sigma.len(),
                codomain.factor_count()
            ));
        }
        let mut scales = Vec::with_capacity(sigma.len());
        for (j, &i) in sigma.iter().enumerate() {
            let Some(&m) = domain.chains().get(i) else {
                return Err(contract!("sigma[{j}] = {i} is not a domain factor"));
            };
            let n = codomain.chains()[j];
            if !n.is_multiple_of(m) {
                return Err(contract!(
                    "chain {m} does not divide {n} at codomain factor {j}"
                ));
            }
            scales.push(n / m);
        }
        Ok(Self {
            domain,
            codomain,
            sigma,
            scales,
        })
    }

    pub fn identity(algebra: &FiniteMvAlgebra) -> Self {
        let t = algebra.factor_count();
        Self {
            domain: algebra.clone(),
            codomain: algebra.clone(),
            sigma: (0..t).collect(),
            scales: vec![1; t],
        }
    }

    pub fn domain(&self) -> &FiniteMvAlgebra {
        &self.domain
    }

    pub fn codomain(&self) -> &FiniteMvAlgebra {
        &self.codomain
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn scales(&self) -> &[u32] {
        &self.scales
    }

    pub fn apply(&self, x: &MvElement) -> Result<MvElement> {
        if !self.domain.contains(x) {
            return Err(contract!("{x} is not in the domain {}", self.domain));
        }
        Ok(self.apply_unchecked(x))
    }

    /// Applies the map to an element already known to lie in the domain.
    pub fn apply_unchecked(&self, x: &MvElement) -> MvElement {
        let k = x.numerators();
        MvElement::new(
            self.sigma
                .iter()
                .zip(&self.scales)
                .map(|(&i, &s)| k[i] * s)
                .collect(),
        )
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Hom) -> Result<Hom> {
        if first.codomain != self.domain {
            return Err(contract!(
                "cannot compose: {} is not {}",
                first.codomain,
                self.domain
            ));
        }
        Ok(Hom {
            domain: first.domain.clone(),
            codomain: self.codomain.clone(),
            sigma: self.sigma.iter().map(|&i| first.sigma[i]).collect(),
            scales: self
                .sigma
                .iter()
                .zip(&self.scales)
                .map(|(&i, &s)| s * first.scales[i])
                .collect(),
        })
    }

    pub fn classify(&self) -> HomKind {
        let t = self.domain.factor_count();
        let mut hits = vec![0usize; t];
        for &i in &self.sigma {
            hits[i] += 1;
        }
        let injective = hits.iter().all(|&h| h > 0);
        let surjective = hits.iter().all(|&h| h <= 1) && self.scales.iter().all(|&s| s == 1);
        HomKind {
            injective,
            surjective,
            isomorphism: injective && surjective,
        }
    }

    pub fn is_injective(&self) -> bool {
        self.classify().injective
    }

    pub fn is_isomorphism(&self) -> bool {
        self.classify().isomorphism
    }

    pub fn inverse(&self) -> Option<Hom> {
        if !self.is_isomorphism() {
            return None;
        }
        let mut sigma = vec![0; self.sigma.len()];
        for (j, &i) in self.sigma.iter().enumerate() {
            sigma[i] = j;
        }
        Hom::new(self.codomain.clone(), self.domain.clone(), sigma).ok()
    }

    /// `σ` is rigid: the first codomain factor mapped to each domain factor
    /// appears in increasing order. These are the homomorphisms that are
    /// monotone for the lexicographic orders (see [`crate::transfer`]).
    pub fn is_rigid(&self) -> bool {
        is_rigid_map(&self.sigma, self.domain.factor_count())
    }

    /// The map as an element-index table: entry `i` is the codomain index of
    /// the image of the `i`-th domain element.
    pub fn element_table(&self) -> Vec<usize> {
        self.domain
            .elements()
            .map(|x| self.codomain.index_of(&self.apply_unchecked(&x)))
            .collect()
    }
}

/// Every target value `0..targets` occurs and first occurrences are in
/// increasing order.
pub fn is_rigid_map(map: &[usize], targets: usize) -> bool {
    let mut next = 0;
    for &v in map {
        if v == next {
            next += 1;
        } else if v > next {
            return false;
        }
    }
    next == targets
}

/// Candidate domain factors for each codomain factor.
fn candidates(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Vec<Vec<usize>> {
    b.chains()
        .iter()
        .map(|&n| {
            a.chains()
                .iter()
                .enumerate()
                .filter(|(_, &m)| n % m == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect()
}

/// Calls `visit` on every admissible `σ` in lexicographic order.
pub fn for_each_sigma(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra, mut visit: impl FnMut(&[usize])) {
    let cands = candidates(a, b);
    if cands.iter().any(Vec::is_empty) {
        return;
    }
    let mut pos = vec![0usize; cands.len()];
    let mut sigma: Vec<usize> = cands.iter().map(|c| c[0]).collect();
    loop {
        visit(&sigma);
        let mut j = cands.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            pos[j] += 1;
            if pos[j] < cands[j].len() {
                sigma[j] = cands[j][pos[j]];
                break;
            }
            pos[j] = 0;
            sigma[j] = cands[j][0];
        }
    }
}

/// All homomorphisms `a → b` of the given kind, ordered lexicographically by
/// `σ`.
pub fn enumerate_homs(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra, mode: HomMode) -> Vec<Hom> {
    let mut out = Vec::new();
    for_each_sigma(a, b, |sigma| {
        let h = Hom::new(a.clone(), b.clone(), sigma.to_vec())
            .expect("candidates respect divisibility");
        if mode.admits(h.classify()) {
            out.push(h);
        }
    });
    out
}

/// Number of homomorphisms of the given kind.
pub fn count_homs(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra, mode: HomMode) -> usize {
    enumerate_homs(a, b, mode).len()
}

/// All maps `a → b` preserving `⊕`, `¬` and `0`, as element-index tables,
/// sorted.
///
/// The search assigns images to the generators `1/n_i·e_i` one at a time,
/// propagating each partial assignment through `⊕`/`¬` and backtracking on a
/// conflict; every surviving map is then checked on all pairs. `budget` caps
/// the number of candidate assignments tried.
pub fn brute_force_homs(
    a: &FiniteMvAlgebra,
    b: &FiniteMvAlgebra,
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    let ta = OperationTable::from_algebra(a)?;
    let tb = OperationTable::from_algebra(b)?;
    brute_force_table_homs(&ta, &tb, &generator_indices(a), budget)
}

fn generator_indices(a: &FiniteMvAlgebra) -> Vec<usize> {
    (0..a.factor_count())
        .map(|i| a.index_of(&a.generator(i)))
        .collect()
}

/// [`brute_force_homs`] on abstract operation tables with an explicit
/// generating set.
pub fn brute_force_table_homs(
    a: &OperationTable,
    b: &OperationTable,
    generators: &[usize],
    budget: u64,
) -> Result<Vec<Vec<usize>>> {
    let mut search = OracleSearch {
        a,
        b,
        generators,
        budget,
        spent: 0,
        found: Vec::new(),
    };
    let mut map = vec![UNMAPPED; a.size()];
    let mut mapped = Vec::new();
    if search.assign(&mut map, &mut mapped, a.zero(), b.zero()) {
        search.descend(0, &mut map, &mut mapped)?;
    }
    let mut found = search.found;
    found.sort();
    Ok(found)
}

const UNMAPPED: usize = usize::MAX;

struct OracleSearch<'a> {
    a: &'a OperationTable,
    b: &'a OperationTable,
    generators: &'a [usize],
    budget: u64,
    spent: u64,
    found: Vec<Vec<usize>>,
}

impl OracleSearch<'_> {
    fn descend(
        &mut self,
        level: usize,
        map: &mut Vec<usize>,
        mapped: &mut Vec<usize>,
    ) -> Result<()> {
        if level == self.generators.len() {
            if map.contains(&UNMAPPED) {
                return Err(contract!(
                    "the supplied generators do not generate the domain"
                ));
            }
            if self.preserves_everything(map) {
                self.found.push(map.clone());
            }
            return Ok(());
        }
        let g = self.generators[level];
        if map[g] != UNMAPPED {
            return self.descend(level + 1, map, mapped);
        }
        for image in 0..self.b.size() {
            self.spent += 1;
            if self.spent > self.budget {
                return Err(Error::Budget {
                    needed: self.spent as u128,
                    budget: self.budget as u128,
                });
            }
            let mut trial_map = map.clone();
            let mut trial_mapped = mapped.clone();
            if self.assign(&mut trial_map, &mut trial_mapped, g, image) {
                self.descend(level + 1, &mut trial_map, &mut trial_mapped)?;
            }
        }
        Ok(())
    }

    /// Adds `x ↦ y` and everything it forces; false on a conflict.
    fn assign(&self, map: &mut [usize], mapped: &mut Vec<usize>, x: usize, y: usize) -> bool {
        let mut queue = vec![(x, y)];
        while let Some((x, y)) = queue.pop() {
            match map[x] {
                UNMAPPED => {}
                prev if prev == y => continue,
                _ => return false,
            }
            map[x] = y;
            mapped.push(x);
            queue.push((self.a.neg(x), self.b.neg(y)));
            for &z in mapped.iter() {
                queue.push((self.a.oplus(x, z), self.b.oplus(y, map[z])));
            }
        }
        true
    }

    fn preserves_everything(&self, map: &[usize]) -> bool {
        let n = self.a.size();
        map[self.a.zero()] == self.b.zero()
            && (0..n).all(|x| map[self.a.neg(x)] == self.b.neg(map[x]))
            && (0..n)
                .all(|x| (0..n).all(|y| map[self.a.oplus(x, y)] == self.b.oplus(map[x], map[y])))
    }
}

/// `A ↪ Ł_n^t` with `n` the lcm of the chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerEmbedding {
    pub n: u32,
    pub t: usize,
    pub embedding: Hom,
}

pub fn embed_into_power(a: &FiniteMvAlgebra) -> Result<PowerEmbedding> {
    let n =
        u32::try_from(a.chain_lcm()).map_err(|_| contract!("lcm of {:?} overflows", a.chains()))?;
    let t = a.factor_count();
    let power = FiniteMvAlgebra::power(n, t)?;
    let embedding = Hom::new(a.clone(), power, (0..t).collect())?;
    Ok(PowerEmbedding { n, t, embedding })
}

/// Finds an embedding `φ: A′ → S` with `φ ∘ ext = target`, where
/// `ext: A → A′` and `target: A → S`, or `None` if there is none.
///
/// Over each domain factor `x` of `A`, the codomain factors `j` of `S` with
/// `σ_target(j) = x` must be distributed onto the factors of `A′` above `x`,
/// every one of them hit at least once; this is a bipartite matching per
/// fibre.
pub fn factor_through(ext: &Hom, target: &Hom) -> Result<Option<Hom>> {
    if ext.domain != target.domain {
        return Err(contract!("extension and target have different domains"));
    }
    let a_prime = &ext.codomain;
    let s = &target.codomain;
    // A′ factors lying over each A factor.
    let mut above: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (xp, &x) in ext.sigma.iter().enumerate() {
        above.entry(x).or_default().push(xp);
    }
    let mut sigma = vec![UNMAPPED; s.factor_count()];
    for (x, fibre) in &above {
        let slots: Vec<usize> = (0..s.factor_count())
            .filter(|&j| target.sigma[j] == *x)
            .collect();
        let allowed = |j: usize, xp: usize| s.chains()[j].is_multiple_of(a_prime.chains()[xp]);
        // Maximum matching of fibre members into distinct slots.
        let mut owner: Vec<Option<usize>> = vec![None; slots.len()];
        for (fi, _) in fibre.iter().enumerate() {
            let mut seen = vec![false; slots.len()];
            if !augment(fi, fibre, &slots, &allowed, &mut owner, &mut seen) {
                return Ok(None);
            }
        }
        for (si, &j) in slots.iter().enumerate() {
            sigma[j] = match owner[si] {
                Some(fi) => fibre[fi],
                None => match fibre.iter().copied().find(|&xp| allowed(j, xp)) {
                    Some(xp) => xp,
                    None => return Ok(None),
                },
            };
        }
    }
    if sigma.contains(&UNMAPPED) {
        // Some codomain factor lies over an A factor with nothing above it,
        // which cannot happen for an embedding `ext`.
        return Ok(None);
    }
    let phi = Hom::new(a_prime.clone(), s.clone(), sigma)?;
    debug_assert_eq!(&phi.compose(ext)?, target);
    Ok(Some(phi))
}

fn augment(
    fi: usize,
    fibre: &[usize],
    slots: &[usize],
    allowed: &impl Fn(usize, usize) -> bool,
    owner: &mut [Option<usize>],
    seen: &mut [bool],
) -> bool {
    for (si, &j) in slots.iter().enumerate() {
        if seen[si] || !allowed(j, fibre[fi]) {
            continue;
        }
        seen[si] = true;
        let free = match owner[si] {
            None => true,
            Some(other) => augment(other, fibre, slots, allowed, owner, seen),
        };
        if free {
            owner[si] = Some(fi);
            return true;
        }
    }
    false
}
