//! Finite duality between MV-algebras and labeled point sets.
//!
//! The dual of `Ł_{n_1}×…×Ł_{n_t}` is its maximal spectrum: `t` points, the
//! `i`-th carrying the label `n_i`. The open MV-subsets of a labeled space are
//! all functions `α` with `α(x) ∈ Ł_{ν(x)}`; a point map `f: S → T` is
//! continuous iff `ν_T(f(y))` divides `ν_S(y)` for every `y`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::algebra::{FiniteMvAlgebra, MvElement};
use crate::error::{contract, inconsistency};
use crate::hom::{enumerate_homs, is_rigid_map, Hom, HomMode};
use crate::{Error, Result};

/// Most opens [`MvSpace::opens`] will materialize.
pub const MAX_OPENS: u128 = 1 << 16;

/// A finite labeled space: point `x` carries the value chain `Ł_{ν(x)}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MvSpace {
    labels: Vec<u32>,
}

impl MvSpace {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvalidProfile(
                "a space needs at least one point".into(),
            ));
        }
        if labels.contains(&0) {
            return Err(Error::InvalidProfile(alloc::format!(
                "labels must be positive: {labels:?}"
            )));
        }
        Ok(Self { labels })
    }

    /// `n` points, all labeled `label` (the finest `(label+1)`-valued
    /// topology).
    pub fn constant(points: usize, label: u32) -> Result<Self> {
        Self::new(vec![label; points])
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn point_count(&self) -> usize {
        self.labels.len()
    }

    pub fn label(&self, point: usize) -> u32 {
        self.labels[point]
    }

    pub fn label_lcm(&self) -> u64 {
        self.labels
            .iter()
            .fold(1u64, |acc, &n| acc.lcm(&(n as u64)))
    }

    pub fn is_constant(&self) -> bool {
        self.labels.iter().all(|&n| n == self.labels[0])
    }

    pub fn is_crisp(&self) -> bool {
        self.labels.iter().all(|&n| n == 1)
    }

    /// Number of opens, `∏ (ν(x)+1)`.
    pub fn open_count(&self) -> u128 {
        self.labels
            .iter()
            .try_fold(1u128, |acc, &n| acc.checked_mul(n as u128 + 1))
            .unwrap_or(u128::MAX)
    }

    /// Every open as a numerator tuple (`α(x) = k_x / ν(x)`).
    pub fn opens(&self) -> Result<Vec<MvElement>> {
        let count = self.open_count();
        if count > MAX_OPENS {
            return Err(Error::Budget {
                needed: count,
                budget: MAX_OPENS,
            });
        }
        Ok(self.as_product().elements().collect())
    }

    /// The skeleton: every crisp function is open, so it is the discrete
    /// topology on the points.
    pub fn skeleton(&self) -> MvSpace {
        MvSpace {
            labels: vec![1; self.labels.len()],
        }
    }

    /// The labels as an (unsorted) product of chains, used to enumerate
    /// opens pointwise.
    fn as_product(&self) -> ProductView<'_> {
        ProductView {
            labels: &self.labels,
        }
    }
}

impl fmt::Display for MvSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, n) in self.labels.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{i}:{n}")?;
        }
        write!(f, "}}")
    }
}

struct ProductView<'a> {
    labels: &'a [u32],
}

impl ProductView<'_> {
    fn elements(&self) -> impl Iterator<Item = MvElement> + '_ {
        let mut next = Some(vec![0u32; self.labels.len()]);
        core::iter::from_fn(move || {
            let current = next.take()?;
            let mut succ = current.clone();
            for j in (0..succ.len()).rev() {
                if succ[j] < self.labels[j] {
                    succ[j] += 1;
                    next = Some(succ);
                    break;
                }
                succ[j] = 0;
            }
            Some(MvElement::new(current))
        })
    }
}

/// The maximal spectrum. Point `i` is the maximal ideal supported on every
/// factor but `i`; its quotient is the chain `Ł_{n_i}`.
pub fn max_spectrum(a: &FiniteMvAlgebra) -> Result<MvSpace> {
    let t = a.factor_count();
    let mut labels = vec![0u32; t];
    for ideal in &a.maximal_ideals() {
        let missing = (0..t)
            .find(|i| !ideal.support().contains(i))
            .ok_or_else(|| inconsistency!("maximal ideal with full support"))?;
        let quotient = a
            .quotient(ideal)?
            .algebra()
            .ok_or_else(|| inconsistency!("maximal ideal with trivial quotient"))?;
        if quotient.factor_count() != 1 {
            return Err(inconsistency!("A/M = {quotient} is not a chain"));
        }
        labels[missing] = quotient.chains()[0];
    }
    MvSpace::new(labels)
}

/// `Clop(S) = ∏_x Ł_{ν(x)}` in canonical form, with the factor realising
/// each point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClopAlgebra {
    pub algebra: FiniteMvAlgebra,
    pub factor_of_point: Vec<usize>,
}

pub fn clop(s: &MvSpace) -> Result<ClopAlgebra> {
    let mut order: Vec<usize> = (0..s.point_count()).collect();
    order.sort_by_key(|&x| s.label(x));
    let mut factor_of_point = vec![0; s.point_count()];
    for (factor, &x) in order.iter().enumerate() {
        factor_of_point[x] = factor;
    }
    let chains: Vec<u32> = order.iter().map(|&x| s.label(x)).collect();
    Ok(ClopAlgebra {
        algebra: FiniteMvAlgebra::new(&chains)?,
        factor_of_point,
    })
}

/// A map of points `f: source → target`, `map[y] = f(y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointMap {
    pub source: MvSpace,
    pub target: MvSpace,
    pub map: Vec<usize>,
}

impl PointMap {
    pub fn new(source: MvSpace, target: MvSpace, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.point_count() || map.iter().any(|&x| x >= target.point_count()) {
            return Err(contract!("{map:?} is not a map from {source} to {target}"));
        }
        Ok(Self {
            source,
            target,
            map,
        })
    }

    pub fn identity(space: &MvSpace) -> Self {
        Self {
            source: space.clone(),
            target: space.clone(),
            map: (0..space.point_count()).collect(),
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &PointMap) -> Result<PointMap> {
        if first.target != self.source {
            return Err(contract!(
                "cannot compose: {} is not {}",
                first.target,
                self.source
            ));
        }
        Ok(PointMap {
            source: first.source.clone(),
            target: self.target.clone(),
            map: first.map.iter().map(|&y| self.map[y]).collect(),
        })
    }

    pub fn is_continuous(&self) -> bool {
        is_continuous(&self.source, &self.target, &self.map)
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.point_count()];
        for &x in &self.map {
            hit[x] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.target.point_count()];
        self.map
            .iter()
            .all(|&x| !core::mem::replace(&mut hit[x], true))
    }

    pub fn is_label_preserving_injection(&self) -> bool {
        self.is_injective()
            && self
                .map
                .iter()
                .enumerate()
                .all(|(y, &x)| self.source.label(y) == self.target.label(x))
    }

    /// Surjective with first occurrences in increasing order.
    pub fn is_rigid_surjection(&self) -> bool {
        is_rigid_map(&self.map, self.target.point_count())
    }

    /// `α ∘ f` for an open `α` of the target, as a tuple of rationals
    /// `(numerator, denominator)`.
    pub fn pull_back(&self, alpha: &MvElement) -> Vec<(u32, u32)> {
        self.map
            .iter()
            .map(|&x| (alpha.numerators()[x], self.target.label(x)))
            .collect()
    }
}

/// The divisibility criterion: `ν_T(f(y)) | ν_S(y)`.
pub fn is_continuous(s: &MvSpace, t: &MvSpace, map: &[usize]) -> bool {
    map.iter()
        .enumerate()
        .all(|(y, &x)| s.label(y).is_multiple_of(t.label(x)))
}

/// Continuity checked from the definition: the preimage `α ∘ f` of every
/// open `α` of `T` is open in `S`.
pub fn is_continuous_exhaustive(s: &MvSpace, t: &MvSpace, map: &[usize]) -> Result<bool> {
    for alpha in t.opens()? {
        let preimage_open = map.iter().enumerate().all(|(y, &x)| {
            let (k, m) = (alpha.numerators()[x] as u64, t.label(x) as u64);
            (k * s.label(y) as u64).is_multiple_of(m)
        });
        if !preimage_open {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Which continuous maps to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapMode {
    All,
    Surjective,
    /// Surjective with first occurrences increasing: the duals of the
    /// lexicographically monotone embeddings.
    RigidSurjective,
}

impl MapMode {
    pub const ALL: [MapMode; 3] = [MapMode::All, MapMode::Surjective, MapMode::RigidSurjective];

    pub fn name(self) -> &'static str {
        match self {
            MapMode::All => "all",
            MapMode::Surjective => "surjective",
            MapMode::RigidSurjective => "rigid-surjective",
        }
    }

    fn admits(self, map: &[usize], targets: usize) -> bool {
        match self {
            MapMode::All => true,
            MapMode::Surjective => {
                let mut hit = vec![false; targets];
                for &x in map {
                    hit[x] = true;
                }
                hit.into_iter().all(|h| h)
            }
            MapMode::RigidSurjective => is_rigid_map(map, targets),
        }
    }
}

impl core::str::FromStr for MapMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MapMode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| contract!("unknown map mode {s:?}"))
    }
}

/// Point maps of the given kind, lexicographically, with `map[y]` drawn from
/// `candidates[y]`.
fn for_each_map(
    candidates: &[Vec<usize>],
    targets: usize,
    mode: MapMode,
    mut visit: impl FnMut(&[usize]),
) {
    if candidates.iter().any(Vec::is_empty) {
        return;
    }
    let mut pos = vec![0usize; candidates.len()];
    let mut map: Vec<usize> = candidates.iter().map(|c| c[0]).collect();
    loop {
        if mode.admits(&map, targets) {
            visit(&map);
        }
        let mut j = candidates.len();
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            pos[j] += 1;
            if pos[j] < candidates[j].len() {
                map[j] = candidates[j][pos[j]];
                break;
            }
            pos[j] = 0;
            map[j] = candidates[j][0];
        }
    }
}

/// Continuous maps `S → T` of the given kind, lexicographically ordered.
pub fn continuous_maps(s: &MvSpace, t: &MvSpace, mode: MapMode) -> Vec<PointMap> {
    let candidates: Vec<Vec<usize>> = (0..s.point_count())
        .map(|y| {
            (0..t.point_count())
                .filter(|&x| s.label(y).is_multiple_of(t.label(x)))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for_each_map(&candidates, t.point_count(), mode, |map| {
        out.push(PointMap {
            source: s.clone(),
            target: t.clone(),
            map: map.to_vec(),
        })
    });
    out
}

/// All point maps `S → T` of the given kind (the skeleton maps), ignoring
/// labels.
pub fn set_maps(s: &MvSpace, t: &MvSpace, mode: MapMode) -> Vec<PointMap> {
    let candidates: Vec<Vec<usize>> = (0..s.point_count())
        .map(|_| (0..t.point_count()).collect())
        .collect();
    let mut out = Vec::new();
    for_each_map(&candidates, t.point_count(), mode, |map| {
        out.push(PointMap {
            source: s.clone(),
            target: t.clone(),
            map: map.to_vec(),
        })
    });
    out
}

/// The dual of `h: A → B`: the continuous map `Max B → Max A`, `j ↦ σ(j)`.
pub fn dualize_hom(h: &Hom) -> Result<PointMap> {
    PointMap::new(
        max_spectrum(h.codomain())?,
        max_spectrum(h.domain())?,
        h.sigma().to_vec(),
    )
}

/// The dual of a continuous `f: S → T`: the homomorphism
/// `Clop(T) → Clop(S)`, `α ↦ α ∘ f`.
pub fn dualize_map(f: &PointMap) -> Result<Hom> {
    if !f.is_continuous() {
        return Err(contract!(
            "{:?} is not continuous from {} to {}",
            f.map,
            f.source,
            f.target
        ));
    }
    let cs = clop(&f.source)?;
    let ct = clop(&f.target)?;
    let mut sigma = vec![0; f.source.point_count()];
    for (y, &x) in f.map.iter().enumerate() {
        sigma[cs.factor_of_point[y]] = ct.factor_of_point[x];
    }
    Hom::new(ct.algebra, cs.algebra, sigma)
}

/// Exhaustive check of the open-set axioms on the implicit topology: `0̄`,
/// `1̄` are open and opens are closed under `∨`, `⊙`, `⊕` and `∧` (finite
/// joins suffice on a finite family). Returns the first violating pair.
pub fn topology_axioms_check(s: &MvSpace) -> Result<Option<(MvElement, MvElement)>> {
    let opens = s.opens()?;
    let lcm = s.label_lcm();
    // Work in [0,1] with a common denominator so that a result outside the
    // family is representable and detectable.
    let lift = |o: &MvElement| -> Vec<u64> {
        o.numerators()
            .iter()
            .zip(s.labels())
            .map(|(&k, &n)| k as u64 * (lcm / n as u64))
            .collect()
    };
    let is_open = |v: &[u64]| {
        v.iter()
            .zip(s.labels())
            .all(|(&k, &n)| (k * n as u64).is_multiple_of(lcm))
    };
    let zero = vec![0u64; s.point_count()];
    let one = vec![lcm; s.point_count()];
    if !is_open(&zero) || !is_open(&one) {
        return Err(inconsistency!("constants are not open"));
    }
    let lifted: Vec<Vec<u64>> = opens.iter().map(lift).collect();
    for (i, a) in lifted.iter().enumerate() {
        for (j, b) in lifted.iter().enumerate() {
            let zip = |f: &dyn Fn(u64, u64) -> u64| -> Vec<u64> {
                a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect()
            };
            let closed = is_open(&zip(&|x, y| x.max(y)))
                && is_open(&zip(&|x, y| (x + y).saturating_sub(lcm)))
                && is_open(&zip(&|x, y| (x + y).min(lcm)))
                && is_open(&zip(&|x, y| x.min(y)));
            if !closed {
                return Ok(Some((opens[i].clone(), opens[j].clone())));
            }
        }
    }
    Ok(None)
}

/// Outcome of [`round_trip_algebra`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraRoundTrip {
    pub spectrum: MvSpace,
    pub recovered: FiniteMvAlgebra,
    pub isomorphic: bool,
}

/// `Clop(Max A) ≅ A`.
pub fn round_trip_algebra(a: &FiniteMvAlgebra) -> Result<AlgebraRoundTrip> {
    let spectrum = max_spectrum(a)?;
    let recovered = clop(&spectrum)?.algebra;
    Ok(AlgebraRoundTrip {
        isomorphic: &recovered == a,
        spectrum,
        recovered,
    })
}

/// Outcome of [`round_trip_space`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpaceRoundTrip {
    pub recovered: MvSpace,
    /// `unit[x]` is the point of `Max(Clop S)` corresponding to `x`.
    pub unit: Vec<usize>,
    pub isomorphic: bool,
}

/// `Max(Clop S) ≅ S`, with the label-preserving bijection.
pub fn round_trip_space(s: &MvSpace) -> Result<SpaceRoundTrip> {
    let c = clop(s)?;
    let recovered = max_spectrum(&c.algebra)?;
    let isomorphic =
        (0..s.point_count()).all(|x| recovered.label(c.factor_of_point[x]) == s.label(x));
    Ok(SpaceRoundTrip {
        recovered,
        unit: c.factor_of_point,
        isomorphic,
    })
}

/// Naturality and functoriality on all homomorphisms between two algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityReport {
    pub homs: usize,
    pub continuous_maps: usize,
    pub embeddings: usize,
    pub surjective_maps: usize,
    pub surjections: usize,
    /// Injective maps with `ν(f(y)) = ν(y)`; a plain injective map such as
    /// the one dual to `Ł_2 ↪ Ł_4` need not come from a surjection.
    pub injective_maps: usize,
    /// First hom whose double dual differs from itself, or whose dual has
    /// the wrong kind.
    pub failure: Option<Hom>,
}

impl NaturalityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
            && self.homs == self.continuous_maps
            && self.embeddings == self.surjective_maps
            && self.surjections == self.injective_maps
    }
}

/// Compares `hom(A, B)` with the continuous maps `Max B → Max A`: every hom
/// must come back from its dual, embeddings must dualize to surjections and
/// surjective homs to label-preserving injective maps.
pub fn naturality_check(a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Result<NaturalityReport> {
    let homs = enumerate_homs(a, b, HomMode::All);
    let (sa, sb) = (max_spectrum(a)?, max_spectrum(b)?);
    let maps = continuous_maps(&sb, &sa, MapMode::All);
    let mut report = NaturalityReport {
        homs: homs.len(),
        continuous_maps: maps.len(),
        embeddings: 0,
        surjective_maps: maps.iter().filter(|f| f.is_surjective()).count(),
        surjections: 0,
        injective_maps: maps
            .iter()
            .filter(|f| f.is_label_preserving_injection())
            .count(),
        failure: None,
    };
    for h in &homs {
        let kind = h.classify();
        report.embeddings += kind.injective as usize;
        report.surjections += kind.surjective as usize;
        let f = dualize_hom(h)?;
        let back = dualize_map(&f)?;
        let kinds_match = kind.injective == f.is_surjective()
            && kind.surjective == f.is_label_preserving_injection();
        if &back != h || !kinds_match {
            report.failure.get_or_insert_with(|| h.clone());
        }
    }
    Ok(report)
}

/// `dual(h ∘ g) = dual(g) ∘ dual(h)`.
pub fn contravariance_check(h: &Hom, g: &Hom) -> Result<bool> {
    let hg = h.compose(g)?;
    Ok(dualize_hom(&hg)? == dualize_hom(g)?.compose(&dualize_hom(h)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(chains: &[u32]) -> FiniteMvAlgebra {
        FiniteMvAlgebra::new(chains).unwrap()
    }

    fn space(labels: &[u32]) -> MvSpace {
        MvSpace::new(labels.to_vec()).unwrap()
    }

    #[test]
    fn spectra() {
        assert_eq!(max_spectrum(&alg(&[2, 3])).unwrap().labels(), &[2, 3]);
        assert_eq!(max_spectrum(&alg(&[1, 1, 1])).unwrap().labels(), &[1, 1, 1]);
        assert_eq!(max_spectrum(&alg(&[5])).unwrap().labels(), &[5]);
    }

    #[test]
    fn clopens() {
        assert_eq!(clop(&space(&[3, 2])).unwrap().algebra, alg(&[2, 3]));
        assert_eq!(clop(&space(&[3, 2])).unwrap().factor_of_point, vec![1, 0]);
        assert_eq!(clop(&space(&[1])).unwrap().algebra, alg(&[1]));
        assert_eq!(clop(&space(&[2, 2, 2])).unwrap().algebra, alg(&[2, 2, 2]));
    }

    #[test]
    fn continuity_examples() {
        assert_eq!(
            continuous_maps(&space(&[6]), &space(&[2]), MapMode::All).len(),
            1
        );
        assert_eq!(
            continuous_maps(&space(&[3]), &space(&[2]), MapMode::All).len(),
            0
        );
        assert!(!is_continuous_exhaustive(&space(&[3]), &space(&[2]), &[0]).unwrap());
        let (s, t) = (space(&[4, 4]), space(&[2, 2]));
        assert_eq!(
            continuous_maps(&s, &t, MapMode::All),
            set_maps(&s, &t, MapMode::All)
        );
        assert_eq!(continuous_maps(&s, &t, MapMode::All).len(), 4);
    }

    #[test]
    fn duplication_dualizes_to_folding() {
        let h = Hom::new(alg(&[2, 2]), alg(&[2, 2, 2]), vec![0, 0, 1]).unwrap();
        let f = dualize_hom(&h).unwrap();
        assert_eq!(f.map, vec![0, 0, 1]);
        assert!(f.is_surjective());
        assert_eq!(dualize_map(&f).unwrap(), h);
    }

    #[test]
    fn round_trips() {
        assert!(round_trip_algebra(&alg(&[2, 3])).unwrap().isomorphic);
        let r = round_trip_space(&space(&[4, 1, 2])).unwrap();
        assert!(r.isomorphic);
        assert_eq!(r.recovered.labels(), &[1, 2, 4]);
    }

    #[test]
    fn topology_axioms_hold() {
        for labels in [&[1u32][..], &[2, 3], &[4, 1, 2]] {
            assert_eq!(topology_axioms_check(&space(labels)).unwrap(), None);
        }
    }

    #[test]
    fn rejects_bad_spaces() {
        assert!(MvSpace::new(vec![]).is_err());
        assert!(MvSpace::new(vec![2, 0]).is_err());
        assert!(PointMap::new(space(&[1]), space(&[1]), vec![1]).is_err());
    }
}
