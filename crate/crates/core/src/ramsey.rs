//! Exhaustive Ramsey and Dual Ramsey checks at desk scale.
//!
//! A check enumerates the morphisms `A → D` (the positions to colour) and,
//! for each `f: B → D`, the copy `{f ∘ g : g: A → B}` as a set of positions.
//! `D` is a witness iff every colouring leaves some copy monochromatic. The
//! search for a colouring without monochromatic copies is a depth-first
//! search over positions in order, colours ascending, pruning as soon as a
//! copy whose last position was just coloured is monochromatic; the first
//! complete colouring it reaches is the lexicographically least bad one.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::algebra::FiniteMvAlgebra;
use crate::duality::{
    continuous_maps, is_continuous_exhaustive, set_maps, MapMode, MvSpace, PointMap,
};
use crate::error::contract;
use crate::hom::{enumerate_homs, Hom, HomMode};
use crate::{Error, Result};

/// Default bound on `r^n` for `n` positions.
pub const DEFAULT_COLORING_BUDGET: u128 = 1 << 24;

/// Which morphisms are coloured.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MorphismClass {
    /// Embeddings; dually, surjective continuous maps.
    #[default]
    Embeddings,
    /// All homomorphisms; dually, all continuous maps.
    AllHoms,
    /// Embeddings monotone for the lexicographic orders; dually, rigid
    /// surjections.
    OrderedEmbeddings,
}

impl MorphismClass {
    pub const ALL: [MorphismClass; 3] = [
        MorphismClass::Embeddings,
        MorphismClass::AllHoms,
        MorphismClass::OrderedEmbeddings,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MorphismClass::Embeddings => "embeddings",
            MorphismClass::AllHoms => "all",
            MorphismClass::OrderedEmbeddings => "ordered",
        }
    }

    pub fn homs(self, a: &FiniteMvAlgebra, b: &FiniteMvAlgebra) -> Vec<Hom> {
        match self {
            MorphismClass::Embeddings => enumerate_homs(a, b, HomMode::Embeddings),
            MorphismClass::AllHoms => enumerate_homs(a, b, HomMode::All),
            MorphismClass::OrderedEmbeddings => {
                let mut homs = enumerate_homs(a, b, HomMode::Embeddings);
                homs.retain(Hom::is_rigid);
                homs
            }
        }
    }

    pub fn map_mode(self) -> MapMode {
        match self {
            MorphismClass::Embeddings => MapMode::Surjective,
            MorphismClass::AllHoms => MapMode::All,
            MorphismClass::OrderedEmbeddings => MapMode::RigidSurjective,
        }
    }
}

impl core::str::FromStr for MorphismClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MorphismClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| contract!("unknown morphism class {s:?}"))
    }
}

/// Positions `0..positions`, each coloured with one of `colors` colours, and
/// a family of copies (sets of positions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringProblem {
    positions: usize,
    colors: usize,
    copies: Vec<Vec<usize>>,
    /// Copies grouped by their largest position.
    closing: Vec<Vec<usize>>,
}

/// Result of a colouring search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    /// The least colouring without a monochromatic copy, if any.
    pub bad_coloring: Option<Vec<u8>>,
    pub nodes: u64,
}

impl ColoringProblem {
    pub fn new(positions: usize, colors: usize, copies: Vec<Vec<usize>>) -> Result<Self> {
        if colors == 0 || colors > u8::MAX as usize {
            return Err(contract!("colour count {colors} out of range"));
        }
        let mut closing = vec![Vec::new(); positions];
        let mut normalized = Vec::with_capacity(copies.len());
        for mut copy in copies {
            copy.sort_unstable();
            copy.dedup();
            let Some(&last) = copy.last() else {
                return Err(contract!("empty copy"));
            };
            if last >= positions {
                return Err(contract!("copy mentions position {last} of {positions}"));
            }
            closing[last].push(normalized.len());
            normalized.push(copy);
        }
        Ok(Self {
            positions,
            colors,
            copies: normalized,
            closing,
        })
    }

    pub fn positions(&self) -> usize {
        self.positions
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn copies(&self) -> &[Vec<usize>] {
        &self.copies
    }

    /// `colors^positions`, saturating.
    pub fn coloring_count(&self) -> u128 {
        let mut total = 1u128;
        for _ in 0..self.positions {
            total = total.saturating_mul(self.colors as u128);
        }
        total
    }

    pub fn check_budget(&self, budget: u128) -> Result<()> {
        let needed = self.coloring_count();
        if needed > budget {
            return Err(Error::Budget { needed, budget });
        }
        Ok(())
    }

    /// The first monochromatic copy under `coloring`.
    pub fn monochromatic_copy(&self, coloring: &[u8]) -> Result<Option<usize>> {
        if coloring.len() != self.positions || coloring.iter().any(|&c| c as usize >= self.colors) {
            return Err(contract!(
                "not a {}-colouring of {} positions",
                self.colors,
                self.positions
            ));
        }
        Ok(self
            .copies
            .iter()
            .position(|copy| copy.iter().all(|&p| coloring[p] == coloring[copy[0]])))
    }

    /// `coloring` leaves no copy monochromatic.
    pub fn is_bad(&self, coloring: &[u8]) -> Result<bool> {
        Ok(self.monochromatic_copy(coloring)?.is_none())
    }

    fn closes_monochromatic(&self, coloring: &[u8], pos: usize) -> bool {
        let c = coloring[pos];
        self.closing[pos]
            .iter()
            .any(|&k| self.copies[k].iter().all(|&p| coloring[p] == c))
    }

    /// The least bad colouring.
    pub fn find_bad_coloring(&self) -> SearchResult {
        self.find_bad_coloring_with_prefix(&[])
            .expect("the empty prefix is always admissible")
    }

    /// The least bad colouring extending `prefix`, or an error if `prefix`
    /// is not a partial colouring.
    pub fn find_bad_coloring_with_prefix(&self, prefix: &[u8]) -> Result<SearchResult> {
        if prefix.len() > self.positions || prefix.iter().any(|&c| c as usize >= self.colors) {
            return Err(contract!("{prefix:?} is not a partial colouring"));
        }
        let mut coloring = vec![0u8; self.positions];
        coloring[..prefix.len()].copy_from_slice(prefix);
        let mut nodes = 0u64;
        for pos in 0..prefix.len() {
            nodes += 1;
            if self.closes_monochromatic(&coloring, pos) {
                return Ok(SearchResult {
                    bad_coloring: None,
                    nodes,
                });
            }
        }
        let floor = prefix.len();
        let mut pos = floor;
        let colors = self.colors as u8;
        loop {
            if pos == self.positions {
                return Ok(SearchResult {
                    bad_coloring: Some(coloring),
                    nodes,
                });
            }
            nodes += 1;
            if !self.closes_monochromatic(&coloring, pos) {
                pos += 1;
                if pos < self.positions {
                    coloring[pos] = 0;
                }
                continue;
            }
            // Advance to the next colouring in order, backtracking over
            // exhausted positions.
            loop {
                coloring[pos] += 1;
                if coloring[pos] < colors {
                    break;
                }
                coloring[pos] = 0;
                if pos == floor {
                    return Ok(SearchResult {
                        bad_coloring: None,
                        nodes,
                    });
                }
                pos -= 1;
            }
        }
    }
}

/// Colour `A → D` morphisms with `r` colours, looking for copies of `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyInstance {
    pub a: FiniteMvAlgebra,
    pub b: FiniteMvAlgebra,
    pub r: usize,
    pub class: MorphismClass,
}

impl RamseyInstance {
    pub fn new(
        a: FiniteMvAlgebra,
        b: FiniteMvAlgebra,
        r: usize,
        class: MorphismClass,
    ) -> Result<Self> {
        if r < 2 {
            return Err(contract!("need at least two colours, got {r}"));
        }
        if class.homs(&a, &b).is_empty() {
            return Err(contract!("no {} from {a} to {b}", class.name()));
        }
        Ok(Self { a, b, r, class })
    }

    /// The colouring problem on `D`: positions are the morphisms `A → D` in
    /// lexicographic order of `σ`, copies are indexed by `f: B → D`.
    pub fn problem(&self, d: &FiniteMvAlgebra) -> Result<ColoringProblem> {
        let ab = self.class.homs(&self.a, &self.b);
        let ad = self.class.homs(&self.a, d);
        let index: BTreeMap<&[usize], usize> =
            ad.iter().enumerate().map(|(i, h)| (h.sigma(), i)).collect();
        let mut copies = Vec::new();
        for f in self.class.homs(&self.b, d) {
            let copy = ab
                .iter()
                .map(|g| {
                    let fg = f.compose(g)?;
                    index.get(fg.sigma()).copied().ok_or_else(|| {
                        contract!("{} is not closed under composition", self.class.name())
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            copies.push(copy);
        }
        ColoringProblem::new(ad.len(), self.r, copies)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Verified,
    Refuted,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
        }
    }
}

/// Outcome of a witness check. A refutation carries the least bad
/// colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessCertificate {
    pub verdict: Verdict,
    pub coloring: Option<Vec<u8>>,
    pub positions: usize,
    pub copies: usize,
    pub colors: usize,
    pub nodes: u64,
}

impl WitnessCertificate {
    pub fn is_verified(&self) -> bool {
        self.verdict == Verdict::Verified
    }

    pub fn from_search(problem: &ColoringProblem, result: SearchResult) -> Self {
        Self {
            verdict: if result.bad_coloring.is_some() {
                Verdict::Refuted
            } else {
                Verdict::Verified
            },
            coloring: result.bad_coloring,
            positions: problem.positions(),
            copies: problem.copies().len(),
            colors: problem.colors(),
            nodes: result.nodes,
        }
    }
}

/// Solves `problem` within `budget`.
pub fn solve(problem: &ColoringProblem, budget: u128) -> Result<WitnessCertificate> {
    problem.check_budget(budget)?;
    Ok(WitnessCertificate::from_search(
        problem,
        problem.find_bad_coloring(),
    ))
}

/// Whether `D` is a Ramsey witness for the instance.
pub fn check_witness(
    inst: &RamseyInstance,
    d: &FiniteMvAlgebra,
    budget: u128,
) -> Result<WitnessCertificate> {
    solve(&inst.problem(d)?, budget)
}

/// Replays a stored colouring: true iff it leaves no copy monochromatic.
pub fn verify_refutation(
    inst: &RamseyInstance,
    d: &FiniteMvAlgebra,
    coloring: &[u8],
) -> Result<bool> {
    inst.problem(d)?.is_bad(coloring)
}

/// The default candidates `Ł_n^N`, `n` the lcm of the chains of `A` and
/// `B`, for `N = t_B, …, t_B + extra`.
pub fn default_schedule(inst: &RamseyInstance, extra: usize) -> Result<Vec<FiniteMvAlgebra>> {
    let n = inst.a.chain_lcm().lcm(&inst.b.chain_lcm());
    let n = u32::try_from(n).map_err(|_| contract!("lcm overflows"))?;
    let t = inst.b.factor_count();
    (t..=t + extra)
        .map(|k| FiniteMvAlgebra::power(n, k))
        .collect()
}

/// What [`search_witness`] did with one candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CandidateOutcome {
    Verified(WitnessCertificate),
    Refuted(WitnessCertificate),
    OverBudget { needed: u128 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub candidates: Vec<(FiniteMvAlgebra, CandidateOutcome)>,
}

impl SearchReport {
    /// The first verified candidate.
    pub fn witness(&self) -> Option<(&FiniteMvAlgebra, &WitnessCertificate)> {
        self.candidates.iter().find_map(|(d, o)| match o {
            CandidateOutcome::Verified(c) => Some((d, c)),
            _ => None,
        })
    }
}

/// Checks the candidates in order and stops at the first verified one.
/// Candidates over budget are skipped; if every candidate is over budget
/// the search fails with [`Error::Budget`].
pub fn search_witness(
    inst: &RamseyInstance,
    schedule: &[FiniteMvAlgebra],
    budget: u128,
) -> Result<SearchReport> {
    let mut candidates = Vec::new();
    let mut least_needed = None::<u128>;
    let mut any_checked = false;
    for d in schedule {
        let outcome = match check_witness(inst, d, budget) {
            Ok(cert) if cert.is_verified() => CandidateOutcome::Verified(cert),
            Ok(cert) => CandidateOutcome::Refuted(cert),
            Err(Error::Budget { needed, .. }) => {
                least_needed = Some(least_needed.map_or(needed, |n| n.min(needed)));
                CandidateOutcome::OverBudget { needed }
            }
            Err(e) => return Err(e),
        };
        any_checked |= !matches!(outcome, CandidateOutcome::OverBudget { .. });
        let verified = matches!(outcome, CandidateOutcome::Verified(_));
        candidates.push((d.clone(), outcome));
        if verified {
            break;
        }
    }
    match (any_checked, least_needed) {
        (false, Some(needed)) => Err(Error::Budget { needed, budget }),
        _ => Ok(SearchReport { candidates }),
    }
}

/// The dual instance: colour maps `Z → X`, looking for `p: Z → Y` with
/// `{f ∘ p : f: Y → X}` monochromatic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualInstance {
    pub x: MvSpace,
    pub y: MvSpace,
    pub r: usize,
    pub class: MorphismClass,
}

impl DualInstance {
    pub fn new(x: MvSpace, y: MvSpace, r: usize, class: MorphismClass) -> Result<Self> {
        if r < 2 {
            return Err(contract!("need at least two colours, got {r}"));
        }
        if continuous_maps(&y, &x, class.map_mode()).is_empty() {
            return Err(contract!(
                "no {} maps from {y} to {x}",
                class.map_mode().name()
            ));
        }
        Ok(Self { x, y, r, class })
    }

    pub fn problem(&self, z: &MvSpace) -> Result<ColoringProblem> {
        dual_problem(&self.x, &self.y, z, self.r, |s, t| {
            continuous_maps(s, t, self.class.map_mode())
        })
    }
}

fn dual_problem(
    x: &MvSpace,
    y: &MvSpace,
    z: &MvSpace,
    r: usize,
    maps: impl Fn(&MvSpace, &MvSpace) -> Vec<PointMap>,
) -> Result<ColoringProblem> {
    let yx = maps(y, x);
    let zx = maps(z, x);
    let index: BTreeMap<&[usize], usize> = zx
        .iter()
        .enumerate()
        .map(|(i, f)| (f.map.as_slice(), i))
        .collect();
    let mut copies = Vec::new();
    for p in maps(z, y) {
        let copy = yx
            .iter()
            .map(|f| {
                let fp = f.compose(&p)?;
                index
                    .get(fp.map.as_slice())
                    .copied()
                    .ok_or_else(|| contract!("maps are not closed under composition"))
            })
            .collect::<Result<Vec<usize>>>()?;
        copies.push(copy);
    }
    ColoringProblem::new(zx.len(), r, copies)
}

/// Whether `Z` is a Dual Ramsey witness.
pub fn dual_check_witness(
    inst: &DualInstance,
    z: &MvSpace,
    budget: u128,
) -> Result<WitnessCertificate> {
    solve(&inst.problem(z)?, budget)
}

/// The set-level problem: plain maps of the given kind between sets of
/// sizes `x`, `y`, `z`.
pub fn set_problem(
    x: usize,
    y: usize,
    z: usize,
    r: usize,
    class: MorphismClass,
) -> Result<ColoringProblem> {
    let crisp = |n: usize| MvSpace::constant(n, 1);
    let mode = class.map_mode();
    dual_problem(&crisp(x)?, &crisp(y)?, &crisp(z)?, r, |s, t| {
        set_maps(s, t, mode)
    })
}

/// Exhaustive check of a set-level Dual Ramsey witness.
pub fn verify_set_witness(
    x: usize,
    y: usize,
    z: usize,
    r: usize,
    class: MorphismClass,
    budget: u128,
) -> Result<WitnessCertificate> {
    solve(&set_problem(x, y, z, r, class)?, budget)
}

/// Tries `z = y, y + 1, …, max_z` and returns the first verified size.
pub fn search_set_witness(
    x: usize,
    y: usize,
    r: usize,
    class: MorphismClass,
    max_z: usize,
    budget: u128,
) -> Result<Option<(usize, WitnessCertificate)>> {
    let mut any_checked = false;
    let mut least_needed = None;
    for z in y..=max_z {
        match verify_set_witness(x, y, z, r, class, budget) {
            Ok(cert) if cert.is_verified() => return Ok(Some((z, cert))),
            Ok(_) => any_checked = true,
            Err(Error::Budget { needed, .. }) => {
                least_needed.get_or_insert(needed);
            }
            Err(e) => return Err(e),
        }
    }
    match (any_checked, least_needed) {
        (false, Some(needed)) => Err(Error::Budget { needed, budget }),
        _ => Ok(None),
    }
}

/// Comparison of continuous and plain maps `Z → X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpiEqualityReport {
    pub continuous: usize,
    pub set_level: usize,
    /// A plain map of the kind that is not continuous.
    pub witness: Option<PointMap>,
}

impl EpiEqualityReport {
    pub fn equal(&self) -> bool {
        self.witness.is_none() && self.continuous == self.set_level
    }
}

/// Double inclusion between the continuous maps `Z → X` of the given kind
/// and the plain maps of that kind, continuity checked against every open.
pub fn epi_equality_check(z: &MvSpace, x: &MvSpace, mode: MapMode) -> Result<EpiEqualityReport> {
    let continuous = continuous_maps(z, x, mode);
    let plain = set_maps(z, x, mode);
    let mut witness = None;
    for f in &plain {
        if !is_continuous_exhaustive(z, x, &f.map)? {
            witness = Some(f.clone());
            break;
        }
    }
    for f in &continuous {
        if !plain.contains(f) || !is_continuous_exhaustive(z, x, &f.map)? {
            return Err(crate::error::inconsistency!(
                "{:?} is continuous by label but not by opens",
                f.map
            ));
        }
    }
    Ok(EpiEqualityReport {
        continuous: continuous.len(),
        set_level: plain.len(),
        witness,
    })
}

/// The labeled witness built from a set-level witness, with the checks the
/// construction relies on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransferReport {
    pub n: u32,
    pub z: MvSpace,
    pub set_certificate: WitnessCertificate,
    /// Every plain map `Z → Y` of the kind is continuous, so whichever map
    /// a colouring selects at set level is a morphism.
    pub maps_to_y_continuous: bool,
    pub epi_x: EpiEqualityReport,
    pub epi_y: EpiEqualityReport,
    /// For every `p: Z → Y` and `f: Y → X` in the class, `f ∘ p` is a
    /// morphism `Z → X`, and each copy is contained in the set-level copy.
    pub families_included: bool,
}

impl TransferReport {
    pub fn passed(&self) -> bool {
        self.maps_to_y_continuous
            && self.epi_x.equal()
            && self.epi_y.equal()
            && self.families_included
    }
}

/// Turns a verified set-level witness of size `z_size` for `(|X|, |Y|, r)`
/// into the space of `z_size` points all labeled `lcm(n_X, n_Y)`, where
/// `n_X`, `n_Y` are the lcms of the labels.
pub fn transfer_witness(
    inst: &DualInstance,
    z_size: usize,
    budget: u128,
) -> Result<TransferReport> {
    let set_certificate = verify_set_witness(
        inst.x.point_count(),
        inst.y.point_count(),
        z_size,
        inst.r,
        inst.class,
        budget,
    )?;
    if !set_certificate.is_verified() {
        return Err(contract!(
            "{z_size} points is not a set-level witness for ({}, {}, {})",
            inst.x.point_count(),
            inst.y.point_count(),
            inst.r
        ));
    }
    let n = inst.x.label_lcm().lcm(&inst.y.label_lcm());
    let n = u32::try_from(n).map_err(|_| contract!("label lcm overflows"))?;
    let z = MvSpace::constant(z_size, n)?;
    let mode = inst.class.map_mode();
    let mut maps_to_y_continuous = true;
    for p in set_maps(&z, &inst.y, mode) {
        maps_to_y_continuous &= is_continuous_exhaustive(&z, &inst.y, &p.map)?;
    }
    let epi_x = epi_equality_check(&z, &inst.x, mode)?;
    let epi_y = epi_equality_check(&z, &inst.y, mode)?;
    let mv_yx = continuous_maps(&inst.y, &inst.x, mode);
    let set_yx = set_maps(&inst.y, &inst.x, mode);
    let mv_zx = continuous_maps(&z, &inst.x, mode);
    let mut families_included = mv_yx.iter().all(|f| set_yx.contains(f));
    for p in continuous_maps(&z, &inst.y, mode) {
        for f in &mv_yx {
            families_included &= mv_zx.contains(&f.compose(&p)?);
        }
    }
    Ok(TransferReport {
        n,
        z,
        set_certificate,
        maps_to_y_continuous,
        epi_x,
        epi_y,
        families_included,
    })
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
    fn least_bad_coloring() {
        // Copies {0,1} and {1,2}: the least bad 2-colouring is 010.
        let p = ColoringProblem::new(3, 2, vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(p.find_bad_coloring().bad_coloring, Some(vec![0, 1, 0]));
        // A single copy covering everything cannot avoid monochromatic with
        // one colour.
        let p = ColoringProblem::new(2, 1, vec![vec![0, 1]]).unwrap();
        assert_eq!(p.find_bad_coloring().bad_coloring, None);
    }

    #[test]
    fn prefix_search_partitions() {
        let p = ColoringProblem::new(4, 2, vec![vec![0, 1, 2], vec![1, 2, 3], vec![0, 3]]).unwrap();
        let whole = p.find_bad_coloring().bad_coloring;
        let parts: Vec<Option<Vec<u8>>> = [[0u8, 0], [0, 1], [1, 0], [1, 1]]
            .iter()
            .map(|pre| p.find_bad_coloring_with_prefix(pre).unwrap().bad_coloring)
            .collect();
        assert_eq!(parts.into_iter().flatten().min(), whole);
    }

    #[test]
    fn single_morphism_verifies() {
        let inst =
            RamseyInstance::new(alg(&[2]), alg(&[2, 2]), 2, MorphismClass::Embeddings).unwrap();
        let cert = check_witness(&inst, &alg(&[2, 2]), DEFAULT_COLORING_BUDGET).unwrap();
        assert!(cert.is_verified());
        assert_eq!(cert.positions, 1);
    }

    #[test]
    fn boolean_square_into_cube_is_refuted() {
        let inst = RamseyInstance::new(alg(&[1, 1]), alg(&[1, 1, 1]), 2, MorphismClass::Embeddings)
            .unwrap();
        let d = alg(&[1, 1, 1]);
        let cert = check_witness(&inst, &d, DEFAULT_COLORING_BUDGET).unwrap();
        assert_eq!(cert.verdict, Verdict::Refuted);
        assert_eq!(cert.positions, 6);
        let coloring = cert.coloring.unwrap();
        assert!(verify_refutation(&inst, &d, &coloring).unwrap());
        assert!(coloring.contains(&0) && coloring.contains(&1));
    }

    #[test]
    fn empty_hom_set_is_rejected() {
        assert!(RamseyInstance::new(alg(&[2]), alg(&[3]), 2, MorphismClass::Embeddings).is_err());
        assert!(RamseyInstance::new(alg(&[1]), alg(&[1]), 1, MorphismClass::Embeddings).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let inst = RamseyInstance::new(alg(&[1, 1]), alg(&[1, 1, 1]), 2, MorphismClass::Embeddings)
            .unwrap();
        let err =
            check_witness(&inst, &alg(&[1, 1, 1, 1, 1]), DEFAULT_COLORING_BUDGET).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn dual_side_matches_algebra_side() {
        let inst = RamseyInstance::new(alg(&[1, 1]), alg(&[1, 1, 1]), 2, MorphismClass::Embeddings)
            .unwrap();
        let dual = DualInstance::new(
            space(&[1, 1]),
            space(&[1, 1, 1]),
            2,
            MorphismClass::Embeddings,
        )
        .unwrap();
        for n in 3..=4 {
            let d = FiniteMvAlgebra::power(1, n).unwrap();
            let z = MvSpace::constant(n, 1).unwrap();
            assert_eq!(
                check_witness(&inst, &d, DEFAULT_COLORING_BUDGET).unwrap(),
                dual_check_witness(&dual, &z, DEFAULT_COLORING_BUDGET).unwrap()
            );
        }
    }

    #[test]
    fn epi_equality_examples() {
        let r =
            epi_equality_check(&space(&[6, 6, 6]), &space(&[2, 3]), MapMode::Surjective).unwrap();
        assert!(r.equal());
        assert_eq!(r.continuous, 6);
        let r = epi_equality_check(&space(&[2, 2]), &space(&[3]), MapMode::Surjective).unwrap();
        assert!(!r.equal());
        assert_eq!((r.continuous, r.set_level), (0, 1));
        let r = epi_equality_check(&space(&[1, 1]), &space(&[1, 1]), MapMode::Surjective).unwrap();
        assert!(r.equal());
    }

    #[test]
    fn ordered_transfer() {
        let dual = DualInstance::new(
            space(&[1, 2]),
            space(&[4, 1, 2]),
            2,
            MorphismClass::OrderedEmbeddings,
        )
        .unwrap();
        assert!(transfer_witness(&dual, 3, DEFAULT_COLORING_BUDGET).is_err());
    }
}
