//! Acceptance run: one line per criterion, nonzero exit if any line fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use mvf::selftest::profiles;
use mvf_core::axioms::{axioms_check, Samples};
use mvf_core::cantor::{
    embed_algebra_in_model, extend_isomorphism, generated_model_subalgebra, DyadicElement,
    ModelIso, ModelSubalgebra, Rational, TreePair, Word, DEFAULT_DENOMINATOR_CAP,
};
use mvf_core::duality::{
    continuous_maps, is_continuous_exhaustive, max_spectrum, naturality_check, round_trip_algebra,
    round_trip_space, set_maps, MapMode, MvSpace,
};
use mvf_core::fraisse::{
    algebras_up_to, amalgamate, extension_property_check, generic_chain, joint_embed, VFormation,
};
use mvf_core::hom::{brute_force_homs, enumerate_homs, DEFAULT_ORACLE_BUDGET};
use mvf_core::ramsey::{
    dual_check_witness, epi_equality_check, search_set_witness, search_witness, transfer_witness,
    verify_refutation, CandidateOutcome, DualInstance, MorphismClass, RamseyInstance, SearchReport,
    DEFAULT_COLORING_BUDGET,
};
use mvf_core::table::OperationTable;
use mvf_core::transfer::{faithfulness_check, functor_laws_check};
use mvf_core::{Error, FiniteMvAlgebra, Hom, HomMode, MvElement};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn core<T>(r: mvf_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn alg(chains: &[u32]) -> FiniteMvAlgebra {
    FiniteMvAlgebra::new(chains).expect("valid profile")
}

fn sorted_tables(homs: &[Hom]) -> Vec<Vec<usize>> {
    let mut tables: Vec<Vec<usize>> = homs.iter().map(Hom::element_table).collect();
    tables.sort();
    tables
}

fn injective(t: &[usize]) -> bool {
    t.iter().collect::<BTreeSet<_>>().len() == t.len()
}

fn criterion_1() -> Check {
    let algebras = profiles(3, 4);
    ensure!(
        algebras.len() == 34,
        "expected 34 profiles, got {}",
        algebras.len()
    );
    let mut triples = 0u64;
    let mut largest = 0;
    for a in &algebras {
        let table = core(OperationTable::from_algebra(a))?;
        let report = axioms_check(&table, &Samples::Exhaustive);
        ensure!(report.passed(), "{a}: {:?}", report.failure);
        ensure!(
            report.triples_checked == (table.size() as u64).pow(3),
            "{a}: not every triple checked"
        );
        triples += report.triples_checked;
        largest = largest.max(table.size());
    }
    Ok(format!(
        "{} algebras, largest {largest} elements, {triples} triples",
        algebras.len()
    ))
}

fn criterion_2() -> Check {
    let algebras = algebras_up_to(36);
    let mut pairs = 0;
    for a in &algebras {
        for b in &algebras {
            let oracle = core(brute_force_homs(a, b, DEFAULT_ORACLE_BUDGET))?;
            for mode in HomMode::ALL {
                let expected: Vec<Vec<usize>> = oracle
                    .iter()
                    .filter(|t| {
                        let surjective =
                            t.iter().collect::<BTreeSet<_>>().len() as u128 == b.cardinality();
                        match mode {
                            HomMode::All => true,
                            HomMode::Embeddings => injective(t),
                            HomMode::Surjections => surjective,
                            HomMode::Isomorphisms => injective(t) && surjective,
                        }
                    })
                    .cloned()
                    .collect();
                let ours = sorted_tables(&enumerate_homs(a, b, mode));
                ensure!(
                    ours == expected,
                    "{a} → {b} ({}): {} vs oracle {}",
                    mode.name(),
                    ours.len(),
                    expected.len()
                );
            }
            pairs += 1;
        }
    }
    for m in 1..=12u32 {
        for n in 1..=12u32 {
            let (lm, ln) = (alg(&[m]), alg(&[n]));
            let count = enumerate_homs(&lm, &ln, HomMode::All).len();
            let oracle = core(brute_force_homs(&lm, &ln, DEFAULT_ORACLE_BUDGET))?.len();
            let divides = usize::from(n % m == 0);
            ensure!(
                count == divides && oracle == divides,
                "Ł{m} → Ł{n}: {count} homs, oracle {oracle}"
            );
        }
    }
    Ok(format!(
        "{} algebras, {pairs} pairs × 4 modes, 144 chain pairs",
        algebras.len()
    ))
}

fn criterion_3() -> Check {
    let algebras = profiles(4, 6);
    for a in &algebras {
        ensure!(
            core(round_trip_algebra(a))?.isomorphic,
            "Clop(Max {a}) ≇ {a}"
        );
        let s = core(max_spectrum(a))?;
        ensure!(
            core(round_trip_space(&s))?.isomorphic,
            "Max(Clop {s}) ≇ {s}"
        );
    }
    let mut embeddings = 0;
    for a in &algebras {
        for b in &algebras {
            let report = core(naturality_check(a, b))?;
            ensure!(report.passed(), "{a} → {b}: {report:?}");
            embeddings += report.embeddings;
        }
    }
    // Continuity checked against every open, independently of labels.
    let small = profiles(3, 4);
    for a in &small {
        for b in &small {
            let (sa, sb) = (core(max_spectrum(a))?, core(max_spectrum(b))?);
            let oracle = core(brute_force_homs(a, b, DEFAULT_ORACLE_BUDGET))?;
            let embeds = oracle.iter().filter(|t| injective(t)).count();
            let mut continuous = 0;
            let mut surjective = 0;
            for f in set_maps(&sb, &sa, MapMode::All) {
                if core(is_continuous_exhaustive(&sb, &sa, &f.map))? {
                    continuous += 1;
                    surjective += usize::from(f.is_surjective());
                }
            }
            ensure!(
                continuous == oracle.len(),
                "{a} → {b}: {continuous} continuous maps, {} homs",
                oracle.len()
            );
            ensure!(
                surjective == embeds,
                "{a} → {b}: {surjective} surjective maps, {embeds} embeddings"
            );
            ensure!(
                continuous_maps(&sb, &sa, MapMode::Surjective).len() == embeds,
                "{a} → {b}: enumeration"
            );
        }
    }
    Ok(format!(
        "{} round trips, {} naturality pairs ({embeddings} embeddings matched), {} oracle pairs",
        algebras.len(),
        algebras.len() * algebras.len(),
        small.len() * small.len()
    ))
}

fn random_algebra(rng: &mut ChaCha8Rng) -> FiniteMvAlgebra {
    let t = rng.gen_range(1..=2);
    let chains: Vec<u32> = (0..t).map(|_| rng.gen_range(1..=4)).collect();
    alg(&chains)
}

fn random_extension(rng: &mut ChaCha8Rng, a: &FiniteMvAlgebra) -> Hom {
    let t = a.factor_count();
    let mut sources: Vec<usize> = (0..t).collect();
    for _ in 0..rng.gen_range(0..=2) {
        sources.push(rng.gen_range(0..t));
    }
    let mut factors: Vec<(u32, usize)> = sources
        .into_iter()
        .map(|i| (a.chains()[i] * rng.gen_range(1..=2), i))
        .collect();
    factors.sort();
    let chains: Vec<u32> = factors.iter().map(|f| f.0).collect();
    Hom::new(
        a.clone(),
        alg(&chains),
        factors.iter().map(|f| f.1).collect(),
    )
    .expect("valid extension")
}

fn injective_on_elements(h: &Hom) -> bool {
    let images: BTreeSet<MvElement> = h
        .domain()
        .elements()
        .map(|x| h.apply_unchecked(&x))
        .collect();
    images.len() as u128 == h.domain().cardinality()
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..200 {
        let a = random_algebra(&mut rng);
        let (f, g) = (
            random_extension(&mut rng, &a),
            random_extension(&mut rng, &a),
        );
        let v = core(VFormation::new(f.clone(), g.clone()))?;
        let m = core(amalgamate(&v))?;
        for x in a.elements() {
            let left = m.h.apply_unchecked(&f.apply_unchecked(&x));
            let right = m.k.apply_unchecked(&g.apply_unchecked(&x));
            ensure!(left == right, "h∘f ≠ k∘g at {x} for {f:?}, {g:?}");
        }
        ensure!(
            m.h.is_injective() && m.k.is_injective(),
            "amalgam legs are not embeddings"
        );
    }
    let algebras = algebras_up_to(16);
    for a in &algebras {
        for b in &algebras {
            let j = core(joint_embed(a, b))?;
            ensure!(
                injective_on_elements(&j.f) && injective_on_elements(&j.g),
                "joint embedding of {a}, {b}"
            );
        }
    }
    let chain = core(generic_chain(5))?;
    let report = core(extension_property_check(&chain, 4, 8))?;
    ensure!(
        report.passed(),
        "{} unrealized extensions, first {:?}",
        report.unrealized.len(),
        report.unrealized.first()
    );
    Ok(format!(
        "200 amalgams, {} joint embeddings, extension property at bound 4 ({} pairs)",
        algebras.len() * algebras.len(),
        report.pairs_checked
    ))
}

fn q(n: u64, d: u64) -> Rational {
    Rational::new(n, d)
}

fn antichains(root: Word, depth: u32) -> Vec<Vec<Word>> {
    let mut out = vec![Vec::new(), vec![root]];
    if root.len() < depth {
        let left = antichains(root.child(false), depth);
        let right = antichains(root.child(true), depth);
        for l in &left {
            for r in &right {
                if !l.is_empty() || !r.is_empty() {
                    out.push(l.iter().chain(r).copied().collect());
                }
            }
        }
    }
    out
}

fn farey(max_denominator: u64) -> Vec<Rational> {
    let set: BTreeSet<Rational> = (1..=max_denominator)
        .flat_map(|d| (0..=d).map(move |n| q(n, d)))
        .collect();
    set.into_iter().collect()
}

fn covers(u: &[Word], p: &Word) -> bool {
    u.iter().any(|c| c.is_prefix_of(p))
}

fn lcm(a: u64, b: u64) -> u64 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

fn random_code(rng: &mut ChaCha8Rng, size: usize, max_depth: u32) -> Vec<Word> {
    let mut code = vec![Word::EMPTY];
    while code.len() < size {
        let splittable: Vec<usize> = (0..code.len())
            .filter(|&i| code[i].len() < max_depth)
            .collect();
        let leaf = code.swap_remove(*splittable.choose(rng).expect("room to split"));
        code.push(leaf.child(false));
        code.push(leaf.child(true));
    }
    code
}

fn random_subalgebra(
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<DyadicElement>, ModelSubalgebra), String> {
    loop {
        let gens: Vec<DyadicElement> = (0..rng.gen_range(1..=2))
            .map(|_| {
                let depth = rng.gen_range(0..=3);
                let denominator = rng.gen_range(1..=3);
                DyadicElement::random(rng, depth, denominator)
            })
            .collect();
        let patterns: BTreeSet<Vec<Rational>> = Word::all_of_length(3)
            .map(|p| {
                gens.iter()
                    .map(|g| g.value_on(&p).expect("depth ≤ 3"))
                    .collect()
            })
            .collect();
        let bound: u64 = patterns
            .iter()
            .map(|t| t.iter().fold(1, |l, v| lcm(l, *v.denom())) + 1)
            .product();
        if bound > 1024 {
            continue;
        }
        match generated_model_subalgebra(&gens, DEFAULT_DENOMINATOR_CAP) {
            Ok(sub) => return Ok((gens, sub)),
            Err(Error::Budget { .. }) => continue,
            Err(e) => return Err(e.to_string()),
        }
    }
}

fn criterion_5() -> Check {
    let points: Vec<Word> = Word::all_of_length(3).collect();
    let values = farey(6);
    let codes = antichains(Word::EMPTY, 3);
    for u in &codes {
        for &v in &values {
            let neg = core(DyadicElement::basic(v, u))?.neg();
            for p in &points {
                let expected = if covers(u, p) { q(1, 1) - v } else { q(1, 1) };
                ensure!(neg.value_on(p) == Some(expected), "¬({v} on {u:?}) at {p}");
            }
        }
    }
    // Basic elements depend on U only through the depth-3 points it covers.
    let sets: Vec<Vec<Word>> = (0u32..256)
        .map(|m| {
            (0..8)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| points[i])
                .collect()
        })
        .collect();
    let basics: Vec<Vec<DyadicElement>> = sets
        .iter()
        .map(|u| {
            values
                .iter()
                .map(|&v| DyadicElement::basic(v, u))
                .collect::<mvf_core::Result<_>>()
        })
        .collect::<mvf_core::Result<_>>()
        .map_err(|e| e.to_string())?;
    let mut sums = 0u64;
    for (iu, u) in sets.iter().enumerate() {
        for (iv, v) in sets.iter().enumerate() {
            for (a, &qa) in values.iter().enumerate() {
                for (b, &qb) in values.iter().enumerate() {
                    let sum = basics[iu][a].oplus(&basics[iv][b]);
                    for p in &points {
                        let expected = match (covers(u, p), covers(v, p)) {
                            (true, true) => (qa + qb).min(q(1, 1)),
                            (true, false) => qa,
                            (false, true) => qb,
                            (false, false) => q(0, 1),
                        };
                        ensure!(
                            sum.value_on(p) == Some(expected),
                            "{} ⊕ {} at {p}",
                            basics[iu][a],
                            basics[iv][b]
                        );
                    }
                    sums += 1;
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xca7);
    let (mut cases, mut uneven) = (0, 0);
    while cases < 100 {
        let (generators, d) = random_subalgebra(&mut rng)?;
        let f = if cases % 2 == 0 {
            let size = rng.gen_range(1..=8);
            let source = random_code(&mut rng, size, 3);
            let mut target = random_code(&mut rng, size, 3);
            target.shuffle(&mut rng);
            let moved = core(TreePair::new(source, target))?;
            let pairs: Vec<(DyadicElement, DyadicElement)> = generators
                .iter()
                .map(|x| (x.clone(), moved.apply(x)))
                .collect();
            let images: Vec<DyadicElement> = pairs.iter().map(|p| p.1.clone()).collect();
            let e = core(generated_model_subalgebra(&images, DEFAULT_DENOMINATOR_CAP))?;
            core(ModelIso::from_generator_images(d, e, &pairs))?
        } else {
            let Ok(copy) = embed_algebra_in_model(d.algebra()) else {
                continue;
            };
            let isos = enumerate_homs(
                d.algebra(),
                copy.subalgebra.algebra(),
                HomMode::Isomorphisms,
            );
            let hom = isos
                .choose(&mut rng)
                .ok_or("no isomorphism onto the model copy")?
                .clone();
            core(ModelIso::new(d, copy.subalgebra, hom))?
        };
        cases += 1;
        uneven += usize::from(f.codomain.blocks().iter().enumerate().any(|(j, e)| {
            f.domain.blocks()[f.hom.sigma()[j]].cylinders.len() != e.cylinders.len()
        }));
        let g = core(extend_isomorphism(&f))?;
        for x in f.domain.elements() {
            ensure!(
                g.apply(&core(f.apply(x))?) == *x,
                "{g} does not extend the isomorphism at {x}"
            );
        }
    }
    ensure!(
        uneven >= 10,
        "only {uneven} of 100 isomorphisms match blocks of unequal cylinder counts"
    );
    Ok(format!(
        "{} negations, {sums} sums, 100 extended isomorphisms ({uneven} with unequal block counts)",
        codes.len() * values.len()
    ))
}

fn outcomes(report: &SearchReport) -> String {
    report
        .candidates
        .iter()
        .map(|(d, o)| {
            let what = match o {
                CandidateOutcome::Verified(_) => "verified".to_owned(),
                CandidateOutcome::Refuted(_) => "refuted".to_owned(),
                CandidateOutcome::OverBudget { needed } => {
                    format!("over budget ({needed} colourings)")
                }
            };
            format!("N={} {what}", d.factor_count())
        })
        .collect::<Vec<_>>()
        .join(", ")
}

/// The least verified power in `N = 3..=max_n` for the class, over both
/// the crisp and the labelled base.
fn desk_instance(class: MorphismClass, max_n: usize, budget: u128) -> Check {
    let mut found = Vec::new();
    let mut details = Vec::new();
    for base in [1, 2] {
        let inst = core(RamseyInstance::new(
            alg(&[base, base]),
            alg(&[base, base, base]),
            2,
            class,
        ))?;
        let schedule: Vec<FiniteMvAlgebra> = (3..=max_n)
            .map(|n| FiniteMvAlgebra::power(base, n))
            .collect::<mvf_core::Result<_>>()
            .map_err(|e| e.to_string())?;
        let report = match search_witness(&inst, &schedule, budget) {
            Ok(r) => r,
            Err(e) => return Err(format!("Ł{base}: {e}")),
        };
        for (d, o) in &report.candidates {
            if let CandidateOutcome::Refuted(c) = o {
                let coloring = c
                    .coloring
                    .as_deref()
                    .ok_or("refutation without colouring")?;
                ensure!(
                    core(verify_refutation(&inst, d, coloring))?,
                    "refutation of {d} does not replay"
                );
            }
        }
        details.push(format!("Ł{base}: {}", outcomes(&report)));
        found.push(report.witness().map(|(d, _)| d.factor_count()));
    }
    let summary = details.join("; ");
    match found.as_slice() {
        [Some(n), Some(m)] if n == m => Ok(format!("N={n} for both bases; {summary}")),
        _ => Err(summary),
    }
}

fn criterion_6() -> Check {
    let result = desk_instance(MorphismClass::Embeddings, 6, DEFAULT_COLORING_BUDGET);
    if result.is_ok() {
        return result;
    }
    // Past the budget, every power is still refuted by colouring each
    // embedding by the image of the first factor.
    let inst = core(RamseyInstance::new(
        alg(&[1, 1]),
        alg(&[1, 1, 1]),
        2,
        MorphismClass::Embeddings,
    ))?;
    let mut beyond = Vec::new();
    for n in 5..=6 {
        let d = core(FiniteMvAlgebra::power(1, n))?;
        let cert = core(mvf_core::ramsey::check_witness(&inst, &d, u128::MAX))?;
        beyond.push(format!("N={n} {}", cert.verdict.name()));
    }
    Err(format!(
        "no verified N for unordered embeddings: {}; unbounded: {}",
        result.unwrap_err(),
        beyond.join(", ")
    ))
}

fn criterion_6_ordered() -> Check {
    desk_instance(MorphismClass::OrderedEmbeddings, 7, 1 << 31)
}

/// Rigid surjections `z → x` counted directly: surjective with first
/// occurrences in increasing order.
fn rigid_surjection_count(z: usize, x: usize) -> usize {
    (0..x.pow(z as u32))
        .filter(|&code| {
            let mut c = code;
            let mut next = 0;
            for _ in 0..z {
                let v = c % x;
                c /= x;
                if v == next {
                    next += 1;
                } else if v > next {
                    return false;
                }
            }
            next == x
        })
        .count()
}

fn transfer_pairs() -> [(Vec<u32>, Vec<u32>, u32); 2] {
    [
        (vec![1, 1], vec![1, 1, 1], 1),
        (vec![2, 2], vec![4, 4, 4], 4),
    ]
}

fn criterion_7_for(class: MorphismClass, mode: MapMode) -> Check {
    let set = core(search_set_witness(2, 3, 2, class, 6, 1 << 62))?;
    let Some((z, _)) = set else {
        let mut errors = Vec::new();
        for (x, y, _) in transfer_pairs() {
            let inst = core(DualInstance::new(
                core(MvSpace::new(x))?,
                core(MvSpace::new(y))?,
                2,
                class,
            ))?;
            if let Err(e) = transfer_witness(&inst, 6, 1 << 62) {
                errors.push(e.to_string());
            }
        }
        return Err(format!(
            "no set-level witness with z ≤ 6; transfer_witness: {}",
            errors.join("; ")
        ));
    };
    let mut lines = Vec::new();
    for (x, y, n) in transfer_pairs() {
        let (x, y) = (core(MvSpace::new(x))?, core(MvSpace::new(y))?);
        let inst = core(DualInstance::new(x.clone(), y.clone(), 2, class))?;
        let report = core(transfer_witness(&inst, z, 1 << 62))?;
        ensure!(report.passed(), "{x}, {y}: {report:?}");
        ensure!(
            report.n == n && report.z == core(MvSpace::constant(z, n))?,
            "{x}, {y}: witness {}",
            report.z
        );
        ensure!(
            core(dual_check_witness(&inst, &report.z, 1 << 62))?.is_verified(),
            "dual check of {}",
            report.z
        );
        for target in [&x, &y] {
            let epi = core(epi_equality_check(&report.z, target, mode))?;
            ensure!(epi.equal(), "{} → {target}: {epi:?}", report.z);
            if mode == MapMode::RigidSurjective {
                let count = rigid_surjection_count(z, target.point_count());
                ensure!(
                    epi.continuous == count,
                    "{} → {target}: {} maps, {count} counted",
                    report.z,
                    epi.continuous
                );
            }
        }
        lines.push(format!("n={n} Z={}", report.z));
    }
    Ok(format!("set witness z={z}; {}", lines.join(", ")))
}

fn criterion_7() -> Check {
    criterion_7_for(MorphismClass::Embeddings, MapMode::Surjective)
}

fn criterion_7_ordered() -> Check {
    criterion_7_for(MorphismClass::OrderedEmbeddings, MapMode::RigidSurjective)
}

fn criterion_8() -> Check {
    let algebras = profiles(3, 4);
    let laws = core(functor_laws_check(&algebras))?;
    ensure!(laws.passed(), "{}", laws.failure.unwrap_or_default());
    let mut non_surjective = 0;
    for a in &algebras {
        for b in &algebras {
            let report = core(faithfulness_check(a, b))?;
            // Element-level oracle: restrictions to the idempotents.
            let central = a.central_elements();
            let homs = enumerate_homs(a, b, HomMode::Embeddings);
            let restricted: BTreeSet<Vec<MvElement>> = homs
                .iter()
                .map(|h| central.iter().map(|x| h.apply_unchecked(x)).collect())
                .collect();
            ensure!(
                report.injective && restricted.len() == homs.len(),
                "restriction {a} → {b} is not injective"
            );
            non_surjective += usize::from(!report.surjective());
        }
    }
    let witness = core(faithfulness_check(&alg(&[2]), &alg(&[3])))?;
    ensure!(
        witness.image == 0 && witness.codomain == 1,
        "Ł2 → Ł3: image {}, codomain {}",
        witness.image,
        witness.codomain
    );
    Ok(format!(
        "{} identities, {} compositions, {} left inverses; {} faithful pairs ({non_surjective} not full); \
         Ł2 vs Ł3: image 0 of 1, not surjective",
        laws.identities,
        laws.compositions,
        laws.left_inverse,
        algebras.len() * algebras.len()
    ))
}

fn main() {
    let minute = Duration::from_secs(60);
    let criteria: [Criterion; 10] = [
        ("criterion 1", criterion_1, minute),
        ("criterion 2", criterion_2, 5 * minute),
        ("criterion 3", criterion_3, minute),
        ("criterion 4", criterion_4, 2 * minute),
        ("criterion 5", criterion_5, 2 * minute),
        ("criterion 6", criterion_6, 10 * minute),
        (
            "criterion 6, ordered embeddings (supplementary)",
            criterion_6_ordered,
            10 * minute,
        ),
        ("criterion 7", criterion_7, 5 * minute),
        (
            "criterion 7, rigid surjections (supplementary)",
            criterion_7_ordered,
            5 * minute,
        ),
        ("criterion 8", criterion_8, minute),
    ];
    let mut failed = 0;
    for (label, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(d) if elapsed < limit => (true, d),
            Ok(d) => (false, format!("{d}; over the {} s limit", limit.as_secs())),
            Err(d) => (false, d),
        };
        failed += usize::from(!passed);
        println!(
            "{label}: {} ({detail}, {:.2} s)",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} line(s) failed");
        std::process::exit(1);
    }
}
