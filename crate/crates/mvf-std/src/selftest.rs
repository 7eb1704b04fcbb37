//! Invariant suites run by `mvf selftest`.

use std::collections::BTreeSet;

use mvf_core::axioms::{axioms_check, Samples};
use mvf_core::cantor::{
    embed_algebra_in_model, extend_isomorphism, DyadicElement, ModelIso, Rational, TreePair, Word,
};
use mvf_core::duality::{naturality_check, round_trip_algebra};
use mvf_core::fraisse::{
    algebras_up_to, amalgamate, extension_property_check, generic_chain, joint_embed,
    square_commutes, VFormation,
};
use mvf_core::hom::{brute_force_homs, enumerate_homs, DEFAULT_ORACLE_BUDGET};
use mvf_core::ramsey::{check_witness, verify_refutation, MorphismClass, RamseyInstance};
use mvf_core::table::OperationTable;
use mvf_core::transfer::{faithfulness_check, functor_laws_check};
use mvf_core::{FiniteMvAlgebra, Hom, HomMode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Level {
    Quick,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Outcome = Result<String, String>;
type Suite = (&'static str, fn(&Bounds) -> Outcome);

struct Bounds {
    factors: usize,
    chain: u32,
    hom_size: u128,
    divisibility: u32,
    amalgams: usize,
    chain_stages: usize,
    ep_bound: u128,
    ramsey_power: usize,
}

fn bounds(level: Level) -> Bounds {
    match level {
        Level::Quick => Bounds {
            factors: 2,
            chain: 3,
            hom_size: 12,
            divisibility: 6,
            amalgams: 20,
            chain_stages: 4,
            ep_bound: 3,
            ramsey_power: 5,
        },
        Level::Full => Bounds {
            factors: 3,
            chain: 4,
            hom_size: 36,
            divisibility: 12,
            amalgams: 200,
            chain_stages: 5,
            ep_bound: 4,
            ramsey_power: 6,
        },
    }
}

pub fn profiles(max_factors: usize, max_chain: u32) -> Vec<FiniteMvAlgebra> {
    fn grow(
        prefix: &mut Vec<u32>,
        max_factors: usize,
        max_chain: u32,
        out: &mut Vec<FiniteMvAlgebra>,
    ) {
        if !prefix.is_empty() {
            out.push(FiniteMvAlgebra::new(prefix).expect("positive profile"));
        }
        if prefix.len() == max_factors {
            return;
        }
        for n in prefix.last().copied().unwrap_or(1)..=max_chain {
            prefix.push(n);
            grow(prefix, max_factors, max_chain, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), max_factors, max_chain, &mut out);
    out
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn axioms(b: &Bounds) -> Outcome {
    let algebras = profiles(b.factors, b.chain);
    let mut triples = 0;
    for a in &algebras {
        let report = axioms_check(
            &OperationTable::from_algebra(a).map_err(err)?,
            &Samples::Exhaustive,
        );
        if let Some(f) = report.failure {
            return Err(format!("{a}: {:?} fails at {:?}", f.law, f.witness));
        }
        triples += report.triples_checked;
    }
    Ok(format!("{} algebras, {triples} triples", algebras.len()))
}

fn homs(b: &Bounds) -> Outcome {
    let algebras = algebras_up_to(b.hom_size);
    for a in &algebras {
        for c in &algebras {
            let oracle = brute_force_homs(a, c, DEFAULT_ORACLE_BUDGET).map_err(err)?;
            let mut ours: Vec<Vec<usize>> = enumerate_homs(a, c, HomMode::All)
                .iter()
                .map(Hom::element_table)
                .collect();
            ours.sort();
            if ours != oracle {
                return Err(format!(
                    "{a} → {c}: {} homs, oracle {}",
                    ours.len(),
                    oracle.len()
                ));
            }
        }
    }
    for m in 1..=b.divisibility {
        for n in 1..=b.divisibility {
            let count = enumerate_homs(
                &FiniteMvAlgebra::chain(m).map_err(err)?,
                &FiniteMvAlgebra::chain(n).map_err(err)?,
                HomMode::All,
            )
            .len();
            if count != usize::from(n % m == 0) {
                return Err(format!("Ł{m} → Ł{n}: {count} homs"));
            }
        }
    }
    Ok(format!("{} algebras pairwise", algebras.len()))
}

fn duality(b: &Bounds) -> Outcome {
    let algebras = profiles(b.factors + 1, b.chain + 2);
    for a in &algebras {
        if !round_trip_algebra(a).map_err(err)?.isomorphic {
            return Err(format!("{a} does not come back"));
        }
    }
    let small = profiles(b.factors, b.chain);
    for a in &small {
        for c in &small {
            let report = naturality_check(a, c).map_err(err)?;
            if !report.passed() {
                return Err(format!("{a} → {c}: {report:?}"));
            }
        }
    }
    Ok(format!(
        "{} round trips, {} naturality pairs",
        algebras.len(),
        small.len() * small.len()
    ))
}

fn random_extension(rng: &mut ChaCha8Rng, a: &FiniteMvAlgebra) -> mvf_core::Result<Hom> {
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
        FiniteMvAlgebra::new(&chains)?,
        factors.iter().map(|f| f.1).collect(),
    )
}

fn fraisse(b: &Bounds) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..b.amalgams {
        let t = rng.gen_range(1..=2);
        let chains: Vec<u32> = (0..t).map(|_| rng.gen_range(1..=4)).collect();
        let a = FiniteMvAlgebra::new(&chains).map_err(err)?;
        let v = VFormation::new(
            random_extension(&mut rng, &a).map_err(err)?,
            random_extension(&mut rng, &a).map_err(err)?,
        )
        .map_err(err)?;
        let m = amalgamate(&v).map_err(err)?;
        if !square_commutes(&v, &m).map_err(err)? {
            return Err(format!("amalgam of {v:?} does not commute"));
        }
    }
    for a in algebras_up_to(9) {
        for c in algebras_up_to(9) {
            let j = joint_embed(&a, &c).map_err(err)?;
            if !j.f.is_injective() || !j.g.is_injective() {
                return Err(format!("joint embedding of {a}, {c} is not injective"));
            }
        }
    }
    let chain = generic_chain(b.chain_stages).map_err(err)?;
    let report = extension_property_check(&chain, b.ep_bound, 4).map_err(err)?;
    if !report.passed() {
        return Err(format!(
            "generic chain misses {} extensions",
            report.unrealized.len()
        ));
    }
    Ok(format!(
        "{} amalgams, extension property of {} stages at bound {} ({} pairs)",
        b.amalgams, b.chain_stages, b.ep_bound, report.pairs_checked
    ))
}

fn cantor(b: &Bounds) -> Outcome {
    let depth = if b.factors > 2 { 3 } else { 2 };
    let points: Vec<Word> = Word::all_of_length(depth).collect();
    let values: BTreeSet<Rational> = (1..=6u64)
        .flat_map(|d| (0..=d).map(move |n| Rational::new(n, d)))
        .collect();
    let mut checked = 0;
    for mask in 0u32..1 << points.len() {
        let u: Vec<Word> = (0..points.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| points[i])
            .collect();
        for &q in &values {
            let x = DyadicElement::basic(q, &u).map_err(err)?;
            let neg = x.neg();
            for (i, p) in points.iter().enumerate() {
                let expected = if mask >> i & 1 == 1 {
                    Rational::new(1, 1) - q
                } else {
                    Rational::new(1, 1)
                };
                if neg.value_on(p) != Some(expected) {
                    return Err(format!("¬{x} at {p}"));
                }
            }
            checked += 1;
        }
    }
    let mut extended = 0;
    for a in profiles(b.factors, b.chain) {
        let model = embed_algebra_in_model(&a).map_err(err)?;
        let swap = TreePair::new(
            Word::all_of_length(model.depth).collect(),
            Word::all_of_length(model.depth)
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .collect(),
        )
        .map_err(err)?;
        let images: Vec<(DyadicElement, DyadicElement)> = model
            .generators
            .iter()
            .map(|g| (g.clone(), swap.apply(g)))
            .collect();
        let codomain = mvf_core::cantor::generated_model_subalgebra(
            &images.iter().map(|p| p.1.clone()).collect::<Vec<_>>(),
            mvf_core::cantor::DEFAULT_DENOMINATOR_CAP,
        )
        .map_err(err)?;
        let f = ModelIso::from_generator_images(model.subalgebra.clone(), codomain, &images)
            .map_err(err)?;
        let g = extend_isomorphism(&f).map_err(err)?;
        for x in f.domain.elements() {
            if g.apply(&f.apply(x).map_err(err)?) != *x {
                return Err(format!("extension of {a} fails at {x}"));
            }
        }
        extended += 1;
    }
    Ok(format!(
        "{checked} negations, {extended} extended isomorphisms"
    ))
}

fn ramsey(b: &Bounds) -> Outcome {
    let alg = |c: &[u32]| FiniteMvAlgebra::new(c).map_err(err);
    let unordered = RamseyInstance::new(
        alg(&[1, 1])?,
        alg(&[1, 1, 1])?,
        2,
        MorphismClass::Embeddings,
    )
    .map_err(err)?;
    for n in 3..=b.ramsey_power {
        let d = FiniteMvAlgebra::power(1, n).map_err(err)?;
        let cert = check_witness(&unordered, &d, u128::MAX).map_err(err)?;
        let coloring = cert
            .coloring
            .ok_or_else(|| format!("{d} verified for unordered embeddings"))?;
        if !verify_refutation(&unordered, &d, &coloring).map_err(err)? {
            return Err(format!("refutation on {d} does not replay"));
        }
    }
    let ordered = RamseyInstance::new(
        alg(&[1, 1])?,
        alg(&[1, 1, 1])?,
        2,
        MorphismClass::OrderedEmbeddings,
    )
    .map_err(err)?;
    let d = FiniteMvAlgebra::power(1, 6).map_err(err)?;
    let cert = check_witness(&ordered, &d, u128::MAX).map_err(err)?;
    if !cert.is_verified() {
        return Err(format!("{d} is not an ordered witness"));
    }
    Ok(format!(
        "refutations replay for N ≤ {}, ordered witness {d} ({} nodes)",
        b.ramsey_power, cert.nodes
    ))
}

fn transfer(b: &Bounds) -> Outcome {
    let algebras = profiles(b.factors, b.chain);
    let mut pairs = 0;
    for a in &algebras {
        for c in &algebras {
            if !faithfulness_check(a, c).map_err(err)?.injective {
                return Err(format!("restriction {a} → {c} is not injective"));
            }
            pairs += 1;
        }
    }
    let laws = functor_laws_check(&profiles(2, 3)).map_err(err)?;
    if let Some(f) = laws.failure {
        return Err(f);
    }
    Ok(format!(
        "{pairs} faithful pairs, {} compositions",
        laws.compositions
    ))
}

pub fn run(level: Level) -> Vec<SuiteResult> {
    let b = bounds(level);
    let suites: [Suite; 7] = [
        ("axioms", axioms),
        ("homs", homs),
        ("duality", duality),
        ("fraisse", fraisse),
        ("cantor", cantor),
        ("ramsey", ramsey),
        ("transfer", transfer),
    ];
    suites
        .iter()
        .map(|(name, suite)| {
            let (passed, detail) = match suite(&b) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            SuiteResult {
                name,
                passed,
                detail,
            }
        })
        .collect()
}
