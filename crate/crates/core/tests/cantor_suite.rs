use std::collections::BTreeSet;

use mvf_core::axioms::{axioms_check, Samples};
use mvf_core::cantor::{
    embed_algebra_in_model, extend_isomorphism, generated_model_subalgebra, DyadicElement,
    ModelIso, ModelSubalgebra, Rational, TreePair, Word, DEFAULT_DENOMINATOR_CAP,
};
use mvf_core::hom::enumerate_homs;
use mvf_core::table::OperationTable;
use mvf_core::{Error, HomMode};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn w(s: &str) -> Word {
    s.parse().unwrap()
}

fn q(n: u64, d: u64) -> Rational {
    Rational::new(n, d)
}

/// Every prefix-free set of words of length at most `depth` below `root`.
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

fn values(max_denominator: u64) -> Vec<Rational> {
    let set: BTreeSet<Rational> = (1..=max_denominator)
        .flat_map(|d| (0..=d).map(move |n| q(n, d)))
        .collect();
    set.into_iter().collect()
}

fn covers(u: &[Word], point: &Word) -> bool {
    u.iter().any(|c| c.is_prefix_of(point))
}

fn truncated_sum(a: Rational, b: Rational) -> Rational {
    (a + b).min(q(1, 1))
}

#[test]
fn antichain_count() {
    assert_eq!(antichains(Word::EMPTY, 3).len(), 677);
    assert_eq!(values(6).len(), 13);
}

#[test]
fn negation_closed_form() {
    let points: Vec<Word> = Word::all_of_length(3).collect();
    for u in antichains(Word::EMPTY, 3) {
        let complement: Vec<Word> = points.iter().filter(|p| !covers(&u, p)).copied().collect();
        for &v in &values(6) {
            let x = DyadicElement::basic(v, &u).unwrap();
            let neg = x.neg();
            let closed = DyadicElement::crisp(&complement)
                .unwrap()
                .join(&DyadicElement::basic(q(1, 1) - v, &u).unwrap());
            assert_eq!(neg, closed, "¬{x}");
            let pointwise: Vec<(Word, Rational)> = points
                .iter()
                .map(|p| (*p, if covers(&u, p) { q(1, 1) - v } else { q(1, 1) }))
                .collect();
            assert_eq!(neg, DyadicElement::from_pieces(&pointwise).unwrap());
        }
    }
}

/// Basic elements depend on `U` only through the points of depth 3 it
/// covers, so sums range over point sets rather than codes.
#[test]
fn sum_closed_form() {
    let points: Vec<Word> = Word::all_of_length(3).collect();
    let sets: Vec<Vec<Word>> = (0u32..256)
        .map(|mask| {
            (0..8)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| points[i])
                .collect()
        })
        .collect();
    let vals = values(6);
    let basics: Vec<Vec<DyadicElement>> = sets
        .iter()
        .map(|u| {
            vals.iter()
                .map(|&v| DyadicElement::basic(v, u).unwrap())
                .collect()
        })
        .collect();
    for (iu, u) in sets.iter().enumerate() {
        for (iv, v) in sets.iter().enumerate() {
            for (a, &qa) in vals.iter().enumerate() {
                for (b, &qb) in vals.iter().enumerate() {
                    let sum = basics[iu][a].oplus(&basics[iv][b]);
                    for p in &points {
                        let value = match (covers(u, p), covers(v, p)) {
                            (true, true) => truncated_sum(qa, qb),
                            (true, false) => qa,
                            (false, true) => qb,
                            (false, false) => q(0, 1),
                        };
                        assert_eq!(
                            sum.value_on(p),
                            Some(value),
                            "{} ⊕ {} at {p}",
                            basics[iu][a],
                            basics[iv][b]
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn pieces_match_the_format_examples() {
    let x = DyadicElement::basic(q(1, 2), &[w("0")]).unwrap();
    assert_eq!(x.pieces(), vec![(w("0"), q(1, 2)), (w("1"), q(0, 1))]);
    assert_eq!(x.neg().pieces(), vec![(w("0"), q(1, 2)), (w("1"), q(1, 1))]);
    let sum = x.oplus(&DyadicElement::constant(q(1, 2)).unwrap());
    assert_eq!(sum.pieces(), vec![(w("0"), q(1, 1)), (w("1"), q(1, 2))]);
}

fn all_elements(depth: u32, denominator: u64) -> Vec<DyadicElement> {
    let points: Vec<Word> = Word::all_of_length(depth).collect();
    let base = denominator as usize + 1;
    (0..base.pow(points.len() as u32))
        .map(|mut code| {
            let pieces: Vec<(Word, Rational)> = points
                .iter()
                .map(|p| {
                    let k = code % base;
                    code /= base;
                    (*p, q(k as u64, denominator))
                })
                .collect();
            DyadicElement::from_pieces(&pieces).unwrap()
        })
        .collect()
}

#[test]
fn finite_stages_of_the_model_are_mv_algebras() {
    for (depth, denominator) in [(0, 4), (1, 2), (1, 3), (2, 2)] {
        let mut elements = all_elements(depth, denominator);
        elements.sort();
        elements.dedup();
        assert_eq!(elements.len(), (denominator as usize + 1).pow(1 << depth));
        let index = |x: &DyadicElement| elements.binary_search(x).unwrap();
        let table = OperationTable::from_fn(
            elements.len(),
            index(&DyadicElement::zero()),
            |x, y| index(&elements[x].oplus(&elements[y])),
            |x| index(&elements[x].neg()),
        )
        .unwrap();
        let report = axioms_check(&table, &Samples::Exhaustive);
        assert!(
            report.passed(),
            "depth {depth}, denominator {denominator}: {:?}",
            report.failure
        );
    }
}

#[test]
fn central_elements_are_crisp_and_split() {
    let elements = all_elements(2, 4);
    for x in &elements {
        let idempotent = x.oplus(x) == *x;
        assert_eq!(idempotent, x.is_crisp(), "{x}");
        if idempotent && *x != DyadicElement::zero() {
            let cylinder = x.support_of_one()[0];
            let half = DyadicElement::crisp(&[cylinder.child(false)]).unwrap();
            assert!(half != *x && half.meet(x) == half && half != DyadicElement::zero());
        }
    }
}

fn random_code(rng: &mut ChaCha8Rng, size: usize, max_depth: u32) -> Vec<Word> {
    let mut code = vec![Word::EMPTY];
    while code.len() < size {
        let splittable: Vec<usize> = (0..code.len())
            .filter(|&i| code[i].len() < max_depth)
            .collect();
        let i = *splittable.choose(rng).unwrap();
        let leaf = code.swap_remove(i);
        code.push(leaf.child(false));
        code.push(leaf.child(true));
    }
    code
}

fn random_tree_pair(rng: &mut ChaCha8Rng, max_depth: u32) -> TreePair {
    let size = rng.gen_range(1..=1usize << max_depth);
    let source = random_code(rng, size, max_depth);
    let mut target = random_code(rng, size, max_depth);
    target.shuffle(rng);
    TreePair::new(source, target).unwrap()
}

#[test]
fn tree_pairs_act_by_automorphisms() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let elements = all_elements(2, 4);
    for _ in 0..4 {
        let g = random_tree_pair(&mut rng, 2);
        let images: BTreeSet<DyadicElement> = elements.iter().map(|x| g.apply(x)).collect();
        assert_eq!(images.len(), elements.len());
        for x in &elements {
            let gx = g.apply(x);
            assert_eq!(gx.neg(), g.apply(&x.neg()));
            assert_eq!(gx.is_crisp(), x.is_crisp());
            assert_eq!(g.inverse().apply(&gx), *x);
            for y in &elements {
                assert_eq!(g.apply(&x.oplus(y)), gx.oplus(&g.apply(y)));
            }
        }
    }
    let swap = TreePair::new(vec![w("0"), w("1")], vec![w("1"), w("0")]).unwrap();
    let x = DyadicElement::basic(q(1, 2), &[w("0")]).unwrap();
    assert_eq!(
        swap.apply(&x),
        DyadicElement::basic(q(1, 2), &[w("1")]).unwrap()
    );
    for _ in 0..50 {
        let x = DyadicElement::random(&mut rng, 3, 6);
        assert_eq!(TreePair::identity().apply(&x), x);
    }
}

fn num_lcm(a: u64, b: u64) -> u64 {
    let gcd = |mut x: u64, mut y: u64| {
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    a / gcd(a, b) * b
}

fn random_subalgebra(rng: &mut ChaCha8Rng) -> (Vec<DyadicElement>, ModelSubalgebra) {
    loop {
        let count = rng.gen_range(1..=2);
        let gens: Vec<DyadicElement> = (0..count)
            .map(|_| {
                let depth = rng.gen_range(0..=3);
                let denominator = rng.gen_range(1..=3);
                DyadicElement::random(rng, depth, denominator)
            })
            .collect();
        // Points with equal value tuples share a block, so this bounds the
        // size of the closure.
        let patterns: BTreeSet<Vec<Rational>> = Word::all_of_length(3)
            .map(|p| gens.iter().map(|g| g.value_on(&p).unwrap()).collect())
            .collect();
        let bound: u64 = patterns
            .iter()
            .map(|t| t.iter().fold(1u64, |l, v| num_lcm(l, *v.denom())) + 1)
            .product();
        if bound > 1024 {
            continue;
        }
        match generated_model_subalgebra(&gens, DEFAULT_DENOMINATOR_CAP) {
            Ok(sub) => return (gens, sub),
            Err(Error::Budget { .. }) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

/// `f(x)` at `g(p)` equals `x` at `p`, on every point deep enough to be
/// inside one piece of both.
fn extends_pointwise(g: &TreePair, f: &ModelIso) -> bool {
    let deepest = g
        .source()
        .iter()
        .chain(g.target())
        .map(|w| w.len())
        .max()
        .unwrap_or(0);
    f.domain.elements().iter().all(|x| {
        let fx = f.apply(x).unwrap();
        let depth = deepest + x.depth().max(fx.depth());
        Word::all_of_length(depth).all(|p| {
            let image = g.map_word(&p).unwrap();
            fx.value_on(&image) == x.value_on(&p)
        })
    })
}

#[test]
fn isomorphisms_extend_to_tree_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xca7);
    let mut uneven = 0;
    let mut cases = 0;
    while cases < 100 {
        let (generators, d) = random_subalgebra(&mut rng);
        let f = if cases % 2 == 0 {
            let moved = random_tree_pair(&mut rng, 3);
            let gens: Vec<(DyadicElement, DyadicElement)> = generators
                .iter()
                .map(|x| (x.clone(), moved.apply(x)))
                .collect();
            let e = generated_model_subalgebra(
                &gens.iter().map(|p| p.1.clone()).collect::<Vec<_>>(),
                DEFAULT_DENOMINATOR_CAP,
            )
            .unwrap();
            ModelIso::from_generator_images(d, e, &gens).unwrap()
        } else {
            let Ok(copy) = embed_algebra_in_model(d.algebra()) else {
                continue;
            };
            let isos = enumerate_homs(
                d.algebra(),
                copy.subalgebra.algebra(),
                HomMode::Isomorphisms,
            );
            let hom = isos.choose(&mut rng).unwrap().clone();
            ModelIso::new(d, copy.subalgebra, hom).unwrap()
        };
        cases += 1;
        let matched_unevenly =
            f.codomain.blocks().iter().enumerate().any(|(j, e)| {
                f.domain.blocks()[f.hom.sigma()[j]].cylinders.len() != e.cylinders.len()
            });
        uneven += matched_unevenly as usize;
        let g = extend_isomorphism(&f).unwrap();
        for x in f.domain.elements() {
            assert_eq!(g.apply(&f.apply(x).unwrap()), *x);
        }
        assert!(extends_pointwise(&g, &f), "{g}");
        for _ in 0..20 {
            let a = DyadicElement::random(&mut rng, 3, 4);
            let b = DyadicElement::random(&mut rng, 3, 4);
            assert_eq!(g.apply(&a.oplus(&b)), g.apply(&a).oplus(&g.apply(&b)));
            assert_eq!(g.apply(&a.neg()), g.apply(&a).neg());
        }
    }
    assert!(uneven >= 10, "only {uneven} cases with unequal block sizes");
}
