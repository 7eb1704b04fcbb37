//! Exhaustive or sampled verification of the MV-algebra laws on an
//! [`OperationTable`].

use alloc::vec::Vec;

use rand::Rng;

use crate::table::OperationTable;

/// A law checked by [`axioms_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    /// `x ⊕ (y ⊕ z) = (x ⊕ y) ⊕ z`
    Associativity,
    /// `x ⊕ y = y ⊕ x`
    Commutativity,
    /// `x ⊕ 0 = x`
    Neutral,
    /// `¬¬x = x`
    Involution,
    /// `x ⊕ ¬0 = ¬0`
    Absorbing,
    /// `¬(¬x ⊕ y) ⊕ y = ¬(¬y ⊕ x) ⊕ x`
    Lukasiewicz,
    /// `¬1 = 0`
    NegOne,
    /// `x ⊕ y = ¬(¬x ⊙ ¬y)`
    DeMorgan,
    /// `(x ⊖ y) ⊕ y = (y ⊖ x) ⊕ x`
    LukasiewiczMinus,
    /// `x ⊕ ¬x = 1`
    ExcludedMiddle,
    /// `¬x ⊕ y = 1`, `x ⊙ ¬y = 0`, `y = x ⊕ (y ⊖ x)` and `∃z. x ⊕ z = y`
    /// agree.
    OrderConditions,
    /// `¬(¬x ∨ ¬y) = x ⊙ (¬x ⊕ y)`
    MeetForms,
    /// `⊕`, `⊙`, `∧` distribute over `∨`.
    DistributeOverJoin,
    /// `⊕`, `⊙`, `∨` distribute over `∧`.
    DistributeOverMeet,
    /// For idempotent `y`: `x ⊕ y = x ∨ y` and `x ⊙ y = x ∧ y`.
    CentralAbsorption,
}

/// Which triples to test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Samples {
    Exhaustive,
    Triples(Vec<[usize; 3]>),
}

impl Samples {
    pub fn random<R: Rng + ?Sized>(table: &OperationTable, count: usize, rng: &mut R) -> Self {
        let n = table.size();
        Samples::Triples(
            (0..count)
                .map(|_| {
                    [
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                    ]
                })
                .collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub law: Law,
    pub witness: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub triples_checked: u64,
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks every [`Law`] on the given triples and stops at the first
/// counterexample.
pub fn axioms_check(table: &OperationTable, samples: &Samples) -> AxiomReport {
    let n = table.size();
    let mut checked = 0u64;
    let report = |checked, failure| AxiomReport {
        triples_checked: checked,
        failure,
    };
    if table.neg(table.one()) != table.zero() {
        let witness = [table.one(), 0, 0];
        return report(
            0,
            Some(AxiomFailure {
                law: Law::NegOne,
                witness,
            }),
        );
    }
    match samples {
        Samples::Exhaustive => {
            for x in 0..n {
                for y in 0..n {
                    if let Some(law) = check_pair(table, x, y) {
                        return report(
                            checked,
                            Some(AxiomFailure {
                                law,
                                witness: [x, y, 0],
                            }),
                        );
                    }
                    for z in 0..n {
                        checked += 1;
                        if let Some(law) = check_triple(table, x, y, z) {
                            return report(
                                checked,
                                Some(AxiomFailure {
                                    law,
                                    witness: [x, y, z],
                                }),
                            );
                        }
                    }
                }
            }
        }
        Samples::Triples(triples) => {
            for &[x, y, z] in triples {
                checked += 1;
                if let Some(law) = check_pair(table, x, y).or_else(|| check_triple(table, x, y, z))
                {
                    return report(
                        checked,
                        Some(AxiomFailure {
                            law,
                            witness: [x, y, z],
                        }),
                    );
                }
            }
        }
    }
    report(checked, None)
}

fn check_pair(t: &OperationTable, x: usize, y: usize) -> Option<Law> {
    let (zero, one) = (t.zero(), t.one());
    if t.oplus(x, y) != t.oplus(y, x) {
        return Some(Law::Commutativity);
    }
    if t.oplus(x, zero) != x {
        return Some(Law::Neutral);
    }
    if t.neg(t.neg(x)) != x {
        return Some(Law::Involution);
    }
    if t.oplus(x, one) != one {
        return Some(Law::Absorbing);
    }
    let lhs = t.oplus(t.neg(t.oplus(t.neg(x), y)), y);
    let rhs = t.oplus(t.neg(t.oplus(t.neg(y), x)), x);
    if lhs != rhs {
        return Some(Law::Lukasiewicz);
    }
    if t.oplus(x, y) != t.neg(t.odot(t.neg(x), t.neg(y))) {
        return Some(Law::DeMorgan);
    }
    if t.oplus(t.ominus(x, y), y) != t.oplus(t.ominus(y, x), x) {
        return Some(Law::LukasiewiczMinus);
    }
    if t.oplus(x, t.neg(x)) != one {
        return Some(Law::ExcludedMiddle);
    }
    let by_sum = t.oplus(t.neg(x), y) == one;
    let by_product = t.odot(x, t.neg(y)) == zero;
    let by_difference = y == t.oplus(x, t.ominus(y, x));
    let by_witness = (0..t.size()).any(|z| t.oplus(x, z) == y);
    if !(by_sum == by_product && by_product == by_difference && by_difference == by_witness) {
        return Some(Law::OrderConditions);
    }
    if t.meet(x, y) != t.odot(x, t.oplus(t.neg(x), y)) {
        return Some(Law::MeetForms);
    }
    if t.is_idempotent(y) && (t.oplus(x, y) != t.join(x, y) || t.odot(x, y) != t.meet(x, y)) {
        return Some(Law::CentralAbsorption);
    }
    None
}

fn check_triple(t: &OperationTable, x: usize, y: usize, z: usize) -> Option<Law> {
    if t.oplus(x, t.oplus(y, z)) != t.oplus(t.oplus(x, y), z) {
        return Some(Law::Associativity);
    }
    let j = t.join(y, z);
    let m = t.meet(y, z);
    let over_join = t.oplus(x, j) == t.join(t.oplus(x, y), t.oplus(x, z))
        && t.odot(x, j) == t.join(t.odot(x, y), t.odot(x, z))
        && t.meet(x, j) == t.join(t.meet(x, y), t.meet(x, z));
    if !over_join {
        return Some(Law::DistributeOverJoin);
    }
    let over_meet = t.oplus(x, m) == t.meet(t.oplus(x, y), t.oplus(x, z))
        && t.odot(x, m) == t.meet(t.odot(x, y), t.odot(x, z))
        && t.join(x, m) == t.meet(t.join(x, y), t.join(x, z));
    if !over_meet {
        return Some(Law::DistributeOverMeet);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::FiniteMvAlgebra;

    fn table(chains: &[u32]) -> OperationTable {
        OperationTable::from_algebra(&FiniteMvAlgebra::new(chains).unwrap()).unwrap()
    }

    #[test]
    fn chain_and_square_pass() {
        let r = axioms_check(&table(&[3]), &Samples::Exhaustive);
        assert!(r.passed());
        assert_eq!(r.triples_checked, 64);
        let r = axioms_check(&table(&[2, 2]), &Samples::Exhaustive);
        assert!(r.passed());
        assert_eq!(r.triples_checked, 729);
    }

    #[test]
    fn corrupted_sum_is_caught() {
        let mut t = table(&[2, 2]);
        // (½,0) ⊕ (½,0) should be (1,0); claim (½,½) instead.
        let half0 = 3;
        t.set_oplus(half0, half0, 4);
        let r = axioms_check(&t, &Samples::Exhaustive);
        let failure = r.failure.expect("fault must be detected");
        let [x, y, z] = failure.witness;
        let clean = table(&[2, 2]);
        assert!(check_pair(&clean, x, y).is_none());
        assert!(check_triple(&clean, x, y, z).is_none());
    }

    #[test]
    fn sampled_runs() {
        use rand::SeedableRng;
        let t = table(&[2, 3, 4]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let samples = Samples::random(&t, 500, &mut rng);
        assert!(axioms_check(&t, &samples).passed());
    }
}
