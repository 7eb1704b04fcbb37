//! Colouring search split over prefixes of the colouring.
//!
//! Prefixes of a fixed length are searched independently and the result of
//! the least prefix that has a bad colouring is kept. Within a prefix the
//! search returns the least bad extension, so the outcome is the least bad
//! colouring overall whatever the number of workers.

use mvf_core::ramsey::{ColoringProblem, SearchResult, WitnessCertificate};
use rayon::prelude::*;

/// Prefixes per worker; more keeps workers busy when prefixes differ in
/// cost.
const PREFIXES_PER_JOB: usize = 8;

pub fn prefix_length(problem: &ColoringProblem, jobs: usize) -> usize {
    let wanted = jobs.max(1) * PREFIXES_PER_JOB;
    let mut len = 0;
    let mut count = 1usize;
    while count < wanted && len < problem.positions() {
        count = count.saturating_mul(problem.colors());
        len += 1;
    }
    len
}

/// All colourings of the first `len` positions, in lexicographic order.
fn prefixes(colors: usize, len: usize) -> Vec<Vec<u8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..colors as u8).map(move |c| {
                    let mut q = p.clone();
                    q.push(c);
                    q
                })
            })
            .collect();
    }
    out
}

/// [`mvf_core::ramsey::solve`] with `jobs` workers. `jobs <= 1` runs the
/// plain search.
pub fn solve_parallel(
    problem: &ColoringProblem,
    budget: u128,
    jobs: usize,
) -> mvf_core::Result<WitnessCertificate> {
    problem.check_budget(budget)?;
    if jobs <= 1 {
        return Ok(WitnessCertificate::from_search(
            problem,
            problem.find_bad_coloring(),
        ));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| mvf_core::Error::Contract(format!("cannot start {jobs} workers: {e}")))?;
    let prefixes = prefixes(problem.colors(), prefix_length(problem, jobs));
    let results: Vec<SearchResult> = pool.install(|| {
        prefixes
            .par_iter()
            .map(|p| problem.find_bad_coloring_with_prefix(p))
            .collect::<mvf_core::Result<Vec<_>>>()
    })?;
    let nodes = results.iter().map(|r| r.nodes).sum();
    let bad_coloring = results.into_iter().find_map(|r| r.bad_coloring);
    Ok(WitnessCertificate::from_search(
        problem,
        SearchResult {
            bad_coloring,
            nodes,
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use mvf_core::ramsey::{MorphismClass, RamseyInstance};
    use mvf_core::FiniteMvAlgebra;

    #[test]
    fn same_answer_for_any_job_count() {
        let alg = |c: &[u32]| FiniteMvAlgebra::new(c).unwrap();
        for (class, n) in [
            (MorphismClass::Embeddings, 5),
            (MorphismClass::OrderedEmbeddings, 6),
            (MorphismClass::OrderedEmbeddings, 5),
        ] {
            let inst = RamseyInstance::new(alg(&[1, 1]), alg(&[1, 1, 1]), 2, class).unwrap();
            let problem = inst
                .problem(&FiniteMvAlgebra::power(1, n).unwrap())
                .unwrap();
            let serial = solve_parallel(&problem, u128::MAX, 1).unwrap();
            for jobs in [2, 3, 4] {
                let par = solve_parallel(&problem, u128::MAX, jobs).unwrap();
                assert_eq!(par.verdict, serial.verdict);
                assert_eq!(par.coloring, serial.coloring);
            }
        }
    }

    #[test]
    fn prefix_enumeration() {
        assert_eq!(
            prefixes(2, 2),
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(prefixes(3, 0), vec![Vec::<u8>::new()]);
    }
}
