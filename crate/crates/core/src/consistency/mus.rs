//! Enumeration of all minimal unsatisfiable subsets by walking the power
//! set through a map formula over clause selectors: every unexplored seed
//! is either shrunk to a minimal conflict (blocking its supersets) or grown
//! to a maximal satisfiable subset (blocking its subsets). The walk ends
//! when the map formula has no model left.

use super::sat::{lit, solve, Lit};
use super::{Budget, BudgetKind, ConsistencyError};

/// Clauses already translated to solver literals.
pub(crate) struct Encoded {
    pub(crate) num_vars: usize,
    pub(crate) clauses: Vec<Vec<Lit>>,
}

impl Encoded {
    fn model_of(&self, subset: &[usize]) -> Option<Vec<bool>> {
        solve(
            self.num_vars,
            subset.iter().map(|&i| self.clauses[i].as_slice()),
            false,
        )
    }

    fn satisfied_by(&self, i: usize, model: &[bool]) -> bool {
        self.clauses[i]
            .iter()
            .any(|&l| model[(l >> 1) as usize] == (l & 1 == 0))
    }
}

/// Returns every minimal unsatisfiable subset as sorted clause indices,
/// with the list itself sorted.
pub(crate) fn enumerate(
    enc: &Encoded,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>, ConsistencyError> {
    let n = enc.clauses.len();
    let mut map: Vec<Vec<Lit>> = Vec::new();
    let mut found = Vec::new();
    let mut rounds = 0usize;
    while let Some(selection) = solve(n, map.iter().map(Vec::as_slice), true) {
        rounds += 1;
        if rounds > budget.max_candidates {
            return Err(ConsistencyError::BudgetExceeded(BudgetKind::Candidates(
                budget.max_candidates,
            )));
        }
        let seed: Vec<usize> = (0..n).filter(|&i| selection[i]).collect();
        match enc.model_of(&seed) {
            Some(model) => {
                let mss = grow(enc, seed, model);
                let rest: Vec<Lit> = {
                    let mut in_mss = vec![false; n];
                    for &i in &mss {
                        in_mss[i] = true;
                    }
                    (0..n)
                        .filter(|&i| !in_mss[i])
                        .map(|i| lit(i, true))
                        .collect()
                };
                if rest.is_empty() {
                    break;
                }
                map.push(rest);
            }
            None => {
                let mus = shrink(enc, seed);
                if mus.len() > budget.max_cardinality {
                    return Err(ConsistencyError::BudgetExceeded(BudgetKind::Cardinality(
                        budget.max_cardinality,
                    )));
                }
                map.push(mus.iter().map(|&i| lit(i, false)).collect());
                found.push(mus);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Extends a satisfiable subset to a maximal one.
fn grow(enc: &Encoded, seed: Vec<usize>, mut model: Vec<bool>) -> Vec<usize> {
    let n = enc.clauses.len();
    let mut inside = vec![false; n];
    for &i in &seed {
        inside[i] = true;
    }
    for (i, slot) in inside.iter_mut().enumerate() {
        *slot = *slot || enc.satisfied_by(i, &model);
    }
    for i in 0..n {
        if inside[i] {
            continue;
        }
        let mut trial: Vec<usize> = (0..n).filter(|&j| inside[j]).collect();
        trial.push(i);
        if let Some(m) = enc.model_of(&trial) {
            model = m;
            for (j, slot) in inside.iter_mut().enumerate().skip(i) {
                *slot = *slot || enc.satisfied_by(j, &model);
            }
        }
    }
    (0..n).filter(|&i| inside[i]).collect()
}

/// Deletion-based reduction of an unsatisfiable subset to a minimal one.
fn shrink(enc: &Encoded, mut core: Vec<usize>) -> Vec<usize> {
    let mut i = 0;
    while i < core.len() {
        let mut trial = core.clone();
        trial.remove(i);
        if enc.model_of(&trial).is_none() {
            core = trial;
        } else {
            i += 1;
        }
    }
    core
}
