//! Exact domination number by two independent methods.
//!
//! `brute_force_gamma` enumerates `k`-subsets in lexicographic order for
//! `k = 1, 2, …` and is the oracle. `branch_bound_gamma` is the workhorse:
//! it branches on the undominated vertex with the fewest remaining
//! dominators and prunes with a residual counting bound.

use std::fmt;
use std::time::{Duration, Instant};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::greedy::greedy_sequence;

/// Largest order brute force accepts without an explicit size cap.
pub const BRUTE_FORCE_MAX_N: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    BranchAndBound,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::BranchAndBound => "branch_and_bound",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationResult {
    pub value: usize,
    /// Sorted.
    pub witness: Vec<usize>,
    pub method: Method,
    pub proven_optimal: bool,
    pub nodes_explored: u64,
}

impl DominationResult {
    /// Fails hard if the witness is not a dominating set of the stated size.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.witness.len() != self.value {
            return Err(Error::Verification(format!(
                "witness has {} vertices but value is {}",
                self.witness.len(),
                self.value
            )));
        }
        if !g.is_dominating(&self.witness)? {
            return Err(Error::Verification(format!(
                "witness {:?} does not dominate",
                self.witness
            )));
        }
        Ok(())
    }
}

impl fmt::Display for DominationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.witness.iter().map(usize::to_string).collect();
        write!(
            f,
            "gamma={} witness=[{}] method={} optimal={}",
            self.value,
            list.join(","),
            self.method,
            self.proven_optimal
        )
    }
}

/// Exhaustive search over subsets of size `1, 2, …`.
///
/// Without `size_cap` the graph must have at most [`BRUTE_FORCE_MAX_N`]
/// vertices. With a cap, sizes above it are not tried and
/// [`Error::SizeCapExceeded`] is returned if nothing smaller dominates.
pub fn brute_force_gamma(g: &Graph, size_cap: Option<usize>) -> Result<DominationResult> {
    let n = g.order();
    let cap = match size_cap {
        Some(c) => c.min(n),
        None if n <= BRUTE_FORCE_MAX_N => n,
        None => {
            return Err(Error::Budget(format!(
                "brute force needs n <= {BRUTE_FORCE_MAX_N} or a size cap (n = {n})"
            )))
        }
    };
    let mut nodes = 0u64;
    for k in 1..=cap {
        let mut chosen = Vec::with_capacity(k);
        let mut layers = vec![BitSet::new(n); k + 1];
        if subsets_rec(g, k, 0, &mut chosen, &mut layers, &mut nodes) {
            let result = DominationResult {
                value: k,
                witness: chosen,
                method: Method::Exhaustive,
                proven_optimal: true,
                nodes_explored: nodes,
            };
            result.verify(g)?;
            return Ok(result);
        }
    }
    Err(Error::SizeCapExceeded { cap })
}

/// Lexicographic enumeration of `k`-subsets; `layers[d]` is the coverage of
/// the first `d` chosen vertices.
fn subsets_rec(
    g: &Graph,
    k: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    layers: &mut [BitSet],
    nodes: &mut u64,
) -> bool {
    let depth = chosen.len();
    if depth == k {
        *nodes += 1;
        return layers[depth].is_full();
    }
    let n = g.order();
    for v in start..=(n - (k - depth)) {
        let (below, above) = layers.split_at_mut(depth + 1);
        above[0].clone_from(&below[depth]);
        above[0].union_with(g.closed_set(v));
        chosen.push(v);
        if subsets_rec(g, k, v + 1, chosen, layers, nodes) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Limits for the branch-and-bound search.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    pub time_limit: Option<Duration>,
    pub node_limit: Option<u64>,
}

pub fn branch_bound_gamma(g: &Graph, upper_hint: Option<usize>) -> Result<DominationResult> {
    branch_bound_gamma_with_budget(g, upper_hint, Budget::default())
}

/// Branch and bound; `upper_hint`, when given, must be the size of some
/// dominating set (it only tightens pruning).
pub fn branch_bound_gamma_with_budget(
    g: &Graph,
    upper_hint: Option<usize>,
    budget: Budget,
) -> Result<DominationResult> {
    let n = g.order();
    let greedy = greedy_sequence(g);
    let mut incumbent: Vec<usize> = greedy.sequence().to_vec();
    incumbent.sort_unstable();
    // With a hint below the greedy value there is no incumbent witness yet,
    // so search sizes up to and including the hint.
    let mut ceiling = incumbent.len();
    let mut seeded = true;
    if let Some(h) = upper_hint {
        if h < ceiling {
            ceiling = h + 1;
            seeded = false;
        }
    }
    let mut search = Search {
        g,
        best_len: ceiling,
        best: seeded.then_some(incumbent),
        chosen: Vec::new(),
        nodes: 0,
        deadline: budget.time_limit.map(|d| Instant::now() + d),
        node_limit: budget.node_limit,
    };
    let dominated = BitSet::new(n);
    let excluded = BitSet::new(n);
    search.recurse(&dominated, &excluded)?;
    let witness = search.best.ok_or_else(|| {
        Error::Verification(format!(
            "no dominating set of size <= {} exists; upper hint was wrong",
            ceiling - 1
        ))
    })?;
    let mut witness = witness;
    witness.sort_unstable();
    let result = DominationResult {
        value: witness.len(),
        witness,
        method: Method::BranchAndBound,
        proven_optimal: true,
        nodes_explored: search.nodes,
    };
    result.verify(g)?;
    Ok(result)
}

struct Search<'a> {
    g: &'a Graph,
    best_len: usize,
    best: Option<Vec<usize>>,
    chosen: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
    node_limit: Option<u64>,
}

impl Search<'_> {
    fn check_budget(&self) -> Result<()> {
        if let Some(limit) = self.node_limit {
            if self.nodes > limit {
                return Err(Error::Budget(format!("node limit {limit} reached")));
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(deadline) = self.deadline {
                if Instant::now() > deadline {
                    return Err(Error::Budget("time limit reached".into()));
                }
            }
        }
        Ok(())
    }

    /// Searches for a dominating set strictly smaller than `best_len`.
    fn recurse(&mut self, dominated: &BitSet, excluded: &BitSet) -> Result<()> {
        self.nodes += 1;
        self.check_budget()?;
        let g = self.g;
        let n = g.order();
        let remaining = n - dominated.count();
        if remaining == 0 {
            if self.chosen.len() < self.best_len {
                self.best_len = self.chosen.len();
                self.best = Some(self.chosen.clone());
            }
            return Ok(());
        }
        let budget = self.best_len - self.chosen.len();
        if budget <= 1 {
            // need at least one more vertex, and that would tie the incumbent
            return Ok(());
        }
        let slots = budget - 1;

        // New coverage of every allowed candidate.
        let mut coverage: Vec<(usize, usize)> = (0..n)
            .filter(|&v| !excluded.contains(v))
            .map(|v| (dominated.count_missing_from(g.closed_set(v)), v))
            .filter(|&(c, _)| c > 0)
            .collect();
        coverage.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        // Residual counting bound: the `slots` largest coverages must reach `remaining`.
        let reach: usize = coverage.iter().take(slots).map(|c| c.0).sum();
        if reach < remaining {
            return Ok(());
        }
        if slots == 1 {
            if let Some(&(c, v)) = coverage.first() {
                if c == remaining {
                    self.chosen.push(v);
                    self.best_len = self.chosen.len();
                    self.best = Some(self.chosen.clone());
                    self.chosen.pop();
                }
            }
            return Ok(());
        }

        // Fail-first: undominated vertex with the fewest allowed dominators.
        let mut pivot = None;
        let mut fewest = usize::MAX;
        for u in dominated.complement().iter() {
            let allowed = excluded.count_missing_from(g.closed_set(u));
            if allowed < fewest {
                fewest = allowed;
                pivot = Some(u);
                if allowed <= 1 {
                    break;
                }
            }
        }
        let Some(pivot) = pivot else { return Ok(()) };
        if fewest == 0 {
            return Ok(());
        }
        let mut candidates: Vec<(usize, usize)> = g
            .closed_set(pivot)
            .iter()
            .filter(|&v| !excluded.contains(v))
            .map(|v| (dominated.count_missing_from(g.closed_set(v)), v))
            .collect();
        candidates.sort_unstable_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

        // Branch i: take candidate i, exclude candidates 0..i.
        let mut excl = excluded.clone();
        for &(_, v) in &candidates {
            if self.best_len - self.chosen.len() <= 1 {
                break;
            }
            let mut next = dominated.clone();
            next.union_with(g.closed_set(v));
            self.chosen.push(v);
            self.recurse(&next, &excl)?;
            self.chosen.pop();
            excl.insert(v);
        }
        Ok(())
    }
}
