//! Graph corpus shared by the integration tests.

#![allow(dead_code)]

use domination::constructions::{clique_chain_h, hairy_clique, matching_complement, random_half, torus_j};
use domination::experiments::{trial_seed, DEFAULT_MASTER_SEED};
use domination::Graph;

pub struct Entry {
    pub label: String,
    pub graph: Graph,
    /// `Some(d)` for graphs built to be `d`-regular.
    pub regular: Option<usize>,
}

fn entry(label: impl Into<String>, graph: Graph) -> Entry {
    let regular = graph.regular_degree();
    Entry {
        label: label.into(),
        graph,
        regular,
    }
}

/// Every family member small enough for the exact LP, a few classic graphs
/// and 50 seeded `G(n, 1/2)` samples with `n <= 60`.
pub fn corpus() -> Vec<Entry> {
    let mut out = Vec::new();
    for t in 1..=4 {
        out.push(entry(
            format!("matching_complement_t{t}"),
            matching_complement(t).unwrap(),
        ));
    }
    for t in 1..=2 {
        out.push(entry(format!("torus_J_t{t}"), torus_j(t).unwrap()));
    }
    for t in 4..=7 {
        out.push(entry(format!("clique_chain_H_t{t}"), clique_chain_h(t).unwrap()));
    }
    for t in [1, 3, 4, 8, 16, 32] {
        out.push(entry(format!("hairy_clique_t{t}"), hairy_clique(t).unwrap()));
    }
    out.push(entry("K1", Graph::edgeless(1).unwrap()));
    out.push(entry("edgeless_5", Graph::edgeless(5).unwrap()));
    out.push(entry("K6", Graph::complete(6).unwrap()));
    out.push(entry("P7", Graph::path(7).unwrap()));
    out.push(entry("C9", Graph::cycle(9).unwrap()));
    out.push(entry("star_6", Graph::star(6).unwrap()));
    out.push(entry("petersen", Graph::petersen().unwrap()));
    out.extend(random_corpus());
    out
}

/// 50 samples, `n = 11..=60`, seeds derived from the shipped master seed.
pub fn random_corpus() -> Vec<Entry> {
    (0..50)
        .map(|i| {
            let n = 11 + i;
            let seed = trial_seed(DEFAULT_MASTER_SEED, n, i);
            entry(format!("R_{n}_s{seed}"), random_half(n, seed).unwrap())
        })
        .collect()
}
