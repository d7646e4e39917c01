//! Vertex weightings and closed-neighborhood feasibility checks.
//!
//! A domination weighting needs every closed-neighborhood sum `>= 1`; a
//! packing needs every sum `<= 1`. With an exact scalar the check is exact.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Domination,
    Packing,
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Role::Domination => "domination",
            Role::Packing => "packing",
        })
    }
}

/// One weight in `[0, 1]` per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexWeighting<T> {
    weights: Vec<T>,
    role: Role,
}

impl<T: Scalar> VertexWeighting<T> {
    pub fn new(weights: Vec<T>, role: Role) -> Result<Self> {
        let zero = T::zero();
        let one = T::one();
        for (vertex, w) in weights.iter().enumerate() {
            if *w < zero || *w > one {
                return Err(Error::WeightOutOfRange {
                    vertex,
                    value: w.to_string(),
                });
            }
        }
        Ok(VertexWeighting { weights, role })
    }

    pub fn uniform(n: usize, w: T, role: Role) -> Result<Self> {
        Self::new(vec![w; n], role)
    }

    /// Indicator weighting of a vertex set.
    pub fn indicator(n: usize, set: &[usize], role: Role) -> Result<Self> {
        let mut weights = vec![T::zero(); n];
        for &v in set {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            weights[v] = T::one();
        }
        Self::new(weights, role)
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn total(&self) -> T {
        self.weights.iter().fold(T::zero(), |acc, w| acc + w.clone())
    }

    pub fn support(&self) -> Vec<usize> {
        self.weights
            .iter()
            .enumerate()
            .filter(|(_, w)| !w.is_zero())
            .map(|(v, _)| v)
            .collect()
    }
}

/// Per-vertex closed-neighborhood sums and the verdict.
#[derive(Clone, Debug, PartialEq)]
pub struct SlackReport<T> {
    pub role: Role,
    /// `∑_{u∈N[v]} f(u)` for each `v`.
    pub sums: Vec<T>,
    /// Signed slack: `sum − 1` for domination, `1 − sum` for packing.
    /// Non-negative everywhere iff feasible.
    pub slacks: Vec<T>,
    pub min_slack: T,
    pub max_slack: T,
    pub violated: Vec<usize>,
}

impl<T: Scalar> SlackReport<T> {
    pub fn is_feasible(&self) -> bool {
        self.violated.is_empty()
    }
}

/// Closed-neighborhood sums of `w` on `g`.
pub fn neighborhood_sums<T: Scalar>(g: &Graph, w: &[T]) -> Vec<T> {
    (0..g.order())
        .map(|v| g.neighbors(v).iter().fold(w[v].clone(), |acc, &u| acc + w[u].clone()))
        .collect()
}

pub fn check_weighting<T: Scalar>(g: &Graph, w: &VertexWeighting<T>) -> Result<SlackReport<T>> {
    if w.len() != g.order() {
        return Err(Error::LengthMismatch {
            expected: g.order(),
            found: w.len(),
        });
    }
    let sums = neighborhood_sums(g, w.weights());
    let one = T::one();
    let slacks: Vec<T> = sums
        .iter()
        .map(|s| match w.role() {
            Role::Domination => s.clone() - one.clone(),
            Role::Packing => one.clone() - s.clone(),
        })
        .collect();
    let violated = slacks
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_neg())
        .map(|(v, _)| v)
        .collect();
    let mut min_slack = slacks[0].clone();
    let mut max_slack = slacks[0].clone();
    for s in &slacks[1..] {
        if *s < min_slack {
            min_slack = s.clone();
        }
        if *s > max_slack {
            max_slack = s.clone();
        }
    }
    Ok(SlackReport {
        role: w.role(),
        sums,
        slacks,
        min_slack,
        max_slack,
        violated,
    })
}
