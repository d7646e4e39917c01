//! Greedy dominating sequence and the weights derived from it.
//!
//! Each step picks the vertex covering the most not-yet-dominated vertices,
//! smallest index on ties. `F` of a step is the set it newly dominates; every
//! vertex in it gets weight `1/|F|`. Scaled by `1/(1 + ln(1 + Δ))` those
//! weights form a fractional packing, which lower-bounds `γ_f`.

use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::real::{self, Enclosure};
use crate::scalar::{int, ratio};
use crate::weighting::{check_weighting, neighborhood_sums, Role, SlackReport, VertexWeighting};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct GreedyTrace {
    n: usize,
    sequence: Vec<usize>,
    f_sets: Vec<Vec<usize>>,
    first_step: Vec<usize>,
    weights: Vec<Rational>,
}

impl GreedyTrace {
    /// Assembles a trace from `(chosen vertex, F-set)` steps, checking that
    /// the F-sets partition `0..n`.
    pub fn from_steps(n: usize, steps: Vec<(usize, Vec<usize>)>) -> Result<GreedyTrace> {
        let mismatch = |msg: String| Error::TraceMismatch(msg);
        let mut first_step = vec![usize::MAX; n];
        let mut sequence = Vec::with_capacity(steps.len());
        let mut f_sets = Vec::with_capacity(steps.len());
        for (k, (x, mut f)) in steps.into_iter().enumerate() {
            if x >= n {
                return Err(mismatch(format!("step {k}: vertex {x} out of range")));
            }
            if f.is_empty() {
                return Err(mismatch(format!("step {k}: empty F-set")));
            }
            f.sort_unstable();
            for &v in &f {
                if v >= n || first_step[v] != usize::MAX {
                    return Err(mismatch(format!("step {k}: vertex {v} repeated or out of range")));
                }
                first_step[v] = k;
            }
            sequence.push(x);
            f_sets.push(f);
        }
        if let Some(v) = first_step.iter().position(|&s| s == usize::MAX) {
            return Err(mismatch(format!("vertex {v} never dominated")));
        }
        let weights = first_step.iter().map(|&k| ratio(1, f_sets[k].len() as i64)).collect();
        Ok(GreedyTrace {
            n,
            sequence,
            f_sets,
            first_step,
            weights,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// The chosen vertices `x_1, …, x_m`.
    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    /// `γ_g`.
    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn f_sets(&self) -> &[Vec<usize>] {
        &self.f_sets
    }

    /// Step index whose vertex first dominates `v`.
    pub fn first_step(&self, v: usize) -> usize {
        self.first_step[v]
    }

    /// `w(v) = 1/|F(v)|`.
    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn total_weight(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, w| a + w)
    }

    /// Line format: a header, then `step vertex : F…` per step.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# greedy trace n={} m={}", self.n, self.len());
        for (k, (x, f)) in self.sequence.iter().zip(&self.f_sets).enumerate() {
            let _ = write!(out, "{} {} :", k + 1, x);
            for v in f {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<GreedyTrace> {
        let bad = |line: usize, what: &str| Error::TraceMismatch(format!("line {line}: {what}"));
        let mut n = None;
        let mut steps = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.split_whitespace().find_map(|t| t.strip_prefix("n=")) {
                    n = Some(v.parse::<usize>().map_err(|_| bad(i + 1, "bad n"))?);
                }
                continue;
            }
            let (head, tail) = line.split_once(':').ok_or_else(|| bad(i + 1, "missing ':'"))?;
            let head: Vec<usize> = head
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad(i + 1, "bad step"))?;
            let [step, x] = head[..] else {
                return Err(bad(i + 1, "expected `step vertex :`"));
            };
            if step != steps.len() + 1 {
                return Err(bad(i + 1, "steps out of order"));
            }
            let f = tail
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<Vec<usize>, _>>()
                .map_err(|_| bad(i + 1, "bad F-set"))?;
            steps.push((x, f));
        }
        let n = n.ok_or_else(|| bad(1, "missing header with n="))?;
        GreedyTrace::from_steps(n, steps)
    }

    /// Re-runs the F-set bookkeeping for this sequence on `g` and compares.
    pub fn validate_against(&self, g: &Graph) -> Result<()> {
        if g.order() != self.n {
            return Err(Error::TraceMismatch(format!(
                "trace has {} vertices, graph has {}",
                self.n,
                g.order()
            )));
        }
        let mut dominated = BitSet::new(self.n);
        for (k, &x) in self.sequence.iter().enumerate() {
            let mut fresh = g.closed_set(x).clone();
            fresh.difference_with(&dominated);
            if fresh.to_vec() != self.f_sets[k] {
                return Err(Error::TraceMismatch(format!(
                    "step {}: F-set differs from N[{x}] minus earlier coverage",
                    k + 1
                )));
            }
            dominated.union_with(&fresh);
        }
        Ok(())
    }
}

pub fn greedy_sequence(g: &Graph) -> GreedyTrace {
    let n = g.order();
    let mut undominated = BitSet::full(n);
    let mut steps = Vec::new();
    while !undominated.is_empty() {
        let mut best = 0;
        let mut best_cover = 0;
        for v in 0..n {
            let c = undominated.intersection_count(g.closed_set(v));
            if c > best_cover {
                best = v;
                best_cover = c;
            }
        }
        let mut fresh = g.closed_set(best).clone();
        fresh.difference_with(&undominated.complement());
        undominated.difference_with(&fresh);
        steps.push((best, fresh.to_vec()));
    }
    GreedyTrace::from_steps(n, steps).expect("greedy F-sets partition the vertex set")
}

/// `γ_g`.
pub fn gamma_g(g: &Graph) -> usize {
    greedy_sequence(g).len()
}

/// The greedy weights scaled into a fractional packing.
#[derive(Clone, Debug)]
pub struct PackingCertificate {
    /// Encloses `1 + ln(1 + Δ)`.
    pub factor: Enclosure,
    /// `w(v) / U` where `U` is the upper end of `factor`; dividing by an
    /// upper bound keeps every neighborhood sum on the feasible side.
    pub weighting: VertexWeighting<Rational>,
    pub report: SlackReport<Rational>,
    /// Encloses the total `γ_g / (1 + ln(1 + Δ))`.
    pub total: Enclosure,
}

impl PackingCertificate {
    pub fn is_feasible(&self) -> bool {
        self.report.is_feasible()
    }
}

pub fn packing_certificate(g: &Graph, trace: &GreedyTrace) -> Result<PackingCertificate> {
    trace.validate_against(g)?;
    let factor = real::one_plus_ln_one_plus(g.max_degree());
    let inv_hi = Rational::one() / factor.upper();
    let inv_lo = Rational::one() / factor.lower();
    let scaled = trace.weights().iter().map(|w| w * &inv_hi).collect();
    let weighting = VertexWeighting::new(scaled, Role::Packing)?;
    let report = check_weighting(g, &weighting)?;
    let m = int(trace.len());
    let total = Enclosure::new(&m * &inv_hi, &m * &inv_lo);
    Ok(PackingCertificate {
        factor,
        weighting,
        report,
        total,
    })
}

/// Per-vertex audit of `∑_{u∈N[v]} w(u) <= 1 + ln(1 + deg v)`.
#[derive(Clone, Debug)]
pub struct NeighborhoodWeightReport {
    pub sums: Vec<Rational>,
    pub max_sum: Rational,
    pub argmax: usize,
    /// Vertices where the bound could not be certified.
    pub violations: Vec<usize>,
    /// Vertices `v` where some `u_i` of `N[v]`, listed in first-domination
    /// order, has `w(u_i) > 1/(p + 1 − i)`.
    pub ordering_violations: Vec<usize>,
}

impl NeighborhoodWeightReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty() && self.ordering_violations.is_empty()
    }
}

pub fn neighborhood_weight_bound_check(g: &Graph, trace: &GreedyTrace) -> Result<NeighborhoodWeightReport> {
    trace.validate_against(g)?;
    let w = trace.weights();
    let sums = neighborhood_sums(g, w);
    let mut violations = Vec::new();
    let mut ordering_violations = Vec::new();
    let mut bound_cache: Vec<Option<Enclosure>> = vec![None; g.max_degree() + 1];
    for (v, sum) in sums.iter().enumerate() {
        let d = g.degree(v);
        let bound = bound_cache[d].get_or_insert_with(|| real::one_plus_ln_one_plus(d));
        if !bound.certainly_ge(sum) {
            violations.push(v);
        }
        let mut members = g.closed_vec(v);
        members.sort_by_key(|&u| (trace.first_step(u), u));
        let p = members.len();
        let ok = members
            .iter()
            .enumerate()
            .all(|(i, &u)| w[u] <= ratio(1, (p - i) as i64));
        if !ok {
            ordering_violations.push(v);
        }
    }
    let (argmax, max_sum) =
        sums.iter().enumerate().fold(
            (0, Rational::zero()),
            |(bi, bs), (i, s)| {
                if *s > bs {
                    (i, s.clone())
                } else {
                    (bi, bs)
                }
            },
        );
    Ok(NeighborhoodWeightReport {
        sums,
        max_sum,
        argmax,
        violations,
        ordering_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{clique_chain_h, hairy_clique};

    #[test]
    fn p4_trace() {
        let g = Graph::path(4).unwrap();
        let t = greedy_sequence(&g);
        assert_eq!(t.sequence(), &[1, 2]);
        assert_eq!(t.f_sets(), &[vec![0, 1, 2], vec![3]]);
        assert_eq!(t.weights(), &[ratio(1, 3), ratio(1, 3), ratio(1, 3), ratio(1, 1)]);
        let r = neighborhood_weight_bound_check(&g, &t).unwrap();
        assert_eq!(r.max_sum, ratio(5, 3));
        assert_eq!(r.argmax, 2);
        assert!(r.is_ok());
    }

    #[test]
    fn complete_and_edgeless() {
        let k = Graph::complete(6).unwrap();
        assert_eq!(greedy_sequence(&k).sequence(), &[0]);
        let e = Graph::edgeless(7).unwrap();
        let t = greedy_sequence(&e);
        assert_eq!(t.len(), 7);
        assert_eq!(t.sequence(), &[0, 1, 2, 3, 4, 5, 6]);
        let r = neighborhood_weight_bound_check(&e, &t).unwrap();
        assert!(r.sums.iter().all(|s| *s == ratio(1, 1)));
        assert!(r.is_ok());
    }

    #[test]
    fn clique_chain_avoids_s() {
        let g = clique_chain_h(5).unwrap();
        let t = greedy_sequence(&g);
        assert_eq!(t.len(), 5);
        assert!(t.sequence().iter().all(|&x| x >= 4));
        // one vertex per clique, largest clique first
        let cliques: Vec<usize> = t
            .sequence()
            .iter()
            .map(|&x| (usize::BITS - 1 - x.leading_zeros()) as usize - 2)
            .collect();
        assert_eq!(cliques, vec![4, 3, 2, 1, 0]);
        assert_eq!(gamma_g(&clique_chain_h(4).unwrap()), 4);
    }

    #[test]
    fn hairy_clique_needs_one_per_pair() {
        assert_eq!(gamma_g(&hairy_clique(6).unwrap()), 6);
    }

    #[test]
    fn packing_certificate_k3() {
        let g = Graph::complete(3).unwrap();
        let t = greedy_sequence(&g);
        let c = packing_certificate(&g, &t).unwrap();
        assert!(c.is_feasible());
        let expect = 1.0 / (1.0 + 3f64.ln());
        for s in &c.report.sums {
            assert!((crate::Scalar::approx(s) - expect).abs() < 1e-12);
        }
        assert!((c.total.approx() - expect).abs() < 1e-12);
    }

    #[test]
    fn packing_certificate_edgeless_is_all_ones() {
        let g = Graph::edgeless(3).unwrap();
        let c = packing_certificate(&g, &greedy_sequence(&g)).unwrap();
        assert!(c.factor.is_exact());
        assert!(c.weighting.weights().iter().all(|w| w.is_one()));
        assert!(c.report.slacks.iter().all(|s| s.is_zero()));
    }

    #[test]
    fn trace_text_roundtrip_and_mismatch() {
        let g = clique_chain_h(4).unwrap();
        let t = greedy_sequence(&g);
        let back = GreedyTrace::parse_text(&t.to_text()).unwrap();
        assert_eq!(back, t);
        back.validate_against(&g).unwrap();
        let other = Graph::path(64).unwrap();
        assert!(matches!(packing_certificate(&other, &t), Err(Error::TraceMismatch(_))));
        assert!(packing_certificate(&Graph::path(3).unwrap(), &t).is_err());
        assert!(GreedyTrace::parse_text("# greedy trace n=2 m=1\n1 0 : 0\n").is_err());
    }

    #[test]
    fn golden_p4_text() {
        let t = greedy_sequence(&Graph::path(4).unwrap());
        assert_eq!(t.to_text(), "# greedy trace n=4 m=2\n1 1 : 0 1 2\n2 2 : 3\n");
    }
}
