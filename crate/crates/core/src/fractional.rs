//! Fractional domination number by linear programming.
//!
//! The closed-neighborhood matrix `N` is symmetric, so the domination LP
//! `min 1ᵀf, Nf >= 1, f >= 0` and the packing LP `max 1ᵀp, Np <= 1, p >= 0`
//! are each other's duals. We run the simplex on the packing side (its slack
//! basis is feasible) and read the domination weights off the duals.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::{format_exact, Scalar};
use crate::simplex::{solve_exact_warm, LpSolution, Simplex};
use crate::weighting::{Role, VertexWeighting};
use crate::Rational;

/// Largest order `solve_gamma_f` accepts by default.
pub const DEFAULT_LP_CAP: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    MinDomination,
    MaxPacking,
}

/// Closed-neighborhood incidence rows plus the optimization sense.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    /// `rows[v]` is the sorted support of row `v`, i.e. `N[v]`.
    pub rows: Vec<Vec<usize>>,
    pub sense: Sense,
}

impl LpInstance {
    pub fn order(&self) -> usize {
        self.rows.len()
    }

    pub fn dense<T: Scalar>(&self) -> Vec<Vec<T>> {
        let n = self.order();
        self.rows
            .iter()
            .map(|support| {
                let mut row = vec![T::zero(); n];
                for &u in support {
                    row[u] = T::one();
                }
                row
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(v, r)| r.binary_search(&v).is_ok() && r.iter().all(|&u| self.rows[u].binary_search(&v).is_ok()))
    }
}

/// Rows of `N`; the bounds `f <= 1` are implied at the optimum and omitted.
pub fn build_lp(g: &Graph, sense: Sense) -> LpInstance {
    LpInstance {
        rows: (0..g.order()).map(|v| g.closed_vec(v)).collect(),
        sense,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractionalSolution<T> {
    pub value: T,
    /// Optimal fractional domination.
    pub primal: VertexWeighting<T>,
    /// Optimal fractional packing.
    pub dual: VertexWeighting<T>,
    pub duality_gap: T,
    pub pivots: usize,
}

impl<T: Scalar> FractionalSolution<T> {
    pub fn primal_total(&self) -> T {
        self.primal.total()
    }

    pub fn dual_total(&self) -> T {
        self.dual.total()
    }
}

impl FractionalSolution<Rational> {
    /// `gamma_f`, `gap`, then one `v primal dual` line per vertex, all exact.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "gamma_f {}", format_exact(&self.value));
        let _ = writeln!(out, "primal_total {}", format_exact(&self.primal_total()));
        let _ = writeln!(out, "dual_total {}", format_exact(&self.dual_total()));
        let _ = writeln!(out, "gap {}", format_exact(&self.duality_gap));
        for (v, (f, p)) in self.primal.weights().iter().zip(self.dual.weights()).enumerate() {
            let _ = writeln!(out, "{v} {} {}", format_exact(f), format_exact(p));
        }
        out
    }
}

fn clamp_unit<T: Scalar>(x: T) -> T {
    if x.is_negative() || x.is_negligible() {
        T::zero()
    } else if x > T::one() {
        T::one()
    } else {
        x
    }
}

fn check_cap(g: &Graph, cap: usize) -> Result<()> {
    let n = g.order();
    if n > cap {
        return Err(Error::Budget(format!("LP order {n} exceeds the cap of {cap}")));
    }
    Ok(())
}

/// Solves both LPs in scalar type `T` with the plain simplex.
pub fn solve<T: Scalar>(g: &Graph, cap: usize) -> Result<FractionalSolution<T>> {
    check_cap(g, cap)?;
    let lp = build_lp(g, Sense::MaxPacking);
    let ones = vec![T::one(); g.order()];
    let sol = Simplex::new(lp.dense(), ones.clone(), ones)?.solve()?;
    package(sol)
}

fn package<T: Scalar>(sol: LpSolution<T>) -> Result<FractionalSolution<T>> {
    let packing: Vec<T> = sol.primal.into_iter().map(clamp_unit).collect();
    let domination: Vec<T> = sol.dual.into_iter().map(clamp_unit).collect();
    let primal = VertexWeighting::new(domination, Role::Domination)?;
    let dual = VertexWeighting::new(packing, Role::Packing)?;
    let gap = primal.total() - dual.total();
    Ok(FractionalSolution {
        value: primal.total(),
        primal,
        dual,
        duality_gap: gap,
        pivots: sol.pivots,
    })
}

/// Exact `γ_f` with both optimal weightings.
pub fn solve_gamma_f(g: &Graph) -> Result<FractionalSolution<Rational>> {
    solve_gamma_f_capped(g, DEFAULT_LP_CAP)
}

/// Exact `γ_f`, pivoting in floating point and certifying the basis exactly.
pub fn solve_gamma_f_capped(g: &Graph, cap: usize) -> Result<FractionalSolution<Rational>> {
    check_cap(g, cap)?;
    let lp = build_lp(g, Sense::MaxPacking);
    let ones = vec![Rational::one(); g.order()];
    package(solve_exact_warm(lp.dense(), ones.clone(), ones)?)
}

/// Totals confirmed by [`verify_strong_duality`].
#[derive(Clone, Debug, PartialEq)]
pub struct DualityCertificate {
    pub primal_total: Rational,
    pub dual_total: Rational,
}

/// Re-checks feasibility of both weightings and equality of their totals.
///
/// Neighborhood sums are accumulated edge by edge here, independently of
/// the weighting checker and the solver.
pub fn verify_strong_duality(sol: &FractionalSolution<Rational>, g: &Graph) -> Result<DualityCertificate> {
    let n = g.order();
    let f = sol.primal.weights();
    let p = sol.dual.weights();
    if f.len() != n || p.len() != n {
        return Err(Error::Verification(format!(
            "solution has {}/{} weights for a graph of order {n}",
            f.len(),
            p.len()
        )));
    }
    let one = Rational::from_integer(1.into());
    for (v, (a, b)) in f.iter().zip(p).enumerate() {
        for (name, x) in [("primal", a), ("dual", b)] {
            if x.is_negative() || *x > one {
                return Err(Error::Verification(format!(
                    "{name} weight at vertex {v} is {x}, outside [0, 1]"
                )));
            }
        }
    }
    let mut fs: Vec<Rational> = f.to_vec();
    let mut ps: Vec<Rational> = p.to_vec();
    for &(u, v) in g.edges() {
        fs[u] += &f[v];
        fs[v] += &f[u];
        ps[u] += &p[v];
        ps[v] += &p[u];
    }
    for v in 0..n {
        if fs[v] < one {
            return Err(Error::Verification(format!(
                "primal constraint at vertex {v}: closed-neighborhood sum {} < 1",
                fs[v]
            )));
        }
        if ps[v] > one {
            return Err(Error::Verification(format!(
                "dual constraint at vertex {v}: closed-neighborhood sum {} > 1",
                ps[v]
            )));
        }
    }
    let primal_total = f.iter().fold(Rational::zero(), |a, x| a + x);
    let dual_total = p.iter().fold(Rational::zero(), |a, x| a + x);
    if primal_total != dual_total {
        return Err(Error::Verification(format!(
            "duality gap: primal total {primal_total} != dual total {dual_total}"
        )));
    }
    if sol.value != primal_total {
        return Err(Error::Verification(format!(
            "reported value {} differs from primal total {primal_total}",
            sol.value
        )));
    }
    Ok(DualityCertificate {
        primal_total,
        dual_total,
    })
}

pub fn strong_duality_holds(sol: &FractionalSolution<Rational>, g: &Graph) -> bool {
    verify_strong_duality(sol, g).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{clique_chain_h, hairy_clique, torus_j};
    use crate::scalar::{int, ratio};
    use crate::weighting::check_weighting;

    fn gamma_f(g: &Graph) -> Rational {
        let s = solve_gamma_f(g).unwrap();
        verify_strong_duality(&s, g).unwrap();
        assert!(check_weighting(g, &s.primal).unwrap().is_feasible());
        assert!(check_weighting(g, &s.dual).unwrap().is_feasible());
        assert!(s.duality_gap.is_zero());
        s.value
    }

    #[test]
    fn lp_instances() {
        let k1 = build_lp(&Graph::edgeless(1).unwrap(), Sense::MinDomination);
        assert_eq!(k1.rows, vec![vec![0]]);
        let p3 = build_lp(&Graph::path(3).unwrap(), Sense::MinDomination);
        assert_eq!(p3.rows, vec![vec![0, 1], vec![0, 1, 2], vec![1, 2]]);
        assert!(p3.is_symmetric());
        let c4 = build_lp(&Graph::cycle(4).unwrap(), Sense::MaxPacking);
        assert!(c4
            .dense::<Rational>()
            .iter()
            .all(|r| r.iter().filter(|x| !x.is_zero()).count() == 3));
    }

    #[test]
    fn regular_graphs() {
        assert_eq!(gamma_f(&Graph::cycle(4).unwrap()), ratio(4, 3));
        assert_eq!(gamma_f(&Graph::cycle(5).unwrap()), ratio(5, 3));
        assert_eq!(gamma_f(&Graph::petersen().unwrap()), ratio(5, 2));
        assert_eq!(gamma_f(&Graph::complete(7).unwrap()), int(1));
        assert_eq!(gamma_f(&Graph::edgeless(1).unwrap()), int(1));
    }

    #[test]
    fn families() {
        assert_eq!(gamma_f(&torus_j(2).unwrap()), ratio(64, 27));
        assert_eq!(gamma_f(&clique_chain_h(4).unwrap()), int(4));
        assert_eq!(gamma_f(&hairy_clique(4).unwrap()), int(4));
        assert_eq!(gamma_f(&Graph::star(5).unwrap()), int(1));
    }

    #[test]
    fn warm_and_plain_exact_agree() {
        for g in [
            Graph::petersen().unwrap(),
            torus_j(2).unwrap(),
            Graph::cycle(7).unwrap(),
        ] {
            let plain: FractionalSolution<Rational> = solve(&g, 512).unwrap();
            verify_strong_duality(&plain, &g).unwrap();
            assert_eq!(plain.value, gamma_f(&g));
        }
    }

    #[test]
    fn float_solve_is_close() {
        let s: FractionalSolution<f64> = solve(&torus_j(2).unwrap(), 512).unwrap();
        assert!((s.value - 64.0 / 27.0).abs() < 1e-9);
    }

    #[test]
    fn tampering_is_detected() {
        let g = Graph::cycle(4).unwrap();
        let mut s = solve_gamma_f(&g).unwrap();
        assert_eq!(verify_strong_duality(&s, &g).unwrap().dual_total, ratio(4, 3));
        let mut w = s.primal.weights().to_vec();
        let v = w.iter().position(|x| !x.is_zero()).unwrap();
        w[v] = Rational::zero();
        s.primal = VertexWeighting::new(w, Role::Domination).unwrap();
        let err = verify_strong_duality(&s, &g).unwrap_err().to_string();
        assert!(err.contains("primal constraint at vertex"), "{err}");
    }

    #[test]
    fn cap_is_enforced() {
        assert!(matches!(
            solve_gamma_f_capped(&Graph::path(10).unwrap(), 9),
            Err(Error::Budget(_))
        ));
    }
}
