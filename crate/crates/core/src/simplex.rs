//! Dense tableau simplex for `max cᵀx  s.t.  Ax <= b, x >= 0` with `b >= 0`.
//!
//! The slack basis is feasible at the origin, so no phase one is needed.
//! Entering column: largest positive reduced cost, smallest index on ties.
//! Leaving row: lexicographic ratio test over `(b_i, (B⁻¹)_i) / a_ik`, which
//! rules out cycling whatever entering rule is used. Duals are read from the
//! reduced costs of the slack columns.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::Rational;

#[derive(Clone, Debug)]
pub struct Simplex<T> {
    rows: usize,
    vars: usize,
    /// `rows × (vars + rows)`; the trailing block starts as the identity.
    tableau: Vec<Vec<T>>,
    rhs: Vec<T>,
    /// Reduced costs, positive means improving.
    reduced: Vec<T>,
    objective: T,
    basis: Vec<usize>,
    max_pivots: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution<T> {
    pub objective: T,
    pub primal: Vec<T>,
    /// One multiplier per row of `A`; feasible for `min bᵀy, Aᵀy >= c, y >= 0`.
    pub dual: Vec<T>,
    pub pivots: usize,
    /// Final basic column per row; slack of row `i` is column `vars + i`.
    pub basis: Vec<usize>,
}

impl<T: Scalar> Simplex<T> {
    pub fn new(a: Vec<Vec<T>>, b: Vec<T>, c: Vec<T>) -> Result<Self> {
        let rows = a.len();
        let vars = c.len();
        if b.len() != rows {
            return Err(Error::InvalidParameter(format!(
                "{} constraint rows but {} right-hand sides",
                rows,
                b.len()
            )));
        }
        if let Some(i) = a.iter().position(|r| r.len() != vars) {
            return Err(Error::InvalidParameter(format!("row {i} has the wrong width")));
        }
        if let Some(i) = b.iter().position(|x| x.is_neg()) {
            return Err(Error::InvalidParameter(format!(
                "right-hand side {i} is negative; origin must be feasible"
            )));
        }
        let width = vars + rows;
        let tableau = a
            .into_iter()
            .enumerate()
            .map(|(i, mut row)| {
                row.resize(width, T::zero());
                row[vars + i] = T::one();
                row
            })
            .collect();
        let mut reduced = c;
        reduced.resize(width, T::zero());
        Ok(Simplex {
            rows,
            vars,
            tableau,
            rhs: b,
            reduced,
            objective: T::zero(),
            basis: (vars..width).collect(),
            max_pivots: 50 * width + 1000,
        })
    }

    pub fn with_max_pivots(mut self, max_pivots: usize) -> Self {
        self.max_pivots = max_pivots;
        self
    }

    fn entering(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (j, r) in self.reduced.iter().enumerate() {
            if r.is_pos() && best.is_none_or(|b| *r > self.reduced[b]) {
                best = Some(j);
            }
        }
        best
    }

    /// `true` if row `p` beats row `q` in the lexicographic ratio test for column `k`.
    fn lex_less(&self, p: usize, q: usize, k: usize) -> bool {
        let (ap, aq) = (&self.tableau[p][k], &self.tableau[q][k]);
        let cmp = |x: &T, y: &T| {
            // compare x/ap with y/aq; both pivots positive
            let l = x.clone() * aq.clone();
            let r = y.clone() * ap.clone();
            let d = l - r;
            if d.is_neg() {
                Some(true)
            } else if d.is_pos() {
                Some(false)
            } else {
                None
            }
        };
        if let Some(v) = cmp(&self.rhs[p], &self.rhs[q]) {
            return v;
        }
        for j in self.vars..self.vars + self.rows {
            if let Some(v) = cmp(&self.tableau[p][j], &self.tableau[q][j]) {
                return v;
            }
        }
        // rows of B⁻¹ are linearly independent, so this is unreachable for
        // exact arithmetic
        p < q
    }

    fn leaving(&self, k: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        for i in 0..self.rows {
            if !self.tableau[i][k].is_pos() {
                continue;
            }
            if best.is_none_or(|b| self.lex_less(i, b, k)) {
                best = Some(i);
            }
        }
        best
    }

    fn pivot(&mut self, r: usize, k: usize) {
        let piv = self.tableau[r][k].clone();
        let nz: Vec<usize> = (0..self.tableau[r].len())
            .filter(|&j| !self.tableau[r][j].is_negligible())
            .collect();
        {
            let row = &mut self.tableau[r];
            for &j in &nz {
                row[j] = row[j].clone() / piv.clone();
            }
            self.rhs[r] = self.rhs[r].clone() / piv;
        }
        let prow: Vec<(usize, T)> = nz.iter().map(|&j| (j, self.tableau[r][j].clone())).collect();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows {
            if i == r {
                continue;
            }
            let f = self.tableau[i][k].clone();
            if f.is_negligible() {
                continue;
            }
            let row = &mut self.tableau[i];
            for (j, v) in &prow {
                row[*j] = row[*j].clone() - f.clone() * v.clone();
            }
            row[k] = T::zero();
            self.rhs[i] = self.rhs[i].clone() - f.clone() * prhs.clone();
        }
        let f = self.reduced[k].clone();
        if !f.is_negligible() {
            for (j, v) in &prow {
                self.reduced[*j] = self.reduced[*j].clone() - f.clone() * v.clone();
            }
            self.reduced[k] = T::zero();
            self.objective = self.objective.clone() + f * prhs;
        }
        self.basis[r] = k;
    }

    pub fn solve(mut self) -> Result<LpSolution<T>> {
        let mut pivots = 0;
        while let Some(k) = self.entering() {
            let r = self
                .leaving(k)
                .ok_or_else(|| Error::InvalidParameter(format!("LP is unbounded along column {k}")))?;
            self.pivot(r, k);
            pivots += 1;
            if pivots > self.max_pivots {
                return Err(Error::Budget(format!("simplex exceeded {} pivots", self.max_pivots)));
            }
        }
        let mut primal = vec![T::zero(); self.vars];
        for (i, &j) in self.basis.iter().enumerate() {
            if j < self.vars {
                primal[j] = self.rhs[i].clone();
            }
        }
        let dual = (0..self.rows).map(|i| -self.reduced[self.vars + i].clone()).collect();
        Ok(LpSolution {
            objective: self.objective,
            primal,
            dual,
            pivots,
            basis: self.basis,
        })
    }
}

/// Exact optimum found by pivoting in `f64` and then certifying the final
/// basis in rational arithmetic. Falls back to the rational simplex when the
/// floating basis is singular or not optimal.
pub fn solve_exact_warm(a: Vec<Vec<Rational>>, b: Vec<Rational>, c: Vec<Rational>) -> Result<LpSolution<Rational>> {
    let af: Vec<Vec<f64>> = a.iter().map(|r| r.iter().map(Scalar::approx).collect()).collect();
    let bf: Vec<f64> = b.iter().map(Scalar::approx).collect();
    let cf: Vec<f64> = c.iter().map(Scalar::approx).collect();
    if let Ok(fl) = Simplex::new(af, bf, cf).and_then(Simplex::solve) {
        if let Some(mut sol) = certify_basis(&a, &b, &c, &fl.basis) {
            sol.pivots = fl.pivots;
            return Ok(sol);
        }
    }
    Simplex::new(a, b, c)?.solve()
}

/// Solves for the basic solution of `basis` and returns it if it is primal
/// and dual feasible.
pub fn certify_basis(
    a: &[Vec<Rational>],
    b: &[Rational],
    c: &[Rational],
    basis: &[usize],
) -> Option<LpSolution<Rational>> {
    let rows = a.len();
    let vars = c.len();
    if basis.len() != rows {
        return None;
    }
    let column = |j: usize, i: usize| -> Rational {
        if j < vars {
            a[i][j].clone()
        } else if j - vars == i {
            Rational::one()
        } else {
            Rational::zero()
        }
    };
    let bm: Vec<Vec<Rational>> = (0..rows)
        .map(|i| basis.iter().map(|&j| column(j, i)).collect())
        .collect();
    let xb = solve_system(bm, b.to_vec())?;
    if xb.iter().any(Signed::is_negative) {
        return None;
    }
    let cost = |j: usize| if j < vars { c[j].clone() } else { Rational::zero() };
    let bt: Vec<Vec<Rational>> = basis
        .iter()
        .map(|&j| (0..rows).map(|i| column(j, i)).collect())
        .collect();
    let y = solve_system(bt, basis.iter().map(|&j| cost(j)).collect())?;
    if y.iter().any(Signed::is_negative) {
        return None;
    }
    for j in 0..vars {
        let used = (0..rows).fold(Rational::zero(), |acc, i| {
            if a[i][j].is_zero() {
                acc
            } else {
                acc + &y[i] * &a[i][j]
            }
        });
        if c[j] > used {
            return None;
        }
    }
    let mut primal = vec![Rational::zero(); vars];
    let mut objective = Rational::zero();
    for (k, &j) in basis.iter().enumerate() {
        if j < vars {
            objective += &c[j] * &xb[k];
            primal[j] = xb[k].clone();
        }
    }
    Some(LpSolution {
        objective,
        primal,
        dual: y,
        pivots: 0,
        basis: basis.to_vec(),
    })
}

/// Solves a square rational system by Gaussian elimination, skipping zero
/// entries. Returns `None` when the matrix is singular.
fn solve_system(m: Vec<Vec<Rational>>, rhs: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .into_iter()
        .zip(rhs)
        .map(|(mut row, r)| {
            row.push(r);
            row
        })
        .collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !aug[i][k].is_zero())?;
        aug.swap(k, p);
        let inv = aug[k][k].recip();
        let (top, rest) = aug.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let support: Vec<usize> = (k + 1..=n).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in rest.iter_mut() {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] * &inv;
            for &j in &support {
                row[j] -= &f * &pivot_row[j];
            }
            row[k] = Rational::zero();
        }
    }
    let mut x = vec![Rational::zero(); n];
    for i in (0..n).rev() {
        let mut acc = aug[i][n].clone();
        for j in i + 1..n {
            if !aug[i][j].is_zero() {
                acc -= &aug[i][j] * &x[j];
            }
        }
        x[i] = acc / &aug[i][i];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};
    use crate::Rational;

    fn q(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| int(x as usize)).collect()
    }

    #[test]
    fn textbook_lp() {
        // max 3x + 5y; x <= 4, 2y <= 12, 3x + 2y <= 18  ->  36 at (2, 6)
        let a = vec![q(&[1, 0]), q(&[0, 2]), q(&[3, 2])];
        let s = Simplex::new(a, q(&[4, 12, 18]), q(&[3, 5])).unwrap().solve().unwrap();
        assert_eq!(s.objective, int(36));
        assert_eq!(s.primal, q(&[2, 6]));
        // duals (0, 3/2, 1)
        assert_eq!(s.dual, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn float_instantiation_agrees() {
        let a = vec![vec![1.0, 0.0], vec![0.0, 2.0], vec![3.0, 2.0]];
        let s = Simplex::new(a, vec![4.0, 12.0, 18.0], vec![3.0f64, 5.0])
            .unwrap()
            .solve()
            .unwrap();
        assert!((s.objective - 36.0).abs() < 1e-9);
    }

    #[test]
    fn degenerate_lp_terminates() {
        // Beale's cycling example (for Dantzig with naive ties).
        let a = vec![
            vec![ratio(1, 4), ratio(-60, 1), ratio(-1, 25), ratio(9, 1)],
            vec![ratio(1, 2), ratio(-90, 1), ratio(-1, 50), ratio(3, 1)],
            vec![int(0), int(0), int(1), int(0)],
        ];
        let b = q(&[0, 0, 1]);
        let c = vec![ratio(3, 4), ratio(-150, 1), ratio(1, 50), ratio(-6, 1)];
        let s = Simplex::new(a, b, c).unwrap().solve().unwrap();
        assert_eq!(s.objective, ratio(1, 20));
    }

    #[test]
    fn warm_start_matches_exact() {
        let a = vec![q(&[1, 0]), q(&[0, 2]), q(&[3, 2])];
        let s = solve_exact_warm(a, q(&[4, 12, 18]), q(&[3, 5])).unwrap();
        assert_eq!(s.objective, int(36));
        assert_eq!(s.dual, vec![int(0), ratio(3, 2), int(1)]);
    }

    #[test]
    fn wrong_basis_is_rejected() {
        let a = vec![q(&[1, 0]), q(&[0, 2]), q(&[3, 2])];
        let (b, c) = (q(&[4, 12, 18]), q(&[3, 5]));
        // slack basis: feasible but not optimal
        assert!(certify_basis(&a, &b, &c, &[2, 3, 4]).is_none());
        // singular choice
        assert!(certify_basis(&a, &b, &c, &[0, 0, 4]).is_none());
        let s = certify_basis(&a, &b, &c, &[2, 1, 0]).unwrap();
        assert_eq!(s.objective, int(36));
    }

    #[test]
    fn bareiss_solves_rational_system() {
        let m = vec![vec![ratio(1, 2), ratio(1, 3)], vec![int(2), int(1)]];
        let x = solve_system(m, vec![int(1), int(3)]).unwrap();
        assert_eq!(x, vec![int(0), int(3)]);
    }

    #[test]
    fn unbounded_and_bad_input() {
        let a = vec![vec![ratio(-1, 1)]];
        assert!(Simplex::new(a, q(&[1]), q(&[1])).unwrap().solve().is_err());
        assert!(Simplex::new(vec![q(&[1])], q(&[1, 2]), q(&[1])).is_err());
        assert!(Simplex::new(vec![q(&[1])], vec![int(0) - int(1)], q(&[1])).is_err());
    }
}
