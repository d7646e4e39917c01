//! Closed-form bounds and the inequality chain tying the measured values
//! together:
//!
//! ```text
//! n/(1+Δ) <= γ_f <= n/(1+δ)
//! γ_f <= γ <= γ_g
//! γ_g <= (1 + ln(1+Δ)) · γ_f
//! γ_g <= n · [1 − ∏_{i=1}^{δ+1} iδ/(iδ+1)]
//! ```
//!
//! Rational comparisons are exact. Comparisons involving `ln` pass only when
//! the enclosure proves them.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::real::{self, Enclosure};
use crate::scalar::{format_approx, format_exact, int, ratio};
use crate::Rational;

/// `(n/(1+Δ), n/(1+δ))`.
pub fn frac_sandwich(g: &Graph) -> (Rational, Rational) {
    let n = g.order();
    let (lo, hi) = g.degree_stats();
    (ratio(n as i64, 1 + hi as i64), ratio(n as i64, 1 + lo as i64))
}

/// `n · [1 − ∏_{i=1}^{δ+1} iδ/(iδ+1)]` for given `n` and `δ`.
pub fn cssf_value(n: usize, delta: usize) -> Rational {
    let mut product = Rational::one();
    for i in 1..=delta + 1 {
        let id = int(i * delta);
        product *= &id / (&id + Rational::one());
    }
    int(n) * (Rational::one() - product)
}

pub fn cssf_bound(g: &Graph) -> Rational {
    cssf_value(g.order(), g.min_degree())
}

/// Encloses `1 + ln(1 + Δ)`.
pub fn ratio_bound(g: &Graph) -> Enclosure {
    real::one_plus_ln_one_plus(g.max_degree())
}

/// `C(n, p) · (1 − 2^{−p})^{n−p}`, the expected number of dominating
/// `p`-sets in `G(n, 1/2)`. Exact.
pub fn expected_dominating_psets(n: usize, p: usize) -> Result<Rational> {
    if p == 0 || p > n {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= p <= n, got p = {p}, n = {n}"
        )));
    }
    let choose = binomial(BigInt::from(n), BigInt::from(p));
    let miss = Rational::new(BigInt::one(), BigInt::one() << p);
    let hit = Rational::one() - miss;
    let exp = i32::try_from(n - p).map_err(|_| Error::InvalidParameter(format!("n = {n} too large")))?;
    Ok(Rational::from_integer(choose) * num_traits::pow::Pow::pow(&hit, exp))
}

/// `ln E` of [`expected_dominating_psets`], computed in floating point from
/// the exact value's digits (safe for values far below `f64` range).
pub fn ln_expected_dominating_psets(n: usize, p: usize) -> Result<f64> {
    let e = expected_dominating_psets(n, p)?;
    Ok(ln_rational(&e))
}

fn ln_rational(r: &Rational) -> f64 {
    fn ln_big(x: &BigInt) -> f64 {
        let bits = x.bits();
        if bits < 1000 {
            return x.to_f64().unwrap_or(f64::INFINITY).ln();
        }
        let shift = bits - 64;
        let top: BigInt = x >> shift as usize;
        top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
    }
    if r.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_big(r.numer()) - ln_big(r.denom())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// An operand was not measured.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub statement: String,
    pub verdict: Verdict,
}

/// Every bound for one graph plus whatever was measured.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundsReport {
    pub n: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub frac_lower: Rational,
    pub frac_upper: Rational,
    pub ratio_bound: Enclosure,
    pub cssf_bound: Rational,
    pub gamma_f: Option<Rational>,
    pub gamma: Option<usize>,
    pub gamma_g: Option<usize>,
}

impl BoundsReport {
    pub fn new(g: &Graph) -> Self {
        let (frac_lower, frac_upper) = frac_sandwich(g);
        let (min_degree, max_degree) = g.degree_stats();
        BoundsReport {
            n: g.order(),
            min_degree,
            max_degree,
            frac_lower,
            frac_upper,
            ratio_bound: real::one_plus_ln_one_plus(max_degree),
            cssf_bound: cssf_value(g.order(), min_degree),
            gamma_f: None,
            gamma: None,
            gamma_g: None,
        }
    }

    /// Verdicts recomputed from the stored operands.
    pub fn checks(&self) -> Vec<Check> {
        let mut out = Vec::new();
        let mut push = |name, statement: String, verdict: Option<bool>| {
            out.push(Check {
                name,
                statement,
                verdict: match verdict {
                    None => Verdict::Skipped,
                    Some(true) => Verdict::Pass,
                    Some(false) => Verdict::Fail,
                },
            })
        };
        let gf = self.gamma_f.as_ref();
        let g = self.gamma.map(int);
        let gg = self.gamma_g.map(int);
        push("frac_lower", "n/(1+Δ) <= γ_f".into(), gf.map(|f| self.frac_lower <= *f));
        push("frac_upper", "γ_f <= n/(1+δ)".into(), gf.map(|f| *f <= self.frac_upper));
        push(
            "frac_le_gamma",
            "γ_f <= γ".into(),
            gf.zip(g.as_ref()).map(|(f, g)| f <= g),
        );
        push(
            "gamma_le_greedy",
            "γ <= γ_g".into(),
            g.as_ref().zip(gg.as_ref()).map(|(g, gg)| g <= gg),
        );
        push(
            "frac_le_greedy",
            "γ_f <= γ_g".into(),
            gf.zip(gg.as_ref()).map(|(f, gg)| f <= gg),
        );
        push(
            "ratio_bound",
            "γ_g <= (1+ln(1+Δ))·γ_f".into(),
            gf.zip(gg.as_ref())
                .map(|(f, gg)| self.ratio_bound.scale(f).certainly_ge(gg)),
        );
        push(
            "cssf_bound",
            "γ_g <= n[1-∏ iδ/(iδ+1)]".into(),
            gg.as_ref().map(|gg| *gg <= self.cssf_bound),
        );
        out
    }

    pub fn failures(&self) -> Vec<Check> {
        self.checks()
            .into_iter()
            .filter(|c| c.verdict == Verdict::Fail)
            .collect()
    }

    /// No measured inequality failed.
    pub fn chain_ok(&self) -> bool {
        self.failures().is_empty()
    }

    /// All three measured values present.
    pub fn is_complete(&self) -> bool {
        self.gamma_f.is_some() && self.gamma.is_some() && self.gamma_g.is_some()
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        let opt = |v: Option<String>| v.unwrap_or_else(|| "-".into());
        let rows = [
            ("n", self.n.to_string()),
            ("delta", self.min_degree.to_string()),
            ("Delta", self.max_degree.to_string()),
            ("gamma_f", opt(self.gamma_f.as_ref().map(format_exact))),
            ("gamma", opt(self.gamma.map(|v| v.to_string()))),
            ("gamma_g", opt(self.gamma_g.map(|v| v.to_string()))),
            ("frac_lo", format_exact(&self.frac_lower)),
            ("frac_hi", format_exact(&self.frac_upper)),
            ("ratio_bound", self.ratio_bound.to_string()),
            (
                "cssf_bound",
                format!(
                    "{} ({})",
                    format_exact(&self.cssf_bound),
                    format_approx(self.cssf_bound.to_f64().unwrap_or(f64::NAN))
                ),
            ),
        ];
        for (k, v) in rows {
            let _ = writeln!(out, "{k:<14}{v}");
        }
        if !self.is_complete() {
            let _ = writeln!(out, "{:<14}partial (some values not measured)", "status");
        }
        for c in self.checks() {
            let mark = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::Skipped => "skip",
            };
            let _ = writeln!(out, "{mark:<6}{:<18}{}", c.name, c.statement);
        }
        out
    }
}

/// Verifies every bound against the measured values.
pub fn verify_chain(
    g: &Graph,
    gamma_f: Option<Rational>,
    gamma: Option<usize>,
    gamma_g: Option<usize>,
) -> BoundsReport {
    BoundsReport {
        gamma_f,
        gamma,
        gamma_g,
        ..BoundsReport::new(g)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tighter {
    RatioForm,
    CssfForm,
    /// Enclosure straddles the other bound.
    Undecided,
}

impl fmt::Display for Tighter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tighter::RatioForm => "ratio_form",
            Tighter::CssfForm => "cssf_form",
            Tighter::Undecided => "undecided",
        })
    }
}

/// The two constant-free upper bounds on `γ_g`.
#[derive(Clone, Debug, PartialEq)]
pub struct GgComparison {
    /// `(1 + ln(1+Δ)) · γ_f`.
    pub ratio_form: Enclosure,
    /// `n · [1 − ∏ iδ/(iδ+1)]`.
    pub cssf_form: Rational,
    pub tighter: Tighter,
}

pub fn compare_gg_bounds(g: &Graph, gamma_f: &Rational) -> GgComparison {
    let ratio_form = ratio_bound(g).scale(gamma_f);
    let cssf_form = cssf_bound(g);
    let tighter = if ratio_form.upper() < &cssf_form {
        Tighter::RatioForm
    } else if ratio_form.lower() > &cssf_form {
        Tighter::CssfForm
    } else {
        Tighter::Undecided
    };
    GgComparison {
        ratio_form,
        cssf_form,
        tighter,
    }
}
