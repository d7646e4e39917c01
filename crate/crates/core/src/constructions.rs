//! Deterministic builders for the extremal families and seeded random graphs.
//!
//! Canonical choices where only defining properties are fixed:
//! * the removed perfect matching pairs `2i` with `2i + 1`;
//! * strong-power tuples are indexed in mixed radix, first coordinate most
//!   significant (so index order is lexicographic tuple order);
//! * the clique chain puts `S = {0, 1, 2, 3}` first, then cliques of sizes
//!   `4, 8, …, 2^{t+1}` in increasing order, and joins local vertex `ℓ` of a
//!   clique of size `s` to `S`-vertex `⌊4ℓ/s⌋` (contiguous quarters).
//!
//! Random graphs: `ChaCha8Rng::seed_from_u64(seed)` drives a single stream;
//! pairs `(i, j)`, `i < j`, are visited in lexicographic order and each
//! consumes exactly one draw `r = gen_range(0..den)`; the edge is present iff
//! `r < num` where `p = num/den` in lowest terms.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::scalar::parse_exact;
use crate::Rational;

/// Default refusal threshold for the strong-power family.
pub const DEFAULT_VERTEX_CAP: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    MatchingComplement,
    TorusJ,
    CliqueChainH,
    HairyClique,
    Random,
}

impl Family {
    pub const ALL: [Family; 5] = [
        Family::MatchingComplement,
        Family::TorusJ,
        Family::CliqueChainH,
        Family::HairyClique,
        Family::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::MatchingComplement => "matching_complement",
            Family::TorusJ => "torus_J",
            Family::CliqueChainH => "clique_chain_H",
            Family::HairyClique => "hairy_clique",
            Family::Random => "random",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family {s:?}")))
    }
}

/// Edge probability `num/den` with `0 < p < 1`, kept in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub const HALF: Probability = Probability { num: 1, den: 2 };

    pub fn new(num: u64, den: u64) -> Result<Probability> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::InvalidParameter(format!(
                "edge probability {num}/{den} must lie strictly between 0 and 1"
            )));
        }
        let g = num.gcd(&den);
        Ok(Probability {
            num: num / g,
            den: den / g,
        })
    }

    pub fn from_rational(p: &Rational) -> Result<Probability> {
        let bad = || Error::InvalidParameter(format!("edge probability {p} out of range"));
        if !p.is_positive() || *p >= Rational::one() {
            return Err(bad());
        }
        let num = p.numer().to_u64().ok_or_else(bad)?;
        let den = p.denom().to_u64().ok_or_else(bad)?;
        Probability::new(num, den)
    }

    pub fn as_rational(&self) -> Rational {
        Rational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Probability {
    type Err = Error;

    /// Accepts `num/den` or a short decimal such as `0.2`.
    fn from_str(s: &str) -> Result<Probability> {
        let s = s.trim();
        if let Some(r) = parse_exact(s) {
            return Probability::from_rational(&r);
        }
        if let Some((int_part, frac)) = s.split_once('.') {
            if int_part.chars().all(|c| c.is_ascii_digit())
                && !frac.is_empty()
                && frac.len() <= 9
                && frac.chars().all(|c| c.is_ascii_digit())
            {
                let den = 10u64.pow(frac.len() as u32);
                let whole: u64 = if int_part.is_empty() {
                    0
                } else {
                    int_part.parse().unwrap_or(u64::MAX)
                };
                let num = whole
                    .saturating_mul(den)
                    .saturating_add(frac.parse::<u64>().unwrap_or(0));
                return Probability::new(num, den);
            }
        }
        Err(Error::InvalidParameter(format!("cannot parse probability {s:?}")))
    }
}

/// A request for one member of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionSpec {
    pub family: Family,
    /// `t` for the structured families, `n` for `random`.
    pub param: usize,
    pub seed: u64,
    pub probability: Probability,
    pub vertex_cap: usize,
}

impl ConstructionSpec {
    pub fn new(family: Family, param: usize) -> Self {
        ConstructionSpec {
            family,
            param,
            seed: 0,
            probability: Probability::HALF,
            vertex_cap: DEFAULT_VERTEX_CAP,
        }
    }

    pub fn random(n: usize, seed: u64, probability: Probability) -> Self {
        ConstructionSpec {
            seed,
            probability,
            ..ConstructionSpec::new(Family::Random, n)
        }
    }

    pub fn validate(&self) -> Result<()> {
        let min = match self.family {
            Family::CliqueChainH => 4,
            _ => 1,
        };
        if self.param < min {
            let what = if self.family == Family::Random { "n" } else { "t" };
            return Err(Error::InvalidParameter(format!(
                "{} requires {what} >= {min}, got {}",
                self.family, self.param
            )));
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        match self.family {
            Family::Random => format!("random_n{}_p{}_s{}", self.param, self.probability, self.seed),
            f => format!("{f}_t{}", self.param),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        self.validate()?;
        match self.family {
            Family::MatchingComplement => matching_complement(self.param),
            Family::TorusJ => torus_j_capped(self.param, self.vertex_cap),
            Family::CliqueChainH => clique_chain_h(self.param),
            Family::HairyClique => hairy_clique(self.param),
            Family::Random => random_graph(self.param, self.seed, self.probability),
        }
    }
}

/// The vertex not adjacent to `v` in the matching complement.
pub fn matching_partner(v: usize) -> usize {
    v ^ 1
}

/// `K_{2t}` minus the perfect matching `{2i, 2i+1}`.
pub fn matching_complement(t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::InvalidParameter("matching_complement requires t >= 1".into()));
    }
    let n = 2 * t;
    Graph::from_edges(
        n,
        (0..n).flat_map(|u| {
            (u + 1..n)
                .filter(move |&v| v != matching_partner(u))
                .map(move |v| (u, v))
        }),
    )
}

/// Order of the strong power for parameter `t`, if it fits in `usize`.
pub fn torus_order(t: usize) -> Option<usize> {
    let base = 2 * t;
    let d = u32::try_from(2 * t - 1).ok()?;
    base.checked_pow(d)
}

/// Mixed-radix index of a tuple over `0..2t`.
pub fn torus_index(t: usize, tuple: &[usize]) -> usize {
    let base = 2 * t;
    tuple.iter().fold(0, |acc, &x| {
        debug_assert!(x < base);
        acc * base + x
    })
}

/// Inverse of [`torus_index`].
pub fn torus_tuple(t: usize, mut index: usize) -> Vec<usize> {
    let base = 2 * t;
    let d = 2 * t - 1;
    let mut out = vec![0; d];
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
    out
}

/// The diagonal tuples `(v, v, …, v)`; `2t` of them, a dominating set.
pub fn torus_diagonal(t: usize) -> Vec<usize> {
    (0..2 * t).map(|v| torus_index(t, &vec![v; 2 * t - 1])).collect()
}

/// For `d = 2t − 1` tuples, the tuple whose `i`-th coordinate is the matching
/// partner of the `i`-th coordinate of the `i`-th tuple. No tuple in the
/// input dominates it.
pub fn torus_blocker(t: usize, set: &[usize]) -> Result<usize> {
    let d = 2 * t - 1;
    if set.len() != d {
        return Err(Error::InvalidParameter(format!(
            "blocker needs exactly {d} tuples, got {}",
            set.len()
        )));
    }
    let coords: Vec<usize> = set
        .iter()
        .enumerate()
        .map(|(i, &x)| matching_partner(torus_tuple(t, x)[i]))
        .collect();
    Ok(torus_index(t, &coords))
}

/// Strong power of `K_{2t} − tK_2` with `2t − 1` factors, refusing orders
/// above [`DEFAULT_VERTEX_CAP`].
pub fn torus_j(t: usize) -> Result<Graph> {
    torus_j_capped(t, DEFAULT_VERTEX_CAP)
}

pub fn torus_j_capped(t: usize, vertex_cap: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::InvalidParameter("torus_J requires t >= 1".into()));
    }
    let n = match torus_order(t) {
        Some(n) if n <= vertex_cap => n,
        _ => {
            return Err(Error::InvalidParameter(format!(
                "torus_J(t={t}) has (2t)^(2t-1) vertices, above the cap of {vertex_cap}"
            )))
        }
    };
    let base = 2 * t;
    let d = 2 * t - 1;
    let mut edges = Vec::new();
    let mut coords = vec![0usize; d];
    for u in 0..n {
        let tuple = torus_tuple(t, u);
        // Enumerate every tuple whose coordinates avoid the partners of `tuple`.
        let allowed: Vec<Vec<usize>> = tuple
            .iter()
            .map(|&x| (0..base).filter(|&y| y != matching_partner(x)).collect())
            .collect();
        let mut pos = vec![0usize; d];
        'odometer: loop {
            for i in 0..d {
                coords[i] = allowed[i][pos[i]];
            }
            let v = torus_index(t, &coords);
            if v > u {
                edges.push((u, v));
            }
            for i in (0..d).rev() {
                pos[i] += 1;
                if pos[i] < allowed[i].len() {
                    continue 'odometer;
                }
                pos[i] = 0;
            }
            break;
        }
    }
    Graph::from_edges(n, edges)
}

/// Vertex range `[start, end)` of clique `k` (size `2^{k+2}`) in the chain.
pub fn clique_range(k: usize) -> std::ops::Range<usize> {
    (1usize << (k + 2))..(1usize << (k + 3))
}

/// The `S`-vertex joined to local index `local` of a clique of size `size`.
pub fn quarter_owner(local: usize, size: usize) -> usize {
    4 * local / size
}

/// `S = {0,1,2,3}` plus cliques `K_4, K_8, …, K_{2^{t+1}}`, each quarter of
/// each clique joined to one vertex of `S`.
pub fn clique_chain_h(t: usize) -> Result<Graph> {
    if t < 4 {
        return Err(Error::InvalidParameter(format!(
            "clique_chain_H requires t >= 4, got {t}"
        )));
    }
    if t + 3 >= usize::BITS as usize {
        return Err(Error::InvalidParameter(format!("clique_chain_H(t={t}) is too large")));
    }
    let n = 1usize << (t + 2);
    let mut edges = Vec::new();
    for k in 0..t {
        let range = clique_range(k);
        let size = range.len();
        for (local, u) in range.clone().enumerate() {
            edges.push((quarter_owner(local, size), u));
            for v in u + 1..range.end {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// `K_t` on `0..t` with pendant `t + i` attached to `i`.
pub fn hairy_clique(t: usize) -> Result<Graph> {
    if t == 0 {
        return Err(Error::InvalidParameter("hairy_clique requires t >= 1".into()));
    }
    let clique = (0..t).flat_map(|u| (u + 1..t).map(move |v| (u, v)));
    let hairs = (0..t).map(|i| (i, t + i));
    Graph::from_edges(2 * t, clique.chain(hairs))
}

/// Seeded `G(n, p)`; see the module docs for the exact sampling procedure.
pub fn random_graph(n: usize, seed: u64, p: Probability) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("random graph requires n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_range(0..p.den) < p.num {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// `G(n, 1/2)`.
pub fn random_half(n: usize, seed: u64) -> Result<Graph> {
    random_graph(n, seed, Probability::HALF)
}

/// Convenience for tests and sweeps: `p` as a reduced rational.
pub fn probability(num: u64, den: u64) -> Probability {
    Probability::new(num, den).expect("probability in (0, 1)")
}
