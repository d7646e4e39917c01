//! Simple undirected graphs on dense vertex indices, plus the edge-list
//! text format.
//!
//! Vertex order is index order. The greedy algorithm breaks ties on it.

use std::fmt::Write as _;

use crate::bitset::BitSet;
use crate::error::{Error, ParseError, ParseErrorKind, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    closed: Vec<BitSet>,
}

impl Graph {
    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    /// Edges may be given in either orientation.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut closed: Vec<BitSet> = (0..n).map(|v| BitSet::from_indices(n, [v])).collect();
        let mut list = Vec::new();
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            if closed[a].contains(b) {
                return Err(Error::DuplicateEdge(a, b));
            }
            closed[a].insert(b);
            closed[b].insert(a);
            adjacency[a].push(b);
            adjacency[b].push(a);
            list.push((a, b));
        }
        for nb in adjacency.iter_mut() {
            nb.sort_unstable();
        }
        list.sort_unstable();
        Ok(Graph {
            n,
            edges: list,
            adjacency,
            closed,
        })
    }

    /// Graph on `n` vertices with no edges.
    pub fn edgeless(n: usize) -> Result<Graph> {
        Graph::from_edges(n, [])
    }

    pub fn complete(n: usize) -> Result<Graph> {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }

    pub fn path(n: usize) -> Result<Graph> {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v)))
    }

    pub fn cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
        }
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Result<Graph> {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v)))
    }

    pub fn petersen() -> Result<Graph> {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && u < self.n && self.closed[u].contains(v)
    }

    /// `N[v]` as a bitset.
    pub fn closed_set(&self, v: usize) -> &BitSet {
        &self.closed[v]
    }

    /// `N[v]` as a sorted list.
    pub fn closed_vec(&self, v: usize) -> Vec<usize> {
        self.closed[v].to_vec()
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Union of `N[v]` over the sequence.
    pub fn closed_neighborhood(&self, vs: &[usize]) -> Result<BitSet> {
        let mut out = BitSet::new(self.n);
        for &v in vs {
            self.check_vertex(v)?;
            out.union_with(&self.closed[v]);
        }
        Ok(out)
    }

    /// `(δ, Δ)`.
    pub fn degree_stats(&self) -> (usize, usize) {
        let mut lo = usize::MAX;
        let mut hi = 0;
        for nb in &self.adjacency {
            lo = lo.min(nb.len());
            hi = hi.max(nb.len());
        }
        (lo, hi)
    }

    pub fn min_degree(&self) -> usize {
        self.degree_stats().0
    }

    pub fn max_degree(&self) -> usize {
        self.degree_stats().1
    }

    /// Regular degree, if every vertex has the same degree.
    pub fn regular_degree(&self) -> Option<usize> {
        let (lo, hi) = self.degree_stats();
        (lo == hi).then_some(lo)
    }

    pub fn is_dominating(&self, s: &[usize]) -> Result<bool> {
        Ok(self.closed_neighborhood(s)?.is_full())
    }

    pub fn is_dominating_set(&self, s: &BitSet) -> bool {
        let mut covered = BitSet::new(self.n);
        for v in s.iter() {
            covered.union_with(&self.closed[v]);
        }
        covered.is_full()
    }

    pub fn is_independent(&self, s: &[usize]) -> bool {
        s.iter()
            .enumerate()
            .all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Parses the edge-list format:
    ///
    /// ```text
    /// # comment
    /// n m
    /// u v      (m lines)
    /// ```
    pub fn parse(text: &str) -> std::result::Result<Graph, ParseError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut closed: Vec<BitSet> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |kind| ParseError { line: line_no, kind };
            let mut fields = line.split_whitespace();
            let pair = match (fields.next(), fields.next(), fields.next()) {
                (Some(a), Some(b), None) => a.parse::<usize>().ok().zip(b.parse::<usize>().ok()),
                _ => None,
            };
            let (a, b) = pair.ok_or_else(|| err(ParseErrorKind::Malformed(line.to_string())))?;
            let Some((n, m)) = header else {
                if a == 0 {
                    return Err(err(ParseErrorKind::EmptyGraph));
                }
                header = Some((a, b));
                closed = (0..a).map(|_| BitSet::new(a)).collect();
                continue;
            };
            for x in [a, b] {
                if x >= n {
                    return Err(err(ParseErrorKind::OutOfRange { vertex: x, n }));
                }
            }
            if a == b {
                return Err(err(ParseErrorKind::SelfLoop(a)));
            }
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            if closed[lo].contains(hi) {
                return Err(err(ParseErrorKind::DuplicateEdge(lo, hi)));
            }
            if edges.len() == m {
                return Err(err(ParseErrorKind::EdgeCountMismatch {
                    declared: m,
                    found: m + 1,
                }));
            }
            closed[lo].insert(hi);
            edges.push((lo, hi));
        }
        let last_line = text.lines().count().max(1);
        let (n, m) = header.ok_or(ParseError {
            line: last_line,
            kind: ParseErrorKind::MissingHeader,
        })?;
        if edges.len() != m {
            return Err(ParseError {
                line: last_line,
                kind: ParseErrorKind::EdgeCountMismatch {
                    declared: m,
                    found: edges.len(),
                },
            });
        }
        Ok(Graph::from_edges(n, edges).expect("edges validated during parsing"))
    }

    /// Writes the edge-list format with edges in lexicographic order.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(12 * (self.edges.len() + 1));
        let _ = writeln!(out, "{} {}", self.n, self.edges.len());
        for (u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse_err(text: &str) -> ParseError {
        Graph::parse(text).unwrap_err()
    }

    #[test]
    fn parses_path() {
        let g = Graph::parse("3 2\n0 1\n1 2").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
        assert_eq!(g.degree_stats(), (1, 2));
    }

    #[test]
    fn parses_single_vertex() {
        let g = Graph::parse("1 0").unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.degree_stats(), (0, 0));
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = Graph::parse("# a path\n\n3 2\n# middle\n1 0\n2 1\n").unwrap();
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let e = parse_err("3 1\n0 0");
        assert_eq!((e.line, e.kind), (2, ParseErrorKind::SelfLoop(0)));
        let e = parse_err("3 2\n0 1\n1 0");
        assert_eq!((e.line, e.kind), (3, ParseErrorKind::DuplicateEdge(0, 1)));
        let e = parse_err("3 1\n0 3");
        assert_eq!(e.line, 2);
        assert!(matches!(e.kind, ParseErrorKind::OutOfRange { vertex: 3, n: 3 }));
        let e = parse_err("3 1\n0 x");
        assert!(matches!(e.kind, ParseErrorKind::Malformed(_)));
        let e = parse_err("3 2\n0 1");
        assert!(matches!(
            e.kind,
            ParseErrorKind::EdgeCountMismatch { declared: 2, found: 1 }
        ));
        let e = parse_err("3 1\n0 1\n1 2");
        assert_eq!(e.line, 3);
        assert_eq!(parse_err("0 0").kind, ParseErrorKind::EmptyGraph);
        assert_eq!(parse_err("# nothing").kind, ParseErrorKind::MissingHeader);
        assert!(matches!(parse_err("3 1 7").kind, ParseErrorKind::Malformed(_)));
    }

    #[test]
    fn writer_sorts_edges() {
        let g = Graph::from_edges(4, [(3, 2), (1, 0), (0, 3)]).unwrap();
        assert_eq!(g.to_edge_list(), "4 3\n0 1\n0 3\n2 3\n");
    }

    #[test]
    fn closed_neighborhoods() {
        let p3 = Graph::path(3).unwrap();
        assert_eq!(p3.closed_neighborhood(&[1]).unwrap().to_vec(), vec![0, 1, 2]);
        assert_eq!(p3.closed_neighborhood(&[0, 2]).unwrap().to_vec(), vec![0, 1, 2]);
        let g = Graph::edgeless(3).unwrap();
        assert_eq!(g.closed_neighborhood(&[2]).unwrap().to_vec(), vec![2]);
        assert!(matches!(
            p3.closed_neighborhood(&[3]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        ));
    }

    #[test]
    fn degree_statistics() {
        assert_eq!(Graph::complete(4).unwrap().degree_stats(), (3, 3));
        assert_eq!(Graph::star(4).unwrap().degree_stats(), (1, 4));
        assert_eq!(Graph::petersen().unwrap().regular_degree(), Some(3));
        assert_eq!(Graph::edgeless(0), Err(Error::EmptyGraph));
    }

    #[test]
    fn domination_checks() {
        let p3 = Graph::path(3).unwrap();
        assert!(p3.is_dominating(&[1]).unwrap());
        assert!(!p3.is_dominating(&[0]).unwrap());
        assert!(!p3.is_dominating(&[]).unwrap());
        assert!(p3.is_dominating(&[0, 1, 2]).unwrap());
        assert!(p3.is_dominating_set(&BitSet::from_indices(3, [0, 2])));
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Graph::from_edges(2, [(0, 0)]), Err(Error::SelfLoop(0)));
        assert_eq!(Graph::from_edges(2, [(0, 1), (1, 0)]), Err(Error::DuplicateEdge(0, 1)));
        assert!(Graph::cycle(2).is_err());
    }
}
