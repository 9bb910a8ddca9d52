//! Type A polygon model: diagonals of the `(n+3)`-gon, flips and the
//! initial seed whose mutable variables are the diagonals `[0,i]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cluster::{label_by_flips, ClusterError, ExchangeGraph, ExchangeMatrix, Seed};
use crate::qchar::PrimeLabel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("{0} is not a diagonal of the polygon")]
    NotADiagonal(String),
    #[error("{0} is not in the triangulation")]
    NotADiagonalOfT(String),
    #[error("no flip of {0}")]
    NoFlip(String),
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
}

/// A segment `[a,b]` between vertices `a < b` of the polygon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub a: u32,
    pub b: u32,
}

impl Segment {
    /// Orders the endpoints. Panics if they coincide.
    pub fn new(a: u32, b: u32) -> Self {
        assert_ne!(a, b, "degenerate segment");
        Segment { a: a.min(b), b: a.max(b) }
    }

    /// A diagonal of the `(n+3)`-gon, as opposed to a side.
    pub fn is_diagonal(&self, n: u32) -> bool {
        self.b <= n + 2 && self.b - self.a >= 2 && (self.a, self.b) != (0, n + 2)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl FromStr for Segment {
    type Err = ModelError;
    fn from_str(s: &str) -> Result<Self, ModelError> {
        let bad = || ModelError::Parse(s.to_string());
        let (a, b) = s.split_once('-').ok_or_else(bad)?;
        let a: u32 = a.trim().parse().map_err(|_| bad())?;
        let b: u32 = b.trim().parse().map_err(|_| bad())?;
        if a == b {
            return Err(bad());
        }
        Ok(Segment::new(a, b))
    }
}

impl serde::Serialize for Segment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Interiors intersect: `a < c < b < d` or `c < a < d < b`.
pub fn crossing_a(s: Segment, t: Segment) -> bool {
    let (a, b, c, d) = (s.a, s.b, t.a, t.b);
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// All diagonals of the `(n+3)`-gon, sorted.
pub fn diagonals_a(n: u32) -> Vec<Segment> {
    let mut out = Vec::new();
    for a in 0..=n + 2 {
        for b in a + 2..=n + 2 {
            let s = Segment::new(a, b);
            if s.is_diagonal(n) {
                out.push(s);
            }
        }
    }
    out
}

/// A maximal set of pairwise noncrossing diagonals, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct TriangulationA {
    pub n: u32,
    pub diagonals: Vec<Segment>,
}

impl TriangulationA {
    pub fn new(n: u32, mut diagonals: Vec<Segment>) -> Result<Self, ModelError> {
        diagonals.sort();
        diagonals.dedup();
        if let Some(d) = diagonals.iter().find(|d| !d.is_diagonal(n)) {
            return Err(ModelError::NotADiagonal(d.to_string()));
        }
        let noncrossing = diagonals
            .iter()
            .enumerate()
            .all(|(i, &s)| diagonals[i + 1..].iter().all(|&t| !crossing_a(s, t)));
        if !noncrossing || diagonals.len() != n as usize {
            return Err(ModelError::NotADiagonal(format!("{diagonals:?} is not a triangulation")));
        }
        Ok(TriangulationA { n, diagonals })
    }

    pub fn contains(&self, d: Segment) -> bool {
        self.diagonals.binary_search(&d).is_ok()
    }
}

/// Every triangulation of the `(n+3)`-gon, in lexicographic order.
pub fn triangulations_a(n: u32) -> Vec<TriangulationA> {
    fn extend(all: &[Segment], start: usize, chosen: &mut Vec<Segment>, n: usize, out: &mut Vec<Vec<Segment>>) {
        if chosen.len() == n {
            out.push(chosen.clone());
            return;
        }
        for i in start..all.len() {
            if chosen.iter().all(|&c| !crossing_a(c, all[i])) {
                chosen.push(all[i]);
                extend(all, i + 1, chosen, n, out);
                chosen.pop();
            }
        }
    }
    let all = diagonals_a(n);
    let mut out = Vec::new();
    extend(&all, 0, &mut Vec::new(), n as usize, &mut out);
    out.into_iter().map(|diagonals| TriangulationA { n, diagonals }).collect()
}

/// The diagonal replacing `d` in a collection of `n` noncrossing diagonals
/// listed in any order.
pub fn flip_partner(n: u32, diagonals: &[Segment], d: Segment) -> Result<Segment, ModelError> {
    if !diagonals.contains(&d) {
        return Err(ModelError::NotADiagonalOfT(d.to_string()));
    }
    let rest: Vec<Segment> = diagonals.iter().copied().filter(|&s| s != d).collect();
    let mut found = diagonals_a(n)
        .into_iter()
        .filter(|&s| s != d && !rest.contains(&s) && rest.iter().all(|&r| !crossing_a(r, s)));
    match (found.next(), found.next()) {
        (Some(s), None) => Ok(s),
        _ => Err(ModelError::NoFlip(d.to_string())),
    }
}

/// Endpoints `a < b < c < d` of the quadrilateral of a flip: the old and new
/// diagonals are `[a,c]` and `[b,d]` in some order.
pub fn quadruple(old: Segment, new: Segment) -> (u32, u32, u32, u32) {
    let mut v = [old.a, old.b, new.a, new.b];
    v.sort_unstable();
    (v[0], v[1], v[2], v[3])
}

/// Flips `d` out of `t`.
pub fn flip(t: &TriangulationA, d: Segment) -> Result<(TriangulationA, (u32, u32, u32, u32)), ModelError> {
    let new = flip_partner(t.n, &t.diagonals, d)?;
    let diagonals = t.diagonals.iter().map(|&s| if s == d { new } else { s }).collect();
    let next = TriangulationA::new(t.n, diagonals)?;
    Ok((next, quadruple(d, new)))
}

/// The three sides set to 1 in the coefficient specialization.
pub fn is_unit_side(n: u32, s: Segment) -> bool {
    matches!((s.a, s.b), (0, 1)) || (s.a, s.b) == (n + 1, n + 2) || (s.a, s.b) == (0, n + 2)
}

/// `x[a,b] -> L(a, b-1)`; the specialized sides go to the trivial module.
pub fn segment_to_prime_a(n: u32, s: Segment) -> PrimeLabel {
    if is_unit_side(n, s) {
        PrimeLabel::Unit
    } else {
        PrimeLabel::Plain(s.a, s.b - 1)
    }
}

/// Inverse of [`segment_to_prime_a`] on nontrivial labels.
pub fn prime_to_segment_a(n: u32, label: PrimeLabel) -> Option<Segment> {
    match label {
        PrimeLabel::Plain(i, j) if i <= j && j <= n + 1 => {
            let s = Segment::new(i, j + 1);
            (!is_unit_side(n, s)).then_some(s)
        }
        _ => None,
    }
}

/// Mutable slots of the initial seed: `[0,2], [0,3], ..., [0,n+1]`.
pub fn initial_triangulation_a(n: u32) -> Vec<Segment> {
    (2..=n + 1).map(|i| Segment::new(0, i)).collect()
}

/// Frozen rows of the initial seed: `[1,2], ..., [n,n+1]`.
pub fn frozen_segments_a(n: u32) -> Vec<Segment> {
    (1..=n).map(|i| Segment::new(i, i + 1)).collect()
}

/// Arrows of the initial quiver with vertex `m - 1` for `[0,m+1]` and
/// `n + m - 1` for `[m,m+1]`, `m = 1..n`.
pub fn initial_quiver_a(n: u32) -> Vec<(usize, usize)> {
    let n = n as usize;
    let top = |m: usize| m - 1;
    let bottom = |m: usize| n + m - 1;
    let mut arrows = Vec::new();
    for m in 1..=n {
        arrows.push((top(m), bottom(m)));
        if m < n {
            arrows.push((top(m), top(m + 1)));
            arrows.push((bottom(m + 1), top(m)));
        }
    }
    arrows
}

/// The initial seed: `x[1..n]` for the diagonals `[0,m+1]` and frozen
/// `x[n+1..2n]` for the sides `[m,m+1]`.
pub fn initial_seed_a(n: u32) -> Seed {
    let n = n as usize;
    Seed::initial(ExchangeMatrix::from_quiver(2 * n, n, &initial_quiver_a(n as u32)))
}

/// Labels every variable of an exchange graph grown from a seed with the
/// principal part of [`initial_seed_a`] by its diagonal.
pub fn label_graph_a(n: u32, graph: &ExchangeGraph) -> Result<Vec<Segment>, ModelError> {
    label_by_flips(graph, &initial_triangulation_a(n), |state: &[Segment], k| {
        flip_partner(n, state, state[k])
    })
}

/// A triangulation containing `[a,c]` together with the sides of the
/// quadrilateral `a < b < c < d`, completed greedily.
pub fn triangulation_with_quadrilateral(n: u32, a: u32, b: u32, c: u32, d: u32) -> Result<TriangulationA, ModelError> {
    let mut chosen: Vec<Segment> = [(a, c), (a, b), (b, c), (c, d), (a, d)]
        .into_iter()
        .map(|(x, y)| Segment::new(x, y))
        .filter(|s| s.is_diagonal(n))
        .collect();
    let seed: BTreeSet<Segment> = chosen.iter().copied().collect();
    for s in diagonals_a(n) {
        if !seed.contains(&s) && chosen.iter().all(|&c| !crossing_a(c, s)) {
            chosen.push(s);
        }
    }
    TriangulationA::new(n, chosen)
}

/// One Ptolemy exchange `x_ac x_bd = x_ab x_cd + x_ad x_bc`, with the
/// segments of both sides.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PtolemyRelation {
    pub quadruple: (u32, u32, u32, u32),
    pub lhs: [Segment; 2],
    pub rhs: [[Segment; 2]; 2],
}

impl PtolemyRelation {
    pub fn new(a: u32, b: u32, c: u32, d: u32) -> Self {
        let s = Segment::new;
        PtolemyRelation {
            quadruple: (a, b, c, d),
            lhs: [s(a, c), s(b, d)],
            rhs: [[s(a, b), s(c, d)], [s(a, d), s(b, c)]],
        }
    }
}

/// Flips `[a,c]` in a triangulation that contains the quadrilateral
/// `a < b < c < d` and returns the exchange it produces.
pub fn emit_ptolemy(n: u32, a: u32, b: u32, c: u32, d: u32) -> Result<PtolemyRelation, ModelError> {
    let t = triangulation_with_quadrilateral(n, a, b, c, d)?;
    let (_, (qa, qb, qc, qd)) = flip(&t, Segment::new(a, c))?;
    Ok(PtolemyRelation::new(qa, qb, qc, qd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::exchange_graph;

    fn seg(a: u32, b: u32) -> Segment {
        Segment::new(a, b)
    }

    #[test]
    fn crossing_examples() {
        assert!(crossing_a(seg(0, 2), seg(1, 3)));
        assert!(!crossing_a(seg(0, 2), seg(2, 4)));
        assert!(!crossing_a(seg(0, 2), seg(3, 5)));
    }

    #[test]
    fn triangulation_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| triangulations_a(n).len()).collect();
        assert_eq!(counts, vec![2, 5, 14, 42, 132]);
    }

    #[test]
    fn pentagon_flip() {
        let t = TriangulationA::new(2, vec![seg(0, 2), seg(0, 3)]).unwrap();
        let (t2, quad) = flip(&t, seg(0, 2)).unwrap();
        assert_eq!(t2.diagonals, vec![seg(0, 3), seg(1, 3)]);
        assert_eq!(quad, (0, 1, 2, 3));
        let (back, _) = flip(&t2, seg(1, 3)).unwrap();
        assert_eq!(back, t);
        assert!(matches!(flip(&t, seg(1, 4)), Err(ModelError::NotADiagonalOfT(_))));
    }

    #[test]
    fn every_diagonal_flips() {
        for t in triangulations_a(4) {
            for &d in &t.diagonals {
                let (t2, _) = flip(&t, d).unwrap();
                assert_ne!(t2, t);
            }
        }
    }

    #[test]
    fn initial_seeds() {
        let s1 = initial_seed_a(1);
        assert_eq!(s1.matrix().rows(), &[vec![0], vec![-1]]);
        let s2 = initial_seed_a(2);
        assert_eq!(s2.matrix().rows(), &[vec![0, 1], vec![-1, 0], vec![-1, 0], vec![1, -1]]);
        for n in 1..=6 {
            let s = initial_seed_a(n);
            let arrows = s.matrix().principal_arrows();
            let want: Vec<(usize, usize)> = (1..n as usize).map(|m| (m - 1, m)).collect();
            assert_eq!(arrows, want);
        }
    }

    #[test]
    fn labels() {
        assert_eq!(segment_to_prime_a(3, seg(0, 2)), PrimeLabel::Plain(0, 1));
        assert_eq!(segment_to_prime_a(3, seg(2, 3)), PrimeLabel::Plain(2, 2));
        assert_eq!(segment_to_prime_a(3, seg(0, 1)), PrimeLabel::Unit);
        assert_eq!(segment_to_prime_a(3, seg(4, 5)), PrimeLabel::Unit);
        assert_eq!(segment_to_prime_a(3, seg(0, 5)), PrimeLabel::Unit);
        for d in diagonals_a(4) {
            assert_eq!(prime_to_segment_a(4, segment_to_prime_a(4, d)), Some(d));
        }
        assert_eq!("3-1".parse::<Segment>().unwrap(), seg(1, 3));
    }

    #[test]
    fn graph_labels_are_diagonals() {
        for n in 1..=4 {
            let g = exchange_graph(&initial_seed_a(n), 10_000).unwrap();
            let labels = label_graph_a(n, &g).unwrap();
            let distinct: BTreeSet<Segment> = labels.iter().copied().collect();
            assert_eq!(distinct.len(), labels.len());
            assert_eq!(distinct, diagonals_a(n).into_iter().collect());
            let mut clusters: Vec<Vec<Segment>> = g
                .clusters
                .iter()
                .map(|c| {
                    let mut v: Vec<Segment> = c.iter().map(|&i| labels[i]).collect();
                    v.sort();
                    v
                })
                .collect();
            clusters.sort();
            let tris: Vec<Vec<Segment>> = triangulations_a(n).into_iter().map(|t| t.diagonals).collect();
            assert_eq!(clusters, tris);
        }
    }

    #[test]
    fn ptolemy_emission() {
        let rel = emit_ptolemy(3, 0, 1, 3, 5).unwrap();
        assert_eq!(rel.quadruple, (0, 1, 3, 5));
        assert_eq!(rel.lhs, [seg(0, 3), seg(1, 5)]);
    }
}
