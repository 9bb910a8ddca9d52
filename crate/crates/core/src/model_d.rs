//! Type D model: orbits of diagonals of the `2n`-gon under the half turn,
//! with two colors on each diameter.
//!
//! Vertices are `0..2n`; the barred vertex `a'` is `a + n mod 2n`.

use std::fmt;

use crate::cluster::{label_by_flips, ExchangeGraph, ExchangeMatrix, Seed};
use crate::model_a::ModelError;
use crate::qchar::PrimeLabel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Plain,
    Tagged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OrbitKind {
    /// `{[a,b], [a',b']}` stored by its smaller representative, `a < b`.
    Pair(u32, u32),
    /// `[a,a']` with `a < n`.
    Diameter(u32, Color),
}

/// An orbit of diagonals of the `2n`-gon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThetaOrbit {
    pub n: u32,
    pub kind: OrbitKind,
}

fn is_side(n: u32, a: u32, b: u32) -> bool {
    let d = (b + 2 * n - a) % (2 * n);
    d == 1 || d == 2 * n - 1
}

impl ThetaOrbit {
    /// The orbit of the diagonal `[a,b]` with `b != a'`.
    pub fn pair(n: u32, a: u32, b: u32) -> Result<Self, ModelError> {
        let m = 2 * n;
        let (a, b) = (a % m, b % m);
        if a == b || is_side(n, a, b) || (a + n) % m == b {
            return Err(ModelError::NotADiagonal(format!("[{a},{b}] in the {m}-gon")));
        }
        let r1 = (a.min(b), a.max(b));
        let (c, d) = ((a + n) % m, (b + n) % m);
        let r2 = (c.min(d), c.max(d));
        let (x, y) = r1.min(r2);
        Ok(ThetaOrbit { n, kind: OrbitKind::Pair(x, y) })
    }

    pub fn diameter(n: u32, a: u32, color: Color) -> Self {
        ThetaOrbit { n, kind: OrbitKind::Diameter(a % n, color) }
    }

    /// Segments of the orbit as sorted vertex pairs.
    pub fn representatives(&self) -> Vec<(u32, u32)> {
        let (n, m) = (self.n, 2 * self.n);
        match self.kind {
            OrbitKind::Pair(a, b) => {
                let (c, d) = ((a + n) % m, (b + n) % m);
                vec![(a, b), (c.min(d), c.max(d))]
            }
            OrbitKind::Diameter(a, _) => vec![(a, a + n)],
        }
    }

    pub fn is_diameter(&self) -> bool {
        matches!(self.kind, OrbitKind::Diameter(..))
    }

    /// Reads `a-b` (vertices `0..2n`), the barred form `1-0'`, a tagged
    /// diameter `~3-3'`, or the serialized diameter `3~7:plain`.
    pub fn parse(n: u32, s: &str) -> Result<Self, ModelError> {
        let bad = || ModelError::Parse(s.to_string());
        let s = s.trim();
        let vertex = |t: &str| -> Result<u32, ModelError> {
            let t = t.trim();
            let (digits, bar) = match t.strip_suffix('\'') {
                Some(d) => (d, n),
                None => (t, 0),
            };
            let v: u32 = digits.parse().map_err(|_| bad())?;
            if v >= 2 * n || (bar > 0 && v >= n) {
                return Err(bad());
            }
            Ok(v + bar)
        };
        if let Some((a, rest)) = s.split_once('~') {
            if !a.is_empty() {
                let (b, color) = rest.split_once(':').ok_or_else(bad)?;
                let color = match color.trim() {
                    "plain" => Color::Plain,
                    "tagged" => Color::Tagged,
                    _ => return Err(bad()),
                };
                let (a, b) = (vertex(a)?, vertex(b)?);
                if (a + n) % (2 * n) != b {
                    return Err(bad());
                }
                return Ok(Self::diameter(n, a, color));
            }
        }
        let (body, tagged) = match s.strip_prefix('~') {
            Some(rest) => (rest, true),
            None => (s, false),
        };
        let (a, b) = body.split_once('-').ok_or_else(bad)?;
        let (a, b) = (vertex(a)?, vertex(b)?);
        if (a + n) % (2 * n) == b {
            let color = if tagged { Color::Tagged } else { Color::Plain };
            return Ok(Self::diameter(n, a, color));
        }
        if tagged {
            return Err(bad());
        }
        Self::pair(n, a, b)
    }
}

impl fmt::Display for ThetaOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            OrbitKind::Pair(a, b) => write!(f, "{a}-{b}"),
            OrbitKind::Diameter(a, Color::Plain) => write!(f, "{a}~{}:plain", a + self.n),
            OrbitKind::Diameter(a, Color::Tagged) => write!(f, "{a}~{}:tagged", a + self.n),
        }
    }
}

impl serde::Serialize for ThetaOrbit {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Interiors of two segments on the cycle meet.
fn segments_cross(s: (u32, u32), t: (u32, u32)) -> bool {
    let (a, b) = s;
    let inside = |x: u32| a < x && x < b;
    if [t.0, t.1].iter().any(|&x| x == a || x == b) {
        return false;
    }
    inside(t.0) != inside(t.1)
}

/// Number of centrally symmetric pairs of crossing points between two
/// orbits; two diameters of different support and color count once.
pub fn crossing_number(o1: &ThetaOrbit, o2: &ThetaOrbit) -> u32 {
    if let (OrbitKind::Diameter(a, ca), OrbitKind::Diameter(b, cb)) = (o1.kind, o2.kind) {
        return u32::from(a != b && ca != cb);
    }
    let mut count = 0;
    for s in o1.representatives() {
        for t in o2.representatives() {
            count += u32::from(segments_cross(s, t));
        }
    }
    count / 2
}

pub fn noncrossing_d(o1: &ThetaOrbit, o2: &ThetaOrbit) -> bool {
    crossing_number(o1, o2) == 0
}

/// All `n^2` orbits, sorted.
pub fn all_orbits_d(n: u32) -> Vec<ThetaOrbit> {
    let mut out = Vec::new();
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            if let Ok(o) = ThetaOrbit::pair(n, a, b) {
                out.push(o);
            }
        }
    }
    for a in 0..n {
        out.push(ThetaOrbit::diameter(n, a, Color::Plain));
        out.push(ThetaOrbit::diameter(n, a, Color::Tagged));
    }
    out.sort();
    out.dedup();
    out
}

/// A centrally symmetric triangulation as a sorted list of `n` orbits.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct SymTriangulation {
    pub n: u32,
    pub orbits: Vec<ThetaOrbit>,
}

/// Every maximal set of pairwise noncrossing orbits.
pub fn sym_triangulations_d(n: u32) -> Vec<SymTriangulation> {
    fn extend(all: &[ThetaOrbit], start: usize, chosen: &mut Vec<ThetaOrbit>, out: &mut Vec<Vec<ThetaOrbit>>) {
        let mut extended = false;
        for (i, o) in all.iter().enumerate() {
            if chosen.contains(o) || !chosen.iter().all(|c| noncrossing_d(c, o)) {
                continue;
            }
            extended = true;
            if i >= start {
                chosen.push(*o);
                extend(all, i + 1, chosen, out);
                chosen.pop();
            }
        }
        if !extended {
            out.push(chosen.clone());
        }
    }
    let all = all_orbits_d(n);
    let mut out = Vec::new();
    extend(&all, 0, &mut Vec::new(), &mut out);
    out.into_iter().map(|orbits| SymTriangulation { n, orbits }).collect()
}

/// The orbit replacing `state[k]`.
pub fn flip_partner_d(n: u32, state: &[ThetaOrbit], k: usize) -> Result<ThetaOrbit, ModelError> {
    let old = state[k];
    let rest: Vec<ThetaOrbit> = state.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, o)| *o).collect();
    let mut found = all_orbits_d(n)
        .into_iter()
        .filter(|o| *o != old && !rest.contains(o) && rest.iter().all(|r| noncrossing_d(r, o)));
    match (found.next(), found.next()) {
        (Some(o), None) => Ok(o),
        _ => Err(ModelError::NoFlip(old.to_string())),
    }
}

/// Slots of the initial seed: `[i, (n-1)']` for `i = 1..n-2`, then the
/// tagged and the plain diameter at `n-1`.
pub fn initial_triangulation_d(n: u32) -> Vec<ThetaOrbit> {
    let mut out: Vec<ThetaOrbit> = (1..=n - 2)
        .map(|i| ThetaOrbit::pair(n, i, 2 * n - 1).expect("diagonal"))
        .collect();
    out.push(ThetaOrbit::diameter(n, n - 1, Color::Tagged));
    out.push(ThetaOrbit::diameter(n, n - 1, Color::Plain));
    out
}

/// Frozen rows: the sides `[i,i+1]` for `i = 1..n-2`, then `f_{n-1}`, `f_n`.
pub fn frozen_names_d(n: u32) -> Vec<String> {
    let mut out: Vec<String> = (1..=n - 2).map(|i| format!("{i}-{}", i + 1)).collect();
    out.push(format!("f{}", n - 1));
    out.push(format!("f{n}"));
    out
}

/// Arrows of the initial quiver. Vertex `i - 1` is slot `i` (`i = 1..n`);
/// vertex `n + i - 1` is the side `[i,i+1]`; `f_{n-1}` and `f_n` come last.
pub fn initial_quiver_d(n: u32) -> Vec<(usize, usize)> {
    let n = n as usize;
    let v = |i: usize| i - 1;
    let side = |i: usize| n + i - 1;
    let (f1, f2) = (2 * n - 2, 2 * n - 1);
    let mut arrows = Vec::new();
    for i in 1..=n - 3 {
        arrows.push((v(i), v(i + 1)));
        arrows.push((side(i), v(i)));
        arrows.push((v(i + 1), side(i)));
    }
    arrows.push((v(n - 2), v(n - 1)));
    arrows.push((v(n - 2), v(n)));
    arrows.push((side(n - 2), v(n - 2)));
    arrows.push((v(n - 1), side(n - 2)));
    arrows.push((v(n), side(n - 2)));
    arrows.push((f1, v(n - 1)));
    arrows.push((f2, v(n)));
    arrows
}

pub fn initial_seed_d(n: u32) -> Seed {
    let n = n as usize;
    Seed::initial(ExchangeMatrix::from_quiver(2 * n, n, &initial_quiver_d(n as u32)))
}

/// Labels every variable of an exchange graph grown from a seed with the
/// principal part of [`initial_seed_d`] by its orbit.
pub fn label_graph_d(n: u32, graph: &ExchangeGraph) -> Result<Vec<ThetaOrbit>, ModelError> {
    label_by_flips(graph, &initial_triangulation_d(n), |state: &[ThetaOrbit], k| flip_partner_d(n, state, k))
}

/// Prime label of a non-frozen orbit.
pub fn orbit_to_prime_d(o: &ThetaOrbit) -> PrimeLabel {
    let n = o.n;
    match o.kind {
        OrbitKind::Diameter(a, Color::Plain) if a == n - 1 => PrimeLabel::Plain(n + 1, n),
        OrbitKind::Diameter(a, Color::Tagged) if a == n - 1 => PrimeLabel::Plain(n + 1, n - 1),
        OrbitKind::Diameter(a, Color::Plain) => PrimeLabel::Plain(n - 1, a),
        OrbitKind::Diameter(a, Color::Tagged) => PrimeLabel::Plain(n, a),
        OrbitKind::Pair(a, b) => {
            let (ra, rb) = (a % n, b % n);
            if (a >= n) == (b >= n) {
                // x_{ij}, i < j - 1
                let (i, j) = (ra.min(rb), ra.max(rb));
                PrimeLabel::Plain(j - 1, i)
            } else {
                // x_{i j'}: i from the unbarred end
                let (i, j) = if a < n { (ra, rb) } else { (rb, ra) };
                if j == n - 1 {
                    PrimeLabel::Plain(n + 1, i)
                } else if i == n - 1 {
                    PrimeLabel::Plain(n + 1, j)
                } else {
                    PrimeLabel::Dagger(i.min(j), i.max(j))
                }
            }
        }
    }
}

/// Name of an orbit in the barred notation of the variable catalog:
/// `i-j` with `i < j`, `i-j'` with `j < i` or `j = n-1`, and `i-i'`,
/// `~i-i'` for diameters.
pub fn catalog_name_d(o: &ThetaOrbit) -> String {
    let n = o.n;
    match o.kind {
        OrbitKind::Diameter(a, Color::Plain) => format!("{a}-{a}'"),
        OrbitKind::Diameter(a, Color::Tagged) => format!("~{a}-{a}'"),
        OrbitKind::Pair(a, b) => {
            let (ra, rb) = (a % n, b % n);
            if (a >= n) == (b >= n) {
                format!("{}-{}", ra.min(rb), ra.max(rb))
            } else {
                let (i, j) = if a < n { (ra, rb) } else { (rb, ra) };
                if j == n - 1 || i == n - 1 {
                    format!("{}-{}'", i.min(j), n - 1)
                } else {
                    format!("{}-{}'", i.max(j), i.min(j))
                }
            }
        }
    }
}

/// Inverse of [`orbit_to_prime_d`].
pub fn prime_to_orbit_d(n: u32, label: PrimeLabel) -> Option<ThetaOrbit> {
    all_orbits_d(n).into_iter().find(|o| orbit_to_prime_d(o) == label)
}

/// Label of the frozen rows of [`initial_seed_d`], in row order.
pub fn frozen_primes_d(n: u32) -> Vec<PrimeLabel> {
    (1..=n).map(|i| PrimeLabel::Plain(i, i)).collect()
}

/// Cartan matrix of `D_n`.
pub fn cartan_d(n: u32) -> Vec<Vec<i64>> {
    let hf = crate::qchar::HeightFunction::type_d(n);
    (1..=n).map(|i| (1..=n).map(|j| hf.cartan(i, j)).collect()).collect()
}

/// Almost positive root of an orbit in simple-root coordinates: `-e_i` for
/// the initial orbit at slot `i`, otherwise its crossing numbers with the
/// initial orbits.
pub fn orbit_to_root(o: &ThetaOrbit) -> Vec<i64> {
    let init = initial_triangulation_d(o.n);
    if let Some(i) = init.iter().position(|x| x == o) {
        let mut r = vec![0; o.n as usize];
        r[i] = -1;
        return r;
    }
    init.iter().map(|x| crossing_number(o, x) as i64).collect()
}

/// `s_i` on fundamental-weight coordinates: `l - l_i alpha_i`.
fn reflect(c: &[Vec<i64>], lambda: &mut [i64], i: usize) -> i64 {
    let coef = lambda[i];
    for (j, row) in c.iter().enumerate() {
        lambda[j] -= coef * row[i];
    }
    coef
}

/// Applies `c = s_n ... s_1` (so `s_1` acts first). Returns the new weight
/// and `lambda - c(lambda)` in simple-root coordinates.
fn coxeter_step(c: &[Vec<i64>], lambda: &[i64]) -> (Vec<i64>, Vec<i64>) {
    let mut w = lambda.to_vec();
    let mut root = vec![0; w.len()];
    for i in 0..w.len() {
        root[i] = reflect(c, &mut w, i);
    }
    (w, root)
}

fn fundamental(n: u32, i: u32) -> Vec<i64> {
    (1..=n).map(|j| i64::from(j == i)).collect()
}

/// `-w0` on nodes: identity for even `n`, swaps `n-1` and `n` for odd `n`.
fn sigma(n: u32, i: u32) -> u32 {
    match (n % 2, i) {
        (1, x) if x == n - 1 => n,
        (1, x) if x == n => n - 1,
        _ => i,
    }
}

/// Smallest `h` with `c^h w_i = w0 w_i = -w_sigma(i)`.
pub fn coxeter_h(n: u32, i: u32) -> u32 {
    let c = cartan_d(n);
    let target: Vec<i64> = fundamental(n, sigma(n, i)).iter().map(|x| -x).collect();
    let mut w = fundamental(n, i);
    for h in 0..=4 * n {
        if w == target {
            return h;
        }
        w = coxeter_step(&c, &w).0;
    }
    panic!("Coxeter orbit of w_{i} does not reach w0 w_{i}");
}

/// `c^m w_i` in fundamental-weight coordinates, `0 <= m <= h(i,c)`.
pub fn coxeter_weight(n: u32, i: u32, m: u32) -> Result<Vec<i64>, ModelError> {
    if m > coxeter_h(n, i) {
        return Err(ModelError::NotADiagonal(format!("power {m} exceeds h({i},c)")));
    }
    let c = cartan_d(n);
    Ok((0..m).fold(fundamental(n, i), |w, _| coxeter_step(&c, &w).0))
}

/// Root attached to `c^m w_i`: `-alpha_i` for `m = 0`, otherwise
/// `c^(m-1) w_i - c^m w_i`.
pub fn weight_label_root(n: u32, i: u32, m: u32) -> Result<Vec<i64>, ModelError> {
    if m == 0 {
        return Ok(fundamental(n, i).iter().map(|x| -x).collect());
    }
    let prev = coxeter_weight(n, i, m - 1)?;
    coxeter_weight(n, i, m)?;
    Ok(coxeter_step(&cartan_d(n), &prev).1)
}

/// The pair `(i, m)` whose weight `c^m w_i` labels the same variable as
/// the orbit.
pub fn orbit_to_weight(o: &ThetaOrbit) -> Option<(u32, u32)> {
    let n = o.n;
    let root = orbit_to_root(o);
    (1..=n)
        .flat_map(|i| (0..=coxeter_h(n, i)).map(move |m| (i, m)))
        .find(|&(i, m)| weight_label_root(n, i, m).is_ok_and(|r| r == root))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster::exchange_graph;
    use std::collections::BTreeSet;

    fn orb(n: u32, s: &str) -> ThetaOrbit {
        ThetaOrbit::parse(n, s).unwrap()
    }

    #[test]
    fn parsing_and_canonical_form() {
        assert_eq!(orb(4, "1-0'"), ThetaOrbit { n: 4, kind: OrbitKind::Pair(0, 5) });
        assert_eq!(orb(4, "1-4"), orb(4, "5-0"));
        assert_eq!(orb(4, "~3-3'"), ThetaOrbit::diameter(4, 3, Color::Tagged));
        assert_eq!(orb(4, "3-3'"), ThetaOrbit::diameter(4, 7, Color::Plain));
        assert_eq!(orb(4, "3~7:tagged").to_string(), "3~7:tagged");
        assert_eq!(orb(4, "2-1'").to_string(), "1-6");
        assert!(ThetaOrbit::parse(4, "0-1").is_err());
        assert!(ThetaOrbit::parse(4, "~1-2").is_err());
        for o in all_orbits_d(5) {
            assert_eq!(ThetaOrbit::parse(5, &o.to_string()).unwrap(), o);
        }
    }

    #[test]
    fn diameter_rules() {
        let p3 = ThetaOrbit::diameter(4, 3, Color::Plain);
        let t3 = ThetaOrbit::diameter(4, 3, Color::Tagged);
        let p2 = ThetaOrbit::diameter(4, 2, Color::Plain);
        let t2 = ThetaOrbit::diameter(4, 2, Color::Tagged);
        assert!(noncrossing_d(&p3, &t3));
        assert!(noncrossing_d(&p3, &p2));
        assert!(!noncrossing_d(&p3, &t2));
    }

    #[test]
    fn orbit_and_triangulation_counts() {
        assert_eq!(all_orbits_d(4).len(), 16);
        assert_eq!(all_orbits_d(5).len(), 25);
        let tris = sym_triangulations_d(4);
        assert_eq!(tris.len(), 50);
        assert!(tris.iter().all(|t| t.orbits.len() == 4));
        let mut first = initial_triangulation_d(4);
        first.sort();
        assert!(tris.iter().any(|t| t.orbits == first));
        let mut second = vec![orb(4, "1-3'"), orb(4, "2-3'"), orb(4, "3-3'"), orb(4, "2-2'")];
        second.sort();
        assert!(tris.iter().any(|t| t.orbits == second));
    }

    #[test]
    fn roots_from_crossings() {
        assert_eq!(orbit_to_root(&orb(4, "0-2")), vec![1, 0, 0, 0]);
        assert_eq!(orbit_to_root(&orb(4, "1-0'")), vec![1, 2, 1, 1]);
        assert_eq!(orbit_to_root(&orb(4, "3-3'")), vec![0, 0, 0, -1]);
        assert_eq!(orbit_to_root(&orb(4, "~3-3'")), vec![0, 0, -1, 0]);
        assert_eq!(orbit_to_root(&orb(4, "2-2'")), vec![0, 0, 1, 0]);
    }

    #[test]
    fn coxeter_heights() {
        assert!((1..=4).all(|i| coxeter_h(4, i) == 3));
        let total: u32 = (1..=5).map(|i| coxeter_h(5, i) + 1).sum();
        assert_eq!(total, 25);
        assert_eq!(coxeter_weight(4, 2, 0).unwrap(), vec![0, 1, 0, 0]);
        assert!(coxeter_weight(4, 2, 4).is_err());
    }

    #[test]
    fn prime_labels() {
        assert_eq!(orbit_to_prime_d(&orb(4, "1-0'")), PrimeLabel::Dagger(0, 1));
        assert_eq!(orbit_to_prime_d(&orb(4, "2-2'")), PrimeLabel::Plain(3, 2));
        assert_eq!(orbit_to_prime_d(&orb(4, "3-3'")), PrimeLabel::Plain(5, 4));
        assert_eq!(orbit_to_prime_d(&orb(4, "3-1'")), PrimeLabel::Plain(5, 1));
        assert_eq!(catalog_name_d(&orb(4, "3-1'")), "1-3'");
        assert_eq!(catalog_name_d(&orb(4, "0-2'")), "2-0'");
        for o in all_orbits_d(4) {
            assert_eq!(ThetaOrbit::parse(4, &catalog_name_d(&o)).unwrap(), o);
        }
        for n in [4, 5] {
            let labels: BTreeSet<PrimeLabel> = all_orbits_d(n).iter().map(orbit_to_prime_d).collect();
            assert_eq!(labels.len(), (n * n) as usize);
        }
    }

    #[test]
    fn graph_labels_match_triangulations() {
        for n in [4, 5] {
            let g = exchange_graph(&initial_seed_d(n), 10_000).unwrap();
            assert_eq!((g.num_variables(), g.num_clusters()), ((n * n) as usize, if n == 4 { 50 } else { 182 }));
            let labels = label_graph_d(n, &g).unwrap();
            let distinct: BTreeSet<ThetaOrbit> = labels.iter().copied().collect();
            assert_eq!(distinct.len(), labels.len());
        }
    }

    #[test]
    fn first_mutation_is_t_system() {
        let s = initial_seed_d(4).mutate(0).unwrap();
        let want: crate::laurent::LaurentPoly = "x[1]^-1*x[2] + x[1]^-1*x[5]".parse().unwrap();
        assert_eq!(s.cluster()[0], want);
    }
}
