//! Seeds, mutation and exchange graphs of skew-symmetric cluster algebras.
//!
//! Directions and rows are 0-based throughout the library. A matrix with `r`
//! rows and `r - n` columns has its last `n` rows frozen.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly, Monomial, Var};

/// Default seed budget for [`exchange_graph`].
pub const DEFAULT_MAX_SEEDS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClusterError {
    #[error("direction {k} out of range (mutable directions: {mutable})")]
    IndexOutOfRange { k: usize, mutable: usize },
    #[error("principal part is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("malformed matrix: {0}")]
    Shape(String),
    #[error("exchange relation in direction {k} is not divisible by the exchanged variable")]
    NonExactDivision { k: usize },
    #[error("exchange graph incomplete: seed budget of {0} exhausted")]
    BudgetExceeded(usize),
    #[error("compatibility needs a complete exchange graph")]
    IncompleteGraph,
    #[error("F-polynomial is not a polynomial with constant term 1: {0}")]
    NotPolynomial(String),
    #[error("model labels disagree with the exchange graph: {0}")]
    LabelConflict(String),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
}

/// An `r x (r-n)` integer matrix whose top square block is skew-symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<i64>>", into = "Vec<Vec<i64>>")]
pub struct ExchangeMatrix {
    rows: Vec<Vec<i64>>,
}

impl TryFrom<Vec<Vec<i64>>> for ExchangeMatrix {
    type Error = ClusterError;
    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        ExchangeMatrix::new(rows)
    }
}

impl From<ExchangeMatrix> for Vec<Vec<i64>> {
    fn from(m: ExchangeMatrix) -> Self {
        m.rows
    }
}

impl ExchangeMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self, ClusterError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ClusterError::Shape("ragged rows".into()));
        }
        if rows.len() < cols {
            return Err(ClusterError::Shape(format!(
                "{} rows cannot carry {cols} mutable columns",
                rows.len()
            )));
        }
        let m = ExchangeMatrix { rows };
        if !m.principal_is_skew() {
            return Err(ClusterError::NotSkewSymmetric);
        }
        Ok(m)
    }

    /// Builds the matrix of a quiver: an arrow `i -> j` adds 1 to `b[i][j]`
    /// and subtracts 1 from `b[j][i]`. Vertices `0..mutable` are mutable,
    /// the rest up to `vertices` frozen; arrows between frozen vertices are
    /// ignored.
    pub fn from_quiver(vertices: usize, mutable: usize, arrows: &[(usize, usize)]) -> Self {
        let mut rows = vec![vec![0i64; mutable]; vertices];
        for &(src, dst) in arrows {
            assert!(src < vertices && dst < vertices, "arrow endpoint out of range");
            if dst < mutable {
                rows[src][dst] += 1;
            }
            if src < mutable {
                rows[dst][src] -= 1;
            }
        }
        ExchangeMatrix { rows }
    }

    fn principal_is_skew(&self) -> bool {
        let c = self.num_mutable();
        (0..c).all(|i| (0..c).all(|j| self.rows[i][j] == -self.rows[j][i]))
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_mutable(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn num_frozen(&self) -> usize {
        self.num_rows() - self.num_mutable()
    }

    pub fn entry(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn principal_part(&self) -> Vec<Vec<i64>> {
        self.rows[..self.num_mutable()].to_vec()
    }

    /// Arrows of the principal part as `(source, target)` pairs, with
    /// multiplicity.
    pub fn principal_arrows(&self) -> Vec<(usize, usize)> {
        let c = self.num_mutable();
        let mut out = Vec::new();
        for i in 0..c {
            for j in 0..c {
                for _ in 0..self.rows[i][j].max(0) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    fn check_direction(&self, k: usize) -> Result<(), ClusterError> {
        if k < self.num_mutable() {
            Ok(())
        } else {
            Err(ClusterError::IndexOutOfRange { k, mutable: self.num_mutable() })
        }
    }

    pub fn mutate(&self, k: usize) -> Result<Self, ClusterError> {
        self.check_direction(k)?;
        let b = &self.rows;
        let rows = (0..self.num_rows())
            .map(|i| {
                (0..self.num_mutable())
                    .map(|j| {
                        if i == k || j == k {
                            -b[i][j]
                        } else {
                            b[i][j] + (b[i][k].abs() * b[k][j] + b[i][k] * b[k][j].abs()) / 2
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(ExchangeMatrix { rows })
    }

    /// Stacks a square skew-symmetric `b` over the identity: the extra rows
    /// are frozen principal coefficients.
    pub fn with_principal_coefficients(b: &[Vec<i64>]) -> Result<Self, ClusterError> {
        let r = b.len();
        if b.iter().any(|row| row.len() != r) {
            return Err(ClusterError::Shape("principal part must be square".into()));
        }
        let mut rows = b.to_vec();
        for i in 0..r {
            let mut row = vec![0; r];
            row[i] = 1;
            rows.push(row);
        }
        ExchangeMatrix::new(rows)
    }
}

/// A cluster of `r` Laurent polynomials together with its exchange matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    cluster: Vec<LaurentPoly>,
    matrix: ExchangeMatrix,
}

/// Wire form of a seed: `{matrix, cluster, frozen}` with canonical strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeedJson {
    pub matrix: Vec<Vec<i64>>,
    pub cluster: Vec<String>,
    pub frozen: usize,
}

impl Seed {
    pub fn new(cluster: Vec<LaurentPoly>, matrix: ExchangeMatrix) -> Result<Self, ClusterError> {
        if cluster.len() != matrix.num_rows() {
            return Err(ClusterError::Shape(format!(
                "cluster has {} entries, matrix has {} rows",
                cluster.len(),
                matrix.num_rows()
            )));
        }
        Ok(Seed { cluster, matrix })
    }

    /// The seed `(x[1], ..., x[r])` for the given matrix.
    pub fn initial(matrix: ExchangeMatrix) -> Self {
        let cluster = (1..=matrix.num_rows() as u32).map(|i| LaurentPoly::var(Var::X(i))).collect();
        Seed { cluster, matrix }
    }

    /// Principal-coefficient seed `(x[1..r], y[1..r])` over `b`.
    pub fn principal(b: &[Vec<i64>]) -> Result<Self, ClusterError> {
        let matrix = ExchangeMatrix::with_principal_coefficients(b)?;
        let r = b.len() as u32;
        let cluster = (1..=r)
            .map(|i| LaurentPoly::var(Var::X(i)))
            .chain((1..=r).map(|i| LaurentPoly::var(Var::Coef(i))))
            .collect();
        Ok(Seed { cluster, matrix })
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn mutable_cluster(&self) -> &[LaurentPoly] {
        &self.cluster[..self.matrix.num_mutable()]
    }

    pub fn frozen_cluster(&self) -> &[LaurentPoly] {
        &self.cluster[self.matrix.num_mutable()..]
    }

    pub fn matrix(&self) -> &ExchangeMatrix {
        &self.matrix
    }

    pub fn num_frozen(&self) -> usize {
        self.matrix.num_frozen()
    }

    /// The two sides of the exchange relation in direction `k`, as lists of
    /// `(row, exponent)`: first the product over positive entries of column
    /// `k`, then the product over negative entries.
    pub fn exchange_monomials(&self, k: usize) -> Result<(Vec<(usize, i64)>, Vec<(usize, i64)>), ClusterError> {
        self.matrix.check_direction(k)?;
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for i in 0..self.matrix.num_rows() {
            let b = self.matrix.entry(i, k);
            if b > 0 {
                pos.push((i, b));
            } else if b < 0 {
                neg.push((i, -b));
            }
        }
        Ok((pos, neg))
    }

    fn product(&self, factors: &[(usize, i64)]) -> LaurentPoly {
        factors
            .iter()
            .fold(LaurentPoly::one(), |acc, &(i, e)| &acc * &self.cluster[i].pow(e as u32))
    }

    pub fn mutate(&self, k: usize) -> Result<Self, ClusterError> {
        let (pos, neg) = self.exchange_monomials(k)?;
        let numerator = &self.product(&pos) + &self.product(&neg);
        let new_var = numerator
            .checked_div(&self.cluster[k])
            .ok_or(ClusterError::NonExactDivision { k })?;
        let mut cluster = self.cluster.clone();
        cluster[k] = new_var;
        Ok(Seed { cluster, matrix: self.matrix.mutate(k)? })
    }

    /// Applies mutations in order.
    pub fn mutate_path(&self, path: &[usize]) -> Result<Self, ClusterError> {
        path.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            matrix: self.matrix.rows.clone(),
            cluster: self.cluster.iter().map(LaurentPoly::canonical_string).collect(),
            frozen: self.num_frozen(),
        }
    }

    pub fn from_json(json: &SeedJson) -> Result<Self, ClusterError> {
        let matrix = ExchangeMatrix::new(json.matrix.clone())?;
        if matrix.num_frozen() != json.frozen {
            return Err(ClusterError::Shape(format!(
                "frozen count {} does not match matrix shape ({} frozen rows)",
                json.frozen,
                matrix.num_frozen()
            )));
        }
        let cluster = json
            .cluster
            .iter()
            .map(|s| s.parse::<LaurentPoly>())
            .collect::<Result<Vec<_>, _>>()?;
        Seed::new(cluster, matrix)
    }
}

/// A non-frozen cluster variable found during exploration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterVariable {
    pub id: usize,
    pub value: LaurentPoly,
    /// Mutation sequence from the initial seed to the seed where this
    /// variable was first seen.
    pub path: Vec<usize>,
    /// Position of the variable in that seed.
    pub slot: usize,
}

/// One seed of the exchange graph, up to permutation of mutable entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedRecord {
    /// Variable id at each mutable position, as reached by `path`.
    pub slots: Vec<usize>,
    pub path: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct ExchangeGraph {
    pub variables: Vec<ClusterVariable>,
    pub seeds: Vec<SeedRecord>,
    /// Sorted variable ids of each seed, parallel to `seeds`.
    pub clusters: Vec<Vec<usize>>,
    /// Undirected edges `(seed, seed, direction at the first seed)`.
    pub edges: Vec<(usize, usize, usize)>,
    pub frozen: Vec<LaurentPoly>,
    pub complete: bool,
    pub max_seeds: usize,
}

/// Breadth-first closure of `s0` under mutation.
///
/// Seeds are identified by their set of mutable cluster variables. When the
/// budget is hit the partial graph is returned with `complete == false`.
pub fn exchange_graph(s0: &Seed, max_seeds: usize) -> Result<ExchangeGraph, ClusterError> {
    let max_seeds = max_seeds.max(1);
    let width = s0.matrix.num_mutable();
    let mut variables: Vec<ClusterVariable> = Vec::new();
    let mut var_ids: HashMap<LaurentPoly, usize> = HashMap::new();
    let mut intern = |value: &LaurentPoly, path: &[usize], slot: usize, vars: &mut Vec<ClusterVariable>| {
        *var_ids.entry(value.clone()).or_insert_with(|| {
            vars.push(ClusterVariable { id: vars.len(), value: value.clone(), path: path.to_vec(), slot });
            vars.len() - 1
        })
    };

    let slots: Vec<usize> = (0..width).map(|k| intern(&s0.cluster[k], &[], k, &mut variables)).collect();
    let mut seeds = vec![SeedRecord { slots: slots.clone(), path: Vec::new() }];
    let mut clusters = vec![sorted(&slots)];
    let mut seed_ids: HashMap<Vec<usize>, usize> = HashMap::from([(sorted(&slots), 0)]);
    let mut edges = Vec::new();
    let mut seen_edges: HashSet<(usize, usize)> = HashSet::new();
    let mut queue = VecDeque::from([(0usize, s0.clone())]);
    let mut complete = true;

    'bfs: while let Some((idx, seed)) = queue.pop_front() {
        for k in 0..width {
            let next = seed.mutate(k)?;
            let mut path = seeds[idx].path.clone();
            path.push(k);
            let var = intern(&next.cluster[k], &path, k, &mut variables);
            let mut slots = seeds[idx].slots.clone();
            slots[k] = var;
            let key = sorted(&slots);
            let target = match seed_ids.get(&key) {
                Some(&t) => t,
                None => {
                    if seeds.len() >= max_seeds {
                        complete = false;
                        break 'bfs;
                    }
                    let t = seeds.len();
                    seed_ids.insert(key.clone(), t);
                    seeds.push(SeedRecord { slots, path });
                    clusters.push(key);
                    queue.push_back((t, next));
                    t
                }
            };
            if seen_edges.insert((idx.min(target), idx.max(target))) {
                edges.push((idx, target, k));
            }
        }
    }

    Ok(ExchangeGraph {
        variables,
        seeds,
        clusters,
        edges,
        frozen: s0.frozen_cluster().to_vec(),
        complete,
        max_seeds,
    })
}

fn sorted(v: &[usize]) -> Vec<usize> {
    let mut s = v.to_vec();
    s.sort_unstable();
    s
}

impl ExchangeGraph {
    pub fn require_complete(&self) -> Result<(), ClusterError> {
        if self.complete {
            Ok(())
        } else {
            Err(ClusterError::BudgetExceeded(self.max_seeds))
        }
    }

    pub fn num_variables(&self) -> usize {
        self.variables.len()
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }

    pub fn variable_id(&self, value: &LaurentPoly) -> Option<usize> {
        self.variables.iter().position(|v| &v.value == value)
    }

    /// Symmetric table: `table[a][b]` iff variables `a` and `b` share a
    /// cluster.
    pub fn compatibility_table(&self) -> Result<Vec<Vec<bool>>, ClusterError> {
        if !self.complete {
            return Err(ClusterError::IncompleteGraph);
        }
        let n = self.variables.len();
        let mut table = vec![vec![false; n]; n];
        for c in &self.clusters {
            for &a in c {
                for &b in c {
                    table[a][b] = true;
                }
            }
        }
        Ok(table)
    }

    pub fn compatible(&self, a: usize, b: usize) -> Result<bool, ClusterError> {
        if !self.complete {
            return Err(ClusterError::IncompleteGraph);
        }
        Ok(self.clusters.iter().any(|c| c.contains(&a) && c.contains(&b)))
    }

    /// Adjacency lists of the exchange graph on seeds.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.seeds.len()];
        for &(a, b, _) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }
}

/// Labels every variable of a complete exchange graph by replaying mutations
/// on a combinatorial model.
///
/// `initial[k]` labels slot `k` of the initial seed and `flip(labels, k)`
/// returns the label replacing slot `k`. Every edge of the graph is checked,
/// so the result is a labeling that commutes with all mutations.
pub fn label_by_flips<T, F, E>(graph: &ExchangeGraph, initial: &[T], mut flip: F) -> Result<Vec<T>, E>
where
    T: Clone + Ord + std::fmt::Debug,
    F: FnMut(&[T], usize) -> Result<T, E>,
    E: From<ClusterError>,
{
    graph.require_complete()?;
    let mut states: Vec<Vec<T>> = Vec::with_capacity(graph.seeds.len());
    let mut by_path: HashMap<&[usize], usize> = HashMap::new();
    for (idx, rec) in graph.seeds.iter().enumerate() {
        let state = match rec.path.split_last() {
            None => initial.to_vec(),
            Some((&k, parent)) => {
                let parent = &states[by_path[parent]];
                let mut next = parent.clone();
                next[k] = flip(parent, k)?;
                next
            }
        };
        by_path.insert(&rec.path, idx);
        states.push(state);
    }
    let labels: Vec<T> = graph
        .variables
        .iter()
        .map(|v| states[by_path[v.path.as_slice()]][v.slot].clone())
        .collect();
    for (idx, rec) in graph.seeds.iter().enumerate() {
        for (k, &var) in rec.slots.iter().enumerate() {
            if labels[var] != states[idx][k] {
                return Err(ClusterError::LabelConflict(format!("seed {idx} slot {k}")).into());
            }
        }
    }
    for &(a, b, k) in &graph.edges {
        let mut next = states[a].clone();
        next[k] = flip(&states[a], k)?;
        next.sort();
        let mut want = states[b].clone();
        want.sort();
        if next != want {
            return Err(ClusterError::LabelConflict(format!("edge {a} -> {b} in direction {k}: {next:?} vs {want:?}")).into());
        }
    }
    Ok(labels)
}

/// Specializes all initial cluster variables `x[i]` to 1.
///
/// Meant for variables computed from a principal-coefficient seed; the
/// result must be a polynomial in the `y[i]` with constant term 1.
pub fn f_polynomial(value: &LaurentPoly) -> Result<LaurentPoly, ClusterError> {
    let f = value.specialize_to_one(|v| matches!(v, Var::X(_)));
    if !f.is_polynomial() || f.coefficient(&Monomial::one()) != 1.into() {
        return Err(ClusterError::NotPolynomial(f.canonical_string()));
    }
    Ok(f)
}

/// F-polynomials of every variable of an exchange graph built over a
/// principal-coefficient seed, indexed by variable id.
pub fn f_polynomials(graph: &ExchangeGraph) -> Result<Vec<LaurentPoly>, ClusterError> {
    graph.variables.iter().map(|v| f_polynomial(&v.value)).collect()
}

/// Renames principal coefficients `y[k]` through `rename`.
pub fn rename_coefficients<F: Fn(u32) -> Var>(p: &LaurentPoly, rename: F) -> LaurentPoly {
    let map: BTreeMap<Var, LaurentPoly> = p
        .variables()
        .into_iter()
        .filter_map(|v| match v {
            Var::Coef(k) => Some((v, LaurentPoly::var(rename(k)))),
            _ => None,
        })
        .collect();
    p.substitute(&map).expect("renaming into single variables is always invertible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::new(vec![vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn mutate_matrix_rank_two() {
        assert_eq!(a2().mutate(0).unwrap().rows(), &[vec![0, -1], vec![1, 0]]);
    }

    #[test]
    fn mutate_matrix_three_chain() {
        let b = ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        assert_eq!(
            b.mutate(1).unwrap().rows(),
            &[vec![0, -1, 1], vec![1, 0, -1], vec![-1, 1, 0]]
        );
    }

    #[test]
    fn mutate_rejects_bad_direction() {
        assert_eq!(a2().mutate(2), Err(ClusterError::IndexOutOfRange { k: 2, mutable: 2 }));
        let with_frozen = ExchangeMatrix::new(vec![vec![0], vec![1]]).unwrap();
        assert!(with_frozen.mutate(1).is_err());
    }

    #[test]
    fn constructor_checks() {
        assert_eq!(
            ExchangeMatrix::new(vec![vec![0, 1], vec![1, 0]]),
            Err(ClusterError::NotSkewSymmetric)
        );
        assert!(ExchangeMatrix::new(vec![vec![0, 1], vec![0]]).is_err());
    }

    #[test]
    fn seed_mutation_rank_two() {
        let s = Seed::initial(a2()).mutate(0).unwrap();
        assert_eq!(s.cluster()[0], p("x[1]^-1*x[2] + x[1]^-1"));
        assert_eq!(s.cluster()[1], p("x[2]"));
    }

    #[test]
    fn seed_mutation_without_arrows() {
        let s = Seed::initial(ExchangeMatrix::new(vec![vec![0]]).unwrap()).mutate(0).unwrap();
        assert_eq!(s.cluster()[0], p("2*x[1]^-1"));
    }

    #[test]
    fn frozen_entries_never_move() {
        let m = ExchangeMatrix::from_quiver(3, 2, &[(0, 1), (1, 2)]);
        let s0 = Seed::initial(m);
        let s = s0.mutate_path(&[0, 1, 0, 1, 1]).unwrap();
        assert_eq!(s.frozen_cluster(), s0.frozen_cluster());
    }

    #[test]
    fn principal_extension() {
        let one = ExchangeMatrix::with_principal_coefficients(&[vec![0]]).unwrap();
        assert_eq!(one.rows(), &[vec![0], vec![1]]);
        let two = ExchangeMatrix::with_principal_coefficients(&a2().principal_part()).unwrap();
        assert_eq!(two.rows(), &[vec![0, 1], vec![-1, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(two.principal_part(), a2().principal_part());
        assert_eq!(
            ExchangeMatrix::with_principal_coefficients(&[vec![0, 1], vec![1, 0]]),
            Err(ClusterError::NotSkewSymmetric)
        );
    }

    #[test]
    fn from_quiver_convention() {
        // arrow i -> j sets b[i][j] = 1
        let m = ExchangeMatrix::from_quiver(3, 2, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(m.rows(), &[vec![0, 1], vec![-1, 0], vec![1, -1]]);
        assert_eq!(m.principal_arrows(), vec![(0, 1)]);
    }

    #[test]
    fn a2_exchange_graph() {
        let g = exchange_graph(&Seed::initial(a2()), DEFAULT_MAX_SEEDS).unwrap();
        assert!(g.complete);
        assert_eq!(g.num_clusters(), 5);
        let mut got: Vec<LaurentPoly> = g.variables.iter().map(|v| v.value.clone()).collect();
        got.sort();
        let mut want = vec![
            p("x[1]"),
            p("x[2]"),
            p("x[1]^-1*x[2] + x[1]^-1"),
            p("x[1]^-1*x[2]^-1 + x[2]^-1 + x[1]^-1"),
            p("x[1]*x[2]^-1 + x[2]^-1"),
        ];
        want.sort();
        assert_eq!(got, want);
        // every path replays to its variable
        for v in &g.variables {
            let s = Seed::initial(a2()).mutate_path(&v.path).unwrap();
            assert_eq!(s.cluster()[v.slot], v.value);
        }
    }

    #[test]
    fn a2_compatibility() {
        let g = exchange_graph(&Seed::initial(a2()), DEFAULT_MAX_SEEDS).unwrap();
        let id = |s: &str| g.variable_id(&p(s)).unwrap();
        let x1 = id("x[1]");
        assert!(g.compatible(x1, x1).unwrap());
        assert!(g.compatible(x1, id("x[1]*x[2]^-1 + x[2]^-1")).unwrap());
        assert!(!g.compatible(x1, id("x[1]^-1*x[2] + x[1]^-1")).unwrap());
        // exchange partners are never compatible
        for &(a, b, _) in &g.edges {
            let only_a: Vec<_> = g.clusters[a].iter().filter(|v| !g.clusters[b].contains(v)).collect();
            let only_b: Vec<_> = g.clusters[b].iter().filter(|v| !g.clusters[a].contains(v)).collect();
            assert_eq!((only_a.len(), only_b.len()), (1, 1));
            assert!(!g.compatible(*only_a[0], *only_b[0]).unwrap());
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let g = exchange_graph(&Seed::initial(a2()), 3).unwrap();
        assert!(!g.complete);
        assert_eq!(g.num_clusters(), 3);
        assert_eq!(g.require_complete(), Err(ClusterError::BudgetExceeded(3)));
        assert_eq!(g.compatible(0, 1), Err(ClusterError::IncompleteGraph));
    }

    #[test]
    fn non_finite_type_stops_at_budget() {
        // Kronecker quiver: infinitely many clusters
        let m = ExchangeMatrix::new(vec![vec![0, 2], vec![-2, 0]]).unwrap();
        let g = exchange_graph(&Seed::initial(m), 12).unwrap();
        assert!(!g.complete);
    }

    #[test]
    fn f_polynomial_rank_one() {
        let s = Seed::principal(&[vec![0]]).unwrap();
        let v = s.mutate(0).unwrap().cluster()[0].clone();
        assert_eq!(f_polynomial(&v).unwrap(), p("1 + y[1]"));
        assert_eq!(f_polynomial(&p("x[1]")).unwrap(), LaurentPoly::one());
        assert!(f_polynomial(&p("x[1]^-1*y[1]^-1")).is_err());
    }

    #[test]
    fn seed_json_round_trip() {
        let s = Seed::principal(&a2().principal_part()).unwrap().mutate(1).unwrap();
        let text = serde_json::to_string(&s.to_json()).unwrap();
        let back: SeedJson = serde_json::from_str(&text).unwrap();
        assert_eq!(Seed::from_json(&back).unwrap(), s);
    }

    fn arb_skew(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        prop::collection::vec(-2i64..3, n * (n - 1) / 2).prop_map(move |upper| {
            let mut b = vec![vec![0; n]; n];
            let mut it = upper.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    b[i][j] = v;
                    b[j][i] = -v;
                }
            }
            b
        })
    }

    proptest! {
        #[test]
        fn matrix_mutation_is_involutive(b in arb_skew(4), frozen in prop::collection::vec(-2i64..3, 8), k in 0usize..4) {
            let mut rows = b;
            rows.push(frozen[..4].to_vec());
            rows.push(frozen[4..].to_vec());
            let m = ExchangeMatrix::new(rows).unwrap();
            let once = m.mutate(k).unwrap();
            prop_assert!(once.principal_is_skew());
            prop_assert_eq!(once.mutate(k).unwrap(), m);
        }

        #[test]
        fn seed_mutation_is_involutive(b in arb_skew(3), k in 0usize..3) {
            let s = Seed::principal(&b).unwrap();
            prop_assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
        }
    }
}
