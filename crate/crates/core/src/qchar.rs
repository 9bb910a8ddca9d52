//! The `Y[i,p]` ring, height functions and truncated q-characters of the
//! prime modules `L(i,j)` and `L(i,j)+` (dagger) for the linearly oriented
//! height functions of types A and D.
//!
//! Characters are stored in closed form. The renormalized character is a
//! polynomial in `t[i] = A[i, xi_i + 1]^-1`; the truncated character is the
//! label monomial times its image under that substitution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::laurent::{LaurentPoly, Monomial, Var};
use crate::simplicity::{factorize_simple, SimplicityError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QcharError {
    #[error("({i},{p}) violates the parity of the height function")]
    ParityViolation { i: u32, p: i32 },
    #[error("invalid height function: {0}")]
    InvalidHeightFunction(String),
    #[error("invalid label {label} for {kind:?}{rank}")]
    InvalidLabel { label: String, kind: DynkinType, rank: u32 },
    #[error("monomial {0} is not a product of window A-inverses")]
    NotExpressibleInT(String),
    #[error("character has no unique highest monomial")]
    NoHighestMonomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum DynkinType {
    A,
    D,
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DynkinType::A => "A",
            DynkinType::D => "D",
        })
    }
}

impl FromStr for DynkinType {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "A" | "a" => Ok(DynkinType::A),
            "D" | "d" => Ok(DynkinType::D),
            _ => Err(format!("unknown Dynkin type {s:?} (expected A or D)")),
        }
    }
}

/// A height function on the nodes `1..=n` of a Dynkin diagram of type A or D.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HeightFunction {
    kind: DynkinType,
    rank: u32,
    xi: Vec<i32>,
}

impl HeightFunction {
    /// Checks `|xi_i - xi_j| = 1` on every edge.
    pub fn new(kind: DynkinType, rank: u32, xi: Vec<i32>) -> Result<Self, QcharError> {
        let min_rank = if kind == DynkinType::A { 1 } else { 3 };
        if rank < min_rank || xi.len() != rank as usize {
            return Err(QcharError::InvalidHeightFunction(format!(
                "{kind:?}{rank} with {} values",
                xi.len()
            )));
        }
        let hf = HeightFunction { kind, rank, xi };
        for i in 1..=rank {
            for j in hf.neighbors(i) {
                if (hf.xi(i) - hf.xi(j)).abs() != 1 {
                    return Err(QcharError::InvalidHeightFunction(format!(
                        "nodes {i} and {j} are adjacent but heights differ by {}",
                        hf.xi(i) - hf.xi(j)
                    )));
                }
            }
        }
        Ok(hf)
    }

    /// `xi_i = i`.
    pub fn type_a(n: u32) -> Self {
        Self::new(DynkinType::A, n, (1..=n as i32).collect()).expect("linear orientation")
    }

    /// `xi_i = n - 1 - i` for `i < n`, `xi_n = 0`.
    pub fn type_d(n: u32) -> Self {
        let mut xi: Vec<i32> = (1..n as i32).map(|i| n as i32 - 1 - i).collect();
        xi.push(0);
        Self::new(DynkinType::D, n, xi).expect("linear orientation")
    }

    pub fn standard(kind: DynkinType, n: u32) -> Result<Self, QcharError> {
        match kind {
            DynkinType::A if n >= 1 => Ok(Self::type_a(n)),
            DynkinType::D if n >= 3 => Ok(Self::type_d(n)),
            _ => Err(QcharError::InvalidHeightFunction(format!("{kind:?}{n}"))),
        }
    }

    pub fn kind(&self) -> DynkinType {
        self.kind
    }

    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Height of node `i` (1-based).
    pub fn xi(&self, i: u32) -> i32 {
        self.xi[(i - 1) as usize]
    }

    pub fn is_node(&self, i: u32) -> bool {
        (1..=self.rank).contains(&i)
    }

    pub fn adjacent(&self, i: u32, j: u32) -> bool {
        if !self.is_node(i) || !self.is_node(j) || i == j {
            return false;
        }
        let n = self.rank;
        match self.kind {
            DynkinType::A => i.abs_diff(j) == 1,
            DynkinType::D => {
                let (a, b) = (i.min(j), i.max(j));
                if b <= n - 2 {
                    b - a == 1
                } else {
                    a == n - 2
                }
            }
        }
    }

    pub fn neighbors(&self, i: u32) -> Vec<u32> {
        (1..=self.rank).filter(|&j| self.adjacent(i, j)).collect()
    }

    /// Cartan matrix entry `C_ij`.
    pub fn cartan(&self, i: u32, j: u32) -> i64 {
        if i == j {
            2
        } else if self.adjacent(i, j) {
            -1
        } else {
            0
        }
    }

    /// Skew-symmetric matrix of the quiver of the height function: an arrow
    /// `i -> j` (`b[i][j] = 1`) whenever `i ~ j` and `xi_j = xi_i + 1`.
    pub fn quiver_matrix(&self) -> Vec<Vec<i64>> {
        (1..=self.rank)
            .map(|i| {
                (1..=self.rank)
                    .map(|j| match (self.adjacent(i, j), self.xi(j) - self.xi(i)) {
                        (true, 1) => 1,
                        (true, -1) => -1,
                        _ => 0,
                    })
                    .collect()
            })
            .collect()
    }

    /// `(i,p)` lies in the parity class of the height function.
    pub fn in_hat_i(&self, i: u32, p: i32) -> bool {
        self.is_node(i) && (p - self.xi(i)).rem_euclid(2) == 0
    }

    /// The `2n` pairs `(i, xi_i)` and `(i, xi_i + 2)`.
    pub fn window(&self) -> BTreeSet<(u32, i32)> {
        (1..=self.rank)
            .flat_map(|i| [(i, self.xi(i)), (i, self.xi(i) + 2)])
            .collect()
    }

    pub fn in_window(&self, m: &Monomial) -> bool {
        m.iter().all(|(v, _)| match v {
            Var::Y(i, p) => self.is_node(i) && (p == self.xi(i) || p == self.xi(i) + 2),
            _ => false,
        })
    }

    /// `Y[i,p]`, with the convention that nodes `0` and `n+1` give 1.
    pub fn y(&self, i: u32, p: i32) -> Monomial {
        if i == 0 || i == self.rank + 1 {
            Monomial::one()
        } else {
            Monomial::var(Var::Y(i, p))
        }
    }

    /// Builds a Y-monomial from `((i,p), exp)` pairs, erasing nodes `0` and
    /// `n+1` and checking parity.
    pub fn y_monomial<I: IntoIterator<Item = ((u32, i32), i64)>>(&self, pairs: I) -> Result<Monomial, QcharError> {
        let mut kept = Vec::new();
        for ((i, p), e) in pairs {
            if i == 0 || i == self.rank + 1 {
                continue;
            }
            if !self.in_hat_i(i, p) {
                return Err(QcharError::ParityViolation { i, p });
            }
            kept.push((Var::Y(i, p), e));
        }
        Ok(Monomial::from_pairs(kept))
    }

    /// The monomial `A[i,p+1] = Y[i,p] Y[i,p+2] prod_{j~i} Y[j,p+1]^-1`.
    pub fn a_variable(&self, i: u32, p: i32) -> Result<Monomial, QcharError> {
        if !self.in_hat_i(i, p) {
            return Err(QcharError::ParityViolation { i, p });
        }
        let mut pairs = vec![(Var::Y(i, p), 1), (Var::Y(i, p + 2), 1)];
        pairs.extend(self.neighbors(i).into_iter().map(|j| (Var::Y(j, p + 1), -1)));
        Ok(Monomial::from_pairs(pairs))
    }

    /// `t[i] = A[i, xi_i + 1]^-1` as a Y-monomial.
    pub fn t_image(&self, i: u32) -> Monomial {
        self.a_variable(i, self.xi(i)).expect("xi_i has the right parity").inv()
    }

    /// Substitution `t[i] -> A[i, xi_i + 1]^-1` for all nodes.
    pub fn t_assignment(&self) -> BTreeMap<Var, LaurentPoly> {
        (1..=self.rank)
            .map(|i| (Var::T(i), LaurentPoly::monomial(self.t_image(i))))
            .collect()
    }

    /// Writes a Y-monomial as `prod t[i]^c_i`, if possible.
    ///
    /// Nodes are solved in increasing height: the exponent of `Y[i, xi_i]`
    /// only involves `c_i` and the already known `c_j` of lower neighbours.
    pub fn t_exponents(&self, m: &Monomial) -> Option<BTreeMap<u32, i64>> {
        if !self.in_window(m) {
            return None;
        }
        let mut order: Vec<u32> = (1..=self.rank).collect();
        order.sort_by_key(|&i| (self.xi(i), i));
        let mut c: BTreeMap<u32, i64> = BTreeMap::new();
        for &i in &order {
            let lower: i64 = self
                .neighbors(i)
                .into_iter()
                .filter(|&j| self.xi(j) == self.xi(i) - 1)
                .map(|j| c[&j])
                .sum();
            c.insert(i, -m.exponent(Var::Y(i, self.xi(i))) + lower);
        }
        let rebuilt = c
            .iter()
            .fold(Monomial::one(), |acc, (&i, &e)| acc.mul(&self.t_image(i).pow(e)));
        (rebuilt == *m).then_some(c)
    }

    /// The t-monomial of `m`, if `m` is a product of nonnegative powers of
    /// the `t[i]`.
    pub fn to_t_monomial(&self, m: &Monomial) -> Option<Monomial> {
        let c = self.t_exponents(m)?;
        if c.values().any(|&e| e < 0) {
            return None;
        }
        Some(Monomial::from_pairs(c.into_iter().map(|(i, e)| (Var::T(i), e))))
    }

    /// Partial order on `{0, ..., n+1}` used to index type D labels: `0` is
    /// maximal, `n+1` minimal, nodes compare by height; `n-1` and `n` are
    /// incomparable.
    pub fn prec(&self, a: u32, b: u32) -> bool {
        self.order_key(a) < self.order_key(b)
    }

    pub fn preceq(&self, a: u32, b: u32) -> bool {
        a == b || self.prec(a, b)
    }

    fn order_key(&self, a: u32) -> i64 {
        if a == 0 {
            i64::MAX
        } else if a == self.rank + 1 {
            i64::MIN
        } else {
            self.xi(a) as i64
        }
    }
}

/// Name of a module in the prime family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PrimeLabel {
    /// The trivial module.
    Unit,
    /// `L(i,j)`.
    Plain(u32, u32),
    /// `L(i,j)+`, the type D family outside the minimal affinizations.
    Dagger(u32, u32),
}

impl fmt::Display for PrimeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PrimeLabel::Unit => write!(f, "1"),
            PrimeLabel::Plain(i, j) => write!(f, "L({i},{j})"),
            PrimeLabel::Dagger(i, j) => write!(f, "L({i},{j})+"),
        }
    }
}

impl FromStr for PrimeLabel {
    type Err = String;

    /// Accepts `1`, `L(i,j)` and `L(i,j)+` (also `L(i,j)†`).
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "1" {
            return Ok(PrimeLabel::Unit);
        }
        let bad = || format!("cannot parse label {s:?}");
        let body = s.strip_prefix("L(").ok_or_else(bad)?;
        let (inner, rest) = body.split_once(')').ok_or_else(bad)?;
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let i: u32 = a.trim().parse().map_err(|_| bad())?;
        let j: u32 = b.trim().parse().map_err(|_| bad())?;
        match rest.trim() {
            "" => Ok(PrimeLabel::Plain(i, j)),
            "+" | "†" => Ok(PrimeLabel::Dagger(i, j)),
            _ => Err(bad()),
        }
    }
}

impl serde::Serialize for PrimeLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl PrimeLabel {
    pub fn is_dagger(&self) -> bool {
        matches!(self, PrimeLabel::Dagger(..))
    }
}

fn invalid(hf: &HeightFunction, label: PrimeLabel) -> QcharError {
    QcharError::InvalidLabel { label: label.to_string(), kind: hf.kind(), rank: hf.rank() }
}

/// Checks the index ranges of a label for the given height function.
pub fn validate_label(hf: &HeightFunction, label: PrimeLabel) -> Result<(), QcharError> {
    let n = hf.rank();
    let ok = match (hf.kind(), label) {
        (_, PrimeLabel::Unit) => true,
        (DynkinType::A, PrimeLabel::Plain(i, j)) => i <= j && j <= n + 1,
        (DynkinType::A, PrimeLabel::Dagger(..)) => false,
        (DynkinType::D, PrimeLabel::Plain(i, j)) => i <= n + 1 && j <= n + 1 && hf.preceq(i, j),
        (DynkinType::D, PrimeLabel::Dagger(i, j)) => {
            i <= n + 1 && j <= n + 1 && hf.preceq(n - 2, j) && hf.prec(j, i)
        }
    };
    if ok {
        Ok(())
    } else {
        Err(invalid(hf, label))
    }
}

/// Highest (dominant) monomial of a label.
pub fn label_monomial(hf: &HeightFunction, label: PrimeLabel) -> Result<Monomial, QcharError> {
    validate_label(hf, label)?;
    let n = hf.rank();
    let xi = |i: u32| if hf.is_node(i) { hf.xi(i) } else { 0 };
    Ok(match label {
        PrimeLabel::Unit => Monomial::one(),
        PrimeLabel::Plain(i, j) => hf.y(i, xi(i)).mul(&hf.y(j, xi(j) + 2)),
        PrimeLabel::Dagger(i, j) => hf
            .y(n, 0)
            .mul(&hf.y(n - 1, 0))
            .mul(&hf.y(i, xi(i) + 2))
            .mul(&hf.y(j, xi(j) + 2)),
    })
}

pub fn is_trivial(hf: &HeightFunction, label: PrimeLabel) -> bool {
    label_monomial(hf, label).is_ok_and(|m| m.is_one())
}

/// `L(i,i)` for a node `i`: the classes of frozen variables.
pub fn is_frozen(hf: &HeightFunction, label: PrimeLabel) -> bool {
    matches!(label, PrimeLabel::Plain(i, j) if i == j && hf.is_node(i))
}

/// Every nontrivial valid label, sorted.
pub fn prime_family(hf: &HeightFunction) -> Vec<PrimeLabel> {
    let n = hf.rank();
    let mut out = Vec::new();
    for i in 0..=n + 1 {
        for j in 0..=n + 1 {
            for label in [PrimeLabel::Plain(i, j), PrimeLabel::Dagger(i, j)] {
                if validate_label(hf, label).is_ok() && !is_trivial(hf, label) {
                    out.push(label);
                }
            }
        }
    }
    out
}

/// `1 + t[a1] + t[a1] t[a2] + ... + t[a1] ... t[ak]`.
fn prefix_chain(nodes: &[u32]) -> LaurentPoly {
    let mut out = LaurentPoly::one();
    let mut acc = Monomial::one();
    for &a in nodes {
        acc = acc.mul(&Monomial::var(Var::T(a)));
        out += LaurentPoly::monomial(acc.clone());
    }
    out
}

/// Nodes of the A-inverse chain of `L(i,j)`: starting at `i` and moving one
/// step up in height at a time until `j` is reached (`j` excluded).
///
/// Type A: `i, i+1, ..., j-1`. Type D: `i, i-1, ..., j+1`, where the step
/// after `n` is `n-2`.
fn chain_nodes(hf: &HeightFunction, i: u32, j: u32) -> Vec<u32> {
    let n = hf.rank();
    let step = |x: u32| match hf.kind() {
        DynkinType::A => x + 1,
        DynkinType::D if x == n => n - 2,
        DynkinType::D => x - 1,
    };
    let mut nodes = Vec::new();
    let mut x = i;
    while x != j {
        nodes.push(x);
        x = step(x);
    }
    nodes
}

/// `chi_j` of the type D formulas: the chain `n-2, n-3, ..., j+1`.
fn chi_d(hf: &HeightFunction, j: u32) -> LaurentPoly {
    let n = hf.rank();
    if j >= n - 2 {
        return LaurentPoly::one();
    }
    prefix_chain(&chain_nodes(hf, n - 2, j))
}

/// Renormalized truncated q-character of a label as a polynomial in the
/// `t[i]`.
pub fn renormalized_t(hf: &HeightFunction, label: PrimeLabel) -> Result<LaurentPoly, QcharError> {
    validate_label(hf, label)?;
    let n = hf.rank();
    let t = |i: u32| LaurentPoly::var(Var::T(i));
    Ok(match (hf.kind(), label) {
        (_, PrimeLabel::Unit) => LaurentPoly::one(),
        (DynkinType::A, PrimeLabel::Plain(0, _)) => LaurentPoly::one(),
        (DynkinType::A, PrimeLabel::Plain(i, j)) => prefix_chain(&chain_nodes(hf, i, j)),
        (DynkinType::D, PrimeLabel::Plain(i, _)) if i == n + 1 => LaurentPoly::one(),
        (DynkinType::D, PrimeLabel::Plain(i, j)) if i == n && j != n => &t(n) * &chi_d(hf, j) + LaurentPoly::one(),
        (DynkinType::D, PrimeLabel::Plain(i, j)) => prefix_chain(&chain_nodes(hf, i, j)),
        (DynkinType::D, PrimeLabel::Dagger(i, j)) => {
            let (chi_i, chi_j) = (chi_d(hf, i), chi_d(hf, j));
            let pair = &t(n - 1) + &t(n);
            let top = &(&t(n - 1) * &t(n)) * &(&chi_i * &chi_j);
            &(&LaurentPoly::one() + &(&pair * &chi_j)) + &top
        }
        (DynkinType::A, PrimeLabel::Dagger(..)) => unreachable!("rejected by validate_label"),
    })
}

/// A truncated q-character together with its highest monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedQChar {
    pub highest: Monomial,
    pub value: LaurentPoly,
}

impl TruncatedQChar {
    pub fn one() -> Self {
        TruncatedQChar { highest: Monomial::one(), value: LaurentPoly::one() }
    }

    pub fn dominant_monomials(&self) -> BTreeMap<Monomial, BigInt> {
        dominant_monomials(&self.value)
    }

    /// Exactly one dominant monomial.
    pub fn is_minuscule(&self) -> bool {
        self.dominant_monomials().len() == 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        TruncatedQChar {
            highest: self.highest.mul(&other.highest),
            value: &self.value * &other.value,
        }
    }
}

/// Truncated q-character of a prime label.
pub fn trunc_qchar(hf: &HeightFunction, label: PrimeLabel) -> Result<TruncatedQChar, QcharError> {
    let highest = label_monomial(hf, label)?;
    let t = renormalized_t(hf, label)?;
    let value = t
        .substitute(&hf.t_assignment())
        .expect("t images are monomials")
        .mul_monomial(&highest);
    Ok(TruncatedQChar { highest, value })
}

/// Type A_n character of `L(i,j)`, `0 <= i <= j <= n+1`.
pub fn trunc_qchar_prime_a(n: u32, i: u32, j: u32) -> Result<TruncatedQChar, QcharError> {
    trunc_qchar(&HeightFunction::type_a(n), PrimeLabel::Plain(i, j))
}

/// Type D_n character of a plain or dagger label.
pub fn trunc_qchar_prime_d(n: u32, label: PrimeLabel) -> Result<TruncatedQChar, QcharError> {
    let hf = HeightFunction::standard(DynkinType::D, n)?;
    trunc_qchar(&hf, label)
}

/// Terms whose monomial has no negative exponent.
pub fn dominant_monomials(chi: &LaurentPoly) -> BTreeMap<Monomial, BigInt> {
    chi.terms()
        .filter(|(m, _)| m.is_nonnegative())
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect()
}

/// The monomial `m0` of `chi` such that every monomial of `chi` is `m0`
/// times a product of the `t[i]`.
pub fn highest_monomial(hf: &HeightFunction, chi: &LaurentPoly) -> Option<Monomial> {
    let mut found = None;
    for (cand, _) in chi.terms() {
        if chi.terms().all(|(m, _)| hf.to_t_monomial(&m.div(cand)).is_some()) {
            if found.is_some() {
                return None;
            }
            found = Some(cand.clone());
        }
    }
    found
}

/// Divides by the highest monomial and rewrites the result in the `t[i]`.
pub fn renormalize_and_tsub(hf: &HeightFunction, chi: &LaurentPoly) -> Result<LaurentPoly, QcharError> {
    let top = highest_monomial(hf, chi).ok_or(QcharError::NoHighestMonomial)?;
    let mut out = LaurentPoly::zero();
    for (m, c) in chi.terms() {
        let rel = m.div(&top);
        let tm = hf
            .to_t_monomial(&rel)
            .ok_or_else(|| QcharError::NotExpressibleInT(rel.to_string()))?;
        out += LaurentPoly::term(c.clone(), tm);
    }
    Ok(out)
}

/// Every non-highest monomial is the highest one times A-inverses at window
/// nodes.
pub fn is_lowering_closed(hf: &HeightFunction, chi: &TruncatedQChar) -> bool {
    chi.value
        .terms()
        .all(|(m, c)| c.is_positive() && hf.to_t_monomial(&m.div(&chi.highest)).is_some())
}

/// Character of the simple module with highest monomial `m`, as the product
/// of the characters of its prime factors.
pub fn qchar_simple(hf: &HeightFunction, m: &Monomial) -> Result<TruncatedQChar, SimplicityError> {
    let factors = factorize_simple(hf, m, false)?;
    factors.iter().try_fold(TruncatedQChar::one(), |acc, &label| {
        Ok(acc.mul(&trunc_qchar(hf, label)?))
    })
}

/// Precomputed prime family with label monomials and characters.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub hf: HeightFunction,
    pub entries: Vec<CatalogEntry>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub label: PrimeLabel,
    pub monomial: Monomial,
    pub tchar: LaurentPoly,
    pub qchar: TruncatedQChar,
}

impl Catalog {
    pub fn new(hf: &HeightFunction) -> Self {
        let entries = prime_family(hf)
            .into_iter()
            .map(|label| CatalogEntry {
                label,
                monomial: label_monomial(hf, label).expect("family labels are valid"),
                tchar: renormalized_t(hf, label).expect("family labels are valid"),
                qchar: trunc_qchar(hf, label).expect("family labels are valid"),
            })
            .collect();
        Catalog { hf: hf.clone(), entries }
    }

    pub fn get(&self, label: PrimeLabel) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}
