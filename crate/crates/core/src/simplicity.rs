//! Simplicity of tensor products of primes, prime factorization of simple
//! classes and decomposition of tensor products into composition factors.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::laurent::{LaurentPoly, Monomial};
use crate::qchar::{
    dominant_monomials, is_frozen, is_trivial, label_monomial, prime_family, qchar_simple, DynkinType,
    HeightFunction, PrimeLabel, QcharError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplicityError {
    #[error("monomial {0} is not dominant")]
    NotDominant(String),
    #[error("monomial {0} is not supported on the window")]
    NotInWindow(String),
    #[error("no factorization of {0} into pairwise simple primes")]
    NoFactorization(String),
    #[error("{monomial} factors both as {first} and as {second}")]
    NonUniqueFactorization { monomial: String, first: String, second: String },
    #[error("negative multiplicity {coefficient} at {monomial}")]
    NegativeMultiplicity { monomial: String, coefficient: BigInt },
    #[error("decomposition did not terminate")]
    NonTermination,
    #[error(transparent)]
    Qchar(#[from] QcharError),
}

/// Which criterion decided a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// One of the labels is the trivial module.
    Trivial,
    /// One of the labels is a frozen class `L(i,i)`.
    Frozen,
    /// Type A crossing rule.
    TypeA,
    /// Type D case `a` ... `e`.
    D(char),
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaseTag::Trivial => write!(f, "trivial"),
            CaseTag::Frozen => write!(f, "frozen"),
            CaseTag::TypeA => write!(f, "A"),
            CaseTag::D(c) => write!(f, "{c}"),
        }
    }
}

impl serde::Serialize for CaseTag {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub case: CaseTag,
}

/// `(i,j)` and `(k,l)` cross: `i < k <= j < l` or `k < i <= l < j`.
pub fn crossing_pair_a(i: u32, j: u32, k: u32, l: u32) -> bool {
    (i < k && k <= j && j < l) || (k < i && i <= l && l < j)
}

/// Decides whether `L(p1) (x) L(p2)` is simple.
///
/// Frozen labels go through the same rules; the tag only records that one
/// of them was involved.
pub fn simple_pair(hf: &HeightFunction, p1: PrimeLabel, p2: PrimeLabel) -> SimplicityVerdict {
    if is_trivial(hf, p1) || is_trivial(hf, p2) {
        return SimplicityVerdict { simple: true, case: CaseTag::Trivial };
    }
    let (simple, case) = match hf.kind() {
        DynkinType::A => match (p1, p2) {
            (PrimeLabel::Plain(i, j), PrimeLabel::Plain(k, l)) => (!crossing_pair_a(i, j, k, l), CaseTag::TypeA),
            _ => (false, CaseTag::TypeA),
        },
        DynkinType::D => simple_pair_d(hf, p1, p2),
    };
    if is_frozen(hf, p1) || is_frozen(hf, p2) {
        return SimplicityVerdict { simple, case: CaseTag::Frozen };
    }
    SimplicityVerdict { simple, case }
}

fn simple_pair_d(hf: &HeightFunction, p1: PrimeLabel, p2: PrimeLabel) -> (bool, CaseTag) {
    let n = hf.rank();
    let lt = |a, b| hf.prec(a, b);
    let le = |a, b| hf.preceq(a, b);
    match (p1, p2) {
        (PrimeLabel::Plain(i, j), PrimeLabel::Plain(k, l)) => {
            if (i == n - 1 && k == n) || (i == n && k == n - 1) {
                (j == l || i == j || k == l, CaseTag::D('b'))
            } else {
                let crossing = (lt(i, k) && le(k, j) && lt(j, l)) || (lt(k, i) && le(i, l) && lt(l, j));
                (!crossing, CaseTag::D('a'))
            }
        }
        (PrimeLabel::Dagger(i, j), PrimeLabel::Dagger(k, l)) => {
            let ok = (le(j, l) && lt(l, k) && le(k, i)) || (le(l, j) && lt(j, i) && le(i, k));
            (ok, CaseTag::D('c'))
        }
        (PrimeLabel::Plain(i, j), PrimeLabel::Dagger(k, l)) | (PrimeLabel::Dagger(k, l), PrimeLabel::Plain(i, j)) => {
            if le(n - 2, i) {
                let ok = i == j
                    || (lt(i, j) && le(j, l) && lt(l, k))
                    || (lt(l, k) && lt(k, i) && lt(i, j))
                    || (lt(l, i) && lt(i, j) && le(j, k));
                (ok, CaseTag::D('d'))
            } else {
                let ok = i == j || (i != n + 1 && le(l, j) && le(j, k)) || (i == n + 1 && le(k, j));
                (ok, CaseTag::D('e'))
            }
        }
        _ => unreachable!("unit labels are handled by the caller"),
    }
}

/// All unordered pairs are simple.
pub fn simple_product(hf: &HeightFunction, labels: &[PrimeLabel]) -> bool {
    labels
        .iter()
        .enumerate()
        .all(|(a, &p)| labels[a + 1..].iter().all(|&q| simple_pair(hf, p, q).simple))
}

fn check_dominant_window(hf: &HeightFunction, m: &Monomial) -> Result<(), SimplicityError> {
    if !m.is_nonnegative() {
        return Err(SimplicityError::NotDominant(m.to_string()));
    }
    if !hf.in_window(m) {
        return Err(SimplicityError::NotInWindow(m.to_string()));
    }
    Ok(())
}

fn format_labels(labels: &[PrimeLabel]) -> String {
    let parts: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Search state for the backtracking factorization.
struct Search<'a> {
    hf: &'a HeightFunction,
    primes: Vec<(PrimeLabel, Monomial)>,
    chosen: Vec<PrimeLabel>,
    found: Vec<Vec<PrimeLabel>>,
    limit: usize,
}

impl Search<'_> {
    fn run(&mut self, rest: &Monomial, start: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if rest.is_one() {
            self.found.push(self.chosen.clone());
            return;
        }
        for idx in start..self.primes.len() {
            let (label, mono) = &self.primes[idx];
            let left = rest.div(mono);
            if !left.is_nonnegative() {
                continue;
            }
            if !self.chosen.iter().all(|&c| simple_pair(self.hf, c, *label).simple) {
                continue;
            }
            self.chosen.push(*label);
            self.run(&left, idx);
            self.chosen.pop();
        }
    }
}

/// Factors a dominant window monomial into pairwise simple primes.
///
/// The result is sorted. With `check_unique` the search continues after the
/// first hit and fails if a second factorization exists.
pub fn factorize_simple(hf: &HeightFunction, m: &Monomial, check_unique: bool) -> Result<Vec<PrimeLabel>, SimplicityError> {
    check_dominant_window(hf, m)?;
    let mut primes: Vec<(PrimeLabel, Monomial)> = prime_family(hf)
        .into_iter()
        .map(|l| (l, label_monomial(hf, l).expect("family labels are valid")))
        .collect();
    primes.sort_by(|a, b| b.1.degree().cmp(&a.1.degree()).then(a.0.cmp(&b.0)));
    let mut search = Search {
        hf,
        primes,
        chosen: Vec::new(),
        found: Vec::new(),
        limit: if check_unique { 2 } else { 1 },
    };
    search.run(m, 0);
    let mut found = search.found.into_iter().map(|mut f| {
        f.sort();
        f
    });
    let first = found.next().ok_or_else(|| SimplicityError::NoFactorization(m.to_string()))?;
    if let Some(second) = found.next() {
        return Err(SimplicityError::NonUniqueFactorization {
            monomial: m.to_string(),
            first: format_labels(&first),
            second: format_labels(&second),
        });
    }
    Ok(first)
}

/// Product of the label monomials.
pub fn labels_monomial(hf: &HeightFunction, labels: &[PrimeLabel]) -> Result<Monomial, QcharError> {
    labels
        .iter()
        .try_fold(Monomial::one(), |acc, &l| Ok(acc.mul(&label_monomial(hf, l)?)))
}

/// Composition factors of `L(m1) (x) L(m2)`, keyed by the sorted prime
/// factorization of each factor (the trivial module is the empty list).
pub fn decompose_tensor(
    hf: &HeightFunction,
    m1: &Monomial,
    m2: &Monomial,
) -> Result<BTreeMap<Vec<PrimeLabel>, BigInt>, SimplicityError> {
    let chi = &qchar_simple(hf, m1)?.value * &qchar_simple(hf, m2)?.value;
    decompose_character(hf, chi)
}

/// Peels off simple characters from `chi` starting at maximal dominant
/// monomials until nothing is left.
pub fn decompose_character(
    hf: &HeightFunction,
    mut chi: LaurentPoly,
) -> Result<BTreeMap<Vec<PrimeLabel>, BigInt>, SimplicityError> {
    let mut out: BTreeMap<Vec<PrimeLabel>, BigInt> = BTreeMap::new();
    let budget = 10 * chi.num_terms() + 10;
    for _ in 0..budget {
        if chi.is_zero() {
            return Ok(out);
        }
        let dominant = dominant_monomials(&chi);
        // d is maximal if no other d' lies above it, i.e. d = d' * (t-monomial).
        let top = dominant
            .keys()
            .find(|d| {
                !dominant
                    .keys()
                    .any(|other| other != *d && hf.to_t_monomial(&d.div(other)).is_some())
            })
            .ok_or(SimplicityError::NonTermination)?
            .clone();
        let coefficient = dominant[&top].clone();
        if !coefficient.is_positive() {
            return Err(SimplicityError::NegativeMultiplicity { monomial: top.to_string(), coefficient });
        }
        let simple = qchar_simple(hf, &top)?;
        chi -= &(&simple.value * &LaurentPoly::constant(coefficient.clone()));
        let factors = factorize_simple(hf, &top, false)?;
        *out.entry(factors).or_insert_with(BigInt::zero) += coefficient;
    }
    Err(SimplicityError::NonTermination)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> PrimeLabel {
        s.parse().unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(crossing_pair_a(0, 1, 1, 2));
        assert!(!crossing_pair_a(1, 1, 2, 2));
        assert!(!crossing_pair_a(2, 3, 2, 3));
    }

    #[test]
    fn d4_verdicts() {
        let hf = HeightFunction::type_d(4);
        let v = simple_pair(&hf, label("L(0,1)+"), label("L(0,2)+"));
        assert_eq!(v, SimplicityVerdict { simple: true, case: CaseTag::D('c') });
        let v = simple_pair(&hf, label("L(3,1)"), label("L(0,1)+"));
        assert_eq!(v, SimplicityVerdict { simple: true, case: CaseTag::D('e') });
        let v = simple_pair(&hf, label("L(1,0)"), label("L(2,1)"));
        assert_eq!(v, SimplicityVerdict { simple: false, case: CaseTag::D('a') });
        let v = simple_pair(&hf, label("L(2,2)"), label("L(0,1)+"));
        assert_eq!(v, SimplicityVerdict { simple: true, case: CaseTag::Frozen });
        let v = simple_pair(&hf, label("L(5,5)"), label("L(0,1)+"));
        assert_eq!(v.case, CaseTag::Trivial);
    }

    #[test]
    fn symmetric_verdicts() {
        for hf in [HeightFunction::type_a(4), HeightFunction::type_d(4), HeightFunction::type_d(5)] {
            let fam = prime_family(&hf);
            for &p in &fam {
                assert!(simple_pair(&hf, p, p).simple, "{p} squared");
                for &q in &fam {
                    assert_eq!(simple_pair(&hf, p, q), simple_pair(&hf, q, p), "{p} {q}");
                }
            }
        }
    }

    #[test]
    fn factorizations() {
        let a2 = HeightFunction::type_a(2);
        let m: Monomial = "Y[1,1]*Y[2,2]*Y[2,4]".parse().unwrap();
        assert_eq!(factorize_simple(&a2, &m, true).unwrap(), vec![label("L(1,3)"), label("L(2,2)")]);
        let d4 = HeightFunction::type_d(4);
        let m: Monomial = "Y[3,0]*Y[4,0]*Y[1,4]*Y[2,3]".parse().unwrap();
        assert_eq!(factorize_simple(&d4, &m, true).unwrap(), vec![label("L(1,2)+")]);
        assert_eq!(factorize_simple(&d4, &Monomial::one(), true).unwrap(), vec![]);
        let bad: Monomial = "Y[1,1]^-1".parse().unwrap();
        assert!(matches!(factorize_simple(&a2, &bad, false), Err(SimplicityError::NotDominant(_))));
        let out: Monomial = "Y[1,5]".parse().unwrap();
        assert!(matches!(factorize_simple(&a2, &out, false), Err(SimplicityError::NotInWindow(_))));
    }

    #[test]
    fn tensor_with_two_factors() {
        let hf = HeightFunction::type_a(2);
        let m1 = label_monomial(&hf, label("L(0,1)")).unwrap();
        let m2 = label_monomial(&hf, label("L(1,2)")).unwrap();
        let dec = decompose_tensor(&hf, &m1, &m2).unwrap();
        let want: BTreeMap<Vec<PrimeLabel>, BigInt> = [
            (vec![label("L(0,2)"), label("L(1,1)")], 1.into()),
            (vec![label("L(2,2)")], 1.into()),
        ]
        .into_iter()
        .collect();
        assert_eq!(dec, want);
    }

    #[test]
    fn simple_tensor_is_one_factor() {
        let hf = HeightFunction::type_d(4);
        let m1 = label_monomial(&hf, label("L(0,1)+")).unwrap();
        let m2 = label_monomial(&hf, label("L(0,2)+")).unwrap();
        let dec = decompose_tensor(&hf, &m1, &m2).unwrap();
        assert_eq!(dec.len(), 1);
        assert_eq!(dec.values().next().unwrap(), &BigInt::from(1));
    }
}
