//! Reproducible checks over the whole stack, grouped into a report.
//!
//! Every check is a pure function returning [`Check`] values, so the same
//! code backs the `verify` subcommand and the acceptance tests.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::cluster::{exchange_graph, f_polynomial, rename_coefficients, ExchangeGraph, Seed, DEFAULT_MAX_SEEDS};
use crate::golden;
use crate::laurent::{LaurentPoly, Monomial, Var};
use crate::model_a::{
    crossing_a, emit_ptolemy, initial_seed_a, label_graph_a, segment_to_prime_a, triangulations_a, Segment,
};
use crate::model_d::{
    all_orbits_d, cartan_d, catalog_name_d, coxeter_h, coxeter_weight, flip_partner_d, frozen_primes_d,
    initial_seed_d, initial_triangulation_d, label_graph_d, noncrossing_d, orbit_to_prime_d, orbit_to_root,
    orbit_to_weight, sym_triangulations_d, weight_label_root,
};
use crate::qchar::{
    is_frozen, label_monomial, prime_family, renormalize_and_tsub, renormalized_t, trunc_qchar, DynkinType,
    HeightFunction, PrimeLabel,
};
use crate::simplicity::{decompose_tensor, factorize_simple, labels_monomial, simple_pair, simple_product, CaseTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

impl Check {
    pub fn pass(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Pass, details: details.into() }
    }

    pub fn fail(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Fail, details: details.into() }
    }

    pub fn skipped(name: impl Into<String>, details: impl Into<String>) -> Self {
        Check { name: name.into(), status: Status::Skipped, details: details.into() }
    }

    fn from_result(name: impl Into<String>, r: Result<String, String>) -> Self {
        match r {
            Ok(d) => Check::pass(name, d),
            Err(d) => Check::fail(name, d),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(checks: Vec<Check>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        VerificationReport { checks, summary }
    }

    pub fn ok(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            0
        } else {
            1
        }
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// Seed with frozen rows from the geometric model.
pub fn initial_seed(hf: &HeightFunction) -> Seed {
    match hf.kind() {
        DynkinType::A => initial_seed_a(hf.rank()),
        DynkinType::D => initial_seed_d(hf.rank()),
    }
}

/// An exchange graph whose variables carry their model names and labels.
pub struct LabeledGraph {
    pub graph: ExchangeGraph,
    pub names: Vec<String>,
    pub primes: Vec<PrimeLabel>,
    /// Noncrossing relation of the model objects, by variable id.
    pub noncrossing: Vec<Vec<bool>>,
}

/// Explores from `seed` and labels variables through flips of the model.
///
/// `seed` must have the principal part of the model's initial seed up to a
/// global sign.
pub fn labeled_graph(hf: &HeightFunction, seed: &Seed) -> Result<LabeledGraph, String> {
    let graph = exchange_graph(seed, DEFAULT_MAX_SEEDS).map_err(err)?;
    graph.require_complete().map_err(err)?;
    let n = hf.rank();
    let (names, primes, noncrossing) = match hf.kind() {
        DynkinType::A => {
            let segs: Vec<Segment> = label_graph_a(n, &graph).map_err(err)?;
            let nc = segs.iter().map(|&s| segs.iter().map(|&t| !crossing_a(s, t)).collect()).collect();
            (
                segs.iter().map(Segment::to_string).collect(),
                segs.iter().map(|&s| segment_to_prime_a(n, s)).collect(),
                nc,
            )
        }
        DynkinType::D => {
            let orbits = label_graph_d(n, &graph).map_err(err)?;
            let nc = orbits.iter().map(|s| orbits.iter().map(|t| noncrossing_d(s, t)).collect()).collect();
            (
                orbits.iter().map(catalog_name_d).collect(),
                orbits.iter().map(orbit_to_prime_d).collect(),
                nc,
            )
        }
    };
    Ok(LabeledGraph { graph, names, primes, noncrossing })
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn catalan(m: u64) -> u64 {
    binomial(2 * m, m) / (m + 1)
}

/// Expected `(variables, clusters)` of the finite type cluster algebra.
pub fn expected_counts(kind: DynkinType, n: u32) -> (usize, usize) {
    let n = n as u64;
    match kind {
        DynkinType::A => ((n * (n + 3) / 2) as usize, catalan(n + 1) as usize),
        DynkinType::D => ((n * n) as usize, ((3 * n - 2) * binomial(2 * n - 2, n - 1) / n) as usize),
    }
}

/// Variables and clusters of the exchange graph against the closed formulas
/// and against direct enumeration of the model's (symmetric) triangulations.
pub fn check_counts(hf: &HeightFunction) -> Check {
    let name = format!("counts {}{}", hf.kind(), hf.rank());
    Check::from_result(
        name,
        (|| {
            let graph = exchange_graph(&initial_seed(hf), DEFAULT_MAX_SEEDS).map_err(err)?;
            graph.require_complete().map_err(err)?;
            let (v, c) = (graph.num_variables(), graph.num_clusters());
            let (ev, ec) = expected_counts(hf.kind(), hf.rank());
            let model = match hf.kind() {
                DynkinType::A => triangulations_a(hf.rank()).len(),
                DynkinType::D => sym_triangulations_d(hf.rank()).len(),
            };
            let msg = format!("{v} variables, {c} clusters, {model} triangulations");
            if (v, c) == (ev, ec) && model == ec {
                Ok(msg)
            } else {
                Err(format!("{msg}; expected {ev} variables, {ec} clusters"))
            }
        })(),
    )
}

/// F-polynomials with principal coefficients on the height-function quiver
/// against the renormalized characters of the model labels.
pub fn check_f_polynomials(hf: &HeightFunction) -> Check {
    let name = format!("F-polynomials {}{}", hf.kind(), hf.rank());
    Check::from_result(
        name,
        (|| {
            let seed = Seed::principal(&hf.quiver_matrix()).map_err(err)?;
            let lg = labeled_graph(hf, &seed)?;
            let mut bad = Vec::new();
            for (var, (label, name)) in lg.graph.variables.iter().zip(lg.primes.iter().zip(&lg.names)) {
                let f = rename_coefficients(&f_polynomial(&var.value).map_err(err)?, Var::T);
                let chi = renormalized_t(hf, *label).map_err(err)?;
                if f != chi {
                    bad.push(format!("{name} {label}: F = {f}, character = {chi}"));
                }
            }
            if bad.is_empty() {
                Ok(format!("{} variables match", lg.graph.num_variables()))
            } else {
                Err(bad.join("; "))
            }
        })(),
    )
}

fn nontrivial(labels: impl IntoIterator<Item = PrimeLabel>) -> Vec<PrimeLabel> {
    let mut v: Vec<PrimeLabel> = labels.into_iter().filter(|l| *l != PrimeLabel::Unit).collect();
    v.sort();
    v
}

/// Character identity `chi(i,k) chi(j,l) = chi(i,l) chi(j,k) + chi(i,j-1)
/// chi(k+1,l)` for all `0 <= i < j <= k < l <= n+1`, each matched with the
/// Ptolemy exchange of the quadrilateral `i < j < k+1 < l+1`.
pub fn check_ident(n: u32) -> Check {
    let name = format!("character identity and Ptolemy A{n}");
    Check::from_result(
        name,
        (|| {
            let hf = HeightFunction::type_a(n);
            let label = |a: u32, b: u32| segment_to_prime_a(n, Segment::new(a, b + 1));
            let mut cache: BTreeMap<PrimeLabel, LaurentPoly> = BTreeMap::new();
            let mut chi = |l: PrimeLabel| -> Result<LaurentPoly, String> {
                if let Some(c) = cache.get(&l) {
                    return Ok(c.clone());
                }
                let c = if l == PrimeLabel::Unit { LaurentPoly::one() } else { trunc_qchar(&hf, l).map_err(err)?.value };
                cache.insert(l, c.clone());
                Ok(c)
            };
            let mut count = 0;
            let mut bad = Vec::new();
            for i in 0..=n + 1 {
                for j in i + 1..=n + 1 {
                    for k in j..=n + 1 {
                        for l in k + 1..=n + 1 {
                            let lhs = [label(i, k), label(j, l)];
                            let rhs = [[label(i, l), label(j, k)], [label(i, j - 1), label(k + 1, l)]];
                            let left = &chi(lhs[0])? * &chi(lhs[1])?;
                            let right = &(&chi(rhs[0][0])? * &chi(rhs[0][1])?) + &(&chi(rhs[1][0])? * &chi(rhs[1][1])?);
                            if left != right {
                                bad.push(format!("character identity fails at ({i},{j},{k},{l})"));
                            }
                            let p = emit_ptolemy(n, i, j, k + 1, l + 1).map_err(err)?;
                            let to_labels = |segs: &[Segment; 2]| nontrivial(segs.iter().map(|&s| segment_to_prime_a(n, s)));
                            let emitted_rhs: BTreeSet<Vec<PrimeLabel>> = p.rhs.iter().map(to_labels).collect();
                            let ident_rhs: BTreeSet<Vec<PrimeLabel>> = rhs.iter().map(|r| nontrivial(*r)).collect();
                            if to_labels(&p.lhs) != nontrivial(lhs) || emitted_rhs != ident_rhs {
                                bad.push(format!("Ptolemy exchange differs at ({i},{j},{k},{l})"));
                            }
                            count += 1;
                        }
                    }
                }
            }
            if bad.is_empty() {
                Ok(format!("{count} quadruples"))
            } else {
                Err(bad.join("; "))
            }
        })(),
    )
}

/// `simple_pair` against noncrossing in the model and against sharing a
/// cluster, over all pairs of variables and frozen labels.
pub fn check_compatibility(hf: &HeightFunction) -> Check {
    let name = format!("compatibility {}{}", hf.kind(), hf.rank());
    Check::from_result(
        name,
        (|| {
            let lg = labeled_graph(hf, &initial_seed(hf))?;
            let table = lg.graph.compatibility_table().map_err(err)?;
            let v = lg.primes.len();
            let mut bad = Vec::new();
            let mut pairs = 0;
            for a in 0..v {
                for b in a..v {
                    let s = simple_pair(hf, lg.primes[a], lg.primes[b]).simple;
                    let (nc, cp) = (lg.noncrossing[a][b], table[a][b]);
                    if s != nc || nc != cp {
                        bad.push(format!(
                            "{} {}: simple {s}, noncrossing {nc}, compatible {cp}",
                            lg.primes[a], lg.primes[b]
                        ));
                    }
                    pairs += 1;
                }
            }
            let frozen: Vec<PrimeLabel> = prime_family(hf).into_iter().filter(|&l| is_frozen(hf, l)).collect();
            for f in &frozen {
                for p in lg.primes.iter().chain(&frozen) {
                    if !simple_pair(hf, *f, *p).simple {
                        bad.push(format!("frozen {f} with {p} not simple"));
                    }
                    pairs += 1;
                }
            }
            if bad.is_empty() {
                Ok(format!("{pairs} pairs agree"))
            } else {
                Err(bad.join("; "))
            }
        })(),
    )
}

/// One check per row of the bundled D4 character table.
pub fn check_character_table() -> Vec<Check> {
    let hf = HeightFunction::type_d(4);
    golden::d4_characters()
        .into_iter()
        .map(|row| {
            let name = format!("D4 character {} {}", row.provenance, row.written);
            Check::from_result(
                name,
                (|| {
                    let label = orbit_to_prime_d(&row.orbit);
                    if label != row.label {
                        return Err(format!("orbit labeled {label}, table has {}", row.label));
                    }
                    let highest = label_monomial(&hf, label).map_err(err)?;
                    if highest != row.highest {
                        return Err(format!("highest monomial {highest}, table has {}", row.highest));
                    }
                    let chi = trunc_qchar(&hf, label).map_err(err)?;
                    let t = renormalize_and_tsub(&hf, &chi.value).map_err(err)?;
                    if t != row.tchar {
                        return Err(format!("computed {t}, table has {}", row.tchar));
                    }
                    Ok(format!("{label}: {t}"))
                })(),
            )
        })
        .collect()
}

/// One check per listed D4 compatible pair, plus one check that every other
/// pair of distinct nonfrozen D4 labels is not simple.
pub fn check_pair_table() -> Vec<Check> {
    let hf = HeightFunction::type_d(4);
    let rows = golden::d4_compatible_pairs();
    let mut listed = BTreeSet::new();
    let mut out: Vec<Check> = rows
        .iter()
        .map(|row| {
            let (p, q) = (orbit_to_prime_d(&row.first), orbit_to_prime_d(&row.second));
            listed.insert((p.min(q), p.max(q)));
            let name = format!("D4 pair {} {} {}", row.provenance, row.written.0, row.written.1);
            let v = simple_pair(&hf, p, q);
            let mut note = String::new();
            for (written, orbit) in [(&row.written.0, &row.first), (&row.written.1, &row.second)] {
                let catalog = catalog_name_d(orbit);
                if *written != catalog {
                    note = format!("; note: {written} is the orbit listed as {catalog}");
                }
            }
            if v.simple && v.case == CaseTag::D(row.case) {
                Check::pass(name, format!("{p} {q}: simple, case {}{note}", v.case))
            } else {
                Check::fail(name, format!("{p} {q}: simple {}, case {}, table case {}{note}", v.simple, v.case, row.case))
            }
        })
        .collect();
    let labels: Vec<PrimeLabel> = all_orbits_d(4).iter().map(orbit_to_prime_d).collect();
    let mut bad = Vec::new();
    let mut unlisted = 0;
    for (a, &p) in labels.iter().enumerate() {
        for &q in &labels[a + 1..] {
            if listed.contains(&(p.min(q), p.max(q))) {
                continue;
            }
            unlisted += 1;
            if simple_pair(&hf, p, q).simple {
                bad.push(format!("{p} {q}"));
            }
        }
    }
    out.push(Check::from_result(
        "D4 unlisted pairs are not simple",
        if bad.is_empty() {
            Ok(format!("{unlisted} unlisted pairs"))
        } else {
            Err(format!("simple but unlisted: {}", bad.join(", ")))
        },
    ));
    out
}

/// `C a` in fundamental-weight coordinates for `a` in simple-root
/// coordinates.
fn root_to_weight(c: &[Vec<i64>], a: &[i64]) -> Vec<i64> {
    c.iter().map(|row| row.iter().zip(a).map(|(x, y)| x * y).sum()).collect()
}

fn beta_holds(n: u32, i: u32, m: u32, root: &[i64]) -> Result<bool, String> {
    let prev = coxeter_weight(n, i, m - 1).map_err(err)?;
    let cur = coxeter_weight(n, i, m).map_err(err)?;
    let diff: Vec<i64> = prev.iter().zip(&cur).map(|(a, b)| a - b).collect();
    Ok(root_to_weight(&cartan_d(n), root) == diff)
}

/// One check per row of the bundled D4 root and weight table.
pub fn check_labeling_table() -> Vec<Check> {
    golden::d4_root_weight_labels()
        .into_iter()
        .map(|row| {
            let name = format!("D4 labeling {} {}", row.provenance, catalog_name_d(&row.orbit));
            Check::from_result(
                name,
                (|| {
                    let root = orbit_to_root(&row.orbit);
                    if root != row.root {
                        return Err(format!("root {root:?}, table has {:?}", row.root));
                    }
                    let w = weight_label_root(4, row.node, row.power).map_err(err)?;
                    if w != row.root {
                        return Err(format!("weight c^{} w_{} gives root {w:?}", row.power, row.node));
                    }
                    if orbit_to_weight(&row.orbit) != Some((row.node, row.power)) {
                        return Err(format!("orbit maps to weight {:?}", orbit_to_weight(&row.orbit)));
                    }
                    if row.power > 0 && !beta_holds(4, row.node, row.power, &row.root)? {
                        return Err("root differs from c^(m-1) w - c^m w".into());
                    }
                    Ok(format!("{root:?} = c^{} w_{}", row.power, row.node))
                })(),
            )
        })
        .collect()
}

/// Orbits, almost positive roots and Coxeter weights are in bijection for
/// all orbits of `D_n`, with the root of every positive weight given by
/// `c^(m-1) w_i - c^m w_i`.
pub fn check_coxeter_labels(n: u32) -> Check {
    let name = format!("Coxeter labels D{n}");
    Check::from_result(
        name,
        (|| {
            let orbits = all_orbits_d(n);
            let mut roots = BTreeSet::new();
            let mut weights = BTreeSet::new();
            for o in &orbits {
                let root = orbit_to_root(o);
                let (i, m) = orbit_to_weight(o).ok_or_else(|| format!("{o} has no weight"))?;
                if m > 0 && !beta_holds(n, i, m, &root)? {
                    return Err(format!("{o}: root differs from c^(m-1) w - c^m w"));
                }
                if m == 0 && root.iter().sum::<i64>() != -1 {
                    return Err(format!("{o}: weight w_{i} but root {root:?}"));
                }
                roots.insert(root);
                weights.insert((i, m));
            }
            let expected: usize = (1..=n).map(|i| coxeter_h(n, i) as usize + 1).sum();
            if roots.len() != orbits.len() || weights.len() != orbits.len() || expected != orbits.len() {
                return Err(format!(
                    "{} orbits, {} roots, {} weights, {expected} weights c^m w_i",
                    orbits.len(),
                    roots.len(),
                    weights.len()
                ));
            }
            Ok(format!("{} orbits", orbits.len()))
        })(),
    )
}

/// All dominant window monomials with exponents at most `max_exp`.
pub fn window_monomials(hf: &HeightFunction, max_exp: i64) -> Vec<Monomial> {
    let window: Vec<(u32, i32)> = hf.window().into_iter().collect();
    let mut out = vec![Monomial::one()];
    for &(i, p) in &window {
        let y = hf.y(i, p);
        out = out.into_iter().flat_map(|m| {
            let y = y.clone();
            (0..=max_exp).map(move |e| m.mul(&y.pow(e)))
        }).collect();
    }
    out.sort();
    out
}

/// Every window monomial with exponents at most `max_exp` has exactly one
/// factorization into pairwise simple primes.
pub fn check_factorization(n: u32, max_exp: i64) -> Check {
    let name = format!("unique factorization A{n} exponents <= {max_exp}");
    let hf = HeightFunction::type_a(n);
    let monomials = window_monomials(&hf, max_exp);
    let bad: Vec<String> = monomials
        .par_iter()
        .filter_map(|m| match factorize_simple(&hf, m, true) {
            Ok(f) => {
                let ok = labels_monomial(&hf, &f).is_ok_and(|p| p == *m) && simple_product(&hf, &f);
                (!ok).then(|| format!("{m}: invalid factorization"))
            }
            Err(e) => Some(format!("{m}: {e}")),
        })
        .collect();
    if bad.is_empty() {
        Check::pass(name, format!("{} monomials", monomials.len()))
    } else {
        Check::fail(name, bad.join("; "))
    }
}

/// The factorization of `m^2` doubles the factorization of `m`.
pub fn check_realness(n: u32) -> Check {
    let name = format!("realness A{n}");
    let hf = HeightFunction::type_a(n);
    let monomials = window_monomials(&hf, 1);
    let bad: Vec<String> = monomials
        .par_iter()
        .filter_map(|m| {
            let single = factorize_simple(&hf, m, false);
            let square = factorize_simple(&hf, &m.pow(2), false);
            match (single, square) {
                (Ok(s), Ok(q)) => {
                    let mut doubled: Vec<PrimeLabel> = s.iter().chain(&s).copied().collect();
                    doubled.sort();
                    (doubled != q).then(|| format!("{m}: square factors as {q:?}"))
                }
                (Err(e), _) | (_, Err(e)) => Some(format!("{m}: {e}")),
            }
        })
        .collect();
    if bad.is_empty() {
        Check::pass(name, format!("{} monomials", monomials.len()))
    } else {
        Check::fail(name, bad.join("; "))
    }
}

fn multisets_up_to_three(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..n {
        out.push(vec![a]);
        for b in a..n {
            out.push(vec![a, b]);
            for c in b..n {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

/// Products of pairwise simple multisets of at most three primes factor
/// back into the same multiset.
pub fn check_round_trip(n: u32) -> Check {
    let name = format!("factorization round trip A{n}");
    let hf = HeightFunction::type_a(n);
    let primes = prime_family(&hf);
    let sets: Vec<Vec<PrimeLabel>> = multisets_up_to_three(primes.len())
        .into_iter()
        .map(|s| s.into_iter().map(|i| primes[i]).collect::<Vec<_>>())
        .filter(|s| simple_product(&hf, s))
        .collect();
    let bad: Vec<String> = sets
        .par_iter()
        .filter_map(|s| {
            let m = labels_monomial(&hf, s).expect("family labels are valid");
            match factorize_simple(&hf, &m, true) {
                Ok(f) if f == *s => None,
                Ok(f) => Some(format!("{s:?} factors as {f:?}")),
                Err(e) => Some(format!("{s:?}: {e}")),
            }
        })
        .collect();
    if bad.is_empty() {
        Check::pass(name, format!("{} multisets", sets.len()))
    } else {
        Check::fail(name, bad.join("; "))
    }
}

/// Every cluster variable expanded in every cluster has positive
/// coefficients.
pub fn check_positivity(hf: &HeightFunction) -> Check {
    let name = format!("positivity {}{}", hf.kind(), hf.rank());
    Check::from_result(
        name,
        (|| {
            let s0 = initial_seed(hf);
            let graph = exchange_graph(&s0, DEFAULT_MAX_SEEDS).map_err(err)?;
            graph.require_complete().map_err(err)?;
            let results: Vec<Result<usize, String>> = graph
                .seeds
                .par_iter()
                .map(|rec| {
                    let s = s0.mutate_path(&rec.path).map_err(err)?;
                    let g = exchange_graph(&Seed::initial(s.matrix().clone()), DEFAULT_MAX_SEEDS).map_err(err)?;
                    g.require_complete().map_err(err)?;
                    match g.variables.iter().find(|v| !v.value.all_coefficients_positive()) {
                        Some(v) => Err(format!("seed {:?}: {}", rec.path, v.value)),
                        None => Ok(g.num_variables()),
                    }
                })
                .collect();
            let mut total = 0;
            for r in results {
                total += r?;
            }
            Ok(format!("{total} expansions over {} clusters", graph.num_clusters()))
        })(),
    )
}

/// Distinct cluster monomials of degree at most 2 have distinct expansions.
pub fn check_independence(hf: &HeightFunction) -> Check {
    let name = format!("independence {}{}", hf.kind(), hf.rank());
    Check::from_result(
        name,
        (|| {
            let graph = exchange_graph(&initial_seed(hf), DEFAULT_MAX_SEEDS).map_err(err)?;
            graph.require_complete().map_err(err)?;
            let mut monomials: BTreeSet<Vec<usize>> = BTreeSet::new();
            monomials.insert(Vec::new());
            for c in &graph.clusters {
                for (x, &a) in c.iter().enumerate() {
                    monomials.insert(vec![a]);
                    for &b in &c[x..] {
                        monomials.insert(vec![a, b]);
                    }
                }
            }
            let mut seen: HashMap<LaurentPoly, &Vec<usize>> = HashMap::new();
            for m in &monomials {
                let value = m.iter().fold(LaurentPoly::one(), |acc, &i| &acc * &graph.variables[i].value);
                if let Some(prev) = seen.insert(value, m) {
                    return Err(format!("cluster monomials {prev:?} and {m:?} coincide"));
                }
            }
            Ok(format!("{} cluster monomials", monomials.len()))
        })(),
    )
}

fn exchange_labels(
    factors: &[(usize, i64)],
    mutable: &[crate::model_d::ThetaOrbit],
    frozen: &[PrimeLabel],
) -> Vec<PrimeLabel> {
    let mut out = Vec::new();
    for &(row, e) in factors {
        let label = if row < mutable.len() { orbit_to_prime_d(&mutable[row]) } else { frozen[row - mutable.len()] };
        out.extend(std::iter::repeat_n(label, e as usize));
    }
    nontrivial(out)
}

/// Along `mu_n ... mu_1` from the initial `D_n` seed, the exchange at step
/// `i` replaces `L(n+1,i)` by `L(i,0)` and its two monomials are the
/// composition factors of `L(n+1,i) (x) L(i,0)`.
pub fn check_t_system(n: u32) -> Check {
    let name = format!("T-system D{n}");
    Check::from_result(
        name,
        (|| {
            let hf = HeightFunction::type_d(n);
            let frozen = frozen_primes_d(n);
            let mut seed = initial_seed_d(n);
            let mut state = initial_triangulation_d(n);
            for i in 1..=n {
                let k = (i - 1) as usize;
                let old = orbit_to_prime_d(&state[k]);
                if old != PrimeLabel::Plain(n + 1, i) {
                    return Err(format!("step {i}: mutating {old}"));
                }
                let new_orbit = flip_partner_d(n, &state, k).map_err(err)?;
                let new = orbit_to_prime_d(&new_orbit);
                if new != PrimeLabel::Plain(i, 0) {
                    return Err(format!("step {i}: new variable {new}"));
                }
                let (pos, neg) = seed.exchange_monomials(k).map_err(err)?;
                let mut exchange: BTreeMap<Vec<PrimeLabel>, BigInt> = BTreeMap::new();
                for side in [pos, neg] {
                    *exchange.entry(exchange_labels(&side, &state, &frozen)).or_default() += 1;
                }
                let m1 = label_monomial(&hf, old).map_err(err)?;
                let m2 = label_monomial(&hf, new).map_err(err)?;
                let factors = decompose_tensor(&hf, &m1, &m2).map_err(err)?;
                if factors != exchange {
                    return Err(format!("step {i}: factors {factors:?}, exchange {exchange:?}"));
                }
                seed = seed.mutate(k).map_err(err)?;
                state[k] = new_orbit;
            }
            Ok(format!("{n} steps"))
        })(),
    )
}

type Job = Box<dyn Fn() -> Vec<Check> + Send + Sync>;

fn one<F: Fn() -> Check + Send + Sync + 'static>(f: F) -> Job {
    Box::new(move || vec![f()])
}

/// Checks that apply to one Dynkin type and rank, in report order.
fn jobs(kind: DynkinType, n: u32) -> Vec<Job> {
    let hf = match HeightFunction::standard(kind, n) {
        Ok(hf) => hf,
        Err(e) => return vec![Box::new(move || vec![Check::fail("height function", e.to_string())])],
    };
    let mut out: Vec<Job> = Vec::new();
    {
        let hf = hf.clone();
        out.push(one(move || check_counts(&hf)));
    }
    {
        let hf = hf.clone();
        out.push(one(move || check_f_polynomials(&hf)));
    }
    {
        let hf = hf.clone();
        out.push(one(move || check_compatibility(&hf)));
    }
    match kind {
        DynkinType::A => {
            out.push(one(move || check_ident(n)));
            if n <= 4 {
                out.push(one(move || check_factorization(n, 2)));
                out.push(one(move || check_realness(n)));
                out.push(one(move || check_round_trip(n)));
            } else {
                out.push(one(move || Check::skipped(format!("factorization A{n}"), "runs for rank <= 4")));
            }
        }
        DynkinType::D => {
            out.push(one(move || check_coxeter_labels(n)));
            out.push(one(move || check_t_system(n)));
            if n == 4 {
                out.push(Box::new(check_character_table));
                out.push(Box::new(check_pair_table));
                out.push(Box::new(check_labeling_table));
            }
        }
    }
    let desk = match kind {
        DynkinType::A => n <= 5,
        DynkinType::D => n == 4,
    };
    if desk {
        let h1 = hf.clone();
        out.push(one(move || check_positivity(&h1)));
        out.push(one(move || check_independence(&hf)));
    } else {
        out.push(one(move || Check::skipped(format!("positivity and independence {kind}{n}"), "desk scale only")));
    }
    out
}

/// Runs every check for one type and rank on `threads` worker threads
/// (0 picks the rayon default). The report order does not depend on the
/// thread count.
pub fn verify(kind: DynkinType, n: u32, threads: usize) -> VerificationReport {
    let jobs = jobs(kind, n);
    let run = || jobs.par_iter().map(|j| j()).collect::<Vec<_>>();
    let results = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool.install(run),
        Err(_) => run(),
    };
    VerificationReport::new(results.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_counts() {
        assert_eq!(catalan(4), 14);
        assert_eq!(expected_counts(DynkinType::A, 3), (9, 14));
        assert_eq!(expected_counts(DynkinType::D, 4), (16, 50));
        assert_eq!(expected_counts(DynkinType::D, 5), (25, 182));
    }

    #[test]
    fn window_enumeration_size() {
        let hf = HeightFunction::type_a(2);
        assert_eq!(window_monomials(&hf, 1).len(), 16);
        assert_eq!(window_monomials(&hf, 2).len(), 81);
    }

    #[test]
    fn report_exit_code() {
        let r = VerificationReport::new(vec![Check::pass("a", ""), Check::skipped("b", "")]);
        assert_eq!((r.exit_code(), r.summary.skipped), (0, 1));
        let r = VerificationReport::new(vec![Check::fail("c", "")]);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn small_type_a_report_passes() {
        let r = verify(DynkinType::A, 2, 2);
        assert!(r.ok(), "{:#?}", r.checks);
    }
}
