//! Walk inequalities: formal sums `Σ c·w_{α_1}···w_{α_k} >= 0`, the
//! compilation from polynomials, exact evaluation on graphs, and
//! counterexample searches over corpora and parametric graph families.
//!
//! Everything is stored as "expression >= 0" so that certificates,
//! builtin families, and user input share one canonical form; the pure
//! binomial inequalities of the literature are the two-term special case.

use crate::graph::{
    self, labeled_graph_count, labeled_graphs_range, make_named_graph, Graph, GraphFamily,
    DEFAULT_MAX_ENUM_N,
};
use crate::poly::{Permutation, Polynomial};
use crate::ratio::{parse_rational, rational_to_string};
use crate::walks::WalkTable;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

/// A formal inequality `Σ c·w_{α_1}···w_{α_k} >= 0`, claimed for all
/// graphs. Each term pairs a rational coefficient with a multiset of walk
/// indices; the canonical form sorts every multiset, orders the terms, and
/// merges duplicates. The zero expression is kept as the single term
/// `0·w_0`.
#[derive(Clone, PartialEq, Eq)]
pub struct WalkInequality {
    terms: Vec<(BigRational, Vec<u32>)>,
}

impl WalkInequality {
    pub fn new(terms: impl IntoIterator<Item = (BigRational, Vec<u32>)>) -> Result<Self> {
        let mut merged: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        let mut any = false;
        for (coef, mut indices) in terms {
            any = true;
            indices.sort_unstable();
            let slot = merged.entry(indices).or_insert_with(BigRational::zero);
            *slot += coef;
        }
        if !any {
            return Err(Error::InvalidArgument("inequality needs at least one term".into()));
        }
        merged.retain(|_, c| !c.is_zero());
        let terms: Vec<(BigRational, Vec<u32>)> =
            merged.into_iter().map(|(i, c)| (c, i)).collect();
        if terms.is_empty() {
            // everything cancelled: the trivial inequality 0 >= 0
            return Ok(WalkInequality { terms: vec![(BigRational::zero(), vec![0])] });
        }
        Ok(WalkInequality { terms })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BigRational, &[u32])> {
        self.terms.iter().map(|(c, i)| (c, i.as_slice()))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Largest walk index appearing; drives the walk-table length needed.
    pub fn max_index(&self) -> u32 {
        self.terms
            .iter()
            .flat_map(|(_, i)| i.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Exact value of `Σ c·Π w`; the inequality holds on the graph iff
    /// this is `>= 0`.
    pub fn evaluate(&self, table: &WalkTable) -> Result<BigRational> {
        let mut total = BigRational::zero();
        for (coef, indices) in &self.terms {
            let mut product = BigInt::from(1);
            for &i in indices {
                product *= BigInt::from(table.get(i as usize)?.clone());
            }
            total += coef * BigRational::from(product);
        }
        Ok(total)
    }

    pub fn holds_on(&self, table: &WalkTable) -> Result<bool> {
        Ok(!self.evaluate(table)?.is_negative())
    }

    /// Exact value on a graph, computing the walk table as needed.
    pub fn evaluate_on_graph(&self, g: &Graph) -> BigRational {
        let table = g.walk_counts(self.max_index() as usize);
        self.evaluate(&table).expect("table covers max_index")
    }

    /// Scale all coefficients.
    pub fn scale(&self, factor: &BigRational) -> WalkInequality {
        WalkInequality::new(self.terms.iter().map(|(c, i)| (c * factor, i.clone())))
            .expect("nonempty terms")
    }

    /// Interpret the inequality as a polynomial: each term becomes the
    /// monomial whose exponents are the term's indices. All terms must
    /// carry the same number of factors, otherwise there is no single
    /// variable count that preserves the semantics.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        let k = self.terms[0].1.len();
        if self.terms.iter().any(|(_, i)| i.len() != k) {
            return Err(Error::InvalidArgument(
                "terms with different factor counts cannot become one polynomial".into(),
            ));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("empty index multisets".into()));
        }
        let mut p = Polynomial::zero(k);
        for (coef, indices) in &self.terms {
            p.add_term(indices.clone(), coef.clone());
        }
        Ok(p)
    }
}

impl fmt::Debug for WalkInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(c, indices)| {
                let factors: Vec<String> = indices.iter().map(|i| format!("w{i}")).collect();
                format!("{}·{}", rational_to_string(c), factors.join("·"))
            })
            .collect();
        write!(f, "{} >= 0", rendered.join(" + "))
    }
}

/// Map a polynomial to its walk inequality: the term
/// `c·x_1^{α_1}···x_k^{α_k}` becomes `c·w_{α_1}···w_{α_k}`. A zero
/// exponent contributes a `w_0` factor, preserving the k-factor structure.
/// By the symmetrization identity the result is valid on all graphs
/// whenever the symmetrization of `f` is nonnegative.
pub fn compile(f: &Polynomial) -> WalkInequality {
    if f.is_zero() {
        return WalkInequality { terms: vec![(BigRational::zero(), vec![0])] };
    }
    WalkInequality::new(
        f.terms()
            .map(|(exps, coef)| (coef.clone(), exps.to_vec())),
    )
    .expect("nonzero polynomial has terms")
}

/// Free-function form of [`WalkInequality::evaluate`].
pub fn evaluate_inequality(ineq: &WalkInequality, table: &WalkTable) -> Result<BigRational> {
    ineq.evaluate(table)
}

/// The walk-inequality families from the literature, constructed directly
/// from their index arithmetic (independent of any certificate).
#[derive(Clone, Debug)]
pub enum BuiltinInequality {
    /// `w_{2a+c}·w_{2(a+b)+c} <= w_{2a}·w_{2(a+b+c)}`
    Sandwich { a: u32, b: u32, c: u32 },
    /// `w_{2l+p}^k <= w_{2l+pk}·w_{2l}^{k-1}`
    Erdos { l: u32, p: u32, k: u32 },
    /// `w_{α_1+α_{σ(1)}}···w_{α_k+α_{σ(k)}} <= w_{2α_1}···w_{2α_k}`
    SymmetricFamily { alpha: Vec<u32>, sigma: Permutation },
    /// `w_{α_1}···w_{α_k} <= w_0^{k-1}·w_{2d}` for `|α| = 2d`
    Agm { alpha: Vec<u32> },
    /// `w_{a+b}² <= w_{2a}·w_{2b}`
    DressGutman { a: u32, b: u32 },
}

pub fn builtin_inequality(builtin: &BuiltinInequality) -> Result<WalkInequality> {
    let one = BigRational::from(BigInt::from(1));
    let neg = -one.clone();
    match builtin {
        BuiltinInequality::Sandwich { a, b, c } => WalkInequality::new([
            (one, vec![2 * a, 2 * (a + b + c)]),
            (neg, vec![2 * a + c, 2 * (a + b) + c]),
        ]),
        BuiltinInequality::Erdos { l, p, k } => {
            if *k == 0 {
                return Err(Error::InvalidArgument("erdos needs k >= 1".into()));
            }
            let mut rhs = vec![2 * l + p * k];
            rhs.extend(std::iter::repeat_n(2 * l, (*k - 1) as usize));
            let lhs = vec![2 * l + p; *k as usize];
            WalkInequality::new([(one, rhs), (neg, lhs)])
        }
        BuiltinInequality::SymmetricFamily { alpha, sigma } => {
            if sigma.len() != alpha.len() {
                return Err(Error::VariableMismatch(sigma.len(), alpha.len()));
            }
            let rhs: Vec<u32> = alpha.iter().map(|&a| 2 * a).collect();
            let lhs: Vec<u32> = alpha
                .iter()
                .enumerate()
                .map(|(i, &a)| a + alpha[sigma.apply(i)])
                .collect();
            WalkInequality::new([(one, rhs), (neg, lhs)])
        }
        BuiltinInequality::Agm { alpha } => {
            let degree: u32 = alpha.iter().sum();
            if degree % 2 == 1 || degree == 0 {
                return Err(Error::InvalidArgument(format!(
                    "agm needs |alpha| even and positive, got {degree}"
                )));
            }
            let mut rhs = vec![0u32; alpha.len() - 1];
            rhs.push(degree);
            WalkInequality::new([(one, rhs), (neg, alpha.clone())])
        }
        BuiltinInequality::DressGutman { a, b } => WalkInequality::new([
            (one, vec![2 * a, 2 * b]),
            (neg, vec![a + b, a + b]),
        ]),
    }
}

// ---------------------------------------------------------------------------
// Parametric graph families
// ---------------------------------------------------------------------------

/// Size of one family part: a constant, or the scan parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
enum SizeExpr {
    Fixed(usize),
    Parameter,
}

/// A disjoint union of named family members, e.g.
/// `union(complete:3,star:m)` where `m` is the scan parameter. Family
/// scans exist because interesting counterexamples (nine nodes and up) sit
/// beyond exhaustive reach.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    parts: Vec<(GraphFamily, SizeExpr)>,
    parameter: Option<String>,
    source: String,
}

impl FamilySpec {
    /// Parse `name:size`, `name:m`, or `union(part,part,...)`.
    pub fn parse(text: &str) -> Result<FamilySpec> {
        let trimmed = text.trim();
        let inner = match trimmed.strip_prefix("union(") {
            Some(rest) => rest
                .strip_suffix(')')
                .ok_or_else(|| Error::InvalidArgument(format!("unbalanced union in {text:?}")))?,
            None => trimmed,
        };
        let mut parts = Vec::new();
        let mut parameter: Option<String> = None;
        for chunk in inner.split(',') {
            let chunk = chunk.trim();
            let (name, size) = chunk.split_once(':').ok_or_else(|| {
                Error::InvalidArgument(format!("family part {chunk:?} is not name:size"))
            })?;
            let family = GraphFamily::parse(name.trim())?;
            let size = size.trim();
            let expr = if size.chars().all(|c| c.is_ascii_digit()) && !size.is_empty() {
                SizeExpr::Fixed(size.parse().map_err(|_| {
                    Error::InvalidArgument(format!("bad size in family part {chunk:?}"))
                })?)
            } else if size.chars().all(|c| c.is_ascii_alphabetic()) && !size.is_empty() {
                match &parameter {
                    Some(existing) if existing != size => {
                        return Err(Error::InvalidArgument(format!(
                            "multiple scan parameters {existing:?} and {size:?}"
                        )))
                    }
                    _ => parameter = Some(size.to_string()),
                }
                SizeExpr::Parameter
            } else {
                return Err(Error::InvalidArgument(format!(
                    "bad size {size:?} in family part {chunk:?}"
                )));
            };
            parts.push((family, expr));
        }
        if parts.is_empty() {
            return Err(Error::InvalidArgument("empty family spec".into()));
        }
        Ok(FamilySpec { parts, parameter, source: trimmed.to_string() })
    }

    /// Name of the scan parameter, if any part uses one.
    pub fn parameter(&self) -> Option<&str> {
        self.parameter.as_deref()
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Build the family member for one parameter value.
    pub fn instantiate(&self, value: usize) -> Result<Graph> {
        let mut graph: Option<Graph> = None;
        for (family, expr) in &self.parts {
            let size = match expr {
                SizeExpr::Fixed(s) => *s,
                SizeExpr::Parameter => value,
            };
            let part = make_named_graph(*family, size)?;
            graph = Some(match graph {
                None => part,
                Some(g) => g.disjoint_union(&part),
            });
        }
        Ok(graph.expect("parts are nonempty"))
    }
}

// ---------------------------------------------------------------------------
// Counterexample search
// ---------------------------------------------------------------------------

/// Corpus to scan for violations.
#[derive(Clone, Debug)]
pub enum Corpus {
    /// Every labeled simple graph on `n` nodes.
    Exhaustive { n: usize },
    /// A parametric family over `lo..=hi`.
    FamilyScan { family: FamilySpec, lo: usize, hi: usize },
    /// An explicit list.
    Graphs { description: String, graphs: Vec<Graph> },
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Stop scanning once a violation is found.
    pub stop_at_first: bool,
    /// Restrict evaluation to regular graphs.
    pub regular_only: bool,
    /// Drop violations sharing a (degree sequence, walk vector) profile.
    pub dedup_violations: bool,
    /// Worker threads for exhaustive scans; 0 or 1 runs sequentially, and
    /// single-partition runs have a fixed deterministic iteration order.
    pub jobs: usize,
    /// Cap on exhaustive `n`; raising past the default is an explicit
    /// opt-in (2^28 graphs at n = 8).
    pub max_enum_n: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            stop_at_first: false,
            regular_only: false,
            dedup_violations: false,
            jobs: 1,
            max_enum_n: DEFAULT_MAX_ENUM_N,
        }
    }
}

/// One graph violating an inequality, with the exact negative value.
#[derive(Clone, Debug)]
pub struct Violation {
    /// graph6 encoding (edge-list text for graphs beyond 62 nodes).
    pub graph6: String,
    pub node_count: usize,
    pub value: BigRational,
    /// Parameter value for family scans.
    pub family_param: Option<usize>,
}

/// Outcome of a corpus scan. Every reported violation has been re-checked
/// against a freshly recomputed walk table before being recorded.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub inequality: WalkInequality,
    pub corpus: String,
    pub tested: u64,
    pub violations: Vec<Violation>,
    pub elapsed: Duration,
}

impl SearchReport {
    pub fn found_violation(&self) -> bool {
        !self.violations.is_empty()
    }
}

pub fn search_counterexamples(
    ineq: &WalkInequality,
    corpus: &Corpus,
    options: &SearchOptions,
) -> Result<SearchReport> {
    let start = Instant::now();
    let (corpus_name, tested, mut violations) = match corpus {
        Corpus::Exhaustive { n } => {
            let (tested, violations) = search_exhaustive(ineq, *n, options)?;
            (format!("exhaustive(n={n})"), tested, violations)
        }
        Corpus::FamilyScan { family, lo, hi } => {
            if lo > hi {
                return Err(Error::InvalidArgument(format!("empty range {lo}..={hi}")));
            }
            let mut tested = 0u64;
            let mut violations = Vec::new();
            for value in *lo..=*hi {
                let g = family.instantiate(value)?;
                if options.regular_only && g.regular_degree().is_none() {
                    continue;
                }
                tested += 1;
                if let Some(v) = check_graph(ineq, &g, Some(value)) {
                    violations.push(v);
                    if options.stop_at_first {
                        break;
                    }
                }
            }
            (
                format!(
                    "family-scan({}, {}={lo}..={hi})",
                    family.source(),
                    family.parameter().unwrap_or("_")
                ),
                tested,
                violations,
            )
        }
        Corpus::Graphs { description, graphs } => {
            let mut tested = 0u64;
            let mut violations = Vec::new();
            for g in graphs {
                if options.regular_only && g.regular_degree().is_none() {
                    continue;
                }
                tested += 1;
                if let Some(v) = check_graph(ineq, g, None) {
                    violations.push(v);
                    if options.stop_at_first {
                        break;
                    }
                }
            }
            (description.clone(), tested, violations)
        }
    };
    if options.dedup_violations {
        dedup_violations(&mut violations);
    }
    Ok(SearchReport {
        inequality: ineq.clone(),
        corpus: corpus_name,
        tested,
        violations,
        elapsed: start.elapsed(),
    })
}

/// Evaluate on one graph; on a negative value, re-verify with an
/// independently recomputed walk table before reporting.
fn check_graph(ineq: &WalkInequality, g: &Graph, family_param: Option<usize>) -> Option<Violation> {
    let value = ineq.evaluate_on_graph(g);
    if !value.is_negative() {
        return None;
    }
    let recheck = ineq.evaluate_on_graph(&Graph::new(g.node_count(), g.edges().iter().copied()).ok()?);
    assert_eq!(value, recheck, "violation failed re-verification");
    let graph6 = g.to_graph6().unwrap_or_else(|_| g.to_edge_list());
    Some(Violation { graph6, node_count: g.node_count(), value, family_param })
}

fn search_exhaustive(
    ineq: &WalkInequality,
    n: usize,
    options: &SearchOptions,
) -> Result<(u64, Vec<Violation>)> {
    let total = {
        // surface limit errors before spawning anything
        graph::labeled_graphs(n, options.max_enum_n)?;
        labeled_graph_count(n)
    };
    let jobs = options.jobs.max(1).min(total.max(1) as usize);
    if jobs <= 1 {
        let mut tested = 0u64;
        let mut violations = Vec::new();
        for g in graph::labeled_graphs(n, options.max_enum_n)? {
            if options.regular_only && g.regular_degree().is_none() {
                continue;
            }
            tested += 1;
            if let Some(v) = check_graph(ineq, &g, None) {
                violations.push(v);
                if options.stop_at_first {
                    break;
                }
            }
        }
        return Ok((tested, violations));
    }

    let chunk = total.div_ceil(jobs as u64);
    let stop = AtomicBool::new(false);
    let mut results: Vec<(u64, Vec<Violation>)> = Vec::new();
    std::thread::scope(|scope| -> Result<()> {
        let mut handles = Vec::new();
        for part in 0..jobs as u64 {
            let lo = part * chunk;
            let hi = ((part + 1) * chunk).min(total);
            if lo >= hi {
                break;
            }
            let stop = &stop;
            let iter = labeled_graphs_range(n, lo, hi, options.max_enum_n)?;
            handles.push(scope.spawn(move || {
                let mut tested = 0u64;
                let mut violations = Vec::new();
                for g in iter {
                    if stop.load(Ordering::Relaxed) {
                        break;
                    }
                    if options.regular_only && g.regular_degree().is_none() {
                        continue;
                    }
                    tested += 1;
                    if let Some(v) = check_graph(ineq, &g, None) {
                        violations.push(v);
                        if options.stop_at_first {
                            stop.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                }
                (tested, violations)
            }));
        }
        for handle in handles {
            results.push(handle.join().expect("search worker panicked"));
        }
        Ok(())
    })?;

    let mut tested = 0u64;
    let mut violations = Vec::new();
    for (t, v) in results {
        tested += t;
        violations.extend(v);
    }
    if options.stop_at_first && violations.len() > 1 {
        // keep the earliest in enumeration order: partitions are ordered,
        // and within a partition the scan is ascending
        violations.truncate(1);
    }
    Ok((tested, violations))
}

fn dedup_violations(violations: &mut Vec<Violation>) {
    let mut seen = std::collections::HashSet::new();
    violations.retain(|v| seen.insert((v.node_count, v.graph6.clone(), v.value.clone())));
}

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct IneqTermDto {
    coef: String,
    indices: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct WalkInequalityDto {
    terms: Vec<IneqTermDto>,
}

impl Serialize for WalkInequality {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        WalkInequalityDto {
            terms: self
                .terms
                .iter()
                .map(|(c, i)| IneqTermDto { coef: rational_to_string(c), indices: i.clone() })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WalkInequality {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let dto = WalkInequalityDto::deserialize(de)?;
        let mut terms = Vec::new();
        for term in dto.terms {
            let coef = parse_rational(&term.coef).map_err(D::Error::custom)?;
            terms.push((coef, term.indices));
        }
        WalkInequality::new(terms).map_err(D::Error::custom)
    }
}

impl WalkInequality {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("inequality serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<WalkInequality> {
        Ok(serde_json::from_str(text)?)
    }
}

impl Serialize for Violation {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = ser.serialize_struct("Violation", 4)?;
        s.serialize_field("graph6", &self.graph6)?;
        s.serialize_field("n", &self.node_count)?;
        s.serialize_field("value", &rational_to_string(&self.value))?;
        s.serialize_field("param", &self.family_param)?;
        s.end()
    }
}

impl Serialize for SearchReport {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = ser.serialize_struct("SearchReport", 5)?;
        s.serialize_field("inequality", &self.inequality)?;
        s.serialize_field("corpus", &self.corpus)?;
        s.serialize_field("tested", &self.tested)?;
        s.serialize_field("violations", &self.violations)?;
        s.serialize_field("elapsed_ms", &(self.elapsed.as_secs_f64() * 1e3))?;
        s.end()
    }
}
