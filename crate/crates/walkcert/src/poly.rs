//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Terms are keyed by exponent vectors of fixed length `k` (the ambient
//! variable count). Everything here is exact: certification paths never
//! touch floating point. Symmetrization sums a polynomial over all `k!`
//! variable permutations and is capped at `k <= 8`.

use crate::ratio::{parse_rational, rational_to_string};
use crate::univariate::UnivariatePolynomial;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;

/// Variable cap for symmetrization; 8! = 40320 permutation images.
pub const MAX_SYMMETRIZATION_VARS: usize = 8;

/// A polynomial in `k` variables, stored as exponent vector -> nonzero
/// rational coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    k: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl Polynomial {
    pub fn zero(k: usize) -> Self {
        Polynomial { k, terms: BTreeMap::new() }
    }

    pub fn constant(k: usize, value: BigRational) -> Self {
        let mut p = Polynomial::zero(k);
        p.add_term(vec![0; k], value);
        p
    }

    pub fn one(k: usize) -> Self {
        Self::constant(k, BigRational::one())
    }

    /// The single term `coef * x^exponents`.
    pub fn monomial(k: usize, exponents: Vec<u32>, coef: BigRational) -> Result<Self> {
        if exponents.len() != k {
            return Err(Error::VariableMismatch(exponents.len(), k));
        }
        let mut p = Polynomial::zero(k);
        p.add_term(exponents, coef);
        Ok(p)
    }

    /// The variable `x_i` (0-indexed) among `k` variables.
    pub fn variable(k: usize, i: usize) -> Result<Self> {
        if i >= k {
            return Err(Error::InvalidArgument(format!("variable {i} out of range for k={k}")));
        }
        let mut exps = vec![0; k];
        exps[i] = 1;
        Self::monomial(k, exps, BigRational::one())
    }

    pub fn variable_count(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigRational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigRational {
        self.terms.get(exponents).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Exponent vectors with nonzero coefficient, in lexicographic order.
    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    /// Largest total degree of any term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// `Some(d)` if nonzero and every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// Merge one term in, dropping the entry if the coefficient cancels.
    pub fn add_term(&mut self, exponents: Vec<u32>, coef: BigRational) {
        debug_assert_eq!(exponents.len(), self.k);
        if coef.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exponents) {
            Entry::Vacant(slot) => {
                slot.insert(coef);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coef;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.k != other.k {
            return Err(Error::VariableMismatch(self.k, other.k));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            k: self.k,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, factor: &BigRational) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.k);
        }
        Polynomial {
            k: self.k,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * factor)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.k != other.k {
            return Err(Error::VariableMismatch(self.k, other.k));
        }
        let mut out = Polynomial::zero(self.k);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiply by the single monomial `coef * x^exponents`.
    pub fn mul_monomial(&self, exponents: &[u32], coef: &BigRational) -> Result<Polynomial> {
        if exponents.len() != self.k {
            return Err(Error::VariableMismatch(exponents.len(), self.k));
        }
        if coef.is_zero() {
            return Ok(Polynomial::zero(self.k));
        }
        Ok(Polynomial {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    (e.iter().zip(exponents).map(|(a, b)| a + b).collect(), c * coef)
                })
                .collect(),
        })
    }

    pub fn pow(&self, exponent: u32) -> Polynomial {
        let mut out = Polynomial::one(self.k);
        for _ in 0..exponent {
            out = out.mul(self).expect("same variable count");
        }
        out
    }

    /// Exact distributed product; the empty list is the constant 1 in zero
    /// variables.
    pub fn expand_product(factors: &[Polynomial]) -> Result<Polynomial> {
        let Some(first) = factors.first() else {
            return Ok(Polynomial::one(0));
        };
        let mut out = first.clone();
        for f in &factors[1..] {
            out = out.mul(f)?;
        }
        Ok(out)
    }

    /// Sum over all `k!` variable permutations of `f(x_{σ(1)},…,x_{σ(k)})`.
    pub fn symmetrize(&self) -> Result<Polynomial> {
        if self.k > MAX_SYMMETRIZATION_VARS {
            return Err(Error::TooManyVariables { k: self.k, max: MAX_SYMMETRIZATION_VARS });
        }
        let mut out = Polynomial::zero(self.k);
        let mut perm: Vec<usize> = (0..self.k).collect();
        permute_all(&mut perm, &mut |sigma| {
            for (exps, coef) in &self.terms {
                // variable i is replaced by x_{σ(i)}
                let mut image = vec![0u32; exps.len()];
                for (i, &e) in exps.iter().enumerate() {
                    image[sigma[i]] = e;
                }
                out.add_term(image, coef.clone());
            }
        });
        Ok(out)
    }

    pub fn evaluate(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.k {
            return Err(Error::VariableMismatch(point.len(), self.k));
        }
        let mut acc = BigRational::zero();
        for (exps, coef) in &self.terms {
            let mut term = coef.clone();
            for (x, &e) in point.iter().zip(exps) {
                for _ in 0..e {
                    term *= x;
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    pub fn evaluate_real(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.k {
            return Err(Error::VariableMismatch(point.len(), self.k));
        }
        let mut acc = 0.0;
        for (exps, coef) in &self.terms {
            let mut term = crate::ratio::rational_to_f64(coef);
            for (x, &e) in point.iter().zip(exps) {
                term *= x.powi(e as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// View a one-variable polynomial as univariate.
    pub fn to_univariate(&self) -> Result<UnivariatePolynomial> {
        if self.k != 1 {
            return Err(Error::VariableMismatch(self.k, 1));
        }
        let degree = self.total_degree().unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        for (exps, coef) in &self.terms {
            coeffs[exps[0] as usize] = coef.clone();
        }
        Ok(UnivariatePolynomial::new(coeffs))
    }

    pub fn from_univariate(u: &UnivariatePolynomial) -> Polynomial {
        let mut p = Polynomial::zero(1);
        for (e, c) in u.coefficients().iter().enumerate() {
            p.add_term(vec![e as u32], c.clone());
        }
        p
    }

    /// For a binary (k=2) polynomial, substitute 1 for the other variable,
    /// keeping `keep` as the univariate indeterminate.
    pub fn binary_dehomogenize(&self, keep: usize) -> Result<UnivariatePolynomial> {
        if self.k != 2 {
            return Err(Error::VariableMismatch(self.k, 2));
        }
        if keep > 1 {
            return Err(Error::InvalidArgument("keep must be 0 or 1".into()));
        }
        let degree = self
            .terms
            .keys()
            .map(|e| e[keep])
            .max()
            .unwrap_or(0) as usize;
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        for (exps, coef) in &self.terms {
            coeffs[exps[keep] as usize] += coef.clone();
        }
        Ok(UnivariatePolynomial::new(coeffs))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: String = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &p)| p > 0)
                    .map(|(i, &p)| if p == 1 { format!("x{i}") } else { format!("x{i}^{p}") })
                    .collect::<Vec<_>>()
                    .join("*");
                if vars.is_empty() {
                    rational_to_string(c)
                } else {
                    format!("{}*{vars}", rational_to_string(c))
                }
            })
            .collect();
        write!(f, "{}", rendered.join(" + "))
    }
}

/// Heap's algorithm; calls `visit` on every permutation of `items`.
fn permute_all(items: &mut [usize], visit: &mut impl FnMut(&[usize])) {
    fn heap(n: usize, items: &mut [usize], visit: &mut impl FnMut(&[usize])) {
        if n <= 1 {
            visit(items);
            return;
        }
        for i in 0..n {
            heap(n - 1, items, visit);
            if n.is_multiple_of(2) {
                items.swap(i, n - 1);
            } else {
                items.swap(0, n - 1);
            }
        }
    }
    let n = items.len();
    heap(n, items, visit);
}

/// A permutation of the variable positions `0..k`; `apply(i)` is the image
/// of position `i`.
#[derive(Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let k = map.len();
        let mut seen = vec![false; k];
        for &image in &map {
            if image >= k || seen[image] {
                return Err(Error::InvalidArgument(format!(
                    "{map:?} is not a permutation of 0..{k}"
                )));
            }
            seen[image] = true;
        }
        Ok(Permutation(map))
    }

    /// From the 1-indexed one-line notation used on the command line,
    /// e.g. `2,3,1` for the 3-cycle.
    pub fn from_one_indexed(map: &[usize]) -> Result<Self> {
        let shifted: Vec<usize> = map
            .iter()
            .map(|&v| {
                v.checked_sub(1)
                    .ok_or_else(|| Error::InvalidArgument("permutation entries are 1-indexed".into()))
            })
            .collect::<Result<_>>()?;
        Permutation::new(shifted)
    }

    pub fn identity(k: usize) -> Self {
        Permutation((0..k).collect())
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// Disjoint cycle decomposition, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut cycles = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut current = self.0[start];
            while current != start {
                seen[current] = true;
                cycle.push(current);
                current = self.0[current];
            }
            cycles.push(cycle);
        }
        cycles
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.0)
    }
}

// ---------------------------------------------------------------------------
// Newton polytope
// ---------------------------------------------------------------------------

/// Why a Newton-polytope vertex rules out nonnegativity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexViolation {
    OddCoordinate,
    NegativeCoefficient,
}

/// Outcome of the vertex necessary condition: a nonnegative polynomial has
/// only even vertices with positive coefficients. `Pass` does NOT certify
/// nonnegativity.
#[derive(Clone, Debug, PartialEq)]
pub enum NewtonCheck {
    Pass { vertices: Vec<Vec<u32>> },
    Refuted { vertex: Vec<u32>, coefficient: BigRational, violation: VertexViolation },
}

/// Vertices of the Newton polytope `conv(supp(f))`, in lexicographic
/// order. A support point is a vertex iff it is not a convex combination
/// of the remaining support points, decided by exact LP feasibility.
pub fn newton_polytope_vertices(f: &Polynomial) -> Result<Vec<Vec<u32>>> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("zero polynomial has no Newton polytope".into()));
    }
    let support = f.support();
    let mut vertices = Vec::new();
    for (i, point) in support.iter().enumerate() {
        let others: Vec<&Vec<u32>> = support
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q)
            .collect();
        if !hull::point_in_hull(point, &others) {
            vertices.push(point.clone());
        }
    }
    Ok(vertices)
}

/// Check Newton-polytope vertices of `f` for the nonnegativity necessary
/// condition, reporting the first violating vertex in lexicographic order.
pub fn newton_vertex_check(f: &Polynomial) -> Result<NewtonCheck> {
    let vertices = newton_polytope_vertices(f)?;
    for vertex in &vertices {
        let coefficient = f.coefficient(vertex);
        if coefficient.is_negative() {
            return Ok(NewtonCheck::Refuted {
                vertex: vertex.clone(),
                coefficient,
                violation: VertexViolation::NegativeCoefficient,
            });
        }
    }
    for vertex in &vertices {
        if vertex.iter().any(|e| e % 2 == 1) {
            return Ok(NewtonCheck::Refuted {
                vertex: vertex.clone(),
                coefficient: f.coefficient(vertex),
                violation: VertexViolation::OddCoordinate,
            });
        }
    }
    Ok(NewtonCheck::Pass { vertices })
}

mod hull {
    //! Exact phase-1 simplex for membership of a point in the convex hull
    //! of finitely many lattice points. Supports are small (at most a few
    //! hundred points in dimension <= 8), so a dense rational tableau with
    //! Bland's rule is entirely adequate and has no degeneracy pitfalls.

    use num::rational::BigRational;
    use num::traits::{One, Signed, Zero};

    pub fn point_in_hull(point: &[u32], others: &[&Vec<u32>]) -> bool {
        if others.is_empty() {
            return false;
        }
        let dim = point.len();
        let rows = dim + 1;
        let cols = others.len() + rows; // λ columns then artificial columns
        let rat = |v: u32| BigRational::from(num::BigInt::from(v));

        // tableau rows: [Σ λ_j q_j = p ; Σ λ_j = 1], artificial basis
        let mut tableau = vec![vec![BigRational::zero(); cols + 1]; rows];
        for (j, q) in others.iter().enumerate() {
            for i in 0..dim {
                tableau[i][j] = rat(q[i]);
            }
            tableau[dim][j] = BigRational::one();
        }
        for (i, row) in tableau.iter_mut().enumerate() {
            row[others.len() + i] = BigRational::one();
            row[cols] = if i < dim { rat(point[i]) } else { BigRational::one() };
        }

        // phase-1 objective: minimize the sum of artificials; with the
        // artificial basis the reduced-cost row is -Σ rows on λ columns
        let mut objective = vec![BigRational::zero(); cols + 1];
        for j in 0..others.len() {
            let mut sum = BigRational::zero();
            for row in &tableau {
                sum += &row[j];
            }
            objective[j] = -sum;
        }
        let mut value = BigRational::zero();
        for row in &tableau {
            value += &row[cols];
        }
        let mut basis: Vec<usize> = (others.len()..cols).collect();

        // Bland: entering = lowest column with negative reduced cost
        while let Some(entering) = (0..cols).find(|&j| objective[j].is_negative()) {
            // ratio test, lowest basis index on ties
            let mut pivot_row: Option<usize> = None;
            let mut best: Option<BigRational> = None;
            for (r, row) in tableau.iter().enumerate() {
                if row[entering].is_positive() {
                    let ratio = &row[cols] / &row[entering];
                    let better = match &best {
                        None => true,
                        Some(b) => {
                            ratio < *b || (ratio == *b && basis[r] < basis[pivot_row.unwrap()])
                        }
                    };
                    if better {
                        best = Some(ratio);
                        pivot_row = Some(r);
                    }
                }
            }
            let Some(r) = pivot_row else {
                // unbounded cannot happen in phase 1; treat as infeasible
                return false;
            };
            let pivot = tableau[r][entering].clone();
            for x in tableau[r].iter_mut() {
                *x /= &pivot;
            }
            let pivot_row = tableau[r].clone();
            for (rr, row) in tableau.iter_mut().enumerate() {
                if rr != r && !row[entering].is_zero() {
                    let factor = row[entering].clone();
                    for (slot, p) in row.iter_mut().zip(&pivot_row) {
                        *slot -= &factor * p;
                    }
                }
            }
            if !objective[entering].is_zero() {
                let factor = objective[entering].clone();
                for (slot, p) in objective.iter_mut().zip(&pivot_row) {
                    *slot -= &factor * p;
                }
                value += &factor * &pivot_row[cols];
            }
            basis[r] = entering;
        }
        value.is_zero()
    }
}

// ---------------------------------------------------------------------------
// JSON form: {"k": 2, "terms": [{"exp": [2,0], "coef": "1"}, ...]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct TermDto {
    exp: Vec<u32>,
    coef: String,
}

#[derive(Serialize, Deserialize)]
struct PolynomialDto {
    k: usize,
    terms: Vec<TermDto>,
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PolynomialDto {
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermDto { exp: e.clone(), coef: rational_to_string(c) })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let dto = PolynomialDto::deserialize(de)?;
        let mut p = Polynomial::zero(dto.k);
        for term in dto.terms {
            if term.exp.len() != dto.k {
                return Err(D::Error::custom(format!(
                    "exponent vector {:?} does not have length k={}",
                    term.exp, dto.k
                )));
            }
            let coef = parse_rational(&term.coef).map_err(D::Error::custom)?;
            p.add_term(term.exp, coef);
        }
        Ok(p)
    }
}

impl Polynomial {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Polynomial> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Convenience for building test values: rational from an integer.
pub fn rat(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Rational `n/d`.
pub fn ratq(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly(k: usize, terms: &[(&[u32], i64)]) -> Polynomial {
        let mut p = Polynomial::zero(k);
        for (e, c) in terms {
            p.add_term(e.to_vec(), rat(*c));
        }
        p
    }

    #[test]
    fn symmetrize_two_variable_example() {
        // x1² - x1·x2 symmetrizes to x1² + x2² - 2·x1·x2
        let f = poly(2, &[(&[2, 0], 1), (&[1, 1], -1)]);
        let expected = poly(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[1, 1], -2)]);
        assert_eq!(f.symmetrize().unwrap(), expected);
    }

    #[test]
    fn symmetrize_already_symmetric_doubles() {
        let f = poly(2, &[(&[1, 1], 1)]);
        assert_eq!(f.symmetrize().unwrap(), poly(2, &[(&[1, 1], 2)]));
    }

    #[test]
    fn symmetrize_two_term_example() {
        let f = poly(2, &[(&[2, 6], 1), (&[3, 5], -1)]);
        let expected = poly(
            2,
            &[(&[2, 6], 1), (&[6, 2], 1), (&[3, 5], -1), (&[5, 3], -1)],
        );
        assert_eq!(f.symmetrize().unwrap(), expected);
    }

    #[test]
    fn symmetrize_rejects_many_variables() {
        let f = Polynomial::one(9);
        assert!(matches!(
            f.symmetrize(),
            Err(Error::TooManyVariables { k: 9, max: 8 })
        ));
    }

    #[test]
    fn expand_square() {
        let d = poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let sq = Polynomial::expand_product(&[d.clone(), d]).unwrap();
        assert_eq!(sq, poly(2, &[(&[2, 0], 1), (&[1, 1], -2), (&[0, 2], 1)]));
    }

    #[test]
    fn expand_sandwich_factorization() {
        // x1²x2²·(x1³ - x2³)·(x1 - x2) for (a,b,c) = (1,1,1)
        let factors = [
            poly(2, &[(&[2, 2], 1)]),
            poly(2, &[(&[3, 0], 1), (&[0, 3], -1)]),
            poly(2, &[(&[1, 0], 1), (&[0, 1], -1)]),
        ];
        let product = Polynomial::expand_product(&factors).unwrap();
        let expected = poly(
            2,
            &[(&[6, 2], 1), (&[5, 3], -1), (&[3, 5], -1), (&[2, 6], 1)],
        );
        assert_eq!(product, expected);
    }

    #[test]
    fn empty_product_is_one() {
        let p = Polynomial::expand_product(&[]).unwrap();
        assert_eq!(p, Polynomial::one(0));
        assert_eq!(p.evaluate(&[]).unwrap(), rat(1));
    }

    #[test]
    fn evaluate_examples() {
        let sq = poly(2, &[(&[2, 0], 1), (&[1, 1], -2), (&[0, 2], 1)]);
        assert_eq!(sq.evaluate(&[rat(3), rat(1)]).unwrap(), rat(4));
        assert_eq!(sq.evaluate(&[ratq(1, 2), ratq(1, 3)]).unwrap(), ratq(1, 36));
        // all-zeros point picks out the constant term
        let with_const = poly(2, &[(&[0, 0], 7), (&[3, 1], 5)]);
        assert_eq!(with_const.evaluate(&[rat(0), rat(0)]).unwrap(), rat(7));
    }

    #[test]
    fn newton_check_even_square_passes() {
        let f = poly(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[1, 1], -2)]);
        match newton_vertex_check(&f).unwrap() {
            NewtonCheck::Pass { vertices } => {
                assert_eq!(vertices, vec![vec![0, 2], vec![2, 0]]);
            }
            refuted => panic!("unexpected {refuted:?}"),
        }
    }

    #[test]
    fn newton_check_odd_vertex_refutes() {
        // symmetrization of x1⁰x2³ - x1¹x2²; vertex (0,3) has an odd entry
        let f = poly(
            2,
            &[(&[0, 3], 1), (&[3, 0], 1), (&[1, 2], -1), (&[2, 1], -1)],
        );
        match newton_vertex_check(&f).unwrap() {
            NewtonCheck::Refuted { vertex, violation, .. } => {
                assert_eq!(vertex, vec![0, 3]);
                assert_eq!(violation, VertexViolation::OddCoordinate);
            }
            pass => panic!("unexpected {pass:?}"),
        }
    }

    #[test]
    fn newton_check_negative_vertex_refutes() {
        let f = poly(2, &[(&[2, 0], -1), (&[1, 1], 1)]);
        match newton_vertex_check(&f).unwrap() {
            NewtonCheck::Refuted { vertex, coefficient, violation } => {
                assert_eq!(vertex, vec![2, 0]);
                assert_eq!(coefficient, rat(-1));
                assert_eq!(violation, VertexViolation::NegativeCoefficient);
            }
            pass => panic!("unexpected {pass:?}"),
        }
    }

    #[test]
    fn newton_interior_points_are_not_vertices() {
        // (1,1) is the midpoint of (2,0) and (0,2)
        let f = poly(2, &[(&[2, 0], 1), (&[0, 2], 1), (&[1, 1], 5)]);
        let vertices = newton_polytope_vertices(&f).unwrap();
        assert_eq!(vertices, vec![vec![0, 2], vec![2, 0]]);
    }

    #[test]
    fn binary_dehomogenize_collects_by_kept_exponent() {
        let f = poly(2, &[(&[3, 1], 2), (&[1, 3], 1), (&[2, 2], -2)]);
        let u = f.binary_dehomogenize(0).unwrap();
        // 2t³ - 2t² + t
        assert_eq!(
            u.coefficients(),
            &[rat(0), rat(1), rat(-2), rat(2)]
        );
    }

    #[test]
    fn json_round_trip() {
        let f = poly(2, &[(&[2, 0], 1), (&[1, 1], -2)]);
        let json = f.to_json();
        assert!(json.contains("\"exp\":[1,1]"));
        assert!(json.contains("\"coef\":\"-2\""));
        assert_eq!(Polynomial::from_json(&json).unwrap(), f);
        assert!(Polynomial::from_json("{\"k\":2,\"terms\":[{\"exp\":[1],\"coef\":\"1\"}]}").is_err());
    }

    fn arb_poly(k: usize, max_degree: u32) -> impl Strategy<Value = Polynomial> {
        let term = (
            proptest::collection::vec(0..=max_degree, k),
            -5i64..=5,
        );
        proptest::collection::vec(term, 1..6).prop_map(move |terms| {
            let mut p = Polynomial::zero(k);
            for (e, c) in terms {
                p.add_term(e, rat(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn symmetrization_is_permutation_invariant(
            f in arb_poly(4, 4),
            seed in 0usize..24,
        ) {
            // pre-permuting the variables leaves the symmetrization fixed
            let sigma = {
                let mut items: Vec<usize> = (0..4).collect();
                let mut state = seed;
                for i in (1..4).rev() {
                    items.swap(i, state % (i + 1));
                    state /= i + 1;
                }
                Permutation::new(items).unwrap()
            };
            let sym = f.symmetrize().unwrap();
            let mut permuted = Polynomial::zero(4);
            for (e, c) in f.terms() {
                let mut image = vec![0u32; 4];
                for (i, &exp) in e.iter().enumerate() {
                    image[sigma.apply(i)] = exp;
                }
                permuted.add_term(image, c.clone());
            }
            prop_assert_eq!(permuted.symmetrize().unwrap(), sym);
        }

        #[test]
        fn double_symmetrization_scales_by_factorial(f in arb_poly(3, 4)) {
            let once = f.symmetrize().unwrap();
            let twice = once.symmetrize().unwrap();
            prop_assert_eq!(twice, once.scale(&rat(6)));
        }

        #[test]
        fn product_matches_pointwise_evaluation(
            a in arb_poly(2, 4),
            b in arb_poly(2, 4),
            x in -4i64..=4,
            y in -4i64..=4,
        ) {
            let product = a.mul(&b).unwrap();
            let point = [rat(x), rat(y)];
            let lhs = product.evaluate(&point).unwrap();
            let rhs = a.evaluate(&point).unwrap() * b.evaluate(&point).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn newton_vertices_lie_in_support(f in arb_poly(3, 4)) {
            prop_assume!(!f.is_zero());
            let support = f.support();
            for v in newton_polytope_vertices(&f).unwrap() {
                prop_assert!(support.contains(&v));
            }
        }
    }
}
