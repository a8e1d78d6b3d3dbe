//! Certified-nonnegativity constructions and their obstructions.
//!
//! Each certificate carries a base polynomial `f` whose symmetrization is
//! nonnegative, so the compiled walk inequality `Σ c_α·w_{α_1}···w_{α_k} >= 0`
//! holds in every graph. Verification is exact and recomputed from the
//! certificate data; nothing is ever trusted from storage, and no
//! floating-point value enters any decision here.
//!
//! The obstruction side is one-directional: an odd symmetrization degree
//! or a bad Newton-polytope vertex rules out *this* certification route,
//! never the graph-validity of the inequality itself.

use crate::inequality::{compile, WalkInequality};
use crate::poly::{newton_polytope_vertices, Permutation, Polynomial};
use crate::ratio::{parse_rational, rational_to_string};
use crate::univariate::NonnegDecision;
use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{Signed, Zero};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};
use std::collections::BTreeMap;
use std::collections::VecDeque;

/// Certificate cap on variable count (symmetrization stays exact and the
/// permutation group enumerable).
pub const MAX_CERTIFICATE_VARS: usize = 8;

/// An explicit rational sum of squares: `Σ c_i · h_i²` with `c_i > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SosDecomposition {
    pub squares: Vec<(BigRational, Polynomial)>,
}

impl SosDecomposition {
    /// Expand `Σ c_i·h_i²` exactly.
    pub fn expand(&self, k: usize) -> Polynomial {
        let mut total = Polynomial::zero(k);
        for (coef, h) in &self.squares {
            let square = h.mul(h).expect("square of a polynomial");
            total = total.add(&square.scale(coef)).expect("same variable count");
        }
        total
    }
}

/// The construction behind a certificate, with its parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum CertificateKind {
    /// `f = (x^α − x^{α∘σ})²`: a literal square.
    Square { alpha: Vec<u32>, sigma: Permutation },
    /// `f = x₁^{2a}x₂^{2(a+b+c)} − x₁^{2a+c}x₂^{2(a+b)+c}`, whose
    /// symmetrization factors as `x₁^{2a}x₂^{2a}(x₁^{2b+c}−x₂^{2b+c})(x₁^c−x₂^c)`
    /// with both parenthesized factors sharing a sign.
    Sandwich { a: u32, b: u32, c: u32 },
    /// `f = Σ α_i x_i^{2d} − 2d·x^α` with an explicit sum of squares.
    AgmSos { alpha: Vec<u32>, sos: SosDecomposition },
    /// `f = x^{2k} − a_1·x^{2k−1} − … − a_{2k−1}·x − L` with a certified
    /// lower bound `L` on the minimum of the un-shifted polynomial.
    UnivariateMin { half_degree: u32, lower_coeffs: Vec<BigRational>, bound: BigRational },
    /// A binary form decided positive semidefinite by exact root analysis.
    BinaryPsd,
}

impl CertificateKind {
    pub fn name(&self) -> &'static str {
        match self {
            CertificateKind::Square { .. } => "square",
            CertificateKind::Sandwich { .. } => "sandwich",
            CertificateKind::AgmSos { .. } => "agm_sos",
            CertificateKind::UnivariateMin { .. } => "univariate_min",
            CertificateKind::BinaryPsd => "binary_psd",
        }
    }
}

/// A certified-nonnegative base polynomial plus the construction that
/// proves it. `shift` records multiplication by `(x_1···x_k)^{2·shift}`,
/// which raises every walk index by `2·shift` without affecting
/// nonnegativity.
#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub base: Polynomial,
    pub shift: u32,
}

/// Why a symmetrization cannot be certified psd (or is not psd at all).
#[derive(Clone, Debug, PartialEq)]
pub enum Obstruction {
    /// A Newton-polytope vertex has an odd coordinate.
    OddVertex { vertex: Vec<u32> },
    /// A Newton-polytope vertex carries a negative coefficient.
    NegativeVertexCoefficient { vertex: Vec<u32>, coefficient: BigRational },
    /// The symmetrization has odd total degree.
    OddDegree { degree: u32 },
    /// An exact rational point where the form is strictly negative.
    NegativeWitness { point: Vec<BigRational>, value: BigRational },
}

impl Certificate {
    /// The walk inequality this certificate proves, via compilation of the
    /// base polynomial.
    pub fn compiled(&self) -> WalkInequality {
        compile(&self.base)
    }

    /// Exactly re-verify the construction against the stored base
    /// polynomial. Any structural mismatch (including undecodable data
    /// loaded from JSON) reports `false` rather than an error.
    pub fn verify(&self) -> bool {
        let k = self.base.variable_count().max(1);
        let shift_monomial = vec![2 * self.shift; k];
        let reshift = |f: &Polynomial| {
            f.mul_monomial(&shift_monomial, &BigRational::from(BigInt::from(1)))
                .expect("shift monomial matches variable count")
        };
        match &self.kind {
            CertificateKind::Square { alpha, sigma } => {
                let Ok(expected) = square_base(alpha, sigma) else {
                    return false;
                };
                expected.variable_count() == k && reshift(&expected) == self.base
            }
            CertificateKind::Sandwich { a, b, c } => {
                let expected = sandwich_base(*a, *b, *c);
                if k != 2 || reshift(&expected) != self.base {
                    return false;
                }
                sandwich_factorization_holds(*a, *b, *c)
            }
            CertificateKind::AgmSos { alpha, sos } => {
                let Ok(expected) = agm_base(alpha) else {
                    return false;
                };
                if expected.variable_count() != k || reshift(&expected) != self.base {
                    return false;
                }
                sos.squares.iter().all(|(c, _)| c.is_positive())
                    && sos.expand(alpha.len()) == expected
            }
            CertificateKind::UnivariateMin { half_degree, lower_coeffs, bound } => {
                let Ok(expected) = univariate_base(*half_degree, lower_coeffs, bound) else {
                    return false;
                };
                if k != 1 || reshift(&expected) != self.base {
                    return false;
                }
                match expected.to_univariate() {
                    Ok(u) => u.nonnegative_everywhere() == NonnegDecision::Nonnegative,
                    Err(_) => false,
                }
            }
            CertificateKind::BinaryPsd => {
                let Ok(unshifted) = div_monomial(&self.base, &shift_monomial) else {
                    return false;
                };
                matches!(binary_psd_decide(&unshifted), Ok(PsdDecision::Psd(_)))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

fn square_base(alpha: &[u32], sigma: &Permutation) -> Result<Polynomial> {
    let k = alpha.len();
    if sigma.len() != k {
        return Err(Error::VariableMismatch(sigma.len(), k));
    }
    let one = BigRational::from(BigInt::from(1));
    let first = Polynomial::monomial(k, alpha.to_vec(), one.clone())?;
    // x_{σ(1)}^{α_1}···x_{σ(k)}^{α_k}: variable σ(i) carries exponent α_i
    let mut permuted = vec![0u32; k];
    for (i, &a) in alpha.iter().enumerate() {
        permuted[sigma.apply(i)] = a;
    }
    let second = Polynomial::monomial(k, permuted, one)?;
    let difference = first.sub(&second)?;
    difference.mul(&difference)
}

/// `(x^α − x^{α∘σ})²`, proving `w_{α_1+α_{σ(1)}}···w_{α_k+α_{σ(k)}} <=
/// w_{2α_1}···w_{2α_k}`. The identity permutation gives the degenerate
/// `0 <= 0`.
pub fn square_certificate(alpha: &[u32], sigma: &Permutation) -> Result<Certificate> {
    if alpha.len() > MAX_CERTIFICATE_VARS {
        return Err(Error::TooManyVariables { k: alpha.len(), max: MAX_CERTIFICATE_VARS });
    }
    if alpha.is_empty() {
        return Err(Error::InvalidArgument("alpha must be nonempty".into()));
    }
    let base = square_base(alpha, sigma)?;
    Ok(Certificate {
        kind: CertificateKind::Square { alpha: alpha.to_vec(), sigma: sigma.clone() },
        base,
        shift: 0,
    })
}

fn sandwich_base(a: u32, b: u32, c: u32) -> Polynomial {
    let one = BigRational::from(BigInt::from(1));
    let mut f = Polynomial::zero(2);
    f.add_term(vec![2 * a, 2 * (a + b + c)], one.clone());
    f.add_term(vec![2 * a + c, 2 * (a + b) + c], -one);
    f
}

fn sandwich_factorization_holds(a: u32, b: u32, c: u32) -> bool {
    let one = BigRational::from(BigInt::from(1));
    let mut monomial = Polynomial::zero(2);
    monomial.add_term(vec![2 * a, 2 * a], one.clone());
    let mut first = Polynomial::zero(2);
    first.add_term(vec![2 * b + c, 0], one.clone());
    first.add_term(vec![0, 2 * b + c], -one.clone());
    let mut second = Polynomial::zero(2);
    second.add_term(vec![c, 0], one.clone());
    second.add_term(vec![0, c], -one);
    let product = Polynomial::expand_product(&[monomial, first, second])
        .expect("factors share the variable count");
    match sandwich_base(a, b, c).symmetrize() {
        Ok(sym) => sym == product,
        Err(_) => false,
    }
}

/// The sandwich inequality `w_{2a+c}·w_{2(a+b)+c} <= w_{2a}·w_{2(a+b+c)}`.
/// The symmetrization factors into `x₁^{2a}x₂^{2a}` times two
/// same-parity differences, which share a sign everywhere, so it is
/// nonnegative; the factorization identity is checked exactly.
pub fn sandwich_certificate(a: u32, b: u32, c: u32) -> Result<Certificate> {
    if !sandwich_factorization_holds(a, b, c) {
        return Err(Error::Verification(format!(
            "sandwich factorization identity failed for (a,b,c)=({a},{b},{c})"
        )));
    }
    Ok(Certificate {
        kind: CertificateKind::Sandwich { a, b, c },
        base: sandwich_base(a, b, c),
        shift: 0,
    })
}

fn agm_base(alpha: &[u32]) -> Result<Polynomial> {
    let k = alpha.len();
    let degree: u32 = alpha.iter().sum();
    if degree % 2 == 1 || degree < 2 {
        return Err(Error::InvalidArgument(format!(
            "agm needs |alpha| even and >= 2, got {degree}"
        )));
    }
    let mut f = Polynomial::zero(k);
    for (i, &a) in alpha.iter().enumerate() {
        if a > 0 {
            let mut exps = vec![0u32; k];
            exps[i] = degree;
            f.add_term(exps, BigRational::from(BigInt::from(a)));
        }
    }
    f.add_term(alpha.to_vec(), BigRational::from(BigInt::from(-i64::from(degree))));
    Ok(f)
}

/// Split a weight vector into front- and back-loaded halves of weight `d`.
fn halving_split(alpha: &[u32], d: u32) -> (Vec<u32>, Vec<u32>) {
    let mut beta = vec![0u32; alpha.len()];
    let mut remaining = d;
    for (slot, &a) in beta.iter_mut().zip(alpha) {
        let take = a.min(remaining);
        *slot = take;
        remaining -= take;
        if remaining == 0 {
            break;
        }
    }
    let gamma: Vec<u32> = alpha.iter().zip(&beta).map(|(a, b)| a - b).collect();
    (beta, gamma)
}

fn is_terminal(alpha: &[u32]) -> bool {
    alpha.iter().filter(|&&a| a > 0).count() <= 1
}

/// Explicit rational sum of squares for the weighted AM-GM form
/// `F_α = Σ α_i x_i^{2d} − 2d·x^α`, `|α| = 2d`.
///
/// The halving identity `F_α = ½F_{2β} + ½F_{2γ} + d·(x^β − x^γ)²` (for
/// any split `β + γ = α` with `|β| = |γ| = d`) generates a finite state
/// graph of weight vectors. The identity may revisit states, so instead of
/// recursing blindly the per-state equations are solved as an exact linear
/// system; the resulting coefficients are nonnegative because the system
/// is a substochastic fixed point. The decomposition is then re-verified
/// by exact expansion, which is the actual soundness argument.
pub fn agm_sos(alpha: &[u32]) -> Result<Certificate> {
    let k = alpha.len();
    if k == 0 {
        return Err(Error::InvalidArgument("alpha must be nonempty".into()));
    }
    if k > MAX_CERTIFICATE_VARS {
        return Err(Error::TooManyVariables { k, max: MAX_CERTIFICATE_VARS });
    }
    let base = agm_base(alpha)?;
    let degree: u32 = alpha.iter().sum();
    let half = degree / 2;

    let sos = if is_terminal(alpha) {
        SosDecomposition { squares: Vec::new() }
    } else {
        build_agm_sos(alpha, half, k)?
    };
    let expanded = sos.expand(k);
    if expanded != base {
        return Err(Error::Verification(format!(
            "agm sos expansion mismatch for alpha {alpha:?}"
        )));
    }
    Ok(Certificate {
        kind: CertificateKind::AgmSos { alpha: alpha.to_vec(), sos },
        base,
        shift: 0,
    })
}

fn build_agm_sos(alpha: &[u32], half: u32, k: usize) -> Result<SosDecomposition> {
    struct StateEq {
        children: [Option<usize>; 2], // indices of non-terminal children
        square: Polynomial,
    }

    let one = BigRational::from(BigInt::from(1));
    let half_rat = BigRational::new(BigInt::from(1), BigInt::from(2));

    // discover every reachable non-terminal state
    let mut index: BTreeMap<Vec<u32>, usize> = BTreeMap::new();
    let mut equations: Vec<StateEq> = Vec::new();
    let mut queue: VecDeque<Vec<u32>> = VecDeque::new();
    index.insert(alpha.to_vec(), 0);
    queue.push_back(alpha.to_vec());
    equations.push(StateEq { children: [None, None], square: Polynomial::zero(k) });

    while let Some(state) = queue.pop_front() {
        let id = index[&state];
        let (beta, gamma) = halving_split(&state, half);
        let mut children = [None, None];
        for (slot, part) in children.iter_mut().zip([&beta, &gamma]) {
            let child: Vec<u32> = part.iter().map(|&x| 2 * x).collect();
            if !is_terminal(&child) {
                let next_id = index.len();
                let child_id = *index.entry(child.clone()).or_insert_with(|| {
                    queue.push_back(child.clone());
                    next_id
                });
                if child_id == next_id {
                    equations.push(StateEq {
                        children: [None, None],
                        square: Polynomial::zero(k),
                    });
                }
                *slot = Some(child_id);
            }
        }
        let difference = Polynomial::monomial(k, beta, one.clone())?
            .sub(&Polynomial::monomial(k, gamma, one.clone())?)?;
        equations[id] = StateEq { children, square: difference };
    }

    // F_s = ½·F_{c1} + ½·F_{c2} + d·Q_s over the non-terminal states:
    // solve (I − Aᵀ)·w = e_root so that F_root = Σ_s w_s·d·Q_s
    let n = equations.len();
    let mut matrix = vec![vec![BigRational::zero(); n]; n];
    for (i, row) in matrix.iter_mut().enumerate() {
        row[i] = one.clone();
    }
    for (s, eq) in equations.iter().enumerate() {
        for child in eq.children.iter().flatten() {
            matrix[*child][s] -= &half_rat;
        }
    }
    let mut rhs = vec![BigRational::zero(); n];
    rhs[0] = one.clone();
    let weights = solve_linear(&mut matrix, &mut rhs).ok_or_else(|| {
        Error::Verification(format!("agm halving system is singular for {alpha:?}"))
    })?;

    let d_rat = BigRational::from(BigInt::from(i64::from(half)));
    let mut squares = Vec::new();
    for (eq, w) in equations.iter().zip(&weights) {
        if w.is_negative() {
            return Err(Error::Verification(format!(
                "negative agm weight for {alpha:?}"
            )));
        }
        if w.is_zero() || eq.square.is_zero() {
            continue;
        }
        squares.push((w * &d_rat, eq.square.clone()));
    }
    Ok(SosDecomposition { squares })
}

/// Gaussian elimination with exact rationals; `None` on a singular system.
fn solve_linear(matrix: &mut [Vec<BigRational>], rhs: &mut [BigRational]) -> Option<Vec<BigRational>> {
    let n = rhs.len();
    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !matrix[r][col].is_zero())?;
        matrix.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let pivot = matrix[col][col].clone();
        for x in matrix[col].iter_mut() {
            *x /= &pivot;
        }
        rhs[col] /= &pivot;
        let pivot_row = matrix[col].clone();
        let pivot_rhs = rhs[col].clone();
        for (row, entries) in matrix.iter_mut().enumerate() {
            if row != col && !entries[col].is_zero() {
                let factor = entries[col].clone();
                for (slot, p) in entries.iter_mut().zip(&pivot_row) {
                    *slot -= &factor * p;
                }
                rhs[row] -= &factor * &pivot_rhs;
            }
        }
    }
    Some(rhs.to_vec())
}

/// Outcome of the exact binary psd decision.
#[derive(Clone, Debug, PartialEq)]
pub enum PsdDecision {
    Psd(Certificate),
    NotPsd(Obstruction),
}

/// Decide positive semidefiniteness of a nonzero binary form exactly.
/// Checks the two axes, then both dehomogenizations `f(t,1)` and `f(1,t)`
/// via Sturm-based sign analysis on square-free parts; a refutation comes
/// with an exact rational witness.
pub fn binary_psd_decide(f: &Polynomial) -> Result<PsdDecision> {
    if f.variable_count() != 2 {
        return Err(Error::VariableMismatch(f.variable_count(), 2));
    }
    if f.is_zero() {
        return Err(Error::InvalidArgument("binary psd decision needs a nonzero form".into()));
    }
    let Some(degree) = f.homogeneous_degree() else {
        return Err(Error::InvalidArgument("binary psd decision needs a homogeneous form".into()));
    };
    let zero = BigRational::zero();
    let one = BigRational::from(BigInt::from(1));

    if degree % 2 == 1 {
        // an odd-degree nonzero form is negative somewhere: find a point
        // where it does not vanish and flip the sign if needed
        let (point, value) = nonvanishing_point(f);
        let (point, value) = if value.is_negative() {
            (point, value)
        } else {
            (vec![-point[0].clone(), -point[1].clone()], -value)
        };
        return Ok(PsdDecision::NotPsd(Obstruction::NegativeWitness { point, value }));
    }

    // axis screens: f(1,0) and f(0,1) are single coefficients
    let axis_x = f.coefficient(&[degree, 0]);
    if axis_x.is_negative() {
        return Ok(PsdDecision::NotPsd(Obstruction::NegativeWitness {
            point: vec![one.clone(), zero.clone()],
            value: axis_x,
        }));
    }
    let axis_y = f.coefficient(&[0, degree]);
    if axis_y.is_negative() {
        return Ok(PsdDecision::NotPsd(Obstruction::NegativeWitness {
            point: vec![zero.clone(), one.clone()],
            value: axis_y,
        }));
    }

    for keep in [0usize, 1] {
        let dehomogenized = f.binary_dehomogenize(keep)?;
        if let NonnegDecision::Negative { witness, value } = dehomogenized.nonnegative_everywhere()
        {
            let point = if keep == 0 {
                vec![witness, one.clone()]
            } else {
                vec![one.clone(), witness]
            };
            debug_assert_eq!(f.evaluate(&point).unwrap(), value);
            return Ok(PsdDecision::NotPsd(Obstruction::NegativeWitness { point, value }));
        }
    }

    Ok(PsdDecision::Psd(Certificate {
        kind: CertificateKind::BinaryPsd,
        base: f.clone(),
        shift: 0,
    }))
}

/// A rational point where the nonzero binary polynomial does not vanish,
/// found by scanning an expanding integer grid.
fn nonvanishing_point(f: &Polynomial) -> (Vec<BigRational>, BigRational) {
    let rat = |v: i64| BigRational::from(BigInt::from(v));
    for radius in 1i64.. {
        for x in -radius..=radius {
            for y in -radius..=radius {
                let point = vec![rat(x), rat(y)];
                let value = f.evaluate(&point).expect("two coordinates");
                if !value.is_zero() {
                    return (point, value);
                }
            }
        }
    }
    unreachable!("a nonzero polynomial cannot vanish on every lattice point")
}

/// Result of the two-factor characterization of `w_{α_1}w_{α_2} <=
/// w_{β_1}w_{β_2}` (pairs sorted ascending, `|α| = |β|`): parameters with
/// a sandwich certificate, or the violated condition.
#[derive(Clone, Debug)]
pub enum TwoFactorOutcome {
    Params { a: u32, b: u32, c: u32, certificate: Certificate },
    Refuted(Obstruction),
}

/// Characterize which two-factor pure binomial inequalities admit a psd
/// symmetrization: exactly those with `β` even and `β_1 <= α_1 <= α_2 <=
/// β_2`, in which case `α_1 = 2a+c`, `α_2 = 2(a+b)+c`, `β = (2a, 2(a+b+c))`.
pub fn two_factor_characterize(alpha: (u32, u32), beta: (u32, u32)) -> Result<TwoFactorOutcome> {
    let (a1, a2) = (alpha.0.min(alpha.1), alpha.0.max(alpha.1));
    let (b1, b2) = (beta.0.min(beta.1), beta.0.max(beta.1));
    if a1 + a2 != b1 + b2 {
        return Err(Error::InvalidArgument(format!(
            "two-factor characterization needs |alpha| = |beta|, got {} vs {}",
            a1 + a2,
            b1 + b2
        )));
    }
    // support lies on the segment x+y = |α|; if α pokes outside [β_1, β_2]
    // its endpoint is a vertex with coefficient -1
    if a1 < b1 {
        return Ok(TwoFactorOutcome::Refuted(Obstruction::NegativeVertexCoefficient {
            vertex: vec![a1, a2],
            coefficient: BigRational::from(BigInt::from(-1)),
        }));
    }
    if b1 % 2 == 1 || b2 % 2 == 1 {
        return Ok(TwoFactorOutcome::Refuted(Obstruction::OddVertex { vertex: vec![b1, b2] }));
    }
    // equal sums and b1 <= a1 force a2 <= b2 and matching parity of α
    debug_assert!(a2 <= b2);
    debug_assert_eq!((a2 - a1) % 2, 0);
    let a = b1 / 2;
    let c = a1 - b1;
    let b = (a2 - a1) / 2;
    debug_assert_eq!(b2, 2 * (a + b + c));
    let certificate = sandwich_certificate(a, b, c)?;
    Ok(TwoFactorOutcome::Params { a, b, c, certificate })
}

/// A univariate certificate together with its reported diagnostics.
#[derive(Clone, Debug)]
pub struct UnivariateCertificate {
    pub certificate: Certificate,
    /// Certified lower bound `L <= min f` (strictly negative here).
    pub min_bound: BigRational,
    /// The bracket `(0, 1 + max a_j]` containing the single positive root.
    pub root_bracket: (BigRational, BigRational),
}

/// From `f(x) = x^{2k} − a_1·x^{2k−1} − … − a_{2k−1}·x` with `a_j >= 0`
/// and at least one positive: certify `L <= min f` and compile
/// `w_{2k} − L·w_0 >= a_1·w_{2k−1} + … + a_{2k−1}·w_1`. Also confirms by
/// Sturm counting that exactly one root lies in `(0, 1 + max a_j]`.
pub fn univariate_certificate(
    half_degree: u32,
    lower_coeffs: &[BigRational],
    tol: &BigRational,
) -> Result<UnivariateCertificate> {
    let k = half_degree;
    if k == 0 {
        return Err(Error::InvalidArgument("need k >= 1".into()));
    }
    if lower_coeffs.len() != (2 * k - 1) as usize {
        return Err(Error::InvalidArgument(format!(
            "need 2k-1 = {} coefficients, got {}",
            2 * k - 1,
            lower_coeffs.len()
        )));
    }
    if lower_coeffs.iter().any(Signed::is_negative) {
        return Err(Error::InvalidArgument("coefficients a_j must be nonnegative".into()));
    }
    if lower_coeffs.iter().all(Zero::is_zero) {
        return Err(Error::InvalidArgument("at least one a_j must be positive".into()));
    }

    // f = x^{2k} − Σ a_j x^{2k−j}, coefficient of x^{2k−j} is −a_j
    let mut coeffs = vec![BigRational::zero(); (2 * k + 1) as usize];
    coeffs[(2 * k) as usize] = BigRational::from(BigInt::from(1));
    for (j, a) in lower_coeffs.iter().enumerate() {
        coeffs[(2 * k) as usize - (j + 1)] = -a.clone();
    }
    let f = crate::univariate::UnivariatePolynomial::new(coeffs);

    let bound = f.certified_global_min_bound(tol)?;

    // the single positive root p satisfies p <= 1 + max a_j
    let max_a = lower_coeffs.iter().max().expect("nonempty").clone();
    let bracket_hi = BigRational::from(BigInt::from(1)) + max_a;
    let roots_in_bracket = f.count_roots_in(&BigRational::zero(), &bracket_hi)?;
    if roots_in_bracket != 1 {
        return Err(Error::Verification(format!(
            "expected exactly one positive root in (0, {}], found {roots_in_bracket}",
            rational_to_string(&bracket_hi)
        )));
    }

    let base = univariate_base(k, lower_coeffs, &bound)?;
    Ok(UnivariateCertificate {
        certificate: Certificate {
            kind: CertificateKind::UnivariateMin {
                half_degree: k,
                lower_coeffs: lower_coeffs.to_vec(),
                bound: bound.clone(),
            },
            base,
            shift: 0,
        },
        min_bound: bound,
        root_bracket: (BigRational::zero(), bracket_hi),
    })
}

fn univariate_base(k: u32, lower_coeffs: &[BigRational], bound: &BigRational) -> Result<Polynomial> {
    if lower_coeffs.len() != (2 * k - 1) as usize {
        return Err(Error::InvalidArgument("coefficient count mismatch".into()));
    }
    let mut base = Polynomial::zero(1);
    base.add_term(vec![2 * k], BigRational::from(BigInt::from(1)));
    for (j, a) in lower_coeffs.iter().enumerate() {
        base.add_term(vec![2 * k - (j as u32 + 1)], -a.clone());
    }
    base.add_term(vec![0], -bound.clone());
    Ok(base)
}

/// Run the certification obstructions against `f`: odd total degree of the
/// symmetrization, and Newton-polytope vertices that are odd or carry
/// negative coefficients. An empty list means "no obstruction found" — it
/// is NOT a nonnegativity certificate.
pub fn psd_obstructions(f: &Polynomial) -> Result<Vec<Obstruction>> {
    let sym = f.symmetrize()?;
    if sym.is_zero() {
        return Ok(Vec::new());
    }
    let mut obstructions = Vec::new();
    let degree = sym.total_degree().expect("nonzero");
    if degree % 2 == 1 {
        obstructions.push(Obstruction::OddDegree { degree });
    }
    for vertex in newton_polytope_vertices(&sym)? {
        let coefficient = sym.coefficient(&vertex);
        if coefficient.is_negative() {
            obstructions.push(Obstruction::NegativeVertexCoefficient {
                vertex: vertex.clone(),
                coefficient,
            });
        }
        if vertex.iter().any(|e| e % 2 == 1) {
            obstructions.push(Obstruction::OddVertex { vertex });
        }
    }
    Ok(obstructions)
}

/// Multiply the certified base by `(x_1···x_k)^{2a}` — a square, so
/// nonnegativity survives — raising every compiled walk index by `2a`.
pub fn shift_certificate(cert: &Certificate, a: u32) -> Certificate {
    let k = cert.base.variable_count().max(1);
    let monomial = vec![2 * a; k];
    let base = cert
        .base
        .mul_monomial(&monomial, &BigRational::from(BigInt::from(1)))
        .expect("monomial matches variable count");
    Certificate { kind: cert.kind.clone(), base, shift: cert.shift + a }
}

/// Exact division by a monomial; `None`-style error if any term lacks the
/// required exponents.
fn div_monomial(f: &Polynomial, exponents: &[u32]) -> Result<Polynomial> {
    let mut out = Polynomial::zero(f.variable_count());
    for (exps, coef) in f.terms() {
        let mut reduced = Vec::with_capacity(exps.len());
        for (&e, &d) in exps.iter().zip(exponents) {
            if e < d {
                return Err(Error::InvalidArgument("monomial does not divide the term".into()));
            }
            reduced.push(e - d);
        }
        out.add_term(reduced, coef.clone());
    }
    Ok(out)
}

/// Seeded sampling refutation for forms beyond the structured deciders
/// (three or more variables): evaluate at random rational points and
/// report the first strictly negative value. Purely diagnostic.
pub fn sample_negative_witness(
    f: &Polynomial,
    samples: u32,
    seed: u64,
) -> Option<(Vec<BigRational>, BigRational)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = f.variable_count();
    for _ in 0..samples {
        let point: Vec<BigRational> = (0..k)
            .map(|_| {
                BigRational::new(
                    BigInt::from(rng.random_range(-8i64..=8)),
                    BigInt::from(rng.random_range(1i64..=4)),
                )
            })
            .collect();
        let value = f.evaluate(&point).expect("point matches variable count");
        if value.is_negative() {
            return Some((point, value));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// JSON forms
// ---------------------------------------------------------------------------

impl Serialize for Obstruction {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Obstruction::OddVertex { vertex } => {
                let mut s = ser.serialize_struct("Obstruction", 2)?;
                s.serialize_field("kind", "odd_vertex")?;
                s.serialize_field("vertex", vertex)?;
                s.end()
            }
            Obstruction::NegativeVertexCoefficient { vertex, coefficient } => {
                let mut s = ser.serialize_struct("Obstruction", 3)?;
                s.serialize_field("kind", "negative_vertex_coefficient")?;
                s.serialize_field("vertex", vertex)?;
                s.serialize_field("coefficient", &rational_to_string(coefficient))?;
                s.end()
            }
            Obstruction::OddDegree { degree } => {
                let mut s = ser.serialize_struct("Obstruction", 2)?;
                s.serialize_field("kind", "odd_degree")?;
                s.serialize_field("degree", degree)?;
                s.end()
            }
            Obstruction::NegativeWitness { point, value } => {
                let mut s = ser.serialize_struct("Obstruction", 3)?;
                s.serialize_field("kind", "negative_witness")?;
                let point: Vec<String> = point.iter().map(rational_to_string).collect();
                s.serialize_field("point", &point)?;
                s.serialize_field("value", &rational_to_string(value))?;
                s.end()
            }
        }
    }
}

#[derive(Serialize, Deserialize)]
struct SosTermDto {
    coef: String,
    poly: Polynomial,
}

#[derive(Serialize, Deserialize)]
struct CertificateDto {
    kind: String,
    params: serde_json::Value,
    base_poly: Polynomial,
    #[serde(skip_serializing_if = "Option::is_none")]
    sos: Option<Vec<SosTermDto>>,
    verified: bool,
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde_json::json;
        let (params, sos) = match &self.kind {
            CertificateKind::Square { alpha, sigma } => (
                json!({"alpha": alpha, "sigma": sigma.as_slice(), "shift": self.shift}),
                None,
            ),
            CertificateKind::Sandwich { a, b, c } => {
                (json!({"a": a, "b": b, "c": c, "shift": self.shift}), None)
            }
            CertificateKind::AgmSos { alpha, sos } => (
                json!({"alpha": alpha, "shift": self.shift}),
                Some(
                    sos.squares
                        .iter()
                        .map(|(c, p)| SosTermDto {
                            coef: rational_to_string(c),
                            poly: p.clone(),
                        })
                        .collect(),
                ),
            ),
            CertificateKind::UnivariateMin { half_degree, lower_coeffs, bound } => (
                json!({
                    "k": half_degree,
                    "a": lower_coeffs.iter().map(rational_to_string).collect::<Vec<_>>(),
                    "bound": rational_to_string(bound),
                    "shift": self.shift,
                }),
                None,
            ),
            CertificateKind::BinaryPsd => (json!({"shift": self.shift}), None),
        };
        CertificateDto {
            kind: self.kind.name().to_string(),
            params,
            base_poly: self.base.clone(),
            sos,
            verified: self.verify(),
        }
        .serialize(ser)
    }
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serialization cannot fail")
    }

    /// Load a certificate; the stored "verified" flag is ignored and the
    /// verdict recomputed by [`Certificate::verify`].
    pub fn from_json(text: &str) -> Result<(Certificate, bool)> {
        let dto: CertificateDto = serde_json::from_str(text)?;
        let get_u32 = |key: &str| -> Result<u32> {
            dto.params
                .get(key)
                .and_then(|v| v.as_u64())
                .map(|v| v as u32)
                .ok_or_else(|| Error::InvalidArgument(format!("missing parameter {key:?}")))
        };
        let shift = dto.params.get("shift").and_then(|v| v.as_u64()).unwrap_or(0) as u32;
        let get_u32_list = |key: &str| -> Result<Vec<u32>> {
            dto.params
                .get(key)
                .and_then(|v| v.as_array())
                .map(|items| {
                    items
                        .iter()
                        .map(|v| {
                            v.as_u64().map(|x| x as u32).ok_or_else(|| {
                                Error::InvalidArgument(format!("bad entry in {key:?}"))
                            })
                        })
                        .collect::<Result<Vec<u32>>>()
                })
                .ok_or_else(|| Error::InvalidArgument(format!("missing parameter {key:?}")))?
        };
        let kind = match dto.kind.as_str() {
            "square" => {
                let alpha = get_u32_list("alpha")?;
                let sigma = get_u32_list("sigma")?
                    .into_iter()
                    .map(|v| v as usize)
                    .collect::<Vec<_>>();
                CertificateKind::Square { alpha, sigma: Permutation::new(sigma)? }
            }
            "sandwich" => CertificateKind::Sandwich {
                a: get_u32("a")?,
                b: get_u32("b")?,
                c: get_u32("c")?,
            },
            "agm_sos" => {
                let alpha = get_u32_list("alpha")?;
                let squares = dto
                    .sos
                    .unwrap_or_default()
                    .into_iter()
                    .map(|t| Ok((parse_rational(&t.coef)?, t.poly)))
                    .collect::<Result<Vec<_>>>()?;
                CertificateKind::AgmSos { alpha, sos: SosDecomposition { squares } }
            }
            "univariate_min" => {
                let lower_coeffs = dto
                    .params
                    .get("a")
                    .and_then(|v| v.as_array())
                    .ok_or_else(|| Error::InvalidArgument("missing parameter \"a\"".into()))?
                    .iter()
                    .map(|v| {
                        v.as_str()
                            .ok_or_else(|| Error::InvalidArgument("bad entry in \"a\"".into()))
                            .and_then(parse_rational)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let bound = dto
                    .params
                    .get("bound")
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::InvalidArgument("missing parameter \"bound\"".into()))
                    .and_then(parse_rational)?;
                CertificateKind::UnivariateMin { half_degree: get_u32("k")?, lower_coeffs, bound }
            }
            "binary_psd" => CertificateKind::BinaryPsd,
            other => {
                return Err(Error::InvalidArgument(format!("unknown certificate kind {other:?}")))
            }
        };
        let certificate = Certificate { kind, base: dto.base_poly, shift };
        let verified = certificate.verify();
        Ok((certificate, verified))
    }
}
