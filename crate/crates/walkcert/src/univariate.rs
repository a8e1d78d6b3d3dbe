//! Univariate polynomials over the rationals: Sturm sequences, real-root
//! isolation, exact global nonnegativity, and certified lower bounds on
//! global minima.
//!
//! Root counting follows the classical half-open convention: the count
//! over `(lo, hi]` is the drop in Sturm sign changes from `lo` to `hi`,
//! so counts over adjacent intervals add.

use crate::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients lowest-degree first; trailing zeros trimmed, so the last
/// entry of a nonzero polynomial is its leading coefficient.
#[derive(Clone, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<BigRational>,
}

/// Enclosure of one real root of a square-free polynomial.
#[derive(Clone, Debug, PartialEq)]
pub enum RootEnclosure {
    Exact(BigRational),
    /// Half-open `(lo, hi]` containing exactly one root.
    Interval(BigRational, BigRational),
}

/// Exact decision of `u(x) >= 0` for all real `x`.
#[derive(Clone, Debug, PartialEq)]
pub enum NonnegDecision {
    Nonnegative,
    Negative { witness: BigRational, value: BigRational },
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from(BigInt::from(c))).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::ratio::rational_to_f64(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out[i] += c;
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn sub_constant(&self, c: &BigRational) -> Self {
        self.sub(&Self::constant(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Long division: `self = q·divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.coeffs.len() - 1;
        let lead = divisor.leading_coefficient().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = &rem[i] / &lead;
            quot[i - dd] = factor.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let delta = &factor * c;
                rem[i - dd + j] -= delta;
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if let Some(lead) = a.leading_coefficient().cloned() {
            a = a.scale(&(BigRational::one() / lead));
        }
        a
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// `self / gcd(self, self')`: same real roots, all simple.
    pub fn square_free_part(&self) -> Self {
        if self.is_zero() || self.coeffs.len() == 1 {
            return self.clone();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Scale by a positive rational so the coefficients become a primitive
    /// integer vector; signs are preserved, which is all Sturm theory needs.
    fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in &self.coeffs {
            denom_lcm = num::integer::lcm(denom_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&denom_lcm / c.denom()))
            .collect();
        let mut numer_gcd = BigInt::zero();
        for i in &ints {
            numer_gcd = num::integer::gcd(numer_gcd, i.clone());
        }
        Self::new(
            ints.into_iter()
                .map(|i| BigRational::from(i / &numer_gcd))
                .collect(),
        )
    }

    /// Cauchy bound: every real root has absolute value `< 1 + max |a_i| / |a_d|`.
    pub fn root_bound(&self) -> BigRational {
        let lead = self
            .leading_coefficient()
            .expect("root bound of a nonzero polynomial")
            .abs();
        let max = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .map(Signed::abs)
            .max()
            .unwrap_or_else(BigRational::zero);
        BigRational::one() + max / lead
    }

    /// Sturm chain of `self`: negated remainder sequence, entries scaled
    /// primitive to keep the arithmetic small.
    pub fn sturm_chain(&self) -> Vec<Self> {
        let mut chain = vec![self.primitive()];
        let d = self.derivative();
        if d.is_zero() {
            return chain;
        }
        chain.push(d.primitive());
        loop {
            let len = chain.len();
            let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg().primitive());
        }
        chain
    }

    /// Count distinct real roots in `(lo, hi]` by Sturm's theorem; the
    /// polynomial is square-free-normalized internally.
    pub fn count_roots_in(&self, lo: &BigRational, hi: &BigRational) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "root counting rejects the zero polynomial".into(),
            ));
        }
        if lo >= hi {
            return Err(Error::InvalidArgument("need lo < hi for (lo, hi]".into()));
        }
        let chain = self.square_free_part().sturm_chain();
        Ok(sign_changes(&chain, lo) - sign_changes(&chain, hi))
    }

    /// Count all distinct real roots.
    pub fn count_real_roots(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "root counting rejects the zero polynomial".into(),
            ));
        }
        if self.coeffs.len() == 1 {
            return Ok(0);
        }
        let bound = self.root_bound();
        self.count_roots_in(&-bound.clone(), &bound)
    }

    /// Isolate every distinct real root into disjoint enclosures, in
    /// ascending order.
    pub fn isolate_real_roots(&self) -> Result<Vec<RootEnclosure>> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "root isolation rejects the zero polynomial".into(),
            ));
        }
        let sf = self.square_free_part();
        if sf.coeffs.len() == 1 {
            return Ok(Vec::new());
        }
        let chain = sf.sturm_chain();
        let bound = sf.root_bound();
        let mut out = Vec::new();
        isolate_recursive(&sf, &chain, &-bound.clone(), &bound, &mut out);
        Ok(out)
    }

    /// Decide `self(x) >= 0` for all real `x`, exactly. A `Negative`
    /// verdict carries a rational witness evaluating strictly below zero.
    pub fn nonnegative_everywhere(&self) -> NonnegDecision {
        if self.is_zero() {
            return NonnegDecision::Nonnegative;
        }
        if self.coeffs.len() == 1 {
            let c = self.coeffs[0].clone();
            return if c.is_negative() {
                NonnegDecision::Negative { witness: BigRational::zero(), value: c }
            } else {
                NonnegDecision::Nonnegative
            };
        }
        let degree = self.coeffs.len() - 1;
        let lead = self.leading_coefficient().unwrap();
        // outside the root bound the sign is the sign of the leading term
        let bound = self.root_bound();
        if lead.is_negative() {
            let value = self.eval(&bound);
            debug_assert!(value.is_negative());
            return NonnegDecision::Negative { witness: bound, value };
        }
        if degree % 2 == 1 {
            let witness = -bound;
            let value = self.eval(&witness);
            debug_assert!(value.is_negative());
            return NonnegDecision::Negative { witness, value };
        }
        let sf = self.square_free_part();
        let enclosures = match self.isolate_real_roots() {
            Ok(e) => e,
            Err(_) => return NonnegDecision::Nonnegative,
        };
        for enclosure in enclosures {
            match enclosure {
                RootEnclosure::Exact(root) => {
                    if self.root_multiplicity(&root) % 2 == 1 {
                        let (witness, value) = self.negative_near_odd_root(&root);
                        return NonnegDecision::Negative { witness, value };
                    }
                }
                RootEnclosure::Interval(mut lo, mut hi) => {
                    // shrink until both endpoint values are nonzero, then
                    // a negative endpoint witnesses a sign change
                    loop {
                        let at_hi = self.eval(&hi);
                        if at_hi.is_zero() {
                            if self.root_multiplicity(&hi) % 2 == 1 {
                                let (witness, value) = self.negative_near_odd_root(&hi);
                                return NonnegDecision::Negative { witness, value };
                            }
                            break;
                        }
                        if at_hi.is_negative() {
                            return NonnegDecision::Negative { witness: hi, value: at_hi };
                        }
                        let at_lo = self.eval(&lo);
                        if at_lo.is_negative() {
                            return NonnegDecision::Negative { witness: lo, value: at_lo };
                        }
                        if !at_lo.is_zero() {
                            break; // both endpoints positive: even multiplicity inside
                        }
                        let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
                        if sf
                            .count_roots_in(&lo, &mid)
                            .expect("square-free part is nonzero")
                            == 1
                        {
                            hi = mid;
                        } else {
                            lo = mid;
                        }
                    }
                }
            }
        }
        NonnegDecision::Nonnegative
    }

    fn root_multiplicity(&self, root: &BigRational) -> usize {
        let linear = Self::new(vec![-root.clone(), BigRational::one()]);
        let mut count = 0;
        let mut h = self.clone();
        while !h.is_zero() && h.eval(root).is_zero() {
            h = h.div_rem(&linear).0;
            count += 1;
        }
        count
    }

    /// Probe shrinking offsets around an odd-multiplicity root until the
    /// negative side is found.
    fn negative_near_odd_root(&self, root: &BigRational) -> (BigRational, BigRational) {
        let mut delta = BigRational::one();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        loop {
            for candidate in [root - &delta, root + &delta] {
                let value = self.eval(&candidate);
                if value.is_negative() {
                    return (candidate, value);
                }
            }
            delta *= &half;
        }
    }

    /// A certified rational `L` with `self(x) - L >= 0` everywhere and
    /// `L >= min(self) - tol`. Requires even degree and a positive leading
    /// coefficient. Critical points are isolated by Sturm bisection and the
    /// final bound is re-verified exactly, so `L` is sound regardless of
    /// how tight the enclosures are.
    pub fn certified_global_min_bound(&self, tol: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Err(Error::InvalidArgument(
                "global minimum of the zero polynomial is degenerate".into(),
            ));
        }
        if !tol.is_positive() {
            return Err(Error::InvalidArgument("tolerance must be positive".into()));
        }
        let degree = self.coeffs.len() - 1;
        if degree % 2 == 1 {
            return Err(Error::InvalidArgument(
                "global minimum bound needs even degree".into(),
            ));
        }
        if !self.leading_coefficient().unwrap().is_positive() {
            return Err(Error::InvalidArgument(
                "global minimum bound needs a positive leading coefficient".into(),
            ));
        }
        if degree == 0 {
            return Ok(self.coeffs[0].clone());
        }

        let derivative = self.derivative();
        let sf = derivative.square_free_part();
        let exact_roots = small_rational_roots(&sf);
        let enclosures = derivative.isolate_real_roots()?;

        // |self'| <= M on the interval covering all enclosures
        let radius = {
            let b = sf.root_bound();
            if b < BigRational::one() { BigRational::one() } else { b }
        };
        let mut slope_bound = BigRational::zero();
        let mut power = BigRational::one();
        for c in derivative.coefficients() {
            slope_bound += c.abs() * &power;
            power *= &radius;
        }
        if slope_bound < BigRational::one() {
            slope_bound = BigRational::one();
        }
        let two = BigRational::from(BigInt::from(2));
        let width_target = tol / (&two * &slope_bound);

        let mut candidate: Option<BigRational> = None;
        let mut note = |v: BigRational| {
            if candidate.as_ref().is_none_or(|c| v < *c) {
                candidate = Some(v);
            }
        };
        for enclosure in enclosures {
            // rational critical points give the minimum exactly
            if let RootEnclosure::Interval(lo, hi) = &enclosure {
                if let Some(r) = exact_roots.iter().find(|r| *r > lo && *r <= hi) {
                    note(self.eval(r));
                    continue;
                }
            }
            match refine_enclosure(&sf, enclosure, &width_target) {
                RootEnclosure::Exact(r) => note(self.eval(&r)),
                RootEnclosure::Interval(lo, hi) => {
                    note(self.eval(&lo));
                    note(self.eval(&hi));
                }
            }
        }
        let candidate = candidate.unwrap_or_else(|| self.eval(&BigRational::zero()));

        // exact minima verify as-is; otherwise back off half a tolerance,
        // which provably drops below the true minimum
        let mut bound = candidate;
        for attempt in 0..64 {
            if self.sub_constant(&bound).nonnegative_everywhere() == NonnegDecision::Nonnegative {
                return Ok(bound);
            }
            bound -= if attempt == 0 { tol / &two } else { tol.clone() };
        }
        Err(Error::Verification(
            "global minimum bound failed to verify after backing off".into(),
        ))
    }
}

impl fmt::Debug for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                1 => format!("{c}*x"),
                _ => format!("{c}*x^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn sign_changes(chain: &[UnivariatePolynomial], x: &BigRational) -> usize {
    let mut changes = 0;
    let mut last: Option<bool> = None; // sign as is_positive
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let positive = v.is_positive();
        if let Some(prev) = last {
            if prev != positive {
                changes += 1;
            }
        }
        last = Some(positive);
    }
    changes
}

fn isolate_recursive(
    sf: &UnivariatePolynomial,
    chain: &[UnivariatePolynomial],
    lo: &BigRational,
    hi: &BigRational,
    out: &mut Vec<RootEnclosure>,
) {
    let count = sign_changes(chain, lo) - sign_changes(chain, hi);
    if count == 0 {
        return;
    }
    if count == 1 {
        if sf.eval(hi).is_zero() {
            out.push(RootEnclosure::Exact(hi.clone()));
        } else {
            out.push(RootEnclosure::Interval(lo.clone(), hi.clone()));
        }
        return;
    }
    let mid = (lo + hi) / BigRational::from(BigInt::from(2));
    isolate_recursive(sf, chain, lo, &mid, out);
    isolate_recursive(sf, chain, &mid, hi, out);
}

/// Rational roots of a square-free polynomial by the rational root
/// theorem on its primitive integer form. Returns an empty list when the
/// boundary coefficients are too large to factor cheaply; callers treat
/// this purely as a missed shortcut.
fn small_rational_roots(sf: &UnivariatePolynomial) -> Vec<BigRational> {
    use num::traits::ToPrimitive;
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let prim = sf.primitive();
    let coeffs = prim.coefficients();
    let first_nonzero = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    let mut roots = Vec::new();
    if first_nonzero > 0 {
        roots.push(BigRational::zero());
    }
    let constant = coeffs[first_nonzero].numer().abs();
    let leading = coeffs.last().unwrap().numer().abs();
    let (Some(constant), Some(leading)) = (constant.to_u64(), leading.to_u64()) else {
        return roots;
    };
    if constant > 1_000_000 || leading > 1_000_000 {
        return roots;
    }
    for p in divisors(constant) {
        for q in divisors(leading) {
            let candidate = BigRational::new(BigInt::from(p), BigInt::from(q));
            for signed in [candidate.clone(), -candidate] {
                if sf.eval(&signed).is_zero() && !roots.contains(&signed) {
                    roots.push(signed);
                }
            }
        }
    }
    roots.sort();
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            if d != n / d {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Shrink an interval enclosure below `width`, switching to `Exact` if a
/// bisection midpoint hits the root.
fn refine_enclosure(
    sf: &UnivariatePolynomial,
    enclosure: RootEnclosure,
    width: &BigRational,
) -> RootEnclosure {
    let RootEnclosure::Interval(mut lo, mut hi) = enclosure else {
        return enclosure;
    };
    let two = BigRational::from(BigInt::from(2));
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        if sf.eval(&mid).is_zero() {
            return RootEnclosure::Exact(mid);
        }
        if sf.count_roots_in(&lo, &mid).expect("nonzero square-free part") == 1 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    RootEnclosure::Interval(lo, hi)
}
