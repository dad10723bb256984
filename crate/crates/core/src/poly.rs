//! Exact integer-coefficient polynomial algebra.
//!
//! Dense arbitrary-precision polynomials with the machinery the counting
//! theorems need: exact rational evaluation, formal derivatives, the (x+1)
//! basis change together with its binomial inversion, rational-root
//! classification, and Sturm-sequence real-root counting. All root decisions
//! are made over exact rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

pub use num_rational::BigRational as Rational;

/// Binomial coefficient as a big integer; 0 when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// Dense integer polynomial. `coeffs[i]` is the coefficient of `x^i`; the
/// vector carries no trailing zeros, so the zero polynomial is the empty
/// vector and the canonical form is unique.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

/// Coefficients of a polynomial rewritten in powers of (x+1):
/// `p(x) = sum_i b[i] * (x+1)^i`. Trailing zeros are trimmed, so the
/// round trip with [`IntPolynomial`] is exact and canonical.
#[derive(Clone, PartialEq, Eq, Default, Debug)]
pub struct ShiftedCoefficients {
    b: Vec<BigInt>,
}

/// A verified rational root, annotated with `t` when it has the shape
/// `-(t+1)/t` for a positive integer `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalRoot {
    pub value: BigRational,
    pub t: Option<BigInt>,
}

/// Outcome of the unimodality scan. `violation_index` points at the valley
/// coefficient where the sequence rises again after having fallen.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Unimodality {
    pub unimodal: bool,
    pub violation_index: Option<usize>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::new(vec![BigInt::one()])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) - other.coeff(i));
        }
        IntPolynomial::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact value at a rational point, by Horner's rule.
    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// `order`-th formal derivative; `order = 0` is the identity.
    pub fn derivative(&self, order: usize) -> Self {
        let mut cur = self.clone();
        for _ in 0..order {
            if cur.is_zero() {
                return cur;
            }
            let next: Vec<BigInt> = cur
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect();
            cur = IntPolynomial::new(next);
        }
        cur
    }

    /// Rewrite in powers of (x+1): `b[j] = sum_k (-1)^(k-j) C(k,j) coeff[k]`.
    pub fn to_shifted(&self) -> ShiftedCoefficients {
        let n = self.coeffs.len();
        let mut b = Vec::with_capacity(n);
        for j in 0..n {
            let mut acc = BigInt::zero();
            for (k, c) in self.coeffs.iter().enumerate().skip(j) {
                let term = binomial(k, j) * c;
                if (k - j) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            b.push(acc);
        }
        ShiftedCoefficients::new(b)
    }

    /// All rational roots, found by the rational-root theorem and verified by
    /// exact evaluation. Each root of the shape `-(t+1)/t` carries its `t`.
    pub fn rational_roots(&self) -> Result<Vec<RationalRoot>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        // Strip x^k so the constant term of the remaining factor is nonzero.
        let mut low = 0;
        while self.coeffs[low].is_zero() {
            low += 1;
        }
        let reduced = &self.coeffs[low..];
        let mut roots = Vec::new();
        if low > 0 {
            roots.push(BigRational::zero());
        }
        if reduced.len() > 1 {
            let constant = reduced[0].magnitude().clone();
            let leading = reduced[reduced.len() - 1].magnitude().clone();
            let nums = divisors(&BigInt::from(constant))?;
            let dens = divisors(&BigInt::from(leading))?;
            for num in &nums {
                for den in &dens {
                    if num.gcd(den) != BigInt::one() {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let cand = BigRational::new(num * BigInt::from(sign), den.clone());
                        if self.evaluate(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort();
        Ok(roots
            .into_iter()
            .map(|value| {
                let t = t_annotation(&value);
                RationalRoot { value, t }
            })
            .collect())
    }

    /// Exact count of distinct real roots in the interval between `lo` and
    /// `hi` with the given endpoint closures, via a Sturm sequence of the
    /// square-free part.
    pub fn count_real_roots(
        &self,
        lo: &BigRational,
        hi: &BigRational,
        closed_lo: bool,
        closed_hi: bool,
    ) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if lo > hi {
            return Err(Error::Invalid(format!(
                "empty interval: lo {lo} exceeds hi {hi}"
            )));
        }
        let q = square_free(&RatPoly::from_int(self));
        let at = |x: &BigRational| q.eval(x).is_zero();
        if lo == hi {
            return Ok(usize::from(closed_lo && closed_hi && at(lo)));
        }
        let chain = sturm_chain(&q);
        let v_lo = sign_variations(&chain, lo);
        let v_hi = sign_variations(&chain, hi);
        // With zeros dropped, V is the right limit of the variation count, so
        // V(lo) - V(hi) counts roots in (lo, hi], including hi when it is one.
        let mut count = v_lo - v_hi;
        if at(hi) && !closed_hi {
            count -= 1;
        }
        if at(lo) && closed_lo {
            count += 1;
        }
        Ok(usize::try_from(count).expect("sign variation count is nonnegative"))
    }

    /// Roots in `[lo, +inf)` (or `(lo, +inf)` when `closed` is false). The
    /// upper end is replaced by a Cauchy bound, beyond which no root lives.
    pub fn count_real_roots_from(&self, lo: &BigRational, closed: bool) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let bound = self.cauchy_bound();
        if *lo >= bound {
            let is_root = self.evaluate(lo).is_zero();
            return Ok(usize::from(closed && is_root));
        }
        self.count_real_roots(lo, &bound, closed, true)
    }

    /// `1 + max|c_i| / |c_n|`; every real root lies strictly inside
    /// `(-bound, bound)`.
    pub fn cauchy_bound(&self) -> BigRational {
        let Some(deg) = self.degree() else {
            return BigRational::one();
        };
        let lead = self.coeffs[deg].clone();
        let mut max = BigRational::zero();
        for c in &self.coeffs[..deg] {
            let ratio = BigRational::new(c.abs(), lead.abs());
            if ratio > max {
                max = ratio;
            }
        }
        max + BigRational::one()
    }

    /// Weakly rising then weakly falling coefficient sequence.
    pub fn is_unimodal(&self) -> Unimodality {
        let mut falling = false;
        for i in 1..self.coeffs.len() {
            if self.coeffs[i] > self.coeffs[i - 1] {
                if falling {
                    return Unimodality {
                        unimodal: false,
                        violation_index: Some(i - 1),
                    };
                }
            } else if self.coeffs[i] < self.coeffs[i - 1] {
                falling = true;
            }
        }
        Unimodality {
            unimodal: true,
            violation_index: None,
        }
    }

    /// JSON shape `{"coeffs": ["c0", "c1", ...]}` with decimal strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "coeffs": decimal_strings(&self.coeffs) })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .get("coeffs")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Invalid("expected {\"coeffs\": [...]} ".into()))?;
        parse_decimal_strings(arr).map(IntPolynomial::new)
    }
}

impl ShiftedCoefficients {
    pub fn new(mut b: Vec<BigInt>) -> Self {
        while b.last().is_some_and(|c| c.is_zero()) {
            b.pop();
        }
        ShiftedCoefficients { b }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.b
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.b.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Back to the monomial basis: `coeff[i] = sum_k b[k] C(k,i)`.
    pub fn to_polynomial(&self) -> IntPolynomial {
        let n = self.b.len();
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = BigInt::zero();
            for (k, bk) in self.b.iter().enumerate().skip(i) {
                acc += binomial(k, i) * bk;
            }
            coeffs.push(acc);
        }
        IntPolynomial::new(coeffs)
    }

    /// JSON shape `{"shifted": ["b0", "b1", ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "shifted": decimal_strings(&self.b) })
    }
}

fn decimal_strings(values: &[BigInt]) -> Vec<String> {
    values.iter().map(|c| c.to_string()).collect()
}

fn parse_decimal_strings(arr: &[serde_json::Value]) -> Result<Vec<BigInt>> {
    arr.iter()
        .map(|v| {
            v.as_str()
                .and_then(|s| s.parse::<BigInt>().ok())
                .ok_or_else(|| Error::Invalid(format!("bad coefficient {v}")))
        })
        .collect()
}

/// `t` such that `value = -(t+1)/t` with integer `t >= 1`, if any.
fn t_annotation(value: &BigRational) -> Option<BigInt> {
    // value = -(t+1)/t  <=>  t = -1/(value+1), requiring an integer >= 1.
    let shifted = value + BigRational::one();
    if shifted.is_zero() {
        return None;
    }
    let t = -shifted.recip();
    if t.is_integer() && t >= BigRational::one() {
        Some(t.to_integer())
    } else {
        None
    }
}

/// Positive divisors of `|n|`, by trial division. Enumeration is refused when
/// the square root of `|n|` exceeds a desk-scale budget.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    const BUDGET: u64 = 100_000_000;
    let n = n.abs();
    if n.is_zero() {
        return Err(Error::Invalid("divisors of zero requested".into()));
    }
    let root = n.sqrt();
    let Some(root) = root.to_u64_digits().1.first().copied().filter(|_| root.bits() <= 64) else {
        return Err(Error::SizeBound {
            what: "rational-root divisor enumeration",
            bound: BUDGET as usize,
            got: usize::MAX,
        });
    };
    if root > BUDGET {
        return Err(Error::SizeBound {
            what: "rational-root divisor enumeration",
            bound: BUDGET as usize,
            got: root as usize,
        });
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    for d in 1..=root {
        let d_big = BigInt::from(d);
        if (&n % &d_big).is_zero() {
            large.push(&n / &d_big);
            small.push(d_big);
        }
    }
    large.reverse();
    if small.last() == large.first() {
        large.remove(0);
    }
    small.extend(large);
    Ok(small)
}

/// Minimal dense rational polynomial used only by the root machinery.
#[derive(Clone, Debug, PartialEq)]
struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    fn from_int(p: &IntPolynomial) -> Self {
        RatPoly::new(
            p.coeffs
                .iter()
                .map(|c| BigRational::from(c.clone()))
                .collect(),
        )
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    fn derivative(&self) -> Self {
        RatPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from(BigInt::from(i)))
                .collect(),
        )
    }

    fn neg(&self) -> Self {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    /// Remainder of self by divisor (long division).
    fn rem(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero());
        let mut rem = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = &divisor.coeffs[dd];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().expect("nonempty") / lead;
            for i in 0..=dd {
                let adj = &factor * &divisor.coeffs[i];
                rem[shift + i] -= adj;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
            if rem.is_empty() {
                break;
            }
        }
        RatPoly::new(rem)
    }

    /// Exact quotient; panics unless divisor divides self exactly.
    fn div_exact(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero());
        if self.is_zero() {
            return RatPoly::new(Vec::new());
        }
        let dd = divisor.degree();
        let lead = &divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let factor = rem.last().expect("nonempty") / lead;
            quot[shift] = factor.clone();
            for i in 0..=dd {
                let adj = &factor * &divisor.coeffs[i];
                rem[shift + i] -= adj;
            }
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        assert!(rem.is_empty(), "division was not exact");
        RatPoly::new(quot)
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // Monic normal form.
        let lead = a.coeffs[a.degree()].clone();
        RatPoly::new(a.coeffs.iter().map(|c| c / &lead).collect())
    }
}

fn square_free(p: &RatPoly) -> RatPoly {
    if p.is_zero() || p.degree() == 0 {
        return p.clone();
    }
    let g = p.gcd(&p.derivative());
    if g.degree() == 0 {
        p.clone()
    } else {
        p.div_exact(&g)
    }
}

fn sturm_chain(q: &RatPoly) -> Vec<RatPoly> {
    let mut chain = vec![q.clone()];
    if q.is_zero() || q.degree() == 0 {
        return chain;
    }
    chain.push(q.derivative());
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]).neg();
        if r.is_zero() {
            return chain;
        }
        chain.push(r);
    }
}

/// Sign variations of the chain at `x`, zeros dropped.
fn sign_variations(chain: &[RatPoly], x: &BigRational) -> isize {
    let mut variations = 0;
    let mut prev = 0i8;
    for member in chain {
        let v = member.eval(x);
        let s = if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        };
        if s != 0 {
            if prev != 0 && s != prev {
                variations += 1;
            }
            prev = s;
        }
    }
    variations
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write_basis(f, &self.coeffs, "x")
    }
}

impl std::fmt::Display for ShiftedCoefficients {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write_basis(f, &self.b, "(x+1)")
    }
}

fn write_basis(
    f: &mut std::fmt::Formatter<'_>,
    coeffs: &[BigInt],
    var: &str,
) -> std::fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match i {
            0 => write!(f, "{mag}")?,
            _ => {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                write!(f, "{var}")?;
                if i > 1 {
                    write!(f, "^{i}")?;
                }
            }
        }
    }
    Ok(())
}
