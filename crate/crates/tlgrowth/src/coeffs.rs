//! Exact scalar arithmetic: the coefficient field ℚ(t, t1, t2).
//!
//! Scalars are rational functions in the three deformation parameters with
//! arbitrary-precision rational coefficients. Every value is kept in a
//! canonical form — numerator and denominator coprime, the denominator monic
//! under a fixed monomial order on the parameters, zero stored uniquely as
//! 0/1 — so that structural equality is semantic equality and results are
//! bit-reproducible across runs. There is no floating point anywhere.
//!
//! The monomial order used for canonicalization is degree-lexicographic with
//! t < t1 < t2. Any fixed admissible order would do; this one is pinned so
//! canonical forms never depend on insertion order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Number of parameter indeterminates (t, t1, t2).
pub const NUM_PARAMS: usize = 3;

/// One of the deformation parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Param {
    /// `t` — the coefficient attached to labels 3, 4 and ≥ 6.
    T,
    /// `t1` — the cubic-term coefficient attached to label 5.
    T1,
    /// `t2` — the linear-term coefficient attached to label 5.
    T2,
}

impl Param {
    /// All parameters, in canonical order.
    pub const ALL: [Param; NUM_PARAMS] = [Param::T, Param::T1, Param::T2];

    /// Index into exponent vectors.
    fn index(self) -> usize {
        match self {
            Param::T => 0,
            Param::T1 => 1,
            Param::T2 => 2,
        }
    }

    /// The textual name used by the renderer and parser.
    pub fn name(self) -> &'static str {
        match self {
            Param::T => "t",
            Param::T1 => "t1",
            Param::T2 => "t2",
        }
    }

    fn from_index(i: usize) -> Param {
        Param::ALL[i]
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A parameter monomial: an exponent vector over (t, t1, t2).
///
/// Ordered degree-lexicographically with t < t1 < t2 (total degree first,
/// then the exponent of the largest parameter decides).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
struct Mono([u16; NUM_PARAMS]);

impl Mono {
    const ONE: Mono = Mono([0; NUM_PARAMS]);

    fn var(p: Param) -> Mono {
        let mut e = [0; NUM_PARAMS];
        e[p.index()] = 1;
        Mono(e)
    }

    fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Mono) -> Mono {
        let mut e = [0; NUM_PARAMS];
        for (out, (a, b)) in e.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *out = a + b;
        }
        Mono(e)
    }

    /// Componentwise division; `None` when not divisible.
    fn div(&self, other: &Mono) -> Option<Mono> {
        let mut e = [0; NUM_PARAMS];
        for (out, (a, b)) in e.iter_mut().zip(self.0.iter().zip(&other.0)) {
            *out = a.checked_sub(*b)?;
        }
        Some(Mono(e))
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0[2].cmp(&other.0[2]))
            .then_with(|| self.0[1].cmp(&other.0[1]))
            .then_with(|| self.0[0].cmp(&other.0[0]))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A multivariate polynomial in (t, t1, t2) over ℚ.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
struct MPoly {
    terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    fn zero() -> MPoly {
        MPoly::default()
    }

    fn one() -> MPoly {
        MPoly::constant(BigRational::one())
    }

    fn constant(c: BigRational) -> MPoly {
        let mut p = MPoly::zero();
        if !c.is_zero() {
            p.terms.insert(Mono::ONE, c);
        }
        p
    }

    fn var(p: Param) -> MPoly {
        let mut poly = MPoly::zero();
        poly.terms.insert(Mono::var(p), BigRational::one());
        poly
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn is_constant(&self) -> bool {
        self.terms.keys().all(Mono::is_one)
    }

    /// The constant value, if this polynomial is constant.
    fn as_constant(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            self.terms.get(&Mono::ONE).cloned()
        } else {
            None
        }
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    fn neg(&self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }

    fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    /// Leading (monomial, coefficient) under the canonical order.
    fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact multivariate division; `None` when `other` does not divide.
    fn exact_div(&self, other: &MPoly) -> Option<MPoly> {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        let (lm, lc) = {
            let (m, c) = other.leading().unwrap();
            (*m, c.clone())
        };
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (*m, c.clone())) {
            let qm = rm.div(&lm)?;
            let qc = rc / &lc;
            let mut t = MPoly::zero();
            t.terms.insert(qm, qc.clone());
            rem = rem.sub(&other.mul(&t));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Degree in a single parameter.
    fn degree_in(&self, v: usize) -> u16 {
        self.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    /// Highest parameter index that actually occurs, if any.
    fn max_var(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        for m in self.terms.keys() {
            for v in (0..NUM_PARAMS).rev() {
                if m.0[v] > 0 {
                    best = Some(best.map_or(v, |b| b.max(v)));
                    break;
                }
            }
        }
        best
    }

    /// View as a univariate polynomial in parameter `v` with `MPoly`
    /// coefficients (keyed by the exponent of `v`).
    fn to_univariate(&self, v: usize) -> BTreeMap<u16, MPoly> {
        let mut out: BTreeMap<u16, MPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[v];
            let mut rest = *m;
            rest.0[v] = 0;
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn from_univariate(coeffs: &BTreeMap<u16, MPoly>, v: usize) -> MPoly {
        let mut out = MPoly::zero();
        for (e, p) in coeffs {
            for (m, c) in &p.terms {
                let mut m = *m;
                m.0[v] += e;
                out.add_term(m, c.clone());
            }
        }
        out
    }

    /// Content with respect to parameter `v`: the gcd of the univariate
    /// coefficients.
    fn content(&self, v: usize) -> MPoly {
        let mut g = MPoly::zero();
        for p in self.to_univariate(v).values() {
            g = mpoly_gcd(&g, p);
            if g.is_constant() && !g.is_zero() {
                break;
            }
        }
        g
    }

    /// Scale so the leading coefficient is 1 (no-op on zero).
    fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, lc)) => {
                let inv = BigRational::one() / lc;
                self.scale(&inv)
            }
        }
    }

    /// Substitute the given parameters by rationals, keeping the rest
    /// symbolic.
    fn substitute(&self, assignment: &BTreeMap<Param, BigRational>) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = *m;
            for (p, val) in assignment {
                let e = rest.0[p.index()];
                if e > 0 {
                    coeff *= pow_rational(val, e);
                    rest.0[p.index()] = 0;
                }
            }
            out.add_term(rest, coeff);
        }
        out
    }

    /// Parameters that occur with positive exponent.
    fn params_present(&self) -> Vec<Param> {
        let mut present = [false; NUM_PARAMS];
        for m in self.terms.keys() {
            for (flag, &exp) in present.iter_mut().zip(&m.0) {
                if exp > 0 {
                    *flag = true;
                }
            }
        }
        (0..NUM_PARAMS)
            .filter(|&v| present[v])
            .map(Param::from_index)
            .collect()
    }
}

fn pow_rational(base: &BigRational, exp: u16) -> BigRational {
    let mut acc = BigRational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

/// Gcd of two polynomials over ℚ, returned primitive and monic in the
/// canonical order. Degrees here are tiny (they come from leading
/// coefficients of rewriting intermediates), so a primitive pseudo-remainder
/// sequence is more than enough.
fn mpoly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    let v = a
        .max_var()
        .into_iter()
        .chain(b.max_var())
        .max()
        .expect("non-constant polynomials have a variable");

    let ca = a.content(v);
    let cb = b.content(v);
    let mut pa = a.exact_div(&ca).expect("content divides");
    let mut pb = b.exact_div(&cb).expect("content divides");
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    loop {
        let r = pseudo_rem(&pa, &pb, v);
        if r.is_zero() {
            break;
        }
        let rc = r.content(v);
        pa = pb;
        pb = r.exact_div(&rc).expect("content divides");
    }
    let cg = mpoly_gcd(&ca, &cb);
    cg.mul(&pb).monic()
}

/// Pseudo-remainder of `a` by `b` in parameter `v` (both nonzero,
/// deg_v(a) ≥ deg_v(b) not required). The result is `a` reduced below
/// deg_v(b), up to multiplication by powers of b's leading coefficient —
/// exactly what a primitive remainder sequence needs.
fn pseudo_rem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v);
    let ub = b.to_univariate(v);
    let lb = ub.get(&db).expect("nonzero polynomial").clone();
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(v);
        if r.is_zero() || dr < db {
            return r;
        }
        let ur = r.to_univariate(v);
        let lr = ur.get(&dr).expect("nonzero polynomial").clone();
        // r <- lb*r - lr * b * v^(dr-db)
        let mut shift = BTreeMap::new();
        shift.insert(dr - db, lr);
        let shifted = MPoly::from_univariate(&shift, v).mul(b);
        r = r.mul(&lb).sub(&shifted);
    }
}

/// Errors from scalar arithmetic and specialization.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    /// Division by the zero scalar.
    #[error("division by zero")]
    DivisionByZero,
    /// A specialization assignment zeroes a denominator.
    #[error("denominator vanishes under the assignment of {parameters}")]
    Pole {
        /// Human-readable list of the assigned parameters occurring in the
        /// vanishing denominator, e.g. `"t"` or `"t, t1"`.
        parameters: String,
    },
    /// The textual form could not be parsed.
    #[error("parse error at byte {position}: {message}")]
    Parse {
        /// Byte offset into the input.
        position: usize,
        /// What went wrong.
        message: String,
    },
}

/// An element of the coefficient field ℚ(t, t1, t2).
///
/// Canonical form invariants:
/// * numerator and denominator are coprime,
/// * the denominator is monic under the canonical parameter order,
/// * zero is exactly `0/1`.
///
/// Because the form is canonical, `==` decides mathematical equality.
/// Values are immutable; all operations return fresh scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamScalar {
    num: MPoly,
    den: MPoly,
}

impl ParamScalar {
    fn make(num: MPoly, den: MPoly) -> ParamScalar {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return ParamScalar {
                num: MPoly::zero(),
                den: MPoly::one(),
            };
        }
        let g = mpoly_gcd(&num, &den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let lc = den.leading().expect("nonzero").1.clone();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        ParamScalar { num, den }
    }

    /// The zero scalar.
    pub fn zero() -> ParamScalar {
        ParamScalar {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    /// The unit scalar.
    pub fn one() -> ParamScalar {
        ParamScalar {
            num: MPoly::one(),
            den: MPoly::one(),
        }
    }

    /// A parameter as a scalar.
    pub fn param(p: Param) -> ParamScalar {
        ParamScalar {
            num: MPoly::var(p),
            den: MPoly::one(),
        }
    }

    /// The parameter `t`.
    pub fn t() -> ParamScalar {
        ParamScalar::param(Param::T)
    }

    /// The parameter `t1`.
    pub fn t1() -> ParamScalar {
        ParamScalar::param(Param::T1)
    }

    /// The parameter `t2`.
    pub fn t2() -> ParamScalar {
        ParamScalar::param(Param::T2)
    }

    /// An integer as a scalar.
    pub fn from_int(k: i64) -> ParamScalar {
        ParamScalar::from_rational(BigRational::from_integer(BigInt::from(k)))
    }

    /// A rational constant as a scalar.
    pub fn from_rational(c: BigRational) -> ParamScalar {
        ParamScalar {
            num: MPoly::constant(c),
            den: MPoly::one(),
        }
    }

    /// Whether this is the zero scalar.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether this is the unit scalar.
    pub fn is_one(&self) -> bool {
        self.num == MPoly::one() && self.den == MPoly::one()
    }

    /// Whether this scalar is a rational constant (no parameters).
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The rational value, if this scalar is constant.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(n / d)
    }

    /// Whether the canonical numerator's leading coefficient is negative.
    ///
    /// Renderers use this to fold the sign into a `-` separator: every
    /// scalar is either "positively led" or the negation of one.
    pub fn leading_coeff_is_negative(&self) -> bool {
        self.num.leading().is_some_and(|(_, c)| c.is_negative())
    }

    /// Whether the textual form can be spliced into a product such as
    /// `c*p1` without extra parentheses: either a single numerator term
    /// over a trivial denominator, or a fraction (whose rendering is
    /// already fully parenthesized).
    pub fn is_product_atom(&self) -> bool {
        self.den != MPoly::one() || self.num.terms.len() <= 1
    }

    /// Multiplicative inverse.
    ///
    /// # Errors
    /// [`ScalarError::DivisionByZero`] on zero.
    pub fn inverse(&self) -> Result<ParamScalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(ParamScalar::make(self.den.clone(), self.num.clone()))
    }

    /// Field division with an explicit error on a zero divisor.
    pub fn checked_div(&self, rhs: &ParamScalar) -> Result<ParamScalar, ScalarError> {
        Ok(self.clone() * rhs.inverse()?)
    }

    /// Substitute some or all parameters by rational values.
    ///
    /// Unassigned parameters stay symbolic; the result is canonical.
    ///
    /// # Errors
    /// [`ScalarError::Pole`] if the denominator vanishes under the
    /// assignment; the error names the assigned parameters that occur in the
    /// vanishing denominator.
    pub fn specialize(
        &self,
        assignment: &BTreeMap<Param, BigRational>,
    ) -> Result<ParamScalar, ScalarError> {
        let den = self.den.substitute(assignment);
        if den.is_zero() {
            let involved: Vec<&str> = self
                .den
                .params_present()
                .into_iter()
                .filter(|p| assignment.contains_key(p))
                .map(Param::name)
                .collect();
            return Err(ScalarError::Pole {
                parameters: involved.join(", "),
            });
        }
        let num = self.num.substitute(assignment);
        Ok(ParamScalar::make(num, den))
    }
}

impl Default for ParamScalar {
    fn default() -> Self {
        ParamScalar::zero()
    }
}

impl Add for ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: ParamScalar) -> ParamScalar {
        &self + &rhs
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, rhs: &ParamScalar) -> ParamScalar {
        let num = self
            .num
            .mul(&rhs.den)
            .add(&rhs.num.mul(&self.den));
        ParamScalar::make(num, self.den.mul(&rhs.den))
    }
}

impl AddAssign for ParamScalar {
    fn add_assign(&mut self, rhs: ParamScalar) {
        *self = &*self + &rhs;
    }
}

impl Sub for ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: ParamScalar) -> ParamScalar {
        &self - &rhs
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, rhs: &ParamScalar) -> ParamScalar {
        let num = self
            .num
            .mul(&rhs.den)
            .sub(&rhs.num.mul(&self.den));
        ParamScalar::make(num, self.den.mul(&rhs.den))
    }
}

impl SubAssign for ParamScalar {
    fn sub_assign(&mut self, rhs: ParamScalar) {
        *self = &*self - &rhs;
    }
}

impl Mul for ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: ParamScalar) -> ParamScalar {
        &self * &rhs
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, rhs: &ParamScalar) -> ParamScalar {
        ParamScalar::make(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
}

impl MulAssign for ParamScalar {
    fn mul_assign(&mut self, rhs: ParamScalar) {
        *self = &*self * &rhs;
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            num: self.num.neg(),
            den: self.den,
        }
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        self.clone().neg()
    }
}

/// Panics on a zero divisor; use [`ParamScalar::checked_div`] to get an
/// error value instead.
impl Div for ParamScalar {
    type Output = ParamScalar;
    fn div(self, rhs: ParamScalar) -> ParamScalar {
        self.checked_div(&rhs).expect("division by zero scalar")
    }
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

fn fmt_mono(m: &Mono, out: &mut String) {
    let mut first = true;
    for v in 0..NUM_PARAMS {
        let e = m.0[v];
        if e == 0 {
            continue;
        }
        if !first {
            out.push('*');
        }
        first = false;
        out.push_str(Param::from_index(v).name());
        if e > 1 {
            out.push('^');
            out.push_str(&e.to_string());
        }
    }
}

fn fmt_poly(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms.iter().rev().enumerate() {
        let neg = c.is_negative();
        let abs = if neg { -c.clone() } else { c.clone() };
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            fmt_mono(m, &mut out);
        }
    }
    out
}

impl fmt::Display for ParamScalar {
    /// Canonical textual form, e.g. `(-2*t^2 + 1)/(t1 - 1)`; a polynomial
    /// (denominator 1) renders bare, e.g. `t - 1`. Parsing the output with
    /// [`ParamScalar::from_str`] is lossless.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == MPoly::one() {
            f.write_str(&fmt_poly(&self.num))
        } else {
            write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Recursive-descent parser over `+ - * / ^ ( )`, integers and the parameter
/// names. `/` is field division, so `1/2` and `(t^2 - t)/(t)` both parse.
struct ScalarParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ScalarParser<'a> {
    fn new(src: &'a str) -> Self {
        ScalarParser {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ScalarError {
        ScalarError::Parse {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn parse_expr(&mut self) -> Result<ParamScalar, ScalarError> {
        let mut acc = self.parse_term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.bump();
                    acc = &acc + &self.parse_term()?;
                }
                b'-' => {
                    self.bump();
                    acc = &acc - &self.parse_term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<ParamScalar, ScalarError> {
        let mut acc = self.parse_factor()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.bump();
                    acc = &acc * &self.parse_factor()?;
                }
                b'/' => {
                    self.bump();
                    let rhs = self.parse_factor()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|_| self.error("division by zero"))?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self) -> Result<ParamScalar, ScalarError> {
        let mut negate = false;
        while let Some(c) = self.peek() {
            match c {
                b'-' => {
                    self.bump();
                    negate = !negate;
                }
                b'+' => {
                    self.bump();
                }
                _ => break,
            }
        }
        let mut atom = self.parse_atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let exp = self.parse_uint()?;
            let base = atom.clone();
            atom = ParamScalar::one();
            for _ in 0..exp {
                atom = &atom * &base;
            }
        }
        Ok(if negate { -atom } else { atom })
    }

    fn parse_atom(&mut self) -> Result<ParamScalar, ScalarError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let inner = self.parse_expr()?;
                if self.bump() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.parse_uint_big()?;
                Ok(ParamScalar::from_rational(BigRational::from_integer(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let ident = self.parse_ident();
                match ident.as_str() {
                    "t" => Ok(ParamScalar::t()),
                    "t1" => Ok(ParamScalar::t1()),
                    "t2" => Ok(ParamScalar::t2()),
                    other => Err(self.error(format!("unknown identifier '{other}'"))),
                }
            }
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn parse_ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn parse_uint(&mut self) -> Result<u32, ScalarError> {
        let n = self.parse_uint_big()?;
        n.try_into().map_err(|_| self.error("exponent too large"))
    }

    fn parse_uint_big(&mut self) -> Result<BigInt, ScalarError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn finish(&mut self) -> Result<(), ScalarError> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("trailing input"));
        }
        Ok(())
    }
}

impl FromStr for ParamScalar {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = ScalarParser::new(s);
        let value = p.parse_expr()?;
        p.finish()?;
        Ok(value)
    }
}
