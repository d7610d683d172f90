//! Exact coefficient arithmetic: rationals, the cyclotomic field `Q(ε)`,
//! Laurent polynomials in `q` over `Q(ε)`, evaluation at `q = ε`, exact
//! division by `(q − ε)`, and q-combinatorics.
//!
//! `ε` is a primitive `l`-th root of unity. Elements of `Q(ε)` are stored on
//! the power basis `1, ε, …, ε^{φ(l)−1}` and kept fully reduced modulo the
//! `l`-th cyclotomic polynomial `Φ_l`, so equality is coefficientwise. The
//! coefficient ring for everything symbolic is `Q(ε)[q^{±1}]`; the only
//! division ever performed is by `(q − ε)`, and only when it is exact.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use thiserror::Error;

/// Arbitrary-precision rational, the base field `Q`.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// Division by `(q − ε)` was requested but the dividend does not vanish
    /// at `ε`.
    #[error("polynomial is not divisible by (q - eps): value at eps is nonzero")]
    NotDivisible,
}

// ---------------------------------------------------------------------------
// cyclotomic polynomials
// ---------------------------------------------------------------------------

/// Euler's totient.
pub fn euler_phi(l: u32) -> u32 {
    let mut n = l;
    let mut result = l;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// The `l`-th cyclotomic polynomial `Φ_l` as integer coefficients in
/// ascending degree order. `Φ_l` is the minimal polynomial of a primitive
/// `l`-th root of unity over `Q`.
pub fn cyclotomic_modulus(l: u32) -> Vec<BigInt> {
    assert!(l >= 1, "l must be positive");
    // Φ_l = (x^l - 1) / prod_{d | l, d < l} Φ_d, computed by exact division.
    let mut num: Vec<BigInt> = vec![BigInt::zero(); l as usize + 1];
    num[0] = BigInt::from(-1);
    num[l as usize] = BigInt::one();
    for d in 1..l {
        if l.is_multiple_of(d) {
            let phi_d = cyclotomic_modulus(d);
            num = int_poly_div_exact(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials (ascending coefficients); panics if
/// the division is not exact. Both inputs must be monic-leading nonzero.
fn int_poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, dc) in den.iter().enumerate() {
            let v = &rem[k + i] - &c * dc;
            rem[k + i] = v;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

struct CycData {
    phi: u32,
    /// Monic `Φ_l` over `Q`, ascending, length `phi + 1`.
    modulus: Vec<Rat>,
    /// Reduced powers `ε^0 … ε^{l−1}`, each of length `phi`.
    eps_powers: Vec<Vec<Rat>>,
}

static CYC_CACHE: Lazy<Mutex<BTreeMap<u32, &'static CycData>>> =
    Lazy::new(|| Mutex::new(BTreeMap::new()));

fn cyc_data(l: u32) -> &'static CycData {
    let mut cache = CYC_CACHE.lock().unwrap();
    if let Some(d) = cache.get(&l) {
        return d;
    }
    let modulus: Vec<Rat> = cyclotomic_modulus(l)
        .into_iter()
        .map(Rat::from_integer)
        .collect();
    let phi = (modulus.len() - 1) as u32;
    let mut eps_powers = Vec::with_capacity(l as usize);
    for k in 0..l {
        let mut p = vec![Rat::zero(); k as usize + 1];
        p[k as usize] = Rat::one();
        let r = poly_rem(&p, &modulus);
        let mut coeffs = vec![Rat::zero(); phi as usize];
        for (i, c) in r.into_iter().enumerate() {
            coeffs[i] = c;
        }
        eps_powers.push(coeffs);
    }
    let data: &'static CycData = Box::leak(Box::new(CycData {
        phi,
        modulus,
        eps_powers,
    }));
    cache.insert(l, data);
    data
}

/// Remainder of `a` modulo monic `m`, both ascending; result has degree
/// `< deg m` with trailing zeros stripped.
fn poly_rem(a: &[Rat], m: &[Rat]) -> Vec<Rat> {
    let dm = m.len() - 1;
    let mut r: Vec<Rat> = a.to_vec();
    while r.len() > dm {
        let c = r.pop().unwrap();
        if c.is_zero() {
            continue;
        }
        let k = r.len() - dm;
        for i in 0..dm {
            let v = &r[k + i] - &c * &m[i];
            r[k + i] = v;
        }
    }
    while r.last().is_some_and(|c| c.is_zero()) {
        r.pop();
    }
    r
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let v = &out[i + j] + ai * bj;
            out[i + j] = v;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// CycScalar
// ---------------------------------------------------------------------------

/// An exact element of the cyclotomic field `Q(ε)`, `ε` a primitive `l`-th
/// root of unity, reduced on the power basis `1, ε, …, ε^{φ(l)−1}`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycScalar {
    l: u32,
    coeffs: Vec<Rat>,
}

impl CycScalar {
    fn from_reduced(l: u32, mut coeffs: Vec<Rat>) -> Self {
        let phi = cyc_data(l).phi as usize;
        coeffs.resize(phi, Rat::zero());
        CycScalar { l, coeffs }
    }

    pub fn zero(l: u32) -> Self {
        Self::from_reduced(l, Vec::new())
    }

    pub fn one(l: u32) -> Self {
        Self::from_rat(l, Rat::one())
    }

    pub fn from_rat(l: u32, r: Rat) -> Self {
        Self::from_reduced(l, vec![r])
    }

    pub fn from_i64(l: u32, n: i64) -> Self {
        Self::from_rat(l, rat(n))
    }

    /// The root `ε` itself.
    pub fn eps(l: u32) -> Self {
        Self::eps_pow(l, 1)
    }

    /// `ε^k` for any integer `k` (negative allowed; `ε` is a unit).
    pub fn eps_pow(l: u32, k: i64) -> Self {
        let k = k.rem_euclid(l as i64) as usize;
        CycScalar {
            l,
            coeffs: cyc_data(l).eps_powers[k].clone(),
        }
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self == &CycScalar::one(self.l)
    }

    /// The rational part, if the element lies in `Q`.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(
            self.l, other.l,
            "mixed cyclotomic orders: {} vs {}",
            self.l, other.l
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycScalar { l: self.l, coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycScalar { l: self.l, coeffs }
    }

    pub fn neg(&self) -> Self {
        CycScalar {
            l: self.l,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let prod = poly_mul(&self.coeffs, &other.coeffs);
        let red = poly_rem(&prod, &cyc_data(self.l).modulus);
        Self::from_reduced(self.l, red)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycScalar {
            l: self.l,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(eps)");
        // Extended Euclid in Q[x]: s·a + t·Φ = 1, inverse is s mod Φ.
        let modulus = &cyc_data(self.l).modulus;
        let mut a: Vec<Rat> = self.coeffs.clone();
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        let mut r0 = modulus.clone();
        let mut r1 = a;
        let mut s0: Vec<Rat> = vec![];
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is the (nonzero constant) gcd; normalize.
        assert_eq!(r0.len(), 1, "element not invertible mod Phi_l");
        let c = r0[0].clone();
        let inv: Vec<Rat> = s0.iter().map(|x| x / &c).collect();
        Self::from_reduced(self.l, poly_rem(&inv, modulus))
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, k: i64) -> Self {
        if k < 0 {
            return self.inv().pow(-k);
        }
        let mut acc = CycScalar::one(self.l);
        let mut base = self.clone();
        let mut e = k as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] = c.clone();
    }
    for (i, c) in b.iter().enumerate() {
        let v = &out[i] - c;
        out[i] = v;
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// Quotient and remainder in Q[x]; divisor need not be monic.
fn poly_divmod(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead = b[db].clone();
    let mut rem: Vec<Rat> = a.to_vec();
    if rem.len() <= db {
        return (vec![], rem);
    }
    let mut quot = vec![Rat::zero(); rem.len() - db];
    while rem.len() > db {
        let c = rem.last().unwrap() / &lead;
        let k = rem.len() - 1 - db;
        quot[k] = c.clone();
        for i in 0..=db {
            let v = &rem[k + i] - &c * &b[i];
            rem[k + i] = v;
        }
        while rem.last().is_some_and(|x| x.is_zero()) {
            rem.pop();
        }
        if rem.len() <= db {
            break;
        }
    }
    (quot, rem)
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
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
            if i == 0 {
                write!(f, "{}", mag)?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", mag)?;
                }
                if i == 1 {
                    write!(f, "e")?;
                } else {
                    write!(f, "e^{}", i)?;
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// QLaurent
// ---------------------------------------------------------------------------

/// A Laurent polynomial in `q` over `Q(ε)`, finitely supported, with no
/// stored zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct QLaurent {
    l: u32,
    terms: BTreeMap<i64, CycScalar>,
}

impl QLaurent {
    pub fn zero(l: u32) -> Self {
        QLaurent {
            l,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(l: u32) -> Self {
        Self::constant(CycScalar::one(l))
    }

    pub fn constant(c: CycScalar) -> Self {
        let l = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(0, c);
        }
        QLaurent { l, terms }
    }

    pub fn from_i64(l: u32, n: i64) -> Self {
        Self::constant(CycScalar::from_i64(l, n))
    }

    /// The monomial `c·q^k`.
    pub fn monomial(c: CycScalar, k: i64) -> Self {
        let l = c.order();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        QLaurent { l, terms }
    }

    /// The variable `q`.
    pub fn q(l: u32) -> Self {
        Self::q_pow(l, 1)
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(l: u32, k: i64) -> Self {
        Self::monomial(CycScalar::one(l), k)
    }

    pub fn order(&self) -> u32 {
        self.l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &CycScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, k: i64) -> CycScalar {
        self.terms
            .get(&k)
            .cloned()
            .unwrap_or_else(|| CycScalar::zero(self.l))
    }

    pub fn min_deg(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_deg(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.l, other.l, "mixed cyclotomic orders in QLaurent");
    }

    fn insert(&mut self, k: i64, c: CycScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.insert(*k, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QLaurent {
            l: self.l,
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same(other);
        let mut out = QLaurent::zero(self.l);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                out.insert(ka + kb, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycScalar) -> Self {
        if c.is_zero() {
            return QLaurent::zero(self.l);
        }
        let mut out = QLaurent::zero(self.l);
        for (k, a) in &self.terms {
            out.insert(*k, a.mul(c));
        }
        out
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QLaurent {
            l: self.l,
            terms: self.terms.iter().map(|(d, c)| (d + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = QLaurent::one(self.l);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `ε` for `q`, reducing modulo `Φ_l`. A ring homomorphism.
    pub fn eval_at_eps(&self) -> CycScalar {
        let mut acc = CycScalar::zero(self.l);
        for (k, c) in &self.terms {
            acc = acc.add(&c.mul(&CycScalar::eps_pow(self.l, *k)));
        }
        acc
    }

    /// Exact division by `(q − ε)`. Fails with [`ScalarError::NotDivisible`]
    /// when the dividend does not vanish at `ε`, i.e. was not in `(q−ε)·R`.
    pub fn div_q_minus_eps(&self) -> Result<QLaurent, ScalarError> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        if !self.eval_at_eps().is_zero() {
            return Err(ScalarError::NotDivisible);
        }
        // Shift to an ordinary polynomial, synthetic-divide, shift back.
        let lo = *self.terms.keys().next().unwrap();
        let hi = *self.terms.keys().next_back().unwrap();
        let n = (hi - lo) as usize;
        let mut dense = vec![CycScalar::zero(self.l); n + 1];
        for (k, c) in &self.terms {
            dense[(k - lo) as usize] = c.clone();
        }
        let eps = CycScalar::eps(self.l);
        // Horner from the top: b_{k-1} = c_k + ε·b_k.
        let mut quot = vec![CycScalar::zero(self.l); n];
        let mut carry = CycScalar::zero(self.l);
        for k in (1..=n).rev() {
            let b = dense[k].add(&carry);
            quot[k - 1] = b.clone();
            carry = b.mul(&eps);
        }
        let mut out = QLaurent::zero(self.l);
        for (i, c) in quot.into_iter().enumerate() {
            out.insert(lo + i as i64, c);
        }
        Ok(out)
    }

    /// Exact division by another Laurent polynomial, when the quotient exists
    /// in `Q(ε)[q^{±1}]`.
    pub fn div_exact(&self, den: &Self) -> Option<QLaurent> {
        self.check_same(den);
        assert!(!den.is_zero(), "division by zero Laurent polynomial");
        if self.is_zero() {
            return Some(self.clone());
        }
        let lo_n = self.min_deg().unwrap();
        let lo_d = den.min_deg().unwrap();
        // Long division of the shifted ordinary polynomials.
        let num_len = (self.max_deg().unwrap() - lo_n) as usize + 1;
        let den_len = (den.max_deg().unwrap() - lo_d) as usize + 1;
        if num_len < den_len {
            return None;
        }
        let mut rem = vec![CycScalar::zero(self.l); num_len];
        for (k, c) in &self.terms {
            rem[(k - lo_n) as usize] = c.clone();
        }
        let mut d = vec![CycScalar::zero(self.l); den_len];
        for (k, c) in &den.terms {
            d[(k - lo_d) as usize] = c.clone();
        }
        let lead_inv = d[den_len - 1].inv();
        let mut quot = vec![CycScalar::zero(self.l); num_len - den_len + 1];
        for k in (0..=num_len - den_len).rev() {
            let c = rem[k + den_len - 1].mul(&lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c.clone();
            for (i, di) in d.iter().enumerate() {
                let v = rem[k + i].sub(&c.mul(di));
                rem[k + i] = v;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut out = QLaurent::zero(self.l);
        for (i, c) in quot.into_iter().enumerate() {
            out.insert(lo_n - lo_d + i as i64, c);
        }
        Some(out)
    }

    /// If `self = c·q^k` with a single term, return `(k, c)`.
    pub fn as_monomial(&self) -> Option<(i64, CycScalar)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((*k, c.clone()))
        } else {
            None
        }
    }
}

impl fmt::Debug for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *k == 0 {
                write!(f, "({})", c)?;
            } else if *k == 1 {
                write!(f, "({})*q", c)?;
            } else {
                write!(f, "({})*q^{}", c, k)?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// q-combinatorics
// ---------------------------------------------------------------------------

/// A symbolic q-integer `(n)_{q^s}`, expanding to `(q^{sn}−1)/(q^s−1)` when
/// `s ≠ 0` and to the plain integer `n` when `s = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QInt {
    pub n: i64,
    pub s: i64,
}

impl QInt {
    pub fn new(n: i64, s: i64) -> Self {
        QInt { n, s }
    }

    pub fn expand(&self, l: u32) -> QLaurent {
        q_int(l, self.n, self.s)
    }
}

/// The q-integer `(n)_{q^s}` as an exact Laurent polynomial.
pub fn q_int(l: u32, n: i64, s: i64) -> QLaurent {
    if s == 0 {
        return QLaurent::from_i64(l, n);
    }
    let mut out = QLaurent::zero(l);
    if n >= 0 {
        for i in 0..n {
            out.insert(s * i, CycScalar::one(l));
        }
    } else {
        for i in n..0 {
            out.insert(s * i, CycScalar::from_i64(l, -1));
        }
    }
    out
}

/// The q-factorial `(n)! = (1)(2)⋯(n)` over `q^s`.
pub fn q_factorial(l: u32, n: i64, s: i64) -> QLaurent {
    assert!(n >= 0, "q-factorial needs n >= 0");
    let mut acc = QLaurent::one(l);
    for i in 1..=n {
        acc = acc.mul(&q_int(l, i, s));
    }
    acc
}

/// The Gaussian binomial `binom(n,k)_{q^s}`, computed by the q-Pascal
/// recurrence `binom(n,k) = binom(n−1,k−1) + q^{sk}·binom(n−1,k)`.
///
/// The recurrence is cross-checked against the defining factorial ratio in
/// the test suite, so the convention cannot drift.
pub fn q_binomial(l: u32, n: i64, k: i64, s: i64) -> QLaurent {
    assert!(0 <= k && k <= n, "q-binomial needs 0 <= k <= n");
    // Row-by-row Pascal triangle.
    let mut row: Vec<QLaurent> = vec![QLaurent::one(l)];
    for m in 1..=n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(QLaurent::one(l));
        for j in 1..m {
            let shifted = row[j as usize].shift(s * j);
            next.push(row[j as usize - 1].add(&shifted));
        }
        next.push(QLaurent::one(l));
        row = next;
    }
    row[k as usize].clone()
}
