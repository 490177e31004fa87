//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored as rational coefficient vectors in the power basis
//! `1, ζ, …, ζ^{φ(N)-1}`, always reduced modulo the N-th cyclotomic
//! polynomial Φ_N. Because Φ_N is irreducible the representation is
//! canonical, so equality is coefficient-wise.
//!
//! Operands with different orders are embedded into the field of order
//! `lcm(M, N)` via `ζ_M ↦ ζ_L^{L/M}` before combining.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CyclotomicError {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("cyclotomic order must be positive")]
    ZeroOrder,
    #[error("bad cyclotomic literal `{literal}`: {reason}")]
    Literal { literal: String, reason: String },
}

/// Returns the coefficients of Φ_N (ascending powers).
///
/// Computed by exact division of `x^N - 1` by `Φ_d` for every proper
/// divisor `d` of `N`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic_polynomial: order must be positive");
    let mut memo: HashMap<u32, Vec<i64>> = HashMap::new();
    cyclo_rec(n, &mut memo)
}

fn cyclo_rec(n: u32, memo: &mut HashMap<u32, Vec<i64>>) -> Vec<i64> {
    if let Some(p) = memo.get(&n) {
        return p.clone();
    }
    // x^n - 1
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclo_rec(d, memo);
            num = exact_monic_div(&num, &div);
        }
    }
    memo.insert(n, num.clone());
    num
}

/// Exact division by a monic integer polynomial; panics if it leaves a remainder.
fn exact_monic_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    debug_assert_eq!(den[dn], 1);
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return vec![0];
    }
    let mut quot = vec![0i64; rem.len() - dn];
    for k in (dn..rem.len()).rev() {
        let c = rem[k];
        if c == 0 {
            continue;
        }
        quot[k - dn] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k - dn + i] -= c * d;
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "non-exact cyclotomic division");
    quot
}

/// Per-order constants shared by all elements of one field.
#[derive(Debug)]
pub struct CyclotomicField {
    order: u32,
    degree: usize,
    /// Φ_N, monic, ascending.
    modulus: Vec<BigRational>,
    /// ζ^k reduced, for k in 0..order.
    powers: Vec<Vec<BigRational>>,
}

impl CyclotomicField {
    fn build(order: u32) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let modulus: Vec<BigRational> = phi.iter().map(|&c| rat(c)).collect();
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigRational::one()];
        for _ in 0..order {
            let mut v = cur.clone();
            trim(&mut v);
            powers.push(v);
            // multiply by x and reduce
            cur.insert(0, BigRational::zero());
            reduce_in_place(&mut cur, &modulus);
        }
        CyclotomicField { order, degree, modulus, powers }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// φ(N), the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CyclotomicField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CyclotomicField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared field context for order `n`.
pub fn field(n: u32) -> Arc<CyclotomicField> {
    assert!(n >= 1, "cyclotomic order must be positive");
    let mut cache = field_cache().lock().expect("cyclotomic cache poisoned");
    cache
        .entry(n)
        .or_insert_with(|| Arc::new(CyclotomicField::build(n)))
        .clone()
}

fn rat(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn reduce_in_place(v: &mut Vec<BigRational>, modulus: &[BigRational]) {
    let d = modulus.len() - 1;
    if v.len() > d {
        for k in (d..v.len()).rev() {
            if v[k].is_zero() {
                continue;
            }
            let c = v[k].clone();
            for (i, m) in modulus.iter().enumerate().take(d) {
                if !m.is_zero() {
                    v[k - d + i] -= &c * m;
                }
            }
            v[k] = BigRational::zero();
        }
        v.truncate(d);
    }
    trim(v);
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        Cyclotomic { field: field(n), coeffs: Vec::new() }
    }

    pub fn one(n: u32) -> Self {
        Self::from_rational(n, BigRational::one())
    }

    pub fn from_int(n: u32, v: i64) -> Self {
        Self::from_rational(n, rat(v))
    }

    pub fn from_rational(n: u32, v: BigRational) -> Self {
        let mut coeffs = vec![v];
        trim(&mut coeffs);
        Cyclotomic { field: field(n), coeffs }
    }

    /// Builds the element `Σ coeffs[k] ζ^k`, reducing as needed.
    pub fn from_coeffs(n: u32, coeffs: Vec<BigRational>) -> Self {
        let f = field(n);
        let mut acc = vec![BigRational::zero(); f.degree.max(1)];
        for (k, c) in coeffs.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = &f.powers[k % f.order as usize];
            for (i, pc) in p.iter().enumerate() {
                acc[i] += &c * pc;
            }
        }
        trim(&mut acc);
        Cyclotomic { field: f, coeffs: acc }
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_pow(n: u32, k: i64) -> Self {
        let f = field(n);
        let idx = k.rem_euclid(n as i64) as usize;
        let coeffs = f.powers[idx].clone();
        Cyclotomic { field: f, coeffs }
    }

    /// `Σ_k counts[k] ζ^k` with integer multiplicities.
    pub fn from_exponent_counts(n: u32, counts: &[u64]) -> Self {
        let f = field(n);
        let mut acc = vec![BigRational::zero(); f.degree.max(1)];
        for (k, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = BigRational::from_integer(BigInt::from(c));
            for (i, pc) in f.powers[k % f.order as usize].iter().enumerate() {
                acc[i] += &c * pc;
            }
        }
        trim(&mut acc);
        Cyclotomic { field: f, coeffs: acc }
    }

    pub fn order(&self) -> u32 {
        self.field.order
    }

    /// Reduced coefficients in the power basis, trailing zeros removed.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// The value as a rational, if it lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    /// Embeds into Q(ζ_M) for a multiple M of the current order.
    pub fn embed(&self, m: u32) -> Self {
        let n = self.order();
        assert!(m.is_multiple_of(n), "cannot embed order {n} into order {m}");
        if m == n {
            return self.clone();
        }
        let step = (m / n) as usize;
        let mut spread = vec![BigRational::zero(); (self.coeffs.len().max(1) - 1) * step + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            spread[k * step] = c.clone();
        }
        Cyclotomic::from_coeffs(m, spread)
    }

    fn aligned(a: &Self, b: &Self) -> (Self, Self) {
        let (n, m) = (a.order(), b.order());
        if n == m {
            (a.clone(), b.clone())
        } else {
            let l = n.lcm(&m);
            (a.embed(l), b.embed(l))
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        if r.is_zero() {
            return Cyclotomic::zero(self.order());
        }
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Galois conjugation ζ ↦ ζ^{-1}.
    pub fn conj(&self) -> Self {
        let n = self.order() as usize;
        let mut out = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[(n - k % n) % n] += c;
        }
        Cyclotomic::from_coeffs(self.order(), out)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against Φ_N.
    pub fn inv(&self) -> Result<Self, CyclotomicError> {
        if self.is_zero() {
            return Err(CyclotomicError::ZeroInverse);
        }
        // invariant: s * self ≡ r0 (mod Φ), t * self ≡ r1
        let mut r0 = self.field.modulus.clone();
        let mut r1 = self.coeffs.clone();
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Φ_N is irreducible
        debug_assert_eq!(r1.len(), 1);
        let c = r1[0].recip();
        let mut u: Vec<BigRational> = s1.into_iter().map(|x| x * &c).collect();
        reduce_in_place(&mut u, &self.field.modulus);
        Ok(Cyclotomic { field: self.field.clone(), coeffs: u })
    }

    pub fn pow(&self, e: i64) -> Result<Self, CyclotomicError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Cyclotomic::one(self.order());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CyclotomicError> {
        Ok(self * &rhs.inv()?)
    }

    /// Serialises as a single whitespace-free token, e.g. `1/2+-1*z^1`.
    pub fn to_literal(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k == 0 {
                terms.push(fmt_rat(c));
            } else {
                terms.push(format!("{}*z^{}", fmt_rat(c), k));
            }
        }
        terms.join("+")
    }

    /// Parses the literal grammar: `p/q` terms joined by `+`, each optionally
    /// `*z^k`. Parentheses, whitespace and a trailing `[N=..]` tag are accepted.
    pub fn parse_literal(n: u32, text: &str) -> Result<Self, CyclotomicError> {
        let bad = |reason: &str| CyclotomicError::Literal { literal: text.to_string(), reason: reason.to_string() };
        let mut s: String = text.chars().filter(|c| !c.is_whitespace() && *c != '(' && *c != ')').collect();
        if let Some(pos) = s.find('[') {
            let tag = &s[pos..];
            let inner = tag.strip_prefix("[N=").and_then(|t| t.strip_suffix(']')).ok_or_else(|| bad("malformed order tag"))?;
            let tag_n: u32 = inner.parse().map_err(|_| bad("malformed order tag"))?;
            if tag_n != n {
                return Err(bad("order tag does not match"));
            }
            s.truncate(pos);
        }
        if s.is_empty() {
            return Err(bad("empty"));
        }
        let mut coeffs: Vec<BigRational> = Vec::new();
        for term in s.split('+') {
            if term.is_empty() {
                return Err(bad("empty term"));
            }
            let (c_part, k) = match term.find('z') {
                Some(zpos) => {
                    let exp = term[zpos + 1..]
                        .strip_prefix('^')
                        .map(|e| e.parse::<usize>().map_err(|_| bad("bad exponent")))
                        .unwrap_or(Ok(1))?;
                    let c = term[..zpos].strip_suffix('*').unwrap_or(&term[..zpos]);
                    (c, exp)
                }
                None => (term, 0),
            };
            let c = match c_part {
                "" => BigRational::one(),
                "-" => -BigRational::one(),
                _ => parse_rat(c_part).ok_or_else(|| bad("bad coefficient"))?,
            };
            if coeffs.len() <= k {
                coeffs.resize(k + 1, BigRational::zero());
            }
            coeffs[k] += c;
        }
        Ok(Cyclotomic::from_coeffs(n, coeffs))
    }
}

pub(crate) fn parse_rat(s: &str) -> Option<BigRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.parse().ok()?;
    let q: BigInt = q.parse().ok()?;
    if q.is_zero() {
        return None;
    }
    Some(BigRational::new(p, q))
}

pub(crate) fn fmt_rat(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn poly_trimmed(mut v: Vec<BigRational>) -> Vec<BigRational> {
    trim(&mut v);
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    poly_trimmed(out)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trimmed(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead = b[db].recip();
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let k = rem.len() - 1;
        let c = &rem[k] * &lead;
        for (i, bc) in b.iter().enumerate() {
            rem[k - db + i] -= &c * bc;
        }
        quot[k - db] = c;
        rem.pop();
        trim(&mut rem);
    }
    (poly_trimmed(quot), rem)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order() == other.order() {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = Cyclotomic::aligned(self, other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Cyclotomic {}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order() != rhs.order() {
            let (a, b) = Cyclotomic::aligned(self, rhs);
            return &a + &b;
        }
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let v = match (self.coeffs.get(i), rhs.coeffs.get(i)) {
                (Some(x), Some(y)) => x + y,
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            };
            out.push(v);
        }
        trim(&mut out);
        Cyclotomic { field: self.field.clone(), coeffs: out }
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        &self + &rhs
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if self.order() == rhs.order() {
            if self.coeffs.len() < rhs.coeffs.len() {
                self.coeffs.resize(rhs.coeffs.len(), BigRational::zero());
            }
            for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                *a += b;
            }
            trim(&mut self.coeffs);
        } else {
            *self = &*self + rhs;
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self + &(-rhs)
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        &self - &rhs
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        if self.order() != rhs.order() {
            let (a, b) = Cyclotomic::aligned(self, rhs);
            return &a * &b;
        }
        if self.is_zero() || rhs.is_zero() {
            return Cyclotomic::zero(self.order());
        }
        // scalar fast path
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut out = poly_mul(&self.coeffs, &rhs.coeffs);
        reduce_in_place(&mut out, &self.field.modulus);
        Cyclotomic { field: self.field.clone(), coeffs: out }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        &self * &rhs
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Cyclotomic {
    /// Canonical form: `<rat> [N=n]` for rationals, otherwise the nonzero
    /// terms `(c)`, `(c)*z^k` joined by ` + ` followed by `[N=n]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.order();
        match self.coeffs.len() {
            0 => write!(f, "0 [N={n}]"),
            1 => write!(f, "{} [N={n}]", fmt_rat(&self.coeffs[0])),
            _ => {
                let mut first = true;
                for (k, c) in self.coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    if k == 0 {
                        write!(f, "({})", fmt_rat(c))?;
                    } else {
                        write!(f, "({})*z^{}", fmt_rat(c), k)?;
                    }
                }
                write!(f, " [N={n}]")
            }
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Rational `p/q` as a value in Q(ζ_n).
pub fn ratio(n: u32, p: i64, q: i64) -> Cyclotomic {
    Cyclotomic::from_rational(n, BigRational::new(BigInt::from(p), BigInt::from(q)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first order with a coefficient of absolute value 2
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn zeta_four_squared_is_minus_one() {
        let z = Cyclotomic::zeta_pow(4, 1);
        assert_eq!(&z * &z, Cyclotomic::from_int(4, -1));
    }

    #[test]
    fn cube_roots_sum_to_zero() {
        let s = &(&Cyclotomic::one(3) + &Cyclotomic::zeta_pow(3, 1)) + &Cyclotomic::zeta_pow(3, 2);
        assert!(s.is_zero());
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let a = &Cyclotomic::one(4) + &Cyclotomic::zeta_pow(4, 1);
        let inv = a.inv().unwrap();
        let expected = Cyclotomic::parse_literal(4, "1/2+-1/2*z^1").unwrap();
        assert_eq!(inv, expected);
        assert!((&a * &inv).is_one());
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Cyclotomic::zero(5).inv().unwrap_err(), CyclotomicError::ZeroInverse);
    }

    #[test]
    fn zeta_n_to_the_n_is_one() {
        for n in 1..=12 {
            let z = Cyclotomic::zeta_pow(n, 1);
            assert!(z.pow(n as i64).unwrap().is_one(), "N={n}");
            if n > 1 {
                let mut s = Cyclotomic::zero(n);
                for j in 0..n {
                    s += &Cyclotomic::zeta_pow(n, j as i64);
                }
                assert!(s.is_zero(), "N={n}");
            }
        }
    }

    #[test]
    fn embedding_maps_generator_to_power() {
        let z3 = Cyclotomic::zeta_pow(3, 1);
        assert_eq!(z3.embed(12), Cyclotomic::zeta_pow(12, 4));
        // mixed-order arithmetic lands in the lcm field
        let s = &z3 + &Cyclotomic::zeta_pow(4, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(s, &Cyclotomic::zeta_pow(12, 4) + &Cyclotomic::zeta_pow(12, 3));
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(ratio(1, 1, 2).to_string(), "1/2 [N=1]");
        assert_eq!(Cyclotomic::zero(3).to_string(), "0 [N=3]");
        let x = Cyclotomic::parse_literal(4, "2/4+-3*z^1").unwrap();
        assert_eq!(x.to_string(), "(1/2) + (-3)*z^1 [N=4]");
        assert_eq!(x.to_literal(), "1/2+-3*z^1");
        // display form parses back
        assert_eq!(Cyclotomic::parse_literal(4, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn literal_reduces_high_powers() {
        // z^2 = -1 in Q(i)
        assert_eq!(Cyclotomic::parse_literal(4, "z^2").unwrap(), Cyclotomic::from_int(4, -1));
        assert!(Cyclotomic::parse_literal(4, "1/0").is_err());
        assert!(Cyclotomic::parse_literal(4, "1++2").is_err());
        assert!(Cyclotomic::parse_literal(4, "1 [N=3]").is_err());
    }

    #[test]
    fn conjugation_inverts_roots() {
        for n in [3u32, 5, 8] {
            for k in 0..n as i64 {
                assert_eq!(Cyclotomic::zeta_pow(n, k).conj(), Cyclotomic::zeta_pow(n, -k));
            }
        }
    }

    #[test]
    fn exponent_counts_match_sum() {
        let counts = [2u64, 0, 1, 5];
        let mut s = Cyclotomic::zero(4);
        for (k, &c) in counts.iter().enumerate() {
            for _ in 0..c {
                s += &Cyclotomic::zeta_pow(4, k as i64);
            }
        }
        assert_eq!(Cyclotomic::from_exponent_counts(4, &counts), s);
    }
}
