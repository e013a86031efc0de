//! Finite fields `F_q` and their quadratic extensions `F_{q^2}`.
//!
//! Elements are stored as plain `u32` encodings. For `F_{p^m}` the element
//! `c_0 + c_1 t + ... + c_{m-1} t^{m-1}` (with `t` the residue of `x` modulo
//! the defining polynomial) is encoded as `sum c_i p^i`. For the quadratic
//! extension, `a + b e` is encoded as `a + b q`, so base-field elements keep
//! their encoding when embedded.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which log/antilog tables are built.
pub const MAX_ORDER: u32 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

/// Arithmetic on encoded elements of a finite field.
pub trait FiniteField: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    fn order(&self) -> u32;
    fn characteristic(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn neg(&self, a: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
    /// The distinguished primitive element.
    fn primitive(&self) -> u32;
    /// Discrete logarithm to the base [`FiniteField::primitive`].
    fn log(&self, a: u32) -> Option<u32>;
    /// `primitive^e`.
    fn exp(&self, e: u64) -> u32;
    fn render(&self, a: u32) -> String;

    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    fn inv(&self, a: u32) -> Result<u32> {
        let l = self.log(a).ok_or(Error::DivisionByZero)? as u64;
        let n = self.order() as u64 - 1;
        Ok(self.exp((n - l) % n))
    }

    fn div(&self, a: u32, b: u32) -> Result<u32> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for any integer `e`. `0^0 = 1`; negative powers of zero fail.
    fn pow(&self, a: u32, e: i64) -> Result<u32> {
        match self.log(a) {
            None if e > 0 => Ok(0),
            None if e == 0 => Ok(1),
            None => Err(Error::DivisionByZero),
            Some(l) => {
                let n = self.order() as i128 - 1;
                let r = (l as i128 * e as i128).rem_euclid(n);
                Ok(self.exp(r as u64))
            }
        }
    }

    /// Multiplicative order of `a`, or 0 for the zero element.
    fn element_order(&self, a: u32) -> u64 {
        match self.log(a) {
            None => 0,
            Some(l) => {
                let n = self.order() as u64 - 1;
                n / gcd(n, l as u64)
            }
        }
    }

    fn is_valid(&self, a: u32) -> bool {
        a < self.order()
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Splits `q` as `p^m`, or returns `None` if `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut m) = (q, 0);
    while r % p == 0 {
        r /= p;
        m += 1;
    }
    (r == 1).then_some((p, m))
}

// Polynomials over F_p as ascending coefficient vectors.

fn fp_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let mut b = b.to_vec();
    fp_trim(&mut b);
    let db = b.len() - 1;
    let lead_inv = fp_inv(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        let shift = top - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bi % p) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn fp_inv(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero residue")
}

fn digits_of(mut x: u32, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(x % p);
        x /= p;
    }
    out
}

fn encode_digits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible_fp(poly: &[u32], p: u32) -> bool {
    let mut f = poly.to_vec();
    fp_trim(&mut f);
    if f.len() < 2 {
        return false;
    }
    let m = f.len() - 1;
    for d in 1..=m / 2 {
        for low in 0..p.pow(d as u32) {
            let mut g = digits_of(low, p, d);
            g.push(1);
            if fp_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The prime field or an extension `F_p[x]/(f)`.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    theta: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Vec<u32>,
    neg: Vec<u32>,
}

impl Field {
    /// Builds `F_{p^m}`. Without an explicit modulus the monic irreducible
    /// polynomial of degree `m` with the smallest encoding is used.
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::InvalidParams("extension degree must be positive".into()));
        }
        let q = (p as u64).checked_pow(m).filter(|&q| q <= MAX_ORDER as u64);
        let q = q.ok_or_else(|| Error::InvalidParams(format!("{p}^{m} exceeds {MAX_ORDER}")))? as u32;
        let modulus = match modulus {
            Some(f) => {
                let mut f = f.to_vec();
                fp_trim(&mut f);
                if f.is_empty() || f.len() - 1 != m as usize {
                    return Err(Error::DegreeMismatch {
                        expected: m as usize,
                        got: f.len().saturating_sub(1),
                    });
                }
                if f.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidParams("modulus coefficient outside F_p".into()));
                }
                if f[m as usize] != 1 {
                    return Err(Error::InvalidParams("modulus must be monic".into()));
                }
                if !is_irreducible_fp(&f, p) {
                    return Err(Error::ReducibleModulus);
                }
                f
            }
            None => (0..q)
                .map(|low| {
                    let mut f = digits_of(low, p, m as usize);
                    f.push(1);
                    f
                })
                .find(|f| is_irreducible_fp(f, p))
                .expect("irreducible polynomials exist in every degree"),
        };
        let mut inner = FieldInner {
            p,
            m,
            q,
            modulus,
            theta: 0,
            exp: Vec::new(),
            log: Vec::new(),
            add: Vec::new(),
            neg: (0..q)
                .map(|a| encode_digits(&digits_of(a, p, m as usize).iter().map(|&c| (p - c) % p).collect::<Vec<_>>(), p))
                .collect(),
        };
        let n = (q - 1) as u64;
        let factors = prime_factors(n);
        let slow_pow = |inner: &FieldInner, a: u32, mut e: u64| {
            let (mut base, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = inner.mul_reference(acc, base);
                }
                base = inner.mul_reference(base, base);
                e >>= 1;
            }
            acc
        };
        inner.theta = (1..q)
            .find(|&a| factors.iter().all(|&r| slow_pow(&inner, a, n / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = 1u32;
        for i in 0..n as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = inner.mul_reference(x, inner.theta);
        }
        let copy = exp.clone();
        exp.extend(copy);
        inner.exp = exp;
        inner.log = log;
        if p != 2 && q <= ADD_TABLE_LIMIT {
            let mut add = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    add[(a * q + b) as usize] = inner.add_digits(a, b);
                }
            }
            inner.add = add;
        }
        Ok(Field { inner: Arc::new(inner) })
    }

    /// The default field of order `q`.
    pub fn of_order(q: u32) -> Result<Field> {
        let (p, m) = prime_power(q).ok_or_else(|| Error::InvalidParams(format!("{q} is not a prime power")))?;
        Field::new(p, m, None)
    }

    pub fn p(&self) -> u32 {
        self.inner.p
    }

    pub fn m(&self) -> u32 {
        self.inner.m
    }

    pub fn q(&self) -> u32 {
        self.inner.q
    }

    /// Defining polynomial, ascending coefficients, monic of degree `m`.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// Encoding of the defining polynomial viewed as an integer.
    pub fn modulus_encoding(&self) -> u64 {
        self.inner.modulus.iter().rev().fold(0u64, |acc, &c| acc * self.inner.p as u64 + c as u64)
    }

    /// The primitive element with the smallest encoding.
    pub fn theta(&self) -> u32 {
        self.inner.theta
    }

    /// Base-`p` digits of an encoding, i.e. polynomial coefficients.
    pub fn digits(&self, a: u32) -> Vec<u32> {
        digits_of(a, self.inner.p, self.inner.m as usize)
    }

    pub fn from_digits(&self, d: &[u32]) -> u32 {
        encode_digits(d, self.inner.p)
    }

    /// Multiplication by polynomial product and reduction, bypassing the tables.
    pub fn mul_reference(&self, a: u32, b: u32) -> u32 {
        self.inner.mul_reference(a, b)
    }

    /// Addition digit by digit, bypassing the tables.
    pub fn add_reference(&self, a: u32, b: u32) -> u32 {
        self.inner.add_digits(a, b)
    }

    pub fn element(&self, enc: u32) -> Result<Element<Field>> {
        Element::new(self.clone(), enc)
    }

    /// Parses an integer encoding or a polynomial in `t` such as `1+t^2`.
    pub fn parse(&self, s: &str) -> Result<u32> {
        let s = s.trim();
        if let Ok(v) = s.parse::<u32>() {
            return if v < self.q() {
                Ok(v)
            } else {
                Err(Error::IndexOutOfRange { index: v as usize, limit: self.q() as usize })
            };
        }
        let p = self.p();
        let mut digits = vec![0u32; self.m() as usize];
        for term in s.split('+') {
            let term = term.trim();
            let bad = || Error::Parse(format!("cannot read field element '{s}'"));
            let (coef, power) = match term.find('t') {
                None => (term.parse::<u32>().map_err(|_| bad())?, 0usize),
                Some(i) => {
                    let c = term[..i].trim_end_matches('*');
                    let c = if c.is_empty() { 1 } else { c.parse::<u32>().map_err(|_| bad())? };
                    let rest = &term[i + 1..];
                    let e = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse::<usize>().map_err(|_| bad())?
                    };
                    (c, e)
                }
            };
            if power >= digits.len() {
                return Err(bad());
            }
            digits[power] = (digits[power] + coef) % p;
        }
        Ok(self.from_digits(&digits))
    }
}

impl FieldInner {
    fn add_digits(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut scale) = (0u32, 1u32);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    fn mul_reference(&self, a: u32, b: u32) -> u32 {
        let (p, m) = (self.p, self.m as usize);
        let da = digits_of(a, p, m);
        let db = digits_of(b, p, m);
        let mut prod = vec![0u32; 2 * m];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = fp_rem(&prod, &self.modulus, p);
        r.resize(m, 0);
        encode_digits(&r, p)
    }
}

impl FiniteField for Field {
    fn order(&self) -> u32 {
        self.inner.q
    }

    fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.inner;
        if f.p == 2 {
            a ^ b
        } else if f.m == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if !f.add.is_empty() {
            f.add[(a * f.q + b) as usize]
        } else {
            f.add_digits(a, b)
        }
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.inner.neg[a as usize]
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.inner;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    fn primitive(&self) -> u32 {
        self.inner.theta
    }

    fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inner.log[a as usize])
    }

    fn exp(&self, e: u64) -> u32 {
        self.inner.exp[(e % (self.inner.q as u64 - 1)) as usize]
    }

    /// Polynomial in `t` with ascending powers, e.g. `1+t^2`.
    fn render(&self, a: u32) -> String {
        if a == 0 {
            return "0".into();
        }
        let terms: Vec<String> = self
            .digits(a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".into(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        terms.join("+")
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p && self.inner.modulus == other.inner.modulus)
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}) mod {:?}", self.inner.q, self.inner.modulus)
    }
}

/// `F_{q^2} = F_q[t]/(t^2 + c1 t + c0)`.
#[derive(Clone)]
pub struct ExtField {
    inner: Arc<ExtInner>,
}

struct ExtInner {
    base: Field,
    c0: u32,
    c1: u32,
    q2: u32,
    theta: u32,
    beta: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl ExtField {
    /// Builds the quadratic extension of `base`. `modulus = (c0, c1)` selects
    /// `t^2 + c1 t + c0`; the default is the irreducible one with the smallest
    /// encoding `c0 + c1 q + q^2`. `theta_ext` overrides the primitive element.
    pub fn new(base: &Field, modulus: Option<(u32, u32)>, theta_ext: Option<u32>) -> Result<ExtField> {
        let q = base.q();
        if (q as u64) * (q as u64) > MAX_ORDER as u64 {
            return Err(Error::InvalidParams(format!("q^2 = {} exceeds {MAX_ORDER}", q as u64 * q as u64)));
        }
        let irreducible = |c0: u32, c1: u32| {
            (0..q).all(|x| base.add(base.add(base.mul(x, x), base.mul(c1, x)), c0) != 0)
        };
        let (c0, c1) = match modulus {
            Some((c0, c1)) => {
                if c0 >= q || c1 >= q {
                    return Err(Error::IndexOutOfRange { index: c0.max(c1) as usize, limit: q as usize });
                }
                if !irreducible(c0, c1) {
                    return Err(Error::ReducibleModulus);
                }
                (c0, c1)
            }
            None => (0..q * q)
                .map(|e| (e % q, e / q))
                .find(|&(c0, c1)| irreducible(c0, c1))
                .expect("irreducible quadratics exist"),
        };
        let q2 = q * q;
        let mut inner = ExtInner { base: base.clone(), c0, c1, q2, theta: 0, beta: 0, exp: Vec::new(), log: Vec::new() };
        let n = (q2 - 1) as u64;
        let factors = prime_factors(n);
        let slow_pow = |inner: &ExtInner, a: u32, mut e: u64| {
            let (mut b, mut acc) = (a, 1u32);
            while e > 0 {
                if e & 1 == 1 {
                    acc = inner.mul_reference(acc, b);
                }
                b = inner.mul_reference(b, b);
                e >>= 1;
            }
            acc
        };
        let primitive = |inner: &ExtInner, a: u32| a != 0 && factors.iter().all(|&r| slow_pow(inner, a, n / r) != 1);
        inner.theta = match theta_ext {
            Some(t) => {
                if t >= q2 {
                    return Err(Error::IndexOutOfRange { index: t as usize, limit: q2 as usize });
                }
                if !primitive(&inner, t) {
                    return Err(Error::NotPrimitive);
                }
                t
            }
            None => (1..q2).find(|&a| primitive(&inner, a)).expect("cyclic group"),
        };
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![u32::MAX; q2 as usize];
        let mut x = 1u32;
        for i in 0..n as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = inner.mul_reference(x, inner.theta);
        }
        let copy = exp.clone();
        exp.extend(copy);
        inner.beta = exp[(q - 1) as usize];
        inner.exp = exp;
        inner.log = log;
        Ok(ExtField { inner: Arc::new(inner) })
    }

    pub fn base(&self) -> &Field {
        &self.inner.base
    }

    /// `(c0, c1)` of the defining polynomial `t^2 + c1 t + c0`.
    pub fn modulus(&self) -> (u32, u32) {
        (self.inner.c0, self.inner.c1)
    }

    pub fn theta_ext(&self) -> u32 {
        self.inner.theta
    }

    /// `theta_ext^(q-1)`, a primitive `(q+1)`-th root of unity.
    pub fn beta(&self) -> u32 {
        self.inner.beta
    }

    /// `(a, b)` with `x = a + b e`.
    pub fn decompose(&self, x: u32) -> (u32, u32) {
        let q = self.inner.base.q();
        (x % q, x / q)
    }

    pub fn compose(&self, a: u32, b: u32) -> u32 {
        a + b * self.inner.base.q()
    }

    /// Frobenius conjugate `x^q`.
    pub fn conj(&self, x: u32) -> u32 {
        self.pow(x, self.inner.base.q() as i64).expect("nonnegative exponent")
    }

    /// Whether `x` lies in the base field.
    pub fn in_base(&self, x: u32) -> bool {
        x < self.inner.base.q()
    }

    pub fn mul_reference(&self, a: u32, b: u32) -> u32 {
        self.inner.mul_reference(a, b)
    }

    pub fn element(&self, enc: u32) -> Result<Element<ExtField>> {
        Element::new(self.clone(), enc)
    }
}

impl ExtInner {
    fn mul_reference(&self, x: u32, y: u32) -> u32 {
        let f = &self.base;
        let q = f.q();
        let (a, b) = (x % q, x / q);
        let (c, d) = (y % q, y / q);
        let bd = f.mul_reference(b, d);
        let re = f.sub(f.mul_reference(a, c), f.mul_reference(bd, self.c0));
        let im = f.sub(f.add(f.mul_reference(a, d), f.mul_reference(b, c)), f.mul_reference(bd, self.c1));
        re + im * q
    }
}

impl FiniteField for ExtField {
    fn order(&self) -> u32 {
        self.inner.q2
    }

    fn characteristic(&self) -> u32 {
        self.inner.base.p()
    }

    fn add(&self, x: u32, y: u32) -> u32 {
        let f = &self.inner.base;
        let q = f.q();
        f.add(x % q, y % q) + f.add(x / q, y / q) * q
    }

    fn neg(&self, x: u32) -> u32 {
        let f = &self.inner.base;
        let q = f.q();
        f.neg(x % q) + f.neg(x / q) * q
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let f = &*self.inner;
        f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
    }

    fn primitive(&self) -> u32 {
        self.inner.theta
    }

    fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inner.log[a as usize])
    }

    fn exp(&self, e: u64) -> u32 {
        self.inner.exp[(e % (self.inner.q2 as u64 - 1)) as usize]
    }

    /// `a+(b)*e` with base-field parts rendered as polynomials in `t`.
    fn render(&self, x: u32) -> String {
        let f = &self.inner.base;
        let (a, b) = self.decompose(x);
        if b == 0 {
            return f.render(a);
        }
        let rb = f.render(b);
        let eb = if b == 1 {
            "e".to_string()
        } else if rb.contains('+') {
            format!("({rb})*e")
        } else {
            format!("{rb}*e")
        };
        if a == 0 {
            eb
        } else {
            format!("{}+{eb}", f.render(a))
        }
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base
                && self.inner.c0 == other.inner.c0
                && self.inner.c1 == other.inner.c1
                && self.inner.theta == other.inner.theta)
    }
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^2) over {:?} mod t^2+{}t+{}", self.inner.base.q(), self.inner.base, self.inner.c1, self.inner.c0)
    }
}

/// Binary operations accepted by [`arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element tagged with its field, for checked arithmetic.
#[derive(Clone, Debug, PartialEq)]
pub struct Element<F: FiniteField = Field> {
    field: F,
    enc: u32,
}

impl<F: FiniteField> Element<F> {
    pub fn new(field: F, enc: u32) -> Result<Self> {
        if enc >= field.order() {
            return Err(Error::IndexOutOfRange { index: enc as usize, limit: field.order() as usize });
        }
        Ok(Element { field, enc })
    }

    pub fn enc(&self) -> u32 {
        self.enc
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.enc == 0
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(Element { field: self.field.clone(), enc: self.field.inv(self.enc)? })
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        Ok(Element { field: self.field.clone(), enc: self.field.pow(self.enc, e)? })
    }

    pub fn neg(&self) -> Self {
        Element { field: self.field.clone(), enc: self.field.neg(self.enc) }
    }

    pub fn order(&self) -> u64 {
        self.field.element_order(self.enc)
    }
}

/// Checked arithmetic: fails on mixed fields or division by zero.
pub fn arith<F: FiniteField>(a: &Element<F>, b: &Element<F>, op: ArithOp) -> Result<Element<F>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let enc = match op {
        ArithOp::Add => f.add(a.enc, b.enc),
        ArithOp::Sub => f.sub(a.enc, b.enc),
        ArithOp::Mul => f.mul(a.enc, b.enc),
        ArithOp::Div => f.div(a.enc, b.enc)?,
    };
    Ok(Element { field: f.clone(), enc })
}

impl<F: FiniteField> fmt::Display for Element<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(self.enc))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf8_default_modulus_and_powers() {
        let f = Field::new(2, 3, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        assert_eq!(f.modulus_encoding(), 11);
        assert_eq!(f.theta(), 2);
        let powers: Vec<u32> = (0..7).map(|i| f.exp(i)).collect();
        assert_eq!(powers, vec![1, 2, 4, 3, 6, 7, 5]);
        assert_eq!(f.render(5), "1+t^2");
        assert_eq!(f.render(7), "1+t+t^2");
    }

    #[test]
    fn tables_match_reference() {
        for (p, m) in [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 1), (3, 3)] {
            let f = Field::new(p, m, None).unwrap();
            for a in 0..f.q() {
                for b in 0..f.q() {
                    assert_eq!(f.mul(a, b), f.mul_reference(a, b));
                    assert_eq!(f.add(a, b), f.add_reference(a, b));
                }
            }
        }
    }

    #[test]
    fn reducible_and_bad_modulus() {
        assert_eq!(Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(), Error::ReducibleModulus);
        assert_eq!(Field::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(Field::new(2, 3, Some(&[1, 1, 1])), Err(Error::DegreeMismatch { expected: 3, got: 2 })));
    }

    #[test]
    fn prime_field_is_integers_mod_p() {
        let f = Field::new(7, 1, None).unwrap();
        assert_eq!(f.mul(3, 5), 1);
        assert_eq!(f.add(4, 5), 2);
        assert_eq!(f.theta(), 3);
        assert_eq!(f.neg(2), 5);
    }

    #[test]
    fn pow_edge_cases() {
        let f = Field::of_order(8).unwrap();
        assert_eq!(f.pow(0, 0).unwrap(), 1);
        assert_eq!(f.pow(0, 3).unwrap(), 0);
        assert_eq!(f.pow(0, -1).unwrap_err(), Error::DivisionByZero);
        assert_eq!(f.pow(2, -1).unwrap(), f.inv(2).unwrap());
        assert_eq!(f.pow(2, 7).unwrap(), 1);
    }

    #[test]
    fn mismatched_fields_rejected() {
        let f = Field::of_order(8).unwrap();
        let g = Field::of_order(9).unwrap();
        let a = f.element(3).unwrap();
        let b = g.element(3).unwrap();
        assert_eq!(arith(&a, &b, ArithOp::Add).unwrap_err(), Error::FieldMismatch);
        let z = f.element(0).unwrap();
        assert_eq!(arith(&a, &z, ArithOp::Div).unwrap_err(), Error::DivisionByZero);
    }

    #[test]
    fn parse_symbolic() {
        let f = Field::of_order(8).unwrap();
        assert_eq!(f.parse("1+t^2").unwrap(), 5);
        assert_eq!(f.parse("t").unwrap(), 2);
        assert_eq!(f.parse("6").unwrap(), 6);
        assert!(f.parse("t^3").is_err());
    }

    #[test]
    fn extension_over_gf8_with_override() {
        let f = Field::of_order(8).unwrap();
        // t^2 + theta t + 1
        let e = ExtField::new(&f, Some((1, 2)), Some(44)).unwrap();
        let beta = e.beta();
        assert_eq!(beta, 8);
        assert_eq!(e.pow(beta, 9).unwrap(), 1);
        assert_eq!(e.pow(44, 7).unwrap(), beta);
        // beta^2 = 1 + theta beta, beta^3 = theta + (1+theta^2) beta
        assert_eq!(e.pow(beta, 2).unwrap(), e.compose(1, 2));
        assert_eq!(e.pow(beta, 3).unwrap(), e.compose(2, 5));
        assert_eq!(e.conj(beta), e.inv(beta).unwrap());
        assert_eq!(ExtField::new(&f, Some((1, 2)), Some(8)).unwrap_err(), Error::NotPrimitive);
    }

    #[test]
    fn extension_tables_match_reference() {
        for q in [2, 3, 4, 5, 7, 8, 9] {
            let f = Field::of_order(q).unwrap();
            let e = ExtField::new(&f, None, None).unwrap();
            for a in 0..e.order() {
                for b in 0..e.order() {
                    assert_eq!(e.mul(a, b), e.mul_reference(a, b));
                }
            }
            assert_eq!(e.element_order(e.beta()), (q + 1) as u64);
        }
    }
}
