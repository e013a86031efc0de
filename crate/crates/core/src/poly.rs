//! Univariate polynomials over a [`FiniteField`], stored as ascending
//! coefficient vectors with no trailing zeros. The zero polynomial is empty.

use crate::error::{Error, Result};
use crate::galois::FiniteField;

pub type Poly = Vec<u32>;

pub fn trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

pub fn trimmed(p: &[u32]) -> Poly {
    let mut v = p.to_vec();
    trim(&mut v);
    v
}

pub fn degree(p: &[u32]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

pub fn is_zero(p: &[u32]) -> bool {
    p.iter().all(|&c| c == 0)
}

pub fn add<F: FiniteField>(f: &F, a: &[u32], b: &[u32]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| f.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    trim(&mut out);
    out
}

pub fn sub<F: FiniteField>(f: &F, a: &[u32], b: &[u32]) -> Poly {
    let nb: Poly = b.iter().map(|&c| f.neg(c)).collect();
    add(f, a, &nb)
}

pub fn scale<F: FiniteField>(f: &F, a: &[u32], c: u32) -> Poly {
    let mut out: Poly = a.iter().map(|&x| f.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub fn mul<F: FiniteField>(f: &F, a: &[u32], b: &[u32]) -> Poly {
    if is_zero(a) || is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub fn divrem<F: FiniteField>(f: &F, a: &[u32], b: &[u32]) -> Result<(Poly, Poly)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let lead_inv = f.inv(b[db])?;
    let mut r = trimmed(a);
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut quo = vec![0u32; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let c = f.mul(r[top], lead_inv);
        let shift = top - db;
        quo[shift] = c;
        for (i, &bi) in b[..=db].iter().enumerate() {
            r[shift + i] = f.sub(r[shift + i], f.mul(c, bi));
        }
        trim(&mut r);
    }
    trim(&mut quo);
    Ok((quo, r))
}

/// Monic greatest common divisor; zero if both inputs are zero.
pub fn gcd<F: FiniteField>(f: &F, a: &[u32], b: &[u32]) -> Poly {
    let (mut a, mut b) = (trimmed(a), trimmed(b));
    while !b.is_empty() {
        let (_, r) = divrem(f, &a, &b).expect("nonzero divisor");
        a = b;
        b = r;
    }
    monic(f, &a)
}

pub fn monic<F: FiniteField>(f: &F, a: &[u32]) -> Poly {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = f.inv(a[d]).expect("nonzero leading coefficient");
            scale(f, &a[..=d], inv)
        }
    }
}

pub fn eval<F: FiniteField>(f: &F, a: &[u32], x: u32) -> u32 {
    a.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
}

/// `prod (x - r)` over the given roots.
pub fn from_roots<F: FiniteField>(f: &F, roots: &[u32]) -> Poly {
    roots.iter().fold(vec![1], |acc, &r| mul(f, &acc, &[f.neg(r), 1]))
}

/// Renders with the field's element formatting, ascending powers of `x`.
pub fn render<F: FiniteField>(f: &F, a: &[u32], var: &str) -> String {
    let terms: Vec<String> = a
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| {
            let coef = f.render(c);
            let coef = if i > 0 && coef.contains('+') { format!("({coef})") } else { coef };
            match (i, c) {
                (0, _) => coef,
                (1, 1) => var.to_string(),
                (1, _) => format!("{coef}{var}"),
                (i, 1) => format!("{var}^{i}"),
                (i, _) => format!("{coef}{var}^{i}"),
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

/// Determinant of a square matrix of polynomials by Euclidean row reduction.
pub fn det<F: FiniteField>(f: &F, m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    let mut a: Vec<Vec<Poly>> = m.iter().map(|r| r.iter().map(|p| trimmed(p)).collect()).collect();
    let mut result: Poly = vec![1];
    let mut negate = false;
    for col in 0..n {
        loop {
            let pivot = (col..n)
                .filter(|&r| !a[r][col].is_empty())
                .min_by_key(|&r| a[r][col].len());
            let Some(pr) = pivot else { return Vec::new() };
            if pr != col {
                a.swap(pr, col);
                negate = !negate;
            }
            let mut done = true;
            for r in col + 1..n {
                if a[r][col].is_empty() {
                    continue;
                }
                let (quo, _) = divrem(f, &a[r][col], &a[col][col]).expect("nonzero pivot");
                for c in col..n {
                    let t = mul(f, &quo, &a[col][c]);
                    a[r][c] = sub(f, &a[r][c], &t);
                }
                if !a[r][col].is_empty() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        result = mul(f, &result, &a[col][col]);
    }
    if negate {
        result = result.iter().map(|&c| f.neg(c)).collect();
    }
    result
}
