//! Linear block codes given by parity-check matrices: root-based and
//! evaluation-based constructions, realification, and exact minimum distance.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use serde_json::json;

use crate::error::{Error, Result};
use crate::galois::{ExtField, FiniteField, Field};
use crate::linalg::FMatrix;
use crate::poly::{self, Poly};

/// Default cap on the number of column subsets examined.
pub const DEFAULT_SUBSET_BUDGET: u64 = 50_000_000;

/// Above this many codewords the enumeration cross-check is skipped.
pub const ENUMERATION_LIMIT: u64 = 1 << 20;

/// Defining set `{ base_point * step^j : j in range }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSpec {
    pub base_point: u32,
    pub step: u32,
    pub range: RangeInclusive<i64>,
}

impl RootSpec {
    pub fn roots<F: FiniteField>(&self, f: &F) -> Result<Vec<u32>> {
        let mut out = Vec::new();
        for j in self.range.clone() {
            out.push(f.mul(self.base_point, f.pow(self.step, j)?));
        }
        check_distinct(&out, Error::DuplicateRoots)?;
        Ok(out)
    }
}

fn check_distinct(xs: &[u32], err: Error) -> Result<()> {
    let mut seen = HashSet::new();
    if xs.iter().all(|x| seen.insert(*x)) {
        Ok(())
    } else {
        Err(err)
    }
}

/// `prod (x - r)`; roots must be distinct.
pub fn generator_from_roots<F: FiniteField>(f: &F, roots: &[u32]) -> Result<Poly> {
    check_distinct(roots, Error::DuplicateRoots)?;
    Ok(poly::from_roots(f, roots))
}

/// Whether the polynomial with the given roots has all coefficients in the
/// base field. Decided twice: by closure of the root set under `x -> x^q`
/// and by expanding the product. The answers must agree.
pub fn base_field_closure_check(ext: &ExtField, roots: &[u32]) -> Result<bool> {
    let g = generator_from_roots(ext, roots)?;
    let by_coefficients = g.iter().all(|&c| ext.in_base(c));
    let set: HashSet<u32> = roots.iter().copied().collect();
    let by_closure = roots.iter().all(|&r| set.contains(&ext.conj(r)));
    if by_coefficients != by_closure {
        return Err(Error::PropertyViolation("conjugate closure and coefficient test disagree".into()));
    }
    Ok(by_closure)
}

/// Rows `[1, x, x^2, ..., x^(n-1)]`, one per root.
pub fn root_parity_matrix<F: FiniteField>(f: &F, roots: &[u32], n: usize) -> FMatrix<F> {
    let mut data = Vec::with_capacity(roots.len() * n);
    for &x in roots {
        let mut p = 1;
        for _ in 0..n {
            data.push(p);
            p = f.mul(p, x);
        }
    }
    FMatrix::new(f.clone(), roots.len(), n, data).expect("entries in field")
}

/// Generalized Reed-Solomon parity check: entry `(j, i) = v_i * a_i^j`, `0^0 = 1`.
pub fn evaluation_parity_matrix(f: &Field, points: &[u32], rows: usize, multipliers: &[u32]) -> Result<FMatrix> {
    if points.len() != multipliers.len() {
        return Err(Error::DimensionMismatch("points and multipliers differ in length".into()));
    }
    check_distinct(points, Error::DuplicatePoints)?;
    if multipliers.contains(&0) {
        return Err(Error::ZeroMultiplier);
    }
    let n = points.len();
    let mut m = FMatrix::zeros(f.clone(), rows, n);
    for (i, (&a, &v)) in points.iter().zip(multipliers).enumerate() {
        let mut p = 1;
        for j in 0..rows {
            m.set(j, i, f.mul(v, p));
            p = f.mul(p, a);
        }
    }
    Ok(m)
}

/// Splits every row `a + b e` into the rows `a` and `b` over the base field,
/// dropping rows that vanish.
pub fn realify(m: &FMatrix<ExtField>) -> FMatrix {
    let ext = m.field();
    let base = ext.base().clone();
    let mut rows = Vec::new();
    for r in 0..m.rows() {
        let (re, im): (Vec<u32>, Vec<u32>) = m.row(r).iter().map(|&x| ext.decompose(x)).unzip();
        for part in [re, im] {
            if part.iter().any(|&x| x != 0) {
                rows.push(part);
            }
        }
    }
    FMatrix::from_rows(base, m.cols(), &rows).expect("consistent widths")
}

/// Maps a polynomial with coefficients in the base field down to it.
pub fn to_base_poly(ext: &ExtField, p: &[u32]) -> Result<Poly> {
    if p.iter().all(|&c| ext.in_base(c)) {
        Ok(p.to_vec())
    } else {
        Err(Error::PropertyViolation("polynomial has coefficients outside the base field".into()))
    }
}

/// Result of the minimum-distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDistance {
    pub d: usize,
    /// Smallest dependent column set, first in lexicographic order.
    pub support: Vec<usize>,
    /// Whether codeword enumeration confirmed the value.
    pub cross_checked: bool,
}

/// Visits `w`-subsets of `0..n` in lexicographic order until `visit` returns true.
pub(crate) fn for_each_subset(n: usize, w: usize, mut visit: impl FnMut(&[usize]) -> Result<bool>) -> Result<bool> {
    if w > n {
        return Ok(false);
    }
    let mut idx: Vec<usize> = (0..w).collect();
    loop {
        if visit(&idx)? {
            return Ok(true);
        }
        let Some(i) = (0..w).rev().find(|&i| idx[i] != i + n - w) else { return Ok(false) };
        idx[i] += 1;
        for j in i + 1..w {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

fn smallest_dependent_set(parity: &FMatrix, max_w: usize, budget: u64) -> Result<Option<Vec<usize>>> {
    let n = parity.cols();
    let mut spent = 0u64;
    for w in 1..=max_w.min(n) {
        let mut found = None;
        for_each_subset(n, w, |s| {
            spent += 1;
            if spent > budget {
                return Err(Error::SearchBudgetExceeded { budget });
            }
            if parity.select_columns(s)?.rank() < w {
                found = Some(s.to_vec());
                return Ok(true);
            }
            Ok(false)
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Minimum weight over all nonzero codewords, by enumeration.
pub fn min_distance_by_enumeration(parity: &FMatrix) -> Option<usize> {
    let f = parity.field();
    let basis = parity.nullspace();
    let (k, n, q) = (basis.len(), parity.cols(), f.q());
    let mut msg = vec![0u32; k];
    let mut word = vec![0u32; n];
    let mut best = None::<usize>;
    // Odometer over messages; the word is updated for each digit that changes.
    'outer: loop {
        let mut i = 0;
        loop {
            if i == k {
                break 'outer;
            }
            let old = msg[i];
            let new = (old + 1) % q;
            msg[i] = new;
            let delta = f.sub(new, old);
            for (w, &b) in word.iter_mut().zip(&basis[i]) {
                *w = f.add(*w, f.mul(delta, b));
            }
            if new != 0 {
                break;
            }
            i += 1;
        }
        let wt = word.iter().filter(|&&x| x != 0).count();
        if wt > 0 && best.is_none_or(|b| wt < b) {
            best = Some(wt);
        }
    }
    best
}

/// Exact minimum distance of the code `{c : H c = 0}` by searching for the
/// smallest dependent column set, cross-checked by enumeration when small.
pub fn min_distance(parity: &FMatrix, budget: u64) -> Result<MinDistance> {
    let n = parity.cols();
    let k = n - parity.rank();
    if k == 0 {
        return Err(Error::InvalidParams("code has dimension 0".into()));
    }
    let support = smallest_dependent_set(parity, n - k + 1, budget)?
        .ok_or_else(|| Error::PropertyViolation("no dependent column set within the Singleton bound".into()))?;
    let d = support.len();
    let mut cross_checked = false;
    let q = parity.field().q() as u64;
    if q.checked_pow(k as u32).is_some_and(|c| c <= ENUMERATION_LIMIT) {
        let other = min_distance_by_enumeration(parity);
        if other != Some(d) {
            return Err(Error::PropertyViolation(format!(
                "column search gives d = {d}, enumeration gives {other:?}"
            )));
        }
        cross_checked = true;
    }
    Ok(MinDistance { d, support, cross_checked })
}

/// MDS test with a certificate: the smallest dependent set of at most `n - k`
/// columns, if one exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MdsCheck {
    pub is_mds: bool,
    pub violating: Option<Vec<usize>>,
}

pub fn is_mds_block(parity: &FMatrix, budget: u64) -> Result<MdsCheck> {
    let r = parity.rank();
    let violating = smallest_dependent_set(parity, r, budget)?;
    Ok(MdsCheck { is_mds: violating.is_none(), violating })
}

/// A linear block code over `F_q` with its exact minimum distance.
#[derive(Clone, Debug, PartialEq)]
pub struct BlockCode {
    pub n: usize,
    pub k: usize,
    pub parity: FMatrix,
    pub d: usize,
    pub is_mds: bool,
    pub generator_poly: Option<Poly>,
    pub modulus_poly: Option<Poly>,
}

impl BlockCode {
    pub fn from_parity(parity: FMatrix) -> Result<BlockCode> {
        Self::with_budget(parity, DEFAULT_SUBSET_BUDGET)
    }

    pub fn with_budget(parity: FMatrix, budget: u64) -> Result<BlockCode> {
        let n = parity.cols();
        let k = n - parity.rank();
        let md = min_distance(&parity, budget)?;
        Ok(BlockCode {
            n,
            k,
            d: md.d,
            is_mds: md.d == n - k + 1,
            parity,
            generator_poly: None,
            modulus_poly: None,
        })
    }

    /// Attaches generator and modulus polynomials for (constacyclic) codes.
    pub fn with_polynomials(mut self, generator: Poly, modulus: Poly) -> Result<BlockCode> {
        let f = self.parity.field().clone();
        let (_, r) = poly::divrem(&f, &modulus, &generator)?;
        if !r.is_empty() {
            return Err(Error::PropertyViolation("generator does not divide the modulus".into()));
        }
        if poly::degree(&generator) != Some(self.n - self.k) || poly::degree(&modulus) != Some(self.n) {
            return Err(Error::PropertyViolation("polynomial degrees do not match the code".into()));
        }
        self.generator_poly = Some(generator);
        self.modulus_poly = Some(modulus);
        Ok(self)
    }

    pub fn q(&self) -> u32 {
        self.parity.field().q()
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "q": self.q(),
            "n": self.n,
            "k": self.k,
            "d": self.d,
            "is_mds": self.is_mds,
            "parity": self.parity.to_json(),
            "generator_poly": self.generator_poly,
            "modulus_poly": self.modulus_poly,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn repeated_column_breaks_mds() {
        let f = Field::of_order(8).unwrap();
        let h = FMatrix::from_rows(f, 4, &[vec![1, 1, 1, 1], vec![2, 4, 4, 3]]).unwrap();
        let c = is_mds_block(&h, 1000).unwrap();
        assert!(!c.is_mds);
        assert_eq!(c.violating, Some(vec![1, 2]));
    }

    #[test]
    fn empty_parity_is_whole_space() {
        let f = Field::of_order(4).unwrap();
        let h = FMatrix::zeros(f, 0, 3);
        let md = min_distance(&h, 100).unwrap();
        assert_eq!(md.d, 1);
    }

    #[test]
    fn full_rank_square_parity_rejected() {
        let f = Field::of_order(3).unwrap();
        let h = FMatrix::identity(f, 3);
        assert!(matches!(min_distance(&h, 100), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn duplicate_points_and_zero_multiplier() {
        let f = Field::of_order(5).unwrap();
        assert_eq!(evaluation_parity_matrix(&f, &[1, 1], 1, &[1, 1]).unwrap_err(), Error::DuplicatePoints);
        assert_eq!(evaluation_parity_matrix(&f, &[1, 2], 1, &[1, 0]).unwrap_err(), Error::ZeroMultiplier);
        assert_eq!(generator_from_roots(&f, &[2, 2]).unwrap_err(), Error::DuplicateRoots);
    }

    #[test]
    fn closure_check_on_conjugate_pairs() {
        let f = Field::of_order(8).unwrap();
        let e = ExtField::new(&f, None, None).unwrap();
        let b = e.beta();
        let pair = [b, e.inv(b).unwrap()];
        assert!(base_field_closure_check(&e, &pair).unwrap());
        assert!(!base_field_closure_check(&e, &[b]).unwrap());
    }
}
