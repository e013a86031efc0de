//! Convolutional codes `V = { v(D) : G(D) v(D) = 0 }` described by a
//! polynomial parity-check matrix, with exact column distances and
//! free-distance certificates.

mod polymatrix;
pub mod search;

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

pub use polymatrix::PolyMatrix;
pub use search::{Engine, Outcome, SearchConfig};

use crate::blockcode::{for_each_subset, min_distance, DEFAULT_SUBSET_BUDGET};
use crate::error::{Error, Result};
use crate::galois::Field;
use crate::linalg::FMatrix;
use crate::poly::{self, Poly};

/// `G(D) = H0 + H1~ D` where `H1~` is `H1` with zero rows added on top to
/// match the height of `H0`.
pub fn unit_memory_parity(h0: &FMatrix, h1: &FMatrix) -> Result<PolyMatrix> {
    if h0.field() != h1.field() {
        return Err(Error::FieldMismatch);
    }
    if h0.cols() != h1.cols() {
        return Err(Error::DimensionMismatch(format!("H0 has {} columns, H1 has {}", h0.cols(), h1.cols())));
    }
    if h1.rows() > h0.rows() {
        return Err(Error::RowCountExceeded { h0: h0.rows(), h1: h1.rows() });
    }
    if h0.rank() != h0.rows() || h1.rank() != h1.rows() {
        return Err(Error::RankDeficient);
    }
    PolyMatrix::new(vec![h0.clone(), h1.pad_top(h0.rows() - h1.rows())])
}

/// Singleton-type bound and the indices `M` and `L`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Indices {
    pub singleton_bound: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "L")]
    pub l: usize,
}

/// `(n-k)(floor(delta/k)+1) + delta + 1`, `M = floor(delta/k) + ceil(delta/(n-k))`,
/// `L = floor(delta/k) + floor(delta/(n-k))`.
pub fn singleton_and_indices(n: usize, k: usize, delta: usize) -> Result<Indices> {
    if k == 0 || k >= n {
        return Err(Error::InvalidParams(format!("need 0 < k < n, got n = {n}, k = {k}")));
    }
    let r = n - k;
    Ok(Indices {
        singleton_bound: r * (delta / k + 1) + delta + 1,
        m: delta / k + delta.div_ceil(r),
        l: delta / k + delta / r,
    })
}

/// Row-reducedness and basicness of a full-row-rank polynomial matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimality {
    pub row_reduced: bool,
    pub basic: bool,
    /// Monic gcd of all maximal minors.
    pub minors_gcd: Poly,
}

impl Minimality {
    pub fn is_minimal(&self) -> bool {
        self.row_reduced && self.basic
    }
}

fn maximal_minors(p: &PolyMatrix) -> Vec<Poly> {
    let (k, n) = (p.rows(), p.cols());
    let f = p.field();
    let entries: Vec<Vec<Poly>> = (0..k).map(|r| (0..n).map(|c| p.entry(r, c)).collect()).collect();
    let mut out = Vec::new();
    for_each_subset(n, k, |cols| {
        let sub: Vec<Vec<Poly>> = entries.iter().map(|row| cols.iter().map(|&c| row[c].clone()).collect()).collect();
        out.push(poly::det(f, &sub));
        Ok(false)
    })
    .expect("visitor never fails");
    out
}

/// Row reduced: the leading row coefficient matrix has full rank. Basic: the
/// maximal minors have no common factor.
pub fn minimality_check(p: &PolyMatrix) -> Result<Minimality> {
    if p.rows() > p.cols() || p.rows() == 0 {
        return Err(Error::RankDeficient);
    }
    let minors = maximal_minors(p);
    if minors.iter().all(|m| m.is_empty()) {
        return Err(Error::RankDeficient);
    }
    let f = p.field();
    let g = minors.iter().fold(Vec::new(), |acc, m| poly::gcd(f, &acc, m));
    let row_reduced = p.row_degrees().iter().all(|d| d.is_some()) && p.leading_row_matrix().rank() == p.rows();
    Ok(Minimality { row_reduced, basic: g.len() == 1, minors_gcd: g })
}

/// Rank of `p` over the rational function field.
pub fn polynomial_rank(p: &PolyMatrix) -> usize {
    let f = p.field();
    let entries: Vec<Vec<Poly>> = (0..p.rows()).map(|r| (0..p.cols()).map(|c| p.entry(r, c)).collect()).collect();
    for size in (1..=p.rows().min(p.cols())).rev() {
        let mut nonzero = false;
        for_each_subset(p.rows(), size, |rows| {
            for_each_subset(p.cols(), size, |cols| {
                let sub: Vec<Vec<Poly>> =
                    rows.iter().map(|&r| cols.iter().map(|&c| entries[r][c].clone()).collect()).collect();
                nonzero = !poly::det(f, &sub).is_empty();
                Ok(nonzero)
            })
        })
        .expect("visitor never fails");
        if nonzero {
            return size;
        }
    }
    0
}

/// Minimal polynomial basis (as rows) of `{ v(D) : P(D) v(D) = 0 }`, built
/// degree by degree from the kernels of the block Toeplitz matrices.
pub fn kernel_basis(p: &PolyMatrix) -> Result<PolyMatrix> {
    let f = p.field().clone();
    let n = p.cols();
    let target = n - polynomial_rank(p);
    if target == 0 {
        return Err(Error::InvalidParams("kernel is trivial".into()));
    }
    let limit: usize = p.row_degrees().iter().map(|d| d.unwrap_or(0)).sum::<usize>() + 1;
    let mut chosen: Vec<(usize, Vec<u32>)> = Vec::new();
    for d in 0..=limit {
        let width = (d + 1) * n;
        let mut span: Vec<Vec<u32>> = Vec::new();
        for (e, b) in &chosen {
            for t in 0..=d - e {
                let mut v = vec![0u32; width];
                v[t * n..t * n + b.len()].copy_from_slice(b);
                span.push(v);
            }
        }
        let mut rank = FMatrix::from_rows(f.clone(), width, &span)?.rank();
        for kv in p.full_toeplitz(d).nullspace() {
            span.push(kv.clone());
            let r = FMatrix::from_rows(f.clone(), width, &span)?.rank();
            if r > rank {
                rank = r;
                chosen.push((d, kv));
                if chosen.len() == target {
                    break;
                }
            } else {
                span.pop();
            }
        }
        if chosen.len() == target {
            let top = chosen.iter().map(|(e, _)| *e).max().unwrap_or(0);
            let mut coeffs = vec![FMatrix::zeros(f.clone(), target, n); top + 1];
            for (row, (e, b)) in chosen.iter().enumerate() {
                for i in 0..=*e {
                    for c in 0..n {
                        coeffs[i].set(row, c, b[i * n + c]);
                    }
                }
            }
            let basis = PolyMatrix::new(coeffs)?;
            if !minimality_check(&basis)?.is_minimal() {
                return Err(Error::PropertyViolation("kernel basis is not minimal".into()));
            }
            return Ok(basis);
        }
    }
    Err(Error::PropertyViolation("kernel basis did not close within the degree bound".into()))
}

/// Removes rows, each of which must have the maximal row degree (and degree
/// at least one).
pub fn omit_rows(p: &PolyMatrix, rows: &[usize]) -> Result<PolyMatrix> {
    let degs = p.row_degrees();
    let max = degs.iter().flatten().copied().max().unwrap_or(0);
    for &r in rows {
        if r >= p.rows() {
            return Err(Error::IndexOutOfRange { index: r, limit: p.rows() });
        }
        if max == 0 || degs[r] != Some(max) {
            return Err(Error::NotMaximalDegreeRow { row: r });
        }
    }
    let keep: Vec<usize> = (0..p.rows()).filter(|r| !rows.contains(r)).collect();
    if keep.is_empty() {
        return Err(Error::InvalidParams("cannot omit every row".into()));
    }
    p.select_rows(&keep)
}

/// Parameters of an `(n, k, delta)` code given by a minimal parity-check matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvCodeDesc {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub nu: usize,
    pub parity: PolyMatrix,
    pub row_degrees: Vec<usize>,
}

impl ConvCodeDesc {
    pub fn from_parity(parity: PolyMatrix) -> Result<ConvCodeDesc> {
        let (kappa, n) = (parity.rows(), parity.cols());
        if kappa == 0 || kappa >= n {
            return Err(Error::InvalidParams(format!("need 0 < rows < cols, got {kappa}x{n}")));
        }
        let m = minimality_check(&parity)?;
        if !m.is_minimal() {
            return Err(Error::InvalidParams(format!(
                "parity matrix is not minimal (row reduced: {}, basic: {})",
                m.row_reduced, m.basic
            )));
        }
        let row_degrees: Vec<usize> = parity.row_degrees().iter().map(|d| d.unwrap_or(0)).collect();
        Ok(ConvCodeDesc {
            n,
            k: n - kappa,
            delta: row_degrees.iter().sum(),
            nu: parity.memory(),
            parity,
            row_degrees,
        })
    }

    /// The code generated by the rows of `generator`.
    pub fn from_generator(generator: &PolyMatrix) -> Result<ConvCodeDesc> {
        ConvCodeDesc::from_parity(kernel_basis(generator)?)
    }

    pub fn field(&self) -> &Field {
        self.parity.field()
    }

    pub fn indices(&self) -> Result<Indices> {
        singleton_and_indices(self.n, self.k, self.delta)
    }

    /// A minimal generator matrix of the code.
    pub fn generator(&self) -> Result<PolyMatrix> {
        kernel_basis(&self.parity)
    }
}

/// One column distance, exact or a lower bound when the budget ran out.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColumnDistance {
    pub j: usize,
    pub value: usize,
    pub exact: bool,
    pub witness: Option<Vec<u32>>,
    pub work: u64,
}

/// `(n-k)(j+1) + 1`, the largest possible `d_j^c`.
pub fn column_cap(n: usize, k: usize, j: usize) -> usize {
    (n - k) * (j + 1) + 1
}

fn column_distance_inner(desc: &ConvCodeDesc, j: usize, min_first: usize, cfg: &SearchConfig) -> Result<ColumnDistance> {
    let m = desc.parity.sliding_matrix(j);
    let cap = column_cap(desc.n, desc.k, j);
    match search::min_weight(&m, desc.n, cap, min_first, cfg) {
        Outcome::Found { weight, witness, work } => {
            Ok(ColumnDistance { j, value: weight, exact: true, witness: Some(witness), work })
        }
        Outcome::NotFound { .. } => Err(Error::PropertyViolation(format!(
            "no truncated codeword with nonzero first block of weight <= {cap} at j = {j}"
        ))),
        Outcome::Exhausted { lower, best, work } => Ok(ColumnDistance {
            j,
            value: lower,
            exact: false,
            witness: best.map(|(_, v)| v),
            work,
        }),
    }
}

/// `d_j^c`: minimum weight of `(v_0, ..., v_j)` with `v_0 != 0` in the kernel
/// of the sliding parity matrix. Fails with `BudgetExceeded` when the search
/// budget runs out.
pub fn column_distance(desc: &ConvCodeDesc, j: usize, budget: u64) -> Result<ColumnDistance> {
    column_distance_with(desc, j, &SearchConfig { engine: Engine::Support, budget })
}

pub fn column_distance_with(desc: &ConvCodeDesc, j: usize, cfg: &SearchConfig) -> Result<ColumnDistance> {
    let min_first = if j > 0 && cfg.engine == Engine::Support {
        column_distance_inner(desc, 0, 1, cfg)?.value
    } else {
        1
    };
    let c = column_distance_inner(desc, j, min_first, cfg)?;
    if c.exact {
        Ok(c)
    } else {
        Err(Error::BudgetExceeded { lower: c.value, upper: None })
    }
}

/// All column distances `d_0^c ..= d_jmax^c`, reusing `d_0^c` to prune.
pub fn column_distances(desc: &ConvCodeDesc, jmax: usize, cfg: &SearchConfig) -> Result<Vec<ColumnDistance>> {
    let mut out: Vec<ColumnDistance> = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let min_first = out.first().map_or(1, |c| c.value);
        out.push(column_distance_inner(desc, j, min_first, cfg)?);
    }
    Ok(out)
}

/// Smallest weight of a nonzero codeword of degree at most `degree`; an upper
/// bound on the free distance. `None` if there is none within the budget.
pub fn terminated_min_weight(desc: &ConvCodeDesc, degree: usize, min_first: usize, cfg: &SearchConfig) -> Option<(usize, Vec<u32>)> {
    let m = desc.parity.full_toeplitz(degree);
    let cap = (degree + 1) * desc.n;
    match search::min_weight(&m, desc.n, cap, min_first, cfg) {
        Outcome::Found { weight, witness, .. } => Some((weight, witness)),
        Outcome::NotFound { .. } => None,
        Outcome::Exhausted { best, .. } => best,
    }
}

/// Bounds from splitting a unit-memory parity matrix: `d0` and `d1` are the
/// distances of the kernels of `G_0` and `G_1`, `block_d` that of the kernel
/// of both stacked (`None` if it is trivial).
pub fn dfree_bounds(desc: &ConvCodeDesc, block_d: Option<usize>, d0: usize, d1: usize) -> Result<(usize, usize)> {
    let s = desc.indices()?.singleton_bound;
    let lower = block_d.map_or(d0 + d1, |b| (d0 + d1).min(b));
    let upper = block_d.map_or(s, |b| b.min(s));
    Ok((lower, upper))
}

/// Distances feeding [`dfree_bounds`], computed from the coefficient matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BlockSplit {
    pub d0: usize,
    pub d1: usize,
    pub block_d: Option<usize>,
}

fn kernel_distance(m: &FMatrix, budget: u64) -> Result<Option<usize>> {
    if m.rank() == m.cols() {
        return Ok(None);
    }
    Ok(Some(min_distance(m, budget)?.d))
}

pub fn block_split(desc: &ConvCodeDesc, budget: u64) -> Result<Option<BlockSplit>> {
    if desc.nu != 1 {
        return Ok(None);
    }
    let g0 = desc.parity.coeff(0);
    let g1 = desc.parity.coeff(1).nonzero_rows();
    let d0 = kernel_distance(&g0, budget)?.ok_or(Error::RankDeficient)?;
    let d1 = kernel_distance(&g1, budget)?.ok_or(Error::RankDeficient)?;
    let block_d = kernel_distance(&g0.vstack(&g1)?, budget)?;
    Ok(Some(BlockSplit { d0, d1, block_d }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Confirmed,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::Confirmed => "Confirmed",
            Verdict::Refuted => "Refuted",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

/// Where a free-distance bound came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Singleton { bound: usize },
    BlockSplit { d0: usize, d1: usize, block_d: Option<usize>, lower: usize, upper: usize },
    ColumnDistance { j: usize, value: usize },
    Terminated { degree: usize, weight: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassifyOptions {
    pub jmax: usize,
    pub search: SearchConfig,
    /// Budget for the block minimum-distance searches.
    pub block_budget: u64,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { jmax: 4, search: SearchConfig::default(), block_budget: DEFAULT_SUBSET_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConvReport {
    pub n: usize,
    pub k: usize,
    pub delta: usize,
    pub nu: usize,
    pub indices: Indices,
    pub column_distances: Vec<ColumnDistance>,
    pub dfree: (usize, usize),
    pub mds: Verdict,
    pub smds: Verdict,
    pub mdp: Verdict,
    pub certificates: Vec<Certificate>,
}

impl ConvReport {
    pub fn column(&self, j: usize) -> Option<&ColumnDistance> {
        self.column_distances.get(j)
    }

    /// The exact free distance, if the bounds meet.
    pub fn dfree_exact(&self) -> Option<usize> {
        (self.dfree.0 == self.dfree.1).then_some(self.dfree.0)
    }

    pub fn any_inexact(&self) -> bool {
        self.column_distances.iter().any(|c| !c.exact)
    }

    /// Largest `j` whose exact `d_j^c` meets its cap, with whether every
    /// earlier column distance meets its own cap too. Reported, not enforced.
    pub fn cap_cascade(&self) -> Option<(usize, bool)> {
        let at_cap = |c: &ColumnDistance| c.exact && c.value == column_cap(self.n, self.k, c.j);
        let top = self.column_distances.iter().rev().find(|c| at_cap(c))?;
        Some((top.j, self.column_distances[..top.j].iter().all(at_cap)))
    }

    pub fn to_json(&self) -> Value {
        let cols: BTreeMap<String, usize> = self.column_distances.iter().map(|c| (c.j.to_string(), c.value)).collect();
        let inexact: Vec<usize> = self.column_distances.iter().filter(|c| !c.exact).map(|c| c.j).collect();
        json!({
            "n": self.n,
            "k": self.k,
            "delta": self.delta,
            "nu": self.nu,
            "singleton_bound": self.indices.singleton_bound,
            "M": self.indices.m,
            "L": self.indices.l,
            "column_distances": cols,
            "column_distance_lower_bounds_only": inexact,
            "dfree": [self.dfree.0, self.dfree.1],
            "verdicts": {
                "mds": self.mds.as_str(),
                "smds": self.smds.as_str(),
                "mdp": self.mdp.as_str(),
            },
            "certificates": self.certificates,
            "cap_cascade": self.cap_cascade().map(|(j, holds)| json!({"j": j, "holds": holds})),
        })
    }

    pub fn render(&self) -> String {
        let mut s = format!(
            "({}, {}, {}) code, memory {}\nSingleton bound {}, M = {}, L = {}\n",
            self.n, self.k, self.delta, self.nu, self.indices.singleton_bound, self.indices.m, self.indices.l
        );
        for c in &self.column_distances {
            let mark = if c.exact { "" } else { " (lower bound)" };
            s += &format!("d_{}^c = {}{}\n", c.j, c.value, mark);
        }
        match self.dfree_exact() {
            Some(d) => s += &format!("dfree = {d}\n"),
            None => s += &format!("{} <= dfree <= {}\n", self.dfree.0, self.dfree.1),
        }
        if let Some((j, holds)) = self.cap_cascade() {
            s += &format!("d_{j}^c meets its cap; earlier caps {}\n", if holds { "all met" } else { "NOT all met" });
        }
        s += &format!("MDS: {}\nstrongly MDS: {}\nMDP: {}", self.mds.as_str(), self.smds.as_str(), self.mdp.as_str());
        s
    }
}

/// Computes column distances up to `max(jmax, M, L)`, free-distance bounds
/// and the three verdicts.
pub fn classify(desc: &ConvCodeDesc, opts: &ClassifyOptions) -> Result<ConvReport> {
    let idx = desc.indices()?;
    let s = idx.singleton_bound;
    let jtop = opts.jmax.max(idx.m).max(idx.l);
    let cols = column_distances(desc, jtop, &opts.search)?;
    let mut certificates = vec![Certificate::Singleton { bound: s }];
    let (mut lo, mut hi) = (1usize, s);
    if let Some(split) = block_split(desc, opts.block_budget)? {
        let (l, u) = dfree_bounds(desc, split.block_d, split.d0, split.d1)?;
        certificates.push(Certificate::BlockSplit { d0: split.d0, d1: split.d1, block_d: split.block_d, lower: l, upper: u });
        lo = lo.max(l);
        hi = hi.min(u);
    }
    if let Some(best) = cols.iter().max_by_key(|c| c.value) {
        if best.value > lo {
            lo = best.value;
            certificates.push(Certificate::ColumnDistance { j: best.j, value: best.value });
        }
    }
    if lo < hi {
        if let Some((w, _)) = terminated_min_weight(desc, jtop, cols[0].value, &opts.search) {
            if w < hi {
                hi = w;
                certificates.push(Certificate::Terminated { degree: jtop, weight: w });
            }
        }
    }
    if lo > hi {
        return Err(Error::PropertyViolation(format!("free distance bounds crossed: {lo} > {hi}")));
    }
    let mds = if lo >= s {
        Verdict::Confirmed
    } else if hi < s {
        Verdict::Refuted
    } else {
        Verdict::Inconclusive
    };
    let judge = |c: &ColumnDistance, target: usize| {
        if c.exact {
            if c.value == target {
                Verdict::Confirmed
            } else {
                Verdict::Refuted
            }
        } else if c.value >= target {
            Verdict::Confirmed
        } else {
            Verdict::Inconclusive
        }
    };
    let smds = if mds == Verdict::Refuted { Verdict::Refuted } else { judge(&cols[idx.m], s) };
    let mdp = judge(&cols[idx.l], column_cap(desc.n, desc.k, idx.l));
    Ok(ConvReport {
        n: desc.n,
        k: desc.k,
        delta: desc.delta,
        nu: desc.nu,
        indices: idx,
        column_distances: cols,
        dfree: (lo, hi),
        mds,
        smds,
        mdp,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indices_known_values() {
        let i = singleton_and_indices(7, 4, 2).unwrap();
        assert_eq!((i.singleton_bound, i.m, i.l), (6, 1, 0));
        let i = singleton_and_indices(9, 5, 3).unwrap();
        assert_eq!((i.singleton_bound, i.m, i.l), (8, 1, 0));
        assert!(singleton_and_indices(4, 4, 1).is_err());
        assert!(singleton_and_indices(4, 0, 1).is_err());
    }

    #[test]
    fn unit_memory_shape_errors() {
        let f = Field::of_order(4).unwrap();
        let h0 = FMatrix::from_rows(f.clone(), 3, &[vec![1, 1, 1]]).unwrap();
        let h1 = FMatrix::from_rows(f.clone(), 3, &[vec![1, 2, 3], vec![1, 3, 2]]).unwrap();
        assert_eq!(unit_memory_parity(&h0, &h1).unwrap_err(), Error::RowCountExceeded { h0: 1, h1: 2 });
        let dup = FMatrix::from_rows(f, 3, &[vec![1, 1, 1], vec![1, 1, 1]]).unwrap();
        assert_eq!(unit_memory_parity(&dup, &h0).unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn non_basic_matrix_detected() {
        let f = Field::of_order(2).unwrap();
        // [1+D, 1+D] has minors gcd 1+D
        let p = PolyMatrix::from_entries(&f, 1, 2, &[vec![vec![1, 1], vec![1, 1]]]).unwrap();
        let m = minimality_check(&p).unwrap();
        assert!(m.row_reduced);
        assert!(!m.basic);
        assert_eq!(m.minors_gcd, vec![1, 1]);
    }

    #[test]
    fn omit_rows_requires_max_degree() {
        let f = Field::of_order(3).unwrap();
        let p = PolyMatrix::from_entries(
            &f,
            2,
            3,
            &[vec![vec![1], vec![1], vec![1]], vec![vec![0, 1], vec![1], vec![2, 1]]],
        )
        .unwrap();
        assert_eq!(omit_rows(&p, &[0]).unwrap_err(), Error::NotMaximalDegreeRow { row: 0 });
        assert_eq!(omit_rows(&p, &[1]).unwrap().rows(), 1);
    }
}
