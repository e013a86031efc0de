//! Dense matrices over a finite field with exact elimination.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::galois::{FiniteField, Field};

/// Row-major dense matrix of encoded field elements.
#[derive(Clone, Debug, PartialEq)]
pub struct FMatrix<F: FiniteField = Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref<F: FiniteField = Field> {
    pub matrix: FMatrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: FiniteField> FMatrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<u32>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.order()) {
            return Err(Error::IndexOutOfRange { index: bad as usize, limit: field.order() as usize });
        }
        Ok(FMatrix { field, rows, cols, data })
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        FMatrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds from row vectors; `cols` is needed when there are no rows.
    pub fn from_rows(field: F, cols: usize, rows: &[Vec<u32>]) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("row of length {} in a matrix with {cols} columns", r.len())));
        }
        Self::new(field, rows.len(), cols, rows.concat())
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field.clone(), self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Result<Vec<u32>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
            .collect())
    }

    pub fn select_columns(&self, cols: &[usize]) -> Result<Self> {
        if let Some(&c) = cols.iter().find(|&&c| c >= self.cols) {
            return Err(Error::IndexOutOfRange { index: c, limit: self.cols });
        }
        let mut out = Self::zeros(self.field.clone(), self.rows, cols.len());
        for r in 0..self.rows {
            for (j, &c) in cols.iter().enumerate() {
                out.set(r, j, self.get(r, c));
            }
        }
        Ok(out)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<Self> {
        if let Some(&r) = rows.iter().find(|&&r| r >= self.rows) {
            return Err(Error::IndexOutOfRange { index: r, limit: self.rows });
        }
        let data = rows.iter().flat_map(|&r| self.row(r).iter().copied()).collect();
        Ok(FMatrix { field: self.field.clone(), rows: rows.len(), cols: self.cols, data })
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!("{} vs {} columns", self.cols, other.cols)));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(FMatrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Prepends `n` zero rows.
    pub fn pad_top(&self, n: usize) -> Self {
        let mut data = vec![0; n * self.cols];
        data.extend_from_slice(&self.data);
        FMatrix { field: self.field.clone(), rows: self.rows + n, cols: self.cols, data }
    }

    /// Drops all-zero rows.
    pub fn nonzero_rows(&self) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| self.row(r).iter().any(|&x| x != 0)).collect();
        self.select_rows(&keep).expect("indices in range")
    }

    /// Gauss-Jordan elimination; each pivot is the first nonzero entry of its row.
    pub fn rref(&self) -> Rref<F> {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else { continue };
            m.swap_rows(pr, r);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), f.mul(factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref { matrix: m, rank: r, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{x : M x = 0}`, one vector per free column,
    /// normalised so that the free coordinate is 1.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0u32; self.cols];
                v[free] = 1;
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = f.neg(matrix.get(i, free));
                }
                v
            })
            .collect()
    }

    /// Whether the selected columns are linearly independent.
    pub fn columns_independent(&self, cols: &[usize]) -> Result<bool> {
        let sub = self.select_columns(cols)?;
        Ok(sub.rank() == cols.len())
    }

    /// A nonzero kernel vector of `M` supported inside `support`. When
    /// `require` is given the vector must be nonzero somewhere in that range.
    pub fn solve_on_support(&self, support: &[usize], require: Option<Range<usize>>) -> Result<Option<Vec<u32>>> {
        let sub = self.select_columns(support)?;
        for v in sub.nullspace() {
            let ok = match &require {
                None => true,
                Some(range) => support.iter().zip(&v).any(|(&c, &x)| x != 0 && range.contains(&c)),
            };
            if ok {
                let mut full = vec![0u32; self.cols];
                for (&c, &x) in support.iter().zip(&v) {
                    full[c] = x;
                }
                return Ok(Some(full));
            }
        }
        Ok(None)
    }

    /// One row per line, entries rendered by the field and joined with ` | `.
    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|&x| self.field.render(x)).collect::<Vec<_>>().join(" | "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows).map(|r| serde_json::Value::from(self.row(r).to_vec())).collect(),
        )
    }

    /// Maps every entry into another field (e.g. base into extension).
    pub fn map_field<G: FiniteField>(&self, field: G, f: impl Fn(u32) -> u32) -> Result<FMatrix<G>> {
        FMatrix::new(field, self.rows, self.cols, self.data.iter().map(|&x| f(x)).collect())
    }
}

impl<F: FiniteField> std::fmt::Display for FMatrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u32) -> Field {
        Field::of_order(q).unwrap()
    }

    #[test]
    fn rref_and_nullspace() {
        let f = gf(5);
        let m = FMatrix::from_rows(f.clone(), 4, &[vec![1, 2, 3, 4], vec![0, 0, 1, 1], vec![1, 2, 4, 0]]).unwrap();
        let r = m.rref();
        assert_eq!(r.pivots, vec![0, 2]);
        assert_eq!(r.rank, 2);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.mul_vec(v).unwrap().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn solve_on_support_respects_range() {
        let f = gf(2);
        // columns 2 and 3 equal, column 0 unique
        let m = FMatrix::from_rows(f, 4, &[vec![1, 0, 1, 1], vec![0, 1, 1, 1]]).unwrap();
        assert!(m.solve_on_support(&[2, 3], Some(0..2)).unwrap().is_none());
        assert_eq!(m.solve_on_support(&[2, 3], None).unwrap(), Some(vec![0, 0, 1, 1]));
        assert_eq!(m.solve_on_support(&[0, 1, 2], Some(0..1)).unwrap(), Some(vec![1, 1, 1, 0]));
        assert!(matches!(m.columns_independent(&[0, 7]), Err(Error::IndexOutOfRange { index: 7, limit: 4 })));
    }

    #[test]
    fn mul_dimension_checks() {
        let f = gf(3);
        let a = FMatrix::identity(f.clone(), 2);
        let b = FMatrix::zeros(f, 3, 1);
        assert!(matches!(a.mul(&b), Err(Error::DimensionMismatch(_))));
    }
}
