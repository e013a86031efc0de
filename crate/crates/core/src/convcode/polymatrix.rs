use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::galois::Field;
use crate::linalg::FMatrix;
use crate::poly::{self, Poly};

/// Polynomial matrix `G(D) = G_0 + G_1 D + ... + G_nu D^nu` over `F_q`,
/// stored by coefficient matrices with `G_nu != 0` (unless the matrix is zero).
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    coeffs: Vec<FMatrix>,
}

impl PolyMatrix {
    pub fn new(mut coeffs: Vec<FMatrix>) -> Result<PolyMatrix> {
        let first = coeffs.first().ok_or_else(|| Error::InvalidParams("no coefficient matrices".into()))?;
        let (field, rows, cols) = (first.field().clone(), first.rows(), first.cols());
        for c in &coeffs {
            if c.field() != &field {
                return Err(Error::FieldMismatch);
            }
            if c.rows() != rows || c.cols() != cols {
                return Err(Error::DimensionMismatch("coefficient matrices differ in shape".into()));
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Ok(PolyMatrix { field, rows, cols, coeffs })
    }

    /// From a grid of polynomial entries.
    pub fn from_entries(field: &Field, rows: usize, cols: usize, entries: &[Vec<Poly>]) -> Result<PolyMatrix> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("entry grid has the wrong shape".into()));
        }
        let len = entries.iter().flatten().map(|p| p.len()).max().unwrap_or(0).max(1);
        let mut coeffs = vec![FMatrix::zeros(field.clone(), rows, cols); len];
        for (r, row) in entries.iter().enumerate() {
            for (c, p) in row.iter().enumerate() {
                for (i, &x) in p.iter().enumerate() {
                    if x >= field.q() {
                        return Err(Error::IndexOutOfRange { index: x as usize, limit: field.q() as usize });
                    }
                    coeffs[i].set(r, c, x);
                }
            }
        }
        PolyMatrix::new(coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn coeffs(&self) -> &[FMatrix] {
        &self.coeffs
    }

    /// Coefficient of `D^i`, zero beyond the memory.
    pub fn coeff(&self, i: usize) -> FMatrix {
        self.coeffs.get(i).cloned().unwrap_or_else(|| FMatrix::zeros(self.field.clone(), self.rows, self.cols))
    }

    /// Largest exponent present.
    pub fn memory(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn entry(&self, r: usize, c: usize) -> Poly {
        poly::trimmed(&self.coeffs.iter().map(|m| m.get(r, c)).collect::<Vec<_>>())
    }

    /// Degree of row `r`, or `None` for a zero row.
    pub fn row_degree(&self, r: usize) -> Option<usize> {
        (0..self.coeffs.len()).rev().find(|&i| self.coeffs[i].row(r).iter().any(|&x| x != 0))
    }

    pub fn row_degrees(&self) -> Vec<Option<usize>> {
        (0..self.rows).map(|r| self.row_degree(r)).collect()
    }

    /// Row `r` of the result holds the coefficient of `D^{deg row r}`.
    pub fn leading_row_matrix(&self) -> FMatrix {
        let mut m = FMatrix::zeros(self.field.clone(), self.rows, self.cols);
        for r in 0..self.rows {
            if let Some(d) = self.row_degree(r) {
                for c in 0..self.cols {
                    m.set(r, c, self.coeffs[d].get(r, c));
                }
            }
        }
        m
    }

    /// The block lower-triangular Toeplitz matrix with `j+1` block rows and
    /// columns whose block `(r, c)` is `G_{r-c}`.
    pub fn sliding_matrix(&self, j: usize) -> FMatrix {
        self.toeplitz(j + 1, j + 1)
    }

    /// Block Toeplitz matrix of `G(D) v(D)` for `deg v <= d`: all
    /// `d + nu + 1` block rows.
    pub fn full_toeplitz(&self, d: usize) -> FMatrix {
        self.toeplitz(d + self.memory() + 1, d + 1)
    }

    fn toeplitz(&self, block_rows: usize, block_cols: usize) -> FMatrix {
        let (k, n) = (self.rows, self.cols);
        let mut m = FMatrix::zeros(self.field.clone(), block_rows * k, block_cols * n);
        for br in 0..block_rows {
            for bc in 0..block_cols.min(br + 1) {
                let Some(g) = self.coeffs.get(br - bc) else { continue };
                for r in 0..k {
                    for c in 0..n {
                        m.set(br * k + r, bc * n + c, g.get(r, c));
                    }
                }
            }
        }
        m
    }

    /// `G(D) v(D)` for a column of polynomials.
    pub fn apply(&self, v: &[Poly]) -> Result<Vec<Poly>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                (0..self.cols).fold(Vec::new(), |acc, c| poly::add(f, &acc, &poly::mul(f, &self.entry(r, c), &v[c])))
            })
            .collect())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Result<PolyMatrix> {
        let coeffs = self.coeffs.iter().map(|m| m.select_rows(rows)).collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(coeffs)
    }

    /// Entries as polynomials in `D`, one row per line, joined with ` | `.
    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| poly::render(&self.field, &self.entry(r, c), "D"))
                    .collect::<Vec<_>>()
                    .join(" | ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows,
            "cols": self.cols,
            "coeffs": self.coeffs.iter().map(|m| m.to_json()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(field: &Field, v: &Value) -> Result<PolyMatrix> {
        let bad = |what: &str| Error::Parse(format!("polynomial matrix: {what}"));
        let rows = v["rows"].as_u64().ok_or_else(|| bad("missing rows"))? as usize;
        let cols = v["cols"].as_u64().ok_or_else(|| bad("missing cols"))? as usize;
        let coeffs = v["coeffs"].as_array().ok_or_else(|| bad("missing coeffs"))?;
        let mats = coeffs
            .iter()
            .map(|m| {
                let rs = m.as_array().ok_or_else(|| bad("coefficient is not an array"))?;
                let rows_vec = rs
                    .iter()
                    .map(|r| {
                        r.as_array()
                            .ok_or_else(|| bad("row is not an array"))?
                            .iter()
                            .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("entry is not an integer")))
                            .collect::<Result<Vec<u32>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                if rows_vec.len() != rows {
                    return Err(bad("row count mismatch"));
                }
                FMatrix::from_rows(field.clone(), cols, &rows_vec)
            })
            .collect::<Result<Vec<_>>>()?;
        PolyMatrix::new(mats)
    }
}

impl std::fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}
