//! The construction families. Each takes the parity check of an MDS block
//! code, splits its rows into `H0` and `H1`, and returns the unit-memory
//! parity matrix `G(D) = H0 + H1~ D` with the verdicts guaranteed for its parameters.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::blockcode::{
    base_field_closure_check, evaluation_parity_matrix, generator_from_roots, realify, root_parity_matrix,
    to_base_poly, BlockCode, RootSpec,
};
use crate::convcode::{unit_memory_parity, ConvCodeDesc, PolyMatrix};
use crate::error::{Error, Result};
use crate::galois::{prime_power, ExtField, Field, FiniteField};
use crate::linalg::FMatrix;
use crate::poly::Poly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    /// Reed-Solomon rows `[theta^(ij)]`, length `n <= q - 1`.
    Rs,
    /// Generalized Reed-Solomon, length `q`, second half of the split reversed.
    Grs,
    /// Cyclic code of length `q + 1` with roots `beta^j`, `|j| <= tau`.
    Cyclic,
    /// Same cyclic code, split by the parity of `j` (even `q` only).
    CyclicParity,
    /// Constacyclic code of length `q + 1` with roots `theta beta^j`.
    Constacyclic,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Rs, Family::Grs, Family::Cyclic, Family::CyclicParity, Family::Constacyclic];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Rs => "rs",
            Family::Grs => "grs",
            Family::Cyclic => "cyclic",
            Family::CyclicParity => "cyclic-parity",
            Family::Constacyclic => "constacyclic",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown family '{s}' (expected one of rs, grs, cyclic, cyclic-parity, constacyclic)")))
    }
}

/// Verdicts a construction is known to guarantee.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub mds: bool,
    pub smds: bool,
    pub mdp: bool,
}

/// Family parameters. `n` and `k` describe the block code; `delta` is the
/// number of block-code rows moved into `H1` (over `F_{q^2}` for the length
/// `q + 1` families). For [`Family::CyclicParity`], `delta` holds `tau`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilySpec {
    pub family: Family,
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub delta: usize,
}

impl FamilySpec {
    pub fn rs(q: u32, n: usize, k: usize, delta: usize) -> FamilySpec {
        FamilySpec { family: Family::Rs, q, n, k, delta }
    }

    pub fn grs(q: u32, k: usize, delta: usize) -> FamilySpec {
        FamilySpec { family: Family::Grs, q, n: q as usize, k, delta }
    }

    pub fn cyclic(q: u32, k: usize, delta: usize) -> FamilySpec {
        FamilySpec { family: Family::Cyclic, q, n: q as usize + 1, k, delta }
    }

    pub fn cyclic_parity(q: u32, tau: usize) -> FamilySpec {
        FamilySpec { family: Family::CyclicParity, q, n: q as usize + 1, k: (q as usize).saturating_sub(2 * tau), delta: tau }
    }

    pub fn constacyclic(q: u32, k: usize, delta: usize) -> FamilySpec {
        FamilySpec { family: Family::Constacyclic, q, n: q as usize + 1, k, delta }
    }

    /// Rows of the block parity check kept in `H0` (over `F_{q^2}` for the
    /// length `q + 1` families).
    pub fn gamma(&self) -> Option<usize> {
        match self.family {
            Family::Rs | Family::Grs => (self.n - self.k).checked_sub(self.delta),
            Family::Cyclic | Family::Constacyclic => (self.tau()? + 1).checked_sub(self.delta),
            Family::CyclicParity => None,
        }
    }

    pub fn tau(&self) -> Option<usize> {
        let q = self.q as usize;
        match self.family {
            Family::Rs | Family::Grs => None,
            Family::Cyclic => q.checked_sub(self.k).map(|x| x / 2),
            Family::CyclicParity => Some(self.delta),
            Family::Constacyclic => q.checked_sub(self.k + 1).map(|x| x / 2),
        }
    }

    /// Number of even and odd `j` in `0..=tau`.
    pub fn r_s(&self) -> Option<(usize, usize)> {
        (self.family == Family::CyclicParity).then(|| (self.delta / 2 + 1, self.delta.div_ceil(2)))
    }

    /// `(n, k, delta)` of the convolutional code.
    pub fn conv_params(&self) -> (usize, usize, usize) {
        let (n, k, d) = (self.n, self.k, self.delta);
        match self.family {
            Family::Rs | Family::Grs => (n, k + d, d),
            Family::Cyclic | Family::Constacyclic => (n, k + 2 * d, 2 * d),
            Family::CyclicParity => (n, self.q as usize - d, d),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let q = self.q as usize;
        if prime_power(self.q).is_none() {
            return bad(format!("q = {} is not a prime power", self.q));
        }
        match self.family {
            Family::Rs | Family::Grs => {
                if self.family == Family::Rs && !(self.n < q) {
                    return bad(format!("n = {} must be at most q - 1 = {}", self.n, q - 1));
                }
                if self.family == Family::Grs && self.n != q {
                    return bad(format!("n = {} must equal q = {q}", self.n));
                }
                if self.k == 0 || self.k >= self.n {
                    return bad(format!("need 1 <= k < n, got k = {}", self.k));
                }
            }
            Family::Cyclic | Family::Constacyclic => {
                if self.n != q + 1 {
                    return bad(format!("n = {} must equal q + 1 = {}", self.n, q + 1));
                }
                if q < 5 {
                    return bad(format!("q = {q} must be at least 5"));
                }
                if self.k == 0 || self.k >= q {
                    return bad(format!("need 1 <= k < q, got k = {}", self.k));
                }
                let (expected, same) = match self.family {
                    Family::Cyclic => ("q", self.k % 2 == q % 2),
                    _ => ("q + 1", self.k % 2 == (q + 1) % 2),
                };
                if !same {
                    return Err(Error::ParityConditionViolated { expected });
                }
            }
            Family::CyclicParity => {
                if q % 2 == 1 {
                    return Err(Error::OddFieldSize(self.q));
                }
                if q < 4 {
                    return bad(format!("q = {q} must be at least 4"));
                }
                if self.delta == 0 || self.delta > (q - 1) / 2 {
                    return bad(format!("need 1 <= tau <= {}, got tau = {}", (q - 1) / 2, self.delta));
                }
                if self.n != q + 1 || self.k != q - 2 * self.delta {
                    return bad("n and k must be q + 1 and q - 2 tau".into());
                }
                return Ok(());
            }
        }
        if self.delta == 0 {
            return bad("delta must be at least 1".into());
        }
        let gamma = self.gamma().unwrap_or(0);
        match self.family {
            Family::Cyclic if gamma <= self.delta => {
                bad(format!("gamma = tau + 1 - delta = {gamma} must exceed delta = {}", self.delta))
            }
            _ if gamma < self.delta => bad(format!("gamma = {gamma} must be at least delta = {}", self.delta)),
            _ => Ok(()),
        }
    }

    /// The verdicts guaranteed for these parameters.
    pub fn expected(&self) -> Expected {
        let (n, k, d) = (self.n, self.k, self.delta);
        let q = self.q as usize;
        match self.family {
            Family::Rs | Family::Grs => Expected { mds: true, smds: 3 * d <= n - k + 1, mdp: 2 * d < n - k },
            Family::Cyclic => {
                let all = 6 * d <= q + 2 - k;
                Expected { mds: all, smds: all, mdp: all }
            }
            Family::Constacyclic => {
                let all = 6 * d <= q + 1 - k;
                Expected { mds: all, smds: all, mdp: all }
            }
            Family::CyclicParity => Expected { mds: true, smds: false, mdp: false },
        }
    }

    pub fn describe(&self) -> String {
        match self.family {
            Family::CyclicParity => format!("{} q={} tau={}", self.family, self.q, self.delta),
            _ => format!("{} q={} n={} k={} delta={}", self.family, self.q, self.n, self.k, self.delta),
        }
    }
}

/// Base field and (for the length `q + 1` families) its quadratic extension.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldSetup {
    pub base: Field,
    pub ext: Option<ExtField>,
}

impl FieldSetup {
    /// Default field of order `q` and default extension.
    pub fn new(q: u32) -> Result<FieldSetup> {
        let base = Field::of_order(q)?;
        let ext = ExtField::new(&base, None, None)?;
        Ok(FieldSetup { base, ext: Some(ext) })
    }

    pub fn with_ext(base: Field, ext_modulus: Option<(u32, u32)>, theta_ext: Option<u32>) -> Result<FieldSetup> {
        let ext = ExtField::new(&base, ext_modulus, theta_ext)?;
        Ok(FieldSetup { base, ext: Some(ext) })
    }

    fn ext(&self) -> Result<&ExtField> {
        let ext = self.ext.as_ref().ok_or_else(|| Error::InvalidParams("this family needs an extension field".into()))?;
        if ext.base() != &self.base {
            return Err(Error::FieldMismatch);
        }
        Ok(ext)
    }

    pub fn to_json(&self) -> Value {
        let ext = self.ext.as_ref().map(|e| {
            json!({
                "modulus": [e.modulus().0, e.modulus().1],
                "theta_ext": e.theta_ext(),
                "beta": e.beta(),
            })
        });
        json!({
            "p": self.base.p(),
            "m": self.base.m(),
            "modulus": self.base.modulus(),
            "theta": self.base.theta(),
            "ext": ext,
        })
    }
}

/// Everything a construction produces.
#[derive(Clone, Debug, PartialEq)]
pub struct Bundle {
    pub spec: FamilySpec,
    pub setup: FieldSetup,
    pub block: BlockCode,
    pub h0: FMatrix,
    pub h1: FMatrix,
    pub parity: PolyMatrix,
    pub desc: ConvCodeDesc,
    pub expected: Expected,
}

impl Bundle {
    pub fn to_json(&self) -> Value {
        let (cn, ck, cd) = self.spec.conv_params();
        json!({
            "family": self.spec.family.name(),
            "q": self.spec.q,
            "n": self.spec.n,
            "k": self.spec.k,
            "delta": self.spec.delta,
            "gamma": self.spec.gamma(),
            "tau": self.spec.tau(),
            "field": self.setup.to_json(),
            "block": self.block.to_json(),
            "H0": self.h0.to_json(),
            "H1": self.h1.to_json(),
            "parity": self.parity.to_json(),
            "expected": self.expected,
            "conv": {"n": cn, "k": ck, "delta": cd},
        })
    }

    pub fn render(&self) -> String {
        let (cn, ck, cd) = self.spec.conv_params();
        let e = self.expected;
        let yes = |b: bool| if b { "yes" } else { "no" };
        format!(
            "{}\nblock code [{}, {}, {}] over F_{} (MDS: {})\nconvolutional code ({cn}, {ck}, {cd})\n\nH0:\n{}\n\nH1:\n{}\n\nG(D):\n{}\n\nguaranteed: MDS {}, strongly MDS {}, MDP {}",
            self.spec.describe(),
            self.block.n,
            self.block.k,
            self.block.d,
            self.spec.q,
            yes(self.block.is_mds),
            self.h0.render(),
            self.h1.render(),
            self.parity.render(),
            yes(e.mds),
            yes(e.smds),
            yes(e.mdp),
        )
    }
}

fn rows(m: &FMatrix, idx: impl IntoIterator<Item = usize>) -> Result<FMatrix> {
    m.select_rows(&idx.into_iter().collect::<Vec<_>>())
}

fn ext_rows(m: &FMatrix<ExtField>, idx: impl IntoIterator<Item = usize>) -> Result<FMatrix<ExtField>> {
    m.select_rows(&idx.into_iter().collect::<Vec<_>>())
}

fn expect_rows(m: &FMatrix, count: usize, what: &str) -> Result<()> {
    if m.rows() != count || m.rank() != count {
        return Err(Error::PropertyViolation(format!("{what} has {} rows of rank {}, expected {count}", m.rows(), m.rank())));
    }
    Ok(())
}

fn finish(spec: FamilySpec, setup: &FieldSetup, block: BlockCode, h0: FMatrix, h1: FMatrix) -> Result<Bundle> {
    let parity = unit_memory_parity(&h0, &h1)?;
    let desc = ConvCodeDesc::from_parity(parity.clone())?;
    if (desc.n, desc.k, desc.delta) != spec.conv_params() {
        return Err(Error::PropertyViolation(format!(
            "built a ({}, {}, {}) code, expected {:?}",
            desc.n,
            desc.k,
            desc.delta,
            spec.conv_params()
        )));
    }
    Ok(Bundle { spec, setup: setup.clone(), block, h0, h1, parity, desc, expected: spec.expected() })
}

fn check_setup(spec: &FamilySpec, setup: &FieldSetup) -> Result<()> {
    spec.validate()?;
    if setup.base.q() != spec.q {
        return Err(Error::InvalidParams(format!("field has order {}, parameters ask for {}", setup.base.q(), spec.q)));
    }
    Ok(())
}

/// Roots `theta^0, ..., theta^(n-k-1)`; `H0` is the first `gamma` rows and
/// `H1` the next `delta` in order.
pub fn rs_code(spec: FamilySpec, setup: &FieldSetup) -> Result<Bundle> {
    check_setup(&spec, setup)?;
    let f = &setup.base;
    let (n, r) = (spec.n, spec.n - spec.k);
    let gamma = spec.gamma().expect("validated");
    let step = f.theta();
    let roots = RootSpec { base_point: 1, step, range: 0..=r as i64 - 1 }.roots(f)?;
    let all = RootSpec { base_point: 1, step, range: 0..=n as i64 - 1 }.roots(f)?;
    let h = root_parity_matrix(f, &roots, n);
    let block = BlockCode::from_parity(h.clone())?
        .with_polynomials(generator_from_roots(f, &roots)?, generator_from_roots(f, &all)?)?;
    let h0 = rows(&h, 0..gamma)?;
    let h1 = rows(&h, gamma..r)?;
    finish(spec, setup, block, h0, h1)
}

/// Points `0, theta, ..., theta^(q-1)`, unit multipliers; `H1` takes rows
/// `gamma + delta - 1` down to `gamma`.
pub fn grs_code(spec: FamilySpec, setup: &FieldSetup) -> Result<Bundle> {
    check_setup(&spec, setup)?;
    let f = &setup.base;
    let (n, r) = (spec.n, spec.n - spec.k);
    let gamma = spec.gamma().expect("validated");
    let points: Vec<u32> = (0..n as u64).map(|i| if i == 0 { 0 } else { f.exp(i) }).collect();
    let h = evaluation_parity_matrix(f, &points, r, &vec![1; n])?;
    let block = BlockCode::from_parity(h.clone())?;
    let h0 = rows(&h, 0..gamma)?;
    let h1 = rows(&h, (gamma..r).rev())?;
    finish(spec, setup, block, h0, h1)
}

/// `x^(q+1) - c` over the base field.
fn binomial(f: &Field, n: usize, c: u32) -> Poly {
    let mut p = vec![0; n + 1];
    p[0] = f.neg(c);
    p[n] = 1;
    p
}

/// Block code of a length `q + 1` family from its defining set, with the
/// generator pulled down to the base field.
fn qplus1_block(ext: &ExtField, spec: RootSpec, h: FMatrix, modulus: Poly) -> Result<BlockCode> {
    let roots = spec.roots(ext)?;
    if !base_field_closure_check(ext, &roots)? {
        return Err(Error::PropertyViolation("defining set is not closed under conjugation".into()));
    }
    let g = to_base_poly(ext, &generator_from_roots(ext, &roots)?)?;
    BlockCode::from_parity(h)?.with_polynomials(g, modulus)
}

/// Rows `h_j = [beta^(ij)]` for `j = 0..=tau`, over `F_{q^2}`.
fn cyclic_rows(ext: &ExtField, n: usize, tau: usize) -> Result<FMatrix<ExtField>> {
    let beta = ext.beta();
    let roots = (0..=tau as i64).map(|j| ext.pow(beta, j)).collect::<Result<Vec<_>>>()?;
    Ok(root_parity_matrix(ext, &roots, n))
}

fn cyclic_block(setup: &FieldSetup, n: usize, tau: usize) -> Result<(FMatrix<ExtField>, BlockCode)> {
    let ext = setup.ext()?;
    let hx = cyclic_rows(ext, n, tau)?;
    let h = realify(&hx);
    expect_rows(&h, 2 * tau + 1, "realified parity check")?;
    let spec = RootSpec { base_point: 1, step: ext.beta(), range: -(tau as i64)..=tau as i64 };
    let block = qplus1_block(ext, spec, h, binomial(&setup.base, n, 1))?;
    Ok((hx, block))
}

/// Cyclic code with roots `beta^j`, `|j| <= tau`. `H0` realifies
/// `h_0..h_(gamma-1)` (`2 gamma - 1` rows), `H1` realifies the next `delta`.
pub fn cyclic_code(spec: FamilySpec, setup: &FieldSetup) -> Result<Bundle> {
    check_setup(&spec, setup)?;
    let tau = spec.tau().expect("validated");
    let gamma = spec.gamma().expect("validated");
    let (hx, block) = cyclic_block(setup, spec.n, tau)?;
    let h0 = realify(&ext_rows(&hx, 0..gamma)?);
    let h1 = realify(&ext_rows(&hx, gamma..gamma + spec.delta)?);
    expect_rows(&h0, 2 * gamma - 1, "H0")?;
    expect_rows(&h1, 2 * spec.delta, "H1")?;
    finish(spec, setup, block, h0, h1)
}

/// The same cyclic code, with the realified rows of even `j` on one side and
/// odd `j` on the other; the larger side becomes `H0`.
pub fn cyclic_parity_code(spec: FamilySpec, setup: &FieldSetup) -> Result<Bundle> {
    check_setup(&spec, setup)?;
    let tau = spec.delta;
    let (r, s) = spec.r_s().expect("cyclic-parity");
    let (hx, block) = cyclic_block(setup, spec.n, tau)?;
    let even = realify(&ext_rows(&hx, (0..=tau).step_by(2))?);
    let odd = realify(&ext_rows(&hx, (1..=tau).step_by(2))?);
    expect_rows(&even, 2 * r - 1, "even rows")?;
    expect_rows(&odd, 2 * s, "odd rows")?;
    let (h0, h1) = if even.rows() >= odd.rows() { (even, odd) } else { (odd, even) };
    finish(spec, setup, block, h0, h1)
}

/// Constacyclic code of length `q + 1` with roots `theta beta^j`,
/// `-tau <= j <= tau + 1`. `H0` realifies `h_1..h_gamma`, `H1` the next
/// `delta` rows.
pub fn constacyclic_code(spec: FamilySpec, setup: &FieldSetup) -> Result<Bundle> {
    check_setup(&spec, setup)?;
    let ext = setup.ext()?;
    let n = spec.n;
    let tau = spec.tau().expect("validated");
    let gamma = spec.gamma().expect("validated");
    let (theta, beta) = (ext.theta_ext(), ext.beta());
    let roots = (1..=tau as i64 + 1).map(|j| Ok(ext.mul(theta, ext.pow(beta, j)?))).collect::<Result<Vec<_>>>()?;
    let hx = root_parity_matrix(ext, &roots, n);
    let h = realify(&hx);
    expect_rows(&h, 2 * tau + 2, "realified parity check")?;
    let norm = ext.pow(theta, n as i64)?;
    let (c, zero) = ext.decompose(norm);
    if zero != 0 {
        return Err(Error::PropertyViolation("theta^(q+1) is not in the base field".into()));
    }
    let rspec = RootSpec { base_point: theta, step: beta, range: -(tau as i64)..=tau as i64 + 1 };
    let block = qplus1_block(ext, rspec, h, binomial(&setup.base, n, c))?;
    let h0 = realify(&ext_rows(&hx, 0..gamma)?);
    let h1 = realify(&ext_rows(&hx, gamma..gamma + spec.delta)?);
    expect_rows(&h0, 2 * gamma, "H0")?;
    expect_rows(&h1, 2 * spec.delta, "H1")?;
    finish(spec, setup, block, h0, h1)
}

pub fn build(spec: FamilySpec, setup: &FieldSetup) -> Result<Bundle> {
    match spec.family {
        Family::Rs => rs_code(spec, setup),
        Family::Grs => grs_code(spec, setup),
        Family::Cyclic => cyclic_code(spec, setup),
        Family::CyclicParity => cyclic_parity_code(spec, setup),
        Family::Constacyclic => constacyclic_code(spec, setup),
    }
}

/// Builds with the default field setup for `spec.q`.
pub fn build_default(spec: FamilySpec) -> Result<Bundle> {
    spec.validate()?;
    build(spec, &FieldSetup::new(spec.q)?)
}

/// Every parameter set inside the guaranteed ranges of the given families,
/// sorted by `(family, n, k, delta)`.
pub fn admissible_parameters(q: u32, families: &[Family]) -> Vec<FamilySpec> {
    let qs = q as usize;
    let mut out = Vec::new();
    for &family in families {
        match family {
            Family::Rs | Family::Grs => {
                let ns = if family == Family::Rs { 3..qs } else { qs..qs + 1 };
                for n in ns {
                    for k in 1..n {
                        for delta in 1..=(n - k) / 2 {
                            out.push(FamilySpec { family, q, n, k, delta });
                        }
                    }
                }
            }
            Family::Cyclic | Family::Constacyclic => {
                let slack = if family == Family::Cyclic { 2 } else { 1 };
                for k in 1..qs {
                    for delta in 1..=(qs + slack).saturating_sub(k) / 6 {
                        out.push(FamilySpec { family, q, n: qs + 1, k, delta });
                    }
                }
            }
            Family::CyclicParity => {
                if qs.is_multiple_of(2) && qs >= 4 {
                    out.extend((1..=(qs - 1) / 2).map(|tau| FamilySpec::cyclic_parity(q, tau)));
                }
            }
        }
    }
    out.retain(|s| s.validate().is_ok());
    out.sort();
    out.dedup();
    out
}
