//! The eleven reference codes over `F_8`, with parity data transcribed as
//! integer encodings (`x^3 + x + 1`, `theta = 2`) and the distances and
//! verdicts they are known to have.
//!
//! Codes 8 to 11 use the extension `t^2 + theta t + 1` of `F_8` with
//! primitive element 44, so that `beta = theta_ext^7` is the class of `t`.

use serde_json::{json, Value};

use crate::constructions::{build, Bundle, Expected, FamilySpec, FieldSetup};
use crate::convcode::{classify, ClassifyOptions, ConvReport, Verdict};
use crate::error::Result;
use crate::galois::Field;
use crate::linalg::FMatrix;

type Mat = &'static [&'static [u32]];

/// Extension modulus `(c0, c1)` for `t^2 + c1 t + c0` and primitive element.
pub const EXT_OVERRIDE: ((u32, u32), u32) = ((1, 2), 44);

#[derive(Clone, Copy, Debug)]
pub struct ReferenceCode {
    pub id: u8,
    pub spec: FamilySpec,
    pub ext_override: bool,
    /// Block parity check.
    pub h: Mat,
    pub g0: Mat,
    pub g1: Mat,
    pub dfree: usize,
    /// Verdicts the code is known to satisfy.
    pub claims: Expected,
}

impl ReferenceCode {
    pub fn setup(&self) -> Result<FieldSetup> {
        let base = Field::new(2, 3, Some(&[1, 1, 0, 1]))?;
        if self.ext_override {
            FieldSetup::with_ext(base, Some(EXT_OVERRIDE.0), Some(EXT_OVERRIDE.1))
        } else {
            FieldSetup::with_ext(base, None, None)
        }
    }

    pub fn build(&self) -> Result<Bundle> {
        build(self.spec, &self.setup()?)
    }
}

const fn claims(mds: bool, smds: bool, mdp: bool) -> Expected {
    Expected { mds, smds, mdp }
}

#[allow(clippy::too_many_arguments)]
const fn rc(id: u8, spec: FamilySpec, ext_override: bool, h: Mat, g0: Mat, g1: Mat, dfree: usize, claims: Expected) -> ReferenceCode {
    ReferenceCode { id, spec, ext_override, h, g0, g1, dfree, claims }
}

use crate::constructions::Family::*;

const fn fs(family: crate::constructions::Family, n: usize, k: usize, delta: usize) -> FamilySpec {
    FamilySpec { family, q: 8, n, k, delta }
}

pub const REFERENCE_CODES: [ReferenceCode; 11] = [
    rc(1, fs(Rs, 7, 2, 2), false, H_1, G0_1, G1_1, 6, claims(true, true, true)),
    rc(2, fs(Rs, 7, 1, 2), false, H_2, G0_2, G1_2, 7, claims(true, true, true)),
    rc(3, fs(Rs, 7, 1, 3), false, H_3, G0_3, G1_3, 7, claims(true, false, false)),
    rc(4, fs(Grs, 8, 2, 2), false, H_4, G0_4, G1_4, 7, claims(true, true, true)),
    rc(5, fs(Grs, 8, 2, 3), false, H_5, G0_5, G1_5, 7, claims(true, false, false)),
    rc(6, fs(Grs, 8, 1, 2), false, H_6, G0_6, G1_6, 8, claims(true, true, true)),
    rc(7, fs(Grs, 8, 1, 3), false, H_7, G0_7, G1_7, 8, claims(true, false, true)),
    rc(8, fs(Cyclic, 9, 4, 1), true, H_8, G0_8, G1_8, 6, claims(true, true, true)),
    rc(9, fs(CyclicParity, 9, 2, 3), true, H_9, G0_9, G1_9, 8, claims(true, false, true)),
    rc(10, fs(Constacyclic, 9, 1, 1), true, H_10, G0_10, G1_10, 9, claims(true, true, true)),
    rc(11, fs(Cyclic, 9, 2, 1), true, H_11, G0_11, G1_11, 8, claims(true, true, true)),
];

pub fn reference_code(id: u8) -> Option<&'static ReferenceCode> {
    REFERENCE_CODES.iter().find(|c| c.id == id)
}

fn to_json(m: Mat) -> Value {
    json!(m)
}

fn diff(what: &str, got: &FMatrix, want: Mat, out: &mut Vec<String>) {
    let (g, w) = (got.to_json().to_string(), to_json(want).to_string());
    if g != w {
        out.push(format!("{what}: built {g}, expected {w}"));
    }
}

/// Outcome of regenerating one reference code.
#[derive(Clone, Debug)]
pub struct FixtureCheck {
    pub id: u8,
    pub bundle: Bundle,
    pub report: ConvReport,
    pub mismatches: Vec<String>,
}

impl FixtureCheck {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "id": self.id,
            "family": self.bundle.spec.family.name(),
            "conv": self.bundle.spec.conv_params(),
            "ok": self.ok(),
            "mismatches": self.mismatches,
            "report": self.report.to_json(),
        })
    }
}

/// Rebuilds the code from scratch, compares the matrices with the
/// transcription, classifies it and checks the free distance and the
/// claimed verdicts.
pub fn check(code: &ReferenceCode, opts: &ClassifyOptions) -> Result<FixtureCheck> {
    let bundle = code.build()?;
    let mut mismatches = Vec::new();
    diff("block parity", &bundle.block.parity, code.h, &mut mismatches);
    diff("G0", &bundle.parity.coeff(0), code.g0, &mut mismatches);
    diff("G1", &bundle.parity.coeff(1), code.g1, &mut mismatches);
    let report = classify(&bundle.desc, opts)?;
    if report.dfree_exact() != Some(code.dfree) {
        mismatches.push(format!("free distance bounds {:?}, expected {}", report.dfree, code.dfree));
    }
    for (name, claimed, got) in [
        ("MDS", code.claims.mds, report.mds),
        ("strongly MDS", code.claims.smds, report.smds),
        ("MDP", code.claims.mdp, report.mdp),
    ] {
        if claimed && got != Verdict::Confirmed {
            mismatches.push(format!("{name} is {}", got.as_str()));
        }
    }
    Ok(FixtureCheck { id: code.id, bundle, report, mismatches })
}

const G0_1: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1],
    &[1, 2, 4, 3, 6, 7, 5],
    &[1, 4, 6, 5, 2, 3, 7],
];
const G1_1: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0],
    &[1, 3, 5, 4, 7, 2, 6],
    &[1, 6, 2, 7, 4, 5, 3],
];
const H_1: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1],
    &[1, 2, 4, 3, 6, 7, 5],
    &[1, 4, 6, 5, 2, 3, 7],
    &[1, 3, 5, 4, 7, 2, 6],
    &[1, 6, 2, 7, 4, 5, 3],
];

const G0_2: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1],
    &[1, 2, 4, 3, 6, 7, 5],
    &[1, 4, 6, 5, 2, 3, 7],
    &[1, 3, 5, 4, 7, 2, 6],
];
const G1_2: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0],
    &[1, 6, 2, 7, 4, 5, 3],
    &[1, 7, 3, 2, 5, 6, 4],
];
const H_2: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1],
    &[1, 2, 4, 3, 6, 7, 5],
    &[1, 4, 6, 5, 2, 3, 7],
    &[1, 3, 5, 4, 7, 2, 6],
    &[1, 6, 2, 7, 4, 5, 3],
    &[1, 7, 3, 2, 5, 6, 4],
];

const G0_3: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1],
    &[1, 2, 4, 3, 6, 7, 5],
    &[1, 4, 6, 5, 2, 3, 7],
];
const G1_3: Mat = &[
    &[1, 3, 5, 4, 7, 2, 6],
    &[1, 6, 2, 7, 4, 5, 3],
    &[1, 7, 3, 2, 5, 6, 4],
];
const H_3: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1],
    &[1, 2, 4, 3, 6, 7, 5],
    &[1, 4, 6, 5, 2, 3, 7],
    &[1, 3, 5, 4, 7, 2, 6],
    &[1, 6, 2, 7, 4, 5, 3],
    &[1, 7, 3, 2, 5, 6, 4],
];

const G0_4: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[0, 2, 4, 3, 6, 7, 5, 1],
    &[0, 4, 6, 5, 2, 3, 7, 1],
    &[0, 3, 5, 4, 7, 2, 6, 1],
];
const G1_4: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 7, 3, 2, 5, 6, 4, 1],
    &[0, 6, 2, 7, 4, 5, 3, 1],
];
const H_4: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[0, 2, 4, 3, 6, 7, 5, 1],
    &[0, 4, 6, 5, 2, 3, 7, 1],
    &[0, 3, 5, 4, 7, 2, 6, 1],
    &[0, 6, 2, 7, 4, 5, 3, 1],
    &[0, 7, 3, 2, 5, 6, 4, 1],
];

const G0_5: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[0, 2, 4, 3, 6, 7, 5, 1],
    &[0, 4, 6, 5, 2, 3, 7, 1],
];
const G1_5: Mat = &[
    &[0, 7, 3, 2, 5, 6, 4, 1],
    &[0, 6, 2, 7, 4, 5, 3, 1],
    &[0, 3, 5, 4, 7, 2, 6, 1],
];
const H_5: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[0, 2, 4, 3, 6, 7, 5, 1],
    &[0, 4, 6, 5, 2, 3, 7, 1],
    &[0, 3, 5, 4, 7, 2, 6, 1],
    &[0, 6, 2, 7, 4, 5, 3, 1],
    &[0, 7, 3, 2, 5, 6, 4, 1],
];

const G0_6: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[0, 2, 4, 3, 6, 7, 5, 1],
    &[0, 4, 6, 5, 2, 3, 7, 1],
    &[0, 3, 5, 4, 7, 2, 6, 1],
    &[0, 6, 2, 7, 4, 5, 3, 1],
];
const G1_6: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 5, 7, 6, 3, 4, 2, 1],
    &[0, 7, 3, 2, 5, 6, 4, 1],
];
const H_6: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[0, 2, 4, 3, 6, 7, 5, 1],
    &[0, 4, 6, 5, 2, 3, 7, 1],
    &[0, 3, 5, 4, 7, 2, 6, 1],
    &[0, 6, 2, 7, 4, 5, 3, 1],
    &[0, 7, 3, 2, 5, 6, 4, 1],
    &[0, 5, 7, 6, 3, 4, 2, 1],
];

const G0_7: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[0, 2, 4, 3, 6, 7, 5, 1],
    &[0, 4, 6, 5, 2, 3, 7, 1],
    &[0, 3, 5, 4, 7, 2, 6, 1],
];
const G1_7: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 5, 7, 6, 3, 4, 2, 1],
    &[0, 7, 3, 2, 5, 6, 4, 1],
    &[0, 6, 2, 7, 4, 5, 3, 1],
];
const H_7: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1],
    &[0, 2, 4, 3, 6, 7, 5, 1],
    &[0, 4, 6, 5, 2, 3, 7, 1],
    &[0, 3, 5, 4, 7, 2, 6, 1],
    &[0, 6, 2, 7, 4, 5, 3, 1],
    &[0, 7, 3, 2, 5, 6, 4, 1],
    &[0, 5, 7, 6, 3, 4, 2, 1],
];

const G0_8: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[1, 0, 1, 2, 5, 3, 3, 5, 2],
    &[0, 1, 2, 5, 3, 3, 5, 2, 1],
];
const G1_8: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 1, 5, 3, 2, 0, 2, 3, 5],
    &[0, 2, 3, 5, 1, 1, 5, 3, 2],
];
const H_8: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[1, 0, 1, 2, 5, 3, 3, 5, 2],
    &[0, 1, 2, 5, 3, 3, 5, 2, 1],
    &[1, 1, 5, 3, 2, 0, 2, 3, 5],
    &[0, 2, 3, 5, 1, 1, 5, 3, 2],
];

const G0_9: Mat = &[
    &[1, 0, 1, 2, 5, 3, 3, 5, 2],
    &[0, 1, 2, 5, 3, 3, 5, 2, 1],
    &[1, 2, 3, 1, 2, 3, 1, 2, 3],
    &[0, 5, 5, 0, 5, 5, 0, 5, 5],
];
const G1_9: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[1, 1, 5, 3, 2, 0, 2, 3, 5],
    &[0, 2, 3, 5, 1, 1, 5, 3, 2],
];
const H_9: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[1, 0, 1, 2, 5, 3, 3, 5, 2],
    &[0, 1, 2, 5, 3, 3, 5, 2, 1],
    &[1, 1, 5, 3, 2, 0, 2, 3, 5],
    &[0, 2, 3, 5, 1, 1, 5, 3, 2],
    &[1, 2, 3, 1, 2, 3, 1, 2, 3],
    &[0, 5, 5, 0, 5, 5, 0, 5, 5],
];

const G0_10: Mat = &[
    &[1, 5, 0, 7, 7, 1, 7, 2, 4],
    &[0, 5, 5, 2, 5, 4, 3, 1, 5],
    &[1, 5, 1, 4, 2, 4, 6, 3, 6],
    &[0, 4, 7, 0, 6, 1, 0, 5, 4],
    &[1, 4, 4, 3, 0, 4, 1, 5, 3],
    &[0, 6, 4, 2, 7, 2, 3, 3, 6],
];
const G1_10: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 6, 7, 7, 2, 1, 7, 1, 0],
    &[0, 3, 1, 2, 2, 6, 3, 2, 3],
];
const H_10: Mat = &[
    &[1, 5, 0, 7, 7, 1, 7, 2, 4],
    &[0, 5, 5, 2, 5, 4, 3, 1, 5],
    &[1, 5, 1, 4, 2, 4, 6, 3, 6],
    &[0, 4, 7, 0, 6, 1, 0, 5, 4],
    &[1, 4, 4, 3, 0, 4, 1, 5, 3],
    &[0, 6, 4, 2, 7, 2, 3, 3, 6],
    &[1, 6, 7, 7, 2, 1, 7, 1, 0],
    &[0, 3, 1, 2, 2, 6, 3, 2, 3],
];

const G0_11: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[1, 0, 1, 2, 5, 3, 3, 5, 2],
    &[0, 1, 2, 5, 3, 3, 5, 2, 1],
    &[1, 1, 5, 3, 2, 0, 2, 3, 5],
    &[0, 2, 3, 5, 1, 1, 5, 3, 2],
];
const G1_11: Mat = &[
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[0, 0, 0, 0, 0, 0, 0, 0, 0],
    &[1, 2, 3, 1, 2, 3, 1, 2, 3],
    &[0, 5, 5, 0, 5, 5, 0, 5, 5],
];
const H_11: Mat = &[
    &[1, 1, 1, 1, 1, 1, 1, 1, 1],
    &[1, 0, 1, 2, 5, 3, 3, 5, 2],
    &[0, 1, 2, 5, 3, 3, 5, 2, 1],
    &[1, 1, 5, 3, 2, 0, 2, 3, 5],
    &[0, 2, 3, 5, 1, 1, 5, 3, 2],
    &[1, 2, 3, 1, 2, 3, 1, 2, 3],
    &[0, 5, 5, 0, 5, 5, 0, 5, 5],
];
