//! Deletes degree-one rows from a generator of a length 9 code over GF(8)
//! and classifies the subcodes that remain.

use umconv::constructions::{build_default, FamilySpec};
use umconv::convcode::{classify, kernel_basis, omit_rows, ClassifyOptions, ConvCodeDesc};

fn main() -> umconv::Result<()> {
    let q = 8;
    for k in 1..=3 {
        for delta in 1..=(q as usize).div_ceil(2) - k {
            let tau = k + delta - 1;
            let bundle = build_default(FamilySpec::cyclic_parity(q, tau))?;
            let g = kernel_basis(&bundle.parity)?;
            let top: Vec<usize> = (0..g.rows()).filter(|&r| g.row_degree(r) == Some(1)).collect();
            let sub = omit_rows(&g, &top[..k - 1])?;
            let desc = ConvCodeDesc::from_generator(&sub)?;
            let r = classify(&desc, &ClassifyOptions::default())?;
            println!(
                "tau {tau}, dropped {}: ({},{},{})  dfree {:?}  mds {:?}",
                k - 1,
                r.n,
                r.k,
                r.delta,
                r.dfree,
                r.mds
            );
        }
    }
    Ok(())
}
