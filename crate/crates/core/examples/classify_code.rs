//! Computes column distances and the free distance of a constacyclic code of
//! length 10 over GF(9).

use umconv::constructions::{build_default, FamilySpec};
use umconv::convcode::{classify, ClassifyOptions};

fn main() -> umconv::Result<()> {
    let spec = FamilySpec::constacyclic(9, 2, 1);
    let bundle = build_default(spec)?;
    let report = classify(&bundle.desc, &ClassifyOptions::default())?;
    println!("{}", spec.describe());
    println!("{}", report.render());
    Ok(())
}
