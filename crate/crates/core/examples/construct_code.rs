//! Builds an (8, 4, 2) code over GF(8) from a generalized Reed-Solomon split.

use umconv::constructions::{build_default, FamilySpec};

fn main() -> umconv::Result<()> {
    let bundle = build_default(FamilySpec::grs(8, 2, 2))?;
    println!("{}", bundle.render());
    println!("{}", serde_json::to_string_pretty(&bundle.to_json()).expect("json"));
    Ok(())
}
