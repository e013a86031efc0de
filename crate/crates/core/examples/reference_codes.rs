//! Regenerates the eleven reference codes and compares them with the stored
//! matrices and free distances.

use umconv::convcode::ClassifyOptions;
use umconv::fixtures::{check, REFERENCE_CODES};

fn main() -> umconv::Result<()> {
    for code in &REFERENCE_CODES {
        let c = check(code, &ClassifyOptions::default())?;
        let (n, k, d) = code.spec.conv_params();
        let status = if c.ok() { "ok" } else { "MISMATCH" };
        println!("{:>2} ({n},{k},{d})_8  dfree {:?}  {status}", code.id, c.report.dfree);
        for m in &c.mismatches {
            println!("   {m}");
        }
    }
    Ok(())
}
