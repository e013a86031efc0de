//! Classifies every admissible code over GF(7) and GF(8).

use umconv::cli::sweep;
use umconv::constructions::Family;
use umconv::convcode::ClassifyOptions;

fn main() -> umconv::Result<()> {
    let rows = sweep(&[7, 8], &Family::ALL, &ClassifyOptions::default(), true)?;
    for row in &rows {
        let r = &row.report;
        let cols: Vec<usize> = r.column_distances.iter().map(|c| c.value).collect();
        println!(
            "{:<40} ({},{},{}) d^c {cols:?} dfree {:?} {:?}/{:?}/{:?} {} ms",
            row.spec.describe(),
            r.n,
            r.k,
            r.delta,
            r.dfree,
            r.mds,
            r.smds,
            r.mdp,
            row.ms
        );
    }
    Ok(())
}
