//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness; exits nonzero when any criterion fails.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use umconv::blockcode::{min_distance, min_distance_by_enumeration, realify};
use umconv::cli::{self, SweepRow};
use umconv::constructions::{admissible_parameters, build_default, Family};
use umconv::convcode::{
    classify, column_cap, column_distance_with, minimality_check, Certificate, ClassifyOptions, SearchConfig, Verdict,
};
use umconv::fixtures::REFERENCE_CODES;
use umconv::galois::{ExtField, Field, FiniteField};
use umconv::linalg::FMatrix;

const SWEEP_QS: [u32; 6] = [3, 4, 5, 7, 8, 9];

struct Outcome {
    pass: bool,
    summary: String,
    problems: Vec<String>,
}

impl Outcome {
    fn new(summary: String, problems: Vec<String>) -> Outcome {
        Outcome { pass: problems.is_empty(), summary, problems }
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2} s", d.as_secs_f64())
}

fn fixture_reproduction() -> Outcome {
    let start = Instant::now();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(["umconv", "examples", "--check"], &mut out, &mut err);
    let took = start.elapsed();
    let mut problems = Vec::new();
    if code != 0 {
        problems.push(format!("examples --check exited {code}: {}", String::from_utf8_lossy(&err).trim()));
    }
    for c in &REFERENCE_CODES {
        match umconv::fixtures::check(c, &ClassifyOptions::default()) {
            Ok(f) if f.ok() => {}
            Ok(f) => problems.push(format!("code {}: {}", c.id, f.mismatches.join("; "))),
            Err(e) => problems.push(format!("code {}: {e}", c.id)),
        }
    }
    if took >= Duration::from_secs(10) {
        problems.push(format!("took {}", secs(took)));
    }
    Outcome::new(format!("11 reference codes regenerated in {}", secs(took)), problems)
}

fn free_distances() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let opts = ClassifyOptions::default();
    for c in &REFERENCE_CODES {
        let b = match c.build() {
            Ok(b) => b,
            Err(e) => {
                problems.push(format!("code {}: {e}", c.id));
                continue;
            }
        };
        let r = classify(&b.desc, &opts).unwrap();
        let s = r.indices.singleton_bound;
        if r.dfree != (c.dfree, c.dfree) || s != c.dfree {
            problems.push(format!("code {}: bounds {:?}, singleton {s}, expected {}", c.id, r.dfree, c.dfree));
        }
        let split = r.certificates.iter().find_map(|x| match x {
            Certificate::BlockSplit { d0, d1, lower, upper, .. } => Some((*d0, *d1, *lower, *upper)),
            _ => None,
        });
        match split {
            Some((_, _, lo, hi)) if (lo, hi) == (c.dfree, c.dfree) => {}
            Some((d0, d1, lo, hi)) => {
                let g1 = b.parity.coeff(1);
                let zero_col = (0..g1.cols()).any(|col| (0..g1.rows()).all(|row| g1.get(row, col) == 0));
                let why = if zero_col { "; the D coefficient has a zero column, so d1 = 1" } else { "" };
                problems.push(format!(
                    "code {}: block-split certificate gives [{lo}, {hi}] (d0 = {d0}, d1 = {d1}), not {}{why}; \
                     exact {} only via column distances",
                    c.id, c.dfree, c.dfree
                ))
            }
            None => problems.push(format!("code {}: no block-split certificate", c.id)),
        }
        if c.claims.smds {
            let d1c = column_distance_with(&b.desc, 1, &opts.search).unwrap();
            if !d1c.exact || d1c.value != c.dfree {
                problems.push(format!("code {}: d1c = {}, expected {}", c.id, d1c.value, c.dfree));
            }
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(60) {
        problems.push(format!("took {}", secs(took)));
    }
    Outcome::new(format!("11 free distances in {}", secs(took)), problems)
}

fn column_distance_checks() -> Outcome {
    let start = Instant::now();
    let mut problems = Vec::new();
    let cfg = SearchConfig::default();
    for c in &REFERENCE_CODES {
        let b = c.build().unwrap();
        let idx = b.desc.indices().unwrap();
        if [1, 2, 4, 6, 8, 10, 11].contains(&c.id) {
            let d = column_distance_with(&b.desc, 1, &cfg).unwrap();
            if idx.m != 1 || !d.exact || d.value != idx.singleton_bound {
                problems.push(format!("code {}: M = {}, d1c = {}, bound {}", c.id, idx.m, d.value, idx.singleton_bound));
            }
        }
        if [1, 2, 4, 6, 7, 8, 9, 10, 11].contains(&c.id) {
            let d = column_distance_with(&b.desc, 0, &cfg).unwrap();
            let want = b.desc.n - b.desc.k + 1;
            if idx.l != 0 || !d.exact || d.value != want {
                problems.push(format!("code {}: L = {}, d0c = {}, expected {want}", c.id, idx.l, d.value));
            }
        }
    }
    let took = start.elapsed();
    if took >= Duration::from_secs(60) {
        problems.push(format!("took {}", secs(took)));
    }
    Outcome::new(format!("column distances in {}", secs(took)), problems)
}

fn sweeps(rows: &[SweepRow]) -> Outcome {
    let mut problems = Vec::new();
    let expected_count: usize = SWEEP_QS.iter().map(|&q| admissible_parameters(q, &Family::ALL).len()).sum();
    if rows.len() != expected_count {
        problems.push(format!("{} rows for {expected_count} parameter sets", rows.len()));
    }
    let mut slowest = 0;
    for row in rows {
        let e = row.spec.expected();
        let r = &row.report;
        let tag = row.spec.describe();
        for (name, want, got) in [("mds", e.mds, r.mds), ("smds", e.smds, r.smds), ("mdp", e.mdp, r.mdp)] {
            if want && got == Verdict::Refuted {
                problems.push(format!("{tag}: {name} refuted"));
            }
            if got == Verdict::Inconclusive {
                problems.push(format!("{tag}: {name} inconclusive"));
            }
        }
        if row.ms >= 30_000 {
            problems.push(format!("{tag}: {} ms", row.ms));
        }
        slowest = slowest.max(row.ms);
    }
    Outcome::new(format!("{} codes over q in {SWEEP_QS:?}, slowest {slowest} ms", rows.len()), problems)
}

fn all_vectors(q: u32, n: usize) -> impl Iterator<Item = Vec<u32>> {
    (0..(q as u64).pow(n as u32)).map(move |mut x| {
        (0..n)
            .map(|_| {
                let d = (x % q as u64) as u32;
                x /= q as u64;
                d
            })
            .collect()
    })
}

fn in_kernel<F: FiniteField>(m: &FMatrix<F>, v: &[u32]) -> bool {
    let f = m.field();
    (0..m.rows()).all(|r| (0..m.cols()).fold(0, |a, c| f.add(a, f.mul(m.get(r, c), v[c]))) == 0)
}

fn property_suites(rows: &[SweepRow]) -> Outcome {
    let mut problems = Vec::new();

    for row in rows {
        let r = &row.report;
        let cols: Vec<usize> = r.column_distances.iter().filter(|c| c.j <= 4).map(|c| c.value).collect();
        if cols.windows(2).any(|w| w[0] > w[1]) {
            problems.push(format!("{}: column distances {cols:?} decrease", row.spec.describe()));
        }
        for c in r.column_distances.iter().filter(|c| c.j <= 4) {
            if c.value > column_cap(r.n, r.k, c.j) {
                problems.push(format!("{}: d{}c = {} above cap", row.spec.describe(), c.j, c.value));
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let fields: Vec<Field> = [2u32, 3, 4, 5, 7].iter().map(|&q| Field::of_order(q).unwrap()).collect();
    let mut codes = 0;
    while codes < 100 {
        let f = &fields[rng.gen_range(0..fields.len())];
        let n = rng.gen_range(2..=8);
        let r = rng.gen_range(1..n);
        let data = (0..r * n).map(|_| rng.gen_range(0..f.q())).collect();
        let h = FMatrix::new(f.clone(), r, n, data).unwrap();
        if h.rank() == n {
            continue;
        }
        codes += 1;
        let d = min_distance(&h, 1 << 24).unwrap().d;
        if Some(d) != min_distance_by_enumeration(&h) {
            problems.push(format!("min distance disagreement on\n{h}"));
        }
    }

    let base = Field::of_order(4).unwrap();
    let ext = ExtField::new(&base, None, None).unwrap();
    for _ in 0..30 {
        let rows = rng.gen_range(1..=2);
        let data = (0..rows * 5).map(|_| rng.gen_range(0..16)).collect();
        let m = FMatrix::new(ext.clone(), rows, 5, data).unwrap();
        let r = realify(&m);
        if all_vectors(4, 5).any(|v| in_kernel(&m, &v) != in_kernel(&r, &v)) {
            problems.push(format!("realify changed the kernel of\n{m}"));
        }
    }

    for q in [2u32, 3, 4, 5, 7, 8, 9] {
        let f = Field::of_order(q).unwrap();
        for a in 0..q {
            let inverse = a == 0 || f.inv(a).map(|i| f.mul(a, i) == 1).unwrap_or(false);
            let ok = inverse
                && f.add(a, f.neg(a)) == 0
                && (0..q).all(|b| {
                    f.add(a, b) == f.add(b, a)
                        && f.mul(a, b) == f.mul(b, a)
                        && (0..q).all(|c| {
                            f.add(f.add(a, b), c) == f.add(a, f.add(b, c))
                                && f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c))
                                && f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
                        })
                });
            if !ok {
                problems.push(format!("field axiom fails at q = {q}, a = {a}"));
            }
        }
    }
    Outcome::new("monotonicity and cap, 100 random block codes, realify at q = 4, axioms for q <= 9".into(), problems)
}

fn minimality() -> Outcome {
    let mut problems = Vec::new();
    let mut count = 0;
    let specs = SWEEP_QS.iter().flat_map(|&q| admissible_parameters(q, &Family::ALL));
    let bundles = specs
        .map(|s| (s.describe(), build_default(s)))
        .chain(REFERENCE_CODES.iter().map(|c| (format!("reference code {}", c.id), c.build())));
    for (tag, b) in bundles {
        count += 1;
        let b = match b {
            Ok(b) => b,
            Err(e) => {
                problems.push(format!("{tag}: {e}"));
                continue;
            }
        };
        match minimality_check(&b.parity) {
            Ok(m) if m.row_reduced && m.basic => {}
            Ok(m) => problems.push(format!("{tag}: row reduced {}, basic {}", m.row_reduced, m.basic)),
            Err(e) => problems.push(format!("{tag}: {e}")),
        }
        let degree: usize = b.parity.row_degrees().iter().map(|d| d.unwrap_or(0)).sum();
        let (_, _, want) = b.spec.conv_params();
        if degree != want {
            problems.push(format!("{tag}: row degrees sum to {degree}, expected {want}"));
        }
    }
    Outcome::new(format!("{count} parity matrices"), problems)
}

fn main() {
    let sweep_start = Instant::now();
    let rows = cli::sweep(&SWEEP_QS, &Family::ALL, &ClassifyOptions::default(), true).expect("sweep");
    let sweep_time = sweep_start.elapsed();

    let results = [
        ("1 fixture reproduction", fixture_reproduction()),
        ("2 free distances", free_distances()),
        ("3 strongly-MDS and MDP column distances", column_distance_checks()),
        ("4 parameter sweeps", sweeps(&rows)),
        ("5 property suites", property_suites(&rows)),
        ("6 minimality and degree", minimality()),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        println!("{} criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
        for p in &o.problems {
            println!("    {p}");
        }
        failed += usize::from(!o.pass);
    }
    println!("sweep wall time {}", secs(sweep_time));
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
