//! Minimum-weight search for kernel vectors of a block matrix that are nonzero
//! somewhere in the first `block` coordinates.
//!
//! Two independent engines:
//! * `Support`: supports by increasing size in lexicographic order, each
//!   tested for a kernel vector living on it. Column echelon forms are kept
//!   along the enumeration path so a leaf costs one column reduction.
//! * `InformationSet`: enumerates low-weight messages over a sequence of
//!   systematic generator matrices of the kernel with disjoint information
//!   sets, stopping once the accumulated lower bound meets the best weight.

use crate::error::{Error, Result};
use crate::galois::{FiniteField, Field};
use crate::linalg::FMatrix;

/// Which search engine to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Support enumeration, skipping supports with fewer first-block positions
    /// than the known minimum first-block weight.
    Support,
    /// Support enumeration over every support meeting the first block.
    SupportUnpruned,
    /// Information-set enumeration over a generator of the kernel.
    InformationSet,
}

impl std::str::FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "support" => Ok(Engine::Support),
            "support-unpruned" => Ok(Engine::SupportUnpruned),
            "information-set" | "bz" => Ok(Engine::InformationSet),
            other => Err(Error::Parse(format!("unknown engine '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub engine: Engine,
    /// Maximum number of leaves (support tests or codeword evaluations).
    pub budget: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { engine: Engine::Support, budget: 10_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Found { weight: usize, witness: Vec<u32>, work: u64 },
    /// No qualifying vector of weight at most the cap.
    NotFound { work: u64 },
    /// Budget ran out; every qualifying vector has weight at least `lower`.
    Exhausted { lower: usize, best: Option<(usize, Vec<u32>)>, work: u64 },
}

/// Smallest weight of `x` with `m x = 0` and `x[..block] != 0`, searched up
/// to weight `cap`. `min_first` is a known lower bound on the number of
/// nonzero first-block coordinates of any such vector.
pub fn min_weight(m: &FMatrix, block: usize, cap: usize, min_first: usize, cfg: &SearchConfig) -> Outcome {
    match cfg.engine {
        Engine::Support => support_search(m, block, cap, min_first.max(1), cfg.budget),
        Engine::SupportUnpruned => support_search(m, block, cap, 1, cfg.budget),
        Engine::InformationSet => information_set_search(m, block, cap, cfg.budget),
    }
}

struct Echelon {
    // (pivot row, normalised vector)
    basis: Vec<(usize, Vec<u32>)>,
    dependent: usize,
    // basis length before each push, so the stack can be unwound
    marks: Vec<(usize, usize)>,
}

impl Echelon {
    fn push(&mut self, f: &Field, col: &[u32]) {
        self.marks.push((self.basis.len(), self.dependent));
        let mut v = col.to_vec();
        for (p, b) in &self.basis {
            let c = v[*p];
            if c != 0 {
                for (x, &y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, y));
                }
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => self.dependent += 1,
            Some(p) => {
                let inv = f.inv(v[p]).expect("nonzero");
                for x in v.iter_mut() {
                    *x = f.mul(*x, inv);
                }
                self.basis.push((p, v));
            }
        }
    }

    fn pop(&mut self) {
        let (len, dep) = self.marks.pop().expect("balanced push/pop");
        self.basis.truncate(len);
        self.dependent = dep;
    }
}

struct SupportDfs<'a> {
    m: &'a FMatrix,
    field: Field,
    columns: Vec<Vec<u32>>,
    block: usize,
    min_first: usize,
    budget: u64,
    work: u64,
    chosen: Vec<usize>,
    echelon: Echelon,
}

enum Step {
    Continue,
    Found(Vec<u32>),
    OutOfBudget,
}

impl SupportDfs<'_> {
    fn leaf(&mut self) -> Step {
        self.work += 1;
        if self.work > self.budget {
            return Step::OutOfBudget;
        }
        if self.echelon.dependent == 0 {
            return Step::Continue;
        }
        match self.m.solve_on_support(&self.chosen, Some(0..self.block)).expect("indices in range") {
            Some(v) => Step::Found(v),
            None => Step::Continue,
        }
    }

    fn dfs(&mut self, start: usize, remaining: usize, first_count: usize) -> Step {
        if remaining == 0 {
            return self.leaf();
        }
        let n = self.columns.len();
        for idx in start..=n - remaining {
            let in_first = idx < self.block;
            let count = first_count + in_first as usize;
            let room = if idx + 1 < self.block { (self.block - idx - 1).min(remaining - 1) } else { 0 };
            if count + room < self.min_first {
                // later indices only lower the attainable first-block count
                break;
            }
            self.chosen.push(idx);
            let col = std::mem::take(&mut self.columns[idx]);
            self.echelon.push(&self.field, &col);
            self.columns[idx] = col;
            let step = self.dfs(idx + 1, remaining - 1, count);
            self.echelon.pop();
            self.chosen.pop();
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        Step::Continue
    }
}

fn support_search(m: &FMatrix, block: usize, cap: usize, min_first: usize, budget: u64) -> Outcome {
    let n = m.cols();
    let columns: Vec<Vec<u32>> = (0..n).map(|c| m.column(c)).collect();
    let mut s = SupportDfs {
        m,
        field: m.field().clone(),
        columns,
        block,
        min_first,
        budget,
        work: 0,
        chosen: Vec::new(),
        echelon: Echelon { basis: Vec::new(), dependent: 0, marks: Vec::new() },
    };
    for w in min_first..=cap.min(n) {
        match s.dfs(0, w, 0) {
            Step::Continue => {}
            Step::Found(witness) => return Outcome::Found { weight: w, witness, work: s.work },
            Step::OutOfBudget => return Outcome::Exhausted { lower: w, best: None, work: s.work },
        }
    }
    Outcome::NotFound { work: s.work }
}

struct InfoSet {
    // systematic rows, scaled by every nonzero scalar: scaled[row][c - 1]
    scaled: Vec<Vec<Vec<u32>>>,
    // number of pivots in previously unused columns
    fresh: usize,
    done_level: usize,
}

fn information_set_search(m: &FMatrix, block: usize, cap: usize, budget: u64) -> Outcome {
    let f = m.field().clone();
    let q = f.q();
    let n = m.cols();
    let basis = m.nullspace();
    let k = basis.len();
    if k == 0 {
        return Outcome::NotFound { work: 0 };
    }
    let gen = FMatrix::from_rows(f.clone(), n, &basis).expect("consistent widths");
    let mut used = vec![false; n];
    let mut sets: Vec<InfoSet> = Vec::new();
    loop {
        let order: Vec<usize> = (0..n).filter(|&c| !used[c]).chain((0..n).filter(|&c| used[c])).collect();
        if order.iter().all(|&c| used[c]) {
            break;
        }
        let r = gen.select_columns(&order).expect("in range").rref();
        let pivots: Vec<usize> = r.pivots.iter().map(|&p| order[p]).collect();
        let fresh = pivots.iter().filter(|&&c| !used[c]).count();
        if fresh == 0 {
            break;
        }
        for &c in &pivots {
            used[c] = true;
        }
        let mut inverse = vec![0usize; n];
        for (pos, &c) in order.iter().enumerate() {
            inverse[c] = pos;
        }
        let scaled = (0..k)
            .map(|row| {
                let sys: Vec<u32> = (0..n).map(|c| r.matrix.get(row, inverse[c])).collect();
                (1..q).map(|s| sys.iter().map(|&x| f.mul(x, s)).collect()).collect()
            })
            .collect();
        sets.push(InfoSet { scaled, fresh, done_level: 0 });
    }

    let bound = |t: usize, sets: &[InfoSet]| -> usize {
        sets.iter().map(|s| (t + 1).saturating_sub(k - s.fresh)).sum()
    };
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut work = 0u64;
    let mut completed_bound = 0usize;
    for t in 1..=k {
        for s in sets.iter_mut() {
            if (t + 1) <= k - s.fresh {
                continue;
            }
            for level in s.done_level + 1..=t {
                let mut acc = vec![0u32; n];
                let ok = enumerate_level(&f, &s.scaled, level, 0, true, &mut acc, &mut |v: &[u32]| {
                    work += 1;
                    if work > budget {
                        return false;
                    }
                    if v[..block].iter().any(|&x| x != 0) {
                        let w = v.iter().filter(|&&x| x != 0).count();
                        if best.as_ref().is_none_or(|(b, _)| w < *b) {
                            best = Some((w, v.to_vec()));
                        }
                    }
                    true
                });
                if !ok {
                    let lower = match &best {
                        Some((b, _)) => completed_bound.min(*b),
                        None => completed_bound,
                    };
                    return Outcome::Exhausted { lower: lower.max(1), best, work };
                }
                s.done_level = level;
            }
        }
        completed_bound = bound(t, &sets);
        if let Some((w, v)) = &best {
            if *w <= completed_bound {
                return Outcome::Found { weight: *w, witness: v.clone(), work };
            }
        } else if completed_bound > cap {
            return Outcome::NotFound { work };
        }
    }
    // every codeword has been enumerated in the first information set
    match best {
        Some((w, witness)) if w <= cap => Outcome::Found { weight: w, witness, work },
        _ => Outcome::NotFound { work },
    }
}

/// Visits every combination of `level` rows with nonzero coefficients, the
/// first coefficient fixed to 1. Returns false if `visit` asked to stop.
fn enumerate_level(
    f: &Field,
    rows: &[Vec<Vec<u32>>],
    level: usize,
    start: usize,
    first: bool,
    acc: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]) -> bool,
) -> bool {
    if level == 0 {
        return visit(acc);
    }
    for r in start..=rows.len() - level {
        let scalars = if first { 0..1 } else { 0..rows[r].len() };
        for s in scalars {
            let saved = acc.clone();
            for (x, &y) in acc.iter_mut().zip(&rows[r][s]) {
                *x = f.add(*x, y);
            }
            let keep_going = enumerate_level(f, rows, level - 1, r + 1, false, acc, visit);
            *acc = saved;
            if !keep_going {
                return false;
            }
        }
    }
    true
}

/// Exhaustive reference: enumerates the whole kernel.
pub fn min_weight_exhaustive(m: &FMatrix, block: usize) -> Option<usize> {
    let f = m.field();
    let q = f.q();
    let basis = m.nullspace();
    let k = basis.len();
    let n = m.cols();
    let mut msg = vec![0u32; k];
    let mut word = vec![0u32; n];
    let mut best: Option<usize> = None;
    'outer: loop {
        let mut i = 0;
        loop {
            if i == k {
                break 'outer;
            }
            let old = msg[i];
            let new = (old + 1) % q;
            msg[i] = new;
            let delta = f.sub(new, old);
            for (w, &b) in word.iter_mut().zip(&basis[i]) {
                *w = f.add(*w, f.mul(delta, b));
            }
            if new != 0 {
                break;
            }
            i += 1;
        }
        if word[..block].iter().any(|&x| x != 0) {
            let w = word.iter().filter(|&&x| x != 0).count();
            if best.is_none_or(|b| w < b) {
                best = Some(w);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engines_agree_on_small_matrix() {
        let f = Field::of_order(3).unwrap();
        let m = FMatrix::from_rows(
            f,
            6,
            &[vec![1, 2, 0, 1, 1, 0], vec![0, 1, 1, 2, 0, 1], vec![1, 0, 0, 0, 2, 2]],
        )
        .unwrap();
        let truth = min_weight_exhaustive(&m, 2).unwrap();
        for engine in [Engine::Support, Engine::SupportUnpruned, Engine::InformationSet] {
            let cfg = SearchConfig { engine, budget: 1_000_000 };
            match min_weight(&m, 2, 6, 1, &cfg) {
                Outcome::Found { weight, witness, .. } => {
                    assert_eq!(weight, truth, "{engine:?}");
                    assert!(m.mul_vec(&witness).unwrap().iter().all(|&x| x == 0));
                    assert!(witness[..2].iter().any(|&x| x != 0));
                }
                other => panic!("{engine:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn budget_exhaustion_reports_lower_bound() {
        let f = Field::of_order(5).unwrap();
        let m = FMatrix::from_rows(f, 5, &[vec![1, 1, 1, 1, 1], vec![0, 1, 2, 3, 4]]).unwrap();
        let cfg = SearchConfig { engine: Engine::SupportUnpruned, budget: 3 };
        assert!(matches!(min_weight(&m, 5, 5, 1, &cfg), Outcome::Exhausted { lower: 1, .. } | Outcome::Exhausted { lower: 2, .. }));
    }
}
