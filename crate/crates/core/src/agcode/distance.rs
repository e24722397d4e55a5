//! Minimum distance: exhaustive codeword enumeration, parity-check column
//! search, and a seeded low-weight search for upper bounds.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::LinearCode;
use crate::gf::{Fe, Field};
use crate::linalg::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Enumerate,
    ColumnSearch,
    Auto,
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Method, String> {
        match s {
            "enumerate" => Ok(Method::Enumerate),
            "column-search" | "column_search" => Ok(Method::ColumnSearch),
            "auto" => Ok(Method::Auto),
            _ => Err(format!("unknown method `{s}` (enumerate, column-search, auto)")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DistanceOptions {
    pub method: Method,
    /// Work cap: codewords for enumeration, rank-test nodes for column search.
    pub budget: u64,
    /// A proven lower bound, e.g. the design distance.
    pub lower_bound: usize,
    /// Stop as soon as a codeword of weight `lower_bound` turns up.
    pub stop_at_lower: bool,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions { method: Method::Auto, budget: 1 << 32, lower_bound: 1, stop_at_lower: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodUsed {
    Enumerate,
    ColumnSearch,
    Bracket,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistanceReport {
    pub method: MethodUsed,
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    /// Units of work actually spent (codewords or rank-test nodes).
    pub work: u64,
    /// A codeword of weight `upper`.
    #[serde(skip)]
    pub witness: Option<Vec<Fe>>,
    /// For column search: a minimal dependent set of parity-check columns.
    pub dependent_columns: Option<Vec<usize>>,
}

impl DistanceReport {
    pub fn exact_value(&self) -> Option<usize> {
        self.exact.then_some(self.upper)
    }
}

/// Number of codewords visited by [`enumerate_min`]: one per projective point.
pub fn enumeration_cost(q: u64, k: usize) -> u128 {
    let q = q as u128;
    let mut total: u128 = 0;
    for _ in 0..k {
        total = total.saturating_mul(q).saturating_add(1);
    }
    total
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k.min(n - k) {
        match r.checked_mul((n - i) as u128) {
            Some(x) => r = x / (i + 1) as u128,
            None => return u128::MAX,
        }
    }
    r
}

/// Nodes visited by a column search that must rule out sets below `upper`.
/// Saturates for codes far beyond any budget.
pub fn column_search_cost(n: usize, upper: usize) -> u128 {
    (0..upper).fold(0u128, |acc, t| acc.saturating_add(binom(n, t)))
}

pub fn weight(v: &[Fe]) -> usize {
    v.iter().filter(|c| !c.is_zero()).count()
}

// ---------------------------------------------------------------------------
// Enumeration

/// Lane width for packed characteristic-2 vectors, if the field fits.
fn lane_bits(f: &Field) -> Option<u32> {
    if f.characteristic() != 2 {
        return None;
    }
    match f.degree() {
        0..=4 => Some(4),
        5..=8 => Some(8),
        9..=16 => Some(16),
        _ => None,
    }
}

struct Packing {
    bits: u32,
    words: usize,
    low_mask: u64,
}

impl Packing {
    fn new(bits: u32, n: usize) -> Packing {
        let per = 64 / bits as usize;
        let mut low_mask = 0u64;
        for i in 0..per {
            low_mask |= 1 << (i as u32 * bits);
        }
        Packing { bits, words: n.div_ceil(per), low_mask }
    }

    fn pack(&self, v: &[Fe]) -> Vec<u64> {
        let per = 64 / self.bits as usize;
        let mut out = vec![0u64; self.words];
        for (i, c) in v.iter().enumerate() {
            out[i / per] |= c.0 << ((i % per) as u32 * self.bits);
        }
        out
    }

    fn unpack(&self, w: &[u64], n: usize) -> Vec<Fe> {
        let per = 64 / self.bits as usize;
        let mask = (1u64 << self.bits) - 1;
        (0..n).map(|i| Fe((w[i / per] >> ((i % per) as u32 * self.bits)) & mask)).collect()
    }

    #[inline]
    fn weight(&self, w: &[u64]) -> u32 {
        let mut total = 0;
        for &x in w {
            let mut y = x | (x >> 1);
            y |= y >> 2;
            if self.bits >= 8 {
                y |= y >> 4;
            }
            if self.bits >= 16 {
                y |= y >> 8;
            }
            total += (y & self.low_mask).count_ones();
        }
        total
    }
}

/// Best (weight, codeword) over one Gray-code block.
type Best = Option<(usize, Vec<Fe>)>;

/// Walks the modular p-ary Gray code over `steps.len()` digits starting from
/// `start`: every move adds one of `steps` to the running codeword.
fn gray_block(
    field: &Field,
    start: &[Fe],
    steps: &[Vec<Fe>],
    stop: Option<usize>,
    done: &AtomicBool,
) -> (Best, u64) {
    let p = field.characteristic();
    let n = start.len();
    let total = (p as u128).pow(steps.len() as u32);
    let mut work: u64 = 0;
    if let Some(pk) = lane_bits(field).map(|b| Packing::new(b, n)) {
        let mut cur = pk.pack(start);
        let packed: Vec<Vec<u64>> = steps.iter().map(|s| pk.pack(s)).collect();
        let mut best = pk.weight(&cur) as usize;
        let mut best_word = cur.clone();
        let mut t: u128 = 1;
        while t < total {
            let digit = t.trailing_zeros() as usize;
            for (c, s) in cur.iter_mut().zip(&packed[digit]) {
                *c ^= s;
            }
            let w = pk.weight(&cur) as usize;
            if w < best {
                best = w;
                best_word.copy_from_slice(&cur);
            }
            t += 1;
            if t & 0xffff == 0 {
                if stop.is_some_and(|s| best <= s) {
                    done.store(true, Ordering::Relaxed);
                }
                if done.load(Ordering::Relaxed) {
                    break;
                }
            }
        }
        work += t as u64;
        return (Some((best, pk.unpack(&best_word, n))), work);
    }
    let mut cur = start.to_vec();
    let mut best = weight(&cur);
    let mut best_word = cur.clone();
    let mut t: u128 = 1;
    while t < total {
        let mut digit = 0;
        let mut u = t;
        while u.is_multiple_of(p as u128) {
            u /= p as u128;
            digit += 1;
        }
        for (c, s) in cur.iter_mut().zip(&steps[digit]) {
            *c = field.add(*c, *s);
        }
        let w = weight(&cur);
        if w < best {
            best = w;
            best_word.clone_from(&cur);
        }
        t += 1;
        if t & 0xfff == 0 {
            if stop.is_some_and(|s| best <= s) {
                done.store(true, Ordering::Relaxed);
            }
            if done.load(Ordering::Relaxed) {
                break;
            }
        }
    }
    work += t as u64;
    (Some((best, best_word)), work)
}

/// Exhaustive minimum weight over one representative per line: the first
/// nonzero message coordinate is fixed to 1. Returns (weight, witness, work).
pub fn enumerate_min(generator: &Matrix, stop: Option<usize>) -> (usize, Vec<Fe>, u64) {
    let field = generator.field().clone();
    let k = generator.nrows();
    let n = generator.ncols();
    let p = field.characteristic();
    let m = field.degree() as usize;
    let basis: Vec<Fe> = (0..m).map(|b| Fe(p.pow(b as u32))).collect();
    let done = AtomicBool::new(false);
    // Tasks: (lead row, prefix digits). Splitting the top digits keeps the
    // outcome independent of the worker count.
    let mut tasks: Vec<(usize, Vec<Fe>, Vec<Vec<Fe>>)> = Vec::new();
    for lead in 0..k {
        let mut steps: Vec<Vec<Fe>> = Vec::new();
        for j in lead + 1..k {
            for &b in &basis {
                steps.push(generator.row(j).iter().map(|&c| field.mul(b, c)).collect());
            }
        }
        let split = steps.len().min(if (p as f64).powi(steps.len() as i32) > 1e5 { 6 } else { 0 });
        let high: Vec<Vec<Fe>> = steps.split_off(steps.len() - split);
        let count = p.pow(split as u32);
        for idx in 0..count {
            let mut start = generator.row(lead).to_vec();
            let mut r = idx;
            for h in &high {
                let c = field.from_int((r % p) as i64);
                r /= p;
                for (s, v) in start.iter_mut().zip(h) {
                    *s = field.add(*s, field.mul(c, *v));
                }
            }
            tasks.push((lead, start, steps.clone()));
        }
    }
    let results: Vec<(Best, u64)> =
        tasks.par_iter().map(|(_, start, steps)| gray_block(&field, start, steps, stop, &done)).collect();
    let mut best = (n + 1, vec![Fe::ZERO; n]);
    let mut work = 0;
    for (b, w) in results {
        work += w;
        if let Some((wt, word)) = b {
            if wt < best.0 {
                best = (wt, word);
            }
        }
    }
    (best.0, best.1, work)
}

/// Full weight distribution `A_0..A_n` by plain enumeration of all `q^k`
/// messages.
pub fn weight_distribution(generator: &Matrix) -> Vec<u64> {
    let field = generator.field();
    let k = generator.nrows();
    let n = generator.ncols();
    let q = field.order();
    let mut counts = vec![0u64; n + 1];
    let total = q.pow(k as u32);
    let mut msg = vec![0u64; k];
    for _ in 0..total {
        let mut word = vec![Fe::ZERO; n];
        for (i, &c) in msg.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (w, &g) in word.iter_mut().zip(generator.row(i)) {
                *w = field.add(*w, field.mul(Fe(c), g));
            }
        }
        counts[weight(&word)] += 1;
        for d in msg.iter_mut() {
            *d += 1;
            if *d < q {
                break;
            }
            *d = 0;
        }
    }
    counts
}

// ---------------------------------------------------------------------------
// Column search

struct Echelon {
    rows: Vec<(usize, Vec<Fe>)>,
}

impl Echelon {
    fn reduce(&self, f: &Field, mut v: Vec<Fe>) -> Vec<Fe> {
        for (piv, b) in &self.rows {
            let c = v[*piv];
            if !c.is_zero() {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.sub(*x, f.mul(c, *y));
                }
            }
        }
        v
    }
}

struct ColumnSearch<'a> {
    field: &'a Field,
    cols: Vec<Vec<Fe>>,
    best: &'a AtomicUsize,
    nodes: u64,
    found: Option<Vec<usize>>,
}

impl ColumnSearch<'_> {
    fn dfs(&mut self, start: usize, chosen: &mut Vec<usize>, ech: &mut Echelon) {
        for c in start..self.cols.len() {
            let size = chosen.len() + 1;
            if size > self.best.load(Ordering::Relaxed) {
                return;
            }
            self.nodes += 1;
            let v = ech.reduce(self.field, self.cols[c].clone());
            match v.iter().position(|x| !x.is_zero()) {
                None => {
                    if self.found.as_ref().is_none_or(|f| size < f.len()) {
                        let mut set = chosen.clone();
                        set.push(c);
                        self.found = Some(set);
                    }
                    self.best.fetch_min(size, Ordering::Relaxed);
                }
                Some(piv) => {
                    if size + 1 > self.best.load(Ordering::Relaxed) {
                        continue;
                    }
                    let inv = self.field.inv(v[piv]).unwrap();
                    let v: Vec<Fe> = v.iter().map(|&x| self.field.mul(inv, x)).collect();
                    ech.rows.push((piv, v));
                    chosen.push(c);
                    self.dfs(c + 1, chosen, ech);
                    chosen.pop();
                    ech.rows.pop();
                }
            }
        }
    }
}

/// Smallest number of linearly dependent columns of `parity`, searched
/// below `upper`. Returns the size and a dependent set, or `None` if every
/// set smaller than `upper` is independent.
pub fn column_search(parity: &Matrix, n: usize, upper: usize) -> (Option<(usize, Vec<usize>)>, u64) {
    let field = parity.field();
    let cols: Vec<Vec<Fe>> = (0..n).map(|j| parity.rows().map(|r| r[j]).collect()).collect();
    let best = AtomicUsize::new(upper.saturating_sub(1));
    let results: Vec<(Option<Vec<usize>>, u64)> = (0..n)
        .into_par_iter()
        .map(|first| {
            let mut s = ColumnSearch { field, cols: cols.clone(), best: &best, nodes: 0, found: None };
            let mut chosen = Vec::new();
            let mut ech = Echelon { rows: Vec::new() };
            // Only sets whose smallest column is `first`.
            s.nodes += 1;
            let v = s.cols[first].clone();
            match v.iter().position(|x| !x.is_zero()) {
                None => {
                    s.found = Some(vec![first]);
                    best.fetch_min(1, Ordering::Relaxed);
                }
                Some(piv) if 2 <= best.load(Ordering::Relaxed) => {
                    let inv = field.inv(v[piv]).unwrap();
                    ech.rows.push((piv, v.iter().map(|&x| field.mul(inv, x)).collect()));
                    chosen.push(first);
                    s.dfs(first + 1, &mut chosen, &mut ech);
                }
                Some(_) => {}
            }
            (s.found, s.nodes)
        })
        .collect();
    let work = results.iter().map(|r| r.1).sum();
    let mut best_set: Option<Vec<usize>> = None;
    for (f, _) in results {
        if let Some(f) = f {
            if best_set.as_ref().is_none_or(|b| f.len() < b.len()) {
                best_set = Some(f);
            }
        }
    }
    (best_set.map(|s| (s.len(), s)), work)
}

/// A codeword supported inside `cols`, from a dependency among the
/// parity-check columns.
fn codeword_on(parity: &Matrix, cols: &[usize], n: usize) -> Vec<Fe> {
    let sub = parity.select_columns(cols);
    let ker = sub.kernel_basis();
    let mut word = vec![Fe::ZERO; n];
    if ker.nrows() > 0 {
        for (i, &c) in cols.iter().enumerate() {
            word[c] = ker.get(0, i);
        }
    }
    word
}

// ---------------------------------------------------------------------------
// Low-weight search

/// Information-set sampling: weights of systematic rows and their pairwise
/// combinations under random column orders. Seeded, so deterministic.
pub fn low_weight_search(generator: &Matrix, rounds: usize) -> (usize, Vec<Fe>) {
    let field = generator.field();
    let n = generator.ncols();
    let k = generator.nrows();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1cd_a9c0de);
    let mut best = (n + 1, vec![Fe::ZERO; n]);
    let consider = |w: Vec<Fe>, best: &mut (usize, Vec<Fe>)| {
        let wt = weight(&w);
        if wt > 0 && wt < best.0 {
            *best = (wt, w);
        }
    };
    for r in generator.rows() {
        consider(r.to_vec(), &mut best);
    }
    let scalars: Vec<Fe> = field.elements().filter(|c| !c.is_zero()).take(64).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..rounds {
        perm.shuffle(&mut rng);
        let red = generator.select_columns(&perm).row_reduced();
        let mut rows: Vec<Vec<Fe>> = Vec::with_capacity(k);
        for row in red.rows() {
            let mut w = vec![Fe::ZERO; n];
            for (i, &c) in row.iter().enumerate() {
                w[perm[i]] = c;
            }
            rows.push(w);
        }
        for i in 0..rows.len() {
            consider(rows[i].clone(), &mut best);
            for j in i + 1..rows.len() {
                for &s in &scalars {
                    let w: Vec<Fe> = rows[i].iter().zip(&rows[j]).map(|(&a, &b)| field.add(a, field.mul(s, b))).collect();
                    consider(w, &mut best);
                }
            }
        }
    }
    best
}

// ---------------------------------------------------------------------------

impl LinearCode {
    pub fn min_distance(&self, opts: &DistanceOptions) -> DistanceReport {
        let n = self.n();
        let k = self.k();
        let q = self.field().order();
        let lower = opts.lower_bound.max(1);
        if k == 0 {
            return DistanceReport {
                method: MethodUsed::Bracket,
                lower: 0,
                upper: 0,
                exact: true,
                work: 0,
                witness: None,
                dependent_columns: None,
            };
        }
        let singleton = n - k + 1;
        let enum_cost = enumeration_cost(q, k);
        let col_cost = column_search_cost(n, singleton);
        let budget = opts.budget as u128;
        let choice = match opts.method {
            Method::Enumerate if enum_cost <= budget => Some(MethodUsed::Enumerate),
            Method::ColumnSearch if col_cost <= budget => Some(MethodUsed::ColumnSearch),
            Method::Auto if enum_cost.min(col_cost) <= budget => Some(if enum_cost <= col_cost {
                MethodUsed::Enumerate
            } else {
                MethodUsed::ColumnSearch
            }),
            _ => None,
        };
        match choice {
            Some(MethodUsed::Enumerate) => {
                let stop = opts.stop_at_lower.then_some(lower);
                let (d, word, work) = enumerate_min(self.generator(), stop);
                DistanceReport {
                    method: MethodUsed::Enumerate,
                    lower: d,
                    upper: d,
                    exact: true,
                    work,
                    witness: Some(word),
                    dependent_columns: None,
                }
            }
            Some(MethodUsed::ColumnSearch) => {
                let parity = self.parity_check();
                let (found, work) = column_search(&parity, n, singleton + 1);
                let (d, cols) = found.expect("some n-k+1 parity-check columns are dependent");
                let word = codeword_on(&parity, &cols, n);
                debug_assert_eq!(weight(&word), d);
                DistanceReport {
                    method: MethodUsed::ColumnSearch,
                    lower: d,
                    upper: d,
                    exact: true,
                    work,
                    witness: Some(word),
                    dependent_columns: Some(cols),
                }
            }
            _ => {
                let (u, word) = low_weight_search(self.generator(), 64);
                let upper = u.min(singleton);
                let lower = lower.min(upper);
                DistanceReport {
                    method: MethodUsed::Bracket,
                    lower,
                    upper,
                    exact: lower == upper,
                    work: 64,
                    witness: (u == upper).then_some(word),
                    dependent_columns: None,
                }
            }
        }
    }
}
