//! Backtracking search for integer matrices `P` with `Pᵗ A P = G`.
//!
//! Columns of `P` are chosen one at a time from the vectors of the right norm.
//! After each choice every pending column's candidate list is cut down to the
//! vectors with the required inner product against the new column, so dead
//! branches are detected as soon as any list runs empty. Candidate vectors
//! for definite forms come from an exact Fincke–Pohst enumeration, which makes
//! the search complete; indefinite forms only get a bounded box.

use std::collections::HashMap;
use std::rc::Rc;
use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::manifold::QuasitoricSum;
use crate::quadform::{congruence, IntForm, IntMatrix};

/// A matrix `P` known to satisfy `Pᵗ A P = k B` for the stored manifolds.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Certificate {
    matrix: IntMatrix,
    domain: QuasitoricSum,
    target: QuasitoricSum,
    degree: i64,
}

impl Certificate {
    /// Checks the congruence and refuses matrices that do not satisfy it.
    pub fn new(matrix: IntMatrix, domain: QuasitoricSum, target: QuasitoricSum, degree: i64) -> Result<Self> {
        if verify_certificate(&matrix, &domain, &target, degree)? {
            Ok(Certificate { matrix, domain, target, degree })
        } else {
            Err(Error::InvalidCertificate {
                domain: domain.to_string(),
                target: target.to_string(),
                degree,
            })
        }
    }

    pub fn zero(domain: QuasitoricSum, target: QuasitoricSum) -> Self {
        Certificate { matrix: IntMatrix::zeros(domain.rank(), target.rank()), domain, target, degree: 0 }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn domain(&self) -> QuasitoricSum {
        self.domain
    }

    pub fn target(&self) -> QuasitoricSum {
        self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// `self: M → N` followed by `next: N → Q`; degrees multiply.
    pub fn compose(&self, next: &Certificate) -> Result<Certificate> {
        if self.target != next.domain {
            return Err(Error::Dimension(format!(
                "cannot compose a map into {} with a map out of {}",
                self.target, next.domain
            )));
        }
        let degree = self
            .degree
            .checked_mul(next.degree)
            .ok_or_else(|| Error::Invalid("degree overflow".into()))?;
        Certificate::new(self.matrix.mul(&next.matrix)?, self.domain, next.target, degree)
    }
}

/// `Pᵗ A P == k B` for the intersection forms of `m` and `n`.
pub fn verify_certificate(p: &IntMatrix, m: &QuasitoricSum, n: &QuasitoricSum, k: i64) -> Result<bool> {
    if p.rows() != m.rank() || p.cols() != n.rank() {
        return Err(Error::Dimension(format!(
            "certificate for {m} -> {n} must be {}x{}, got {}x{}",
            m.rank(),
            n.rank(),
            p.rows(),
            p.cols()
        )));
    }
    let lhs = congruence(p, &m.intersection_matrix())?;
    Ok(lhs == n.intersection_matrix().scale(&BigInt::from(k)))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SearchOutcome {
    Found(Certificate),
    /// Proven impossible, with the reason.
    NoneExists(String),
    /// Nothing found, but the search could not rule a certificate out.
    Unknown(String),
}

impl SearchOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            SearchOutcome::Found(_) => "found",
            SearchOutcome::NoneExists(_) => "none",
            SearchOutcome::Unknown(_) => "unknown",
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, SearchOutcome::Found(_))
    }

    pub fn is_none(&self) -> bool {
        matches!(self, SearchOutcome::NoneExists(_))
    }

    pub fn report(&self, domain: &QuasitoricSum, target: &QuasitoricSum, degree: i64) -> CertificateReport {
        CertificateReport {
            domain: domain.to_string(),
            target: target.to_string(),
            degree,
            matrix: self.certificate().map(|c| c.matrix.clone()),
            status: self.status(),
            complete: !matches!(self, SearchOutcome::Unknown(_)),
        }
    }
}

/// The JSON shape of a decision; `complete` is false only for unknown outcomes.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateReport {
    pub domain: String,
    pub target: String,
    pub degree: i64,
    pub matrix: Option<IntMatrix>,
    pub status: &'static str,
    pub complete: bool,
}

/// Limits for a search. Node counting is deterministic; the wall-clock limit is not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub time_limit: Option<Duration>,
    pub threads: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: Some(2_000_000_000), time_limit: None, threads: 1 }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), ..Budget::default() }
    }

    pub fn with_threads(mut self, threads: usize) -> Self {
        self.threads = threads;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.threads == 0 {
            return Err(Error::InvalidBudget("threads must be at least 1".into()));
        }
        if self.max_nodes == Some(0) {
            return Err(Error::InvalidBudget("node limit must be positive".into()));
        }
        if self.time_limit == Some(Duration::ZERO) {
            return Err(Error::InvalidBudget("time limit must be positive".into()));
        }
        Ok(())
    }
}

/// Searches for a degree-`k` certificate from `m` to `n`.
///
/// Exhausting a definite domain proves that none exists; exhausting the box
/// of an indefinite domain proves nothing and yields `Unknown`.
pub fn find_certificate(
    m: &QuasitoricSum,
    n: &QuasitoricSum,
    k: i64,
    box_bound: u64,
    budget: &Budget,
) -> Result<SearchOutcome> {
    if box_bound == 0 {
        return Err(Error::InvalidBudget("box bound must be at least 1".into()));
    }
    budget.validate()?;
    let a = m.intersection_matrix();
    let gram = n.intersection_matrix().scale(&BigInt::from(k));
    Ok(match search_gram(&a, &gram, Some(box_bound), budget)? {
        GramOutcome::Found(p) => SearchOutcome::Found(Certificate::new(p, *m, *n, k)?),
        GramOutcome::Exhausted { complete: true } => SearchOutcome::NoneExists(format!(
            "exhaustive search over the definite form of {m} found no degree {k} certificate"
        )),
        GramOutcome::Exhausted { complete: false } => SearchOutcome::Unknown(format!(
            "no certificate with entries bounded by {box_bound}; the domain form is indefinite"
        )),
        GramOutcome::OutOfBudget(why) => SearchOutcome::Unknown(why),
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GramOutcome {
    Found(IntMatrix),
    /// The search space was exhausted; `complete` when that space was all of `Zⁿ`.
    Exhausted { complete: bool },
    OutOfBudget(String),
}

/// Finds `P` (order(a) × order(gram)) with `Pᵗ a P = gram`.
pub fn search_gram(a: &IntForm, gram: &IntForm, box_bound: Option<u64>, budget: &Budget) -> Result<GramOutcome> {
    budget.validate()?;
    let n = a.order();
    let l = gram.order();
    let a64 = to_i64(a)?;
    let g64 = to_i64(gram)?;
    let inertia = a.inertia();
    let definite = inertia.zero == 0 && (inertia.positive == n || inertia.negative == n);
    if !definite && box_bound.is_none() {
        return Err(Error::MissingBoxBound);
    }

    // column order: descending |g_jj|, ties by index
    let mut order: Vec<usize> = (0..l).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(g64[j][j].unsigned_abs()), j));

    // one candidate pool, shared by all columns of equal norm
    let mut vectors: Vec<Vec<i64>> = Vec::new();
    let mut by_norm: HashMap<i64, Vec<u32>> = HashMap::new();
    for &j in &order {
        let t = g64[j][j];
        if by_norm.contains_key(&t) {
            continue;
        }
        let vs = norm_vectors_i64(&a64, definite, t, box_bound)?;
        let ids: Vec<u32> = (vectors.len()..vectors.len() + vs.len()).map(|i| i as u32).collect();
        vectors.extend(vs);
        by_norm.insert(t, ids);
    }
    let initial: Vec<Vec<u32>> = order.iter().map(|&j| by_norm[&g64[j][j]].clone()).collect();
    if initial.iter().any(Vec::is_empty) {
        return Ok(GramOutcome::Exhausted { complete: definite });
    }

    let problem = Problem { n, a: &a64, gram: &g64, order: &order, vectors: &vectors, initial: &initial, budget };
    let found = match n {
        0..=4 => problem.run::<4>(),
        5..=8 => problem.run::<8>(),
        9..=16 => problem.run::<16>(),
        17..=32 => problem.run::<32>(),
        33..=64 => problem.run::<64>(),
        _ => return Err(Error::Dimension(format!("search supports forms of order at most 64, got {n}"))),
    };
    match found {
        Run::Found(cols) => {
            let mut p = IntMatrix::zeros(n, l);
            for (d, &j) in order.iter().enumerate() {
                let v = &vectors[cols[d] as usize];
                for i in 0..n {
                    p.set(i, j, BigInt::from(v[i]));
                }
            }
            Ok(GramOutcome::Found(p))
        }
        Run::OutOfBudget(nodes) => {
            Ok(GramOutcome::OutOfBudget(format!("search budget exhausted after {nodes} nodes")))
        }
        Run::Exhausted => Ok(GramOutcome::Exhausted { complete: definite }),
    }
}

struct Problem<'a> {
    n: usize,
    a: &'a [Vec<i64>],
    gram: &'a [Vec<i64>],
    order: &'a [usize],
    vectors: &'a [Vec<i64>],
    initial: &'a [Vec<u32>],
    budget: &'a Budget,
}

enum Run {
    Found(Vec<u32>),
    Exhausted,
    OutOfBudget(u64),
}

impl Problem<'_> {
    /// Runs the search with vectors padded to `W` entries.
    fn run<const W: usize>(&self) -> Run {
        let n = self.n;
        let pad = |v: &[i64]| {
            let mut out = [0i64; W];
            out[..n].copy_from_slice(v);
            out
        };
        let pool: Vec<[i64; W]> = self.vectors.iter().map(|v| pad(v)).collect();
        let apool: Vec<[i64; W]> = self
            .vectors
            .iter()
            .map(|v| {
                let av: Vec<i64> = (0..n).map(|i| (0..n).map(|j| self.a[i][j] * v[j]).sum()).collect();
                pad(&av)
            })
            .collect();
        // P and −P certify the same Gram matrix, so the first column may be taken
        // with its first nonzero entry positive.
        let first: Vec<u32> = self.initial[0]
            .iter()
            .copied()
            .filter(|&id| self.vectors[id as usize].iter().find(|&&x| x != 0).is_none_or(|&x| x > 0))
            .collect();

        let mut needs: Vec<i64> = Vec::new();
        if pool.len() <= ADJACENCY_LIMIT {
            for (x, &i) in self.order.iter().enumerate() {
                for &j in &self.order[x + 1..] {
                    if !needs.contains(&self.gram[i][j]) {
                        needs.push(self.gram[i][j]);
                    }
                }
            }
        }
        let adjacency = needs.into_iter().map(|v| (v, (0..pool.len()).map(|_| OnceLock::new()).collect())).collect();
        let shared = Shared {
            adjacency,
            order: self.order,
            gram: self.gram,
            pool: &pool,
            apool: &apool,
            rest: &self.initial[1..],
            nodes: AtomicU64::new(0),
            max_nodes: self.budget.max_nodes,
            deadline: self.budget.time_limit.map(|d| Instant::now() + d),
            out_of_budget: AtomicBool::new(false),
            best_branch: AtomicUsize::new(usize::MAX),
            best: Mutex::new(None),
        };
        let threads = self.budget.threads.min(first.len()).max(1);
        if threads == 1 {
            shared.worker(&first, 0, 1);
        } else {
            std::thread::scope(|s| {
                for w in 0..threads {
                    let shared = &shared;
                    let first = &first;
                    s.spawn(move || shared.worker(first, w, threads));
                }
            });
        }
        let nodes = shared.nodes.load(Ordering::Relaxed);
        match shared.best.into_inner().expect("no worker panicked") {
            Some((_, cols)) => Run::Found(cols),
            None if shared.out_of_budget.load(Ordering::Relaxed) => Run::OutOfBudget(nodes),
            None => Run::Exhausted,
        }
    }
}

/// Pools up to this size get cached adjacency bitsets (at most 32 MiB per value).
const ADJACENCY_LIMIT: usize = 16384;

struct Shared<'a, const W: usize> {
    /// Per required inner product: lazily built rows, bit `w` of row `v` set
    /// when `wᵗ A v` equals that value.
    adjacency: Vec<(i64, Vec<OnceLock<Box<[u64]>>>)>,
    order: &'a [usize],
    gram: &'a [Vec<i64>],
    pool: &'a [[i64; W]],
    apool: &'a [[i64; W]],
    rest: &'a [Vec<u32>],
    nodes: AtomicU64,
    max_nodes: Option<u64>,
    deadline: Option<Instant>,
    out_of_budget: AtomicBool,
    best_branch: AtomicUsize,
    best: Mutex<Option<(usize, Vec<u32>)>>,
}

type List = Rc<Vec<u32>>;

#[inline(always)]
fn dot<const W: usize>(x: &[i64; W], y: &[i64; W]) -> i64 {
    let mut s = 0;
    for i in 0..W {
        s += x[i] * y[i];
    }
    s
}

impl<const W: usize> Shared<'_, W> {
    /// Takes first-column branches `w, w + stride, ...`. The answer kept is the
    /// one from the lowest branch index, which is what a single thread returns.
    fn worker(&self, first: &[u32], w: usize, stride: usize) {
        let rest: Vec<List> = self.rest.iter().map(|v| Rc::new(v.clone())).collect();
        let mut chosen = Vec::with_capacity(self.order.len());
        let mut b = w;
        while b < first.len() {
            if b > self.best_branch.load(Ordering::Relaxed) || self.out_of_budget.load(Ordering::Relaxed) {
                return;
            }
            chosen.clear();
            if self.descend(first[b], 0, &rest, &mut chosen) {
                self.best_branch.fetch_min(b, Ordering::Relaxed);
                let mut best = self.best.lock().expect("lock");
                if best.as_ref().is_none_or(|(bb, _)| b < *bb) {
                    *best = Some((b, chosen.clone()));
                }
                return;
            }
            b += stride;
        }
    }

    fn row(&self, need: i64, id: u32) -> Option<&[u64]> {
        let (_, rows) = self.adjacency.iter().find(|(v, _)| *v == need)?;
        let row = rows[id as usize].get_or_init(|| {
            let av = &self.apool[id as usize];
            let mut bits = vec![0u64; self.pool.len().div_ceil(64)];
            for (w, v) in self.pool.iter().enumerate() {
                if dot(v, av) == need {
                    bits[w / 64] |= 1 << (w % 64);
                }
            }
            bits.into_boxed_slice()
        });
        Some(row)
    }

    /// Members `w` of `list` with `wᵗ A v = need`, where `v` is pool entry `id`.
    fn compatible<'s>(&'s self, list: &'s [u32], id: u32, need: i64) -> Box<dyn Iterator<Item = u32> + 's> {
        match self.row(need, id) {
            Some(row) => Box::new(list.iter().copied().filter(move |&w| row[w as usize / 64] >> (w % 64) & 1 == 1)),
            None => {
                let av = &self.apool[id as usize];
                Box::new(list.iter().copied().filter(move |&w| dot(&self.pool[w as usize], av) == need))
            }
        }
    }

    fn tick(&self) -> bool {
        let count = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.max_nodes.is_some_and(|m| count > m) {
            self.out_of_budget.store(true, Ordering::Relaxed);
        }
        if count.is_multiple_of(4096) && self.deadline.is_some_and(|d| Instant::now() > d) {
            self.out_of_budget.store(true, Ordering::Relaxed);
        }
        !self.out_of_budget.load(Ordering::Relaxed)
    }

    /// Places `id` at depth `d` and tries to complete the remaining columns,
    /// whose current candidate lists are `pending`.
    fn descend(&self, id: u32, d: usize, pending: &[List], chosen: &mut Vec<u32>) -> bool {
        if !self.tick() {
            return false;
        }
        chosen.push(id);
        if pending.is_empty() {
            return true;
        }
        let col = self.order[d];
        if pending.len() == 1 {
            // last column: any compatible vector completes the matrix
            let need = self.gram[col][self.order[d + 1]];
            if let Some(w) = self.compatible(&pending[0], id, need).next() {
                if self.tick() {
                    chosen.push(w);
                    return true;
                }
            }
            chosen.pop();
            return false;
        }
        let mut next: Vec<List> = Vec::with_capacity(pending.len());
        let mut cache: Vec<(*const Vec<u32>, i64, List)> = Vec::new();
        for (p, list) in pending.iter().enumerate() {
            let need = self.gram[col][self.order[d + 1 + p]];
            let key = Rc::as_ptr(list);
            if let Some((_, _, hit)) = cache.iter().find(|(k, v, _)| *k == key && *v == need) {
                next.push(hit.clone());
                continue;
            }
            let filtered: Vec<u32> = self.compatible(list, id, need).collect();
            if filtered.is_empty() {
                chosen.pop();
                return false;
            }
            let filtered = Rc::new(filtered);
            cache.push((key, need, filtered.clone()));
            next.push(filtered);
        }
        let (head, tail) = next.split_first().expect("pending is nonempty");
        for &cand in head.iter() {
            if self.descend(cand, d + 1, tail, chosen) {
                return true;
            }
            if self.out_of_budget.load(Ordering::Relaxed) {
                break;
            }
        }
        chosen.pop();
        false
    }
}

fn to_i64(a: &IntForm) -> Result<Vec<Vec<i64>>> {
    a.matrix()
        .to_i64_rows()
        .ok_or_else(|| Error::Invalid("form entries exceed the machine integer range".into()))
}

/// All `v` with `vᵗ A v = t`, sorted lexicographically.
///
/// Definite forms give the complete (finite) solution set. Indefinite forms
/// need `box_bound` and give the solutions with every `|v_i| ≤ box_bound`.
pub fn enumerate_norm_vectors(a: &IntForm, t: i64, box_bound: Option<u64>) -> Result<Vec<Vec<i64>>> {
    let inertia = a.inertia();
    let n = a.order();
    let definite = inertia.zero == 0 && (inertia.positive == n || inertia.negative == n);
    if !definite && box_bound.is_none() {
        return Err(Error::MissingBoxBound);
    }
    norm_vectors_i64(&to_i64(a)?, definite, t, box_bound)
}

fn norm_vectors_i64(a: &[Vec<i64>], definite: bool, t: i64, box_bound: Option<u64>) -> Result<Vec<Vec<i64>>> {
    let mut out = if definite {
        let negative = a[0][0] < 0;
        if negative {
            let neg: Vec<Vec<i64>> = a.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
            fincke_pohst(&neg, -t)
        } else {
            fincke_pohst(a, t)
        }
    } else {
        let bound = box_bound.ok_or(Error::MissingBoxBound)?;
        let bound = i64::try_from(bound).map_err(|_| Error::InvalidBudget("box bound too large".into()))?;
        box_vectors(a, t, bound)
    };
    out.sort();
    out.dedup();
    Ok(out)
}

/// Positive definite `a`: every integer `v` with `vᵗ a v = t`.
///
/// Writes `q(x) = Σ d_i (x_i + Σ_{j>i} μ_ij x_j)²` over the rationals and walks
/// the coordinates from last to first, keeping only values that fit in the
/// remaining budget. All bounds are exact.
fn fincke_pohst(a: &[Vec<i64>], t: i64) -> Vec<Vec<i64>> {
    if t < 0 {
        return Vec::new();
    }
    let n = a.len();
    let mut s: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut d = Vec::with_capacity(n);
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        let di = s[i][i].clone();
        for j in i + 1..n {
            mu[i][j] = &s[i][j] / &di;
        }
        for j in i + 1..n {
            for k in i + 1..n {
                let delta = &s[j][i] * &mu[i][k];
                s[j][k] -= delta;
            }
        }
        d.push(di);
    }
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    let r = BigRational::from_integer(BigInt::from(t));
    fp_level(n - 1, &d, &mu, r, &mut x, &mut out);
    out
}

fn fp_level(
    i: usize,
    d: &[BigRational],
    mu: &[Vec<BigRational>],
    r: BigRational,
    x: &mut [i64],
    out: &mut Vec<Vec<i64>>,
) {
    let n = x.len();
    let mut c = BigRational::zero();
    for j in i + 1..n {
        if x[j] != 0 && !mu[i][j].is_zero() {
            c += &mu[i][j] * BigInt::from(x[j]);
        }
    }
    // (x_i + c)² ≤ r / d_i
    let room = &r / &d[i];
    let s = room.floor().to_integer().sqrt().to_i64().expect("bounded");
    let lo = (-&c).floor().to_integer().to_i64().expect("bounded") - s - 1;
    let hi = (-&c).ceil().to_integer().to_i64().expect("bounded") + s + 1;
    for xi in lo..=hi {
        let y = &c + BigInt::from(xi);
        let sq = &y * &y;
        if sq > room {
            continue;
        }
        let rest = &r - &d[i] * sq;
        x[i] = xi;
        if i == 0 {
            if rest.is_zero() {
                out.push(x.to_vec());
            }
        } else {
            fp_level(i - 1, d, mu, rest, x, out);
        }
    }
    x[i] = 0;
}

/// Indefinite forms: all box vectors of norm `t`, solving for the last coordinate.
fn box_vectors(a: &[Vec<i64>], t: i64, bound: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let last = n - 1;
    let mut out = Vec::new();
    let mut x = vec![-bound; last];
    let all = last == 0;
    loop {
        let mut q: i128 = 0;
        let mut lin: i128 = 0;
        for i in 0..last {
            lin += a[last][i] as i128 * x[i] as i128;
            for j in 0..last {
                q += x[i] as i128 * a[i][j] as i128 * x[j] as i128;
            }
        }
        // a_ll y² + 2 lin y + (q − t) = 0
        let all_ = a[last][last] as i128;
        let c0 = q - t as i128;
        let mut push = |y: i128| {
            if y.abs() <= bound as i128 {
                let mut v = x.clone();
                v.push(y as i64);
                out.push(v);
            }
        };
        if all_ == 0 {
            if lin == 0 {
                if c0 == 0 {
                    for y in -bound..=bound {
                        push(y as i128);
                    }
                }
            } else if c0 % (2 * lin) == 0 {
                push(-c0 / (2 * lin));
            }
        } else {
            let disc = lin * lin - all_ * c0;
            if disc >= 0 {
                let s = disc.sqrt();
                if s * s == disc {
                    for num in [-lin + s, -lin - s] {
                        if num % all_ == 0 {
                            push(num / all_);
                        }
                    }
                }
            }
        }
        if all {
            break;
        }
        // odometer over the first n − 1 coordinates
        let mut i = 0;
        loop {
            if i == last {
                return out;
            }
            if x[i] < bound {
                x[i] += 1;
                break;
            }
            x[i] = -bound;
            i += 1;
        }
    }
    out
}

/// Default box for indefinite searches: `max(8, ⌈√|k|⌉ + 4)`.
pub fn default_box_bound(k: i64) -> u64 {
    let r = k.unsigned_abs().sqrt();
    let ceil = if r * r == k.unsigned_abs() { r } else { r + 1 };
    (ceil + 4).max(8)
}

/// Convenience for tests and callers holding plain rows.
pub fn matrix_from_columns(cols: &[Vec<i64>]) -> IntMatrix {
    let rows = cols[0].len();
    let mut m = IntMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m.set(i, j, BigInt::from(x));
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadform::IntMatrix;
    use proptest::prelude::*;

    fn t(a: u32, b: u32, c: u32) -> QuasitoricSum {
        QuasitoricSum::new(a, b, c).unwrap()
    }

    fn find(m: QuasitoricSum, n: QuasitoricSum, k: i64) -> SearchOutcome {
        find_certificate(&m, &n, k, default_box_bound(k), &Budget::default()).unwrap()
    }

    /// All box vectors of the given norm by plain scanning.
    fn naive_vectors(a: &[Vec<i64>], t: i64, bound: i64) -> Vec<Vec<i64>> {
        let n = a.len();
        let mut out = Vec::new();
        let mut x = vec![-bound; n];
        loop {
            let q: i64 = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| x[i] * a[i][j] * x[j]).sum();
            if q == t {
                out.push(x.clone());
            }
            let mut i = 0;
            loop {
                if i == n {
                    out.sort();
                    return out;
                }
                if x[i] < bound {
                    x[i] += 1;
                    break;
                }
                x[i] = -bound;
                i += 1;
            }
        }
    }

    #[test]
    fn norm_vector_examples() {
        let i2 = IntForm::diagonal(&[1, 1]);
        let v = enumerate_norm_vectors(&i2, 5, None).unwrap();
        assert_eq!(
            v,
            vec![
                vec![-2, -1],
                vec![-2, 1],
                vec![-1, -2],
                vec![-1, 2],
                vec![1, -2],
                vec![1, 2],
                vec![2, -1],
                vec![2, 1]
            ]
        );
        assert!(enumerate_norm_vectors(&i2, 3, None).unwrap().is_empty());
        assert_eq!(enumerate_norm_vectors(&IntForm::diagonal(&[1, 1, 1]), 0, None).unwrap(), vec![vec![0, 0, 0]]);
        assert!(enumerate_norm_vectors(&i2, -1, None).unwrap().is_empty());
        assert_eq!(enumerate_norm_vectors(&IntForm::diagonal(&[-1, -1]), -1, None).unwrap().len(), 4);
        assert_eq!(
            enumerate_norm_vectors(&IntForm::hyperbolic(), 1, None),
            Err(Error::MissingBoxBound)
        );
    }

    #[test]
    fn definite_enumeration_matches_naive_scan() {
        let forms: Vec<Vec<Vec<i64>>> = vec![
            vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]],
            vec![vec![2, -1], vec![-1, 3]],
            vec![vec![5, 2, 1, 0], vec![2, 3, 0, 1], vec![1, 0, 2, 0], vec![0, 1, 0, 1]],
        ];
        for a in forms {
            let form = IntForm::from_i64(&a).unwrap();
            for target in 0..=20 {
                let fast = enumerate_norm_vectors(&form, target, None).unwrap();
                // every form above has minimum eigenvalue > 1/5, so |x_i| ≤ √(5·20) = 10
                let slow = naive_vectors(&a, target, 10);
                assert_eq!(fast, slow, "form {a:?} norm {target}");
            }
        }
    }

    #[test]
    fn indefinite_enumeration_matches_naive_scan() {
        let forms = [t(1, 1, 0), t(0, 0, 1), t(1, 0, 1), t(1, 1, 1), t(2, 1, 0)];
        for m in forms {
            let a = m.intersection_matrix().matrix().to_i64_rows().unwrap();
            for target in -6..=6 {
                let fast = enumerate_norm_vectors(&m.intersection_matrix(), target, Some(4)).unwrap();
                assert_eq!(fast, naive_vectors(&a, target, 4), "{m} norm {target}");
            }
        }
    }

    #[test]
    fn find_examples() {
        let out = find(t(1, 0, 0), t(1, 0, 0), 4);
        assert_eq!(out.certificate().unwrap().matrix(), &IntMatrix::from_i64(&[[2]]).unwrap());
        assert!(find(t(2, 0, 0), t(2, 0, 0), 3).is_none());
        let out = find(t(1, 0, 1), t(1, 1, 0), 2);
        assert!(out.is_found());
        let golden = IntMatrix::from_i64(&[[0, 0], [1, 1], [1, -1]]).unwrap();
        assert!(verify_certificate(&golden, &t(1, 0, 1), &t(1, 1, 0), 2).unwrap());
        assert!(matches!(find(t(1, 1, 0), t(1, 1, 0), 6), SearchOutcome::Unknown(_)));
        assert_eq!(
            find_certificate(&t(1, 0, 0), &t(1, 0, 0), 1, 0, &Budget::default()),
            Err(Error::InvalidBudget("box bound must be at least 1".into()))
        );
    }

    #[test]
    fn verify_examples() {
        assert!(verify_certificate(&IntMatrix::identity(2), &t(1, 1, 0), &t(1, 1, 0), 1).unwrap());
        assert!(verify_certificate(&IntMatrix::zeros(3, 2), &t(1, 0, 1), &t(2, 0, 0), 0).unwrap());
        let p = IntMatrix::from_i64(&[[1, 2], [2, -1]]).unwrap();
        assert!(verify_certificate(&p, &t(2, 0, 0), &t(2, 0, 0), 5).unwrap());
        assert!(!verify_certificate(&p, &t(2, 0, 0), &t(2, 0, 0), 4).unwrap());
        assert!(verify_certificate(&p, &t(3, 0, 0), &t(2, 0, 0), 5).is_err());
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let out = find_certificate(&t(6, 0, 0), &t(6, 0, 0), 3, 8, &Budget::nodes(10)).unwrap();
        assert!(matches!(out, SearchOutcome::Unknown(_)));
        assert!(Budget { threads: 0, ..Budget::default() }.validate().is_err());
    }

    #[test]
    fn threaded_search_matches_sequential() {
        for k in [0, 1, 2, 3, 5, 7, 9, 10] {
            let one = find_certificate(&t(4, 0, 0), &t(3, 0, 0), k, 8, &Budget::default()).unwrap();
            let many = find_certificate(&t(4, 0, 0), &t(3, 0, 0), k, 8, &Budget::default().with_threads(3)).unwrap();
            assert_eq!(one, many, "k = {k}");
        }
    }

    /// Definite oracle: norm vectors by box scan, then a plain column-by-column check.
    fn naive_exists(a: &[Vec<i64>], g: &[Vec<i64>], bound: i64) -> bool {
        let l = g.len();
        let lists: Vec<Vec<Vec<i64>>> = (0..l).map(|j| naive_vectors(a, g[j][j], bound)).collect();
        fn rec(a: &[Vec<i64>], g: &[Vec<i64>], lists: &[Vec<Vec<i64>>], chosen: &mut Vec<Vec<i64>>) -> bool {
            let j = chosen.len();
            if j == lists.len() {
                return true;
            }
            for v in &lists[j] {
                let ok = chosen.iter().enumerate().all(|(i, w)| {
                    let dot: i64 = (0..a.len())
                        .flat_map(|x| (0..a.len()).map(move |y| (x, y)))
                        .map(|(x, y)| w[x] * a[x][y] * v[y])
                        .sum();
                    dot == g[i][j]
                });
                if ok {
                    chosen.push(v.clone());
                    if rec(a, g, lists, chosen) {
                        return true;
                    }
                    chosen.pop();
                }
            }
            false
        }
        rec(a, g, &lists, &mut Vec::new())
    }

    #[test]
    fn definite_search_agrees_with_box_oracle() {
        let domains: Vec<QuasitoricSum> = (1..=4).flat_map(|r| [t(r, 0, 0), t(0, r, 0)]).collect();
        let targets = [t(1, 0, 0), t(0, 1, 0), t(2, 0, 0), t(1, 1, 0), t(0, 0, 1), t(0, 2, 0)];
        for m in &domains {
            let a = m.intersection_matrix().matrix().to_i64_rows().unwrap();
            for n in &targets {
                for k in -12i64..=12 {
                    let g = n.intersection_matrix().scale(&BigInt::from(k)).matrix().to_i64_rows().unwrap();
                    let bound = (k.unsigned_abs() as f64).sqrt().ceil() as i64;
                    let expected = naive_exists(&a, &g, bound);
                    let got = find(*m, *n, k);
                    assert!(!matches!(got, SearchOutcome::Unknown(_)));
                    assert_eq!(got.is_found(), expected, "{m} -> {n} degree {k}");
                }
            }
        }
    }

    #[test]
    fn square_certificates_satisfy_determinant_identity() {
        for (m, n) in [(t(2, 0, 0), t(2, 0, 0)), (t(3, 0, 0), t(3, 0, 0)), (t(1, 1, 0), t(1, 1, 0))] {
            for k in -10i64..=10 {
                if let SearchOutcome::Found(c) = find(m, n, k) {
                    let d = c.matrix().determinant().unwrap();
                    let l = m.rank() as u32;
                    let lhs = &d * &d * m.intersection_matrix().determinant();
                    let rhs = BigInt::from(k).pow(l) * n.intersection_matrix().determinant();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn report_json() {
        let out = find(t(1, 0, 0), t(1, 0, 0), 4);
        let json = serde_json::to_string(&out.report(&t(1, 0, 0), &t(1, 0, 0), 4)).unwrap();
        assert_eq!(
            json,
            r#"{"domain":"CP2","target":"CP2","degree":4,"matrix":[[2]],"status":"found","complete":true}"#
        );
    }

    #[test]
    fn default_box() {
        assert_eq!(default_box_bound(0), 8);
        assert_eq!(default_box_bound(100), 14);
        assert_eq!(default_box_bound(-101), 15);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn composition_of_found_certificates(k in -6i64..=6, l in -6i64..=6) {
            let (m, n, q) = (t(3, 0, 0), t(2, 0, 0), t(1, 0, 0));
            if let (SearchOutcome::Found(c1), SearchOutcome::Found(c2)) = (find(m, n, k), find(n, q, l)) {
                let c = c1.compose(&c2).unwrap();
                prop_assert_eq!(c.degree(), k * l);
                prop_assert!(verify_certificate(c.matrix(), &m, &q, k * l).unwrap());
            }
        }
    }
}
