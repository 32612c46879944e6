//! Exhaustive enumeration of Krasner hyperfields of a given order, up to
//! isomorphism.
//!
//! Distributivity forces `x ⊕ y = x · (1 ⊕ x⁻¹y)` for `x != 0`, so a hyperfield
//! is determined by its multiplicative group and the single row
//! `ν(z) = 1 ⊕ z`. The search walks all rows for each abelian group of order
//! `n - 1`, with these prunes applied before full verification:
//!
//! 1. exactly one `z` (the opposite `e` of 1, an element with `e² = 1`) has
//!    `0 ∈ ν(z)`;
//! 2. commutativity `1 ⊕ z = z ⊕ 1` gives `ν(z⁻¹) = z⁻¹ · ν(z)`, so only one
//!    member of each pair `{z, z⁻¹}` is chosen, and self-inverse `z` need
//!    `z · ν(z) = ν(z)`;
//! 3. reversibility restricted to `x = 1`.
//!
//! The outermost choice (opposite of 1, first free row) splits the space into
//! shards which run in parallel; shard results are merged in shard order, so
//! output does not depend on the worker count.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hyperfield::{Hyperfield, HyperfieldCandidate, ONE, ZERO};
use crate::iso::{are_isomorphic, fingerprint, Fingerprint};
use crate::set::ElementSet;

pub const MIN_ENUMERATION_ORDER: usize = 2;
pub const MAX_ENUMERATION_ORDER: usize = 6;
pub const MAX_GROUP_ORDER: usize = 8;

/// Multiplication table of a finite abelian group, identity at index 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    invariants: Vec<usize>,
    table: Vec<u8>,
}

impl GroupTable {
    /// Direct product of cyclic groups `Z/d1 × ... × Z/dr`; element indices
    /// are mixed-radix with the first factor least significant.
    pub fn from_invariants(invariants: &[usize]) -> GroupTable {
        let order: usize = invariants.iter().product();
        let digits = |mut x: usize| -> Vec<usize> {
            invariants
                .iter()
                .map(|&d| {
                    let r = x % d;
                    x /= d;
                    r
                })
                .collect()
        };
        let index = |ds: &[usize]| -> usize {
            ds.iter()
                .zip(invariants)
                .rev()
                .fold(0, |acc, (&c, &d)| acc * d + c)
        };
        let mut table = vec![0u8; order * order];
        for a in 0..order {
            let da = digits(a);
            for b in 0..order {
                let sum: Vec<usize> = da
                    .iter()
                    .zip(digits(b))
                    .zip(invariants)
                    .map(|((x, y), &d)| (x + y) % d)
                    .collect();
                table[a * order + b] = index(&sum) as u8;
            }
        }
        GroupTable {
            order,
            invariants: invariants.to_vec(),
            table,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Invariant factors `d1 | d2 | ... | dr`.
    pub fn invariants(&self) -> &[usize] {
        &self.invariants
    }

    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    /// Hyperfield multiplication on `{0} ∪ G`, with group element `g` at index `g + 1`.
    pub fn hyperfield_mul(&self) -> Vec<u8> {
        let n = self.order + 1;
        let mut mul = vec![0u8; n * n];
        for a in 1..n {
            for b in 1..n {
                mul[a * n + b] = (self.op(a - 1, b - 1) + 1) as u8;
            }
        }
        mul
    }
}

/// Invariant-factor sequences with product `m`, each dividing the next.
fn invariant_factor_lists(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in min.max(2)..=rest {
            if !rest.is_multiple_of(d) || acc.last().is_some_and(|&prev| d % prev != 0) {
                continue;
            }
            // remaining factors must be multiples of d
            let after = rest / d;
            if after != 1 && !after.is_multiple_of(d) {
                continue;
            }
            acc.push(d);
            go(after, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(m, 2, &mut Vec::new(), &mut out);
    // cyclic first
    out.sort_by_key(|l| l.len());
    out
}

/// One table per isomorphism class of abelian groups of order `m`.
pub fn abelian_groups(m: usize) -> Result<Vec<GroupTable>> {
    if !(1..=MAX_GROUP_ORDER).contains(&m) {
        return Err(Error::Capacity(format!(
            "group order {m} outside 1..={MAX_GROUP_ORDER}"
        )));
    }
    Ok(invariant_factor_lists(m)
        .iter()
        .map(|inv| GroupTable::from_invariants(inv))
        .collect())
}

/// The row `ν(z) = 1 ⊕ z`, indexed by carrier element; `ν(0) = {1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OneRowMap(pub Vec<ElementSet>);

impl OneRowMap {
    pub fn row(&self) -> &[ElementSet] {
        &self.0
    }
}

/// Rebuild the full hyperaddition from the one-row map via `x ⊕ y = x · ν(x⁻¹y)`.
pub fn expand_one_row(group: &GroupTable, nu: &OneRowMap) -> Result<HyperfieldCandidate> {
    let n = group.order() + 1;
    let row = nu.row();
    if row.len() != n {
        return Err(Error::Structural(format!(
            "one-row map has {} entries, expected {n}",
            row.len()
        )));
    }
    if row[ZERO] != ElementSet::singleton(ONE) {
        return Err(Error::Structural("ν(0) must be {1}".into()));
    }
    if let Some(z) = row.iter().position(|s| s.is_empty() || s.bound() > n) {
        return Err(Error::Structural(format!(
            "ν({z}) is empty or out of range"
        )));
    }
    let mul = group.hyperfield_mul();
    Ok(expand_unchecked(n, &mul, &inverses(n, &mul), row))
}

fn inverses(n: usize, mul: &[u8]) -> Vec<usize> {
    let mut inv = vec![0; n];
    for a in 1..n {
        inv[a] = (1..n).find(|&b| mul[a * n + b] as usize == ONE).unwrap();
    }
    inv
}

fn expand_unchecked(
    n: usize,
    mul: &[u8],
    inv: &[usize],
    row: &[ElementSet],
) -> HyperfieldCandidate {
    let mut hyperadd = vec![ElementSet::EMPTY; n * n];
    for (y, cell) in hyperadd[..n].iter_mut().enumerate() {
        *cell = ElementSet::singleton(y);
    }
    for x in 1..n {
        for y in 0..n {
            let z = mul[inv[x] * n + y] as usize;
            hyperadd[x * n + y] = row[z].map(|s| mul[x * n + s] as usize);
        }
    }
    HyperfieldCandidate::from_flat(n, hyperadd, mul.to_vec())
        .expect("expansion of a valid row is well-formed")
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    pub count_only: bool,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
    pub progress_interval: Option<Duration>,
    pub budget: Option<Duration>,
}

#[derive(Debug, Clone)]
pub struct SearchSpec {
    pub order: usize,
    pub groups: Vec<GroupTable>,
    pub options: SearchOptions,
}

impl SearchSpec {
    pub fn new(order: usize, options: SearchOptions) -> Result<SearchSpec> {
        if !(MIN_ENUMERATION_ORDER..=MAX_ENUMERATION_ORDER).contains(&order) {
            return Err(Error::Capacity(format!(
                "enumeration order {order} outside {MIN_ENUMERATION_ORDER}..={MAX_ENUMERATION_ORDER}"
            )));
        }
        Ok(SearchSpec {
            order,
            groups: abelian_groups(order - 1)?,
            options,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Enumeration {
    pub order: usize,
    /// One representative per isomorphism class, sorted by fingerprint.
    pub classes: Vec<(Fingerprint, Hyperfield)>,
    /// One-row maps that survived prunes 1-2 and were expanded.
    pub scanned: u64,
    /// Expanded candidates that passed full verification.
    pub survivors: u64,
}

impl Enumeration {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn hyperfields(&self) -> impl Iterator<Item = &Hyperfield> {
        self.classes.iter().map(|(_, h)| h)
    }
}

/// Everything one group contributes to the search.
struct GroupSearch {
    n: usize,
    mul: Vec<u8>,
    inv: Vec<usize>,
    /// Chosen rows: the smaller of each `{z, z⁻¹}` pair.
    reps: Vec<usize>,
}

struct Shard {
    group: usize,
    opposite_of_one: usize,
    first_choice: ElementSet,
}

impl GroupSearch {
    fn new(group: &GroupTable) -> Self {
        let n = group.order() + 1;
        let mul = group.hyperfield_mul();
        let inv = inverses(n, &mul);
        let reps = (1..n).filter(|&z| z <= inv[z]).collect();
        GroupSearch { n, mul, inv, reps }
    }

    fn scale(&self, x: usize, s: ElementSet) -> ElementSet {
        s.map(|t| self.mul[x * self.n + t] as usize)
    }

    /// Candidate values of `ν(z)` for a representative `z`, given `e`.
    fn options(&self, z: usize, e: usize) -> Vec<ElementSet> {
        let full = ElementSet::full(self.n).mask();
        (1..=full)
            .map(ElementSet::from_mask)
            .filter(|s| s.contains(ZERO) == (z == e))
            .filter(|&s| self.inv[z] != z || self.scale(z, s) == s)
            .collect()
    }

    fn involutions(&self) -> Vec<usize> {
        (1..self.n).filter(|&z| self.inv[z] == z).collect()
    }

    fn fill_row(&self, choice: &[ElementSet]) -> Vec<ElementSet> {
        let mut row = vec![ElementSet::EMPTY; self.n];
        row[ZERO] = ElementSet::singleton(ONE);
        for (&z, &s) in self.reps.iter().zip(choice) {
            row[z] = s;
            let zi = self.inv[z];
            row[zi] = self.scale(zi, s);
        }
        row
    }

    /// Reversibility for `x = 1`: `z ∈ 1⊕y ⇒ y ∈ e⊕z and 1 ∈ z⊕y'`.
    fn reversible_at_one(&self, c: &HyperfieldCandidate, e: usize) -> bool {
        let n = self.n;
        (0..n).all(|y| {
            let yo = if y == ZERO {
                ZERO
            } else {
                self.mul[e * n + y] as usize
            };
            c.sum(ONE, y)
                .iter()
                .all(|z| c.sum(e, z).contains(y) && c.sum(z, yo).contains(ONE))
        })
    }
}

#[derive(Default)]
struct ShardResult {
    found: Vec<Hyperfield>,
    scanned: u64,
    survivors: u64,
}

fn run_shard(
    gs: &GroupSearch,
    shard: &Shard,
    scanned: &AtomicU64,
    survivors: &AtomicU64,
    abort: &AtomicBool,
    deadline: Option<Instant>,
) -> ShardResult {
    let e = shard.opposite_of_one;
    let rest: Vec<Vec<ElementSet>> = gs.reps[1..].iter().map(|&z| gs.options(z, e)).collect();
    let mut out = ShardResult::default();
    if rest.iter().any(Vec::is_empty) {
        return out;
    }
    let mut cursor = vec![0usize; rest.len()];
    let mut choice = vec![shard.first_choice];
    choice.extend(rest.iter().map(|o| o[0]));
    let mut local = 0u64;
    loop {
        let row = gs.fill_row(&choice);
        let c = expand_unchecked(gs.n, &gs.mul, &gs.inv, &row);
        out.scanned += 1;
        local += 1;
        if gs.reversible_at_one(&c, e) && c.verify().passed() {
            out.survivors += 1;
            survivors.fetch_add(1, Ordering::Relaxed);
            let h = Hyperfield::certify(c, "enumeration").expect("verified above");
            if !out.found.iter().any(|g| are_isomorphic(g, &h).is_some()) {
                out.found.push(h);
            }
        }
        if local == 256 {
            scanned.fetch_add(local, Ordering::Relaxed);
            local = 0;
            if abort.load(Ordering::Relaxed) || deadline.is_some_and(|d| Instant::now() > d) {
                abort.store(true, Ordering::Relaxed);
                break;
            }
        }
        // odometer, last position fastest
        let mut i = rest.len();
        loop {
            if i == 0 {
                scanned.fetch_add(local, Ordering::Relaxed);
                return out;
            }
            i -= 1;
            cursor[i] += 1;
            if cursor[i] < rest[i].len() {
                choice[i + 1] = rest[i][cursor[i]];
                break;
            }
            cursor[i] = 0;
            choice[i + 1] = rest[i][0];
        }
    }
    scanned.fetch_add(local, Ordering::Relaxed);
    out
}

/// Enumerate all Krasner hyperfields of order `n` up to isomorphism.
pub fn enumerate_hyperfields(n: usize, options: &SearchOptions) -> Result<Enumeration> {
    let spec = SearchSpec::new(n, options.clone())?;
    run_search(&spec)
}

pub fn run_search(spec: &SearchSpec) -> Result<Enumeration> {
    let searches: Vec<GroupSearch> = spec.groups.iter().map(GroupSearch::new).collect();
    let mut shards = Vec::new();
    for (gi, gs) in searches.iter().enumerate() {
        for e in gs.involutions() {
            for first in gs.options(gs.reps[0], e) {
                shards.push(Shard {
                    group: gi,
                    opposite_of_one: e,
                    first_choice: first,
                });
            }
        }
    }

    let scanned = Arc::new(AtomicU64::new(0));
    let survivors = Arc::new(AtomicU64::new(0));
    let abort = Arc::new(AtomicBool::new(false));
    let done = Arc::new(AtomicBool::new(false));
    let started = Instant::now();
    let deadline = spec.options.budget.map(|b| started + b);

    let reporter = spec.options.progress_interval.map(|interval| {
        let (scanned, survivors, done) = (scanned.clone(), survivors.clone(), done.clone());
        let total = shards.len();
        std::thread::spawn(move || {
            let tick = Duration::from_millis(20).min(interval);
            let mut last = Instant::now();
            while !done.load(Ordering::Relaxed) {
                std::thread::sleep(tick);
                if last.elapsed() >= interval {
                    last = Instant::now();
                    eprintln!(
                        "progress: {} candidates scanned, {} survivors ({} shards)",
                        scanned.load(Ordering::Relaxed),
                        survivors.load(Ordering::Relaxed),
                        total
                    );
                }
            }
        })
    });

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.options.jobs)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let results: Vec<ShardResult> = pool.install(|| {
        shards
            .par_iter()
            .map(|s| {
                run_shard(
                    &searches[s.group],
                    s,
                    &scanned,
                    &survivors,
                    &abort,
                    deadline,
                )
            })
            .collect()
    });
    done.store(true, Ordering::Relaxed);
    if let Some(handle) = reporter {
        let _ = handle.join();
    }

    let total_scanned: u64 = results.iter().map(|r| r.scanned).sum();
    let total_survivors: u64 = results.iter().map(|r| r.survivors).sum();
    if abort.load(Ordering::Relaxed) {
        return Err(Error::Budget {
            scanned: total_scanned,
            survivors: total_survivors,
        });
    }

    let mut buckets: BTreeMap<Fingerprint, Vec<Hyperfield>> = BTreeMap::new();
    for h in results.into_iter().flat_map(|r| r.found) {
        let bucket = buckets.entry(fingerprint(&h)).or_default();
        if !bucket.iter().any(|g| are_isomorphic(g, &h).is_some()) {
            bucket.push(h);
        }
    }
    let classes = buckets
        .into_iter()
        .flat_map(|(fp, hs)| hs.into_iter().map(move |h| (fp.clone(), h)))
        .collect();
    Ok(Enumeration {
        order: spec.order,
        classes,
        scanned: total_scanned,
        survivors: total_survivors,
    })
}
