//! Isomorphism of hyperfields and relabeling-invariant fingerprints.
//!
//! An isomorphism fixes 0 and 1 and restricts to a group isomorphism of the
//! nonzero parts, so the search assigns images in index order and closes each
//! partial assignment under multiplication. Images forced by products are
//! never branched on, which leaves only generator images as real choices.

use std::fmt;

use sha2::{Digest, Sha256};

use crate::hyperfield::{Hyperfield, HyperfieldCandidate, ONE, ZERO};
use crate::set::ElementSet;

/// Invariants that any isomorphism preserves.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Fingerprint {
    pub order: usize,
    /// Sorted `|a ⊕ b|` over all ordered pairs.
    pub sum_sizes: Vec<u8>,
    /// Sorted multiplicative orders of the nonzero elements.
    pub element_orders: Vec<u8>,
    /// Sorted `|1 ⊕ z|` over the carrier.
    pub one_row: Vec<u8>,
    /// Sorted `(a ∈ a⊕a, 0 ∈ a⊕a)` per element.
    pub doubling: Vec<(bool, bool)>,
}

impl Fingerprint {
    /// Stable hex digest, used for file names.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(self.to_string().as_bytes());
        hasher
            .finalize()
            .iter()
            .take(8)
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u8]| v.iter().map(u8::to_string).collect::<Vec<_>>().join(",");
        let flags: Vec<String> = self
            .doubling
            .iter()
            .map(|&(a, z)| format!("{}{}", u8::from(a), u8::from(z)))
            .collect();
        write!(
            f,
            "n={};sizes={};orders={};one={};dbl={}",
            self.order,
            join(&self.sum_sizes),
            join(&self.element_orders),
            join(&self.one_row),
            flags.join(",")
        )
    }
}

pub fn fingerprint(h: &Hyperfield) -> Fingerprint {
    let n = h.order();
    let mut sum_sizes: Vec<u8> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .map(|(a, b)| h.sum(a, b).len() as u8)
        .collect();
    sum_sizes.sort_unstable();
    let mut element_orders: Vec<u8> = (1..n).map(|a| h.element_order(a).unwrap() as u8).collect();
    element_orders.sort_unstable();
    let mut one_row: Vec<u8> = (0..n).map(|z| h.sum(ONE, z).len() as u8).collect();
    one_row.sort_unstable();
    let mut doubling: Vec<(bool, bool)> = (0..n)
        .map(|a| (h.sum(a, a).contains(a), h.sum(a, a).contains(ZERO)))
        .collect();
    doubling.sort_unstable();
    Fingerprint {
        order: n,
        sum_sizes,
        element_orders,
        one_row,
        doubling,
    }
}

/// A bijection of carrier indices carrying one hyperfield onto another.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IsoWitness(pub Vec<usize>);

impl IsoWitness {
    pub fn map(&self) -> &[usize] {
        &self.0
    }

    /// Exhaustively re-check that the bijection preserves both tables.
    pub fn preserves(&self, from: &HyperfieldCandidate, to: &HyperfieldCandidate) -> bool {
        let f = &self.0;
        let n = from.order();
        n == to.order()
            && f.len() == n
            && f.iter().copied().collect::<ElementSet>() == ElementSet::full(n)
            && f[ZERO] == ZERO
            && f[ONE] == ONE
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    f[from.mul(a, b)] == to.mul(f[a], f[b])
                        && from.sum(a, b).map(|x| f[x]) == to.sum(f[a], f[b])
                })
            })
    }
}

impl fmt::Display for IsoWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .map(|(i, j)| format!("{i}->{j}"))
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// Lexicographically first isomorphism from `c1` to `c2`, if any.
pub fn are_isomorphic(c1: &Hyperfield, c2: &Hyperfield) -> Option<IsoWitness> {
    if c1.order() != c2.order() || fingerprint(c1) != fingerprint(c2) {
        return None;
    }
    find_isomorphism(c1, c2)
}

/// Element invariant used to restrict candidate images: the shape of the
/// multiplicative power sequence plus a few hyperaddition sizes.
fn element_signature(c: &HyperfieldCandidate, x: usize) -> (usize, usize, usize, usize, bool) {
    let n = c.order();
    let mut seen = vec![usize::MAX; n];
    let mut y = x;
    let mut k = 0;
    while seen[y] == usize::MAX {
        seen[y] = k;
        y = c.mul(y, x);
        k += 1;
    }
    let tail = seen[y];
    let period = k - tail;
    (
        tail,
        period,
        c.sum(x, x).len(),
        c.sum(ONE, x).len(),
        c.sum(ONE, x).contains(ZERO),
    )
}

struct Search<'a> {
    from: &'a HyperfieldCandidate,
    to: &'a HyperfieldCandidate,
    sig_from: Vec<(usize, usize, usize, usize, bool)>,
    sig_to: Vec<(usize, usize, usize, usize, bool)>,
    map: Vec<Option<usize>>,
    assigned: ElementSet,
    used: ElementSet,
    trail: Vec<usize>,
}

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.used.contains(y) || self.sig_from[x] != self.sig_to[y] {
            return false;
        }
        self.map[x] = Some(y);
        self.assigned.insert(x);
        self.used.insert(y);
        self.trail.push(x);
        true
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let y = self.map[x].take().unwrap();
            self.assigned = ElementSet::from_mask(self.assigned.mask() & !(1 << x));
            self.used = ElementSet::from_mask(self.used.mask() & !(1 << y));
        }
    }

    /// Close the assignment under products and check hyperaddition on
    /// assigned pairs. Returns false on conflict.
    fn propagate(&mut self) -> bool {
        let mut changed = true;
        while changed {
            changed = false;
            for a in self.assigned {
                for b in self.assigned {
                    let fa = self.map[a].unwrap();
                    let fb = self.map[b].unwrap();
                    let prod = self.from.mul(a, b);
                    let image = self.to.mul(fa, fb);
                    match self.map[prod] {
                        Some(v) if v != image => return false,
                        Some(_) => {}
                        None => {
                            if !self.assign(prod, image) {
                                return false;
                            }
                            changed = true;
                        }
                    }
                }
            }
        }
        for a in self.assigned {
            for b in self.assigned {
                let (fa, fb) = (self.map[a].unwrap(), self.map[b].unwrap());
                let src = self.from.sum(a, b);
                let dst = self.to.sum(fa, fb);
                if src.len() != dst.len() {
                    return false;
                }
                let known = ElementSet::from_mask(src.mask() & self.assigned.mask());
                let image = known.map(|x| self.map[x].unwrap());
                if ElementSet::from_mask(dst.mask() & self.used.mask()) != image {
                    return false;
                }
            }
        }
        true
    }

    fn run(&mut self) -> bool {
        let n = self.from.order();
        let Some(x) = (0..n).find(|&x| self.map[x].is_none()) else {
            return true;
        };
        for y in 0..n {
            let mark = self.trail.len();
            if self.assign(x, y) && self.propagate() && self.run() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}

/// Lexicographically first bijection fixing 0 and 1 that preserves both
/// tables. Works on unverified candidates too.
pub fn find_isomorphism(
    from: &HyperfieldCandidate,
    to: &HyperfieldCandidate,
) -> Option<IsoWitness> {
    let n = from.order();
    if n != to.order() {
        return None;
    }
    let mut search = Search {
        from,
        to,
        sig_from: (0..n).map(|x| element_signature(from, x)).collect(),
        sig_to: (0..n).map(|x| element_signature(to, x)).collect(),
        map: vec![None; n],
        assigned: ElementSet::EMPTY,
        used: ElementSet::EMPTY,
        trail: Vec::new(),
    };
    if !(search.assign(ZERO, ZERO) && search.assign(ONE, ONE) && search.propagate()) {
        return None;
    }
    if !search.run() {
        return None;
    }
    let witness = IsoWitness(search.map.into_iter().map(Option::unwrap).collect());
    debug_assert!(witness.preserves(from, to));
    witness.preserves(from, to).then_some(witness)
}
