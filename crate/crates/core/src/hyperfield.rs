//! Hyperstructure data model and the exhaustive axiom verifier.
//!
//! A [`HyperfieldCandidate`] is any well-formed pair of tables: a hyperaddition
//! mapping pairs to nonempty [`ElementSet`]s and a multiplication mapping pairs
//! to elements, with zero at index 0 and one at index 1. [`verify`] checks the
//! canonical hypergroup, Krasner hyperring and hyperfield axioms by exhaustion;
//! a [`Hyperfield`] is a candidate that passed.
//!
//! [`verify`]: HyperfieldCandidate::verify

use std::ops::Deref;

use crate::error::{Error, Result};
use crate::report::{AxiomReport, Witness};
use crate::set::{ElementSet, MAX_ORDER};

pub const ZERO: usize = 0;
pub const ONE: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HyperfieldCandidate {
    n: usize,
    hyperadd: Vec<ElementSet>,
    mul: Vec<u8>,
}

impl HyperfieldCandidate {
    /// Build a candidate from row-major tables, checking shape, ranges and
    /// that every hyperaddition cell is nonempty.
    pub fn new(hyperadd: Vec<Vec<ElementSet>>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = hyperadd.len();
        check_order(n)?;
        if mul.len() != n {
            return Err(Error::Structural(format!(
                "mul has {} rows, hyperadd has {n}",
                mul.len()
            )));
        }
        let mut flat_add = Vec::with_capacity(n * n);
        let mut flat_mul = Vec::with_capacity(n * n);
        for (i, (hrow, mrow)) in hyperadd.into_iter().zip(mul).enumerate() {
            if hrow.len() != n || mrow.len() != n {
                return Err(Error::Structural(format!(
                    "row {i} does not have {n} entries"
                )));
            }
            flat_add.extend(hrow);
            for (j, v) in mrow.into_iter().enumerate() {
                if v >= n {
                    return Err(Error::Structural(format!(
                        "mul[{i}][{j}] = {v} out of range"
                    )));
                }
                flat_mul.push(v as u8);
            }
        }
        Self::from_flat(n, flat_add, flat_mul)
    }

    pub(crate) fn from_flat(n: usize, hyperadd: Vec<ElementSet>, mul: Vec<u8>) -> Result<Self> {
        check_order(n)?;
        if hyperadd.len() != n * n || mul.len() != n * n {
            return Err(Error::Structural(format!("tables are not {n}x{n}")));
        }
        for (idx, s) in hyperadd.iter().enumerate() {
            if s.is_empty() {
                return Err(Error::Structural(format!(
                    "empty hyperaddition cell at ({}, {})",
                    idx / n,
                    idx % n
                )));
            }
            if s.bound() > n {
                return Err(Error::Structural(format!(
                    "hyperaddition cell ({}, {}) has member {} out of range",
                    idx / n,
                    idx % n,
                    s.bound() - 1
                )));
            }
        }
        if let Some(idx) = mul.iter().position(|&v| v as usize >= n) {
            return Err(Error::Structural(format!(
                "mul[{}][{}] out of range",
                idx / n,
                idx % n
            )));
        }
        Ok(HyperfieldCandidate { n, hyperadd, mul })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// `a ⊕ b` without bounds checking beyond the slice index.
    #[inline]
    pub fn sum(&self, a: usize, b: usize) -> ElementSet {
        self.hyperadd[a * self.n + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn hyper_sum(&self, a: usize, b: usize) -> Result<ElementSet> {
        self.check_index(a)?;
        self.check_index(b)?;
        Ok(self.sum(a, b))
    }

    /// Union extension of ⊕ to sets: the union of `a ⊕ b` over `a ∈ A`, `b ∈ B`.
    pub fn hyper_sum_sets(&self, lhs: ElementSet, rhs: ElementSet) -> Result<ElementSet> {
        if lhs.is_empty() || rhs.is_empty() {
            return Err(Error::Domain("hyperaddition of an empty set".into()));
        }
        if lhs.bound() > self.n || rhs.bound() > self.n {
            return Err(Error::Structural("set member out of range".into()));
        }
        Ok(self.sum_sets(lhs, rhs))
    }

    #[inline]
    pub(crate) fn sum_sets(&self, lhs: ElementSet, rhs: ElementSet) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for a in lhs {
            for b in rhs {
                out |= self.sum(a, b);
            }
        }
        out
    }

    #[inline]
    fn sum_elem_set(&self, a: usize, rhs: ElementSet) -> ElementSet {
        let mut out = ElementSet::EMPTY;
        for b in rhs {
            out |= self.sum(a, b);
        }
        out
    }

    /// `x · S`, elementwise.
    #[inline]
    pub fn scale(&self, x: usize, set: ElementSet) -> ElementSet {
        set.map(|s| self.mul(x, s))
    }

    /// The unique `x'` with `0 ∈ a ⊕ x'`.
    pub fn opposite(&self, a: usize) -> Result<usize> {
        self.check_index(a)?;
        let candidates: Vec<usize> = (0..self.n)
            .filter(|&b| self.sum(a, b).contains(ZERO))
            .collect();
        match candidates.as_slice() {
            [only] => Ok(*only),
            _ => Err(Error::NoUniqueOpposite {
                element: a,
                candidates,
            }),
        }
    }

    pub fn hyperadd_rows(&self) -> Vec<Vec<ElementSet>> {
        self.hyperadd.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn mul_rows(&self) -> Vec<Vec<usize>> {
        self.mul
            .chunks(self.n)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }

    /// Rename element `i` to `perm[i]` in both tables.
    pub fn relabel(&self, perm: &[usize]) -> Result<HyperfieldCandidate> {
        let n = self.n;
        if perm.len() != n || ElementSet::from_iter(perm.iter().copied()) != ElementSet::full(n) {
            return Err(Error::Domain(
                "relabeling is not a bijection of the carrier".into(),
            ));
        }
        let mut hyperadd = vec![ElementSet::EMPTY; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                let idx = perm[a] * n + perm[b];
                hyperadd[idx] = self.sum(a, b).map(|x| perm[x]);
                mul[idx] = perm[self.mul(a, b)] as u8;
            }
        }
        HyperfieldCandidate::from_flat(n, hyperadd, mul)
    }

    fn check_index(&self, a: usize) -> Result<()> {
        if a >= self.n {
            Err(Error::Structural(format!(
                "index {a} out of range for order {}",
                self.n
            )))
        } else {
            Ok(())
        }
    }

    fn opposites(&self) -> Vec<Option<usize>> {
        (0..self.n).map(|a| self.opposite(a).ok()).collect()
    }

    /// Check every axiom exhaustively, recording the lexicographically first
    /// violating tuple of each failed axiom.
    pub fn verify(&self) -> AxiomReport {
        let n = self.n;
        let mut report = AxiomReport::new();
        let opp = self.opposites();

        report.record(
            "CH1",
            "associativity: x⊕(y⊕z) = (x⊕y)⊕z",
            first_triple(n, |x, y, z| {
                let lhs = self.sum_elem_set(x, self.sum(y, z));
                let rhs = self.sum_sets(self.sum(x, y), ElementSet::singleton(z));
                (lhs != rhs).then_some("x⊕(y⊕z) != (x⊕y)⊕z")
            }),
        );
        report.record(
            "CH2",
            "commutativity: x⊕y = y⊕x",
            first_pair(n, |x, y| {
                (self.sum(x, y) != self.sum(y, x)).then_some("x⊕y != y⊕x")
            }),
        );
        report.record(
            "CH3",
            "identity: 0⊕x = {x}",
            first_single(n, |x| {
                (self.sum(ZERO, x) != ElementSet::singleton(x)).then_some("0⊕x != {x}")
            }),
        );
        report.record(
            "CH4",
            "unique opposite: exactly one x' with 0 ∈ x⊕x'",
            first_single(n, |x| match self.opposite(x) {
                Ok(_) => None,
                Err(Error::NoUniqueOpposite { candidates, .. }) if candidates.is_empty() => {
                    Some("no opposite")
                }
                Err(_) => Some("multiple opposites"),
            }),
        );
        report.record(
            "CH5",
            "reversibility: z ∈ x⊕y ⇒ y ∈ x'⊕z and x ∈ z⊕y'",
            first_triple(n, |x, y, z| {
                if !self.sum(x, y).contains(z) {
                    return None;
                }
                let (Some(xo), Some(yo)) = (opp[x], opp[y]) else {
                    return Some("opposite undefined");
                };
                if !self.sum(xo, z).contains(y) {
                    Some("y not in x'⊕z")
                } else if !self.sum(z, yo).contains(x) {
                    Some("x not in z⊕y'")
                } else {
                    None
                }
            }),
        );
        report.record(
            "KR1",
            "multiplicative semigroup: (x·y)·z = x·(y·z)",
            first_triple(n, |x, y, z| {
                (self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)))
                    .then_some("(xy)z != x(yz)")
            }),
        );
        report.record(
            "KR2",
            "absorbing zero: x·0 = 0·x = 0",
            first_single(n, |x| {
                (self.mul(x, ZERO) != ZERO || self.mul(ZERO, x) != ZERO).then_some("x·0 != 0")
            }),
        );
        report.record(
            "KR3",
            "distributivity: x·(y⊕z) = x·y ⊕ x·z and (y⊕z)·x = y·x ⊕ z·x",
            first_triple(n, |x, y, z| {
                let left = self.scale(x, self.sum(y, z));
                if left != self.sum(self.mul(x, y), self.mul(x, z)) {
                    return Some("left distributivity");
                }
                let right = self.sum(y, z).map(|w| self.mul(w, x));
                if right != self.sum(self.mul(y, x), self.mul(z, x)) {
                    return Some("right distributivity");
                }
                None
            }),
        );
        report.record(
            "HF1",
            "commutative with unit: x·y = y·x, 1·x = x",
            (0..n).find_map(|x| {
                if self.mul(ONE, x) != x || self.mul(x, ONE) != x {
                    return Some(Witness::new(&[x], "1·x != x"));
                }
                (0..n)
                    .find(|&y| self.mul(x, y) != self.mul(y, x))
                    .map(|y| Witness::new(&[x, y], "xy != yx"))
            }),
        );
        report.record(
            "HF2",
            "multiplicative group on nonzero elements",
            (1..n).find_map(|x| {
                if let Some(y) = (1..n).find(|&y| self.mul(x, y) == ZERO) {
                    return Some(Witness::new(&[x, y], "zero divisor"));
                }
                (!(1..n).any(|y| self.mul(x, y) == ONE)).then(|| Witness::new(&[x], "no inverse"))
            }),
        );
        report
    }
}

fn check_order(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Structural(format!("carrier size {n} is below 2")));
    }
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "carrier size {n} exceeds {MAX_ORDER}"
        )));
    }
    Ok(())
}

fn first_single(n: usize, bad: impl Fn(usize) -> Option<&'static str>) -> Option<Witness> {
    (0..n).find_map(|x| bad(x).map(|r| Witness::new(&[x], r)))
}

fn first_pair(n: usize, bad: impl Fn(usize, usize) -> Option<&'static str>) -> Option<Witness> {
    for x in 0..n {
        for y in 0..n {
            if let Some(r) = bad(x, y) {
                return Some(Witness::new(&[x, y], r));
            }
        }
    }
    None
}

fn first_triple(
    n: usize,
    bad: impl Fn(usize, usize, usize) -> Option<&'static str>,
) -> Option<Witness> {
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if let Some(r) = bad(x, y, z) {
                    return Some(Witness::new(&[x, y, z], r));
                }
            }
        }
    }
    None
}

/// A candidate that passed every axiom of [`HyperfieldCandidate::verify`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Hyperfield {
    inner: HyperfieldCandidate,
    opposites: Vec<u8>,
    inverses: Vec<u8>,
}

impl Hyperfield {
    /// Verify `candidate`, naming the failure after `construction` if it does not pass.
    pub fn certify(candidate: HyperfieldCandidate, construction: &str) -> Result<Hyperfield> {
        let report = candidate.verify();
        if !report.passed() {
            return Err(Error::Construction {
                construction: construction.to_string(),
                report: Box::new(report),
            });
        }
        let n = candidate.order();
        let opposites = (0..n)
            .map(|a| candidate.opposite(a).map(|o| o as u8))
            .collect::<Result<Vec<_>>>()?;
        let inverses = (0..n)
            .map(|x| match x {
                ZERO => 0,
                _ => (1..n).find(|&y| candidate.mul(x, y) == ONE).unwrap() as u8,
            })
            .collect();
        Ok(Hyperfield {
            inner: candidate,
            opposites,
            inverses,
        })
    }

    pub fn candidate(&self) -> &HyperfieldCandidate {
        &self.inner
    }

    pub fn into_candidate(self) -> HyperfieldCandidate {
        self.inner
    }

    /// Hyperadditive opposite `x'`.
    #[inline]
    pub fn opp(&self, a: usize) -> usize {
        self.opposites[a] as usize
    }

    /// Multiplicative inverse of a nonzero element.
    #[inline]
    pub fn inverse(&self, a: usize) -> Option<usize> {
        (a != ZERO && a < self.order()).then(|| self.inverses[a] as usize)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: usize) -> Option<usize> {
        if a == ZERO || a >= self.order() {
            return None;
        }
        let mut x = a;
        let mut k = 1;
        while x != ONE {
            x = self.mul(x, a);
            k += 1;
        }
        Some(k)
    }

    pub fn relabel(&self, perm: &[usize]) -> Result<Hyperfield> {
        if perm.first() != Some(&ZERO) || perm.get(1) != Some(&ONE) {
            return Err(Error::Domain("relabeling must fix 0 and 1".into()));
        }
        Hyperfield::certify(self.inner.relabel(perm)?, "relabel")
    }
}

impl Deref for Hyperfield {
    type Target = HyperfieldCandidate;
    fn deref(&self) -> &HyperfieldCandidate {
        &self.inner
    }
}

impl TryFrom<HyperfieldCandidate> for Hyperfield {
    type Error = Error;
    fn try_from(c: HyperfieldCandidate) -> Result<Hyperfield> {
        Hyperfield::certify(c, "candidate")
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn set(xs: &[usize]) -> ElementSet {
        xs.iter().copied().collect()
    }

    /// The five-element example, elements 0, 1, a, b, c as 0..5.
    pub(crate) fn five_element() -> HyperfieldCandidate {
        let all = set(&[0, 1, 2, 3, 4]);
        let s = |x: &[usize]| set(x);
        let hyperadd = vec![
            vec![s(&[0]), s(&[1]), s(&[2]), s(&[3]), s(&[4])],
            vec![s(&[1]), s(&[1]), s(&[1, 2]), all, s(&[1, 4])],
            vec![s(&[2]), s(&[1, 2]), s(&[2]), s(&[2, 3]), all],
            vec![s(&[3]), all, s(&[2, 3]), s(&[3]), s(&[3, 4])],
            vec![s(&[4]), s(&[1, 4]), all, s(&[3, 4]), s(&[4])],
        ];
        let mul = vec![
            vec![0, 0, 0, 0, 0],
            vec![0, 1, 2, 3, 4],
            vec![0, 2, 3, 4, 1],
            vec![0, 3, 4, 1, 2],
            vec![0, 4, 1, 2, 3],
        ];
        HyperfieldCandidate::new(hyperadd, mul).unwrap()
    }

    #[test]
    fn five_element_example_passes() {
        let c = five_element();
        let report = c.verify();
        assert!(report.passed(), "{report}");
        assert_eq!(report.outcomes().len(), 10);
    }

    #[test]
    fn hyper_sum_reads_table() {
        let c = five_element();
        assert_eq!(c.hyper_sum(1, 2).unwrap(), set(&[1, 2]));
        assert_eq!(c.hyper_sum(3, 1).unwrap(), set(&[0, 1, 2, 3, 4]));
        for x in 0..5 {
            assert_eq!(c.hyper_sum(0, x).unwrap(), ElementSet::singleton(x));
        }
        assert!(matches!(c.hyper_sum(5, 0), Err(Error::Structural(_))));
    }

    #[test]
    fn hyper_sum_sets_extends_by_union() {
        let c = five_element();
        assert_eq!(c.hyper_sum_sets(set(&[1]), set(&[2])).unwrap(), c.sum(1, 2));
        let full = ElementSet::full(5);
        for b in 1..32u64 {
            assert_eq!(
                c.hyper_sum_sets(full, ElementSet::from_mask(b)).unwrap(),
                full
            );
        }
        assert!(matches!(
            c.hyper_sum_sets(ElementSet::EMPTY, full),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn opposites_in_five_element_example() {
        let c = five_element();
        assert_eq!(c.opposite(1).unwrap(), 3);
        assert_eq!(c.opposite(0).unwrap(), 0);
        for a in 0..5 {
            let o = c.opposite(a).unwrap();
            assert_eq!(c.opposite(o).unwrap(), a);
        }
    }

    #[test]
    fn opposite_reports_all_candidates() {
        let c = five_element();
        let mut rows = c.hyperadd_rows();
        rows[1][2] = set(&[0, 1, 2]);
        rows[2][1] = set(&[0, 1, 2]);
        let bad = HyperfieldCandidate::new(rows, c.mul_rows()).unwrap();
        match bad.opposite(1) {
            Err(Error::NoUniqueOpposite {
                element,
                candidates,
            }) => {
                assert_eq!(element, 1);
                assert_eq!(candidates, vec![2, 3]);
            }
            other => panic!("unexpected {other:?}"),
        }
        let report = bad.verify();
        assert_eq!(
            report.get("CH4").unwrap().witness,
            Some(Witness::new(&[1], "multiple opposites"))
        );
    }

    #[test]
    fn mirrored_mutation_breaks_reversibility() {
        let c = five_element();
        let mut rows = c.hyperadd_rows();
        rows[1][2] = set(&[1]);
        rows[2][1] = set(&[1]);
        let mutated = HyperfieldCandidate::new(rows.clone(), c.mul_rows()).unwrap();
        let report = mutated.verify();
        assert!(report.get("CH2").unwrap().passed());
        // a ∈ a⊕b, but a ∉ a⊕b' = a⊕1 once that cell is {1}.
        let ch5 = report.get("CH5").unwrap();
        assert!(!ch5.passed());
        assert_eq!(ch5.witness, Some(Witness::new(&[2, 3, 2], "x not in z⊕y'")));
        // Single-sided mutation breaks commutativity instead.
        let mut one_sided = c.hyperadd_rows();
        one_sided[1][2] = set(&[1]);
        let report = HyperfieldCandidate::new(one_sided, c.mul_rows())
            .unwrap()
            .verify();
        assert_eq!(
            report.get("CH2").unwrap().witness,
            Some(Witness::new(&[1, 2], "x⊕y != y⊕x"))
        );
    }

    #[test]
    fn field_as_candidate_passes() {
        let f = crate::galois::gf(5, 1).unwrap();
        let n = f.order();
        let hyperadd = (0..n)
            .map(|a| (0..n).map(|b| ElementSet::singleton(f.add(a, b))).collect())
            .collect();
        let c = HyperfieldCandidate::new(hyperadd, f.mul_table()).unwrap();
        assert!(c.verify().passed());
    }

    #[test]
    fn structural_errors() {
        let c = five_element();
        let mut rows = c.hyperadd_rows();
        rows[2][3] = ElementSet::EMPTY;
        assert!(matches!(
            HyperfieldCandidate::new(rows, c.mul_rows()),
            Err(Error::Structural(m)) if m.contains("(2, 3)")
        ));
        let mut mul = c.mul_rows();
        mul[4][4] = 5;
        assert!(HyperfieldCandidate::new(c.hyperadd_rows(), mul).is_err());
        let mut rows = c.hyperadd_rows();
        rows[0][0] = set(&[7]);
        assert!(HyperfieldCandidate::new(rows, c.mul_rows()).is_err());
        assert!(HyperfieldCandidate::new(vec![vec![set(&[0])]], vec![vec![0]]).is_err());
    }

    #[test]
    fn verify_is_deterministic() {
        let c = five_element();
        let mut rows = c.hyperadd_rows();
        rows[4][4] = set(&[0, 4]);
        let bad = HyperfieldCandidate::new(rows, c.mul_rows()).unwrap();
        assert_eq!(bad.verify(), bad.verify());
        assert!(!bad.verify().passed());
    }

    #[test]
    fn relabel_round_trips() {
        let h = Hyperfield::try_from(five_element()).unwrap();
        let perm = [0, 1, 4, 3, 2];
        let r = h.relabel(&perm).unwrap();
        assert_eq!(r.relabel(&perm).unwrap(), h);
        assert!(h.relabel(&[1, 0, 2, 3, 4]).is_err());
        assert_eq!(h.element_order(2), Some(4));
        assert_eq!(h.element_order(3), Some(2));
        assert_eq!(h.inverse(2), Some(4));
        assert_eq!(h.opp(1), 3);
    }
}
