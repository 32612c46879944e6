//! Hyperfield constructions: fields with singleton sums, Krasner's quotient
//! `F/G`, the Massouros hyperfield `a ⊕ b = {a, b, a + b}`, the componentwise
//! product, and synthesis of a hyperfield of any order `n >= 2`.
//!
//! Every public construction verifies its output before returning it.

use std::fmt;

use crate::error::{Error, Result};
use crate::galois::{factor_integer, gf, is_prime, FieldTable};
use crate::hyperfield::{Hyperfield, HyperfieldCandidate, ONE, ZERO};
use crate::set::{ElementSet, MAX_ORDER};

/// Largest order accepted by [`hyperfield_of_order`].
pub const MAX_SYNTHESIS_ORDER: usize = 64;

fn check_field_fits(f: &FieldTable) -> Result<usize> {
    let q = f.order();
    if q > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "field of order {q} does not fit a carrier of at most {MAX_ORDER} elements"
        )));
    }
    Ok(q)
}

/// The field itself, read as a hyperfield with `a ⊕ b = {a + b}`.
pub fn from_field(f: &FieldTable) -> Result<Hyperfield> {
    let q = check_field_fits(f)?;
    let mut hyperadd = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for a in 0..q {
        for b in 0..q {
            hyperadd.push(ElementSet::singleton(f.add(a, b)));
            mul.push(f.mul(a, b) as u8);
        }
    }
    let c = HyperfieldCandidate::from_flat(q, hyperadd, mul)?;
    Hyperfield::certify(c, "field")
}

/// A multiplicative subgroup of a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupSpec {
    field_order: usize,
    generators: Vec<usize>,
    closure: Vec<usize>,
}

impl SubgroupSpec {
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Sorted member indices.
    pub fn elements(&self) -> &[usize] {
        &self.closure
    }

    pub fn len(&self) -> usize {
        self.closure.len()
    }

    pub fn is_empty(&self) -> bool {
        self.closure.is_empty()
    }

    pub fn field_order(&self) -> usize {
        self.field_order
    }
}

pub fn subgroup_closure(f: &FieldTable, gens: &[usize]) -> Result<SubgroupSpec> {
    let q = f.order();
    for &g in gens {
        if g == ZERO {
            return Err(Error::Domain("subgroup generator 0 is not a unit".into()));
        }
        if g >= q {
            return Err(Error::Domain(format!(
                "generator {g} is not an element of GF({q})"
            )));
        }
    }
    let mut member = vec![false; q];
    member[ONE] = true;
    let mut closure = vec![ONE];
    let mut frontier = vec![ONE];
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = f.mul(x, g);
            if !member[y] {
                member[y] = true;
                closure.push(y);
                frontier.push(y);
            }
        }
    }
    closure.sort_unstable();
    Ok(SubgroupSpec {
        field_order: q,
        generators: gens.to_vec(),
        closure,
    })
}

/// Krasner's quotient hyperfield `F/G` on the cosets of `g`.
///
/// Cosets are indexed `0G -> 0`, `1G -> 1`, the rest by their smallest element.
pub fn quotient(f: &FieldTable, g: &SubgroupSpec) -> Result<Hyperfield> {
    let q = f.order();
    let members = &g.closure;
    if g.field_order != q
        || members.is_empty()
        || members.binary_search(&ONE).is_err()
        || members.binary_search(&ZERO).is_ok()
        || members.iter().any(|&x| x >= q)
    {
        return Err(Error::Domain(
            "not a subgroup of the field's unit group".into(),
        ));
    }
    for &a in members {
        for &b in members {
            if members.binary_search(&f.mul(a, b)).is_err() {
                return Err(Error::Domain(format!(
                    "subgroup not closed: {a} * {b} = {}",
                    f.mul(a, b)
                )));
            }
        }
    }
    let n = 1 + (q - 1) / members.len();
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "quotient has {n} elements, above {MAX_ORDER}"
        )));
    }

    // Scanning x ascending assigns each coset the position of its smallest member.
    let mut coset_of = vec![usize::MAX; q];
    coset_of[ZERO] = ZERO;
    for &m in members {
        coset_of[m] = ONE;
    }
    let mut next = 2;
    for x in 2..q {
        if coset_of[x] == usize::MAX {
            for &m in members {
                coset_of[f.mul(x, m)] = next;
            }
            next += 1;
        }
    }
    debug_assert_eq!(next, n);

    let mut hyperadd = vec![ElementSet::EMPTY; n * n];
    let mut mul = vec![0u8; n * n];
    for a in 0..q {
        for b in 0..q {
            let (ca, cb) = (coset_of[a], coset_of[b]);
            hyperadd[ca * n + cb].insert(coset_of[f.add(a, b)]);
            mul[ca * n + cb] = coset_of[f.mul(a, b)] as u8;
        }
    }
    let c = HyperfieldCandidate::from_flat(n, hyperadd, mul)?;
    Hyperfield::certify(c, "quotient")
}

/// Massouros hyperfield on the carrier of `f`.
///
/// `a ⊕ 0 = {a}`; `a ⊕ (-a) = F` for nonzero `a`; otherwise `{a, b, a + b}`,
/// which for `a = b` with `a != -a` gives `{a, 2a}`.
pub fn massouros(f: &FieldTable) -> Result<Hyperfield> {
    let q = check_field_fits(f)?;
    let full = ElementSet::full(q);
    let mut hyperadd = Vec::with_capacity(q * q);
    let mut mul = Vec::with_capacity(q * q);
    for a in 0..q {
        for b in 0..q {
            let cell = if a == ZERO {
                ElementSet::singleton(b)
            } else if b == ZERO {
                ElementSet::singleton(a)
            } else if f.add(a, b) == ZERO {
                full
            } else {
                [a, b, f.add(a, b)].into_iter().collect()
            };
            hyperadd.push(cell);
            mul.push(f.mul(a, b) as u8);
        }
    }
    let c = HyperfieldCandidate::from_flat(q, hyperadd, mul)?;
    Hyperfield::certify(c, "massouros")
}

/// Index of the pair `(i, j)` in a product of carriers of sizes `n1 x n2`:
/// `(0,0) -> 0`, `(1,1) -> 1`, every other pair in row-major order from 2.
pub fn product_index(n2: usize, i: usize, j: usize) -> usize {
    match (i, j) {
        (0, 0) => 0,
        (1, 1) => 1,
        _ => {
            let row_major = i * n2 + j;
            // (0,0) precedes every other pair and (1,1) precedes those after it
            let skipped = if row_major > n2 + 1 { 2 } else { 1 };
            row_major - skipped + 2
        }
    }
}

/// Componentwise hyperaddition and multiplication on the cartesian product,
/// before verification.
pub fn product_candidate(
    c1: &HyperfieldCandidate,
    c2: &HyperfieldCandidate,
) -> Result<HyperfieldCandidate> {
    let (n1, n2) = (c1.order(), c2.order());
    let n = n1 * n2;
    if n > MAX_ORDER {
        return Err(Error::Capacity(format!(
            "product has {n} elements, above {MAX_ORDER}"
        )));
    }
    let idx = |i, j| product_index(n2, i, j);
    let mut hyperadd = vec![ElementSet::EMPTY; n * n];
    let mut mul = vec![0u8; n * n];
    for a in 0..n1 {
        for b in 0..n2 {
            for c in 0..n1 {
                for d in 0..n2 {
                    let cell = &mut hyperadd[idx(a, b) * n + idx(c, d)];
                    for i in c1.sum(a, c) {
                        for j in c2.sum(b, d) {
                            cell.insert(idx(i, j));
                        }
                    }
                    mul[idx(a, b) * n + idx(c, d)] = idx(c1.mul(a, c), c2.mul(b, d)) as u8;
                }
            }
        }
    }
    HyperfieldCandidate::from_flat(n, hyperadd, mul)
}

/// The cartesian product of two hyperfields, verified.
///
/// The product carries zero divisors such as `(1,0)·(0,1) = (0,0)`, so for
/// any two inputs this returns a construction error naming HF2.
pub fn product(c1: &Hyperfield, c2: &Hyperfield) -> Result<Hyperfield> {
    Hyperfield::certify(product_candidate(c1, c2)?, "product")
}

/// How [`hyperfield_of_order`] built its result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Massouros { p: u64, k: u32 },
    Quotient { p: u64, subgroup_order: usize },
    Product(Vec<Recipe>),
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Massouros { p, k: 1 } => write!(f, "massouros(GF({p}))"),
            Recipe::Massouros { p, k } => write!(f, "massouros(GF({p}^{k}))"),
            Recipe::Quotient { p, subgroup_order } => {
                write!(f, "quotient(GF({p}), |G|={subgroup_order})")
            }
            Recipe::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(|r| r.to_string()).collect();
                write!(f, "product({})", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct Synthesis {
    pub hyperfield: Hyperfield,
    pub recipe: Recipe,
    /// Set when the product fold over the prime-power factors was attempted
    /// and rejected by the verifier.
    pub product_failure: Option<String>,
}

/// Smallest prime `p` with `p ≡ 1 (mod m)`.
fn prime_congruent_one(m: u64) -> u64 {
    (1..)
        .map(|t| 1 + t * m)
        .find(|&p| is_prime(p))
        .expect("Dirichlet: infinitely many such primes")
}

/// Krasner quotient of GF(p) by the subgroup of `(n-1)`-th powers, `p ≡ 1 mod (n-1)`.
pub fn quotient_of_order(n: usize) -> Result<Synthesis> {
    if !(2..=MAX_SYNTHESIS_ORDER).contains(&n) {
        return Err(Error::Capacity(format!(
            "order {n} outside 2..={MAX_SYNTHESIS_ORDER}"
        )));
    }
    let m = (n - 1) as u64;
    let p = prime_congruent_one(m);
    let f = gf(p, 1)?;
    let mut powers: Vec<usize> = (1..f.order())
        .map(|x| {
            let mut y = ONE;
            for _ in 0..m {
                y = f.mul(y, x);
            }
            y
        })
        .collect();
    powers.sort_unstable();
    powers.dedup();
    let g = subgroup_closure(&f, &powers)?;
    let hyperfield = quotient(&f, &g)?;
    debug_assert_eq!(hyperfield.order(), n);
    Ok(Synthesis {
        hyperfield,
        recipe: Recipe::Quotient {
            p,
            subgroup_order: g.len(),
        },
        product_failure: None,
    })
}

/// A verified hyperfield with exactly `n` elements.
///
/// Prime powers `n = p^k` give the Massouros hyperfield on GF(p^k). Otherwise
/// the Massouros hyperfields of the prime-power factors are folded with
/// [`product`] in ascending-prime order; when the verifier rejects that fold
/// the result is Krasner's quotient from [`quotient_of_order`].
pub fn hyperfield_of_order(n: usize) -> Result<Synthesis> {
    if !(2..=MAX_SYNTHESIS_ORDER).contains(&n) {
        return Err(Error::Capacity(format!(
            "order {n} outside 2..={MAX_SYNTHESIS_ORDER}"
        )));
    }
    let factors = factor_integer(n as u64)?;
    let parts = factors
        .factors()
        .iter()
        .map(|pp| massouros(&gf(pp.prime(), pp.exponent())?))
        .collect::<Result<Vec<_>>>()?;
    if let [only] = factors.factors() {
        return Ok(Synthesis {
            hyperfield: parts.into_iter().next().unwrap(),
            recipe: Recipe::Massouros {
                p: only.prime(),
                k: only.exponent(),
            },
            product_failure: None,
        });
    }
    let mut iter = parts.into_iter();
    let mut acc = iter.next().unwrap();
    let mut failure = None;
    for next in iter {
        match product(&acc, &next) {
            Ok(h) => acc = h,
            Err(e @ Error::Construction { .. }) => {
                failure = Some(e.to_string());
                break;
            }
            Err(e) => return Err(e),
        }
    }
    match failure {
        None => Ok(Synthesis {
            hyperfield: acc,
            recipe: Recipe::Product(
                factors
                    .factors()
                    .iter()
                    .map(|pp| Recipe::Massouros {
                        p: pp.prime(),
                        k: pp.exponent(),
                    })
                    .collect(),
            ),
            product_failure: None,
        }),
        Some(msg) => {
            let mut s = quotient_of_order(n)?;
            s.product_failure = Some(msg);
            Ok(s)
        }
    }
}
