//! Finite fields GF(p^k) as explicit Cayley tables, plus integer factorization
//! into prime powers.
//!
//! Element indexing: the polynomial with coefficients `(c0, .., c{k-1})` over
//! GF(p) has index `sum(ci * p^i)`, so the zero polynomial is index 0 and the
//! constant 1 is index 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::{AxiomReport, Witness};

/// Largest extension degree `gf` accepts.
pub const MAX_DEGREE: u32 = 8;
/// Largest field order `gf` accepts.
pub const MAX_FIELD_ORDER: usize = 6561;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    p: u64,
    k: u32,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Domain(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::Domain("exponent must be at least 1".into()));
        }
        Ok(PrimePower { p, k })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    pub fn value(&self) -> u64 {
        self.p.pow(self.k)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

/// Prime-power factorization with strictly ascending primes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization(Vec<PrimePower>);

impl Factorization {
    pub fn factors(&self) -> &[PrimePower] {
        &self.0
    }

    pub fn value(&self) -> u64 {
        self.0.iter().map(PrimePower::value).product()
    }

    pub fn is_prime_power(&self) -> bool {
        self.0.len() == 1
    }

    /// `(p, k)` pairs, handy for tests and display.
    pub fn pairs(&self) -> Vec<(u64, u32)> {
        self.0.iter().map(|pp| (pp.p, pp.k)).collect()
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|pp| pp.to_string()).collect();
        f.write_str(&parts.join(" * "))
    }
}

pub fn factor_integer(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::Domain("order must be at least 2".into()));
    }
    let mut rest = n;
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut k = 0;
            while rest.is_multiple_of(d) {
                rest /= d;
                k += 1;
            }
            out.push(PrimePower { p: d, k });
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        out.push(PrimePower { p: rest, k: 1 });
    }
    Ok(Factorization(out))
}

/// Complete addition and multiplication tables of a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldTable {
    characteristic: u32,
    degree: u32,
    order: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    labels: Vec<Vec<u32>>,
    modulus: Vec<u32>,
}

impl FieldTable {
    /// Assemble a table from raw parts, checking only shapes and ranges.
    /// Field axioms are checked by [`verify_field`].
    pub fn from_parts(
        characteristic: u32,
        degree: u32,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        labels: Vec<Vec<u32>>,
        modulus: Vec<u32>,
    ) -> Result<Self> {
        let q = add.len();
        if q < 2 {
            return Err(Error::Structural(format!("field order {q} is below 2")));
        }
        if q > MAX_FIELD_ORDER {
            return Err(Error::Capacity(format!(
                "field order {q} exceeds {MAX_FIELD_ORDER}"
            )));
        }
        if mul.len() != q || labels.len() != q {
            return Err(Error::Structural(format!(
                "table sizes disagree: add {q}, mul {}, labels {}",
                mul.len(),
                labels.len()
            )));
        }
        let flatten = |name: &str, t: Vec<Vec<usize>>| -> Result<Vec<u16>> {
            let mut flat = Vec::with_capacity(q * q);
            for (i, row) in t.into_iter().enumerate() {
                if row.len() != q {
                    return Err(Error::Structural(format!(
                        "{name} row {i} has length {}, expected {q}",
                        row.len()
                    )));
                }
                for (j, v) in row.into_iter().enumerate() {
                    if v >= q {
                        return Err(Error::Structural(format!(
                            "{name}[{i}][{j}] = {v} out of range"
                        )));
                    }
                    flat.push(v as u16);
                }
            }
            Ok(flat)
        };
        let add = flatten("add", add)?;
        let mul = flatten("mul", mul)?;
        Ok(FieldTable {
            characteristic,
            degree,
            order: q,
            add,
            mul,
            labels,
            modulus,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    /// Additive inverse, found by scanning the addition row.
    pub fn neg(&self, a: usize) -> Option<usize> {
        (0..self.order).find(|&b| self.add(a, b) == 0)
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: usize) -> Option<usize> {
        (0..self.order).find(|&b| self.mul(a, b) == 1)
    }

    /// Coefficient vector (low degree first) of each element's representative.
    pub fn labels(&self) -> &[Vec<u32>] {
        &self.labels
    }

    /// Coefficients (low degree first) of the reducing polynomial, empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn add_table(&self) -> Vec<Vec<usize>> {
        self.rows(&self.add)
    }

    pub fn mul_table(&self) -> Vec<Vec<usize>> {
        self.rows(&self.mul)
    }

    fn rows(&self, flat: &[u16]) -> Vec<Vec<usize>> {
        flat.chunks(self.order)
            .map(|r| r.iter().map(|&v| v as usize).collect())
            .collect()
    }
}

/// Polynomials over GF(p) as coefficient vectors, low degree first.
mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem_monic(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let dm = m.len() - 1;
        let mut r = a.to_vec();
        while r.len() > dm {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - dm;
            if lead != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let sub = (lead as u64 * c as u64 % p as u64) as u32;
                    r[shift + i] = (r[shift + i] + p - sub) % p;
                }
            }
            r.pop();
        }
        trim(r)
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        trim(r.into_iter().map(|c| c as u32).collect())
    }

    /// All monic polynomials of exact degree `d`, in index order of their
    /// lower coefficients.
    pub fn monic_of_degree(d: usize, p: u32) -> impl Iterator<Item = Vec<u32>> {
        let count = (p as u64).pow(d as u32);
        (0..count).map(move |mut idx| {
            let mut c = Vec::with_capacity(d + 1);
            for _ in 0..d {
                c.push((idx % p as u64) as u32);
                idx /= p as u64;
            }
            c.push(1);
            c
        })
    }

    pub fn is_irreducible(m: &[u32], p: u32) -> bool {
        let k = m.len() - 1;
        (1..=k / 2).all(|d| monic_of_degree(d, p).all(|g| !rem_monic(m, &g, p).is_empty()))
    }
}

/// Lexicographically smallest monic irreducible of degree `k` over GF(p),
/// comparing coefficients from the constant term upward.
fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let k = k as usize;
    let count = (p as u64).pow(k as u32);
    for idx in 0..count {
        // c0 is the most significant digit of the scan counter.
        let mut c = vec![0u32; k + 1];
        let mut rest = idx;
        for i in (0..k).rev() {
            c[i] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        c[k] = 1;
        if poly::is_irreducible(&c, p) {
            return c;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over GF(p)")
}

/// Build GF(p^k).
pub fn gf(p: u64, k: u32) -> Result<FieldTable> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("p not prime: {p}")));
    }
    if k == 0 || k > MAX_DEGREE {
        return Err(Error::Capacity(format!(
            "extension degree {k} outside 1..={MAX_DEGREE}"
        )));
    }
    let q = p
        .checked_pow(k)
        .filter(|&q| q <= MAX_FIELD_ORDER as u64)
        .ok_or_else(|| Error::Capacity(format!("field order {p}^{k} exceeds {MAX_FIELD_ORDER}")))?
        as usize;
    let p = p as u32;
    let ku = k as usize;

    let labels: Vec<Vec<u32>> = (0..q)
        .map(|mut i| {
            (0..ku)
                .map(|_| {
                    let c = (i % p as usize) as u32;
                    i /= p as usize;
                    c
                })
                .collect()
        })
        .collect();
    let index_of = |coeffs: &[u32]| -> usize {
        coeffs
            .iter()
            .rev()
            .fold(0usize, |acc, &c| acc * p as usize + c as usize)
    };

    let modulus = if k == 1 {
        Vec::new()
    } else {
        smallest_irreducible(p, k)
    };

    let mut add = vec![0u16; q * q];
    let mut mul = vec![0u16; q * q];
    for a in 0..q {
        for b in 0..q {
            let sum: Vec<u32> = labels[a]
                .iter()
                .zip(&labels[b])
                .map(|(x, y)| (x + y) % p)
                .collect();
            add[a * q + b] = index_of(&sum) as u16;
        }
    }
    if k == 1 {
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = ((a * b) % q) as u16;
            }
        }
    } else {
        let trimmed: Vec<Vec<u32>> = labels.iter().map(|l| poly::trim(l.clone())).collect();
        for a in 0..q {
            for b in a..q {
                let prod = poly::rem_monic(&poly::mul(&trimmed[a], &trimmed[b], p), &modulus, p);
                let mut padded = prod;
                padded.resize(ku, 0);
                let idx = index_of(&padded) as u16;
                mul[a * q + b] = idx;
                mul[b * q + a] = idx;
            }
        }
    }

    Ok(FieldTable {
        characteristic: p,
        degree: k,
        order: q,
        add,
        mul,
        labels,
        modulus,
    })
}

/// Exhaustively check every field axiom on `f`'s tables.
pub fn verify_field(f: &FieldTable) -> AxiomReport {
    let q = f.order();
    let add = |a, b| f.add(a, b);
    let mul = |a, b| f.mul(a, b);
    let mut report = AxiomReport::new();

    let first_pair = |pred: &dyn Fn(usize, usize) -> bool| -> Option<[usize; 2]> {
        (0..q)
            .flat_map(|a| (0..q).map(move |b| [a, b]))
            .find(|&[a, b]| !pred(a, b))
    };
    let first_triple = |pred: &dyn Fn(usize, usize, usize) -> bool| -> Option<[usize; 3]> {
        for a in 0..q {
            for b in 0..q {
                for c in 0..q {
                    if !pred(a, b, c) {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    };
    let single = |pred: &dyn Fn(usize) -> bool, skip_zero: bool, reason| {
        (usize::from(skip_zero)..q)
            .find(|&a| !pred(a))
            .map(|a| Witness::new(&[a], reason))
    };

    report.record(
        "additive identity",
        "0 + x = x + 0 = x",
        single(&|x| add(0, x) == x && add(x, 0) == x, false, "0+x != x"),
    );
    report.record(
        "multiplicative identity",
        "1 * x = x * 1 = x",
        single(&|x| mul(1, x) == x && mul(x, 1) == x, false, "1*x != x"),
    );
    report.record(
        "additive associativity",
        "(x + y) + z = x + (y + z)",
        first_triple(&|a, b, c| add(add(a, b), c) == add(a, add(b, c)))
            .map(|t| Witness::new(&t, "lhs != rhs")),
    );
    report.record(
        "multiplicative associativity",
        "(x * y) * z = x * (y * z)",
        first_triple(&|a, b, c| mul(mul(a, b), c) == mul(a, mul(b, c)))
            .map(|t| Witness::new(&t, "lhs != rhs")),
    );
    report.record(
        "additive commutativity",
        "x + y = y + x",
        first_pair(&|a, b| add(a, b) == add(b, a)).map(|t| Witness::new(&t, "x+y != y+x")),
    );
    report.record(
        "multiplicative commutativity",
        "x * y = y * x",
        first_pair(&|a, b| mul(a, b) == mul(b, a)).map(|t| Witness::new(&t, "x*y != y*x")),
    );
    report.record(
        "additive inverse",
        "every x has -x with x + (-x) = 0",
        single(
            &|a| (0..q).any(|b| add(a, b) == 0),
            false,
            "no additive inverse",
        ),
    );
    report.record(
        "multiplicative inverse",
        "every nonzero x has x^-1 with x * x^-1 = 1",
        single(
            &|a| (0..q).any(|b| mul(a, b) == 1),
            true,
            "no multiplicative inverse",
        ),
    );
    report.record(
        "distributivity",
        "x * (y + z) = x*y + x*z and (y + z) * x = y*x + z*x",
        first_triple(&|a, b, c| {
            mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
                && mul(add(b, c), a) == add(mul(b, a), mul(c, a))
        })
        .map(|t| Witness::new(&t, "lhs != rhs")),
    );
    report.record(
        "zero absorption",
        "0 * x = x * 0 = 0",
        single(&|x| mul(0, x) == 0 && mul(x, 0) == 0, false, "0*x != 0"),
    );
    report
}
