#![allow(dead_code)]

use std::path::PathBuf;

use krasner::construct::{from_field, hyperfield_of_order, massouros, quotient, subgroup_closure};
use krasner::enumerate::{enumerate_hyperfields, SearchOptions};
use krasner::{gf, ElementSet, Hyperfield, HyperfieldCandidate};

pub fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

pub fn set(xs: &[usize]) -> ElementSet {
    xs.iter().copied().collect()
}

/// The 5-element example over `0, 1, a, b, c`, typed in cell by cell.
pub fn five_element() -> HyperfieldCandidate {
    let full = set(&[0, 1, 2, 3, 4]);
    let add = vec![
        vec![set(&[0]), set(&[1]), set(&[2]), set(&[3]), set(&[4])],
        vec![set(&[1]), set(&[1]), set(&[1, 2]), full, set(&[1, 4])],
        vec![set(&[2]), set(&[1, 2]), set(&[2]), set(&[2, 3]), full],
        vec![set(&[3]), full, set(&[2, 3]), set(&[3]), set(&[3, 4])],
        vec![set(&[4]), set(&[1, 4]), full, set(&[3, 4]), set(&[4])],
    ];
    let mul = vec![
        vec![0, 0, 0, 0, 0],
        vec![0, 1, 2, 3, 4],
        vec![0, 2, 3, 4, 1],
        vec![0, 3, 4, 1, 2],
        vec![0, 4, 1, 2, 3],
    ];
    HyperfieldCandidate::new(add, mul).unwrap()
}

/// All permutations of `items`, in lexicographic order of positions.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Tries every bijection fixing 0.
pub fn brute_isomorphic(a: &HyperfieldCandidate, b: &HyperfieldCandidate) -> bool {
    let n = a.order();
    if n != b.order() {
        return false;
    }
    let rest: Vec<usize> = (1..n).collect();
    permutations(&rest).into_iter().any(|p| {
        let mut f = vec![0];
        f.extend(p);
        (0..n).all(|x| {
            (0..n).all(|y| {
                f[a.mul(x, y)] == b.mul(f[x], f[y])
                    && a.sum(x, y).map(|z| f[z]) == b.sum(f[x], f[y])
            })
        })
    })
}

/// x ⊕ y = x · (1 ⊕ x⁻¹y) for every x ≠ 0 and every y.
pub fn one_row_holds(h: &Hyperfield) -> bool {
    let n = h.order();
    (1..n).all(|x| {
        let xi = h.inverse(x).unwrap();
        (0..n).all(|y| h.sum(x, y) == h.scale(x, h.sum(1, h.mul(xi, y))))
    })
}

/// Verified hyperfields with normalized tables of order `n`, found by
/// trying every table: free products among the non-unit nonzero elements
/// and free hyperadd cells off the zero row and column.
pub fn naive_hyperfields(n: usize) -> Vec<Hyperfield> {
    assert!(n <= 3, "naive search is only feasible for tiny orders");
    let free_mul: Vec<(usize, usize)> = (2..n).flat_map(|a| (2..n).map(move |b| (a, b))).collect();
    let free_add: Vec<(usize, usize)> = (1..n).flat_map(|a| (1..n).map(move |b| (a, b))).collect();
    let subsets = (1u64 << n) - 1;
    let mut out = Vec::new();
    for mut m in 0..(n as u64).pow(free_mul.len() as u32) {
        let mut mul: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| match (a, b) {
                        (1, b) => b,
                        (a, 1) => a,
                        _ => 0,
                    })
                    .collect()
            })
            .collect();
        for &(a, b) in &free_mul {
            mul[a][b] = (m % n as u64) as usize;
            m /= n as u64;
        }
        for mut s in 0..subsets.pow(free_add.len() as u32) {
            let mut add: Vec<Vec<ElementSet>> = (0..n)
                .map(|a| (0..n).map(|b| ElementSet::singleton(a.max(b))).collect())
                .collect();
            for &(a, b) in &free_add {
                add[a][b] = ElementSet::from_mask(s % subsets + 1);
                s /= subsets;
            }
            let c = HyperfieldCandidate::new(add, mul.clone()).unwrap();
            if let Ok(h) = Hyperfield::try_from(c) {
                out.push(h);
            }
        }
    }
    out
}

/// One representative per class, deduplicated by brute force.
pub fn brute_classes(hs: Vec<Hyperfield>) -> Vec<Hyperfield> {
    let mut reps: Vec<Hyperfield> = Vec::new();
    for h in hs {
        if !reps.iter().any(|r| brute_isomorphic(r, &h)) {
            reps.push(h);
        }
    }
    reps
}

/// Every prime power up to 11 as `(p, k)`.
pub const SMALL_FIELDS: [(u64, u32); 8] = [
    (2, 1),
    (3, 1),
    (2, 2),
    (5, 1),
    (7, 1),
    (2, 3),
    (3, 2),
    (11, 1),
];

/// Quotients of GF(q) by every subgroup of GF(q)*, q ≤ 11.
pub fn all_small_quotients() -> Vec<(String, Hyperfield)> {
    let mut out = Vec::new();
    for (p, k) in SMALL_FIELDS {
        let f = gf(p, k).unwrap();
        let q = f.order();
        let mut seen = Vec::new();
        for g in 1..q {
            let sub = subgroup_closure(&f, &[g]).unwrap();
            let mut elems = sub.elements().to_vec();
            elems.sort_unstable();
            // GF(q)* is cyclic, so every subgroup is generated by one element.
            if seen.contains(&elems) {
                continue;
            }
            seen.push(elems);
            out.push((format!("GF({q})/<{g}>"), quotient(&f, &sub).unwrap()));
        }
    }
    out
}

/// A broad sample of verified hyperfields from every construction path.
pub fn suite_hyperfields() -> Vec<(String, Hyperfield)> {
    let mut out = Vec::new();
    for (p, k) in SMALL_FIELDS {
        let f = gf(p, k).unwrap();
        out.push((format!("field GF({})", f.order()), from_field(&f).unwrap()));
        out.push((
            format!("massouros GF({})", f.order()),
            massouros(&f).unwrap(),
        ));
    }
    out.extend(all_small_quotients());
    for n in 2..=30 {
        out.push((
            format!("synthesized {n}"),
            hyperfield_of_order(n).unwrap().hyperfield,
        ));
    }
    for n in 2..=5 {
        let e = enumerate_hyperfields(n, &SearchOptions::default()).unwrap();
        for (i, h) in e.hyperfields().enumerate() {
            out.push((format!("enumerated {n}#{i}"), h.clone()));
        }
    }
    out.push((
        "five-element example".into(),
        Hyperfield::try_from(five_element()).unwrap(),
    ));
    out
}
