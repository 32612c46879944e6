//! Acceptance criteria, one `[PASS]`/`[FAIL]` line each. Runs without the
//! libtest harness so the lines always reach the terminal.

mod common;

use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use krasner::construct::{massouros, product};
use krasner::enumerate::{enumerate_hyperfields, SearchOptions};
use krasner::io_format::{parse_document, render_document, to_document};
use krasner::iso::{are_isomorphic, find_isomorphism};
use krasner::{gf, Error, Hyperfield, ValidationCode};

use common::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn krasner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_krasner"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ac1_golden_verification() -> Outcome {
    let start = Instant::now();
    let c = five_element();
    let report = c.verify();
    let elapsed = start.elapsed();
    check(report.outcomes().len() == 10, "expected 10 axiom checks")?;
    check(
        report.passed(),
        format!("five-element example rejected:\n{report}"),
    )?;
    check(
        elapsed < Duration::from_millis(100),
        format!("took {elapsed:?}"),
    )?;

    let text = fs::read_to_string(golden("five_element.json")).unwrap();
    let doc = parse_document(&text).map_err(|e| e.to_string())?;
    check(
        doc.to_candidate().unwrap() == c,
        "golden file differs from the reference tables",
    )?;

    // 1 ⊕ a := {1} on both sides.
    let mut rows = c.hyperadd_rows();
    rows[1][2] = set(&[1]);
    rows[2][1] = set(&[1]);
    let mutated = krasner::HyperfieldCandidate::new(rows, c.mul_rows()).unwrap();
    let report = mutated.verify();
    let first = report.first_failure().ok_or("mutation not detected")?;
    check(first.witness.is_some(), "failure without witness")?;
    Ok(format!(
        "10/10 axioms in {elapsed:?}; mutation caught: {first}"
    ))
}

fn ac2_existence() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let start = Instant::now();
    for n in 2..=30 {
        let path = dir.path().join(format!("{n}.json"));
        let out = krasner(&[
            "construct",
            "--order",
            &n.to_string(),
            "--out",
            path.to_str().unwrap(),
        ]);
        check(
            out.status.code() == Some(0),
            format!("construct --order {n} exited {:?}", out.status),
        )?;
        let doc = parse_document(&fs::read_to_string(&path).unwrap()).map_err(|e| e.to_string())?;
        check(
            doc.order == n,
            format!("order {n} document has {} elements", doc.order),
        )?;
        let report = doc.to_candidate().unwrap().verify();
        check(
            report.passed(),
            format!("order {n} does not re-verify:\n{report}"),
        )?;
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:?}"),
    )?;
    Ok(format!(
        "orders 2..=30 built and re-verified in {elapsed:?}"
    ))
}

fn ac3_counts() -> Outcome {
    let mut notes = Vec::new();
    for (n, expected, limit) in [(2, 2, 10), (3, 5, 10), (4, 7, 10), (5, 27, 300)] {
        let start = Instant::now();
        let e = enumerate_hyperfields(n, &SearchOptions::default()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        check(
            e.count() == expected,
            format!("order {n}: {} classes, expected {expected}", e.count()),
        )?;
        check(
            elapsed < Duration::from_secs(limit),
            format!("order {n} took {elapsed:?}"),
        )?;
        notes.push(format!("{n}->{} ({elapsed:.1?})", e.count()));
    }
    let opts = SearchOptions {
        budget: Some(Duration::from_secs(3600)),
        ..SearchOptions::default()
    };
    let start = Instant::now();
    match enumerate_hyperfields(6, &opts) {
        Ok(e) => {
            check(
                e.count() == 16,
                format!("order 6: {} classes, expected 16", e.count()),
            )?;
            notes.push(format!("6->16 ({:.1?})", start.elapsed()));
        }
        Err(Error::Budget { .. }) => notes.push("6: budget exceeded".into()),
        Err(e) => return Err(e.to_string()),
    }
    let out = krasner(&["enumerate", "--order", "5", "--count-only"]);
    check(
        String::from_utf8_lossy(&out.stdout) == "27\n",
        "CLI count for order 5",
    )?;
    Ok(notes.join(", "))
}

fn ac4_oracle() -> Outcome {
    let mut notes = Vec::new();
    for n in [2, 3] {
        let naive = naive_hyperfields(n);
        let survivors = naive.len();
        let naive = brute_classes(naive);
        let pruned = enumerate_hyperfields(n, &SearchOptions::default()).unwrap();
        check(
            naive.len() == pruned.count(),
            format!(
                "order {n}: naive {} vs pruned {}",
                naive.len(),
                pruned.count()
            ),
        )?;
        for h in pruned.hyperfields() {
            let hits = naive.iter().filter(|r| brute_isomorphic(r, h)).count();
            check(
                hits == 1,
                format!("order {n}: enumerated class matches {hits} naive classes"),
            )?;
        }
        notes.push(format!(
            "{n}: {survivors} tables -> {} classes",
            naive.len()
        ));
    }
    Ok(notes.join(", "))
}

fn ac5a_massouros() -> Outcome {
    for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)] {
        let h = massouros(&gf(p, k).unwrap()).map_err(|e| e.to_string())?;
        check(
            h.candidate().verify().passed(),
            format!("massouros GF({p}^{k})"),
        )?;
    }
    Ok("field orders 2,3,4,5,7,8,9".into())
}

fn ac5b_quotient() -> Outcome {
    let qs = all_small_quotients();
    for (name, h) in &qs {
        check(h.candidate().verify().passed(), name.clone())?;
    }
    Ok(format!("{} subgroup quotients for q <= 11", qs.len()))
}

fn construction_outputs() -> Vec<(String, Hyperfield)> {
    let mut out: Vec<(String, Hyperfield)> =
        [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
            .into_iter()
            .map(|(p, k)| {
                (
                    format!("M(GF({p}^{k}))"),
                    massouros(&gf(p, k).unwrap()).unwrap(),
                )
            })
            .collect();
    out.extend(all_small_quotients());
    out
}

fn ac5c_product() -> Outcome {
    let outputs = construction_outputs();
    let (mut pairs, mut failed) = (0, Vec::new());
    for (na, a) in &outputs {
        for (nb, b) in &outputs {
            if a.order() * b.order() > 36 {
                continue;
            }
            pairs += 1;
            if let Err(e) = product(a, b) {
                failed.push(format!("{na} x {nb}: {e}"));
            }
        }
    }
    if failed.is_empty() {
        Ok(format!("{pairs} products verify"))
    } else {
        Err(format!(
            "{}/{pairs} products fail; first: {}",
            failed.len(),
            failed[0]
        ))
    }
}

fn ac5d_classified() -> Outcome {
    let classes: Vec<_> = (2..=5)
        .map(|n| enumerate_hyperfields(n, &SearchOptions::default()).unwrap())
        .collect();
    let mut checked = 0;
    for (name, h) in construction_outputs() {
        if h.order() > 5 {
            continue;
        }
        let e = &classes[h.order() - 2];
        check(
            e.hyperfields().any(|c| are_isomorphic(&h, c).is_some()),
            format!("{name} unclassified"),
        )?;
        checked += 1;
    }
    Ok(format!("{checked} verified outputs of order <= 5 matched"))
}

fn ac6_one_row() -> Outcome {
    let all = suite_hyperfields();
    for (name, h) in &all {
        check(one_row_holds(h), format!("{name} breaks x⊕y = x·(1⊕x⁻¹y)"))?;
    }
    Ok(format!("{} instances", all.len()))
}

fn ac7_iso() -> Outcome {
    let mut pool: Vec<Hyperfield> = Vec::new();
    for n in 2..=5 {
        let e = enumerate_hyperfields(n, &SearchOptions::default()).unwrap();
        for h in e.hyperfields() {
            pool.push(h.clone());
            let mut perm: Vec<usize> = (0..n).collect();
            perm[2..].reverse();
            pool.push(h.relabel(&perm).unwrap());
        }
    }
    let mut pairs = 0;
    let mut positive = 0;
    for a in &pool {
        for b in pool.iter().filter(|b| b.order() == a.order()) {
            pairs += 1;
            let fast = are_isomorphic(a, b);
            if let Some(w) = &fast {
                check(w.preserves(a, b), "witness fails exhaustive re-check")?;
                positive += 1;
            }
            check(
                fast.is_some() == brute_isomorphic(a, b),
                "verdict disagrees with brute force",
            )?;
            check(
                find_isomorphism(a, b).is_some() == fast.is_some(),
                "candidate-level search disagrees",
            )?;
        }
    }
    Ok(format!("{pairs} pairs, {positive} isomorphic, all agree"))
}

fn ac8_serialization() -> Outcome {
    let all = suite_hyperfields();
    for (name, h) in &all {
        let text = render_document(&to_document(h, None, Some(name.clone())));
        let doc = parse_document(&text).map_err(|e| format!("{name}: {e}"))?;
        check(
            doc.to_candidate().unwrap() == *h.candidate(),
            format!("{name} does not round-trip"),
        )?;
        check(
            render_document(&doc) == text,
            format!("{name} re-renders differently"),
        )?;
    }
    let good = fs::read_to_string(golden("krasner_order2.json")).unwrap();
    let cases: [(&str, String, Option<ValidationCode>); 5] = [
        ("malformed", good[..good.len() / 2].to_string(), None),
        (
            "dimension",
            good.replace("[0, 1]\n", "[0, 1, 1]\n"),
            Some(ValidationCode::Dimension),
        ),
        (
            "range",
            good.replace("[[1], [0, 1]]", "[[1], [0, 7]]"),
            Some(ValidationCode::Range),
        ),
        (
            "empty cell",
            good.replace("[[1], [0, 1]]", "[[1], []]"),
            Some(ValidationCode::EmptyCell),
        ),
        (
            "identity",
            good.replace("[[0], [1]],", "[[0], [0]],"),
            Some(ValidationCode::Identity),
        ),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (label, text, code) in cases {
        check(text != good, format!("{label}: crafted file unchanged"))?;
        match (parse_document(&text), code) {
            (Err(Error::Parse { .. }), None) => {}
            (Err(Error::Validation { code: got, .. }), Some(want)) if got == want => {}
            (other, _) => return Err(format!("{label}: got {other:?}")),
        }
        let path = dir.path().join("bad.json");
        fs::write(&path, &text).unwrap();
        let out = krasner(&["verify", path.to_str().unwrap()]);
        check(
            out.status.code() == Some(2),
            format!("{label}: verify exited {:?}", out.status),
        )?;
    }
    Ok(format!("{} round-trips, 5 rejection classes", all.len()))
}

fn dir_contents(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

fn ac9_determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let t = |name: &str| tmp.path().join(name).to_string_lossy().into_owned();
    let five = golden("five_element.json").to_string_lossy().into_owned();
    let two = golden("krasner_order2.json").to_string_lossy().into_owned();
    let commands: Vec<Vec<String>> = vec![
        vec!["construct".into(), "--order".into(), "12".into()],
        vec![
            "construct".into(),
            "--method".into(),
            "quotient".into(),
            "--field".into(),
            "7,1".into(),
            "--gens".into(),
            "6".into(),
        ],
        vec!["verify".into(), "--report".into(), five.clone()],
        vec!["show".into(), five.clone()],
        vec!["iso".into(), five.clone(), five.clone()],
        vec!["iso".into(), two.clone(), two],
        vec!["enumerate".into(), "--order".into(), "4".into()],
    ];
    for args in &commands {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, b) = (krasner(&args), krasner(&args));
        check(
            a.stdout == b.stdout && a.stderr == b.stderr && a.status == b.status,
            format!("{args:?} differs between runs"),
        )?;
    }
    let mut reference = None;
    for jobs in ["1", "2", "4", "1"] {
        let dir = t(&format!("enum-j{jobs}-{}", reference.is_some()));
        let out = krasner(&["enumerate", "--order", "5", "--jobs", jobs, "--out", &dir]);
        check(out.status.code() == Some(0), "enumerate failed")?;
        let got = (out.stdout, dir_contents(Path::new(&dir)));
        match &reference {
            None => reference = Some(got),
            Some(r) => check(*r == got, format!("--jobs {jobs} output differs"))?,
        }
    }
    let files = reference.unwrap().1.len();
    Ok(format!(
        "{} commands twice, order-5 archive ({files} files) stable across --jobs 1/2/4",
        commands.len()
    ))
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "AC1",
            "golden 5-element verification",
            ac1_golden_verification,
        ),
        ("AC2", "existence for every order 2..=30", ac2_existence),
        ("AC3", "classification counts", ac3_counts),
        ("AC4", "naive oracle equivalence", ac4_oracle),
        ("AC5a", "massouros verifies", ac5a_massouros),
        ("AC5b", "quotients verify", ac5b_quotient),
        ("AC5c", "products verify", ac5c_product),
        ("AC5d", "small outputs are classified", ac5d_classified),
        ("AC6", "one-row reconstruction", ac6_one_row),
        ("AC7", "isomorphism soundness/completeness", ac7_iso),
        ("AC8", "serialization", ac8_serialization),
        ("AC9", "determinism", ac9_determinism),
    ];
    let default_hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (id, title, run) in criteria {
        let result = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(format!(
                "panicked: {:?}",
                p.downcast_ref::<String>()
                    .map(String::as_str)
                    .or(p.downcast_ref::<&str>().copied())
            ))
        });
        match result {
            Ok(detail) => println!("[PASS] {id} {title}: {detail}"),
            Err(detail) => {
                failures += 1;
                println!("[FAIL] {id} {title}: {detail}");
            }
        }
    }
    panic::set_hook(default_hook);
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
