//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use stratkit::decomposition::{
    check_poset_stratified_wrt, classify, initial_order_check, is_stratification,
    refinement_never_open, theorem_a,
};
use stratkit::io::{fixture, Document};
use stratkit::oracle::{self, enumerate, exhaustive_verify, EnumerationKind};
use stratkit::order::{adjunction_roundtrips, singleton_locally_closed_check};
use stratkit::{Decomposition, FiniteSpace, Level, PointSet, Proset};

type Check = fn() -> Result<String, String>;

macro_rules! require {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn decomposition(name: &str) -> Decomposition {
    fixture(name)
        .unwrap()
        .document
        .into_decomposition()
        .unwrap()
}

fn sweep(n: usize, budget: Duration) -> Result<String, String> {
    let start = Instant::now();
    let report = exhaustive_verify(n).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected = [1, 1, 8, 145, 5325][n];
    require!(
        report.instances == expected,
        "{} instances, expected {expected}",
        report.instances
    );
    require!(report.failures == 0, "{:?}", report.counterexample);
    for group in [
        "alexandrov-equivalence",
        "poset-stratified-equivalence",
        "frontier-equivalence",
        "locally-closed-frontier",
        "semicontinuity-pairing",
    ] {
        let t = report.propositions[group];
        require!(
            t.checked == expected && t.passed == expected,
            "{group}: {t:?}"
        );
    }
    require!(elapsed < budget, "took {elapsed:?}, budget {budget:?}");
    Ok(format!(
        "{}, theorem B applied {} times, {elapsed:.2?}",
        report.summary(),
        report.propositions.get("theorem-b").map_or(0, |t| t.passed)
    ))
}

fn criterion_1() -> Result<String, String> {
    sweep(3, Duration::from_secs(1))
}

fn criterion_2() -> Result<String, String> {
    let posets = oracle::poset_rows(4).map_err(|e| e.to_string())?;
    require!(posets.len() == 219, "{} posets on 4 strata", posets.len());
    sweep(4, Duration::from_secs(60))
}

fn criterion_3() -> Result<String, String> {
    let pc = decomposition("pseudo_circle_4");
    let q = pc.decomposition_space();
    require!(
        q == FiniteSpace::indiscrete(&["1", "2"]).unwrap(),
        "quotient {q:?}"
    );
    let r = classify(&pc).map_err(|e| e.to_string())?;
    require!(
        r.locally_closed.values().all(|&b| b),
        "pseudo_circle_4 strata not locally closed"
    );
    require!(
        !r.poset_stratified.holds(),
        "pseudo_circle_4 poset-stratified"
    );
    require!(
        !r.frontier.frontier_condition,
        "pseudo_circle_4 frontier holds"
    );

    let line = decomposition("line_3");
    let r = classify(&line).map_err(|e| e.to_string())?;
    require!(
        r.level == Level::PosetStratified,
        "line_3 level {}",
        r.level
    );
    require!(
        r.decomposition_preorder == vec![("0".to_owned(), "1".to_owned())],
        "line_3 preorder {:?}",
        r.decomposition_preorder
    );
    require!(
        !r.frontier.pi_open && !r.stratification,
        "line_3 map open or stratified"
    );

    let quad = decomposition("quadrant_4");
    let r = classify(&quad).map_err(|e| e.to_string())?;
    require!(r.stratification, "quadrant_4 not a stratification");
    let diamond = fixture("diamond").unwrap().document.into_poset().unwrap();
    let pre = quad.decomposition_preorder().map_err(|e| e.to_string())?;
    require!(pre.same_relation(&diamond), "quadrant_4 preorder {pre:?}");
    let chain = fixture("chain_4").unwrap().document.into_poset().unwrap();
    let wrt = check_poset_stratified_wrt(&quad, &chain).map_err(|e| e.to_string())?;
    require!(wrt.continuous && !wrt.open, "chain refinement {wrt:?}");

    let two = decomposition("two_point_discrete");
    let orders = initial_order_check(&two, 4).map_err(|e| e.to_string())?;
    require!(
        orders.len() == 3,
        "{} orders on two_point_discrete",
        orders.len()
    );

    let Document::Symbolic(nat) = fixture("nat_usual").unwrap().document else {
        return Err("nat_usual is not symbolic".into());
    };
    let lf = nat.local_finiteness();
    require!(
        lf.locally_finite_poset && !lf.locally_finite_space,
        "nat_usual {lf:?}"
    );
    Ok("pseudo_circle_4, line_3, quadrant_4, two_point_discrete, nat_usual".into())
}

fn criterion_4() -> Result<String, String> {
    let prosets = enumerate(EnumerationKind::Preorders, 4).map_err(|e| e.to_string())?;
    let mut posets = 0;
    for doc in prosets.iter() {
        let Document::Proset(p) = doc else {
            return Err("enumeration yielded a non-proset".into());
        };
        let x = p.alexandrov_space();
        let r = adjunction_roundtrips(p, &x);
        require!(
            r.unit_identity && r.counit_homeomorphism,
            "adjunction fails on {p:?}"
        );
        // every singleton locally closed, tested directly
        let n = x.len();
        let singletons = (0..n).all(|i| {
            let s = PointSet::singleton(n, i);
            let cl = x.closure(&s);
            x.open_hull(&s).intersection(&cl) == s
        });
        let lemma = singleton_locally_closed_check(p).map_err(|e| e.to_string())?;
        require!(
            lemma == singletons && lemma == p.is_poset(),
            "singleton lemma fails on {p:?}"
        );
        posets += usize::from(lemma);
    }
    require!(
        prosets.len() == 355 && posets == 219,
        "{} prosets, {posets} posets",
        prosets.len()
    );
    Ok(format!("{} prosets, {posets} posets", prosets.len()))
}

fn criterion_5() -> Result<String, String> {
    let mut stratifications = 0;
    let mut refinements = 0;
    for n in 0..=4 {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        for rows in oracle::preorder_rows(n).map_err(|e| e.to_string())? {
            let pairs: Vec<(String, String)> = (0..n)
                .flat_map(|i| rows[i].iter().map(move |j| (i, j)))
                .map(|(i, j)| (names[i].clone(), names[j].clone()))
                .collect();
            let x = Proset::from_relation(&names, &pairs, false)
                .unwrap()
                .alexandrov_space();
            for labels in oracle::partitions(n).map_err(|e| e.to_string())? {
                let k = labels.iter().max().map_or(0, |m| m + 1);
                let ids: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
                let d = Decomposition::from_labels(x.clone(), &ids, &labels).unwrap();
                if !is_stratification(&d)
                    .map_err(|e| e.to_string())?
                    .is_stratification()
                {
                    continue;
                }
                stratifications += 1;
                let ps = theorem_a(&d).map_err(|e| e.to_string())?;
                let order = ps.order();
                let expected: BTreeSet<(String, String)> = (0..k)
                    .flat_map(|i| (0..k).map(move |j| (i, j)))
                    .filter(|&(i, j)| i != j && d.stratum(i).is_subset(&x.closure(d.stratum(j))))
                    .map(|(i, j)| (ids[i].clone(), ids[j].clone()))
                    .collect();
                let got: BTreeSet<(String, String)> = order.strict_pairs().into_iter().collect();
                require!(
                    got == expected,
                    "order {got:?} vs closure containment {expected:?}"
                );
                require!(order.is_poset(), "order not antisymmetric");
                refinements += refinement_never_open(&d).map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(format!(
        "{stratifications} stratifications, {refinements} strict refinements"
    ))
}

fn criterion_6() -> Result<String, String> {
    let count = |kind, n| {
        enumerate(kind, n)
            .map(|e| e.len())
            .map_err(|e| e.to_string())
    };
    use EnumerationKind::*;
    let got = [
        count(Preorders, 2)?,
        count(Preorders, 3)?,
        count(Preorders, 4)?,
        count(Posets, 3)?,
        count(Posets, 4)?,
        count(Partitions, 3)?,
        count(Partitions, 4)?,
    ];
    require!(got == [4, 29, 355, 19, 219, 5, 15], "counts {got:?}");
    for n in 0..=3usize {
        let mut preorders = 0;
        let mut posets = 0;
        for bits in 0u32..1 << (n * n) {
            let r = |i: usize, j: usize| bits >> (i * n + j) & 1 == 1;
            let refl = (0..n).all(|i| r(i, i));
            let trans =
                (0..n).all(|i| (0..n).all(|j| (0..n).all(|l| !(r(i, j) && r(j, l)) || r(i, l))));
            let anti = (0..n).all(|i| (0..n).all(|j| i == j || !(r(i, j) && r(j, i))));
            preorders += usize::from(refl && trans);
            posets += usize::from(refl && trans && anti);
        }
        let pre = oracle::preorder_rows(n).unwrap().len();
        let pos = oracle::poset_rows(n).unwrap().len();
        require!(
            preorders == pre && posets == pos,
            "n={n}: naive {preorders}/{posets}, enumerated {pre}/{pos}"
        );
    }
    Ok("preorders 4/29/355, posets 19/219, partitions 5/15; naive filter agrees for n <= 3".into())
}

fn workspace() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn stratkit(args: &[&str], stdin: Option<&[u8]>) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_stratkit"))
        .args(args)
        .current_dir(workspace())
        .env_remove("STRATKIT_MAX_POINTS")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn stratkit");
    let mut pipe = child.stdin.take().unwrap();
    if let Some(bytes) = stdin {
        pipe.write_all(bytes).unwrap();
    }
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn twice(args: &[&str], stdin: Option<&[u8]>) -> Result<Output, String> {
    let a = stratkit(args, stdin);
    let b = stratkit(args, stdin);
    require!(
        a.stdout == b.stdout && a.stderr == b.stderr && a.status.code() == b.status.code(),
        "`{}` is not deterministic",
        args.join(" ")
    );
    Ok(a)
}

fn criterion_7() -> Result<String, String> {
    let out = twice(
        &[
            "classify",
            "fixtures/line_3.json",
            "--expect",
            "stratification",
        ],
        None,
    )?;
    let text = String::from_utf8_lossy(&out.stdout);
    require!(
        out.status.code() == Some(1),
        "line_3 exit {:?}",
        out.status.code()
    );
    require!(
        text.contains("frontier condition fails"),
        "line_3 output: {text}"
    );

    let out = twice(&["verify", "--exhaustive", "--points", "3"], None)?;
    let text = String::from_utf8_lossy(&out.stdout);
    require!(
        out.status.code() == Some(0),
        "verify exit {:?}",
        out.status.code()
    );
    require!(
        text.contains("145 instances, 0 failures"),
        "verify output: {text}"
    );

    let shown = twice(&["fixture", "show", "quadrant_4"], None)?;
    require!(shown.status.success(), "fixture show failed");
    let out = twice(
        &["classify", "-", "--expect", "stratification"],
        Some(&shown.stdout),
    )?;
    require!(
        out.status.code() == Some(0),
        "quadrant_4 exit {:?}",
        out.status.code()
    );

    for args in [
        vec!["check", "fixtures/pseudo_circle_4.json", "--format", "json"],
        vec!["gen", "--kind", "partition", "--n", "6", "--seed", "11"],
        vec!["export-dot", "fixtures/quadrant_4.json"],
    ] {
        let out = twice(&args, None)?;
        require!(out.status.success(), "`{}` failed", args.join(" "));
    }

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"kind\": \"decomposition\",").map_err(|e| e.to_string())?;
    let out = twice(&["check", bad.to_str().unwrap()], None)?;
    require!(
        out.status.code() == Some(2),
        "malformed input exit {:?}",
        out.status.code()
    );
    Ok("exit codes 1/0/0 on the fixture scenarios, 2 on bad input; outputs byte-identical".into())
}

fn main() {
    let criteria: [(&str, Check); 7] = [
        ("exhaustive sweep n=3 under 1 s", criterion_1),
        (
            "exhaustive sweep n=4 with theorem B under 60 s",
            criterion_2,
        ),
        ("fixture verdicts", criterion_3),
        ("adjunction and singleton lemma on 4 elements", criterion_4),
        ("theorem A round trip and refinements", criterion_5),
        ("enumeration counts", criterion_6),
        ("CLI determinism and exit codes", criterion_7),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match result {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
