use std::fmt::Write;

use stratkit::oracle::SweepReport;
use stratkit::ClassificationReport;

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn report(r: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "level: {}", r.level);
    let pairs: Vec<String> = r
        .decomposition_preorder
        .iter()
        .map(|(a, b)| format!("{a}<={b}"))
        .collect();
    let _ = writeln!(out, "decomposition preorder: {}", pairs.join(" "));
    let _ = writeln!(
        out,
        "alexandrov: {} (identity homeomorphism {}, continuous into preorder {})",
        yes(r.alexandrov.decomposition_space_alexandrov),
        yes(r.alexandrov.identity_homeomorphism),
        yes(r.alexandrov.pi_continuous_to_preorder)
    );
    let _ = writeln!(
        out,
        "poset-stratified: {} (some order {}, strata open in closed hull {})",
        yes(r.poset_stratified.decomposition_preorder),
        yes(r.poset_stratified.some_partial_order),
        yes(r.poset_stratified.strata_open_in_closed_hull)
    );
    let _ = writeln!(out, "locally finite: {}", yes(r.locally_finite));
    for (id, lc) in &r.locally_closed {
        let _ = writeln!(out, "locally closed {id}: {}", yes(*lc));
    }
    let _ = writeln!(
        out,
        "frontier condition: {} (closure is closed union {}, closure order {}, pi open {})",
        yes(r.frontier.frontier_condition),
        yes(r.frontier.closure_is_minimal_closed_union),
        yes(r.frontier.preorder_is_closure_order),
        yes(r.frontier.pi_open)
    );
    let _ = writeln!(
        out,
        "lower semicontinuous: {}",
        yes(r.semicontinuity.lower_semicontinuous())
    );
    let _ = writeln!(
        out,
        "upper semicontinuous: {}",
        yes(r.semicontinuity.upper_semicontinuous())
    );
    let _ = writeln!(out, "stratification: {}", yes(r.stratification));
    for reason in &r.reasons {
        let _ = writeln!(out, "reason: {reason}");
    }
    for (key, w) in &r.witnesses {
        let _ = writeln!(out, "witness {key}: {w}");
    }
    out
}

pub fn sweep(r: &SweepReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", r.summary());
    let _ = writeln!(
        out,
        "{} points: {} spaces x {} partitions, {} poset-stratified, {} stratifications",
        r.points, r.spaces, r.partitions, r.poset_stratified, r.stratifications
    );
    let width = r.propositions.keys().map(String::len).max().unwrap_or(0);
    for (name, t) in &r.propositions {
        let _ = writeln!(
            out,
            "  {name:<width$}  {:>7} checked  {:>7} passed  {:>3} failed",
            t.checked, t.passed, t.failed
        );
    }
    if let Some(c) = &r.counterexample {
        let _ = writeln!(
            out,
            "first counterexample: instance {} ({}): {}",
            c.instance, c.proposition, c.message
        );
        let _ = writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&c.decomposition).unwrap_or_default()
        );
    }
    out
}
