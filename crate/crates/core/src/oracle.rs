//! Brute-force enumeration of small labeled structures and the exhaustive
//! sweep that checks every equivalence and theorem on them.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::PointSet;
use crate::decomposition::{
    alexandrov_equivalences, coarsen, frontier_equivalences, initial_order_check,
    is_stratification, poset_stratified_equivalences, refinement_never_open, semicontinuity,
    theorem_a, theorem_b, Decomposition, PosetStratification,
};
use crate::error::{ensure, Error, Result};
use crate::io::{to_value, Document};
use crate::order::{adjunction_roundtrips, singleton_locally_closed_check, Poset, Proset};
use crate::topology::{final_topology, FamilyMember, FiniteSpace};

/// Default largest size for order enumeration and the sweep.
pub const ORDER_BOUND: usize = 4;
/// Largest size the order enumeration accepts even when overridden.
pub const ORDER_HARD_LIMIT: usize = 5;
/// Default largest size for partition enumeration.
pub const PARTITION_BOUND: usize = 6;
/// Largest size the partition enumeration accepts even when overridden.
pub const PARTITION_HARD_LIMIT: usize = 10;

const PREORDER_COUNTS: [usize; 6] = [1, 1, 4, 29, 355, 6942];
const POSET_COUNTS: [usize; 6] = [1, 1, 3, 19, 219, 4231];
const PARTITION_COUNTS: [usize; 11] = [1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975];

type Rows = Vec<Vec<PointSet>>;

static PREORDERS: [OnceLock<Rows>; ORDER_HARD_LIMIT + 1] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];
static POSETS: [OnceLock<Rows>; ORDER_HARD_LIMIT + 1] = [
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
    OnceLock::new(),
];

fn check_bound(what: &'static str, n: usize, limit: usize, hard: usize) -> Result<()> {
    let limit = limit.min(hard);
    if n > limit {
        return Err(Error::TooLarge { what, n, limit });
    }
    Ok(())
}

/// Every reflexive transitive relation on `0..n` as up-set rows, ordered by
/// the bitmask of off-diagonal pairs taken row by row.
fn build_preorders(n: usize) -> Rows {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut rows = [0u64; ORDER_HARD_LIMIT];
    for mask in 0u64..(1 << off.len()) {
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = 1 << i;
        }
        for (b, &(i, j)) in off.iter().enumerate() {
            if mask >> b & 1 == 1 {
                rows[i] |= 1 << j;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n)
                .filter(|&j| rows[i] >> j & 1 == 1)
                .all(|j| rows[j] & !rows[i] == 0)
        });
        if transitive {
            out.push((0..n).map(|i| PointSet::from_mask(n, rows[i])).collect());
        }
    }
    out
}

fn cached(
    cache: &'static [OnceLock<Rows>; ORDER_HARD_LIMIT + 1],
    counts: &[usize],
    what: &'static str,
    n: usize,
    limit: usize,
    build: fn(usize) -> Rows,
) -> Result<&'static [Vec<PointSet>]> {
    check_bound(what, n, limit, ORDER_HARD_LIMIT)?;
    let rows = cache[n].get_or_init(|| build(n));
    ensure(rows.len() == counts[n], || {
        format!(
            "{what} on {n} elements: found {}, expected {}",
            rows.len(),
            counts[n]
        )
    })?;
    Ok(rows)
}

pub fn preorder_rows(n: usize) -> Result<&'static [Vec<PointSet>]> {
    preorder_rows_with_limit(n, ORDER_BOUND)
}

pub fn preorder_rows_with_limit(n: usize, limit: usize) -> Result<&'static [Vec<PointSet>]> {
    cached(
        &PREORDERS,
        &PREORDER_COUNTS,
        "preorder enumeration",
        n,
        limit,
        build_preorders,
    )
}

/// Up-set rows of every partial order on `0..n`, in preorder order.
pub fn poset_rows(n: usize) -> Result<&'static [Vec<PointSet>]> {
    poset_rows_with_limit(n, ORDER_BOUND)
}

pub fn poset_rows_with_limit(n: usize, limit: usize) -> Result<&'static [Vec<PointSet>]> {
    cached(&POSETS, &POSET_COUNTS, "poset enumeration", n, limit, |n| {
        build_preorders(n)
            .into_iter()
            .filter(|rows| (0..n).all(|i| rows[i].iter().all(|j| j == i || !rows[j].contains(i))))
            .collect()
    })
}

/// Restricted growth strings of length `n`: label `i` first appears after
/// labels `0..i`. One string per set partition, in lexicographic order.
pub fn partitions(n: usize) -> Result<Vec<Vec<usize>>> {
    partitions_with_limit(n, PARTITION_BOUND)
}

pub fn partitions_with_limit(n: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
    check_bound("partition enumeration", n, limit, PARTITION_HARD_LIMIT)?;
    fn extend(prefix: &mut Vec<usize>, used: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for label in 0..=used {
            prefix.push(label);
            extend(prefix, used.max(label + 1), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        extend(&mut Vec::with_capacity(n), 0, n, &mut out);
    }
    ensure(out.len() == PARTITION_COUNTS[n], || {
        format!(
            "partitions of {n}: found {}, expected {}",
            out.len(),
            PARTITION_COUNTS[n]
        )
    })?;
    Ok(out)
}

fn element_names(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

fn stratum_ids(k: usize) -> Vec<String> {
    (0..k).map(|i| format!("s{i}")).collect()
}

fn proset_from_rows(names: &[String], rows: &[PointSet]) -> Proset {
    Proset::from_up_sets(names, rows.to_vec()).expect("generated names are distinct")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationKind {
    Preorders,
    Posets,
    Partitions,
}

impl FromStr for EnumerationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "preorders" => Ok(EnumerationKind::Preorders),
            "posets" => Ok(EnumerationKind::Posets),
            "partitions" => Ok(EnumerationKind::Partitions),
            other => Err(Error::InvalidParams(format!(
                "unknown enumeration `{other}`"
            ))),
        }
    }
}

/// Every labeled structure of one kind on `0..n`. Partitions are given as
/// decompositions of the discrete space with strata `s0`, `s1`, ….
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub kind: EnumerationKind,
    pub n: usize,
    pub items: Vec<Document>,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&Document> {
        self.items.get(index)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Document> {
        self.items.iter()
    }
}

pub fn enumerate(kind: EnumerationKind, n: usize) -> Result<Enumeration> {
    let names = element_names(n);
    let items = match kind {
        EnumerationKind::Preorders => preorder_rows(n)?
            .iter()
            .map(|rows| Document::Proset(proset_from_rows(&names, rows)))
            .collect(),
        EnumerationKind::Posets => poset_rows(n)?
            .iter()
            .map(|rows| {
                Document::Poset(Poset::new(proset_from_rows(&names, rows)).expect("antisymmetric"))
            })
            .collect(),
        EnumerationKind::Partitions => {
            let space = FiniteSpace::discrete(&names)?;
            partitions(n)?
                .into_iter()
                .map(|labels| {
                    let k = labels.iter().max().map_or(0, |m| m + 1);
                    Decomposition::from_labels(space.clone(), &stratum_ids(k), &labels)
                        .map(Document::Decomposition)
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(Enumeration { kind, n, items })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionTally {
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub instance: usize,
    pub proposition: String,
    pub message: String,
    /// The failing decomposition as a document.
    pub decomposition: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub points: usize,
    pub spaces: usize,
    pub partitions: usize,
    pub instances: usize,
    pub stratifications: usize,
    pub poset_stratified: usize,
    pub propositions: BTreeMap<String, PropositionTally>,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn summary(&self) -> String {
        format!("{} instances, {} failures", self.instances, self.failures)
    }
}

#[derive(Default)]
struct InstanceOutcome {
    checks: Vec<(&'static str, Result<()>)>,
    stratification: bool,
    poset_stratified: bool,
}

impl InstanceOutcome {
    fn record(&mut self, name: &'static str, result: Result<()>) {
        self.checks.push((name, result));
    }
}

/// Checks that only depend on the space.
fn check_space(p: &Proset, x: &FiniteSpace, out: &mut InstanceOutcome) {
    out.record("adjunction", {
        let r = adjunction_roundtrips(p, x);
        ensure(r.unit_identity && r.counit_homeomorphism, || {
            format!("{r:?}")
        })
    });
    out.record(
        "singleton-locally-closed",
        singleton_locally_closed_check(p).map(|_| ()),
    );
    out.record("open-cover-final-topology", {
        let covers: Vec<(FiniteSpace, Vec<usize>)> = (0..x.len())
            .map(|i| {
                let u = x.min_open(i);
                (x.subspace(u), u.iter().collect())
            })
            .collect();
        let family: Vec<FamilyMember<'_>> = covers.iter().map(|(s, a)| (s, a.as_slice())).collect();
        final_topology(x.points(), &family, ORDER_HARD_LIMIT * 2).and_then(|f| {
            ensure(f == *x, || {
                "open cover does not recover the topology".into()
            })
        })
    });
}

/// Decompositions induced on each minimal open neighborhood: the stratum
/// inclusion is monotone for the decomposition preorders, and each induced
/// decomposition passes its own Alexandrov checks.
fn check_induced(d: &Decomposition) -> Result<()> {
    let x = d.space();
    let pre = d.decomposition_preorder()?;
    for i in 0..x.len() {
        let u = x.min_open(i);
        let sub = x.subspace(u);
        let members: Vec<usize> = u.iter().collect();
        let mut meets: Vec<usize> = members.iter().map(|&m| d.labels()[m]).collect();
        meets.sort_unstable();
        meets.dedup();
        let ids: Vec<String> = meets.iter().map(|&s| d.stratum_ids()[s].clone()).collect();
        let labels: Vec<usize> = (0..sub.len())
            .map(|y| {
                let original = x.index_of(sub.point_name(y)).expect("subspace point");
                meets
                    .binary_search(&d.labels()[original])
                    .expect("stratum meets")
            })
            .collect();
        let induced = Decomposition::from_labels(sub, &ids, &labels)?;
        let induced_pre = induced.decomposition_preorder()?;
        for a in 0..ids.len() {
            for b in 0..ids.len() {
                if induced_pre.leq(a, b) {
                    ensure(pre.leq(meets[a], meets[b]), || {
                        format!(
                            "on the neighborhood of `{}`, `{}` <= `{}` is not preserved",
                            x.point_name(i),
                            ids[a],
                            ids[b]
                        )
                    })?;
                }
            }
        }
        ensure(alexandrov_equivalences(&induced)?.holds(), || {
            format!(
                "induced decomposition on the neighborhood of `{}` is not Alexandrov",
                x.point_name(i)
            )
        })?;
    }
    Ok(())
}

fn check_decomposition(d: &Decomposition, order_limit: usize, out: &mut InstanceOutcome) {
    let k = d.stratum_count();
    out.record(
        "alexandrov-equivalence",
        alexandrov_equivalences(d).and_then(|a| {
            ensure(a.holds(), || {
                "finite decomposition is not Alexandrov".into()
            })
        }),
    );
    let frontier = frontier_equivalences(d);
    let poset_strat = poset_stratified_equivalences(d);
    let verdict = is_stratification(d);
    out.record(
        "frontier-equivalence",
        frontier.as_ref().map(|_| ()).map_err(Clone::clone),
    );
    out.record(
        "poset-stratified-equivalence",
        poset_strat.as_ref().map(|_| ()).map_err(Clone::clone),
    );
    out.record(
        "semicontinuity-pairing",
        semicontinuity(d).and_then(|s| {
            let pi_open = frontier.as_ref().map(|f| f.pi_open).unwrap_or(s.pi_open);
            ensure(s.pi_open == pi_open, || "openness of π differs".into())
        }),
    );
    out.record("locally-closed-frontier", {
        match (&verdict, &frontier, &poset_strat) {
            (Ok(v), Ok(f), Ok(ps)) => {
                let lc = v.locally_closed.values().all(|&b| b);
                let left = lc && f.frontier_condition;
                let right = ps.holds() && f.pi_open;
                ensure(left == right, || {
                    format!(
                        "locally closed with frontier {left}, poset-stratified and open {right}"
                    )
                })
                .and_then(|_| {
                    if !left {
                        return Ok(());
                    }
                    let pre = d.decomposition_preorder()?;
                    ensure(pre.is_poset() && d.continuous_into(pre.up_sets()), || {
                        "decomposition preorder is not a partial order making π continuous".into()
                    })
                })
            }
            (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => Err(e.clone()),
        }
    });
    out.record("quotient-saturation-vs-filter", {
        d.decomposition_space_by_filter(order_limit * 3)
            .and_then(|f| {
                ensure(f == d.decomposition_space(), || {
                    "saturation and final topology give different quotients".into()
                })
            })
    });
    out.record("map-closure-criteria", {
        let quotient = d.decomposition_space();
        d.pi_map(&quotient).and_then(|pi| {
            let (continuous, open) = pi.closure_criteria(order_limit * 3)?;
            ensure(continuous && open == pi.is_open(), || {
                format!("closure criteria give continuous {continuous}, open {open}")
            })
        })
    });
    out.record("induced-on-open-cover", check_induced(d));
    out.record("coarsening", coarsen(d).map(|_| ()));

    let stratification = matches!(&verdict, Ok(v) if v.is_stratification());
    let poset_stratified = matches!(&poset_strat, Ok(p) if p.holds());
    out.stratification = stratification;
    out.poset_stratified = poset_stratified;

    if stratification {
        out.record("theorem-a", theorem_a(d).map(|_| ()));
        out.record(
            "refinement-never-open",
            refinement_never_open(d).map(|_| ()),
        );
    }
    if poset_stratified {
        out.record(
            "initial-order",
            initial_order_check(d, order_limit).map(|_| ()),
        );
        out.record("stratification-iff-open", {
            d.decomposition_preorder().and_then(|pre| {
                let open = d.open_into(pre.up_sets());
                ensure(stratification == open, || {
                    format!("stratification {stratification} but π open into the preorder {open}")
                })
            })
        });
    }
    if k <= order_limit {
        match poset_rows_with_limit(k, order_limit) {
            Ok(all) => {
                let ids = d.stratum_ids();
                for rows in all {
                    if d.continuous_into(rows) && d.open_into(rows) {
                        let result = Poset::new(proset_from_rows(ids, rows))
                            .and_then(|order| PosetStratification::new(d.clone(), order))
                            .and_then(|ps| theorem_b(&ps).map(|_| ()));
                        out.record("theorem-b", result);
                    }
                }
            }
            Err(e) => out.record("theorem-b", Err(e)),
        }
    }
}

/// Runs every check on every (Alexandrov space, partition) pair on `n`
/// points.
pub fn exhaustive_verify(n: usize) -> Result<SweepReport> {
    exhaustive_verify_with_limit(n, ORDER_BOUND)
}

pub fn exhaustive_verify_with_limit(n: usize, limit: usize) -> Result<SweepReport> {
    check_bound("exhaustive sweep", n, limit, ORDER_HARD_LIMIT)?;
    let names = element_names(n);
    let spaces: Vec<(Proset, FiniteSpace)> = preorder_rows_with_limit(n, limit)?
        .iter()
        .map(|rows| {
            let p = proset_from_rows(&names, rows);
            let x = p.alexandrov_space();
            (p, x)
        })
        .collect();
    let parts = partitions_with_limit(n, limit.max(PARTITION_BOUND))?;
    let per_space = parts.len();
    let total = spaces.len() * per_space;

    let outcomes: Vec<(InstanceOutcome, Option<Decomposition>)> = (0..total)
        .into_par_iter()
        .map(|index| {
            let (p, x) = &spaces[index / per_space];
            let labels = &parts[index % per_space];
            let mut out = InstanceOutcome::default();
            if index % per_space == 0 {
                check_space(p, x, &mut out);
            }
            let k = labels.iter().max().map_or(0, |m| m + 1);
            match Decomposition::from_labels(x.clone(), &stratum_ids(k), labels) {
                Ok(d) => {
                    check_decomposition(&d, limit, &mut out);
                    let failed = out.checks.iter().any(|(_, r)| r.is_err());
                    (out, failed.then_some(d))
                }
                Err(e) => {
                    out.record("construction", Err(e));
                    (out, None)
                }
            }
        })
        .collect();

    let mut report = SweepReport {
        points: n,
        spaces: spaces.len(),
        partitions: per_space,
        instances: total,
        stratifications: 0,
        poset_stratified: 0,
        propositions: BTreeMap::new(),
        failures: 0,
        counterexample: None,
    };
    for (index, (outcome, failing)) in outcomes.into_iter().enumerate() {
        report.stratifications += usize::from(outcome.stratification);
        report.poset_stratified += usize::from(outcome.poset_stratified);
        for (name, result) in outcome.checks {
            let tally = report.propositions.entry(name.to_owned()).or_default();
            tally.checked += 1;
            match result {
                Ok(()) => tally.passed += 1,
                Err(e) => {
                    tally.failed += 1;
                    report.failures += 1;
                    if report.counterexample.is_none() {
                        report.counterexample = Some(Counterexample {
                            instance: index,
                            proposition: name.to_owned(),
                            message: e.to_string(),
                            decomposition: failing
                                .as_ref()
                                .map(|d| to_value(&Document::Decomposition(d.clone())))
                                .unwrap_or(serde_json::Value::Null),
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}
