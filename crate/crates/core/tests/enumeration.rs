//! Enumeration counts re-derived by naive filters over all relations.

use std::collections::BTreeSet;

use stratkit::oracle::{self, enumerate, EnumerationKind};
use stratkit::Proset;

type Relation = Vec<Vec<bool>>;

fn all_relations(n: usize) -> impl Iterator<Item = Relation> {
    (0u64..1 << (n * n)).map(move |bits| {
        (0..n)
            .map(|i| (0..n).map(|j| bits >> (i * n + j) & 1 == 1).collect())
            .collect()
    })
}

fn reflexive(r: &Relation) -> bool {
    (0..r.len()).all(|i| r[i][i])
}

fn transitive(r: &Relation) -> bool {
    let n = r.len();
    (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| !(r[i][j] && r[j][k]) || r[i][k])))
}

fn antisymmetric(r: &Relation) -> bool {
    let n = r.len();
    (0..n).all(|i| (0..n).all(|j| i == j || !(r[i][j] && r[j][i])))
}

fn from_oracle(rows: &[Vec<stratkit::PointSet>]) -> BTreeSet<Relation> {
    rows.iter()
        .map(|r| {
            let n = r.len();
            (0..n)
                .map(|i| (0..n).map(|j| r[i].contains(j)).collect())
                .collect()
        })
        .collect()
}

#[test]
fn preorders_by_direct_filter() {
    for (n, expected) in [(0, 1), (1, 1), (2, 4), (3, 29)] {
        let naive: BTreeSet<Relation> = all_relations(n)
            .filter(|r| reflexive(r) && transitive(r))
            .collect();
        assert_eq!(naive.len(), expected);
        let rows = oracle::preorder_rows(n).unwrap();
        assert_eq!(rows.len(), expected);
        assert_eq!(from_oracle(rows), naive);
    }
}

#[test]
fn preorders_by_closing_then_deduplicating() {
    for (n, expected) in [(2, 4), (3, 29)] {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut seen = BTreeSet::new();
        for r in all_relations(n) {
            let pairs: Vec<(String, String)> = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|&(i, j)| r[i][j])
                .map(|(i, j)| (names[i].clone(), names[j].clone()))
                .collect();
            let p = Proset::from_relation(&names, &pairs, true).unwrap();
            seen.insert(p.strict_pairs());
        }
        assert_eq!(seen.len(), expected);
    }
}

#[test]
fn posets_by_direct_filter() {
    for (n, expected) in [(2, 3), (3, 19)] {
        let naive: BTreeSet<Relation> = all_relations(n)
            .filter(|r| reflexive(r) && transitive(r) && antisymmetric(r))
            .collect();
        assert_eq!(naive.len(), expected);
        assert_eq!(from_oracle(oracle::poset_rows(n).unwrap()), naive);
    }
}

#[test]
fn larger_counts() {
    assert_eq!(enumerate(EnumerationKind::Preorders, 4).unwrap().len(), 355);
    assert_eq!(enumerate(EnumerationKind::Posets, 4).unwrap().len(), 219);
    assert_eq!(enumerate(EnumerationKind::Partitions, 3).unwrap().len(), 5);
    assert_eq!(enumerate(EnumerationKind::Partitions, 4).unwrap().len(), 15);
}

#[test]
fn partitions_by_block_insertion() {
    // every way of splitting 0..n into blocks, as sorted block lists
    fn blocks(n: usize) -> BTreeSet<Vec<Vec<usize>>> {
        let mut out = BTreeSet::from([Vec::new()]);
        for x in 0..n {
            out = out
                .into_iter()
                .flat_map(|p: Vec<Vec<usize>>| {
                    let mut next = Vec::new();
                    for b in 0..p.len() {
                        let mut q = p.clone();
                        q[b].push(x);
                        next.push(q);
                    }
                    let mut q = p.clone();
                    q.push(vec![x]);
                    next.push(q);
                    next
                })
                .map(|mut p| {
                    p.sort();
                    p
                })
                .collect();
        }
        out
    }
    for n in 0..=6 {
        let from_rgs: BTreeSet<Vec<Vec<usize>>> = oracle::partitions(n)
            .unwrap()
            .into_iter()
            .map(|labels| {
                let k = labels.iter().max().map_or(0, |m| m + 1);
                let mut p: Vec<Vec<usize>> = (0..k)
                    .map(|b| (0..n).filter(|&x| labels[x] == b).collect())
                    .collect();
                p.sort();
                p
            })
            .collect();
        assert_eq!(from_rgs, blocks(n), "n = {n}");
    }
}

#[test]
fn enumeration_is_ordered_and_duplicate_free() {
    for kind in [
        EnumerationKind::Preorders,
        EnumerationKind::Posets,
        EnumerationKind::Partitions,
    ] {
        let e = enumerate(kind, 3).unwrap();
        let texts: Vec<String> = e.iter().map(stratkit::io::save).collect();
        let unique: BTreeSet<&String> = texts.iter().collect();
        assert_eq!(unique.len(), texts.len());
        let again: Vec<String> = enumerate(kind, 3)
            .unwrap()
            .iter()
            .map(stratkit::io::save)
            .collect();
        assert_eq!(texts, again);
    }
}
