//! Every topology on at most three points, found by filtering all families
//! of subsets, checked against the library's point-set operations.

use stratkit::decomposition::{
    frontier_equivalences, is_stratification, poset_stratified_equivalences, semicontinuity,
};
use stratkit::{Decomposition, FiniteSpace, SpaceMap};

/// Subsets are bitmasks over `0..n`; a family is a list of them.
fn topologies(n: usize) -> Vec<Vec<u64>> {
    let subsets = 1usize << n;
    let full = (1u64 << n) - 1;
    let mut out = Vec::new();
    for family in 0u64..(1 << subsets) {
        let member = |s: u64| family >> s & 1 == 1;
        if !member(0) || !member(full) {
            continue;
        }
        let sets: Vec<u64> = (0..subsets as u64).filter(|&s| member(s)).collect();
        let closed = sets
            .iter()
            .all(|&a| sets.iter().all(|&b| member(a | b) && member(a & b)));
        if closed {
            out.push(sets);
        }
    }
    out
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

fn space_of(n: usize, opens: &[u64]) -> FiniteSpace {
    let names = names(n);
    let gens: Vec<Vec<String>> = opens
        .iter()
        .map(|&s| {
            (0..n)
                .filter(|i| s >> i & 1 == 1)
                .map(|i| names[i].clone())
                .collect()
        })
        .collect();
    FiniteSpace::from_subbasis(&names, &gens).unwrap()
}

struct Bf {
    n: usize,
    opens: Vec<u64>,
}

impl Bf {
    fn full(&self) -> u64 {
        (1u64 << self.n) - 1
    }
    fn is_open(&self, s: u64) -> bool {
        self.opens.contains(&s)
    }
    fn is_closed(&self, s: u64) -> bool {
        self.is_open(self.full() & !s)
    }
    fn closeds(&self) -> Vec<u64> {
        self.opens.iter().map(|&o| self.full() & !o).collect()
    }
    fn closure(&self, s: u64) -> u64 {
        self.closeds()
            .into_iter()
            .filter(|&c| s & !c == 0)
            .fold(self.full(), |a, c| a & c)
    }
    fn interior(&self, s: u64) -> u64 {
        self.opens
            .iter()
            .filter(|&&o| o & !s == 0)
            .fold(0, |a, &o| a | o)
    }
    fn locally_closed(&self, s: u64) -> bool {
        self.opens
            .iter()
            .any(|&o| self.closeds().iter().any(|&c| o & c == s))
    }
}

#[test]
fn topology_counts() {
    let counts: Vec<usize> = (0..=3).map(|n| topologies(n).len()).collect();
    assert_eq!(counts, [1, 1, 4, 29]);
}

#[test]
fn point_set_operations_match_definitions() {
    for n in 0..=3 {
        for opens in topologies(n) {
            let bf = Bf { n, opens };
            let x = space_of(n, &bf.opens);
            let mut listed: Vec<u64> = x.open_sets(8).unwrap().iter().map(|s| s.mask()).collect();
            listed.sort_unstable();
            assert_eq!(listed, bf.opens);
            for s in 0..=bf.full() {
                let set = stratkit::PointSet::from_mask(n, s);
                assert_eq!(x.is_open(&set), bf.is_open(s));
                assert_eq!(x.is_closed(&set), bf.is_closed(s));
                assert_eq!(x.closure(&set).mask(), bf.closure(s), "closure of {s:b}");
                assert_eq!(x.interior(&set).mask(), bf.interior(s));
                assert_eq!(x.frontier(&set).mask(), bf.closure(s) & !s);
                assert_eq!(x.is_locally_closed(&set), bf.locally_closed(s));
                if let Some(o) = x.locally_closed_witness(&set) {
                    assert!(bf.is_open(o.mask()));
                    assert_eq!(o.mask() & bf.closure(s), s);
                }
            }
            let pre = x.specialization_preorder();
            for a in 0..n {
                let ua = bf
                    .opens
                    .iter()
                    .filter(|&&o| o >> a & 1 == 1)
                    .fold(bf.full(), |m, &o| m & o);
                assert_eq!(x.min_open(a).mask(), ua);
                for b in 0..n {
                    assert_eq!(pre.leq(a, b), bf.closure(1 << b) >> a & 1 == 1);
                }
            }
            let t0 = (0..n).all(|a| {
                (0..n).all(|b| a == b || bf.opens.iter().any(|&o| (o >> a & 1) != (o >> b & 1)))
            });
            assert_eq!(x.is_t0(), t0);
        }
    }
}

fn assignments(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..m).map(move |y| {
                    let mut b = a.clone();
                    b.push(y);
                    b
                })
            })
            .collect();
    }
    out
}

fn image(a: &[usize], s: u64) -> u64 {
    a.iter()
        .enumerate()
        .filter(|(x, _)| s >> x & 1 == 1)
        .fold(0, |m, (_, &y)| m | 1 << y)
}

fn preimage(a: &[usize], t: u64) -> u64 {
    a.iter()
        .enumerate()
        .filter(|(_, &y)| t >> y & 1 == 1)
        .fold(0, |m, (x, _)| m | 1 << x)
}

#[test]
fn map_properties_match_definitions() {
    for n in 0..=3 {
        for m in 0..=3usize.min(if n == 3 { 2 } else { 3 }) {
            if n > 0 && m == 0 {
                continue;
            }
            let sources = topologies(n);
            let targets = topologies(m);
            for so in &sources {
                let src_bf = Bf {
                    n,
                    opens: so.clone(),
                };
                let src = space_of(n, so);
                for to in &targets {
                    let tgt_bf = Bf {
                        n: m,
                        opens: to.clone(),
                    };
                    let tgt = space_of(m, to);
                    for a in assignments(n, m) {
                        let f = SpaceMap::new(&src, &tgt, a.as_slice()).unwrap();
                        let continuous = tgt_bf
                            .opens
                            .iter()
                            .all(|&v| src_bf.is_open(preimage(&a, v)));
                        let open = src_bf.opens.iter().all(|&u| tgt_bf.is_open(image(&a, u)));
                        let closed = src_bf
                            .closeds()
                            .iter()
                            .all(|&c| tgt_bf.is_closed(image(&a, c)));
                        assert_eq!(f.is_continuous(), continuous);
                        assert_eq!(f.is_open(), open);
                        assert_eq!(f.is_closed(), closed);
                        assert_eq!(f.closure_criteria(8).unwrap(), (continuous, open));
                    }
                }
            }
        }
    }
}

/// Set partitions by inserting each element into an existing block or a new one.
fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|labels| {
                let blocks = labels.iter().max().map_or(0, |b| b + 1);
                (0..=blocks).map(move |b| {
                    let mut l = labels.clone();
                    l.push(b);
                    l
                })
            })
            .collect();
    }
    out
}

fn partial_orders(k: usize) -> Vec<Vec<u64>> {
    // up-set rows of every antisymmetric reflexive transitive relation
    let mut out = Vec::new();
    for rel in 0u64..(1 << (k * k)) {
        let r = |i: usize, j: usize| rel >> (i * k + j) & 1 == 1;
        let ok = (0..k).all(|i| r(i, i))
            && (0..k).all(|i| (0..k).all(|j| i == j || !(r(i, j) && r(j, i))))
            && (0..k).all(|i| (0..k).all(|j| (0..k).all(|l| !(r(i, j) && r(j, l)) || r(i, l))));
        if ok {
            out.push(
                (0..k)
                    .map(|i| (0..k).filter(|&j| r(i, j)).fold(0, |m, j| m | 1 << j))
                    .collect(),
            );
        }
    }
    out
}

#[test]
fn decompositions_match_definitions() {
    for n in 0..=3 {
        for opens in topologies(n) {
            let bf = Bf { n, opens };
            let x = space_of(n, &bf.opens);
            for labels in set_partitions(n) {
                let k = labels.iter().max().map_or(0, |b| b + 1);
                let ids: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
                let d = Decomposition::from_labels(x.clone(), &ids, &labels).unwrap();
                let pi = |j: u64| preimage(&labels, j);
                let sat = |s: u64| preimage(&labels, image(&labels, s));
                let stratum = |i: usize| pi(1 << i);

                // quotient topology
                let quotient_opens: Vec<u64> =
                    (0..1u64 << k).filter(|&j| bf.is_open(pi(j))).collect();
                let mut listed: Vec<u64> = d
                    .decomposition_space()
                    .open_sets(8)
                    .unwrap()
                    .iter()
                    .map(|s| s.mask())
                    .collect();
                listed.sort_unstable();
                assert_eq!(listed, quotient_opens);
                let qbf = Bf {
                    n: k,
                    opens: quotient_opens,
                };

                let pre = d.decomposition_preorder().unwrap();
                for i in 0..k {
                    for j in 0..k {
                        assert_eq!(pre.leq(i, j), qbf.closure(1 << j) >> i & 1 == 1);
                    }
                }

                let s = semicontinuity(&d).unwrap();
                assert_eq!(s.pi_open, bf.opens.iter().all(|&u| bf.is_open(sat(u))));
                assert_eq!(
                    s.pi_closed,
                    bf.closeds().iter().all(|&c| bf.is_closed(sat(c)))
                );
                assert_eq!(
                    s.pi_open,
                    bf.opens.iter().all(|&u| qbf.is_open(image(&labels, u)))
                );

                let frontier = (0..k).all(|i| {
                    (0..k).all(|j| {
                        let cl = bf.closure(stratum(j));
                        i == j || stratum(i) & cl == 0 || stratum(i) & !cl == 0
                    })
                });
                assert_eq!(
                    frontier_equivalences(&d).unwrap().frontier_condition,
                    frontier
                );

                let lc = (0..k).all(|i| bf.locally_closed(stratum(i)));
                let verdict = is_stratification(&d).unwrap();
                assert_eq!(verdict.is_stratification(), lc && frontier);

                let some_order = partial_orders(k)
                    .iter()
                    .any(|rows| rows.iter().all(|&u| bf.is_open(pi(u))));
                assert_eq!(
                    poset_stratified_equivalences(&d).unwrap().holds(),
                    some_order
                );
            }
        }
    }
}
