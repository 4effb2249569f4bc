//! Preordered and partially ordered sets, the Alexandrov functor, poset
//! reflection and Hasse covers.
//!
//! Relations are stored densely: row `i` of a [`Proset`] is the up-set
//! `{j : i ≤ j}` as a bit vector, with the matching down-sets kept alongside.

use std::borrow::Cow;
use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::PointSet;
use crate::error::{ensure, Error, Result};
use crate::topology::{index_names, FiniteSpace};

#[derive(Clone)]
pub struct Proset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    up: Vec<PointSet>,
    down: Vec<PointSet>,
}

/// Equal as relations on the same element set, regardless of element order.
impl PartialEq for Proset {
    fn eq(&self, other: &Self) -> bool {
        if self.elements == other.elements {
            return self.up == other.up;
        }
        self.same_relation(other)
    }
}

impl Eq for Proset {}

impl fmt::Debug for Proset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Proset")
            .field("elements", &self.elements)
            .field("strict", &self.strict_pairs())
            .finish()
    }
}

impl Proset {
    /// Builds a proset from `pairs` meaning `a ≤ b`.
    ///
    /// With `close`, the reflexive-transitive closure is taken. Without it
    /// the relation must already be reflexive and transitive, and the first
    /// violation (in lexicographic order) is reported.
    pub fn from_relation<S: AsRef<str>, T: AsRef<str>>(
        elements: &[S],
        pairs: &[(T, T)],
        close: bool,
    ) -> Result<Self> {
        let (elements, index) = index_names(elements, Error::DuplicateElement)?;
        let n = elements.len();
        let mut up = vec![PointSet::empty(n); n];
        for (a, b) in pairs {
            let i = lookup(&index, a.as_ref())?;
            let j = lookup(&index, b.as_ref())?;
            up[i].insert(j);
        }
        if close {
            for (i, row) in up.iter_mut().enumerate() {
                row.insert(i);
            }
            warshall(&mut up);
        } else {
            let lex = crate::topology::lex_order(&elements);
            if let Some(&i) = lex.iter().find(|&&i| !up[i].contains(i)) {
                return Err(Error::NotReflexive(elements[i].clone()));
            }
            for &a in &lex {
                for &b in lex.iter().filter(|&&b| up[a].contains(b)) {
                    if let Some(&c) = lex
                        .iter()
                        .find(|&&c| up[b].contains(c) && !up[a].contains(c))
                    {
                        return Err(Error::NotTransitive {
                            a: elements[a].clone(),
                            b: elements[b].clone(),
                            c: elements[c].clone(),
                        });
                    }
                }
            }
        }
        Ok(Self::from_up_sets_unchecked(elements, index, up))
    }

    /// Builds a proset from up-set rows already known to be reflexive and
    /// transitive.
    pub(crate) fn from_up_sets_unchecked(
        elements: Vec<String>,
        index: HashMap<String, usize>,
        up: Vec<PointSet>,
    ) -> Self {
        let n = elements.len();
        let mut down = vec![PointSet::empty(n); n];
        for (i, row) in up.iter().enumerate() {
            for j in row {
                down[j].insert(i);
            }
        }
        Proset {
            elements,
            index,
            up,
            down,
        }
    }

    pub(crate) fn from_up_sets<S: AsRef<str>>(elements: &[S], up: Vec<PointSet>) -> Result<Self> {
        let (elements, index) = index_names(elements, Error::DuplicateElement)?;
        Ok(Self::from_up_sets_unchecked(elements, index, up))
    }

    /// The equality order on `elements`.
    pub fn discrete<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        Self::from_relation::<S, &str>(elements, &[], true)
    }

    /// A total order following the given sequence.
    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<Self> {
        let pairs: Vec<(&str, &str)> = elements
            .windows(2)
            .map(|w| (w[0].as_ref(), w[1].as_ref()))
            .collect();
        Self::from_relation(elements, &pairs, true)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        lookup(&self.index, name)
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn leq_by_name(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.leq(self.index_of(a)?, self.index_of(b)?))
    }

    /// `{j : i ≤ j}`.
    pub fn up_set(&self, i: usize) -> &PointSet {
        &self.up[i]
    }

    /// `{j : j ≤ i}`.
    pub fn down_set(&self, i: usize) -> &PointSet {
        &self.down[i]
    }

    pub fn up_sets(&self) -> &[PointSet] {
        &self.up
    }

    /// `(U_e, D_e)`: the minimal open and minimal closed neighborhoods of
    /// `e` in the Alexandrov space.
    pub fn up_down_sets(&self, e: &str) -> Result<(PointSet, PointSet)> {
        let i = self.index_of(e)?;
        Ok((self.up[i].clone(), self.down[i].clone()))
    }

    pub fn is_upward_closed(&self, set: &PointSet) -> bool {
        set.iter().all(|i| self.up[i].is_subset(set))
    }

    /// Pairs `(a, b)` with `a ≠ b` and `a ≤ b`, by name, sorted.
    pub fn strict_pairs(&self) -> Vec<(String, String)> {
        let mut pairs: Vec<(String, String)> = (0..self.len())
            .flat_map(|i| {
                self.up[i]
                    .iter()
                    .filter(move |&j| j != i)
                    .map(move |j| (self.elements[i].clone(), self.elements[j].clone()))
            })
            .collect();
        pairs.sort();
        pairs
    }

    /// First pair `i ≠ j` (lexicographically by name) with `i ≤ j ≤ i`.
    pub fn antisymmetry_witness(&self) -> Option<(usize, usize)> {
        let lex = crate::topology::lex_order(&self.elements);
        lex.iter()
            .flat_map(|&i| lex.iter().map(move |&j| (i, j)))
            .find(|&(i, j)| i != j && self.leq(i, j) && self.leq(j, i))
    }

    pub fn is_poset(&self) -> bool {
        self.antisymmetry_witness().is_none()
    }

    /// `self ⊆ other` as relations, matching elements by name.
    pub fn is_contained_in(&self, other: &Proset) -> bool {
        let map: Option<Vec<usize>> = self
            .elements
            .iter()
            .map(|e| other.index.get(e).copied())
            .collect();
        let Some(map) = map else { return false };
        (0..self.len()).all(|i| self.up[i].iter().all(|j| other.leq(map[i], map[j])))
    }

    /// Same elements (as a set) and same relation, regardless of order.
    pub fn same_relation(&self, other: &Proset) -> bool {
        self.len() == other.len() && self.is_contained_in(other) && other.is_contained_in(self)
    }

    pub fn opposite(&self) -> Proset {
        Self::from_up_sets_unchecked(self.elements.clone(), self.index.clone(), self.down.clone())
    }

    /// The Alexandrov space: opens are the upward-closed sets, `U_p` the
    /// up-set of `p`.
    pub fn alexandrov_space(&self) -> FiniteSpace {
        FiniteSpace::assemble(self.elements.clone(), self.index.clone(), self.up.clone())
    }

    /// Quotient by `p ∼ q ⟺ p ≤ q ≤ p`. Classes appear in order of their
    /// first member and are named by their lexicographically least member.
    pub fn reflection(&self) -> Reflection {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let class: Vec<usize> = (i..n)
                .filter(|&j| self.leq(i, j) && self.leq(j, i))
                .collect();
            for &j in &class {
                class_of[j] = members.len();
            }
            members.push(class);
        }
        let names: Vec<String> = members
            .iter()
            .map(|class| {
                class
                    .iter()
                    .map(|&j| self.elements[j].as_str())
                    .min()
                    .expect("classes are nonempty")
                    .to_owned()
            })
            .collect();
        let k = members.len();
        let up = members
            .iter()
            .map(|class| PointSet::from_indices(k, self.up[class[0]].iter().map(|j| class_of[j])))
            .collect();
        let index = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        let poset = Poset(Self::from_up_sets_unchecked(names, index, up));
        debug_assert!(poset.0.is_poset());
        Reflection {
            poset,
            quotient: class_of,
            members,
        }
    }

    /// Cover pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn hasse(&self) -> Result<Vec<(usize, usize)>> {
        if let Some((i, j)) = self.antisymmetry_witness() {
            return Err(Error::NotAntisymmetric(
                self.elements[i].clone(),
                self.elements[j].clone(),
            ));
        }
        Ok(strict_covers(self))
    }

    /// Both local-finiteness notions for a finite proset. Every up-set and
    /// every interval of a finite proset is finite, so both are true.
    pub fn local_finiteness(&self) -> LocalFiniteness {
        let bound = self.len();
        LocalFiniteness {
            locally_finite_space: self.up.iter().all(|u| u.len() <= bound),
            locally_finite_poset: true,
            space_reason: "every up-set of a finite proset is finite",
            poset_reason: "every interval of a finite proset is finite",
        }
    }
}

/// Covers of the strict part `a ≤ b, b ≰ a`, ignoring equivalent pairs.
pub(crate) fn strict_covers(p: &Proset) -> Vec<(usize, usize)> {
    let n = p.len();
    let strict = |a: usize, b: usize| p.leq(a, b) && !p.leq(b, a);
    let mut covers = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if strict(a, b) && !(0..n).any(|c| strict(a, c) && strict(c, b)) {
                covers.push((a, b));
            }
        }
    }
    covers
}

fn lookup(index: &HashMap<String, usize>, name: &str) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| Error::UnknownElement(name.to_owned()))
}

/// Warshall's algorithm on bit rows: after step `k`, row `i` contains every
/// `j` reachable from `i` through intermediates `< k`.
fn warshall(rows: &mut [PointSet]) {
    for k in 0..rows.len() {
        let row_k = rows[k].clone();
        for row in rows.iter_mut() {
            if row.contains(k) {
                row.union_with(&row_k);
            }
        }
    }
}

/// A proset whose relation is antisymmetric.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset(Proset);

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Poset").field(&self.0).finish()
    }
}

impl Poset {
    pub fn new(proset: Proset) -> Result<Self> {
        match proset.antisymmetry_witness() {
            None => Ok(Poset(proset)),
            Some((i, j)) => Err(Error::NotAntisymmetric(
                proset.elements[i].clone(),
                proset.elements[j].clone(),
            )),
        }
    }

    pub fn from_relation<S: AsRef<str>, T: AsRef<str>>(
        elements: &[S],
        pairs: &[(T, T)],
        close: bool,
    ) -> Result<Self> {
        Self::new(Proset::from_relation(elements, pairs, close)?)
    }

    pub fn as_proset(&self) -> &Proset {
        &self.0
    }

    pub fn into_proset(self) -> Proset {
        self.0
    }

    pub fn covers(&self) -> Vec<(usize, usize)> {
        strict_covers(&self.0)
    }

    /// Cover pairs by name, sorted.
    pub fn cover_names(&self) -> Vec<(String, String)> {
        let mut pairs: Vec<(String, String)> = self
            .covers()
            .into_iter()
            .map(|(a, b)| (self.0.elements[a].clone(), self.0.elements[b].clone()))
            .collect();
        pairs.sort();
        pairs
    }
}

impl Deref for Poset {
    type Target = Proset;

    fn deref(&self) -> &Proset {
        &self.0
    }
}

/// Result of [`Proset::reflection`].
#[derive(Clone, Debug)]
pub struct Reflection {
    pub poset: Poset,
    /// Class index of each element of the source proset.
    pub quotient: Vec<usize>,
    /// Source elements of each class, ascending.
    pub members: Vec<Vec<usize>>,
}

impl Reflection {
    pub fn quotient_map<'a>(&'a self, source: &'a Proset) -> MonotoneMap<'a> {
        MonotoneMap {
            source,
            target: &self.poset.0,
            assignment: Cow::Borrowed(&self.quotient),
        }
    }
}

/// A total map between prosets; monotonicity is checked, not assumed.
#[derive(Clone, Debug)]
pub struct MonotoneMap<'a> {
    source: &'a Proset,
    target: &'a Proset,
    assignment: Cow<'a, [usize]>,
}

impl<'a> MonotoneMap<'a> {
    pub fn new(
        source: &'a Proset,
        target: &'a Proset,
        assignment: impl Into<Cow<'a, [usize]>>,
    ) -> Result<Self> {
        let assignment = assignment.into();
        if assignment.len() != source.len() {
            return Err(Error::AssignmentLength {
                expected: source.len(),
                got: assignment.len(),
            });
        }
        if let Some(i) = assignment.iter().position(|&j| j >= target.len()) {
            return Err(Error::AssignmentOutOfRange(format!(
                "`{}` maps to index {}",
                source.elements[i], assignment[i]
            )));
        }
        Ok(MonotoneMap {
            source,
            target,
            assignment,
        })
    }

    /// Identity on elements, matched by name.
    pub fn identity_by_name(source: &'a Proset, target: &'a Proset) -> Result<Self> {
        let assignment = source
            .elements
            .iter()
            .map(|e| target.index_of(e))
            .collect::<Result<Vec<_>>>()?;
        Self::new(source, target, assignment)
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// A pair `p ≤ p'` with `f(p) ≰ f(p')`, if any.
    pub fn violation(&self) -> Option<(usize, usize)> {
        (0..self.source.len())
            .flat_map(|i| self.source.up[i].iter().map(move |j| (i, j)))
            .find(|&(i, j)| !self.target.leq(self.assignment[i], self.assignment[j]))
    }

    pub fn is_monotone(&self) -> bool {
        self.violation().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.len() == self.target.len()
            && PointSet::from_indices(self.target.len(), self.assignment.iter().copied()).len()
                == self.target.len()
    }
}

/// Whether the unit and counit of the proset/space adjunction are identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    /// `P(T(p)) = p`.
    pub unit_identity: bool,
    /// `T(P(x)) = x` (identity is a homeomorphism).
    pub counit_homeomorphism: bool,
}

pub fn adjunction_roundtrips(p: &Proset, x: &FiniteSpace) -> AdjunctionReport {
    let unit_identity = p.alexandrov_space().specialization_preorder() == *p;
    let counit_homeomorphism = x.specialization_preorder().alexandrov_space() == *x;
    AdjunctionReport {
        unit_identity,
        counit_homeomorphism,
    }
}

/// Decides whether `p` is a poset in two independent ways: antisymmetry,
/// and every singleton being locally closed in the Alexandrov space.
pub fn singleton_locally_closed_check(p: &Proset) -> Result<bool> {
    let antisymmetric = p.is_poset();
    let space = p.alexandrov_space();
    let n = space.len();
    let singletons = (0..n).all(|i| space.is_locally_closed(&PointSet::singleton(n, i)));
    ensure(antisymmetric == singletons, || {
        format!("antisymmetry is {antisymmetric} but singleton local closure is {singletons}")
    })?;
    Ok(antisymmetric)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocalFiniteness {
    pub locally_finite_space: bool,
    pub locally_finite_poset: bool,
    #[serde(skip)]
    pub space_reason: &'static str,
    #[serde(skip)]
    pub poset_reason: &'static str,
}

/// Infinite orders on the natural numbers whose local-finiteness answers
/// are known in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymbolicFamily {
    /// ℕ with `0 ≤ 1 ≤ 2 ≤ …`.
    NatUsual,
    /// ℕ with the reversed order.
    NatOpposite,
    /// ℕ with the equality order.
    NatDiscrete,
}

impl SymbolicFamily {
    pub const ALL: [SymbolicFamily; 3] = [
        SymbolicFamily::NatUsual,
        SymbolicFamily::NatOpposite,
        SymbolicFamily::NatDiscrete,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            SymbolicFamily::NatUsual => "nat_usual",
            SymbolicFamily::NatOpposite => "nat_opposite",
            SymbolicFamily::NatDiscrete => "nat_discrete",
        }
    }

    /// Space: every `[p, ∞)` finite. Poset: every `[p, q]` finite.
    pub fn local_finiteness(self) -> LocalFiniteness {
        match self {
            SymbolicFamily::NatUsual => LocalFiniteness {
                locally_finite_space: false,
                locally_finite_poset: true,
                space_reason: "[p, ∞) = {p, p+1, …} is infinite",
                poset_reason: "[p, q] = {p, …, q} has q - p + 1 elements",
            },
            SymbolicFamily::NatOpposite => LocalFiniteness {
                locally_finite_space: true,
                locally_finite_poset: true,
                space_reason: "the up-set of p is {0, …, p}",
                poset_reason: "[p, q] ⊆ {0, …, p} is finite",
            },
            SymbolicFamily::NatDiscrete => LocalFiniteness {
                locally_finite_space: true,
                locally_finite_poset: true,
                space_reason: "every up-set is the singleton {p}",
                poset_reason: "every nonempty interval is a singleton",
            },
        }
    }
}

impl FromStr for SymbolicFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.tag() == s)
            .ok_or_else(|| Error::UnknownFamily(s.to_owned()))
    }
}

pub fn symbolic_local_finiteness(tag: &str) -> Result<LocalFiniteness> {
    Ok(tag.parse::<SymbolicFamily>()?.local_finiteness())
}
