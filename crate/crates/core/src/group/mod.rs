//! Finite groups as Cayley tables, together with the subgroup, coset and
//! conjugation machinery the rest of the crate is built on.
//!
//! Elements are dense indices `0..order`. Subgroups are plain sorted element
//! lists and carry no reference to their parent; every operation that needs
//! the multiplication takes the [`FiniteGroup`] explicitly.
//!
//! Conjugation follows the right-action convention used throughout the
//! crate: `c_g(h) = g⁻¹hg` and `H^g = g⁻¹Hg`.

mod cosets;
mod hom;
mod spec;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

pub use cosets::DoubleCosetDecomposition;
pub use hom::GroupHom;
pub use spec::{GroupSpec, DEFAULT_ORDER_CAP};

/// A group element, as an index into the Cayley table.
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("malformed group spec: {0}")]
    Malformed(String),
    #[error("table is not a Latin square")]
    NotLatin,
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("generated group exceeds the order cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("element list {0:?} is not a subgroup")]
    NotASubgroup(Vec<Elem>),
    #[error("subgroup {sub:?} is not contained in {ambient:?}")]
    NotContained { sub: Vec<Elem>, ambient: Vec<Elem> },
    #[error("element {0} is out of range")]
    BadElement(Elem),
    #[error("map is not a group homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("homomorphism is not bijective")]
    NotBijective,
}

/// A finite group stored as its full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverse: Vec<Elem>,
    label: String,
    subgroups: OnceLock<Vec<Subgroup>>,
}

impl FiniteGroup {
    /// Builds a group from an explicit table, checking every group axiom.
    pub fn from_table(table: Vec<Vec<Elem>>, label: impl Into<String>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Malformed("empty table".into()));
        }
        if table.iter().any(|row| row.len() != n) {
            return Err(GroupError::Malformed("table is not square".into()));
        }
        let flat: Vec<Elem> = table.into_iter().flatten().collect();
        if let Some(&bad) = flat.iter().find(|&&x| x >= n) {
            return Err(GroupError::BadElement(bad));
        }
        let group = Self::from_flat(n, flat, label.into())?;
        for a in 0..n {
            for b in 0..n {
                let ab = group.mul(a, b);
                for c in 0..n {
                    if group.mul(ab, c) != group.mul(a, group.mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(group)
    }

    /// Builds a group from a flat table known to be associative (e.g. one
    /// produced by composing permutations). Latin-square and identity checks
    /// still run.
    pub(crate) fn from_flat(n: usize, table: Vec<Elem>, label: String) -> Result<Self, GroupError> {
        let mut seen = vec![false; n];
        for r in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for c in 0..n {
                let x = table[r * n + c];
                if seen[x] {
                    return Err(GroupError::NotLatin);
                }
                seen[x] = true;
            }
        }
        for c in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for r in 0..n {
                let x = table[r * n + c];
                if seen[x] {
                    return Err(GroupError::NotLatin);
                }
                seen[x] = true;
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverse = vec![0; n];
        for (a, inv) in inverse.iter_mut().enumerate() {
            // Latin rows guarantee exactly one solution of a*x = e.
            *inv = (0..n).find(|&b| table[a * n + b] == identity).ok_or(GroupError::NotLatin)?;
            if table[*inv * n + a] != identity {
                return Err(GroupError::NoIdentity);
            }
        }
        Ok(Self { order: n, table, identity, inverse, label, subgroups: OnceLock::new() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a]
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// The Cayley table as nested rows.
    pub fn table(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Cheap isomorphism invariants: order, sorted element orders, the
    /// number of subgroups of each order and the size of the centre.
    pub fn invariants(&self) -> GroupInvariants {
        let mut element_orders: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        element_orders.sort_unstable();
        let mut subgroup_orders: Vec<usize> = self.subgroups().iter().map(Subgroup::order).collect();
        subgroup_orders.sort_unstable();
        let center = self.centralizer(&self.whole()).order();
        GroupInvariants { order: self.order, element_orders, subgroup_orders, center }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup(vec![self.identity])
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup(self.elements().collect())
    }

    pub fn check_element(&self, a: Elem) -> Result<Elem, GroupError> {
        if a < self.order {
            Ok(a)
        } else {
            Err(GroupError::BadElement(a))
        }
    }

    /// Validates an element list as a subgroup.
    pub fn subgroup(&self, mut elements: Vec<Elem>) -> Result<Subgroup, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        for &a in &elements {
            self.check_element(a)?;
        }
        let sub = Subgroup(elements);
        let closed = sub.contains(self.identity)
            && sub.iter().all(|a| sub.contains(self.inv(a)) && sub.iter().all(|b| sub.contains(self.mul(a, b))));
        if closed {
            Ok(sub)
        } else {
            Err(GroupError::NotASubgroup(sub.0))
        }
    }

    /// The subgroup generated by `gens`.
    pub fn generate(&self, gens: &[Elem]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = vec![self.identity];
        while let Some(x) = queue.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
        Subgroup(member.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect())
    }

    /// The subgroup generated by `a` and `b`.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = a.iter().chain(b.iter()).collect();
        self.generate(&gens)
    }

    /// Every subgroup exactly once, sorted by (order, element list).
    /// Computed on first use and cached.
    pub fn subgroups(&self) -> &[Subgroup] {
        self.subgroups.get_or_init(|| self.enumerate_subgroups())
    }

    /// Subgroups of `h`, in the order of [`FiniteGroup::subgroups`].
    pub fn subgroups_of(&self, h: &Subgroup) -> Vec<Subgroup> {
        self.subgroups().iter().filter(|s| s.is_subgroup_of(h)).cloned().collect()
    }

    fn enumerate_subgroups(&self) -> Vec<Subgroup> {
        let cyclic: BTreeSet<Subgroup> = self.elements().map(|a| self.generate(&[a])).collect();
        let mut found: HashSet<Subgroup> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Subgroup> = cyclic.iter().cloned().collect();
        while let Some(h) = frontier.pop() {
            for c in &cyclic {
                if c.is_subgroup_of(&h) {
                    continue;
                }
                let j = self.join(&h, c);
                if !found.contains(&j) {
                    found.insert(j.clone());
                    frontier.push(j);
                }
            }
        }
        let mut all: Vec<Subgroup> = found.into_iter().collect();
        all.sort_by(Subgroup::cmp_by_order);
        all
    }

    /// `H^g = g⁻¹Hg`.
    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let mut elems: Vec<Elem> = h.iter().map(|x| self.conj(x, g)).collect();
        elems.sort_unstable();
        Subgroup(elems)
    }

    pub fn centralizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup(self.elements().filter(|&g| h.iter().all(|x| self.mul(g, x) == self.mul(x, g))).collect())
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        Subgroup(self.elements().filter(|&g| &self.conjugate_subgroup(h, g) == h).collect())
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements().all(|g| &self.conjugate_subgroup(h, g) == h)
    }

    /// The conjugates of `h` in `within`, sorted by (order, element list).
    pub fn conjugates_in(&self, h: &Subgroup, within: &Subgroup) -> Vec<Subgroup> {
        let mut all: Vec<Subgroup> = within.iter().map(|g| self.conjugate_subgroup(h, g)).collect();
        all.sort_by(Subgroup::cmp_by_order);
        all.dedup();
        all
    }

    /// Partition of `subs` into conjugacy classes under `within`. Classes
    /// are listed by their first member, members keep their input order.
    pub fn conjugacy_classes_in(&self, subs: &[Subgroup], within: &Subgroup) -> Vec<Vec<Subgroup>> {
        let mut classes: Vec<Vec<Subgroup>> = Vec::new();
        let mut assigned = vec![false; subs.len()];
        for i in 0..subs.len() {
            if assigned[i] {
                continue;
            }
            let conj: HashSet<Subgroup> = self.conjugates_in(&subs[i], within).into_iter().collect();
            let mut class = Vec::new();
            for j in i..subs.len() {
                if !assigned[j] && conj.contains(&subs[j]) {
                    assigned[j] = true;
                    class.push(subs[j].clone());
                }
            }
            classes.push(class);
        }
        classes
    }

    /// Decomposes `ambient` into double cosets `left·x·right`.
    pub fn double_cosets(
        &self,
        ambient: &Subgroup,
        left: &Subgroup,
        right: &Subgroup,
    ) -> Result<DoubleCosetDecomposition, GroupError> {
        DoubleCosetDecomposition::new(self, ambient, left, right)
    }

    /// Some `g` with `g⁻¹ l g = γ(l)` for every `l`, choosing the minimal
    /// index; `None` when γ is not induced by conjugation in this group.
    pub fn conjugation_realizing(&self, gamma: &GroupHom) -> Option<Elem> {
        self.conjugations_realizing(gamma).into_iter().next()
    }

    /// All realizing elements, ascending. When non-empty this is a coset
    /// `C_G(L)·g`.
    pub fn conjugations_realizing(&self, gamma: &GroupHom) -> Vec<Elem> {
        self.elements().filter(|&g| gamma.pairs().iter().all(|&(l, k)| self.conj(l, g) == k)).collect()
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.label, self.order)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupInvariants {
    pub order: usize,
    pub element_orders: Vec<usize>,
    pub subgroup_orders: Vec<usize>,
    pub center: usize,
}

/// A subgroup as its strictly ascending element list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subgroup(Vec<Elem>);

impl Subgroup {
    /// Wraps an element list without validation. The list must be sorted,
    /// deduplicated and closed; prefer [`FiniteGroup::subgroup`].
    pub fn from_sorted_unchecked(elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup(elements)
    }

    pub fn elements(&self) -> &[Elem] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.iter().copied()
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn contains(&self, a: Elem) -> bool {
        self.0.binary_search(&a).is_ok()
    }

    /// Position of `a` in the element list.
    #[inline]
    pub fn position(&self, a: Elem) -> Option<usize> {
        self.0.binary_search(&a).ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.iter().all(|a| other.contains(a))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup(self.iter().filter(|&a| other.contains(a)).collect())
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    /// Ordering by (order, element list), used for every canonical listing.
    pub fn cmp_by_order(a: &Subgroup, b: &Subgroup) -> std::cmp::Ordering {
        (a.order(), &a.0).cmp(&(b.order(), &b.0))
    }

    pub fn into_vec(self) -> Vec<Elem> {
        self.0
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "}}")
    }
}
