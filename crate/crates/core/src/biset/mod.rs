//! Bifree bisets between subgroups of a finite group.
//!
//! An indecomposable bifree `H₂`-`H₁` biset is described by its standard
//! representation `[L, γ, K]`: subgroups `L ≤ H₂`, `K ≤ H₁` and an
//! isomorphism `γ : L → K`. The model biset is `H₂ × H₁` modulo
//! `(a, b) ~ (a·l, γ(l)⁻¹·b)`, with basepoint `x = [e, e]` satisfying
//! `l·x = x·γ(l)` for `l ∈ L`.
//!
//! Moving the basepoint to `h₂·x·h₁` conjugates the data, so a biset has
//! many standard representations; [`CanonicalKey`] picks the least one and
//! serves as the isomorphism-class label everywhere else in the crate.

mod compose;
mod explicit;
mod factor;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::group::{Elem, FiniteGroup, GroupError, GroupHom, Subgroup};

pub use compose::{compose_formula, compose_formula_with_representatives};
pub use explicit::{compose_bruteforce, ExplicitBiset, ExplicitBisetJson};
pub use factor::{classify, factorize, Classification, Factorization};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BisetError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{what} {sub} is not a subgroup of {ambient}")]
    NotContained { what: &'static str, sub: Subgroup, ambient: Subgroup },
    #[error("gamma is not an isomorphism onto K")]
    NotAnIsomorphism,
    #[error(
        "ambient mismatch: left factor acts on the right by {left} but the right factor acts on the left by {right}"
    )]
    AmbientMismatch { left: Subgroup, right: Subgroup },
    #[error("biset is not bifree: {0}")]
    NotBifree(String),
    #[error("malformed biset: {0}")]
    Malformed(String),
    #[error("point {0} is out of range")]
    BadPoint(usize),
    #[error("element {elem} is not in {group}")]
    NotAMember { elem: Elem, group: Subgroup },
    #[error("double coset representatives do not hit every double coset exactly once")]
    BadRepresentatives,
}

/// The triple `[L, γ, K]` together with its ambient pair `(H₂, H₁)`.
///
/// Ordering compares `H₂`, `H₁`, then `L`, `K` and the graph of `γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StandardRep {
    h2: Subgroup,
    h1: Subgroup,
    gamma: GroupHom,
}

impl StandardRep {
    pub fn new(h2: Subgroup, h1: Subgroup, gamma: GroupHom) -> Result<Self, BisetError> {
        if !gamma.domain().is_subgroup_of(&h2) {
            return Err(BisetError::NotContained { what: "L", sub: gamma.domain().clone(), ambient: h2 });
        }
        if !gamma.codomain().is_subgroup_of(&h1) {
            return Err(BisetError::NotContained { what: "K", sub: gamma.codomain().clone(), ambient: h1 });
        }
        if !gamma.is_bijective() {
            return Err(BisetError::NotAnIsomorphism);
        }
        Ok(Self { h2, h1, gamma })
    }

    /// Builds and validates a representation from raw parts.
    pub fn from_parts(
        g: &FiniteGroup,
        h2: Subgroup,
        h1: Subgroup,
        l: Subgroup,
        k: Subgroup,
        pairs: Vec<(Elem, Elem)>,
    ) -> Result<Self, BisetError> {
        let gamma = GroupHom::isomorphism(g, l, k, pairs).map_err(|e| match e {
            GroupError::NotBijective => BisetError::NotAnIsomorphism,
            other => BisetError::Group(other),
        })?;
        Self::new(h2, h1, gamma)
    }

    pub(crate) fn new_unchecked(h2: Subgroup, h1: Subgroup, gamma: GroupHom) -> Self {
        Self { h2, h1, gamma }
    }

    /// `[H, id, H]` over `(H, H)`: the identity morphism of `H`.
    pub fn identity(h: &Subgroup) -> Self {
        Self { h2: h.clone(), h1: h.clone(), gamma: GroupHom::identity(h) }
    }

    /// `[{e}, id, {e}]` over `(h2, h1)`: the free biorbit.
    pub fn free(g: &FiniteGroup, h2: &Subgroup, h1: &Subgroup) -> Self {
        Self { h2: h2.clone(), h1: h1.clone(), gamma: GroupHom::identity(&g.trivial_subgroup()) }
    }

    /// The left acting group `H₂`.
    pub fn h2(&self) -> &Subgroup {
        &self.h2
    }

    /// The right acting group `H₁`.
    pub fn h1(&self) -> &Subgroup {
        &self.h1
    }

    pub fn l(&self) -> &Subgroup {
        self.gamma.domain()
    }

    pub fn k(&self) -> &Subgroup {
        self.gamma.codomain()
    }

    pub fn gamma(&self) -> &GroupHom {
        &self.gamma
    }

    /// Number of points of the realized biset, `|H₂|·|H₁|/|L|`.
    pub fn size(&self) -> usize {
        self.h2.order() * self.h1.order() / self.l().order()
    }

    /// The standard representation at `h₂·x·h₁`:
    /// `[h₂Lh₂⁻¹, h ↦ h₁⁻¹γ(h₂⁻¹hh₂)h₁, h₁⁻¹Kh₁]`.
    pub fn change_base_point(&self, g: &FiniteGroup, h2: Elem, h1: Elem) -> Result<Self, BisetError> {
        if !self.h2.contains(h2) {
            return Err(BisetError::NotAMember { elem: h2, group: self.h2.clone() });
        }
        if !self.h1.contains(h1) {
            return Err(BisetError::NotAMember { elem: h1, group: self.h1.clone() });
        }
        Ok(self.moved(g, h2, h1))
    }

    fn moved(&self, g: &FiniteGroup, h2: Elem, h1: Elem) -> Self {
        let h2_inv = g.inv(h2);
        let l = g.conjugate_subgroup(self.l(), h2_inv);
        let k = g.conjugate_subgroup(self.k(), h1);
        let mut pairs: Vec<(Elem, Elem)> =
            self.gamma.pairs().iter().map(|&(a, b)| (g.conj(a, h2_inv), g.conj(b, h1))).collect();
        pairs.sort_unstable();
        Self { h2: self.h2.clone(), h1: self.h1.clone(), gamma: GroupHom::from_sorted_unchecked(l, k, pairs) }
    }

    /// `[K, γ⁻¹, L]` over `(H₁, H₂)`: the standard representation of the
    /// opposite biset at the same point.
    pub fn transpose(&self) -> Self {
        Self { h2: self.h1.clone(), h1: self.h2.clone(), gamma: self.gamma.inverse() }
    }

    pub fn canonical_key(&self, g: &FiniteGroup) -> CanonicalKey {
        CanonicalKey::of(g, self)
    }

    pub fn realize(&self, g: &FiniteGroup) -> ExplicitBiset {
        ExplicitBiset::realize(g, self)
    }

    pub fn to_json(&self) -> StandardRepJson {
        StandardRepJson {
            h2: self.h2.clone(),
            h1: self.h1.clone(),
            l: self.l().clone(),
            k: self.k().clone(),
            gamma: self.gamma.pairs().iter().map(|&(a, b)| [a, b]).collect(),
        }
    }
}

impl Serialize for StandardRep {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl fmt::Display for StandardRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {{", self.l())?;
        for (i, (a, b)) in self.gamma.pairs().iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}->{b}")?;
        }
        write!(f, "}}, {}] over ({}, {})", self.k(), self.h2, self.h1)
    }
}

/// Wire form of a [`StandardRep`]; validated against a group by
/// [`StandardRepJson::resolve`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardRepJson {
    #[serde(rename = "H2")]
    pub h2: Subgroup,
    #[serde(rename = "H1")]
    pub h1: Subgroup,
    #[serde(rename = "L")]
    pub l: Subgroup,
    #[serde(rename = "K")]
    pub k: Subgroup,
    pub gamma: Vec<[Elem; 2]>,
}

impl StandardRepJson {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<StandardRep, BisetError> {
        let check = |s: &Subgroup| g.subgroup(s.elements().to_vec());
        let (h2, h1, l, k) = (check(&self.h2)?, check(&self.h1)?, check(&self.l)?, check(&self.k)?);
        StandardRep::from_parts(g, h2, h1, l, k, self.gamma.iter().map(|p| (p[0], p[1])).collect())
    }
}

/// The least standard representation over all basepoints of a transitive
/// biset. Two representations have equal keys iff their bisets are
/// isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalKey(StandardRep);

impl CanonicalKey {
    /// Minimizes `(L, K, graph of γ)` over every basepoint move
    /// `(h₂, h₁) ∈ H₂ × H₁`.
    pub fn of(g: &FiniteGroup, rep: &StandardRep) -> Self {
        // L' only depends on h2 and K' only on h1, so each can be minimized
        // first and the graph compared among the survivors.
        let best_l = rep.h2.iter().map(|h2| g.conjugate_subgroup(rep.l(), g.inv(h2))).min().expect("nonempty");
        let moves2: Vec<Elem> =
            rep.h2.iter().filter(|&h2| g.conjugate_subgroup(rep.l(), g.inv(h2)) == best_l).collect();
        let best_k = rep.h1.iter().map(|h1| g.conjugate_subgroup(rep.k(), h1)).min().expect("nonempty");
        let moves1: Vec<Elem> = rep.h1.iter().filter(|&h1| g.conjugate_subgroup(rep.k(), h1) == best_k).collect();

        let mut best: Option<Vec<(Elem, Elem)>> = None;
        let mut scratch = Vec::with_capacity(rep.l().order());
        for &h2 in &moves2 {
            let h2_inv = g.inv(h2);
            for &h1 in &moves1 {
                scratch.clear();
                scratch.extend(rep.gamma.pairs().iter().map(|&(a, b)| (g.conj(a, h2_inv), g.conj(b, h1))));
                scratch.sort_unstable();
                if best.as_ref().is_none_or(|b| scratch.as_slice() < b.as_slice()) {
                    best = Some(scratch.clone());
                }
            }
        }
        let gamma = GroupHom::from_sorted_unchecked(best_l, best_k, best.expect("nonempty"));
        CanonicalKey(StandardRep { h2: rep.h2.clone(), h1: rep.h1.clone(), gamma })
    }

    /// The canonical representative itself.
    pub fn rep(&self) -> &StandardRep {
        &self.0
    }

    pub fn into_rep(self) -> StandardRep {
        self.0
    }

    pub fn transpose(&self, g: &FiniteGroup) -> CanonicalKey {
        self.0.transpose().canonical_key(g)
    }
}

impl PartialOrd for CanonicalKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Serialize for CanonicalKey {
    /// Serialized as the minimal encoding tuple `[L, K, graph of γ]`.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[Elem; 2]> = self.0.gamma.pairs().iter().map(|&(a, b)| [a, b]).collect();
        (self.0.l(), self.0.k(), pairs).serialize(serializer)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Canonical keys of every indecomposable bifree `h2`-`h1` biset, sorted.
pub fn indecomposables(g: &FiniteGroup, h2: &Subgroup, h1: &Subgroup) -> Vec<CanonicalKey> {
    let left_classes = g.conjugacy_classes_in(&g.subgroups_of(h2), h2);
    let right_classes = g.conjugacy_classes_in(&g.subgroups_of(h1), h1);
    let mut keys = BTreeSet::new();
    for lc in &left_classes {
        let l = &lc[0];
        for rc in right_classes.iter().filter(|c| c[0].order() == l.order()) {
            for gamma in GroupHom::isomorphisms(g, l, &rc[0]) {
                keys.insert(StandardRep::new_unchecked(h2.clone(), h1.clone(), gamma).canonical_key(g));
            }
        }
    }
    keys.into_iter().collect()
}

/// Canonical keys of every indecomposable conjugation `h2`-`h1` biset,
/// sorted.
pub fn conjugation_keys(g: &FiniteGroup, h2: &Subgroup, h1: &Subgroup) -> Vec<CanonicalKey> {
    let left_classes = g.conjugacy_classes_in(&g.subgroups_of(h2), h2);
    let mut keys = BTreeSet::new();
    for lc in &left_classes {
        let l = &lc[0];
        for x in g.elements() {
            let gamma = GroupHom::conjugation(g, l, x);
            if gamma.codomain().is_subgroup_of(h1) {
                keys.insert(StandardRep::new_unchecked(h2.clone(), h1.clone(), gamma).canonical_key(g));
            }
        }
    }
    keys.into_iter().collect()
}
