//! The Burnside category of bifree bisets and its additive completion.
//!
//! Objects are subgroups of a fixed group `G`. A morphism `H₁ → H₂` is a
//! formal integer combination of indecomposable bifree `H₂`-`H₁` bisets,
//! stored by canonical key; composition is the balanced product, computed
//! through the double coset formula. Morphisms of the additive completion
//! are matrices of such combinations between ordered tuples of subgroups.
//!
//! Pointed G-sets and G-maps live in [`gset`]; the bivariant functor from
//! them into the conjugation subcategory is [`j_lower`] / [`j_upper`].

mod gset;
mod jfunctor;
mod pullback;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::biset::{classify, compose_formula, BisetError, CanonicalKey, StandardRep, StandardRepJson};
use crate::group::{FiniteGroup, Subgroup};

pub use gset::{
    centralizer_criterion, conjugation_class, orbit_maps, same_conjugation_class, GMap, GMapJson, GSet, PointedGSet,
};
pub use jfunctor::{j_lower, j_upper};
pub use pullback::{pullback, pullback_bruteforce, verify_pullback, Pullback};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CategoryError {
    #[error(transparent)]
    Biset(#[from] BisetError),
    #[error(transparent)]
    Group(#[from] crate::group::GroupError),
    #[error("endpoint mismatch: expected {expected}, found {found}")]
    EndpointMismatch { expected: Subgroup, found: Subgroup },
    #[error("object tuples do not match")]
    TupleMismatch,
    #[error("matrix entry ({row}, {col}) has the wrong endpoints")]
    BadEntry { row: usize, col: usize },
    #[error("invalid G-action: {0}")]
    BadAction(String),
    #[error("orbit map sends orbit {orbit} to {target}, which does not exist")]
    OrbitOutOfRange { orbit: usize, target: usize },
    #[error("witness {witness} for orbit {orbit} does not conjugate {stabilizer} into {target}")]
    BadWitness { orbit: usize, witness: usize, stabilizer: Subgroup, target: Subgroup },
    #[error("expected a map between single orbits")]
    NotSingleOrbit,
    #[error("maps do not share a target orbit")]
    TargetMismatch,
}

/// A morphism `source → target` of the Burnside category: an integer
/// combination of indecomposable bifree `target`-`source` bisets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BisetMorphism {
    source: Subgroup,
    target: Subgroup,
    terms: BTreeMap<CanonicalKey, i64>,
}

impl BisetMorphism {
    pub fn zero(source: &Subgroup, target: &Subgroup) -> Self {
        Self { source: source.clone(), target: target.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(g: &FiniteGroup, h: &Subgroup) -> Self {
        Self::from_rep(g, &StandardRep::identity(h))
    }

    /// The class of a single indecomposable biset.
    pub fn from_key(key: CanonicalKey) -> Self {
        let (source, target) = (key.rep().h1().clone(), key.rep().h2().clone());
        Self { source, target, terms: BTreeMap::from([(key, 1)]) }
    }

    pub fn from_rep(g: &FiniteGroup, rep: &StandardRep) -> Self {
        Self::from_key(rep.canonical_key(g))
    }

    /// Sum of the components of a (possibly decomposable) biset given as a
    /// list of standard representations over `(target, source)`.
    pub fn from_reps(
        g: &FiniteGroup,
        source: &Subgroup,
        target: &Subgroup,
        reps: &[StandardRep],
    ) -> Result<Self, CategoryError> {
        let mut m = Self::zero(source, target);
        for rep in reps {
            m.check_rep(rep)?;
            m.add_term(rep.canonical_key(g), 1);
        }
        Ok(m)
    }

    fn check_rep(&self, rep: &StandardRep) -> Result<(), CategoryError> {
        if rep.h1() != &self.source {
            return Err(CategoryError::EndpointMismatch { expected: self.source.clone(), found: rep.h1().clone() });
        }
        if rep.h2() != &self.target {
            return Err(CategoryError::EndpointMismatch { expected: self.target.clone(), found: rep.h2().clone() });
        }
        Ok(())
    }

    fn add_term(&mut self, key: CanonicalKey, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(key.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&key);
        }
    }

    pub fn source(&self) -> &Subgroup {
        &self.source
    }

    pub fn target(&self) -> &Subgroup {
        &self.target
    }

    pub fn terms(&self) -> &BTreeMap<CanonicalKey, i64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &BisetMorphism) -> Result<Self, CategoryError> {
        self.check_same_endpoints(other)?;
        let mut out = self.clone();
        for (k, &c) in &other.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self::zero(&self.source, &self.target);
        for (k, &v) in &self.terms {
            out.add_term(k.clone(), c * v);
        }
        out
    }

    fn check_same_endpoints(&self, other: &BisetMorphism) -> Result<(), CategoryError> {
        if self.source != other.source {
            return Err(CategoryError::EndpointMismatch { expected: self.source.clone(), found: other.source.clone() });
        }
        if self.target != other.target {
            return Err(CategoryError::EndpointMismatch { expected: self.target.clone(), found: other.target.clone() });
        }
        Ok(())
    }

    /// `self ∘ first`, extended bilinearly from the double coset formula.
    pub fn compose(&self, g: &FiniteGroup, first: &BisetMorphism) -> Result<Self, CategoryError> {
        if self.source != first.target {
            return Err(CategoryError::EndpointMismatch { expected: self.source.clone(), found: first.target.clone() });
        }
        let mut out = Self::zero(&first.source, &self.target);
        for (k2, &c2) in &self.terms {
            for (k1, &c1) in &first.terms {
                for rep in compose_formula(g, k2.rep(), k1.rep())? {
                    out.add_term(rep.canonical_key(g), c2 * c1);
                }
            }
        }
        Ok(out)
    }

    /// Termwise opposite biset, with source and target swapped.
    pub fn tau(&self, g: &FiniteGroup) -> Self {
        let mut out = Self::zero(&self.target, &self.source);
        for (k, &c) in &self.terms {
            out.add_term(k.transpose(g), c);
        }
        out
    }

    /// Whether every term is a conjugation biset.
    pub fn is_in_b(&self, g: &FiniteGroup) -> bool {
        self.terms.keys().all(|k| classify(g, k.rep()).conjugation)
    }

    pub fn to_json(&self) -> BisetMorphismJson {
        BisetMorphismJson {
            source: self.source.clone(),
            target: self.target.clone(),
            terms: self.terms.iter().map(|(k, &coeff)| TermJson { rep: k.rep().to_json(), coeff }).collect(),
        }
    }
}

impl Serialize for BisetMorphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub rep: StandardRepJson,
    pub coeff: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BisetMorphismJson {
    pub source: Subgroup,
    pub target: Subgroup,
    pub terms: Vec<TermJson>,
}

impl BisetMorphismJson {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<BisetMorphism, CategoryError> {
        let source = g.subgroup(self.source.elements().to_vec())?;
        let target = g.subgroup(self.target.elements().to_vec())?;
        let mut m = BisetMorphism::zero(&source, &target);
        for t in &self.terms {
            let rep = t.rep.resolve(g)?;
            m.check_rep(&rep)?;
            m.add_term(rep.canonical_key(g), t.coeff);
        }
        Ok(m)
    }
}

/// A morphism of the additive completion: `entries[i][j]` goes from
/// `source[j]` to `target[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixMorphism {
    source: Vec<Subgroup>,
    target: Vec<Subgroup>,
    entries: Vec<Vec<BisetMorphism>>,
}

impl MatrixMorphism {
    pub fn new(
        source: Vec<Subgroup>,
        target: Vec<Subgroup>,
        entries: Vec<Vec<BisetMorphism>>,
    ) -> Result<Self, CategoryError> {
        if entries.len() != target.len() || entries.iter().any(|row| row.len() != source.len()) {
            return Err(CategoryError::TupleMismatch);
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                if e.source != source[j] || e.target != target[i] {
                    return Err(CategoryError::BadEntry { row: i, col: j });
                }
            }
        }
        Ok(Self { source, target, entries })
    }

    pub fn zero(source: &[Subgroup], target: &[Subgroup]) -> Self {
        let entries = target.iter().map(|t| source.iter().map(|s| BisetMorphism::zero(s, t)).collect()).collect();
        Self { source: source.to_vec(), target: target.to_vec(), entries }
    }

    pub fn identity(g: &FiniteGroup, objects: &[Subgroup]) -> Self {
        let mut m = Self::zero(objects, objects);
        for (i, h) in objects.iter().enumerate() {
            m.entries[i][i] = BisetMorphism::identity(g, h);
        }
        m
    }

    /// The 1×1 matrix of a single morphism.
    pub fn single(m: BisetMorphism) -> Self {
        Self { source: vec![m.source.clone()], target: vec![m.target.clone()], entries: vec![vec![m]] }
    }

    pub fn source(&self) -> &[Subgroup] {
        &self.source
    }

    pub fn target(&self) -> &[Subgroup] {
        &self.target
    }

    pub fn entry(&self, row: usize, col: usize) -> &BisetMorphism {
        &self.entries[row][col]
    }

    pub fn entries(&self) -> &[Vec<BisetMorphism>] {
        &self.entries
    }

    pub(crate) fn set_entry(&mut self, row: usize, col: usize, m: BisetMorphism) {
        debug_assert!(m.source == self.source[col] && m.target == self.target[row]);
        self.entries[row][col] = m;
    }

    pub fn add(&self, other: &MatrixMorphism) -> Result<Self, CategoryError> {
        if self.source != other.source || self.target != other.target {
            return Err(CategoryError::TupleMismatch);
        }
        let mut out = self.clone();
        for (i, row) in other.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out.entries[i][j] = out.entries[i][j].add(e)?;
            }
        }
        Ok(out)
    }

    /// Matrix product `self · first`.
    pub fn compose(&self, g: &FiniteGroup, first: &MatrixMorphism) -> Result<Self, CategoryError> {
        if self.source != first.target {
            return Err(CategoryError::TupleMismatch);
        }
        let mut out = Self::zero(&first.source, &self.target);
        for i in 0..self.target.len() {
            for j in 0..first.source.len() {
                let mut acc = BisetMorphism::zero(&first.source[j], &self.target[i]);
                for k in 0..self.source.len() {
                    let (b, a) = (&self.entries[i][k], &first.entries[k][j]);
                    if b.is_zero() || a.is_zero() {
                        continue;
                    }
                    acc = acc.add(&b.compose(g, a)?)?;
                }
                out.entries[i][j] = acc;
            }
        }
        Ok(out)
    }

    /// `τ` on every entry, then transpose the grid.
    pub fn tau(&self, g: &FiniteGroup) -> Self {
        let entries = (0..self.source.len())
            .map(|j| (0..self.target.len()).map(|i| self.entries[i][j].tau(g)).collect())
            .collect();
        Self { source: self.target.clone(), target: self.source.clone(), entries }
    }

    pub fn is_in_b(&self, g: &FiniteGroup) -> bool {
        self.entries.iter().flatten().all(|e| e.is_in_b(g))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::{indecomposables, StandardRep};
    use crate::group::{GroupHom, GroupSpec};

    fn s3() -> FiniteGroup {
        GroupSpec::Symmetric { n: 3 }.build().unwrap()
    }

    #[test]
    fn additive_structure() {
        let g = s3();
        let all = g.whole();
        let keys = indecomposables(&g, &all, &all);
        let a = BisetMorphism::from_key(keys[0].clone());
        let b = BisetMorphism::from_key(keys[1].clone());
        let zero = BisetMorphism::zero(&all, &all);
        assert_eq!(a.add(&zero).unwrap(), a);
        assert!(a.add(&a.neg()).unwrap().is_zero());
        assert_eq!(a.add(&a).unwrap().terms()[&keys[0]], 2);
        assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        let c2 = g.subgroups()[1].clone();
        assert!(a.add(&BisetMorphism::identity(&g, &c2)).is_err());
    }

    #[test]
    fn composition_examples() {
        let g = s3();
        let all = g.whole();
        let c2 = g.subgroups()[1].clone();
        let id = GroupHom::identity(&c2);
        let res = BisetMorphism::from_rep(&g, &StandardRep::new(c2.clone(), all.clone(), id.clone()).unwrap());
        let ind = BisetMorphism::from_rep(&g, &StandardRep::new(all.clone(), c2.clone(), id).unwrap());
        let out = res.compose(&g, &ind).unwrap();
        let expect = BisetMorphism::identity(&g, &c2)
            .add(&BisetMorphism::from_rep(&g, &StandardRep::free(&g, &c2, &c2)))
            .unwrap();
        assert_eq!(out, expect);
        assert_eq!(BisetMorphism::identity(&g, &c2).compose(&g, &res).unwrap(), res);
        assert!(BisetMorphism::zero(&c2, &c2).compose(&g, &res).unwrap().is_zero());
        assert!(ind.compose(&g, &ind).is_err());
        // τ reverses composition
        assert_eq!(out.tau(&g), ind.tau(&g).compose(&g, &res.tau(&g)).unwrap());
        assert_eq!(res.tau(&g), ind);
    }

    #[test]
    fn klein_swap_is_not_conjugation() {
        let v4 = GroupSpec::Klein4.build().unwrap();
        let (a, b) = (v4.generate(&[1]), v4.generate(&[2]));
        let gamma = GroupHom::isomorphism(&v4, a, b, vec![(0, 0), (1, 2)]).unwrap();
        let rep = StandardRep::new(v4.whole(), v4.whole(), gamma).unwrap();
        assert!(!BisetMorphism::from_rep(&v4, &rep).is_in_b(&v4));
        assert!(BisetMorphism::identity(&v4, &v4.whole()).is_in_b(&v4));
    }

    #[test]
    fn matrices() {
        let g = s3();
        let subs = g.subgroups();
        let objs = vec![subs[1].clone(), subs[4].clone(), g.whole()];
        let id = MatrixMorphism::identity(&g, &objs);
        let mut a = MatrixMorphism::zero(&objs[..2], &objs);
        for (i, t) in objs.iter().enumerate() {
            for (j, s) in objs[..2].iter().enumerate() {
                if let Some(k) = indecomposables(&g, t, s).into_iter().nth(i + j) {
                    a.set_entry(i, j, BisetMorphism::from_key(k));
                }
            }
        }
        assert_eq!(id.compose(&g, &a).unwrap(), a);
        assert_eq!(a.compose(&g, &MatrixMorphism::identity(&g, &objs[..2])).unwrap(), a);
        assert_eq!(a.tau(&g).tau(&g), a);
        assert_eq!(a.tau(&g).source(), &objs[..]);
        // 1×2 times 2×1 is a sum of two composites
        let row = MatrixMorphism::new(
            objs[..2].to_vec(),
            vec![g.whole()],
            vec![vec![a.entry(2, 0).clone(), a.entry(2, 1).clone()]],
        )
        .unwrap();
        let col = MatrixMorphism::new(
            vec![g.whole()],
            objs[..2].to_vec(),
            vec![vec![a.entry(2, 0).tau(&g)], vec![a.entry(2, 1).tau(&g)]],
        )
        .unwrap();
        let prod = row.compose(&g, &col).unwrap();
        let by_hand = a
            .entry(2, 0)
            .compose(&g, &a.entry(2, 0).tau(&g))
            .unwrap()
            .add(&a.entry(2, 1).compose(&g, &a.entry(2, 1).tau(&g)).unwrap())
            .unwrap();
        assert_eq!(prod.entry(0, 0), &by_hand);
        assert!(MatrixMorphism::new(objs.clone(), objs.clone(), vec![]).is_err());
    }
}
