//! Mackey functors for a finite group, given by generators.
//!
//! A [`MackeyData`] stores, for every subgroup `H`, an abelian group
//! `M(H)`, and the three kinds of generating maps: restrictions
//! `res^K_H : M(K) → M(H)`, inductions `ind^K_H : M(H) → M(K)` and
//! conjugations `con(g, H) : M(H) → M(H^g)`. Every G-map between transitive
//! G-sets factors through these, which is how the covariant and
//! contravariant parts on arbitrary G-maps are reconstructed.
//!
//! The checkers in this module work against the [`BivariantFunctor`] trait
//! so they apply equally to the stored data and to the composite `F∘j`
//! of an additive functor out of the conjugation category.

mod checks;
mod examples;
mod factor;

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::abelian::{linalg::Mat, AbHom, AbelianError, FgAbelianGroup};
use crate::biset::BisetError;
use crate::category::{CategoryError, GMap, PointedGSet};
use crate::group::{Elem, FiniteGroup, GroupError, GroupSpec, Subgroup};

pub use checks::{check_conjugation_invariance, check_m1, check_m2, validate_structure, SquareSampling};
pub use examples::{burnside_example, fixed_point_c2_z3, fixed_point_example, GModule};
pub use factor::{
    build_f, check_agreement, check_generated_by_j, verify_functoriality, verify_functoriality_at, FactoredFunctor,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MackeyError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Biset(#[from] BisetError),
    #[error("missing map entry {0}")]
    MissingMap(String),
    #[error("malformed Mackey data: {0}")]
    Malformed(String),
    #[error("map {name} has the wrong shape: {source}")]
    BadMap { name: String, source: AbelianError },
    #[error("not conjugation invariant: con({element}, {subgroup}) is not the identity")]
    NotConjugationInvariant { subgroup: Subgroup, element: Elem, con: Mat },
    #[error("{0} is not a conjugation biset")]
    NotAConjugationBiset(String),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
}

/// Generator data for a Mackey functor over a finite group.
#[derive(Clone, Debug)]
pub struct MackeyData {
    spec: GroupSpec,
    group: FiniteGroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    values: Vec<FgAbelianGroup>,
    /// Keyed by (index of H, index of K) for H ≤ K.
    res: HashMap<(usize, usize), AbHom>,
    ind: HashMap<(usize, usize), AbHom>,
    /// `con[g * n + i]` is `con(g, H_i)`.
    con: Vec<AbHom>,
}

impl MackeyData {
    /// Assembles data from callbacks, checking that every map has the
    /// right domain and codomain.
    pub fn build(
        spec: GroupSpec,
        group: FiniteGroup,
        mut value: impl FnMut(&Subgroup) -> Result<FgAbelianGroup, MackeyError>,
        mut res: impl FnMut(&Subgroup, &Subgroup) -> Result<AbHom, MackeyError>,
        mut ind: impl FnMut(&Subgroup, &Subgroup) -> Result<AbHom, MackeyError>,
        mut con: impl FnMut(Elem, &Subgroup) -> Result<AbHom, MackeyError>,
    ) -> Result<Self, MackeyError> {
        let subgroups = group.subgroups().to_vec();
        let index: HashMap<Subgroup, usize> = subgroups.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
        let values = subgroups.iter().map(&mut value).collect::<Result<Vec<_>, _>>()?;
        let check = |name: String, f: &AbHom, dom: &FgAbelianGroup, cod: &FgAbelianGroup| {
            if f.domain() != dom || f.codomain() != cod {
                return Err(MackeyError::BadMap { name, source: AbelianError::Mismatch });
            }
            Ok(())
        };
        let mut res_map = HashMap::new();
        let mut ind_map = HashMap::new();
        for (i, h) in subgroups.iter().enumerate() {
            for (j, k) in subgroups.iter().enumerate() {
                if !h.is_subgroup_of(k) {
                    continue;
                }
                let r = res(h, k)?;
                check(res_key(h, k), &r, &values[j], &values[i])?;
                res_map.insert((i, j), r);
                let t = ind(h, k)?;
                check(ind_key(h, k), &t, &values[i], &values[j])?;
                ind_map.insert((i, j), t);
            }
        }
        let n = subgroups.len();
        let mut con_maps = Vec::with_capacity(group.order() * n);
        for x in group.elements() {
            for (i, h) in subgroups.iter().enumerate() {
                let c = con(x, h)?;
                let target = index[&group.conjugate_subgroup(h, x)];
                check(con_key(x, h), &c, &values[i], &values[target])?;
                con_maps.push(c);
            }
        }
        Ok(Self { spec, group, subgroups, index, values, res: res_map, ind: ind_map, con: con_maps })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    fn idx(&self, h: &Subgroup) -> usize {
        *self.index.get(h).unwrap_or_else(|| panic!("{h} is not a subgroup"))
    }

    pub fn value_at(&self, h: &Subgroup) -> &FgAbelianGroup {
        &self.values[self.idx(h)]
    }

    /// `res^K_H`, for `H ≤ K`.
    pub fn res_map(&self, h: &Subgroup, k: &Subgroup) -> &AbHom {
        &self.res[&(self.idx(h), self.idx(k))]
    }

    /// `ind^K_H`, for `H ≤ K`.
    pub fn ind_map(&self, h: &Subgroup, k: &Subgroup) -> &AbHom {
        &self.ind[&(self.idx(h), self.idx(k))]
    }

    /// `con(g, H) : M(H) → M(H^g)`.
    pub fn con_map(&self, g: Elem, h: &Subgroup) -> &AbHom {
        &self.con[g * self.subgroups.len() + self.idx(h)]
    }

    pub fn to_json(&self) -> MackeyDataJson {
        let values = self
            .subgroups
            .iter()
            .zip(&self.values)
            .map(|(h, v)| ValueJson { subgroup: h.clone(), factors: v.factors().to_vec() })
            .collect();
        let mut maps = BTreeMap::new();
        for (&(i, j), f) in &self.res {
            maps.insert(res_key(&self.subgroups[i], &self.subgroups[j]), f.matrix().clone());
        }
        for (&(i, j), f) in &self.ind {
            maps.insert(ind_key(&self.subgroups[i], &self.subgroups[j]), f.matrix().clone());
        }
        let n = self.subgroups.len();
        for (pos, f) in self.con.iter().enumerate() {
            maps.insert(con_key(pos / n, &self.subgroups[pos % n]), f.matrix().clone());
        }
        MackeyDataJson { group: self.spec.clone(), values, maps }
    }
}

impl Serialize for MackeyData {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

fn sub_str(h: &Subgroup) -> String {
    serde_json::to_string(h).expect("subgroups serialize")
}

pub fn res_key(h: &Subgroup, k: &Subgroup) -> String {
    format!("res:{}<{}", sub_str(h), sub_str(k))
}

pub fn ind_key(h: &Subgroup, k: &Subgroup) -> String {
    format!("ind:{}<{}", sub_str(h), sub_str(k))
}

pub fn con_key(g: Elem, h: &Subgroup) -> String {
    format!("con:{g},{}", sub_str(h))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueJson {
    pub subgroup: Subgroup,
    pub factors: Vec<i64>,
}

/// Wire form of [`MackeyData`]. Map keys are `"res:H<K"`, `"ind:H<K"` and
/// `"con:g,H"` with subgroups written as JSON element lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MackeyDataJson {
    pub group: GroupSpec,
    pub values: Vec<ValueJson>,
    pub maps: BTreeMap<String, Mat>,
}

impl MackeyDataJson {
    pub fn resolve(&self) -> Result<MackeyData, MackeyError> {
        let group = self.group.build()?;
        let mut values: HashMap<Subgroup, FgAbelianGroup> = HashMap::new();
        for v in &self.values {
            let h = group.subgroup(v.subgroup.elements().to_vec())?;
            if values.insert(h.clone(), FgAbelianGroup::new(v.factors.clone())?).is_some() {
                return Err(MackeyError::Malformed(format!("subgroup {h} listed twice")));
            }
        }
        if values.len() != group.subgroups().len() {
            return Err(MackeyError::Malformed(format!(
                "values given for {} subgroups, the group has {}",
                values.len(),
                group.subgroups().len()
            )));
        }
        let mut used = 0usize;
        let mut take = |name: String, dom: &FgAbelianGroup, cod: &FgAbelianGroup| -> Result<AbHom, MackeyError> {
            let m = self.maps.get(&name).ok_or_else(|| MackeyError::MissingMap(name.clone()))?;
            used += 1;
            AbHom::new(dom.clone(), cod.clone(), m.clone()).map_err(|source| MackeyError::BadMap { name, source })
        };
        let value = |h: &Subgroup| Ok(values[h].clone());
        let mut res = HashMap::new();
        let mut ind = HashMap::new();
        let subs = group.subgroups();
        for h in subs {
            for k in subs.iter().filter(|k| h.is_subgroup_of(k)) {
                res.insert((h.clone(), k.clone()), take(res_key(h, k), &values[k], &values[h])?);
                ind.insert((h.clone(), k.clone()), take(ind_key(h, k), &values[h], &values[k])?);
            }
        }
        let mut con = HashMap::new();
        for x in group.elements() {
            for h in subs {
                let target = group.conjugate_subgroup(h, x);
                con.insert((x, h.clone()), take(con_key(x, h), &values[h], &values[&target])?);
            }
        }
        if used != self.maps.len() {
            return Err(MackeyError::Malformed(format!("{} unrecognized map keys", self.maps.len() - used)));
        }
        MackeyData::build(
            self.group.clone(),
            group.clone(),
            value,
            |h, k| Ok(res[&(h.clone(), k.clone())].clone()),
            |h, k| Ok(ind[&(h.clone(), k.clone())].clone()),
            |x, h| Ok(con[&(x, h.clone())].clone()),
        )
    }
}

/// A bivariant functor from finite G-sets to abelian groups, known on maps
/// between transitive G-sets and extended additively.
pub trait BivariantFunctor {
    fn group(&self) -> &FiniteGroup;

    fn value(&self, h: &Subgroup) -> FgAbelianGroup;

    /// `M_*(f)` for a map `G/H → G/K`.
    fn covariant(&self, f: &GMap) -> Result<AbHom, MackeyError>;

    /// `M^*(f)` for a map `G/H → G/K`.
    fn contravariant(&self, f: &GMap) -> Result<AbHom, MackeyError>;

    fn res(&self, h: &Subgroup, k: &Subgroup) -> Result<AbHom, MackeyError> {
        let g = self.group();
        self.contravariant(&GMap::single(g, h, k, g.identity())?)
    }

    fn ind(&self, h: &Subgroup, k: &Subgroup) -> Result<AbHom, MackeyError> {
        let g = self.group();
        self.covariant(&GMap::single(g, h, k, g.identity())?)
    }

    /// `con(x, H)`: the covariant map of `G/H → G/H^x`, `eH ↦ xH^x`.
    fn con(&self, x: Elem, h: &Subgroup) -> Result<AbHom, MackeyError> {
        let g = self.group();
        self.covariant(&GMap::single(g, h, &g.conjugate_subgroup(h, x), x)?)
    }

    /// `M(X) = ⊕ M(H_i)`; the empty G-set goes to the zero group.
    fn value_of(&self, x: &PointedGSet) -> FgAbelianGroup {
        FgAbelianGroup::direct_sum(&self.values_of(x))
    }

    fn values_of(&self, x: &PointedGSet) -> Vec<FgAbelianGroup> {
        x.orbits.iter().map(|h| self.value(h)).collect()
    }

    /// `M_*(f)` for an arbitrary G-map, as a block matrix.
    fn covariant_map(&self, f: &GMap) -> Result<AbHom, MackeyError> {
        let (src, tgt) = (self.values_of(f.source()), self.values_of(f.target()));
        let mut blocks: Vec<Vec<AbHom>> = tgt.iter().map(|c| src.iter().map(|d| AbHom::zero(d, c)).collect()).collect();
        for i in 0..src.len() {
            blocks[f.orbit_map()[i]][i] = self.covariant(&component(self.group(), f, i)?)?;
        }
        Ok(AbHom::block(&src, &tgt, &blocks)?)
    }

    /// `M^*(f)` for an arbitrary G-map, as a block matrix.
    fn contravariant_map(&self, f: &GMap) -> Result<AbHom, MackeyError> {
        let (src, tgt) = (self.values_of(f.source()), self.values_of(f.target()));
        let mut blocks: Vec<Vec<AbHom>> = src.iter().map(|c| tgt.iter().map(|d| AbHom::zero(d, c)).collect()).collect();
        for i in 0..src.len() {
            blocks[i][f.orbit_map()[i]] = self.contravariant(&component(self.group(), f, i)?)?;
        }
        Ok(AbHom::block(&tgt, &src, &blocks)?)
    }
}

/// The restriction of `f` to orbit `i`, as a map of transitive G-sets.
fn component(g: &FiniteGroup, f: &GMap, i: usize) -> Result<GMap, MackeyError> {
    let t = f.orbit_map()[i];
    Ok(GMap::single(g, f.source().orbit(i), f.target().orbit(t), f.witnesses()[i])?)
}

impl BivariantFunctor for MackeyData {
    fn group(&self) -> &FiniteGroup {
        &self.group
    }

    fn value(&self, h: &Subgroup) -> FgAbelianGroup {
        self.value_at(h).clone()
    }

    /// `ind^K_{H^g} ∘ con(g, H)` for `eH ↦ gK`.
    fn covariant(&self, f: &GMap) -> Result<AbHom, MackeyError> {
        let (h, k, w) = single_parts(f)?;
        let hg = self.group.conjugate_subgroup(h, w);
        Ok(self.ind_map(&hg, k).compose(self.con_map(w, h))?)
    }

    /// `con(g⁻¹, H^g) ∘ res^K_{H^g}` for `eH ↦ gK`.
    fn contravariant(&self, f: &GMap) -> Result<AbHom, MackeyError> {
        let (h, k, w) = single_parts(f)?;
        let hg = self.group.conjugate_subgroup(h, w);
        Ok(self.con_map(self.group.inv(w), &hg).compose(self.res_map(&hg, k))?)
    }

    fn res(&self, h: &Subgroup, k: &Subgroup) -> Result<AbHom, MackeyError> {
        Ok(self.res_map(h, k).clone())
    }

    fn ind(&self, h: &Subgroup, k: &Subgroup) -> Result<AbHom, MackeyError> {
        Ok(self.ind_map(h, k).clone())
    }

    fn con(&self, x: Elem, h: &Subgroup) -> Result<AbHom, MackeyError> {
        Ok(self.con_map(x, h).clone())
    }
}

pub(crate) fn single_parts(f: &GMap) -> Result<(&Subgroup, &Subgroup, Elem), MackeyError> {
    if !f.is_single_orbit() {
        return Err(CategoryError::NotSingleOrbit.into());
    }
    Ok((f.source().orbit(0), f.target().orbit(0), f.witnesses()[0]))
}

/// Outcome of one checker.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub verdict: Verdict,
    /// Number of instances examined.
    pub instances: usize,
    /// Total number of failing instances; only the first few are kept in
    /// `failures`.
    pub failure_count: usize,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// A counterexample: the axiom, the instance, and the two sides that
/// should have agreed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: String,
    pub instance: serde_json::Value,
    pub left: Mat,
    pub right: Mat,
}

const KEPT_FAILURES: usize = 10;

impl CheckReport {
    pub(crate) fn new(check: &str) -> Self {
        Self { check: check.into(), verdict: Verdict::Pass, instances: 0, failure_count: 0, failures: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// Records one instance comparing `left` with `right`.
    pub(crate) fn compare(
        &mut self,
        axiom: &str,
        instance: impl FnOnce() -> serde_json::Value,
        left: &AbHom,
        right: &AbHom,
    ) {
        self.instances += 1;
        if left != right {
            self.fail(axiom, instance(), left.matrix().clone(), right.matrix().clone());
        }
    }

    pub(crate) fn fail(&mut self, axiom: &str, instance: serde_json::Value, left: Mat, right: Mat) {
        self.verdict = Verdict::Fail;
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(Failure { axiom: axiom.into(), instance, left, right });
        }
    }

    pub(crate) fn merge(&mut self, other: CheckReport) {
        self.instances += other.instances;
        self.failure_count += other.failure_count;
        if other.verdict == Verdict::Fail {
            self.verdict = Verdict::Fail;
        }
        for f in other.failures {
            if self.failures.len() < KEPT_FAILURES {
                self.failures.push(f);
            }
        }
    }
}
