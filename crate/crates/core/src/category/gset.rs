use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::CategoryError;
use crate::group::{Elem, FiniteGroup, GroupHom, Subgroup};

/// A finite left G-set given by its action table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSet {
    size: usize,
    /// `table[g * size + p]` is `g·p`.
    table: Vec<usize>,
}

impl GSet {
    /// Validates `table[g][p] = g·p` as a left action.
    pub fn from_table(g: &FiniteGroup, table: Vec<Vec<usize>>) -> Result<Self, CategoryError> {
        if table.len() != g.order() {
            return Err(CategoryError::BadAction(format!("expected {} rows", g.order())));
        }
        let size = table.first().map_or(0, Vec::len);
        if table.iter().any(|r| r.len() != size) {
            return Err(CategoryError::BadAction("rows have different lengths".into()));
        }
        if table.iter().flatten().any(|&p| p >= size) {
            return Err(CategoryError::BadAction("point out of range".into()));
        }
        let x = Self { size, table: table.concat() };
        for p in 0..size {
            if x.act(g.identity(), p) != p {
                return Err(CategoryError::BadAction(format!("identity moves point {p}")));
            }
            for a in g.elements() {
                for b in g.elements() {
                    if x.act(g.mul(a, b), p) != x.act(a, x.act(b, p)) {
                        return Err(CategoryError::BadAction(format!("({a}*{b})·{p} != {a}·({b}·{p})")));
                    }
                }
            }
        }
        Ok(x)
    }

    /// `G/H` acted on by left multiplication. Cosets are numbered by their
    /// least element, ascending, so `eH` is point 0.
    pub fn coset_space(g: &FiniteGroup, h: &Subgroup) -> Self {
        let coset_of = left_coset_index(g, h);
        let n = g.order() / h.order();
        let reps = left_coset_reps(g, h);
        let mut table = vec![0; g.order() * n];
        for a in g.elements() {
            for (p, &x) in reps.iter().enumerate() {
                table[a * n + p] = coset_of[g.mul(a, x)];
            }
        }
        Self { size: n, table }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn act(&self, a: Elem, p: usize) -> usize {
        self.table[a * self.size + p]
    }

    pub fn disjoint_union(&self, other: &GSet, g: &FiniteGroup) -> Self {
        let (n, m) = (self.size, other.size);
        let mut table = Vec::with_capacity(g.order() * (n + m));
        for a in g.elements() {
            table.extend_from_slice(&self.table[a * n..(a + 1) * n]);
            table.extend(other.table[a * m..(a + 1) * m].iter().map(|p| p + n));
        }
        Self { size: n + m, table }
    }

    /// Orbits ordered by least point, each based at its least point, with
    /// the stabilizer of that point recorded.
    pub fn decompose(&self, g: &FiniteGroup) -> PointedGSet {
        let mut seen = vec![false; self.size];
        let mut orbits = Vec::new();
        for b in 0..self.size {
            if seen[b] {
                continue;
            }
            seen[b] = true;
            let mut queue = VecDeque::from([b]);
            while let Some(p) = queue.pop_front() {
                for a in g.elements() {
                    let q = self.act(a, p);
                    if !seen[q] {
                        seen[q] = true;
                        queue.push_back(q);
                    }
                }
            }
            orbits.push(Subgroup::from_sorted_unchecked(g.elements().filter(|&a| self.act(a, b) == b).collect()));
        }
        PointedGSet { orbits }
    }
}

/// Least element of each left coset `xH`, ascending.
pub(crate) fn left_coset_reps(g: &FiniteGroup, h: &Subgroup) -> Vec<Elem> {
    let idx = left_coset_index(g, h);
    let mut reps = Vec::new();
    for x in g.elements() {
        if idx[x] == reps.len() {
            reps.push(x);
        }
    }
    reps
}

/// For each element `x`, the number of the coset `xH` (cosets numbered by
/// least element).
pub(crate) fn left_coset_index(g: &FiniteGroup, h: &Subgroup) -> Vec<usize> {
    let mut idx = vec![usize::MAX; g.order()];
    let mut next = 0;
    for x in g.elements() {
        if idx[x] != usize::MAX {
            continue;
        }
        for y in h.iter() {
            idx[g.mul(x, y)] = next;
        }
        next += 1;
    }
    idx
}

/// The least element of `xH`.
pub(crate) fn min_in_coset(g: &FiniteGroup, x: Elem, h: &Subgroup) -> Elem {
    h.iter().map(|y| g.mul(x, y)).min().expect("nonempty")
}

/// A G-set presented as the ordered list of stabilizers of chosen
/// basepoints, one per orbit: orbit `i` is `G/H_i` based at `eH_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct PointedGSet {
    pub orbits: Vec<Subgroup>,
}

impl PointedGSet {
    pub fn new(g: &FiniteGroup, orbits: Vec<Subgroup>) -> Result<Self, CategoryError> {
        let orbits = orbits.into_iter().map(|h| g.subgroup(h.into_vec())).collect::<Result<_, _>>()?;
        Ok(Self { orbits })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn single(h: &Subgroup) -> Self {
        Self { orbits: vec![h.clone()] }
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn orbit(&self, i: usize) -> &Subgroup {
        &self.orbits[i]
    }

    /// Number of points, `Σ |G|/|H_i|`.
    pub fn cardinality(&self, g: &FiniteGroup) -> usize {
        self.orbits.iter().map(|h| g.order() / h.order()).sum()
    }

    pub fn disjoint_union(&self, other: &PointedGSet) -> Self {
        Self { orbits: self.orbits.iter().chain(&other.orbits).cloned().collect() }
    }

    /// The explicit G-set: the coset spaces of the orbits, concatenated.
    pub fn realize(&self, g: &FiniteGroup) -> GSet {
        self.orbits
            .iter()
            .fold(GSet { size: 0, table: Vec::new() }, |acc, h| acc.disjoint_union(&GSet::coset_space(g, h), g))
    }

    /// Index in [`PointedGSet::realize`] of the point `x·b_i`.
    pub fn point(&self, g: &FiniteGroup, orbit: usize, x: Elem) -> usize {
        let offset: usize = self.orbits[..orbit].iter().map(|h| g.order() / h.order()).sum();
        offset + left_coset_index(g, &self.orbits[orbit])[x]
    }
}

/// A G-map between pointed G-sets: orbit `i` of the source goes to orbit
/// `orbit_map[i]` of the target with `b_i ↦ witnesses[i]·b'_{f(i)}`.
///
/// Witnesses are stored as the least element of `g_i·K_{f(i)}`, so equal
/// maps compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GMap {
    source: PointedGSet,
    target: PointedGSet,
    orbit_map: Vec<usize>,
    witnesses: Vec<Elem>,
}

impl GMap {
    /// Validates `g_i⁻¹H_ig_i ⊆ K_{f(i)}` for every orbit.
    pub fn new(
        g: &FiniteGroup,
        source: PointedGSet,
        target: PointedGSet,
        orbit_map: Vec<usize>,
        witnesses: Vec<Elem>,
    ) -> Result<Self, CategoryError> {
        if orbit_map.len() != source.len() || witnesses.len() != source.len() {
            return Err(CategoryError::BadAction("orbit_map and witnesses need one entry per source orbit".into()));
        }
        let mut normalized = Vec::with_capacity(witnesses.len());
        for (i, (&t, &w)) in orbit_map.iter().zip(&witnesses).enumerate() {
            if t >= target.len() {
                return Err(CategoryError::OrbitOutOfRange { orbit: i, target: t });
            }
            g.check_element(w)?;
            let (h, k) = (source.orbit(i), target.orbit(t));
            if !g.conjugate_subgroup(h, w).is_subgroup_of(k) {
                return Err(CategoryError::BadWitness {
                    orbit: i,
                    witness: w,
                    stabilizer: h.clone(),
                    target: k.clone(),
                });
            }
            normalized.push(min_in_coset(g, w, k));
        }
        Ok(Self { source, target, orbit_map, witnesses: normalized })
    }

    /// `G/H → G/K`, `eH ↦ wK`.
    pub fn single(g: &FiniteGroup, h: &Subgroup, k: &Subgroup, witness: Elem) -> Result<Self, CategoryError> {
        Self::new(g, PointedGSet::single(h), PointedGSet::single(k), vec![0], vec![witness])
    }

    pub fn identity(g: &FiniteGroup, x: &PointedGSet) -> Self {
        let n = x.len();
        Self { source: x.clone(), target: x.clone(), orbit_map: (0..n).collect(), witnesses: vec![g.identity(); n] }
    }

    /// The inclusion of orbit `i` of `x` as a map `G/H_i → x`.
    pub fn orbit_inclusion(g: &FiniteGroup, x: &PointedGSet, i: usize) -> Self {
        Self {
            source: PointedGSet::single(x.orbit(i)),
            target: x.clone(),
            orbit_map: vec![i],
            witnesses: vec![g.identity()],
        }
    }

    pub fn source(&self) -> &PointedGSet {
        &self.source
    }

    pub fn target(&self) -> &PointedGSet {
        &self.target
    }

    pub fn orbit_map(&self) -> &[usize] {
        &self.orbit_map
    }

    pub fn witnesses(&self) -> &[Elem] {
        &self.witnesses
    }

    pub fn is_single_orbit(&self) -> bool {
        self.source.len() == 1 && self.target.len() == 1
    }

    /// `self ∘ first`. If `first` sends `b ↦ g₁b'` and `self` sends
    /// `b' ↦ g₂b''` then the composite sends `b ↦ g₁g₂b''`.
    pub fn compose(&self, g: &FiniteGroup, first: &GMap) -> Result<Self, CategoryError> {
        if first.target != self.source {
            return Err(CategoryError::TupleMismatch);
        }
        let orbit_map: Vec<usize> = first.orbit_map.iter().map(|&j| self.orbit_map[j]).collect();
        let witnesses =
            first.witnesses.iter().zip(&first.orbit_map).map(|(&w1, &j)| g.mul(w1, self.witnesses[j])).collect();
        Self::new(g, first.source.clone(), self.target.clone(), orbit_map, witnesses)
    }

    /// The map on the realized point sets.
    pub fn point_map(&self, g: &FiniteGroup) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.source.cardinality(g));
        for (i, h) in self.source.orbits.iter().enumerate() {
            let (t, w) = (self.orbit_map[i], self.witnesses[i]);
            for x in left_coset_reps(g, h) {
                out.push(self.target.point(g, t, g.mul(x, w)));
            }
        }
        out
    }

    pub fn to_json(&self) -> GMapJson {
        GMapJson {
            source: self.source.orbits.clone(),
            target: self.target.orbits.clone(),
            orbit_map: self.orbit_map.clone(),
            witnesses: self.witnesses.clone(),
        }
    }
}

impl Serialize for GMap {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Wire form of a [`GMap`]; source and target are stabilizer lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GMapJson {
    pub source: Vec<Subgroup>,
    pub target: Vec<Subgroup>,
    pub orbit_map: Vec<usize>,
    pub witnesses: Vec<Elem>,
}

impl GMapJson {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<GMap, CategoryError> {
        let source = PointedGSet::new(g, self.source.clone())?;
        let target = PointedGSet::new(g, self.target.clone())?;
        GMap::new(g, source, target, self.orbit_map.clone(), self.witnesses.clone())
    }
}

/// Every G-map `G/H₁ → G/H₂`, one per admissible coset `wH₂`.
pub fn orbit_maps(g: &FiniteGroup, h1: &Subgroup, h2: &Subgroup) -> Vec<GMap> {
    left_coset_reps(g, h2)
        .into_iter()
        .filter(|&w| g.conjugate_subgroup(h1, w).is_subgroup_of(h2))
        .map(|w| GMap::single(g, h1, h2, w).expect("admissible witness"))
        .collect()
}

/// The class `{c_{wh} : h ∈ H₂}` of conjugation homomorphisms `H₁ → H₂`
/// attached to a map `G/H₁ → G/H₂` with witness `w`.
pub fn conjugation_class(g: &FiniteGroup, f: &GMap) -> Result<BTreeSet<GroupHom>, CategoryError> {
    if !f.is_single_orbit() {
        return Err(CategoryError::NotSingleOrbit);
    }
    let (h1, h2, w) = (f.source.orbit(0), f.target.orbit(0), f.witnesses[0]);
    Ok(h2.iter().map(|h| GroupHom::conjugation(g, h1, g.mul(w, h))).collect())
}

/// Whether two maps `G/H₁ → G/H₂` have the same conjugation class,
/// compared as sets of homomorphisms.
pub fn same_conjugation_class(g: &FiniteGroup, f1: &GMap, f2: &GMap) -> Result<bool, CategoryError> {
    Ok(conjugation_class(g, f1)? == conjugation_class(g, f2)?)
}

/// Whether `w₁hw₂⁻¹` centralizes `H₁` for some `h ∈ H₂`.
pub fn centralizer_criterion(g: &FiniteGroup, f1: &GMap, f2: &GMap) -> Result<bool, CategoryError> {
    if !f1.is_single_orbit() || !f2.is_single_orbit() {
        return Err(CategoryError::NotSingleOrbit);
    }
    if f1.source != f2.source || f1.target != f2.target {
        return Err(CategoryError::TargetMismatch);
    }
    let (h1, h2) = (f1.source.orbit(0), f1.target.orbit(0));
    let cent = g.centralizer(h1);
    let w2_inv = g.inv(f2.witnesses[0]);
    Ok(h2.iter().any(|h| cent.contains(g.mul(g.mul(f1.witnesses[0], h), w2_inv))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn coset_space_decomposes_to_its_stabilizer() {
        let g = GroupSpec::Dihedral { n: 4 }.build().unwrap();
        for h in g.subgroups() {
            let x = GSet::coset_space(&g, h);
            assert_eq!(x.size(), 8 / h.order());
            assert_eq!(x.decompose(&g), PointedGSet::single(h));
        }
    }

    #[test]
    fn decomposition_is_additive() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let subs = g.subgroups();
        let x = PointedGSet { orbits: vec![subs[2].clone(), subs[0].clone()] };
        let y = PointedGSet { orbits: vec![subs[4].clone()] };
        let union = x.realize(&g).disjoint_union(&y.realize(&g), &g);
        assert_eq!(union.decompose(&g), x.disjoint_union(&y));
    }

    #[test]
    fn product_of_two_copies_of_s3_mod_c2() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let c2 = &g.subgroups()[1];
        let x = GSet::coset_space(&g, c2);
        let table: Vec<Vec<usize>> =
            g.elements().map(|a| (0..9).map(|p| x.act(a, p / 3) * 3 + x.act(a, p % 3)).collect()).collect();
        let prod = GSet::from_table(&g, table).unwrap();
        let mut orders: Vec<usize> = prod.decompose(&g).orbits.iter().map(Subgroup::order).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2]);
    }

    #[test]
    fn rejects_bad_actions_and_witnesses() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let bad: Vec<Vec<usize>> = g.elements().map(|a| vec![if a == 1 { 1 } else { 0 }, 1]).collect();
        assert!(GSet::from_table(&g, bad).is_err());
        let subs = g.subgroups();
        assert!(matches!(GMap::single(&g, &subs[4], &subs[1], 0), Err(CategoryError::BadWitness { .. })));
    }

    #[test]
    fn composition_matches_point_maps() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let subs = g.subgroups();
        for a in subs {
            for b in subs {
                for c in subs {
                    for f1 in orbit_maps(&g, a, b) {
                        for f2 in orbit_maps(&g, b, c) {
                            let comp = f2.compose(&g, &f1).unwrap();
                            let (p1, p2) = (f1.point_map(&g), f2.point_map(&g));
                            let expect: Vec<usize> = p1.iter().map(|&p| p2[p]).collect();
                            assert_eq!(comp.point_map(&g), expect);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn point_maps_are_equivariant() {
        let g = GroupSpec::Dihedral { n: 4 }.build().unwrap();
        let subs = g.subgroups();
        for a in subs {
            for b in subs {
                for f in orbit_maps(&g, a, b) {
                    let (x, y, m) = (GSet::coset_space(&g, a), GSet::coset_space(&g, b), f.point_map(&g));
                    for s in g.elements() {
                        for p in 0..x.size() {
                            assert_eq!(m[x.act(s, p)], y.act(s, m[p]));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn orbit_map_counts() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let subs = g.subgroups();
        let e = &subs[0];
        // Hom(G/{e}, G/H) = G/H
        assert_eq!(orbit_maps(&g, e, &subs[1]).len(), 3);
        // Hom(G/H, G/H) = N(H)/H
        assert_eq!(orbit_maps(&g, &subs[1], &subs[1]).len(), 1);
        assert_eq!(orbit_maps(&g, &subs[4], &subs[4]).len(), 2);
        assert!(orbit_maps(&g, &subs[4], &subs[1]).is_empty());
    }
}
