use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup, GroupError, Subgroup};

/// A homomorphism between two subgroups of the same parent group, stored as
/// its graph sorted by domain element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupHom {
    domain: Subgroup,
    codomain: Subgroup,
    map: Vec<(Elem, Elem)>,
}

impl GroupHom {
    /// Validates `pairs` as a homomorphism `domain -> codomain`.
    pub fn new(
        g: &FiniteGroup,
        domain: Subgroup,
        codomain: Subgroup,
        mut pairs: Vec<(Elem, Elem)>,
    ) -> Result<Self, GroupError> {
        pairs.sort_unstable();
        pairs.dedup();
        let keys: Vec<Elem> = pairs.iter().map(|p| p.0).collect();
        if keys != domain.elements() {
            return Err(GroupError::NotAHomomorphism("graph does not cover the domain exactly once".into()));
        }
        if let Some(&(_, k)) = pairs.iter().find(|(_, k)| !codomain.contains(*k)) {
            return Err(GroupError::NotAHomomorphism(format!("image {k} outside the codomain")));
        }
        let hom = Self { domain, codomain, map: pairs };
        for &(a, fa) in &hom.map {
            for &(b, fb) in &hom.map {
                if hom.apply(g.mul(a, b)) != g.mul(fa, fb) {
                    return Err(GroupError::NotAHomomorphism(format!("f({a}*{b}) != f({a})*f({b})")));
                }
            }
        }
        Ok(hom)
    }

    /// Like [`GroupHom::new`] but additionally requires a bijection onto the
    /// codomain.
    pub fn isomorphism(
        g: &FiniteGroup,
        domain: Subgroup,
        codomain: Subgroup,
        pairs: Vec<(Elem, Elem)>,
    ) -> Result<Self, GroupError> {
        let hom = Self::new(g, domain, codomain, pairs)?;
        if hom.is_bijective() {
            Ok(hom)
        } else {
            Err(GroupError::NotBijective)
        }
    }

    pub(crate) fn from_sorted_unchecked(domain: Subgroup, codomain: Subgroup, map: Vec<(Elem, Elem)>) -> Self {
        debug_assert!(map.windows(2).all(|w| w[0].0 < w[1].0));
        Self { domain, codomain, map }
    }

    pub fn identity(h: &Subgroup) -> Self {
        Self { domain: h.clone(), codomain: h.clone(), map: h.iter().map(|a| (a, a)).collect() }
    }

    /// `c_x : L -> L^x`, `l ↦ x⁻¹ l x`.
    pub fn conjugation(g: &FiniteGroup, l: &Subgroup, x: Elem) -> Self {
        let codomain = g.conjugate_subgroup(l, x);
        Self { domain: l.clone(), codomain, map: l.iter().map(|a| (a, g.conj(a, x))).collect() }
    }

    pub fn domain(&self) -> &Subgroup {
        &self.domain
    }

    pub fn codomain(&self) -> &Subgroup {
        &self.codomain
    }

    pub fn pairs(&self) -> &[(Elem, Elem)] {
        &self.map
    }

    /// Image of a domain element. Panics if `a` is outside the domain.
    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        let i = self.domain.position(a).unwrap_or_else(|| panic!("{a} not in the domain of the homomorphism"));
        self.map[i].1
    }

    pub fn try_apply(&self, a: Elem) -> Option<Elem> {
        self.domain.position(a).map(|i| self.map[i].1)
    }

    pub fn image(&self) -> Subgroup {
        let mut im: Vec<Elem> = self.map.iter().map(|p| p.1).collect();
        im.sort_unstable();
        im.dedup();
        Subgroup::from_sorted_unchecked(im)
    }

    pub fn is_bijective(&self) -> bool {
        let im = self.image();
        im.order() == self.map.len() && im == self.codomain
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Self {
        debug_assert!(self.is_bijective());
        let mut map: Vec<(Elem, Elem)> = self.map.iter().map(|&(a, b)| (b, a)).collect();
        map.sort_unstable();
        Self { domain: self.codomain.clone(), codomain: self.domain.clone(), map }
    }

    /// `self ∘ first`, defined on the elements of `first`'s domain whose
    /// image lies in `self`'s domain. Requires that image to be all of
    /// `first`'s domain.
    pub fn after(&self, first: &GroupHom) -> Self {
        let map = first.map.iter().map(|&(a, b)| (a, self.apply(b))).collect();
        Self { domain: first.domain.clone(), codomain: self.codomain.clone(), map }
    }

    /// Restriction to a subgroup of the domain, with codomain shrunk to the
    /// image.
    pub fn restrict(&self, sub: &Subgroup) -> Self {
        let map: Vec<(Elem, Elem)> = sub.iter().map(|a| (a, self.apply(a))).collect();
        let mut im: Vec<Elem> = map.iter().map(|p| p.1).collect();
        im.sort_unstable();
        im.dedup();
        Self { domain: sub.clone(), codomain: Subgroup::from_sorted_unchecked(im), map }
    }

    /// `{ a in domain : f(a) in target }`.
    pub fn preimage(&self, target: &Subgroup) -> Subgroup {
        Subgroup::from_sorted_unchecked(self.map.iter().filter(|(_, b)| target.contains(*b)).map(|p| p.0).collect())
    }

    /// Every isomorphism `l -> k`, in a deterministic order.
    pub fn isomorphisms(g: &FiniteGroup, l: &Subgroup, k: &Subgroup) -> Vec<GroupHom> {
        if l.order() != k.order() {
            return Vec::new();
        }
        let gens = generating_set(g, l);
        let gen_orders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();
        let mut out = Vec::new();
        let mut images = Vec::with_capacity(gens.len());
        assign(g, l, k, &gens, &gen_orders, &mut images, &mut out);
        out
    }
}

/// A small generating set, chosen greedily in ascending element order.
pub(crate) fn generating_set(g: &FiniteGroup, h: &Subgroup) -> Vec<Elem> {
    let mut gens = Vec::new();
    let mut span = g.trivial_subgroup();
    for a in h.iter() {
        if !span.contains(a) {
            gens.push(a);
            span = g.generate(&gens);
            if span.order() == h.order() {
                break;
            }
        }
    }
    gens
}

fn assign(
    g: &FiniteGroup,
    l: &Subgroup,
    k: &Subgroup,
    gens: &[Elem],
    gen_orders: &[usize],
    images: &mut Vec<Elem>,
    out: &mut Vec<GroupHom>,
) {
    let depth = images.len();
    if depth == gens.len() {
        if let Some(hom) = extend(g, l, k, gens, images) {
            out.push(hom);
        }
        return;
    }
    for t in k.iter() {
        if g.element_order(t) == gen_orders[depth] {
            images.push(t);
            assign(g, l, k, gens, gen_orders, images, out);
            images.pop();
        }
    }
}

/// Extends a generator assignment along the Cayley graph of `l`; fails on
/// any inconsistency or if the result is not bijective onto `k`.
fn extend(g: &FiniteGroup, l: &Subgroup, k: &Subgroup, gens: &[Elem], images: &[Elem]) -> Option<GroupHom> {
    let mut image: Vec<Option<Elem>> = vec![None; l.order()];
    image[l.position(g.identity())?] = Some(g.identity());
    let mut queue = vec![g.identity()];
    while let Some(x) = queue.pop() {
        let fx = image[l.position(x)?].expect("queued elements are assigned");
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = g.mul(fx, t);
            let slot = &mut image[l.position(y)?];
            match slot {
                Some(existing) if *existing != fy => return None,
                Some(_) => {}
                None => {
                    *slot = Some(fy);
                    queue.push(y);
                }
            }
        }
    }
    let map: Vec<(Elem, Elem)> = l.iter().zip(image.iter()).map(|(a, b)| (a, b.expect("generators span l"))).collect();
    let hom = GroupHom { domain: l.clone(), codomain: k.clone(), map };
    hom.is_bijective().then_some(hom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn automorphism_counts() {
        let q8 = GroupSpec::Quaternion.build().unwrap();
        assert_eq!(GroupHom::isomorphisms(&q8, &q8.whole(), &q8.whole()).len(), 24);
        let v4 = GroupSpec::Klein4.build().unwrap();
        assert_eq!(GroupHom::isomorphisms(&v4, &v4.whole(), &v4.whole()).len(), 6);
        let s3 = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        assert_eq!(GroupHom::isomorphisms(&s3, &s3.whole(), &s3.whole()).len(), 6);
        let d4 = GroupSpec::Dihedral { n: 4 }.build().unwrap();
        assert_eq!(GroupHom::isomorphisms(&d4, &d4.whole(), &d4.whole()).len(), 8);
        let c6 = GroupSpec::Cyclic { n: 6 }.build().unwrap();
        assert_eq!(GroupHom::isomorphisms(&c6, &c6.whole(), &c6.whole()).len(), 2);
    }

    #[test]
    fn isomorphisms_are_valid() {
        let g = GroupSpec::Dihedral { n: 4 }.build().unwrap();
        let subs = g.subgroups();
        for l in subs {
            for k in subs {
                for hom in GroupHom::isomorphisms(&g, l, k) {
                    assert!(GroupHom::isomorphism(&g, l.clone(), k.clone(), hom.pairs().to_vec()).is_ok());
                }
            }
        }
    }

    #[test]
    fn realizing_identity_is_identity_element() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        for h in g.subgroups() {
            assert_eq!(g.conjugation_realizing(&GroupHom::identity(h)), Some(g.identity()));
        }
    }

    #[test]
    fn klein_four_has_no_outer_conjugations() {
        let g = GroupSpec::Klein4.build().unwrap();
        let a = g.generate(&[1]);
        let b = g.generate(&[2]);
        let gamma = GroupHom::isomorphism(&g, a, b, vec![(0, 0), (1, 2)]).unwrap();
        assert_eq!(g.conjugation_realizing(&gamma), None);
    }

    #[test]
    fn s3_transpositions_are_conjugate() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let subs = g.subgroups();
        let (a, b) = (&subs[1], &subs[2]);
        let gamma = GroupHom::isomorphisms(&g, a, b).pop().unwrap();
        let found = g.conjugation_realizing(&gamma).unwrap();
        assert_eq!(&g.conjugate_subgroup(a, found), b);
        // exhaustive search agrees with the minimal choice
        let all: Vec<Elem> = g.elements().filter(|&x| a.iter().all(|l| g.conj(l, x) == gamma.apply(l))).collect();
        assert_eq!(all.first(), Some(&found));
    }

    #[test]
    fn realizing_elements_form_centralizer_coset() {
        for spec in [GroupSpec::Symmetric { n: 3 }, GroupSpec::Dihedral { n: 4 }, GroupSpec::alternating(4)] {
            let g = spec.build().unwrap();
            let subs = g.subgroups();
            for l in subs {
                for k in subs.iter().filter(|k| k.order() == l.order()) {
                    for gamma in GroupHom::isomorphisms(&g, l, k) {
                        let valid = g.conjugations_realizing(&gamma);
                        match g.conjugation_realizing(&gamma) {
                            None => assert!(valid.is_empty()),
                            Some(x) => {
                                assert_eq!(&g.conjugate_subgroup(l, x), k);
                                let c = g.centralizer(l);
                                let mut coset: Vec<Elem> = c.iter().map(|z| g.mul(z, x)).collect();
                                coset.sort();
                                assert_eq!(coset, valid);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_homomorphisms() {
        let g = GroupSpec::Cyclic { n: 4 }.build().unwrap();
        let all = g.whole();
        assert!(GroupHom::new(&g, all.clone(), all.clone(), vec![(0, 0), (1, 2), (2, 1), (3, 3)]).is_err());
        let c2 = g.generate(&[2]);
        assert!(matches!(
            GroupHom::isomorphism(&g, all.clone(), c2, vec![(0, 0), (1, 2), (2, 0), (3, 2)]),
            Err(GroupError::NotBijective)
        ));
    }
}
