use std::collections::BTreeMap;

use serde::Serialize;

use super::{CategoryError, GMap, GSet, PointedGSet};
use crate::group::{Elem, FiniteGroup};

/// The pullback of `G/H₁ → G/K ← G/H₂` with its two projections.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Pullback {
    pub apex: PointedGSet,
    /// Projection to the source of the first map, `G/H₁`.
    pub to_first: GMap,
    /// Projection to the source of the second map, `G/H₂`.
    pub to_second: GMap,
}

/// Pullback of `ψ : G/H₁ → G/K` (witness `g₁`) and `φ : G/H₂ → G/K`
/// (witness `g₂`).
///
/// With `H_i' = g_i⁻¹H_ig_i ≤ K` the pullback of the inclusions
/// `G/H₁' → G/K ← G/H₂'` has one orbit per `x ∈ H₂'\K/H₁'`, based at
/// `(xH₁', eH₂')` with stabilizer `H₂' ∩ xH₁'x⁻¹`. The isomorphisms
/// `aH_i' ↦ ag_i⁻¹H_i` carry this back to the original square, giving
/// projection witnesses `xg₁⁻¹` and `g₂⁻¹`.
pub fn pullback(g: &FiniteGroup, psi: &GMap, phi: &GMap) -> Result<Pullback, CategoryError> {
    if !psi.is_single_orbit() || !phi.is_single_orbit() {
        return Err(CategoryError::NotSingleOrbit);
    }
    if psi.target() != phi.target() {
        return Err(CategoryError::TargetMismatch);
    }
    let k = psi.target().orbit(0);
    let (g1, g2) = (psi.witnesses()[0], phi.witnesses()[0]);
    let h1 = g.conjugate_subgroup(psi.source().orbit(0), g1);
    let h2 = g.conjugate_subgroup(phi.source().orbit(0), g2);
    let cosets = g.double_cosets(k, &h2, &h1)?;
    let stabilizers =
        cosets.representatives.iter().map(|&x| h2.intersection(&g.conjugate_subgroup(&h1, g.inv(x)))).collect();
    let apex = PointedGSet { orbits: stabilizers };
    let n = apex.len();
    let (g1_inv, g2_inv) = (g.inv(g1), g.inv(g2));
    let first_witnesses: Vec<Elem> = cosets.representatives.iter().map(|&x| g.mul(x, g1_inv)).collect();
    let to_first = GMap::new(g, apex.clone(), psi.source().clone(), vec![0; n], first_witnesses)?;
    let to_second = GMap::new(g, apex.clone(), phi.source().clone(), vec![0; n], vec![g2_inv; n])?;
    Ok(Pullback { apex, to_first, to_second })
}

/// The G-set `{(p, q) : ψ(p) = φ(q)} ⊆ G/H₁ × G/H₂`, with points listed
/// lexicographically.
pub fn pullback_bruteforce(
    g: &FiniteGroup,
    psi: &GMap,
    phi: &GMap,
) -> Result<(GSet, Vec<(usize, usize)>), CategoryError> {
    if psi.target() != phi.target() {
        return Err(CategoryError::TargetMismatch);
    }
    let (x, y) = (psi.source().realize(g), phi.source().realize(g));
    let (mp, mq) = (psi.point_map(g), phi.point_map(g));
    let pairs: Vec<(usize, usize)> =
        (0..x.size()).flat_map(|p| (0..y.size()).map(move |q| (p, q))).filter(|&(p, q)| mp[p] == mq[q]).collect();
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pq)| (pq, i)).collect();
    let table =
        g.elements().map(|a| pairs.iter().map(|&(p, q)| index[&(x.act(a, p), y.act(a, q))]).collect()).collect();
    Ok((GSet::from_table(g, table)?, pairs))
}

/// Checks a computed pullback against the brute-force one: the square
/// commutes, the induced map from the apex is a bijection onto the
/// brute-force set, and the stabilizer conjugacy classes agree as
/// multisets.
pub fn verify_pullback(g: &FiniteGroup, psi: &GMap, phi: &GMap, pb: &Pullback) -> Result<bool, CategoryError> {
    let (brute, pairs) = pullback_bruteforce(g, psi, phi)?;
    let (a, b) = (pb.to_first.point_map(g), pb.to_second.point_map(g));
    let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &pq)| (pq, i)).collect();
    let mut hit = vec![false; brute.size()];
    for (&p, &q) in a.iter().zip(&b) {
        match index.get(&(p, q)) {
            Some(&i) if !hit[i] => hit[i] = true,
            _ => return Ok(false),
        }
    }
    if hit.iter().any(|&h| !h) {
        return Ok(false);
    }
    Ok(class_multiset(g, &pb.apex) == class_multiset(g, &brute.decompose(g)))
}

/// Sorted list of least conjugates of the orbit stabilizers.
pub(crate) fn class_multiset(g: &FiniteGroup, x: &PointedGSet) -> Vec<crate::group::Subgroup> {
    let all = g.whole();
    let mut out: Vec<_> = x.orbits.iter().map(|h| g.conjugates_in(h, &all).swap_remove(0)).collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::orbit_maps;
    use crate::group::GroupSpec;

    #[test]
    fn identity_square() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        for k in g.subgroups() {
            let id = GMap::identity(&g, &PointedGSet::single(k));
            let pb = pullback(&g, &id, &id).unwrap();
            assert_eq!(pb.apex, PointedGSet::single(k));
            assert_eq!(pb.to_first, id);
            assert_eq!(pb.to_second, id);
        }
    }

    #[test]
    fn free_and_s3_examples() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let e = g.trivial_subgroup();
        let f = GMap::single(&g, &e, &g.whole(), 0).unwrap();
        let pb = pullback(&g, &f, &f).unwrap();
        assert_eq!(pb.apex.len(), 6);
        assert!(pb.apex.orbits.iter().all(|h| h.is_trivial()));
        assert!(verify_pullback(&g, &f, &f, &pb).unwrap());

        let c2 = &g.subgroups()[1];
        let f = GMap::single(&g, c2, &g.whole(), 0).unwrap();
        let pb = pullback(&g, &f, &f).unwrap();
        let mut orders: Vec<usize> = pb.apex.orbits.iter().map(|h| h.order()).collect();
        orders.sort();
        assert_eq!(orders, vec![1, 2]);
        assert_eq!(pb.apex.cardinality(&g), 9);
        assert!(verify_pullback(&g, &f, &f, &pb).unwrap());
    }

    #[test]
    fn twisted_witnesses_on_d4() {
        let g = GroupSpec::Dihedral { n: 4 }.build().unwrap();
        let subs = g.subgroups();
        for k in subs {
            for h1 in subs {
                for h2 in subs {
                    for psi in orbit_maps(&g, h1, k) {
                        for phi in orbit_maps(&g, h2, k) {
                            let pb = pullback(&g, &psi, &phi).unwrap();
                            assert!(verify_pullback(&g, &psi, &phi, &pb).unwrap());
                        }
                    }
                }
            }
        }
    }
}
