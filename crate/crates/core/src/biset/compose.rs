use super::{BisetError, StandardRep};
use crate::group::{Elem, FiniteGroup, GroupHom};

/// Composes `rep2` over `(H₃, H₂)` after `rep1` over `(H₂, H₁)` with the
/// double coset formula, one component per `h ∈ K₂\H₂/L₁`:
/// `[γ₂⁻¹(K₂ ∩ hL₁h⁻¹), γ₁∘c_h∘γ₂, γ₁(K₂^h ∩ L₁)]` over `(H₃, H₁)`.
///
/// Representatives are the minimal elements of the double cosets.
pub fn compose_formula(
    g: &FiniteGroup,
    rep2: &StandardRep,
    rep1: &StandardRep,
) -> Result<Vec<StandardRep>, BisetError> {
    check_middle(rep2, rep1)?;
    let cosets = g.double_cosets(rep2.h1(), rep2.k(), rep1.l())?;
    Ok(cosets.representatives.iter().map(|&h| component(g, rep2, rep1, h)).collect())
}

/// [`compose_formula`] with caller-chosen double coset representatives,
/// which must meet every double coset `K₂\H₂/L₁` exactly once.
pub fn compose_formula_with_representatives(
    g: &FiniteGroup,
    rep2: &StandardRep,
    rep1: &StandardRep,
    representatives: &[Elem],
) -> Result<Vec<StandardRep>, BisetError> {
    check_middle(rep2, rep1)?;
    let cosets = g.double_cosets(rep2.h1(), rep2.k(), rep1.l())?;
    let mut hit = vec![false; cosets.len()];
    for &h in representatives {
        match cosets.coset_index(h) {
            Some(i) if !hit[i] => hit[i] = true,
            _ => return Err(BisetError::BadRepresentatives),
        }
    }
    if hit.iter().any(|&b| !b) {
        return Err(BisetError::BadRepresentatives);
    }
    Ok(representatives.iter().map(|&h| component(g, rep2, rep1, h)).collect())
}

fn check_middle(rep2: &StandardRep, rep1: &StandardRep) -> Result<(), BisetError> {
    if rep2.h1() != rep1.h2() {
        return Err(BisetError::AmbientMismatch { left: rep2.h1().clone(), right: rep1.h2().clone() });
    }
    Ok(())
}

fn component(g: &FiniteGroup, rep2: &StandardRep, rep1: &StandardRep, h: Elem) -> StandardRep {
    let (gamma2, gamma1) = (rep2.gamma(), rep1.gamma());
    let meet = rep2.k().intersection(&g.conjugate_subgroup(rep1.l(), g.inv(h)));
    let l3 = gamma2.preimage(&meet);
    let pairs: Vec<(Elem, Elem)> = l3.iter().map(|l| (l, gamma1.apply(g.conj(gamma2.apply(l), h)))).collect();
    let mut k3: Vec<Elem> = pairs.iter().map(|p| p.1).collect();
    k3.sort_unstable();
    let gamma = GroupHom::from_sorted_unchecked(l3, crate::group::Subgroup::from_sorted_unchecked(k3), pairs);
    StandardRep::new_unchecked(rep2.h2().clone(), rep1.h1().clone(), gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::{compose_bruteforce, CanonicalKey};
    use crate::group::GroupSpec;

    fn keys(g: &FiniteGroup, reps: &[StandardRep]) -> Vec<CanonicalKey> {
        let mut k: Vec<_> = reps.iter().map(|r| r.canonical_key(g)).collect();
        k.sort();
        k
    }

    #[test]
    fn identity_is_neutral() {
        let g = GroupSpec::Dihedral { n: 4 }.build().unwrap();
        let all = g.whole();
        for key in crate::biset::indecomposables(&g, &all, &all) {
            let rep = key.rep();
            let out = compose_formula(&g, &StandardRep::identity(&all), rep).unwrap();
            assert_eq!(out, vec![rep.clone()]);
            let out = compose_formula(&g, rep, &StandardRep::identity(&all)).unwrap();
            assert_eq!(keys(&g, &out), vec![key.clone()]);
        }
    }

    #[test]
    fn restriction_after_induction_in_s3() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let c2 = g.subgroups()[1].clone();
        let all = g.whole();
        let id = GroupHom::identity(&c2);
        let res = StandardRep::new(c2.clone(), all.clone(), id.clone()).unwrap();
        let ind = StandardRep::new(all.clone(), c2.clone(), id).unwrap();
        let out = compose_formula(&g, &res, &ind).unwrap();
        assert_eq!(out.len(), 2);
        let expect = keys(&g, &[StandardRep::identity(&c2), StandardRep::free(&g, &c2, &c2)]);
        assert_eq!(keys(&g, &out), expect);
        let brute = compose_bruteforce(&g, &res.realize(&g), &ind.realize(&g)).unwrap();
        assert_eq!(brute.component_keys(&g).unwrap(), expect);
    }

    #[test]
    fn mismatch_and_bad_representatives() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let c2 = g.subgroups()[1].clone();
        let all = g.whole();
        let a = StandardRep::identity(&c2);
        let b = StandardRep::identity(&all);
        assert!(matches!(compose_formula(&g, &a, &b), Err(BisetError::AmbientMismatch { .. })));
        let free = StandardRep::free(&g, &all, &all);
        // six double cosets of {e}\S3/{e}; five representatives miss one
        let err = compose_formula_with_representatives(&g, &free, &free, &[0, 1, 2, 3, 4]).unwrap_err();
        assert_eq!(err, BisetError::BadRepresentatives);
        let err = compose_formula_with_representatives(&g, &free, &free, &[0, 0, 1, 2, 3, 4]).unwrap_err();
        assert_eq!(err, BisetError::BadRepresentatives);
    }
}
