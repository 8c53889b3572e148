use serde::Serialize;

use super::StandardRep;
use crate::group::{Elem, FiniteGroup, GroupHom};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    /// The right action is transitive: `L = H₂`.
    pub restriction: bool,
    /// The left action is transitive: `K = H₁`.
    pub induction: bool,
    /// Both of the above.
    pub isomorphism: bool,
    /// `γ` is conjugation by an element of the whole group.
    pub conjugation: bool,
}

pub fn classify(g: &FiniteGroup, rep: &StandardRep) -> Classification {
    let restriction = rep.l() == rep.h2();
    let induction = rep.k() == rep.h1();
    Classification {
        restriction,
        induction,
        isomorphism: restriction && induction,
        conjugation: g.conjugation_realizing(rep.gamma()).is_some(),
    }
}

/// `X ≅ ind ∘ iso ∘ res` at the basepoint of `rep`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Factorization {
    /// `[L, id, L]` over `(H₂, L)`.
    pub ind: StandardRep,
    /// `[L, γ, K]` over `(L, K)`.
    pub iso: StandardRep,
    /// `[K, id, K]` over `(K, H₁)`.
    pub res: StandardRep,
    /// The least `g` with `g⁻¹lg = γ(l)`, when there is one.
    pub conjugating_element: Option<Elem>,
}

pub fn factorize(g: &FiniteGroup, rep: &StandardRep) -> Factorization {
    let (l, k) = (rep.l(), rep.k());
    Factorization {
        ind: StandardRep::new_unchecked(rep.h2().clone(), l.clone(), GroupHom::identity(l)),
        iso: StandardRep::new_unchecked(l.clone(), k.clone(), rep.gamma().clone()),
        res: StandardRep::new_unchecked(k.clone(), rep.h1().clone(), GroupHom::identity(k)),
        conjugating_element: g.conjugation_realizing(rep.gamma()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::biset::{compose_formula, indecomposables};
    use crate::group::GroupSpec;

    #[test]
    fn classification_examples() {
        let v4 = GroupSpec::Klein4.build().unwrap();
        let (a, b) = (v4.generate(&[1]), v4.generate(&[2]));
        let gamma = GroupHom::isomorphism(&v4, a, b, vec![(0, 0), (1, 2)]).unwrap();
        let rep = StandardRep::new(v4.whole(), v4.whole(), gamma).unwrap();
        let c = classify(&v4, &rep);
        assert!(!c.conjugation && !c.restriction && !c.induction);

        let s3 = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        let c2 = s3.subgroups()[1].clone();
        let ind = StandardRep::new(s3.whole(), c2.clone(), GroupHom::identity(&c2)).unwrap();
        let c = classify(&s3, &ind);
        assert!(c.induction && !c.restriction && c.conjugation);
        let c = classify(&s3, &ind.transpose());
        assert!(c.restriction && !c.induction);
        let auto = GroupHom::isomorphisms(&s3, &s3.whole(), &s3.whole()).pop().unwrap();
        let iso = StandardRep::new(s3.whole(), s3.whole(), auto).unwrap();
        assert!(classify(&s3, &iso).isomorphism);
    }

    #[test]
    fn factors_recompose() {
        let g = GroupSpec::Symmetric { n: 3 }.build().unwrap();
        for h2 in g.subgroups() {
            for h1 in g.subgroups() {
                for key in indecomposables(&g, h2, h1) {
                    let f = factorize(&g, key.rep());
                    assert!(classify(&g, &f.ind).induction && classify(&g, &f.ind).conjugation);
                    assert!(classify(&g, &f.res).restriction && classify(&g, &f.res).conjugation);
                    assert!(classify(&g, &f.iso).isomorphism);
                    let inner = compose_formula(&g, &f.iso, &f.res).unwrap();
                    assert_eq!(inner.len(), 1);
                    let outer = compose_formula(&g, &f.ind, &inner[0]).unwrap();
                    assert_eq!(outer.len(), 1);
                    assert_eq!(outer[0].canonical_key(&g), key);
                }
            }
        }
    }

    #[test]
    fn identity_factors_are_identities() {
        let g = GroupSpec::Quaternion.build().unwrap();
        let all = g.whole();
        let f = factorize(&g, &StandardRep::identity(&all));
        for part in [&f.ind, &f.iso, &f.res] {
            assert_eq!(part, &StandardRep::identity(&all));
        }
        assert_eq!(f.conjugating_element, Some(g.identity()));
    }
}
