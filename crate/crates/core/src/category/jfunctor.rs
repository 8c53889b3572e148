use super::{BisetMorphism, GMap, MatrixMorphism};
use crate::biset::StandardRep;
use crate::group::{FiniteGroup, GroupHom};

/// The covariant half of `j`: a G-map `f` with `f(b_i) = g_i·b'_{f(i)}`
/// goes to the matrix whose only nonzero entry in column `i` is the
/// induction `[H_i^{g_i}, c_{g_i⁻¹}, H_i]` over `(K_{f(i)}, H_i)`, in row
/// `f(i)`. Objects go to their tuples of stabilizers.
pub fn j_lower(g: &FiniteGroup, f: &GMap) -> MatrixMorphism {
    let (src, tgt) = (&f.source().orbits, &f.target().orbits);
    let mut m = MatrixMorphism::zero(src, tgt);
    for (i, (&t, &w)) in f.orbit_map().iter().zip(f.witnesses()).enumerate() {
        let h = &src[i];
        let gamma = GroupHom::conjugation(g, &g.conjugate_subgroup(h, w), g.inv(w));
        let rep = StandardRep::new(tgt[t].clone(), h.clone(), gamma).expect("witness conjugates into the target");
        m.set_entry(t, i, BisetMorphism::from_rep(g, &rep));
    }
    m
}

/// The contravariant half of `j`: `τ` applied to [`j_lower`].
pub fn j_upper(g: &FiniteGroup, f: &GMap) -> MatrixMorphism {
    j_lower(g, f).tau(g)
}
