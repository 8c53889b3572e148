use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{BisetError, CanonicalKey, StandardRep};
use crate::group::{Elem, FiniteGroup, GroupHom, Subgroup};

/// A finite `H₂`-`H₁` biset given by its action tables.
///
/// Points are `0..size`. Group elements are addressed by their position in
/// the sorted element list of the acting subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitBiset {
    h2: Subgroup,
    h1: Subgroup,
    size: usize,
    /// `left[i * size + p]` is `h2[i]·p`.
    left: Vec<usize>,
    /// `right[p * |H₁| + j]` is `p·h1[j]`.
    right: Vec<usize>,
}

impl ExplicitBiset {
    pub fn empty(h2: &Subgroup, h1: &Subgroup) -> Self {
        Self { h2: h2.clone(), h1: h1.clone(), size: 0, left: Vec::new(), right: Vec::new() }
    }

    /// Validates action tables (`left[i][p]`, `right[p][j]`) as a bifree
    /// biset.
    pub fn from_actions(
        g: &FiniteGroup,
        h2: Subgroup,
        h1: Subgroup,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    ) -> Result<Self, BisetError> {
        let size = right.len();
        if left.len() != h2.order() || left.iter().any(|row| row.len() != size) {
            return Err(BisetError::Malformed(format!("left action must be {}x{size}", h2.order())));
        }
        if right.iter().any(|row| row.len() != h1.order()) {
            return Err(BisetError::Malformed(format!("right action must be {size}x{}", h1.order())));
        }
        if let Some(&p) = left.iter().chain(right.iter()).flatten().find(|&&p| p >= size) {
            return Err(BisetError::BadPoint(p));
        }
        let x = Self { h2, h1, size, left: left.concat(), right: right.concat() };
        x.validate(g)?;
        Ok(x)
    }

    fn validate(&self, g: &FiniteGroup) -> Result<(), BisetError> {
        let bad = |msg: String| Err(BisetError::Malformed(msg));
        let e = g.identity();
        for p in 0..self.size {
            if self.act_left(e, p) != p || self.act_right(p, e) != p {
                return bad(format!("identity moves point {p}"));
            }
            for a in self.h2.iter() {
                for b in self.h2.iter() {
                    if self.act_left(g.mul(a, b), p) != self.act_left(a, self.act_left(b, p)) {
                        return bad(format!("left action is not associative at ({a}, {b}, {p})"));
                    }
                }
            }
            for a in self.h1.iter() {
                for b in self.h1.iter() {
                    if self.act_right(p, g.mul(a, b)) != self.act_right(self.act_right(p, a), b) {
                        return bad(format!("right action is not associative at ({p}, {a}, {b})"));
                    }
                }
            }
            for a in self.h2.iter() {
                for b in self.h1.iter() {
                    if self.act_right(self.act_left(a, p), b) != self.act_left(a, self.act_right(p, b)) {
                        return bad(format!("actions do not commute at ({a}, {p}, {b})"));
                    }
                }
                if a != e && self.act_left(a, p) == p {
                    return Err(BisetError::NotBifree(format!("{a} fixes point {p} on the left")));
                }
            }
            if let Some(b) = self.h1.iter().find(|&b| b != e && self.act_right(p, b) == p) {
                return Err(BisetError::NotBifree(format!("{b} fixes point {p} on the right")));
            }
        }
        Ok(())
    }

    /// The model biset of a standard representation. Points are the classes
    /// of `(a, b) ∈ H₂ × H₁` under `(a, b) ~ (a·l, γ(l)⁻¹·b)`; the class of
    /// `(e, e)` is point 0.
    pub fn realize(g: &FiniteGroup, rep: &StandardRep) -> Self {
        let (h2, h1) = (rep.h2(), rep.h1());
        let m = h1.order();
        let pos2 = |a: Elem| h2.position(a).expect("in H2");
        let pos1 = |b: Elem| h1.position(b).expect("in H1");
        let mut pair_id = vec![usize::MAX; h2.order() * m];
        let mut reps: Vec<(Elem, Elem)> = Vec::with_capacity(rep.size());
        let e = g.identity();
        let start = std::iter::once((e, e));
        for (a, b) in start.chain(h2.iter().flat_map(|a| h1.iter().map(move |b| (a, b)))) {
            if pair_id[pos2(a) * m + pos1(b)] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push((a, b));
            for &(l, k) in rep.gamma().pairs() {
                pair_id[pos2(g.mul(a, l)) * m + pos1(g.mul(g.inv(k), b))] = id;
            }
        }
        let size = reps.len();
        let mut left = vec![0; h2.order() * size];
        for (i, x) in h2.iter().enumerate() {
            for (p, &(a, b)) in reps.iter().enumerate() {
                left[i * size + p] = pair_id[pos2(g.mul(x, a)) * m + pos1(b)];
            }
        }
        let mut right = vec![0; size * m];
        for (p, &(a, b)) in reps.iter().enumerate() {
            for (j, y) in h1.iter().enumerate() {
                right[p * m + j] = pair_id[pos2(a) * m + pos1(g.mul(b, y))];
            }
        }
        Self { h2: h2.clone(), h1: h1.clone(), size, left, right }
    }

    pub fn left_group(&self) -> &Subgroup {
        &self.h2
    }

    pub fn right_group(&self) -> &Subgroup {
        &self.h1
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `a·p` for `a ∈ H₂`.
    #[inline]
    pub fn act_left(&self, a: Elem, p: usize) -> usize {
        let i = self.h2.position(a).expect("element of the left group");
        self.left[i * self.size + p]
    }

    /// `p·b` for `b ∈ H₁`.
    #[inline]
    pub fn act_right(&self, p: usize, b: Elem) -> usize {
        let j = self.h1.position(b).expect("element of the right group");
        self.right[p * self.h1.order() + j]
    }

    pub fn left_table(&self) -> Vec<Vec<usize>> {
        if self.size == 0 {
            return vec![Vec::new(); self.h2.order()];
        }
        self.left.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn right_table(&self) -> Vec<Vec<usize>> {
        self.right.chunks(self.h1.order()).map(<[usize]>::to_vec).collect()
    }

    /// `[L_x, φ_x, K_x]` where `L_x = {h₂ : h₂x ∈ xH₁}` and `φ_x(h₂)` is the
    /// unique `h₁` with `h₂x = xh₁`.
    pub fn standard_rep_at(&self, p: usize) -> Result<StandardRep, BisetError> {
        if p >= self.size {
            return Err(BisetError::BadPoint(p));
        }
        let m = self.h1.order();
        // point -> the element of H1 carrying p there
        let mut carrier = vec![usize::MAX; self.size];
        for (j, b) in self.h1.iter().enumerate() {
            let q = self.right[p * m + j];
            if carrier[q] != usize::MAX {
                return Err(BisetError::NotBifree(format!("right stabilizer of point {p} is nontrivial")));
            }
            carrier[q] = b;
        }
        let pairs: Vec<(Elem, Elem)> = self
            .h2
            .iter()
            .enumerate()
            .filter_map(|(i, a)| {
                let b = carrier[self.left[i * self.size + p]];
                (b != usize::MAX).then_some((a, b))
            })
            .collect();
        let l = Subgroup::from_sorted_unchecked(pairs.iter().map(|p| p.0).collect());
        let mut k: Vec<Elem> = pairs.iter().map(|p| p.1).collect();
        k.sort_unstable();
        let gamma = GroupHom::from_sorted_unchecked(l, Subgroup::from_sorted_unchecked(k), pairs);
        Ok(StandardRep::new_unchecked(self.h2.clone(), self.h1.clone(), gamma))
    }

    /// Orbits of `H₂ × H₁ᵒᵖ` as sorted point lists, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.size];
        let mut orbits = Vec::new();
        let m = self.h1.order();
        for start in 0..self.size {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut orbit = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(p) = queue.pop_front() {
                let lefts = (0..self.h2.order()).map(|i| self.left[i * self.size + p]);
                let rights = (0..m).map(|j| self.right[p * m + j]);
                for q in lefts.chain(rights) {
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                        queue.push_back(q);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// One standard representation per orbit, taken at the orbit's least
    /// point, together with that point.
    pub fn components(&self) -> Result<Vec<(StandardRep, usize)>, BisetError> {
        self.orbits().into_iter().map(|o| Ok((self.standard_rep_at(o[0])?, o[0]))).collect()
    }

    /// Sorted canonical keys of the components: the isomorphism invariant
    /// of a bifree biset.
    pub fn component_keys(&self, g: &FiniteGroup) -> Result<Vec<CanonicalKey>, BisetError> {
        let mut keys: Vec<CanonicalKey> = self.components()?.into_iter().map(|(rep, _)| rep.canonical_key(g)).collect();
        keys.sort();
        Ok(keys)
    }

    /// The opposite `H₁`-`H₂` biset on the same points:
    /// `h₁·x·h₂ = h₂⁻¹xh₁⁻¹`.
    pub fn transpose(&self, g: &FiniteGroup) -> Self {
        let (n, m) = (self.size, self.h1.order());
        let mut left = vec![0; m * n];
        for (j, b) in self.h1.iter().enumerate() {
            let jinv = self.h1.position(g.inv(b)).expect("closed");
            for p in 0..n {
                left[j * n + p] = self.right[p * m + jinv];
            }
        }
        let k = self.h2.order();
        let mut right = vec![0; n * k];
        for (i, a) in self.h2.iter().enumerate() {
            let iinv = self.h2.position(g.inv(a)).expect("closed");
            for p in 0..n {
                right[p * k + i] = self.left[iinv * n + p];
            }
        }
        Self { h2: self.h1.clone(), h1: self.h2.clone(), size: n, left, right }
    }

    /// `self ⊔ other`, with the points of `other` shifted past those of
    /// `self`.
    pub fn disjoint_union(&self, other: &ExplicitBiset) -> Result<Self, BisetError> {
        if self.h2 != other.h2 {
            return Err(BisetError::AmbientMismatch { left: self.h2.clone(), right: other.h2.clone() });
        }
        if self.h1 != other.h1 {
            return Err(BisetError::AmbientMismatch { left: self.h1.clone(), right: other.h1.clone() });
        }
        let (n, o) = (self.size, other.size);
        let mut left = Vec::with_capacity(self.h2.order() * (n + o));
        for i in 0..self.h2.order() {
            left.extend_from_slice(&self.left[i * n..(i + 1) * n]);
            left.extend(other.left[i * o..(i + 1) * o].iter().map(|p| p + n));
        }
        let mut right = self.right.clone();
        right.extend(other.right.iter().map(|p| p + n));
        Ok(Self { h2: self.h2.clone(), h1: self.h1.clone(), size: n + o, left, right })
    }

    pub fn to_json(&self) -> ExplicitBisetJson {
        ExplicitBisetJson {
            h2: self.h2.clone(),
            h1: self.h1.clone(),
            left: self.left_table(),
            right: self.right_table(),
        }
    }
}

impl Serialize for ExplicitBiset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// Wire form of an [`ExplicitBiset`]: `left[i][p] = h2[i]·p` and
/// `right[p][j] = p·h1[j]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitBisetJson {
    #[serde(rename = "H2")]
    pub h2: Subgroup,
    #[serde(rename = "H1")]
    pub h1: Subgroup,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

impl ExplicitBisetJson {
    pub fn resolve(&self, g: &FiniteGroup) -> Result<ExplicitBiset, BisetError> {
        let h2 = g.subgroup(self.h2.elements().to_vec())?;
        let h1 = g.subgroup(self.h1.elements().to_vec())?;
        ExplicitBiset::from_actions(g, h2, h1, self.left.clone(), self.right.clone())
    }
}

/// The balanced product `X₂ ×_{H₂} X₁`: pairs modulo
/// `(x₂·h, x₁) ~ (x₂, h·x₁)`.
pub fn compose_bruteforce(
    g: &FiniteGroup,
    x2: &ExplicitBiset,
    x1: &ExplicitBiset,
) -> Result<ExplicitBiset, BisetError> {
    if x2.h1 != x1.h2 {
        return Err(BisetError::AmbientMismatch { left: x2.h1.clone(), right: x1.h2.clone() });
    }
    let mid = &x2.h1;
    let (n2, n1) = (x2.size, x1.size);
    let inv_pos: Vec<usize> = mid.iter().map(|h| mid.position(g.inv(h)).expect("closed")).collect();
    let mut pair_id = vec![usize::MAX; n2 * n1];
    let mut reps = Vec::new();
    let mm = mid.order();
    for p2 in 0..n2 {
        for p1 in 0..n1 {
            if pair_id[p2 * n1 + p1] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push((p2, p1));
            for (j, &ji) in inv_pos.iter().enumerate() {
                let q2 = x2.right[p2 * mm + j];
                let q1 = x1.left[ji * n1 + p1];
                pair_id[q2 * n1 + q1] = id;
            }
        }
    }
    let size = reps.len();
    let (h3, h1) = (&x2.h2, &x1.h1);
    let mut left = vec![0; h3.order() * size];
    for i in 0..h3.order() {
        for (p, &(p2, p1)) in reps.iter().enumerate() {
            left[i * size + p] = pair_id[x2.left[i * n2 + p2] * n1 + p1];
        }
    }
    let m = h1.order();
    let mut right = vec![0; size * m];
    for (p, &(p2, p1)) in reps.iter().enumerate() {
        for j in 0..m {
            right[p * m + j] = pair_id[p2 * n1 + x1.right[p1 * m + j]];
        }
    }
    Ok(ExplicitBiset { h2: h3.clone(), h1: h1.clone(), size, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn s3() -> FiniteGroup {
        GroupSpec::Symmetric { n: 3 }.build().unwrap()
    }

    /// `_A G _B` with both actions by multiplication.
    fn regular(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> ExplicitBiset {
        let left = a.iter().map(|x| g.elements().map(|p| g.mul(x, p)).collect()).collect();
        let right = g.elements().map(|p| b.iter().map(|y| g.mul(p, y)).collect()).collect();
        ExplicitBiset::from_actions(g, a.clone(), b.clone(), left, right).unwrap()
    }

    #[test]
    fn realize_sizes_and_round_trip() {
        let g = s3();
        let subs = g.subgroups();
        let all = g.whole();
        let id = StandardRep::identity(&all);
        assert_eq!(id.realize(&g).size(), 6);
        let free = StandardRep::free(&g, &all, &all);
        let x = free.realize(&g);
        assert_eq!(x.size(), 36);
        assert_eq!(x.orbits().len(), 1);
        let c2 = StandardRep::new(all.clone(), all.clone(), GroupHom::identity(&subs[1])).unwrap();
        let x = c2.realize(&g);
        assert_eq!(x.size(), 18);
        assert_eq!(x.standard_rep_at(0).unwrap(), c2);
        x.validate(&g).unwrap();
    }

    #[test]
    fn regular_bisets() {
        let g = s3();
        let subs = g.subgroups();
        let all = g.whole();
        let x = regular(&g, &all, &subs[1]);
        let rep = x.standard_rep_at(g.identity()).unwrap();
        assert_eq!(rep.l(), &subs[1]);
        assert_eq!(rep.gamma(), &GroupHom::identity(&subs[1]));
        let x = regular(&g, &subs[1], &subs[1]);
        let comps = x.components().unwrap();
        assert_eq!(comps.len(), 2);
        let mut ls: Vec<usize> = comps.iter().map(|(r, _)| r.l().order()).collect();
        ls.sort();
        assert_eq!(ls, vec![1, 2]);
    }

    #[test]
    fn rejects_non_bifree() {
        let g = s3();
        let all = g.whole();
        let e = g.trivial_subgroup();
        // S3 acting trivially on one point
        let left = vec![vec![0]; 6];
        let right = vec![vec![0]];
        let err = ExplicitBiset::from_actions(&g, all, e, left, right).unwrap_err();
        assert!(matches!(err, BisetError::NotBifree(_)));
    }

    #[test]
    fn transpose_and_union() {
        let g = s3();
        let subs = g.subgroups();
        let all = g.whole();
        let gamma = GroupHom::isomorphisms(&g, &subs[1], &subs[2]).pop().unwrap();
        let rep = StandardRep::new(all.clone(), all.clone(), gamma).unwrap();
        let x = rep.realize(&g);
        let t = x.transpose(&g);
        t.validate(&g).unwrap();
        assert_eq!(t.standard_rep_at(0).unwrap(), rep.transpose());
        assert_eq!(t.transpose(&g), x);
        let u = x.disjoint_union(&StandardRep::identity(&all).realize(&g)).unwrap();
        u.validate(&g).unwrap();
        assert_eq!(u.orbits().len(), 2);
        assert_eq!(u.size(), x.size() + 6);
    }

    #[test]
    fn bruteforce_sizes() {
        let g = GroupSpec::Dihedral { n: 4 }.build().unwrap();
        let subs = g.subgroups().to_vec();
        let all = g.whole();
        for a in subs.iter().step_by(3) {
            let x2 = StandardRep::free(&g, a, &all).realize(&g);
            let x1 = StandardRep::identity(&all).realize(&g);
            let c = compose_bruteforce(&g, &x2, &x1).unwrap();
            c.validate(&g).unwrap();
            assert_eq!(c.size(), x2.size() * x1.size() / all.order());
            assert_eq!(c.component_keys(&g).unwrap(), x2.component_keys(&g).unwrap());
        }
        let empty = ExplicitBiset::empty(&all, &all);
        let x = StandardRep::identity(&all).realize(&g);
        assert!(compose_bruteforce(&g, &empty, &x).unwrap().is_empty());
    }

    #[test]
    fn json_round_trip() {
        let g = s3();
        let x = regular(&g, &g.subgroups()[1], &g.subgroups()[4]);
        let text = serde_json::to_string(&x).unwrap();
        let back: ExplicitBisetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.resolve(&g).unwrap(), x);
    }
}
