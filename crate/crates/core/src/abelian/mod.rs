//! Finitely generated abelian groups in invariant-factor coordinates and
//! the homomorphisms between them.
//!
//! A group is a list of factors `d₁, …, d_r`, each `0` (a copy of `Z`) or
//! positive (a copy of `Z/d`). Elements are integer vectors, reduced
//! coordinatewise into `[0, d_i)` for the finite factors.

pub mod linalg;

use std::fmt;

use serde::{Deserialize, Serialize};

use linalg::Mat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AbelianError {
    #[error("factor {0} is negative")]
    NegativeFactor(i64),
    #[error("matrix must be {rows}x{cols}")]
    Shape { rows: usize, cols: usize },
    #[error("column {col} has order dividing {order} in the domain but its image does not")]
    NotWellDefined { col: usize, order: i64 },
    #[error("element has {found} coordinates, expected {expected}")]
    BadElement { expected: usize, found: usize },
    #[error("homomorphisms are not composable")]
    NotComposable,
    #[error("domains or codomains differ")]
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FgAbelianGroup {
    factors: Vec<i64>,
}

impl FgAbelianGroup {
    pub fn new(factors: Vec<i64>) -> Result<Self, AbelianError> {
        if let Some(&d) = factors.iter().find(|&&d| d < 0) {
            return Err(AbelianError::NegativeFactor(d));
        }
        Ok(Self { factors })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// `Zⁿ`.
    pub fn free(n: usize) -> Self {
        Self { factors: vec![0; n] }
    }

    pub fn cyclic(d: i64) -> Self {
        Self { factors: vec![d] }
    }

    pub fn factors(&self) -> &[i64] {
        &self.factors
    }

    /// Number of coordinates.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Whether every coordinate is `Z/1`, i.e. the group is zero.
    pub fn is_trivial(&self) -> bool {
        self.factors.iter().all(|&d| d == 1)
    }

    #[inline]
    fn reduce_coord(&self, i: usize, x: i64) -> i64 {
        match self.factors[i] {
            0 => x,
            d => x.rem_euclid(d),
        }
    }

    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().enumerate().map(|(i, &x)| self.reduce_coord(i, x)).collect()
    }

    pub fn check(&self, v: &[i64]) -> Result<Vec<i64>, AbelianError> {
        if v.len() != self.rank() {
            return Err(AbelianError::BadElement { expected: self.rank(), found: v.len() });
        }
        Ok(self.reduce(v))
    }

    pub fn is_zero(&self, v: &[i64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn direct_sum(parts: &[FgAbelianGroup]) -> Self {
        Self { factors: parts.iter().flat_map(|p| p.factors.iter().copied()).collect() }
    }
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match d {
                0 => write!(f, "Z")?,
                d => write!(f, "Z/{d}")?,
            }
        }
        Ok(())
    }
}

/// A homomorphism given by an integer matrix acting on coordinate vectors;
/// rows index codomain coordinates. Entries are kept reduced modulo the
/// codomain factors, so equality is congruence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbHom {
    domain: FgAbelianGroup,
    codomain: FgAbelianGroup,
    matrix: Mat,
}

impl AbHom {
    pub fn new(domain: FgAbelianGroup, codomain: FgAbelianGroup, matrix: Mat) -> Result<Self, AbelianError> {
        let (rows, cols) = (codomain.rank(), domain.rank());
        if matrix.len() != rows || matrix.iter().any(|r| r.len() != cols) {
            return Err(AbelianError::Shape { rows, cols });
        }
        for (j, &d) in domain.factors.iter().enumerate() {
            if d == 0 {
                continue;
            }
            if (0..rows).any(|i| codomain.reduce_coord(i, d * matrix[i][j]) != 0) {
                return Err(AbelianError::NotWellDefined { col: j, order: d });
            }
        }
        Ok(Self::reduced(domain, codomain, matrix))
    }

    fn reduced(domain: FgAbelianGroup, codomain: FgAbelianGroup, mut matrix: Mat) -> Self {
        for (i, row) in matrix.iter_mut().enumerate() {
            for x in row.iter_mut() {
                *x = codomain.reduce_coord(i, *x);
            }
        }
        Self { domain, codomain, matrix }
    }

    pub fn zero(domain: &FgAbelianGroup, codomain: &FgAbelianGroup) -> Self {
        Self {
            domain: domain.clone(),
            codomain: codomain.clone(),
            matrix: vec![vec![0; domain.rank()]; codomain.rank()],
        }
    }

    pub fn identity(a: &FgAbelianGroup) -> Self {
        Self::reduced(a.clone(), a.clone(), linalg::identity(a.rank()))
    }

    /// Multiplication by `c`.
    pub fn scalar(a: &FgAbelianGroup, c: i64) -> Self {
        Self::identity(a).scale(c)
    }

    pub fn domain(&self) -> &FgAbelianGroup {
        &self.domain
    }

    pub fn codomain(&self) -> &FgAbelianGroup {
        &self.codomain
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let out: Vec<i64> = self.matrix.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect();
        self.codomain.reduce(&out)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AbHom) -> Result<Self, AbelianError> {
        if first.codomain != self.domain {
            return Err(AbelianError::NotComposable);
        }
        let inner = self.domain.rank();
        let m = linalg::mat_mul(&self.matrix, &first.matrix, inner, first.domain.rank());
        Ok(Self::reduced(first.domain.clone(), self.codomain.clone(), m))
    }

    pub fn add(&self, other: &AbHom) -> Result<Self, AbelianError> {
        if self.domain != other.domain || self.codomain != other.codomain {
            return Err(AbelianError::Mismatch);
        }
        let m =
            self.matrix.iter().zip(&other.matrix).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Ok(Self::reduced(self.domain.clone(), self.codomain.clone(), m))
    }

    pub fn scale(&self, c: i64) -> Self {
        let m = self.matrix.iter().map(|r| r.iter().map(|x| c * x).collect()).collect();
        Self::reduced(self.domain.clone(), self.codomain.clone(), m)
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.domain == self.codomain && *self == Self::identity(&self.domain)
    }

    /// The block matrix `[blocks[i][j]] : ⊕ domains → ⊕ codomains`.
    pub fn block(
        domains: &[FgAbelianGroup],
        codomains: &[FgAbelianGroup],
        blocks: &[Vec<AbHom>],
    ) -> Result<Self, AbelianError> {
        if blocks.len() != codomains.len() || blocks.iter().any(|r| r.len() != domains.len()) {
            return Err(AbelianError::Shape { rows: codomains.len(), cols: domains.len() });
        }
        let domain = FgAbelianGroup::direct_sum(domains);
        let codomain = FgAbelianGroup::direct_sum(codomains);
        let mut m = vec![vec![0; domain.rank()]; codomain.rank()];
        let mut r0 = 0;
        for (i, cd) in codomains.iter().enumerate() {
            let mut c0 = 0;
            for (j, d) in domains.iter().enumerate() {
                let b = &blocks[i][j];
                if &b.domain != d || &b.codomain != cd {
                    return Err(AbelianError::Mismatch);
                }
                for (r, row) in b.matrix.iter().enumerate() {
                    m[r0 + r][c0..c0 + d.rank()].copy_from_slice(row);
                }
                c0 += d.rank();
            }
            r0 += cd.rank();
        }
        Ok(Self::reduced(domain, codomain, m))
    }

    /// The `(i, j)` block with respect to the given decompositions.
    pub fn sub_block(&self, domains: &[FgAbelianGroup], codomains: &[FgAbelianGroup], i: usize, j: usize) -> Self {
        let r0: usize = codomains[..i].iter().map(FgAbelianGroup::rank).sum();
        let c0: usize = domains[..j].iter().map(FgAbelianGroup::rank).sum();
        let m = self.matrix[r0..r0 + codomains[i].rank()]
            .iter()
            .map(|row| row[c0..c0 + domains[j].rank()].to_vec())
            .collect();
        Self::reduced(domains[j].clone(), codomains[i].clone(), m)
    }
}

impl Serialize for AbHom {
    /// Serialized as the bare matrix.
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.matrix.serialize(serializer)
    }
}

/// A subgroup `S` of an ambient group `A`, presented as an abstract
/// [`FgAbelianGroup`] together with its inclusion into `A` and a way back.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    pub group: FgAbelianGroup,
    pub inclusion: AbHom,
    /// Lattice basis (in ambient coordinates) of the preimage of `S` in `Zⁿ`.
    basis: Vec<Vec<i64>>,
    /// Rows of `U` for the kept Smith coordinates.
    u_rows: Mat,
}

impl SubgroupPresentation {
    /// Coordinates in `group` of an element of the ambient lying in `S`.
    pub fn lift(&self, v: &[i64]) -> Option<Vec<i64>> {
        let ambient = self.inclusion.codomain();
        let v = ambient.reduce(v);
        let y = linalg::solve(&self.basis, &v)?;
        let z: Vec<i64> = self.u_rows.iter().map(|row| row.iter().zip(&y).map(|(a, b)| a * b).sum()).collect();
        Some(self.group.reduce(&z))
    }

    /// `S → S'` induced by an ambient map `f : A → A'` with `f(S) ⊆ S'`.
    pub fn induced(&self, f: &AbHom, target: &SubgroupPresentation) -> Option<AbHom> {
        let cols: Vec<Vec<i64>> = (0..self.group.rank())
            .map(|j| {
                let v: Vec<i64> = self.inclusion.matrix.iter().map(|row| row[j]).collect();
                target.lift(&f.apply(&v))
            })
            .collect::<Option<_>>()?;
        let m = (0..target.group.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        AbHom::new(self.group.clone(), target.group.clone(), m).ok()
    }
}

/// The kernel of `f`, in invariant-factor coordinates.
pub fn kernel(f: &AbHom) -> SubgroupPresentation {
    let a = f.domain();
    let n = a.rank();
    let c = f.codomain();
    // v is in the kernel iff f·v = C·w for some w, with C the diagonal of
    // codomain factors
    let m = c.rank();
    let stacked: Mat = (0..m)
        .map(|i| {
            let mut row = f.matrix[i].clone();
            row.extend((0..m).map(|j| if i == j { -c.factors[i] } else { 0 }));
            row
        })
        .collect();
    let gens: Vec<Vec<i64>> = linalg::kernel(&stacked, n + m).into_iter().map(|v| v[..n].to_vec()).collect();
    // add the domain relations, then take a basis of the spanned lattice
    let mut all = gens;
    for (j, &d) in a.factors.iter().enumerate() {
        if d > 0 {
            let mut e = vec![0; n];
            e[j] = d;
            all.push(e);
        }
    }
    let basis = lattice_basis(&all, n);
    // relations: the domain relations written in the basis
    let r = basis.len();
    let rel_cols: Vec<Vec<i64>> = a
        .factors
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d > 0)
        .map(|(j, &d)| {
            let mut e = vec![0; n];
            e[j] = d;
            linalg::solve(&basis, &e).expect("relations lie in the lattice")
        })
        .collect();
    let rel: Mat = (0..r).map(|i| rel_cols.iter().map(|col| col[i]).collect()).collect();
    let (diag, u, uinv) = linalg::smith(&rel, rel_cols.len());
    let keep: Vec<usize> = (0..r).filter(|&i| diag[i] != 1).collect();
    let group = FgAbelianGroup { factors: keep.iter().map(|&i| diag[i]).collect() };
    // inclusion: z ↦ B·U⁻¹·z on the kept coordinates
    let b_uinv: Mat =
        (0..n).map(|row| (0..r).map(|k| (0..r).map(|x| basis[x][row] * uinv[x][k]).sum()).collect()).collect();
    let inc: Mat = b_uinv.iter().map(|row| keep.iter().map(|&k| row[k]).collect()).collect();
    let inclusion = AbHom::new(group.clone(), a.clone(), inc).expect("inclusion is well defined");
    let u_rows = keep.iter().map(|&i| u[i].clone()).collect();
    SubgroupPresentation { group, inclusion, basis, u_rows }
}

/// A basis (as vectors) of the lattice spanned by `gens` in `Zⁿ`.
fn lattice_basis(gens: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let m: Mat = (0..n).map(|i| gens.iter().map(|g| g[i]).collect()).collect();
    let (e, _, pivots) = linalg::column_echelon(&m, gens.len());
    (0..pivots.len()).map(|j| e.iter().map(|row| row[j]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn well_definedness() {
        let z3 = FgAbelianGroup::cyclic(3);
        let z6 = FgAbelianGroup::cyclic(6);
        assert!(AbHom::new(z3.clone(), z6.clone(), vec![vec![2]]).is_ok());
        assert!(AbHom::new(z3.clone(), z6.clone(), vec![vec![1]]).is_err());
        assert!(AbHom::new(z3.clone(), FgAbelianGroup::free(1), vec![vec![1]]).is_err());
        assert!(AbHom::new(FgAbelianGroup::free(1), z3.clone(), vec![vec![1]]).is_ok());
        assert_eq!(AbHom::new(z3.clone(), z3.clone(), vec![vec![-1]]).unwrap(), AbHom::scalar(&z3, 2));
    }

    #[test]
    fn negation_on_z3() {
        let z3 = FgAbelianGroup::cyclic(3);
        let neg = AbHom::scalar(&z3, -1);
        assert!(!neg.is_identity());
        assert!(neg.compose(&neg).unwrap().is_identity());
        assert!(AbHom::identity(&z3).add(&neg).unwrap().is_zero());
    }

    #[test]
    fn kernels() {
        // 1 + negation on Z/3 is zero, so its kernel is everything
        let z3 = FgAbelianGroup::cyclic(3);
        let k = kernel(&AbHom::zero(&z3, &z3));
        assert_eq!(k.group.factors(), &[3]);
        // negation minus identity is -2 = 1 mod 3: injective
        let k = kernel(&AbHom::scalar(&z3, -2));
        assert!(k.group.is_trivial());
        // multiplication by 2 on Z/4 has kernel Z/2 generated by 2
        let z4 = FgAbelianGroup::cyclic(4);
        let k = kernel(&AbHom::scalar(&z4, 2));
        assert_eq!(k.group.factors(), &[2]);
        assert_eq!(k.inclusion.apply(&[1]), vec![2]);
        assert_eq!(k.lift(&[2]), Some(vec![1]));
        assert_eq!(k.lift(&[1]), None);
        // (x, y) ↦ x - y on Z²: kernel is the diagonal
        let f = AbHom::new(FgAbelianGroup::free(2), FgAbelianGroup::free(1), vec![vec![1, -1]]).unwrap();
        let k = kernel(&f);
        assert_eq!(k.group.factors(), &[0]);
        let d = k.inclusion.apply(&[1]);
        assert!(d == vec![1, 1] || d == vec![-1, -1]);
    }

    fn small_group() -> impl Strategy<Value = FgAbelianGroup> {
        proptest::collection::vec(prop_oneof![Just(0i64), 2i64..7], 1..4).prop_map(|f| FgAbelianGroup::new(f).unwrap())
    }

    /// A random well-defined map `a → b`: column `j` is scaled so that
    /// `d_j` kills it.
    fn hom(a: FgAbelianGroup, b: FgAbelianGroup, raw: Vec<i64>) -> AbHom {
        let m = (0..b.rank())
            .map(|i| {
                (0..a.rank())
                    .map(|j| {
                        let x = raw[(i * 7 + j) % raw.len()];
                        let (dj, ci) = (a.factors()[j], b.factors()[i]);
                        match (dj, ci) {
                            (0, _) => x,
                            (_, 0) => 0,
                            (dj, ci) => x * ci / gcd(dj, ci),
                        }
                    })
                    .collect()
            })
            .collect();
        AbHom::new(a, b, m).unwrap()
    }

    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }

    proptest! {
        #[test]
        fn composition_is_associative(
            a in small_group(), b in small_group(), c in small_group(), d in small_group(),
            raw in proptest::collection::vec(-5i64..6, 12),
        ) {
            let f = hom(a, b.clone(), raw.clone());
            let g = hom(b, c.clone(), raw.iter().rev().copied().collect());
            let h = hom(c, d, raw.iter().map(|x| x + 1).collect());
            let left = h.compose(&g).unwrap().compose(&f).unwrap();
            let right = h.compose(&g.compose(&f).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn kernel_inclusion_lands_in_kernel(
            a in small_group(), b in small_group(),
            raw in proptest::collection::vec(-5i64..6, 12),
        ) {
            let f = hom(a.clone(), b.clone(), raw);
            let k = kernel(&f);
            prop_assert!(f.compose(&k.inclusion).unwrap().is_zero());
            // every element of the domain killed by f lifts, and the lift
            // maps back to it
            if a.factors().iter().all(|&d| d > 0) {
                let mut v = vec![0; a.rank()];
                loop {
                    if b.is_zero(&f.apply(&v)) {
                        let z = k.lift(&v);
                        prop_assert!(z.is_some());
                        prop_assert_eq!(k.inclusion.apply(&z.unwrap()), a.reduce(&v));
                    }
                    let mut i = 0;
                    while i < v.len() {
                        v[i] += 1;
                        if v[i] < a.factors()[i] { break; }
                        v[i] = 0;
                        i += 1;
                    }
                    if i == v.len() { break; }
                }
                // the kernel has the right size
                let total: i64 = a.factors().iter().product();
                let mut killed = 0i64;
                let mut v = vec![0; a.rank()];
                loop {
                    if b.is_zero(&f.apply(&v)) { killed += 1; }
                    let mut i = 0;
                    while i < v.len() {
                        v[i] += 1;
                        if v[i] < a.factors()[i] { break; }
                        v[i] = 0;
                        i += 1;
                    }
                    if i == v.len() { break; }
                }
                prop_assert!(total > 0);
                let size: i64 = k.group.factors().iter().product();
                prop_assert_eq!(size, killed);
            }
        }
    }
}
