use serde::Serialize;

use super::{Elem, FiniteGroup, GroupError, Subgroup};

/// The double cosets `left \ ambient / right`.
///
/// Representatives are the minimal element index of each double coset and
/// are listed in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DoubleCosetDecomposition {
    pub ambient: Subgroup,
    pub left: Subgroup,
    pub right: Subgroup,
    pub representatives: Vec<Elem>,
    pub sizes: Vec<usize>,
    /// For each element of `ambient` (by position), the index of its
    /// double coset in `representatives`.
    coset_of: Vec<usize>,
}

impl DoubleCosetDecomposition {
    pub(super) fn new(
        g: &FiniteGroup,
        ambient: &Subgroup,
        left: &Subgroup,
        right: &Subgroup,
    ) -> Result<Self, GroupError> {
        for sub in [left, right] {
            if !sub.is_subgroup_of(ambient) {
                return Err(GroupError::NotContained {
                    sub: sub.elements().to_vec(),
                    ambient: ambient.elements().to_vec(),
                });
            }
        }
        let mut coset_of = vec![usize::MAX; ambient.order()];
        let mut representatives = Vec::new();
        let mut sizes = Vec::new();
        for (pos, x) in ambient.iter().enumerate() {
            if coset_of[pos] != usize::MAX {
                continue;
            }
            let idx = representatives.len();
            representatives.push(x);
            let mut size = 0;
            for l in left.iter() {
                let lx = g.mul(l, x);
                for r in right.iter() {
                    let p = ambient.position(g.mul(lx, r)).expect("closed under multiplication");
                    if coset_of[p] == usize::MAX {
                        coset_of[p] = idx;
                        size += 1;
                    }
                }
            }
            sizes.push(size);
        }
        Ok(Self {
            ambient: ambient.clone(),
            left: left.clone(),
            right: right.clone(),
            representatives,
            sizes,
            coset_of,
        })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// Index of the double coset containing `x`, if `x` lies in the ambient.
    pub fn coset_index(&self, x: Elem) -> Option<usize> {
        self.ambient.position(x).map(|p| self.coset_of[p])
    }

    /// The representative of the double coset containing `x`.
    pub fn representative_of(&self, x: Elem) -> Option<Elem> {
        self.coset_index(x).map(|i| self.representatives[i])
    }

    /// All members of the `i`-th double coset, ascending.
    pub fn members(&self, i: usize) -> Vec<Elem> {
        self.ambient.iter().enumerate().filter(|&(p, _)| self.coset_of[p] == i).map(|(_, x)| x).collect()
    }
}
