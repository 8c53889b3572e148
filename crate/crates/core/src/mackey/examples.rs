use std::collections::HashMap;

use super::{MackeyData, MackeyError};
use crate::abelian::{kernel, AbHom, FgAbelianGroup, SubgroupPresentation};
use crate::group::{FiniteGroup, GroupSpec, Subgroup};

/// The Burnside functor: `M(H)` is free on the `H`-conjugacy classes of
/// subgroups of `H`, i.e. on the transitive `H`-sets `[H/L]`.
pub fn burnside_example(spec: &GroupSpec) -> Result<MackeyData, MackeyError> {
    let g = spec.build()?;
    let classes: HashMap<Subgroup, Vec<Vec<Subgroup>>> =
        g.subgroups().iter().map(|h| (h.clone(), g.conjugacy_classes_in(&g.subgroups_of(h), h))).collect();
    let class_of =
        |h: &Subgroup, l: &Subgroup| -> usize { classes[h].iter().position(|c| c.contains(l)).expect("subgroup of h") };
    let value = |h: &Subgroup| Ok(FgAbelianGroup::free(classes[h].len()));
    // [K/L] restricts to Σ_{x ∈ H\K/L} [H/(H ∩ xLx⁻¹)]
    let res = |h: &Subgroup, k: &Subgroup| {
        let mut m = vec![vec![0; classes[k].len()]; classes[h].len()];
        for (j, class) in classes[k].iter().enumerate() {
            let l = &class[0];
            for &x in &g.double_cosets(k, h, l)?.representatives {
                let stab = h.intersection(&g.conjugate_subgroup(l, g.inv(x)));
                m[class_of(h, &stab)][j] += 1;
            }
        }
        Ok(AbHom::new(FgAbelianGroup::free(classes[k].len()), FgAbelianGroup::free(classes[h].len()), m)?)
    };
    let ind = |h: &Subgroup, k: &Subgroup| {
        let mut m = vec![vec![0; classes[h].len()]; classes[k].len()];
        for (i, class) in classes[h].iter().enumerate() {
            m[class_of(k, &class[0])][i] = 1;
        }
        Ok(AbHom::new(FgAbelianGroup::free(classes[h].len()), FgAbelianGroup::free(classes[k].len()), m)?)
    };
    let con = |x, h: &Subgroup| {
        let hx = g.conjugate_subgroup(h, x);
        let mut m = vec![vec![0; classes[h].len()]; classes[&hx].len()];
        for (i, class) in classes[h].iter().enumerate() {
            m[class_of(&hx, &g.conjugate_subgroup(&class[0], x))][i] = 1;
        }
        Ok(AbHom::new(FgAbelianGroup::free(classes[h].len()), FgAbelianGroup::free(classes[&hx].len()), m)?)
    };
    MackeyData::build(spec.clone(), g.clone(), value, res, ind, con)
}

/// A finitely generated abelian group with a left action of `G`, given by
/// one matrix per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    module: FgAbelianGroup,
    action: Vec<AbHom>,
}

impl GModule {
    pub fn new(
        g: &FiniteGroup,
        module: FgAbelianGroup,
        action: Vec<crate::abelian::linalg::Mat>,
    ) -> Result<Self, MackeyError> {
        if action.len() != g.order() {
            return Err(MackeyError::InvalidRepresentation(format!(
                "{} matrices for a group of order {}",
                action.len(),
                g.order()
            )));
        }
        let action =
            action.into_iter().map(|m| AbHom::new(module.clone(), module.clone(), m)).collect::<Result<Vec<_>, _>>()?;
        if !action[g.identity()].is_identity() {
            return Err(MackeyError::InvalidRepresentation("the identity acts nontrivially".into()));
        }
        for a in g.elements() {
            for b in g.elements() {
                if action[g.mul(a, b)] != action[a].compose(&action[b])? {
                    return Err(MackeyError::InvalidRepresentation(format!("ρ({a}·{b}) ≠ ρ({a})ρ({b})")));
                }
            }
        }
        Ok(Self { module, action })
    }

    pub fn module(&self) -> &FgAbelianGroup {
        &self.module
    }

    pub fn action(&self, x: usize) -> &AbHom {
        &self.action[x]
    }

    /// The fixed points `N^H`, as the kernel of `v ↦ (ρ(h)v − v)_{h ∈ H}`.
    fn fixed_points(&self, h: &Subgroup) -> SubgroupPresentation {
        let n = &self.module;
        let id = AbHom::identity(n);
        let blocks: Vec<Vec<AbHom>> =
            h.iter().map(|x| vec![self.action[x].add(&id.neg()).expect("same shape")]).collect();
        let codomains = vec![n.clone(); h.order()];
        kernel(&AbHom::block(std::slice::from_ref(n), &codomains, &blocks).expect("shapes"))
    }
}

/// The fixed point functor `H ↦ N^H`: restriction is the inclusion of
/// fixed points, induction the transfer `v ↦ Σ_{k ∈ K/H} ρ(k)v`, and
/// `con(g, H)` acts by `ρ(g⁻¹) : N^H → N^{H^g}`.
pub fn fixed_point_example(spec: &GroupSpec, module: &GModule) -> Result<MackeyData, MackeyError> {
    let g = spec.build()?;
    if module.action.len() != g.order() {
        return Err(MackeyError::InvalidRepresentation("module built for another group".into()));
    }
    let fixed: HashMap<Subgroup, SubgroupPresentation> =
        g.subgroups().iter().map(|h| (h.clone(), module.fixed_points(h))).collect();
    let induced = |f: &AbHom, from: &Subgroup, to: &Subgroup| {
        fixed[from]
            .induced(f, &fixed[to])
            .ok_or_else(|| MackeyError::InvalidRepresentation(format!("map does not carry N^{from} into N^{to}")))
    };
    let value = |h: &Subgroup| Ok(fixed[h].group.clone());
    let res = |h: &Subgroup, k: &Subgroup| induced(&AbHom::identity(&module.module), k, h);
    let ind = |h: &Subgroup, k: &Subgroup| {
        let mut transfer = AbHom::zero(&module.module, &module.module);
        for x in k.iter().filter(|&x| h.iter().all(|y| g.mul(x, y) >= x)) {
            transfer = transfer.add(&module.action[x])?;
        }
        induced(&transfer, h, k)
    };
    let con = |x, h: &Subgroup| induced(&module.action[g.inv(x)], h, &g.conjugate_subgroup(h, x));
    MackeyData::build(spec.clone(), g.clone(), value, res, ind, con)
}

/// Fixed points of `Z/3` under `C₂` acting by `−1`: a Mackey functor that is
/// not conjugation invariant, since `con(c, {e})` is multiplication by `−1`.
pub fn fixed_point_c2_z3() -> MackeyData {
    let spec = GroupSpec::Cyclic { n: 2 };
    let g = spec.build().expect("C2");
    let module = GModule::new(&g, FgAbelianGroup::cyclic(3), vec![vec![vec![1]], vec![vec![2]]]).expect("valid action");
    fixed_point_example(&spec, &module).expect("valid data")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mackey::{check_m1, validate_structure, SquareSampling};

    #[test]
    fn burnside_ranks() {
        let d = burnside_example(&GroupSpec::Symmetric { n: 3 }).unwrap();
        // S3 has four classes of subgroups
        assert_eq!(d.value_at(&d.subgroups().last().unwrap().clone()).rank(), 4);
        let d = burnside_example(&GroupSpec::Quaternion).unwrap();
        assert_eq!(d.value_at(&d.subgroups().last().unwrap().clone()).rank(), 6);
    }

    #[test]
    fn c2_z3_values() {
        let d = fixed_point_c2_z3();
        let subs = d.subgroups().to_vec();
        assert_eq!(d.value_at(&subs[0]).factors(), &[3]);
        assert!(d.value_at(&subs[1]).is_trivial());
        assert_eq!(d.con_map(1, &subs[0]).matrix(), &vec![vec![2]]);
    }

    #[test]
    fn s3_sign_module() {
        // Z with S3 acting through the sign
        let spec = GroupSpec::Symmetric { n: 3 };
        let g = spec.build().unwrap();
        let sign: Vec<_> = g
            .elements()
            .map(|x| {
                let even = g.subgroups().iter().find(|h| h.order() == 3).unwrap().contains(x);
                vec![vec![if even { 1 } else { -1 }]]
            })
            .collect();
        let module = GModule::new(&g, FgAbelianGroup::free(1), sign).unwrap();
        let d = fixed_point_example(&spec, &module).unwrap();
        assert!(validate_structure(&d).passed());
        assert!(check_m1(&d, SquareSampling::All).unwrap().passed());
        assert!(d.value_at(&g.whole()).is_trivial());
    }

    #[test]
    fn rejects_non_actions() {
        let g = GroupSpec::Cyclic { n: 2 }.build().unwrap();
        assert!(GModule::new(&g, FgAbelianGroup::cyclic(3), vec![vec![vec![1]], vec![vec![1]], vec![vec![1]]]).is_err());
        assert!(GModule::new(&g, FgAbelianGroup::cyclic(4), vec![vec![vec![1]], vec![vec![2]]]).is_err());
    }
}
