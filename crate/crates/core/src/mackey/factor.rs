use std::collections::HashMap;

use serde_json::json;

use super::{single_parts, BivariantFunctor, CheckReport, MackeyData, MackeyError};
use crate::abelian::{AbHom, FgAbelianGroup};
use crate::biset::{compose_formula, conjugation_keys, CanonicalKey, StandardRep};
use crate::category::{j_lower, j_upper, orbit_maps, BisetMorphism, GMap, MatrixMorphism};
use crate::group::{Elem, FiniteGroup, GroupHom, Subgroup};

/// The additive functor `F` on the conjugation category induced by a
/// conjugation invariant Mackey functor, tabulated on every conjugation
/// biset `[L, c_x, K]`:
/// `F([L, c_x, K]) = ind^{H₂}_L ∘ con(x⁻¹, K) ∘ res^{H₁}_K`.
#[derive(Clone, Debug)]
pub struct FactoredFunctor {
    data: MackeyData,
    table: HashMap<CanonicalKey, AbHom>,
}

/// Builds `F` from Mackey data, refusing data that is not conjugation
/// invariant.
pub fn build_f(d: &MackeyData) -> Result<FactoredFunctor, MackeyError> {
    let g = d.group();
    for h in d.subgroups() {
        for z in g.centralizer(h).iter() {
            let c = d.con_map(z, h);
            if !c.is_identity() {
                return Err(MackeyError::NotConjugationInvariant {
                    subgroup: h.clone(),
                    element: z,
                    con: c.matrix().clone(),
                });
            }
        }
    }
    let mut f = FactoredFunctor { data: d.clone(), table: HashMap::new() };
    for h2 in d.subgroups() {
        for h1 in d.subgroups() {
            for key in conjugation_keys(g, h2, h1) {
                let value = f.eval_rep(key.rep())?;
                f.table.insert(key, value);
            }
        }
    }
    debug_assert!(f.check_g_independence().is_ok_and(|r| r.passed()));
    Ok(f)
}

impl FactoredFunctor {
    pub fn data(&self) -> &MackeyData {
        &self.data
    }

    /// The tabulated values, sorted by key.
    pub fn table(&self) -> Vec<(&CanonicalKey, &AbHom)> {
        let mut out: Vec<_> = self.table.iter().collect();
        out.sort_by(|a, b| a.0.cmp(b.0));
        out
    }

    /// `F` on a conjugation biset given in any basepoint, using the least
    /// realizing element.
    pub fn eval_rep(&self, rep: &StandardRep) -> Result<AbHom, MackeyError> {
        let x = self
            .data
            .group()
            .conjugation_realizing(rep.gamma())
            .ok_or_else(|| MackeyError::NotAConjugationBiset(rep.to_string()))?;
        self.eval_with(rep, x)
    }

    /// `F` on `[L, c_x, K]` computed with the given realizing element `x`.
    pub fn eval_with(&self, rep: &StandardRep, x: Elem) -> Result<AbHom, MackeyError> {
        let g = self.data.group();
        if &GroupHom::conjugation(g, rep.l(), x) != rep.gamma() {
            return Err(MackeyError::NotAConjugationBiset(format!("{rep} via {x}")));
        }
        let d = &self.data;
        Ok(d.ind_map(rep.l(), rep.h2()).compose(d.con_map(g.inv(x), rep.k()))?.compose(d.res_map(rep.k(), rep.h1()))?)
    }

    pub fn eval_key(&self, key: &CanonicalKey) -> Result<AbHom, MackeyError> {
        match self.table.get(key) {
            Some(v) => Ok(v.clone()),
            None => self.eval_rep(key.rep()),
        }
    }

    /// `F` on a formal combination of bisets `H₁ → H₂`, as a map `M(H₁) → M(H₂)`.
    pub fn eval(&self, m: &BisetMorphism) -> Result<AbHom, MackeyError> {
        let mut out = AbHom::zero(self.data.value_at(m.source()), self.data.value_at(m.target()));
        for (key, &c) in m.terms() {
            out = out.add(&self.eval_key(key)?.scale(c))?;
        }
        Ok(out)
    }

    /// `F` on a matrix of bisets, as a block matrix.
    pub fn eval_matrix(&self, m: &MatrixMorphism) -> Result<AbHom, MackeyError> {
        let values =
            |hs: &[Subgroup]| -> Vec<FgAbelianGroup> { hs.iter().map(|h| self.data.value_at(h).clone()).collect() };
        let (src, tgt) = (values(m.source()), values(m.target()));
        let blocks = m
            .entries()
            .iter()
            .map(|row| row.iter().map(|e| self.eval(e)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(AbHom::block(&src, &tgt, &blocks)?)
    }

    /// Compares `F(x)` computed with every realizing element against the
    /// table.
    pub fn check_g_independence(&self) -> Result<CheckReport, MackeyError> {
        let g = self.data.group();
        let mut report = CheckReport::new("g-independence");
        for (key, value) in self.table() {
            for x in g.conjugations_realizing(key.rep().gamma()) {
                let other = self.eval_with(key.rep(), x)?;
                report.compare("g-independence", || json!({ "biset": key, "element": x }), &other, value);
            }
        }
        Ok(report)
    }

    /// Compares `F` on every change of basepoint of every tabulated biset
    /// against the table.
    pub fn check_basepoint_independence(&self) -> Result<CheckReport, MackeyError> {
        let g = self.data.group();
        let mut report = CheckReport::new("basepoint-independence");
        for (key, value) in self.table() {
            let rep = key.rep();
            for h2 in rep.h2().iter() {
                for h1 in rep.h1().iter() {
                    let moved = rep.change_base_point(g, h2, h1)?;
                    let other = self.eval_rep(&moved)?;
                    report.compare(
                        "basepoint-independence",
                        || json!({ "biset": key, "h2": h2, "h1": h1 }),
                        &other,
                        value,
                    );
                }
            }
        }
        Ok(report)
    }
}

impl BivariantFunctor for FactoredFunctor {
    fn group(&self) -> &FiniteGroup {
        self.data.group()
    }

    fn value(&self, h: &Subgroup) -> FgAbelianGroup {
        self.data.value_at(h).clone()
    }

    /// `F(j_*(f))`.
    fn covariant(&self, f: &GMap) -> Result<AbHom, MackeyError> {
        single_parts(f)?;
        self.eval(j_lower(self.group(), f).entry(0, 0))
    }

    /// `F(j^*(f))`.
    fn contravariant(&self, f: &GMap) -> Result<AbHom, MackeyError> {
        single_parts(f)?;
        self.eval(j_upper(self.group(), f).entry(0, 0))
    }
}

/// `F(b ∘ a) = F(b) ∘ F(a)` for all conjugation bisets `a : H₁ → H₂`,
/// `b : H₂ → H₃`.
pub fn verify_functoriality(f: &FactoredFunctor) -> Result<CheckReport, MackeyError> {
    let subs = f.group().subgroups();
    let mut report = CheckReport::new("functoriality");
    for h3 in subs {
        for h2 in subs {
            for h1 in subs {
                report.merge(verify_functoriality_at(f, h3, h2, h1)?);
            }
        }
    }
    Ok(report)
}

/// Functoriality for the composable pairs `H₁ → H₂ → H₃` only.
pub fn verify_functoriality_at(
    f: &FactoredFunctor,
    h3: &Subgroup,
    h2: &Subgroup,
    h1: &Subgroup,
) -> Result<CheckReport, MackeyError> {
    let g = f.group();
    let mut report = CheckReport::new("functoriality");
    let (firsts, seconds) = (conjugation_keys(g, h2, h1), conjugation_keys(g, h3, h2));
    for b in &seconds {
        let fb = f.eval_key(b)?;
        for a in &firsts {
            let composite = BisetMorphism::from_key(b.clone()).compose(g, &BisetMorphism::from_key(a.clone()))?;
            let lhs = f.eval(&composite)?;
            let rhs = fb.compose(&f.eval_key(a)?)?;
            let instance = || {
                let parts = compose_formula(g, b.rep(), a.rep()).unwrap_or_default();
                json!({ "second": b, "first": a, "components": parts })
            };
            report.compare("functoriality", instance, &lhs, &rhs);
        }
    }
    Ok(report)
}

/// Every tabulated key is the composite `j_*(ι) ∘ j_*(θ) ∘ j^*(ρ)` for the
/// G-maps `ι : G/L → G/H₂`, `θ : G/K → G/L` (witness `x⁻¹`) and
/// `ρ : G/K → G/H₁`, and `F` takes the value `M_*(ι) ∘ M_*(θ) ∘ M^*(ρ)` on
/// it. So any additive functor agreeing with `M` on the images of `j` is `F`.
pub fn check_generated_by_j(f: &FactoredFunctor) -> Result<CheckReport, MackeyError> {
    let g = f.group();
    let d = f.data();
    let mut report = CheckReport::new("generated-by-j");
    for (key, value) in f.table() {
        let rep = key.rep();
        let x =
            g.conjugation_realizing(rep.gamma()).ok_or_else(|| MackeyError::NotAConjugationBiset(key.to_string()))?;
        let ind = GMap::single(g, rep.l(), rep.h2(), g.identity())?;
        let iso = GMap::single(g, rep.k(), rep.l(), g.inv(x))?;
        let res = GMap::single(g, rep.k(), rep.h1(), g.identity())?;
        let inner = j_lower(g, &iso).entry(0, 0).compose(g, j_upper(g, &res).entry(0, 0))?;
        let composite = j_lower(g, &ind).entry(0, 0).compose(g, &inner)?;
        report.instances += 1;
        if composite != BisetMorphism::from_key(key.clone()) {
            report.fail("composite", json!({ "biset": key, "composite": composite.to_json() }), vec![], vec![]);
        }
        let via_m = d.covariant(&ind)?.compose(&d.covariant(&iso)?)?.compose(&d.contravariant(&res)?)?;
        report.compare("value", || json!({ "biset": key }), value, &via_m);
    }
    Ok(report)
}

/// `F ∘ j` agrees with `M` on every map of transitive G-sets, covariantly
/// and contravariantly.
pub fn check_agreement(f: &FactoredFunctor, d: &MackeyData) -> Result<CheckReport, MackeyError> {
    let g = d.group();
    let subs = d.subgroups();
    let mut report = CheckReport::new("agreement");
    for h in subs {
        for k in subs {
            for m in orbit_maps(g, h, k) {
                let inst = || json!({ "map": m.to_json() });
                report.compare("covariant", inst, &f.covariant(&m)?, &d.covariant(&m)?);
                report.compare("contravariant", inst, &f.contravariant(&m)?, &d.contravariant(&m)?);
            }
        }
    }
    Ok(report)
}
