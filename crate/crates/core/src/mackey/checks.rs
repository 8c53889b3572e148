use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde_json::json;

use super::{BivariantFunctor, CheckReport, MackeyData, MackeyError};
use crate::abelian::AbHom;
use crate::category::{centralizer_criterion, orbit_maps, pullback, GMap, PointedGSet};
use crate::group::Subgroup;

/// Which pullback squares [`check_m1`] examines besides the generator form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SquareSampling {
    /// Only `res^K_{H₂} ∘ ind^K_{H₁}` for `H₁, H₂ ≤ K`.
    GeneratorsOnly,
    /// Additionally one square with random witnesses per triple `(K, H₁, H₂)`.
    Random { seed: u64 },
    /// Every square of transitive G-sets.
    All,
}

/// Checks that stored generator data is internally consistent: identities,
/// transitivity, functoriality of conjugation, and compatibility of
/// conjugation with restriction and induction.
pub fn validate_structure(d: &MackeyData) -> CheckReport {
    let g = d.group();
    let subs = d.subgroups();
    let mut report = CheckReport::new("structure");
    for h in subs {
        let id = AbHom::identity(d.value_at(h));
        report.compare("res-identity", || json!({ "subgroup": h }), d.res_map(h, h), &id);
        report.compare("ind-identity", || json!({ "subgroup": h }), d.ind_map(h, h), &id);
        for x in h.iter() {
            report.compare("con-inner", || json!({ "subgroup": h, "element": x }), d.con_map(x, h), &id);
        }
    }
    for h in subs {
        for k in subs.iter().filter(|k| h.is_subgroup_of(k)) {
            for l in subs.iter().filter(|l| k.is_subgroup_of(l)) {
                let inst = || json!({ "H": h, "K": k, "L": l });
                let lhs = d.res_map(h, k).compose(d.res_map(k, l)).expect("shapes");
                report.compare("res-transitive", inst, &lhs, d.res_map(h, l));
                let lhs = d.ind_map(k, l).compose(d.ind_map(h, k)).expect("shapes");
                report.compare("ind-transitive", inst, &lhs, d.ind_map(h, l));
            }
        }
    }
    for h in subs {
        for a in g.elements() {
            let ha = g.conjugate_subgroup(h, a);
            for b in g.elements() {
                let lhs = d.con_map(b, &ha).compose(d.con_map(a, h)).expect("shapes");
                report.compare(
                    "con-composition",
                    || json!({ "subgroup": h, "g1": a, "g2": b }),
                    &lhs,
                    d.con_map(g.mul(a, b), h),
                );
            }
        }
    }
    for h in subs {
        for k in subs.iter().filter(|k| h.is_subgroup_of(k)) {
            for x in g.elements() {
                let (hx, kx) = (g.conjugate_subgroup(h, x), g.conjugate_subgroup(k, x));
                let inst = || json!({ "H": h, "K": k, "g": x });
                let lhs = d.con_map(x, h).compose(d.res_map(h, k)).expect("shapes");
                let rhs = d.res_map(&hx, &kx).compose(d.con_map(x, k)).expect("shapes");
                report.compare("con-res", inst, &lhs, &rhs);
                let lhs = d.con_map(x, k).compose(d.ind_map(h, k)).expect("shapes");
                let rhs = d.ind_map(&hx, &kx).compose(d.con_map(x, h)).expect("shapes");
                report.compare("con-ind", inst, &lhs, &rhs);
            }
        }
    }
    report
}

/// The pullback axiom. The generator form
/// `res^K_{H₂} ∘ ind^K_{H₁} = Σ_x ind^{H₂}_S ∘ con(x⁻¹, S^x) ∘ res^{H₁}_{S^x}`,
/// summed over `x ∈ H₂\K/H₁` with `S = H₂ ∩ xH₁x⁻¹`, is checked for all
/// `H₁, H₂ ≤ K`; general squares are checked according to `squares`.
pub fn check_m1<F: BivariantFunctor + ?Sized>(f: &F, squares: SquareSampling) -> Result<CheckReport, MackeyError> {
    let g = f.group();
    let subs = g.subgroups();
    let mut report = CheckReport::new("M1");
    for k in subs {
        for h1 in subs.iter().filter(|h| h.is_subgroup_of(k)) {
            for h2 in subs.iter().filter(|h| h.is_subgroup_of(k)) {
                let lhs = f.res(h2, k)?.compose(&f.ind(h1, k)?)?;
                let mut rhs = AbHom::zero(&f.value(h1), &f.value(h2));
                for &x in &g.double_cosets(k, h2, h1)?.representatives {
                    let s = h2.intersection(&g.conjugate_subgroup(h1, g.inv(x)));
                    let sx = g.conjugate_subgroup(&s, x);
                    let term = f.ind(&s, h2)?.compose(&f.con(g.inv(x), &sx)?)?.compose(&f.res(&sx, h1)?)?;
                    rhs = rhs.add(&term)?;
                }
                report.compare("M1-generators", || json!({ "K": k, "H1": h1, "H2": h2 }), &lhs, &rhs);
            }
        }
    }
    if squares == SquareSampling::GeneratorsOnly {
        return Ok(report);
    }
    let mut rng = match squares {
        SquareSampling::Random { seed } => Some(StdRng::seed_from_u64(seed)),
        _ => None,
    };
    for k in subs {
        for h1 in subs {
            let psis = orbit_maps(g, h1, k);
            if psis.is_empty() {
                continue;
            }
            for h2 in subs {
                let phis = orbit_maps(g, h2, k);
                if phis.is_empty() {
                    continue;
                }
                match rng.as_mut() {
                    Some(rng) => {
                        let psi = psis.choose(rng).expect("nonempty");
                        let phi = phis.choose(rng).expect("nonempty");
                        check_square(f, psi, phi, &mut report)?;
                    }
                    None => {
                        for psi in &psis {
                            for phi in &phis {
                                check_square(f, psi, phi, &mut report)?;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// `M^*(φ) ∘ M_*(ψ) = M_*(q₂) ∘ M^*(q₁)` for the pullback `q₁, q₂` of `ψ, φ`.
fn check_square<F: BivariantFunctor + ?Sized>(
    f: &F,
    psi: &GMap,
    phi: &GMap,
    report: &mut CheckReport,
) -> Result<(), MackeyError> {
    let g = f.group();
    let pb = pullback(g, psi, phi)?;
    let lhs = f.contravariant(phi)?.compose(&f.covariant(psi)?)?;
    let rhs = f.covariant_map(&pb.to_second)?.compose(&f.contravariant_map(&pb.to_first)?)?;
    report.compare("M1-square", || json!({ "psi": psi.to_json(), "phi": phi.to_json(), "apex": pb.apex }), &lhs, &rhs);
    Ok(())
}

/// Additivity: the orbit inclusions `ιᵢ` of `X = ⊔ G/Hᵢ` satisfy
/// `M^*(ιᵢ) ∘ M_*(ιⱼ) = δᵢⱼ` and `Σ M_*(ιᵢ) ∘ M^*(ιᵢ) = id`, so that
/// `M(X) ≅ ⊕ M(G/Hᵢ)`; and `M(∅) = 0`. All two-orbit sets are checked, plus
/// `samples` random three-orbit sets.
pub fn check_m2<F: BivariantFunctor + ?Sized>(f: &F, samples: usize, seed: u64) -> Result<CheckReport, MackeyError> {
    let g = f.group();
    let subs = g.subgroups();
    let mut report = CheckReport::new("M2");
    let empty = PointedGSet::empty();
    report.instances += 1;
    if !f.value_of(&empty).is_trivial() {
        report.fail("M2-empty", json!({ "gset": empty }), vec![], vec![]);
    }
    let id = GMap::identity(g, &empty);
    let zero = AbHom::identity(&f.value_of(&empty));
    report.compare("M2-empty", || json!({ "gset": empty }), &f.covariant_map(&id)?, &zero);
    for a in subs {
        for b in subs {
            check_sum(f, &PointedGSet { orbits: vec![a.clone(), b.clone()] }, &mut report)?;
        }
    }
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..samples {
        let orbits: Vec<Subgroup> = (0..3).map(|_| subs.choose(&mut rng).expect("nonempty").clone()).collect();
        check_sum(f, &PointedGSet { orbits }, &mut report)?;
    }
    Ok(report)
}

fn check_sum<F: BivariantFunctor + ?Sized>(
    f: &F,
    x: &PointedGSet,
    report: &mut CheckReport,
) -> Result<(), MackeyError> {
    let g = f.group();
    let total = f.value_of(x);
    let incl: Vec<GMap> = (0..x.len()).map(|i| GMap::orbit_inclusion(g, x, i)).collect();
    let mut sum = AbHom::zero(&total, &total);
    for (i, a) in incl.iter().enumerate() {
        let proj = f.contravariant_map(a)?;
        sum = sum.add(&f.covariant_map(a)?.compose(&proj)?)?;
        for (j, b) in incl.iter().enumerate() {
            let lhs = proj.compose(&f.covariant_map(b)?)?;
            let rhs = if i == j { AbHom::identity(lhs.domain()) } else { AbHom::zero(lhs.domain(), lhs.codomain()) };
            report.compare("M2-orthogonal", || json!({ "gset": x, "i": i, "j": j }), &lhs, &rhs);
        }
    }
    report.compare("M2-sum", || json!({ "gset": x }), &sum, &AbHom::identity(&total));
    Ok(())
}

/// Conjugation invariance: `con(z, H) = id` for every `z ∈ C_G(H)`, and,
/// equivalently on maps of transitive G-sets, `M_*` and `M^*` agree on two
/// maps `G/H₁ → G/H₂` whenever `w₁hw₂⁻¹ ∈ C_G(H₁)` for some `h ∈ H₂`.
pub fn check_conjugation_invariance<F: BivariantFunctor + ?Sized>(f: &F) -> Result<CheckReport, MackeyError> {
    let g = f.group();
    let subs = g.subgroups();
    let mut report = CheckReport::new("conjugation-invariance");
    for h in subs {
        let id = AbHom::identity(&f.value(h));
        for z in g.centralizer(h).iter() {
            report.compare("centralizer", || json!({ "subgroup": h, "element": z }), &f.con(z, h)?, &id);
        }
    }
    for h1 in subs {
        for h2 in subs {
            let maps = orbit_maps(g, h1, h2);
            for (i, f1) in maps.iter().enumerate() {
                for f2 in &maps[i + 1..] {
                    if !centralizer_criterion(g, f1, f2)? {
                        continue;
                    }
                    let inst = || json!({ "H1": h1, "H2": h2, "w1": f1.witnesses()[0], "w2": f2.witnesses()[0] });
                    report.compare("lemma-covariant", inst, &f.covariant(f1)?, &f.covariant(f2)?);
                    report.compare("lemma-contravariant", inst, &f.contravariant(f1)?, &f.contravariant(f2)?);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;
    use crate::mackey::{burnside_example, fixed_point_c2_z3};

    #[test]
    fn burnside_s3_passes_everything() {
        let d = burnside_example(&GroupSpec::Symmetric { n: 3 }).unwrap();
        assert!(validate_structure(&d).passed());
        assert!(check_m1(&d, SquareSampling::All).unwrap().passed());
        assert!(check_m2(&d, 10, 1).unwrap().passed());
        assert!(check_conjugation_invariance(&d).unwrap().passed());
    }

    #[test]
    fn fixed_points_are_mackey_but_not_invariant() {
        let d = fixed_point_c2_z3();
        assert!(validate_structure(&d).passed());
        assert!(check_m1(&d, SquareSampling::All).unwrap().passed());
        assert!(check_m2(&d, 5, 0).unwrap().passed());
        let r = check_conjugation_invariance(&d).unwrap();
        assert!(!r.passed());
        let first = &r.failures[0];
        assert_eq!(first.instance["subgroup"], json!([0]));
        assert_eq!(first.instance["element"], json!(1));
        assert_eq!(first.left, vec![vec![2]]);
    }

    #[test]
    fn corrupted_data_is_caught() {
        let d = burnside_example(&GroupSpec::Symmetric { n: 3 }).unwrap();
        let mut json = d.to_json();
        // double the transfer from the trivial subgroup to the whole group
        let key = "ind:[0]<[0,1,2,3,4,5]";
        for row in json.maps.get_mut(key).unwrap() {
            for x in row {
                *x *= 2;
            }
        }
        let bad = json.resolve().unwrap();
        assert!(!validate_structure(&bad).passed());
        assert!(!check_m1(&bad, SquareSampling::GeneratorsOnly).unwrap().passed());
    }
}
