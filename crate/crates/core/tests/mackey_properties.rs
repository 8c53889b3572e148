use mackey_bisets::abelian::FgAbelianGroup;
use mackey_bisets::category::{j_lower, orbit_maps, GMap, PointedGSet};
use mackey_bisets::mackey::{
    build_f, burnside_example, check_agreement, check_conjugation_invariance, check_m1, check_m2, fixed_point_example,
    validate_structure, BivariantFunctor, GModule, MackeyDataJson, SquareSampling,
};
use mackey_bisets::GroupSpec;
use proptest::prelude::*;

#[test]
fn burnside_on_d4_factors_with_independence_checks() {
    let d = burnside_example(&GroupSpec::Dihedral { n: 4 }).unwrap();
    let f = build_f(&d).unwrap();
    assert!(f.check_g_independence().unwrap().passed());
    assert!(f.check_basepoint_independence().unwrap().passed());
    assert!(check_agreement(&f, &d).unwrap().passed());
    assert!(check_m1(&f, SquareSampling::Random { seed: 9 }).unwrap().passed());
    assert!(check_m2(&f, 10, 9).unwrap().passed());
}

#[test]
fn covariant_part_is_functorial_on_orbit_maps() {
    let spec = GroupSpec::Quaternion;
    let d = burnside_example(&spec).unwrap();
    let g = spec.build().unwrap();
    let subs = g.subgroups();
    for a in subs {
        for b in subs {
            for c in subs {
                for f1 in orbit_maps(&g, a, b) {
                    for f2 in orbit_maps(&g, b, c) {
                        let composite = f2.compose(&g, &f1).unwrap();
                        let lhs = d.covariant(&composite).unwrap();
                        let rhs = d.covariant(&f2).unwrap().compose(&d.covariant(&f1).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                        let lhs = d.contravariant(&composite).unwrap();
                        let rhs = d.contravariant(&f1).unwrap().compose(&d.contravariant(&f2).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}

#[test]
fn multi_orbit_maps_are_block_matrices() {
    let spec = GroupSpec::Symmetric { n: 3 };
    let d = burnside_example(&spec).unwrap();
    let g = spec.build().unwrap();
    let subs = g.subgroups();
    let x = PointedGSet { orbits: vec![subs[0].clone(), subs[1].clone()] };
    let y = PointedGSet::single(&g.whole());
    let f = GMap::new(&g, x.clone(), y, vec![0, 0], vec![0, 0]).unwrap();
    let m = d.covariant_map(&f).unwrap();
    assert_eq!(m.domain(), &d.value_of(&x));
    let single = d.covariant(&GMap::single(&g, &subs[1], &g.whole(), 0).unwrap()).unwrap();
    let parts = [d.value(&subs[0]), d.value(&subs[1])];
    assert_eq!(m.sub_block(&parts, &[d.value(&g.whole())], 0, 1), single);
}

#[test]
fn j_lower_agrees_through_f() {
    let spec = GroupSpec::Symmetric { n: 3 };
    let d = burnside_example(&spec).unwrap();
    let f = build_f(&d).unwrap();
    let g = spec.build().unwrap();
    let e = g.trivial_subgroup();
    let m = GMap::single(&g, &e, &g.whole(), 0).unwrap();
    // the free orbit G/{e} induces up to [G/{e}]
    let v = f.eval(j_lower(&g, &m).entry(0, 0)).unwrap();
    assert_eq!(v.apply(&[1]), vec![1, 0, 0, 0]);
}

#[test]
fn sign_fixed_points_are_not_invariant() {
    let spec = GroupSpec::Symmetric { n: 3 };
    let g = spec.build().unwrap();
    let a3 = g.subgroups().iter().find(|h| h.order() == 3).unwrap().clone();
    let sign = g.elements().map(|x| vec![vec![if a3.contains(x) { 1 } else { -1 }]]).collect();
    let module = GModule::new(&g, FgAbelianGroup::free(1), sign).unwrap();
    let d = fixed_point_example(&spec, &module).unwrap();
    assert!(validate_structure(&d).passed());
    assert!(check_m2(&d, 10, 0).unwrap().passed());
    let r = check_conjugation_invariance(&d).unwrap();
    assert!(!r.passed());
    assert!(build_f(&d).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    // perturbing any single map entry of the Burnside functor is detected
    #[test]
    fn corruption_is_detected(which in 0usize..1000, delta in 1i64..4) {
        let d = burnside_example(&GroupSpec::Symmetric { n: 3 }).unwrap();
        let mut json: MackeyDataJson = d.to_json();
        let candidates: Vec<String> = json.maps.iter().filter(|(_, m)| !m.is_empty() && !m[0].is_empty()).map(|(k, _)| k.clone()).collect();
        let key = &candidates[which % candidates.len()];
        json.maps.get_mut(key).unwrap()[0][0] += delta;
        let bad = json.resolve().unwrap();
        let caught = !validate_structure(&bad).passed()
            || !check_m1(&bad, SquareSampling::GeneratorsOnly).unwrap().passed()
            || !check_conjugation_invariance(&bad).unwrap().passed();
        prop_assert!(caught, "corruption of {} went unnoticed", key);
    }
}
