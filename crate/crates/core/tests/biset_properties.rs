use std::collections::HashMap;

use mackey_bisets::biset::{
    compose_bruteforce, compose_formula, compose_formula_with_representatives, indecomposables, CanonicalKey,
    ExplicitBiset, StandardRep,
};
use mackey_bisets::{FiniteGroup, GroupSpec};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const NAMES: [&str; 5] = ["S3", "D4", "Q8", "C6", "V4"];

/// A random composable pair `b : H₂ → H₃`, `a : H₁ → H₂` of indecomposables.
fn random_pair(g: &FiniteGroup, rng: &mut StdRng) -> (StandardRep, StandardRep) {
    let subs = g.subgroups();
    let pick = |rng: &mut StdRng| subs[rng.gen_range(0..subs.len())].clone();
    let (h3, h2, h1) = (pick(rng), pick(rng), pick(rng));
    let b = indecomposables(g, &h3, &h2).choose(rng).unwrap().rep().clone();
    let a = indecomposables(g, &h2, &h1).choose(rng).unwrap().rep().clone();
    (b, a)
}

fn keys(g: &FiniteGroup, reps: &[StandardRep]) -> Vec<CanonicalKey> {
    let mut k: Vec<_> = reps.iter().map(|r| r.canonical_key(g)).collect();
    k.sort();
    k
}

/// Searches for an isomorphism of explicit bisets by backtracking, one
/// orbit at a time: the image of an orbit's first point determines the
/// rest.
fn isomorphic(x: &ExplicitBiset, y: &ExplicitBiset) -> bool {
    if x.size() != y.size() || x.left_group() != y.left_group() || x.right_group() != y.right_group() {
        return false;
    }
    let orbits = x.orbits();
    let mut image = vec![usize::MAX; x.size()];
    let mut used = vec![false; y.size()];
    search(x, y, &orbits, 0, &mut image, &mut used)
}

fn search(
    x: &ExplicitBiset,
    y: &ExplicitBiset,
    orbits: &[Vec<usize>],
    i: usize,
    image: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(orbit) = orbits.get(i) else {
        return true;
    };
    let base = orbit[0];
    for target in 0..y.size() {
        if used[target] {
            continue;
        }
        if let Some(assigned) = extend(x, y, base, target, used) {
            for &(p, q) in &assigned {
                image[p] = q;
                used[q] = true;
            }
            if search(x, y, orbits, i + 1, image, used) {
                return true;
            }
            for &(p, q) in &assigned {
                image[p] = usize::MAX;
                used[q] = false;
            }
        }
    }
    false
}

/// The equivariant map on the orbit of `base` sending it to `target`, if
/// it is well defined and injective into unused points.
fn extend(
    x: &ExplicitBiset,
    y: &ExplicitBiset,
    base: usize,
    target: usize,
    used: &[bool],
) -> Option<Vec<(usize, usize)>> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let mut taken: HashMap<usize, usize> = HashMap::new();
    for a in x.left_group().iter() {
        for b in x.right_group().iter() {
            let p = x.act_right(x.act_left(a, base), b);
            let q = y.act_right(y.act_left(a, target), b);
            if used[q] {
                return None;
            }
            if *map.entry(p).or_insert(q) != q || *taken.entry(q).or_insert(p) != p {
                return None;
            }
        }
    }
    Some(map.into_iter().collect())
}

fn realize_all(g: &FiniteGroup, reps: &[StandardRep]) -> ExplicitBiset {
    let mut out = ExplicitBiset::empty(reps[0].h2(), reps[0].h1());
    for r in reps {
        out = out.disjoint_union(&ExplicitBiset::realize(g, r)).unwrap();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formula_is_isomorphic_to_balanced_product(which in 0..NAMES.len(), seed in any::<u64>()) {
        let g = GroupSpec::from_name(NAMES[which]).unwrap().build().unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (b, a) = random_pair(&g, &mut rng);
        let brute = compose_bruteforce(&g, &ExplicitBiset::realize(&g, &b), &ExplicitBiset::realize(&g, &a)).unwrap();
        let parts = compose_formula(&g, &b, &a).unwrap();
        prop_assert!(isomorphic(&brute, &realize_all(&g, &parts)));
        prop_assert_eq!(brute.component_keys(&g).unwrap(), keys(&g, &parts));
    }

    #[test]
    fn balanced_product_size(which in 0..NAMES.len(), seed in any::<u64>()) {
        let g = GroupSpec::from_name(NAMES[which]).unwrap().build().unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (b, a) = random_pair(&g, &mut rng);
        let parts = compose_formula(&g, &b, &a).unwrap();
        let total: usize = parts.iter().map(StandardRep::size).sum();
        prop_assert_eq!(total * b.h1().order(), b.size() * a.size());
    }

    #[test]
    fn double_coset_representatives_do_not_matter(which in 0..NAMES.len(), seed in any::<u64>()) {
        let g = GroupSpec::from_name(NAMES[which]).unwrap().build().unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (b, a) = random_pair(&g, &mut rng);
        let cosets = g.double_cosets(b.h1(), b.k(), a.l()).unwrap();
        let reps: Vec<usize> = (0..cosets.len()).map(|i| *cosets.members(i).choose(&mut rng).unwrap()).collect();
        let other = compose_formula_with_representatives(&g, &b, &a, &reps).unwrap();
        prop_assert_eq!(keys(&g, &other), keys(&g, &compose_formula(&g, &b, &a).unwrap()));
    }

    #[test]
    fn transpose_reverses_composition(which in 0..NAMES.len(), seed in any::<u64>()) {
        let g = GroupSpec::from_name(NAMES[which]).unwrap().build().unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (b, a) = random_pair(&g, &mut rng);
        let lhs: Vec<StandardRep> = compose_formula(&g, &b, &a).unwrap().iter().map(StandardRep::transpose).collect();
        let rhs = compose_formula(&g, &a.transpose(), &b.transpose()).unwrap();
        prop_assert_eq!(keys(&g, &lhs), keys(&g, &rhs));
    }

    #[test]
    fn every_point_recovers_its_component(which in 0..NAMES.len(), seed in any::<u64>()) {
        let g = GroupSpec::from_name(NAMES[which]).unwrap().build().unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let (b, _) = random_pair(&g, &mut rng);
        let x = ExplicitBiset::realize(&g, &b);
        let key = b.canonical_key(&g);
        for p in 0..x.size() {
            prop_assert_eq!(x.standard_rep_at(p).unwrap().canonical_key(&g), key.clone());
        }
    }
}

#[test]
fn oracle_distinguishes_non_isomorphic_bisets() {
    let g = GroupSpec::Dihedral { n: 4 }.build().unwrap();
    let all = g.whole();
    let keys = indecomposables(&g, &all, &all);
    let same_size: Vec<_> = keys.iter().filter(|k| k.rep().size() == 32).collect();
    assert!(same_size.len() >= 2);
    let x = ExplicitBiset::realize(&g, same_size[0].rep());
    let y = ExplicitBiset::realize(&g, same_size[1].rep());
    assert!(!isomorphic(&x, &y));
    assert!(isomorphic(&x, &x));
}
