use std::sync::Arc;

use hloc::cohomology::{h1_loc, is_coboundary, restrict, Cohomology};
use hloc::oracle::{compare, search_space, SEARCH_LIMIT};
use hloc::sampling::{
    random_block_diagonal_group, random_cyclic_subgroup, random_fixing_subgroup, random_invertible,
    random_stabilizer_subgroup, random_unit,
};
use hloc::{Cocycle, GModule, MatGroup, ResidueMatrix};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn natural(g: MatGroup) -> Arc<GModule> {
    Arc::new(GModule::natural(Arc::new(g)))
}

fn sample_modules(seed: u64, count: usize) -> Vec<Arc<GModule>> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|k| match k % 3 {
            0 => natural(random_stabilizer_subgroup([3, 5][k % 2], rng.gen_range(1..=2), &mut rng).unwrap()),
            1 => natural(random_block_diagonal_group([8, 9][k % 2], &mut rng).unwrap().0),
            _ => natural(
                MatGroup::generated_by(vec![
                    ResidueMatrix::new(8, 1, 1, vec![random_unit(8, &mut rng)]).unwrap(),
                    ResidueMatrix::new(8, 1, 1, vec![random_unit(8, &mut rng)]).unwrap(),
                ])
                .unwrap(),
            ),
        })
        .collect()
}

#[test]
fn containment_chain_and_order_equations() {
    for module in sample_modules(11, 24) {
        let coh = Cohomology::new(module.clone()).unwrap();
        let z = coh.cocycles_in_generator_coordinates();
        let b = coh.coboundaries_in_generator_coordinates();
        let zl = coh.local_cocycles_in_generator_coordinates().unwrap();
        assert!(b.is_subset_of(&zl).unwrap());
        assert!(zl.is_subset_of(z).unwrap());
        let h1 = coh.h1().unwrap();
        let hl = coh.h1_loc().unwrap();
        assert_eq!(z.order(), h1.structure.order() * b.order());
        assert_eq!(zl.order(), hl.structure.order() * b.order());
        assert_eq!(h1.cocycles_order, z.order());
        assert_eq!(hl.coboundaries_order, b.order());
    }
}

/// Random rank-1 unit groups and small rank-2 groups with
/// `|M|^|G| <= 10^4`, checked against brute-force enumeration.
#[test]
fn pipeline_matches_enumeration_on_random_tiny_instances() {
    let mut rng = StdRng::seed_from_u64(12);
    let mut checked = 0;
    while checked < 60 {
        let module = if rng.gen_bool(0.6) {
            let m = rng.gen_range(2..=12u64);
            let k = rng.gen_range(1..=2);
            let gens = (0..k)
                .map(|_| ResidueMatrix::new(m, 1, 1, vec![random_unit(m, &mut rng)]).unwrap())
                .collect();
            natural(MatGroup::generated_by(gens).unwrap())
        } else {
            let m = rng.gen_range(2..=3u64);
            natural(MatGroup::generated_by(vec![random_invertible(m, 2, &mut rng)]).unwrap())
        };
        if search_space(&module) > SEARCH_LIMIT {
            continue;
        }
        let c = compare("random", &module).unwrap();
        assert!(c.agrees(), "{:?}: {:?}", module.group().generators(), c.mismatches);
        checked += 1;
    }
}

#[test]
fn cyclic_groups_have_trivial_local_cohomology() {
    let mut rng = StdRng::seed_from_u64(13);
    for m in [8, 9] {
        for _ in 0..100 {
            let g = random_cyclic_subgroup(m, 2, &mut rng).unwrap();
            let gens = g.generators().to_vec();
            let result = h1_loc(&natural(g)).unwrap();
            assert!(result.is_trivial(), "generator {:?}", gens);
        }
    }
}

#[test]
fn vectors_of_full_order_force_vanishing() {
    let mut rng = StdRng::seed_from_u64(14);
    for p in [3u64, 5] {
        for n in [1u32, 2] {
            for _ in 0..15 {
                let (g, v) = random_fixing_subgroup(p, n, &mut rng).unwrap();
                assert!(g.fixes_vector(&v).unwrap());
                let gens = g.generators().to_vec();
                assert!(h1_loc(&natural(g)).unwrap().is_trivial(), "p={p} n={n} {gens:?}");
            }
        }
    }
}

#[test]
fn conjugation_preserves_local_cohomology() {
    let mut rng = StdRng::seed_from_u64(15);
    let mut nontrivial = 0;
    for module in sample_modules(16, 18) {
        let g = module.group();
        let t = random_invertible(g.modulus(), g.rank(), &mut rng);
        let before = h1_loc(&module).unwrap();
        let after = h1_loc(&natural(g.conjugate(&t).unwrap())).unwrap();
        assert_eq!(before.invariant_factors(), after.invariant_factors());
        nontrivial += usize::from(!before.is_trivial());
    }
    assert!(nontrivial > 0);
}

/// Every element of `H^1` as a combination of the representatives.
fn all_classes(module: &Arc<GModule>) -> Vec<Cocycle> {
    let h1 = Cohomology::new(module.clone()).unwrap().h1().unwrap();
    let mut classes = vec![Cocycle::zero(module.clone())];
    for (rep, &d) in h1.representatives.iter().zip(h1.invariant_factors()) {
        classes = classes
            .iter()
            .flat_map(|c| (0..d).map(move |k| c.add(&rep.scaled(k)).unwrap()))
            .collect();
    }
    classes
}

#[test]
fn restriction_to_sylow_is_injective() {
    let mut rng = StdRng::seed_from_u64(17);
    let mut classes_seen = 0;
    for p in [3u64, 5] {
        for n in [1u32, 2] {
            for _ in 0..6 {
                let g = random_stabilizer_subgroup(p, n, &mut rng).unwrap();
                let sylow = Arc::new(g.unique_p_sylow(p).unwrap().expect("normal p-Sylow"));
                let module = natural(g);
                for z in all_classes(&module) {
                    let trivial = is_coboundary(&z).unwrap().is_some();
                    let restricted = restrict(&z, sylow.clone()).unwrap();
                    assert_eq!(trivial, is_coboundary(&restricted).unwrap().is_some());
                    classes_seen += 1;
                }
            }
        }
    }
    assert!(classes_seen > 24);
}
