use std::sync::Arc;

use hloc::cohomology::{h1_loc, is_coboundary, restrict, satisfies_local_conditions, split_direct_sum};
use hloc::oracle::compare;
use hloc::sampling::random_block_diagonal_group;
use hloc::scenarios::{
    alpha_inverse, extension_cocycle, lambda_coordinates, lifted_extension, stabilizer_family_group, stabilizer_grid,
    two_adic_counterexample, unitriangular_normal_form, GaloisRingSpec,
};
use hloc::{GModule, MatGroup};
use rand::rngs::StdRng;
use rand::SeedableRng;

#[test]
fn stabilizer_grid_has_trivial_local_cohomology_and_round_trips() {
    for p in [3u64, 5] {
        for n in [1u32, 2] {
            let grid = stabilizer_grid(p, n).unwrap();
            assert!(!grid.is_empty());
            for params in grid {
                let g = stabilizer_family_group(&params).unwrap();
                assert!(g.fixes_vector(&[1, 0]).unwrap());
                let nf = unitriangular_normal_form(&g, p).unwrap();
                assert!(
                    stabilizer_family_group(&nf.params).unwrap().same_elements(&g),
                    "{params:?}"
                );
                let module = Arc::new(GModule::natural(Arc::new(g)));
                assert!(h1_loc(&module).unwrap().is_trivial(), "{params:?}");
            }
        }
    }
}

#[test]
fn grid_sizes() {
    // p = 3, n = 1: e = 0 gives b in {0, 1, 2}, e = 1 gives b in {0, 1}
    assert_eq!(stabilizer_grid(3, 1).unwrap().len(), 5);
}

#[test]
fn two_adic_cocycle_is_locally_trivial_but_not_a_coboundary() {
    let dz = two_adic_counterexample().unwrap();
    let local = satisfies_local_conditions(&dz.cocycle).unwrap();
    assert!(local.holds());
    for (g, w) in local.witnesses.iter().enumerate() {
        let w = w.as_ref().unwrap();
        let a = dz.units.element(g).get(0, 0);
        assert_eq!((a * w[0] + 8 - w[0]) % 8, dz.cocycle.value(g)[0]);
    }
    assert!(is_coboundary(&dz.cocycle).unwrap().is_none());

    // each cyclic subgroup sees a coboundary
    for c in dz.units.cyclic_subgroup_generators() {
        let sub = Arc::new(dz.units.subgroup(&dz.units.cyclic_subgroup(c)).unwrap());
        assert!(is_coboundary(&restrict(&dz.cocycle, sub).unwrap()).unwrap().is_some());
    }

    let local_h1 = h1_loc(&dz.module).unwrap();
    assert_eq!(local_h1.invariant_factors(), &[2]);
    let cmp = compare("dz", &dz.module).unwrap();
    assert!(cmp.agrees(), "{:?}", cmp.mismatches);
    assert_eq!(cmp.h1_loc, vec![2]);
}

#[test]
fn two_adic_inflation_keeps_verdicts() {
    let dz = two_adic_counterexample().unwrap();
    assert!(dz.g16.order() <= 16);
    let z = dz.inflated().unwrap();
    assert!(satisfies_local_conditions(&z).unwrap().holds());
    assert!(is_coboundary(&z).unwrap().is_none());
    assert!(!h1_loc(z.module()).unwrap().is_trivial());
}

#[test]
fn extension_cocycle_is_a_nontrivial_local_class() {
    for p in [3u64, 5] {
        let spec = GaloisRingSpec::with_default_poly(p, 1).unwrap();
        let z = extension_cocycle(&spec).unwrap();
        let group = z.module().group().clone();
        assert_eq!(group.order() as u64, p * p);

        let local = satisfies_local_conditions(&z).unwrap();
        assert!(local.holds());
        assert!(is_coboundary(&z).unwrap().is_none());
        assert!(!h1_loc(z.module()).unwrap().is_trivial());

        let (a, b) = alpha_inverse(&spec).unwrap();
        for (g, elem) in group.elements().iter().enumerate() {
            match lambda_coordinates(elem) {
                (0, 0) => assert!(z.value(g).iter().all(|&x| x == 0)),
                (1, 0) => assert!(z.value(g).iter().all(|&x| x == 0)),
                (0, 1) => {
                    assert_eq!(z.value(g), &[1, 0, 0, 0]);
                    // g (x, y) - (x, y) = (alpha y, 0), so y = alpha^{-1}
                    let w = local.witnesses[g].as_ref().unwrap();
                    assert_eq!((w[2], w[3]), (a, b));
                    if p == 3 {
                        assert_eq!((a, b), (0, 2));
                    }
                }
                _ => {}
            }
        }
    }
}

#[test]
fn lifted_group_reduces_to_unipotent_group() {
    for p in [3u64, 5] {
        let lift = lifted_extension(p).unwrap();
        assert!(lift.reduces_to_unipotent);
        assert!(lift.first_column_matches_cocycle);
        // sigma'(1,0) and sigma'(0,1) each have order p^2 and commute
        assert_eq!(lift.lifted.order() as u64, p.pow(4));
    }
}

#[test]
fn block_sums_split_local_cohomology() {
    let mut rng = StdRng::seed_from_u64(21);
    let mut nontrivial = 0;
    for m in [8u64, 9] {
        for _ in 0..10 {
            let (g, sizes) = random_block_diagonal_group(m, &mut rng).unwrap();
            let module = Arc::new(GModule::natural(Arc::new(g)));
            let split = split_direct_sum(&module, &sizes).unwrap();
            assert!(split.matches, "{:?}", module.group().generators());
            nontrivial += usize::from(!split.total.is_trivial());
        }
    }
    assert!(nontrivial > 0);
}

#[test]
fn units_block_doubles() {
    // diag(a, a) for a in (Z/8)^*: two copies of the 2-adic module
    let g = MatGroup::generated_by(vec![
        hloc::ResidueMatrix::from_rows(8, &[[3i64, 0], [0, 3]]).unwrap(),
        hloc::ResidueMatrix::from_rows(8, &[[5i64, 0], [0, 5]]).unwrap(),
    ])
    .unwrap();
    let module = Arc::new(GModule::natural(Arc::new(g)));
    let split = split_direct_sum(&module, &[1, 1]).unwrap();
    assert!(split.matches);
    assert_eq!(split.total.invariant_factors(), &[2, 2]);
}
