use std::sync::{Arc, OnceLock};

use num_traits::{Signed, Zero};
use proptest::prelude::*;

use preord::carriers::{PogMorphism, PreorderedGroup};
use preord::category::{kernel_pair, pullback};
use preord::corpus::{builtin_catalog, standard_corpus, Catalog};
use preord::galois::{
    is_central_extension, is_gammac_normal, is_normal_extension, is_special_homogeneous, is_trivial_extension,
    GaloisTag,
};
use preord::linalg::{from_i64s, integer_kernel, invariant_factors, solve_integer, vec_add, Matrix};
use preord::monoid::FreeCone;
use preord::{FiniteGroup, Int, ZLattice, ZMatrix, ZVec};

fn catalog() -> &'static Catalog {
    static C: OnceLock<Catalog> = OnceLock::new();
    C.get_or_init(builtin_catalog)
}

fn corpus() -> &'static Vec<(String, PogMorphism)> {
    static C: OnceLock<Vec<(String, PogMorphism)>> = OnceLock::new();
    C.get_or_init(|| standard_corpus(catalog(), 8, 2))
}

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-6i64..=6, cols), rows)
}

fn to_matrix(rows: &[Vec<i64>], cols: usize) -> ZMatrix {
    let r: Vec<&[i64]> = rows.iter().map(|v| v.as_slice()).collect();
    Matrix::from_i64(&r, cols)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_columns_are_annihilated(rows in int_matrix(3, 5)) {
        let a = to_matrix(&rows, 5);
        let k = integer_kernel(&a);
        prop_assert!(a.mul(&k).is_zero());
        // rank–nullity over Z
        let rank = ZLattice::from_generator_matrix(&a).rank();
        prop_assert_eq!(k.cols(), 5 - rank);
    }

    #[test]
    fn lattice_contains_its_generators_and_sums(rows in int_matrix(4, 3), i in 0usize..4, j in 0usize..4) {
        let gens: Vec<ZVec> = rows.iter().map(|r| from_i64s(r)).collect();
        let lat = ZLattice::from_generators(3, &gens);
        for g in &gens {
            prop_assert!(lat.contains(g));
        }
        prop_assert!(lat.contains(&vec_add(&gens[i], &gens[j])));
        // the echelon basis spans the same lattice
        let again = ZLattice::from_generators(3, &lat.basis_vectors());
        prop_assert!(again.contains_lattice(&lat) && lat.contains_lattice(&again));
    }

    #[test]
    fn solutions_reproduce_the_right_hand_side(rows in int_matrix(3, 4), x in prop::collection::vec(-5i64..=5, 4)) {
        let a = to_matrix(&rows, 4);
        let b = a.mul_vec(&from_i64s::<Int>(&x));
        let y = solve_integer(&a, &b).expect("b lies in the column lattice");
        prop_assert_eq!(a.mul_vec(&y), b);
    }

    #[test]
    fn invariant_factors_divide_and_multiply_to_the_determinant(rows in int_matrix(3, 3)) {
        let a = to_matrix(&rows, 3);
        let d = a.det();
        let f = invariant_factors(&a);
        for w in f.windows(2) {
            prop_assert!(w[0].is_zero() && w[1].is_zero() || !w[0].is_zero() && (&w[1] % &w[0]).is_zero());
        }
        if !d.is_zero() {
            let prod = f.iter().fold(Int::from(1), |acc, x| acc * x);
            prop_assert_eq!(prod, d.abs());
        }
    }

    #[test]
    fn cones_are_closed_under_nonnegative_combinations(coeffs in prop::collection::vec(0i64..4, 3)) {
        for (_, x) in catalog().block_objects() {
            let (_, c) = x.as_block().unwrap();
            let free: &FreeCone = c.free();
            let gens = free.generators();
            let mut v = vec![Int::zero(); free.ambient()];
            for (g, k) in gens.iter().zip(coeffs.iter().cycle()) {
                for (a, b) in v.iter_mut().zip(g) {
                    *a += b * Int::from(*k);
                }
            }
            prop_assert!(free.contains(&v));
            if let Some(cert) = free.member(&v) {
                prop_assert_eq!(free.replay(&cert), v);
            }
        }
    }

    #[test]
    fn pullback_squares_commute_and_locate_inverts_the_legs(i in 0usize..400, j in 0usize..400) {
        let blocks: Vec<&PogMorphism> = corpus().iter().map(|(_, m)| m).filter(|m| m.as_block().is_some()).collect();
        let f = blocks[i % blocks.len()];
        let partners: Vec<&PogMorphism> = blocks.iter().copied().filter(|g| g.codomain == f.codomain).collect();
        let g = partners[j % partners.len()];
        if let Ok(pb) = pullback(f, g) {
            let (gp, _) = pb.span.object.as_block().unwrap();
            for e in pb.span.object.group.generators() {
                let x = pb.span.first.apply(&e).unwrap();
                let y = pb.span.second.apply(&e).unwrap();
                prop_assert_eq!(f.apply(&x).unwrap(), g.apply(&y).unwrap());
                let bx = f.domain.group.block_elem(&x).unwrap();
                let by = g.domain.group.block_elem(&y).unwrap();
                prop_assert_eq!(Some(gp.from_element(&e).unwrap()), pb.locate(&bx, &by));
            }
        }
    }
}

fn finite_object(g: &FiniteGroup, cone: Vec<usize>) -> Arc<PreorderedGroup> {
    Arc::new(PreorderedGroup::finite(g.clone(), cone).unwrap())
}

#[test]
fn catalog_and_corpus_are_deterministic() {
    let a = builtin_catalog();
    let b = builtin_catalog();
    assert_eq!(a.objects().len(), b.objects().len());
    for ((n, x), (m, y)) in a.objects().iter().zip(b.objects()) {
        assert_eq!(n, m);
        assert_eq!(x, y);
    }
    let c1: Vec<String> = standard_corpus(&a, 6, 2).into_iter().map(|(n, _)| n).collect();
    let c2: Vec<String> = standard_corpus(&b, 6, 2).into_iter().map(|(n, _)| n).collect();
    assert_eq!(c1, c2);
}

#[test]
fn corpus_regular_epis_have_surjective_components() {
    for (name, m) in corpus() {
        if !m.is_regular_epi().unwrap() {
            continue;
        }
        let (gx, gy, map) = m.block_parts().unwrap();
        // finite part onto the quotient of the codomain by the mixed images
        if gy.rank() == 0 && gx.rank() == 0 {
            let mut img = map.finite.clone();
            img.sort_unstable();
            img.dedup();
            assert_eq!(img.len(), gy.finite().order(), "{name}");
        }
        // free part onto Z^s
        let lat = ZLattice::from_generator_matrix(&map.matrix);
        assert_eq!(lat.index(), Some(Int::from(1)), "{name}");
        // every codomain cone generator has a preimage in the cone
        let (_, cy) = m.codomain.as_block().unwrap();
        for &a in cy.finite() {
            let (_, cx) = m.domain.as_block().unwrap();
            assert!(cx.finite().iter().any(|&b| map.finite[b] == a) || gx.rank() > 0, "{name}");
        }
    }
}

#[test]
fn trivial_implies_normal_implies_central() {
    for (name, m) in corpus() {
        let t = is_trivial_extension(m, GaloisTag::Gamma).unwrap().definite();
        let n = is_normal_extension(m, GaloisTag::Gamma).unwrap().definite();
        let c = is_central_extension(m).unwrap().definite();
        if t == Some(true) {
            assert_eq!(n, Some(true), "{name}: Γ-trivial but not Γ-normal");
        }
        if n == Some(true) {
            assert_eq!(c, Some(true), "{name}: Γ-normal but not Γ-central");
        }
        let tc = is_trivial_extension(m, GaloisTag::GammaC).unwrap().definite();
        let nc = is_normal_extension(m, GaloisTag::GammaC).unwrap().definite();
        if tc == Some(true) {
            assert_eq!(nc, Some(true), "{name}: Γ_C-trivial but not Γ_C-normal");
        }
        assert_eq!(nc, is_gammac_normal(m).unwrap().definite(), "{name}");
    }
}

#[test]
fn special_homogeneity_reflects_along_pullbacks() {
    let cones: Vec<&PogMorphism> = corpus()
        .iter()
        .map(|(_, m)| m)
        .filter(|m| m.as_block().is_some_and(|(a, b, _)| a.is_abelian() && b.is_abelian()))
        .collect();
    let mut squares = 0;
    for f in &cones {
        for p in cones.iter().filter(|p| p.codomain == f.codomain).take(4) {
            let Ok(pb) = pullback(f, p) else { continue };
            squares += 1;
            let pulled = &pb.span.second;
            if is_special_homogeneous(pulled).unwrap().is_holds() {
                assert!(is_special_homogeneous(f).unwrap().is_holds());
            }
        }
    }
    assert!(squares > 100);
}

#[test]
fn kernel_pairs_of_finite_quotients_have_the_expected_order() {
    let s3 = FiniteGroup::symmetric(3);
    let c2 = FiniteGroup::cyclic(2);
    let sign: Vec<usize> = (0..6).map(|a| usize::from(!s3.commutator_subgroup().contains(&a))).collect();
    let m = PogMorphism::block(finite_object(&s3, s3.all()), finite_object(&c2, c2.all()), Matrix::zeros(0, 0), sign)
        .unwrap();
    let kp = kernel_pair(&m).unwrap();
    let (g, _) = kp.span.object.as_block().unwrap();
    assert_eq!(g.finite().order(), 18);
}
