//! The built-in catalog and generated morphism corpora.

use std::sync::Arc;

use crate::carriers::block::{BlockCone, BlockGroup, BlockMap};
use crate::carriers::{morphism_validate, ExactCone, GroupMap, PogMorphism, PreorderedGroup, WordCone, WordGroup};
use crate::error::{ModelError, Result};
use crate::finite::FiniteGroup;
use crate::linalg::{from_i64s, Lattice, Matrix};
use crate::monoid::FreeCone;
use crate::Int;

/// Bumped whenever an entry changes.
pub const CATALOG_VERSION: u32 = 1;

/// Bound attached to the catalog's word groups.
pub const WORD_BOUND: u32 = 4;

/// Named groups, objects and morphisms, in a fixed order.
pub struct Catalog {
    pub version: u32,
    groups: Vec<(String, FiniteGroup)>,
    objects: Vec<(String, Arc<PreorderedGroup>)>,
    morphisms: Vec<(String, PogMorphism)>,
}

impl Catalog {
    pub fn group(&self, name: &str) -> Option<&FiniteGroup> {
        self.groups.iter().find(|(n, _)| n == name).map(|(_, g)| g)
    }

    pub fn object(&self, name: &str) -> Option<&Arc<PreorderedGroup>> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn morphism(&self, name: &str) -> Option<&PogMorphism> {
        self.morphisms.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn groups(&self) -> &[(String, FiniteGroup)] {
        &self.groups
    }

    pub fn objects(&self) -> &[(String, Arc<PreorderedGroup>)] {
        &self.objects
    }

    pub fn morphisms(&self) -> &[(String, PogMorphism)] {
        &self.morphisms
    }

    /// Every finite group of order at most `max_order` with each of its
    /// normal subgroups as cone. The full cone keeps the group's name;
    /// `G@i` uses the `i`-th normal subgroup (by size).
    pub fn finite_objects(&self, max_order: usize) -> Vec<(String, Arc<PreorderedGroup>)> {
        let mut out = Vec::new();
        for (name, g) in &self.groups {
            if g.order() > max_order {
                continue;
            }
            let normals = g.normal_subgroups();
            let last = normals.len() - 1;
            for (i, n) in normals.into_iter().enumerate() {
                let label = if i == last { name.clone() } else { format!("{name}@{i}") };
                out.push((label, Arc::new(PreorderedGroup::finite(g.clone(), n).expect("normal subgroup"))));
            }
        }
        out
    }

    /// The block objects (free rank at least one).
    pub fn block_objects(&self) -> Vec<(String, Arc<PreorderedGroup>)> {
        self.objects
            .iter()
            .filter(|(_, o)| o.as_block().is_some_and(|(g, _)| g.rank() > 0))
            .cloned()
            .collect()
    }
}

fn free_obj(cone: FreeCone) -> Arc<PreorderedGroup> {
    let g = BlockGroup::free(cone.ambient());
    Arc::new(PreorderedGroup::block(g, BlockCone::new(cone, vec![0])).expect("catalog cone"))
}

fn cone(ambient: usize, lattice: &[&[i64]], pointed: &[&[i64]], functional: &[i64]) -> FreeCone {
    let lat = Lattice::from_generators(ambient, &lattice.iter().map(|v| from_i64s(v)).collect::<Vec<_>>());
    FreeCone::new(lat, pointed.iter().map(|v| from_i64s(v)).collect(), from_i64s(functional)).expect("catalog cone")
}

fn block_morphism(
    x: &Arc<PreorderedGroup>,
    y: &Arc<PreorderedGroup>,
    rows: &[&[i64]],
    finite: Vec<usize>,
) -> PogMorphism {
    let (gx, _) = x.block_parts().unwrap();
    PogMorphism::block(x.clone(), y.clone(), Matrix::from_i64(rows, gx.rank()), finite).expect("catalog morphism")
}

/// The Heisenberg group with cone generated by `x` and `z` under conjugation.
pub fn heisenberg_p0(bound: u32) -> Arc<PreorderedGroup> {
    let h = Arc::new(WordGroup::heisenberg(bound));
    let cone = WordCone {
        gens: vec![h.gens()[0].clone(), h.gens()[2].clone()],
        exact: Some(ExactCone::HeisenbergP0),
    };
    Arc::new(PreorderedGroup::word(h, cone).expect("catalog cone"))
}

/// `(ℤ², ℕ×0)`, the quotient of the Heisenberg group by its center.
pub fn heisenberg_quotient_object() -> Arc<PreorderedGroup> {
    free_obj(cone(2, &[], &[&[1, 0]], &[1, 0]))
}

/// The quotient map of the Heisenberg group by its center.
pub fn heisenberg_central_quotient(bound: u32) -> PogMorphism {
    heisenberg_central_quotient_to(heisenberg_p0(bound), heisenberg_quotient_object())
}

fn heisenberg_central_quotient_to(hp: Arc<PreorderedGroup>, q: Arc<PreorderedGroup>) -> PogMorphism {
    let imgs = vec![(from_i64s(&[1, 0]), 0), (from_i64s(&[0, 1]), 0), (from_i64s(&[0, 0]), 0)];
    PogMorphism::new(hp, q, GroupMap::WordToBlock(imgs)).expect("catalog morphism")
}

/// Builds and validates the catalog.
pub fn builtin_catalog() -> Catalog {
    let mut groups: Vec<(String, FiniteGroup)> = (2..=12).map(|n| (format!("C{n}"), FiniteGroup::cyclic(n))).collect();
    let c2 = FiniteGroup::cyclic(2);
    groups.push(("Klein".into(), c2.product(&c2)));
    groups.push(("S3".into(), FiniteGroup::symmetric(3)));
    groups.push(("S4".into(), FiniteGroup::symmetric(4)));
    groups.push(("D4".into(), FiniteGroup::dihedral(4)));
    groups.push(("Q8".into(), FiniteGroup::quaternion()));
    groups.push(("C2xC4".into(), c2.product(&FiniteGroup::cyclic(4))));
    groups.push(("C3xC3".into(), FiniteGroup::cyclic(3).product(&FiniteGroup::cyclic(3))));
    groups.push(("C2xS3".into(), c2.product(&FiniteGroup::symmetric(3))));

    let mut objects: Vec<(String, Arc<PreorderedGroup>)> = vec![("zero".into(), Arc::new(PreorderedGroup::zero()))];
    for (name, g) in &groups {
        objects.push((name.clone(), Arc::new(PreorderedGroup::finite(g.clone(), g.all()).unwrap())));
    }
    let s3 = FiniteGroup::symmetric(3);
    objects.push(("S3-A3".into(), Arc::new(PreorderedGroup::finite(s3.clone(), s3.commutator_subgroup()).unwrap())));
    let n_in_z = free_obj(FreeCone::orthant(1));
    let z = free_obj(FreeCone::full(1));
    let n2 = free_obj(FreeCone::orthant(2));
    let nxz = free_obj(cone(2, &[&[0, 1]], &[&[1, 0]], &[1, 0]));
    let z2 = free_obj(FreeCone::full(2));
    objects.push(("NinZ".into(), n_in_z.clone()));
    objects.push(("2NinZ".into(), free_obj(cone(1, &[], &[&[2]], &[1]))));
    objects.push(("N2".into(), n2.clone()));
    objects.push(("NxZ".into(), nxz.clone()));
    objects.push(("2ZinZ".into(), free_obj(FreeCone::group(Lattice::from_generators(1, &[from_i64s(&[2])])))));
    objects.push(("Z".into(), z.clone()));
    objects.push(("Z2".into(), z2.clone()));
    let heis = heisenberg_p0(WORD_BOUND);
    let nx0 = heisenberg_quotient_object();
    objects.push(("Nx0".into(), nx0.clone()));
    objects.push(("heis-P0".into(), heis.clone()));
    let h = Arc::new(WordGroup::heisenberg(WORD_BOUND));
    let full = WordCone {
        gens: h.gens().iter().flat_map(|g| [g.clone(), h.inv(g)]).collect(),
        exact: Some(ExactCone::Full),
    };
    objects.push(("heis-full".into(), Arc::new(PreorderedGroup::word(h, full).unwrap())));

    let object = |name: &str| objects.iter().find(|(n, _)| n == name).unwrap().1.clone();
    // the first surjection is the intended quotient: each of these targets
    // arises from a single normal subgroup
    let first_surjection = |x: &str, y: &str| {
        enumerate_surjections(&object(x), &object(y), Some(1)).unwrap().remove(0)
    };
    let morphisms = vec![
        ("proj".to_string(), block_morphism(&nxz, &n_in_z, &[&[1, 0]], vec![0])),
        ("sum".to_string(), block_morphism(&n2, &n_in_z, &[&[1, 1]], vec![0])),
        ("incl-N-Z".to_string(), block_morphism(&n_in_z, &z, &[&[1]], vec![0])),
        ("sum-Z".to_string(), block_morphism(&z2, &z, &[&[1, 1]], vec![0])),
        ("S3-sign".to_string(), first_surjection("S3", "C2")),
        ("Q8-center".to_string(), first_surjection("Q8", "Klein")),
        ("D4-center".to_string(), first_surjection("D4", "Klein")),
        ("heis-center".to_string(), heisenberg_central_quotient_to(heis, nx0)),
    ];
    for (name, m) in &morphisms {
        let v = morphism_validate(m).expect("catalog morphism");
        assert!(!v.is_fails(), "catalog morphism {name} fails validation: {v}");
    }
    for (name, o) in &objects {
        let v = crate::carriers::cone_validate(o).expect("catalog object");
        assert!(!v.is_fails(), "catalog object {name} fails validation: {v}");
    }
    Catalog {
        version: CATALOG_VERSION,
        groups,
        objects,
        morphisms,
    }
}

fn is_regular_epi(m: &PogMorphism) -> bool {
    morphism_validate(m).is_ok_and(|v| v.is_holds()) && m.is_regular_epi().unwrap_or(false)
}

/// Calls `f` for every tuple in `{0..n}^k`, lexicographically.
fn for_each_tuple(n: usize, k: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut t = vec![0usize; k];
    loop {
        if !f(&t) {
            return;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < n {
                break;
            }
            t[i] = 0;
        }
        if n == 0 {
            return;
        }
    }
}

/// All homomorphisms between finite groups, by generator images.
pub fn finite_homomorphisms(f: &FiniteGroup, g: &FiniteGroup) -> Vec<Vec<usize>> {
    let gens = f.generators();
    let mut out = Vec::new();
    for_each_tuple(g.order(), gens.len(), |imgs| {
        if let Some(map) = f.extend_hom(&gens, imgs, g) {
            out.push(map);
        }
        true
    });
    out
}

/// Regular epimorphisms `X → Y` found by generator-image search, in a
/// fixed order; block matrices range over entries in `[-2, 2]`.
pub fn enumerate_surjections(
    x: &Arc<PreorderedGroup>,
    y: &Arc<PreorderedGroup>,
    limit: Option<usize>,
) -> Result<Vec<PogMorphism>> {
    let (Some((gx, _)), Some((gy, _))) = (x.as_block(), y.as_block()) else {
        return Err(ModelError::Unsupported("surjection search needs finite or block objects".into()));
    };
    let limit = limit.unwrap_or(usize::MAX);
    let (r, s) = (gx.rank(), gy.rank());
    if s > r || (r == 0 && gy.finite().order() > gx.finite().order()) {
        return Ok(Vec::new());
    }
    let finite_maps = finite_homomorphisms(gx.finite(), gy.finite());
    let center = gy.finite().center();
    let mut out = Vec::new();
    for_each_tuple(5, r * s, |entries| {
        let rows: Vec<Vec<Int>> = (0..s)
            .map(|i| (0..r).map(|j| Int::from(entries[i * r + j] as i64 - 2)).collect())
            .collect();
        let matrix = Matrix::from_rows(rows, r);
        for fin in &finite_maps {
            let mut keep_going = true;
            for_each_tuple(center.len(), r, |mix| {
                let map = BlockMap {
                    matrix: matrix.clone(),
                    mixed: mix.iter().map(|&i| center[i]).collect(),
                    finite: fin.clone(),
                };
                if let Ok(m) = PogMorphism::new(x.clone(), y.clone(), GroupMap::Block(map)) {
                    if is_regular_epi(&m) {
                        out.push(m);
                    }
                }
                keep_going = out.len() < limit;
                keep_going
            });
            if !keep_going {
                return false;
            }
        }
        true
    });
    Ok(out)
}

/// The standard sweep: surjections between finite catalog objects of order
/// at most `max_order` (at most `per_pair` group maps per pair of groups,
/// every domain cone), then surjections between block objects.
pub fn standard_corpus(catalog: &Catalog, max_order: usize, per_pair: usize) -> Vec<(String, PogMorphism)> {
    let mut out = Vec::new();
    let mut targets: Vec<(String, FiniteGroup)> = vec![("zero".into(), FiniteGroup::trivial())];
    targets.extend(catalog.groups().iter().filter(|(_, g)| g.order() <= max_order).cloned());
    for (xn, xg) in catalog.groups() {
        if xg.order() > max_order {
            continue;
        }
        let normals = xg.normal_subgroups();
        for (yn, yg) in &targets {
            if xg.order() % yg.order() != 0 {
                continue;
            }
            let surj: Vec<Vec<usize>> = finite_homomorphisms(xg, yg)
                .into_iter()
                .filter(|m| {
                    let mut img = m.clone();
                    img.sort_unstable();
                    img.dedup();
                    img.len() == yg.order()
                })
                .take(per_pair)
                .collect();
            for (k, map) in surj.iter().enumerate() {
                for (i, n) in normals.iter().enumerate() {
                    let mut image: Vec<usize> = n.iter().map(|&a| map[a]).collect();
                    image.sort_unstable();
                    image.dedup();
                    let x = Arc::new(PreorderedGroup::finite(xg.clone(), n.clone()).unwrap());
                    let y = Arc::new(PreorderedGroup::finite(yg.clone(), image).unwrap());
                    let m = PogMorphism::block(x, y, Matrix::zeros(0, 0), map.clone()).expect("homomorphism");
                    let cone = if i + 1 == normals.len() { String::new() } else { format!("@{i}") };
                    out.push((format!("{xn}{cone}->{yn}#{k}"), m));
                }
            }
        }
    }
    let blocks = catalog.block_objects();
    for (xn, x) in &blocks {
        for (yn, y) in &blocks {
            let found = enumerate_surjections(x, y, Some(per_pair.max(4))).unwrap_or_default();
            for (k, m) in found.into_iter().enumerate() {
                out.push((format!("{xn}->{yn}#{k}"), m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lookups() {
        let c = builtin_catalog();
        let (g, cone) = c.object("NinZ").unwrap().block_parts().unwrap();
        assert_eq!(g.rank(), 1);
        assert!(cone.free().same_as(&FreeCone::orthant(1)));
        assert_eq!(c.object("zero").unwrap().block_parts().unwrap().0.finite().order(), 1);
        assert!(c.object("heis-P0").unwrap().as_word().is_some());
        assert!(c.morphism("heis-center").is_some());
        let q8 = c.morphism("Q8-center").unwrap();
        let (_, _, m) = q8.block_parts().unwrap();
        assert_eq!(m.finite[1], 0);
    }

    #[test]
    fn sign_map_is_the_only_surjection() {
        let c = builtin_catalog();
        let found = enumerate_surjections(c.object("S3").unwrap(), c.object("C2").unwrap(), None).unwrap();
        assert_eq!(found.len(), 1);
        let z = c.object("zero").unwrap();
        assert_eq!(enumerate_surjections(c.object("S4").unwrap(), z, None).unwrap().len(), 1);
        assert_eq!(enumerate_surjections(c.object("NxZ").unwrap(), z, None).unwrap().len(), 1);
    }

    #[test]
    fn sums_and_projections_are_found() {
        let c = builtin_catalog();
        let found = enumerate_surjections(c.object("N2").unwrap(), c.object("NinZ").unwrap(), None).unwrap();
        let rows: Vec<Vec<Int>> = found.iter().map(|m| m.block_parts().unwrap().2.matrix.row(0).to_vec()).collect();
        for want in [[1, 0], [0, 1], [1, 1]] {
            assert!(rows.contains(&from_i64s(&want)), "{want:?}");
        }
    }

    #[test]
    fn corpus_is_deterministic_and_large() {
        let c = builtin_catalog();
        let a = standard_corpus(&c, 8, 2);
        let b = standard_corpus(&builtin_catalog(), 8, 2);
        let names: Vec<&String> = a.iter().map(|x| &x.0).collect();
        assert_eq!(names, b.iter().map(|x| &x.0).collect::<Vec<_>>());
        assert!(a.iter().all(|(_, m)| m.is_regular_epi().unwrap()));
    }
}
