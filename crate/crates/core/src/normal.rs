//! Normal subobjects of a block preordered group and their lattice.
//!
//! A block normal subobject is `L × N` with `L` a sublattice of the free
//! part and `N` a normal subgroup of the finite part; its cone is the
//! intersection with the ambient cone.

use std::sync::Arc;

use crate::carriers::block::{BlockCone, BlockGroup};
use crate::carriers::{PogMorphism, PreorderedGroup};
use crate::category::subobject;
use crate::error::{ModelError, Result};
use crate::finite::{FiniteGroup, IndexSet};
use crate::linalg::{zero_vec, Lattice, Matrix};
use crate::verdict::{Element, Verdict};
use crate::{Int, ZLattice};

#[derive(Clone, Debug)]
pub struct NormalSubobject {
    pub ambient: Arc<PreorderedGroup>,
    pub lattice: ZLattice,
    pub finite: IndexSet,
}

impl NormalSubobject {
    pub fn new(ambient: Arc<PreorderedGroup>, lattice: ZLattice, mut finite: IndexSet) -> Result<Self> {
        let (g, _) = ambient.block_parts()?;
        if lattice.ambient() != g.rank() {
            return Err(ModelError::Dimension("sublattice lives in the wrong rank".into()));
        }
        if finite.iter().any(|&a| a >= g.finite().order()) {
            return Err(ModelError::Dimension("finite index out of range".into()));
        }
        finite.sort_unstable();
        finite.dedup();
        Ok(NormalSubobject { ambient, lattice, finite })
    }

    pub fn zero(ambient: Arc<PreorderedGroup>) -> Result<Self> {
        let (g, _) = ambient.block_parts()?;
        let (r, e) = (g.rank(), g.finite().identity());
        Self::new(ambient, Lattice::zero(r), vec![e])
    }

    pub fn whole(ambient: Arc<PreorderedGroup>) -> Result<Self> {
        let (g, _) = ambient.block_parts()?;
        let (r, all) = (g.rank(), g.finite().all());
        Self::new(ambient, Lattice::full(r), all)
    }

    fn parts(&self) -> (&BlockGroup, &BlockCone) {
        self.ambient.block_parts().expect("checked on construction")
    }

    /// The derived cone, in ambient coordinates.
    pub fn cone(&self) -> BlockCone {
        let (_, c) = self.parts();
        let free = c.free().intersect_sublattice(&self.lattice);
        let fin = FiniteGroup::intersect(c.finite(), &self.finite);
        BlockCone::new(free, fin)
    }

    /// Group generators as ambient elements.
    pub fn generators(&self) -> Vec<Element> {
        let (g, _) = self.parts();
        let e = g.finite().identity();
        let mut out: Vec<Element> = self
            .lattice
            .basis_vectors()
            .into_iter()
            .map(|v| g.element(&(v, e)))
            .collect();
        out.extend(
            self.finite
                .iter()
                .filter(|&&a| a != e)
                .map(|&a| g.element(&(zero_vec(g.rank()), a))),
        );
        out
    }

    /// Subgroup inclusion.
    pub fn le(&self, other: &NormalSubobject) -> bool {
        other.lattice.contains_lattice(&self.lattice)
            && self.finite.iter().all(|a| other.finite.binary_search(a).is_ok())
    }

    /// Mutual inclusion of subgroups and of cones.
    pub fn same_as(&self, other: &NormalSubobject) -> bool {
        self.le(other) && other.le(self) && self.cone().same_as(&other.cone())
    }

    /// The subobject as a preordered group with its inclusion.
    pub fn as_object(&self) -> (Arc<PreorderedGroup>, PogMorphism) {
        let (g, c) = self.parts();
        subobject(&self.ambient, g, c, self.lattice.basis(), &self.finite)
    }
}

/// Normality of the finite part plus the cone-intersection property.
pub fn is_normal_subobject(s: &NormalSubobject, x: &PreorderedGroup) -> Result<Verdict> {
    if *s.ambient != *x {
        return Err(ModelError::Backend("subobject of a different ambient".into()));
    }
    let (g, c) = x.block_parts()?;
    let f = g.finite();
    let el = |a: usize| g.element(&(zero_vec(g.rank()), a));
    if s.finite.binary_search(&f.identity()).is_err() {
        return Ok(Verdict::fails("does not contain the identity", vec![el(f.identity())]));
    }
    if let Some((a, b)) = f.subgroup_violation(&s.finite) {
        return Ok(Verdict::fails("not a subgroup", vec![el(a), el(b)]));
    }
    if let Some((a, b)) = f.conjugation_violation(&s.finite) {
        return Ok(Verdict::fails("not closed under conjugation", vec![el(a), el(b)]));
    }
    // the derived cone lies in both the subgroup and the ambient cone
    for gen in s.cone().generators(g) {
        if !c.contains(&gen) || !s.lattice.contains(&gen.0) || s.finite.binary_search(&gen.1).is_err() {
            return Ok(Verdict::fails("cone is not the intersection", vec![g.element(&gen)]));
        }
    }
    Ok(Verdict::holds("normal subgroup with the induced cone"))
}

fn same_ambient(a: &NormalSubobject, b: &NormalSubobject) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(ModelError::Backend("subobjects of different ambients".into()));
    }
    Ok(())
}

/// `A · B` with the induced cone.
pub fn join(a: &NormalSubobject, b: &NormalSubobject) -> Result<NormalSubobject> {
    same_ambient(a, b)?;
    let (g, _) = a.parts();
    let fin = g.finite().product_set(&a.finite, &b.finite);
    NormalSubobject::new(a.ambient.clone(), a.lattice.sum(&b.lattice), fin)
}

/// `A ∩ B` with the induced cone.
pub fn meet(a: &NormalSubobject, b: &NormalSubobject) -> Result<NormalSubobject> {
    same_ambient(a, b)?;
    NormalSubobject::new(
        a.ambient.clone(),
        a.lattice.intersect(&b.lattice),
        FiniteGroup::intersect(&a.finite, &b.finite),
    )
}

/// First generator of `a` (group, then cone) not contained in `b`.
fn inclusion_witness(a: &NormalSubobject, b: &NormalSubobject) -> Option<Element> {
    let (g, _) = a.parts();
    for v in a.lattice.basis_vectors() {
        if !b.lattice.contains(&v) {
            return Some(g.element(&(v, g.finite().identity())));
        }
    }
    for &x in &a.finite {
        if b.finite.binary_search(&x).is_err() {
            return Some(g.element(&(zero_vec(g.rank()), x)));
        }
    }
    let cb = b.cone();
    a.cone().generators(g).into_iter().find(|x| !cb.contains(x)).map(|x| g.element(&x))
}

/// The modular law `A ∧ (B ∨ C) = (A ∧ B) ∨ C` for `C ≤ A`.
pub fn check_modular(a: &NormalSubobject, b: &NormalSubobject, c: &NormalSubobject) -> Result<Verdict> {
    same_ambient(a, b)?;
    same_ambient(a, c)?;
    if !c.le(a) {
        return Err(ModelError::Precondition(format!(
            "C is not contained in A (element {})",
            inclusion_witness(c, a).map(|e| e.to_string()).unwrap_or_default()
        )));
    }
    let lhs = meet(a, &join(b, c)?)?;
    let rhs = join(&meet(a, b)?, c)?;
    if let Some(w) = inclusion_witness(&lhs, &rhs) {
        return Ok(Verdict::fails("A ∧ (B ∨ C) has an element outside (A ∧ B) ∨ C", vec![w]));
    }
    if let Some(w) = inclusion_witness(&rhs, &lhs) {
        return Ok(Verdict::fails("(A ∧ B) ∨ C has an element outside A ∧ (B ∨ C)", vec![w]));
    }
    Ok(Verdict::holds("both sides agree by mutual inclusion"))
}

/// Sublattices of `Z^r` of index `d`, as lower-triangular bases with
/// entries below the diagonal reduced modulo the diagonal of their row.
pub fn sublattices_of_index(r: usize, d: u64) -> Vec<ZLattice> {
    fn diagonals(r: usize, d: u64) -> Vec<Vec<u64>> {
        if r == 0 {
            return if d == 1 { vec![vec![]] } else { vec![] };
        }
        let mut out = Vec::new();
        for a in (1..=d).filter(|a| d % a == 0) {
            for mut rest in diagonals(r - 1, d / a) {
                rest.insert(0, a);
                out.push(rest);
            }
        }
        out
    }
    let mut out = Vec::new();
    for diag in diagonals(r, d) {
        // free entries: (i, j) with i > j, range 0..diag[i]
        let slots: Vec<(usize, usize)> = (0..r).flat_map(|j| (j + 1..r).map(move |i| (i, j))).collect();
        let mut vals = vec![0u64; slots.len()];
        loop {
            let mut m = Matrix::<Int>::zeros(r, r);
            for (j, &dj) in diag.iter().enumerate() {
                m.set(j, j, Int::from(dj));
            }
            for (&(i, j), &v) in slots.iter().zip(&vals) {
                m.set(i, j, Int::from(v));
            }
            out.push(Lattice::from_generator_matrix(&m));
            let mut k = 0;
            while k < slots.len() && vals[k] + 1 == diag[slots[k].0] {
                vals[k] = 0;
                k += 1;
            }
            if k == slots.len() {
                break;
            }
            vals[k] += 1;
        }
    }
    out
}

/// All block normal subobjects: every normal subgroup of the finite part,
/// paired with the zero lattice and with every sublattice whose index
/// divides `index_bound`.
pub fn enumerate_normal_subobjects(x: &Arc<PreorderedGroup>, index_bound: u64) -> Result<Vec<NormalSubobject>> {
    let (g, _) = x
        .as_block()
        .ok_or_else(|| ModelError::Unsupported("normal subobjects of word objects".into()))?;
    let r = g.rank();
    let mut lattices = vec![Lattice::zero(r)];
    if r > 0 {
        for d in (1..=index_bound.max(1)).filter(|d| index_bound % d == 0) {
            lattices.extend(sublattices_of_index(r, d));
        }
    }
    let mut out = Vec::new();
    for lat in &lattices {
        for n in g.finite().normal_subgroups() {
            out.push(NormalSubobject::new(x.clone(), lat.clone(), n)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_i64s;
    use crate::monoid::FreeCone;

    fn n_in_z() -> Arc<PreorderedGroup> {
        let g = BlockGroup::free(1);
        Arc::new(PreorderedGroup::block(g, BlockCone::new(FreeCone::orthant(1), vec![0])).unwrap())
    }

    fn multiples(x: &Arc<PreorderedGroup>, k: i64) -> NormalSubobject {
        NormalSubobject::new(x.clone(), Lattice::from_generators(1, &[from_i64s(&[k])]), vec![0]).unwrap()
    }

    #[test]
    fn join_and_meet_of_congruences() {
        let x = n_in_z();
        let j = join(&multiples(&x, 2), &multiples(&x, 3)).unwrap();
        assert!(j.same_as(&NormalSubobject::whole(x.clone()).unwrap()));
        assert!(j.cone().free().same_as(&FreeCone::orthant(1)));
        let m = meet(&multiples(&x, 2), &multiples(&x, 3)).unwrap();
        assert!(m.same_as(&multiples(&x, 6)));
        assert_eq!(m.cone().free().pointed(), &[from_i64s::<Int>(&[6])]);
    }

    #[test]
    fn normality_scan() {
        let s3 = FiniteGroup::symmetric(3);
        let x = Arc::new(PreorderedGroup::finite(s3.clone(), s3.all()).unwrap());
        let a3 = NormalSubobject::new(x.clone(), Lattice::zero(0), s3.commutator_subgroup()).unwrap();
        assert!(is_normal_subobject(&a3, &x).unwrap().is_holds());
        let t = (0..6).find(|&a| s3.element_order(a) == 2).unwrap();
        let bad = NormalSubobject::new(x.clone(), Lattice::zero(0), vec![0, t]).unwrap();
        assert!(is_normal_subobject(&bad, &x).unwrap().is_fails());
        assert!(is_normal_subobject(&NormalSubobject::zero(x.clone()).unwrap(), &x).unwrap().is_holds());
        assert_eq!(enumerate_normal_subobjects(&x, 1).unwrap().len(), 3);
    }

    #[test]
    fn sublattice_counts() {
        // number of index-n sublattices of Z^2 is σ(n)
        assert_eq!(sublattices_of_index(2, 2).len(), 3);
        assert_eq!(sublattices_of_index(2, 4).len(), 7);
        assert_eq!(sublattices_of_index(1, 6).len(), 1);
    }
}
