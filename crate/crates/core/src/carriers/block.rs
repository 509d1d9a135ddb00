//! Block carriers `Z^r × F`: groups, product cones, maps, quotients and
//! pullbacks.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{ModelError, Result};
use crate::finite::{FiniteGroup, IndexSet};
use crate::linalg::{integer_kernel, smith, vec_add, vec_neg, zero_vec, Matrix};
use crate::monoid::{FreeCone, ImageOptions};
use crate::verdict::{Element, Verdict};
use crate::{Int, ZLattice, ZMatrix, ZVec};

/// The group `Z^rank × F` with componentwise operation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockGroup {
    rank: usize,
    finite: Arc<FiniteGroup>,
}

/// An element `(v, a)` of a block group.
pub type BlockElem = (ZVec, usize);

impl BlockGroup {
    pub fn new(rank: usize, finite: Arc<FiniteGroup>) -> Self {
        BlockGroup { rank, finite }
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Arc::new(FiniteGroup::trivial()))
    }

    pub fn finite_only(f: FiniteGroup) -> Self {
        Self::new(0, Arc::new(f))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn finite(&self) -> &FiniteGroup {
        &self.finite
    }

    pub fn finite_arc(&self) -> &Arc<FiniteGroup> {
        &self.finite
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_abelian(&self) -> bool {
        self.finite.is_abelian()
    }

    pub fn identity(&self) -> BlockElem {
        (zero_vec(self.rank), self.finite.identity())
    }

    pub fn op(&self, x: &BlockElem, y: &BlockElem) -> BlockElem {
        (vec_add(&x.0, &y.0), self.finite.op(x.1, y.1))
    }

    pub fn inv(&self, x: &BlockElem) -> BlockElem {
        (vec_neg(&x.0), self.finite.inv(x.1))
    }

    /// Element in printable form.
    pub fn element(&self, x: &BlockElem) -> Element {
        Element::Block {
            free: x.0.clone(),
            fin: (self.finite.order() > 1).then_some(x.1),
        }
    }

    /// Reads back an element produced by [`BlockGroup::element`].
    pub fn from_element(&self, e: &Element) -> Option<BlockElem> {
        match e {
            Element::Block { free, fin } if free.len() == self.rank => {
                let a = fin.unwrap_or(self.finite.identity());
                (a < self.finite.order()).then(|| (free.clone(), a))
            }
            _ => None,
        }
    }

    /// Generators: free basis vectors, then finite generators.
    pub fn generators(&self) -> Vec<BlockElem> {
        let mut out: Vec<BlockElem> = (0..self.rank)
            .map(|i| {
                let mut v = zero_vec::<Int>(self.rank);
                v[i] = Int::from(1);
                (v, self.finite.identity())
            })
            .collect();
        out.extend(self.finite.generators().into_iter().map(|a| (zero_vec(self.rank), a)));
        out
    }

    pub fn product(&self, other: &BlockGroup) -> BlockGroup {
        BlockGroup::new(self.rank + other.rank, Arc::new(self.finite.product(&other.finite)))
    }
}

/// Product cone `C × N`: a free cone in `Z^r` and a normal subgroup of `F`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockCone {
    free: FreeCone,
    finite: IndexSet,
}

impl BlockCone {
    pub fn new(free: FreeCone, mut finite: IndexSet) -> Self {
        finite.sort_unstable();
        finite.dedup();
        BlockCone { free, finite }
    }

    pub fn full(g: &BlockGroup) -> Self {
        Self::new(FreeCone::full(g.rank), g.finite.all())
    }

    pub fn trivial(g: &BlockGroup) -> Self {
        Self::new(FreeCone::zero(g.rank), vec![g.finite.identity()])
    }

    pub fn free(&self) -> &FreeCone {
        &self.free
    }

    pub fn finite(&self) -> &IndexSet {
        &self.finite
    }

    pub fn contains(&self, x: &BlockElem) -> bool {
        self.finite.binary_search(&x.1).is_ok() && self.free.contains(&x.0)
    }

    pub fn is_group(&self) -> bool {
        self.free.is_group()
    }

    /// Monoid generators.
    pub fn generators(&self, g: &BlockGroup) -> Vec<BlockElem> {
        let e = g.finite.identity();
        let mut out: Vec<BlockElem> = self.free.generators().into_iter().map(|v| (v, e)).collect();
        out.extend(
            self.finite
                .iter()
                .filter(|&&a| a != e)
                .map(|&a| (zero_vec(g.rank), a)),
        );
        out
    }

    /// Mutual inclusion.
    pub fn same_as(&self, other: &BlockCone) -> bool {
        self.finite == other.finite && self.free.same_as(&other.free)
    }

    /// Checks the cone axioms in `g`. The free part is a monoid by
    /// construction; the finite part must be a conjugation-closed submonoid.
    pub fn validate(&self, g: &BlockGroup) -> Result<Verdict> {
        if self.free.ambient() != g.rank {
            return Err(ModelError::Dimension(format!(
                "cone lives in rank {}, group has rank {}",
                self.free.ambient(),
                g.rank
            )));
        }
        let f = &g.finite;
        if let Some(&bad) = self.finite.iter().find(|&&a| a >= f.order()) {
            return Err(ModelError::Dimension(format!("finite cone element {bad} out of range")));
        }
        let el = |a: usize| g.element(&(zero_vec(g.rank), a));
        if self.finite.binary_search(&f.identity()).is_err() {
            return Ok(Verdict::fails("cone does not contain the identity", vec![el(f.identity())]));
        }
        if let Some((a, b)) = f.subgroup_violation(&self.finite) {
            return Ok(Verdict::fails(
                "finite part not closed under the operation",
                vec![el(a), el(b)],
            ));
        }
        if let Some((c, x)) = f.conjugation_violation(&self.finite) {
            return Ok(Verdict::fails(
                "finite part not closed under conjugation",
                vec![el(c), el(x)],
            ));
        }
        Ok(Verdict::holds("product of a certified free cone and a normal subgroup"))
    }
}

/// Block homomorphism `(v, a) ↦ (A v, ψ(v) + φ(a))`.
///
/// `mixed[j]` is the image `ψ(e_j)` of the j-th free basis vector in the
/// target's finite part; these images must be central there.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BlockMap {
    pub matrix: ZMatrix,
    pub mixed: Vec<usize>,
    pub finite: Vec<usize>,
}

fn pow_int(f: &FiniteGroup, a: usize, k: &Int) -> usize {
    if a == f.identity() || k.is_zero() {
        return f.identity();
    }
    let ord = Int::from(f.element_order(a));
    let e = k.mod_floor(&ord).to_i64().unwrap();
    f.pow(a, e)
}

impl BlockMap {
    pub fn identity(g: &BlockGroup) -> Self {
        BlockMap {
            matrix: Matrix::identity(g.rank),
            mixed: vec![g.finite.identity(); g.rank],
            finite: g.finite.all(),
        }
    }

    pub fn zero(src: &BlockGroup, dst: &BlockGroup) -> Self {
        BlockMap {
            matrix: Matrix::zeros(dst.rank, src.rank),
            mixed: vec![dst.finite.identity(); src.rank],
            finite: vec![dst.finite.identity(); src.finite.order()],
        }
    }

    /// A map without mixed component.
    pub fn pure(matrix: ZMatrix, finite: Vec<usize>, dst: &BlockGroup) -> Self {
        let r = matrix.cols();
        BlockMap {
            matrix,
            mixed: vec![dst.finite.identity(); r],
            finite,
        }
    }

    pub fn has_mixed(&self, dst: &BlockGroup) -> bool {
        self.mixed.iter().any(|&a| a != dst.finite.identity())
    }

    pub fn mixed_eval(&self, dst: &BlockGroup, v: &[Int]) -> usize {
        let f = dst.finite();
        let mut acc = f.identity();
        for (k, &a) in v.iter().zip(&self.mixed) {
            acc = f.op(acc, pow_int(f, a, k));
        }
        acc
    }

    pub fn apply(&self, dst: &BlockGroup, x: &BlockElem) -> BlockElem {
        (
            self.matrix.mul_vec(&x.0),
            dst.finite.op(self.mixed_eval(dst, &x.0), self.finite[x.1]),
        )
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &BlockMap, dst: &BlockGroup) -> BlockMap {
        let matrix = then.matrix.mul(&self.matrix);
        let mixed = (0..self.matrix.cols())
            .map(|j| {
                let col = self.matrix.col(j);
                dst.finite.op(then.mixed_eval(dst, &col), then.finite[self.mixed[j]])
            })
            .collect();
        let finite = self.finite.iter().map(|&a| then.finite[a]).collect();
        BlockMap { matrix, mixed, finite }
    }

    /// Structural checks: shapes, homomorphism of the finite part, and
    /// centrality of the mixed images.
    pub fn validate(&self, src: &BlockGroup, dst: &BlockGroup) -> Result<Verdict> {
        if self.matrix.rows() != dst.rank || self.matrix.cols() != src.rank {
            return Err(ModelError::Dimension(format!(
                "matrix is {}x{}, expected {}x{}",
                self.matrix.rows(),
                self.matrix.cols(),
                dst.rank,
                src.rank
            )));
        }
        if self.mixed.len() != src.rank || self.finite.len() != src.finite.order() {
            return Err(ModelError::Dimension("finite map has the wrong length".into()));
        }
        if let Some(&bad) = self.finite.iter().chain(&self.mixed).find(|&&a| a >= dst.finite.order()) {
            return Err(ModelError::Dimension(format!("finite image {bad} out of range")));
        }
        if let Some((a, b)) = src.finite.homomorphism_violation(&self.finite, &dst.finite) {
            let e = |x| src.element(&(zero_vec(src.rank), x));
            return Ok(Verdict::fails("finite map is not a homomorphism", vec![e(a), e(b)]));
        }
        for (j, &m) in self.mixed.iter().enumerate() {
            if (0..dst.finite.order()).any(|g| !dst.finite.commutes(m, g)) {
                let mut v = zero_vec::<Int>(src.rank);
                v[j] = Int::from(1);
                return Ok(Verdict::fails(
                    "free generator has a non-central finite image",
                    vec![src.element(&(v, src.finite.identity()))],
                ));
            }
        }
        Ok(Verdict::holds("homomorphism"))
    }

    /// Direct image of a product cone.
    ///
    /// Without mixed part this is `A(C) × φ(N)`. With a mixed part the image
    /// is a product `A(C) × N'` exactly when every generator's finite
    /// coordinate lies in the fiber `N'` over zero; otherwise the image is
    /// not representable and an error is returned.
    pub fn image_cone(
        &self,
        src: &BlockGroup,
        dst: &BlockGroup,
        cone: &BlockCone,
        opts: &ImageOptions,
    ) -> Result<BlockCone> {
        let f = dst.finite();
        let mut fin_gens: Vec<usize> = cone.finite.iter().map(|&a| self.finite[a]).collect();
        if self.has_mixed(dst) {
            let ker = ZLattice::from_generator_matrix(&integer_kernel(&self.matrix));
            let inker = cone.free.intersect_sublattice(&ker);
            for g in inker.generators() {
                fin_gens.push(self.mixed_eval(dst, &g));
            }
            let fiber = f.subgroup_generated(&fin_gens);
            for g in cone.free.generators() {
                let a = self.mixed_eval(dst, &g);
                if fiber.binary_search(&a).is_err() {
                    return Err(ModelError::Unsupported(format!(
                        "direct image of the cone along this map is not a product cone (generator {})",
                        src.element(&(g, src.finite.identity()))
                    )));
                }
            }
            let free = cone.free.image(&self.matrix, opts)?;
            return Ok(BlockCone::new(free, fiber));
        }
        let free = cone.free.image(&self.matrix, opts)?;
        Ok(BlockCone::new(free, f.subgroup_generated(&fin_gens)))
    }
}

/// Quotient of `Z^s × G` by the normal closure of `relations`.
///
/// Free-part torsion is folded into the finite component. Returns the
/// quotient and the quotient map.
pub fn quotient_block(g: &BlockGroup, relations: &[BlockElem]) -> Result<(BlockGroup, BlockMap)> {
    let s = g.rank;
    let fg = g.finite();
    // make the finite parts of the relations central
    let hs: std::collections::BTreeSet<usize> = relations.iter().map(|r| r.1).collect();
    let comms: Vec<usize> = hs
        .iter()
        .flat_map(|&h| (0..fg.order()).map(move |x| (x, h)))
        .map(|(x, h)| fg.commutator(x, h))
        .collect::<std::collections::BTreeSet<usize>>()
        .into_iter()
        .collect();
    let n1 = fg.normal_closure(&comms);
    let (g1, pi1) = fg.quotient(&n1)?;
    let k = relations.len();
    let w = Matrix::from_cols(&relations.iter().map(|r| r.0.clone()).collect::<Vec<_>>(), s);
    let sm = smith(&w);
    let u = &sm.left;
    let vmat = &sm.right;
    let rho = sm.factors().len();
    let h1: Vec<usize> = relations.iter().map(|r| pi1[r.1]).collect();
    let combined = |j: usize| -> usize {
        let mut acc = g1.identity();
        for (i, &h) in h1.iter().enumerate() {
            acc = g1.op(acc, pow_int(&g1, h, vmat.get(i, j)));
        }
        acc
    };
    let kill: Vec<usize> = (rho..k).map(combined).collect();
    let n2 = g1.normal_closure(&kill);
    let (g2, pi2) = g1.quotient(&n2)?;
    let hs: Vec<usize> = (0..rho).map(|j| pi2[combined(j)]).collect();
    let d: Vec<Int> = (0..rho).map(|j| sm.diag.get(j, j).clone()).collect();
    let one = Int::from(1);
    let torsion: Vec<usize> = (0..rho).filter(|&j| d[j] > one).collect();
    let elim: Vec<usize> = (0..rho).filter(|&j| d[j] == one).collect();
    // Ψ = ∏ C_{d_j o_j} × G2, indices in mixed radix
    let moduli: Vec<usize> = torsion
        .iter()
        .map(|&j| d[j].to_usize().expect("torsion coefficient too large") * g2.element_order(hs[j]))
        .collect();
    let mut psi = FiniteGroup::trivial();
    for &m in &moduli {
        psi = psi.product(&FiniteGroup::cyclic(m));
    }
    let psi = psi.product(&g2);
    let encode = |cyc: &[usize], x: usize| -> usize {
        let mut idx = 0usize;
        for (c, m) in cyc.iter().zip(&moduli) {
            idx = idx * m + c;
        }
        idx * g2.order() + x
    };
    let rel_elems: Vec<usize> = torsion
        .iter()
        .enumerate()
        .map(|(t, &j)| {
            let mut cyc = vec![0usize; moduli.len()];
            cyc[t] = d[j].to_usize().unwrap() % moduli[t];
            encode(&cyc, hs[j])
        })
        .collect();
    let rsub = psi.subgroup_generated(&rel_elems);
    let (phi, cls) = psi.quotient(&rsub)?;
    // image of (y, x2) where y = U x restricted to the torsion/eliminated rows
    let to_phi = |y: &[Int], x2: usize| -> usize {
        let cyc: Vec<usize> = torsion
            .iter()
            .enumerate()
            .map(|(t, &j)| y[j].mod_floor(&Int::from(moduli[t])).to_usize().unwrap())
            .collect();
        let mut x = x2;
        for &j in &elim {
            x = g2.op(x, pow_int(&g2, hs[j], &-y[j].clone()));
        }
        cls[encode(&cyc, x)]
    };
    let free_rows: Vec<usize> = (rho..s).collect();
    let matrix = u.select_rows(&free_rows);
    let mixed: Vec<usize> = (0..s).map(|i| to_phi(&u.col(i), g2.identity())).collect();
    let zero = zero_vec::<Int>(s);
    let finite: Vec<usize> = (0..fg.order()).map(|a| to_phi(&zero, pi2[pi1[a]])).collect();
    let q = BlockGroup::new(s - rho, Arc::new(phi));
    Ok((q, BlockMap { matrix, mixed, finite }))
}

/// The group part of a pullback `X ×_Z Y` of block maps.
#[derive(Clone, Debug)]
pub struct BlockPullback {
    pub group: BlockGroup,
    /// Columns: free basis of the pullback inside `Z^{r+s}`.
    pub free_basis: ZMatrix,
    /// Finite pullback pairs, indexed like `group.finite()`.
    pub pairs: Vec<(usize, usize)>,
    /// Central finite pair completing each free basis column to a pullback
    /// element; the identity pair unless the maps have mixed parts.
    pub sigma: Vec<(usize, usize)>,
    pub p1: BlockMap,
    pub p2: BlockMap,
}

/// Preimages of a homomorphism `Z^k → D` into a finite abelian group given
/// by the images of the basis vectors: the kernel (by Schreier generators)
/// and one preimage of every reached element.
fn finite_preimages(f: &FiniteGroup, images: &[usize]) -> (ZMatrix, HashMap<usize, ZVec>) {
    let k = images.len();
    let mut rep: HashMap<usize, ZVec> = HashMap::from([(f.identity(), zero_vec(k))]);
    let mut queue = VecDeque::from([f.identity()]);
    let mut gens: Vec<ZVec> = Vec::new();
    while let Some(x) = queue.pop_front() {
        for (i, &h) in images.iter().enumerate() {
            let y = f.op(x, h);
            let mut t = rep[&x].clone();
            t[i] += 1;
            match rep.get(&y) {
                Some(ty) => gens.push(crate::linalg::vec_sub(&t, ty)),
                None => {
                    rep.insert(y, t);
                    queue.push_back(y);
                }
            }
        }
    }
    (ZLattice::from_generators(k, &gens).basis().clone(), rep)
}

/// Kernel of a homomorphism `Z^k → D` into a finite abelian group given by
/// the images of the basis vectors.
pub(crate) fn kernel_to_finite(f: &FiniteGroup, images: &[usize]) -> ZMatrix {
    finite_preimages(f, images).0
}

/// Pullback of `f: X → Z` and `g: Y → Z` at the level of groups.
///
/// With mixed parts a free pair `(v, w)` lies over a pullback element when
/// some finite pair absorbs its defect `ψ_f(v)⁻¹ ψ_g(w)`. The pullback is
/// then `Z^k × K` through a section choosing a central finite pair for each
/// basis column, preferring pairs inside `prefer`; when no central pair
/// exists the pullback is not a block object.
pub fn pullback_groups(
    x: &BlockGroup,
    f: &BlockMap,
    y: &BlockGroup,
    g: &BlockMap,
    z: &BlockGroup,
    prefer: Option<(&IndexSet, &IndexSet)>,
) -> Result<BlockPullback> {
    let r = x.rank;
    let s = y.rank;
    let h = z.finite();
    let fx = x.finite();
    let fy = y.finite();
    let lf = integer_kernel(&f.matrix.hstack(&g.matrix.neg()));
    let mixed = f.has_mixed(z) || g.has_mixed(z);
    let free_basis = if mixed {
        let deltas: Vec<usize> = (0..lf.cols())
            .map(|c| {
                let col = lf.col(c);
                h.op(h.inv(f.mixed_eval(z, &col[..r])), g.mixed_eval(z, &col[r..]))
            })
            .collect();
        let mut absorbed = std::collections::BTreeSet::new();
        for a in 0..fx.order() {
            for b in 0..fy.order() {
                absorbed.insert(h.op(f.finite[a], h.inv(g.finite[b])));
            }
        }
        let (kc, reps) = finite_preimages(h, &deltas);
        let mut gens = kc.columns();
        gens.extend(reps.iter().filter(|(d, _)| absorbed.contains(d)).map(|(_, v)| v.clone()));
        let coef = ZLattice::from_generators(lf.cols(), &gens);
        ZLattice::from_generator_matrix(&lf.mul(coef.basis())).basis().clone()
    } else {
        ZLattice::from_generator_matrix(&lf).basis().clone()
    };
    let k = free_basis.cols();
    let sigma = if mixed {
        let (cx, cy) = (fx.center(), fy.center());
        let preferred = |a: usize, b: usize| {
            prefer.is_some_and(|(nx, ny)| nx.binary_search(&a).is_ok() && ny.binary_search(&b).is_ok())
        };
        (0..k)
            .map(|c| {
                let col = free_basis.col(c);
                let (u, w) = (f.mixed_eval(z, &col[..r]), g.mixed_eval(z, &col[r..]));
                let mut found: Option<(usize, usize)> = None;
                for &a in &cx {
                    for &b in &cy {
                        if h.op(u, f.finite[a]) == h.op(w, g.finite[b])
                            && (found.is_none() || (preferred(a, b) && !found.is_some_and(|(p, q)| preferred(p, q))))
                        {
                            found = Some((a, b));
                        }
                    }
                }
                found.ok_or_else(|| {
                    ModelError::Unsupported("pullback is not a block object (no central section)".into())
                })
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![(fx.identity(), fy.identity()); k]
    };
    let prod = fx.product(fy);
    let m = fy.order();
    let members: Vec<usize> = (0..prod.order())
        .filter(|&p| f.finite[p / m] == g.finite[p % m])
        .collect();
    let (fp, emb) = prod.subgroup_as_group(&members);
    let pairs: Vec<(usize, usize)> = emb.iter().map(|&p| (p / m, p % m)).collect();
    let top: Vec<usize> = (0..r).collect();
    let bot: Vec<usize> = (r..r + s).collect();
    let p1 = BlockMap {
        matrix: free_basis.select_rows(&top),
        mixed: sigma.iter().map(|p| p.0).collect(),
        finite: pairs.iter().map(|p| p.0).collect(),
    };
    let p2 = BlockMap {
        matrix: free_basis.select_rows(&bot),
        mixed: sigma.iter().map(|p| p.1).collect(),
        finite: pairs.iter().map(|p| p.1).collect(),
    };
    Ok(BlockPullback {
        group: BlockGroup::new(k, Arc::new(fp)),
        free_basis,
        pairs,
        sigma,
        p1,
        p2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_i64s;

    #[test]
    fn cokernel_of_doubling_folds_torsion() {
        let z = BlockGroup::free(1);
        let (q, map) = quotient_block(&z, &[(from_i64s(&[2]), 0)]).unwrap();
        assert_eq!(q.rank(), 0);
        assert_eq!(q.finite().order(), 2);
        assert_eq!(map.apply(&q, &(from_i64s(&[3]), 0)).1, map.mixed[0]);
        assert_ne!(map.mixed[0], q.finite().identity());
    }

    #[test]
    fn quotient_of_z2_by_diagonal() {
        let z2 = BlockGroup::free(2);
        let (q, map) = quotient_block(&z2, &[(from_i64s(&[1, 1]), 0)]).unwrap();
        assert_eq!((q.rank(), q.finite().order()), (1, 1));
        let a = map.apply(&q, &(from_i64s(&[1, 0]), 0));
        let b = map.apply(&q, &(from_i64s(&[0, -1]), 0));
        assert_eq!(a, b);
        assert_ne!(a.0, from_i64s::<Int>(&[0]));
    }

    #[test]
    fn abelianizing_s3_through_relations() {
        let s3 = BlockGroup::finite_only(FiniteGroup::symmetric(3));
        let f = s3.finite().clone();
        let rels: Vec<BlockElem> = f.commutator_subgroup().into_iter().map(|c| (vec![], c)).collect();
        let (q, _) = quotient_block(&s3, &rels).unwrap();
        assert_eq!(q.finite().order(), 2);
    }

    #[test]
    fn kernel_pair_of_mod_two() {
        let z = BlockGroup::free(1);
        let (q, map) = quotient_block(&z, &[(from_i64s(&[2]), 0)]).unwrap();
        let pb = pullback_groups(&z, &map, &z, &map, &q, None).unwrap();
        assert_eq!(pb.group.rank(), 2);
        let lat = ZLattice::from_generator_matrix(&pb.free_basis);
        assert!(lat.contains(&from_i64s(&[1, 3])));
        assert!(!lat.contains(&from_i64s(&[1, 0])));
    }

    #[test]
    fn graph_type_pullback_through_a_central_section() {
        let z = BlockGroup::free(1);
        let (q, map) = quotient_block(&z, &[(from_i64s(&[2]), 0)]).unwrap();
        let c2 = BlockGroup::finite_only(FiniteGroup::cyclic(2));
        let iso = BlockMap::pure(Matrix::zeros(0, 0), vec![0, map.mixed[0]], &q);
        // {(n, n mod 2)} is a copy of Z
        let pb = pullback_groups(&z, &map, &c2, &iso, &q, None).unwrap();
        assert_eq!((pb.group.rank(), pb.group.finite().order()), (1, 1));
        let one = pb.p2.apply(&c2, &(from_i64s(&[1]), 0));
        assert_eq!(map.apply(&q, &pb.p1.apply(&z, &(from_i64s(&[1]), 0))), iso.apply(&q, &one));
        assert_ne!(one.1, 0);
    }

    #[test]
    fn pullback_without_central_section_is_rejected() {
        let z = BlockGroup::free(1);
        let (q, map) = quotient_block(&z, &[(from_i64s(&[2]), 0)]).unwrap();
        let s3 = FiniteGroup::symmetric(3);
        let sign: Vec<usize> = (0..6).map(|a| usize::from(!s3.commutator_subgroup().contains(&a))).collect();
        let sign: Vec<usize> = sign.iter().map(|&e| if e == 0 { 0 } else { map.mixed[0] }).collect();
        let s3b = BlockGroup::finite_only(s3);
        let sgn = BlockMap::pure(Matrix::zeros(0, 0), sign, &q);
        assert!(pullback_groups(&z, &map, &s3b, &sgn, &q, None).is_err());
    }
}
