//! Reflections into preordered abelian groups (`C`), into abelian objects
//! (`F = A ∘ C`), group completion of cones, and the commutative/abelian
//! object predicates.

use std::collections::{HashSet, VecDeque};
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::carriers::block::{BlockCone, BlockElem, BlockGroup, BlockMap};
use crate::carriers::{cone_member, morphism_validate, GroupMap, GroupObject, PogMorphism, PreorderedGroup};
use crate::category::{block_quotient, product, word_abelianization};
use crate::error::{ModelError, Result};
use crate::carriers::word::Word;
use crate::linalg::{integer_kernel, solve_integer, zero_vec, Matrix};
use crate::monoid::FreeCone;
use crate::verdict::{Element, Verdict};
use crate::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReflectorTag {
    /// Abelianize the group, take the direct image of the cone.
    C,
    /// Replace the cone of an abelian object by its group completion.
    A,
    /// `A ∘ C`.
    F,
}

#[derive(Clone, Debug)]
pub struct ReflectionResult {
    pub reflected: Arc<PreorderedGroup>,
    pub unit: PogMorphism,
    pub tag: ReflectorTag,
}

/// `C(G, P) = (G/[G,G], η(P))`.
pub fn reflect_c(x: &Arc<PreorderedGroup>) -> Result<ReflectionResult> {
    if x.group.is_abelian() {
        return Ok(ReflectionResult {
            reflected: x.clone(),
            unit: PogMorphism::identity(x.clone()),
            tag: ReflectorTag::C,
        });
    }
    let unit = match &x.group {
        GroupObject::Block(g) => {
            let rels: Vec<BlockElem> = g
                .finite()
                .commutator_subgroup()
                .into_iter()
                .map(|c| (zero_vec(g.rank()), c))
                .collect();
            block_quotient(x, &rels)?
        }
        GroupObject::Word(w) => word_abelianization(x, w, &[])?,
    };
    Ok(ReflectionResult {
        reflected: unit.codomain.clone(),
        unit,
        tag: ReflectorTag::C,
    })
}

/// The subgroup `{a - b : a, b ∈ M}` of an abelian block group, returned
/// as a cone that is a group.
pub fn group_completion_in(g: &BlockGroup, cone: &BlockCone) -> Result<BlockCone> {
    if !g.is_abelian() {
        return Err(ModelError::Precondition("group completion inside a non-abelian group".into()));
    }
    let f = g.finite();
    Ok(BlockCone::new(
        FreeCone::group(cone.free().group_completion()),
        f.subgroup_generated(cone.finite()),
    ))
}

/// `A(G, P) = (G, grp P)` for abelian `G`.
pub fn reflect_a(x: &Arc<PreorderedGroup>) -> Result<ReflectionResult> {
    let (g, c) = x
        .as_block()
        .ok_or_else(|| ModelError::Unsupported("group completion of word cones".into()))?;
    if !g.is_abelian() {
        return Err(ModelError::Precondition("A applies to abelian objects".into()));
    }
    if c.is_group() && g.finite().is_subgroup(c.finite()) {
        return Ok(ReflectionResult {
            reflected: x.clone(),
            unit: PogMorphism::identity(x.clone()),
            tag: ReflectorTag::A,
        });
    }
    let obj = Arc::new(PreorderedGroup::block(g.clone(), group_completion_in(g, c)?)?);
    let unit = PogMorphism::new(x.clone(), obj.clone(), GroupMap::Block(BlockMap::identity(g)))?;
    Ok(ReflectionResult {
        reflected: obj,
        unit,
        tag: ReflectorTag::A,
    })
}

/// `F = A ∘ C`, with unit the composite of the two units.
pub fn reflect_f(x: &Arc<PreorderedGroup>) -> Result<ReflectionResult> {
    let c = reflect_c(x)?;
    let a = reflect_a(&c.reflected)?;
    let unit = c.unit.then(&a.unit)?;
    Ok(ReflectionResult {
        reflected: a.reflected,
        unit,
        tag: ReflectorTag::F,
    })
}

/// Applies the reflector of `tag`.
pub fn reflect(x: &Arc<PreorderedGroup>, tag: ReflectorTag) -> Result<ReflectionResult> {
    match tag {
        ReflectorTag::C => reflect_c(x),
        ReflectorTag::A => reflect_a(x),
        ReflectorTag::F => reflect_f(x),
    }
}

/// Result of the bounded Grothendieck construction.
#[derive(Clone, Debug)]
pub struct Grothendieck {
    /// Monoid elements reached as sums of at most `bound` generators.
    pub ball: Vec<BlockElem>,
    /// One representative pair per class of `(M_B × M_B)/∼`.
    pub classes: Vec<(usize, usize)>,
    /// Class of every pair `(i, j)` of ball indices.
    pub class_of: Vec<Vec<usize>>,
    /// `j(m) = [(m, 0)]` for each ball element.
    pub insertion: Vec<usize>,
}

fn monoid_ball(g: &BlockGroup, gens: &[BlockElem], bound: u32) -> Vec<BlockElem> {
    let mut ball = vec![g.identity()];
    let mut seen: HashSet<BlockElem> = ball.iter().cloned().collect();
    let mut frontier = ball.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for x in &frontier {
            for s in gens {
                let y = g.op(x, s);
                if seen.insert(y.clone()) {
                    next.push(y.clone());
                    ball.push(y);
                }
            }
        }
        frontier = next;
    }
    ball
}

/// The quotient `(M × M)/∼` with `(m1,m2) ∼ (n1,n2)` iff
/// `m1 + n2 + k = m2 + n1 + k` for some `k`, on the monoid ball of radius
/// `bound` inside an abelian block group. The ambient is cancellative, so
/// `k = 0` is the only witness that needs trying.
pub fn grothendieck_group(g: &BlockGroup, gens: &[BlockElem], bound: u32) -> Result<Grothendieck> {
    if !g.is_abelian() {
        return Err(ModelError::Precondition("the monoid is not commutative".into()));
    }
    let ball = monoid_ball(g, gens, bound);
    let n = ball.len();
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let mut class_of = vec![vec![usize::MAX; n]; n];
    let small: Vec<(Vec<i64>, usize)> = ball
        .iter()
        .map(|x| (x.0.iter().map(|v| v.to_i64().expect("small coordinates")).collect(), x.1))
        .collect();
    let f = g.finite();
    let add = |a: usize, b: usize| -> (Vec<i64>, usize) {
        let v = small[a].0.iter().zip(&small[b].0).map(|(x, y)| x + y).collect();
        (v, f.op(small[a].1, small[b].1))
    };
    for i in 0..n {
        for j in 0..n {
            let found = classes.iter().position(|&(p, q)| add(i, q) == add(j, p));
            class_of[i][j] = match found {
                Some(c) => c,
                None => {
                    classes.push((i, j));
                    classes.len() - 1
                }
            };
        }
    }
    let insertion = (0..n).map(|i| class_of[i][0]).collect();
    Ok(Grothendieck {
        ball,
        classes,
        class_of,
        insertion,
    })
}

/// Compares the bounded Grothendieck group of a cone with its difference
/// subgroup through `Φ([(m1, m2)]) = m1 - m2`: Φ must be well defined and
/// injective, land in the difference subgroup, and cover the ball of that
/// subgroup of radius `bound` in the cone generators.
pub fn completion_lemma_check(g: &BlockGroup, cone: &BlockCone, bound: u32) -> Result<Verdict> {
    let gens = cone.generators(g);
    let gr = grothendieck_group(g, &gens, bound)?;
    let diff = |i: usize, j: usize| g.op(&gr.ball[i], &g.inv(&gr.ball[j]));
    let n = gr.ball.len();
    let mut phi: Vec<Option<BlockElem>> = vec![None; gr.classes.len()];
    for i in 0..n {
        for j in 0..n {
            let c = gr.class_of[i][j];
            let d = diff(i, j);
            match &phi[c] {
                None => phi[c] = Some(d),
                Some(prev) if *prev != d => {
                    return Ok(Verdict::fails(
                        "Φ is not well defined on a class",
                        vec![g.element(prev), g.element(&d)],
                    ))
                }
                _ => {}
            }
        }
    }
    let completion = group_completion_in(g, cone)?;
    let mut image: HashSet<BlockElem> = HashSet::new();
    for d in phi.into_iter().flatten() {
        if !completion.contains(&d) {
            return Ok(Verdict::fails("Φ leaves the difference subgroup", vec![g.element(&d)]));
        }
        if !image.insert(d.clone()) {
            return Ok(Verdict::fails("Φ is not injective", vec![g.element(&d)]));
        }
    }
    let mut signed = gens.clone();
    signed.extend(gens.iter().map(|x| g.inv(x)));
    for d in monoid_ball(g, &signed, bound) {
        if !image.contains(&d) {
            return Ok(Verdict::fails("ball element of the difference subgroup not reached", vec![g.element(&d)]));
        }
    }
    Ok(Verdict::holds(format!(
        "{} classes map bijectively onto their differences",
        gr.classes.len()
    )))
}

/// A commutative object is exactly an abelian group with any cone.
pub fn is_commutative_object(x: &PreorderedGroup) -> Verdict {
    match &x.group {
        GroupObject::Block(g) => {
            let f = g.finite();
            for a in f.generators() {
                for b in f.generators() {
                    if !f.commutes(a, b) {
                        let e = |c| g.element(&(zero_vec(g.rank()), c));
                        return Verdict::fails("group is not abelian", vec![e(a), e(b)]);
                    }
                }
            }
            Verdict::holds("group is abelian")
        }
        GroupObject::Word(w) => {
            let k = w.num_gens();
            for i in 0..k {
                for j in 0..i {
                    if w.gens()[i].mul(&w.gens()[j]) != w.gens()[j].mul(&w.gens()[i]) {
                        return Verdict::fails(
                            "group is not abelian",
                            vec![w.element(&w.gens()[j]), w.element(&w.gens()[i])],
                        );
                    }
                }
            }
            Verdict::holds("generators commute")
        }
    }
}

/// The candidate multiplication `(x, y) ↦ x + y` checked as a morphism
/// `X × X → X` that is unital on both sides.
pub fn commutative_oracle(x: &Arc<PreorderedGroup>) -> Result<Verdict> {
    match &x.group {
        GroupObject::Block(g) => {
            let prod = product(x, x)?;
            let r = g.rank();
            let m = g.finite().order();
            let f = g.finite();
            let map = BlockMap::pure(
                Matrix::identity(r).hstack(&Matrix::identity(r)),
                (0..m * m).map(|p| f.op(p / m, p % m)).collect(),
                g,
            );
            let phi = PogMorphism::new(prod.object.clone(), x.clone(), GroupMap::Block(map))?;
            let v = morphism_validate(&phi)?;
            if let Verdict::Fails(w) = v {
                return Ok(Verdict::Fails(w));
            }
            // unitality: φ(x, 0) = x = φ(0, x)
            for gen in g.generators() {
                let e = g.element(&gen);
                let l = (gen.0.iter().cloned().chain(std::iter::repeat(Int::from(0)).take(r)).collect(), gen.1 * m);
                let rr = (std::iter::repeat(Int::from(0)).take(r).chain(gen.0.iter().cloned()).collect(), gen.1);
                let pg = prod.object.group.as_block().unwrap();
                if phi.apply(&pg.element(&l))? != e || phi.apply(&pg.element(&rr))? != e {
                    return Ok(Verdict::fails("candidate is not unital", vec![e]));
                }
            }
            Ok(Verdict::holds("x + y is a unital morphism X × X → X"))
        }
        GroupObject::Word(w) => {
            let ball = w.ball();
            for a in &ball.elems {
                for b in &ball.elems {
                    if a.mul(b) != b.mul(a) {
                        return Ok(Verdict::fails(
                            "x + y fails the homomorphism law",
                            vec![w.element(a), w.element(b)],
                        ));
                    }
                }
            }
            Ok(Verdict::unknown(w.bound()))
        }
    }
}

/// Abelian group whose cone is a subgroup.
pub fn is_abelian_object(x: &PreorderedGroup) -> Verdict {
    is_commutative_object(x).and(|| x.cone_is_group())
}

/// The candidate `(x, y) ↦ -x + y` must send `P × P` into `P`; checked on
/// pairs of cone generators and the identity.
pub fn abelian_oracle(x: &Arc<PreorderedGroup>) -> Result<Verdict> {
    let comm = commutative_oracle(x)?;
    if comm.is_fails() {
        return Ok(comm);
    }
    let mut gens: Vec<Element> = vec![x.group.identity()];
    gens.extend(x.cone_generators());
    let mut out = comm;
    for a in &gens {
        let na = x.group.inv(a)?;
        for b in &gens {
            let d = x.group.op(&na, b)?;
            match cone_member(x, &d)? {
                Verdict::Fails(_) => {
                    return Ok(Verdict::fails("-x + y leaves the cone", vec![a.clone(), b.clone()]))
                }
                Verdict::Unknown { bound, .. } => out = out.and(|| Verdict::unknown(bound)),
                Verdict::Holds(_) => {}
            }
        }
    }
    Ok(out.and(|| Verdict::holds("-x + y maps P × P into P")))
}

/// Preimages under a surjective block map of every free basis vector
/// (with trivial finite part) and of every finite element of the target.
pub fn block_section(
    src: &BlockGroup,
    dst: &BlockGroup,
    m: &BlockMap,
) -> Option<(Vec<BlockElem>, Vec<BlockElem>)> {
    let fd = dst.finite();
    let k = integer_kernel(&m.matrix);
    let mut steps: Vec<(usize, BlockElem)> = (0..k.cols())
        .map(|j| (m.mixed_eval(dst, &k.col(j)), (k.col(j), src.finite().identity())))
        .collect();
    for a in src.finite().generators() {
        steps.push((m.finite[a], (zero_vec(src.rank()), a)));
    }
    let mut fin_pre: Vec<Option<BlockElem>> = vec![None; fd.order()];
    fin_pre[fd.identity()] = Some(src.identity());
    let mut queue = VecDeque::from([fd.identity()]);
    while let Some(x) = queue.pop_front() {
        for (img, pre) in &steps {
            let y = fd.op(x, *img);
            if fin_pre[y].is_none() {
                fin_pre[y] = Some(src.op(fin_pre[x].as_ref().unwrap(), pre));
                queue.push_back(y);
            }
        }
    }
    let fin_pre: Vec<BlockElem> = fin_pre.into_iter().collect::<Option<_>>()?;
    let mut free_pre = Vec::new();
    for j in 0..dst.rank() {
        let mut e = zero_vec::<Int>(dst.rank());
        e[j] = Int::from(1);
        let v = solve_integer(&m.matrix, &e)?;
        let x = (v, src.finite().identity());
        let img = m.apply(dst, &x);
        free_pre.push(src.op(&x, &fin_pre[fd.inv(img.1)]));
    }
    Some((free_pre, fin_pre))
}

/// Preimages, as domain elements, of the generators of a unit's block
/// codomain: free basis vectors first, then every finite element.
pub fn section_elements(unit: &PogMorphism) -> Result<(Vec<Element>, Vec<Element>)> {
    let not_onto = || ModelError::Precondition("map is not surjective".into());
    if let Some((s, d, m)) = unit.as_block() {
        let (f, t) = block_section(s, d, m).ok_or_else(not_onto)?;
        return Ok((
            f.iter().map(|x| s.element(x)).collect(),
            t.iter().map(|x| s.element(x)).collect(),
        ));
    }
    let (src, lin) = unit
        .linearization()
        .ok_or_else(|| ModelError::Unsupported("section of this map".into()))?;
    let d = unit.dst_block().unwrap();
    let w = unit.domain.group.as_word().unwrap();
    let (f, t) = block_section(&src, d, &lin).ok_or_else(not_onto)?;
    let to_word = |x: &BlockElem| {
        let word: Word = x
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
            .map(|(i, c)| (i, c.to_i64().expect("small exponent")))
            .collect();
        w.element_of_word(&word)
    };
    Ok((f.iter().map(to_word).collect(), t.iter().map(to_word).collect()))
}

/// The map `R(m) : R(X) → R(Y)` with `R(m) ∘ η_X = η_Y ∘ m`.
pub fn induced_map(m: &PogMorphism, rx: &ReflectionResult, ry: &ReflectionResult) -> Result<PogMorphism> {
    if rx.unit.codomain != rx.reflected || ry.unit.codomain != ry.reflected {
        return Err(ModelError::Backend("reflection data is inconsistent".into()));
    }
    let (gx, _) = rx.reflected.block_parts()?;
    let (gy, _) = ry.reflected.block_parts()?;
    let (free_pre, fin_pre) = section_elements(&rx.unit)?;
    let image = |e: &Element| -> Result<BlockElem> {
        let y = ry.unit.apply(&m.apply(e)?)?;
        gy.from_element(&y).ok_or_else(|| ModelError::Backend("bad image".into()))
    };
    let frees: Vec<BlockElem> = free_pre.iter().map(image).collect::<Result<_>>()?;
    let fins: Vec<BlockElem> = fin_pre.iter().map(image).collect::<Result<_>>()?;
    if fins.iter().any(|x| !crate::linalg::is_zero_vec(&x.0)) {
        return Err(ModelError::Backend("torsion element sent to a free element".into()));
    }
    let map = BlockMap {
        matrix: Matrix::from_cols(&frees.iter().map(|x| x.0.clone()).collect::<Vec<_>>(), gy.rank()),
        mixed: frees.iter().map(|x| x.1).collect(),
        finite: fins.iter().map(|x| x.1).collect(),
    };
    let _ = gx;
    PogMorphism::new(rx.reflected.clone(), ry.reflected.clone(), GroupMap::Block(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteGroup;
    use crate::linalg::{from_i64s, Lattice};

    fn n_in_z() -> Arc<PreorderedGroup> {
        let g = BlockGroup::free(1);
        Arc::new(PreorderedGroup::block(g, BlockCone::new(FreeCone::orthant(1), vec![0])).unwrap())
    }

    #[test]
    fn reflections_of_n_in_z() {
        let x = n_in_z();
        let c = reflect_c(&x).unwrap();
        assert!(Arc::ptr_eq(&c.reflected, &x));
        let f = reflect_f(&x).unwrap();
        let (_, cone) = f.reflected.block_parts().unwrap();
        assert!(cone.is_group());
        assert!(!f.unit.is_regular_epi().unwrap());
        assert!(is_abelian_object(&f.reflected).is_holds());
    }

    #[test]
    fn s3_with_a3_collapses() {
        let s3 = FiniteGroup::symmetric(3);
        let x = Arc::new(PreorderedGroup::finite(s3.clone(), s3.commutator_subgroup()).unwrap());
        let c = reflect_c(&x).unwrap();
        let (g, cone) = c.reflected.block_parts().unwrap();
        assert_eq!(g.finite().order(), 2);
        assert_eq!(cone.finite().len(), 1);
        assert!(c.unit.is_regular_epi().unwrap());
    }

    #[test]
    fn commutative_not_abelian() {
        let x = n_in_z();
        assert!(is_commutative_object(&x).is_holds());
        assert!(commutative_oracle(&x).unwrap().is_holds());
        assert!(is_abelian_object(&x).is_fails());
        assert!(abelian_oracle(&x).unwrap().is_fails());
        let s3 = FiniteGroup::symmetric(3);
        let y = Arc::new(PreorderedGroup::finite(s3, vec![0]).unwrap());
        assert!(is_commutative_object(&y).is_fails());
        assert!(commutative_oracle(&y).unwrap().is_fails());
    }

    #[test]
    fn induced_map_on_sign_quotient() {
        let s3 = FiniteGroup::symmetric(3);
        let x = Arc::new(PreorderedGroup::finite(s3.clone(), s3.all()).unwrap());
        let rx = reflect_c(&x).unwrap();
        let id = PogMorphism::identity(x.clone());
        let rm = induced_map(&id, &rx, &rx).unwrap();
        assert!(morphism_validate(&rm).unwrap().is_holds());
        let (_, _, b) = rm.as_block().unwrap();
        assert_eq!(b.finite, vec![0, 1]);
    }

    #[test]
    fn completions() {
        let g = BlockGroup::free(1);
        let two_n = BlockCone::new(
            FreeCone::new(Lattice::zero(1), vec![from_i64s(&[2])], from_i64s(&[1])).unwrap(),
            vec![0],
        );
        let c = group_completion_in(&g, &two_n).unwrap();
        assert!(c.free().lattice().contains(&from_i64s(&[2])));
        assert!(!c.free().lattice().contains(&from_i64s(&[1])));
        assert!(completion_lemma_check(&g, &two_n, 8).unwrap().is_holds());
        let gr = grothendieck_group(&g, &two_n.generators(&g), 4).unwrap();
        assert_eq!(gr.classes.len(), 9);
    }
}
