//! Morphisms of preordered groups: validation and classification.

use std::sync::{Arc, OnceLock};

use num_traits::{One, Zero};

use crate::error::{ModelError, Result};
use crate::linalg::{column_hnf, integer_kernel, zero_vec, Lattice, Matrix};
use crate::monoid::{FreeCone, ImageOptions};
use crate::verdict::{Element, Verdict, WordElement};
use crate::{Int, ZMatrix, ZVec};

use super::block::{BlockCone, BlockElem, BlockGroup, BlockMap};
use super::object::{cone_member, GroupObject, PreorderedGroup};
use super::word::{eval_word, format_word, Word, WordGroup};

/// The group part of a morphism.
///
/// Word domains are described by generator images; a block domain mapping
/// into a word group must have trivial finite part and is described by the
/// images of its free basis, which must commute.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupMap {
    Block(BlockMap),
    WordToBlock(Vec<BlockElem>),
    WordToWord(Vec<ZMatrix>),
    BlockToWord(Vec<ZMatrix>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flags {
    pub mono: Verdict,
    pub epi: Verdict,
    pub regular_epi: Verdict,
}

#[derive(Clone, Debug)]
pub struct PogMorphism {
    pub domain: Arc<PreorderedGroup>,
    pub codomain: Arc<PreorderedGroup>,
    pub map: GroupMap,
    flags: OnceLock<Flags>,
}

impl PartialEq for PogMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.codomain == other.codomain && self.map == other.map
    }
}

impl PogMorphism {
    /// Builds a morphism after checking shapes; homomorphism and cone
    /// conditions are left to [`morphism_validate`].
    pub fn new(domain: Arc<PreorderedGroup>, codomain: Arc<PreorderedGroup>, map: GroupMap) -> Result<Self> {
        match (&domain.group, &codomain.group, &map) {
            (GroupObject::Block(s), GroupObject::Block(d), GroupMap::Block(m)) => {
                if m.matrix.rows() != d.rank() || m.matrix.cols() != s.rank() {
                    return Err(ModelError::Dimension(format!(
                        "matrix is {}x{}, expected {}x{}",
                        m.matrix.rows(),
                        m.matrix.cols(),
                        d.rank(),
                        s.rank()
                    )));
                }
                if m.finite.len() != s.finite().order() || m.mixed.len() != s.rank() {
                    return Err(ModelError::Dimension(format!(
                        "finite map has length {}, expected {}",
                        m.finite.len(),
                        s.finite().order()
                    )));
                }
                if let Some(&bad) = m.finite.iter().chain(&m.mixed).find(|&&a| a >= d.finite().order()) {
                    return Err(ModelError::Dimension(format!("finite image {bad} out of range")));
                }
            }
            (GroupObject::Word(s), GroupObject::Block(d), GroupMap::WordToBlock(imgs)) => {
                if imgs.len() != s.num_gens() {
                    return Err(ModelError::Dimension("one image per generator is required".into()));
                }
                if imgs.iter().any(|x| x.0.len() != d.rank() || x.1 >= d.finite().order()) {
                    return Err(ModelError::Dimension("generator image outside the codomain".into()));
                }
            }
            (GroupObject::Word(s), GroupObject::Word(d), GroupMap::WordToWord(imgs)) => {
                if imgs.len() != s.num_gens() {
                    return Err(ModelError::Dimension("one image per generator is required".into()));
                }
                if imgs.iter().any(|m| m.rows() != d.dim() || m.cols() != d.dim()) {
                    return Err(ModelError::Dimension("generator image of the wrong size".into()));
                }
            }
            (GroupObject::Block(s), GroupObject::Word(d), GroupMap::BlockToWord(imgs)) => {
                if s.finite().order() != 1 {
                    return Err(ModelError::Unsupported(
                        "maps from a block group with torsion into a word group".into(),
                    ));
                }
                if imgs.len() != s.rank() || imgs.iter().any(|m| m.rows() != d.dim() || m.cols() != d.dim()) {
                    return Err(ModelError::Dimension("one square image per free generator is required".into()));
                }
            }
            _ => return Err(ModelError::Backend("map does not match the backends of its ends".into())),
        }
        Ok(PogMorphism {
            domain,
            codomain,
            map,
            flags: OnceLock::new(),
        })
    }

    /// A block map given by matrix and finite map, without mixed part.
    pub fn block(
        domain: Arc<PreorderedGroup>,
        codomain: Arc<PreorderedGroup>,
        matrix: ZMatrix,
        finite: Vec<usize>,
    ) -> Result<Self> {
        let dst = codomain.group.as_block().ok_or_else(|| ModelError::Backend("block codomain expected".into()))?;
        let map = BlockMap::pure(matrix, finite, dst);
        Self::new(domain, codomain, GroupMap::Block(map))
    }

    pub fn identity(x: Arc<PreorderedGroup>) -> Self {
        let map = match &x.group {
            GroupObject::Block(b) => GroupMap::Block(BlockMap::identity(b)),
            GroupObject::Word(w) => GroupMap::WordToWord(w.gens().to_vec()),
        };
        Self::new(x.clone(), x, map).expect("identity has matching shapes")
    }

    /// The zero morphism; defined whenever the codomain is a block object
    /// or the domain is torsion-free.
    pub fn zero(x: Arc<PreorderedGroup>, y: Arc<PreorderedGroup>) -> Result<Self> {
        let map = match (&x.group, &y.group) {
            (GroupObject::Block(s), GroupObject::Block(d)) => GroupMap::Block(BlockMap::zero(s, d)),
            (GroupObject::Word(s), GroupObject::Block(d)) => GroupMap::WordToBlock(vec![d.identity(); s.num_gens()]),
            (GroupObject::Word(s), GroupObject::Word(d)) => GroupMap::WordToWord(vec![d.identity(); s.num_gens()]),
            (GroupObject::Block(s), GroupObject::Word(d)) => GroupMap::BlockToWord(vec![d.identity(); s.rank()]),
        };
        Self::new(x, y, map)
    }

    pub fn src_block(&self) -> Option<&BlockGroup> {
        self.domain.group.as_block()
    }

    pub fn dst_block(&self) -> Option<&BlockGroup> {
        self.codomain.group.as_block()
    }

    /// `(src, dst, map)` for block-to-block morphisms.
    pub fn as_block(&self) -> Option<(&BlockGroup, &BlockGroup, &BlockMap)> {
        match (&self.domain.group, &self.codomain.group, &self.map) {
            (GroupObject::Block(s), GroupObject::Block(d), GroupMap::Block(m)) => Some((s, d, m)),
            _ => None,
        }
    }

    pub fn block_parts(&self) -> Result<(&BlockGroup, &BlockGroup, &BlockMap)> {
        self.as_block()
            .ok_or_else(|| ModelError::Backend("operation needs a block morphism".into()))
    }

    /// For a word domain and an abelian block codomain the map factors
    /// through `Z^k` (k generators); this is that factorization.
    pub fn linearization(&self) -> Option<(BlockGroup, BlockMap)> {
        let (GroupObject::Word(s), GroupObject::Block(d), GroupMap::WordToBlock(imgs)) =
            (&self.domain.group, &self.codomain.group, &self.map)
        else {
            return None;
        };
        if !d.is_abelian() {
            return None;
        }
        let cols: Vec<ZVec> = imgs.iter().map(|x| x.0.clone()).collect();
        let map = BlockMap {
            matrix: Matrix::from_cols(&cols, d.rank()),
            mixed: imgs.iter().map(|x| x.1).collect(),
            finite: vec![d.finite().identity()],
        };
        Some((BlockGroup::free(s.num_gens()), map))
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        match (&self.domain.group, &self.codomain.group, &self.map) {
            (GroupObject::Block(s), GroupObject::Block(d), GroupMap::Block(m)) => {
                let e = s.from_element(x).ok_or_else(|| not_in_domain(x))?;
                Ok(d.element(&m.apply(d, &e)))
            }
            (GroupObject::Word(_), GroupObject::Block(d), GroupMap::WordToBlock(imgs)) => {
                let Element::Word(w) = x else { return Err(not_in_domain(x)) };
                Ok(d.element(&eval_block(d, imgs, &w.word)))
            }
            (GroupObject::Word(s), GroupObject::Word(d), GroupMap::WordToWord(imgs)) => {
                let Element::Word(w) = x else { return Err(not_in_domain(x)) };
                let _ = s;
                Ok(d.element(&eval_matrix(d, imgs, &w.word)))
            }
            (GroupObject::Block(s), GroupObject::Word(d), GroupMap::BlockToWord(imgs)) => {
                let e = s.from_element(x).ok_or_else(|| not_in_domain(x))?;
                Ok(d.element(&eval_free(d, imgs, &e.0)))
            }
            _ => unreachable!("checked on construction"),
        }
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PogMorphism) -> Result<PogMorphism> {
        if self.codomain != next.domain {
            return Err(ModelError::Backend("morphisms are not composable".into()));
        }
        let map = match (&self.map, &next.map) {
            (GroupMap::Block(a), GroupMap::Block(b)) => {
                GroupMap::Block(a.then(b, next.dst_block().unwrap()))
            }
            (GroupMap::WordToBlock(imgs), GroupMap::Block(b)) => {
                let d = next.dst_block().unwrap();
                GroupMap::WordToBlock(imgs.iter().map(|x| b.apply(d, x)).collect())
            }
            (GroupMap::Block(a), GroupMap::BlockToWord(imgs)) => {
                let mid = self.dst_block().unwrap();
                let w = next.codomain.group.as_word().unwrap();
                let _ = mid;
                GroupMap::BlockToWord(
                    (0..a.matrix.cols())
                        .map(|j| eval_free(w, imgs, &a.matrix.col(j)))
                        .collect(),
                )
            }
            _ => {
                let gens = self.domain.group.generators();
                let images = gens
                    .iter()
                    .map(|g| next.apply(&self.apply(g)?))
                    .collect::<Result<Vec<_>>>()?;
                match (&self.domain.group, &next.codomain.group) {
                    (GroupObject::Word(_), GroupObject::Block(d)) => GroupMap::WordToBlock(
                        images.iter().map(|e| d.from_element(e).unwrap()).collect(),
                    ),
                    (GroupObject::Word(_), GroupObject::Word(_)) => GroupMap::WordToWord(
                        images.iter().map(|e| next.codomain.group.matrix_of(e).unwrap()).collect(),
                    ),
                    (GroupObject::Block(s), GroupObject::Word(_)) => GroupMap::BlockToWord(
                        images[..s.rank()]
                            .iter()
                            .map(|e| next.codomain.group.matrix_of(e).unwrap())
                            .collect(),
                    ),
                    (GroupObject::Block(s), GroupObject::Block(d)) => {
                        // through a word group; the torsion-free domain has no finite part
                        let cols: Vec<ZVec> = images[..s.rank()]
                            .iter()
                            .map(|e| d.from_element(e).unwrap().0)
                            .collect();
                        GroupMap::Block(BlockMap {
                            matrix: Matrix::from_cols(&cols, d.rank()),
                            mixed: images[..s.rank()].iter().map(|e| d.from_element(e).unwrap().1).collect(),
                            finite: vec![d.finite().identity(); s.finite().order()],
                        })
                    }
                }
            }
        };
        PogMorphism::new(self.domain.clone(), next.codomain.clone(), map)
    }

    /// Cached mono/epi/regular-epi classification.
    pub fn flags(&self) -> Result<&Flags> {
        if let Some(f) = self.flags.get() {
            return Ok(f);
        }
        let f = compute_flags(self)?;
        Ok(self.flags.get_or_init(|| f))
    }

    pub fn is_regular_epi(&self) -> Result<bool> {
        Ok(self.flags()?.regular_epi.is_holds())
    }

    /// Images of the domain's cone generators.
    pub fn cone_generator_images(&self) -> Result<Vec<Element>> {
        self.domain.cone_generators().iter().map(|g| self.apply(g)).collect()
    }
}

fn not_in_domain(x: &Element) -> ModelError {
    ModelError::Backend(format!("{x} is not an element of the domain"))
}

pub fn eval_block(d: &BlockGroup, imgs: &[BlockElem], w: &Word) -> BlockElem {
    eval_word(w, d.identity(), imgs, |a, b| d.op(a, b), |a| d.inv(a))
}

pub fn eval_matrix(d: &WordGroup, imgs: &[ZMatrix], w: &Word) -> ZMatrix {
    eval_word(w, d.identity(), imgs, |a, b| a.mul(b), |a| d.inv(a))
}

/// `Π imgs[j]^{v_j}` for commuting images.
pub fn eval_free(d: &WordGroup, imgs: &[ZMatrix], v: &[Int]) -> ZMatrix {
    let w: Word = v
        .iter()
        .enumerate()
        .filter(|(_, k)| !k.is_zero())
        .map(|(j, k)| (j, i64::try_from(k).expect("exponent too large")))
        .collect();
    eval_matrix(d, imgs, &w)
}

fn word_elem(d: &WordGroup, m: ZMatrix) -> Element {
    d.element(&m)
}

/// Homomorphism check for a word domain: exact against a presentation,
/// otherwise against the relations met inside the ball.
fn word_hom_check<E: Clone + PartialEq>(
    s: &WordGroup,
    id: E,
    imgs: &[E],
    op: impl Fn(&E, &E) -> E,
    inv: impl Fn(&E) -> E,
    show: impl Fn(&E) -> Element,
) -> Verdict {
    let ev = |w: &Word| eval_word(w, id.clone(), imgs, &op, &inv);
    if let Some(rels) = s.relators() {
        for r in rels {
            let img = ev(r);
            if img != id {
                return Verdict::fails(
                    format!("relator {} is not sent to the identity", format_word(r, s.names())),
                    vec![show(&img)],
                );
            }
        }
        return Verdict::holds("generator images satisfy the presentation");
    }
    let ball = s.ball();
    let images: Vec<E> = ball.words.iter().map(|w| ev(w)).collect();
    for (i, w) in ball.words.iter().enumerate() {
        for g in 0..s.num_gens() {
            for e in [1i64, -1] {
                let m = if e > 0 {
                    ball.elems[i].mul(&s.gens()[g])
                } else {
                    ball.elems[i].mul(&s.inv(&s.gens()[g]))
                };
                if let Some(j) = ball.position(&m) {
                    let step = if e > 0 { imgs[g].clone() } else { inv(&imgs[g]) };
                    if op(&images[i], &step) != images[j] {
                        let mut lhs = w.clone();
                        super::word::push_letter(&mut lhs, g, e);
                        let rel = super::word::concat(&lhs, &super::word::inverse_word(&ball.words[j]));
                        return Verdict::fails(
                            format!("relator {} is not sent to the identity", format_word(&rel, s.names())),
                            vec![show(&ev(&rel))],
                        );
                    }
                }
            }
        }
    }
    Verdict::unknown(s.bound())
}

/// Homomorphism law and cone-generator images.
pub fn morphism_validate(m: &PogMorphism) -> Result<Verdict> {
    let hom = match (&m.domain.group, &m.codomain.group, &m.map) {
        (GroupObject::Block(s), GroupObject::Block(d), GroupMap::Block(b)) => b.validate(s, d)?,
        (GroupObject::Word(s), GroupObject::Block(d), GroupMap::WordToBlock(imgs)) => word_hom_check(
            s,
            d.identity(),
            imgs,
            |a, b| d.op(a, b),
            |a| d.inv(a),
            |x| d.element(x),
        ),
        (GroupObject::Word(s), GroupObject::Word(d), GroupMap::WordToWord(imgs)) => {
            if imgs.iter().any(|g| super::super::linalg::unimodular_inverse(g).is_none()) {
                return Err(ModelError::Malformed("generator image is not invertible".into()));
            }
            word_hom_check(s, d.identity(), imgs, |a, b| a.mul(b), |a| d.inv(a), |x| word_elem(d, x.clone()))
        }
        (GroupObject::Block(_), GroupObject::Word(d), GroupMap::BlockToWord(imgs)) => {
            let mut v = Verdict::holds("commuting images of free generators");
            'outer: for i in 0..imgs.len() {
                if super::super::linalg::unimodular_inverse(&imgs[i]).is_none() {
                    return Err(ModelError::Malformed("generator image is not invertible".into()));
                }
                for j in 0..i {
                    if imgs[i].mul(&imgs[j]) != imgs[j].mul(&imgs[i]) {
                        v = Verdict::fails(
                            "images of free generators do not commute",
                            vec![d.element(&imgs[j]), d.element(&imgs[i])],
                        );
                        break 'outer;
                    }
                }
            }
            v
        }
        _ => unreachable!("checked on construction"),
    };
    if hom.is_fails() {
        return Ok(hom);
    }
    let mut cone = Verdict::holds("cone generators land in the codomain cone");
    for g in m.domain.cone_generators() {
        let img = m.apply(&g)?;
        match cone_member(&m.codomain, &img)? {
            Verdict::Fails(_) => {
                return Ok(Verdict::fails(
                    "cone generator sent outside the codomain cone",
                    vec![g, img],
                ))
            }
            Verdict::Unknown { bound, .. } => cone = Verdict::unknown(bound),
            Verdict::Holds(_) => {}
        }
    }
    Ok(hom.and(|| cone))
}

fn e_vec(n: usize, i: usize) -> ZVec {
    let mut v = zero_vec::<Int>(n);
    v[i] = Int::one();
    v
}

/// Injectivity of a block map (with mixed part).
pub fn block_mono(s: &BlockGroup, d: &BlockGroup, m: &BlockMap) -> Verdict {
    let k = integer_kernel(&m.matrix);
    if k.cols() > 0 {
        let v = k.col(0);
        let a = m.mixed_eval(d, &v);
        let ord = d.finite().element_order(a);
        let v: ZVec = v.iter().map(|x| x * Int::from(ord)).collect();
        return Verdict::fails("nonzero element of the kernel", vec![s.element(&(v, s.finite().identity()))]);
    }
    let e = d.finite().identity();
    if let Some(a) = (0..s.finite().order()).find(|&a| a != s.finite().identity() && m.finite[a] == e) {
        return Verdict::fails(
            "nonzero element of the kernel",
            vec![s.element(&(zero_vec(s.rank()), a))],
        );
    }
    Verdict::holds("trivial kernel")
}

/// Surjectivity of a block map (with mixed part).
pub fn block_epi(s: &BlockGroup, d: &BlockGroup, m: &BlockMap) -> Verdict {
    let _ = s;
    let lat = Lattice::from_generator_matrix(&m.matrix);
    if let Some(i) = (0..d.rank()).find(|&i| !lat.contains(&e_vec(d.rank(), i))) {
        return Verdict::fails(
            "element outside the image",
            vec![d.element(&(e_vec(d.rank(), i), d.finite().identity()))],
        );
    }
    let k = integer_kernel(&m.matrix);
    let mut gens: Vec<usize> = m.finite.clone();
    gens.extend((0..k.cols()).map(|j| m.mixed_eval(d, &k.col(j))));
    let sub = d.finite().subgroup_generated(&gens);
    if let Some(a) = (0..d.finite().order()).find(|a| sub.binary_search(a).is_err()) {
        return Verdict::fails("element outside the image", vec![d.element(&(zero_vec(d.rank()), a))]);
    }
    Verdict::holds("image contains every generator of the codomain")
}

/// Direct image of a block cone, preferring the codomain's functional.
pub fn block_image_cone(
    s: &BlockGroup,
    d: &BlockGroup,
    m: &BlockMap,
    cone: &BlockCone,
    hint: Option<&FreeCone>,
) -> Result<BlockCone> {
    if let Some(h) = hint {
        let opts = ImageOptions {
            functional: Some(h.functional().clone()),
            ..ImageOptions::default()
        };
        if let Ok(c) = m.image_cone(s, d, cone, &opts) {
            return Ok(c);
        }
    }
    m.image_cone(s, d, cone, &ImageOptions::default())
}

/// Whether `sub` contains all generators of `target` (the reverse inclusion
/// being known).
fn cone_covers(d: &BlockGroup, sub: &BlockCone, target: &BlockCone) -> Verdict {
    for g in target.generators(d) {
        if !sub.contains(&g) {
            return Verdict::fails("codomain cone element outside the image cone", vec![d.element(&g)]);
        }
    }
    Verdict::holds("image cone contains every codomain cone generator")
}

/// Unipotent logarithms scaled to integers, flattened.
fn unipotent_log(m: &ZMatrix) -> Option<ZVec> {
    let n = m.rows();
    let nil = m.sub(&Matrix::identity(n));
    let mut p = nil.clone();
    let mut powers = vec![nil.clone()];
    for _ in 1..n {
        p = p.mul(&nil);
        powers.push(p.clone());
    }
    if !powers[n - 1].is_zero() {
        return None;
    }
    let l: Int = (1..n.max(2) as i64).fold(Int::one(), |acc, k| num_integer::Integer::lcm(&acc, &Int::from(k)));
    let mut out = Matrix::<Int>::zeros(n, n);
    for (k, pk) in powers.iter().enumerate().take(n - 1) {
        let kk = Int::from(k as i64 + 1);
        let coef = &l / &kk * if k % 2 == 0 { Int::one() } else { -Int::one() };
        for i in 0..n {
            for j in 0..n {
                let v = out.get(i, j) + &coef * pk.get(i, j);
                out.set(i, j, v);
            }
        }
    }
    Some((0..n).flat_map(|i| out.row(i)).collect())
}

fn compute_flags(m: &PogMorphism) -> Result<Flags> {
    match (&m.domain.group, &m.codomain.group, &m.map) {
        (GroupObject::Block(s), GroupObject::Block(d), GroupMap::Block(b)) => {
            let mono = block_mono(s, d, b);
            let epi = block_epi(s, d, b);
            let regular_epi = if epi.is_holds() {
                let (_, sc) = m.domain.block_parts()?;
                let (_, dc) = m.codomain.block_parts()?;
                let img = block_image_cone(s, d, b, sc, Some(dc.free()))?;
                cone_covers(d, &img, dc)
            } else {
                epi.clone()
            };
            Ok(Flags { mono, epi, regular_epi })
        }
        (GroupObject::Word(s), GroupObject::Block(d), GroupMap::WordToBlock(imgs)) => {
            let mono = search_kernel(s, |w| eval_block(d, imgs, w) == d.identity());
            let (lin_src, lin) = m
                .linearization()
                .ok_or_else(|| ModelError::Unsupported("word maps into non-abelian block groups".into()))?;
            let epi = block_epi(&lin_src, d, &lin);
            let regular_epi = if epi.is_holds() {
                let (sg, sc) = m.domain.as_word().unwrap();
                let images: Vec<BlockElem> = sc
                    .gens
                    .iter()
                    .map(|g| Ok(eval_block(d, imgs, &word_of_or_err(sg, g)?)))
                    .collect::<Result<Vec<_>>>()?;
                let cols: Vec<ZVec> = images.iter().map(|x| x.0.clone()).collect();
                let mixed: Vec<usize> = images.iter().map(|x| x.1).collect();
                let c = cols.len();
                let cmap = BlockMap {
                    matrix: Matrix::from_cols(&cols, d.rank()),
                    mixed,
                    finite: vec![d.finite().identity()],
                };
                let csrc = BlockGroup::free(c);
                let orth = BlockCone::new(FreeCone::orthant(c), vec![0]);
                let (_, dc) = m.codomain.block_parts()?;
                let img = block_image_cone(&csrc, d, &cmap, &orth, Some(dc.free()))?;
                cone_covers(d, &img, dc)
            } else {
                epi.clone()
            };
            Ok(Flags { mono, epi, regular_epi })
        }
        (GroupObject::Word(s), GroupObject::Word(d), GroupMap::WordToWord(imgs)) => {
            let ident = imgs.as_slice() == s.gens() && **s == **d;
            let mono = if ident {
                Verdict::holds("identity")
            } else {
                search_kernel(s, |w| eval_matrix(d, imgs, w) == d.identity())
            };
            let epi = if ident {
                Verdict::holds("identity")
            } else {
                let img = WordGroup::new(imgs.clone(), None, d.bound())?;
                if d.gens().iter().all(|g| img.ball().position(g).is_some()) {
                    Verdict::holds("codomain generators reached by image words")
                } else {
                    Verdict::unknown(d.bound())
                }
            };
            let regular_epi = if ident {
                Verdict::holds("identity")
            } else if epi.is_holds() {
                let (_, dc) = m.codomain.as_word().unwrap();
                let (sg, sc) = m.domain.as_word().unwrap();
                let gens: Vec<ZMatrix> = sc
                    .gens
                    .iter()
                    .map(|g| Ok(eval_matrix(d, imgs, &word_of_or_err(sg, g)?)))
                    .collect::<Result<Vec<_>>>()?;
                let image_cone = super::word::WordCone { gens, exact: None };
                let ball = image_cone.ball(d);
                if dc.gens.iter().all(|g| ball.contains(g)) {
                    Verdict::holds("codomain cone generators reached by the image cone")
                } else {
                    Verdict::unknown(d.bound())
                }
            } else {
                epi.clone()
            };
            Ok(Flags { mono, epi, regular_epi })
        }
        (GroupObject::Block(s), GroupObject::Word(d), GroupMap::BlockToWord(imgs)) => {
            let logs: Option<Vec<ZVec>> = imgs.iter().map(unipotent_log).collect();
            let mono = match logs {
                Some(logs) => {
                    let n = d.dim() * d.dim();
                    let mat = Matrix::from_cols(&logs, n);
                    let k = integer_kernel(&mat);
                    if k.cols() == 0 {
                        Verdict::holds("logarithms of the unipotent images are independent")
                    } else {
                        Verdict::fails(
                            "nonzero element of the kernel",
                            vec![s.element(&(k.col(0), s.finite().identity()))],
                        )
                    }
                }
                None => search_free_kernel(s, d, imgs),
            };
            let epi = if !d.is_abelian() {
                let k = d.num_gens();
                let (i, j) = (0..k)
                    .flat_map(|i| (0..i).map(move |j| (j, i)))
                    .find(|&(i, j)| d.gens()[i].mul(&d.gens()[j]) != d.gens()[j].mul(&d.gens()[i]))
                    .unwrap();
                Verdict::fails(
                    "image is abelian but these codomain generators do not commute",
                    vec![d.element(&d.gens()[i]), d.element(&d.gens()[j])],
                )
            } else {
                Verdict::unknown(d.bound())
            };
            let regular_epi = epi.clone();
            Ok(Flags { mono, epi, regular_epi })
        }
        _ => unreachable!("checked on construction"),
    }
}

fn word_of_or_err(g: &WordGroup, m: &ZMatrix) -> Result<Word> {
    g.word_of(m).ok_or_else(|| {
        ModelError::Unsupported(format!(
            "cone generator is not reached within bound {}; raise the bound",
            g.bound()
        ))
    })
}

/// Looks for a non-identity ball element in the kernel.
fn search_kernel(s: &WordGroup, in_kernel: impl Fn(&Word) -> bool) -> Verdict {
    let ball = s.ball();
    for (i, w) in ball.words.iter().enumerate().skip(1) {
        if in_kernel(w) {
            return Verdict::fails(
                "nonzero element of the kernel",
                vec![Element::Word(WordElement {
                    matrix: ball.elems[i].clone(),
                    word: w.clone(),
                    names: s.names().clone(),
                })],
            );
        }
    }
    Verdict::unknown(s.bound())
}

fn search_free_kernel(s: &BlockGroup, d: &WordGroup, imgs: &[ZMatrix]) -> Verdict {
    let r = s.rank();
    let b = d.bound() as i64;
    let mut v = vec![-b; r];
    if r == 0 {
        return Verdict::holds("trivial domain");
    }
    loop {
        if v.iter().any(|&x| x != 0) {
            let vi: ZVec = v.iter().map(|&x| Int::from(x)).collect();
            if eval_free(d, imgs, &vi) == d.identity() {
                return Verdict::fails("nonzero element of the kernel", vec![s.element(&(vi, 0))]);
            }
        }
        let mut i = 0;
        while i < r && v[i] == b {
            v[i] = -b;
            i += 1;
        }
        if i == r {
            return Verdict::unknown(d.bound());
        }
        v[i] += 1;
    }
}

/// Mono/epi/regular-epi flags.
pub fn classify_morphism(m: &PogMorphism) -> Result<Flags> {
    m.flags().cloned()
}

/// HNF basis of the kernel of a block map's free part.
pub fn free_kernel_basis(m: &BlockMap) -> ZMatrix {
    column_hnf(&integer_kernel(&m.matrix)).basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::from_i64s;

    fn n_in_z() -> Arc<PreorderedGroup> {
        let g = BlockGroup::free(1);
        Arc::new(PreorderedGroup::block(g, BlockCone::new(FreeCone::orthant(1), vec![0])).unwrap())
    }

    fn z_in_z() -> Arc<PreorderedGroup> {
        let g = BlockGroup::free(1);
        Arc::new(PreorderedGroup::block(g.clone(), BlockCone::full(&g)).unwrap())
    }

    fn orthant2() -> Arc<PreorderedGroup> {
        let g = BlockGroup::free(2);
        Arc::new(PreorderedGroup::block(g, BlockCone::new(FreeCone::orthant(2), vec![0])).unwrap())
    }

    fn half_plane() -> Arc<PreorderedGroup> {
        let g = BlockGroup::free(2);
        let lat = Lattice::from_generators(2, &[from_i64s(&[0, 1])]);
        let c = FreeCone::new(lat, vec![from_i64s(&[1, 0])], from_i64s(&[1, 0])).unwrap();
        Arc::new(PreorderedGroup::block(g, BlockCone::new(c, vec![0])).unwrap())
    }

    #[test]
    fn validation_examples() {
        let proj = PogMorphism::block(half_plane(), n_in_z(), Matrix::from_i64(&[&[1, 0]], 2), vec![0]).unwrap();
        assert!(morphism_validate(&proj).unwrap().is_holds());
        let neg = PogMorphism::block(n_in_z(), n_in_z(), Matrix::from_i64(&[&[-1]], 1), vec![0]).unwrap();
        let v = morphism_validate(&neg).unwrap();
        assert!(v.is_fails());
        assert_eq!(v.witness().unwrap().rendered(), "((1), (-1))");
        assert!(morphism_validate(&PogMorphism::identity(n_in_z())).unwrap().is_holds());
    }

    #[test]
    fn classification_examples() {
        let inc = PogMorphism::block(n_in_z(), z_in_z(), Matrix::identity(1), vec![0]).unwrap();
        let f = classify_morphism(&inc).unwrap();
        assert!(f.mono.is_holds() && f.epi.is_holds() && f.regular_epi.is_fails());
        let id = classify_morphism(&PogMorphism::identity(n_in_z())).unwrap();
        assert!(id.mono.is_holds() && id.epi.is_holds() && id.regular_epi.is_holds());
        let proj = PogMorphism::block(orthant2(), n_in_z(), Matrix::from_i64(&[&[1, 0]], 2), vec![0]).unwrap();
        let f = classify_morphism(&proj).unwrap();
        assert!(f.mono.is_fails() && f.epi.is_holds() && f.regular_epi.is_holds());
    }

    #[test]
    fn heisenberg_central_quotient() {
        let h = Arc::new(WordGroup::heisenberg(4));
        let cone = super::super::word::WordCone {
            gens: vec![h.gens()[0].clone(), h.gens()[2].clone()],
            exact: Some(super::super::word::ExactCone::HeisenbergP0),
        };
        let p = Arc::new(PreorderedGroup::word(h.clone(), cone).unwrap());
        let z2 = BlockGroup::free(2);
        let lat = Lattice::zero(2);
        let c = FreeCone::new(lat, vec![from_i64s(&[1, 0])], from_i64s(&[1, 0])).unwrap();
        let q = Arc::new(PreorderedGroup::block(z2, BlockCone::new(c, vec![0])).unwrap());
        let imgs = vec![(from_i64s(&[1, 0]), 0), (from_i64s(&[0, 1]), 0), (from_i64s(&[0, 0]), 0)];
        let m = PogMorphism::new(p, q, GroupMap::WordToBlock(imgs)).unwrap();
        assert!(morphism_validate(&m).unwrap().is_holds());
        let f = classify_morphism(&m).unwrap();
        assert!(f.mono.is_fails());
        assert!(f.epi.is_holds());
        assert!(f.regular_epi.is_holds());
    }

    #[test]
    fn center_inclusion_is_mono() {
        let h = Arc::new(WordGroup::heisenberg(4));
        let hp = Arc::new(
            PreorderedGroup::word(h.clone(), super::super::word::WordCone { gens: vec![], exact: None }).unwrap(),
        );
        let z = BlockGroup::free(1);
        let zp = Arc::new(PreorderedGroup::block(z.clone(), BlockCone::trivial(&z)).unwrap());
        let m = PogMorphism::new(zp, hp, GroupMap::BlockToWord(vec![h.gens()[2].clone()])).unwrap();
        assert!(morphism_validate(&m).unwrap().is_holds());
        let f = classify_morphism(&m).unwrap();
        assert!(f.mono.is_holds());
        assert!(f.epi.is_fails());
    }
}
