//! Preordered groups: a group object together with a cone.

use std::sync::Arc;

use crate::error::{ModelError, Result};
use crate::finite::FiniteGroup;
use crate::monoid::FreeCone;
use crate::verdict::{Element, Verdict};
use crate::ZMatrix;

use super::block::{BlockCone, BlockElem, BlockGroup};
use super::word::{WordCone, WordGroup};

/// Which backend an object uses. `Finite` is the block case of free rank 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Finite,
    Block,
    Word,
}

impl std::fmt::Display for Backend {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Backend::Finite => "finite",
            Backend::Block => "block",
            Backend::Word => "word",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupObject {
    Block(BlockGroup),
    Word(Arc<WordGroup>),
}

impl GroupObject {
    pub fn finite(f: FiniteGroup) -> Self {
        GroupObject::Block(BlockGroup::finite_only(f))
    }

    pub fn backend(&self) -> Backend {
        match self {
            GroupObject::Block(b) if b.rank() == 0 => Backend::Finite,
            GroupObject::Block(_) => Backend::Block,
            GroupObject::Word(_) => Backend::Word,
        }
    }

    pub fn as_block(&self) -> Option<&BlockGroup> {
        match self {
            GroupObject::Block(b) => Some(b),
            GroupObject::Word(_) => None,
        }
    }

    pub fn as_word(&self) -> Option<&Arc<WordGroup>> {
        match self {
            GroupObject::Word(w) => Some(w),
            GroupObject::Block(_) => None,
        }
    }

    /// Exact for block groups; word groups are abelian iff their
    /// generators commute.
    pub fn is_abelian(&self) -> bool {
        match self {
            GroupObject::Block(b) => b.is_abelian(),
            GroupObject::Word(w) => w.is_abelian(),
        }
    }

    pub fn identity(&self) -> Element {
        match self {
            GroupObject::Block(b) => b.element(&b.identity()),
            GroupObject::Word(w) => w.element(&w.identity()),
        }
    }

    pub fn generators(&self) -> Vec<Element> {
        match self {
            GroupObject::Block(b) => b.generators().iter().map(|x| b.element(x)).collect(),
            GroupObject::Word(w) => (0..w.num_gens())
                .map(|i| w.element_of_word(&vec![(i, 1)]))
                .collect(),
        }
    }

    pub fn block_elem(&self, e: &Element) -> Result<BlockElem> {
        let b = self
            .as_block()
            .ok_or_else(|| ModelError::Backend("expected a block element".into()))?;
        b.from_element(e)
            .ok_or_else(|| ModelError::Dimension(format!("{e} is not an element of this block group")))
    }

    pub fn matrix_of(&self, e: &Element) -> Result<ZMatrix> {
        match (self, e) {
            (GroupObject::Word(w), Element::Word(x)) if x.matrix.rows() == w.dim() => Ok(x.matrix.clone()),
            _ => Err(ModelError::Backend(format!("{e} is not an element of this word group"))),
        }
    }

    pub fn op(&self, a: &Element, b: &Element) -> Result<Element> {
        match self {
            GroupObject::Block(g) => {
                let x = self.block_elem(a)?;
                let y = self.block_elem(b)?;
                Ok(g.element(&g.op(&x, &y)))
            }
            GroupObject::Word(w) => {
                let (Element::Word(x), Element::Word(y)) = (a, b) else {
                    return Err(ModelError::Backend("expected word elements".into()));
                };
                let word = super::word::concat(&x.word, &y.word);
                let m = x.matrix.mul(&y.matrix);
                Ok(match w.word_of(&m) {
                    Some(short) => w.element_of_word(&short),
                    None => Element::Word(crate::verdict::WordElement {
                        matrix: m,
                        word,
                        names: w.names().clone(),
                    }),
                })
            }
        }
    }

    pub fn inv(&self, a: &Element) -> Result<Element> {
        match self {
            GroupObject::Block(g) => {
                let x = self.block_elem(a)?;
                Ok(g.element(&g.inv(&x)))
            }
            GroupObject::Word(w) => {
                let Element::Word(x) = a else {
                    return Err(ModelError::Backend("expected a word element".into()));
                };
                Ok(w.element_of_word(&super::word::inverse_word(&x.word)))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cone {
    Block(BlockCone),
    Word(WordCone),
}

impl Cone {
    pub fn as_block(&self) -> Option<&BlockCone> {
        match self {
            Cone::Block(c) => Some(c),
            Cone::Word(_) => None,
        }
    }

    pub fn as_word(&self) -> Option<&WordCone> {
        match self {
            Cone::Word(c) => Some(c),
            Cone::Block(_) => None,
        }
    }
}

/// A group with a conjugation-closed submonoid.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreorderedGroup {
    pub group: GroupObject,
    pub cone: Cone,
}

impl PreorderedGroup {
    /// Pairs a group with a cone after checking backends agree.
    pub fn new(group: GroupObject, cone: Cone) -> Result<Self> {
        match (&group, &cone) {
            (GroupObject::Block(g), Cone::Block(c)) => {
                if c.free().ambient() != g.rank() {
                    return Err(ModelError::Dimension(format!(
                        "cone has rank {}, group has rank {}",
                        c.free().ambient(),
                        g.rank()
                    )));
                }
            }
            (GroupObject::Word(w), Cone::Word(c)) => {
                if c.gens.iter().any(|m| m.rows() != w.dim() || m.cols() != w.dim()) {
                    return Err(ModelError::Dimension("cone generator of the wrong size".into()));
                }
            }
            _ => return Err(ModelError::Backend("cone backend does not match the group".into())),
        }
        Ok(PreorderedGroup { group, cone })
    }

    pub fn block(group: BlockGroup, cone: BlockCone) -> Result<Self> {
        Self::new(GroupObject::Block(group), Cone::Block(cone))
    }

    pub fn finite(f: FiniteGroup, cone: Vec<usize>) -> Result<Self> {
        let g = BlockGroup::finite_only(f);
        Self::block(g, BlockCone::new(FreeCone::zero(0), cone))
    }

    /// The zero object `({0}, {0})`.
    pub fn zero() -> Self {
        let g = BlockGroup::free(0);
        let c = BlockCone::trivial(&g);
        PreorderedGroup::block(g, c).unwrap()
    }

    pub fn word(group: Arc<WordGroup>, cone: WordCone) -> Result<Self> {
        Self::new(GroupObject::Word(group), Cone::Word(cone))
    }

    pub fn backend(&self) -> Backend {
        self.group.backend()
    }

    /// Both parts as block data, when the object is a block object.
    pub fn as_block(&self) -> Option<(&BlockGroup, &BlockCone)> {
        match (&self.group, &self.cone) {
            (GroupObject::Block(g), Cone::Block(c)) => Some((g, c)),
            _ => None,
        }
    }

    pub fn as_word(&self) -> Option<(&Arc<WordGroup>, &WordCone)> {
        match (&self.group, &self.cone) {
            (GroupObject::Word(g), Cone::Word(c)) => Some((g, c)),
            _ => None,
        }
    }

    pub fn block_parts(&self) -> Result<(&BlockGroup, &BlockCone)> {
        self.as_block()
            .ok_or_else(|| ModelError::Backend("operation needs a block or finite object".into()))
    }

    pub fn cone_generators(&self) -> Vec<Element> {
        match (&self.group, &self.cone) {
            (GroupObject::Block(g), Cone::Block(c)) => {
                c.generators(g).iter().map(|x| g.element(x)).collect()
            }
            (GroupObject::Word(w), Cone::Word(c)) => c.gens.iter().map(|m| w.element(m)).collect(),
            _ => unreachable!("backends agree by construction"),
        }
    }

    /// Whether the cone is a subgroup: exact for block objects, for word
    /// cones only when an exact predicate is registered.
    pub fn cone_is_group(&self) -> Verdict {
        match (&self.group, &self.cone) {
            (GroupObject::Block(g), Cone::Block(c)) => {
                for gen in c.free().generators() {
                    let neg = crate::linalg::vec_neg(&gen);
                    if !c.free().contains(&neg) {
                        return Verdict::fails(
                            "cone generator whose inverse is not in the cone",
                            vec![g.element(&(gen, g.finite().identity()))],
                        );
                    }
                }
                Verdict::holds("every cone generator has its inverse in the cone")
            }
            (GroupObject::Word(w), Cone::Word(c)) => {
                for m in &c.gens {
                    let inv = w.inv(m);
                    match cone_member_matrix(w, c, &inv) {
                        Verdict::Fails(_) => {
                            return Verdict::fails(
                                "cone generator whose inverse is not in the cone",
                                vec![w.element(m)],
                            )
                        }
                        Verdict::Unknown { bound, .. } => return Verdict::unknown(bound),
                        Verdict::Holds(_) => {}
                    }
                }
                Verdict::holds("every cone generator has its inverse in the cone")
            }
            _ => unreachable!(),
        }
    }
}

/// Checks the cone axioms.
pub fn cone_validate(p: &PreorderedGroup) -> Result<Verdict> {
    match (&p.group, &p.cone) {
        (GroupObject::Block(g), Cone::Block(c)) => c.validate(g),
        (GroupObject::Word(w), Cone::Word(c)) => {
            let Some(exact) = c.exact else {
                return Ok(Verdict::holds("conjugation-closed submonoid generated by the listed elements"));
            };
            for m in c.gens.iter().chain(c.ball(w).iter()) {
                if !exact.contains(m) {
                    return Ok(Verdict::fails(
                        format!("element of the generated cone violates the {} predicate", exact.name()),
                        vec![w.element(m)],
                    ));
                }
            }
            Ok(Verdict::holds(format!(
                "conjugation-closed submonoid generated by the listed elements; {} predicate consistent within bound {}",
                exact.name(),
                w.bound()
            )))
        }
        _ => Err(ModelError::Backend("cone backend does not match the group".into())),
    }
}

fn cone_member_matrix(w: &WordGroup, c: &WordCone, m: &ZMatrix) -> Verdict {
    if let Some(ans) = c.exact_contains(m) {
        return if ans {
            Verdict::holds(format!("{} predicate", c.exact.unwrap().name()))
        } else {
            Verdict::fails(
                format!("outside the {} cone", c.exact.unwrap().name()),
                vec![w.element(m)],
            )
        };
    }
    if c.ball(w).contains(m) {
        Verdict::holds(format!("reached within bound {}", w.bound()))
    } else {
        Verdict::unknown(w.bound())
    }
}

/// Cone membership: exact on block objects and on word cones with a
/// registered predicate, otherwise by search within the bound.
pub fn cone_member(p: &PreorderedGroup, x: &Element) -> Result<Verdict> {
    match (&p.group, &p.cone) {
        (GroupObject::Block(g), Cone::Block(c)) => {
            let e = p.group.block_elem(x)?;
            if c.finite().binary_search(&e.1).is_err() {
                return Ok(Verdict::fails("finite coordinate outside the cone", vec![x.clone()]));
            }
            Ok(match c.free().member(&e.0) {
                Some(cert) => {
                    let _ = g;
                    Verdict::holds(format!(
                        "pointed coefficients {:?}, lattice coordinates {}",
                        cert.coeffs,
                        render_ints(&cert.lattice_coords)
                    ))
                }
                None => Verdict::fails("free coordinate outside the cone", vec![x.clone()]),
            })
        }
        (GroupObject::Word(w), Cone::Word(c)) => {
            let m = p.group.matrix_of(x)?;
            Ok(cone_member_matrix(w, c, &m))
        }
        _ => Err(ModelError::Backend("cone backend does not match the group".into())),
    }
}

pub(crate) fn render_ints(v: &[crate::Int]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_i64s, Lattice};

    fn pointed_cone() -> PreorderedGroup {
        let c = FreeCone::new(
            Lattice::zero(2),
            vec![from_i64s(&[1, 0]), from_i64s(&[1, 1])],
            from_i64s(&[1, 0]),
        )
        .unwrap();
        let g = BlockGroup::free(2);
        PreorderedGroup::block(g, BlockCone::new(c, vec![0])).unwrap()
    }

    fn el(v: &[i64]) -> Element {
        Element::Block { free: from_i64s(v), fin: None }
    }

    #[test]
    fn membership_in_a_pointed_cone() {
        let p = pointed_cone();
        assert!(cone_member(&p, &el(&[2, 1])).unwrap().is_holds());
        assert!(cone_member(&p, &el(&[0, 1])).unwrap().is_fails());
        assert!(cone_member(&p, &el(&[0, 0])).unwrap().is_holds());
    }

    #[test]
    fn finite_cones_validate() {
        let s3 = FiniteGroup::symmetric(3);
        let a3 = s3.commutator_subgroup();
        let p = PreorderedGroup::finite(s3.clone(), a3).unwrap();
        assert!(cone_validate(&p).unwrap().is_holds());
        let t = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let q = PreorderedGroup::finite(s3, vec![0, t]).unwrap();
        assert!(cone_validate(&q).unwrap().is_fails());
    }

    #[test]
    fn heisenberg_cone_membership_is_exact() {
        let h = Arc::new(WordGroup::heisenberg(4));
        let cone = WordCone {
            gens: vec![h.gens()[0].clone(), h.gens()[2].clone()],
            exact: Some(super::super::word::ExactCone::HeisenbergP0),
        };
        let p = PreorderedGroup::word(h.clone(), cone).unwrap();
        assert!(cone_validate(&p).unwrap().is_holds());
        let zinv = h.element(&h.inv(&h.gens()[2]));
        assert!(cone_member(&p, &zinv).unwrap().is_fails());
        assert!(p.cone_is_group().is_fails());
    }
}
