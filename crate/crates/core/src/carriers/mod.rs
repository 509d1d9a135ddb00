//! Object backends: block groups `Z^r × F` (finite groups are the case
//! `r = 0`) and bounded word groups of integer matrices.

pub mod block;
pub mod morphism;
pub mod object;
pub mod word;

pub use block::{pullback_groups, quotient_block, BlockCone, BlockElem, BlockGroup, BlockMap, BlockPullback};
pub use word::{ExactCone, Word, WordCone, WordGroup};
pub use object::{cone_member, cone_validate, Backend, Cone, GroupObject, PreorderedGroup};
pub use morphism::{classify_morphism, morphism_validate, Flags, GroupMap, PogMorphism};
