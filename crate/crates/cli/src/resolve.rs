//! Turns a parsed model into validated objects and morphisms.

use std::collections::HashMap;
use std::sync::Arc;

use preord::carriers::block::{BlockCone, BlockElem, BlockGroup, BlockMap};
use preord::carriers::word::parse_word;
use preord::carriers::{
    cone_validate, morphism_validate, Cone, ExactCone, GroupMap, GroupObject, PogMorphism, PreorderedGroup, WordCone,
    WordGroup,
};
use preord::corpus::Catalog;
use preord::linalg::{from_i64s, Lattice, Matrix};
use preord::monoid::{search_functional, FreeCone};
use preord::{validate_group_table, FiniteGroup, Int, Verdict, ZMatrix};

use crate::model::{BlockConeBody, CheckDecl, ConeBody, Decl, ElemLit, GroupBody, ModelFile, Name, ParseError};

/// Coefficient radius used when a cone omits its positivity functional.
const FUNCTIONAL_RADIUS: i64 = 4;

#[derive(Clone)]
pub enum GroupDef {
    Table(FiniteGroup),
    Block(BlockGroup),
    Word(Arc<WordGroup>),
}

impl GroupDef {
    fn object(&self) -> GroupObject {
        match self {
            GroupDef::Table(f) => GroupObject::finite(f.clone()),
            GroupDef::Block(b) => GroupObject::Block(b.clone()),
            GroupDef::Word(w) => GroupObject::Word(w.clone()),
        }
    }
}

/// A resolved model. Objects and morphisms keep declaration order.
pub struct Model {
    pub file: ModelFile,
    pub objects: Vec<(String, Arc<PreorderedGroup>)>,
    pub morphisms: Vec<(String, PogMorphism)>,
    pub checks: Vec<CheckDecl>,
}

impl Model {
    pub fn object(&self, name: &str) -> Option<&Arc<PreorderedGroup>> {
        self.objects.iter().find(|(n, _)| n == name).map(|(_, o)| o)
    }

    pub fn morphism(&self, name: &str) -> Option<&PogMorphism> {
        self.morphisms.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

fn err(name: &Name, message: impl std::fmt::Display) -> ParseError {
    name.span.error(message.to_string())
}

fn matrix(rows: &[Vec<i64>], cols: usize, at: &Name) -> Result<ZMatrix, ParseError> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(err(at, format!("matrix rows must have {cols} entries")));
    }
    Ok(Matrix::from_rows(rows.iter().map(|r| from_i64s(r)).collect(), cols))
}

fn vectors(rows: &[Vec<i64>], n: usize, at: &Name, what: &str) -> Result<Vec<Vec<Int>>, ParseError> {
    rows.iter()
        .map(|r| {
            if r.len() == n {
                Ok(from_i64s(r))
            } else {
                Err(err(at, format!("{what} vector {r:?} must have {n} entries")))
            }
        })
        .collect()
}

struct Resolver<'a> {
    catalog: &'a Catalog,
    default_bound: u32,
    groups: HashMap<String, GroupDef>,
    cones: HashMap<String, (String, Cone)>,
    objects: Vec<(String, Arc<PreorderedGroup>)>,
    morphisms: Vec<(String, PogMorphism)>,
}

impl Resolver<'_> {
    fn finite_group(&self, name: &Name) -> Result<FiniteGroup, ParseError> {
        if name.text == "trivial" {
            return Ok(FiniteGroup::trivial());
        }
        match self.groups.get(&name.text) {
            Some(GroupDef::Table(f)) => Ok(f.clone()),
            Some(_) => Err(err(name, format!("'{}' is not a table group", name.text))),
            None => self
                .catalog
                .group(&name.text)
                .cloned()
                .ok_or_else(|| err(name, format!("unknown group '{}'", name.text))),
        }
    }

    fn group(&mut self, name: &Name, body: &GroupBody) -> Result<(), ParseError> {
        if self.groups.contains_key(&name.text) {
            return Err(err(name, format!("group '{}' declared twice", name.text)));
        }
        let def = match body {
            GroupBody::Table { order, id, rows } => {
                if rows.len() != *order || rows.iter().any(|r| r.len() != *order) {
                    return Err(err(name, format!("table must be {order} by {order}")));
                }
                match validate_group_table(rows, *id).map_err(|e| err(name, e))? {
                    Verdict::Fails(w) => return Err(err(name, format!("not a group: {}", w.reason))),
                    _ => GroupDef::Table(FiniteGroup::from_table(rows.clone(), *id).map_err(|e| err(name, e))?),
                }
            }
            GroupBody::Block { rank, finite } => {
                let f = self.finite_group(finite)?;
                GroupDef::Block(BlockGroup::new(*rank, Arc::new(f)))
            }
            GroupBody::Word { gens, names, bound, relators } => {
                let n = gens.first().map_or(0, |m| m.len());
                let ms = gens
                    .iter()
                    .map(|m| matrix(m, n, name))
                    .collect::<Result<Vec<_>, _>>()?;
                let g = WordGroup::new(ms, names.clone(), bound.unwrap_or(self.default_bound)).map_err(|e| err(name, e))?;
                let g = if relators.is_empty() {
                    g
                } else {
                    let rs = relators
                        .iter()
                        .map(|r| parse_word(r, g.names()))
                        .collect::<preord::Result<Vec<_>>>()
                        .map_err(|e| err(name, e))?;
                    g.with_relators(rs).map_err(|e| err(name, e))?
                };
                GroupDef::Word(Arc::new(g))
            }
        };
        self.groups.insert(name.text.clone(), def);
        Ok(())
    }

    fn block_cone(&self, name: &Name, g: &BlockGroup, b: &BlockConeBody) -> Result<BlockCone, ParseError> {
        let r = g.rank();
        let lat = Lattice::from_generators(r, &vectors(&b.lattice, r, name, "lattice")?);
        let pointed = vectors(&b.pointed, r, name, "pointed")?;
        let functional = match &b.functional {
            Some(l) => vectors(std::slice::from_ref(l), r, name, "functional")?.remove(0),
            None if pointed.is_empty() => vec![Int::from(0); r],
            None => search_functional(&lat, &pointed, FUNCTIONAL_RADIUS)
                .ok_or_else(|| err(name, "no positivity functional found; give one with 'functional'"))?,
        };
        let free = FreeCone::new(lat, pointed, functional).map_err(|e| err(name, e))?;
        let finite = b.finite.clone().unwrap_or_else(|| vec![g.finite().identity()]);
        if let Some(&bad) = finite.iter().find(|&&a| a >= g.finite().order()) {
            return Err(err(name, format!("finite cone index {bad} out of range")));
        }
        Ok(BlockCone::new(free, finite))
    }

    fn cone(&mut self, name: &Name, group: &Name, body: &ConeBody) -> Result<(), ParseError> {
        if self.cones.contains_key(&name.text) {
            return Err(err(name, format!("cone '{}' declared twice", name.text)));
        }
        let def = self
            .groups
            .get(&group.text)
            .cloned()
            .ok_or_else(|| err(group, format!("unknown group '{}'", group.text)))?;
        let cone = match (&def, body) {
            (GroupDef::Table(f), ConeBody::Block(b)) => {
                Cone::Block(self.block_cone(name, &BlockGroup::finite_only(f.clone()), b)?)
            }
            (GroupDef::Block(g), ConeBody::Block(b)) => Cone::Block(self.block_cone(name, g, b)?),
            (GroupDef::Word(w), ConeBody::Word { gens, exact }) => {
                let ms = gens
                    .iter()
                    .map(|s| parse_word(s, w.names()).map(|word| w.eval(&word)))
                    .collect::<preord::Result<Vec<_>>>()
                    .map_err(|e| err(name, e))?;
                let exact = match exact {
                    None => None,
                    Some(e) => Some(
                        ExactCone::from_name(e).ok_or_else(|| err(name, format!("unknown exact cone '{e}'")))?,
                    ),
                };
                Cone::Word(WordCone { gens: ms, exact })
            }
            _ => return Err(err(name, format!("backend mismatch: cone kind does not fit group '{}'", group.text))),
        };
        self.cones.insert(name.text.clone(), (group.text.clone(), cone));
        Ok(())
    }

    fn pog(&mut self, name: &Name, group: &Name, cone: &Name) -> Result<(), ParseError> {
        if self.objects.iter().any(|(n, _)| *n == name.text) {
            return Err(err(name, format!("object '{}' declared twice", name.text)));
        }
        let def = self
            .groups
            .get(&group.text)
            .ok_or_else(|| err(group, format!("unknown group '{}'", group.text)))?;
        let (on, c) = self
            .cones
            .get(&cone.text)
            .ok_or_else(|| err(cone, format!("unknown cone '{}'", cone.text)))?;
        if *on != group.text {
            return Err(err(cone, format!("cone '{}' lives on '{on}', not '{}'", cone.text, group.text)));
        }
        let p = PreorderedGroup::new(def.object(), c.clone()).map_err(|e| err(name, e))?;
        if let Verdict::Fails(w) = cone_validate(&p).map_err(|e| err(name, e))? {
            return Err(err(name, format!("invalid cone: {} {}", w.reason, w.rendered())));
        }
        self.objects.push((name.text.clone(), Arc::new(p)));
        Ok(())
    }

    fn object(&self, name: &Name) -> Result<Arc<PreorderedGroup>, ParseError> {
        self.objects
            .iter()
            .find(|(n, _)| *n == name.text)
            .map(|(_, o)| o.clone())
            .or_else(|| self.catalog.object(&name.text).cloned())
            .ok_or_else(|| err(name, format!("unknown object '{}'", name.text)))
    }

    fn block_elem(&self, at: &Name, lit: &ElemLit, g: &BlockGroup) -> Result<BlockElem, ParseError> {
        let (v, fin) = match lit {
            ElemLit::Index(i) if g.rank() == 0 => (Vec::new(), *i),
            ElemLit::Vector(v, fin) if v.len() == g.rank() => (from_i64s(v), fin.unwrap_or(g.finite().identity())),
            other => return Err(err(at, format!("'{other}' is not an element of the target"))),
        };
        if fin >= g.finite().order() {
            return Err(err(at, format!("finite index {fin} out of range")));
        }
        Ok((v, fin))
    }

    fn word_images(&self, at: &Name, lits: &[ElemLit], w: &WordGroup) -> Result<Vec<ZMatrix>, ParseError> {
        lits.iter()
            .map(|lit| {
                let text = match lit {
                    ElemLit::Word(s) => s.clone(),
                    ElemLit::Index(1) => "1".into(),
                    other => return Err(err(at, format!("'{other}' is not a word"))),
                };
                parse_word(&text, w.names()).map(|word| w.eval(&word)).map_err(|e| err(at, e))
            })
            .collect()
    }

    fn morphism(&mut self, name: &Name, src: &Name, dst: &Name, body: &crate::model::MorphismBody) -> Result<(), ParseError> {
        if self.morphisms.iter().any(|(n, _)| *n == name.text) {
            return Err(err(name, format!("morphism '{}' declared twice", name.text)));
        }
        let x = self.object(src)?;
        let y = self.object(dst)?;
        let need_images = || {
            body.images
                .as_ref()
                .ok_or_else(|| err(name, "this morphism needs 'images'"))
        };
        let block_only = body.matrix.is_some() || body.finite_map.is_some() || body.mixed.is_some();
        let map = match (&x.group, &y.group) {
            (GroupObject::Block(gx), GroupObject::Block(gy)) => {
                if body.images.is_some() {
                    return Err(err(name, "block morphisms take 'matrix', 'finite-map' and 'mixed'"));
                }
                let m = match &body.matrix {
                    Some(rows) if !rows.is_empty() => {
                        if rows.len() != gy.rank() {
                            return Err(err(name, format!("matrix needs {} rows", gy.rank())));
                        }
                        matrix(rows, gx.rank(), name)?
                    }
                    _ => Matrix::zeros(gy.rank(), gx.rank()),
                };
                let finite = body
                    .finite_map
                    .clone()
                    .unwrap_or_else(|| vec![gy.finite().identity(); gx.finite().order()]);
                let mixed = body
                    .mixed
                    .clone()
                    .unwrap_or_else(|| vec![gy.finite().identity(); gx.rank()]);
                GroupMap::Block(BlockMap { matrix: m, mixed, finite })
            }
            (GroupObject::Word(_), GroupObject::Block(gy)) if !block_only => GroupMap::WordToBlock(
                need_images()?
                    .iter()
                    .map(|l| self.block_elem(name, l, gy))
                    .collect::<Result<_, _>>()?,
            ),
            (GroupObject::Word(_), GroupObject::Word(wy)) if !block_only => {
                GroupMap::WordToWord(self.word_images(name, need_images()?, wy)?)
            }
            (GroupObject::Block(_), GroupObject::Word(wy)) if !block_only => {
                GroupMap::BlockToWord(self.word_images(name, need_images()?, wy)?)
            }
            _ => return Err(err(name, "word morphisms take 'images' only")),
        };
        let m = PogMorphism::new(x, y, map).map_err(|e| err(name, e))?;
        if let Verdict::Fails(w) = morphism_validate(&m).map_err(|e| err(name, e))? {
            return Err(err(name, format!("not a morphism: {} {}", w.reason, w.rendered())));
        }
        self.morphisms.push((name.text.clone(), m));
        Ok(())
    }
}

/// Predicates that take an object rather than a morphism.
pub const OBJECT_PREDICATES: [&str; 3] = ["commutative", "abelian", "modular"];

/// Every predicate a `check` line may name.
pub const PREDICATES: [&str; 16] = [
    "star",
    "shs",
    "trivial-gc",
    "trivial-g",
    "trivial-grp",
    "normal-gc",
    "normal-g",
    "normal-grp",
    "central",
    "gc-normal",
    "kernel-center",
    "shs-fiber",
    "commutative",
    "abelian",
    "modular",
    "admissible",
];

/// Resolves names against the file first and the catalog second.
/// Word groups without an explicit bound get `default_bound`.
pub fn resolve(file: ModelFile, catalog: &Catalog, default_bound: u32) -> Result<Model, ParseError> {
    let mut r = Resolver {
        catalog,
        default_bound,
        groups: HashMap::new(),
        cones: HashMap::new(),
        objects: Vec::new(),
        morphisms: Vec::new(),
    };
    let mut checks = Vec::new();
    for d in &file.decls {
        match d {
            Decl::Group { name, body } => r.group(name, body)?,
            Decl::Cone { name, group, body } => r.cone(name, group, body)?,
            Decl::Pog { name, group, cone } => r.pog(name, group, cone)?,
            Decl::Morphism { name, src, dst, body } => r.morphism(name, src, dst, body)?,
            Decl::Check(c) => {
                let p = c.predicate.text.as_str();
                if !PREDICATES.contains(&p) {
                    return Err(err(&c.predicate, format!("unknown predicate '{p}'")));
                }
                if OBJECT_PREDICATES.contains(&p) {
                    r.object(&c.target)?;
                } else if !r.morphisms.iter().any(|(n, _)| *n == c.target.text)
                    && catalog.morphism(&c.target.text).is_none()
                {
                    return Err(err(&c.target, format!("unknown morphism '{}'", c.target.text)));
                }
                if let Some(b) = &c.base {
                    r.object(b)?;
                }
                if let Some(t) = &c.tag {
                    if !["gc", "g"].contains(&t.text.as_str()) {
                        return Err(err(t, "tag must be 'gc' or 'g'"));
                    }
                }
                if p == "admissible" && c.base.is_none() {
                    return Err(err(&c.predicate, "admissible needs '--base OBJECT'"));
                }
                checks.push(c.clone());
            }
        }
    }
    Ok(Model {
        file,
        objects: r.objects,
        morphisms: r.morphisms,
        checks,
    })
}
