//! The catalog written out in the model format.

use std::sync::Arc;

use num_traits::ToPrimitive;
use preord::carriers::word::format_word;
use preord::carriers::{Cone, GroupMap, GroupObject, PreorderedGroup};
use preord::corpus::Catalog;
use preord::{FiniteGroup, Int, ZMatrix};

use crate::model::{BlockConeBody, ConeBody, Decl, ElemLit, GroupBody, ModelFile, MorphismBody, Name, Span};

fn name(text: &str) -> Name {
    Name {
        text: text.to_string(),
        span: Span { line: 0, col: 0 },
    }
}

fn small(x: &Int) -> i64 {
    x.to_i64().expect("catalog entries are small")
}

fn ints(v: &[Int]) -> Vec<i64> {
    v.iter().map(small).collect()
}

fn rows(m: &ZMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| small(m.get(i, j))).collect()).collect()
}

fn table(f: &FiniteGroup) -> GroupBody {
    GroupBody::Table {
        order: f.order(),
        id: f.identity(),
        rows: f.rows(),
    }
}

/// Declarations for one object; the group, cone and object share its name,
/// except finite objects whose group is a catalog group.
fn object_decls(catalog: &Catalog, label: &str, x: &PreorderedGroup, out: &mut Vec<Decl>) {
    let group_name = match &x.group {
        GroupObject::Block(g) if g.rank() == 0 => catalog
            .groups()
            .iter()
            .find(|(_, f)| f.rows() == g.finite().rows())
            .map(|(n, _)| n.clone()),
        _ => None,
    };
    let group_name = match group_name {
        Some(n) => n,
        None => {
            let body = match &x.group {
                GroupObject::Block(g) if g.rank() == 0 => table(g.finite()),
                GroupObject::Block(g) => {
                    assert_eq!(g.finite().order(), 1, "catalog block objects have trivial finite part");
                    GroupBody::Block {
                        rank: g.rank(),
                        finite: name("trivial"),
                    }
                }
                GroupObject::Word(w) => GroupBody::Word {
                    gens: w.gens().iter().map(rows).collect(),
                    names: Some(w.names().to_vec()),
                    bound: Some(w.bound()),
                    relators: w
                        .relators()
                        .unwrap_or_default()
                        .iter()
                        .map(|r| format_word(r, w.names()))
                        .collect(),
                },
            };
            out.push(Decl::Group { name: name(label), body });
            label.to_string()
        }
    };
    let body = match (&x.group, &x.cone) {
        (GroupObject::Block(_), Cone::Block(c)) => {
            let free = c.free();
            ConeBody::Block(BlockConeBody {
                lattice: free.lattice().basis_vectors().iter().map(|v| ints(v)).collect(),
                pointed: free.pointed().iter().map(|v| ints(v)).collect(),
                functional: (free.ambient() > 0).then(|| ints(free.functional())),
                finite: Some(c.finite().clone()),
            })
        }
        (GroupObject::Word(w), Cone::Word(c)) => ConeBody::Word {
            gens: c.gens.iter().map(|m| w.element(m).to_string()).collect(),
            exact: c.exact.map(|e| e.name().to_string()),
        },
        _ => unreachable!("backends agree"),
    };
    out.push(Decl::Cone {
        name: name(label),
        group: name(&group_name),
        body,
    });
    out.push(Decl::Pog {
        name: name(label),
        group: name(&group_name),
        cone: name(label),
    });
}

fn object_name<'a>(catalog: &'a Catalog, x: &Arc<PreorderedGroup>) -> &'a str {
    catalog
        .objects()
        .iter()
        .find(|(_, o)| Arc::ptr_eq(o, x))
        .map(|(n, _)| n.as_str())
        .expect("catalog morphisms join catalog objects")
}

/// The whole catalog as a model file.
pub fn catalog_model(catalog: &Catalog) -> ModelFile {
    let mut decls = Vec::new();
    for (n, g) in catalog.groups() {
        decls.push(Decl::Group {
            name: name(n),
            body: table(g),
        });
    }
    for (n, x) in catalog.objects() {
        object_decls(catalog, n, x, &mut decls);
    }
    for (n, m) in catalog.morphisms() {
        let mut body = MorphismBody::default();
        match &m.map {
            GroupMap::Block(b) => {
                let (_, gy, _) = m.block_parts().unwrap();
                if b.matrix.rows() > 0 && b.matrix.cols() > 0 {
                    body.matrix = Some(rows(&b.matrix));
                }
                body.finite_map = Some(b.finite.clone());
                if b.has_mixed(gy) {
                    body.mixed = Some(b.mixed.clone());
                }
            }
            GroupMap::WordToBlock(imgs) => {
                let gy = m.dst_block().unwrap();
                body.images = Some(
                    imgs.iter()
                        .map(|(v, a)| {
                            let fin = (gy.finite().order() > 1).then_some(*a);
                            if v.is_empty() {
                                ElemLit::Index(*a)
                            } else {
                                ElemLit::Vector(ints(v), fin)
                            }
                        })
                        .collect(),
                );
            }
            GroupMap::WordToWord(imgs) | GroupMap::BlockToWord(imgs) => {
                let GroupObject::Word(w) = &m.codomain.group else { unreachable!() };
                body.images = Some(imgs.iter().map(|x| ElemLit::Word(w.element(x).to_string())).collect());
            }
        }
        decls.push(Decl::Morphism {
            name: name(n),
            src: name(object_name(catalog, &m.domain)),
            dst: name(object_name(catalog, &m.codomain)),
            body,
        });
    }
    ModelFile { decls }
}
