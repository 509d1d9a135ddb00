//! Construction traces for `explain`.

use std::fmt::Write;
use std::sync::Arc;

use preord::carriers::{Cone, GroupObject, PogMorphism, PreorderedGroup};
use preord::category::kernel_pair;
use preord::galois::naturality_square;
use preord::reflect::{reflect, ReflectorTag};
use preord::verdict::render_elements;
use preord::{category::is_pullback_square, Result};

/// One-line description of an object.
pub fn describe(x: &PreorderedGroup) -> String {
    match (&x.group, &x.cone) {
        (GroupObject::Block(g), Cone::Block(c)) => {
            let free = c.free();
            let mut s = format!("Z^{} x F (|F| = {})", g.rank(), g.finite().order());
            if g.rank() > 0 {
                let _ = write!(
                    s,
                    "; lattice rank {}, pointed generators {}",
                    free.lattice().rank(),
                    render_elements(
                        &free
                            .pointed()
                            .iter()
                            .map(|v| g.element(&(v.clone(), g.finite().identity())))
                            .collect::<Vec<_>>()
                    )
                );
            }
            let fin: Vec<String> = c.finite().iter().map(|a| a.to_string()).collect();
            let _ = write!(s, "; finite cone part {{{}}}", fin.join(","));
            s
        }
        (GroupObject::Word(w), Cone::Word(c)) => {
            let gens: Vec<String> = c.gens.iter().map(|m| w.element(m).to_string()).collect();
            format!(
                "word group on {} generators (bound {}); cone generated by [{}]{}",
                w.num_gens(),
                w.bound(),
                gens.join(", "),
                c.exact.map(|e| format!(", exact membership {}", e.name())).unwrap_or_default()
            )
        }
        _ => unreachable!("backends agree"),
    }
}

fn unit_images(m: &PogMorphism) -> String {
    let imgs: Vec<String> = m
        .domain
        .group
        .generators()
        .iter()
        .map(|g| match m.apply(g) {
            Ok(y) => format!("{g} -> {y}"),
            Err(e) => format!("{g} -> ({e})"),
        })
        .collect();
    imgs.join(", ")
}

/// Reflections of an object under C, A and F.
pub fn explain_object(name: &str, x: &Arc<PreorderedGroup>) -> String {
    let mut out = format!("object {name}: {}\n", describe(x));
    for tag in [ReflectorTag::C, ReflectorTag::A, ReflectorTag::F] {
        match reflect(x, tag) {
            Ok(r) => {
                let _ = writeln!(out, "  reflector {tag:?}: {}", describe(&r.reflected));
                let _ = writeln!(out, "    unit on generators: {}", unit_images(&r.unit));
            }
            Err(e) => {
                let _ = writeln!(out, "  reflector {tag:?}: not applicable ({e})");
            }
        }
    }
    out
}

fn explain_morphism_inner(name: &str, m: &PogMorphism, out: &mut String) -> Result<()> {
    let _ = writeln!(out, "morphism {name}");
    let _ = writeln!(out, "  domain: {}", describe(&m.domain));
    let _ = writeln!(out, "  codomain: {}", describe(&m.codomain));
    let _ = writeln!(out, "  generators: {}", unit_images(m));
    let flags = m.flags()?;
    let _ = writeln!(out, "  mono: {}", flags.mono);
    let _ = writeln!(out, "  epi: {}", flags.epi);
    let _ = writeln!(out, "  regular epi: {}", flags.regular_epi);
    for tag in [ReflectorTag::C, ReflectorTag::F] {
        match naturality_square(m, tag) {
            Ok(sq) => {
                let _ = writeln!(out, "  naturality square under {tag:?}:");
                let _ = writeln!(out, "    reflected domain: {}", describe(&sq.top.codomain));
                let _ = writeln!(out, "    reflected codomain: {}", describe(&sq.bottom.codomain));
                let _ = writeln!(out, "    pullback: {}", is_pullback_square(&sq)?);
            }
            Err(e) => {
                let _ = writeln!(out, "  naturality square under {tag:?}: not available ({e})");
            }
        }
    }
    match kernel_pair(m) {
        Ok(kp) => {
            let _ = writeln!(out, "  kernel pair: {}", describe(&kp.span.object));
            let _ = writeln!(out, "    first projection: {}", unit_images(&kp.span.first));
            let _ = writeln!(out, "    second projection: {}", unit_images(&kp.span.second));
        }
        Err(e) => {
            let _ = writeln!(out, "  kernel pair: not available ({e})");
        }
    }
    Ok(())
}

/// Flags, naturality squares and the kernel pair of a morphism.
pub fn explain_morphism(name: &str, m: &PogMorphism) -> Result<String> {
    let mut out = String::new();
    explain_morphism_inner(name, m, &mut out)?;
    Ok(out)
}
