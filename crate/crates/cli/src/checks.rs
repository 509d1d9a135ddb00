//! Running predicates and collecting their results.

use std::sync::Arc;
use std::time::Instant;

use preord::carriers::{GroupObject, PogMorphism, PreorderedGroup};
use preord::galois::{self, GaloisTag};
use preord::normal::{check_modular, enumerate_normal_subobjects};
use preord::reflect::{is_abelian_object, is_commutative_object};
use preord::{ModelError, Verdict};

/// A check's answer, or the error that stopped it.
#[derive(Clone, Debug)]
pub enum Outcome {
    Verdict(Verdict),
    Error(String),
}

/// One line of a report.
#[derive(Clone, Debug)]
pub struct Record {
    pub predicate: String,
    pub target: String,
    pub outcome: Outcome,
    pub millis: u64,
}

/// What a predicate is applied to.
pub enum Target<'a> {
    Morphism(&'a PogMorphism),
    Object(&'a Arc<PreorderedGroup>),
}

/// Extra inputs some predicates take.
pub struct Options<'a> {
    pub bound: u32,
    pub base: Option<&'a Arc<PreorderedGroup>>,
    pub tag: GaloisTag,
}

fn rebound_object(x: &Arc<PreorderedGroup>, bound: u32) -> Arc<PreorderedGroup> {
    match &x.group {
        GroupObject::Word(w) if w.bound() != bound => Arc::new(
            PreorderedGroup::new(GroupObject::Word(Arc::new(w.with_bound(bound))), x.cone.clone())
                .expect("same group and cone"),
        ),
        _ => x.clone(),
    }
}

/// The same morphism with word groups searched to `bound`.
pub fn rebound(m: &PogMorphism, bound: u32) -> PogMorphism {
    let x = rebound_object(&m.domain, bound);
    let y = rebound_object(&m.codomain, bound);
    if Arc::ptr_eq(&x, &m.domain) && Arc::ptr_eq(&y, &m.codomain) {
        return m.clone();
    }
    PogMorphism::new(x, y, m.map.clone()).expect("same map")
}

fn modular(x: &Arc<PreorderedGroup>, bound: u32) -> preord::Result<Verdict> {
    let subs = enumerate_normal_subobjects(x, u64::from(bound))?;
    let mut triples = 0usize;
    for a in &subs {
        for c in subs.iter().filter(|c| c.le(a)) {
            for b in &subs {
                triples += 1;
                let v = check_modular(a, b, c)?;
                if v.is_fails() {
                    return Ok(v);
                }
            }
        }
    }
    Ok(Verdict::holds(format!(
        "modular law on {triples} triples of {} normal subobjects",
        subs.len()
    )))
}

fn morphism_target<'a>(t: &Target<'a>, predicate: &str) -> preord::Result<&'a PogMorphism> {
    match t {
        Target::Morphism(m) => Ok(m),
        Target::Object(_) => Err(ModelError::Precondition(format!("{predicate} applies to morphisms"))),
    }
}

/// Evaluates one predicate.
pub fn evaluate(predicate: &str, target: Target<'_>, opts: &Options<'_>) -> preord::Result<Verdict> {
    if let Target::Object(x) = &target {
        let x = rebound_object(x, opts.bound);
        return match predicate {
            "commutative" => Ok(is_commutative_object(&x)),
            "abelian" => Ok(is_abelian_object(&x)),
            "modular" => modular(&x, opts.bound),
            other => Err(ModelError::Precondition(format!("{other} applies to morphisms"))),
        };
    }
    let m = rebound(morphism_target(&target, predicate)?, opts.bound);
    match predicate {
        "star" => galois::condition_star(&m),
        "shs" => galois::is_special_homogeneous(&m),
        "shs-fiber" => galois::shs_fiber_oracle(&m, opts.bound),
        "trivial-gc" => galois::is_trivial_extension(&m, GaloisTag::GammaC),
        "trivial-g" => galois::is_trivial_extension(&m, GaloisTag::Gamma),
        "trivial-grp" => galois::is_trivial_extension(&m, GaloisTag::GammaGrp),
        "normal-gc" => galois::is_normal_extension(&m, GaloisTag::GammaC),
        "normal-g" => galois::is_normal_extension(&m, GaloisTag::Gamma),
        "normal-grp" => galois::is_normal_extension(&m, GaloisTag::GammaGrp),
        "central" => galois::is_central_extension(&m),
        "gc-normal" => galois::is_gammac_normal(&m),
        "kernel-center" => galois::kernel_in_center(&m),
        "admissible" => {
            let b = opts
                .base
                .ok_or_else(|| ModelError::Precondition("admissible needs a base object".into()))?;
            galois::admissibility_spot_check(&rebound_object(b, opts.bound), &m, opts.tag)
        }
        "commutative" | "abelian" | "modular" => Err(ModelError::Precondition(format!("{predicate} applies to objects"))),
        other => Err(ModelError::Malformed(format!("unknown predicate '{other}'"))),
    }
}

/// Runs a predicate and times it; `millis` is 0 when `timing` is off.
pub fn run_check(predicate: &str, name: &str, target: Target<'_>, opts: &Options<'_>, timing: bool) -> Record {
    let start = Instant::now();
    let outcome = match evaluate(predicate, target, opts) {
        Ok(v) => Outcome::Verdict(v),
        Err(e) => Outcome::Error(e.to_string()),
    };
    Record {
        predicate: predicate.to_string(),
        target: name.to_string(),
        outcome,
        millis: if timing { start.elapsed().as_millis() as u64 } else { 0 },
    }
}
