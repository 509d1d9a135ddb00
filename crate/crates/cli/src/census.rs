//! Sweeping the catalog corpus through the extension predicates.

use std::fmt::Write;

use rayon::prelude::*;

use preord::carriers::PogMorphism;
use preord::corpus::{standard_corpus, Catalog};
use preord::galois::GaloisTag;

use crate::checks::{run_check, Options, Outcome, Record, Target};

/// Predicates run on every census morphism, in report order.
pub const CENSUS_PREDICATES: [&str; 8] = [
    "star",
    "shs",
    "trivial-gc",
    "trivial-g",
    "normal-gc",
    "normal-g",
    "gc-normal",
    "central",
];

/// Named catalog regular epimorphisms followed by the standard corpus, truncated to
/// `limit`.
pub fn census_corpus(catalog: &Catalog, max_order: usize, limit: Option<usize>) -> Vec<(String, PogMorphism)> {
    let mut all: Vec<(String, PogMorphism)> = catalog
        .morphisms()
        .iter()
        .filter(|(_, m)| m.is_regular_epi().unwrap_or(false))
        .cloned()
        .collect();
    all.extend(standard_corpus(catalog, max_order, 2));
    if let Some(k) = limit {
        all.truncate(k);
    }
    all
}

/// Records in corpus order, predicates in [`CENSUS_PREDICATES`] order.
pub fn run_census(corpus: &[(String, PogMorphism)], bound: u32, timing: bool) -> Vec<Record> {
    corpus
        .par_iter()
        .flat_map_iter(|(name, m)| {
            let opts = Options {
                bound,
                base: None,
                tag: GaloisTag::Gamma,
            };
            CENSUS_PREDICATES
                .iter()
                .map(|p| run_check(p, name, Target::Morphism(m), &opts, timing))
                .collect::<Vec<_>>()
        })
        .collect()
}

fn definite(r: &Record) -> Option<bool> {
    match &r.outcome {
        Outcome::Verdict(v) => v.definite(),
        Outcome::Error(_) => None,
    }
}

/// Per-predicate counts, agreement between characterizations and oracles,
/// and the morphisms separating the two Galois structures.
pub fn summary(corpus_len: usize, records: &[Record]) -> String {
    let mut out = format!("census: {corpus_len} morphisms\n");
    for p in CENSUS_PREDICATES {
        let (mut h, mut f, mut u, mut e) = (0, 0, 0, 0);
        for r in records.iter().filter(|r| r.predicate == p) {
            match (&r.outcome, definite(r)) {
                (Outcome::Error(_), _) => e += 1,
                (_, Some(true)) => h += 1,
                (_, Some(false)) => f += 1,
                (_, None) => u += 1,
            }
        }
        let _ = writeln!(out, "{p}: holds {h}, fails {f}, unknown {u}, errors {e}");
    }
    let per: Vec<&[Record]> = records.chunks(CENSUS_PREDICATES.len()).collect();
    let idx = |p: &str| CENSUS_PREDICATES.iter().position(|q| *q == p).unwrap();
    let agree = |a: &str, b: &str| {
        let (mut same, mut differ) = (0, 0);
        for rs in &per {
            if let (Some(x), Some(y)) = (definite(&rs[idx(a)]), definite(&rs[idx(b)])) {
                if x == y {
                    same += 1;
                } else {
                    differ += 1;
                }
            }
        }
        (same, differ)
    };
    for (a, b) in [("central", "normal-g"), ("gc-normal", "normal-gc")] {
        let (s, d) = agree(a, b);
        let _ = writeln!(out, "{a} vs {b}: {s} agree, {d} disagree on definite verdicts");
    }
    let separating: Vec<&str> = per
        .iter()
        .filter(|rs| definite(&rs[idx("gc-normal")]) == Some(true) && definite(&rs[idx("central")]) == Some(false))
        .map(|rs| rs[0].target.as_str())
        .collect();
    let central_not_gc = per
        .iter()
        .filter(|rs| definite(&rs[idx("central")]) == Some(true) && definite(&rs[idx("gc-normal")]) == Some(false))
        .count();
    let _ = writeln!(
        out,
        "gc-normal but not central: {}{}",
        separating.len(),
        separating.first().map(|n| format!(" (first: {n})")).unwrap_or_default()
    );
    let _ = writeln!(out, "central but not gc-normal: {central_not_gc}");
    out
}
