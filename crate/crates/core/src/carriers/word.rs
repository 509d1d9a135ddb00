//! Groups generated by invertible integer matrices, explored by
//! breadth-first search up to a word-length bound.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, OnceLock};

use num_traits::{One, Signed};

use crate::error::{ModelError, Result};
use crate::linalg::{unimodular_inverse, vec_sub, zero_vec, Matrix};
use crate::verdict::{Element, WordElement};
use crate::{Int, ZMatrix, ZVec};

/// A word as runs of `(generator, exponent)`.
pub type Word = Vec<(usize, i64)>;

/// Appends `g^e` to a word, merging with the last run.
pub fn push_letter(w: &mut Word, g: usize, e: i64) {
    if let Some(last) = w.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                w.pop();
            }
            return;
        }
    }
    if e != 0 {
        w.push((g, e));
    }
}

pub fn concat(a: &Word, b: &Word) -> Word {
    let mut out = a.clone();
    for &(g, e) in b {
        push_letter(&mut out, g, e);
    }
    out
}

pub fn inverse_word(w: &Word) -> Word {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// Evaluates a word given generator images and the group operations.
pub fn eval_word<E: Clone>(
    w: &Word,
    id: E,
    gens: &[E],
    op: impl Fn(&E, &E) -> E,
    inv: impl Fn(&E) -> E,
) -> E {
    let mut acc = id;
    for &(g, e) in w {
        let base = if e < 0 { inv(&gens[g]) } else { gens[g].clone() };
        for _ in 0..e.unsigned_abs() {
            acc = op(&acc, &base);
        }
    }
    acc
}

/// Exponent-sum vector of a word.
pub fn exponent_sums(w: &Word, k: usize) -> ZVec {
    let mut v = zero_vec::<Int>(k);
    for &(g, e) in w {
        v[g] += e;
    }
    v
}

/// Parses `x*y^-1*z^2` (or `identity`/`1`) against generator names.
pub fn parse_word(text: &str, names: &[String]) -> Result<Word> {
    let t = text.trim();
    if t.is_empty() || t == "identity" || t == "1" {
        return Ok(Vec::new());
    }
    let mut w = Vec::new();
    for part in t.split('*') {
        let part = part.trim();
        let (name, exp) = match part.split_once('^') {
            Some((n, e)) => (
                n.trim(),
                e.trim()
                    .parse::<i64>()
                    .map_err(|_| ModelError::Malformed(format!("bad exponent in '{part}'")))?,
            ),
            None => (part, 1),
        };
        let g = names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| ModelError::Malformed(format!("unknown generator '{name}'")))?;
        push_letter(&mut w, g, exp);
    }
    Ok(w)
}

pub fn format_word(w: &Word, names: &[String]) -> String {
    Element::Word(WordElement {
        matrix: Matrix::zeros(0, 0),
        word: w.clone(),
        names: Arc::new(names.to_vec()),
    })
    .to_string()
}

/// Breadth-first enumeration of a word group.
#[derive(Debug)]
pub struct Ball {
    pub elems: Vec<ZMatrix>,
    pub words: Vec<Word>,
    index: HashMap<ZMatrix, usize>,
    /// Exponent-sum vectors of relators met during the search.
    pub relations: Vec<ZVec>,
}

impl Ball {
    pub fn position(&self, m: &ZMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn length(&self, i: usize) -> u32 {
        self.words[i].iter().map(|r| r.1.unsigned_abs() as u32).sum()
    }
}

/// A group generated by invertible integer matrices.
///
/// `relators`, when present, is a complete presentation supplied by the
/// caller (each relator is checked to evaluate to the identity). It makes
/// homomorphism checks and the abelianization exact; without it they are
/// qualified by the enumeration bound.
#[derive(Debug)]
pub struct WordGroup {
    gens: Vec<ZMatrix>,
    inverses: Vec<ZMatrix>,
    names: Arc<Vec<String>>,
    bound: u32,
    relators: Option<Vec<Word>>,
    ball: OnceLock<Ball>,
}

impl PartialEq for WordGroup {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens && self.bound == other.bound
    }
}

impl Eq for WordGroup {}

impl std::hash::Hash for WordGroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.gens.hash(state);
        self.bound.hash(state);
    }
}

impl Clone for WordGroup {
    fn clone(&self) -> Self {
        WordGroup {
            gens: self.gens.clone(),
            inverses: self.inverses.clone(),
            names: self.names.clone(),
            bound: self.bound,
            relators: self.relators.clone(),
            ball: OnceLock::new(),
        }
    }
}

fn default_names(k: usize) -> Vec<String> {
    const BASE: [&str; 6] = ["x", "y", "z", "u", "v", "w"];
    (0..k)
        .map(|i| BASE.get(i).map_or_else(|| format!("g{i}"), |s| s.to_string()))
        .collect()
}

impl WordGroup {
    pub fn new(gens: Vec<ZMatrix>, names: Option<Vec<String>>, bound: u32) -> Result<Self> {
        if gens.is_empty() {
            return Err(ModelError::Malformed("word group needs at least one generator".into()));
        }
        if bound == 0 {
            return Err(ModelError::Malformed("word bound must be at least 1".into()));
        }
        let n = gens[0].rows();
        let mut inverses = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if g.rows() != n || g.cols() != n {
                return Err(ModelError::Dimension(format!("generator {i} is not {n}x{n}")));
            }
            let inv = unimodular_inverse(g).ok_or_else(|| {
                ModelError::Malformed(format!("generator {i} is not invertible over the integers"))
            })?;
            inverses.push(inv);
        }
        let names = names.unwrap_or_else(|| default_names(gens.len()));
        if names.len() != gens.len() {
            return Err(ModelError::Malformed("one name per generator is required".into()));
        }
        Ok(WordGroup {
            gens,
            inverses,
            names: Arc::new(names),
            bound,
            relators: None,
            ball: OnceLock::new(),
        })
    }

    /// Attaches a presentation after checking that each relator holds.
    pub fn with_relators(mut self, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if self.eval(r) != self.identity() {
                return Err(ModelError::Malformed(format!(
                    "relator {} does not hold",
                    format_word(r, &self.names)
                )));
            }
        }
        self.relators = Some(relators);
        Ok(self)
    }

    pub fn with_bound(&self, bound: u32) -> Self {
        let mut g = self.clone();
        g.bound = bound.max(1);
        g.ball = OnceLock::new();
        g
    }

    /// Discrete Heisenberg group: `x = E12`, `y = E23`, `z = E13`, with its
    /// standard presentation `z = [x,y]`, `z` central.
    pub fn heisenberg(bound: u32) -> Self {
        let unit = |i: usize, j: usize| {
            let mut m = Matrix::identity(3);
            m.set(i, j, Int::one());
            m
        };
        let g = WordGroup::new(vec![unit(0, 1), unit(1, 2), unit(0, 2)], None, bound).unwrap();
        let rel = |s: &str| parse_word(s, &g.names).unwrap();
        let relators = vec![
            rel("x*y*x^-1*y^-1*z^-1"),
            rel("x*z*x^-1*z^-1"),
            rel("y*z*y^-1*z^-1"),
        ];
        g.with_relators(relators).unwrap()
    }

    pub fn gens(&self) -> &[ZMatrix] {
        &self.gens
    }

    pub fn names(&self) -> &Arc<Vec<String>> {
        &self.names
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn relators(&self) -> Option<&[Word]> {
        self.relators.as_deref()
    }

    pub fn dim(&self) -> usize {
        self.gens[0].rows()
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn identity(&self) -> ZMatrix {
        Matrix::identity(self.dim())
    }

    pub fn mul(&self, a: &ZMatrix, b: &ZMatrix) -> ZMatrix {
        a.mul(b)
    }

    pub fn inv(&self, a: &ZMatrix) -> ZMatrix {
        unimodular_inverse(a).expect("group elements are unimodular")
    }

    pub fn conjugate(&self, g: &ZMatrix, x: &ZMatrix) -> ZMatrix {
        g.mul(x).mul(&self.inv(g))
    }

    pub fn commutator(&self, a: &ZMatrix, b: &ZMatrix) -> ZMatrix {
        a.mul(b).mul(&self.inv(a)).mul(&self.inv(b))
    }

    pub fn eval(&self, w: &Word) -> ZMatrix {
        let mut acc = self.identity();
        for &(g, e) in w {
            let base = if e < 0 { &self.inverses[g] } else { &self.gens[g] };
            for _ in 0..e.unsigned_abs() {
                acc = acc.mul(base);
            }
        }
        acc
    }

    pub fn is_abelian(&self) -> bool {
        let k = self.gens.len();
        (0..k).all(|i| (0..i).all(|j| self.gens[i].mul(&self.gens[j]) == self.gens[j].mul(&self.gens[i])))
    }

    pub fn commutes_with_generators(&self, m: &ZMatrix) -> bool {
        self.gens.iter().all(|g| g.mul(m) == m.mul(g))
    }

    pub fn ball(&self) -> &Ball {
        self.ball.get_or_init(|| self.enumerate())
    }

    fn enumerate(&self) -> Ball {
        let k = self.gens.len();
        let id = self.identity();
        let mut elems = vec![id.clone()];
        let mut words: Vec<Word> = vec![Vec::new()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut rels: BTreeSet<ZVec> = BTreeSet::new();
        let mut frontier = vec![0usize];
        for _ in 0..self.bound {
            let mut next = Vec::new();
            for &i in &frontier {
                for g in 0..k {
                    for e in [1i64, -1] {
                        let m = if e > 0 {
                            elems[i].mul(&self.gens[g])
                        } else {
                            elems[i].mul(&self.inverses[g])
                        };
                        let mut w = words[i].clone();
                        push_letter(&mut w, g, e);
                        match index.get(&m) {
                            Some(&j) => {
                                let r = vec_sub(&exponent_sums(&w, k), &exponent_sums(&words[j], k));
                                if r.iter().any(|x| !x.is_zero_int()) {
                                    let r = if r.iter().find(|x| !x.is_zero_int()).unwrap().is_negative() {
                                        crate::linalg::vec_neg(&r)
                                    } else {
                                        r
                                    };
                                    rels.insert(r);
                                }
                            }
                            None => {
                                index.insert(m.clone(), elems.len());
                                next.push(elems.len());
                                elems.push(m);
                                words.push(w);
                            }
                        }
                    }
                }
            }
            frontier = next;
        }
        Ball {
            elems,
            words,
            index,
            relations: rels.into_iter().collect(),
        }
    }

    /// Exponent-sum vectors generating the relations of the abelianization:
    /// exact from a presentation, otherwise those met within the bound.
    pub fn abelian_relations(&self) -> (Vec<ZVec>, bool) {
        match &self.relators {
            Some(rs) => (rs.iter().map(|r| exponent_sums(r, self.num_gens())).collect(), true),
            None => (self.ball().relations.clone(), false),
        }
    }

    /// Printable element; uses the shortest known word when available.
    pub fn element(&self, m: &ZMatrix) -> Element {
        let word = self
            .ball()
            .position(m)
            .map(|i| self.ball().words[i].clone())
            .unwrap_or_else(|| vec![(usize::MAX, 0)]);
        if word.first().is_some_and(|r| r.0 == usize::MAX) {
            // outside the ball: fall back to a matrix rendering name
            let mut names = (*self.names).clone();
            names.push(format!("{m}"));
            return Element::Word(WordElement {
                matrix: m.clone(),
                word: vec![(names.len() - 1, 1)],
                names: Arc::new(names),
            });
        }
        Element::Word(WordElement {
            matrix: m.clone(),
            word,
            names: self.names.clone(),
        })
    }

    pub fn element_of_word(&self, w: &Word) -> Element {
        Element::Word(WordElement {
            matrix: self.eval(w),
            word: w.clone(),
            names: self.names.clone(),
        })
    }

    /// Word for an element: the stored shortest word, if within the ball.
    pub fn word_of(&self, m: &ZMatrix) -> Option<Word> {
        self.ball().position(m).map(|i| self.ball().words[i].clone())
    }
}

trait IsZeroInt {
    fn is_zero_int(&self) -> bool;
}

impl IsZeroInt for Int {
    fn is_zero_int(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

/// Exact membership predicates that can be registered for word cones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExactCone {
    Trivial,
    Full,
    /// In the Heisenberg group: `y`-coordinate zero, `x`-coordinate
    /// non-negative, and `z`-coordinate non-negative when `x` vanishes.
    HeisenbergP0,
}

impl ExactCone {
    pub fn contains(&self, m: &ZMatrix) -> bool {
        match self {
            ExactCone::Trivial => *m == Matrix::identity(m.rows()),
            ExactCone::Full => true,
            ExactCone::HeisenbergP0 => {
                let a = m.get(0, 1);
                let b = m.get(1, 2);
                let c = m.get(0, 2);
                b.is_zero_int() && !a.is_negative() && (!a.is_zero_int() || !c.is_negative())
            }
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ExactCone::Trivial => "trivial",
            ExactCone::Full => "full",
            ExactCone::HeisenbergP0 => "heisenberg-p0",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "trivial" => Some(ExactCone::Trivial),
            "full" => Some(ExactCone::Full),
            "heisenberg-p0" => Some(ExactCone::HeisenbergP0),
            _ => None,
        }
    }
}

/// A cone in a word group: the conjugation-closed monoid generated by
/// `gens`, optionally with an exact membership predicate.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordCone {
    pub gens: Vec<ZMatrix>,
    pub exact: Option<ExactCone>,
}

impl WordCone {
    /// Elements reachable as products of at most `bound/2` conjugates
    /// `g s g^-1` with `|g| <= bound/2`. Sorted by group word length (unknown
    /// lengths last), then discovery order; the identity comes first.
    pub fn ball(&self, group: &WordGroup) -> Vec<ZMatrix> {
        self.ball_with_words(group).into_iter().map(|(m, _)| m).collect()
    }

    /// Like [`WordCone::ball`], with a word for every element.
    pub fn ball_with_words(&self, group: &WordGroup) -> Vec<(ZMatrix, Word)> {
        let half = (group.bound() / 2).max(1);
        let gball = group.ball();
        let mut conj: Vec<(ZMatrix, Word)> = Vec::new();
        for s in &self.gens {
            let Some(sw) = group.word_of(s) else { continue };
            for (i, g) in gball.elems.iter().enumerate() {
                if gball.length(i) > half {
                    continue;
                }
                let c = group.conjugate(g, s);
                if conj.iter().all(|(m, _)| *m != c) {
                    let gw = &gball.words[i];
                    conj.push((c, concat(&concat(gw, &sw), &inverse_word(gw))));
                }
            }
        }
        let id = group.identity();
        let mut elems: Vec<(ZMatrix, Word)> = vec![(id.clone(), Vec::new())];
        let mut seen: std::collections::HashSet<ZMatrix> = [id].into_iter().collect();
        let mut frontier = vec![0usize];
        for _ in 0..half {
            let mut next = Vec::new();
            for &i in &frontier {
                for (c, cw) in &conj {
                    let m = elems[i].0.mul(c);
                    if seen.insert(m.clone()) {
                        next.push(elems.len());
                        let w = concat(&elems[i].1, cw);
                        elems.push((m, w));
                    }
                }
            }
            frontier = next;
        }
        let len = |m: &ZMatrix| gball.position(m).map_or(u32::MAX, |i| gball.length(i));
        let mut keyed: Vec<(u32, usize, (ZMatrix, Word))> =
            elems.into_iter().enumerate().map(|(i, e)| (len(&e.0), i, e)).collect();
        keyed.sort_by_key(|(l, i, _)| (*l, *i));
        keyed
            .into_iter()
            .map(|(_, _, (m, w))| {
                let w = group.word_of(&m).unwrap_or(w);
                (m, w)
            })
            .collect()
    }

    /// `Some(answer)` when membership is decided exactly.
    pub fn exact_contains(&self, m: &ZMatrix) -> Option<bool> {
        self.exact.map(|e| e.contains(m))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn heisenberg_relations_found_in_ball() {
        let h = WordGroup::heisenberg(4);
        let ball = h.ball();
        assert!(ball.len() > 20);
        let z = h.gens()[2].clone();
        assert_eq!(h.commutator(&h.gens()[0], &h.gens()[1]), z);
        // the exponent-sum relation of z = [x,y] is found
        assert!(ball.relations.iter().any(|r| r == &crate::linalg::from_i64s::<Int>(&[0, 0, 1])));
        assert!(!h.is_abelian());
    }

    #[test]
    fn words_round_trip() {
        let h = WordGroup::heisenberg(3);
        let w = parse_word("x*y^-1*z^2", h.names()).unwrap();
        assert_eq!(format_word(&w, h.names()), "x*y^-1*z^2");
        assert_eq!(h.element(&h.identity()).to_string(), "identity");
        assert_eq!(h.element(&h.gens()[2]).to_string(), "z");
    }

    #[test]
    fn heisenberg_p0_ball_respects_predicate() {
        let h = WordGroup::heisenberg(4);
        let cone = WordCone {
            gens: vec![h.gens()[0].clone(), h.gens()[2].clone()],
            exact: Some(ExactCone::HeisenbergP0),
        };
        let ball = cone.ball(&h);
        assert!(ball.iter().all(|m| ExactCone::HeisenbergP0.contains(m)));
        let zinv = h.inv(&h.gens()[2]);
        assert!(!ExactCone::HeisenbergP0.contains(&zinv));
        assert_eq!(ball[0], h.identity());
    }
}
