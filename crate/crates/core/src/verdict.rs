//! Three-valued answers and the elements they quote.

use std::fmt;
use std::sync::Arc;

use crate::{ZMatrix, ZVec};

/// An element of some carrier, in the coordinates of its backend.
///
/// Block elements print as `(v1,..,vr)` when the finite part is trivial,
/// as the bare index when the free rank is zero, and as `(v1,..,vr;i)`
/// otherwise. Word elements print as a shortest known word.
#[derive(Clone, Debug)]
pub enum Element {
    Block { free: ZVec, fin: Option<usize> },
    Word(WordElement),
}

#[derive(Clone, Debug)]
pub struct WordElement {
    pub matrix: ZMatrix,
    /// Runs of `(generator, exponent)`.
    pub word: Vec<(usize, i64)>,
    pub names: Arc<Vec<String>>,
}

impl PartialEq for Element {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Element::Block { free: a, fin: x }, Element::Block { free: b, fin: y }) => {
                a == b && x.unwrap_or(0) == y.unwrap_or(0)
            }
            (Element::Word(a), Element::Word(b)) => a.matrix == b.matrix,
            _ => false,
        }
    }
}

impl Eq for Element {}

impl std::hash::Hash for Element {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Element::Block { free, fin } => {
                free.hash(state);
                fin.unwrap_or(0).hash(state);
            }
            Element::Word(w) => w.matrix.hash(state),
        }
    }
}

fn write_vec(f: &mut fmt::Formatter<'_>, v: &[crate::Int]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Block { free, fin } => match (free.is_empty(), fin) {
                (true, Some(i)) => write!(f, "{i}"),
                (true, None) => write!(f, "0"),
                (false, None) => {
                    write!(f, "(")?;
                    write_vec(f, free)?;
                    write!(f, ")")
                }
                (false, Some(i)) => {
                    write!(f, "(")?;
                    write_vec(f, free)?;
                    write!(f, ";{i})")
                }
            },
            Element::Word(w) => {
                if w.word.is_empty() {
                    return write!(f, "identity");
                }
                for (k, (g, e)) in w.word.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    let name = &w.names[*g];
                    if *e == 1 {
                        write!(f, "{name}")?;
                    } else {
                        write!(f, "{name}^{e}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// Renders a list of elements as `(a, b, c)`; a single element prints bare.
pub fn render_elements(elems: &[Element]) -> String {
    if elems.len() == 1 {
        return elems[0].to_string();
    }
    let parts: Vec<String> = elems.iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// Supporting data for a verdict: a short reason and the elements involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub reason: String,
    pub elements: Vec<Element>,
}

impl Witness {
    pub fn new(reason: impl Into<String>, elements: Vec<Element>) -> Self {
        Witness {
            reason: reason.into(),
            elements,
        }
    }

    pub fn reason(reason: impl Into<String>) -> Self {
        Self::new(reason, Vec::new())
    }

    pub fn rendered(&self) -> String {
        render_elements(&self.elements)
    }
}

/// Result of a decision procedure.
///
/// `Unknown` means the search ran out of room at `bound`. It may carry a
/// candidate counterexample whose refutation could not be confirmed
/// exactly (a "fails modulo bound" answer).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds(Witness),
    Fails(Witness),
    Unknown { bound: u32, note: Option<Witness> },
}

impl Verdict {
    pub fn holds(reason: impl Into<String>) -> Self {
        Verdict::Holds(Witness::reason(reason))
    }

    pub fn fails(reason: impl Into<String>, elements: Vec<Element>) -> Self {
        Verdict::Fails(Witness::new(reason, elements))
    }

    pub fn unknown(bound: u32) -> Self {
        Verdict::Unknown { bound, note: None }
    }

    pub fn is_holds(&self) -> bool {
        matches!(self, Verdict::Holds(_))
    }

    pub fn is_fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn is_definite(&self) -> bool {
        !matches!(self, Verdict::Unknown { .. })
    }

    /// `Some(true)` for Holds, `Some(false)` for Fails.
    pub fn definite(&self) -> Option<bool> {
        match self {
            Verdict::Holds(_) => Some(true),
            Verdict::Fails(_) => Some(false),
            Verdict::Unknown { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Holds(w) | Verdict::Fails(w) => Some(w),
            Verdict::Unknown { note, .. } => note.as_ref(),
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Holds(_) => "HOLDS",
            Verdict::Fails(_) => "FAILS",
            Verdict::Unknown { .. } => "UNKNOWN",
        }
    }

    /// Conjunction: the first failure wins, then the first unknown.
    pub fn and(self, other: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Holds(w) => match other() {
                Verdict::Holds(w2) => {
                    let reason = if w.reason.is_empty() {
                        w2.reason
                    } else if w2.reason.is_empty() {
                        w.reason
                    } else {
                        format!("{}; {}", w.reason, w2.reason)
                    };
                    Verdict::Holds(Witness::new(reason, Vec::new()))
                }
                v => v,
            },
            Verdict::Fails(w) => Verdict::Fails(w),
            Verdict::Unknown { bound, note } => match other() {
                Verdict::Fails(w) => Verdict::Fails(w),
                _ => Verdict::Unknown { bound, note },
            },
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds(w) => write!(f, "HOLDS (certificate: {})", w.reason),
            Verdict::Fails(w) => {
                if w.elements.is_empty() {
                    write!(f, "FAILS ({})", w.reason)
                } else {
                    write!(f, "FAILS (witness: {}; {})", w.rendered(), w.reason)
                }
            }
            Verdict::Unknown { bound, note: None } => write!(f, "UNKNOWN (bound {bound})"),
            Verdict::Unknown { bound, note: Some(w) } => {
                if w.elements.is_empty() {
                    write!(f, "UNKNOWN (bound {bound}; {})", w.reason)
                } else {
                    write!(f, "UNKNOWN (bound {bound}; candidate: {}; {})", w.rendered(), w.reason)
                }
            }
        }
    }
}
