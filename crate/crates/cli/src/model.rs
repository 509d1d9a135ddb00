//! The line-oriented model format: lexer, parser and syntax tree.
//!
//! ```text
//! group G = table {order 2; id 0; row 0: 0 1; row 1: 1 0}
//! group Z2 = block {rank 2; finite trivial}
//! group H = word {gens [[[1,1,0],[0,1,0],[0,0,1]]; ...]; bound 6; relators [x*z*x^-1*z^-1]}
//! cone P on Z2 = {lattice [[0,1]]; pointed [[1,0]]; functional [1,0]; finite {0}}
//! cone P0 on H = {gens [x, z]; exact heisenberg-p0}
//! pog X = (Z2, P)
//! morphism f : X -> Y = {matrix [[1,0]]; finite-map [0]}
//! check central f --bound 4
//! ```
//!
//! Every declaration sits on one line; `#` starts a comment.

use std::fmt;

/// A parse or resolution error with its position (1-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            col: self.col,
            message: message.into(),
        }
    }
}

/// An identifier with its position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupBody {
    Table { order: usize, id: usize, rows: Vec<Vec<usize>> },
    Block { rank: usize, finite: Name },
    Word { gens: Vec<Vec<Vec<i64>>>, names: Option<Vec<String>>, bound: Option<u32>, relators: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BlockConeBody {
    pub lattice: Vec<Vec<i64>>,
    pub pointed: Vec<Vec<i64>>,
    pub functional: Option<Vec<i64>>,
    pub finite: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeBody {
    Block(BlockConeBody),
    Word { gens: Vec<String>, exact: Option<String> },
}

/// Element literal: `3`, `(1,0)`, `(1,0;3)`, or a word such as `x*y^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemLit {
    Index(usize),
    Vector(Vec<i64>, Option<usize>),
    Word(String),
}

impl fmt::Display for ElemLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElemLit::Index(i) => write!(f, "{i}"),
            ElemLit::Vector(v, fin) => {
                write!(f, "({}", join(v))?;
                if let Some(i) = fin {
                    write!(f, ";{i}")?;
                }
                write!(f, ")")
            }
            ElemLit::Word(w) => write!(f, "{w}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MorphismBody {
    pub matrix: Option<Vec<Vec<i64>>>,
    pub finite_map: Option<Vec<usize>>,
    pub mixed: Option<Vec<usize>>,
    pub images: Option<Vec<ElemLit>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckDecl {
    pub predicate: Name,
    pub target: Name,
    pub bound: Option<u32>,
    pub base: Option<Name>,
    pub tag: Option<Name>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Group { name: Name, body: GroupBody },
    Cone { name: Name, group: Name, body: ConeBody },
    Pog { name: Name, group: Name, cone: Name },
    Morphism { name: Name, src: Name, dst: Name, body: MorphismBody },
    Check(CheckDecl),
}

/// A parsed model file, declarations in source order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ModelFile {
    pub decls: Vec<Decl>,
}

impl ModelFile {
    pub fn checks(&self) -> impl Iterator<Item = &CheckDecl> {
        self.decls.iter().filter_map(|d| match d {
            Decl::Check(c) => Some(c),
            _ => None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Punct(char),
    Arrow,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(i) => write!(f, "'{i}'"),
            Tok::Punct(c) => write!(f, "'{c}'"),
            Tok::Arrow => write!(f, "'->'"),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '@' | '.' | '*' | '^' | '+' | '-')
}

fn lex(line: &str, lineno: usize) -> Result<Vec<(Tok, Span)>, ParseError> {
    let chars: Vec<char> = line.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line: lineno, col: i + 1 };
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, span));
            i += 2;
            continue;
        }
        if "{}[]();:,=".contains(c) {
            out.push((Tok::Punct(c), span));
            i += 1;
            continue;
        }
        if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>')) {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let tok = match text.parse::<i64>() {
                Ok(v) => Tok::Int(v),
                Err(_) => Tok::Ident(text),
            };
            out.push((tok, span));
            continue;
        }
        return Err(span.error(format!("unexpected character '{c}'")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or_else(|| self.end.clone(), |t| t.1.clone())
    }

    fn next(&mut self, what: &str) -> Result<(Tok, Span), ParseError> {
        let t = self
            .toks
            .get(self.pos)
            .cloned()
            .ok_or_else(|| self.end.error(format!("expected {what}, found end of line")))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let (t, s) = self.next(&format!("'{c}'"))?;
        if t == Tok::Punct(c) {
            Ok(())
        } else {
            Err(s.error(format!("expected '{c}', found {t}")))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<Name, ParseError> {
        let (t, span) = self.next(what)?;
        match t {
            Tok::Ident(text) => Ok(Name { text, span }),
            // names such as `2` are allowed for catalog compatibility
            Tok::Int(i) => Ok(Name { text: i.to_string(), span }),
            other => Err(span.error(format!("expected {what}, found {other}"))),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let (t, s) = self.next(&format!("'{kw}'"))?;
        match t {
            Tok::Ident(x) if x == kw => Ok(()),
            other => Err(s.error(format!("expected '{kw}', found {other}"))),
        }
    }

    fn int(&mut self) -> Result<i64, ParseError> {
        let (t, s) = self.next("an integer")?;
        match t {
            Tok::Int(v) => Ok(v),
            other => Err(s.error(format!("expected an integer, found {other}"))),
        }
    }

    fn uint(&mut self) -> Result<usize, ParseError> {
        let s = self.span();
        let v = self.int()?;
        usize::try_from(v).map_err(|_| s.error("expected a non-negative integer"))
    }

    fn int_list(&mut self) -> Result<Vec<i64>, ParseError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.int()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn uint_list(&mut self) -> Result<Vec<usize>, ParseError> {
        let s = self.span();
        self.int_list()?
            .into_iter()
            .map(|v| usize::try_from(v).map_err(|_| s.error("expected non-negative entries")))
            .collect()
    }

    fn matrix(&mut self) -> Result<Vec<Vec<i64>>, ParseError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.int_list()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn index_set(&mut self) -> Result<Vec<usize>, ParseError> {
        self.expect('{')?;
        let mut out = Vec::new();
        if self.eat('}') {
            return Ok(out);
        }
        loop {
            out.push(self.uint()?);
            if self.eat('}') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn name_list(&mut self) -> Result<Vec<String>, ParseError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.ident("a name")?.text);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    fn elem(&mut self) -> Result<ElemLit, ParseError> {
        let s = self.span();
        match self.peek() {
            Some(Tok::Int(_)) => Ok(ElemLit::Index(self.uint()?)),
            Some(Tok::Ident(_)) => Ok(ElemLit::Word(self.ident("a word")?.text)),
            Some(Tok::Punct('(')) => {
                self.pos += 1;
                let mut v = vec![self.int()?];
                let mut fin = None;
                loop {
                    if self.eat(')') {
                        break;
                    }
                    if self.eat(';') {
                        fin = Some(self.uint()?);
                        self.expect(')')?;
                        break;
                    }
                    self.expect(',')?;
                    v.push(self.int()?);
                }
                Ok(ElemLit::Vector(v, fin))
            }
            _ => Err(s.error("expected an element")),
        }
    }

    fn elem_list(&mut self) -> Result<Vec<ElemLit>, ParseError> {
        self.expect('[')?;
        let mut out = Vec::new();
        if self.eat(']') {
            return Ok(out);
        }
        loop {
            out.push(self.elem()?);
            if self.eat(']') {
                return Ok(out);
            }
            self.expect(',')?;
        }
    }

    /// `{ field ; field ; ... }`, dispatching on each field's key.
    fn fields(&mut self, mut field: impl FnMut(&mut Parser, Name) -> Result<(), ParseError>) -> Result<(), ParseError> {
        self.expect('{')?;
        if self.eat('}') {
            return Ok(());
        }
        loop {
            let key = self.ident("a field name")?;
            field(self, key)?;
            if self.eat('}') {
                return Ok(());
            }
            self.expect(';')?;
        }
    }

    fn done(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((t, s)) => Err(s.error(format!("unexpected {t} after declaration"))),
        }
    }
}

fn duplicate(key: &Name) -> ParseError {
    key.span.error(format!("field '{}' given twice", key.text))
}

fn set_once<T>(slot: &mut Option<T>, key: &Name, v: T) -> Result<(), ParseError> {
    if slot.is_some() {
        return Err(duplicate(key));
    }
    *slot = Some(v);
    Ok(())
}

fn parse_group(p: &mut Parser) -> Result<Decl, ParseError> {
    let name = p.ident("a group name")?;
    p.expect('=')?;
    let kind = p.ident("'table', 'block' or 'word'")?;
    let body = match kind.text.as_str() {
        "table" => {
            let (mut order, mut id) = (None, None);
            let mut rows: Vec<(usize, Vec<usize>)> = Vec::new();
            p.fields(|p, key| match key.text.as_str() {
                "order" => set_once(&mut order, &key, p.uint()?),
                "id" => set_once(&mut id, &key, p.uint()?),
                "row" => {
                    let i = p.uint()?;
                    p.expect(':')?;
                    let mut row = Vec::new();
                    while let Some(Tok::Int(_)) = p.peek() {
                        row.push(p.uint()?);
                    }
                    rows.push((i, row));
                    Ok(())
                }
                _ => Err(key.span.error(format!("unknown table field '{}'", key.text))),
            })?;
            let order = order.ok_or_else(|| kind.span.error("table needs 'order'"))?;
            let id = id.ok_or_else(|| kind.span.error("table needs 'id'"))?;
            let mut table = vec![None; order];
            for (i, row) in rows {
                if i >= order {
                    return Err(kind.span.error(format!("row {i} out of range")));
                }
                if table[i].is_some() {
                    return Err(kind.span.error(format!("row {i} given twice")));
                }
                table[i] = Some(row);
            }
            let rows = table
                .into_iter()
                .enumerate()
                .map(|(i, r)| r.ok_or_else(|| kind.span.error(format!("row {i} missing"))))
                .collect::<Result<_, _>>()?;
            GroupBody::Table { order, id, rows }
        }
        "block" => {
            let (mut rank, mut finite) = (None, None);
            p.fields(|p, key| match key.text.as_str() {
                "rank" => set_once(&mut rank, &key, p.uint()?),
                "finite" => {
                    let n = p.ident("a group name")?;
                    set_once(&mut finite, &key, n)
                }
                _ => Err(key.span.error(format!("unknown block field '{}'", key.text))),
            })?;
            let rank = rank.ok_or_else(|| kind.span.error("block needs 'rank'"))?;
            let finite = finite.unwrap_or(Name {
                text: "trivial".into(),
                span: kind.span.clone(),
            });
            GroupBody::Block { rank, finite }
        }
        "word" => {
            let (mut gens, mut names, mut bound, mut relators) = (None, None, None, None);
            p.fields(|p, key| match key.text.as_str() {
                "gens" => {
                    p.expect('[')?;
                    let mut ms = vec![p.matrix()?];
                    while p.eat(';') {
                        ms.push(p.matrix()?);
                    }
                    p.expect(']')?;
                    set_once(&mut gens, &key, ms)
                }
                "names" => {
                    let n = p.name_list()?;
                    set_once(&mut names, &key, n)
                }
                "bound" => {
                    let s = p.span();
                    let b = u32::try_from(p.uint()?).map_err(|_| s.error("bound too large"))?;
                    set_once(&mut bound, &key, b)
                }
                "relators" => {
                    let r = p.name_list()?;
                    set_once(&mut relators, &key, r)
                }
                _ => Err(key.span.error(format!("unknown word field '{}'", key.text))),
            })?;
            let gens = gens.ok_or_else(|| kind.span.error("word group needs 'gens'"))?;
            GroupBody::Word {
                gens,
                names,
                bound,
                relators: relators.unwrap_or_default(),
            }
        }
        other => return Err(kind.span.error(format!("unknown group kind '{other}'"))),
    };
    Ok(Decl::Group { name, body })
}

fn parse_cone(p: &mut Parser) -> Result<Decl, ParseError> {
    let name = p.ident("a cone name")?;
    p.keyword("on")?;
    let group = p.ident("a group name")?;
    p.expect('=')?;
    let mut block = BlockConeBody::default();
    let (mut lattice, mut pointed, mut functional, mut finite) = (None, None, None, None);
    let (mut gens, mut exact): (Option<Vec<String>>, Option<String>) = (None, None);
    p.fields(|p, key| match key.text.as_str() {
        "lattice" => {
            let m = p.matrix()?;
            set_once(&mut lattice, &key, m)
        }
        "pointed" => {
            let m = p.matrix()?;
            set_once(&mut pointed, &key, m)
        }
        "functional" => {
            let v = p.int_list()?;
            set_once(&mut functional, &key, v)
        }
        "finite" => {
            let s = p.index_set()?;
            set_once(&mut finite, &key, s)
        }
        "gens" => {
            let g = p.name_list()?;
            set_once(&mut gens, &key, g)
        }
        "exact" => {
            let e = p.ident("an exact cone name")?.text;
            set_once(&mut exact, &key, e)
        }
        _ => Err(key.span.error(format!("unknown cone field '{}'", key.text))),
    })?;
    let body = if gens.is_some() || exact.is_some() {
        if lattice.is_some() || pointed.is_some() || functional.is_some() || finite.is_some() {
            return Err(name.span.error("cone mixes word fields with block fields"));
        }
        ConeBody::Word {
            gens: gens.unwrap_or_default(),
            exact,
        }
    } else {
        block.lattice = lattice.unwrap_or_default();
        block.pointed = pointed.unwrap_or_default();
        block.functional = functional;
        block.finite = finite;
        ConeBody::Block(block)
    };
    Ok(Decl::Cone { name, group, body })
}

fn parse_morphism(p: &mut Parser) -> Result<Decl, ParseError> {
    let name = p.ident("a morphism name")?;
    p.expect(':')?;
    let src = p.ident("a source object")?;
    let (t, s) = p.next("'->'")?;
    if t != Tok::Arrow {
        return Err(s.error(format!("expected '->', found {t}")));
    }
    let dst = p.ident("a target object")?;
    p.expect('=')?;
    let mut body = MorphismBody::default();
    p.fields(|p, key| match key.text.as_str() {
        "matrix" => {
            let m = p.matrix()?;
            set_once(&mut body.matrix, &key, m)
        }
        "finite-map" => {
            let v = p.uint_list()?;
            set_once(&mut body.finite_map, &key, v)
        }
        "mixed" => {
            let v = p.uint_list()?;
            set_once(&mut body.mixed, &key, v)
        }
        "images" => {
            let v = p.elem_list()?;
            set_once(&mut body.images, &key, v)
        }
        _ => Err(key.span.error(format!("unknown morphism field '{}'", key.text))),
    })?;
    Ok(Decl::Morphism { name, src, dst, body })
}

fn parse_check(p: &mut Parser) -> Result<Decl, ParseError> {
    let predicate = p.ident("a predicate")?;
    let target = p.ident("a morphism or object name")?;
    let mut check = CheckDecl {
        predicate,
        target,
        bound: None,
        base: None,
        tag: None,
    };
    while p.peek().is_some() {
        let flag = p.ident("a flag")?;
        match flag.text.as_str() {
            "--bound" => {
                let s = p.span();
                let b = u32::try_from(p.uint()?).map_err(|_| s.error("bound too large"))?;
                set_once(&mut check.bound, &flag, b)?;
            }
            "--base" => {
                let n = p.ident("an object name")?;
                set_once(&mut check.base, &flag, n)?;
            }
            "--tag" => {
                let n = p.ident("'gc' or 'g'")?;
                set_once(&mut check.tag, &flag, n)?;
            }
            other => return Err(flag.span.error(format!("unknown check flag '{other}'"))),
        }
    }
    Ok(Decl::Check(check))
}

fn parse_line(toks: Vec<(Tok, Span)>, end: Span) -> Result<Decl, ParseError> {
    let mut p = Parser { toks, pos: 0, end };
    let kw = p.ident("a declaration keyword")?;
    let decl = match kw.text.as_str() {
        "group" => parse_group(&mut p)?,
        "cone" => parse_cone(&mut p)?,
        "pog" => {
            let name = p.ident("an object name")?;
            p.expect('=')?;
            p.expect('(')?;
            let group = p.ident("a group name")?;
            p.expect(',')?;
            let cone = p.ident("a cone name")?;
            p.expect(')')?;
            Decl::Pog { name, group, cone }
        }
        "morphism" => parse_morphism(&mut p)?,
        "check" => parse_check(&mut p)?,
        other => return Err(kw.span.error(format!("unknown declaration '{other}'"))),
    };
    p.done()?;
    Ok(decl)
}

/// Parses a model file. Names are not resolved here; see [`crate::resolve`].
pub fn parse_model(text: &str) -> Result<ModelFile, ParseError> {
    let mut decls = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let toks = lex(line, i + 1)?;
        if toks.is_empty() {
            continue;
        }
        let end = Span {
            line: i + 1,
            col: line.chars().count() + 1,
        };
        decls.push(parse_line(toks, end)?);
    }
    Ok(ModelFile { decls })
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    let rows: Vec<String> = m.iter().map(|r| format!("[{}]", join(r))).collect();
    format!("[{}]", rows.join(","))
}

fn fields_text(fields: Vec<String>) -> String {
    format!("{{{}}}", fields.join("; "))
}

impl fmt::Display for Decl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Decl::Group { name, body } => {
                write!(f, "group {} = ", name.text)?;
                match body {
                    GroupBody::Table { order, id, rows } => {
                        let mut fields = vec![format!("order {order}"), format!("id {id}")];
                        for (i, r) in rows.iter().enumerate() {
                            let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                            fields.push(format!("row {i}: {}", cells.join(" ")));
                        }
                        write!(f, "table {}", fields_text(fields))
                    }
                    GroupBody::Block { rank, finite } => {
                        write!(f, "block {}", fields_text(vec![format!("rank {rank}"), format!("finite {}", finite.text)]))
                    }
                    GroupBody::Word { gens, names, bound, relators } => {
                        let ms: Vec<String> = gens.iter().map(|m| matrix_text(m)).collect();
                        let mut fields = vec![format!("gens [{}]", ms.join("; "))];
                        if let Some(n) = names {
                            fields.push(format!("names [{}]", n.join(", ")));
                        }
                        if let Some(b) = bound {
                            fields.push(format!("bound {b}"));
                        }
                        if !relators.is_empty() {
                            fields.push(format!("relators [{}]", relators.join(", ")));
                        }
                        write!(f, "word {}", fields_text(fields))
                    }
                }
            }
            Decl::Cone { name, group, body } => {
                write!(f, "cone {} on {} = ", name.text, group.text)?;
                let mut fields = Vec::new();
                match body {
                    ConeBody::Block(b) => {
                        if !b.lattice.is_empty() {
                            fields.push(format!("lattice {}", matrix_text(&b.lattice)));
                        }
                        if !b.pointed.is_empty() {
                            fields.push(format!("pointed {}", matrix_text(&b.pointed)));
                        }
                        if let Some(l) = &b.functional {
                            fields.push(format!("functional [{}]", join(l)));
                        }
                        if let Some(s) = &b.finite {
                            fields.push(format!("finite {{{}}}", join(s)));
                        }
                    }
                    ConeBody::Word { gens, exact } => {
                        fields.push(format!("gens [{}]", gens.join(", ")));
                        if let Some(e) = exact {
                            fields.push(format!("exact {e}"));
                        }
                    }
                }
                write!(f, "{}", fields_text(fields))
            }
            Decl::Pog { name, group, cone } => write!(f, "pog {} = ({}, {})", name.text, group.text, cone.text),
            Decl::Morphism { name, src, dst, body } => {
                write!(f, "morphism {} : {} -> {} = ", name.text, src.text, dst.text)?;
                let mut fields = Vec::new();
                if let Some(m) = &body.matrix {
                    fields.push(format!("matrix {}", matrix_text(m)));
                }
                if let Some(v) = &body.finite_map {
                    fields.push(format!("finite-map [{}]", join(v)));
                }
                if let Some(v) = &body.mixed {
                    fields.push(format!("mixed [{}]", join(v)));
                }
                if let Some(v) = &body.images {
                    let parts: Vec<String> = v.iter().map(|e| e.to_string()).collect();
                    fields.push(format!("images [{}]", parts.join(", ")));
                }
                write!(f, "{}", fields_text(fields))
            }
            Decl::Check(c) => {
                write!(f, "check {} {}", c.predicate.text, c.target.text)?;
                if let Some(b) = c.bound {
                    write!(f, " --bound {b}")?;
                }
                if let Some(b) = &c.base {
                    write!(f, " --base {}", b.text)?;
                }
                if let Some(t) = &c.tag {
                    write!(f, " --tag {}", t.text)?;
                }
                Ok(())
            }
        }
    }
}

/// Canonical text of a model: one declaration per line.
pub fn print_model(m: &ModelFile) -> String {
    let mut out = String::new();
    for d in &m.decls {
        out.push_str(&d.to_string());
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_comments() {
        assert_eq!(parse_model("").unwrap().decls.len(), 0);
        assert_eq!(parse_model("# nothing\n\n").unwrap().decls.len(), 0);
    }

    #[test]
    fn round_trip() {
        let text = "group Z2 = block {rank 2; finite trivial}\n\
                    cone P on Z2 = {lattice [[0,1]]; pointed [[1,0]]; functional [1,0]}\n\
                    pog X = (Z2, P)\n\
                    morphism f : X -> X = {matrix [[1,0],[0,1]]; images [(1,0;2), x*y^-1, 3]}\n\
                    check central f --bound 4\n";
        let m = parse_model(text).unwrap();
        assert_eq!(print_model(&m), text);
    }

    #[test]
    fn word_group_fields() {
        let text = "group H = word {gens [[[1,1],[0,1]]; [[1,0],[1,1]]]; names [a, b]; bound 3; relators [a*b]}\n";
        let m = parse_model(text).unwrap();
        assert_eq!(print_model(&m), text);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_model("pog X = (G C)").unwrap_err();
        assert_eq!((e.line, e.col), (1, 12));
        let e = parse_model("\ngroup G = table {order 1; id 0; row 0: 0; bogus 1}").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(e.message.contains("bogus"));
    }
}
