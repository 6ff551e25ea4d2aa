//! The line-oriented text format for algebras and builder directives.
//!
//! ```text
//! # the three-element chain
//! carrier 3
//! names 0 a 1
//! xi0 0
//! xi1 1
//! times 0 a = { 0, a, 1 }
//! plus a 1 = { 0, a, 1 }
//! ```
//!
//! Entries not listed are empty. A file may instead hold one builder line:
//! `ring <n>`, `lattice chain <k>`, `lattice powerset <k>`,
//! `lattice divisors <n>` (each lattice form optionally followed by
//! `single`), or `semigroup <table file>`.

use std::fmt::Write as _;

use crate::algebra::{Algebra, Carrier, MultiOp, OpKind};
use crate::bits::ElemSet;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::lattice::FiniteDistLattice;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeKind {
    Chain,
    Powerset,
    Divisors,
}

impl LatticeKind {
    fn keyword(self) -> &'static str {
        match self {
            Self::Chain => "chain",
            Self::Powerset => "powerset",
            Self::Divisors => "divisors",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Builder {
    Ring(usize),
    Lattice {
        kind: LatticeKind,
        param: usize,
        /// Use `x + y = {x∨y}` and `x × y = {x∧y}`.
        single: bool,
    },
    /// Path of a semigroup table file, relative to the document.
    Semigroup(String),
}

impl Builder {
    pub fn lattice(&self) -> Option<Result<FiniteDistLattice>> {
        match *self {
            Builder::Lattice { kind, param, .. } => Some(match kind {
                LatticeKind::Chain => FiniteDistLattice::chain(param),
                LatticeKind::Powerset => FiniteDistLattice::powerset(param),
                LatticeKind::Divisors => FiniteDistLattice::divisors(param),
            }),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Entry {
    pub op: OpKind,
    pub a: usize,
    pub b: usize,
    pub values: ElemSet,
    pub line: usize,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AlgebraDocument {
    Explicit {
        carrier: Carrier,
        entries: Vec<Entry>,
    },
    Builder {
        builder: Builder,
        line: usize,
    },
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    let special = |c: char| matches!(c, '{' | '}' | ',' | '=');
    for (i, c) in body.char_indices() {
        if c.is_whitespace() || special(c) {
            if let Some(s) = start.take() {
                out.push((s, i));
            }
            if special(c) {
                out.push((i, i + c.len_utf8()));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, body.len()));
    }
    out.into_iter()
        .map(|(s, e)| Token {
            text: &body[s..e],
            column: body[..s].chars().count() + 1,
        })
        .collect()
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn number(tok: &Token<'_>, line: usize, what: &str) -> Result<usize> {
    tok.text
        .parse()
        .map_err(|_| parse_err(line, tok.column, format!("expected {what}, found '{}'", tok.text)))
}

fn end_column(line: &str) -> usize {
    line.split('#').next().unwrap_or("").trim_end().chars().count() + 1
}

fn parse_builder(toks: &[Token<'_>], line_no: usize, raw: &str) -> Result<Builder> {
    let missing = |what: &str| parse_err(line_no, end_column(raw), format!("missing {what}"));
    let param = |i: usize, what: &str| -> Result<usize> {
        toks.get(i).ok_or_else(|| missing(what)).and_then(|t| number(t, line_no, what))
    };
    let head = &toks[0];
    let (builder, used) = match head.text {
        "ring" => {
            let n = param(1, "ring size")?;
            if !(2..=ElemSet::CAPACITY).contains(&n) {
                return Err(parse_err(line_no, toks[1].column, format!("ring size must be 2..=64, got {n}")));
            }
            (Builder::Ring(n), 2)
        }
        "lattice" => {
            let kind_tok = toks.get(1).ok_or_else(|| missing("lattice kind"))?;
            let kind = match kind_tok.text {
                "chain" => LatticeKind::Chain,
                "powerset" => LatticeKind::Powerset,
                "divisors" => LatticeKind::Divisors,
                other => {
                    return Err(parse_err(line_no, kind_tok.column, format!("unknown lattice kind '{other}'")))
                }
            };
            let p = param(2, "lattice parameter")?;
            let ok = match kind {
                LatticeKind::Chain => (1..=27).contains(&p),
                LatticeKind::Powerset => p <= 4,
                LatticeKind::Divisors => (1..=60).contains(&p),
            };
            if !ok {
                return Err(parse_err(line_no, toks[2].column, format!("lattice {} {p} is out of range", kind.keyword())));
            }
            let single = toks.get(3).is_some_and(|t| t.text == "single");
            let used = if single { 4 } else { 3 };
            (
                Builder::Lattice {
                    kind,
                    param: p,
                    single,
                },
                used,
            )
        }
        "semigroup" => {
            let path = toks.get(1).ok_or_else(|| missing("table file"))?;
            (Builder::Semigroup(path.text.to_string()), 2)
        }
        _ => unreachable!("caller checks the keyword"),
    };
    if let Some(extra) = toks.get(used) {
        return Err(parse_err(line_no, extra.column, format!("unexpected '{}'", extra.text)));
    }
    Ok(builder)
}

/// Parses the text of an algebra file.
pub fn parse_document(text: &str) -> Result<AlgebraDocument> {
    let mut size: Option<(usize, usize)> = None;
    let mut names: Option<(Vec<String>, usize)> = None;
    let mut xi: [Option<(String, usize, usize)>; 2] = [None, None];
    let mut raw_entries: Vec<(OpKind, Vec<&str>, Vec<usize>, usize)> = Vec::new();
    let mut builder: Option<(Builder, usize)> = None;
    let mut first_table_line: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "ring" | "lattice" | "semigroup" => {
                if builder.is_some() {
                    return Err(parse_err(line_no, head.column, "second builder directive"));
                }
                builder = Some((parse_builder(&toks, line_no, raw)?, line_no));
            }
            "carrier" => {
                if size.is_some() {
                    return Err(parse_err(line_no, head.column, "duplicate carrier line"));
                }
                let tok = toks.get(1).ok_or_else(|| parse_err(line_no, end_column(raw), "missing carrier size"))?;
                let n = number(tok, line_no, "carrier size")?;
                if n == 0 || n > ElemSet::CAPACITY {
                    return Err(parse_err(line_no, tok.column, format!("carrier size must be 1..=64, got {n}")));
                }
                if let Some(extra) = toks.get(2) {
                    return Err(parse_err(line_no, extra.column, format!("unexpected '{}'", extra.text)));
                }
                size = Some((n, line_no));
                first_table_line.get_or_insert(line_no);
            }
            "names" => {
                if names.is_some() {
                    return Err(parse_err(line_no, head.column, "duplicate names line"));
                }
                if let Some(bad) = toks[1..].iter().find(|t| matches!(t.text, "{" | "}" | "," | "=")) {
                    return Err(parse_err(line_no, bad.column, format!("'{}' cannot be an element name", bad.text)));
                }
                names = Some((toks[1..].iter().map(|t| t.text.to_string()).collect(), line_no));
                first_table_line.get_or_insert(line_no);
            }
            "xi0" | "xi1" => {
                let slot = usize::from(head.text == "xi1");
                if xi[slot].is_some() {
                    return Err(parse_err(line_no, head.column, format!("duplicate {} line", head.text)));
                }
                let tok = toks.get(1).ok_or_else(|| parse_err(line_no, end_column(raw), "missing element name"))?;
                if let Some(extra) = toks.get(2) {
                    return Err(parse_err(line_no, extra.column, format!("unexpected '{}'", extra.text)));
                }
                xi[slot] = Some((tok.text.to_string(), line_no, tok.column));
                first_table_line.get_or_insert(line_no);
            }
            "times" | "plus" => {
                let op = if head.text == "times" { OpKind::Times } else { OpKind::Plus };
                let shape = toks.len() >= 6 && toks[3].text == "=" && toks[4].text == "{";
                if !shape || toks.last().map(|t| t.text) != Some("}") {
                    return Err(parse_err(line_no, head.column, "expected '<op> <a> <b> = { <names> }'"));
                }
                let inner = &toks[5..toks.len() - 1];
                let mut members = Vec::new();
                let mut columns = vec![toks[1].column, toks[2].column];
                for (i, t) in inner.iter().enumerate() {
                    let expect_name = i % 2 == 0;
                    let is_comma = t.text == ",";
                    if expect_name == is_comma || matches!(t.text, "{" | "}" | "=") {
                        return Err(parse_err(line_no, t.column, format!("unexpected '{}'", t.text)));
                    }
                    if expect_name {
                        members.push(t.text);
                        columns.push(t.column);
                    }
                }
                if inner.len() % 2 == 0 && !inner.is_empty() {
                    let t = &inner[inner.len() - 1];
                    return Err(parse_err(line_no, t.column, "trailing comma"));
                }
                let mut names_in = vec![toks[1].text, toks[2].text];
                names_in.extend(members);
                raw_entries.push((op, names_in, columns, line_no));
                first_table_line.get_or_insert(line_no);
            }
            other => return Err(parse_err(line_no, head.column, format!("unknown directive '{other}'"))),
        }
    }

    if let Some((builder, line)) = builder {
        if let Some(t) = first_table_line {
            return Err(parse_err(t, 1, "builder directives cannot be mixed with explicit tables"));
        }
        return Ok(AlgebraDocument::Builder { builder, line });
    }
    let Some((n, carrier_line)) = size else {
        return Err(parse_err(1, 1, "missing carrier"));
    };
    let names = match names {
        Some((names, line)) => {
            if names.len() != n {
                return Err(parse_err(line, 1, format!("carrier has {n} elements but {} names", names.len())));
            }
            names
        }
        None => (0..n).map(|i| i.to_string()).collect(),
    };
    let lookup = |name: &str, line: usize, column: usize| -> Result<usize> {
        names
            .iter()
            .position(|m| m == name)
            .ok_or_else(|| parse_err(line, column, format!("undeclared element '{name}'")))
    };
    let xi0 = xi[0].as_ref().map(|(s, l, c)| lookup(s, *l, *c)).transpose()?;
    let xi1 = xi[1].as_ref().map(|(s, l, c)| lookup(s, *l, *c)).transpose()?;
    let carrier = Carrier::new(names.clone(), xi0, xi1).map_err(|e| parse_err(carrier_line, 1, e.to_string()))?;

    let mut entries: Vec<Entry> = Vec::new();
    for (op, names_in, columns, line) in raw_entries {
        let idx: Vec<usize> = names_in
            .iter()
            .zip(&columns)
            .map(|(s, &c)| lookup(s, line, c))
            .collect::<Result<_>>()?;
        let (a, b) = (idx[0], idx[1]);
        if let Some(prev) = entries.iter().find(|e| e.op == op && e.a == a && e.b == b) {
            return Err(parse_err(line, 1, format!("duplicate entry, first given on line {}", prev.line)));
        }
        entries.push(Entry {
            op,
            a,
            b,
            values: idx[2..].iter().copied().collect(),
            line,
        });
    }
    Ok(AlgebraDocument::Explicit { carrier, entries })
}

/// Parses a semigroup table: a `names` line and `mul <a> <b> = <c>` lines.
pub fn parse_semigroup_table(text: &str) -> Result<(Vec<String>, Vec<Vec<usize>>)> {
    let mut names: Option<Vec<String>> = None;
    let mut cells: Vec<(usize, usize, usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokens(raw);
        let Some(head) = toks.first() else { continue };
        match head.text {
            "names" if names.is_none() => names = Some(toks[1..].iter().map(|t| t.text.to_string()).collect()),
            "mul" => {
                let names = names.as_ref().ok_or_else(|| parse_err(line, 1, "mul before names"))?;
                if toks.len() != 5 || toks[3].text != "=" {
                    return Err(parse_err(line, head.column, "expected 'mul <a> <b> = <c>'"));
                }
                let find = |t: &Token<'_>| {
                    names
                        .iter()
                        .position(|n| n == t.text)
                        .ok_or_else(|| parse_err(line, t.column, format!("undeclared element '{}'", t.text)))
                };
                cells.push((find(&toks[1])?, find(&toks[2])?, find(&toks[4])?, line));
            }
            other => return Err(parse_err(line, head.column, format!("unexpected '{other}'"))),
        }
    }
    let names = names.ok_or_else(|| parse_err(1, 1, "missing names"))?;
    let n = names.len();
    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; n]; n];
    for (a, b, c, line) in cells {
        if table[a][b].replace(c).is_some() {
            return Err(parse_err(line, 1, "duplicate entry"));
        }
    }
    let table = table
        .into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter()
                .enumerate()
                .map(|(b, c)| c.ok_or_else(|| parse_err(1, 1, format!("missing entry for {} {}", names[a], names[b]))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((names, table))
}

impl AlgebraDocument {
    /// Builds the algebra. `load` reads the table files named by
    /// `semigroup` directives.
    pub fn build(&self, load: impl Fn(&str) -> Result<String>) -> Result<Algebra> {
        match self {
            AlgebraDocument::Explicit { carrier, entries } => {
                let n = carrier.size();
                let mut times = MultiOp::empty(n);
                let mut plus = MultiOp::empty(n);
                for e in entries {
                    let op = if e.op == OpKind::Times { &mut times } else { &mut plus };
                    op.set(e.a, e.b, e.values);
                }
                Algebra::new(carrier.clone(), times, plus)
            }
            AlgebraDocument::Builder { builder, line } => {
                let at_line = |e: Error| match e {
                    Error::Capacity { .. } => e,
                    other => parse_err(*line, 1, other.to_string()),
                };
                match builder {
                    Builder::Ring(n) => fixtures::ring(*n).map_err(at_line),
                    Builder::Lattice { single, .. } => {
                        let l = builder.lattice().expect("lattice builder").map_err(at_line)?;
                        if *single {
                            fixtures::lattice_algebra_single(&l)
                        } else {
                            fixtures::lattice_algebra(&l)
                        }
                        .map_err(at_line)
                    }
                    Builder::Semigroup(path) => {
                        let text = load(path)?;
                        let (names, table) = parse_semigroup_table(&text)?;
                        fixtures::semigroup(names, &table).map_err(at_line)
                    }
                }
            }
        }
    }
}

/// Parses and builds an algebra whose text names no table files.
pub fn parse_algebra(text: &str) -> Result<Algebra> {
    parse_document(text)?.build(|path| {
        Err(Error::InvalidArgument(format!("cannot load '{path}' without a file context")))
    })
}

fn check_name(name: &str) -> Result<()> {
    let bad = name.is_empty()
        || name.chars().any(|c| c.is_whitespace() || matches!(c, '{' | '}' | ',' | '=' | '#'));
    let keyword = matches!(
        name,
        "carrier" | "names" | "xi0" | "xi1" | "times" | "plus" | "ring" | "lattice" | "semigroup"
    );
    if bad || keyword {
        return Err(Error::InvalidArgument(format!("element name '{name}' cannot be written")));
    }
    Ok(())
}

/// The canonical text of an algebra: header lines, then the non-empty
/// `times` entries and the non-empty `plus` entries in row-major order.
pub fn serialize(alg: &Algebra) -> Result<String> {
    let c = alg.carrier();
    for name in c.names() {
        check_name(name)?;
    }
    let mut out = String::new();
    let _ = writeln!(out, "carrier {}", c.size());
    let _ = writeln!(out, "names {}", c.names().join(" "));
    if let Some(x) = c.xi0() {
        let _ = writeln!(out, "xi0 {}", c.name(x));
    }
    if let Some(x) = c.xi1() {
        let _ = writeln!(out, "xi1 {}", c.name(x));
    }
    for kind in [OpKind::Times, OpKind::Plus] {
        let word = if kind == OpKind::Times { "times" } else { "plus" };
        for a in 0..c.size() {
            for b in 0..c.size() {
                let v = alg.op(kind).get(a, b);
                if !v.is_empty() {
                    let members: Vec<&str> = v.iter().map(|x| c.name(x)).collect();
                    let _ = writeln!(out, "{word} {} {} = {{ {} }}", c.name(a), c.name(b), members.join(", "));
                }
            }
        }
    }
    Ok(out)
}
