//! The `scgame v1` text format.
//!
//! ```text
//! scgame v1 kind=<pc|sc|lpce|orlpce|intersectsc> n=<n> p=<p> [r=<r>] [t=<t>]
//! table 0
//! 0: 3
//! 1: 0 2
//! ...
//! ```
//!
//! Every table block is `table <index>` followed by `n` lines `x: y1 y2 ...`
//! with the `y`s strictly ascending (exactly one `y` for pointer chasing
//! tables, possibly none for set chasing tables). Elements are 0-based and
//! the chase starts at element `0`. Table order: `funcs[0..p]` of the left
//! (or only) side, then the right side; OR instances list item after item.

use std::fmt::Write as _;

use super::{
    FunctionTable, IndexSet, IntersectScInstance, LpceInstance, OrLpceInstance, PcInstance,
    ScInstance, SetFunctionTable,
};
use crate::{Error, Result};

/// Any game instance that can be stored as `scgame v1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GameInstance {
    Pc(PcInstance),
    Sc(ScInstance),
    Lpce(LpceInstance),
    OrLpce(OrLpceInstance),
    IntersectSc(IntersectScInstance),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Pc,
    Sc,
    Lpce,
    OrLpce,
    IntersectSc,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Pc => "pc",
            Kind::Sc => "sc",
            Kind::Lpce => "lpce",
            Kind::OrLpce => "orlpce",
            Kind::IntersectSc => "intersectsc",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "pc" => Kind::Pc,
            "sc" => Kind::Sc,
            "lpce" => Kind::Lpce,
            "orlpce" => Kind::OrLpce,
            "intersectsc" => Kind::IntersectSc,
            _ => return None,
        })
    }

    fn is_pointer(self) -> bool {
        matches!(self, Kind::Pc | Kind::Lpce | Kind::OrLpce)
    }
}

impl GameInstance {
    fn kind(&self) -> Kind {
        match self {
            GameInstance::Pc(_) => Kind::Pc,
            GameInstance::Sc(_) => Kind::Sc,
            GameInstance::Lpce(_) => Kind::Lpce,
            GameInstance::OrLpce(_) => Kind::OrLpce,
            GameInstance::IntersectSc(_) => Kind::IntersectSc,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        self.kind().name()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            GameInstance::Pc(inst) => {
                header(&mut out, Kind::Pc, inst.n(), inst.p(), None, None);
                write_pc_tables(&mut out, 0, inst.funcs());
            }
            GameInstance::Sc(inst) => {
                header(&mut out, Kind::Sc, inst.n(), inst.p(), None, None);
                write_sc_tables(&mut out, 0, inst.funcs());
            }
            GameInstance::Lpce(inst) => {
                header(&mut out, Kind::Lpce, inst.n(), inst.p(), Some(inst.r()), None);
                write_pc_tables(&mut out, 0, inst.left().funcs());
                write_pc_tables(&mut out, inst.p(), inst.right().funcs());
            }
            GameInstance::OrLpce(inst) => {
                let p = inst.p();
                header(&mut out, Kind::OrLpce, inst.n(), p, Some(inst.r()), Some(inst.t()));
                for (j, item) in inst.items().iter().enumerate() {
                    write_pc_tables(&mut out, 2 * p * j, item.left().funcs());
                    write_pc_tables(&mut out, 2 * p * j + p, item.right().funcs());
                }
            }
            GameInstance::IntersectSc(inst) => {
                header(&mut out, Kind::IntersectSc, inst.n(), inst.p(), None, None);
                write_sc_tables(&mut out, 0, inst.left().funcs());
                write_sc_tables(&mut out, inst.p(), inst.right().funcs());
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()));
        let (hline, head) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty input"))?;
        let h = Header::parse(hline, head)?;

        let tables_needed = match h.kind {
            Kind::Pc | Kind::Sc => h.p,
            Kind::Lpce | Kind::IntersectSc => 2 * h.p,
            Kind::OrLpce => 2 * h.p * h.t.unwrap_or(0),
        };
        let mut reader = TableReader {
            lines: &mut lines,
            n: h.n,
            pointer: h.kind.is_pointer(),
            last_line: hline,
        };
        let mut sets = Vec::with_capacity(tables_needed);
        for idx in 0..tables_needed {
            sets.push(reader.table(idx)?);
        }
        let last = reader.last_line;
        if let Some((line, extra)) = reader.lines.find(|(_, l)| !l.trim().is_empty()) {
            return Err(Error::parse(line, format!("unexpected trailing content {extra:?}")));
        }

        let at = |e: Error| match e {
            Error::Domain(msg) => Error::parse(last, msg),
            other => other,
        };
        let pc_side = |tables: &[Vec<IndexSet>]| -> Result<PcInstance> {
            PcInstance::new(
                tables
                    .iter()
                    .map(|t| FunctionTable::new(t.iter().map(|s| *s.first().unwrap()).collect()))
                    .collect::<Result<_>>()?,
            )
        };
        let sc_side = |tables: &[Vec<IndexSet>]| -> Result<ScInstance> {
            ScInstance::new(
                tables
                    .iter()
                    .map(|t| SetFunctionTable::new(t.clone()))
                    .collect::<Result<_>>()?,
            )
        };
        let p = h.p;
        let inst = match h.kind {
            Kind::Pc => GameInstance::Pc(pc_side(&sets).map_err(at)?),
            Kind::Sc => GameInstance::Sc(sc_side(&sets).map_err(at)?),
            Kind::Lpce => GameInstance::Lpce(
                LpceInstance::new(pc_side(&sets[..p]).map_err(at)?, pc_side(&sets[p..]).map_err(at)?, h.r.unwrap())
                    .map_err(at)?,
            ),
            Kind::OrLpce => {
                let items = sets
                    .chunks(2 * p)
                    .map(|c| LpceInstance::new(pc_side(&c[..p])?, pc_side(&c[p..])?, h.r.unwrap()))
                    .collect::<Result<Vec<_>>>()
                    .map_err(at)?;
                GameInstance::OrLpce(OrLpceInstance::new(items).map_err(at)?)
            }
            Kind::IntersectSc => GameInstance::IntersectSc(
                IntersectScInstance::new(sc_side(&sets[..p]).map_err(at)?, sc_side(&sets[p..]).map_err(at)?)
                    .map_err(at)?,
            ),
        };
        Ok(inst)
    }
}

fn header(out: &mut String, kind: Kind, n: usize, p: usize, r: Option<usize>, t: Option<usize>) {
    write!(out, "scgame v1 kind={} n={n} p={p}", kind.name()).unwrap();
    if let Some(r) = r {
        write!(out, " r={r}").unwrap();
    }
    if let Some(t) = t {
        write!(out, " t={t}").unwrap();
    }
    out.push('\n');
}

fn write_pc_tables(out: &mut String, first: usize, funcs: &[FunctionTable]) {
    for (i, f) in funcs.iter().enumerate() {
        writeln!(out, "table {}", first + i).unwrap();
        for (x, y) in f.image().iter().enumerate() {
            writeln!(out, "{x}: {y}").unwrap();
        }
    }
}

fn write_sc_tables(out: &mut String, first: usize, funcs: &[SetFunctionTable]) {
    for (i, f) in funcs.iter().enumerate() {
        writeln!(out, "table {}", first + i).unwrap();
        for (x, ys) in f.image().iter().enumerate() {
            write!(out, "{x}:").unwrap();
            for y in ys {
                write!(out, " {y}").unwrap();
            }
            out.push('\n');
        }
    }
}

struct Header {
    kind: Kind,
    n: usize,
    p: usize,
    r: Option<usize>,
    t: Option<usize>,
}

impl Header {
    fn parse(line: usize, text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        if tokens.next() != Some("scgame") || tokens.next() != Some("v1") {
            return Err(Error::parse(line, "expected header `scgame v1 ...`"));
        }
        let (mut kind, mut n, mut p, mut r, mut t) = (None, None, None, None, None);
        for tok in tokens {
            let (key, value) = tok
                .split_once('=')
                .ok_or_else(|| Error::parse(line, format!("malformed header field {tok:?}")))?;
            let slot = match key {
                "kind" => {
                    kind = Some(Kind::parse(value).ok_or_else(|| {
                        Error::parse(line, format!("unknown kind {value:?}"))
                    })?);
                    continue;
                }
                "n" => &mut n,
                "p" => &mut p,
                "r" => &mut r,
                "t" => &mut t,
                _ => return Err(Error::parse(line, format!("unknown header field {key:?}"))),
            };
            if slot.is_some() {
                return Err(Error::parse(line, format!("duplicate header field {key:?}")));
            }
            *slot = Some(positive(line, key, value)?);
        }
        let kind = kind.ok_or_else(|| Error::parse(line, "missing kind="))?;
        let n = n.ok_or_else(|| Error::parse(line, "missing n="))?;
        let p = p.ok_or_else(|| Error::parse(line, "missing p="))?;
        let wants_r = matches!(kind, Kind::Lpce | Kind::OrLpce);
        let wants_t = kind == Kind::OrLpce;
        if wants_r != r.is_some() {
            return Err(Error::parse(line, format!("r= is {} for kind={}", if wants_r { "required" } else { "not allowed" }, kind.name())));
        }
        if wants_t != t.is_some() {
            return Err(Error::parse(line, format!("t= is {} for kind={}", if wants_t { "required" } else { "not allowed" }, kind.name())));
        }
        Ok(Header { kind, n, p, r, t })
    }
}

fn positive(line: usize, key: &str, value: &str) -> Result<usize> {
    match value.parse::<usize>() {
        Ok(v) if v >= 1 => Ok(v),
        _ => Err(Error::parse(line, format!("{key}= must be a positive integer, got {value:?}"))),
    }
}

struct TableReader<'a, I: Iterator<Item = (usize, &'a str)>> {
    lines: &'a mut I,
    n: usize,
    pointer: bool,
    last_line: usize,
}

impl<'a, I: Iterator<Item = (usize, &'a str)>> TableReader<'a, I> {
    fn next_line(&mut self) -> Result<(usize, &'a str)> {
        let next = self.lines.next();
        match next {
            Some((line, text)) => {
                self.last_line = line;
                Ok((line, text))
            }
            None => Err(Error::parse(self.last_line + 1, "unexpected end of input")),
        }
    }

    fn table(&mut self, index: usize) -> Result<Vec<IndexSet>> {
        let (line, text) = self.next_line()?;
        if text != format!("table {index}") {
            return Err(Error::parse(line, format!("expected `table {index}`, got {text:?}")));
        }
        (0..self.n).map(|x| self.row(x)).collect()
    }

    fn row(&mut self, x: usize) -> Result<IndexSet> {
        let (line, text) = self.next_line()?;
        let (lhs, rhs) = text
            .split_once(':')
            .ok_or_else(|| Error::parse(line, format!("expected `{x}: ...`, got {text:?}")))?;
        if lhs.trim().parse::<usize>().ok() != Some(x) {
            return Err(Error::parse(line, format!("expected row {x}, got {lhs:?}")));
        }
        let mut set = IndexSet::new();
        let mut prev = None;
        for tok in rhs.split_whitespace() {
            let y: usize = tok
                .parse()
                .map_err(|_| Error::parse(line, format!("bad element {tok:?}")))?;
            if y >= self.n {
                return Err(Error::parse(line, format!("element {y} outside [0, {})", self.n)));
            }
            if prev.is_some_and(|p| y <= p) {
                return Err(Error::parse(line, "elements must be strictly ascending"));
            }
            prev = Some(y);
            set.insert(y);
        }
        if self.pointer && set.len() != 1 {
            return Err(Error::parse(line, "pointer chasing rows need exactly one value"));
        }
        Ok(set)
    }
}
