//! Definition files and polynomial expressions.
//!
//! A definition file is TOML. See the README for the full grammar; the short
//! version is a `[ring]` table of structure constants, a list of named
//! `[[maps]]` given by matrices, and an optional `[extension]` table that
//! picks `σ_i` and `δ_i` by name and lists the non-commuting relations.

use std::collections::BTreeMap;
use std::ops::Range;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::CorpusEntry;
use crate::graded::{GradedError, Grading};
use crate::maps::{MapError, MapKind, RingMap, SigmaSystem, DEFAULT_DELTA_WORD_CAP};
use crate::pbw::{Extension, PbwError, Relation, SkewPoly};
use crate::ring::{Elem, FiniteRing, RingError};

/// Largest exponent accepted after `^` in an expression.
pub const MAX_EXPR_EXPONENT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("ring: {0}")]
    Ring(#[from] RingError),
    #[error("map {name:?}: {source}")]
    Map { name: String, source: MapError },
    #[error("extension: {0}")]
    Pbw(#[from] PbwError),
    #[error("grading: {0}")]
    Graded(#[from] GradedError),
    #[error("cannot serialise: {0}")]
    Export(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileDoc {
    name: Option<String>,
    ring: RingDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    maps: Vec<MapDoc>,
    extension: Option<ExtDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RingDoc {
    name: Option<String>,
    orders: Vec<u32>,
    one: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degrees: Option<Vec<u32>>,
    products: Vec<Vec<Vec<u32>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapDoc {
    name: String,
    kind: MapKindDoc,
    #[serde(skip_serializing_if = "Option::is_none")]
    partner: Option<String>,
    matrix: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
enum MapKindDoc {
    Endomorphism,
    SigmaDerivation,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtDoc {
    sigmas: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deltas: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    word_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    relations: Vec<RelDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelDoc {
    i: usize,
    j: usize,
    d: Vec<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    linear: Option<Vec<Vec<u32>>>,
}

/// A parsed definition file. The extension, when present, has been through
/// verification; check [`Extension::is_verified`] before doing arithmetic.
#[derive(Debug, Clone, PartialEq)]
pub struct Definition {
    pub name: String,
    pub ring: FiniteRing,
    pub grading: Option<Grading>,
    pub maps: Vec<(String, RingMap)>,
    pub extension: Option<Extension>,
}

impl Definition {
    /// The definition an export of `entry` describes.
    pub fn from_entry(entry: &CorpusEntry) -> Self {
        let maps = entry.extension.as_ref().map(named_maps).unwrap_or_default();
        Definition {
            name: entry.name.clone(),
            ring: entry.ring.clone(),
            grading: entry.grading.clone(),
            maps,
            extension: entry.extension.clone(),
        }
    }

    pub fn map(&self, name: &str) -> Option<&RingMap> {
        self.maps.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

fn named_maps(ext: &Extension) -> Vec<(String, RingMap)> {
    let sys = ext.system();
    let mut out: Vec<(String, RingMap)> =
        sys.sigmas().iter().enumerate().map(|(i, s)| (format!("sigma{}", i + 1), s.clone())).collect();
    if sys.has_nonzero_delta() {
        out.extend(sys.deltas().iter().enumerate().map(|(i, d)| (format!("delta{}", i + 1), d.clone())));
    }
    out
}

fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

fn syntax(src: &str, span: Option<Range<usize>>, message: impl Into<String>) -> FormatError {
    let (line, column) = span.map_or((1, 1), |s| line_col(src, s.start));
    FormatError::Syntax { line, column, message: message.into() }
}

fn elem(ring: &FiniteRing, coords: &[u32], what: impl FnOnce() -> String) -> Result<Elem, FormatError> {
    ring.elem(coords).map_err(|_| {
        FormatError::Invalid(format!(
            "{} must be {} reduced coordinates for orders {:?}, got {:?}",
            what(),
            ring.rank(),
            ring.orders(),
            coords
        ))
    })
}

/// Parses and builds a definition file.
///
/// Syntax and type errors carry a line and column. Errors from the ring,
/// map and extension constructors are passed through unchanged. A
/// presentation that builds but fails its overlap checks is returned
/// unverified rather than rejected.
pub fn parse_definition(src: &str) -> Result<Definition, FormatError> {
    let doc: FileDoc = toml::from_str(src).map_err(|e| syntax(src, e.span(), e.message().trim_end()))?;
    let rd = doc.ring;
    let ring_name = rd.name.or_else(|| doc.name.clone()).unwrap_or_else(|| "R".into());
    let ring = FiniteRing::new(ring_name, rd.orders, rd.products, rd.one)?;
    let grading = rd.degrees.map(|d| Grading::new(&ring, d)).transpose()?;

    let mut maps: Vec<(String, RingMap)> = Vec::new();
    for md in doc.maps {
        if maps.iter().any(|(n, _)| *n == md.name) {
            return Err(FormatError::Invalid(format!("map {:?} is defined twice", md.name)));
        }
        let map_err = |source| FormatError::Map { name: md.name.clone(), source };
        let map = match (md.kind, &md.partner) {
            (MapKindDoc::Endomorphism, None) => RingMap::endomorphism(&ring, md.matrix).map_err(map_err)?,
            (MapKindDoc::Endomorphism, Some(_)) => {
                return Err(FormatError::Invalid(format!("map {:?}: an endomorphism takes no partner", md.name)))
            }
            (MapKindDoc::SigmaDerivation, partner) => {
                let sigma = match partner {
                    None => RingMap::identity(&ring),
                    Some(p) => maps
                        .iter()
                        .find(|(n, _)| n == p)
                        .map(|(_, m)| m.clone())
                        .ok_or_else(|| FormatError::Invalid(format!("map {:?}: partner {p:?} is not defined above it", md.name)))?,
                };
                RingMap::sigma_derivation(&ring, &sigma, md.matrix).map_err(map_err)?
            }
        };
        maps.push((md.name, map));
    }

    let extension = doc.extension.map(|ed| build_extension(&ring, &maps, ed)).transpose()?;
    let name = doc.name.unwrap_or_else(|| ring.name().to_string());
    Ok(Definition { name, ring, grading, maps, extension })
}

fn build_extension(ring: &FiniteRing, maps: &[(String, RingMap)], ed: ExtDoc) -> Result<Extension, FormatError> {
    let lookup = |name: &String| {
        maps.iter()
            .find(|(n, _)| n == name)
            .map(|(_, m)| m.clone())
            .ok_or_else(|| FormatError::Invalid(format!("extension refers to undefined map {name:?}")))
    };
    let sigmas = ed.sigmas.iter().map(lookup).collect::<Result<Vec<_>, _>>()?;
    let n = sigmas.len();
    let deltas = match &ed.deltas {
        Some(names) if names.len() != n => {
            return Err(FormatError::Invalid(format!("extension lists {n} sigmas but {} deltas", names.len())))
        }
        Some(names) => names.iter().map(lookup).collect::<Result<Vec<_>, _>>()?,
        None => sigmas.iter().map(|s| RingMap::zero_derivation(ring, s)).collect(),
    };
    let cap = ed.word_cap.unwrap_or(DEFAULT_DELTA_WORD_CAP);
    let system = SigmaSystem::new(ring, sigmas, deltas, cap)
        .map_err(|source| FormatError::Map { name: "extension".into(), source })?;

    let mut relations = BTreeMap::new();
    for rd in ed.relations {
        let (i, j) = (rd.i, rd.j);
        if i == 0 || j == 0 || i >= j || j > n {
            return Err(FormatError::Invalid(format!("relation ({i}, {j}) needs 1 <= i < j <= {n}")));
        }
        let at = |what: &str| format!("relation ({i}, {j}) {what}");
        let d = elem(ring, &rd.d, || at("d"))?;
        let constant = match &rd.constant {
            Some(c) => elem(ring, c, || at("constant"))?,
            None => ring.zero(),
        };
        let linear = match &rd.linear {
            Some(rows) if rows.len() != n => {
                return Err(FormatError::Invalid(format!("{} needs {n} rows, got {}", at("linear"), rows.len())))
            }
            Some(rows) => rows.iter().map(|c| elem(ring, c, || at("linear"))).collect::<Result<Vec<_>, _>>()?,
            None => vec![ring.zero(); n],
        };
        if relations.insert((i - 1, j - 1), Relation { d, constant, linear }).is_some() {
            return Err(FormatError::Invalid(format!("relation ({i}, {j}) is given twice")));
        }
    }
    let mut ext = Extension::new(system, relations)?;
    let _ = ext.verify();
    Ok(ext)
}

/// Writes `def` as a definition file that [`parse_definition`] reads back
/// to an equal value. Maps are referenced by name, so every map of the
/// extension must appear in `def.maps`.
pub fn export_definition(def: &Definition) -> Result<String, FormatError> {
    let ring = &def.ring;
    let rd = RingDoc {
        name: Some(ring.name().to_string()),
        orders: ring.orders().to_vec(),
        one: ring.one_coords().to_vec(),
        degrees: def.grading.as_ref().map(|g| g.labels().to_vec()),
        products: ring.products().to_vec(),
    };
    let name_of = |map: &RingMap| {
        def.maps
            .iter()
            .find(|(_, m)| m == map)
            .map(|(n, _)| n.clone())
            .ok_or_else(|| FormatError::Export("the extension uses a map that has no name".into()))
    };
    let mut maps = Vec::new();
    for (name, map) in &def.maps {
        let (kind, partner) = match map.kind() {
            MapKind::Endomorphism => (MapKindDoc::Endomorphism, None),
            MapKind::SigmaDerivation { partner } if partner.is_identity() && !def.maps.iter().any(|(_, m)| m == &**partner) => {
                (MapKindDoc::SigmaDerivation, None)
            }
            MapKind::SigmaDerivation { partner } => (MapKindDoc::SigmaDerivation, Some(name_of(partner)?)),
            MapKind::Composite => return Err(FormatError::Export(format!("map {name:?} is a composite"))),
        };
        maps.push(MapDoc { name: name.clone(), kind, partner, matrix: map.matrix().to_vec() });
    }
    let extension = match &def.extension {
        None => None,
        Some(ext) => {
            let sys = ext.system();
            let sigmas = sys.sigmas().iter().map(name_of).collect::<Result<Vec<_>, _>>()?;
            let deltas = if sys.has_nonzero_delta() {
                Some(sys.deltas().iter().map(name_of).collect::<Result<Vec<_>, _>>()?)
            } else {
                None
            };
            let word_cap = (sys.word_cap() != DEFAULT_DELTA_WORD_CAP).then_some(sys.word_cap());
            let zero = ring.zero();
            let relations = ext
                .relations()
                .iter()
                .filter(|(_, r)| r.d != ring.one() || r.has_tail())
                .map(|(&(i, j), r)| RelDoc {
                    i: i + 1,
                    j: j + 1,
                    d: ring.coords(r.d),
                    constant: (r.constant != zero).then(|| ring.coords(r.constant)),
                    linear: r.linear.iter().any(|&c| c != zero).then(|| r.linear.iter().map(|&c| ring.coords(c)).collect()),
                })
                .collect();
            Some(ExtDoc { sigmas, deltas, word_cap, relations })
        }
    };
    let doc = FileDoc { name: Some(def.name.clone()), ring: rd, maps, extension };
    toml::to_string(&doc).map_err(|e| FormatError::Export(e.to_string()))
}

/// Exports a corpus entry as a definition file.
pub fn export_entry(entry: &CorpusEntry) -> Result<String, FormatError> {
    export_definition(&Definition::from_entry(entry))
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Coeff(Vec<i64>),
    Var(Option<usize>),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn expr_error(src: &str, pos: usize, message: impl Into<String>) -> FormatError {
    syntax(src, Some(pos..pos), message)
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, FormatError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut pos = 0;
    let digits = |mut p: usize| {
        let start = p;
        while p < bytes.len() && bytes[p].is_ascii_digit() {
            p += 1;
        }
        (start, p)
    };
    let int = |s: usize, e: usize| src[s..e].parse::<u64>().map_err(|_| expr_error(src, s, "integer out of range"));
    while pos < bytes.len() {
        let start = pos;
        let c = bytes[pos];
        let tok = match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                pos += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            b'0'..=b'9' => {
                let (s, e) = digits(pos);
                pos = e;
                out.push((start, Tok::Int(int(s, e)?)));
                continue;
            }
            b'x' => {
                let (s, e) = digits(pos + 1);
                pos = e;
                let index = if s == e { None } else { Some(int(s, e)? as usize) };
                out.push((start, Tok::Var(index)));
                continue;
            }
            b'[' => {
                let close = src[pos..].find(']').ok_or_else(|| expr_error(src, start, "unclosed '['"))? + pos;
                let mut coords = Vec::new();
                let mut offset = pos + 1;
                for part in src[pos + 1..close].split(',') {
                    let trimmed = part.trim();
                    let at = offset + (part.len() - part.trim_start().len());
                    let value = trimmed
                        .parse::<i64>()
                        .map_err(|_| expr_error(src, at, format!("expected an integer coordinate, found {trimmed:?}")))?;
                    coords.push(value);
                    offset += part.len() + 1;
                }
                pos = close + 1;
                out.push((start, Tok::Coeff(coords)));
                continue;
            }
            _ => {
                let ch = src[pos..].chars().next().unwrap_or('?');
                return Err(expr_error(src, start, format!("unexpected character {ch:?}")));
            }
        };
        pos += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    ext: &'a Extension,
    toks: Vec<(usize, Tok)>,
    at: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.src.len(), |(p, _)| *p)
    }

    fn fail<T>(&self, message: impl Into<String>) -> Result<T, FormatError> {
        Err(expr_error(self.src, self.pos(), message))
    }

    fn expr(&mut self) -> Result<SkewPoly, FormatError> {
        let negate = self.peek() == Some(&Tok::Minus);
        if negate {
            self.at += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = self.ext.neg(&acc);
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = self.ext.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    let t = self.term()?;
                    acc = self.ext.sub(&acc, &t);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SkewPoly, FormatError> {
        let mut acc = self.power()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            let f = self.power()?;
            acc = self.ext.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<SkewPoly, FormatError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        match self.peek() {
            Some(&Tok::Int(k)) if k <= MAX_EXPR_EXPONENT as u64 => {
                self.at += 1;
                Ok(self.ext.power(&base, k as u32)?)
            }
            Some(Tok::Int(_)) => self.fail(format!("exponent exceeds {MAX_EXPR_EXPONENT}")),
            _ => self.fail("expected an exponent after '^'"),
        }
    }

    fn atom(&mut self) -> Result<SkewPoly, FormatError> {
        let ext = self.ext;
        let ring = ext.base();
        let n = ext.n();
        let Some(tok) = self.peek().cloned() else {
            return self.fail("unexpected end of expression");
        };
        let out = match tok {
            Tok::Int(k) => {
                let k = i64::try_from(k).or_else(|_| self.fail("integer out of range"))?;
                ext.constant(ring.from_int(k))
            }
            Tok::Coeff(coords) => {
                if coords.len() != ring.rank() {
                    return self.fail(format!("coefficient needs {} coordinates, found {}", ring.rank(), coords.len()));
                }
                let reduced: Vec<u32> =
                    coords.iter().zip(ring.orders()).map(|(&c, &k)| c.rem_euclid(k as i64) as u32).collect();
                ext.constant(ring.from_coords(&reduced)?)
            }
            Tok::Var(None) if n == 1 => ext.var(0),
            Tok::Var(None) => return self.fail(format!("there are {n} variables, write x1..x{n}")),
            Tok::Var(Some(i)) if (1..=n).contains(&i) => ext.var(i - 1),
            Tok::Var(Some(i)) => return self.fail(format!("variable x{i} is out of range 1..{n}")),
            Tok::Open => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return self.fail("expected ')'");
                }
                inner
            }
            _ => return self.fail("expected a coefficient, integer, variable or '('"),
        };
        self.at += 1;
        Ok(out)
    }
}

/// Parses an expression in the variables of `ext` and returns its normal
/// form. Factors may appear in any order: `x*[0,1]` is multiplied out, so
/// right coefficients are accepted. Every string produced by
/// [`Extension::format_poly`] parses back to the same polynomial.
pub fn parse_poly(ext: &Extension, src: &str) -> Result<SkewPoly, FormatError> {
    let toks = lex(src)?;
    if toks.is_empty() {
        return Err(expr_error(src, 0, "empty expression"));
    }
    let mut parser = Parser { src, ext, toks, at: 0 };
    let out = parser.expr()?;
    if parser.at < parser.toks.len() {
        return parser.fail("unexpected token");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn every_corpus_entry_round_trips() {
        for entry in corpus::all().unwrap() {
            let text = export_entry(&entry).unwrap();
            let back = parse_definition(&text).unwrap_or_else(|e| panic!("{}: {e}\n{text}", entry.name));
            let def = Definition::from_entry(&entry);
            assert_eq!(back, def, "{}", entry.name);
            if let Some(ext) = &back.extension {
                assert_eq!(ext.is_verified(), ext.find_overlap_failure().is_none(), "{}", entry.name);
            }
        }
    }

    #[test]
    fn syntax_errors_have_positions() {
        let src = "name = \"t\"\n[ring]\norders = [2]\none = [1]\nproducts = [[[1]]]\nbogus = 3\n";
        match parse_definition(src) {
            Err(FormatError::Syntax { line, .. }) => assert_eq!(line, 6),
            other => panic!("{other:?}"),
        }
        let src = "[ring]\norders = [2, -1]\none = [1]\nproducts = []\n";
        match parse_definition(src) {
            Err(FormatError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 14)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constructor_errors_pass_through() {
        let src = "[ring]\norders = [2]\none = [0]\nproducts = [[[1]]]\n";
        assert!(matches!(parse_definition(src), Err(FormatError::Ring(_))));
    }

    #[test]
    fn expressions_normalise() {
        let ext = corpus::extensions::weyl_like(2).unwrap();
        let f = parse_poly(&ext, "x*[0,1]").unwrap();
        assert_eq!(ext.format_poly(&f), "[0,1]*x^1 + [1,0]");
        assert_eq!(parse_poly(&ext, &ext.format_poly(&f)).unwrap(), f);
        assert!(parse_poly(&ext, "0").unwrap().is_zero());
        assert_eq!(parse_poly(&ext, "x - x").unwrap(), SkewPoly::zero(1));
        assert_eq!(parse_poly(&ext, "(x + 1)^2").unwrap(), parse_poly(&ext, "x^2 + 1").unwrap());
        match parse_poly(&ext, "[1,0]*y") {
            Err(FormatError::Syntax { column, .. }) => assert_eq!(column, 7),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly(&ext, "x2").is_err());
        assert!(parse_poly(&ext, "[1]").is_err());
    }

    #[test]
    fn several_variables() {
        let ext = corpus::extensions::weyl_euler_pair().unwrap();
        let f = parse_poly(&ext, "[1,1]*x1^1*x2^2 + x2 + [0,1]").unwrap();
        assert_eq!(parse_poly(&ext, &ext.format_poly(&f)).unwrap(), f);
        assert!(parse_poly(&ext, "x").is_err());
    }
}
