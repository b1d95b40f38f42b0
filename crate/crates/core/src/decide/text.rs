//! Line-oriented text format for presentations.
//!
//! ```text
//! # comment
//! field: GF(2)
//! generators: a < b
//! relations:
//!   [b,a]*b - a
//! queries:
//!   square = a*a
//! phi(a) = a
//! phi(b) = b + a*a
//! ```
//!
//! `field` and `generators` come first; the generator line fixes the
//! order. Image lines `phi(x) = ...` may appear anywhere after them.

use std::collections::BTreeMap;
use std::fmt;

use super::{DecideError, Endomorphism, Presentation};
use crate::algebra::{parse_expr, Algebra, ParseError, Poly};
use crate::basis::{Alphabet, Letter};
use crate::coeff::FieldSpec;

/// A parsed presentation file.
#[derive(Clone, Debug, PartialEq)]
pub struct Document {
    pub presentation: Presentation,
    /// Named query expressions, in file order.
    pub queries: Vec<(String, Poly)>,
    /// Generator images for endomorphism checks.
    pub images: BTreeMap<Letter, Poly>,
}

impl Document {
    /// The endomorphism given by the image lines; every generator needs
    /// an image.
    pub fn endomorphism(&self) -> Result<Endomorphism, DecideError> {
        let ab = self.presentation.alphabet();
        let images = ab
            .letters()
            .map(|l| {
                self.images
                    .get(&l)
                    .cloned()
                    .ok_or_else(|| DecideError::MissingImage(ab.name(l).to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Endomorphism::new(ab, images)
    }

    pub fn query(&self, name: &str) -> Option<&Poly> {
        self.queries.iter().find(|(n, _)| n == name).map(|(_, p)| p)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Header,
    Relations,
    Queries,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

struct Ctx {
    field: Option<FieldSpec>,
    alphabet: Option<Alphabet>,
}

impl Ctx {
    fn ready(&self, line: usize) -> Result<(Algebra, &Alphabet), ParseError> {
        match (&self.field, &self.alphabet) {
            (Some(f), Some(a)) => Ok((Algebra::new(*f), a)),
            _ => Err(err(line, 1, "`field` and `generators` must come first")),
        }
    }

    /// Parses and evaluates `src`, which starts at column `column`.
    fn poly(&self, line: usize, column: usize, src: &str) -> Result<Poly, ParseError> {
        let (alg, ab) = self.ready(line)?;
        let e = parse_expr(src, ab).map_err(|e| e.shifted(line, column))?;
        e.eval(&alg).map_err(|e| err(line, column, e.to_string()))
    }
}

/// Column (1-based) of the first non-blank character of `s` inside `line`.
fn column_of(line: &str, s: &str) -> usize {
    let offset = s.as_ptr() as usize - line.as_ptr() as usize;
    line[..offset].chars().count() + (s.len() - s.trim_start().len()) + 1
}

pub fn parse_document(text: &str) -> Result<Document, ParseError> {
    let mut ctx = Ctx {
        field: None,
        alphabet: None,
    };
    let mut section = Section::Header;
    let mut relations = Vec::new();
    let mut queries: Vec<(String, Poly)> = Vec::new();
    let mut images = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("phi(") {
            let (_, ab) = ctx.ready(line)?;
            let (name, after) = rest.split_once(')').ok_or_else(|| {
                err(
                    line,
                    column_of(raw, trimmed),
                    "expected `phi(x) = expression`",
                )
            })?;
            let l = ab.letter(name.trim()).ok_or_else(|| {
                err(
                    line,
                    column_of(raw, rest),
                    format!("unknown generator `{}`", name.trim()),
                )
            })?;
            let expr = after
                .trim_start()
                .strip_prefix('=')
                .ok_or_else(|| err(line, column_of(raw, after), "expected `=`"))?;
            if images.contains_key(&l) {
                return Err(err(line, 1, format!("second image for `{}`", name.trim())));
            }
            images.insert(l, ctx.poly(line, column_of(raw, expr), expr)?);
            continue;
        }
        if let Some((key, value)) = trimmed.split_once(':') {
            let key = key.trim();
            let vcol = column_of(raw, value);
            match key {
                "field" => {
                    if ctx.field.is_some() {
                        return Err(err(line, 1, "field declared twice"));
                    }
                    let f = value
                        .trim()
                        .parse::<FieldSpec>()
                        .map_err(|e| err(line, vcol, e.to_string()))?;
                    ctx.field = Some(f);
                }
                "generators" => {
                    if ctx.alphabet.is_some() {
                        return Err(err(line, 1, "generators declared twice"));
                    }
                    let names: Vec<&str> = value.split('<').map(str::trim).collect();
                    let ab = Alphabet::new(&names).map_err(|e| err(line, vcol, e.to_string()))?;
                    ctx.alphabet = Some(ab);
                }
                "relations" | "queries" if value.trim().is_empty() => {
                    ctx.ready(line)?;
                    section = if key == "relations" {
                        Section::Relations
                    } else {
                        Section::Queries
                    };
                }
                _ => {
                    return Err(err(
                        line,
                        column_of(raw, trimmed),
                        format!("unknown key `{key}`"),
                    ))
                }
            }
            continue;
        }
        match section {
            Section::Header => {
                return Err(err(line, column_of(raw, trimmed), "expected `key: value`"));
            }
            Section::Relations => {
                let p = ctx.poly(line, column_of(raw, trimmed), trimmed)?;
                if p.is_zero() {
                    return Err(err(
                        line,
                        column_of(raw, trimmed),
                        "relation evaluates to zero",
                    ));
                }
                relations.push(p);
            }
            Section::Queries => {
                let (name, expr) = trimmed.split_once('=').ok_or_else(|| {
                    err(
                        line,
                        column_of(raw, trimmed),
                        "expected `name = expression`",
                    )
                })?;
                let name = name.trim();
                if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                    return Err(err(
                        line,
                        column_of(raw, trimmed),
                        "query names are identifiers",
                    ));
                }
                if queries.iter().any(|(n, _)| n == name) {
                    return Err(err(
                        line,
                        column_of(raw, trimmed),
                        format!("duplicate query `{name}`"),
                    ));
                }
                let p = ctx.poly(line, column_of(raw, expr), expr)?;
                queries.push((name.to_string(), p));
            }
        }
    }
    let (Some(field), Some(alphabet)) = (ctx.field, ctx.alphabet) else {
        let missing = if ctx.field.is_none() {
            "field"
        } else {
            "generators"
        };
        return Err(err(
            text.lines().count().max(1),
            1,
            format!("missing `{missing}` declaration"),
        ));
    };
    let presentation =
        Presentation::new(alphabet, field, relations).expect("zero relations rejected above");
    Ok(Document {
        presentation,
        queries,
        images,
    })
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.presentation;
        let ab = p.alphabet();
        writeln!(f, "field: {}", p.field())?;
        writeln!(f, "generators: {ab}")?;
        writeln!(f, "relations:")?;
        for r in p.relations() {
            writeln!(f, "  {}", r.display(ab))?;
        }
        if !self.queries.is_empty() {
            writeln!(f, "queries:")?;
            for (name, q) in &self.queries {
                writeln!(f, "  {name} = {}", q.display(ab))?;
            }
        }
        for (l, img) in &self.images {
            writeln!(f, "phi({}) = {}", ab.name(*l), img.display(ab))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_file() {
        let d =
            parse_document("field: GF(2)\ngenerators: a < b\nrelations:\n  {b,a}*b - a").unwrap();
        assert_eq!(d.presentation.field(), &FieldSpec::prime(2).unwrap());
        assert_eq!(d.presentation.relations().len(), 1);
        assert_eq!(d.presentation.alphabet().names(), ["a", "b"]);
    }

    #[test]
    fn rejects_bad_headers() {
        let e = parse_document("field: Q\ngenerators: a < a").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_document("field: GF(4)\ngenerators: a").unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        let e = parse_document("generators: a < b\nrelations:\n a").unwrap_err();
        assert!(e.message.contains("must come first"), "{e}");
    }

    #[test]
    fn expression_errors_point_into_the_file() {
        let e =
            parse_document("field: Q\ngenerators: a < b\nrelations:\n  a + (b, z)").unwrap_err();
        assert_eq!((e.line, e.column), (4, 11));
        let e = parse_document("field: Q\ngenerators: a\nphi(a) = a +").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn queries_and_images_round_trip() {
        let src = "# sample\nfield: Q\ngenerators: a < b\nrelations:\n  [b,a]*b - a\nqueries:\n  sq = a*a\n  half = 1/2*(a, b)\nphi(b) = b + a*a\nphi(a) = a\n";
        let d = parse_document(src).unwrap();
        assert_eq!(d.queries.len(), 2);
        assert_eq!(d.images.len(), 2);
        let again = parse_document(&d.to_string()).unwrap();
        assert_eq!(again, d);
        assert!(d.endomorphism().is_ok());
        let partial = parse_document("field: Q\ngenerators: a < b\nphi(a) = b").unwrap();
        assert_eq!(
            partial.endomorphism(),
            Err(DecideError::MissingImage("b".into()))
        );
    }
}
