//! Gröbner–Shirshov bases: normal multiples, reduction, compositions and
//! the completion loop.
//!
//! A relation `s` whose leading monomial has length at least 5 divides
//! every monomial of the same form class with the same head letter whose
//! tail contains the tail of `s̄` as a multiset; the quotient is realised by
//! the left-normed bracket `[s, a1, ..., an]`. Shorter relations only
//! divide their own leading monomial.

mod complete;
mod compositions;
mod reduce;

pub use complete::{complete, CompletionError, Limit, Limits};
pub use compositions::{general_composition, mult_compositions};
pub use reduce::{ReduceMode, ReductionStep, ReductionTrace};

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::algebra::{parse_expr, Algebra, ParseError, Poly};
use crate::basis::{enumerate, Alphabet, FormClass, Letter, Monomial};
use crate::coeff::FieldSpec;

/// Shortest leading monomial that admits proper normal multiples.
pub const DIVISOR_MIN_LEN: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GsbError {
    #[error("relation with leading monomial of length {0} has no proper normal multiples")]
    ShortLeading(usize),
    #[error("the zero polynomial cannot be a relation")]
    ZeroRelation,
    #[error(transparent)]
    Parse(#[from] ParseError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Input,
    MultComposition,
    GeneralComposition,
}

/// A monic element of the generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub id: usize,
    pub poly: Poly,
    pub origin: Origin,
}

impl Relation {
    pub fn leading(&self) -> &Monomial {
        self.poly.leading_monomial().expect("relations are nonzero")
    }

    /// Whether the relation has normal multiples other than itself.
    pub fn divides_properly(&self) -> bool {
        divides_properly(self.leading())
    }
}

fn divides_properly(m: &Monomial) -> bool {
    m.len() >= DIVISOR_MIN_LEN && m.class() != FormClass::Prod
}

/// Sorted multiset of letters.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TailMultiset(Vec<Letter>);

impl TailMultiset {
    pub fn new(mut letters: Vec<Letter>) -> Self {
        letters.sort_unstable();
        TailMultiset(letters)
    }

    pub fn of(m: &Monomial) -> Self {
        TailMultiset(m.tail())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.complement_in(other).is_some()
    }

    /// `other - self` when `self ⊆ other`.
    pub fn complement_in(&self, other: &Self) -> Option<Vec<Letter>> {
        let mut rest = Vec::new();
        let mut it = other.0.iter();
        for &l in &self.0 {
            loop {
                match it.next() {
                    Some(&x) if x == l => break,
                    Some(&x) if x < l => rest.push(x),
                    _ => return None,
                }
            }
        }
        rest.extend(it);
        Some(rest)
    }

    /// Least common multiple: union with maximal multiplicities.
    pub fn lcm(&self, other: &Self) -> Self {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len().max(b.len()));
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        TailMultiset(out)
    }

    /// Multiset sum.
    pub fn union(&self, extra: &[Letter]) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(extra);
        TailMultiset::new(v)
    }
}

/// A monic generating set with at most one relation per leading monomial.
#[derive(Clone, Debug)]
pub struct GsbBasis {
    alg: Algebra,
    alphabet: Alphabet,
    relations: BTreeMap<Monomial, Relation>,
    /// Leading monomials that divide properly, by form class and head.
    divisors: BTreeMap<(FormClass, Letter), Vec<Monomial>>,
    next_id: usize,
    minimal: bool,
    reduced: bool,
}

impl PartialEq for GsbBasis {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg
            && self.alphabet == other.alphabet
            && self.minimal == other.minimal
            && self.reduced == other.reduced
            && self.relations.len() == other.relations.len()
            && self
                .relations
                .values()
                .zip(other.relations.values())
                .all(|(r, s)| r.poly == s.poly)
    }
}

impl GsbBasis {
    pub fn new(alphabet: Alphabet, field: FieldSpec) -> Self {
        GsbBasis {
            alg: Algebra::new(field),
            alphabet,
            relations: BTreeMap::new(),
            divisors: BTreeMap::new(),
            next_id: 0,
            minimal: false,
            reduced: false,
        }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn field(&self) -> &FieldSpec {
        self.alg.field()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.relations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// Relations in ascending order of leading monomial.
    pub fn relations(&self) -> impl DoubleEndedIterator<Item = &Relation> + ExactSizeIterator {
        self.relations.values()
    }

    pub fn relation(&self, id: usize) -> Option<&Relation> {
        self.relations.values().find(|r| r.id == id)
    }

    pub fn by_leading(&self, m: &Monomial) -> Option<&Relation> {
        self.relations.get(m)
    }

    /// Adds a monic relation whose leading monomial is not yet present.
    pub fn insert(&mut self, poly: Poly, origin: Origin) -> Result<&Relation, GsbError> {
        let lead = poly
            .leading_monomial()
            .ok_or(GsbError::ZeroRelation)?
            .clone();
        assert!(poly.is_monic(), "relations are monic");
        assert!(
            !self.relations.contains_key(&lead),
            "leading monomial already present"
        );
        if divides_properly(&lead) {
            let list = self
                .divisors
                .entry((lead.class(), lead.head()))
                .or_default();
            let pos = list.binary_search(&lead).unwrap_err();
            list.insert(pos, lead.clone());
        }
        let id = self.next_id;
        self.next_id += 1;
        self.minimal = false;
        self.reduced = false;
        Ok(self
            .relations
            .entry(lead)
            .or_insert(Relation { id, poly, origin }))
    }

    /// `[s, a1, ..., an]`. The leading monomial keeps the head of `s̄` and
    /// extends its tail by the letters; this is checked on every call.
    pub fn normal_multiple(&self, s: &Relation, letters: &[Letter]) -> Result<Poly, GsbError> {
        normal_multiple(&self.alg, &s.poly, letters)
    }

    /// Every relation and letter sequence whose normal multiple has
    /// leading monomial `w`, exact match first, then proper divisors in
    /// ascending order.
    pub fn find_reducers(&self, w: &Monomial) -> Vec<(&Relation, Vec<Letter>)> {
        let mut out = Vec::new();
        if let Some(r) = self.relations.get(w) {
            out.push((r, Vec::new()));
        }
        if w.len() > DIVISOR_MIN_LEN && w.class() != FormClass::Prod {
            if let Some(list) = self.divisors.get(&(w.class(), w.head())) {
                let tail = TailMultiset::of(w);
                for lead in list.iter().take_while(|m| m.len() < w.len()) {
                    if let Some(extra) = TailMultiset::of(lead).complement_in(&tail) {
                        out.push((&self.relations[lead], extra));
                    }
                }
            }
        }
        out
    }

    /// The preferred reducer of `w`: an exact match, else the proper
    /// divisor with the smallest leading monomial.
    pub fn find_reducer(&self, w: &Monomial) -> Option<(&Relation, Vec<Letter>)> {
        if let Some(r) = self.relations.get(w) {
            return Some((r, Vec::new()));
        }
        if w.len() <= DIVISOR_MIN_LEN || w.class() == FormClass::Prod {
            return None;
        }
        let list = self.divisors.get(&(w.class(), w.head()))?;
        let tail = TailMultiset::of(w);
        list.iter()
            .take_while(|m| m.len() < w.len())
            .find_map(|lead| {
                TailMultiset::of(lead)
                    .complement_in(&tail)
                    .map(|extra| (&self.relations[lead], extra))
            })
    }

    pub fn is_reducible(&self, w: &Monomial) -> bool {
        self.find_reducer(w).is_some()
    }

    /// Canonical monomials of length at most `max_len` that are not the
    /// leading monomial of any normal multiple, ascending.
    pub fn lrr_enumerate(&self, max_len: usize) -> Vec<Monomial> {
        enumerate(&self.alphabet, self.field(), max_len)
            .into_iter()
            .filter(|m| !self.is_reducible(m))
            .collect()
    }

    /// Compositions of the basis that do not reduce to zero. Empty exactly
    /// when the basis is a Gröbner–Shirshov basis.
    pub fn nontrivial_compositions(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        let rels: Vec<&Relation> = self.relations.values().collect();
        for (i, s) in rels.iter().enumerate() {
            let mut all = mult_compositions(&self.alg, &self.alphabet, s);
            for t in &rels[..i] {
                all.extend(general_composition(&self.alg, s, t));
            }
            for h in all {
                let r = self.reduce(&h, ReduceMode::Full).0;
                if !r.is_zero() {
                    out.push(h);
                }
            }
        }
        out
    }

    /// Drops every relation whose leading monomial is a normal-multiple
    /// leading of smaller relations, then reduces each remaining tail.
    /// The result generates the same ideal with the same leading
    /// monomials, so it is again a Gröbner–Shirshov basis.
    pub fn minimalize(&self) -> GsbBasis {
        let mut kept = GsbBasis::new(self.alphabet.clone(), *self.field());
        for r in self.relations.values() {
            if kept.is_reducible(r.leading()) {
                continue;
            }
            // Normal multiples of `r` itself lead above every tail term, so
            // reducing against the smaller relations is a full tail reduction.
            let mut tail = r.poly.clone();
            let (lead, one) = tail.pop_leading().expect("nonzero");
            let mut poly = kept.reduce(&tail, ReduceMode::Full).0;
            poly.add_term(lead, one);
            kept.insert(poly, r.origin).expect("nonzero");
        }
        kept.minimal = true;
        kept.reduced = true;
        kept
    }

    /// Text form: header lines, then one relation per line in ascending
    /// order of leading monomial.
    pub fn render(&self) -> String {
        self.to_string()
    }

    /// Inverse of [`GsbBasis::render`]. Relations become inputs with fresh
    /// ids in ascending order.
    pub fn parse(text: &str) -> Result<GsbBasis, GsbError> {
        let header = |line: usize, message: String| {
            GsbError::Parse(ParseError {
                line,
                column: 1,
                message,
            })
        };
        let mut field = None;
        let mut alphabet = None;
        let mut flags = (false, false);
        let mut in_relations = false;
        let mut polys = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            if in_relations {
                let alphabet: &Alphabet = alphabet.as_ref().expect("checked");
                let field: FieldSpec = field.expect("checked");
                let indent = content.len() - content.trim_start().len();
                let e = parse_expr(content.trim(), alphabet)
                    .map_err(|e| e.shifted(line, indent + 1))?;
                let p = e
                    .eval(&Algebra::new(field))
                    .map_err(|err| header(line, err.to_string()))?;
                polys.push((line, p));
                continue;
            }
            let (key, value) = content
                .split_once(':')
                .ok_or_else(|| header(line, "expected `key: value`".into()))?;
            let value = value.trim();
            match key.trim() {
                "field" => {
                    field = Some(
                        value
                            .parse::<FieldSpec>()
                            .map_err(|e| header(line, e.to_string()))?,
                    )
                }
                "generators" => {
                    let names: Vec<&str> = value.split('<').map(str::trim).collect();
                    alphabet =
                        Some(Alphabet::new(&names).map_err(|e| header(line, e.to_string()))?);
                }
                "flags" => {
                    for flag in value.split_whitespace() {
                        match flag {
                            "minimal" => flags.0 = true,
                            "reduced" => flags.1 = true,
                            "none" => {}
                            other => return Err(header(line, format!("unknown flag `{other}`"))),
                        }
                    }
                }
                "relations" if value.is_empty() => {
                    if field.is_none() || alphabet.is_none() {
                        return Err(header(
                            line,
                            "field and generators must precede relations".into(),
                        ));
                    }
                    in_relations = true;
                }
                other => return Err(header(line, format!("unknown key `{other}`"))),
            }
        }
        let (Some(field), Some(alphabet)) = (field, alphabet) else {
            return Err(header(1, "missing field or generators".into()));
        };
        let mut basis = GsbBasis::new(alphabet, field);
        for (line, p) in polys {
            let p = p.make_monic().map_err(|_| GsbError::ZeroRelation)?;
            if basis
                .relations
                .contains_key(p.leading_monomial().expect("monic"))
            {
                return Err(header(
                    line,
                    "two relations share a leading monomial".into(),
                ));
            }
            basis.insert(p, Origin::Input)?;
        }
        basis.minimal = flags.0;
        basis.reduced = flags.1;
        Ok(basis)
    }
}

impl fmt::Display for GsbBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "field: {}", self.field())?;
        writeln!(f, "generators: {}", self.alphabet)?;
        let flags = match (self.minimal, self.reduced) {
            (true, true) => "minimal reduced",
            (true, false) => "minimal",
            (false, true) => "reduced",
            (false, false) => "none",
        };
        writeln!(f, "flags: {flags}")?;
        writeln!(f, "relations:")?;
        for r in self.relations.values() {
            writeln!(f, "  {}", r.poly.display(&self.alphabet))?;
        }
        Ok(())
    }
}

/// `[s, a1, ..., an]` for a monic `s`; see [`GsbBasis::normal_multiple`].
pub fn normal_multiple(alg: &Algebra, s: &Poly, letters: &[Letter]) -> Result<Poly, GsbError> {
    let lead = s.leading_monomial().ok_or(GsbError::ZeroRelation)?;
    if letters.is_empty() {
        return Ok(s.clone());
    }
    if !divides_properly(lead) {
        return Err(GsbError::ShortLeading(lead.len()));
    }
    let h = alg.left_normed(s, letters);
    let got = h.leading().map(|(m, c)| (m.clone(), c.is_one()));
    let m = got.as_ref().map(|(m, _)| m);
    let expected_tail = TailMultiset::of(lead).union(letters);
    assert!(
        m.is_some_and(|m| m.class() == lead.class()
            && m.head() == lead.head()
            && TailMultiset::of(m) == expected_tail)
            && got.is_some_and(|(_, monic)| monic == s.is_monic()),
        "normal multiple leading monomial has the wrong shape"
    );
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: Letter = Letter(0);
    const B: Letter = Letter(1);
    const C: Letter = Letter(2);

    #[test]
    fn multiset_operations() {
        let x = TailMultiset::new(vec![A, A, A, A]);
        let y = TailMultiset::new(vec![C, A, A, A]);
        assert_eq!(x.lcm(&y), TailMultiset::new(vec![A, A, A, A, C]));
        assert_eq!(x.complement_in(&x.lcm(&y)), Some(vec![C]));
        assert_eq!(y.complement_in(&x.lcm(&y)), Some(vec![A]));
        assert!(!x.is_subset(&y));
        assert!(TailMultiset::default().is_subset(&y));
        assert_eq!(x.union(&[B]), TailMultiset::new(vec![A, A, A, A, B]));
    }

    #[test]
    fn normal_multiple_shape() {
        let alg = Algebra::new(FieldSpec::rationals());
        let s = alg.monomial(Monomial::Lie(vec![B, A, A, A, A]));
        let h = normal_multiple(&alg, &s, &[C]).unwrap();
        assert_eq!(
            h.leading_monomial(),
            Some(&Monomial::Lie(vec![B, A, A, A, A, C]))
        );
        assert_eq!(normal_multiple(&alg, &s, &[]).unwrap(), s);
        let short = alg.monomial(Monomial::Prod(vec![A, B]));
        assert_eq!(
            normal_multiple(&alg, &short, &[C]),
            Err(GsbError::ShortLeading(2))
        );
    }

    #[test]
    fn reducer_lookup() {
        let alg = Algebra::new(FieldSpec::rationals());
        let mut basis = GsbBasis::new(Alphabet::standard(3), FieldSpec::rationals());
        let lead = Monomial::Lie(vec![B, A, A, A, A]);
        basis
            .insert(alg.monomial(lead.clone()), Origin::Input)
            .unwrap();
        let (r, extra) = basis.find_reducer(&lead).unwrap();
        assert_eq!((r.leading(), extra.as_slice()), (&lead, &[][..]));
        let (_, extra) = basis
            .find_reducer(&Monomial::Lie(vec![B, A, A, A, A, C]))
            .unwrap();
        assert_eq!(extra, vec![C]);
        assert!(basis.find_reducer(&Monomial::Prod(vec![A, B])).is_none());
        assert!(basis
            .find_reducer(&Monomial::Lie(vec![C, A, A, A, A, A]))
            .is_none());
    }
}
