//! Canonical monomials of the free metabelian Poisson algebra and their order.
//!
//! A monomial is one of three shapes:
//!
//! * a left-normed Lie word `[a1,a2,...,an]` (a bare letter when `n = 1`),
//! * a short commutative product `a1*a2` or `a1*a2*a3`,
//! * a Lie word times a letter, `[a1,...,a_{n-1}]*a_n`.
//!
//! Which shapes are canonical depends on whether the characteristic is 2.
//! Monomials are ordered by weight: length, then number of brackets, then the
//! letters in written order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::coeff::FieldSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("letter ordinal {0} is outside the alphabet")]
    UnknownLetter(u16),
    #[error("generator `{0}` is declared twice")]
    DuplicateLetter(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("alphabet too large ({0} letters)")]
    TooLarge(usize),
}

/// A generator, identified by its position in the well-order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered, finite set of named generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Letter>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    /// Builds an alphabet whose order is the order of `names`.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, BasisError> {
        if names.len() > u16::MAX as usize {
            return Err(BasisError::TooLarge(names.len()));
        }
        let mut lookup = HashMap::new();
        let mut owned = Vec::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            let n = n.as_ref();
            if !valid_name(n) {
                return Err(BasisError::InvalidName(n.to_string()));
            }
            if lookup.insert(n.to_string(), Letter(i as u16)).is_some() {
                return Err(BasisError::DuplicateLetter(n.to_string()));
            }
            owned.push(n.to_string());
        }
        Ok(Alphabet {
            names: owned,
            lookup,
        })
    }

    /// `a < b < c < ...`, falling back to `x1 < x2 < ...` past 26 letters.
    pub fn standard(n: usize) -> Self {
        let names: Vec<String> = if n <= 26 {
            (0..n)
                .map(|i| ((b'a' + i as u8) as char).to_string())
                .collect()
        } else {
            (1..=n).map(|i| format!("x{i}")).collect()
        };
        Alphabet::new(&names).expect("standard names are valid and distinct")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + Clone {
        (0..self.names.len() as u16).map(Letter)
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, l: Letter) -> &str {
        &self.names[l.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn contains(&self, l: Letter) -> bool {
        l.index() < self.names.len()
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" < "))
    }
}

/// The three monomial shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FormClass {
    Lie,
    Prod,
    LieTimes,
}

/// A basis monomial. Only canonical monomials should be stored in
/// polynomials; [`is_canonical`] checks the shape constraints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Monomial {
    /// Left-normed bracket `[a1,...,an]`, `n >= 1`.
    Lie(Vec<Letter>),
    /// Commutative product of 2 or 3 letters, ascending.
    Prod(Vec<Letter>),
    /// `[a1,...,a_{n-1}] * a_n`, bracket length at least 2.
    LieTimes(Vec<Letter>, Letter),
}

/// Sort key of a monomial: `(length, bracket count, letters)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    pub length: usize,
    pub pb: usize,
    pub seq: Vec<Letter>,
}

impl Monomial {
    pub fn letter(l: Letter) -> Self {
        Monomial::Lie(vec![l])
    }

    pub fn class(&self) -> FormClass {
        match self {
            Monomial::Lie(_) => FormClass::Lie,
            Monomial::Prod(_) => FormClass::Prod,
            Monomial::LieTimes(..) => FormClass::LieTimes,
        }
    }

    /// Number of letters, with repetitions.
    pub fn len(&self) -> usize {
        match self {
            Monomial::Lie(v) | Monomial::Prod(v) => v.len(),
            Monomial::LieTimes(v, _) => v.len() + 1,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Number of Poisson brackets.
    pub fn pb(&self) -> usize {
        match self {
            Monomial::Lie(v) => v.len() - 1,
            Monomial::Prod(_) => 0,
            Monomial::LieTimes(v, _) => v.len() - 1,
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        let (body, extra) = match self {
            Monomial::Lie(v) | Monomial::Prod(v) => (v.as_slice(), None),
            Monomial::LieTimes(v, t) => (v.as_slice(), Some(*t)),
        };
        body.iter().copied().chain(extra)
    }

    pub fn as_letter(&self) -> Option<Letter> {
        match self {
            Monomial::Lie(v) if v.len() == 1 => Some(v[0]),
            _ => None,
        }
    }

    pub fn head(&self) -> Letter {
        self.letters().next().expect("monomials are nonempty")
    }

    /// All letters but the head, ascending. For long canonical Lie and
    /// Lie-times words, the monomial is determined by class, head and tail.
    pub fn tail(&self) -> Vec<Letter> {
        let mut t: Vec<Letter> = self.letters().skip(1).collect();
        t.sort_unstable();
        t
    }

    pub fn weight(&self) -> Weight {
        Weight {
            length: self.len(),
            pb: self.pb(),
            seq: self.letters().collect(),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> MonomialDisplay<'a> {
        MonomialDisplay {
            monomial: self,
            alphabet,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.pb().cmp(&other.pb()))
            .then_with(|| self.letters().cmp(other.letters()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    alphabet: &'a Alphabet,
}

fn write_joined(f: &mut fmt::Formatter<'_>, a: &Alphabet, v: &[Letter], sep: &str) -> fmt::Result {
    for (i, l) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        f.write_str(a.name(*l))?;
    }
    Ok(())
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a = self.alphabet;
        match self.monomial {
            Monomial::Lie(v) if v.len() == 1 => f.write_str(a.name(v[0])),
            Monomial::Lie(v) => {
                f.write_str("[")?;
                write_joined(f, a, v, ",")?;
                f.write_str("]")
            }
            Monomial::Prod(v) => write_joined(f, a, v, "*"),
            Monomial::LieTimes(v, t) => {
                f.write_str("[")?;
                write_joined(f, a, v, ",")?;
                write!(f, "]*{}", a.name(*t))
            }
        }
    }
}

/// Ascending reordering of a letter sequence.
pub fn sort_tail(letters: &[Letter]) -> Vec<Letter> {
    let mut v = letters.to_vec();
    v.sort_unstable();
    v
}

fn nondecreasing(v: &[Letter]) -> bool {
    v.windows(2).all(|w| w[0] <= w[1])
}

/// Shape constraints of the canonical basis for the given characteristic
/// branch. Letters are not checked against an alphabet.
pub fn is_canonical(m: &Monomial, char_two: bool) -> bool {
    match m {
        Monomial::Lie(v) => match v.len() {
            0 => false,
            1 => true,
            _ => v[0] > v[1] && nondecreasing(&v[1..]),
        },
        Monomial::Prod(v) => (v.len() == 2 || v.len() == 3) && nondecreasing(v),
        Monomial::LieTimes(v, t) => {
            let (a1, a2) = match v.as_slice() {
                [a1, a2, ..] => (*a1, *a2),
                _ => return false,
            };
            match v.len() {
                2 => a1 > a2,
                3 if !char_two => {
                    let (a3, a4) = (v[2], *t);
                    a2 < a1 && a1 <= a4 && a2 <= a3 && a3 < a4
                }
                _ if char_two => a1 > a2 && nondecreasing(&v[1..]) && v[v.len() - 1] <= *t,
                _ => false,
            }
        }
    }
}

/// Checks a monomial against the alphabet and the canonical shapes for the
/// field's characteristic.
pub fn validate(m: &Monomial, field: &FieldSpec, alphabet: &Alphabet) -> Result<bool, BasisError> {
    if let Some(l) = m.letters().find(|l| !alphabet.contains(*l)) {
        return Err(BasisError::UnknownLetter(l.0));
    }
    Ok(is_canonical(m, field.is_char_two()))
}

/// Weight of a monomial (see [`Monomial::weight`]).
pub fn weight(m: &Monomial) -> Weight {
    m.weight()
}

/// Nondecreasing sequences of length `size` over letters `min..n`.
fn multisets(min: u16, n: u16, size: usize) -> Vec<Vec<Letter>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(size);
    fn go(start: u16, n: u16, size: usize, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for l in start..n {
            cur.push(Letter(l));
            go(l, n, size, cur, out);
            cur.pop();
        }
    }
    go(min, n, size, &mut cur, &mut out);
    out
}

/// Canonical monomials of a given length over the first `n` letters.
pub fn enumerate_length(n: usize, char_two: bool, length: usize) -> Vec<Monomial> {
    let n = n as u16;
    let mut out = Vec::new();
    if length == 0 {
        return out;
    }
    if length == 1 {
        out.extend((0..n).map(|l| Monomial::letter(Letter(l))));
        return out;
    }
    // Lie words: second letter is the global minimum, head exceeds it.
    for second in 0..n {
        for head in second + 1..n {
            for tail in multisets(second, n, length - 2) {
                let mut v = vec![Letter(head), Letter(second)];
                v.extend(tail);
                out.push(Monomial::Lie(v));
            }
        }
    }
    if length <= 3 {
        out.extend(multisets(0, n, length).into_iter().map(Monomial::Prod));
    }
    if length == 3 {
        for a2 in 0..n {
            for a1 in a2 + 1..n {
                for a3 in 0..n {
                    out.push(Monomial::LieTimes(vec![Letter(a1), Letter(a2)], Letter(a3)));
                }
            }
        }
    }
    if length >= 4 {
        if char_two {
            for second in 0..n {
                for head in second + 1..n {
                    for mut tail in multisets(second, n, length - 2) {
                        let t = tail.pop().expect("tail has at least two letters");
                        let mut v = vec![Letter(head), Letter(second)];
                        v.extend(tail);
                        out.push(Monomial::LieTimes(v, t));
                    }
                }
            }
        } else if length == 4 {
            for a1 in 0..n {
                for a2 in 0..n {
                    for a3 in 0..n {
                        for a4 in 0..n {
                            let m = Monomial::LieTimes(
                                vec![Letter(a1), Letter(a2), Letter(a3)],
                                Letter(a4),
                            );
                            if is_canonical(&m, false) {
                                out.push(m);
                            }
                        }
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// All canonical monomials of length `1..=max_len`, ascending.
pub fn enumerate(alphabet: &Alphabet, field: &FieldSpec, max_len: usize) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (1..=max_len)
        .flat_map(|l| enumerate_length(alphabet.len(), field.is_char_two(), l))
        .collect();
    out.sort();
    out
}
