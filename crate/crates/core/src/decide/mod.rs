//! Decision procedures for finitely presented metabelian Poisson
//! algebras: equality in the quotient and the automorphism criterion for
//! endomorphisms of the free algebra.

mod text;

pub use text::{parse_document, Document};

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::algebra::{Algebra, Poly};
use crate::basis::{Alphabet, Letter, Monomial};
use crate::coeff::{FieldSpec, Scalar};
use crate::gsb::{complete, CompletionError, GsbBasis, Limits, ReduceMode, ReductionTrace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("expected {expected} images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("no image given for generator `{0}`")]
    MissingImage(String),
}

/// Generators, relations and a lazily completed basis.
#[derive(Clone, Debug)]
pub struct Presentation {
    alg: Algebra,
    alphabet: Alphabet,
    relations: Vec<Poly>,
    limits: Limits,
    completed: OnceLock<Result<GsbBasis, CompletionError>>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.alg == other.alg
            && self.alphabet == other.alphabet
            && self.relations == other.relations
    }
}

/// Outcome of a membership query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// The reduction steps that take the query to zero.
    Member(ReductionTrace),
    /// The nonzero normal form, supported on irreducible monomials.
    NotMember(Poly),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

impl Presentation {
    pub fn new(
        alphabet: Alphabet,
        field: FieldSpec,
        relations: Vec<Poly>,
    ) -> Result<Self, DecideError> {
        if let Some(i) = relations.iter().position(Poly::is_zero) {
            return Err(DecideError::ZeroRelation(i + 1));
        }
        Ok(Presentation {
            alg: Algebra::new(field),
            alphabet,
            relations,
            limits: Limits::default(),
            completed: OnceLock::new(),
        })
    }

    /// Replaces the completion limits, discarding any cached basis.
    pub fn with_limits(mut self, limits: Limits) -> Self {
        self.limits = limits;
        self.completed = OnceLock::new();
        self
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

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    /// The completed basis, computed on first use.
    pub fn basis(&self) -> Result<&GsbBasis, CompletionError> {
        self.completed
            .get_or_init(|| complete(&self.relations, &self.alphabet, *self.field(), self.limits))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// Whether `f` is zero in the quotient, with a certificate either way.
    pub fn is_zero_in_quotient(&self, f: &Poly) -> Result<Membership, CompletionError> {
        let basis = self.basis()?;
        let (r, trace) = basis.reduce(f, ReduceMode::Full);
        Ok(if r.is_zero() {
            Membership::Member(trace)
        } else {
            Membership::NotMember(r)
        })
    }

    pub fn are_equal(&self, f: &Poly, g: &Poly) -> Result<Membership, CompletionError> {
        self.is_zero_in_quotient(&f.sub(g))
    }

    /// Monomials of length at most `max_len` forming a basis of the
    /// corresponding part of the quotient.
    pub fn quotient_basis(&self, max_len: usize) -> Result<Vec<Monomial>, CompletionError> {
        Ok(self.basis()?.lrr_enumerate(max_len))
    }
}

/// An endomorphism of the free algebra, given by the images of the
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endomorphism {
    images: Vec<Poly>,
}

impl Endomorphism {
    pub fn new(alphabet: &Alphabet, images: Vec<Poly>) -> Result<Self, DecideError> {
        if images.len() != alphabet.len() {
            return Err(DecideError::ImageCount {
                expected: alphabet.len(),
                got: images.len(),
            });
        }
        Ok(Endomorphism { images })
    }

    pub fn identity(alg: &Algebra, alphabet: &Alphabet) -> Self {
        Endomorphism {
            images: alphabet.letters().map(|l| alg.letter(l)).collect(),
        }
    }

    pub fn images(&self) -> &[Poly] {
        &self.images
    }

    pub fn image(&self, l: Letter) -> &Poly {
        &self.images[l.index()]
    }

    /// Length-1 part of the image of generator `i`.
    pub fn linear_part(&self, i: usize) -> Poly {
        self.images[i].filter(|m| m.len() == 1)
    }

    /// Part of length at least 2 of the image of generator `i`.
    pub fn higher_part(&self, i: usize) -> Poly {
        self.images[i].filter(|m| m.len() >= 2)
    }

    /// `γ[i][j]`: coefficient of generator `j` in the image of generator `i`.
    pub fn linear_matrix(&self, field: &FieldSpec) -> Vec<Vec<Scalar>> {
        let n = self.images.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let m = Monomial::letter(Letter(j as u16));
                        self.images[i]
                            .coefficient(&m)
                            .cloned()
                            .unwrap_or_else(|| field.zero())
                    })
                    .collect()
            })
            .collect()
    }

    pub fn apply(&self, alg: &Algebra, p: &Poly) -> Poly {
        alg.substitute(p, &self.images)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, alg: &Algebra, other: &Endomorphism) -> Endomorphism {
        Endomorphism {
            images: other.images.iter().map(|p| self.apply(alg, p)).collect(),
        }
    }
}

/// Determinant by Gaussian elimination over the field.
pub fn determinant(field: &FieldSpec, mut m: Vec<Vec<Scalar>>) -> Scalar {
    let n = m.len();
    let mut det = field.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return field.zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -&det;
        }
        det = &det * &m[col][col];
        let inv = m[col][col].inv().expect("nonzero pivot");
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] * &inv;
            let (top, bottom) = m.split_at_mut(r);
            for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = &*x - &(&factor * y);
            }
        }
    }
    det
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NotAutomorphism {
    /// The linear parts of the images are linearly dependent.
    SingularLinearPart,
    /// The higher part of the image of `generator` is not in the ideal
    /// generated by the pairwise products and brackets of the images.
    HigherPartOutsideIdeal { generator: Letter, remainder: Poly },
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Yes,
    No(NotAutomorphism),
    /// Completion hit a limit before the question was settled.
    Undecided(CompletionError),
}

impl Verdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> VerdictDisplay<'a> {
        VerdictDisplay {
            verdict: self,
            alphabet,
        }
    }
}

pub struct VerdictDisplay<'a> {
    verdict: &'a Verdict,
    alphabet: &'a Alphabet,
}

impl fmt::Display for VerdictDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.verdict {
            Verdict::Yes => write!(f, "yes"),
            Verdict::No(NotAutomorphism::SingularLinearPart) => {
                write!(f, "no\nreason: singular linear part (determinant 0)")
            }
            Verdict::No(NotAutomorphism::HigherPartOutsideIdeal {
                generator,
                remainder,
            }) => write!(
                f,
                "no\nreason: higher part of phi({}) not in the ideal\nremainder: {}",
                self.alphabet.name(*generator),
                remainder.display(self.alphabet)
            ),
            Verdict::Undecided(e) => write!(f, "undecided\nreason: {e}"),
        }
    }
}

/// The ideal whose membership test decides invertibility: products and
/// brackets of all pairs of images, zeros and duplicates removed.
pub fn automorphism_ideal(alg: &Algebra, phi: &Endomorphism) -> Vec<Poly> {
    let f = phi.images();
    let mut out: Vec<Poly> = Vec::new();
    for i in 0..f.len() {
        for j in i..f.len() {
            for p in [alg.bracket(&f[i], &f[j]), alg.mul(&f[i], &f[j])] {
                if !p.is_zero() && !out.contains(&p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Decides whether `phi` is an automorphism of the free algebra: the
/// linear part must be invertible and every higher part must lie in the
/// ideal of [`automorphism_ideal`].
pub fn check_automorphism(
    phi: &Endomorphism,
    alphabet: &Alphabet,
    field: FieldSpec,
    limits: Limits,
) -> Verdict {
    let alg = Algebra::new(field);
    if determinant(&field, phi.linear_matrix(&field)).is_zero() {
        return Verdict::No(NotAutomorphism::SingularLinearPart);
    }
    let basis = match complete(&automorphism_ideal(&alg, phi), alphabet, field, limits) {
        Ok(b) => b,
        Err(e) => return Verdict::Undecided(e),
    };
    for (i, l) in alphabet.letters().enumerate() {
        let r = basis.reduce(&phi.higher_part(i), ReduceMode::Full).0;
        if !r.is_zero() {
            return Verdict::No(NotAutomorphism::HigherPartOutsideIdeal {
                generator: l,
                remainder: r,
            });
        }
    }
    Verdict::Yes
}
