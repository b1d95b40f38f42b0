//! Polynomials in the free metabelian Poisson algebra and its two
//! bilinear operations.
//!
//! Products are computed from the basis table in [`table`] and extended
//! bilinearly. Every result is a combination of canonical monomials, so
//! there is no separate normalisation step.

mod expr;
mod poly;
mod table;

pub use expr::{parse_expr, Expr, ParseError};
pub use poly::{Poly, PolyDisplay};

use crate::basis::{Letter, Monomial};
use crate::coeff::{FieldSpec, Scalar};

/// Deliberate corruptions of the multiplication table, used to check that
/// the axiom oracle notices a wrong sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableMutation {
    /// Flips the sign of `[a1,a2,a3] ∘ a` when `a < a3 < a1`.
    NegateTailBelowHead,
}

/// The free metabelian Poisson algebra over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    mutation: Option<TableMutation>,
}

impl Algebra {
    pub fn new(field: FieldSpec) -> Self {
        Algebra {
            field,
            mutation: None,
        }
    }

    /// An algebra whose table carries `mutation`. Not associative.
    pub fn mutated(field: FieldSpec, mutation: TableMutation) -> Self {
        Algebra {
            field,
            mutation: Some(mutation),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn is_char_two(&self) -> bool {
        self.field.is_char_two()
    }

    pub fn letter(&self, l: Letter) -> Poly {
        Poly::letter(l, self.field.one())
    }

    pub fn monomial(&self, m: Monomial) -> Poly {
        Poly::monomial(m, self.field.one())
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field.from_i64(n)
    }

    /// `p ∘ q`.
    pub fn mul(&self, p: &Poly, q: &Poly) -> Poly {
        self.bilinear(p, q, Self::mul_basis)
    }

    /// `{p, q}`.
    pub fn bracket(&self, p: &Poly, q: &Poly) -> Poly {
        self.bilinear(p, q, Self::bracket_basis)
    }

    fn bilinear(&self, p: &Poly, q: &Poly, op: fn(&Self, &Monomial, &Monomial) -> Poly) -> Poly {
        let mut r = Poly::zero();
        for (u, c) in p.terms() {
            for (v, d) in q.terms() {
                if u.len() >= 2 && v.len() >= 2 {
                    continue;
                }
                r.add_scaled(&op(self, u, v), &(c * d));
            }
        }
        r
    }

    pub fn mul_letter(&self, p: &Poly, a: Letter) -> Poly {
        self.mul(p, &self.letter(a))
    }

    pub fn bracket_letter(&self, p: &Poly, a: Letter) -> Poly {
        self.bracket(p, &self.letter(a))
    }

    /// `[p, a1, ..., an]`: successive right brackets with letters.
    pub fn left_normed(&self, p: &Poly, letters: &[Letter]) -> Poly {
        letters
            .iter()
            .fold(p.clone(), |acc, &a| self.bracket_letter(&acc, a))
    }

    /// Evaluates the monomial `m` with each letter `x` replaced by
    /// `images[x]`.
    pub fn evaluate_monomial(&self, m: &Monomial, images: &[Poly]) -> Poly {
        let img = |l: Letter| &images[l.index()];
        let lie = |v: &[Letter]| {
            v[1..]
                .iter()
                .fold(img(v[0]).clone(), |acc, &a| self.bracket(&acc, img(a)))
        };
        match m {
            Monomial::Lie(v) => lie(v),
            Monomial::Prod(v) => v[1..]
                .iter()
                .fold(img(v[0]).clone(), |acc, &a| self.mul(&acc, img(a))),
            Monomial::LieTimes(v, t) => self.mul(&lie(v), img(*t)),
        }
    }

    /// The image of `p` under the endomorphism sending letter `x` to
    /// `images[x]`.
    pub fn substitute(&self, p: &Poly, images: &[Poly]) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in p.terms() {
            r.add_scaled(&self.evaluate_monomial(m, images), c);
        }
        r
    }
}
