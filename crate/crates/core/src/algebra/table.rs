//! Products of basis monomials.
//!
//! The product `∘` and bracket `{-,-}` are defined on pairs of canonical
//! monomials by case analysis on the shape of the left operand when the
//! right operand is a letter; everything else is zero (two operands of
//! length at least 2) or obtained by symmetry. Several cases recurse into
//! earlier ones; recursion always lands on a case that returns a monomial
//! directly.

use super::{Algebra, Poly, TableMutation};
use crate::basis::{Letter, Monomial};

/// `[head, second, sorted(rest)]`. Requires `second <= rest` and
/// `head > second` for the result to be canonical.
fn lie_sorted(head: Letter, second: Letter, rest: impl IntoIterator<Item = Letter>) -> Monomial {
    let mut tail: Vec<Letter> = rest.into_iter().collect();
    tail.sort_unstable();
    let mut v = Vec::with_capacity(tail.len() + 2);
    v.push(head);
    v.push(second);
    v.extend(tail);
    Monomial::Lie(v)
}

/// `[head, second, sorted(rest) minus its maximum] * maximum`: the
/// characteristic 2 Lie-times normal form, where the multiplied letter and
/// the trailing bracket letters are interchangeable.
fn lie_times_sorted(
    head: Letter,
    second: Letter,
    rest: impl IntoIterator<Item = Letter>,
) -> Monomial {
    let mut tail: Vec<Letter> = rest.into_iter().collect();
    tail.sort_unstable();
    let times = tail.pop().expect("at least two tail letters");
    let mut v = Vec::with_capacity(tail.len() + 2);
    v.push(head);
    v.push(second);
    v.extend(tail);
    Monomial::LieTimes(v, times)
}

impl Algebra {
    fn mono(&self, m: Monomial) -> Poly {
        Poly::monomial(m, self.field().one())
    }

    fn mono_neg(&self, m: Monomial) -> Poly {
        Poly::monomial(m, self.field().minus_one())
    }

    fn binomial(&self, plus: Monomial, minus: Monomial) -> Poly {
        let mut p = self.mono(plus);
        p.add_term(minus, self.field().minus_one());
        p
    }

    /// `w1 ∘ w2` on canonical monomials.
    pub fn mul_basis(&self, w1: &Monomial, w2: &Monomial) -> Poly {
        match (w1.as_letter(), w2.as_letter()) {
            (Some(b), Some(a)) => {
                let mut v = vec![a, b];
                v.sort_unstable();
                self.mono(Monomial::Prod(v))
            }
            (None, Some(a)) => self.mul_by_letter(w1, a),
            (Some(b), None) => self.mul_by_letter(w2, b),
            (None, None) => Poly::zero(),
        }
    }

    /// `{w1, w2}` on canonical monomials.
    pub fn bracket_basis(&self, w1: &Monomial, w2: &Monomial) -> Poly {
        match (w1.as_letter(), w2.as_letter()) {
            (Some(b), Some(a)) => self.bracket_letters(b, a),
            (None, Some(a)) => self.bracket_by_letter(w1, a),
            (Some(b), None) => self.bracket_by_letter(w2, b).neg(),
            (None, None) => Poly::zero(),
        }
    }

    /// `{b, a}` for letters.
    fn bracket_letters(&self, b: Letter, a: Letter) -> Poly {
        use std::cmp::Ordering::*;
        match b.cmp(&a) {
            Greater => self.mono(Monomial::Lie(vec![b, a])),
            Equal => Poly::zero(),
            Less => self.mono_neg(Monomial::Lie(vec![a, b])),
        }
    }

    /// `w ∘ a` with `ℓ(w) >= 2`.
    fn mul_by_letter(&self, w: &Monomial, a: Letter) -> Poly {
        match w {
            Monomial::Prod(v) if v.len() == 2 => {
                let mut s = vec![v[0], v[1], a];
                s.sort_unstable();
                self.mono(Monomial::Prod(s))
            }
            Monomial::Prod(_) => Poly::zero(),
            Monomial::Lie(v) if v.len() == 2 => self.mono(Monomial::LieTimes(v.clone(), a)),
            Monomial::Lie(v) if self.is_char_two() => self.lie_times_letter_char_two(v, a),
            Monomial::Lie(v) if v.len() == 3 => self.lie3_times_letter(v[0], v[1], v[2], a),
            // Longer Lie words times a letter vanish outside characteristic 2.
            Monomial::Lie(_) => Poly::zero(),
            // Lie-times monomials already carry one product; a second one lands in P²·P².
            Monomial::LieTimes(..) => Poly::zero(),
        }
    }

    /// `[a1,a2,a3] ∘ a` away from characteristic 2: the largest letter is
    /// moved out of the bracket.
    fn lie3_times_letter(&self, a1: Letter, a2: Letter, a3: Letter, a: Letter) -> Poly {
        // {{a, a3}, a2} * a1, evaluated through the table.
        let pivot_to_head = || {
            let inner = self.bracket_letters(a, a3);
            let outer = self.bracket(&inner, &self.letter(a2));
            self.mul(&outer, &self.letter(a1))
        };
        if a3 == a {
            Poly::zero()
        } else if a > a3 {
            if a >= a1 {
                self.mono(Monomial::LieTimes(vec![a1, a2, a3], a))
            } else {
                pivot_to_head()
            }
        } else if a3 < a1 {
            let r = pivot_to_head();
            if self.mutation == Some(TableMutation::NegateTailBelowHead) {
                r.neg()
            } else {
                r
            }
        } else if a3 > a1 {
            let inner = self.bracket_by_letter(&Monomial::Lie(vec![a1, a2]), a);
            self.mul(&inner, &self.letter(a3)).neg()
        } else if a >= a2 {
            self.mono_neg(Monomial::LieTimes(vec![a3, a2, a], a1))
        } else {
            self.mono_neg(Monomial::LieTimes(vec![a3, a, a2], a1))
        }
    }

    /// `[a1,...,an] ∘ a` in characteristic 2, `n >= 3`.
    fn lie_times_letter_char_two(&self, v: &[Letter], a: Letter) -> Poly {
        let (a1, a2, rest) = (v[0], v[1], &v[2..]);
        if a >= a2 {
            self.mono(lie_times_sorted(a1, a2, rest.iter().copied().chain([a])))
        } else {
            let n = v.len();
            let mut first = vec![a1, a];
            first.extend_from_slice(&v[1..n - 1]);
            self.binomial(
                Monomial::LieTimes(first, v[n - 1]),
                lie_times_sorted(a2, a, std::iter::once(a1).chain(rest.iter().copied())),
            )
        }
    }

    /// `{w, a}` with `ℓ(w) >= 2`.
    fn bracket_by_letter(&self, w: &Monomial, a: Letter) -> Poly {
        match w {
            Monomial::Prod(v) if v.len() == 2 => {
                // Leibniz: {a1 a2, a} = {a1, a} a2 + {a2, a} a1.
                let mut r = self.mul(&self.bracket_letters(v[0], a), &self.letter(v[1]));
                r = r.add(&self.mul(&self.bracket_letters(v[1], a), &self.letter(v[0])));
                r
            }
            Monomial::Prod(_) => Poly::zero(),
            Monomial::Lie(v) => {
                let (a1, a2, rest) = (v[0], v[1], &v[2..]);
                if a >= a2 {
                    self.mono(lie_sorted(a1, a2, rest.iter().copied().chain([a])))
                } else {
                    let mut first = vec![a1, a];
                    first.extend_from_slice(&v[1..]);
                    self.binomial(
                        Monomial::Lie(first),
                        lie_sorted(a2, a, std::iter::once(a1).chain(rest.iter().copied())),
                    )
                }
            }
            Monomial::LieTimes(v, t) if v.len() == 2 => {
                let inner = self.bracket_by_letter(&Monomial::Lie(v.clone()), a);
                self.mul(&inner, &self.letter(*t))
            }
            Monomial::LieTimes(v, t) if self.is_char_two() => {
                let (a1, a2, rest) = (v[0], v[1], &v[2..]);
                if a >= a2 {
                    self.mono(lie_times_sorted(
                        a1,
                        a2,
                        rest.iter().copied().chain([*t, a]),
                    ))
                } else {
                    let mut first = vec![a1, a];
                    first.extend_from_slice(&v[1..]);
                    self.binomial(
                        Monomial::LieTimes(first, *t),
                        lie_times_sorted(a2, a, rest.iter().copied().chain([*t, a1])),
                    )
                }
            }
            Monomial::LieTimes(..) => Poly::zero(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::Letter;
    use crate::coeff::FieldSpec;

    const A: Letter = Letter(0);
    const B: Letter = Letter(1);
    const C: Letter = Letter(2);

    fn lie(v: &[Letter]) -> Monomial {
        Monomial::Lie(v.to_vec())
    }

    fn q() -> Algebra {
        Algebra::new(FieldSpec::rationals())
    }

    fn gf2() -> Algebra {
        Algebra::new(FieldSpec::prime(2).unwrap())
    }

    #[test]
    fn product_examples() {
        let alg = q();
        assert_eq!(
            alg.mul_basis(&Monomial::letter(B), &Monomial::letter(A)),
            alg.mono(Monomial::Prod(vec![A, B]))
        );
        assert!(alg.mul_basis(&lie(&[B, A]), &lie(&[C, A])).is_zero());
        assert!(alg
            .mul_basis(&lie(&[B, A, C]), &Monomial::letter(C))
            .is_zero());
        assert!(alg
            .mul_basis(&Monomial::Prod(vec![A, B, C]), &Monomial::letter(A))
            .is_zero());
        assert!(alg
            .mul_basis(&lie(&[B, A, A, A]), &Monomial::letter(C))
            .is_zero());
    }

    #[test]
    fn bracket_examples() {
        let alg = q();
        assert_eq!(
            alg.bracket_basis(&Monomial::letter(B), &Monomial::letter(A)),
            alg.mono(lie(&[B, A]))
        );
        assert!(alg
            .bracket_basis(&Monomial::letter(A), &Monomial::letter(A))
            .is_zero());
        assert_eq!(
            alg.bracket_basis(&lie(&[B, A]), &Monomial::letter(C)),
            alg.mono(lie(&[B, A, C]))
        );
        assert_eq!(
            alg.bracket_basis(&lie(&[C, B]), &Monomial::letter(A)),
            alg.binomial(lie(&[C, A, B]), lie(&[B, A, C]))
        );
    }

    #[test]
    fn char_two_keeps_long_lie_times() {
        let alg = gf2();
        // [b,a,a,a] * c is a basis monomial in characteristic 2.
        assert_eq!(
            alg.mul_basis(&lie(&[B, A, A, A]), &Monomial::letter(C)),
            alg.mono(Monomial::LieTimes(vec![B, A, A, A], C))
        );
        // The multiplied letter joins the sorted tail.
        assert_eq!(
            alg.mul_basis(&lie(&[B, A, C]), &Monomial::letter(B)),
            alg.mono(Monomial::LieTimes(vec![B, A, B], C))
        );
    }

    #[test]
    fn outputs_are_canonical() {
        for alg in [q(), gf2(), Algebra::new(FieldSpec::prime(3).unwrap())] {
            let ms: Vec<Monomial> = (1..=4)
                .flat_map(|l| crate::basis::enumerate_length(3, alg.is_char_two(), l))
                .collect();
            for u in &ms {
                for a in [A, B, C] {
                    let x = Monomial::letter(a);
                    for p in [alg.mul_basis(u, &x), alg.bracket_basis(u, &x)] {
                        for (m, _) in p.terms() {
                            assert!(
                                crate::basis::is_canonical(m, alg.is_char_two()),
                                "{u:?} with {a:?} gave {m:?}"
                            );
                            assert_eq!(m.len(), u.len() + 1);
                        }
                    }
                }
            }
        }
    }
}
