//! Multiplication and general compositions.

use super::{normal_multiple, Relation, TailMultiset};
use crate::algebra::{Algebra, Poly};
use crate::basis::{Alphabet, Monomial};

/// `s·a` for every letter, `s·[a1,a2]` and `(s, [a1,a2])` for `a1 > a2`, and
/// `(s, a)` for every letter when the leading monomial is shorter than 5.
/// Zero products are kept so that the count does not depend on `s`.
pub fn mult_compositions(alg: &Algebra, alphabet: &Alphabet, s: &Relation) -> Vec<Poly> {
    let letters: Vec<_> = alphabet.letters().collect();
    let mut out = Vec::new();
    for &a in &letters {
        out.push(alg.mul_letter(&s.poly, a));
    }
    for &a1 in &letters {
        for &a2 in letters.iter().filter(|&&a2| a2 < a1) {
            let w = alg.monomial(Monomial::Lie(vec![a1, a2]));
            out.push(alg.mul(&s.poly, &w));
            out.push(alg.bracket(&s.poly, &w));
        }
    }
    if !s.divides_properly() {
        for &a in &letters {
            out.push(alg.bracket_letter(&s.poly, a));
        }
    }
    out
}

/// The general composition of two relations whose leading monomials have
/// proper normal multiples in common: `[s1, e1] - [s2, e2]` where the
/// extensions complete both tails to their least common multiple. For
/// Lie-times leadings the multiplied letter is part of the tail.
pub fn general_composition(alg: &Algebra, s1: &Relation, s2: &Relation) -> Option<Poly> {
    let (m1, m2) = (s1.leading(), s2.leading());
    if m1 == m2 {
        let d = s1.poly.sub(&s2.poly);
        return (!d.is_zero()).then_some(d);
    }
    if !s1.divides_properly()
        || !s2.divides_properly()
        || m1.class() != m2.class()
        || m1.head() != m2.head()
    {
        return None;
    }
    let (t1, t2) = (TailMultiset::of(m1), TailMultiset::of(m2));
    let lcm = t1.lcm(&t2);
    let e1 = t1.complement_in(&lcm).expect("lcm contains both");
    let e2 = t2.complement_in(&lcm).expect("lcm contains both");
    let h1 = normal_multiple(alg, &s1.poly, &e1).expect("long leading");
    let h2 = normal_multiple(alg, &s2.poly, &e2).expect("long leading");
    assert_eq!(
        h1.leading_monomial(),
        h2.leading_monomial(),
        "normal multiples over the lcm share their leading monomial"
    );
    Some(h1.sub(&h2))
}

#[cfg(test)]
mod tests {
    use super::super::Origin;
    use super::*;
    use crate::basis::Letter;
    use crate::coeff::FieldSpec;

    const A: Letter = Letter(0);
    const B: Letter = Letter(1);
    const C: Letter = Letter(2);

    fn rel(alg: &Algebra, m: Monomial) -> Relation {
        Relation {
            id: 0,
            poly: alg.monomial(m),
            origin: Origin::Input,
        }
    }

    #[test]
    fn multiplication_composition_counts() {
        let alg = Algebra::new(FieldSpec::rationals());
        let ab = Alphabet::standard(2);
        let short = rel(&alg, Monomial::Prod(vec![A, B]));
        assert_eq!(mult_compositions(&alg, &ab, &short).len(), 6);
        let long = rel(&alg, Monomial::Lie(vec![B, A, A, A, A]));
        assert_eq!(mult_compositions(&alg, &ab, &long).len(), 4);
        let a = rel(&alg, Monomial::letter(A));
        assert_eq!(
            mult_compositions(&alg, &ab, &a)[0],
            alg.monomial(Monomial::Prod(vec![A, A]))
        );
    }

    #[test]
    fn general_composition_uses_lcm() {
        let alg = Algebra::new(FieldSpec::rationals());
        let s1 = rel(&alg, Monomial::Lie(vec![B, A, A, A, A]));
        let s2 = rel(&alg, Monomial::Lie(vec![B, A, A, A, C]));
        let g = general_composition(&alg, &s1, &s2).unwrap();
        let expect = alg
            .left_normed(&s1.poly, &[C])
            .sub(&alg.left_normed(&s2.poly, &[A]));
        assert_eq!(g, expect);
        let s3 = rel(&alg, Monomial::Lie(vec![C, A, A, A, A]));
        assert!(general_composition(&alg, &s1, &s3).is_none());
        assert!(general_composition(&alg, &s1, &s1).is_none());
    }
}
