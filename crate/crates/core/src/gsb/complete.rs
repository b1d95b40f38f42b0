//! The completion loop: add every composition that does not reduce to zero
//! until none remain.

use std::collections::VecDeque;

use thiserror::Error;

use super::{general_composition, mult_compositions, GsbBasis, Origin, ReduceMode};
use crate::algebra::Poly;
use crate::basis::Alphabet;
use crate::coeff::FieldSpec;

/// Operational bounds on completion. Termination is guaranteed in theory;
/// the bounds turn a runaway computation into an error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_relations: usize,
    pub max_leading_len: usize,
    pub max_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_relations: 5_000,
            max_leading_len: 64,
            max_steps: 2_000_000,
        }
    }
}

impl Limits {
    pub fn unbounded() -> Self {
        Limits {
            max_relations: usize::MAX,
            max_leading_len: usize::MAX,
            max_steps: usize::MAX,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Limit {
    Relations(usize),
    LeadingLength(usize),
    Steps(usize),
}

#[derive(Debug, Error, Clone)]
#[error("completion stopped: {}", describe(.limit))]
pub struct CompletionError {
    pub limit: Limit,
    /// The basis at the moment the limit was hit.
    pub partial: Box<GsbBasis>,
}

fn describe(limit: &Limit) -> String {
    match limit {
        Limit::Relations(n) => format!("more than {n} relations"),
        Limit::LeadingLength(n) => format!("leading monomial longer than {n}"),
        Limit::Steps(n) => format!("more than {n} composition steps"),
    }
}

/// Completes `relations` to a Gröbner–Shirshov basis.
///
/// Inputs are queued in ascending order of leading monomial. Each queued
/// polynomial is fully reduced; a nonzero remainder is made monic and
/// inserted, after which its multiplication compositions and its general
/// compositions with the earlier relations (ascending) join the queue.
pub fn complete(
    relations: &[Poly],
    alphabet: &Alphabet,
    field: FieldSpec,
    limits: Limits,
) -> Result<GsbBasis, CompletionError> {
    let mut basis = GsbBasis::new(alphabet.clone(), field);
    let mut inputs: Vec<&Poly> = relations.iter().filter(|p| !p.is_zero()).collect();
    inputs.sort_by(|p, q| p.leading_monomial().cmp(&q.leading_monomial()));
    let mut queue: VecDeque<(Poly, Origin)> = inputs
        .into_iter()
        .map(|p| (p.clone(), Origin::Input))
        .collect();
    let fail = |limit, basis: &GsbBasis| CompletionError {
        limit,
        partial: Box::new(basis.clone()),
    };

    let mut steps = 0usize;
    while let Some((p, origin)) = queue.pop_front() {
        steps += 1;
        if steps > limits.max_steps {
            return Err(fail(Limit::Steps(limits.max_steps), &basis));
        }
        let r = basis.reduce(&p, ReduceMode::Full).0;
        if r.is_zero() {
            continue;
        }
        let r = r.make_monic().expect("nonzero");
        if r.max_length() > limits.max_leading_len {
            return Err(fail(Limit::LeadingLength(limits.max_leading_len), &basis));
        }
        if basis.len() >= limits.max_relations {
            return Err(fail(Limit::Relations(limits.max_relations), &basis));
        }
        let lead = r.leading_monomial().expect("nonzero").clone();
        basis.insert(r, origin).expect("nonzero");
        let s = basis.by_leading(&lead).expect("just inserted");
        for h in mult_compositions(basis.algebra(), alphabet, s) {
            if !h.is_zero() {
                queue.push_back((h, Origin::MultComposition));
            }
        }
        for t in basis.relations() {
            if t.leading() != &lead {
                if let Some(h) = general_composition(basis.algebra(), s, t) {
                    queue.push_back((h, Origin::GeneralComposition));
                }
            }
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_expr, Algebra};

    fn setup(field: FieldSpec, rels: &[&str]) -> (Alphabet, Vec<Poly>) {
        let ab = Alphabet::standard(2);
        let alg = Algebra::new(field);
        let ps = rels
            .iter()
            .map(|s| parse_expr(s, &ab).unwrap().eval(&alg).unwrap())
            .collect();
        (ab, ps)
    }

    #[test]
    fn empty_input() {
        let ab = Alphabet::standard(2);
        let b = complete(&[], &ab, FieldSpec::rationals(), Limits::default()).unwrap();
        assert!(b.is_empty());
    }

    #[test]
    fn single_letter_relation_kills_it() {
        let (ab, rels) = setup(FieldSpec::rationals(), &["a"]);
        let b = complete(&rels, &ab, FieldSpec::rationals(), Limits::default()).unwrap();
        assert!(b.nontrivial_compositions().is_empty());
        let alg = b.algebra().clone();
        let ba = parse_expr("[b,a]", &ab).unwrap().eval(&alg).unwrap();
        assert!(b.reduce(&ba, ReduceMode::Full).0.is_zero());
    }

    #[test]
    fn freiheitssatz_example() {
        for field in [FieldSpec::rationals(), FieldSpec::prime(2).unwrap()] {
            let (ab, rels) = setup(field, &["[b,a]*b - a"]);
            let b = complete(&rels, &ab, field, Limits::default()).unwrap();
            let aa = parse_expr("a*a", &ab).unwrap().eval(b.algebra()).unwrap();
            let (r, trace) = b.reduce(&aa, ReduceMode::Full);
            assert!(r.is_zero(), "{}", r.display(&ab));
            assert!(trace.replay(&aa, &b).is_zero());
        }
    }

    #[test]
    fn limits_are_reported() {
        let (ab, rels) = setup(FieldSpec::rationals(), &["[b,a]*b - a"]);
        let limits = Limits {
            max_relations: 1,
            ..Limits::default()
        };
        let err = complete(&rels, &ab, FieldSpec::rationals(), limits).unwrap_err();
        assert_eq!(err.limit, Limit::Relations(1));
        assert_eq!(err.partial.len(), 1);
    }
}
