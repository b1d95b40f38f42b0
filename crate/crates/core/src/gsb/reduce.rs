//! Division by normal multiples.

use std::fmt;

use super::{GsbBasis, Relation};
use crate::algebra::Poly;
use crate::basis::{Alphabet, Letter};
use crate::coeff::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReduceMode {
    /// Stop once the leading monomial is irreducible.
    HeadOnly,
    /// Reduce every term; the remainder is supported on irreducible
    /// monomials.
    Full,
}

/// One subtraction `f -= coefficient * [s, letters...]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub relation: usize,
    pub letters: Vec<Letter>,
    pub coefficient: Scalar,
}

/// The subtractions performed by a reduction, in order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Recomputes the remainder from the input.
    pub fn replay(&self, f: &Poly, basis: &GsbBasis) -> Poly {
        let mut r = f.clone();
        for step in &self.steps {
            let s = basis
                .relation(step.relation)
                .expect("trace refers to basis relations");
            let h = basis
                .normal_multiple(s, &step.letters)
                .expect("trace steps are normal multiples");
            r.add_scaled(&h, &-&step.coefficient);
        }
        r
    }

    pub fn display<'a>(&'a self, basis: &'a GsbBasis) -> TraceDisplay<'a> {
        TraceDisplay { trace: self, basis }
    }
}

pub struct TraceDisplay<'a> {
    trace: &'a ReductionTrace,
    basis: &'a GsbBasis,
}

fn letters_text(alphabet: &Alphabet, letters: &[Letter]) -> String {
    letters
        .iter()
        .map(|&l| alphabet.name(l))
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for TraceDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let alphabet = self.basis.alphabet();
        for (i, step) in self.trace.steps.iter().enumerate() {
            let s = self
                .basis
                .relation(step.relation)
                .expect("trace refers to basis relations");
            let lead = s.leading().display(alphabet);
            if step.letters.is_empty() {
                writeln!(
                    f,
                    "{:>4}. subtract {} * s{} (leading {lead})",
                    i + 1,
                    step.coefficient,
                    step.relation
                )?;
            } else {
                writeln!(
                    f,
                    "{:>4}. subtract {} * [s{}, {}] (leading of s: {lead})",
                    i + 1,
                    step.coefficient,
                    step.relation,
                    letters_text(alphabet, &step.letters)
                )?;
            }
        }
        Ok(())
    }
}

impl GsbBasis {
    /// Reduces `f` using the preferred reducer of each monomial.
    pub fn reduce(&self, f: &Poly, mode: ReduceMode) -> (Poly, ReductionTrace) {
        self.reduce_with(f, mode, |_| 0)
    }

    /// Reduces `f`, letting `choose` pick among all reducers of a monomial
    /// (given in [`GsbBasis::find_reducers`] order).
    pub fn reduce_with(
        &self,
        f: &Poly,
        mode: ReduceMode,
        mut choose: impl FnMut(&[(&Relation, Vec<Letter>)]) -> usize,
    ) -> (Poly, ReductionTrace) {
        let mut p = f.clone();
        let mut remainder = Poly::zero();
        let mut trace = ReductionTrace::default();
        while let Some((m, c)) = p.pop_leading() {
            let reducers = self.find_reducers(&m);
            if reducers.is_empty() {
                remainder.add_term(m, c);
                if mode == ReduceMode::HeadOnly {
                    return (remainder.add(&p), trace);
                }
                continue;
            }
            let (s, letters) = &reducers[choose(&reducers).min(reducers.len() - 1)];
            let mut h = self
                .normal_multiple(s, letters)
                .expect("reducers are normal multiples");
            let (lead, _) = h.pop_leading().expect("nonzero");
            debug_assert_eq!(lead, m);
            p.add_scaled(&h, &-&c);
            trace.steps.push(ReductionStep {
                relation: s.id,
                letters: letters.clone(),
                coefficient: c,
            });
        }
        (remainder, trace)
    }
}
