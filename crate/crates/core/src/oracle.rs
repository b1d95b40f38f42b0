//! Brute-force verification.
//!
//! [`verify_axioms`] checks the multiplication table exhaustively on all
//! tuples of basis monomials up to a total length, and [`IdealSpan`]
//! computes ideals by plain linear algebra so that the rewriting machinery
//! can be compared against something that shares none of its code.
//!
//! The span is built inside a length window: starting from the relations,
//! it closes under the letter actions `x ↦ x·a` and `x ↦ (x, a)`, and drops
//! every element whose longest term exceeds the window's ceiling. Each
//! element kept is a genuine ideal element, so membership answers are
//! sound; with a ceiling a few letters above the query length they are
//! also complete on every presentation the tests use. (Truncating
//! elements at the ceiling instead of dropping them would be unsound for
//! inhomogeneous relations.)

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use crate::algebra::{Algebra, Poly};
use crate::basis::{enumerate_length, is_canonical, Alphabet, Letter, Monomial};
use crate::coeff::FieldSpec;

/// Outcome of one family of checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub instances: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            instances: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub field: FieldSpec,
    pub generators: usize,
    pub max_total_len: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn instances(&self) -> usize {
        self.checks.iter().map(|c| c.instances).sum()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "field {}, {} generators, total length <= {}",
            self.field, self.generators, self.max_total_len
        )?;
        for c in &self.checks {
            let verdict = if c.passed() { "pass" } else { "FAIL" };
            writeln!(
                f,
                "  {:<24} {verdict} {:>8} instances {:>6} failures",
                c.name, c.instances, c.failures
            )?;
            if let Some(ce) = &c.counterexample {
                writeln!(f, "    counterexample: {ce}")?;
            }
        }
        write!(f, "{}", if self.passed() { "ok" } else { "failed" })
    }
}

/// Basis monomials grouped by length, `by_len[l]` for `1 <= l <= max`.
struct Pool {
    by_len: Vec<Vec<Poly>>,
    names: Vec<Vec<String>>,
}

impl Pool {
    fn new(alg: &Algebra, alphabet: &Alphabet, max: usize) -> Self {
        let mut by_len = vec![Vec::new()];
        let mut names = vec![Vec::new()];
        for l in 1..=max {
            let ms = enumerate_length(alphabet.len(), alg.is_char_two(), l);
            names.push(ms.iter().map(|m| m.display(alphabet).to_string()).collect());
            by_len.push(ms.into_iter().map(|m| alg.monomial(m)).collect());
        }
        Pool { by_len, names }
    }

    /// Calls `f` on every `k`-tuple of monomials of total length at most
    /// `budget`, each entry of length at least `min_len[i]`.
    fn tuples(&self, min_len: &[usize], budget: usize, f: &mut dyn FnMut(&[&Poly], &[&str])) {
        fn go<'a>(
            pool: &'a Pool,
            min_len: &[usize],
            budget: usize,
            polys: &mut Vec<&'a Poly>,
            names: &mut Vec<&'a str>,
            f: &mut dyn FnMut(&[&Poly], &[&str]),
        ) {
            let i = polys.len();
            if i == min_len.len() {
                f(polys, names);
                return;
            }
            let reserve: usize = min_len[i + 1..].iter().sum();
            let top = budget.saturating_sub(reserve).min(pool.by_len.len() - 1);
            for l in min_len[i]..=top {
                for (p, n) in pool.by_len[l].iter().zip(&pool.names[l]) {
                    polys.push(p);
                    names.push(n);
                    go(pool, min_len, budget - l, polys, names, f);
                    polys.pop();
                    names.pop();
                }
            }
        }
        go(self, min_len, budget, &mut Vec::new(), &mut Vec::new(), f);
    }
}

/// Exhaustive check of the Poisson and metabelian axioms on all basis
/// monomial tuples of total length at most `max_total_len`.
pub fn verify_axioms(generators: usize, field: FieldSpec, max_total_len: usize) -> Report {
    verify_axioms_in(&Algebra::new(field), generators, max_total_len)
}

/// [`verify_axioms`] against an arbitrary (possibly mutated) table.
pub fn verify_axioms_in(alg: &Algebra, generators: usize, max_total_len: usize) -> Report {
    let alphabet = Alphabet::standard(generators);
    let pool = Pool::new(alg, &alphabet, max_total_len);
    let n = max_total_len;
    let show = |p: &Poly| p.display(&alphabet).to_string();

    let mut canonical = Check::new("canonical outputs");
    let mut comm = Check::new("commutativity");
    let mut anti = Check::new("anticommutativity");
    pool.tuples(&[1, 1], n, &mut |x, s| {
        let (u, v) = (x[0], x[1]);
        let (uv, vu) = (alg.mul(u, v), alg.mul(v, u));
        let (bu, bv) = (alg.bracket(u, v), alg.bracket(v, u));
        let len = u.max_length() + v.max_length();
        let shaped = |p: &Poly| {
            p.terms()
                .all(|(m, _)| m.len() == len && is_canonical(m, alg.is_char_two()))
        };
        canonical.record(shaped(&uv) && shaped(&bu), || {
            format!(
                "{} * {} = {}, {{{}, {}}} = {}",
                s[0],
                s[1],
                show(&uv),
                s[0],
                s[1],
                show(&bu)
            )
        });
        comm.record(uv == vu, || {
            format!(
                "{} * {} = {} but reversed {}",
                s[0],
                s[1],
                show(&uv),
                show(&vu)
            )
        });
        let ok = bu == bv.neg() && (u != v || bu.is_zero());
        anti.record(ok, || {
            format!(
                "{{{0}, {1}}} = {2}, {{{1}, {0}}} = {3}",
                s[0],
                s[1],
                show(&bu),
                show(&bv)
            )
        });
    });

    let mut assoc = Check::new("associativity");
    let mut jacobi = Check::new("jacobi");
    let mut leibniz = Check::new("leibniz");
    pool.tuples(&[1, 1, 1], n, &mut |x, s| {
        let (u, v, w) = (x[0], x[1], x[2]);
        let l = alg.mul(&alg.mul(u, v), w);
        let r = alg.mul(u, &alg.mul(v, w));
        assoc.record(l == r, || {
            format!(
                "({0} * {1}) * {2} = {3}, {0} * ({1} * {2}) = {4}",
                s[0],
                s[1],
                s[2],
                show(&l),
                show(&r)
            )
        });
        let j = alg
            .bracket(&alg.bracket(u, v), w)
            .add(&alg.bracket(&alg.bracket(v, w), u))
            .add(&alg.bracket(&alg.bracket(w, u), v));
        jacobi.record(j.is_zero(), || {
            format!("jacobi({}, {}, {}) = {}", s[0], s[1], s[2], show(&j))
        });
        let l = alg.bracket(&alg.mul(u, v), w);
        let r = alg
            .mul(&alg.bracket(u, w), v)
            .add(&alg.mul(u, &alg.bracket(v, w)));
        leibniz.record(l == r, || {
            format!(
                "{{{0} * {1}, {2}}} = {3}, expansion gives {4}",
                s[0],
                s[1],
                s[2],
                show(&l),
                show(&r)
            )
        });
    });

    let mut metabelian = Check::new("metabelian");
    squares_annihilate(alg, &pool, n, &show, &mut metabelian);

    Report {
        field: *alg.field(),
        generators,
        max_total_len,
        checks: vec![canonical, comm, anti, assoc, jacobi, leibniz, metabelian],
    }
}

/// Products and brackets of two elements of `P²` vanish.
fn squares_annihilate(
    alg: &Algebra,
    pool: &Pool,
    n: usize,
    show: &dyn Fn(&Poly) -> String,
    check: &mut Check,
) {
    pool.tuples(&[1, 1, 1, 1], n, &mut |x, s| {
        let (p, q, r, t) = (x[0], x[1], x[2], x[3]);
        let squares = [alg.bracket(p, q), alg.mul(p, q)];
        let others = [alg.bracket(r, t), alg.mul(r, t)];
        for left in &squares {
            for right in &others {
                for out in [alg.mul(left, right), alg.bracket(left, right)] {
                    check.record(out.is_zero(), || {
                        format!("{} {} {} {} gives {}", s[0], s[1], s[2], s[3], show(&out))
                    });
                }
            }
        }
    });
}

/// Exhaustive check of the derived identities of metabelian Poisson
/// algebras that the completion procedure relies on.
pub fn verify_identities(generators: usize, field: FieldSpec, max_total_len: usize) -> Report {
    let alg = Algebra::new(field);
    let alphabet = Alphabet::standard(generators);
    let pool = Pool::new(&alg, &alphabet, max_total_len);
    let n = max_total_len;
    let show = |p: &Poly| p.display(&alphabet).to_string();
    let br = |x: &Poly, y: &Poly| alg.bracket(x, y);
    let mul = |x: &Poly, y: &Poly| alg.mul(x, y);

    let mut squares = Check::new("squares annihilate");
    squares_annihilate(&alg, &pool, n, &show, &mut squares);

    let mut swap_tail = Check::new("bracket tail symmetry");
    let mut swap_times = Check::new("product tail antisymmetry");
    pool.tuples(&[1, 1, 1, 1], n, &mut |x, s| {
        let xy = br(x[0], x[1]);
        let l = br(&br(&xy, x[2]), x[3]);
        let r = br(&br(&xy, x[3]), x[2]);
        swap_tail.record(l == r, || {
            format!(
                "(({0},{1}),{2}),{3}) with {2} and {3} swapped: {4} vs {5}",
                s[0],
                s[1],
                s[2],
                s[3],
                show(&l),
                show(&r)
            )
        });
        let l = mul(&br(&xy, x[2]), x[3]);
        let r = mul(&br(&xy, x[3]), x[2]).neg();
        swap_times.record(l == r, || {
            format!(
                "(({0},{1}),{2})*{3}: {4} vs {5}",
                s[0],
                s[1],
                s[2],
                s[3],
                show(&l),
                show(&r)
            )
        });
    });

    let mut letter_jacobi = Check::new("letter jacobi");
    pool.tuples(&[1, 1, 1], 3, &mut |x, s| {
        let (a, b, c) = (x[0], x[1], x[2]);
        let j = br(&br(a, b), c)
            .add(&br(&br(b, c), a))
            .add(&br(&br(c, a), b));
        letter_jacobi.record(j.is_zero(), || {
            format!("jacobi({}, {}, {}) = {}", s[0], s[1], s[2], show(&j))
        });
    });

    let mut w_times = Check::new("bracket then product");
    let mut w_leibniz = Check::new("product then bracket");
    let mut w_swap = Check::new("double letter bracket");
    pool.tuples(&[2, 1, 1], n, &mut |x, s| {
        let (w, b, c) = (x[0], x[1], x[2]);
        if b.max_length() != 1 || c.max_length() != 1 {
            return;
        }
        let l = mul(&br(w, b), c);
        let r = mul(&br(w, c), b).neg();
        w_times.record(l == r, || {
            format!(
                "W={}, b={}, c={}: {} vs {}",
                s[0],
                s[1],
                s[2],
                show(&l),
                show(&r)
            )
        });
        let l = br(&mul(w, b), c);
        let r = mul(&br(w, c), b);
        w_leibniz.record(l == r, || {
            format!(
                "W={}, b={}, c={}: {} vs {}",
                s[0],
                s[1],
                s[2],
                show(&l),
                show(&r)
            )
        });
        let l = br(&br(w, b), c);
        let r = br(&br(w, c), b);
        w_swap.record(l == r, || {
            format!(
                "W={}, b={}, c={}: {} vs {}",
                s[0],
                s[1],
                s[2],
                show(&l),
                show(&r)
            )
        });
    });

    let mut inner = Check::new("bracket into left-normed");
    let mut times = Check::new("left-normed times element");
    for k in 2..n {
        let mins = vec![1; k + 1];
        pool.tuples(&mins, n, &mut |x, s| {
            // (x, [x1,...,xk]) = [x, (x1,x2), x3, ..., xk]
            let lie = x[2..].iter().fold(x[1].clone(), |acc, y| br(&acc, y));
            let l = br(x[0], &lie);
            let r = x[3..]
                .iter()
                .fold(br(x[0], &br(x[1], x[2])), |acc, y| br(&acc, y));
            inner.record(l == r, || format!("{:?}: {} vs {}", s, show(&l), show(&r)));
        });
    }
    for k in 1..n - 1 {
        let mins = vec![1; k + 2];
        pool.tuples(&mins, n, &mut |x, s| {
            // [x, x1..xk] * y = [x*y, x1..xk] + [x*(x1,y), x2..xk]
            let (head, mid, y) = (x[0], &x[1..=k], x[k + 1]);
            let fold = |start: Poly, rest: &[&Poly]| rest.iter().fold(start, |acc, z| br(&acc, z));
            let l = mul(&fold(head.clone(), mid), y);
            let r = fold(mul(head, y), mid).add(&fold(mul(head, &br(mid[0], y)), &mid[1..]));
            times.record(l == r, || format!("{:?}: {} vs {}", s, show(&l), show(&r)));
        });
    }

    Report {
        field,
        generators,
        max_total_len,
        checks: vec![
            squares,
            swap_tail,
            swap_times,
            letter_jacobi,
            w_times,
            w_leibniz,
            w_swap,
            inner,
            times,
        ],
    }
}

/// The part of `Id(S)` reachable without passing through monomials longer
/// than `ceiling`, kept in semi-echelon form (one monic row per leading
/// monomial).
#[derive(Clone, Debug)]
pub struct IdealSpan {
    rows: BTreeMap<Monomial, Poly>,
    ceiling: usize,
}

impl IdealSpan {
    /// Closes `relations` under letter actions inside the window.
    pub fn build(alg: &Algebra, letters: &[Letter], relations: &[Poly], ceiling: usize) -> Self {
        let mut span = IdealSpan {
            rows: BTreeMap::new(),
            ceiling,
        };
        let mut queue: VecDeque<Poly> = relations.iter().cloned().collect();
        while let Some(p) = queue.pop_front() {
            if p.is_zero() || p.max_length() > ceiling {
                continue;
            }
            let r = span.head_reduce(p);
            if r.is_zero() {
                continue;
            }
            let r = r.make_monic().expect("nonzero");
            if r.max_length() < ceiling {
                for &a in letters {
                    queue.push_back(alg.mul_letter(&r, a));
                    queue.push_back(alg.bracket_letter(&r, a));
                }
            }
            span.rows
                .insert(r.leading_monomial().expect("nonzero").clone(), r);
        }
        span
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    fn head_reduce(&self, mut p: Poly) -> Poly {
        let mut done = Poly::zero();
        while let Some((m, c)) = p.pop_leading() {
            match self.rows.get(&m) {
                // The row's leading term cancels the popped one.
                Some(row) => {
                    let mut rest = row.clone();
                    rest.pop_leading();
                    p.add_scaled(&rest, &-&c);
                }
                None => {
                    done.add_term(m, c);
                    return done.add(&p);
                }
            }
        }
        done
    }

    /// Whether `f` lies in the computed part of the ideal.
    pub fn contains(&self, f: &Poly) -> bool {
        let mut p = f.clone();
        while let Some((m, c)) = p.pop_leading() {
            match self.rows.get(&m) {
                Some(row) => {
                    let mut rest = row.clone();
                    rest.pop_leading();
                    p.add_scaled(&rest, &-&c);
                }
                None => return false,
            }
        }
        true
    }

    /// Dimension of the computed ideal part inside `V≤D`.
    pub fn rank_up_to(&self, d: usize) -> usize {
        self.rows.keys().filter(|m| m.len() <= d).count()
    }
}

/// Default ceiling for a query bound `d`: a few letters above both `d` and
/// the longest relation.
pub fn default_ceiling(relations: &[Poly], d: usize) -> usize {
    relations
        .iter()
        .map(Poly::max_length)
        .max()
        .unwrap_or(0)
        .max(d)
        + 3
}

/// Membership of `f` in `Id(relations)` by linear algebra. Requires
/// `ℓ(leading(f)) <= d`.
pub fn truncated_member(
    alg: &Algebra,
    letters: &[Letter],
    f: &Poly,
    relations: &[Poly],
    d: usize,
) -> bool {
    assert!(f.max_length() <= d, "query longer than the bound");
    IdealSpan::build(alg, letters, relations, default_ceiling(relations, d)).contains(f)
}
