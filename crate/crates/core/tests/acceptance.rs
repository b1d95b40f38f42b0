//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use metapoisson::algebra::{parse_expr, Algebra, Poly};
use metapoisson::basis::{enumerate, enumerate_length, is_canonical, Alphabet, Letter, Monomial};
use metapoisson::coeff::FieldSpec;
use metapoisson::decide::{
    check_automorphism, determinant, Endomorphism, NotAutomorphism, Presentation, Verdict,
};
use metapoisson::gsb::{
    complete, normal_multiple, GsbBasis, Limits, ReduceMode, TailMultiset, DIVISOR_MIN_LEN,
};
use metapoisson::oracle::{default_ceiling, verify_axioms, verify_identities, IdealSpan};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q() -> FieldSpec {
    FieldSpec::rationals()
}

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn poly(alg: &Algebra, ab: &Alphabet, src: &str) -> Poly {
    parse_expr(src, ab).unwrap().eval(alg).unwrap()
}

struct Fixture {
    name: &'static str,
    field: FieldSpec,
    letters: usize,
    relations: &'static [&'static str],
}

impl Fixture {
    fn alphabet(&self) -> Alphabet {
        Alphabet::standard(self.letters)
    }

    fn polys(&self) -> (Algebra, Alphabet, Vec<Poly>) {
        let alg = Algebra::new(self.field);
        let ab = self.alphabet();
        let ps = self.relations.iter().map(|s| poly(&alg, &ab, s)).collect();
        (alg, ab, ps)
    }

    fn complete(&self) -> GsbBasis {
        let (_, ab, ps) = self.polys();
        complete(&ps, &ab, self.field, Limits::default()).unwrap()
    }
}

fn fixtures() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "freiheit/Q",
            field: q(),
            letters: 2,
            relations: &["[b,a]*b - a"],
        },
        Fixture {
            name: "freiheit/GF(2)",
            field: gf(2),
            letters: 2,
            relations: &["[b,a]*b - a"],
        },
        Fixture {
            name: "square/Q",
            field: q(),
            letters: 2,
            relations: &["a*a"],
        },
        Fixture {
            name: "square/GF(2)",
            field: gf(2),
            letters: 2,
            relations: &["a*a"],
        },
        Fixture {
            name: "long-lie/GF(3)",
            field: gf(3),
            letters: 2,
            relations: &["[b,a,a,a,a] - a*b"],
        },
        Fixture {
            name: "mixed/Q",
            field: q(),
            letters: 2,
            relations: &["[b,a,a,b] + a*b*b"],
        },
        Fixture {
            name: "lie-times/GF(2)",
            field: gf(2),
            letters: 2,
            relations: &["[b,a,a]*b - [b,a,b]"],
        },
        Fixture {
            name: "three/Q",
            field: q(),
            letters: 3,
            relations: &["[c,a,b] - a*c", "b*b"],
        },
        Fixture {
            name: "long-head/Q",
            field: q(),
            letters: 2,
            relations: &["[b,a,a,a,a] - [b,a]*b"],
        },
        Fixture {
            name: "long-times/GF(2)",
            field: gf(2),
            letters: 2,
            relations: &["[b,a,a,a,a] - [b,a,b,b]*b"],
        },
        Fixture {
            name: "two-long/GF(2)",
            field: gf(2),
            letters: 2,
            relations: &["[b,a,a,a,a] + [b,a,a,a]*b", "[b,a,b,b,b]"],
        },
        Fixture {
            name: "three-sq/GF(3)",
            field: gf(3),
            letters: 3,
            relations: &["(a,b) - c", "c*c"],
        },
        Fixture {
            name: "six/Q",
            field: q(),
            letters: 2,
            relations: &["[b,a,a,a,b,b] - [b,a,a,a,a,a]", "[b,a,a,b,b]"],
        },
    ]
}

fn random_poly(rng: &mut StdRng, alg: &Algebra, pool: &[Monomial], terms: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..terms {
        let m = pool.choose(rng).unwrap().clone();
        p.add_term(m, alg.scalar(rng.gen_range(-3..=3)));
    }
    p
}

/// A random element of the ideal: normal multiples of basis relations plus
/// products and brackets of input relations with random monomials.
fn random_ideal_element(
    rng: &mut StdRng,
    alg: &Algebra,
    ab: &Alphabet,
    basis: &GsbBasis,
    inputs: &[Poly],
    pool: &[Monomial],
) -> Poly {
    let letters: Vec<Letter> = ab.letters().collect();
    let rels: Vec<_> = basis.relations().collect();
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let c = alg.scalar(rng.gen_range(1..=4));
        let term = match rng.gen_range(0..3) {
            0 => {
                let s = rels.choose(rng).unwrap();
                let n = if s.divides_properly() {
                    rng.gen_range(0..=2)
                } else {
                    0
                };
                let ext: Vec<Letter> = (0..n).map(|_| *letters.choose(rng).unwrap()).collect();
                basis.normal_multiple(s, &ext).unwrap()
            }
            k => {
                let s = inputs.choose(rng).unwrap();
                let w = alg.monomial(pool.choose(rng).unwrap().clone());
                if k == 1 {
                    alg.mul(s, &w)
                } else {
                    alg.bracket(s, &w)
                }
            }
        };
        p.add_scaled(&term, &c);
    }
    p
}

fn criterion_1() -> Outcome {
    let mut total = 0;
    for n in [2, 3] {
        for field in [q(), gf(2), gf(3)] {
            let r = verify_axioms(n, field, 6);
            if !r.passed() {
                return Err(format!("{r}"));
            }
            total += r.instances();
        }
    }
    Ok(format!("{total} instances over 6 configurations"))
}

fn criterion_2() -> Outcome {
    let mut total = 0;
    for n in [2, 3] {
        for field in [q(), gf(2), gf(3)] {
            let r = verify_identities(n, field, 6);
            if !r.passed() {
                return Err(format!("{r}"));
            }
            total += r.instances();
        }
    }
    Ok(format!("{total} instances"))
}

fn criterion_3() -> Outcome {
    let ab = Alphabet::standard(3);
    let alg = Algebra::new(q());
    let chain = [
        "a*b*c", "[b,a]*c", "[c,a]*b", "[c,b]*a", "[b,a,c]", "[c,a,b]",
    ];
    let ms: Vec<Monomial> = chain
        .iter()
        .map(|s| {
            let p = poly(&alg, &ab, s);
            assert_eq!(p.len(), 1, "{s} is not a monomial");
            p.leading_monomial().unwrap().clone()
        })
        .collect();
    for w in ms.windows(2) {
        if w[0] >= w[1] {
            return Err(format!("{} !< {}", w[0].display(&ab), w[1].display(&ab)));
        }
    }
    let mut count = 0;
    for char_two in [false, true] {
        let mut seen = BTreeSet::new();
        for len in 1..=5 {
            for m in enumerate_length(3, char_two, len) {
                if !seen.insert(m.weight()) {
                    return Err(format!("weight collision at {}", m.display(&ab)));
                }
                count += 1;
            }
        }
    }
    Ok(format!("chain ordered, {count} weights distinct"))
}

fn criterion_4() -> Outcome {
    let ab = Alphabet::standard(2);
    let mut zeros = 0;
    let mut canonical = 0;
    for m in [4usize, 5] {
        for code in 0..(1u32 << (m + 1)) {
            let t: Vec<Letter> = (0..=m).map(|i| Letter(((code >> i) & 1) as u16)).collect();
            for field in [q(), gf(3), gf(2)] {
                let alg = Algebra::new(field);
                let lie = alg.left_normed(&alg.letter(t[0]), &t[1..m]);
                let p = alg.mul_letter(&lie, t[m]);
                if !field.is_char_two() {
                    if !p.is_zero() {
                        return Err(format!("nonzero in {field}: {}", p.display(&ab)));
                    }
                    zeros += 1;
                    continue;
                }
                let y5 = t[0] > t[1] && t[1..].windows(2).all(|w| w[0] <= w[1]);
                if y5 {
                    let expect = Monomial::LieTimes(t[..m].to_vec(), t[m]);
                    if !is_canonical(&expect, true) || p != alg.monomial(expect) {
                        return Err(format!("GF(2): {}", p.display(&ab)));
                    }
                    canonical += 1;
                }
            }
        }
    }
    Ok(format!(
        "{zeros} zero in Q/GF(3), {canonical} canonical in GF(2)"
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut checks = 0;
    let mut classes = BTreeSet::new();
    for i in 0..50 {
        let field = if i % 2 == 0 { gf(2) } else { q() };
        let n = 2 + i % 2;
        let alg = Algebra::new(field);
        let ab = Alphabet::standard(n);
        let all = enumerate(&ab, &field, 6);
        let long: Vec<&Monomial> = all
            .iter()
            .filter(|m| m.len() >= DIVISOR_MIN_LEN && !matches!(m, Monomial::Prod(_)))
            .collect();
        // Alternate classes where both exist.
        let want_times = field.is_char_two() && i % 4 == 0;
        let lead = long
            .iter()
            .filter(|m| matches!(m, Monomial::LieTimes(..)) == want_times)
            .collect::<Vec<_>>()
            .choose(&mut rng)
            .map(|m| (**m).clone())
            .unwrap();
        classes.insert((field.is_char_two(), lead.class()));
        let lower: Vec<Monomial> = all.iter().filter(|m| **m < lead).cloned().collect();
        let mut s = random_poly(&mut rng, &alg, &lower, 4);
        // Odd, so nonzero in every test field.
        s.add_term(lead.clone(), alg.scalar(2 * rng.gen_range(0..3) + 1));
        let s = s.make_monic().unwrap();
        assert_eq!(s.leading_monomial(), Some(&lead));
        for _ in 0..4 {
            let k = rng.gen_range(0..=3);
            let ext: Vec<Letter> = (0..k).map(|_| Letter(rng.gen_range(0..n as u16))).collect();
            let h = normal_multiple(&alg, &s, &ext).unwrap();
            let got = h.leading_monomial().unwrap();
            let tail = TailMultiset::of(&lead).union(&ext);
            let ok = h.is_monic()
                && got.class() == lead.class()
                && got.head() == lead.head()
                && got.tail() == tail.letters()
                && is_canonical(got, field.is_char_two());
            if !ok {
                return Err(format!(
                    "{} extended by {ext:?} led by {}",
                    s.display(&ab),
                    got.display(&ab)
                ));
            }
            checks += 1;
        }
    }
    Ok(format!(
        "{checks} extensions of 50 relations, classes {classes:?}"
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let fx = fixtures();
    for f in &fx {
        let (alg, ab, inputs) = f.polys();
        let b = f.complete();
        let bad = b.nontrivial_compositions();
        if !bad.is_empty() {
            return Err(format!(
                "{}: {} compositions do not reduce to 0",
                f.name,
                bad.len()
            ));
        }
        let pool = enumerate(&ab, &f.field, 3);
        for _ in 0..200 {
            let g = random_ideal_element(&mut rng, &alg, &ab, &b, &inputs, &pool);
            let r = b.reduce(&g, ReduceMode::Full).0;
            if !r.is_zero() {
                return Err(format!(
                    "{}: {} leaves {}",
                    f.name,
                    g.display(&ab),
                    r.display(&ab)
                ));
            }
        }
        let letters: Vec<Letter> = ab.letters().collect();
        let span = IdealSpan::build(&alg, &letters, &inputs, default_ceiling(&inputs, 4));
        let lrr = b.lrr_enumerate(4).len();
        let rank = span.rank_up_to(4);
        let all = enumerate(&ab, &f.field, 4).len();
        if lrr + rank != all {
            return Err(format!("{}: {lrr} + {rank} != {all}", f.name));
        }
    }
    Ok(format!("{} fixtures", fx.len()))
}

fn criterion_7() -> Outcome {
    let mut rng = StdRng::seed_from_u64(7);
    let mut pairs = 0;
    let mut members = 0;
    for f in fixtures() {
        let (alg, ab, inputs) = f.polys();
        let p = Presentation::new(ab.clone(), f.field, inputs.clone()).unwrap();
        let b = p.basis().unwrap().clone();
        let letters: Vec<Letter> = ab.letters().collect();
        let span = IdealSpan::build(&alg, &letters, &inputs, default_ceiling(&inputs, 4));
        let pool = enumerate(&ab, &f.field, 4);
        let mut queries: Vec<Poly> = pool.iter().map(|m| alg.monomial(m.clone())).collect();
        for _ in 0..30 {
            let terms = rng.gen_range(1..=4);
            let g = random_poly(&mut rng, &alg, &pool, terms);
            // g minus its normal form lies in the ideal.
            let r = b.reduce(&g, ReduceMode::Full).0;
            queries.push(g.sub(&r));
            queries.push(g);
        }
        for g in queries.iter().filter(|g| !g.is_zero()) {
            let fast = p.is_zero_in_quotient(g).unwrap().is_member();
            let slow = span.contains(g);
            if fast != slow {
                return Err(format!(
                    "{}: {} gsb={fast} span={slow}",
                    f.name,
                    g.display(&ab)
                ));
            }
            pairs += 1;
            members += fast as usize;
        }
    }
    if pairs < 500 {
        return Err(format!("only {pairs} pairs"));
    }
    Ok(format!("{pairs} pairs agree ({members} members)"))
}

fn criterion_8() -> Outcome {
    for field in [q(), gf(2)] {
        let alg = Algebra::new(field);
        let ab = Alphabet::standard(2);
        let p = Presentation::new(ab.clone(), field, vec![poly(&alg, &ab, "(b,a)*b - a")]).unwrap();
        let aa = poly(&alg, &ab, "a*a");
        let m = p.is_zero_in_quotient(&aa).unwrap();
        if !m.is_member() {
            return Err(format!("a*a not zero over {field}"));
        }
    }
    Ok("a*a = 0 over Q and GF(2)".into())
}

fn criterion_9() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut count = 0;
    for f in fixtures() {
        let (_, ab, ps) = f.polys();
        if f.letters > 3 || ps.iter().any(|p| p.max_length() > 5) {
            continue;
        }
        let start = Instant::now();
        let r = complete(&ps, &ab, f.field, Limits::default());
        let t = start.elapsed();
        if let Err(e) = r {
            return Err(format!("{}: {e}", f.name));
        }
        if t > Duration::from_secs(10) {
            return Err(format!("{}: {t:?}", f.name));
        }
        slowest = slowest.max(t);
        count += 1;
    }
    Ok(format!("{count} fixtures, slowest {slowest:?}"))
}

fn criterion_10() -> Outcome {
    let field = q();
    let alg = Algebra::new(field);
    let ab = Alphabet::standard(2);
    let endo = |a: &str, b: &str| {
        Endomorphism::new(&ab, vec![poly(&alg, &ab, a), poly(&alg, &ab, b)]).unwrap()
    };
    let check = |phi: &Endomorphism| check_automorphism(phi, &ab, field, Limits::default());

    if !check(&Endomorphism::identity(&alg, &ab)).is_yes() {
        return Err("identity".into());
    }
    let singular = endo("a*a", "b");
    if !matches!(
        check(&singular),
        Verdict::No(NotAutomorphism::SingularLinearPart)
    ) {
        return Err("phi(a) = a*a".into());
    }
    let phi = endo("a", "b + a*a");
    if !check(&phi).is_yes() {
        return Err(format!("phi(b) = b + a*a: {}", check(&phi).display(&ab)));
    }
    let psi = endo("a", "b - a*a");
    let id = Endomorphism::identity(&alg, &ab);
    if phi.compose(&alg, &psi) != id || psi.compose(&alg, &phi) != id {
        return Err("inverse round trip".into());
    }
    let no_b = endo("a", "a*a");
    if !determinant(&field, no_b.linear_matrix(&field)).is_zero()
        || !matches!(
            check(&no_b),
            Verdict::No(NotAutomorphism::SingularLinearPart)
        )
    {
        return Err("phi(b) = a*a".into());
    }
    Ok("identity yes, singular no, triangular yes with inverse, zero b-coefficient no".into())
}

fn criterion_11() -> Outcome {
    let fx = fixtures();
    for f in &fx {
        let first = f.complete().render();
        let second = f.complete().render();
        if first != second {
            return Err(format!("{}: renders differ", f.name));
        }
        let again = GsbBasis::parse(&first).unwrap().render();
        if again != first {
            return Err(format!("{}: parse/render round trip differs", f.name));
        }
    }
    Ok(format!("{} fixtures byte-identical", fx.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("axiom suite", criterion_1),
        ("identity fixtures", criterion_2),
        ("order fixtures", criterion_3),
        ("char != 2 collapse", criterion_4),
        ("leading-monomial law", criterion_5),
        ("composition-diamond at desk scale", criterion_6),
        ("oracle agreement", criterion_7),
        ("freiheitssatz example", criterion_8),
        ("termination", criterion_9),
        ("automorphism checker", criterion_10),
        ("determinism", criterion_11),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} [{t:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {detail} [{t:.2?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
