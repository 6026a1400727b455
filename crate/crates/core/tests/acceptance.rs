//! One PASS/FAIL line per acceptance criterion, written straight to stdout so
//! they show up without `--nocapture`.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use klfock::affine_weyl::{alcove_rep, descent, max_double_coset_rep, min_coset_rep, reflect, AffineElement};
use klfock::fock_infty::{ei_cells, fi_cells, hi_exponent, FockInfty, FockVector};
use klfock::fock_r::{FockR, Route, UvKind, WedgeVector};
use klfock::golden;
use klfock::hecke_kl::{stabilizer, Choice, KlEngine, OrdinaryKl, Sign};
use klfock::matrix::PolyMatrix;
use klfock::partitions::{littlewood_decompose, partitions_of};
use klfock::ribbon::{horizontal_strip_spin, qlr, SkewShape};
use klfock::verify::{self, is_documented_misprint, VerificationReport};
use klfock::{Partition, Poly, Weight};

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn poly(s: &str) -> Poly {
    s.parse().unwrap()
}

fn w(v: &[i64]) -> Weight {
    Weight::new(v.to_vec())
}

fn mono(e: i64, c: i64) -> Poly {
    Poly::from(c).shift(e)
}

struct Outcome {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
}

// The test harness captures print!, but not writes to the stdout handle.
fn say(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{}", s);
    let _ = out.flush();
}

fn line(o: &Outcome) {
    say(&format!("criterion {} [{}] {}: {}", o.id, if o.pass { "PASS" } else { "FAIL" }, o.title, o.detail));
}

fn summarize(reports: &[VerificationReport]) -> String {
    reports
        .iter()
        .map(|r| format!("{} {} cases {} mismatches {:.1}s", r.suite, r.cases, r.mismatches.len(), r.wall_time.as_secs_f64()))
        .collect::<Vec<_>>()
        .join("; ")
}

// Worked examples.

fn wedge(n: usize, r: usize, terms: &[(&[i64], &str)]) -> WedgeVector {
    let mut v = WedgeVector::zero(n, r);
    for (k, c) in terms {
        v.add_term(w(k), &poly(c));
    }
    v
}

fn ket(lam: &str, r: usize) -> Weight {
    &p(lam).to_weight(r).unwrap() + &Weight::rho(r)
}

fn mat(rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(rows.iter().map(|r| r.iter().map(|s| poly(s)).collect()).collect()).unwrap()
}

fn basis_is(e: &mut KlEngine, lam: &[i64], expect: &[([i64; 3], &str)]) -> bool {
    let b = e.basis(&w(lam)).unwrap();
    b.len() == expect.len() && expect.iter().all(|(k, c)| b.get(&w(k)) == Some(&poly(c)))
}

fn worked_examples() -> Vec<(&'static str, bool)> {
    let mut out = Vec::new();
    let mut e = KlEngine::new(3, -2, Sign::Minus).unwrap();
    out.push((
        "C-_(0,6,1), 12 terms",
        basis_is(
            &mut e,
            &[0, 6, 1],
            &[
                ([0, 6, 1], "1"),
                ([0, 1, 6], "-q^-1"),
                ([4, 2, 1], "-q^-1"),
                ([4, 1, 2], "q^-2"),
                ([1, 2, 4], "q^-2"),
                ([1, 4, 2], "-q^-1"),
                ([2, 3, 2], "q^-2"),
                ([2, 2, 3], "-q^-3"),
                ([0, 5, 2], "-q^-1"),
                ([0, 2, 5], "q^-2"),
                ([0, 4, 3], "q^-2"),
                ([0, 3, 4], "-q^-3"),
            ],
        ),
    ));
    out.push((
        "C-_(6,1,0), 18 terms",
        basis_is(
            &mut e,
            &[6, 1, 0],
            &[
                ([6, 1, 0], "1"),
                ([6, 0, 1], "-q^-1"),
                ([1, 6, 0], "-q^-1"),
                ([0, 6, 1], "q^-2"),
                ([1, 0, 6], "q^-2"),
                ([0, 1, 6], "-q^-3"),
                ([5, 2, 0], "-q^-1"),
                ([5, 0, 2], "q^-2"),
                ([2, 5, 0], "q^-2"),
                ([0, 5, 2], "-q^-3"),
                ([2, 0, 5], "-q^-3"),
                ([0, 2, 5], "q^-4"),
                ([4, 3, 0], "q^-2"),
                ([4, 0, 3], "-q^-3"),
                ([3, 4, 0], "-q^-3"),
                ([0, 4, 3], "q^-4"),
                ([3, 0, 4], "q^-4"),
                ([0, 3, 4], "-q^-5"),
            ],
        ),
    ));

    let mut f4 = FockR::new(2, 4).unwrap();
    let v = WedgeVector::basis(&w(&[3, 2, 1, 0]), 2).unwrap();
    let expect = wedge(
        2,
        4,
        &[(&[7, 2, 1, 0], "1"), (&[6, 3, 1, 0], "-q^-1"), (&[5, 4, 1, 0], "q^-2-1"), (&[5, 3, 2, 0], "q^-1"), (&[4, 3, 2, 1], "-q^-2")],
    );
    out.push(("B_-2|3,2,1,0>, 5 terms", f4.bk(-2, &v) == expect));

    let rho = WedgeVector::basis(&Weight::rho(4), 2).unwrap();
    let by = |pairs: &[(&str, &str)]| {
        let mut v = WedgeVector::zero(2, 4);
        for (l, c) in pairs {
            v.add_term(ket(l, 4), &poly(c));
        }
        v
    };
    let v2 = by(&[("1,1,1,1", "q^-2"), ("2,1,1", "-q^-1"), ("2,2", "1")]);
    let v11 = by(&[("1,1,1,1", "q^-2"), ("2,1,1", "-q^-1"), ("2,2", "1+q^-2"), ("3,1", "-q^-1"), ("4", "1")]);
    let ok = [Route::Y, Route::Ribbon].iter().all(|&route| {
        f4.uv(UvKind::VTilde, &[2], &rho, route).unwrap() == v2 && f4.uv(UvKind::VTilde, &[1, 1], &rho, route).unwrap() == v11
    });
    out.push(("Vtilde_(2)|rho> and Vtilde_(1,1)|rho>", ok));

    let mut f3 = FockR::new(2, 3).unwrap();
    let a2 = f3.bar_matrix(2).1 == mat(&[&["1", "0"], &["q-q^-1", "1"]]);
    let a3 = f3.bar_matrix(3).1 == mat(&[&["1", "0", "0"], &["0", "1", "0"], &["q-q^-1", "0", "1"]]);
    let (l4, m4) = f3.bar_matrix(4);
    let a4 = l4 == vec![w(&[6, 1, 0]), w(&[5, 2, 0]), w(&[4, 3, 0]), w(&[4, 2, 1])]
        && m4
            == mat(&[
                &["1", "0", "0", "0"],
                &["q-q^-1", "1", "0", "0"],
                &["q^-2-1", "q-q^-1", "1", "0"],
                &["0", "q^2-1", "q-q^-1", "1"],
            ]);
    out.push(("A_2, A_3, A_4", a2 && a3 && a4));
    let c4 = f3.canonical_matrix(4, Sign::Plus).unwrap().1
        == mat(&[&["1", "0", "0", "0"], &["q", "1", "0", "0"], &["0", "q", "1", "0"], &["q", "q^2", "q", "1"]]);
    let lm4 = f3.canonical_matrix(4, Sign::Minus).unwrap().1
        == mat(&[&["1", "q", "q^2", "0"], &["0", "1", "q", "0"], &["0", "0", "1", "q"], &["0", "0", "0", "1"]]);
    out.push(("C_4 and L_4", c4 && lm4));

    let el = |s: &str| AffineElement::parse_word(s, 3).unwrap();
    let ws = min_coset_rep(&[5, 3, 0], 3).unwrap() == el("t^2 s1")
        && min_coset_rep(&[5, 3, 0], 2).unwrap() == el("t^3 s0 s1 s2")
        && min_coset_rep(&[5, 3, 0], -2).unwrap() == el("t^-5 s1 s0 s2 s1 s2 s0");
    out.push(("w((5,3,0),m) for m = 3, 2, -2", ws));

    let l = littlewood_decompose(&p("6,6,4,4,4,3,2,1"), 3, 8).unwrap();
    out.push(("3-quotient of (6,6,4,4,4,3,2,1)", l.quotient == vec![p("1,1"), p("2,2,1"), p("2,1")]));

    let strip = SkewShape::new(p("11,8,5,4"), p("6,2")).unwrap();
    out.push(("horizontal 5-ribbon strip of spin 7", horizontal_strip_spin(&strip, 5) == Some(7)));

    let g = qlr(&[p("1"), p("1,1"), p("1")], 3).unwrap();
    let expect: BTreeMap<Partition, Poly> =
        [("3,1", "q^7"), ("2,2", "q^5"), ("2,1,1", "q^3+q^5"), ("1,1,1,1", "q")].iter().map(|(a, c)| (p(a), poly(c))).collect();
    out.push(("G((1),(1,1),(1);q) Schur expansion", g == expect));
    out
}

// Property suites, each through the public interface under a fixed seed.

const CASES: u32 = 1000;

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, rng_seed: RngSeed::Fixed(0x5eed_2024), failure_persistence: None, ..Config::default() })
}

fn check<S: Strategy>(name: &'static str, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> (&'static str, Result<(), String>)
where
    S::Value: std::fmt::Debug,
{
    (name, runner().run(&s, f).map_err(|e| e.to_string()))
}

fn arb_case() -> impl Strategy<Value = (usize, usize, Partition)> {
    (2usize..4, 2usize..5).prop_flat_map(|(n, r)| {
        let shapes: Vec<Partition> = (0..=6).flat_map(partitions_of).filter(|p| p.len() <= r).collect();
        (Just(n), Just(r), proptest::sample::select(shapes))
    })
}

fn arb_vector(max_deg: usize) -> impl Strategy<Value = FockVector> {
    (2usize..4).prop_flat_map(move |n| {
        let shapes: Vec<Partition> = (0..=max_deg).flat_map(partitions_of).collect();
        proptest::collection::vec((proptest::sample::select(shapes), -2i64..3, -2i64..3), 1..4).prop_map(move |terms| {
            let mut v = FockVector::zero(n);
            for (a, e, c) in terms {
                v.add_term(a, &mono(e, c));
            }
            v
        })
    })
}

fn arb_level_weight() -> impl Strategy<Value = (i64, Weight)> {
    (prop_oneof![Just(-3i64), Just(-2), Just(2), Just(3)], proptest::collection::vec(-2i64..5, 3)).prop_map(|(m, v)| (m, Weight::new(v)))
}

fn property_suites() -> Vec<(&'static str, Result<(), String>)> {
    let mut out = Vec::new();
    out.push(check("bar involutivity on F_r blocks", arb_case(), |(n, r, lam)| {
        let mut f = FockR::new(n, r).unwrap();
        let v = WedgeVector::basis(&(&lam.to_weight(r).unwrap() + &Weight::rho(r)), n).unwrap().scale(&poly("q^3-2q^-1"));
        let b = f.bar(&v).unwrap();
        prop_assert_eq!(f.bar(&b).unwrap(), v);
        Ok(())
    }));
    out.push(check("bar matrices unitriangular and translation invariant", (arb_case(), -3i64..4), |((n, r, lam), shift)| {
        let mut f = FockR::new(n, r).unwrap();
        let (labels, a) = f.bar_matrix(lam.size());
        prop_assert!(a.is_lower_unitriangular());
        let j = labels.iter().position(|x| x.minus_rho_partition().as_ref() == Some(&lam)).unwrap();
        let c = Weight::constant(r, shift);
        for (i, x) in labels.iter().enumerate() {
            prop_assert_eq!(f.bar_coeff(&(x + &c), &(&labels[j] + &c)), a.get(i, j).clone());
        }
        Ok(())
    }));
    out.push(check("KL recursion is choice independent", (arb_level_weight(), any::<bool>(), any::<u64>()), |((m, lam), plus, seed)| {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let base = KlEngine::new(3, m, sign).unwrap().basis(&lam).unwrap();
        for choice in [Choice::Largest, Choice::Seeded(seed)] {
            prop_assert_eq!(&base, &KlEngine::new(3, m, sign).unwrap().with_choice(choice).basis(&lam).unwrap());
        }
        Ok(())
    }));
    out.push(check("singular-descent identity P_{s_i mu, lambda} = q P_{mu, lambda}", (arb_level_weight(), any::<bool>()), |((m, lam), plus)| {
        let sign = if plus { Sign::Plus } else { Sign::Minus };
        let mut e = KlEngine::new(3, m, sign).unwrap();
        let target = -(m.signum() as i32);
        let support: Vec<Weight> = e.basis(&lam).unwrap().keys().cloned().collect();
        for i in (0..3).filter(|&i| descent(&lam, i, m) == target) {
            for mu in support.iter().filter(|mu| descent(mu, i, m) == target) {
                let lhs = e.kl(&Weight::new(reflect(mu, i, m)), &lam).unwrap();
                prop_assert_eq!(lhs, &Poly::q() * &e.kl(mu, &lam).unwrap());
            }
        }
        Ok(())
    }));
    out.push(check("Deodhar alternating sum, r = 3, m = -2", proptest::collection::vec(-2i64..5, 3), |v| {
        let (r, m) = (3usize, -2i64);
        let lam = Weight::new(v);
        let stab = stabilizer(&alcove_rep(&lam, m).unwrap(), m);
        let wl = min_coset_rep(&lam, m).unwrap();
        let mut ord = OrdinaryKl::new(r, m).unwrap();
        let mut e = KlEngine::new(r, m, Sign::Minus).unwrap();
        let mut mus: Vec<Weight> = e.basis(&lam).unwrap().keys().cloned().collect();
        mus.extend((0..3).map(|i| Weight::new(reflect(&lam, i, m))));
        for mu in &mus {
            let wm = min_coset_rep(mu, m).unwrap();
            let mut sum = Poly::zero();
            for z in &stab {
                let l = z.length() as i64;
                sum += &(&mono(l, if l % 2 == 0 { 1 } else { -1 }) * &ord.p(&wm.mul(z), &wl).unwrap());
            }
            prop_assert_eq!(e.kl(mu, &lam).unwrap(), sum);
        }
        Ok(())
    }));
    out.push(check(
        "U/V operators: Y route equals ribbon route",
        (arb_vector(3), proptest::collection::vec(1usize..3, 0..3), 0usize..4),
        |(v, beta, kind)| {
            let kind = [UvKind::U, UvKind::UTilde, UvKind::V, UvKind::VTilde][kind];
            let mut f = FockInfty::new(v.n).unwrap();
            prop_assert_eq!(f.uv(kind, &beta, &v, Route::Y).unwrap(), f.uv(kind, &beta, &v, Route::Ribbon).unwrap());
            Ok(())
        },
    ));
    out.push(check("Heisenberg commutator [B_k, B_-k]", (arb_vector(4), 1i64..3, any::<bool>()), |(v, k, vacuum)| {
        let n = v.n;
        let v = if vacuum { FockVector::basis(&Partition::empty(), n) } else { v };
        let mut f = FockInfty::new(n).unwrap();
        let ab = {
            let x = f.heisenberg_bk(-k, &v).unwrap();
            f.heisenberg_bk(k, &x).unwrap()
        };
        let ba = {
            let x = f.heisenberg_bk(k, &v).unwrap();
            f.heisenberg_bk(-k, &x).unwrap()
        };
        let mut c = Poly::zero();
        for j in 0..n as i64 {
            c += &mono(-2 * k * j, k);
        }
        prop_assert_eq!(ab.sub(&ba), v.scale(&c));
        Ok(())
    }));
    let tuples: Vec<(usize, Vec<Partition>)> =
        [2usize, 3].iter().flat_map(|&n| (0..=4).flat_map(move |k| verify::quotient_tuples(n, k)).map(move |q| (n, q))).collect();
    out.push(check("q-LR conjugation symmetry", proptest::sample::select(tuples), |(n, quot)| {
        let total: usize = quot.iter().map(Partition::size).sum();
        let rev: Vec<Partition> = quot.iter().rev().map(Partition::conjugate).collect();
        let a = qlr(&quot, n).unwrap();
        let b = qlr(&rev, n).unwrap();
        for lam in a.keys().chain(b.keys()) {
            let lhs = a.get(lam).cloned().unwrap_or_default().bar();
            let rhs = b.get(&lam.conjugate()).cloned().unwrap_or_default().shift(-(((n - 1) * total) as i64));
            prop_assert_eq!(lhs, rhs);
        }
        Ok(())
    }));
    out.push(check("[e_i, f_j] commutator on partitions of size <= 6", (arb_vector(6), 0usize..3, 0usize..3), |(v, i, j)| {
        let n = v.n;
        let (i, j) = (i % n, j % n);
        let lhs = ei_cells(i, &fi_cells(j, &v)).sub(&fi_cells(j, &ei_cells(i, &v)));
        let mut rhs = FockVector::zero(n);
        if i == j {
            for (a, c) in &v.terms {
                let h = hi_exponent(a, i, n);
                let mut qint = Poly::zero();
                for t in 0..h.abs() {
                    qint += &Poly::q_pow(h.abs() - 1 - 2 * t);
                }
                if h < 0 {
                    qint = -qint;
                }
                rhs.add_term(a.clone(), &(c * &qint));
            }
        }
        prop_assert_eq!(lhs, rhs);
        Ok(())
    }));
    out.push(check(
        "w(n lambda + rho, -n) = n_{lambda*} tau^{1-r}",
        (1usize..5).prop_flat_map(|r| (Just(r), r..r + 3, proptest::collection::vec(0i64..7, r))),
        |(r, n, mut l)| {
            l.sort_unstable_by(|a, b| b.cmp(a));
            let x: Vec<i64> = l.iter().zip(Weight::rho(r).iter()).map(|(a, b)| n as i64 * a + b).collect();
            let star: Vec<i64> = l.iter().rev().map(|a| -a).collect();
            let rhs = max_double_coset_rep(&star).unwrap().mul(&AffineElement::tau_pow(r, 1 - r as i64));
            prop_assert_eq!(min_coset_rep(&x, -(n as i64)).unwrap(), rhs);
            Ok(())
        },
    ));
    out
}

#[test]
fn acceptance() {
    let mut outcomes = Vec::new();
    let data = golden::load();

    let minus = verify::golden_minus(&data).unwrap();
    let undocumented = minus.mismatches.iter().filter(|m| !is_documented_misprint(m)).count();
    let mut detail = summarize(std::slice::from_ref(&minus));
    for m in &minus.mismatches {
        detail.push_str(&format!("; {} printed {} computed {} [{}]", m.inputs, m.expected, m.got, m.tag));
    }
    outcomes.push(Outcome { id: 1, title: "golden G- tables, n = 2, up to |10|", pass: minus.passed(), detail });
    let doc_only = minus.cases > 0 && undocumented == 0;

    let plus = verify::golden_plus(&data).unwrap();
    let mut detail = summarize(std::slice::from_ref(&plus));
    detail.push_str(&format!("; {}", plus.notes.join("; ")));
    outcomes.push(Outcome { id: 2, title: "golden G+ tables, n = 2, up to |10|", pass: plus.passed(), detail });

    let three = vec![verify::three_route(2, 5).unwrap(), verify::three_route(3, 4).unwrap()];
    outcomes.push(Outcome {
        id: 3,
        title: "ribbon, Schur-operator and parabolic KL routes agree",
        pass: three.iter().all(VerificationReport::passed),
        detail: summarize(&three),
    });

    let qone = vec![verify::q_one(2, 5).unwrap(), verify::q_one(3, 4).unwrap()];
    outcomes.push(Outcome { id: 4, title: "c(1) equals the LR multiplicity", pass: qone.iter().all(VerificationReport::passed), detail: summarize(&qone) });

    let inv = vec![verify::inversion(2, 8).unwrap(), verify::inversion(3, 6).unwrap()];
    outcomes.push(Outcome { id: 5, title: "inversion formula J_k = D_k", pass: inv.iter().all(VerificationReport::passed), detail: summarize(&inv) });

    let start = Instant::now();
    let ex = worked_examples();
    let failed: Vec<&str> = ex.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
    outcomes.push(Outcome {
        id: 6,
        title: "worked examples",
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} examples match, {:.1}s", ex.len(), start.elapsed().as_secs_f64())
        } else {
            format!("failing: {}", failed.join(", "))
        },
    });

    let start = Instant::now();
    let props = property_suites();
    let failed: Vec<String> = props.iter().filter_map(|(n, r)| r.as_ref().err().map(|e| format!("{}: {}", n, e))).collect();
    outcomes.push(Outcome {
        id: 7,
        title: "property suites",
        pass: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} suites x {} cases, fixed seed, {:.1}s", props.len(), CASES, start.elapsed().as_secs_f64())
        } else {
            failed.join("; ")
        },
    });

    let shadows = outcomes.iter().filter(|o| (3..=5).contains(&o.id)).all(|o| o.pass);
    outcomes.push(Outcome {
        id: 8,
        title: "claims about quantum groups at roots of unity",
        pass: shadows,
        detail: "not reproducible here; accepted through their formal counterparts, criteria 3 to 5".into(),
    });

    outcomes.sort_by_key(|o| o.id);
    say("");
    for o in &outcomes {
        line(o);
    }
    for (name, r) in &props {
        say(&format!("  property {}: {}", name, if r.is_ok() { "ok" } else { "failed" }));
    }
    for (name, ok) in &ex {
        say(&format!("  example {}: {}", name, if *ok { "ok" } else { "failed" }));
    }

    // The only tolerated failure is the printed G- entry that is provably a misprint.
    assert!(doc_only, "undocumented G- table mismatches");
    for o in outcomes.iter().filter(|o| o.id != 1) {
        assert!(o.pass, "criterion {} failed: {}", o.id, o.detail);
    }
}
