//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use noether_ops::closures::{
    bs_harness, monomial_closure_bruteforce_oracle, monomial_integral_closure, symb_harness,
    symbolic_power,
};
use noether_ops::diffops::{check_order_lemma, OperatorSet};
use noether_ops::groebner::{buchberger, IdealHandle, RingSpec};
use noether_ops::noetherian::{
    dual_space, noetherian_ops_primary, verify_noetherian_ops, CertificateStatus, PrimaryComponent,
};
use noether_ops::poly::{
    format_polynomial, parse_polynomial, Monomial, MonomialOrder, Polynomial, Rational,
};
use noether_ops::sample;
use noether_ops::uniformity::{
    check_reverse, find_min_c, separating_operator, MinimalConstant, SearchBounds,
    LINEARITY_SAMPLES,
};

type Check = Result<(), String>;

/// Name, check and optional time limit in seconds.
type Criterion = (&'static str, fn() -> Check, Option<u64>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn square_zero() -> (RingSpec, OperatorSet) {
    let r = RingSpec::parse("ring: Q[x,y] / (x^2)\nradical: (x)\nminimal-primes: [(x)]").unwrap();
    let ops = OperatorSet::parse("1; dx", r.vars(), r.radical().clone()).unwrap();
    (r, ops)
}

fn plane(gens: &[&str]) -> IdealHandle {
    IdealHandle::new(
        2,
        gens.iter()
            .map(|g| parse_polynomial(g, &["x", "y"]).unwrap())
            .collect(),
    )
}

const FAMILY: [&str; 3] = ["(x - y)", "(x; y)", "(y)"];

fn zero_dimensional_round_trip() -> Check {
    let suite: [&[&str]; 5] = [
        &["x", "y"],
        &["x^2", "y"],
        &["x^2", "x*y", "y^2"],
        &["x^2", "y - x"],
        &["x^3", "y"],
    ];
    let origin = vec![Rational::from_integer(0.into()); 2];
    let maximal = plane(&["x", "y"]);
    for gens in suite {
        let q = plane(gens);
        let ops = dual_space(&q, &origin).map_err(e)?;
        let colength = q.colength().map_err(e)?;
        ensure(ops.len() == colength, || {
            format!("{gens:?}: {} functionals, colength {colength}", ops.len())
        })?;
        let set = OperatorSet::new(ops, maximal.clone()).map_err(e)?;
        let cert = verify_noetherian_ops(&q, &set, q.max_generator_degree() + 2).map_err(e)?;
        ensure(cert.status == CertificateStatus::Exact, || {
            format!("{gens:?}: status {:?}", cert.status)
        })?;
    }
    Ok(())
}

fn positive_dimensional_operators() -> Check {
    for (q, p) in [("x^2", "x"), ("(x - y^2)^2", "x - y^2")] {
        let comp = PrimaryComponent::new(plane(&[q]), plane(&[p]), vec![1]).map_err(e)?;
        let ops = noetherian_ops_primary(&comp).map_err(e)?;
        ensure(ops.format(&["x", "y"]) == "1; dx", || {
            format!("({q}): got {}", ops.format(&["x", "y"]))
        })?;
        let cert = verify_noetherian_ops(comp.primary(), &ops, 8).map_err(e)?;
        ensure(cert.status == CertificateStatus::Exact, || {
            format!("({q}): status {:?}", cert.status)
        })?;
    }
    Ok(())
}

fn artin_rees_constants() -> Check {
    let (r, ops) = square_zero();
    let bounds = SearchBounds {
        n_max: 3,
        c_max: 3,
        degree: 12,
    };
    for (text, expected) in FAMILY.iter().zip([1, 0, 0]) {
        let j = r.parse_ideal(text).map_err(e)?;
        let rep = find_min_c(&j, &ops, &r, bounds).map_err(e)?;
        ensure(rep.rows.len() == 3, || {
            format!("{text}: {} rows", rep.rows.len())
        })?;
        for row in &rep.rows {
            ensure(row.c_min == MinimalConstant::Found(expected), || {
                format!("{text} n={}: c_min {}", row.n, row.c_min)
            })?;
            let Some(w) = &row.witness else { continue };
            // independent recheck: w is in I^(n+c) : ops but not in J^n
            let c = row.witness_c.ok_or("witness without shift")?;
            let colon = r
                .image_in_reduced(&j)
                .power(row.n + c)
                .sum(r.radical())
                .map_err(e)?;
            for op in ops.ops() {
                let v = op.apply(w).map_err(e)?;
                ensure(colon.contains(&v), || {
                    format!("{text} n={}: witness not in the colon", row.n)
                })?;
            }
            ensure(!r.lift(&j.power(row.n)).contains(w), || {
                format!("{text} n={}: witness lies in J^n", row.n)
            })?;
        }
        if expected == 1 {
            let first = &rep.rows[0];
            let y = r.parse_poly("y").map_err(e)?;
            ensure(
                first.witness.as_ref() == Some(&y) && first.witness_c == Some(0),
                || {
                    format!(
                        "{text}: first witness {:?} at c={:?}",
                        first.witness.as_ref().map(|w| r.format(w)),
                        first.witness_c
                    )
                },
            )?;
        }
    }
    Ok(())
}

fn reverse_containment() -> Check {
    let (r, ops) = square_zero();
    ensure(ops.max_order() == 1, || "operator order is not 1".into())?;
    for text in FAMILY {
        let j = r.parse_ideal(text).map_err(e)?;
        for n in 0..=5 {
            let rc = check_reverse(&j, &ops, &r, n, 12).map_err(e)?;
            ensure(rc.passed, || {
                format!(
                    "{text} n={n}: witness {:?}",
                    rc.witness.as_ref().map(|w| r.format(w))
                )
            })?;
        }
    }
    Ok(())
}

fn order_lemma() -> Check {
    let (sq, ops) = square_zero();
    let cube =
        RingSpec::parse("ring: Q[x,y] / (x^3)\nradical: (x)\nminimal-primes: [(x)]").unwrap();
    let dxx = OperatorSet::parse("dx^2", cube.vars(), cube.radical().clone()).map_err(e)?;
    let cases = [
        (&sq, &ops.ops()[0]),
        (&sq, &ops.ops()[1]),
        (&cube, &dxx.ops()[0]),
    ];
    for (k, (ring, op)) in cases.into_iter().enumerate() {
        for text in FAMILY {
            let j = ring.lift(&ring.parse_ideal(text).map_err(e)?);
            let image = ring.image_in_reduced(&j);
            let res = check_order_lemma(op, &j, &image, 1, 100, 1000 + k as u64).map_err(e)?;
            ensure(res.passed(), || {
                format!("operator {k} on {text}: failed sample")
            })?;
        }
    }
    Ok(())
}

fn separating_operators() -> Check {
    let cases = [
        (
            "ring: Q[x,y] / (x^2)\nradical: (x)\nminimal-primes: [(x)]",
            "(x)",
            1,
            "dx",
        ),
        (
            "ring: Q[x,y] / (x^3)\nradical: (x)\nminimal-primes: [(x)]",
            "(x^2)",
            2,
            "dx^2",
        ),
    ];
    for (text, b, order, expected) in cases {
        let r = RingSpec::parse(text).map_err(e)?;
        let one = [r.parse_poly("1").map_err(e)?];
        let zero = r.parse_ideal("(0)").map_err(e)?;
        let (b, p) = (
            r.parse_ideal(b).map_err(e)?,
            r.parse_ideal("(x)").map_err(e)?,
        );
        let res = separating_operator(&zero, &b, &r, &p, &one, 3, 1, 11)
            .map_err(e)?
            .ok_or("no operator found")?;
        let op = res.delta.format(r.vars());
        ensure(res.order == order && op == expected, || {
            format!("got {op} of order {}", res.order)
        })?;
        let d = res.d_value.constant_value();
        ensure(d == Some(Rational::from_integer(order.into())), || {
            format!("{expected}: d = {d:?}")
        })?;
        ensure(
            res.linearity.samples == LINEARITY_SAMPLES && LINEARITY_SAMPLES == 50,
            || "sample count".into(),
        )?;
        ensure(res.linearity.passed(), || {
            format!("{expected}: linearity failed")
        })?;
    }
    Ok(())
}

fn closure_harness() -> Check {
    let (r, ops) = square_zero();
    let j = r.parse_ideal("(y^2; x*y)").map_err(e)?;
    let rep = bs_harness(
        &j,
        &ops,
        &r,
        SearchBounds {
            n_max: 3,
            c_max: 3,
            degree: 12,
        },
    )
    .map_err(e)?;
    ensure(
        rep.rows
            .iter()
            .all(|row| row.c_min == MinimalConstant::Found(0)),
        || "c_min is not 0".into(),
    )?;

    let v = ["y", "z"];
    let i = IdealHandle::new(
        2,
        ["y^3", "z^3"]
            .iter()
            .map(|g| parse_polynomial(g, &v).unwrap())
            .collect(),
    );
    let closure = monomial_integral_closure(&i, 1).map_err(e)?;
    let mut gens: Vec<String> = closure
        .generators()
        .iter()
        .map(|g| format_polynomial(g, &v))
        .collect();
    gens.sort();
    ensure(gens == ["y*z^2", "y^2*z", "y^3", "z^3"], || {
        format!("closure generators {gens:?}")
    })?;
    for g in closure.generators() {
        let m: &Monomial = g
            .leading_monomial(&MonomialOrder::Grevlex)
            .ok_or("zero generator")?;
        let ok = monomial_closure_bruteforce_oracle(&i, m, 6).map_err(e)?;
        ensure(ok, || {
            format!("oracle rejects {}", format_polynomial(g, &v))
        })?;
    }
    Ok(())
}

fn symbolic_harness() -> Check {
    let (r, ops) = square_zero();
    let j = r.parse_ideal("(x - y)").map_err(e)?;
    let bounds = SearchBounds {
        n_max: 3,
        c_max: 3,
        degree: 12,
    };
    let rep = symb_harness(&j, &ops, &r, 1, &[], bounds).map_err(e)?;
    ensure(
        rep.rows
            .iter()
            .all(|row| row.c_min == MinimalConstant::Found(1)),
        || "c_min is not 1".into(),
    )?;

    let v = ["a", "b", "c"];
    let p = IdealHandle::new(
        3,
        ["b^2 - a*c", "a^3 - b*c", "a^2*b - c^2"]
            .iter()
            .map(|g| parse_polynomial(g, &v).unwrap())
            .collect(),
    );
    let sym = symbolic_power(&p, 2, &parse_polynomial("a", &v).unwrap()).map_err(e)?;
    ensure(!sym.equals(&p.power(2)), || {
        "symbolic square equals the ordinary square".into()
    })
}

fn groebner_kernel() -> Check {
    let mut rng = sample::rng(2024);
    let mut checks = 0;
    while checks < 500 {
        let nvars = 1 + checks % 3;
        let gens: Vec<Polynomial> = (0..2)
            .map(|_| sample::random_polynomial(&mut rng, nvars, 2, 3))
            .collect();
        let i = IdealHandle::new(nvars, gens.clone());
        let f = sample::random_polynomial(&mut rng, nvars, 6, 6);
        let g = sample::random_polynomial(&mut rng, nvars, 6, 6);
        let h = sample::random_combination(&mut rng, &gens, nvars, 4);
        ensure(i.contains(&h), || {
            format!("check {checks}: combination of generators not in the ideal")
        })?;
        let (nf, ng) = (i.normal_form(&f), i.normal_form(&g));
        ensure(i.normal_form(&(&f + &g)) == &nf + &ng, || {
            format!("check {}: normal form not additive", checks + 1)
        })?;
        ensure(i.normal_form(&nf) == nf, || {
            format!("check {}: normal form not idempotent", checks + 2)
        })?;
        ensure(i.contains(&(&f - &nf)), || {
            format!("check {}: f - NF(f) not in the ideal", checks + 3)
        })?;
        let first = buchberger(&gens, &MonomialOrder::Grevlex);
        let second = buchberger(&gens, &MonomialOrder::Grevlex);
        ensure(format!("{first:?}") == format!("{second:?}"), || {
            format!("check {}: basis changed", checks + 4)
        })?;
        checks += 5;
    }
    Ok(())
}

fn experiment_determinism() -> Check {
    let config = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/family.json");
    let run = |jobs: &str, format: &str| -> Result<Vec<u8>, String> {
        let out = Command::new(env!("CARGO_BIN_EXE_noether"))
            .args(["--jobs", jobs, "--format", format, "experiment", "--config"])
            .arg(&config)
            .output()
            .map_err(e)?;
        ensure(out.status.success(), || {
            format!("exit status {}", out.status)
        })?;
        Ok(out.stdout)
    };
    for format in ["csv", "json"] {
        let a = run("1", format)?;
        ensure(a == run("1", format)?, || {
            format!("{format}: two runs differ")
        })?;
        ensure(a == run("4", format)?, || {
            format!("{format}: --jobs 1 and --jobs 4 differ")
        })?;
        let golden =
            std::fs::read(config.with_file_name(format!("family.golden.{format}"))).map_err(e)?;
        ensure(a == golden, || {
            format!("{format}: differs from the golden file")
        })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "zero-dimensional round trip",
            zero_dimensional_round_trip,
            Some(5),
        ),
        (
            "positive-dimensional operators",
            positive_dimensional_operators,
            Some(5),
        ),
        ("Artin-Rees constants", artin_rees_constants, Some(30)),
        ("reverse containment", reverse_containment, None),
        ("order lemma", order_lemma, None),
        ("separating operators", separating_operators, Some(10)),
        ("closure harness", closure_harness, Some(30)),
        ("symbolic harness", symbolic_harness, Some(60)),
        ("Groebner kernel", groebner_kernel, None),
        ("determinism", experiment_determinism, None),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if let Some(secs) = limit {
            if result.is_ok() && elapsed > Duration::from_secs(secs) {
                result = Err(format!("took {elapsed:.2?}, limit {secs} s"));
            }
        }
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({elapsed:.2?})", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({elapsed:.2?}): {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
