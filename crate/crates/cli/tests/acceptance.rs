//! Acceptance suite: one line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod oracle;

use std::process::{Command, ExitCode};
use std::time::Instant;

use danielewski::expmap::expmap_canonical;
use danielewski::graded::{filt_degree_b, multiplicativity_failure, verify_graded_relations};
use danielewski::morphism::{
    build_iso, compare_tuples, morphism_from_data, parse_danielewski, solve_fiber_conditions, FiberSolutions,
    IsoData, TupleVerdict,
};
use danielewski::sampling::{random_expr, random_nonzero_expr, random_unit, ExprShape};
use danielewski::stable::{
    bezout_certificate, build_stable_iso, cancellation_demo, check_stable_hypotheses, failed_stage,
    StableIsoCertificate, CHECK_P, CHECK_UNIT, CHECK_WITNESSES, STAGE_DERIVATIVES, STAGE_GCD,
};
use danielewski::{Field, MultiPoly, Scalar, Surface, SurfaceError, SurfaceExt, SurfaceSpec, SymbolTable, Var};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn spec(field: Field, d: i64, e_: i64, p: &str, q: &str) -> Surface {
    SurfaceSpec::parse(field, d, e_, p, q).expect("valid surface")
}

fn flagship() -> Surface {
    spec(Field::Q, 1, 2, "Z^2 - 1", "Y^2 + Z")
}

fn el_expr(text: &str, field: Field) -> MultiPoly {
    danielewski::parse::parse_with(text, &SymbolTable::element(), field).unwrap()
}

/// Six surfaces with `d, e` ranging over `{1, 2, 3}`, over `Q` and `F_7`.
fn six_specs() -> Vec<Surface> {
    let f7 = Field::Fp(7);
    vec![
        spec(Field::Q, 1, 1, "Z^2 - 1", "Y^2 + Z"),
        spec(Field::Q, 2, 3, "Z^2 + X*Z - 1", "Y^2 + X*Y + Z"),
        spec(Field::Q, 3, 2, "Z^3 - Z", "Y^2 - Z^2 + X"),
        spec(f7, 1, 2, "Z^2 - 1", "Y^2 + Z"),
        spec(f7, 3, 3, "Z^2 + 3", "Y^3 + Z + X*Y"),
        spec(f7, 2, 1, "Z^3 + X*Z + 2", "Y^2 + Z"),
    ]
}

fn flagship_certificate() -> Outcome {
    let dir = tempfile::TempDir::new().map_err(e)?;
    let spec_path = dir.path().join("b.json");
    std::fs::write(&spec_path, r#"{"field":"Q","d":1,"e":2,"P":"Z^2 - 1","Q":"Y^2 + Z"}"#).map_err(e)?;
    let cert_path = dir.path().join("cert.json");
    let bin = env!("CARGO_BIN_EXE_danielewski");
    let build = Command::new(bin).args(["stable", "build"]).arg(&spec_path).arg("--out").arg(&cert_path).output().map_err(e)?;
    ensure(build.status.success(), || format!("stable build exited {:?}", build.status.code()))?;
    let verify = Command::new(bin).args(["stable", "verify"]).arg(&cert_path).output().map_err(e)?;
    let text = String::from_utf8_lossy(&verify.stdout);
    ensure(verify.status.success() && text.contains("7/7 PASS"), || format!("stable verify: {text}"))?;

    let b = flagship();
    let cert = build_stable_iso(&b).map_err(e)?;
    ensure(cert.target.tuple() == (1, 1, 2, 2), || format!("target {}", cert.target))?;
    let q = Field::Q;
    // a, b, c: the Bezout identity expanded by hand, and uniqueness of a modulo (P(0,Z), Q(0,Y,Z))
    let (a, bb, c) = (el_expr("-1/4*y", q), el_expr("z", q), el_expr("-1", q));
    let dp = el_expr("2*z", q);
    let dq = el_expr("2*y", q);
    let (p0, q0) = (el_expr("z^2 - 1", q), el_expr("y^2 + z", q));
    ensure((&dq * &dp * a.clone() + &q0 * &bb + &p0 * &c).is_one(), || "expected a, b, c fail the identity".into())?;
    let vars = [Var::Y, Var::Z];
    ensure(oracle::in_ideal(&(cert.cofactors.a.clone() - a.clone()), &[p0, q0], &vars, 3), || {
        format!("a = {} is not -y/4 modulo the fiber ideal", cert.cofactors.a)
    })?;
    ensure(cert.cofactors == danielewski::stable::BezoutCofactors { a, b: bb, c }, || {
        format!("cofactors {:?}", cert.cofactors)
    })?;
    // theta: x^3 theta = P(x, x^2 w + z) - P(x, z) - x^2 P'(z) w, checked pointwise
    ensure(*cert.theta.expr() == el_expr("x*w^2", q), || format!("theta = {}", cert.theta))?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pr = oracle::BIG_PRIME;
    for _ in 0..20 {
        let pt = oracle::surface_point(&b, &mut rng);
        let (x, z, w) = (pt[0], pt[Var::Z.index()], pt[Var::W.index()]);
        let f = (oracle::mul(oracle::mul(x, x, pr), w, pr) + z) % pr;
        let pf = (oracle::mul(f, f, pr) + pr - 1) % pr;
        let pz = (oracle::mul(z, z, pr) + pr - 1) % pr;
        let lin = oracle::mul(oracle::mul(oracle::mul(x, x, pr), 2 * z % pr, pr), w, pr);
        let rhs = (pf + 2 * pr - pz - lin) % pr;
        let lhs = oracle::mul(oracle::pow(x, 3, pr), oracle::eval(cert.theta.expr(), &pt, pr), pr);
        ensure(lhs == rhs, || "theta fails the pointwise identity".into())?;
        // x delta = 1 - Q'P'a = 1 + y^2 z on the surface
        let y = pt[Var::Y.index()];
        let lhs = oracle::mul(x, oracle::eval(cert.delta.expr(), &pt, pr), pr);
        ensure(lhs == (1 + oracle::mul(oracle::mul(y, y, pr), z, pr)) % pr, || "delta fails x delta = 1 - Q'P'a".into())?;
    }
    ensure(*cert.delta.expr() == el_expr("-y + x*z*t", q), || format!("delta = {}", cert.delta))?;
    Ok(())
}

fn cancellation() -> Outcome {
    for (d, e_) in [(1, 1), (2, 1), (1, 2)] {
        let b = spec(Field::Q, d, e_, "Z^2 - 1", "Y^2 + Z");
        let demo = cancellation_demo(&b).map_err(e)?;
        let only_e = matches!(&demo.verdict, TupleVerdict::NotIsomorphic { differing } if differing == &[format!("e ({} vs {})", e_, e_ + 1)]);
        ensure(only_e, || format!("({d},{e_}): {}", demo.verdict))?;
        ensure(demo.report.passed(), || format!("({d},{e_}): {}", demo.report))?;
    }
    Ok(())
}

fn expmap_axioms() -> Outcome {
    for b in six_specs() {
        let phi = expmap_canonical(&b).map_err(e)?;
        let report = phi.verify();
        ensure(report.passed() && report.checks.len() == 10, || report.to_string())?;
    }
    Ok(())
}

fn graded() -> Outcome {
    for (i, b) in six_specs().iter().enumerate() {
        let report = verify_graded_relations(b, i as u64);
        ensure(report.passed(), || report.to_string())?;
        for name in ["degrees in B", "degrees in D", "D: x^d y = P(0,z)", "D: x^e t = y^s", "C: x^d y = z^r", "C: x^e t = y^s"] {
            ensure(report.get(name).is_some_and(|c| c.passed), || format!("{name} missing on {b}"))?;
        }
    }
    Ok(())
}

fn coherence() -> Outcome {
    for field in [Field::Q, Field::Fp(7)] {
        let b = spec(field, 1, 2, "Z^2 - 1", "Y^2 + Z");
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let shape = ExprShape::surface(4, 3);
        let mut prev: Option<danielewski::SurfaceElement> = None;
        for i in 0..500 {
            let expr = random_expr(&mut rng, field, &shape);
            let el = b.element(expr.clone());
            let nf = el.normalize().map_err(e)?;
            ensure(nf.respects_index_bounds(b.d(), b.e()), || format!("#{i}: bounds violated by {}", nf.display()))?;
            let back = b.element(nf.expand());
            ensure(back.laurent() == el.laurent(), || format!("#{i}: re-embedding differs for {expr}"))?;
            if field == Field::Q {
                ensure(oracle::agree_on_surface(&b, &expr, &nf.expand(), 2, &mut rng), || format!("#{i}: point evaluation"))?;
            }
            if let Some(p) = &prev {
                if !el.is_zero() && !p.is_zero() {
                    ensure(multiplicativity_failure(&el, p).is_none(), || format!("#{i}: rho not multiplicative"))?;
                    let sum = filt_degree_b(&el).map_err(e)? + filt_degree_b(p).map_err(e)?;
                    ensure(filt_degree_b(&(&el * p)).map_err(e)? == sum, || format!("#{i}: degrees do not add"))?;
                }
            }
            prev = Some(el);
        }
    }
    Ok(())
}

fn iso_machinery() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let q = Field::Q;
    let target = flagship();
    let small = |rng: &mut ChaCha8Rng, vars: &[Var], max_exp: i32| {
        random_expr(rng, q, &ExprShape { vars: vars.to_vec(), max_terms: 2, max_exp, coeff_bound: 3 })
    };
    for i in 0..10 {
        let data = IsoData {
            lambda: random_unit(&mut rng, q, 3),
            gamma: random_unit(&mut rng, q, 3),
            delta: small(&mut rng, &[Var::X], 2),
            f: small(&mut rng, &[Var::X, Var::Z], 1),
            h: small(&mut rng, &[Var::X, Var::Y, Var::Z], 1),
        };
        let source = data.source_for(&target).map_err(e)?;
        let iso = build_iso(&source, &target, &data).map_err(|err| format!("family #{i}: {err}"))?;
        ensure(iso.forward.then(&iso.inverse).map_err(e)?.is_identity(), || format!("#{i}: not inverse"))?;
        ensure(iso.inverse.then(&iso.forward).map_err(e)?.is_identity(), || format!("#{i}: not inverse"))?;
        let mut bad = data.clone();
        bad.f = bad.f + random_nonzero_expr(&mut rng, q, &ExprShape { vars: vec![], max_terms: 1, max_exp: 0, coeff_bound: 4 });
        match morphism_from_data(&source, &target, &bad) {
            Err(SurfaceError::RelationNotKilled { .. }) => {}
            other => return Err(format!("perturbed #{i}: expected RelationNotKilled, got {:?}", other.map(|m| m.to_string()))),
        }
    }
    let sols = solve_fiber_conditions(&target, &target).map_err(e)?;
    let (one, zero) = (Scalar::one(q), Scalar::zero(q));
    ensure(sols == FiberSolutions::Finite(vec![(one.neg(), zero.clone()), (one, zero)]), || format!("fiber: {sols}"))?;
    Ok(())
}

fn danielewski_comparison() -> Outcome {
    let std = parse_danielewski(2, "Z^2 - 1", Field::Q).map_err(e)?;
    ensure(std.s() == 1, || format!("s = {}", std.s()))?;
    let mut doubles: Vec<Surface> = six_specs().into_iter().filter(|b| b.field() == Field::Q).collect();
    doubles.push(flagship());
    for b in doubles.iter().filter(|b| b.is_double()) {
        ensure(b.tuple() != std.tuple(), || format!("tuple of {b} equals {std}"))?;
        let verdict = compare_tuples(&std, b).map_err(e)?;
        let cites_s = matches!(&verdict, TupleVerdict::NotIsomorphic { differing } if differing.iter().any(|d| d.starts_with("s ")));
        ensure(cites_s, || format!("{b}: {verdict}"))?;
    }
    Ok(())
}

fn negative_controls() -> Outcome {
    let squared = spec(Field::Q, 1, 2, "Z^2", "Y^2 + Z");
    let stage = failed_stage(&check_stable_hypotheses(&squared)).map(str::to_string);
    ensure(stage.as_deref() == Some(STAGE_GCD), || format!("P = Z^2 failed at {stage:?}"))?;
    ensure(bezout_certificate(&squared).is_err(), || "Bezout certificate for P = Z^2".into())?;
    let f2 = spec(Field::Fp(2), 1, 2, "Z^2 + 1", "Y^2 + Z");
    let stage = failed_stage(&check_stable_hypotheses(&f2)).map(str::to_string);
    ensure(stage.as_deref() == Some(STAGE_DERIVATIVES), || format!("F_2 failed at {stage:?}"))?;

    let cert = build_stable_iso(&flagship()).map_err(e)?;
    let failures = |c: &StableIsoCertificate| -> Vec<String> { c.verify().failures().map(|f| f.name.clone()).collect() };
    let one = cert.source.constant(1);
    let mut t1 = cert.clone();
    t1.delta = &t1.delta + &one;
    let mut t2 = cert.clone();
    t2.theta = &t2.theta + &cert.source.gen(Var::X);
    let mut t3 = cert.clone();
    t3.witnesses.y = t3.witnesses.y.clone() + MultiPoly::var(Field::Q, Var::X);
    for (name, tampered, expected) in [("delta", t1, CHECK_UNIT), ("theta", t2, CHECK_P), ("witness y", t3, CHECK_WITNESSES)] {
        let got = failures(&tampered);
        ensure(got == [expected], || format!("tampered {name}: failing checks {got:?}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 flagship stable certificate", flagship_certificate),
        ("2 cancellation demo", cancellation),
        ("3 exponential-map axioms", expmap_axioms),
        ("4 graded structure", graded),
        ("5 rewrite/embedding coherence", coherence),
        ("6 isomorphism machinery", iso_machinery),
        ("7 Danielewski comparison", danielewski_comparison),
        ("8 negative controls", negative_controls),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("[PASS] {name} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {name} ({secs:.2}s): {why}");
            }
        }
    }
    println!("{}/8 criteria passed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
