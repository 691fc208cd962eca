//! Stable isomorphisms `B_{d,e}[w] = B_{d,e-1}[v]` with explicit certificates.
//!
//! With `phi` the canonical exponential map extended by `w -> w - xU`, the
//! elements `f, g, h` are `phi`-invariant, `v` satisfies `phi(v) = v - U`, and
//! `x, f, g, h, v` generate `A = B[w]` while `x, f, g, h` satisfy the relations
//! of `B_{d,e-1}`.

use serde::{Deserialize, Serialize};

use crate::error::SurfaceError;
use crate::expmap::{expmap_canonical, ExpMap};
use crate::linalg;
use crate::morphism::{compare_tuples, TupleVerdict};
use crate::parse::{parse_with, SymbolTable};
use crate::poly::{LaurentPoly, Monomial, MonomialOrder, MultiPoly, Var};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::surface::{Surface, SurfaceElement, SurfaceExt, SurfaceSpec, SurfaceSpecFile};
use crate::univariate::UniPoly;

/// `Q'(0,Y,Z) P'(0,Z) a + Q(0,Y,Z) b + P(0,Z) c = 1`, derivatives in `Y`
/// and `Z` respectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutCofactors {
    pub a: MultiPoly,
    pub b: MultiPoly,
    pub c: MultiPoly,
}

/// `P'(0,Z)` and `Q'(0,Y,Z)`.
pub fn fiber_derivatives(spec: &SurfaceSpec) -> (MultiPoly, MultiPoly) {
    (spec.p0().formal_derivative(Var::Z), spec.q0().formal_derivative(Var::Y))
}

pub const STAGE_DEGREES: &str = "r >= 2 and s >= 2";
pub const STAGE_DERIVATIVES: &str = "P'(0,Z) and Q'(0,Y,Z) nonzero";
pub const STAGE_GCD: &str = "(P(0,Z), P'(0,Z)) = k[Z]";
pub const STAGE_UNIT: &str = "(P(0,Z), Q(0,Y,Z), Q'(0,Y,Z)) = k[Y,Z]";

/// Checks the hypotheses in stages; stops at the first failing stage.
pub fn check_stable_hypotheses(spec: &SurfaceSpec) -> Report {
    let mut report = Report::new(format!("stable hypotheses for {spec}"));
    if !spec.is_double() {
        report.fail(STAGE_DEGREES, format!("r = {}, s = {}", spec.r(), spec.s()));
        return report;
    }
    report.pass(STAGE_DEGREES);
    let (dp, dq) = fiber_derivatives(spec);
    if dp.is_zero() || dq.is_zero() {
        report.fail(STAGE_DERIVATIVES, format!("P' = {dp}, Q' = {dq} over {}", spec.field()));
        return report;
    }
    report.pass(STAGE_DERIVATIVES);
    let g = UniPoly::from_multi(spec.p0(), Var::Z).gcd(&UniPoly::from_multi(&dp, Var::Z));
    if g.degree() != Some(0) {
        report.fail(STAGE_GCD, format!("gcd = {}", g.to_multi(Var::Z)));
        return report;
    }
    report.pass(STAGE_GCD);
    match bezout_certificate(spec) {
        Ok(_) => report.pass(STAGE_UNIT),
        Err(e) => report.fail(STAGE_UNIT, e.to_string()),
    }
    report
}

/// Name of the first failing stage, if any.
pub fn failed_stage(report: &Report) -> Option<&str> {
    report.failures().next().map(|c| c.name.as_str())
}

/// Inverts `Q'(0) P'(0)` in `k[Y,Z]/(P(0,Z), Q(0,Y,Z))` through the monomial
/// basis `Y^i Z^j` (`i < s`, `j < r`), then reads `b`, `c` off the division of
/// `1 - Q'P'a` by `Q(0,Y,Z)`, `P(0,Z)`.
pub fn bezout_certificate(spec: &SurfaceSpec) -> Result<BezoutCofactors, SurfaceError> {
    let field = spec.field();
    let (r, s) = (spec.r() as i32, spec.s() as i32);
    let (dp, dq) = fiber_derivatives(spec);
    let product = &dq * &dp;
    let ideal = [spec.q0().clone(), spec.p0().clone()];
    let order = MonomialOrder::fiber();
    let reduce = |p: &MultiPoly| p.divide(&ideal, &order).1;
    let basis: Vec<Monomial> = (0..s)
        .flat_map(|i| (0..r).map(move |j| Monomial::var(Var::Y, i).with(Var::Z, j)))
        .collect();
    let n = basis.len();
    let mut matrix = vec![vec![Scalar::zero(field); n]; n];
    for (col, m) in basis.iter().enumerate() {
        let image = reduce(&product.mul_term(m, &Scalar::one(field)));
        for (row, bm) in basis.iter().enumerate() {
            matrix[row][col] = image.coeff(bm);
        }
    }
    let mut rhs = vec![Scalar::zero(field); n];
    rhs[0] = Scalar::one(field);
    let not_unit = || SurfaceError::NotUnit(format!("Q'P' = {product} is a zero divisor modulo (P(0,Z), Q(0,Y,Z))"));
    if linalg::rank(&matrix) < n {
        return Err(not_unit());
    }
    let coords = linalg::solve(field, &matrix, &rhs).ok_or_else(not_unit)?;
    let a = MultiPoly::from_terms(field, basis.iter().copied().zip(coords))?;
    let residual = MultiPoly::one(field) - &product * &a;
    let (quots, rem) = residual.divide(&ideal, &order);
    if !rem.is_zero() {
        return Err(not_unit());
    }
    let cof = BezoutCofactors { a, b: quots[0].clone(), c: quots[1].clone() };
    debug_assert!(bezout_identity_holds(spec, &cof));
    Ok(cof)
}

/// `Q'P'a + Q(0)b + P(0)c = 1` as polynomials.
pub fn bezout_identity_holds(spec: &SurfaceSpec, cof: &BezoutCofactors) -> bool {
    let (dp, dq) = fiber_derivatives(spec);
    let lhs = &dq * &dp * cof.a.clone() + spec.q0() * &cof.b + spec.p0() * &cof.c;
    lhs.is_one()
}

/// Everything needed to check `source[w] = target[v]` without recomputation.
#[derive(Clone, Debug)]
pub struct StableIsoCertificate {
    pub source: Surface,
    pub target: Surface,
    pub cofactors: BezoutCofactors,
    pub f: SurfaceElement,
    pub g: SurfaceElement,
    pub h: SurfaceElement,
    pub theta: SurfaceElement,
    pub rho: SurfaceElement,
    pub delta: SurfaceElement,
    pub v: SurfaceElement,
    /// Expressions for `w, z, y, t` in the target generators, stored in the
    /// slots `X, Z (f), Y (g), T (h), W (v)`.
    pub witnesses: Witnesses,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witnesses {
    pub w: MultiPoly,
    pub z: MultiPoly,
    pub y: MultiPoly,
    pub t: MultiPoly,
}

/// Builds the certificate for `spec` (which needs `e >= 2`) down to `(d, e-1, P, Q)`.
pub fn build_stable_iso(spec: &Surface) -> Result<StableIsoCertificate, SurfaceError> {
    if spec.e() < 2 {
        return Err(SurfaceError::ExponentTooSmall(spec.e()));
    }
    let field = spec.field();
    let (d, e) = (spec.d() as i32, spec.e() as i32);
    let m = d + e - 1;
    let cof = bezout_certificate(spec)?;
    let (dp, dq) = fiber_derivatives(spec);
    let one = Scalar::one(field);
    let xpow = |k: i32| MultiPoly::term(Monomial::var(Var::X, k), one.clone());
    let var = |v: Var| MultiPoly::var(field, v);

    let f = xpow(m) * var(Var::W) + var(Var::Z);
    let p_f = spec.p().substitute(&[(Var::Z, &f)]);
    let theta = (p_f - spec.p().clone() - xpow(m) * dp.clone() * var(Var::W)).div_var_pow(Var::X, d + e)?;
    let g = var(Var::Y) + xpow(e - 1) * (dp.clone() * var(Var::W) + xpow(1) * theta.clone());
    let q_gf = spec.q().substitute(&[(Var::Y, &g), (Var::Z, &f)]);
    let pq_w = &dp * &dq * var(Var::W);
    let rho = (q_gf - spec.q().clone() - xpow(e - 1) * pq_w.clone()).div_var_pow(Var::X, e)?;
    let h = pq_w.clone() + xpow(1) * var(Var::T) + xpow(1) * rho.clone();

    let el = |p: &MultiPoly| spec.element(p.clone());
    let delta = el(&(MultiPoly::one(field) - &dq * &dp * cof.a.clone())).divide_exact_x(1)?;
    let a_gf = cof.a.substitute(&[(Var::Y, &g), (Var::Z, &f)]);
    let v = el(&(var(Var::W) - a_gf * h.clone())).divide_exact_x(1)?;

    // witnesses in the slots X, F=Z, G=Y, H=T, V=W
    let target = spec.with_e(e as i64 - 1)?;
    let w_wit = xpow(1) * var(Var::W) + cof.a.clone() * var(Var::T);
    let z_wit = var(Var::Z) - xpow(m) * w_wit.clone();
    let zw = [(Var::Z, &z_wit), (Var::W, &w_wit)];
    let y_wit = var(Var::Y)
        - xpow(e - 1) * (dp.substitute(&zw) * w_wit.clone() + xpow(1) * theta.substitute(&zw));
    let yzw = [(Var::Y, &y_wit), (Var::Z, &z_wit), (Var::W, &w_wit)];
    let xt = var(Var::T) - pq_w.substitute(&yzw) - xpow(1) * rho.substitute(&yzw);
    let t_wit = target.element(xt).divide_exact_x(1)?.expr().clone();

    Ok(StableIsoCertificate {
        source: spec.clone(),
        target,
        cofactors: cof,
        f: el(&f),
        g: el(&g),
        h: el(&h),
        theta: el(&theta),
        rho: el(&rho),
        delta,
        v,
        witnesses: Witnesses { w: w_wit, z: z_wit, y: y_wit, t: t_wit },
    })
}

pub const CHECK_P: &str = "(1) P(x,f) = x^d g";
pub const CHECK_Q: &str = "(2) Q(x,g,f) = x^(e-1) h";
pub const CHECK_UNIT: &str = "(3) Q'P'a + x delta = 1";
pub const CHECK_INVARIANT: &str = "(4) phi(f) = f, phi(g) = g, phi(h) = h";
pub const CHECK_SLICE: &str = "(5) phi(v) = v - U";
pub const CHECK_WITNESSES: &str = "(6) x v + a(g,f) h = w and witnesses";
pub const CHECK_TARGET: &str = "(7) target relations";

impl StableIsoCertificate {
    fn elements(&self) -> [&SurfaceElement; 7] {
        [&self.f, &self.g, &self.h, &self.theta, &self.rho, &self.delta, &self.v]
    }

    /// The images `x, f, g, h, v` of the target slots `X, Z, Y, T, W`.
    fn slot_images(&self) -> [(Var, SurfaceElement); 5] {
        [
            (Var::X, self.source.gen(Var::X)),
            (Var::Z, self.f.clone()),
            (Var::Y, self.g.clone()),
            (Var::T, self.h.clone()),
            (Var::W, self.v.clone()),
        ]
    }

    /// Laurent image of `expr(x, f, g, h, v)`; equality in `A` is equality of these.
    fn in_slots(&self, expr: &MultiPoly) -> LaurentPoly {
        let images = self.slot_images();
        let assignment: Vec<(Var, &LaurentPoly)> = images.iter().map(|(v, e)| (*v, e.laurent())).collect();
        expr.substitute(&assignment)
    }

    /// Checks the seven identities; each uses only the stored data.
    pub fn verify(&self) -> Report {
        let mut report = Report::new(format!("stable isomorphism {} -> {}", self.source, self.target));
        let spec = &self.source;
        if self.elements().iter().any(|e| !same_spec(e.spec(), spec)) {
            report.fail("certificate consistency", "elements over a different surface");
            return report;
        }
        let run = |r: &mut Report, name: &str, f: &dyn Fn() -> Result<Option<String>, SurfaceError>| match f() {
            Ok(None) => r.pass(name),
            Ok(Some(why)) => r.fail(name, why),
            Err(e) => r.fail(name, e.to_string()),
        };
        run(&mut report, CHECK_P, &|| self.check_p());
        run(&mut report, CHECK_Q, &|| self.check_q());
        run(&mut report, CHECK_UNIT, &|| self.check_unit());
        run(&mut report, CHECK_INVARIANT, &|| self.check_invariance());
        run(&mut report, CHECK_SLICE, &|| self.check_slice());
        run(&mut report, CHECK_WITNESSES, &|| self.check_witnesses());
        run(&mut report, CHECK_TARGET, &|| self.check_target());
        report
    }

    fn x_pow(&self, k: u32) -> SurfaceElement {
        self.source.gen(Var::X).pow(k)
    }

    fn p_prime(&self) -> SurfaceElement {
        self.source.element(fiber_derivatives(&self.source).0)
    }

    fn pq_prime(&self) -> SurfaceElement {
        let (dp, dq) = fiber_derivatives(&self.source);
        self.source.element(dp * dq)
    }

    fn check_p(&self) -> Result<Option<String>, SurfaceError> {
        let spec = &self.source;
        let (d, e) = (spec.d(), spec.e());
        let p_xf = SurfaceElement::compose(spec, spec.p(), &[(Var::Z, &self.f)])?;
        if !p_xf.elem_equal(&(&self.x_pow(d) * &self.g))? {
            return Ok(Some("P(x,f) differs from x^d g".into()));
        }
        let w = spec.gen(Var::W);
        let rebuilt = spec.gen(Var::Y)
            + &self.x_pow(e - 1) * &(&self.p_prime() * &w + &spec.gen(Var::X) * &self.theta);
        Ok((!rebuilt.elem_equal(&self.g)?).then(|| "g differs from y + x^(e-1)(P'w + x theta)".into()))
    }

    fn check_q(&self) -> Result<Option<String>, SurfaceError> {
        let spec = &self.source;
        let q_xgf = SurfaceElement::compose(spec, spec.q(), &[(Var::Y, &self.g), (Var::Z, &self.f)])?;
        if !q_xgf.elem_equal(&(&self.x_pow(spec.e() - 1) * &self.h))? {
            return Ok(Some("Q(x,g,f) differs from x^(e-1) h".into()));
        }
        let x = spec.gen(Var::X);
        let rebuilt = &self.pq_prime() * &spec.gen(Var::W) + &x * &spec.gen(Var::T) + &x * &self.rho;
        Ok((!rebuilt.elem_equal(&self.h)?).then(|| "h differs from P'Q'w + x t + x rho".into()))
    }

    fn check_unit(&self) -> Result<Option<String>, SurfaceError> {
        let spec = &self.source;
        let a = spec.element(self.cofactors.a.clone());
        let lhs = &self.pq_prime() * &a + &spec.gen(Var::X) * &self.delta;
        if !lhs.elem_equal(&spec.constant(1))? {
            return Ok(Some(format!("Q'P'a + x delta = {lhs}")));
        }
        Ok((!bezout_identity_holds(spec, &self.cofactors)).then(|| "Q'P'a + Q(0)b + P(0)c is not 1".into()))
    }

    fn phi(&self) -> Result<ExpMap, SurfaceError> {
        expmap_canonical(&self.source)?.extend_to_a()
    }

    fn check_invariance(&self) -> Result<Option<String>, SurfaceError> {
        let phi = self.phi()?;
        for (name, el) in [("f", &self.f), ("g", &self.g), ("h", &self.h)] {
            if !phi.apply(el)?.elem_equal(el)? {
                return Ok(Some(format!("phi({name}) != {name}")));
            }
        }
        Ok(None)
    }

    fn check_slice(&self) -> Result<Option<String>, SurfaceError> {
        let phi = self.phi()?;
        let u = self.source.element(MultiPoly::var(self.source.field(), Var::U));
        let expected = &self.v - &u;
        Ok((!phi.apply(&self.v)?.elem_equal(&expected)?).then(|| "phi(v) != v - U".into()))
    }

    fn check_witnesses(&self) -> Result<Option<String>, SurfaceError> {
        let spec = &self.source;
        let a_gf = SurfaceElement::compose(
            spec,
            &self.cofactors.a,
            &[(Var::Y, &self.g), (Var::Z, &self.f)],
        )?;
        let w = spec.gen(Var::W);
        if !(&spec.gen(Var::X) * &self.v + &a_gf * &self.h).elem_equal(&w)? {
            return Ok(Some("x v + a(g,f) h != w".into()));
        }
        let wit = &self.witnesses;
        for (name, expr, gen) in [("w", &wit.w, Var::W), ("z", &wit.z, Var::Z), ("y", &wit.y, Var::Y), ("t", &wit.t, Var::T)] {
            if self.in_slots(expr) != *spec.gen(gen).laurent() {
                return Ok(Some(format!("witness for {name} does not reconstruct {name}")));
            }
        }
        Ok(None)
    }

    fn check_target(&self) -> Result<Option<String>, SurfaceError> {
        let spec = &self.source;
        let t = &self.target;
        if t.d() != spec.d() || t.e() + 1 != spec.e() || t.p() != spec.p() || t.q() != spec.q() {
            return Ok(Some(format!("target {t} is not (d, e-1, P, Q)")));
        }
        for (name, rel) in [("X^d G - P(X,F)", t.relation_p()), ("X^(e-1) H - Q(X,G,F)", t.relation_q())] {
            let img = self.in_slots(&rel);
            if !img.is_zero() {
                return Ok(Some(format!("{name} maps to {img}")));
            }
        }
        Ok(None)
    }

    pub fn to_file(&self) -> CertificateFile {
        let show = |e: &SurfaceElement| e.expr().display_with(&SymbolTable::element()).to_string();
        let poly = |p: &MultiPoly| p.display_with(&SymbolTable::element()).to_string();
        let wit = |p: &MultiPoly| p.display_with(&SymbolTable::witness()).to_string();
        CertificateFile {
            source: self.source.to_file(),
            target: self.target.to_file(),
            a: poly(&self.cofactors.a),
            b: poly(&self.cofactors.b),
            c: poly(&self.cofactors.c),
            f: show(&self.f),
            g: show(&self.g),
            h: show(&self.h),
            theta: show(&self.theta),
            rho: show(&self.rho),
            delta: show(&self.delta),
            v: show(&self.v),
            witnesses: WitnessFile {
                w: wit(&self.witnesses.w),
                z: wit(&self.witnesses.z),
                y: wit(&self.witnesses.y),
                t: wit(&self.witnesses.t),
            },
        }
    }

    pub fn from_file(file: &CertificateFile) -> Result<StableIsoCertificate, SurfaceError> {
        let source = file.source.load(None)?;
        let target = file.target.load(Some(source.field()))?;
        let field = source.field();
        let gens = SymbolTable::element().restrict(&[Var::X, Var::Y, Var::Z, Var::T, Var::W]);
        let yz = SymbolTable::element().restrict(&[Var::Y, Var::Z]);
        let elem = |text: &str| -> Result<SurfaceElement, SurfaceError> {
            Ok(source.element(parse_with(text, &gens, field)?))
        };
        let poly = |text: &str| -> Result<MultiPoly, SurfaceError> { Ok(parse_with(text, &yz, field)?) };
        let wit = |text: &str| -> Result<MultiPoly, SurfaceError> {
            Ok(parse_with(text, &SymbolTable::witness(), field)?)
        };
        Ok(StableIsoCertificate {
            cofactors: BezoutCofactors { a: poly(&file.a)?, b: poly(&file.b)?, c: poly(&file.c)? },
            f: elem(&file.f)?,
            g: elem(&file.g)?,
            h: elem(&file.h)?,
            theta: elem(&file.theta)?,
            rho: elem(&file.rho)?,
            delta: elem(&file.delta)?,
            v: elem(&file.v)?,
            witnesses: Witnesses {
                w: wit(&file.witnesses.w)?,
                z: wit(&file.witnesses.z)?,
                y: wit(&file.witnesses.y)?,
                t: wit(&file.witnesses.t)?,
            },
            source,
            target,
        })
    }
}

fn same_spec(a: &Surface, b: &Surface) -> bool {
    std::sync::Arc::ptr_eq(a, b) || **a == **b
}

/// Certificate JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateFile {
    pub source: SurfaceSpecFile,
    pub target: SurfaceSpecFile,
    pub a: String,
    pub b: String,
    pub c: String,
    pub f: String,
    pub g: String,
    pub h: String,
    pub theta: String,
    pub rho: String,
    pub delta: String,
    pub v: String,
    pub witnesses: WitnessFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub w: String,
    pub z: String,
    pub y: String,
    pub t: String,
}

/// Non-isomorphism of `B_{d,e}` and `B_{d,e+1}` together with a verified
/// certificate for `B_{d,e+1}[w] = B_{d,e}[v]`.
#[derive(Clone, Debug)]
pub struct CancellationDemo {
    pub lower: Surface,
    pub upper: Surface,
    pub verdict: TupleVerdict,
    pub certificate: StableIsoCertificate,
    pub report: Report,
}

pub fn cancellation_demo(spec: &Surface) -> Result<CancellationDemo, SurfaceError> {
    let upper = spec.with_e(spec.e() as i64 + 1)?;
    let mut report = Report::new(format!("cancellation for {spec} and e + 1"));
    let verdict = compare_tuples(spec, &upper)?;
    let only_e = matches!(&verdict, TupleVerdict::NotIsomorphic { differing } if differing.len() == 1 && differing[0].starts_with("e "));
    report.check(format!("non-isomorphic: {verdict}"), only_e, || verdict.to_string());
    let certificate = build_stable_iso(&upper)?;
    report.extend("stable: ", certificate.verify());
    Ok(CancellationDemo { lower: spec.clone(), upper, verdict, certificate, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    fn flagship() -> Surface {
        SurfaceSpec::parse(Field::Q, 1, 2, "Z^2 - 1", "Y^2 + Z").unwrap()
    }

    fn ex(text: &str) -> MultiPoly {
        parse_with(text, &SymbolTable::element(), Field::Q).unwrap()
    }

    #[test]
    fn flagship_cofactors() {
        let cof = bezout_certificate(&flagship()).unwrap();
        assert_eq!(cof.a, ex("-1/4*y"));
        assert_eq!(cof.b, ex("z"));
        assert_eq!(cof.c, ex("-1"));
    }

    #[test]
    fn hypotheses() {
        assert!(check_stable_hypotheses(&flagship()).passed());
        let sq = SurfaceSpec::parse(Field::Q, 1, 2, "Z^2", "Y^2 + Z").unwrap();
        assert_eq!(failed_stage(&check_stable_hypotheses(&sq)), Some(STAGE_GCD));
        assert!(matches!(bezout_certificate(&sq), Err(SurfaceError::NotUnit(_))));
        let f2 = SurfaceSpec::parse(Field::prime(2).unwrap(), 1, 2, "Z^2 - 1", "Y^2 + Z").unwrap();
        assert_eq!(failed_stage(&check_stable_hypotheses(&f2)), Some(STAGE_DERIVATIVES));
    }

    #[test]
    fn flagship_certificate() {
        let cert = build_stable_iso(&flagship()).unwrap();
        assert_eq!(cert.theta.expr(), &ex("x*w^2"));
        assert_eq!(cert.delta.expr(), &ex("-y + x*z*t"));
        assert_eq!(cert.h.reduce_mod_x(), ex("4*y*z*w"));
        let report = cert.verify();
        assert!(report.passed(), "{report}");
        assert_eq!(cert.target.tuple(), (1, 1, 2, 2));
    }

    #[test]
    fn tampering() {
        let cert = build_stable_iso(&flagship()).unwrap();
        let only_failure = |c: &StableIsoCertificate| -> Vec<String> {
            c.verify().failures().map(|f| f.name.clone()).collect()
        };
        let mut bad = cert.clone();
        bad.v = &bad.v + &bad.source.constant(1);
        assert_eq!(only_failure(&bad), vec![CHECK_WITNESSES]);
        let mut bad = cert.clone();
        bad.cofactors.c = ex("1");
        assert_eq!(only_failure(&bad), vec![CHECK_UNIT]);
        let mut bad = cert.clone();
        bad.theta = &bad.theta + &bad.source.gen(Var::X);
        assert_eq!(only_failure(&bad), vec![CHECK_P]);
    }

    #[test]
    fn json_round_trip() {
        let cert = build_stable_iso(&flagship()).unwrap();
        let text = serde_json::to_string_pretty(&cert.to_file()).unwrap();
        let file: CertificateFile = serde_json::from_str(&text).unwrap();
        let again = StableIsoCertificate::from_file(&file).unwrap();
        assert!(again.verify().passed());
        assert_eq!(again.to_file(), cert.to_file());
    }

    #[test]
    fn demo() {
        let demo = cancellation_demo(&SurfaceSpec::parse(Field::Q, 1, 1, "Z^2 - 1", "Y^2 + Z").unwrap()).unwrap();
        assert!(demo.report.passed(), "{}", demo.report);
    }
}
