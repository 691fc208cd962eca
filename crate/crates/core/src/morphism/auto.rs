use super::{build_iso, show, IsoData, Isomorphism, Morphism};
use crate::error::SurfaceError;
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Var};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::surface::{Surface, SurfaceExt};

/// Extends `x -> lambda x`, `z -> lambda2 z + mu2(x)` to an automorphism, if
/// the relations allow it.
///
/// `P(lambda x, lambda2 z + mu2) - tau P` must be divisible by `x^d` and then
/// `Q(lambda x, nu y + g, lambda2 z + mu2) - kappa Q` by `x^e`; the quotients
/// are the data `f` and `h`.
pub fn auto_from_seed(
    spec: &Surface,
    lambda: Scalar,
    lambda2: Scalar,
    mu2: MultiPoly,
) -> Result<Isomorphism, SurfaceError> {
    if lambda.is_zero() || lambda2.is_zero() {
        return Err(SurfaceError::BadIsoData("lambda and lambda2 must be nonzero".into()));
    }
    if !mu2.uses_only(&[Var::X]) {
        return Err(SurfaceError::BadIsoData("mu2 may only involve X".into()));
    }
    let field = spec.field();
    let (d, e, _, _) = spec.tuple();
    let mut data = IsoData::scaling(lambda.clone(), lambda2.clone());
    data.delta = mu2.clone();
    let der = data.derived(spec)?;
    let x_img = MultiPoly::var(field, Var::X).scale(&lambda);
    let z_img = MultiPoly::var(field, Var::Z).scale(&lambda2) + mu2;
    let big_f = spec.p().substitute(&[(Var::X, &x_img), (Var::Z, &z_img)]) - spec.p().scale(&der.tau);
    data.f = big_f.div_var_pow(Var::X, d as i32).map_err(|_| {
        SurfaceError::SeedNotExtendable(format!(
            "P(lambda x, lambda2 z + mu2) - tau P = {} is not divisible by x^{d}",
            show(&big_f)
        ))
    })?;
    let der = data.derived(spec)?;
    let y_img = MultiPoly::var(field, Var::Y).scale(&der.nu) + der.g.clone();
    let big_g = spec.q().substitute(&[(Var::X, &x_img), (Var::Y, &y_img), (Var::Z, &z_img)])
        - spec.q().scale(&der.kappa);
    data.h = big_g.div_var_pow(Var::X, e as i32).map_err(|_| {
        SurfaceError::SeedNotExtendable(format!(
            "Q(lambda x, psi(y), psi(z)) - kappa Q = {} is not divisible by x^{e}",
            show(&big_g)
        ))
    })?;
    build_iso(spec, spec, &data)
}

/// Checks the six structural properties of an automorphism `psi` of `B`:
/// (i) `psi(k[x,z]) = k[x,z]`, (ii) `psi(x) = lambda x`,
/// (iii) `psi((x^d, P)) = (x^d, P)` in `k[x,z]`, (iv) `psi(k[x,y,z]) = k[x,y,z]`,
/// (v) `psi((x^e, Q)R) = (x^e, Q)R` for `R = k[x,y,z]`, (vi) `psi(t) = a t + b`
/// with `a` a unit and `b` in `R`.
pub fn verify_auto_properties(psi: &Morphism) -> Report {
    let spec = psi.source().clone();
    let mut report = Report::new(format!("automorphism properties on {spec}"));
    if **psi.target() != *spec {
        report.fail("source equals target", "not an endomorphism");
        return report;
    }
    let field = spec.field();
    let (d, e, r, s) = spec.tuple();
    let in_kxz = |l: &crate::poly::LaurentPoly| l.uses_only(&[Var::X, Var::Z]) && l.ord_x().unwrap_or(0) >= 0;

    // (ii)
    let x_img = psi.image(Var::X).laurent();
    let lambda = x_img.coeff(&Monomial::var(Var::X, 1));
    let ok = !lambda.is_zero() && x_img.len() == 1;
    report.check("(ii) psi(x) = lambda x", ok, || format!("psi(x) = {}", psi.image(Var::X)));

    // (i): psi(z) = lambda2 z + mu2(x) and psi(x) in k[x]
    let z_img = psi.image(Var::Z).laurent();
    let lambda2 = z_img.coeff(&Monomial::var(Var::Z, 1));
    let mu2 = z_img.filter_terms(|m| m.exp(Var::Z) == 0);
    let ok = in_kxz(z_img)
        && z_img.degree_in(Var::Z).finite() == Some(1)
        && z_img.coefficient_of(Var::Z, 1).len() == 1
        && !lambda2.is_zero()
        && mu2.uses_only(&[Var::X])
        && in_kxz(x_img);
    report.check("(i) psi(k[x,z]) = k[x,z]", ok, || format!("psi(z) = {}", psi.image(Var::Z)));

    // (iii): psi(P) lies in (x^d, P) k[x,z]; {P, x^d} is a Groebner basis for lex Z > X
    let xd = MultiPoly::term(Monomial::var(Var::X, d as i32), Scalar::one(field));
    let p_img = if ok {
        z_img.try_to_ordinary().ok().and_then(|z| {
            x_img
                .try_to_ordinary()
                .ok()
                .map(|x| spec.p().substitute(&[(Var::X, &x), (Var::Z, &z)]))
        })
    } else {
        None
    };
    match p_img {
        Some(p_img) => {
            let (_, rem) = p_img.divide(&[spec.p().clone(), xd], &MonomialOrder::lex(&[Var::Z, Var::X]));
            report.check("(iii) psi((x^d, P)) = (x^d, P)", rem.is_zero(), || {
                format!("psi(P) leaves remainder {}", show(&rem))
            });
        }
        None => report.fail("(iii) psi((x^d, P)) = (x^d, P)", "psi(x), psi(z) are not in k[x,z]"),
    }

    // (iv): psi(y) = nu y + (element of k[x,z])
    let y_img = psi.image(Var::Y);
    let lead_y = Monomial::var(Var::X, -(d as i32)).with(Var::Z, r as i32);
    let nu = y_img.laurent().coeff(&lead_y);
    let rest = y_img.laurent() - &spec.gen(Var::Y).laurent().scale(&nu);
    let ok = !nu.is_zero() && in_kxz(&rest);
    report.check("(iv) psi(k[x,y,z]) = k[x,y,z]", ok, || format!("psi(y) = {y_img}"));

    // (vi): a is the coefficient of t's leading Laurent term, which no element of R reaches
    let t_img = psi.image(Var::T);
    let lead_t = Monomial::var(Var::X, -((d * s + e) as i32)).with(Var::Z, (r * s) as i32);
    let a = t_img.laurent().coeff(&lead_t);
    let b = t_img - &spec.gen(Var::T).scale(&a);
    let b_in_r = b.in_xyz_subring();
    let ok = !a.is_zero() && matches!(b_in_r, Ok(true));
    report.check("(vi) psi(t) = a t + b", ok, || match &b_in_r {
        Err(err) => err.to_string(),
        Ok(_) => format!("psi(t) = {t_img}, detected a = {a}"),
    });

    // (v): psi(Q) - lambda^e a Q is in x^e R
    let q_el = spec.element(spec.q().clone());
    let check_v = || -> Result<bool, SurfaceError> {
        let scale = lambda.pow(e as i64)? * &a;
        let diff = psi.apply(&q_el)? - q_el.scale(&scale);
        let quotient = diff.divide_exact_x(e)?;
        quotient.in_xyz_subring()
    };
    match check_v() {
        Ok(ok) => report.check("(v) psi((x^e, Q)R) = (x^e, Q)R", ok, || {
            "psi(Q) - lambda^e a Q is not in x^e R".to_string()
        }),
        Err(err) => report.fail("(v) psi((x^e, Q)R) = (x^e, Q)R", err.to_string()),
    }
    report
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::parse::parse_poly;
    use crate::scalar::Field;
    use crate::surface::SurfaceSpec;

    fn flagship() -> Surface {
        SurfaceSpec::parse(Field::Q, 1, 2, "Z^2 - 1", "Y^2 + Z").unwrap()
    }

    fn q(n: i64) -> Scalar {
        Scalar::from_i64(Field::Q, n)
    }

    #[test]
    fn sign_change_on_z_does_not_extend() {
        let b = flagship();
        let err = auto_from_seed(&b, q(1), q(-1), MultiPoly::zero(Field::Q)).unwrap_err();
        assert!(matches!(err, SurfaceError::SeedNotExtendable(_)));
    }

    #[test]
    fn trivial_seed() {
        let b = flagship();
        let iso = auto_from_seed(&b, q(1), q(1), MultiPoly::zero(Field::Q)).unwrap();
        assert!(iso.forward.is_identity());
        let report = verify_auto_properties(&iso.forward);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn sign_change_on_x() {
        let b = flagship();
        let iso = auto_from_seed(&b, q(-1), q(1), MultiPoly::zero(Field::Q)).unwrap();
        assert_eq!(iso.forward.image(Var::Y).expr(), &parse_poly("-Y", Field::Q).unwrap());
        assert_eq!(iso.forward.image(Var::T).expr(), &parse_poly("T", Field::Q).unwrap());
        let report = verify_auto_properties(&iso.forward);
        assert!(report.passed(), "{report}");
        assert!(verify_auto_properties(&iso.inverse).passed());
    }

    #[test]
    fn nontrivial_translation() {
        // P = Z^2 + X Z: z -> z + x^2 forces data in f and h
        let b = SurfaceSpec::parse(Field::Q, 1, 2, "Z^2 + X*Z", "Y^2 + Z").unwrap();
        let mu = parse_poly("X^3", Field::Q).unwrap();
        let iso = auto_from_seed(&b, q(1), q(1), mu).unwrap();
        assert!(!iso.data.f.is_zero());
        assert!(!iso.data.h.is_zero());
        let report = verify_auto_properties(&iso.forward);
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn swapped_images_fail() {
        let b = flagship();
        let f = |s: &str| parse_poly(s, Field::Q).unwrap();
        let images = BTreeMap::from([
            (Var::X, f("X")),
            (Var::Y, f("Y")),
            (Var::Z, f("T")),
            (Var::T, f("Z")),
        ]);
        let psi = Morphism::unchecked(b.clone(), b, images).unwrap();
        let report = verify_auto_properties(&psi);
        assert!(!report.get("(i) psi(k[x,z]) = k[x,z]").unwrap().passed);
        assert!(report.get("(ii) psi(x) = lambda x").unwrap().passed);
    }
}
