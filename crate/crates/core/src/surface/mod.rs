//! The surface rings `B = k[X,Y,Z,T]/(X^d Y - P(X,Z), X^e T - Q(X,Y,Z))` and
//! their polynomial extensions.
//!
//! Elements are carried as free-algebra expressions together with their image
//! in `k[x, x^-1, z]` (extended by `w`, `U`, `V` as free variables). Since `B`
//! is a domain that image is faithful, so it decides equality.

mod element;
mod normal_form;
mod xadic;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use element::SurfaceElement;
pub use normal_form::{canonical_expansion, rewrite_to_fixpoint, NormalForm, Preference};

use crate::error::SurfaceError;
use crate::parse::{parse_with, SymbolTable};
use crate::poly::{LaurentPoly, Monomial, MultiPoly, Var};
use crate::scalar::{Field, Scalar};

/// Shared handle to a validated surface.
pub type Surface = Arc<SurfaceSpec>;

/// Validated defining data `(d, e, P, Q)` of a surface.
#[derive(Clone, Debug)]
pub struct SurfaceSpec {
    field: Field,
    d: u32,
    e: u32,
    p: MultiPoly,
    q: MultiPoly,
    r: u32,
    s: u32,
    p0: MultiPoly,
    q0: MultiPoly,
    p_tilde: MultiPoly,
    q_tilde: MultiPoly,
    y_image: LaurentPoly,
    t_image: LaurentPoly,
}

impl PartialEq for SurfaceSpec {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.d == other.d
            && self.e == other.e
            && self.p == other.p
            && self.q == other.q
    }
}

impl Eq for SurfaceSpec {}

/// Validates `(d, e, P, Q)` and precomputes the Laurent images of `y` and `t`.
pub fn surface_new(d: i64, e: i64, p: MultiPoly, q: MultiPoly) -> Result<Surface, SurfaceError> {
    SurfaceSpec::new(d, e, p, q).map(Arc::new)
}

fn leading_coefficient_is_one(poly: &MultiPoly, v: Var, deg: i32) -> bool {
    poly.coefficient_of(v, deg).is_one()
}

impl SurfaceSpec {
    pub fn new(d: i64, e: i64, p: MultiPoly, q: MultiPoly) -> Result<Self, SurfaceError> {
        if d < 1 || e < 1 || d > i32::MAX as i64 || e > i32::MAX as i64 {
            return Err(SurfaceError::BadExponents { d, e });
        }
        let field = p.field();
        if q.field() != field {
            return Err(crate::error::AlgebraError::FieldMismatch(field, q.field()).into());
        }
        if !p.uses_only(&[Var::X, Var::Z]) {
            return Err(SurfaceError::PVariables);
        }
        if !q.uses_only(&[Var::X, Var::Y, Var::Z]) {
            return Err(SurfaceError::QVariables);
        }
        let r = p.degree_in(Var::Z).finite().unwrap_or(0);
        let s = q.degree_in(Var::Y).finite().unwrap_or(0);
        if r < 1 {
            return Err(SurfaceError::PConstant);
        }
        if s < 1 {
            return Err(SurfaceError::QConstant);
        }
        if !leading_coefficient_is_one(&p, Var::Z, r) {
            return Err(SurfaceError::PNotMonic(p.to_string()));
        }
        if !leading_coefficient_is_one(&q, Var::Y, s) {
            return Err(SurfaceError::QNotMonic(q.to_string()));
        }
        let zero = Scalar::zero(field);
        let p0 = p.eval_var(Var::X, &zero);
        let q0 = q.eval_var(Var::X, &zero);
        let p_tilde = (&p - &p0).div_var_pow(Var::X, 1)?;
        let q_tilde = (&q - &q0).div_var_pow(Var::X, 1)?;
        let (d, e) = (d as u32, e as u32);
        let y_image = p.to_laurent().shift_x(-(d as i32));
        let t_image = q
            .substitute(&[(Var::Y, &y_image)])
            .shift_x(-(e as i32));
        Ok(SurfaceSpec {
            field,
            d,
            e,
            p,
            q,
            r: r as u32,
            s: s as u32,
            p0,
            q0,
            p_tilde,
            q_tilde,
            y_image,
            t_image,
        })
    }

    /// Parses `P` and `Q` in the standard grammar.
    pub fn parse(field: Field, d: i64, e: i64, p: &str, q: &str) -> Result<Surface, SurfaceError> {
        let p = crate::parse::poly_parse(p, &[Var::X, Var::Z], field)?;
        let q = crate::parse::poly_parse(q, &[Var::X, Var::Y, Var::Z], field)?;
        surface_new(d, e, p, q)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn p(&self) -> &MultiPoly {
        &self.p
    }

    pub fn q(&self) -> &MultiPoly {
        &self.q
    }

    /// `P(0, Z)`.
    pub fn p0(&self) -> &MultiPoly {
        &self.p0
    }

    /// `Q(0, Y, Z)`.
    pub fn q0(&self) -> &MultiPoly {
        &self.q0
    }

    /// `(P(X,Z) - P(0,Z)) / X`.
    pub fn p_tilde(&self) -> &MultiPoly {
        &self.p_tilde
    }

    /// `(Q(X,Y,Z) - Q(0,Y,Z)) / X`.
    pub fn q_tilde(&self) -> &MultiPoly {
        &self.q_tilde
    }

    pub fn y_image(&self) -> &LaurentPoly {
        &self.y_image
    }

    pub fn t_image(&self) -> &LaurentPoly {
        &self.t_image
    }

    /// `(d, e, r, s)`.
    pub fn tuple(&self) -> (u32, u32, u32, u32) {
        (self.d, self.e, self.r, self.s)
    }

    /// `r >= 2` and `s >= 2`.
    pub fn is_double(&self) -> bool {
        self.r >= 2 && self.s >= 2
    }

    /// The parameter conditions under which the Makar-Limanov invariant is `k[x]`.
    pub fn is_mlc(&self) -> bool {
        let (r, s, e) = (self.r, self.s, self.e);
        (r >= 2 && s >= 2) || (r >= 2 && s == 1) || (r == 1 && s >= 2 && e >= 2)
    }

    /// Relation polynomial `X^d Y - P(X,Z)`.
    pub fn relation_p(&self) -> MultiPoly {
        MultiPoly::term(
            Monomial::var(Var::X, self.d as i32).with(Var::Y, 1),
            Scalar::one(self.field),
        ) - self.p.clone()
    }

    /// Relation polynomial `X^e T - Q(X,Y,Z)`.
    pub fn relation_q(&self) -> MultiPoly {
        MultiPoly::term(
            Monomial::var(Var::X, self.e as i32).with(Var::T, 1),
            Scalar::one(self.field),
        ) - self.q.clone()
    }

    /// Image of an expression in `k[x, x^-1, z, w, U, V]`.
    pub fn embed(&self, expr: &MultiPoly) -> LaurentPoly {
        expr.substitute(&[(Var::Y, &self.y_image), (Var::T, &self.t_image)])
    }

    /// The surface `(d, e, P(0,Z), Y^s)` carrying the lowest-order slices.
    pub fn graded(&self) -> Surface {
        let ys = MultiPoly::term(Monomial::var(Var::Y, self.s as i32), Scalar::one(self.field));
        surface_new(self.d as i64, self.e as i64, self.p0.clone(), ys).expect("graded surface is valid")
    }

    /// The surface `(d, e, Z^r, Y^s)` carrying the top-degree slices of the graded surface.
    pub fn bigraded(&self) -> Surface {
        let zr = MultiPoly::term(Monomial::var(Var::Z, self.r as i32), Scalar::one(self.field));
        let ys = MultiPoly::term(Monomial::var(Var::Y, self.s as i32), Scalar::one(self.field));
        surface_new(self.d as i64, self.e as i64, zr, ys).expect("bigraded surface is valid")
    }

    /// Same `P`, `Q` with a different `e`.
    pub fn with_e(&self, e: i64) -> Result<Surface, SurfaceError> {
        surface_new(self.d as i64, e, self.p.clone(), self.q.clone())
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "B(d={}, e={}, P={}, Q={}) over {}",
            self.d, self.e, self.p, self.q, self.field
        )
    }
}

/// JSON form of a surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpecFile {
    /// Omitted fields default to the caller's choice (see [`SurfaceSpecFile::load`]).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<Field>,
    pub d: i64,
    pub e: i64,
    #[serde(rename = "P")]
    pub p: String,
    #[serde(rename = "Q")]
    pub q: String,
}

impl SurfaceSpecFile {
    /// Builds the surface. `default_field` is used when the file names none;
    /// when both are given they must agree.
    pub fn load(&self, default_field: Option<Field>) -> Result<Surface, SurfaceError> {
        let field = match (self.field, default_field) {
            (Some(a), Some(b)) if a != b => return Err(crate::error::AlgebraError::FieldMismatch(a, b).into()),
            (Some(a), _) | (None, Some(a)) => a,
            (None, None) => Field::Q,
        };
        let field = field.validate()?;
        SurfaceSpec::parse(field, self.d, self.e, &self.p, &self.q)
    }
}

impl SurfaceSpec {
    pub fn to_file(&self) -> SurfaceSpecFile {
        SurfaceSpecFile {
            field: Some(self.field),
            d: self.d as i64,
            e: self.e as i64,
            p: self.p.to_string(),
            q: self.q.to_string(),
        }
    }
}

/// Helpers on the shared handle.
pub trait SurfaceExt {
    fn element(&self, expr: MultiPoly) -> SurfaceElement;
    fn gen(&self, v: Var) -> SurfaceElement;
    fn constant(&self, c: i64) -> SurfaceElement;
    fn parse_element(&self, text: &str) -> Result<SurfaceElement, SurfaceError>;
}

impl SurfaceExt for Surface {
    fn element(&self, expr: MultiPoly) -> SurfaceElement {
        SurfaceElement::new(self.clone(), expr)
    }

    fn gen(&self, v: Var) -> SurfaceElement {
        self.element(MultiPoly::var(self.field, v))
    }

    fn constant(&self, c: i64) -> SurfaceElement {
        self.element(MultiPoly::from_i64(self.field, c))
    }

    /// Accepts the grammar with lowercase aliases `x y z t w`.
    fn parse_element(&self, text: &str) -> Result<SurfaceElement, SurfaceError> {
        let expr = parse_with(text, &SymbolTable::element(), self.field)?;
        Ok(self.element(expr))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn flagship() -> Surface {
        SurfaceSpec::parse(Field::Q, 1, 2, "Z^2 - 1", "Y^2 + Z").unwrap()
    }

    #[test]
    fn flagship_flags() {
        let b = flagship();
        assert_eq!((b.r(), b.s()), (2, 2));
        assert!(b.is_double());
        assert!(b.is_mlc());
    }

    #[test]
    fn linear_case_is_not_double() {
        let b = SurfaceSpec::parse(Field::Q, 1, 1, "Z", "Y").unwrap();
        assert_eq!((b.r(), b.s()), (1, 1));
        assert!(!b.is_double());
        assert!(!b.is_mlc());
    }

    #[test]
    fn cubic_q() {
        let b = SurfaceSpec::parse(Field::Q, 2, 3, "Z^2 + X", "Y^3 + X*Z*Y + Z").unwrap();
        assert_eq!(b.tuple(), (2, 3, 2, 3));
        assert!(b.is_double());
    }

    #[test]
    fn mlc_conditions() {
        let m = |d, e, p: &str, q: &str| SurfaceSpec::parse(Field::Q, d, e, p, q).unwrap().is_mlc();
        assert!(m(1, 1, "Z^2", "Y"));
        assert!(!m(1, 1, "Z", "Y^2"));
        assert!(m(1, 2, "Z", "Y^2"));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            SurfaceSpec::parse(Field::Q, 1, 1, "2*Z^2", "Y"),
            Err(SurfaceError::PNotMonic(_))
        ));
        assert!(matches!(
            SurfaceSpec::parse(Field::Q, 1, 1, "Z^2", "X*Y^2 + 1"),
            Err(SurfaceError::QNotMonic(_))
        ));
        assert!(matches!(
            SurfaceSpec::parse(Field::Q, 1, 1, "X + 1", "Y"),
            Err(SurfaceError::PConstant)
        ));
        assert!(matches!(
            SurfaceSpec::parse(Field::Q, 1, 1, "Z", "Z"),
            Err(SurfaceError::QConstant)
        ));
        assert!(matches!(
            SurfaceSpec::parse(Field::Q, 0, 1, "Z", "Y"),
            Err(SurfaceError::BadExponents { .. })
        ));
        assert!(matches!(
            SurfaceSpec::parse(Field::Q, 1, 1, "Z + Y", "Y"),
            Err(SurfaceError::Algebra(_))
        ));
    }

    #[test]
    fn generator_images() {
        let b = flagship();
        let y = parse_poly("Z^2 - 1", Field::Q).unwrap().to_laurent().shift_x(-1);
        assert_eq!(b.y_image(), &y);
        // (Z^2-1)^2 X^-4 + Z X^-2
        let t = &parse_poly("Z^4 - 2*Z^2 + 1", Field::Q).unwrap().to_laurent().shift_x(-4)
            + &parse_poly("Z", Field::Q).unwrap().to_laurent().shift_x(-2);
        assert_eq!(b.t_image(), &t);
        assert!(b.embed(&b.relation_p()).is_zero());
        assert!(b.embed(&b.relation_q()).is_zero());
    }

    #[test]
    fn spec_file_round_trip() {
        let b = SurfaceSpec::parse(Field::prime(7).unwrap(), 2, 3, "Z^2 + X", "Y^3 + X*Z*Y + Z").unwrap();
        let text = serde_json::to_string(&b.to_file()).unwrap();
        let file: SurfaceSpecFile = serde_json::from_str(&text).unwrap();
        assert_eq!(*file.load(None).unwrap(), *b);
        assert!(file.load(Some(Field::Q)).is_err());
        let bare: SurfaceSpecFile = serde_json::from_str(r#"{"d":1,"e":2,"P":"Z^2-1","Q":"Y^2+Z"}"#).unwrap();
        assert_eq!(bare.load(None).unwrap().field(), Field::Q);
        let bad: SurfaceSpecFile = serde_json::from_str(r#"{"field":{"Fp":8},"d":1,"e":2,"P":"Z^2-1","Q":"Y^2+Z"}"#).unwrap();
        assert!(bad.load(None).is_err());
    }

    #[test]
    fn graded_surfaces() {
        let b = SurfaceSpec::parse(Field::Q, 2, 1, "Z^2 + X*Z - 1", "Y^2 + X*Y + Z").unwrap();
        let d = b.graded();
        assert_eq!(d.p(), &parse_poly("Z^2 - 1", Field::Q).unwrap());
        assert_eq!(d.q(), &parse_poly("Y^2", Field::Q).unwrap());
        let c = b.bigraded();
        assert_eq!(c.p(), &parse_poly("Z^2", Field::Q).unwrap());
    }
}
