use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::show;
use crate::error::SurfaceError;
use crate::parse::{parse_with, SymbolTable};
use crate::poly::{Monomial, MultiPoly, Var};
use crate::scalar::{Field, Scalar};
use crate::surface::{surface_new, Surface, SurfaceSpec};

/// Primary data `(lambda, gamma, delta(X), f(X,Z), h(X,Y,Z))` of an isomorphism.
/// Everything else is derived from it and the source tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoData {
    pub lambda: Scalar,
    pub gamma: Scalar,
    pub delta: MultiPoly,
    pub f: MultiPoly,
    pub h: MultiPoly,
}

/// `tau = gamma^r`, `nu = lambda^-d tau`, `kappa = nu^s`, `g = lambda^-d f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derived {
    pub tau: Scalar,
    pub nu: Scalar,
    pub kappa: Scalar,
    pub g: MultiPoly,
}

/// JSON form; scalars and polynomials as strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoDataFile {
    pub lambda: String,
    pub gamma: String,
    #[serde(default = "zero_text")]
    pub delta: String,
    #[serde(default = "zero_text")]
    pub f: String,
    #[serde(default = "zero_text")]
    pub h: String,
}

fn zero_text() -> String {
    "0".to_string()
}

fn parse_scalar(text: &str, field: Field) -> Result<Scalar, SurfaceError> {
    let p = parse_with(text, &SymbolTable::standard().restrict(&[]), field)?;
    Ok(p.constant_term())
}

impl IsoData {
    pub fn identity(field: Field) -> IsoData {
        IsoData::scaling(Scalar::one(field), Scalar::one(field))
    }

    /// `delta = f = h = 0`.
    pub fn scaling(lambda: Scalar, gamma: Scalar) -> IsoData {
        let field = lambda.field();
        IsoData {
            lambda,
            gamma,
            delta: MultiPoly::zero(field),
            f: MultiPoly::zero(field),
            h: MultiPoly::zero(field),
        }
    }

    pub fn field(&self) -> Field {
        self.lambda.field()
    }

    pub fn validate(&self, spec: &SurfaceSpec) -> Result<(), SurfaceError> {
        let field = spec.field();
        let fields = [
            self.lambda.field(),
            self.gamma.field(),
            self.delta.field(),
            self.f.field(),
            self.h.field(),
        ];
        if let Some(other) = fields.iter().find(|f| **f != field) {
            return Err(crate::error::AlgebraError::FieldMismatch(field, *other).into());
        }
        if self.lambda.is_zero() || self.gamma.is_zero() {
            return Err(SurfaceError::BadIsoData("lambda and gamma must be nonzero".into()));
        }
        if !self.delta.uses_only(&[Var::X]) {
            return Err(SurfaceError::BadIsoData("delta may only involve X".into()));
        }
        if !self.f.uses_only(&[Var::X, Var::Z]) {
            return Err(SurfaceError::BadIsoData("f may only involve X and Z".into()));
        }
        if !self.h.uses_only(&[Var::X, Var::Y, Var::Z]) {
            return Err(SurfaceError::BadIsoData("h may only involve X, Y and Z".into()));
        }
        Ok(())
    }

    pub fn derived(&self, spec: &SurfaceSpec) -> Result<Derived, SurfaceError> {
        let (d, _, r, s) = spec.tuple();
        let tau = self.gamma.pow(r as i64)?;
        let lambda_d_inv = self.lambda.pow(-(d as i64))?;
        let nu = lambda_d_inv.clone() * &tau;
        let kappa = nu.pow(s as i64)?;
        let g = self.f.scale(&lambda_d_inv);
        Ok(Derived { tau, nu, kappa, g })
    }

    /// Images of `x, y, z, t` in the target, as expressions.
    pub fn images(&self, source: &SurfaceSpec) -> Result<BTreeMap<Var, MultiPoly>, SurfaceError> {
        let field = source.field();
        let der = self.derived(source)?;
        let x = MultiPoly::var(field, Var::X);
        let y = MultiPoly::var(field, Var::Y);
        let z = MultiPoly::var(field, Var::Z);
        let t = MultiPoly::var(field, Var::T);
        let lambda_e_inv = self.lambda.pow(-(source.e() as i64))?;
        Ok(BTreeMap::from([
            (Var::X, x.scale(&self.lambda)),
            (Var::Z, z.scale(&self.gamma) + self.delta.clone()),
            (Var::Y, y.scale(&der.nu) + der.g.clone()),
            (Var::T, (t.scale(&der.kappa) + self.h.clone()).scale(&lambda_e_inv)),
        ]))
    }

    /// Substitutions `X -> X/lambda`, `Z -> (Z - delta(X/lambda))/gamma`,
    /// and `Y -> (Y - g(X', Z'))/nu`, inverting the images of `x, z, y`.
    fn inverse_substitutions(&self, spec: &SurfaceSpec) -> Result<[MultiPoly; 3], SurfaceError> {
        let field = spec.field();
        let der = self.derived(spec)?;
        let xs = MultiPoly::var(field, Var::X).scale(&self.lambda.inv()?);
        let zs = (MultiPoly::var(field, Var::Z) - self.delta.substitute(&[(Var::X, &xs)])).scale(&self.gamma.inv()?);
        let gs = der.g.substitute(&[(Var::X, &xs), (Var::Z, &zs)]);
        let ys = (MultiPoly::var(field, Var::Y) - gs).scale(&der.nu.inv()?);
        Ok([xs, zs, ys])
    }

    /// Data of the inverse map `target -> source`. `source` supplies `d, e, r, s`.
    pub fn inverse(&self, source: &SurfaceSpec) -> Result<IsoData, SurfaceError> {
        let der = self.derived(source)?;
        let [xs, zs, ys] = self.inverse_substitutions(source)?;
        let lambda_inv = self.lambda.inv()?;
        let gamma_inv = self.gamma.inv()?;
        let delta = self.delta.substitute(&[(Var::X, &xs)]).scale(&gamma_inv.neg());
        // psi^-1(y) = (y - g(psi^-1 x, psi^-1 z)) / nu = nu' y + g'
        let g_prime = &ys - &MultiPoly::var(source.field(), Var::Y).scale(&der.nu.inv()?);
        let f = g_prime.scale(&self.lambda.pow(-(source.d() as i64))?);
        // psi^-1(t) = (lambda^e t - h(...)) / kappa = lambda'^-e (kappa' t + h')
        let h_sub = self.h.substitute(&[(Var::X, &xs), (Var::Y, &ys), (Var::Z, &zs)]);
        let h = h_sub.scale(&(self.lambda.pow(source.e() as i64)? * &der.kappa).inv()?.neg());
        Ok(IsoData { lambda: lambda_inv, gamma: gamma_inv, delta, f, h })
    }

    /// The surface this data maps isomorphically onto `target`:
    /// `P(X,Z) = tau P_t(X',Z') + X'^d f(X',Z')` and
    /// `Q(X,Y,Z) = kappa Q_t(X',Y',Z') + X'^e h(X',Y',Z')`.
    /// Requires `deg_Z f < r` and `deg_Y h < s` so that the result stays monic.
    pub fn source_for(&self, target: &Surface) -> Result<Surface, SurfaceError> {
        self.validate(target)?;
        let (d, e, r, s) = target.tuple();
        if self.f.degree_in(Var::Z).finite().unwrap_or(-1) >= r as i32 {
            return Err(SurfaceError::BadIsoData("deg_Z f must be below r".into()));
        }
        if self.h.degree_in(Var::Y).finite().unwrap_or(-1) >= s as i32 {
            return Err(SurfaceError::BadIsoData("deg_Y h must be below s".into()));
        }
        let der = self.derived(target)?;
        let [xs, zs, ys] = self.inverse_substitutions(target)?;
        let one = Scalar::one(target.field());
        let xd = MultiPoly::term(Monomial::var(Var::X, d as i32), one.clone()).substitute(&[(Var::X, &xs)]);
        let xe = MultiPoly::term(Monomial::var(Var::X, e as i32), one).substitute(&[(Var::X, &xs)]);
        let p = target.p().substitute(&[(Var::X, &xs), (Var::Z, &zs)]).scale(&der.tau)
            + xd * self.f.substitute(&[(Var::X, &xs), (Var::Z, &zs)]);
        let subs = [(Var::X, &xs), (Var::Y, &ys), (Var::Z, &zs)];
        let q = target.q().substitute(&subs).scale(&der.kappa) + xe * self.h.substitute(&subs);
        surface_new(d as i64, e as i64, p, q)
    }

    pub fn to_file(&self) -> IsoDataFile {
        IsoDataFile {
            lambda: self.lambda.to_string(),
            gamma: self.gamma.to_string(),
            delta: self.delta.to_string(),
            f: self.f.to_string(),
            h: self.h.to_string(),
        }
    }

    /// Polynomials accept both `X Y Z` and `x y z`.
    pub fn from_file(file: &IsoDataFile, field: Field) -> Result<IsoData, SurfaceError> {
        let symbols = SymbolTable::element();
        let poly = |text: &str, allowed: &[Var]| -> Result<MultiPoly, SurfaceError> {
            Ok(parse_with(text, &symbols.restrict(allowed), field)?)
        };
        Ok(IsoData {
            lambda: parse_scalar(&file.lambda, field)?,
            gamma: parse_scalar(&file.gamma, field)?,
            delta: poly(&file.delta, &[Var::X])?,
            f: poly(&file.f, &[Var::X, Var::Z])?,
            h: poly(&file.h, &[Var::X, Var::Y, Var::Z])?,
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "lambda={}, gamma={}, delta={}, f={}, h={}",
            self.lambda,
            self.gamma,
            show(&self.delta),
            show(&self.f),
            show(&self.h)
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    #[test]
    fn derived_values() {
        let b = SurfaceSpec::new(
            1,
            2,
            parse_poly("Z^2 - 1", Field::Q).unwrap(),
            parse_poly("Y^2 + Z", Field::Q).unwrap(),
        )
        .unwrap();
        let data = IsoData::scaling(Scalar::one(Field::Q), Scalar::from_i64(Field::Q, 2));
        let der = data.derived(&b).unwrap();
        assert_eq!(der.tau, Scalar::from_i64(Field::Q, 4));
        assert_eq!(der.nu, Scalar::from_i64(Field::Q, 4));
        assert_eq!(der.kappa, Scalar::from_i64(Field::Q, 16));
    }

    #[test]
    fn json_round_trip() {
        let data = IsoData {
            lambda: Scalar::from_i64(Field::Q, -1),
            gamma: Scalar::from_ratio(Field::Q, &1.into(), &2.into()).unwrap(),
            delta: parse_poly("X^2 - 3", Field::Q).unwrap(),
            f: parse_poly("X*Z", Field::Q).unwrap(),
            h: parse_poly("Y + 1/3", Field::Q).unwrap(),
        };
        let text = serde_json::to_string(&data.to_file()).unwrap();
        let back: IsoDataFile = serde_json::from_str(&text).unwrap();
        assert_eq!(IsoData::from_file(&back, Field::Q).unwrap(), data);
        let minimal: IsoDataFile = serde_json::from_str(r#"{"lambda":"1","gamma":"-1"}"#).unwrap();
        assert!(IsoData::from_file(&minimal, Field::Q).unwrap().delta.is_zero());
        let bad: IsoDataFile = serde_json::from_str(r#"{"lambda":"1","gamma":"1","delta":"Z"}"#).unwrap();
        assert!(IsoData::from_file(&bad, Field::Q).is_err());
    }
}
