//! Exponential maps `B -> B[U]` given by generator images.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::SurfaceError;
use crate::parse::{parse_with, SymbolTable};
use crate::poly::{Monomial, MultiPoly, Var};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::surface::{Surface, SurfaceElement, SurfaceExt};

const GENERATORS: [Var; 5] = [Var::X, Var::Y, Var::Z, Var::T, Var::W];

/// A ring map `phi_U` given by images of `x, y, z, t` (and optionally `w`),
/// expressions in the generators and `U`.
#[derive(Clone, Debug)]
pub struct ExpMap {
    spec: Surface,
    images: BTreeMap<Var, SurfaceElement>,
}

/// Result of comparing `phi(a)` with `a`.
#[derive(Clone, Debug)]
pub struct InvariantReport {
    pub element: SurfaceElement,
    pub is_invariant: bool,
    /// Degree in `U` of `phi(element)`.
    pub u_degree: i32,
}

/// JSON form: one expression per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpMapFile {
    pub x: String,
    pub y: String,
    pub z: String,
    pub t: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
}

fn gen_name(v: Var) -> String {
    v.name().to_lowercase()
}

impl ExpMap {
    /// A map with the given images. Generators missing from `images` among
    /// `x, y, z, t` are an error; `w` is optional.
    pub fn new(spec: Surface, images: BTreeMap<Var, MultiPoly>) -> Result<ExpMap, SurfaceError> {
        for v in [Var::X, Var::Y, Var::Z, Var::T] {
            if !images.contains_key(&v) {
                return Err(SurfaceError::BadMap(format!("missing image of {}", gen_name(v))));
            }
        }
        let allowed = [Var::X, Var::Y, Var::Z, Var::T, Var::W, Var::U];
        let mut out = BTreeMap::new();
        for (v, expr) in images {
            if !GENERATORS.contains(&v) {
                return Err(SurfaceError::BadMap(format!("{v} is not a generator")));
            }
            if !expr.uses_only(&allowed) {
                return Err(SurfaceError::BadMap(format!(
                    "image of {} uses variables outside x,y,z,t,w,U",
                    gen_name(v)
                )));
            }
            if expr.field() != spec.field() {
                return Err(crate::error::AlgebraError::FieldMismatch(spec.field(), expr.field()).into());
            }
            out.insert(v, spec.element(expr));
        }
        Ok(ExpMap { spec, images: out })
    }

    /// The map fixing every generator.
    pub fn identity(spec: Surface) -> ExpMap {
        let images = [Var::X, Var::Y, Var::Z, Var::T]
            .into_iter()
            .map(|v| (v, MultiPoly::var(spec.field(), v)))
            .collect();
        ExpMap::new(spec, images).expect("identity images are valid")
    }

    pub fn spec(&self) -> &Surface {
        &self.spec
    }

    pub fn image(&self, v: Var) -> Option<&SurfaceElement> {
        self.images.get(&v)
    }

    pub fn images(&self) -> impl Iterator<Item = (Var, &SurfaceElement)> {
        self.images.iter().map(|(v, e)| (*v, e))
    }

    pub fn has_w(&self) -> bool {
        self.images.contains_key(&Var::W)
    }

    /// `phi(el)`.
    pub fn apply(&self, el: &SurfaceElement) -> Result<SurfaceElement, SurfaceError> {
        let assignment: Vec<(Var, &SurfaceElement)> = self.images.iter().map(|(v, e)| (*v, e)).collect();
        el.substitute(&self.spec, &assignment)
    }

    /// Same map in the indeterminate `V` instead of `U`.
    fn in_v(&self) -> BTreeMap<Var, SurfaceElement> {
        self.images
            .iter()
            .map(|(v, e)| (*v, self.spec.element(e.expr().rename(&[(Var::U, Var::V)]))))
            .collect()
    }

    /// Checks `phi|_{U=0} = id`, preservation of both relations and
    /// `phi_V o phi_U = phi_{U+V}` on generators.
    pub fn verify(&self) -> Report {
        let spec = &self.spec;
        let field = spec.field();
        let zero = Scalar::zero(field);
        let mut report = Report::new(format!("exponential map on {spec}"));
        for (v, img) in &self.images {
            let at_zero = img.laurent().eval_var(Var::U, &zero);
            let gen = spec.gen(*v);
            report.check(format!("axiom (i) on {}", gen_name(*v)), at_zero == *gen.laurent(), || {
                format!("phi({})|U=0 = {}", gen_name(*v), img.expr().eval_var(Var::U, &zero))
            });
        }
        for (name, rel) in [("relation x^d y = P", spec.relation_p()), ("relation x^e t = Q", spec.relation_q())] {
            match self.apply(&spec.element(rel)) {
                Ok(img) => report.check(name, img.is_zero(), || format!("residue {}", img.laurent())),
                Err(e) => report.fail(name, e.to_string()),
            }
        }
        let phi_v = self.in_v();
        let v_assignment: Vec<(Var, &SurfaceElement)> = phi_v.iter().map(|(v, e)| (*v, e)).collect();
        let u_plus_v = MultiPoly::var(field, Var::U) + MultiPoly::var(field, Var::V);
        for (v, img) in &self.images {
            let name = format!("axiom (ii) on {}", gen_name(*v));
            let composed = match img.substitute(spec, &v_assignment) {
                Ok(c) => c,
                Err(e) => {
                    report.fail(name, e.to_string());
                    continue;
                }
            };
            let shifted = spec.element(img.expr().substitute(&[(Var::U, &u_plus_v)]));
            report.check(name, composed.laurent() == shifted.laurent(), || {
                format!(
                    "phi_V(phi_U({})) - phi_(U+V)({}) = {}",
                    gen_name(*v),
                    gen_name(*v),
                    composed.laurent() - shifted.laurent()
                )
            });
        }
        report
    }

    /// Compares `phi(el)` with `el`.
    pub fn is_invariant(&self, el: &SurfaceElement) -> Result<InvariantReport, SurfaceError> {
        let img = self.apply(el)?;
        let u_degree = img.laurent().degree_in(Var::U).finite().unwrap_or(0);
        Ok(InvariantReport { element: el.clone(), is_invariant: u_degree == 0, u_degree })
    }

    /// Adds `w -> w - xU` and re-verifies.
    pub fn extend_to_a(&self) -> Result<ExpMap, SurfaceError> {
        let field = self.spec.field();
        let mut images: BTreeMap<Var, MultiPoly> =
            self.images.iter().map(|(v, e)| (*v, e.expr().clone())).collect();
        let w_image = MultiPoly::var(field, Var::W)
            - MultiPoly::term(Monomial::var(Var::X, 1).with(Var::U, 1), Scalar::one(field));
        images.insert(Var::W, w_image);
        let map = ExpMap::new(self.spec.clone(), images)?;
        ensure_valid(&map)?;
        Ok(map)
    }

    pub fn to_file(&self) -> ExpMapFile {
        let show = |v: Var| {
            self.images
                .get(&v)
                .map(|e| e.expr().display_with(&SymbolTable::element()).to_string())
        };
        ExpMapFile {
            x: show(Var::X).expect("x image"),
            y: show(Var::Y).expect("y image"),
            z: show(Var::Z).expect("z image"),
            t: show(Var::T).expect("t image"),
            w: show(Var::W),
        }
    }

    pub fn from_file(spec: Surface, file: &ExpMapFile) -> Result<ExpMap, SurfaceError> {
        let symbols = SymbolTable::element().restrict(&[Var::X, Var::Y, Var::Z, Var::T, Var::W, Var::U]);
        let mut images = BTreeMap::new();
        let mut put = |v: Var, text: &str| -> Result<(), SurfaceError> {
            images.insert(v, parse_with(text, &symbols, spec.field())?);
            Ok(())
        };
        put(Var::X, &file.x)?;
        put(Var::Y, &file.y)?;
        put(Var::Z, &file.z)?;
        put(Var::T, &file.t)?;
        if let Some(w) = &file.w {
            put(Var::W, w)?;
        }
        ExpMap::new(spec, images)
    }
}

fn ensure_valid(map: &ExpMap) -> Result<(), SurfaceError> {
    let report = map.verify();
    let first = report.failures().next().map(|c| {
        SurfaceError::AxiomFailure(format!("{}: {}", c.name, c.detail.clone().unwrap_or_default()))
    });
    first.map_or(Ok(()), Err)
}

/// `phi(x) = x`, `phi(z) = z + x^{d+e} U`, with `phi(y)` and `phi(t)` forced by
/// the relations. Both axioms are checked before returning.
pub fn expmap_canonical(spec: &Surface) -> Result<ExpMap, SurfaceError> {
    let field = spec.field();
    let (d, e) = (spec.d() as i32, spec.e() as i32);
    let one = Scalar::one(field);
    let x = MultiPoly::var(field, Var::X);
    let z_img = MultiPoly::var(field, Var::Z) + MultiPoly::term(Monomial::var(Var::X, d + e).with(Var::U, 1), one);
    let p_shift = spec.p().substitute(&[(Var::Z, &z_img)]) - spec.p().clone();
    let y_img = MultiPoly::var(field, Var::Y) + p_shift.div_var_pow(Var::X, d)?;
    let q_shift = spec.q().substitute(&[(Var::Y, &y_img), (Var::Z, &z_img)]) - spec.q().clone();
    let t_img = MultiPoly::var(field, Var::T) + q_shift.div_var_pow(Var::X, e)?;
    let images = BTreeMap::from([(Var::X, x), (Var::Y, y_img), (Var::Z, z_img), (Var::T, t_img)]);
    let map = ExpMap::new(spec.clone(), images)?;
    ensure_valid(&map)?;
    Ok(map)
}
