//! Morphisms between surfaces given by generator images, isomorphism data,
//! tuple-based non-isomorphism, and automorphisms.

mod auto;
mod data;
mod fiber;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use auto::{auto_from_seed, verify_auto_properties};
pub use data::{Derived, IsoData, IsoDataFile};
pub use fiber::{solve_fiber_conditions, FiberSolutions};

use crate::error::SurfaceError;
use crate::parse::{poly_parse, SymbolTable};
use crate::poly::{MultiPoly, Var};
use crate::scalar::Field;
use crate::surface::{surface_new, Surface, SurfaceElement, SurfaceExt};

const GENS: [Var; 4] = [Var::X, Var::Y, Var::Z, Var::T];

/// A ring map `source -> target` determined by the images of `x, y, z, t`.
/// Any `w` in an argument is carried along unchanged.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Surface,
    target: Surface,
    images: BTreeMap<Var, SurfaceElement>,
}

fn same(a: &Surface, b: &Surface) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Morphism {
    /// Builds the map and checks that both source relations go to zero.
    pub fn new(source: Surface, target: Surface, images: BTreeMap<Var, MultiPoly>) -> Result<Morphism, SurfaceError> {
        let m = Morphism::unchecked(source, target, images)?;
        for (name, residue) in m.relation_residues()? {
            if !residue.is_zero() {
                return Err(SurfaceError::RelationNotKilled {
                    relation: name.to_string(),
                    residue: residue.to_string(),
                });
            }
        }
        Ok(m)
    }

    /// Builds the map without checking the relations.
    pub fn unchecked(
        source: Surface,
        target: Surface,
        images: BTreeMap<Var, MultiPoly>,
    ) -> Result<Morphism, SurfaceError> {
        if source.field() != target.field() {
            return Err(crate::error::AlgebraError::FieldMismatch(source.field(), target.field()).into());
        }
        let mut out = BTreeMap::new();
        for v in GENS {
            let expr = images
                .get(&v)
                .ok_or_else(|| SurfaceError::BadMap(format!("missing image of {}", v.name().to_lowercase())))?;
            if !expr.uses_only(&[Var::X, Var::Y, Var::Z, Var::T, Var::W]) {
                return Err(SurfaceError::BadMap(format!(
                    "image of {} uses variables outside x,y,z,t,w",
                    v.name().to_lowercase()
                )));
            }
            out.insert(v, target.element(expr.clone()));
        }
        if images.keys().any(|v| !GENS.contains(v)) {
            return Err(SurfaceError::BadMap("images given for a non-generator".into()));
        }
        Ok(Morphism { source, target, images: out })
    }

    pub fn identity(spec: Surface) -> Morphism {
        let images = GENS.iter().map(|&v| (v, MultiPoly::var(spec.field(), v))).collect();
        Morphism::new(spec.clone(), spec, images).expect("identity kills the relations")
    }

    pub fn source(&self) -> &Surface {
        &self.source
    }

    pub fn target(&self) -> &Surface {
        &self.target
    }

    pub fn image(&self, v: Var) -> &SurfaceElement {
        &self.images[&v]
    }

    /// Images of `x^d y - P` and `x^e t - Q`.
    pub fn relation_residues(&self) -> Result<[(&'static str, SurfaceElement); 2], SurfaceError> {
        let p = self.apply_expr(&self.source.relation_p())?;
        let q = self.apply_expr(&self.source.relation_q())?;
        Ok([("x^d y - P", p), ("x^e t - Q", q)])
    }

    fn apply_expr(&self, expr: &MultiPoly) -> Result<SurfaceElement, SurfaceError> {
        self.source.element(expr.clone()).substitute(&self.target, &self.assignment())
    }

    fn assignment(&self) -> Vec<(Var, &SurfaceElement)> {
        self.images.iter().map(|(v, e)| (*v, e)).collect()
    }

    pub fn apply(&self, el: &SurfaceElement) -> Result<SurfaceElement, SurfaceError> {
        if !same(el.spec(), &self.source) {
            return Err(SurfaceError::SpecMismatch);
        }
        el.substitute(&self.target, &self.assignment())
    }

    /// `then o self`.
    pub fn then(&self, then: &Morphism) -> Result<Morphism, SurfaceError> {
        if !same(&self.target, &then.source) {
            return Err(SurfaceError::SpecMismatch);
        }
        let mut images = BTreeMap::new();
        for v in GENS {
            images.insert(v, then.apply(&self.images[&v])?);
        }
        Ok(Morphism { source: self.source.clone(), target: then.target.clone(), images })
    }

    /// Whether source and target agree and every generator is fixed.
    pub fn is_identity(&self) -> bool {
        same(&self.source, &self.target)
            && GENS
                .iter()
                .all(|&v| self.images[&v].laurent() == self.target.gen(v).laurent())
    }

    pub fn display_images(&self) -> Vec<(String, String)> {
        GENS.iter()
            .map(|&v| (v.name().to_lowercase(), self.images[&v].to_string()))
            .collect()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .display_images()
            .into_iter()
            .map(|(v, img)| format!("{v} -> {img}"))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// A morphism together with a verified two-sided inverse.
#[derive(Clone, Debug)]
pub struct Isomorphism {
    pub data: IsoData,
    pub forward: Morphism,
    pub inverse: Morphism,
}

/// `psi(x) = lambda x`, `psi(z) = gamma z + delta(x)`, `psi(y) = nu y + g(x,z)`,
/// `psi(t) = lambda^-e (kappa t + h(x,y,z))` from `source` to `target`.
pub fn morphism_from_data(source: &Surface, target: &Surface, data: &IsoData) -> Result<Morphism, SurfaceError> {
    let images = data.images(source)?;
    Morphism::new(source.clone(), target.clone(), images)
}

/// Builds the morphism described by `data`, its inverse, and checks both
/// composites are the identity on generators.
pub fn build_iso(source: &Surface, target: &Surface, data: &IsoData) -> Result<Isomorphism, SurfaceError> {
    if source.tuple() != target.tuple() {
        return Err(SurfaceError::TupleMismatch {
            source_tuple: source.tuple(),
            target_tuple: target.tuple(),
        });
    }
    data.validate(source)?;
    let forward = morphism_from_data(source, target, data)?;
    let inv_data = data.inverse(source)?;
    let inverse = morphism_from_data(target, source, &inv_data)?;
    for (name, comp) in [("inverse after forward", forward.then(&inverse)?), ("forward after inverse", inverse.then(&forward)?)] {
        if !comp.is_identity() {
            return Err(SurfaceError::BadIsoData(format!("{name} is not the identity: {comp}")));
        }
    }
    Ok(Isomorphism { data: data.clone(), forward, inverse })
}

/// Outcome of comparing invariant tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TupleVerdict {
    /// Tuples differ in the named entries, so the surfaces are not isomorphic.
    NotIsomorphic { differing: Vec<String> },
    /// Tuples agree; this test says nothing more.
    Inconclusive,
}

impl fmt::Display for TupleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TupleVerdict::NotIsomorphic { differing } => {
                write!(f, "not isomorphic (tuples differ in {})", differing.join(", "))
            }
            TupleVerdict::Inconclusive => write!(f, "inconclusive by this test (tuples agree)"),
        }
    }
}

/// `(d, e, r, s)`.
pub fn invariants_tuple(spec: &Surface) -> (u32, u32, u32, u32) {
    spec.tuple()
}

/// Compares tuples. Both surfaces must satisfy the mlc conditions, since only
/// then is the tuple an isomorphism invariant.
pub fn compare_tuples(a: &Surface, b: &Surface) -> Result<TupleVerdict, SurfaceError> {
    if a.field() != b.field() {
        return Err(crate::error::AlgebraError::FieldMismatch(a.field(), b.field()).into());
    }
    for spec in [a, b] {
        if !spec.is_mlc() {
            return Err(SurfaceError::NotMlc(spec.to_string()));
        }
    }
    let (ta, tb) = (a.tuple(), b.tuple());
    let pairs = [("d", ta.0, tb.0), ("e", ta.1, tb.1), ("r", ta.2, tb.2), ("s", ta.3, tb.3)];
    let differing: Vec<String> = pairs
        .iter()
        .filter(|(_, x, y)| x != y)
        .map(|(n, x, y)| format!("{n} ({x} vs {y})"))
        .collect();
    Ok(if differing.is_empty() {
        TupleVerdict::Inconclusive
    } else {
        TupleVerdict::NotIsomorphic { differing }
    })
}

/// Rewrites the Danielewski surface `x^n y = f(x,z)` as
/// `x y' = f(0,z)`, `x^{n-1} y - y' - f_1(x,z)` with `f = f(0,z) + x f_1`.
pub fn danielewski_to_standard(n: u32, f: &MultiPoly) -> Result<Surface, SurfaceError> {
    if n < 2 {
        return Err(SurfaceError::BadDanielewski(format!("n must be at least 2, got {n}")));
    }
    if !f.uses_only(&[Var::X, Var::Z]) {
        return Err(SurfaceError::PVariables);
    }
    if f.degree_in(Var::Z).finite().unwrap_or(0) < 2 {
        return Err(SurfaceError::BadDanielewski("f must have degree at least 2 in Z".into()));
    }
    let f0 = f.eval_var(Var::X, &crate::scalar::Scalar::zero(f.field()));
    if f0.is_zero() {
        return Err(SurfaceError::BadDanielewski("X divides f".into()));
    }
    let f1 = (f - &f0).div_var_pow(Var::X, 1)?;
    let q = MultiPoly::var(f.field(), Var::Y) + f1;
    surface_new(1, n as i64 - 1, f0, q)
}

/// Parses `f` for [`danielewski_to_standard`].
pub fn parse_danielewski(n: u32, f: &str, field: Field) -> Result<Surface, SurfaceError> {
    let f = poly_parse(f, &[Var::X, Var::Z], field)?;
    danielewski_to_standard(n, &f)
}

pub(crate) fn show(expr: &MultiPoly) -> String {
    expr.display_with(&SymbolTable::element()).to_string()
}
