use std::fmt;
use std::sync::Arc;

use super::Surface;
use crate::error::SurfaceError;
use crate::parse::SymbolTable;
use crate::poly::{LaurentPoly, MultiPoly, Var};
use crate::scalar::Scalar;

/// An element of a surface ring (or of its polynomial extension in `w`, `U`, `V`).
#[derive(Clone, Debug)]
pub struct SurfaceElement {
    spec: Surface,
    expr: MultiPoly,
    laurent: LaurentPoly,
}

impl SurfaceElement {
    pub fn new(spec: Surface, expr: MultiPoly) -> Self {
        assert_eq!(expr.field(), spec.field(), "element field differs from surface field");
        let laurent = spec.embed(&expr);
        SurfaceElement { spec, expr, laurent }
    }

    pub fn spec(&self) -> &Surface {
        &self.spec
    }

    /// The representing expression (not canonical).
    pub fn expr(&self) -> &MultiPoly {
        &self.expr
    }

    /// Image in `k[x, x^-1, z, w, U, V]`.
    pub fn laurent(&self) -> &LaurentPoly {
        &self.laurent
    }

    pub fn is_zero(&self) -> bool {
        self.laurent.is_zero()
    }

    fn same_surface(&self, other: &SurfaceElement) -> Result<(), SurfaceError> {
        if Arc::ptr_eq(&self.spec, &other.spec) || *self.spec == *other.spec {
            Ok(())
        } else {
            Err(SurfaceError::SpecMismatch)
        }
    }

    /// Equality in the ring.
    pub fn elem_equal(&self, other: &SurfaceElement) -> Result<bool, SurfaceError> {
        self.same_surface(other)?;
        Ok(self.laurent == other.laurent)
    }

    pub fn try_add(&self, other: &SurfaceElement) -> Result<SurfaceElement, SurfaceError> {
        self.same_surface(other)?;
        Ok(SurfaceElement {
            spec: self.spec.clone(),
            expr: &self.expr + &other.expr,
            laurent: &self.laurent + &other.laurent,
        })
    }

    pub fn try_sub(&self, other: &SurfaceElement) -> Result<SurfaceElement, SurfaceError> {
        self.same_surface(other)?;
        Ok(SurfaceElement {
            spec: self.spec.clone(),
            expr: &self.expr - &other.expr,
            laurent: &self.laurent - &other.laurent,
        })
    }

    pub fn try_mul(&self, other: &SurfaceElement) -> Result<SurfaceElement, SurfaceError> {
        self.same_surface(other)?;
        Ok(SurfaceElement {
            spec: self.spec.clone(),
            expr: &self.expr * &other.expr,
            laurent: &self.laurent * &other.laurent,
        })
    }

    pub fn neg(&self) -> SurfaceElement {
        SurfaceElement {
            spec: self.spec.clone(),
            expr: -&self.expr,
            laurent: -&self.laurent,
        }
    }

    pub fn scale(&self, c: &Scalar) -> SurfaceElement {
        SurfaceElement {
            spec: self.spec.clone(),
            expr: self.expr.scale(c),
            laurent: self.laurent.scale(c),
        }
    }

    pub fn pow(&self, n: u32) -> SurfaceElement {
        SurfaceElement {
            spec: self.spec.clone(),
            expr: self.expr.pow(n),
            laurent: self.laurent.pow(n),
        }
    }

    /// Replaces generators of the ambient polynomial ring by the given elements
    /// of a (possibly different) surface. Unassigned variables are kept.
    pub fn substitute(
        &self,
        target: &Surface,
        assignment: &[(Var, &SurfaceElement)],
    ) -> Result<SurfaceElement, SurfaceError> {
        SurfaceElement::compose(target, &self.expr, assignment)
    }

    /// The element `expr(assignment)` of `target`, where `expr` is any
    /// polynomial in the seven variable slots.
    pub fn compose(
        target: &Surface,
        expr: &MultiPoly,
        assignment: &[(Var, &SurfaceElement)],
    ) -> Result<SurfaceElement, SurfaceError> {
        for (_, img) in assignment {
            if !(Arc::ptr_eq(img.spec(), target) || **img.spec() == **target) {
                return Err(SurfaceError::SpecMismatch);
            }
        }
        let exprs: Vec<(Var, &MultiPoly)> = assignment.iter().map(|(v, e)| (*v, e.expr())).collect();
        let mut images: Vec<(Var, &LaurentPoly)> = assignment.iter().map(|(v, e)| (*v, e.laurent())).collect();
        // unassigned y, t keep their meaning in the target
        for (v, img) in [(Var::Y, target.y_image()), (Var::T, target.t_image())] {
            if !images.iter().any(|(w, _)| *w == v) {
                images.push((v, img));
            }
        }
        Ok(SurfaceElement {
            spec: target.clone(),
            expr: expr.substitute(&exprs),
            laurent: expr.substitute(&images),
        })
    }

    /// Same expression read in another surface.
    pub fn reinterpret(&self, target: &Surface) -> SurfaceElement {
        SurfaceElement::new(target.clone(), self.expr.clone())
    }

    /// Element of `A = B[w]` or its `U`, `V` extensions is in `B` itself.
    pub fn in_base(&self) -> bool {
        self.laurent.uses_only(&[Var::X, Var::Z])
    }

    pub fn display(&self) -> String {
        self.expr.display_with(&SymbolTable::element()).to_string()
    }
}

impl fmt::Display for SurfaceElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl std::ops::$tr<&SurfaceElement> for &SurfaceElement {
            type Output = SurfaceElement;
            fn $method(self, rhs: &SurfaceElement) -> SurfaceElement {
                self.$inner(rhs).expect("operands from different surfaces")
            }
        }
        impl std::ops::$tr<SurfaceElement> for SurfaceElement {
            type Output = SurfaceElement;
            fn $method(self, rhs: SurfaceElement) -> SurfaceElement {
                self.$inner(&rhs).expect("operands from different surfaces")
            }
        }
    };
}

elem_binop!(Add, add, try_add);
elem_binop!(Sub, sub, try_sub);
elem_binop!(Mul, mul, try_mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use crate::surface::{SurfaceExt, SurfaceSpec};

    fn flagship() -> Surface {
        SurfaceSpec::parse(Field::Q, 1, 2, "Z^2 - 1", "Y^2 + Z").unwrap()
    }

    #[test]
    fn relations_hold() {
        let b = flagship();
        let lhs = b.parse_element("x*y").unwrap();
        let rhs = b.parse_element("z^2 - 1").unwrap();
        assert!(lhs.elem_equal(&rhs).unwrap());
        let lhs = b.parse_element("x^2*t").unwrap();
        let rhs = b.parse_element("y^2 + z").unwrap();
        assert!(lhs.elem_equal(&rhs).unwrap());
        assert!(!b.gen(Var::Y).elem_equal(&b.gen(Var::Z)).unwrap());
    }

    #[test]
    fn mismatch_is_reported() {
        let b = flagship();
        let c = SurfaceSpec::parse(Field::Q, 1, 1, "Z^2 - 1", "Y^2 + Z").unwrap();
        assert_eq!(
            b.gen(Var::Y).try_add(&c.gen(Var::Y)).unwrap_err(),
            SurfaceError::SpecMismatch
        );
        let b2 = SurfaceSpec::parse(Field::Q, 1, 2, "Z^2 - 1", "Y^2 + Z").unwrap();
        assert!(b.gen(Var::Y).try_add(&b2.gen(Var::Y)).is_ok());
    }

    #[test]
    fn substitution_tracks_images() {
        let b = flagship();
        let z = b.gen(Var::Z);
        let y = b.gen(Var::Y);
        // swap roles: substitute Z -> z + x, leave Y
        let zx = b.parse_element("z + x").unwrap();
        let e = y.substitute(&b, &[(Var::Z, &zx)]).unwrap();
        assert!(e.elem_equal(&y).unwrap());
        let e = z.pow(2).substitute(&b, &[(Var::Z, &zx)]).unwrap();
        assert!(e.elem_equal(&zx.pow(2)).unwrap());
    }
}
