use super::{SurfaceElement, SurfaceSpec};
use crate::error::SurfaceError;
use crate::poly::{Monomial, MonomialOrder, MultiPoly, Var};
use crate::scalar::Scalar;

impl SurfaceSpec {
    /// Remainder of an expression in `A/xA = (k[Y,Z]/(P(0,Z), Q(0,Y,Z)))[T, W]`.
    pub fn reduce_mod_x_expr(&self, expr: &MultiPoly) -> MultiPoly {
        let c0 = expr.eval_var(Var::X, &Scalar::zero(self.field()));
        let (_, rem) = c0.divide(&[self.q0().clone(), self.p0().clone()], &MonomialOrder::fiber());
        rem
    }

    /// One step of exact division by `x`, on expressions.
    fn divide_x_once(&self, expr: &MultiPoly) -> Result<MultiPoly, SurfaceError> {
        let field = self.field();
        let c0 = expr.eval_var(Var::X, &Scalar::zero(field));
        let rest = (expr - &c0).div_var_pow(Var::X, 1)?;
        let (quots, rem) = c0.divide(&[self.q0().clone(), self.p0().clone()], &MonomialOrder::fiber());
        if !rem.is_zero() {
            return Err(SurfaceError::NotDivisible { residue: rem.to_string() });
        }
        let one = Scalar::one(field);
        // Q(0,Y,Z) = x (x^{e-1} t - q~),  P(0,Z) = x (x^{d-1} y - p~)
        let q_cof = MultiPoly::term(Monomial::var(Var::X, self.e() as i32 - 1).with(Var::T, 1), one.clone())
            - self.q_tilde().clone();
        let p_cof = MultiPoly::term(Monomial::var(Var::X, self.d() as i32 - 1).with(Var::Y, 1), one)
            - self.p_tilde().clone();
        Ok(rest + &quots[0] * &q_cof + &quots[1] * &p_cof)
    }
}

impl SurfaceElement {
    /// Image in `A/xA` as a reduced expression in `Y, Z, T, W` (and `U`, `V`).
    pub fn reduce_mod_x(&self) -> MultiPoly {
        self.spec().reduce_mod_x_expr(self.expr())
    }

    /// `q` with `x^n q = self`, built by rewriting `P(0,z)` and `Q(0,y,z)` as
    /// multiples of `x`. Fails with `NotDivisible` at the first nonzero residue.
    pub fn divide_exact_x(&self, n: u32) -> Result<SurfaceElement, SurfaceError> {
        let spec = self.spec();
        let mut expr = self.expr().clone();
        for _ in 0..n {
            expr = spec.divide_x_once(&expr)?;
        }
        let out = SurfaceElement::new(spec.clone(), expr);
        debug_assert_eq!(out.laurent().shift_x(n as i32), *self.laurent());
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_with, SymbolTable};
    use crate::scalar::Field;
    use crate::surface::{Surface, SurfaceExt};

    fn flagship() -> Surface {
        SurfaceSpec::parse(Field::Q, 1, 2, "Z^2 - 1", "Y^2 + Z").unwrap()
    }

    fn ex(text: &str) -> MultiPoly {
        parse_with(text, &SymbolTable::element(), Field::Q).unwrap()
    }

    #[test]
    fn reductions() {
        let b = flagship();
        assert!(b.parse_element("x*(y^3 + t*w)").unwrap().reduce_mod_x().is_zero());
        assert!(b.parse_element("1 + y^2*z").unwrap().reduce_mod_x().is_zero());
        assert_eq!(b.parse_element("z^2").unwrap().reduce_mod_x(), ex("1"));
    }

    #[test]
    fn exact_division() {
        let b = flagship();
        let q = b.parse_element("x^2*t").unwrap().divide_exact_x(1).unwrap();
        assert_eq!(q.expr(), &ex("x*t"));
        let el = b.parse_element("1 + y^2*z").unwrap();
        let q = el.divide_exact_x(1).unwrap();
        assert_eq!(q.expr(), &ex("-y + x*z*t"));
        assert!((&b.gen(Var::X) * &q).elem_equal(&el).unwrap());
        assert!(matches!(
            b.gen(Var::Y).divide_exact_x(1),
            Err(SurfaceError::NotDivisible { .. })
        ));
    }

    #[test]
    fn repeated_division() {
        let b = SurfaceSpec::parse(Field::Q, 2, 3, "Z^2 + X", "Y^3 + X*Z*Y + Z").unwrap();
        let el = b.parse_element("y*t + z^3*w").unwrap();
        let scaled = &b.parse_element("x^3").unwrap() * &el;
        let q = scaled.divide_exact_x(3).unwrap();
        assert!(q.elem_equal(&el).unwrap());
    }
}
