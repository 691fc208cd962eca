//! Seeded random expressions for property checks.

use rand::Rng;

use crate::poly::{Monomial, MultiPoly, Var};
use crate::scalar::{Field, Scalar};

/// Shape of random expressions.
#[derive(Clone, Debug)]
pub struct ExprShape {
    pub vars: Vec<Var>,
    pub max_terms: usize,
    /// Per-variable exponent bound (inclusive).
    pub max_exp: i32,
    /// Coefficients are drawn from `-coeff_bound..=coeff_bound`, zero excluded.
    pub coeff_bound: i64,
}

impl ExprShape {
    pub fn surface(max_terms: usize, max_exp: i32) -> Self {
        ExprShape {
            vars: vec![Var::X, Var::Y, Var::Z, Var::T],
            max_terms,
            max_exp,
            coeff_bound: 5,
        }
    }

    pub fn with_w(mut self) -> Self {
        self.vars.push(Var::W);
        self
    }
}

pub fn random_expr<R: Rng + ?Sized>(rng: &mut R, field: Field, shape: &ExprShape) -> MultiPoly {
    let n = rng.gen_range(1..=shape.max_terms.max(1));
    let mut out = MultiPoly::zero(field);
    for _ in 0..n {
        let mut m = Monomial::one();
        for &v in &shape.vars {
            m = m.with(v, rng.gen_range(0..=shape.max_exp));
        }
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-shape.coeff_bound..=shape.coeff_bound);
        }
        out = out + MultiPoly::term(m, Scalar::from_i64(field, c));
    }
    out
}

/// A random expression that is never zero as a polynomial.
pub fn random_nonzero_expr<R: Rng + ?Sized>(rng: &mut R, field: Field, shape: &ExprShape) -> MultiPoly {
    loop {
        let e = random_expr(rng, field, shape);
        if !e.is_zero() {
            return e;
        }
    }
}

/// A random field element, never zero.
pub fn random_unit<R: Rng + ?Sized>(rng: &mut R, field: Field, bound: i64) -> Scalar {
    loop {
        let s = Scalar::from_i64(field, rng.gen_range(-bound..=bound));
        if !s.is_zero() {
            return s;
        }
    }
}
