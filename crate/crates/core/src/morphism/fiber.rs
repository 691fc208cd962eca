use std::fmt;

use crate::error::{AlgebraError, SurfaceError};
use crate::poly::{Monomial, MultiPoly, Var};
use crate::scalar::{Field, Scalar};
use crate::surface::Surface;
use crate::univariate::UniPoly;

/// Largest prime for which the solver enumerates the field.
const ENUMERATION_LIMIT: u64 = 100_000;

/// Pairs `(gamma, delta0)` with `P_s(0, gamma Z + delta0) = gamma^r P_t(0, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiberSolutions {
    /// Finitely many solutions with `gamma` in the base field, sorted by `gamma`.
    Finite(Vec<(Scalar, Scalar)>),
    /// Every nonzero `gamma` works, with `delta0 = slope * gamma + offset`.
    Pencil { slope: Scalar, offset: Scalar },
}

impl FiberSolutions {
    pub fn contains(&self, gamma: &Scalar, delta0: &Scalar) -> bool {
        match self {
            FiberSolutions::Finite(list) => list.iter().any(|(g, d)| g == gamma && d == delta0),
            FiberSolutions::Pencil { slope, offset } => {
                !gamma.is_zero() && slope.clone() * gamma + offset == *delta0
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, FiberSolutions::Finite(list) if list.is_empty())
    }
}

impl fmt::Display for FiberSolutions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiberSolutions::Finite(list) if list.is_empty() => write!(f, "no solutions"),
            FiberSolutions::Finite(list) => {
                let parts: Vec<String> = list.iter().map(|(g, d)| format!("(gamma={g}, delta0={d})")).collect();
                write!(f, "{}", parts.join(" "))
            }
            FiberSolutions::Pencil { slope, offset } => {
                write!(f, "every gamma != 0 with delta0 = {slope}*gamma + {offset}")
            }
        }
    }
}

/// Solves the `x = 0` part of the isomorphism condition for a map
/// `source -> target`: `P_s(0, gamma Z + delta0) = gamma^r P_t(0, Z)`.
///
/// Comparing `Z^{r-1}` coefficients gives `delta0` linearly in `gamma`; the
/// remaining coefficients are polynomials in `gamma` whose common roots are
/// returned. Over `Q` only rational roots are found; over `F_p` the field is
/// enumerated.
pub fn solve_fiber_conditions(source: &Surface, target: &Surface) -> Result<FiberSolutions, SurfaceError> {
    let field = source.field();
    if target.field() != field {
        return Err(AlgebraError::FieldMismatch(field, target.field()).into());
    }
    let r = source.r();
    if target.r() != r {
        return Ok(FiberSolutions::Finite(Vec::new()));
    }
    let p = field.characteristic();
    if p != 0 && (r as u64).is_multiple_of(p) {
        return Err(SurfaceError::CharacteristicDividesR { p, r });
    }
    let a = UniPoly::from_multi(source.p0(), Var::Z);
    let b = UniPoly::from_multi(target.p0(), Var::Z);
    let zero = Scalar::zero(field);
    let coeff = |u: &UniPoly, k: usize| u.coeffs().get(k).cloned().unwrap_or_else(|| zero.clone());
    let r_inv = Scalar::from_i64(field, r as i64).inv()?;
    // delta0 = (b_{r-1} gamma - a_{r-1}) / r
    let slope = coeff(&b, r as usize - 1) * &r_inv;
    let offset = coeff(&a, r as usize - 1).neg() * &r_inv;

    // A(gamma Z + slope gamma + offset) with gamma in the U slot
    let gamma = MultiPoly::var(field, Var::U);
    let arg = &gamma * &MultiPoly::var(field, Var::Z) + gamma.scale(&slope) + MultiPoly::constant(offset.clone());
    let shifted = source.p0().substitute(&[(Var::Z, &arg)]);
    let mut common = UniPoly::zero(field);
    for k in 0..r as i32 - 1 {
        let lhs = shifted.coefficient_of(Var::Z, k);
        let rhs = MultiPoly::term(Monomial::var(Var::U, r as i32), coeff(&b, k as usize));
        let constraint = UniPoly::from_multi(&(lhs - rhs), Var::U);
        common = common.gcd(&constraint);
    }
    if common.is_zero() {
        return Ok(FiberSolutions::Pencil { slope, offset });
    }
    let roots = match field {
        Field::Q => common.rational_roots()?,
        Field::Fp(p) => {
            if p > ENUMERATION_LIMIT {
                return Err(AlgebraError::RootSearchLimit(format!("field of size {p}")).into());
            }
            (0..p as i64)
                .map(|v| Scalar::from_i64(field, v))
                .filter(|v| common.eval(v).is_zero())
                .collect()
        }
    };
    let list = roots
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let d0 = slope.clone() * &g + &offset;
            (g, d0)
        })
        .collect();
    Ok(FiberSolutions::Finite(list))
}
