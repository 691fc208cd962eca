//! Expansions of surface elements in the basis
//! `x^i z^k`, `x^i z^k y^j` (i < d), `x^i z^k t^l` (i < e), `x^i z^k y^j t^l` (i < min(d, e)).
//!
//! Plain rewriting with `x^d y -> P` and `x^e t -> Q` always reaches such an
//! expansion but the result depends on the order of rule applications, e.g.
//! `y^4` and `(z^2-1)^2 t - z y^2` are both terminal and equal on the flagship
//! surface. [`canonical_expansion`] reads the expansion off the Laurent image
//! instead, which makes it a function of the element.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{SurfaceElement, SurfaceSpec};
use crate::error::SurfaceError;
use crate::parse::SymbolTable;
use crate::poly::{LaurentPoly, Monomial, MultiPoly, Var};

/// Which basis monomial to prefer when several have the same leading term.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preference {
    /// Largest `t`-degree first. Used by [`NormalForm`].
    TFirst,
    /// Smallest `t`-degree first. An element lies in `k[x,y,z]` iff this
    /// expansion is free of `t`.
    YFirst,
}

/// Applies `x^d y -> P(x,z)` and `x^e t -> Q(x,y,z)` until neither matches.
///
/// Terminates because each step lowers `(t-degree, y-degree)` of the rewritten
/// monomial lexicographically. The result is a valid expansion but not unique.
pub fn rewrite_to_fixpoint(spec: &SurfaceSpec, expr: &MultiPoly) -> MultiPoly {
    let (d, e) = (spec.d() as i32, spec.e() as i32);
    let mut pending = expr.clone();
    let mut done = MultiPoly::zero(spec.field());
    loop {
        let Some((m, c)) = pending.terms().next_back().map(|(m, c)| (*m, c.clone())) else {
            break;
        };
        pending = pending.filter_terms(|k| *k != m);
        let replacement = if m.exp(Var::Y) > 0 && m.exp(Var::X) >= d {
            let rest = m.div(&Monomial::var(Var::X, d).with(Var::Y, 1));
            Some(spec.p().mul_term(&rest, &c))
        } else if m.exp(Var::T) > 0 && m.exp(Var::X) >= e {
            let rest = m.div(&Monomial::var(Var::X, e).with(Var::T, 1));
            Some(spec.q().mul_term(&rest, &c))
        } else {
            None
        };
        match replacement {
            Some(r) => pending = &pending + &r,
            None => done.add_term(m, c),
        }
    }
    done
}

/// Basis expansion of a Laurent image. Fails with `NotInImage` when the input
/// is not the image of a surface element.
pub fn canonical_expansion(
    spec: &SurfaceSpec,
    laurent: &LaurentPoly,
    preference: Preference,
) -> Result<MultiPoly, SurfaceError> {
    let field = spec.field();
    let (d, e, r, s) = {
        let (d, e, r, s) = spec.tuple();
        (d as i32, e as i32, r as i32, s as i32)
    };
    let t_weight = d * s + e;
    let mut images: HashMap<(i32, i32), LaurentPoly> = HashMap::new();
    let mut rest = laurent.clone();
    let mut out = MultiPoly::zero(field);
    loop {
        // leading term: smallest x-exponent, then largest z-exponent
        let lead = rest
            .terms()
            .filter(|(m, _)| m.exp(Var::X) < 0)
            .min_by_key(|(m, _)| (m.exp(Var::X), -m.exp(Var::Z)))
            .map(|(m, c)| (*m, c.clone()));
        let Some((m, coef)) = lead else { break };
        let (a, c) = (m.exp(Var::X), m.exp(Var::Z));
        let mut best: Option<(i32, i32, i32, i32)> = None;
        for l in 0..=c / (r * s) {
            for j in 0..=(c - r * s * l) / r {
                let i = a + d * j + t_weight * l;
                let k = c - r * j - r * s * l;
                if i < 0 || k < 0 || (j > 0 && i >= d) || (l > 0 && i >= e) {
                    continue;
                }
                let better = match (best, preference) {
                    (None, _) => true,
                    (Some((_, bj, _, bl)), Preference::TFirst) => (l, j) > (bl, bj),
                    (Some((_, bj, _, bl)), Preference::YFirst) => (-l, j) > (-bl, bj),
                };
                if better {
                    best = Some((i, j, k, l));
                }
            }
        }
        let Some((i, j, k, l)) = best else {
            return Err(SurfaceError::NotInImage { x_exp: a, z_exp: c });
        };
        let image = images.entry((j, l)).or_insert_with(|| {
            spec.y_image().pow(j as u32) * spec.t_image().pow(l as u32)
        });
        let shift = Monomial::one()
            .with(Var::X, i)
            .with(Var::Z, k)
            .with(Var::W, m.exp(Var::W))
            .with(Var::U, m.exp(Var::U))
            .with(Var::V, m.exp(Var::V));
        rest = &rest - &image.mul_term(&shift, &coef);
        out.add_term(shift.with(Var::Y, j).with(Var::T, l), coef);
    }
    Ok(&out + &rest.try_to_ordinary()?)
}

/// An expansion grouped by basis family.
///
/// Each family maps its indices to a coefficient polynomial in `z` (and `w`,
/// `U`, `V` for elements of the extensions).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalForm {
    expr: MultiPoly,
    /// Terms without `y` or `t`.
    pub f0: MultiPoly,
    /// `(i, j) -> a_ij` multiplying `x^i y^j`.
    pub a: BTreeMap<(i32, i32), MultiPoly>,
    /// `(i, l) -> b_il` multiplying `x^i t^l`.
    pub b: BTreeMap<(i32, i32), MultiPoly>,
    /// `(i, j, l) -> c_ijl` multiplying `x^i y^j t^l`.
    pub c: BTreeMap<(i32, i32, i32), MultiPoly>,
}

impl NormalForm {
    /// The canonical expansion of `el`.
    pub fn of(el: &SurfaceElement) -> Result<NormalForm, SurfaceError> {
        let expr = canonical_expansion(el.spec(), el.laurent(), Preference::TFirst)?;
        Ok(NormalForm::group(expr))
    }

    /// Groups an expression by its `x`, `y`, `t` exponents.
    pub fn group(expr: MultiPoly) -> NormalForm {
        let field = expr.field();
        let mut f0 = MultiPoly::zero(field);
        let mut a: BTreeMap<(i32, i32), MultiPoly> = BTreeMap::new();
        let mut b: BTreeMap<(i32, i32), MultiPoly> = BTreeMap::new();
        let mut c: BTreeMap<(i32, i32, i32), MultiPoly> = BTreeMap::new();
        for (m, coef) in expr.terms() {
            let (i, j, l) = (m.exp(Var::X), m.exp(Var::Y), m.exp(Var::T));
            let inner = m.with(Var::X, 0).with(Var::Y, 0).with(Var::T, 0);
            let zero = || MultiPoly::zero(field);
            match (j > 0, l > 0) {
                (false, false) => f0.add_term(*m, coef.clone()),
                (true, false) => a.entry((i, j)).or_insert_with(zero).add_term(inner, coef.clone()),
                (false, true) => b.entry((i, l)).or_insert_with(zero).add_term(inner, coef.clone()),
                (true, true) => c.entry((i, j, l)).or_insert_with(zero).add_term(inner, coef.clone()),
            }
        }
        NormalForm { expr, f0, a, b, c }
    }

    /// The bounds `i < d` on `a`, `i < e` on `b`, `i < min(d, e)` on `c`.
    pub fn respects_index_bounds(&self, d: u32, e: u32) -> bool {
        let (d, e) = (d as i32, e as i32);
        self.a.keys().all(|&(i, _)| i < d)
            && self.b.keys().all(|&(i, _)| i < e)
            && self.c.keys().all(|&(i, _, _)| i < d.min(e))
    }

    /// Reassembles the expression.
    pub fn expand(&self) -> MultiPoly {
        self.expr.clone()
    }

    pub fn display(&self) -> String {
        self.expr.display_with(&SymbolTable::element()).to_string()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display())
    }
}

impl SurfaceElement {
    pub fn normalize(&self) -> Result<NormalForm, SurfaceError> {
        NormalForm::of(self)
    }

    /// Whether the element lies in `k[x, y, z]` (with `w`, `U`, `V` as parameters).
    pub fn in_xyz_subring(&self) -> Result<bool, SurfaceError> {
        let exp = canonical_expansion(self.spec(), self.laurent(), Preference::YFirst)?;
        Ok(exp.degree_in(Var::T).finite().unwrap_or(0) == 0)
    }

    /// An expression for the element avoiding `t`, when one exists.
    pub fn xyz_expression(&self) -> Result<Option<MultiPoly>, SurfaceError> {
        let exp = canonical_expansion(self.spec(), self.laurent(), Preference::YFirst)?;
        Ok((exp.degree_in(Var::T).finite().unwrap_or(0) == 0).then_some(exp))
    }
}
