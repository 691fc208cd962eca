//! Sparse multivariate polynomials over a fixed variable universe.
//!
//! A single representation backs both ordinary polynomials and Laurent
//! polynomials (negative exponents allowed in `X` only); the `Support` marker
//! keeps the two apart at the type level.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;

use crate::error::AlgebraError;
use crate::scalar::{Field, Scalar};

pub const NVARS: usize = 7;

/// Hard bound on `|x-exponent|` in any Laurent product.
pub const MAX_LAURENT_EXPONENT: i32 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X,
    Y,
    Z,
    T,
    W,
    U,
    V,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::Z, Var::T, Var::W, Var::U, Var::V];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        ["X", "Y", "Z", "T", "W", "U", "V"][self.index()]
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Dense exponent vector indexed by [`Var`]. Ordering is lexicographic with `X` most significant.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub [i32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, exp: i32) -> Self {
        let mut m = Monomial::one();
        m.0[v.index()] = exp;
        m
    }

    pub fn exp(&self, v: Var) -> i32 {
        self.0[v.index()]
    }

    pub fn with(mut self, v: Var, exp: i32) -> Self {
        self.0[v.index()] = exp;
        self
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i] + other.0[i];
        }
        Monomial(out)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut out = [0; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i] - other.0[i];
        }
        Monomial(out)
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> i32 {
        self.0.iter().sum()
    }
}

/// Degree of a polynomial in one variable; the zero polynomial has degree `NegInfinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i32),
}

impl Degree {
    pub fn finite(self) -> Option<i32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

pub trait Support: Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    const LAURENT: bool;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ordinary;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Laurent;

impl Support for Ordinary {
    const LAURENT: bool = false;
}

impl Support for Laurent {
    const LAURENT: bool = true;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly<S: Support> {
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
    kind: PhantomData<S>,
}

pub type MultiPoly = Poly<Ordinary>;
pub type LaurentPoly = Poly<Laurent>;

/// Lexicographic order with an explicit variable priority; unlisted variables
/// follow in their default order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOrder {
    priority: Vec<Var>,
}

impl MonomialOrder {
    pub fn lex(priority: &[Var]) -> Self {
        let mut p: Vec<Var> = priority.to_vec();
        for v in Var::ALL {
            if !p.contains(&v) {
                p.push(v);
            }
        }
        MonomialOrder { priority: p }
    }

    /// `T > W > U > V > Y > Z > X`: puts `Y^s` and `Z^r` in leading position
    /// for `Q(0,Y,Z)` and `P(0,Z)`.
    pub fn fiber() -> Self {
        MonomialOrder::lex(&[Var::T, Var::W, Var::U, Var::V, Var::Y, Var::Z, Var::X])
    }

    fn key(&self, m: &Monomial) -> [i32; NVARS] {
        let mut k = [0; NVARS];
        for (slot, v) in k.iter_mut().zip(&self.priority) {
            *slot = m.exp(*v);
        }
        k
    }
}

impl<S: Support> Poly<S> {
    pub fn zero(field: Field) -> Self {
        Poly {
            field,
            terms: BTreeMap::new(),
            kind: PhantomData,
        }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Poly::zero(c.field());
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn one(field: Field) -> Self {
        Poly::constant(Scalar::one(field))
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        Poly::constant(Scalar::from_i64(field, n))
    }

    pub fn var(field: Field, v: Var) -> Self {
        Poly::term(Monomial::var(v, 1), Scalar::one(field))
    }

    /// Single term `coeff * mono`.
    ///
    /// # Panics
    /// If an ordinary polynomial receives a negative exponent, or a Laurent
    /// polynomial a negative exponent outside `X`.
    pub fn term(mono: Monomial, coeff: Scalar) -> Self {
        Self::check_support(&mono).expect("monomial outside polynomial support");
        let mut p = Poly::zero(coeff.field());
        p.add_term(mono, coeff);
        p
    }

    pub fn from_terms<I>(field: Field, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut p = Poly::zero(field);
        for (m, c) in terms {
            Self::check_support(&m)?;
            if c.field() != field {
                return Err(AlgebraError::FieldMismatch(field, c.field()));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    fn check_support(m: &Monomial) -> Result<(), AlgebraError> {
        for v in Var::ALL {
            if m.exp(v) < 0 && !(S::LAURENT && v == Var::X) {
                return Err(AlgebraError::NegativeExponent(v));
            }
        }
        Ok(())
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_one() && c.is_one())
                .unwrap_or(false)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Scalar {
        self.terms
            .get(mono)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(self.field))
    }

    /// The constant term.
    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Monomial::one())
    }

    fn check_field(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.field != other.field {
            return Err(AlgebraError::FieldMismatch(self.field, other.field));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_field(other)?;
        let mut out = Poly::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if S::LAURENT {
                    assert!(
                        m.exp(Var::X).abs() <= MAX_LAURENT_EXPONENT,
                        "x-exponent {} exceeds the Laurent guard",
                        m.exp(Var::X)
                    );
                }
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Poly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (*m, c.neg())).collect(),
            kind: PhantomData,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        if s.is_zero() {
            return Poly::zero(self.field);
        }
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (*m, c.clone() * s))
                .collect(),
            kind: PhantomData,
        }
    }

    /// Multiplies by `coeff * mono`.
    pub fn mul_term(&self, mono: &Monomial, coeff: &Scalar) -> Self {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let nm = m.mul(mono);
            Self::check_support(&nm).expect("monomial outside polynomial support");
            out.add_term(nm, c.clone() * coeff);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one(self.field);
        let mut base = self.clone();
        let mut k = n;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn degree_in(&self, v: Var) -> Degree {
        self.terms
            .keys()
            .map(|m| m.exp(v))
            .max()
            .map(Degree::Finite)
            .unwrap_or(Degree::NegInfinity)
    }

    /// Lowest exponent of `v`, `None` for zero.
    pub fn min_degree_in(&self, v: Var) -> Option<i32> {
        self.terms.keys().map(|m| m.exp(v)).min()
    }

    /// Whether only the listed variables occur.
    pub fn uses_only(&self, vars: &[Var]) -> bool {
        self.terms
            .keys()
            .all(|m| Var::ALL.iter().all(|v| vars.contains(v) || m.exp(*v) == 0))
    }

    /// Coefficient of `v^k`, as a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, k: i32) -> Self {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            if m.exp(v) == k {
                out.add_term(m.with(v, 0), c.clone());
            }
        }
        out
    }

    /// Keeps the terms satisfying `pred`.
    pub fn filter_terms(&self, mut pred: impl FnMut(&Monomial) -> bool) -> Self {
        Poly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
            kind: PhantomData,
        }
    }

    /// Sets `v` to the scalar `value`.
    pub fn eval_var(&self, v: Var, value: &Scalar) -> Self {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let factor = value.pow(e as i64).expect("negative power of zero");
            out.add_term(m.with(v, 0), c.clone() * &factor);
        }
        out
    }

    /// Permutes variable slots according to `pairs` (`from -> to`); other slots are kept.
    pub fn rename(&self, pairs: &[(Var, Var)]) -> Self {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let mut nm = *m;
            for (from, _) in pairs {
                nm.0[from.index()] = 0;
            }
            for (from, to) in pairs {
                nm.0[to.index()] += m.exp(*from);
            }
            Self::check_support(&nm).expect("rename moved a negative exponent");
            out.add_term(nm, c.clone());
        }
        out
    }

    pub fn display_with<'a>(&'a self, symbols: &'a crate::parse::SymbolTable) -> PolyDisplay<'a, S> {
        PolyDisplay { poly: self, symbols }
    }
}

impl MultiPoly {
    pub fn to_laurent(&self) -> LaurentPoly {
        Poly {
            field: self.field,
            terms: self.terms.clone(),
            kind: PhantomData,
        }
    }

    /// Exact division by `v^n`; fails when some term has lower `v`-degree.
    pub fn div_var_pow(&self, v: Var, n: i32) -> Result<MultiPoly, AlgebraError> {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            if m.exp(v) < n {
                return Err(AlgebraError::NotDivisible { var: v, power: n });
            }
            out.add_term(m.with(v, m.exp(v) - n), c.clone());
        }
        Ok(out)
    }

    /// Coefficient-wise derivative in `v`.
    pub fn formal_derivative(&self, v: Var) -> MultiPoly {
        let mut out = Poly::zero(self.field);
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(
                    m.with(v, e - 1),
                    c.clone() * &Scalar::from_i64(self.field, e as i64),
                );
            }
        }
        out
    }

    /// Evaluates at a point given for every variable.
    pub fn evaluate(&self, point: &[Scalar; NVARS]) -> Scalar {
        let mut acc = Scalar::zero(self.field);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exp(v);
                if e > 0 {
                    t = t * &point[v.index()].pow(e as i64).expect("nonnegative power");
                }
            }
            acc += &t;
        }
        acc
    }

    /// Composition: each assigned variable is replaced by its image, unassigned
    /// variables are left in place.
    pub fn substitute<S2: Support>(&self, assignment: &[(Var, &Poly<S2>)]) -> Poly<S2> {
        let mut images: [Option<&Poly<S2>>; NVARS] = [None; NVARS];
        for (v, img) in assignment {
            images[v.index()] = Some(*img);
        }
        let vars: Vec<Var> = Var::ALL.into_iter().rev().filter(|v| images[v.index()].is_some()).collect();
        let terms: Vec<(Monomial, Scalar)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let mut powers: Vec<Vec<Poly<S2>>> = vec![Vec::new(); NVARS];
        horner(self.field, terms, &vars, &images, &mut powers)
    }

    /// Multivariate division: `self = sum(q_i * d_i) + r` with no term of `r`
    /// divisible by any leading term.
    pub fn divide(
        &self,
        divisors: &[MultiPoly],
        order: &MonomialOrder,
    ) -> (Vec<MultiPoly>, MultiPoly) {
        assert!(divisors.iter().all(|d| !d.is_zero()), "zero divisor");
        let leads: Vec<(Monomial, Scalar)> = divisors
            .iter()
            .map(|d| {
                let (m, c) = d.leading_term(order).expect("nonzero divisor");
                (m, c.inv().expect("nonzero leading coefficient"))
            })
            .collect();
        let mut quotients = vec![MultiPoly::zero(self.field); divisors.len()];
        let mut remainder = MultiPoly::zero(self.field);
        let mut rest = self.clone();
        while let Some((lm, lc)) = rest.leading_term(order) {
            let mut reduced = false;
            for (i, (dm, dinv)) in leads.iter().enumerate() {
                if dm.divides(&lm) {
                    let qm = lm.div(dm);
                    let qc = lc.clone() * dinv;
                    quotients[i].add_term(qm, qc.clone());
                    rest = &rest - &divisors[i].mul_term(&qm, &qc);
                    reduced = true;
                    break;
                }
            }
            if !reduced {
                remainder.add_term(lm, lc.clone());
                rest.terms.remove(&lm);
            }
        }
        (quotients, remainder)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(Monomial, Scalar)> {
        self.terms
            .iter()
            .max_by(|a, b| order.key(a.0).cmp(&order.key(b.0)))
            .map(|(m, c)| (*m, c.clone()))
    }
}

impl LaurentPoly {
    /// Minimum `X`-exponent over all terms.
    pub fn ord_x(&self) -> Option<i32> {
        self.min_degree_in(Var::X)
    }

    /// Maximum `Z`-exponent over all terms.
    pub fn top_z(&self) -> Option<i32> {
        self.degree_in(Var::Z).finite()
    }

    /// Terms with `X`-exponent exactly `k`.
    pub fn x_slice(&self, k: i32) -> LaurentPoly {
        self.filter_terms(|m| m.exp(Var::X) == k)
    }

    /// Terms with `Z`-exponent exactly `k`.
    pub fn z_slice(&self, k: i32) -> LaurentPoly {
        self.filter_terms(|m| m.exp(Var::Z) == k)
    }

    pub fn try_to_ordinary(&self) -> Result<MultiPoly, AlgebraError> {
        MultiPoly::from_terms(self.field, self.terms.iter().map(|(m, c)| (*m, c.clone())))
    }

    /// Multiplies by `X^k` for any integer `k`.
    pub fn shift_x(&self, k: i32) -> LaurentPoly {
        self.mul_term(&Monomial::var(Var::X, k), &Scalar::one(self.field))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<S: Support> std::ops::$tr<&Poly<S>> for &Poly<S> {
            type Output = Poly<S>;
            fn $method(self, rhs: &Poly<S>) -> Poly<S> {
                self.$inner(rhs).expect("polynomial field mismatch")
            }
        }
        impl<S: Support> std::ops::$tr<Poly<S>> for Poly<S> {
            type Output = Poly<S>;
            fn $method(self, rhs: Poly<S>) -> Poly<S> {
                self.$inner(&rhs).expect("polynomial field mismatch")
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl<S: Support> std::ops::Neg for &Poly<S> {
    type Output = Poly<S>;
    fn neg(self) -> Poly<S> {
        Poly::neg(self)
    }
}

/// Nested Horner evaluation, one substituted variable at a time.
fn horner<S2: Support>(
    field: Field,
    terms: Vec<(Monomial, Scalar)>,
    vars: &[Var],
    images: &[Option<&Poly<S2>>; NVARS],
    powers: &mut Vec<Vec<Poly<S2>>>,
) -> Poly<S2> {
    let Some((&v, rest)) = vars.split_first() else {
        let mut out = Poly::<S2>::zero(field);
        for (m, c) in terms {
            out.add_term(m, c);
        }
        return out;
    };
    let mut groups: BTreeMap<i32, Vec<(Monomial, Scalar)>> = BTreeMap::new();
    for (mut m, c) in terms {
        let e = m.exp(v);
        m.0[v.index()] = 0;
        groups.entry(e).or_default().push((m, c));
    }
    let img = images[v.index()].expect("assigned variable");
    let power = |k: i32, powers: &mut Vec<Vec<Poly<S2>>>| -> Poly<S2> {
        let table = &mut powers[v.index()];
        if table.is_empty() {
            table.push(Poly::one(field));
        }
        while table.len() <= k as usize {
            let next = table.last().unwrap() * img;
            table.push(next);
        }
        table[k as usize].clone()
    };
    let mut acc: Option<Poly<S2>> = None;
    let mut prev = 0;
    for (e, group) in groups.into_iter().rev() {
        let inner = horner(field, group, rest, images, powers);
        acc = Some(match acc {
            None => inner,
            Some(a) => &a * &power(prev - e, powers) + inner,
        });
        prev = e;
    }
    match acc {
        None => Poly::zero(field),
        Some(a) if prev == 0 => a,
        Some(a) => &a * &power(prev, powers),
    }
}

pub struct PolyDisplay<'a, S: Support> {
    poly: &'a Poly<S>,
    symbols: &'a crate::parse::SymbolTable,
}

impl<S: Support> fmt::Display for PolyDisplay<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.poly.terms.iter().rev().enumerate() {
            let negative = c.is_negative_repr();
            let magnitude = if negative { c.neg() } else { c.clone() };
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !magnitude.is_one() || m.is_one() {
                factors.push(magnitude.to_string());
            }
            for v in Var::ALL {
                let e = m.exp(v);
                let name = self.symbols.print_name(v);
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<S: Support> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(crate::parse::SymbolTable::standard_ref()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn q(s: &str) -> MultiPoly {
        parse_poly(s, Field::Q).unwrap()
    }

    #[test]
    fn add_and_mul() {
        assert_eq!(&q("Z^2 - 1") + &q("1"), q("Z^2"));
        assert_eq!(&q("Z - 1") * &q("Z + 1"), q("Z^2 - 1"));
        let f2 = Field::Fp(2);
        let p = parse_poly("Z + 1", f2).unwrap();
        assert_eq!(&p * &p, parse_poly("Z^2 + 1", f2).unwrap());
    }

    #[test]
    fn mixed_fields_error() {
        let a = q("Z");
        let b = parse_poly("Z", Field::Fp(3)).unwrap();
        assert!(matches!(a.try_add(&b), Err(AlgebraError::FieldMismatch(..))));
        assert!(matches!(a.try_mul(&b), Err(AlgebraError::FieldMismatch(..))));
    }

    #[test]
    fn degrees() {
        assert_eq!(q("Z^2 - 1").degree_in(Var::Z), Degree::Finite(2));
        assert_eq!(q("Y^2 + Z").degree_in(Var::Y), Degree::Finite(2));
        assert_eq!(q("7").degree_in(Var::Z), Degree::Finite(0));
        assert_eq!(q("0").degree_in(Var::Z), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(0));
    }

    #[test]
    fn derivative() {
        assert_eq!(q("Z^2 - 1").formal_derivative(Var::Z), q("2*Z"));
        assert_eq!(q("Y^2 + Z").formal_derivative(Var::Y), q("2*Y"));
        let f2 = Field::Fp(2);
        assert!(parse_poly("Z^2", f2).unwrap().formal_derivative(Var::Z).is_zero());
    }

    #[test]
    fn identity_substitution() {
        let p = q("Z^2 - 1");
        let img = q("Z");
        assert_eq!(p.substitute(&[(Var::Z, &img)]), p);
    }

    #[test]
    fn division_single_divisor() {
        let (qs, r) = q("Z^2").divide(&[q("Z^2 - 1")], &MonomialOrder::fiber());
        assert_eq!(qs[0], q("1"));
        assert_eq!(r, q("1"));
    }

    #[test]
    fn exact_var_division() {
        assert_eq!(q("X^3*Z + X^2").div_var_pow(Var::X, 2).unwrap(), q("X*Z + 1"));
        assert!(q("X^3*Z + X").div_var_pow(Var::X, 2).is_err());
    }

    #[test]
    fn laurent_slices() {
        let y = q("Z^2 - 1").to_laurent().shift_x(-1);
        assert_eq!(y.ord_x(), Some(-1));
        assert_eq!(y.top_z(), Some(2));
        assert_eq!(y.z_slice(2), q("Z^2").to_laurent().shift_x(-1));
        assert!(y.try_to_ordinary().is_err());
    }

    #[test]
    #[should_panic(expected = "Laurent guard")]
    fn laurent_guard_trips() {
        let big = LaurentPoly::term(Monomial::var(Var::X, -700_000), Scalar::one(Field::Q));
        let _ = &big * &big;
    }
}
