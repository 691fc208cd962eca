//! Dense univariate polynomials over a field: Euclid, Bézout cofactors and rational roots.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::AlgebraError;
use crate::poly::{Monomial, MultiPoly, Var};
use crate::scalar::{Field, Scalar};

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn new(field: Field, coeffs: Vec<Scalar>) -> Self {
        let mut p = UniPoly { field, coeffs };
        p.trim();
        p
    }

    pub fn zero(field: Field) -> Self {
        UniPoly { field, coeffs: Vec::new() }
    }

    /// Reads a polynomial that involves only `v`.
    pub fn from_multi(p: &MultiPoly, v: Var) -> Self {
        assert!(p.uses_only(&[v]), "polynomial is not univariate in {v}");
        let deg = p.degree_in(v).finite().unwrap_or(-1);
        let coeffs = (0..=deg)
            .map(|k| p.coeff(&Monomial::var(v, k)))
            .collect();
        UniPoly::new(p.field(), coeffs)
    }

    pub fn to_multi(&self, v: Var) -> MultiPoly {
        MultiPoly::from_terms(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| (Monomial::var(v, k as i32), c.clone())),
        )
        .expect("nonnegative exponents")
    }

    fn trim(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Scalar::zero(self.field);
        let coeffs = (0..n)
            .map(|i| {
                self.coeffs.get(i).unwrap_or(&zero).clone() + other.coeffs.get(i).unwrap_or(&zero)
            })
            .collect();
        UniPoly::new(self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&Scalar::from_i64(self.field, -1)))
    }

    pub fn scale(&self, s: &Scalar) -> UniPoly {
        UniPoly::new(self.field, self.coeffs.iter().map(|c| c.clone() * s).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut out = vec![Scalar::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + &(a.clone() * b);
            }
        }
        UniPoly::new(self.field, out)
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        let dl = divisor.lead().ok_or(AlgebraError::DivisionByZero)?.inv()?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((UniPoly::zero(self.field), self.clone()));
        }
        let mut quot = vec![Scalar::zero(self.field); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - &(c.clone() * dc);
            }
            quot[k] = c;
        }
        Ok((UniPoly::new(self.field, quot), UniPoly::new(self.field, rem)))
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            Some(l) => self.scale(&l.inv().expect("nonzero lead")),
            None => self.clone(),
        }
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic (or zero).
    pub fn extended_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let field = self.field;
        let one = UniPoly::new(field, vec![Scalar::one(field)]);
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (one.clone(), UniPoly::zero(field));
        let (mut t0, mut t1) = (UniPoly::zero(field), one);
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lead().cloned() {
            Some(l) => {
                let li = l.inv().expect("nonzero");
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
            None => (r0, s0, t0),
        }
    }

    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.extended_gcd(other).0
    }

    /// All rational roots, via the rational-root theorem on the integer
    /// primitive part. Only defined over `Q`.
    pub fn rational_roots(&self) -> Result<Vec<Scalar>, AlgebraError> {
        if self.field != Field::Q {
            return Err(AlgebraError::BadField(format!(
                "rational roots need Q, not {}",
                self.field
            )));
        }
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        // clear denominators
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.as_ratio().1));
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| {
                let (n, d) = c.as_ratio();
                n * (&lcm / d)
            })
            .collect();
        let mut roots = Vec::new();
        // strip the root 0
        if ints[0].is_zero() {
            roots.push(Scalar::zero(Field::Q));
            while ints[0].is_zero() {
                ints.remove(0);
            }
        }
        if ints.len() > 1 {
            let a0 = ints[0].abs();
            let an = ints.last().expect("nonempty").abs();
            for p in divisors(&a0)? {
                for q in divisors(&an)? {
                    if !p.gcd(&q).is_one() {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let cand =
                            Scalar::from_ratio(Field::Q, &(&p * BigInt::from(sign)), &q)?;
                        if self.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
        roots.sort_by(|a, b| {
            let (an, ad) = a.as_ratio();
            let (bn, bd) = b.as_ratio();
            (an * &bd).cmp(&(bn * &ad))
        });
        Ok(roots)
    }
}

const DIVISOR_SEARCH_LIMIT: u128 = 1 << 48;

fn divisors(n: &BigInt) -> Result<Vec<BigInt>, AlgebraError> {
    let n = n
        .to_u128()
        .filter(|v| *v <= DIVISOR_SEARCH_LIMIT)
        .ok_or_else(|| AlgebraError::RootSearchLimit(n.to_string()))?;
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i: u128 = 1;
    while i * i <= n {
        if n % i == 0 {
            small.push(BigInt::from(i));
            if i * i != n {
                large.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}
