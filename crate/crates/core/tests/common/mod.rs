//! Independent oracles: arithmetic modulo a prime with plain `u64`, point
//! evaluation on the surface and bounded-degree ideal membership by linear
//! algebra. Nothing here goes through the crate's normal forms or Laurent
//! machinery.
#![allow(dead_code)]

use danielewski::poly::{Poly, Support};
use danielewski::{Field, MultiPoly, Scalar, SurfaceSpec, Var};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

/// Prime used when the surface lives over `Q`.
pub const BIG_PRIME: u64 = 1_000_003;

pub fn modulus(field: Field) -> u64 {
    match field {
        Field::Q => BIG_PRIME,
        Field::Fp(p) => p,
    }
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow(mut a: u64, mut n: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while n > 0 {
        if n & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        n >>= 1;
    }
    acc
}

pub fn inv(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero");
    pow(a, p - 2, p)
}

fn big_mod(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r < BigInt::zero() { r + BigInt::from(p) } else { r };
    r.to_u64().unwrap()
}

/// Reduction of a scalar modulo `p`; `None` if the denominator vanishes.
pub fn reduce(s: &Scalar, p: u64) -> Option<u64> {
    let (n, d) = s.as_ratio();
    let d = big_mod(&d, p);
    (d != 0).then(|| mul(big_mod(&n, p), inv(d, p), p))
}

/// Evaluates a polynomial (negative exponents allowed) at `point`, indexed by `Var`.
pub fn eval<S: Support>(poly: &Poly<S>, point: &[u64; 7], p: u64) -> u64 {
    let mut acc = 0;
    for (m, c) in poly.terms() {
        let mut t = reduce(c, p).expect("coefficient reduces mod p");
        for v in Var::ALL {
            let e = m.exp(v);
            let base = point[v.index()];
            let f = if e >= 0 { pow(base, e as u64, p) } else { pow(inv(base, p), (-e) as u64, p) };
            t = mul(t, f, p);
        }
        acc = (acc + t) % p;
    }
    acc
}

/// A point of the surface with `x != 0`: `x, z` random, then `y = P/x^d` and
/// `t = Q/x^e`. `W, U, V` are random as well.
pub fn surface_point<R: Rng>(spec: &SurfaceSpec, rng: &mut R) -> [u64; 7] {
    let p = modulus(spec.field());
    let mut pt = [0u64; 7];
    for v in Var::ALL {
        pt[v.index()] = rng.gen_range(0..p);
    }
    pt[Var::X.index()] = rng.gen_range(1..p);
    let x = pt[Var::X.index()];
    let y = mul(eval(spec.p(), &pt, p), inv(pow(x, spec.d() as u64, p), p), p);
    pt[Var::Y.index()] = y;
    let t = mul(eval(spec.q(), &pt, p), inv(pow(x, spec.e() as u64, p), p), p);
    pt[Var::T.index()] = t;
    pt
}

/// `a` and `b` agree at `n` random points of the surface.
pub fn agree_on_surface<R: Rng, S1: Support, S2: Support>(
    spec: &SurfaceSpec,
    a: &Poly<S1>,
    b: &Poly<S2>,
    n: usize,
    rng: &mut R,
) -> bool {
    let p = modulus(spec.field());
    (0..n).all(|_| {
        let pt = surface_point(spec, rng);
        eval(a, &pt, p) == eval(b, &pt, p)
    })
}

/// Gaussian elimination modulo `p`: is `A x = b` consistent?
pub fn consistent(mut rows: Vec<Vec<u64>>, p: u64) -> bool {
    let cols = rows.first().map_or(0, |r| r.len() - 1);
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let iv = inv(rows[rank][col], p);
        for c in col..=cols {
            rows[rank][c] = mul(rows[rank][c], iv, p);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][col] != 0 {
                let f = rows[r][col];
                for c in col..=cols {
                    let s = mul(f, rows[rank][c], p);
                    rows[r][c] = (rows[r][c] + p - s) % p;
                }
            }
        }
        rank += 1;
    }
    rows[rank..].iter().all(|r| r[cols] == 0)
}

fn monomials_up_to(vars: &[Var], deg: i32) -> Vec<[i32; 7]> {
    let mut out = vec![[0i32; 7]];
    for &v in vars {
        let mut next = Vec::new();
        for m in &out {
            let used: i32 = m.iter().sum();
            for e in 0..=deg - used {
                let mut m2 = *m;
                m2[v.index()] = e;
                next.push(m2);
            }
        }
        out = next;
    }
    out
}

/// Is `f` in the ideal generated by `gens`, with cofactors of total degree at
/// most `deg` in `vars`? Solved modulo the field's characteristic (or a large
/// prime over `Q`).
pub fn in_ideal(f: &MultiPoly, gens: &[MultiPoly], vars: &[Var], deg: i32) -> bool {
    let p = modulus(f.field());
    let cofactor_monos = monomials_up_to(vars, deg);
    let mut columns: Vec<Vec<([i32; 7], u64)>> = Vec::new();
    for g in gens {
        for m in &cofactor_monos {
            let col = g
                .terms()
                .map(|(gm, c)| {
                    let mut e = gm.0;
                    for i in 0..7 {
                        e[i] += m[i];
                    }
                    (e, reduce(c, p).unwrap())
                })
                .collect();
            columns.push(col);
        }
    }
    let mut row_index = std::collections::BTreeMap::new();
    for col in &columns {
        for (e, _) in col {
            let n = row_index.len();
            row_index.entry(*e).or_insert(n);
        }
    }
    for (m, _) in f.terms() {
        let n = row_index.len();
        row_index.entry(m.0).or_insert(n);
    }
    let mut rows = vec![vec![0u64; columns.len() + 1]; row_index.len()];
    for (j, col) in columns.iter().enumerate() {
        for (e, c) in col {
            let r = row_index[e];
            rows[r][j] = (rows[r][j] + c) % p;
        }
    }
    for (m, c) in f.terms() {
        rows[row_index[&m.0]][columns.len()] = reduce(c, p).unwrap();
    }
    consistent(rows, p)
}
