//! The two filtrations: by `-ord_x` on `B` (graded ring `D`) and by top
//! `z`-degree on `D` (graded ring `C`). Leading forms are Laurent slices read in
//! the graded ring's own embedding.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::SurfaceError;
use crate::expmap::expmap_canonical;
use crate::poly::{LaurentPoly, Var};
use crate::report::Report;
use crate::sampling::{random_nonzero_expr, ExprShape};
use crate::surface::{canonical_expansion, Preference, Surface, SurfaceElement, SurfaceExt};

/// A homogeneous slice, viewed in `ring`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedElement {
    pub ring: Surface,
    pub degree: i32,
    pub slice: LaurentPoly,
}

impl GradedElement {
    /// The element of `ring` with this Laurent image.
    pub fn to_element(&self) -> Result<SurfaceElement, SurfaceError> {
        let expr = canonical_expansion(&self.ring, &self.slice, Preference::TFirst)?;
        Ok(self.ring.element(expr))
    }

    pub fn mul(&self, other: &GradedElement) -> GradedElement {
        GradedElement {
            ring: self.ring.clone(),
            degree: self.degree + other.degree,
            slice: &self.slice * &other.slice,
        }
    }

    pub fn pow(&self, n: u32) -> GradedElement {
        GradedElement {
            ring: self.ring.clone(),
            degree: self.degree * n as i32,
            slice: self.slice.pow(n),
        }
    }
}

/// Least `n` with `el` in `B_n`, that is `-ord_x` of the Laurent image.
pub fn filt_degree_b(el: &SurfaceElement) -> Result<i32, SurfaceError> {
    el.laurent().ord_x().map(|o| -o).ok_or(SurfaceError::ZeroElement)
}

/// Leading form in `gr(B) = D`.
pub fn rho_b(el: &SurfaceElement) -> Result<GradedElement, SurfaceError> {
    let ord = el.laurent().ord_x().ok_or(SurfaceError::ZeroElement)?;
    Ok(GradedElement {
        ring: el.spec().graded(),
        degree: -ord,
        slice: el.laurent().x_slice(ord),
    })
}

/// Top `z`-degree of an element of `D`.
pub fn filt_degree_d(el: &SurfaceElement) -> Result<i32, SurfaceError> {
    if el.is_zero() {
        return Err(SurfaceError::ZeroElement);
    }
    Ok(el.laurent().top_z().unwrap_or(0))
}

/// Leading form in `gr(D) = C`.
pub fn rho_d(el: &SurfaceElement) -> Result<GradedElement, SurfaceError> {
    let top = filt_degree_d(el)?;
    Ok(GradedElement {
        ring: el.spec().bigraded(),
        degree: top,
        slice: el.laurent().z_slice(top),
    })
}

/// Number of random pairs used for the multiplicativity check.
pub const MULTIPLICATIVITY_SAMPLES: usize = 100;

/// Checks the relations of `D` on `rho_b` of the generators, those of `C` on
/// `rho_d`, multiplicativity on random pairs and the canonical maps on `D`, `C`.
pub fn verify_graded_relations(spec: &Surface, seed: u64) -> Report {
    let mut report = Report::new(format!("graded relations for {spec}"));
    let d_ring = spec.graded();
    let c_ring = spec.bigraded();
    let (d, e, r, s) = spec.tuple();
    let field = spec.field();

    let rho = |v: Var| rho_b(&spec.gen(v)).expect("generators are nonzero");
    let (rx, ry, rz, rt) = (rho(Var::X), rho(Var::Y), rho(Var::Z), rho(Var::T));
    for (name, g, v) in [("x", &rx, Var::X), ("y", &ry, Var::Y), ("z", &rz, Var::Z), ("t", &rt, Var::T)] {
        let target = d_ring.gen(v);
        report.check(format!("rho_B({name}) is the generator of D"), g.slice == *target.laurent(), || {
            format!("slice {}", g.slice)
        });
    }
    let p0_img = d_ring.element(spec.p0().clone());
    let lhs = rx.pow(d).mul(&ry);
    report.check("D: x^d y = P(0,z)", lhs.slice == *p0_img.laurent(), || {
        format!("{} vs {}", lhs.slice, p0_img.laurent())
    });
    let lhs = rx.pow(e).mul(&rt);
    let rhs = ry.pow(s);
    report.check("D: x^e t = y^s", lhs.slice == rhs.slice, || format!("{} vs {}", lhs.slice, rhs.slice));
    report.check(
        "degrees in B",
        (rx.degree, ry.degree, rz.degree, rt.degree) == (-1, d as i32, 0, (d * s + e) as i32),
        || format!("got {:?}", (rx.degree, ry.degree, rz.degree, rt.degree)),
    );

    let rho2 = |v: Var| rho_d(&d_ring.gen(v)).expect("generators are nonzero");
    let (bx, by, bz, bt) = (rho2(Var::X), rho2(Var::Y), rho2(Var::Z), rho2(Var::T));
    for (name, g, v) in [("x", &bx, Var::X), ("y", &by, Var::Y), ("z", &bz, Var::Z), ("t", &bt, Var::T)] {
        let target = c_ring.gen(v);
        report.check(format!("rho_D({name}) is the generator of C"), g.slice == *target.laurent(), || {
            format!("slice {}", g.slice)
        });
    }
    let lhs = bx.pow(d).mul(&by);
    let rhs = bz.pow(r);
    report.check("C: x^d y = z^r", lhs.slice == rhs.slice, || format!("{} vs {}", lhs.slice, rhs.slice));
    let lhs = bx.pow(e).mul(&bt);
    let rhs = by.pow(s);
    report.check("C: x^e t = y^s", lhs.slice == rhs.slice, || format!("{} vs {}", lhs.slice, rhs.slice));
    report.check(
        "degrees in D",
        (bx.degree, by.degree, bz.degree, bt.degree) == (0, r as i32, 1, (r * s) as i32),
        || format!("got {:?}", (bx.degree, by.degree, bz.degree, bt.degree)),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = ExprShape::surface(4, 2);
    let mut bad: Option<String> = None;
    for _ in 0..MULTIPLICATIVITY_SAMPLES {
        let a = spec.element(random_nonzero_expr(&mut rng, field, &shape));
        let b = spec.element(random_nonzero_expr(&mut rng, field, &shape));
        if a.is_zero() || b.is_zero() {
            continue;
        }
        if let Some(msg) = multiplicativity_failure(&a, &b) {
            bad = Some(msg);
            break;
        }
    }
    report.check("rho_B multiplicative on random pairs", bad.is_none(), || bad.clone().unwrap_or_default());

    for (name, ring) in [("D", &d_ring), ("C", &c_ring)] {
        match expmap_canonical(ring) {
            Ok(_) => report.pass(format!("canonical map on {name}")),
            Err(err) => report.fail(format!("canonical map on {name}"), err.to_string()),
        }
    }
    report
}

/// `None` when `rho(ab) = rho(a) rho(b)` and the `B`-degrees add; a description otherwise.
pub fn multiplicativity_failure(a: &SurfaceElement, b: &SurfaceElement) -> Option<String> {
    let ab = a * b;
    let (ra, rb, rab) = (rho_b(a).ok()?, rho_b(b).ok()?, rho_b(&ab).ok()?);
    let prod = ra.mul(&rb);
    if prod != rab {
        return Some(format!("a = {a}, b = {b}: rho(ab) = {}, rho(a)rho(b) = {}", rab.slice, prod.slice));
    }
    None
}
