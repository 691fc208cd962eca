//! Exact algebra on the surfaces `X^d Y = P(X,Z)`, `X^e T = Q(X,Y,Z)`: a
//! sparse polynomial kernel, canonical equality through the Laurent
//! embedding, exponential maps, graded data, isomorphisms and cancellation
//! certificates.

pub mod error;
pub mod expmap;
pub mod graded;
pub mod linalg;
pub mod morphism;
pub mod parse;
pub mod poly;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod stable;
pub mod surface;
pub mod univariate;

pub use error::{AlgebraError, SurfaceError};
pub use parse::{parse_poly, poly_parse, SymbolTable};
pub use poly::{Degree, LaurentPoly, Monomial, MonomialOrder, MultiPoly, Var};
pub use scalar::{Field, Scalar};
pub use surface::{surface_new, Surface, SurfaceElement, SurfaceExt, SurfaceSpec};
