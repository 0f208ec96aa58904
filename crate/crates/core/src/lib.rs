//! Exact computation with double Poisson extensions of polynomial Poisson
//! algebras, left double (Ore) extensions and their semiclassical limits.

pub mod error;
pub mod scalar;
pub mod poly;
pub mod pbracket;
pub mod dpe;
pub mod ncalg;
pub mod scl;
pub mod format;

pub use dpe::{build_extension, check_dedata, detect_iterated, normalize_dedata, DEData, IteratedForm};
pub use error::{Error, Result};
pub use format::Document;
pub use ncalg::{confluence_check, normal_form, NCPresentation};
pub use pbracket::PoissonStructure;
pub use poly::{Derivation, Poly, PolyRing};
pub use scalar::{RatFunc, Rational, Scalar};
pub use scl::{crosscheck_limit, deform, semiclassical_limit, validate_family, ParamFamily};
