//! Univariate and homogeneous bivariate polynomials over [`ExactNumber`],
//! the MacWilliams transform, and real/complex root tools.
//!
//! [`ExactNumber`]: crate::ExactNumber

mod homog;
mod macwilliams;
pub mod roots;
pub mod sturm;
mod unipoly;

pub use homog::{homog_combine, HomogPoly};
pub(crate) use macwilliams::{check_q, check_sqrt, transform_unscaled};
pub use macwilliams::{fwe_classify, macwilliams_apply, weight_profile, Duality, WeightProfile};
pub use unipoly::UniPoly;
