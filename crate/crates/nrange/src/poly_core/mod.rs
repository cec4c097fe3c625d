//! Exact polynomial arithmetic over the rationals.

pub mod bivariate;
pub mod hompoly3;
pub mod interp;
pub mod linear;
pub(crate) mod modular;
pub mod rational;
pub mod resultant;
pub mod roots;
pub mod univariate;

pub use bivariate::BiPoly;
pub use hompoly3::HomPoly3;
pub use rational::Q;
pub use roots::{real_roots, RootInterval, RootIsolation};
pub use univariate::UniPoly;
