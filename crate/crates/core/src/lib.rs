//! NG-Fisk lifetime modelling.
//!
//! The distribution layer ([`family`], [`ngfisk`], [`competitors`],
//! [`quadrature`], [`selection`]) is generic over [`Scalar`] and works with
//! `f32` or `f64`; fitting and Monte Carlo studies run in `f64`.

pub mod competitors;
pub mod dataset;
pub mod distribution;
pub mod error;
pub mod estimation;
pub mod family;
pub mod ngfisk;
pub mod quadrature;
pub mod scalar;
pub mod selection;
pub mod simstudy;

pub use distribution::LifetimeDistribution;
pub use error::{Error, Result};
pub use family::{Baseline, Fisk, NgxFamily, NgxParams};
pub use ngfisk::{EffectiveBurrParams, Moment, NgFiskParams, Reliability};
pub use scalar::Scalar;

pub type NgFisk64 = NgFiskParams<f64>;
pub type NgFisk32 = NgFiskParams<f32>;
pub type FiskNgx64 = NgxFamily<Fisk<f64>, f64>;
pub type FiskNgx32 = NgxFamily<Fisk<f32>, f32>;
