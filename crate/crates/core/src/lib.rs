//! Uniform inference on value functions of the form
//! `psi(f)(x) = sup_{u in A(x)} f(u, x)`, with Makarov bounds on the
//! distribution of treatment effects as the main application.

pub mod bootstrap;
pub mod cli;
pub mod derivative;
pub mod empirical;
pub mod error;
pub mod inference;
pub mod io;
pub mod makarov;
pub mod rng;
pub mod simulate;
pub mod stats;
pub mod valuemap;

pub use error::{Error, Result};
