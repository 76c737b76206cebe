pub mod correspondence;
pub mod error;
pub mod hopf;
pub mod qfield;
pub mod presentation;
pub mod rootdata;
pub mod superalg;

pub use error::{Error, Result};
pub use qfield::QScalar;
pub use rootdata::{Algebra, AmbientSpace, Basis, CartanData, DynkinDiagram, FundamentalSystem, RootVector};
