//! Points on tropical varieties and tropical links, computed through
//! triangular decomposition and Newton polygons over valued fields.

pub mod error;
pub mod groebner;
pub mod io;
pub mod linalg;
pub mod newton;
pub mod poly;
pub mod roots;
pub mod scalars;
pub mod triangular;
pub mod tropical;

pub use error::{Error, Result};
