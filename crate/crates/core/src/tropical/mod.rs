//! Points, finite tropical varieties and tropical links.

mod link;
mod start;
mod verify;
mod zerodim;

pub use link::{canonical_ray, tropical_link, LinkConfig, RaySet, SliceOutcome, SliceRecord};
pub use start::{starting_point, StartConfig, Witness};
pub use verify::{supports_initial_ideals, verify_output, PointCheck};
pub use zerodim::{zero_dim_point, zero_dim_variety, ChoiceTrace, LevelChoice, ZeroDimConfig, ZeroDimVariety};

use crate::scalars::Rat;

pub type TropicalPoint = Vec<Rat>;
