use crate::error::Result;
use crate::groebner::Ideal;
use crate::scalars::{FieldConfig, Rat, ValuedField};

/// Checks for one emitted point or ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCheck {
    /// Every generator attains its minimum twice.
    pub in_prevariety: bool,
    /// The initial ideal is monomial free; `None` when the input does not
    /// allow the computation.
    pub in_tropical_variety: Option<bool>,
}

impl PointCheck {
    pub fn passed(&self) -> bool {
        self.in_prevariety && self.in_tropical_variety != Some(false)
    }
}

/// True if membership in the tropical variety can be decided exactly:
/// homogeneous generators with constant coefficients over Puiseux series.
pub fn supports_initial_ideals<F: ValuedField>(ideal: &Ideal<F>) -> bool {
    ideal.field().config() == FieldConfig::Puiseux && ideal.gens().iter().all(|g| g.is_homogeneous() && g.has_unit_coefficients())
}

pub fn verify_output<F: ValuedField>(ideal: &Ideal<F>, points: &[Vec<Rat>]) -> Result<Vec<PointCheck>> {
    let full = supports_initial_ideals(ideal);
    points
        .iter()
        .map(|w| {
            Ok(PointCheck {
                in_prevariety: ideal.in_prevariety(w)?,
                in_tropical_variety: if full { Some(ideal.is_in_tropical_variety(w)?) } else { None },
            })
        })
        .collect()
}
