//! Differential forms and vector fields on coordinate charts.

mod form;
mod vector;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::polyring::Var;

pub use form::{Blade, DifferentialForm};

pub(crate) use form::full_mask;
pub use vector::VectorField;

/// Largest supported chart dimension (blades are stored as `u32` masks).
pub const MAX_DIM: usize = 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExteriorError {
    #[error("operands live on different charts (`{0}` and `{1}`)")]
    ChartMismatch(String, String),
    #[error("wedge of degrees {0} and {1} exceeds chart dimension {2}")]
    DegreeOverflow(usize, usize, usize),
    #[error("interior product of a 0-form")]
    InteriorOfFunction,
    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("coordinate `{coordinate}` of chart `{from}` is not a coordinate of `{to}`")]
    CoordinateMismatch {
        coordinate: String,
        from: String,
        to: String,
    },
    #[error("`{0}` is not a coordinate of chart `{1}`")]
    UnknownCoordinate(String, String),
    #[error("repeated index `{0}` in a form component")]
    RepeatedIndex(String),
    #[error("chart `{0}` has {1} coordinates; at most {max} are supported", max = MAX_DIM)]
    ChartTooLarge(String, usize),
    #[error("chart `{0}` lists coordinate `{1}` twice")]
    DuplicateCoordinate(String, String),
}

/// A named coordinate chart; the listed coordinate order fixes the
/// orientation.
#[derive(PartialEq, Eq, Hash)]
pub struct Chart {
    name: String,
    coordinates: Vec<Var>,
}

pub type ChartRef = Arc<Chart>;

impl Chart {
    pub fn new(name: &str, coordinates: &[&str]) -> Result<ChartRef, ExteriorError> {
        Chart::from_vars(name, coordinates.iter().map(|c| Var::new(c)).collect())
    }

    pub fn from_vars(name: &str, coordinates: Vec<Var>) -> Result<ChartRef, ExteriorError> {
        if coordinates.len() > MAX_DIM {
            return Err(ExteriorError::ChartTooLarge(name.into(), coordinates.len()));
        }
        for (i, c) in coordinates.iter().enumerate() {
            if coordinates[..i].contains(c) {
                return Err(ExteriorError::DuplicateCoordinate(
                    name.into(),
                    c.to_string(),
                ));
            }
        }
        Ok(Arc::new(Chart {
            name: name.to_string(),
            coordinates,
        }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[Var] {
        &self.coordinates
    }

    pub fn coordinate(&self, i: usize) -> &Var {
        &self.coordinates[i]
    }

    pub fn index_of(&self, v: &Var) -> Option<usize> {
        self.coordinates.iter().position(|c| c == v)
    }

    pub fn index_of_name(&self, name: &str) -> Result<usize, ExteriorError> {
        self.coordinates
            .iter()
            .position(|c| c.name() == name)
            .ok_or_else(|| ExteriorError::UnknownCoordinate(name.into(), self.name.clone()))
    }

    /// Positions of `sub`'s coordinates inside `self`.
    pub fn embedding_of(&self, sub: &Chart) -> Result<Vec<usize>, ExteriorError> {
        sub.coordinates
            .iter()
            .map(|c| {
                self.index_of(c)
                    .ok_or_else(|| ExteriorError::CoordinateMismatch {
                        coordinate: c.to_string(),
                        from: sub.name.clone(),
                        to: self.name.clone(),
                    })
            })
            .collect()
    }

    /// Bitmask of the coordinates of `sub` inside `self`.
    pub fn mask_of(&self, sub: &Chart) -> Result<u32, ExteriorError> {
        Ok(self
            .embedding_of(sub)?
            .into_iter()
            .fold(0u32, |m, i| m | (1 << i)))
    }
}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chart({}: {:?})", self.name, self.coordinates)
    }
}

pub(crate) fn same_chart(a: &ChartRef, b: &ChartRef) -> Result<(), ExteriorError> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(ExteriorError::ChartMismatch(a.name.clone(), b.name.clone()))
    }
}
