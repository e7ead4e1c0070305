use std::fmt;

use super::{PolyA, WittElem, WittError};

/// Element `X + f` of `W_n^+ ⋉ A_n^+`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TildeElem {
    pub vector_field: WittElem,
    pub function: PolyA,
}

impl TildeElem {
    pub fn zero(n: usize) -> Self {
        TildeElem {
            vector_field: WittElem::zero(n),
            function: PolyA::zero(n),
        }
    }

    pub fn from_field(x: WittElem) -> Self {
        let n = x.rank();
        TildeElem {
            vector_field: x,
            function: PolyA::zero(n),
        }
    }

    pub fn from_function(f: PolyA) -> Self {
        let n = f.rank();
        TildeElem {
            vector_field: WittElem::zero(n),
            function: f,
        }
    }

    pub fn rank(&self) -> usize {
        self.vector_field.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.vector_field.is_zero() && self.function.is_zero()
    }

    pub fn plus(&self, other: &TildeElem) -> TildeElem {
        TildeElem {
            vector_field: self.vector_field.plus(&other.vector_field),
            function: self.function.plus(&other.function),
        }
    }

    pub fn minus(&self, other: &TildeElem) -> TildeElem {
        TildeElem {
            vector_field: self.vector_field.minus(&other.vector_field),
            function: self.function.minus(&other.function),
        }
    }

    /// `[X + f, Y + g] = [X, Y] + X(g) - Y(f)`; functions commute.
    pub fn bracket(&self, other: &TildeElem) -> Result<TildeElem, WittError> {
        let vector_field = self.vector_field.bracket(&other.vector_field)?;
        let function = self
            .vector_field
            .apply(&other.function)?
            .minus(&other.vector_field.apply(&self.function)?);
        Ok(TildeElem {
            vector_field,
            function,
        })
    }
}

impl fmt::Display for TildeElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + [{}]", self.vector_field, self.function)
    }
}
