use bpvoa_exact::RatFunc;

use crate::combo::Combo;
use crate::weight::HalfInt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub weight: HalfInt,
    /// Position in the PBW order; equals the generator's index in its table.
    pub pbw_rank: usize,
}

/// `a_(index)` with the Borcherds index, i.e. the coefficient of `z^(-index-1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mode {
    pub gen: usize,
    pub index: i64,
}

impl Mode {
    pub fn new(gen: usize, index: i64) -> Self {
        Mode { gen, index }
    }
}

/// Creation modes in PBW order: ascending generator rank and, within one
/// generator, ascending (most negative first) index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct PbwMonomial(pub Vec<Mode>);

impl PbwMonomial {
    pub fn empty() -> Self {
        PbwMonomial(Vec::new())
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn modes(&self) -> &[Mode] {
        &self.0
    }

    pub fn rest(&self) -> PbwMonomial {
        PbwMonomial(self.0[1..].to_vec())
    }

    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

/// Vectors of the vacuum module or of a highest-weight module.
pub type State = Combo<PbwMonomial>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HwGround {
    /// Zero-mode eigenvalue for every generator, in table order.
    pub eigenvalues: Vec<RatFunc>,
    /// Creation modes also act by zero, giving a one-dimensional module.
    pub top_only: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Ground {
    Vacuum,
    HighestWeight(HwGround),
}
