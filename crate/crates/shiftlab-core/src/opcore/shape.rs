use std::fmt;

/// Shape of one of the spaces ℓ²(Z₊)⊗Cᵖ ⊕ Cᵠ: `p` shift strands plus a
/// finite tail of dimension `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceShape {
    pub p: usize,
    pub q: usize,
}

impl SpaceShape {
    pub fn new(p: usize, q: usize) -> Self {
        SpaceShape { p, q }
    }

    pub fn shift_only(p: usize) -> Self {
        SpaceShape { p, q: 0 }
    }

    pub fn tail_only(q: usize) -> Self {
        SpaceShape { p: 0, q }
    }

    pub fn is_trivial(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    /// Dimension of the truncation to `levels` shift levels plus the tail.
    pub fn window_dim(&self, levels: usize) -> usize {
        levels * self.p + self.q
    }
}

impl fmt::Display for SpaceShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l2({})(+)C({})", self.p, self.q)
    }
}

/// A single basis coordinate of a structured space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Coord {
    /// Level `level` of strand `strand` (level-major basis order).
    Shift { strand: usize, level: usize },
    /// Tail coordinate.
    Tail { index: usize },
}

impl Coord {
    pub fn shift(strand: usize, level: usize) -> Self {
        Coord::Shift { strand, level }
    }

    pub fn tail(index: usize) -> Self {
        Coord::Tail { index }
    }

    pub fn in_shape(&self, shape: &SpaceShape) -> bool {
        match *self {
            Coord::Shift { strand, .. } => strand < shape.p,
            Coord::Tail { index } => index < shape.q,
        }
    }

    /// Index in the window layout (levels level-major, tail appended).
    pub fn window_index(&self, shape: &SpaceShape, levels: usize) -> Option<usize> {
        match *self {
            Coord::Shift { strand, level } => {
                (strand < shape.p && level < levels).then(|| level * shape.p + strand)
            }
            Coord::Tail { index } => (index < shape.q).then(|| levels * shape.p + index),
        }
    }

    /// Inverse of [`Coord::window_index`].
    pub fn from_window_index(idx: usize, shape: &SpaceShape, levels: usize) -> Coord {
        let shift_dim = levels * shape.p;
        if idx < shift_dim {
            Coord::Shift {
                strand: idx % shape.p,
                level: idx / shape.p,
            }
        } else {
            Coord::Tail {
                index: idx - shift_dim,
            }
        }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::Shift { strand, level } => write!(f, "{strand}:{level}"),
            Coord::Tail { index } => write!(f, "t:{index}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_index_round_trip() {
        let shape = SpaceShape::new(2, 3);
        let levels = 4;
        for idx in 0..shape.window_dim(levels) {
            let c = Coord::from_window_index(idx, &shape, levels);
            assert_eq!(c.window_index(&shape, levels), Some(idx));
        }
        assert_eq!(Coord::shift(0, 4).window_index(&shape, levels), None);
    }
}
