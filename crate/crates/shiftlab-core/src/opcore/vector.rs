use std::collections::BTreeMap;

use crate::exactnum::{FinVector, Mode, Scalar};

use super::shape::{Coord, SpaceShape};

/// Finitely supported vector in ℓ²⊗Cᵖ ⊕ Cᵠ. Shift entries are stored
/// sparsely keyed (level, strand) so iteration follows the level-major
/// basis order; the tail is dense.
#[derive(Debug, Clone, PartialEq)]
pub struct FinSupportVector {
    shape: SpaceShape,
    shift: BTreeMap<(usize, usize), Scalar>,
    tail: FinVector,
}

impl FinSupportVector {
    pub fn zero(shape: SpaceShape) -> Self {
        FinSupportVector {
            shape,
            shift: BTreeMap::new(),
            tail: FinVector::zeros(shape.q),
        }
    }

    pub fn basis(shape: SpaceShape, coord: Coord) -> Self {
        let mut v = Self::zero(shape);
        v.set(coord, Scalar::one());
        v
    }

    pub fn shape(&self) -> SpaceShape {
        self.shape
    }

    pub fn get(&self, coord: Coord) -> Scalar {
        match coord {
            Coord::Shift { strand, level } => self
                .shift
                .get(&(level, strand))
                .cloned()
                .unwrap_or_else(Scalar::zero),
            Coord::Tail { index } => self.tail.get(index).clone(),
        }
    }

    pub fn set(&mut self, coord: Coord, value: Scalar) {
        assert!(coord.in_shape(&self.shape), "coordinate outside shape");
        match coord {
            Coord::Shift { strand, level } => {
                if value.is_zero() {
                    self.shift.remove(&(level, strand));
                } else {
                    self.shift.insert((level, strand), value);
                }
            }
            Coord::Tail { index } => self.tail.set(index, value),
        }
    }

    pub fn add_at(&mut self, coord: Coord, value: &Scalar) {
        let cur = self.get(coord);
        self.set(coord, &cur + value);
    }

    /// Sparse shift entries in level-major order: ((level, strand), value).
    pub fn shift_entries(&self) -> impl Iterator<Item = (&(usize, usize), &Scalar)> {
        self.shift.iter()
    }

    pub fn tail(&self) -> &FinVector {
        &self.tail
    }

    pub fn is_zero(&self) -> bool {
        self.shift.values().all(Scalar::is_zero) && self.tail.is_zero()
    }

    /// One past the highest occupied level; 0 when the shift part is empty.
    pub fn max_level_excl(&self) -> usize {
        self.shift
            .keys()
            .filter(|(_, _)| true)
            .map(|(l, _)| l + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Scalar) -> FinSupportVector {
        let mut out = Self::zero(self.shape);
        for ((l, s), v) in &self.shift {
            let w = v * c;
            if !w.is_zero() {
                out.shift.insert((*l, *s), w);
            }
        }
        out.tail = self.tail.scale(c);
        out
    }

    pub fn add(&self, other: &FinSupportVector) -> FinSupportVector {
        assert_eq!(self.shape, other.shape, "shape mismatch");
        let mut out = self.clone();
        for ((l, s), v) in &other.shift {
            out.add_at(Coord::shift(*s, *l), v);
        }
        out.tail = self.tail.add(&other.tail);
        out
    }

    pub fn sub(&self, other: &FinSupportVector) -> FinSupportVector {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    /// ⟨self, other⟩, conjugate-linear in the second argument.
    pub fn inner(&self, other: &FinSupportVector) -> Scalar {
        assert_eq!(self.shape, other.shape, "shape mismatch");
        let mut acc = Scalar::zero();
        for (key, v) in &self.shift {
            if let Some(w) = other.shift.get(key) {
                acc += &(v * &w.conj());
            }
        }
        acc += &self.tail.inner(&other.tail);
        acc
    }

    pub fn norm_sq(&self) -> Scalar {
        self.inner(self)
    }

    pub fn mode(&self) -> Mode {
        if self.shift.values().any(|v| v.mode() == Mode::Float)
            || self.tail.mode() == Mode::Float
        {
            Mode::Float
        } else {
            Mode::Exact
        }
    }

    /// Dense window layout of the first `levels` levels plus the tail.
    /// Panics if the support extends past `levels`.
    pub fn to_window(&self, levels: usize) -> FinVector {
        assert!(
            self.max_level_excl() <= levels,
            "support extends past the requested window"
        );
        let mut out = FinVector::zeros(self.shape.window_dim(levels));
        for ((l, s), v) in &self.shift {
            out.set(l * self.shape.p + s, v.clone());
        }
        for t in 0..self.shape.q {
            out.set(levels * self.shape.p + t, self.tail.get(t).clone());
        }
        out
    }

    pub fn from_window(shape: SpaceShape, levels: usize, v: &FinVector) -> Self {
        assert_eq!(v.dim(), shape.window_dim(levels));
        let mut out = Self::zero(shape);
        for idx in 0..v.dim() {
            let val = v.get(idx);
            if !val.is_zero() {
                out.set(Coord::from_window_index(idx, &shape, levels), val.clone());
            }
        }
        out
    }

    pub fn approx_eq(&self, other: &FinSupportVector, tol: f64) -> bool {
        if self.shape != other.shape {
            return false;
        }
        let levels = self.max_level_excl().max(other.max_level_excl());
        self.to_window(levels).approx_eq(&other.to_window(levels), tol)
    }

    /// Support as coordinates (level-major shift order, then tail).
    pub fn support(&self) -> Vec<Coord> {
        let mut coords: Vec<Coord> = self
            .shift
            .iter()
            .map(|((l, s), _)| Coord::shift(*s, *l))
            .collect();
        for t in 0..self.shape.q {
            if !self.tail.get(t).is_zero() {
                coords.push(Coord::tail(t));
            }
        }
        coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn window_round_trip() {
        let shape = SpaceShape::new(2, 1);
        let mut v = FinSupportVector::zero(shape);
        v.set(Coord::shift(1, 3), Scalar::ratio(1, 2));
        v.set(Coord::tail(0), Scalar::from_int(-2));
        let w = v.to_window(5);
        assert_eq!(FinSupportVector::from_window(shape, 5, &w), v);
        assert_eq!(v.max_level_excl(), 4);
    }

    #[test]
    fn inner_product_conjugates_second() {
        let shape = SpaceShape::shift_only(1);
        let mut a = FinSupportVector::zero(shape);
        a.set(Coord::shift(0, 0), Scalar::i());
        let b = FinSupportVector::basis(shape, Coord::shift(0, 0));
        assert_eq!(a.inner(&b), Scalar::i());
        assert_eq!(b.inner(&a), -&Scalar::i());
    }
}
