use crate::exactnum::{FinMatrix, Mode, Scalar};

use super::shape::{Coord, SpaceShape};

/// Finite-rank operator supported on a window of shift levels plus the
/// tails: a dense block from (n_in·p_in + q_in) to (n_out·p_out + q_out)
/// coordinates in the level-major layout (tail appended after the levels).
///
/// Canonical form uses the minimal window: no all-zero boundary level slab
/// on either side, and a zero window when the corresponding p is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct WindowedKernel {
    shape_out: SpaceShape,
    shape_in: SpaceShape,
    n_out: usize,
    n_in: usize,
    block: FinMatrix,
}

impl WindowedKernel {
    pub fn zero(shape_out: SpaceShape, shape_in: SpaceShape) -> Self {
        WindowedKernel {
            shape_out,
            shape_in,
            n_out: 0,
            n_in: 0,
            block: FinMatrix::zeros(shape_out.q, shape_in.q),
        }
    }

    pub fn new(
        shape_out: SpaceShape,
        shape_in: SpaceShape,
        n_out: usize,
        n_in: usize,
        block: FinMatrix,
    ) -> Self {
        assert_eq!(block.rows(), shape_out.window_dim(n_out), "row dim");
        assert_eq!(block.cols(), shape_in.window_dim(n_in), "col dim");
        let mut k = WindowedKernel {
            shape_out,
            shape_in,
            n_out,
            n_in,
            block,
        };
        k.trim();
        k
    }

    pub fn from_fn(
        shape_out: SpaceShape,
        shape_in: SpaceShape,
        n_out: usize,
        n_in: usize,
        mut f: impl FnMut(Coord, Coord) -> Scalar,
    ) -> Self {
        let block = FinMatrix::from_fn(
            shape_out.window_dim(n_out),
            shape_in.window_dim(n_in),
            |i, j| {
                f(
                    Coord::from_window_index(i, &shape_out, n_out),
                    Coord::from_window_index(j, &shape_in, n_in),
                )
            },
        );
        Self::new(shape_out, shape_in, n_out, n_in, block)
    }

    pub fn rank_one(shape_out: SpaceShape, shape_in: SpaceShape, out: Coord, inp: Coord) -> Self {
        assert!(out.in_shape(&shape_out) && inp.in_shape(&shape_in));
        let n_out = match out {
            Coord::Shift { level, .. } => level + 1,
            Coord::Tail { .. } => 0,
        };
        let n_in = match inp {
            Coord::Shift { level, .. } => level + 1,
            Coord::Tail { .. } => 0,
        };
        Self::from_fn(shape_out, shape_in, n_out, n_in, |r, c| {
            if r == out && c == inp {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn shape_out(&self) -> SpaceShape {
        self.shape_out
    }

    pub fn shape_in(&self) -> SpaceShape {
        self.shape_in
    }

    pub fn n_out(&self) -> usize {
        self.n_out
    }

    pub fn n_in(&self) -> usize {
        self.n_in
    }

    pub fn block(&self) -> &FinMatrix {
        &self.block
    }

    pub fn is_zero(&self) -> bool {
        self.block.is_zero()
    }

    pub fn get(&self, out: Coord, inp: Coord) -> Scalar {
        let (Some(i), Some(j)) = (
            out.window_index(&self.shape_out, self.n_out),
            inp.window_index(&self.shape_in, self.n_in),
        ) else {
            return Scalar::zero();
        };
        self.block.get(i, j).clone()
    }

    /// Rewrites the block into a (possibly larger) window.
    pub fn padded_block(&self, n_out: usize, n_in: usize) -> FinMatrix {
        assert!(n_out >= self.n_out && n_in >= self.n_in);
        let mut out = FinMatrix::zeros(
            self.shape_out.window_dim(n_out),
            self.shape_in.window_dim(n_in),
        );
        for i in 0..self.block.rows() {
            let oc = Coord::from_window_index(i, &self.shape_out, self.n_out);
            let ni = oc.window_index(&self.shape_out, n_out).unwrap();
            for j in 0..self.block.cols() {
                let v = self.block.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let ic = Coord::from_window_index(j, &self.shape_in, self.n_in);
                let nj = ic.window_index(&self.shape_in, n_in).unwrap();
                out.set(ni, nj, v.clone());
            }
        }
        out
    }

    pub fn pad(&self, n_out: usize, n_in: usize) -> WindowedKernel {
        WindowedKernel {
            shape_out: self.shape_out,
            shape_in: self.shape_in,
            n_out,
            n_in,
            block: self.padded_block(n_out, n_in),
        }
    }

    /// Drops all-zero boundary level slabs (exact zeros only).
    fn trim(&mut self) {
        if self.shape_out.p == 0 {
            self.n_out = 0;
        }
        if self.shape_in.p == 0 {
            self.n_in = 0;
        }
        loop {
            let mut shrunk = false;
            if self.n_out > 0 {
                let top = self.n_out - 1;
                let all_zero = (0..self.shape_out.p).all(|s| {
                    (0..self.block.cols()).all(|j| {
                        self.block.get(top * self.shape_out.p + s, j).is_zero()
                    })
                });
                if all_zero {
                    self.drop_out_level();
                    shrunk = true;
                }
            }
            if self.n_in > 0 {
                let top = self.n_in - 1;
                let all_zero = (0..self.shape_in.p).all(|s| {
                    (0..self.block.rows()).all(|i| {
                        self.block.get(i, top * self.shape_in.p + s).is_zero()
                    })
                });
                if all_zero {
                    self.drop_in_level();
                    shrunk = true;
                }
            }
            if !shrunk {
                break;
            }
        }
    }

    fn drop_out_level(&mut self) {
        let new_n = self.n_out - 1;
        let keep: Vec<usize> = (0..new_n * self.shape_out.p)
            .chain(self.n_out * self.shape_out.p..self.block.rows())
            .collect();
        let all_cols: Vec<usize> = (0..self.block.cols()).collect();
        self.block = self.block.submatrix(&keep, &all_cols);
        self.n_out = new_n;
    }

    fn drop_in_level(&mut self) {
        let new_n = self.n_in - 1;
        let keep: Vec<usize> = (0..new_n * self.shape_in.p)
            .chain(self.n_in * self.shape_in.p..self.block.cols())
            .collect();
        let all_rows: Vec<usize> = (0..self.block.rows()).collect();
        self.block = self.block.submatrix(&all_rows, &keep);
        self.n_in = new_n;
    }

    pub fn add(&self, other: &WindowedKernel) -> WindowedKernel {
        assert_eq!(self.shape_out, other.shape_out);
        assert_eq!(self.shape_in, other.shape_in);
        let n_out = self.n_out.max(other.n_out);
        let n_in = self.n_in.max(other.n_in);
        WindowedKernel::new(
            self.shape_out,
            self.shape_in,
            n_out,
            n_in,
            self.padded_block(n_out, n_in)
                .add(&other.padded_block(n_out, n_in)),
        )
    }

    pub fn scale(&self, c: &Scalar) -> WindowedKernel {
        WindowedKernel::new(
            self.shape_out,
            self.shape_in,
            self.n_out,
            self.n_in,
            self.block.scale(c),
        )
    }

    /// Conjugate transpose; window sides swap roles. The level-major layout
    /// with trailing tails is symmetric under transposition, so this is a
    /// plain adjoint of the block.
    pub fn adjoint(&self) -> WindowedKernel {
        WindowedKernel::new(
            self.shape_in,
            self.shape_out,
            self.n_in,
            self.n_out,
            self.block.adjoint(),
        )
    }

    /// Kernel-kernel composition: pads the middle window to a common size
    /// and multiplies the blocks.
    pub fn compose(&self, other: &WindowedKernel) -> WindowedKernel {
        assert_eq!(self.shape_in, other.shape_out, "kernel shape mismatch");
        let mid = self.n_in.max(other.n_out);
        let left = self.padded_block(self.n_out, mid);
        let right = other.padded_block(mid, other.n_in);
        WindowedKernel::new(
            self.shape_out,
            other.shape_in,
            self.n_out,
            other.n_in,
            left.mul(&right),
        )
    }

    pub fn mode(&self) -> Mode {
        self.block.mode()
    }

    pub fn approx_eq(&self, other: &WindowedKernel, tol: f64) -> bool {
        if self.shape_out != other.shape_out || self.shape_in != other.shape_in {
            return false;
        }
        let n_out = self.n_out.max(other.n_out);
        let n_in = self.n_in.max(other.n_in);
        self.padded_block(n_out, n_in)
            .approx_eq(&other.padded_block(n_out, n_in), tol)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trim_removes_boundary_slabs() {
        let shape = SpaceShape::new(1, 1);
        // 3-level window with data only at level 0 and the tail.
        let k = WindowedKernel::from_fn(shape, shape, 3, 3, |o, i| {
            match (o, i) {
                (Coord::Shift { level: 0, .. }, Coord::Tail { .. }) => Scalar::one(),
                (Coord::Tail { .. }, Coord::Tail { .. }) => Scalar::ratio(1, 2),
                _ => Scalar::zero(),
            }
        });
        assert_eq!(k.n_out(), 1);
        assert_eq!(k.n_in(), 0);
        assert_eq!(k.get(Coord::shift(0, 0), Coord::tail(0)), Scalar::one());
        assert_eq!(k.get(Coord::tail(0), Coord::tail(0)), Scalar::ratio(1, 2));
    }

    #[test]
    fn adjoint_round_trip() {
        let shape_out = SpaceShape::new(2, 1);
        let shape_in = SpaceShape::new(1, 2);
        let k = WindowedKernel::rank_one(shape_out, shape_in, Coord::shift(1, 2), Coord::tail(1));
        let back = k.adjoint().adjoint();
        assert_eq!(back, k);
        assert_eq!(
            k.adjoint().get(Coord::tail(1), Coord::shift(1, 2)),
            Scalar::one()
        );
    }

    #[test]
    fn compose_pads_middle() {
        let s = SpaceShape::shift_only(1);
        let a = WindowedKernel::rank_one(s, s, Coord::shift(0, 0), Coord::shift(0, 3));
        let b = WindowedKernel::rank_one(s, s, Coord::shift(0, 3), Coord::shift(0, 1));
        let ab = a.compose(&b);
        assert_eq!(ab.get(Coord::shift(0, 0), Coord::shift(0, 1)), Scalar::one());
        assert_eq!(ab.n_out(), 1);
        assert_eq!(ab.n_in(), 2);
    }
}
