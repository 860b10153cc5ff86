use crate::exactnum::{FinMatrix, Mode, Scalar};

use super::kernel::WindowedKernel;
use super::shape::{Coord, SpaceShape};
use super::symbol::LaurentSymbol;
use super::tags::OpTags;
use super::vector::FinSupportVector;
use super::OpError;

/// One operator of the class: block-Toeplitz part given by a matrix
/// Laurent-polynomial symbol acting on the shift strands (and as zero on
/// the tails), plus a finite-rank windowed kernel covering everything else.
///
/// The canonical pair is unique: the symbol is the entry pattern at
/// infinity, every finite deviation lives in the minimal-window kernel, so
/// equality is componentwise.
#[derive(Debug, Clone)]
pub struct StructuredOperator {
    shape_out: SpaceShape,
    shape_in: SpaceShape,
    symbol: LaurentSymbol,
    kernel: WindowedKernel,
    tags: OpTags,
}

impl StructuredOperator {
    pub fn new(
        shape_out: SpaceShape,
        shape_in: SpaceShape,
        symbol: LaurentSymbol,
        kernel: WindowedKernel,
    ) -> Self {
        assert_eq!(symbol.p_out(), shape_out.p, "symbol row strands");
        assert_eq!(symbol.p_in(), shape_in.p, "symbol col strands");
        assert_eq!(kernel.shape_out(), shape_out, "kernel out shape");
        assert_eq!(kernel.shape_in(), shape_in, "kernel in shape");
        StructuredOperator {
            shape_out,
            shape_in,
            symbol,
            kernel,
            tags: OpTags::none(),
        }
    }

    pub fn zero(shape_out: SpaceShape, shape_in: SpaceShape) -> Self {
        Self::new(
            shape_out,
            shape_in,
            LaurentSymbol::zero(shape_out.p, shape_in.p),
            WindowedKernel::zero(shape_out, shape_in),
        )
    }

    /// Identity: symbol I_p plus the tail identity block.
    pub fn identity(shape: SpaceShape) -> Self {
        let symbol = if shape.p > 0 {
            LaurentSymbol::monomial(0, FinMatrix::identity(shape.p))
        } else {
            LaurentSymbol::zero(0, 0)
        };
        let kernel = WindowedKernel::new(shape, shape, 0, 0, FinMatrix::identity(shape.q));
        Self::new(shape, shape, symbol, kernel)
    }

    pub fn shape_out(&self) -> SpaceShape {
        self.shape_out
    }

    pub fn shape_in(&self) -> SpaceShape {
        self.shape_in
    }

    pub fn is_square(&self) -> bool {
        self.shape_out == self.shape_in
    }

    pub fn symbol(&self) -> &LaurentSymbol {
        &self.symbol
    }

    pub fn kernel(&self) -> &WindowedKernel {
        &self.kernel
    }

    pub fn band(&self) -> usize {
        self.symbol.band()
    }

    /// Larger of the two kernel window extents.
    pub fn window(&self) -> usize {
        self.kernel.n_out().max(self.kernel.n_in())
    }

    pub fn tags(&self) -> &OpTags {
        &self.tags
    }

    pub fn with_tags(mut self, tags: OpTags) -> Self {
        self.tags = tags;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.symbol.is_zero() && self.kernel.is_zero()
    }

    pub fn mode(&self) -> Mode {
        if self.symbol.mode() == Mode::Float || self.kernel.mode() == Mode::Float {
            Mode::Float
        } else {
            Mode::Exact
        }
    }

    /// True operator entry at a coordinate pair (symbol pattern plus kernel
    /// deviation).
    pub fn entry(&self, out: Coord, inp: Coord) -> Scalar {
        let mut acc = self.kernel.get(out, inp);
        if let (Coord::Shift { strand: r, level: i }, Coord::Shift { strand: s, level: j }) =
            (out, inp)
        {
            if let Some(c) = self.symbol.coeff(i as i64 - j as i64) {
                acc += c.get(r, s);
            }
        }
        acc
    }

    fn check_same_shape(&self, other: &Self) -> Result<(), OpError> {
        if self.shape_out != other.shape_out || self.shape_in != other.shape_in {
            return Err(OpError::ShapeMismatch(format!(
                "({} <- {}) vs ({} <- {})",
                self.shape_out, self.shape_in, other.shape_out, other.shape_in
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, OpError> {
        self.check_same_shape(other)?;
        Ok(Self::new(
            self.shape_out,
            self.shape_in,
            self.symbol.add(&other.symbol),
            self.kernel.add(&other.kernel),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self, OpError> {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self::new(
            self.shape_out,
            self.shape_in,
            self.symbol.scale(c),
            self.kernel.scale(c),
        )
    }

    pub fn adjoint(&self) -> Self {
        Self::new(
            self.shape_in,
            self.shape_out,
            self.symbol.adjoint(),
            self.kernel.adjoint(),
        )
    }

    /// Exact product with Toeplitz normal-form reduction:
    /// T_f T_g = T_{fg} + defect(f, g), with the defect and all
    /// symbol×kernel interactions collected into the windowed kernel.
    pub fn multiply(&self, other: &Self) -> Result<Self, OpError> {
        if self.shape_in != other.shape_out {
            return Err(OpError::ShapeMismatch(format!(
                "product inner shapes differ: {} vs {}",
                self.shape_in, other.shape_out
            )));
        }
        let shape_out = self.shape_out;
        let shape_in = other.shape_in;

        let symbol = self.symbol.mul(&other.symbol);

        let mut kernel = toeplitz_defect(&self.symbol, &other.symbol, shape_out, shape_in);
        kernel = kernel.add(&symbol_times_kernel(&self.symbol, &other.kernel, shape_out));
        kernel = kernel.add(&kernel_times_symbol(&self.kernel, &other.symbol, shape_in));
        kernel = kernel.add(&self.kernel.compose(&other.kernel));

        Ok(Self::new(shape_out, shape_in, symbol, kernel))
    }

    pub fn apply(&self, x: &FinSupportVector) -> Result<FinSupportVector, OpError> {
        if x.shape() != self.shape_in {
            return Err(OpError::ShapeMismatch(format!(
                "vector shape {} does not match operator input {}",
                x.shape(),
                self.shape_in
            )));
        }
        let mut y = FinSupportVector::zero(self.shape_out);
        // Symbol part: level l strand s feeds levels l+k.
        for ((l, s), v) in x.shift_entries() {
            for (k, c) in self.symbol.coeffs() {
                let out_level = *l as i64 + k;
                if out_level < 0 {
                    continue;
                }
                for r in 0..self.shape_out.p {
                    let cv = c.get(r, *s);
                    if !cv.is_zero() {
                        y.add_at(Coord::shift(r, out_level as usize), &(cv * v));
                    }
                }
            }
        }
        // Kernel part: restrict x to the kernel's input window.
        let n_in = self.kernel.n_in();
        let mut xw = crate::exactnum::FinVector::zeros(self.shape_in.window_dim(n_in));
        let mut touched = false;
        for ((l, s), v) in x.shift_entries() {
            if *l < n_in {
                xw.set(l * self.shape_in.p + s, v.clone());
                touched = true;
            }
        }
        for t in 0..self.shape_in.q {
            let v = x.tail().get(t);
            if !v.is_zero() {
                xw.set(n_in * self.shape_in.p + t, v.clone());
                touched = true;
            }
        }
        if touched && !self.kernel.is_zero() {
            let yw = self.kernel.block().mul_vec(&xw);
            for idx in 0..yw.dim() {
                let v = yw.get(idx);
                if !v.is_zero() {
                    y.add_at(
                        Coord::from_window_index(idx, &self.shape_out, self.kernel.n_out()),
                        v,
                    );
                }
            }
        }
        Ok(y)
    }

    /// Canonical equality. Exact mode compares componentwise with zero
    /// tolerance; Float mode within `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.shape_out == other.shape_out
            && self.shape_in == other.shape_in
            && self.symbol.approx_eq(&other.symbol, tol)
            && self.kernel.approx_eq(&other.kernel, tol)
    }

    pub fn equals(&self, other: &Self) -> Result<bool, OpError> {
        self.check_same_shape(other)?;
        let tol = if self.mode() == Mode::Float || other.mode() == Mode::Float {
            crate::exactnum::TolerancePolicy::default().psd_tol
        } else {
            0.0
        };
        Ok(self.approx_eq(other, tol))
    }

    /// Dense (N·p_out + q_out) × (N·p_in + q_in) truncation in the
    /// level-major basis. Entries whose level indices are both below
    /// N − band − window are exact operator entries.
    pub fn dense_truncation(&self, n: usize) -> FinMatrix {
        let rows = self.shape_out.window_dim(n);
        let cols = self.shape_in.window_dim(n);
        let mut m = FinMatrix::zeros(rows, cols);
        for (k, c) in self.symbol.coeffs() {
            for j in 0..n as i64 {
                let i = j + k;
                if i < 0 || i >= n as i64 {
                    continue;
                }
                for r in 0..self.shape_out.p {
                    for s in 0..self.shape_in.p {
                        let v = c.get(r, s);
                        if !v.is_zero() {
                            m.add_at(i as usize * self.shape_out.p + r, j as usize * self.shape_in.p + s, v);
                        }
                    }
                }
            }
        }
        let kb = self.kernel.block();
        for i in 0..kb.rows() {
            let oc = Coord::from_window_index(i, &self.shape_out, self.kernel.n_out());
            let Some(ti) = oc.window_index(&self.shape_out, n) else {
                continue; // clipped by the truncation
            };
            for j in 0..kb.cols() {
                let v = kb.get(i, j);
                if v.is_zero() {
                    continue;
                }
                let ic = Coord::from_window_index(j, &self.shape_in, self.kernel.n_in());
                let Some(tj) = ic.window_index(&self.shape_in, n) else {
                    continue;
                };
                m.add_at(ti, tj, v);
            }
        }
        m
    }

    /// Compression to selected coordinates: keeps the listed strands and
    /// tail indices on each side (order gives the new indexing).
    pub fn restrict(&self, out_sel: &CoordSelection, in_sel: &CoordSelection) -> Self {
        out_sel.validate(&self.shape_out);
        in_sel.validate(&self.shape_in);
        let new_out = SpaceShape::new(out_sel.strands.len(), out_sel.tails.len());
        let new_in = SpaceShape::new(in_sel.strands.len(), in_sel.tails.len());
        let symbol = LaurentSymbol::from_coeffs(
            new_out.p,
            new_in.p,
            self.symbol
                .coeffs()
                .map(|(k, c)| (*k, c.submatrix(&out_sel.strands, &in_sel.strands)))
                .collect(),
        );
        let (n_out, n_in) = (self.kernel.n_out(), self.kernel.n_in());
        let kernel = WindowedKernel::from_fn(new_out, new_in, n_out, n_in, |o, i| {
            self.kernel.get(out_sel.lift(o), in_sel.lift(i))
        });
        Self::new(new_out, new_in, symbol, kernel)
    }

    /// Embedding into a larger space: places this operator's strands and
    /// tails at the listed positions, zero elsewhere.
    pub fn embed(
        &self,
        big_out: SpaceShape,
        big_in: SpaceShape,
        out_sel: &CoordSelection,
        in_sel: &CoordSelection,
    ) -> Self {
        assert_eq!(out_sel.strands.len(), self.shape_out.p);
        assert_eq!(out_sel.tails.len(), self.shape_out.q);
        assert_eq!(in_sel.strands.len(), self.shape_in.p);
        assert_eq!(in_sel.tails.len(), self.shape_in.q);
        out_sel.validate(&big_out);
        in_sel.validate(&big_in);
        let mut coeffs = std::collections::BTreeMap::new();
        for (k, c) in self.symbol.coeffs() {
            let mut m = FinMatrix::zeros(big_out.p, big_in.p);
            for (r, &br) in out_sel.strands.iter().enumerate() {
                for (s, &bs) in in_sel.strands.iter().enumerate() {
                    m.set(br, bs, c.get(r, s).clone());
                }
            }
            coeffs.insert(*k, m);
        }
        let symbol = LaurentSymbol::from_coeffs(big_out.p, big_in.p, coeffs);
        let (n_out, n_in) = (self.kernel.n_out(), self.kernel.n_in());
        let kb = self.kernel.block();
        let mut kernel = WindowedKernel::zero(big_out, big_in);
        if !kb.is_zero() {
            kernel = WindowedKernel::from_fn(big_out, big_in, n_out, n_in, |o, i| {
                match (out_sel.unlift(o), in_sel.unlift(i)) {
                    (Some(so), Some(si)) => self.kernel.get(so, si),
                    _ => Scalar::zero(),
                }
            });
        }
        Self::new(big_out, big_in, symbol, kernel)
    }
}

/// A subset of strand and tail indices, used for block extraction and
/// embedding. Order is significant: position k of `strands` becomes strand
/// k of the restricted operator.
#[derive(Debug, Clone)]
pub struct CoordSelection {
    pub strands: Vec<usize>,
    pub tails: Vec<usize>,
}

impl CoordSelection {
    pub fn new(strands: Vec<usize>, tails: Vec<usize>) -> Self {
        CoordSelection { strands, tails }
    }

    pub fn full(shape: &SpaceShape) -> Self {
        CoordSelection {
            strands: (0..shape.p).collect(),
            tails: (0..shape.q).collect(),
        }
    }

    pub fn shape(&self) -> SpaceShape {
        SpaceShape::new(self.strands.len(), self.tails.len())
    }

    fn validate(&self, shape: &SpaceShape) {
        assert!(self.strands.iter().all(|&s| s < shape.p));
        assert!(self.tails.iter().all(|&t| t < shape.q));
    }

    /// Small-space coordinate → big-space coordinate.
    pub fn lift(&self, c: Coord) -> Coord {
        match c {
            Coord::Shift { strand, level } => Coord::shift(self.strands[strand], level),
            Coord::Tail { index } => Coord::tail(self.tails[index]),
        }
    }

    /// Big-space coordinate → small-space coordinate, when selected.
    pub fn unlift(&self, c: Coord) -> Option<Coord> {
        match c {
            Coord::Shift { strand, level } => self
                .strands
                .iter()
                .position(|&s| s == strand)
                .map(|s| Coord::shift(s, level)),
            Coord::Tail { index } => self
                .tails
                .iter()
                .position(|&t| t == index)
                .map(Coord::tail),
        }
    }

    pub fn lift_vector(&self, v: &FinSupportVector, big: SpaceShape) -> FinSupportVector {
        let mut out = FinSupportVector::zero(big);
        for ((l, s), val) in v.shift_entries() {
            out.set(Coord::shift(self.strands[*s], *l), val.clone());
        }
        for t in 0..v.shape().q {
            let val = v.tail().get(t);
            if !val.is_zero() {
                out.set(Coord::tail(self.tails[t]), val.clone());
            }
        }
        out
    }

    pub fn restrict_vector(&self, v: &FinSupportVector) -> FinSupportVector {
        let mut out = FinSupportVector::zero(self.shape());
        for ((l, s), val) in v.shift_entries() {
            if let Some(ns) = self.strands.iter().position(|&x| x == *s) {
                out.set(Coord::shift(ns, *l), val.clone());
            }
        }
        for (nt, &t) in self.tails.iter().enumerate() {
            let val = v.tail().get(t);
            if !val.is_zero() {
                out.set(Coord::tail(nt), val.clone());
            }
        }
        out
    }
}

/// T_f T_g − T_{fg} on the half line: supported on out-levels < band(f) and
/// in-levels < band(g), with entries −Σ_{l<0} f_{i−l} g_{l−j}.
fn toeplitz_defect(
    f: &LaurentSymbol,
    g: &LaurentSymbol,
    shape_out: SpaceShape,
    shape_in: SpaceShape,
) -> WindowedKernel {
    let df = f.band() as i64;
    let dg = g.band() as i64;
    if f.is_zero() || g.is_zero() || df == 0 || dg == 0 {
        // Either factor absent, or no negative index can contribute.
        if !(f.is_zero() || g.is_zero()) {
            // With df = 0 or dg = 0 the l < 0 range below is empty.
        }
        return WindowedKernel::zero(shape_out, shape_in);
    }
    let p_out = shape_out.p;
    let p_in = shape_in.p;
    let mut block = FinMatrix::zeros(shape_out.window_dim(df as usize), shape_in.window_dim(dg as usize));
    for i in 0..df {
        for j in 0..dg {
            let mut acc: Option<FinMatrix> = None;
            let lo = (i - df).max(j - dg);
            for l in lo..0 {
                let (Some(cf), Some(cg)) = (f.coeff(i - l), g.coeff(l - j)) else {
                    continue;
                };
                let prod = cf.mul(cg);
                acc = Some(match acc {
                    Some(m) => m.add(&prod),
                    None => prod,
                });
            }
            if let Some(m) = acc {
                for r in 0..p_out {
                    for s in 0..p_in {
                        let v = m.get(r, s);
                        if !v.is_zero() {
                            block.set(i as usize * p_out + r, j as usize * p_in + s, -v);
                        }
                    }
                }
            }
        }
    }
    WindowedKernel::new(shape_out, shape_in, df as usize, dg as usize, block)
}

/// T_f ∘ K: the banded symbol pushes the kernel's output window up by its
/// band; tail output rows vanish (symbols act only on strands).
fn symbol_times_kernel(
    f: &LaurentSymbol,
    k: &WindowedKernel,
    shape_out: SpaceShape,
) -> WindowedKernel {
    if f.is_zero() || k.is_zero() {
        return WindowedKernel::zero(shape_out, k.shape_in());
    }
    let mid = k.shape_out();
    let d = f.band();
    let n_out = k.n_out() + d;
    WindowedKernel::from_fn(shape_out, k.shape_in(), n_out, k.n_in(), |o, i| {
        let Coord::Shift { strand: r, level } = o else {
            return Scalar::zero();
        };
        let mut acc = Scalar::zero();
        for (kk, c) in f.coeffs() {
            let src = level as i64 - kk;
            if src < 0 || src >= k.n_out() as i64 {
                continue;
            }
            for s in 0..mid.p {
                let cv = c.get(r, s);
                if cv.is_zero() {
                    continue;
                }
                let kv = k.get(Coord::shift(s, src as usize), i);
                if !kv.is_zero() {
                    acc += &(cv * &kv);
                }
            }
        }
        acc
    })
}

/// K ∘ T_g: the kernel reads the symbol's band-widened input window; tail
/// input columns vanish.
fn kernel_times_symbol(
    k: &WindowedKernel,
    g: &LaurentSymbol,
    shape_in: SpaceShape,
) -> WindowedKernel {
    if g.is_zero() || k.is_zero() {
        return WindowedKernel::zero(k.shape_out(), shape_in);
    }
    let mid = k.shape_in();
    let d = g.band();
    let n_in = k.n_in() + d;
    WindowedKernel::from_fn(k.shape_out(), shape_in, k.n_out(), n_in, |o, i| {
        let Coord::Shift { strand: s, level } = i else {
            return Scalar::zero();
        };
        let mut acc = Scalar::zero();
        for (kk, c) in g.coeffs() {
            let dst = level as i64 + kk;
            if dst < 0 || dst >= k.n_in() as i64 {
                continue;
            }
            for t in 0..mid.p {
                let cv = c.get(t, s);
                if cv.is_zero() {
                    continue;
                }
                let kv = k.get(o, Coord::shift(t, dst as usize));
                if !kv.is_zero() {
                    acc += &(&kv * cv);
                }
            }
        }
        acc
    })
}
