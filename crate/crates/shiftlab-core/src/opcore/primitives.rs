use crate::exactnum::{FinMatrix, Scalar};

use super::kernel::WindowedKernel;
use super::operator::{CoordSelection, StructuredOperator};
use super::shape::{Coord, SpaceShape};
use super::symbol::LaurentSymbol;
use super::tags::OpTags;
use super::OpError;

/// Direction of a strand/tail coupling block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossDirection {
    /// Matrix maps the tail into level 0 of the strands (p_out × q_in).
    TailToShift,
    /// Matrix reads level 0 of the strands into the tail (q_out × p_in).
    ShiftToTail,
}

/// Primitive building blocks of the algebra.
#[derive(Debug, Clone)]
pub enum Primitive {
    /// z·I_p on the strands.
    Shift,
    /// z̄·I_p on the strands.
    AdjointShift,
    Identity,
    /// e_i ⊗ e_j between basis coordinates.
    BasisRankOne(Coord, Coord),
    /// Matrix block acting on the tail alone.
    TailBlock(FinMatrix),
    /// Level-0 coupling between strands and tail.
    CrossBlock(FinMatrix, CrossDirection),
    /// Constant symbol coefficient (strand projectors / transfers live here).
    ConstSymbol(FinMatrix),
}

/// Builds a canonical primitive on a square space of the given shape.
/// Cross blocks return rectangular operators between the tail-only and
/// shift-only parts embedded in `shape` (their natural shapes); use
/// [`block_compose`] to assemble larger operators.
pub fn make_primitive(kind: Primitive, shape: SpaceShape) -> Result<StructuredOperator, OpError> {
    match kind {
        Primitive::Shift => {
            let symbol = if shape.p > 0 {
                LaurentSymbol::monomial(1, FinMatrix::identity(shape.p))
            } else {
                LaurentSymbol::zero(0, 0)
            };
            let mut tags = OpTags::none();
            // A shift of any finite multiplicity has no unitary summand.
            if shape.q == 0 && shape.p > 0 {
                tags.pure_by_construction = true;
                tags.analytic_by_construction = true;
            }
            Ok(
                StructuredOperator::new(shape, shape, symbol, WindowedKernel::zero(shape, shape))
                    .with_tags(tags),
            )
        }
        Primitive::AdjointShift => {
            let symbol = if shape.p > 0 {
                LaurentSymbol::monomial(-1, FinMatrix::identity(shape.p))
            } else {
                LaurentSymbol::zero(0, 0)
            };
            Ok(StructuredOperator::new(
                shape,
                shape,
                symbol,
                WindowedKernel::zero(shape, shape),
            ))
        }
        Primitive::Identity => Ok(StructuredOperator::identity(shape)),
        Primitive::BasisRankOne(out, inp) => {
            if !out.in_shape(&shape) || !inp.in_shape(&shape) {
                return Err(OpError::ShapeMismatch(format!(
                    "rank-one coordinates ({out}, {inp}) outside {shape}"
                )));
            }
            Ok(StructuredOperator::new(
                shape,
                shape,
                LaurentSymbol::zero(shape.p, shape.p),
                WindowedKernel::rank_one(shape, shape, out, inp),
            ))
        }
        Primitive::TailBlock(m) => {
            if m.rows() != shape.q || m.cols() != shape.q {
                return Err(OpError::ShapeMismatch(format!(
                    "tail block is {}x{}, tail dimension is {}",
                    m.rows(),
                    m.cols(),
                    shape.q
                )));
            }
            Ok(StructuredOperator::new(
                shape,
                shape,
                LaurentSymbol::zero(shape.p, shape.p),
                WindowedKernel::new(shape, shape, 0, 0, m),
            ))
        }
        Primitive::CrossBlock(m, dir) => match dir {
            CrossDirection::TailToShift => {
                let shape_out = SpaceShape::shift_only(m.rows());
                let shape_in = SpaceShape::tail_only(m.cols());
                let kernel = WindowedKernel::new(shape_out, shape_in, 1, 0, m);
                Ok(StructuredOperator::new(
                    shape_out,
                    shape_in,
                    LaurentSymbol::zero(shape_out.p, 0),
                    kernel,
                ))
            }
            CrossDirection::ShiftToTail => {
                let shape_out = SpaceShape::tail_only(m.rows());
                let shape_in = SpaceShape::shift_only(m.cols());
                let kernel = WindowedKernel::new(shape_out, shape_in, 0, 1, m);
                Ok(StructuredOperator::new(
                    shape_out,
                    shape_in,
                    LaurentSymbol::zero(0, shape_in.p),
                    kernel,
                ))
            }
        },
        Primitive::ConstSymbol(m) => {
            if m.rows() != shape.p || m.cols() != shape.p {
                return Err(OpError::ShapeMismatch(format!(
                    "constant symbol is {}x{}, strand count is {}",
                    m.rows(),
                    m.cols(),
                    shape.p
                )));
            }
            Ok(StructuredOperator::new(
                shape,
                shape,
                LaurentSymbol::monomial(0, m),
                WindowedKernel::zero(shape, shape),
            ))
        }
    }
}

/// Assembles a grid of blocks into one operator on the concatenated space.
/// Row blocks must share output shapes, column blocks input shapes; strand
/// and tail indices are re-based row-major.
pub fn block_compose(blocks: &[Vec<StructuredOperator>]) -> Result<StructuredOperator, OpError> {
    if blocks.is_empty() || blocks[0].is_empty() {
        return Err(OpError::ShapeMismatch("empty block grid".into()));
    }
    let rows = blocks.len();
    let cols = blocks[0].len();
    if blocks.iter().any(|r| r.len() != cols) {
        return Err(OpError::ShapeMismatch("ragged block grid".into()));
    }
    let row_shapes: Vec<SpaceShape> = (0..rows).map(|i| blocks[i][0].shape_out()).collect();
    let col_shapes: Vec<SpaceShape> = (0..cols).map(|j| blocks[0][j].shape_in()).collect();
    for (i, row) in blocks.iter().enumerate() {
        for (j, b) in row.iter().enumerate() {
            if b.shape_out() != row_shapes[i] || b.shape_in() != col_shapes[j] {
                return Err(OpError::ShapeMismatch(format!(
                    "block ({i},{j}) is ({} <- {}), expected ({} <- {})",
                    b.shape_out(),
                    b.shape_in(),
                    row_shapes[i],
                    col_shapes[j]
                )));
            }
        }
    }
    let big_out = SpaceShape::new(
        row_shapes.iter().map(|s| s.p).sum(),
        row_shapes.iter().map(|s| s.q).sum(),
    );
    let big_in = SpaceShape::new(
        col_shapes.iter().map(|s| s.p).sum(),
        col_shapes.iter().map(|s| s.q).sum(),
    );
    let mut acc = StructuredOperator::zero(big_out, big_in);
    let mut p_off_out = 0;
    let mut q_off_out = 0;
    for (i, rs) in row_shapes.iter().enumerate() {
        let out_sel = CoordSelection::new(
            (p_off_out..p_off_out + rs.p).collect(),
            (q_off_out..q_off_out + rs.q).collect(),
        );
        let mut p_off_in = 0;
        let mut q_off_in = 0;
        for (j, cs) in col_shapes.iter().enumerate() {
            let in_sel = CoordSelection::new(
                (p_off_in..p_off_in + cs.p).collect(),
                (q_off_in..q_off_in + cs.q).collect(),
            );
            let embedded = blocks[i][j].embed(big_out, big_in, &out_sel, &in_sel);
            acc = acc.add(&embedded)?;
            p_off_in += cs.p;
            q_off_in += cs.q;
        }
        p_off_out += rs.p;
        q_off_out += rs.q;
    }
    Ok(acc)
}

/// Projection onto level 0 of all strands (P_{ker S*} for the standard
/// shift of multiplicity p).
pub fn level_zero_projection(shape: SpaceShape) -> StructuredOperator {
    let mut acc = StructuredOperator::zero(shape, shape);
    for s in 0..shape.p {
        let e = make_primitive(
            Primitive::BasisRankOne(Coord::shift(s, 0), Coord::shift(s, 0)),
            shape,
        )
        .expect("coordinates are in shape");
        acc = acc.add(&e).expect("same shape");
    }
    acc
}

/// Scalar multiple of a single rank-one e_out ⊗ e_in.
pub fn rank_one(
    shape: SpaceShape,
    out: Coord,
    inp: Coord,
    c: &Scalar,
) -> Result<StructuredOperator, OpError> {
    Ok(make_primitive(Primitive::BasisRankOne(out, inp), shape)?.scale(c))
}
