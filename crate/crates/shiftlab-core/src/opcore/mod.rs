//! The structured-operator algebra: canonical (Laurent symbol, windowed
//! kernel) pairs on ℓ²⊗Cᵖ ⊕ Cᵠ, closed under sums, products and adjoints,
//! with a dense-truncation oracle for brute-force cross-checks.

mod kernel;
mod operator;
mod primitives;
mod shape;
mod symbol;
mod tags;
mod vector;

pub use kernel::WindowedKernel;
pub use operator::{CoordSelection, StructuredOperator};
pub use primitives::{
    block_compose, level_zero_projection, make_primitive, rank_one, CrossDirection, Primitive,
};
pub use shape::{Coord, SpaceShape};
pub use symbol::LaurentSymbol;
pub use tags::{ModelKind, ModelTag, OpTags};
pub use vector::FinSupportVector;

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum OpError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid model spec: {0}")]
    SpecInvalid(String),
    #[error("{0}")]
    Unsupported(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{FinMatrix, Scalar};

    fn shift(p: usize) -> StructuredOperator {
        make_primitive(Primitive::Shift, SpaceShape::shift_only(p)).unwrap()
    }

    #[test]
    fn shift_relations_multiplicity_one() {
        let s = shift(1);
        let sstar = s.adjoint();
        let id = StructuredOperator::identity(SpaceShape::shift_only(1));
        // S*S = I
        let prod = sstar.multiply(&s).unwrap();
        assert!(prod.equals(&id).unwrap());
        // SS* = I − e₀⊗e₀
        let prod2 = s.multiply(&sstar).unwrap();
        let p0 = level_zero_projection(SpaceShape::shift_only(1));
        let expect = id.sub(&p0).unwrap();
        assert!(prod2.equals(&expect).unwrap());
        assert!(!prod2.equals(&id).unwrap());
    }

    #[test]
    fn shift_relations_higher_multiplicity() {
        for p in 1..4 {
            let s = shift(p);
            let id = StructuredOperator::identity(SpaceShape::shift_only(p));
            assert!(s.adjoint().multiply(&s).unwrap().equals(&id).unwrap());
            let expect = id
                .sub(&level_zero_projection(SpaceShape::shift_only(p)))
                .unwrap();
            assert!(s.multiply(&s.adjoint()).unwrap().equals(&expect).unwrap());
        }
    }

    #[test]
    fn adjoint_of_shift_is_adjoint_shift() {
        let s = shift(2);
        let sstar = make_primitive(Primitive::AdjointShift, SpaceShape::shift_only(2)).unwrap();
        assert!(s.adjoint().equals(&sstar).unwrap());
        let shape = SpaceShape::shift_only(1);
        let e01 = make_primitive(
            Primitive::BasisRankOne(Coord::shift(0, 0), Coord::shift(0, 1)),
            shape,
        )
        .unwrap();
        let e10 = make_primitive(
            Primitive::BasisRankOne(Coord::shift(0, 1), Coord::shift(0, 0)),
            shape,
        )
        .unwrap();
        assert!(e01.adjoint().equals(&e10).unwrap());
    }

    #[test]
    fn add_cancels_to_zero() {
        let s = shift(2);
        let z = s.add(&s.scale(&Scalar::from_int(-1))).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.kernel().n_out(), 0);
        assert!(z.symbol().is_zero());
    }

    #[test]
    fn apply_shift_moves_levels() {
        let shape = SpaceShape::shift_only(1);
        let s = shift(1);
        let e0 = FinSupportVector::basis(shape, Coord::shift(0, 0));
        let e1 = FinSupportVector::basis(shape, Coord::shift(0, 1));
        assert_eq!(s.apply(&e0).unwrap(), e1);
        assert!(s.adjoint().apply(&e0).unwrap().is_zero());
    }

    #[test]
    fn dense_truncation_shift() {
        let s = shift(1);
        let m = s.dense_truncation(3);
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j + 1 { Scalar::one() } else { Scalar::zero() };
                assert_eq!(m.get(i, j), &expect, "at ({i},{j})");
            }
        }
        // Identity − SS* at N=4 is diag(1,0,0,0).
        let id = StructuredOperator::identity(SpaceShape::shift_only(1));
        let x = id.sub(&s.multiply(&s.adjoint()).unwrap()).unwrap();
        let d = x.dense_truncation(4);
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == 0 && j == 0 {
                    Scalar::one()
                } else {
                    Scalar::zero()
                };
                assert_eq!(d.get(i, j), &expect);
            }
        }
    }

    #[test]
    fn block_compose_identity_case() {
        let s = shift(1);
        let grid = vec![vec![s.clone()]];
        assert!(block_compose(&grid).unwrap().equals(&s).unwrap());
        // [[S,0],[0,S]] is the multiplicity-2 shift.
        let z = StructuredOperator::zero(SpaceShape::shift_only(1), SpaceShape::shift_only(1));
        let grid2 = vec![vec![s.clone(), z.clone()], vec![z, s.clone()]];
        assert!(block_compose(&grid2).unwrap().equals(&shift(2)).unwrap());
    }

    #[test]
    fn tail_block_and_cross_block() {
        let shape = SpaceShape::tail_only(2);
        let c = FinMatrix::diag(vec![Scalar::ratio(3, 4), Scalar::ratio(1, 4)]);
        let t = make_primitive(Primitive::TailBlock(c), shape).unwrap();
        assert!(t.symbol().is_zero());
        assert_eq!(t.kernel().block().get(0, 0), &Scalar::ratio(3, 4));

        // A(x₁,x₂) = x₁ as a constant function of the single strand.
        let a = make_primitive(
            Primitive::CrossBlock(
                FinMatrix::from_rows(vec![vec![Scalar::one(), Scalar::zero()]]),
                CrossDirection::TailToShift,
            ),
            SpaceShape::new(1, 2),
        )
        .unwrap();
        assert_eq!(a.shape_out(), SpaceShape::shift_only(1));
        assert_eq!(a.shape_in(), SpaceShape::tail_only(2));
        let x = FinSupportVector::basis(SpaceShape::tail_only(2), Coord::tail(0));
        let y = a.apply(&x).unwrap();
        assert_eq!(y.get(Coord::shift(0, 0)), Scalar::one());
    }

    #[test]
    fn restrict_and_embed_round_trip() {
        let s = shift(3);
        let sel = CoordSelection::new(vec![0, 2], vec![]);
        let r = s.restrict(&sel, &sel);
        assert!(r.equals(&shift(2)).unwrap());
        let back = r.embed(
            SpaceShape::shift_only(3),
            SpaceShape::shift_only(3),
            &sel,
            &sel,
        );
        // Embeds as shift on strands {0,2}, zero on strand 1.
        let e = FinSupportVector::basis(SpaceShape::shift_only(3), Coord::shift(1, 0));
        assert!(back.apply(&e).unwrap().is_zero());
    }

    #[test]
    fn product_truncation_matches_dense_product_on_interior() {
        // T_z T_z̄ vs dense oracle at N = 8.
        let s = shift(1);
        let prod = s.multiply(&s.adjoint()).unwrap();
        let n = 8;
        let pad = n + 2;
        let dense = s
            .dense_truncation(pad)
            .mul(&s.adjoint().dense_truncation(pad));
        let trunc = prod.dense_truncation(n);
        for i in 0..n - 2 {
            for j in 0..n - 2 {
                assert_eq!(trunc.get(i, j), dense.get(i, j));
            }
        }
    }
}
