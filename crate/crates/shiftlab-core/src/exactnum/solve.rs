use std::cmp::Ordering;

use super::matrix::{FinMatrix, FinVector};
use super::policy::TolerancePolicy;
use super::scalar::{Mode, Scalar};
use super::NumError;

/// Reduced row echelon form. Returns (R, pivot column indices).
///
/// Exact mode picks the first nonzero pivot; Float mode picks the largest
/// entry in the column and zeroes out anything below `rank_tol` relative to
/// the largest entry of the matrix.
pub fn rref(m: &FinMatrix, policy: &TolerancePolicy) -> (FinMatrix, Vec<usize>) {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let float = a.mode() == Mode::Float;
    let scale = if float {
        let mut s: f64 = 1.0;
        for i in 0..rows {
            for j in 0..cols {
                s = s.max(a.get(i, j).abs_f64());
            }
        }
        s
    } else {
        1.0
    };
    let negligible = |x: &Scalar| {
        if float {
            x.abs_f64() <= policy.rank_tol * scale
        } else {
            x.is_zero()
        }
    };

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let pivot_row = if float {
            (r..rows)
                .filter(|&i| !negligible(a.get(i, c)))
                .max_by(|&i, &j| {
                    a.get(i, c)
                        .abs_f64()
                        .partial_cmp(&a.get(j, c).abs_f64())
                        .unwrap_or(Ordering::Equal)
                })
        } else {
            (r..rows).find(|&i| !a.get(i, c).is_zero())
        };
        let Some(p) = pivot_row else { continue };
        if p != r {
            for j in 0..cols {
                let tmp = a.get(r, j).clone();
                a.set(r, j, a.get(p, j).clone());
                a.set(p, j, tmp);
            }
        }
        let inv = a.get(r, c).inv().expect("pivot is nonzero");
        for j in 0..cols {
            let v = a.get(r, j) * &inv;
            a.set(r, j, v);
        }
        for i in 0..rows {
            if i != r && !a.get(i, c).is_zero() {
                let f = a.get(i, c).clone();
                for j in 0..cols {
                    let v = a.get(i, j) - &(&f * a.get(r, j));
                    a.set(i, j, if negligible(&v) { Scalar::zero() } else { v });
                }
                a.set(i, c, Scalar::zero());
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Exact Gaussian-elimination rank (Exact) or tolerance-pivoted rank (Float).
pub fn rank_of(m: &FinMatrix, policy: &TolerancePolicy) -> usize {
    rref(m, policy).1.len()
}

/// Canonical basis of ker M from the RREF free columns.
pub fn null_space_basis(m: &FinMatrix, policy: &TolerancePolicy) -> Vec<FinVector> {
    let (r, pivots) = rref(m, policy);
    let cols = m.cols();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = FinVector::zeros(cols);
        v.set(free, Scalar::one());
        for (row, &pc) in pivots.iter().enumerate() {
            v.set(pc, -r.get(row, free));
        }
        basis.push(v);
    }
    basis
}

/// Solve M x = b exactly; None when inconsistent.
pub fn solve_linear(m: &FinMatrix, b: &FinVector, policy: &TolerancePolicy) -> Option<FinVector> {
    assert_eq!(m.rows(), b.dim());
    let mut aug = FinMatrix::from_fn(m.rows(), m.cols() + 1, |i, j| {
        if j < m.cols() {
            m.get(i, j).clone()
        } else {
            b.get(i).clone()
        }
    });
    if aug.mode() == Mode::Float {
        aug = aug.to_float();
    }
    let (r, pivots) = rref(&aug, policy);
    if pivots.contains(&m.cols()) {
        return None;
    }
    let mut x = FinVector::zeros(m.cols());
    for (row, &pc) in pivots.iter().enumerate() {
        x.set(pc, r.get(row, m.cols()).clone());
    }
    Some(x)
}

/// Exact inverse, or a kernel-vector witness of singularity.
pub fn invert(m: &FinMatrix) -> Result<FinMatrix, NumError> {
    if !m.is_square() {
        return Err(NumError::Shape(format!(
            "invert needs a square matrix, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let policy = TolerancePolicy::default();
    let aug = FinMatrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            m.get(i, j).clone()
        } else if j - n == i {
            Scalar::one()
        } else {
            Scalar::zero()
        }
    });
    let (r, pivots) = rref(&aug, &policy);
    if pivots.len() < n || pivots.iter().enumerate().any(|(k, &c)| c != k) {
        let witness = null_space_basis(m, &policy)
            .into_iter()
            .next()
            .unwrap_or_else(|| FinVector::zeros(n));
        return Err(NumError::Singular { witness });
    }
    Ok(FinMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
}

/// Gram–Schmidt without normalization: returns exactly orthogonal vectors
/// spanning the same space plus their Gram diagonal ⟨v,v⟩. Zero inputs are
/// dropped. In Float mode the output is orthonormal (Gram diagonal all 1).
pub fn gram_schmidt(vecs: &[FinVector], policy: &TolerancePolicy) -> (Vec<FinVector>, Vec<Scalar>) {
    let float = vecs.iter().any(|v| v.mode() == Mode::Float);
    let mut out: Vec<FinVector> = Vec::new();
    let mut gram: Vec<Scalar> = Vec::new();
    for v in vecs {
        let mut w = v.clone();
        for (u, g) in out.iter().zip(&gram) {
            let coeff = w.inner(u).div(g).expect("gram entries are nonzero");
            w = w.sub(&u.scale(&coeff));
        }
        let nsq = w.norm_sq();
        let drop = if float {
            nsq.abs_f64() <= policy.rank_tol * policy.rank_tol
        } else {
            nsq.is_zero()
        };
        if drop {
            continue;
        }
        if float {
            let norm = nsq.exact_sqrt().expect("float sqrt of nonnegative");
            let inv = norm.inv().unwrap();
            out.push(w.scale(&inv));
            gram.push(Scalar::from_f64(1.0));
        } else {
            out.push(w);
            gram.push(nsq);
        }
    }
    (out, gram)
}

/// Orthogonal (Exact) / orthonormal (Float) basis of ran M with the Gram
/// diagonal, from the columns of M.
pub fn orth_basis_of_range(
    m: &FinMatrix,
    policy: &TolerancePolicy,
) -> (Vec<FinVector>, Vec<Scalar>) {
    let cols: Vec<FinVector> = (0..m.cols()).map(|j| m.col(j)).collect();
    gram_schmidt(&cols, policy)
}

/// Coordinates of `target` in the span of `vecs`, or None when outside.
pub fn express_in_span(
    vecs: &[FinVector],
    target: &FinVector,
    policy: &TolerancePolicy,
) -> Option<FinVector> {
    if vecs.is_empty() {
        return target.is_zero().then(|| FinVector::zeros(0));
    }
    let m = FinMatrix::from_cols(vecs);
    solve_linear(&m, target, policy)
}

/// Exact negative-direction witness for a hermitian matrix: Some(x) with
/// x*Mx < 0, or None when M ⪰ 0. Exact mode only; the caller handles Float.
///
/// Runs pivoted rational LDL*-style elimination. A negative diagonal pivot
/// or an all-zero diagonal with a nonzero off-diagonal entry refutes
/// positivity; the witness is lifted back through the Schur complements.
pub fn psd_witness(m: &FinMatrix) -> Option<FinVector> {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return None;
    }
    // active[i]: original index of the i-th row/col of the current block.
    let mut block = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    // For each elimination step, remember (pivot original index, pivot value,
    // the pivot column restricted to the still-active indices).
    let mut steps: Vec<(usize, Scalar, Vec<(usize, Scalar)>)> = Vec::new();

    loop {
        let k = active.len();
        if k == 0 || block.is_zero() {
            return None;
        }
        // Diagonal entries of a hermitian matrix are real.
        if let Some(i) = (0..k).find(|&i| block.get(i, i).real_sign() == Ordering::Less) {
            let mut w = FinVector::zeros(n);
            w.set(active[i], Scalar::one());
            return Some(lift_witness(w, &steps, n));
        }
        if let Some(i) = (0..k).find(|&i| block.get(i, i).real_sign() == Ordering::Greater) {
            // Eliminate pivot i, form the Schur complement on the rest.
            let d = block.get(i, i).clone();
            let col: Vec<(usize, Scalar)> = (0..k)
                .filter(|&r| r != i)
                .map(|r| (active[r], block.get(r, i).clone()))
                .collect();
            let rest: Vec<usize> = (0..k).filter(|&r| r != i).collect();
            let mut next = FinMatrix::zeros(k - 1, k - 1);
            let dinv = d.inv().unwrap();
            for (a, &ra) in rest.iter().enumerate() {
                for (b, &rb) in rest.iter().enumerate() {
                    let corr = &(block.get(ra, i) * &dinv) * &block.get(i, rb).clone();
                    next.set(a, b, block.get(ra, rb) - &corr);
                }
            }
            steps.push((active[i], d, col));
            active = rest.iter().map(|&r| active[r]).collect();
            block = next;
            continue;
        }
        // All diagonal entries are zero but the block is nonzero: some
        // off-diagonal a = M_ij ≠ 0 gives the witness -a·e_i + e_j.
        let (i, j) = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .find(|&(i, j)| i != j && !block.get(i, j).is_zero())
            .expect("nonzero block with zero diagonal has an off-diagonal entry");
        let a = block.get(i, j).clone();
        let mut w = FinVector::zeros(n);
        w.set(active[i], -&a);
        w.set(active[j], Scalar::one());
        return Some(lift_witness(w, &steps, n));
    }
}

/// Undo the Schur-complement eliminations: a witness y for the complement
/// extends to x = y ⊕ x_p with x_p = −(pivot row · y)/d, preserving the
/// quadratic form value.
fn lift_witness(mut w: FinVector, steps: &[(usize, Scalar, Vec<(usize, Scalar)>)], n: usize) -> FinVector {
    debug_assert_eq!(w.dim(), n);
    for (idx, d, col) in steps.iter().rev() {
        // b*y = Σ conj(col_r)·y_r over active coordinates r of this step.
        let mut by = Scalar::zero();
        for (orig, c) in col {
            if !w.get(*orig).is_zero() {
                by += &(&c.conj() * w.get(*orig));
            }
        }
        let xp = (-&by).div(d).unwrap();
        w.set(*idx, xp);
    }
    w
}

/// Positive semidefiniteness. Exact mode decides by rational elimination
/// (no square roots); Float mode checks the smallest eigenvalue against
/// `psd_tol`. Errors when the input is not hermitian.
pub fn psd_check(m: &FinMatrix, policy: &TolerancePolicy) -> Result<bool, NumError> {
    let float = m.mode() == Mode::Float;
    let tol = if float { policy.psd_tol } else { 0.0 };
    if !m.is_hermitian(tol) {
        return Err(NumError::NotHermitian);
    }
    if float {
        let eigs = super::spectral::hermitian_eigen_float_values(m);
        Ok(eigs.into_iter().all(|l| l >= -policy.psd_tol))
    } else {
        Ok(psd_witness(m).is_none())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_of(&FinMatrix::identity(3), &policy()), 3);
        let uv = FinMatrix::outer(&FinVector::basis(2, 0), &FinVector::basis(3, 1));
        assert_eq!(rank_of(&uv, &policy()), 1);
        let d = FinMatrix::diag(vec![
            Scalar::ratio(3, 4),
            Scalar::ratio(1, 4),
            Scalar::zero(),
        ]);
        assert_eq!(rank_of(&d, &policy()), 2);
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&FinMatrix::identity(2)).unwrap(), FinMatrix::identity(2));
        let d = FinMatrix::diag(vec![Scalar::from_int(2), Scalar::ratio(1, 2)]);
        let di = invert(&d).unwrap();
        assert_eq!(di, FinMatrix::diag(vec![Scalar::ratio(1, 2), Scalar::from_int(2)]));
        let ones = FinMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), Scalar::one()],
        ]);
        match invert(&ones) {
            Err(NumError::Singular { witness }) => {
                // kernel of [[1,1],[1,1]] is span{(1,-1)}
                assert!(ones.mul_vec(&witness).is_zero());
                assert!(!witness.is_zero());
            }
            other => panic!("expected singular, got {other:?}"),
        }
    }

    #[test]
    fn psd_examples() {
        let d = FinMatrix::diag(vec![Scalar::ratio(3, 4), Scalar::ratio(1, 4)]);
        assert!(psd_check(&d, &policy()).unwrap());
        assert!(psd_check(&FinMatrix::zeros(3, 3), &policy()).unwrap());
        let offdiag = FinMatrix::from_rows(vec![
            vec![Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero()],
        ]);
        assert!(!psd_check(&offdiag, &policy()).unwrap());
        let w = psd_witness(&offdiag).unwrap();
        let q = w.inner(&offdiag.mul_vec(&w).scale(&Scalar::one()));
        // quadratic form x*Mx = <Mx, x> conj... check via <w, Mw>
        let val = offdiag.mul_vec(&w).inner(&w);
        assert_eq!(q.mode(), val.mode());
        assert!(val.real_sign() == Ordering::Less);
    }

    #[test]
    fn psd_witness_negative_pivot_behind_schur() {
        // [[1, 2],[2, 1]] has eigenvalues 3 and -1.
        let m = FinMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::from_int(2)],
            vec![Scalar::from_int(2), Scalar::one()],
        ]);
        let w = psd_witness(&m).unwrap();
        let val = m.mul_vec(&w).inner(&w);
        assert!(val.real_sign() == Ordering::Less);
    }

    #[test]
    fn orth_basis_examples() {
        let (b, _) = orth_basis_of_range(&FinMatrix::zeros(2, 2), &policy());
        assert!(b.is_empty());
        let d = FinMatrix::diag(vec![Scalar::one(), Scalar::zero()]);
        let (b, g) = orth_basis_of_range(&d, &policy());
        assert_eq!(b.len(), 1);
        assert_eq!(g[0], Scalar::one());
        let ones = FinMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), Scalar::one()],
        ]);
        let (b, g) = orth_basis_of_range(&ones, &policy());
        assert_eq!(b.len(), 1);
        assert_eq!(b[0], FinVector::new(vec![Scalar::one(), Scalar::one()]));
        assert_eq!(g[0], Scalar::from_int(2));
    }

    #[test]
    fn null_space_and_solve() {
        let ones = FinMatrix::from_rows(vec![
            vec![Scalar::one(), Scalar::one()],
            vec![Scalar::one(), Scalar::one()],
        ]);
        let ns = null_space_basis(&ones, &policy());
        assert_eq!(ns.len(), 1);
        assert!(ones.mul_vec(&ns[0]).is_zero());
        let b = FinVector::new(vec![Scalar::from_int(2), Scalar::from_int(2)]);
        let x = solve_linear(&ones, &b, &policy()).unwrap();
        assert_eq!(ones.mul_vec(&x), b);
        let bad = FinVector::new(vec![Scalar::from_int(1), Scalar::from_int(2)]);
        assert!(solve_linear(&ones, &bad, &policy()).is_none());
    }
}
