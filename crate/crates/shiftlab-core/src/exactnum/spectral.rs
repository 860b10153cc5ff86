use std::cmp::Ordering;

use nalgebra::{Complex, DMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::matrix::{FinMatrix, FinVector};
use super::policy::TolerancePolicy;
use super::scalar::{Mode, Scalar};
use super::solve::{gram_schmidt, null_space_basis, psd_check};
use super::NumError;

/// Result of a hermitian spectral decomposition into rank-one terms.
#[derive(Debug, Clone)]
pub struct SpectralDecomp {
    /// (eigenvalue, unit eigenvector), eigenvalues ascending, zero modes
    /// omitted. Ties are broken by the lexicographically smallest
    /// representative with first nonzero entry positive real.
    pub pairs: Vec<(Scalar, FinVector)>,
    /// True when an Exact-mode request had to re-run in Float mode
    /// (characteristic polynomial does not split rationally, or an
    /// eigenvector norm is not a perfect rational square).
    pub float_derived: bool,
}

impl SpectralDecomp {
    /// Σ αⱼ eⱼeⱼ* as a matrix, for reassembly checks.
    pub fn reassemble(&self, dim: usize) -> FinMatrix {
        let mut acc = FinMatrix::zeros(dim, dim);
        for (a, e) in &self.pairs {
            acc = acc.add(&FinMatrix::outer(e, e).scale(a));
        }
        acc
    }
}

/// Monic characteristic polynomial det(λI − M), coefficients from λ⁰ up.
/// Faddeev–LeVerrier over the scalar field; exact in Exact mode.
pub fn char_poly(m: &FinMatrix) -> Vec<Scalar> {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = vec![Scalar::zero(); n + 1];
    coeffs[n] = Scalar::one();
    let mut aux = FinMatrix::zeros(n, n);
    for k in 1..=n {
        // aux = M·(aux + c_{n-k+1}·I)
        let mut shifted = aux;
        for i in 0..n {
            shifted.add_at(i, i, &coeffs[n - k + 1]);
        }
        aux = m.mul(&shifted);
        let mut trace = Scalar::zero();
        for i in 0..n {
            trace += aux.get(i, i);
        }
        let minus_k = Scalar::ratio(-1, k as i64);
        coeffs[n - k] = &trace * &minus_k;
    }
    coeffs
}

const FACTOR_DIGIT_LIMIT: usize = 28;

/// All rational roots with multiplicity of a rational-coefficient
/// polynomial, or None when it does not split over Q (or the coefficient
/// factorizations are out of reach).
fn rational_roots(coeffs: &[BigRational]) -> Option<Vec<(BigRational, usize)>> {
    // Strip leading zero coefficients: roots at 0.
    let mut c: Vec<BigRational> = coeffs.to_vec();
    while c.len() > 1 && c.last().unwrap().is_zero() {
        c.pop();
    }
    let mut zero_mult = 0usize;
    while !c.is_empty() && c[0].is_zero() {
        c.remove(0);
        zero_mult += 1;
    }
    let mut roots: Vec<(BigRational, usize)> = Vec::new();
    if zero_mult > 0 {
        roots.push((BigRational::zero(), zero_mult));
    }
    if c.len() <= 1 {
        return Some(roots);
    }
    // Clear denominators to an integer polynomial.
    let mut lcm = BigInt::one();
    for q in &c {
        lcm = lcm.lcm(q.denom());
    }
    let mut ic: Vec<BigInt> = c
        .iter()
        .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();

    while ic.len() > 1 {
        let lead = ic.last().unwrap().clone();
        let tail = ic[0].clone();
        debug_assert!(!tail.is_zero());
        let ps = divisors_bounded(&tail.abs())?;
        let qs = divisors_bounded(&lead.abs())?;
        let mut found = None;
        'search: for p in &ps {
            for q in &qs {
                if p.gcd(q) != BigInt::one() {
                    continue;
                }
                for sign in [1i32, -1] {
                    let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                    if poly_eval_int(&ic, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let root = found?;
        let mut mult = 0usize;
        while poly_eval_int(&ic, &root).is_zero() {
            ic = deflate(&ic, &root);
            mult += 1;
            if ic.len() <= 1 {
                break;
            }
        }
        merge_root(&mut roots, root, mult);
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Some(roots)
}

fn merge_root(roots: &mut Vec<(BigRational, usize)>, root: BigRational, mult: usize) {
    if let Some(entry) = roots.iter_mut().find(|(r, _)| *r == root) {
        entry.1 += mult;
    } else {
        roots.push((root, mult));
    }
}

fn poly_eval_int(coeffs: &[BigInt], x: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + BigRational::from_integer(c.clone());
    }
    acc
}

/// Synthetic division of an integer polynomial by (x − root), re-clearing
/// denominators afterwards.
fn deflate(coeffs: &[BigInt], root: &BigRational) -> Vec<BigInt> {
    let n = coeffs.len();
    let mut out: Vec<BigRational> = vec![BigRational::zero(); n - 1];
    let mut carry = BigRational::zero();
    for k in (0..n - 1).rev() {
        carry = BigRational::from_integer(coeffs[k + 1].clone()) + carry * root;
        out[k] = carry.clone();
    }
    let mut lcm = BigInt::one();
    for q in &out {
        lcm = lcm.lcm(q.denom());
    }
    out.iter()
        .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
        .collect()
}

/// All positive divisors, or None when |n| is too large to factor quickly.
fn divisors_bounded(n: &BigInt) -> Option<Vec<BigInt>> {
    if n.is_zero() {
        return Some(vec![BigInt::one()]);
    }
    if n.to_string().len() > FACTOR_DIGIT_LIMIT {
        return None;
    }
    let mut rest = n.clone();
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let limit = BigInt::from(1_000_000u64);
    while &d * &d <= rest && d <= limit {
        let mut mult = 0;
        while (&rest % &d).is_zero() {
            rest /= &d;
            mult += 1;
        }
        if mult > 0 {
            factors.push((d.clone(), mult));
        }
        d += 1;
    }
    if rest > BigInt::one() {
        if &rest * &rest > n * BigInt::one() && rest > limit {
            // Residual could still be prime; accept it as a prime factor
            // only if it passed trial division up to its square root.
            if d.clone() * d.clone() <= rest {
                return None;
            }
        }
        factors.push((rest, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, mult) in factors {
        let mut next = Vec::with_capacity(divs.len() * (mult as usize + 1));
        for d0 in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=mult {
                next.push(d0 * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

/// Canonical phase: scale a vector so its first nonzero entry is positive
/// real, exactly when possible.
fn canonical_phase(v: &FinVector) -> Option<FinVector> {
    let Some(k) = v.first_nonzero() else {
        return Some(v.clone());
    };
    let lead = v.get(k);
    match lead {
        Scalar::Exact(re, im) => {
            if im.is_zero() {
                let s = if re.is_negative() {
                    Scalar::from_int(-1)
                } else {
                    Scalar::one()
                };
                Some(v.scale(&s))
            } else if re.is_zero() {
                // multiply by ∓i
                let s = if im.is_negative() {
                    Scalar::i()
                } else {
                    -&Scalar::i()
                };
                Some(v.scale(&s))
            } else {
                // need |lead| rational: conj(lead)/|lead|
                let modulus = lead.abs_sq().exact_sqrt()?;
                let s = lead.conj().div(&modulus).unwrap();
                Some(v.scale(&s))
            }
        }
        Scalar::Float(..) => {
            let modulus = lead.abs_f64();
            let s = lead.conj().div(&Scalar::from_f64(modulus)).unwrap();
            Some(v.scale(&s))
        }
    }
}

/// Canonical vector order: earlier leading support first, then entrywise
/// scalar order. Puts (1,0) before (0,1).
fn vec_lex_cmp(a: &FinVector, b: &FinVector) -> Ordering {
    let fa = a.first_nonzero().unwrap_or(usize::MAX);
    let fb = b.first_nonzero().unwrap_or(usize::MAX);
    if fa != fb {
        return fa.cmp(&fb);
    }
    for (x, y) in a.iter().zip(b.iter()) {
        let c = x.lex_cmp(y);
        if c != Ordering::Equal {
            return c;
        }
    }
    Ordering::Equal
}

/// Signed spectral pairs of a hermitian matrix: eigenvalue ascending,
/// zero eigenvalues dropped, eigenvectors orthonormal.
///
/// Tries the exact route first (rational characteristic roots + exact
/// eigenspaces + perfect-square norms); re-runs in Float mode and flags the
/// result otherwise. Float inputs go straight to the Float route.
pub fn hermitian_pairs(m: &FinMatrix, policy: &TolerancePolicy) -> Result<SpectralDecomp, NumError> {
    let float_in = m.mode() == Mode::Float;
    let tol = if float_in { policy.psd_tol } else { 0.0 };
    if !m.is_hermitian(tol) {
        return Err(NumError::NotHermitian);
    }
    if !float_in {
        if let Some(pairs) = hermitian_pairs_exact(m, policy) {
            return Ok(SpectralDecomp {
                pairs,
                float_derived: false,
            });
        }
    }
    let pairs = hermitian_pairs_float(m, policy);
    Ok(SpectralDecomp {
        pairs,
        float_derived: !float_in,
    })
}

fn hermitian_pairs_exact(
    m: &FinMatrix,
    policy: &TolerancePolicy,
) -> Option<Vec<(Scalar, FinVector)>> {
    let n = m.rows();
    let cp = char_poly(m);
    let rational_coeffs: Option<Vec<BigRational>> = cp
        .iter()
        .map(|c| {
            // hermitian char polys are real
            let re = c.re_rational()?;
            c.im_rational()
                .filter(|im| im.is_zero())
                .map(|_| re.clone())
        })
        .collect();
    let roots = rational_roots(&rational_coeffs?)?;
    let total: usize = roots.iter().map(|(_, k)| k).sum();
    if total != n {
        return None;
    }
    let mut pairs = Vec::new();
    for (root, mult) in roots {
        if root.is_zero() {
            continue;
        }
        let alpha = Scalar::from_rational(root);
        let mut shifted = m.clone();
        for i in 0..n {
            shifted.add_at(i, i, &-&alpha);
        }
        let basis = null_space_basis(&shifted, policy);
        if basis.len() != mult {
            return None;
        }
        let (orth, gram) = gram_schmidt(&basis, policy);
        let mut eigvecs = Vec::new();
        for (v, g) in orth.iter().zip(&gram) {
            let norm = g.exact_sqrt()?;
            let unit = v.scale(&norm.inv().unwrap());
            eigvecs.push(canonical_phase(&unit)?);
        }
        eigvecs.sort_by(vec_lex_cmp);
        for v in eigvecs {
            pairs.push((alpha.clone(), v));
        }
    }
    pairs.sort_by(|a, b| a.0.lex_cmp(&b.0).then_with(|| vec_lex_cmp(&a.1, &b.1)));
    Some(pairs)
}

fn to_nalgebra(m: &FinMatrix) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        let (re, im) = m.get(i, j).to_f64_pair();
        Complex::new(re, im)
    })
}

pub(super) fn hermitian_eigen_float_values(m: &FinMatrix) -> Vec<f64> {
    if m.rows() == 0 {
        return Vec::new();
    }
    let sym = to_nalgebra(m).symmetric_eigen();
    sym.eigenvalues.iter().copied().collect()
}

fn hermitian_pairs_float(m: &FinMatrix, policy: &TolerancePolicy) -> Vec<(Scalar, FinVector)> {
    let n = m.rows();
    if n == 0 {
        return Vec::new();
    }
    let scale: f64 = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j).abs_f64())
        .fold(1.0, f64::max);
    let sym = to_nalgebra(m).symmetric_eigen();
    let mut pairs: Vec<(Scalar, FinVector)> = Vec::new();
    for (k, lambda) in sym.eigenvalues.iter().enumerate() {
        if lambda.abs() <= policy.rank_tol * scale {
            continue;
        }
        let col = sym.eigenvectors.column(k);
        let v = FinVector::new(
            col.iter()
                .map(|z| Scalar::from_f64_pair(z.re, z.im))
                .collect(),
        );
        let v = canonical_phase(&v).expect("float phase always exists");
        pairs.push((Scalar::from_f64(*lambda), v));
    }
    pairs.sort_by(|a, b| a.0.lex_cmp(&b.0).then_with(|| vec_lex_cmp(&a.1, &b.1)));
    pairs
}

/// Spectral rank-one decomposition of a PSD hermitian matrix:
/// M = Σ αⱼ eⱼ⊗eⱼ with αⱼ > 0 ascending and {eⱼ} orthonormal.
pub fn spectral_rank_one_decomp(
    m: &FinMatrix,
    policy: &TolerancePolicy,
) -> Result<SpectralDecomp, NumError> {
    if !psd_check(m, policy)? {
        return Err(NumError::NotPsd);
    }
    hermitian_pairs(m, policy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn policy() -> TolerancePolicy {
        TolerancePolicy::default()
    }

    #[test]
    fn char_poly_diag() {
        // det(λI - diag(1,2)) = λ² - 3λ + 2
        let m = FinMatrix::diag(vec![Scalar::from_int(1), Scalar::from_int(2)]);
        let cp = char_poly(&m);
        assert_eq!(cp[0], Scalar::from_int(2));
        assert_eq!(cp[1], Scalar::from_int(-3));
        assert_eq!(cp[2], Scalar::one());
    }

    #[test]
    fn decomp_example_64_tail() {
        let m = FinMatrix::diag(vec![Scalar::ratio(3, 4), Scalar::ratio(1, 4)]);
        let d = spectral_rank_one_decomp(&m, &policy()).unwrap();
        assert!(!d.float_derived);
        assert_eq!(d.pairs.len(), 2);
        assert_eq!(d.pairs[0].0, Scalar::ratio(1, 4));
        assert_eq!(d.pairs[0].1, FinVector::basis(2, 1));
        assert_eq!(d.pairs[1].0, Scalar::ratio(3, 4));
        assert_eq!(d.pairs[1].1, FinVector::basis(2, 0));
    }

    #[test]
    fn decomp_identity_tie_break() {
        let d = spectral_rank_one_decomp(&FinMatrix::identity(2), &policy()).unwrap();
        assert_eq!(d.pairs.len(), 2);
        assert_eq!(d.pairs[0].0, Scalar::one());
        assert_eq!(d.pairs[0].1, FinVector::basis(2, 0));
        assert_eq!(d.pairs[1].1, FinVector::basis(2, 1));
    }

    #[test]
    fn decomp_half_ones_floats() {
        // (1/2)·[[1,1],[1,1]]: single eigenvalue 1, eigenvector (1,1)/√2 —
        // norm not a perfect square, so the result is Float-derived.
        let half = Scalar::ratio(1, 2);
        let m = FinMatrix::from_rows(vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), half.clone()],
        ]);
        let d = spectral_rank_one_decomp(&m, &policy()).unwrap();
        assert!(d.float_derived);
        assert_eq!(d.pairs.len(), 1);
        assert!(d.pairs[0].0.approx_eq(&Scalar::from_f64(1.0), 1e-12));
        let e = &d.pairs[0].1;
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        assert!(e.get(0).approx_eq(&Scalar::from_f64(inv_sqrt2), 1e-12));
        assert!(e.get(1).approx_eq(&Scalar::from_f64(inv_sqrt2), 1e-12));
    }

    #[test]
    fn reassembly_exact() {
        let m = FinMatrix::from_rows(vec![
            vec![Scalar::from_int(2), Scalar::one()],
            vec![Scalar::one(), Scalar::from_int(2)],
        ]);
        // eigenvalues 1 and 3, eigenvectors (1,∓1)/√2 — norms are not
        // perfect squares, so exact mode falls back to Float.
        let d = hermitian_pairs(&m, &policy()).unwrap();
        assert!(d.float_derived);
        assert!(d.reassemble(2).approx_eq(&m, 1e-9));
        // A rationally-splitting case stays exact.
        let m2 = FinMatrix::diag(vec![Scalar::ratio(1, 3), Scalar::from_int(1)]);
        let d2 = hermitian_pairs(&m2, &policy()).unwrap();
        assert!(!d2.float_derived);
        assert_eq!(d2.reassemble(2), m2);
    }

    #[test]
    fn signed_pairs() {
        let m = FinMatrix::diag(vec![Scalar::from_int(-1), Scalar::from_int(1)]);
        let d = hermitian_pairs(&m, &policy()).unwrap();
        assert_eq!(d.pairs[0].0, Scalar::from_int(-1));
        assert_eq!(d.pairs[1].0, Scalar::from_int(1));
        assert!(spectral_rank_one_decomp(&m, &policy()).is_err());
    }
}
