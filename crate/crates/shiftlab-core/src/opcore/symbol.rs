use std::collections::BTreeMap;

use crate::exactnum::{FinMatrix, Mode};

/// Matrix Laurent-polynomial symbol f(z) = Σ_{|k| ≤ band} C_k zᵏ with
/// C_k ∈ C^{p_out × p_in}, inducing the block-Toeplitz action
/// (T_f x)_i = Σ_j C_{i−j} x_j on Z₊-supported sequences.
///
/// Canonical form keeps only nonzero coefficients; an empty map is the zero
/// symbol (mandatory when p_out·p_in = 0).
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentSymbol {
    p_out: usize,
    p_in: usize,
    coeffs: BTreeMap<i64, FinMatrix>,
}

impl LaurentSymbol {
    pub fn zero(p_out: usize, p_in: usize) -> Self {
        LaurentSymbol {
            p_out,
            p_in,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs(p_out: usize, p_in: usize, coeffs: BTreeMap<i64, FinMatrix>) -> Self {
        let mut s = LaurentSymbol {
            p_out,
            p_in,
            coeffs,
        };
        s.canonicalize();
        s
    }

    pub fn monomial(k: i64, c: FinMatrix) -> Self {
        let (p_out, p_in) = (c.rows(), c.cols());
        let mut coeffs = BTreeMap::new();
        coeffs.insert(k, c);
        Self::from_coeffs(p_out, p_in, coeffs)
    }

    pub fn canonicalize(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
        if self.p_out == 0 || self.p_in == 0 {
            self.coeffs.clear();
        }
    }

    pub fn p_out(&self) -> usize {
        self.p_out
    }

    pub fn p_in(&self) -> usize {
        self.p_in
    }

    pub fn band(&self) -> usize {
        self.coeffs
            .keys()
            .map(|k| k.unsigned_abs() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, k: i64) -> Option<&FinMatrix> {
        self.coeffs.get(&k)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&i64, &FinMatrix)> {
        self.coeffs.iter()
    }

    /// True when only the k = 0 coefficient is present.
    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    /// The k = 0 coefficient, materialized as a matrix.
    pub fn constant_coeff(&self) -> FinMatrix {
        self.coeff(0)
            .cloned()
            .unwrap_or_else(|| FinMatrix::zeros(self.p_out, self.p_in))
    }

    pub fn add(&self, other: &LaurentSymbol) -> LaurentSymbol {
        assert_eq!((self.p_out, self.p_in), (other.p_out, other.p_in));
        let mut coeffs = self.coeffs.clone();
        for (k, c) in &other.coeffs {
            coeffs
                .entry(*k)
                .and_modify(|m| *m = m.add(c))
                .or_insert_with(|| c.clone());
        }
        Self::from_coeffs(self.p_out, self.p_in, coeffs)
    }

    pub fn scale(&self, c: &crate::exactnum::Scalar) -> LaurentSymbol {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, m)| (*k, m.scale(c)))
            .collect();
        Self::from_coeffs(self.p_out, self.p_in, coeffs)
    }

    /// Adjoint symbol: f*(z) = Σ C_k^H z^{−k}.
    pub fn adjoint(&self) -> LaurentSymbol {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, m)| (-k, m.adjoint()))
            .collect();
        Self::from_coeffs(self.p_in, self.p_out, coeffs)
    }

    /// Laurent product (self ∘ other): (fg)_k = Σ_{u+v=k} f_u g_v.
    pub fn mul(&self, other: &LaurentSymbol) -> LaurentSymbol {
        assert_eq!(self.p_in, other.p_out, "symbol shape mismatch");
        let mut coeffs: BTreeMap<i64, FinMatrix> = BTreeMap::new();
        for (u, cu) in &self.coeffs {
            for (v, cv) in &other.coeffs {
                let prod = cu.mul(cv);
                coeffs
                    .entry(u + v)
                    .and_modify(|m| *m = m.add(&prod))
                    .or_insert(prod);
            }
        }
        Self::from_coeffs(self.p_out, other.p_in, coeffs)
    }

    pub fn mode(&self) -> Mode {
        if self.coeffs.values().any(|c| c.mode() == Mode::Float) {
            Mode::Float
        } else {
            Mode::Exact
        }
    }

    pub fn approx_eq(&self, other: &LaurentSymbol, tol: f64) -> bool {
        if (self.p_out, self.p_in) != (other.p_out, other.p_in) {
            return false;
        }
        let keys: std::collections::BTreeSet<i64> = self
            .coeffs
            .keys()
            .chain(other.coeffs.keys())
            .copied()
            .collect();
        let zero = FinMatrix::zeros(self.p_out, self.p_in);
        keys.into_iter().all(|k| {
            let a = self.coeffs.get(&k).unwrap_or(&zero);
            let b = other.coeffs.get(&k).unwrap_or(&zero);
            a.approx_eq(b, tol)
        })
    }
}
