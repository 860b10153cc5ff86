use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arithmetic mode of a scalar (and, by contagion, of any aggregate).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Float,
}

/// A complex scalar, either an exact Gaussian rational or a pair of doubles.
///
/// Mixed-mode arithmetic promotes to Float. Exact arithmetic is closed under
/// +, −, ×, and division by nonzero.
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(BigRational, BigRational),
    Float(f64, f64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        Scalar::Exact(BigRational::zero(), BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(BigRational::from_integer(n.into()), BigRational::zero())
    }

    /// Exact rational `num/den`. Panics on zero denominator.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Exact(
            BigRational::new(num.into(), den.into()),
            BigRational::zero(),
        )
    }

    pub fn complex_ratio(re: (i64, i64), im: (i64, i64)) -> Self {
        assert!(re.1 != 0 && im.1 != 0, "zero denominator");
        Scalar::Exact(
            BigRational::new(re.0.into(), re.1.into()),
            BigRational::new(im.0.into(), im.1.into()),
        )
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar::Exact(re, BigRational::zero())
    }

    pub fn from_rationals(re: BigRational, im: BigRational) -> Self {
        Scalar::Exact(re, im)
    }

    pub fn from_f64(re: f64) -> Self {
        Scalar::Float(re, 0.0)
    }

    pub fn from_f64_pair(re: f64, im: f64) -> Self {
        Scalar::Float(re, im)
    }

    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(..) => Mode::Exact,
            Scalar::Float(..) => Mode::Float,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(re, im) => re.is_zero() && im.is_zero(),
            Scalar::Float(re, im) => *re == 0.0 && *im == 0.0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Exact(re, im) => re.is_one() && im.is_zero(),
            Scalar::Float(re, im) => *re == 1.0 && *im == 0.0,
        }
    }

    pub fn is_real(&self) -> bool {
        match self {
            Scalar::Exact(_, im) => im.is_zero(),
            Scalar::Float(_, im) => *im == 0.0,
        }
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        match self {
            Scalar::Exact(re, im) => (
                re.to_f64().unwrap_or(f64::NAN),
                im.to_f64().unwrap_or(f64::NAN),
            ),
            Scalar::Float(re, im) => (*re, *im),
        }
    }

    pub fn to_float(&self) -> Scalar {
        let (re, im) = self.to_f64_pair();
        Scalar::Float(re, im)
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(re, im) => Scalar::Exact(re.clone(), -im.clone()),
            Scalar::Float(re, im) => Scalar::Float(*re, -im),
        }
    }

    /// |z|² as a real scalar of the same mode.
    pub fn abs_sq(&self) -> Scalar {
        match self {
            Scalar::Exact(re, im) => Scalar::Exact(re * re + im * im, BigRational::zero()),
            Scalar::Float(re, im) => Scalar::Float(re * re + im * im, 0.0),
        }
    }

    pub fn abs_f64(&self) -> f64 {
        let (re, im) = self.to_f64_pair();
        re.hypot(im)
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        match self {
            Scalar::Exact(re, im) => {
                let d = re * re + im * im;
                Some(Scalar::Exact(re / &d, -im / &d))
            }
            Scalar::Float(re, im) => {
                let d = re * re + im * im;
                Some(Scalar::Float(re / d, -im / d))
            }
        }
    }

    pub fn div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|r| self * &r)
    }

    /// Real part as an exact rational, when in Exact mode.
    pub fn re_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(re, _) => Some(re),
            Scalar::Float(..) => None,
        }
    }

    pub fn im_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Exact(_, im) => Some(im),
            Scalar::Float(..) => None,
        }
    }

    /// Sign of the real part: requires the scalar to be real.
    pub fn real_sign(&self) -> Ordering {
        match self {
            Scalar::Exact(re, _) => re.cmp(&BigRational::zero()),
            Scalar::Float(re, _) => re.partial_cmp(&0.0).unwrap_or(Ordering::Equal),
        }
    }

    /// Exact square root of a nonnegative real rational, if it exists.
    /// Float inputs take the ordinary square root.
    pub fn exact_sqrt(&self) -> Option<Scalar> {
        match self {
            Scalar::Exact(re, im) => {
                if !im.is_zero() || re.is_negative() {
                    return None;
                }
                let n = rational_sqrt(re)?;
                Some(Scalar::Exact(n, BigRational::zero()))
            }
            Scalar::Float(re, im) => {
                if *im != 0.0 || *re < 0.0 {
                    None
                } else {
                    Some(Scalar::Float(re.sqrt(), 0.0))
                }
            }
        }
    }

    /// z^n for n ≥ 0.
    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Entrywise closeness; exact equality when tol = 0.
    pub fn approx_eq(&self, other: &Scalar, tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(ar, ai), Scalar::Exact(br, bi)) if tol == 0.0 => ar == br && ai == bi,
            _ => {
                let (ar, ai) = self.to_f64_pair();
                let (br, bi) = other.to_f64_pair();
                (ar - br).abs() <= tol && (ai - bi).abs() <= tol
            }
        }
    }

    /// Total order used for canonical tie-breaking: real part, then
    /// imaginary part. Mixed modes compare through f64.
    pub fn lex_cmp(&self, other: &Scalar) -> Ordering {
        match (self, other) {
            (Scalar::Exact(ar, ai), Scalar::Exact(br, bi)) => {
                ar.cmp(br).then_with(|| ai.cmp(bi))
            }
            _ => {
                let (ar, ai) = self.to_f64_pair();
                let (br, bi) = other.to_f64_pair();
                ar.partial_cmp(&br)
                    .unwrap_or(Ordering::Equal)
                    .then(ai.partial_cmp(&bi).unwrap_or(Ordering::Equal))
            }
        }
    }

    /// Canonical text form: rationals as `p/q` (with `i` part when present),
    /// floats as shortest round-trip decimals.
    pub fn render(&self) -> String {
        fn rat(r: &BigRational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        match self {
            Scalar::Exact(re, im) => {
                if im.is_zero() {
                    rat(re)
                } else if re.is_zero() {
                    format!("{}i", rat(im))
                } else if im.is_negative() {
                    format!("{}{}i", rat(re), rat(im))
                } else {
                    format!("{}+{}i", rat(re), rat(im))
                }
            }
            Scalar::Float(re, im) => {
                if *im == 0.0 {
                    format!("{re}")
                } else if *re == 0.0 {
                    format!("{im}i")
                } else if *im < 0.0 {
                    format!("{re}{im}i")
                } else {
                    format!("{re}+{im}i")
                }
            }
        }
    }
}

/// √r for a nonnegative rational, exact or nothing.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_zero() {
        return Some(BigRational::zero());
    }
    let num = int_sqrt_exact(r.numer())?;
    let den = int_sqrt_exact(r.denom())?;
    Some(BigRational::new(num, den))
}

fn int_sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let root = n.sqrt();
    if &(&root * &root) == n {
        Some(root)
    } else {
        None
    }
}

/// Exact equality (no tolerance). Mixed modes compare through f64.
impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Exact(ar, ai), Scalar::Exact(br, bi)) => ar == br && ai == bi,
            _ => {
                let (ar, ai) = self.to_f64_pair();
                let (br, bi) = other.to_f64_pair();
                ar == br && ai == bi
            }
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(ar, ai), Scalar::Exact(br, bi)) => Scalar::Exact(ar + br, ai + bi),
            _ => {
                let (ar, ai) = self.to_f64_pair();
                let (br, bi) = rhs.to_f64_pair();
                Scalar::Float(ar + br, ai + bi)
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(ar, ai), Scalar::Exact(br, bi)) => {
                Scalar::Exact(ar * br - ai * bi, ar * bi + ai * br)
            }
            _ => {
                let (ar, ai) = self.to_f64_pair();
                let (br, bi) = rhs.to_f64_pair();
                Scalar::Float(ar * br - ai * bi, ar * bi + ai * br)
            }
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(re, im) => Scalar::Exact(-re.clone(), -im.clone()),
            Scalar::Float(re, im) => Scalar::Float(-re, -im),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_ops() {
        let a = Scalar::complex_ratio((1, 2), (3, 1));
        let b = Scalar::complex_ratio((-2, 3), (1, 5));
        let prod = &a * &b;
        let back = prod.div(&b).unwrap();
        assert_eq!(back, a);
        assert_eq!(&a - &a, Scalar::zero());
    }

    #[test]
    fn mixed_mode_promotes() {
        let a = Scalar::ratio(1, 2);
        let b = Scalar::from_f64(0.25);
        assert_eq!((&a + &b).mode(), Mode::Float);
    }

    #[test]
    fn sqrt_perfect_square() {
        assert_eq!(
            Scalar::ratio(1, 4).exact_sqrt().unwrap(),
            Scalar::ratio(1, 2)
        );
        assert!(Scalar::ratio(1, 2).exact_sqrt().is_none());
        assert!(Scalar::from_int(-1).exact_sqrt().is_none());
    }

    #[test]
    fn rendering() {
        assert_eq!(Scalar::ratio(3, 4).render(), "3/4");
        assert_eq!(Scalar::complex_ratio((0, 1), (-1, 2)).render(), "-1/2i");
        assert_eq!(Scalar::from_f64(0.5).render(), "0.5");
        assert_eq!(Scalar::complex_ratio((1, 1), (1, 1)).render(), "1+1i");
    }
}
