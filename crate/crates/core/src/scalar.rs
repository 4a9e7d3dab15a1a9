//! Coefficient arithmetic.
//!
//! Elements carry their coefficients either as exact Gaussian rationals
//! (`a + b i` with `a`, `b` arbitrary-precision rationals) or as complex
//! doubles. Exact mode is the default everywhere relation checking happens;
//! float mode exists for operator norms and for unitaries whose entries do
//! not live in Q(i), such as a Hadamard block. The two modes never mix
//! inside one value.

use std::fmt;

use num::complex::Complex64;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{CkError, Result};

/// Comparison tolerance used by all float-mode predicates.
pub const FLOAT_TOL: f64 = 1e-9;

/// Coefficient mode of an element, unitary or matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exact => write!(f, "exact"),
            Mode::Float => write!(f, "float"),
        }
    }
}

/// A Gaussian rational `re + im*i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRat {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRat { re, im }
    }

    pub fn from_i64(n: i64) -> Self {
        GaussRat {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        GaussRat {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// |z|^2 as an exact rational.
    pub fn norm_sq(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_complex(&self) -> Complex64 {
        fn f(r: &BigRational) -> f64 {
            let n = r.numer();
            let d = r.denom();
            // Good enough for the magnitudes that occur here.
            let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            nf / df
        }
        Complex64::new(f(&self.re), f(&self.im))
    }
}

/// A coefficient in one of the two modes.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(GaussRat),
    Float(Complex64),
}

impl Scalar {
    pub fn mode(&self) -> Mode {
        match self {
            Scalar::Exact(_) => Mode::Exact,
            Scalar::Float(_) => Mode::Float,
        }
    }

    pub fn zero(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(GaussRat::from_i64(0)),
            Mode::Float => Scalar::Float(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn one(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(GaussRat::from_i64(1)),
            Mode::Float => Scalar::Float(Complex64::new(1.0, 0.0)),
        }
    }

    pub fn from_i64(n: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(GaussRat::from_i64(n)),
            Mode::Float => Scalar::Float(Complex64::new(n as f64, 0.0)),
        }
    }

    /// `num/den` in the requested mode.
    pub fn ratio(num: i64, den: i64, mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(GaussRat::ratio(num, den)),
            Mode::Float => Scalar::Float(Complex64::new(num as f64 / den as f64, 0.0)),
        }
    }

    /// Exact Gaussian rational `a/b + (c/d) i`.
    pub fn gauss(a: i64, b: i64, c: i64, d: i64) -> Self {
        Scalar::Exact(GaussRat::new(
            BigRational::new(BigInt::from(a), BigInt::from(b)),
            BigRational::new(BigInt::from(c), BigInt::from(d)),
        ))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::Float(Complex64::new(re, im))
    }

    pub fn i(mode: Mode) -> Self {
        match mode {
            Mode::Exact => Scalar::Exact(GaussRat::new(
                BigRational::zero(),
                BigRational::one(),
            )),
            Mode::Float => Scalar::Float(Complex64::new(0.0, 1.0)),
        }
    }

    /// True for the exact zero. Float dust below `FLOAT_TOL` is *not*
    /// treated as zero here; see [`Scalar::is_small`].
    pub fn is_exactly_zero(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    /// Zero test at the mode's native precision: exact zero in exact mode,
    /// magnitude below `FLOAT_TOL` in float mode.
    pub fn is_small(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(z) => z.norm() <= FLOAT_TOL,
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(GaussRat::new(
                &a.re + &b.re,
                &a.im + &b.im,
            )),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a + b),
            _ => panic!("scalar mode mixed in add"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(GaussRat::new(
                &a.re * &b.re - &a.im * &b.im,
                &a.re * &b.im + &a.im * &b.re,
            )),
            (Scalar::Float(a), Scalar::Float(b)) => Scalar::Float(a * b),
            _ => panic!("scalar mode mixed in mul"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(GaussRat::new(-a.re.clone(), -a.im.clone())),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }

    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Exact(a) => Scalar::Exact(GaussRat::new(a.re.clone(), -a.im.clone())),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_exactly_zero() {
            return Err(CkError::Usage("division by zero scalar".into()));
        }
        Ok(match self {
            Scalar::Exact(a) => {
                let n = a.norm_sq();
                Scalar::Exact(GaussRat::new(&a.re / &n, -(&a.im / &n)))
            }
            Scalar::Float(z) => Scalar::Float(z.inv()),
        })
    }

    /// `self^k` for any integer `k`; negative powers require invertibility.
    pub fn pow_i(&self, k: i64) -> Result<Scalar> {
        let base = if k < 0 { self.recip()? } else { self.clone() };
        let mut acc = Scalar::one(self.mode());
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exactly unimodular in exact mode; within `FLOAT_TOL` of the unit
    /// circle in float mode.
    pub fn is_unimodular(&self) -> bool {
        match self {
            Scalar::Exact(a) => a.norm_sq().is_one(),
            Scalar::Float(z) => (z.norm() - 1.0).abs() <= FLOAT_TOL,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(a) => a.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    /// Magnitude in f64, used for float-mode comparisons and reports.
    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    /// Value equality at the mode's native precision.
    pub fn approx_eq(&self, other: &Scalar) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            (Scalar::Float(a), Scalar::Float(b)) => (a - b).norm() <= FLOAT_TOL,
            _ => false,
        }
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Prints in the scalar literal grammar, so `Display` output reparses.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => {
                if g.im.is_zero() {
                    write!(f, "{}", fmt_rat(&g.re))
                } else if g.re.is_zero() {
                    write!(f, "{} i", fmt_rat(&g.im))
                } else if g.im.is_negative() {
                    write!(f, "{}-{} i", fmt_rat(&g.re), fmt_rat(&-g.im.clone()))
                } else {
                    write!(f, "{}+{} i", fmt_rat(&g.re), fmt_rat(&g.im))
                }
            }
            Scalar::Float(z) => {
                if z.im == 0.0 {
                    write!(f, "{:?}", z.re)
                } else if z.re == 0.0 {
                    write!(f, "{:?} i", z.im)
                } else if z.im < 0.0 {
                    write!(f, "{:?}-{:?} i", z.re, -z.im)
                } else {
                    write!(f, "{:?}+{:?} i", z.re, z.im)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_ops() {
        let a = Scalar::gauss(3, 5, 4, 5);
        let b = a.conj();
        let prod = a.mul(&b);
        assert_eq!(prod, Scalar::one(Mode::Exact));
        assert!(a.is_unimodular());
        assert!(a.sub(&a).is_exactly_zero());
    }

    #[test]
    fn recip_and_powers() {
        let a = Scalar::gauss(0, 1, 1, 1); // i
        assert_eq!(a.pow_i(2).unwrap(), Scalar::from_i64(-1, Mode::Exact));
        assert_eq!(a.pow_i(-1).unwrap(), a.conj());
        assert!(Scalar::zero(Mode::Exact).recip().is_err());
    }

    #[test]
    fn float_tolerance() {
        let z = Scalar::complex(1.0 + 1e-12, 0.0);
        assert!(z.is_unimodular());
        assert!(z.sub(&Scalar::one(Mode::Float)).is_small());
        assert!(!Scalar::complex(1e-6, 0.0).is_small());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Scalar::gauss(1, 2, 1, 2).to_string(), "1/2+1/2 i");
        assert_eq!(Scalar::gauss(-1, 1, 0, 1).to_string(), "-1");
        assert_eq!(Scalar::gauss(0, 1, -3, 4).to_string(), "-3/4 i");
        assert_eq!(Scalar::complex(0.5, -0.25).to_string(), "0.5-0.25 i");
    }
}
