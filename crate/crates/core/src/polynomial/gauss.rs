use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// An exact Gaussian integer `re + im·i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    pub fn new(re: impl Into<BigInt>, im: impl Into<BigInt>) -> Self {
        Self {
            re: re.into(),
            im: im.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn i() -> Self {
        Self::new(0, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    /// `i^k`, computed from `k mod 4`.
    pub fn i_pow(k: usize) -> Self {
        match k % 4 {
            0 => Self::new(1, 0),
            1 => Self::new(0, 1),
            2 => Self::new(-1, 0),
            _ => Self::new(0, -1),
        }
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self {
            re: &self.re * factor,
            im: &self.im * factor,
        }
    }
}

impl Add for &GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, rhs: GaussInt) -> GaussInt {
        &self + &rhs
    }
}

impl Sub for &GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, rhs: GaussInt) -> GaussInt {
        &self - &rhs
    }
}

impl Mul for &GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: &GaussInt) -> GaussInt {
        GaussInt {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, rhs: GaussInt) -> GaussInt {
        &self * &rhs
    }
}

impl Neg for &GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        -&self
    }
}

/// Prints `m+ni` / `m-ni`, eliding zero parts and a unit imaginary
/// coefficient: `0`, `3`, `-i`, `2+i`, `-1-4i`.
impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if !self.re.is_zero() {
            write!(f, "{}", self.re)?;
            if self.im.is_positive() {
                f.write_str("+")?;
            }
        }
        if self.im.is_negative() {
            f.write_str("-")?;
        }
        let mag = self.im.abs();
        if !mag.is_one() {
            write!(f, "{mag}")?;
        }
        f.write_str("i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_forms() {
        assert_eq!(GaussInt::zero().to_string(), "0");
        assert_eq!(GaussInt::new(3, 0).to_string(), "3");
        assert_eq!(GaussInt::new(-1, 0).to_string(), "-1");
        assert_eq!(GaussInt::new(0, 1).to_string(), "i");
        assert_eq!(GaussInt::new(0, -1).to_string(), "-i");
        assert_eq!(GaussInt::new(2, 2).to_string(), "2+2i");
        assert_eq!(GaussInt::new(-1, -4).to_string(), "-1-4i");
        assert_eq!(GaussInt::new(5, -1).to_string(), "5-i");
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&GaussInt::i() * &GaussInt::i(), GaussInt::new(-1, 0));
        for k in 0..12 {
            let mut acc = GaussInt::one();
            for _ in 0..k {
                acc = &acc * &GaussInt::i();
            }
            assert_eq!(acc, GaussInt::i_pow(k));
        }
    }
}
