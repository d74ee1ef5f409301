use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::param_poly::ParamPoly;
use crate::error::Error;

/// An element of `Q(m, b)` stored as `num / den`.
///
/// After every operation common factors living in `Q[m]` or `Q[b]` are
/// cancelled, the joint integer content is removed and the leading
/// coefficient of `den` is made positive. Equality is decided by
/// cross-multiplication, so it is sound even when a mixed common factor
/// survives the cancellation.
#[derive(Clone, Debug)]
pub struct RatFunc {
    num: ParamPoly,
    den: ParamPoly,
}

impl RatFunc {
    pub fn new(num: ParamPoly, den: ParamPoly) -> Result<Self, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    pub fn from_poly(p: ParamPoly) -> Self {
        Self::reduced(p, ParamPoly::one())
    }

    pub fn m() -> Self {
        Self::from_poly(ParamPoly::m())
    }

    pub fn b() -> Self {
        Self::from_poly(ParamPoly::b())
    }

    pub fn num(&self) -> &ParamPoly {
        &self.num
    }

    pub fn den(&self) -> &ParamPoly {
        &self.den
    }

    fn reduced(num: ParamPoly, den: ParamPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self {
                num,
                den: ParamPoly::one(),
            };
        }
        let (num, den) = if den.as_constant().is_some() {
            (num, den)
        } else {
            ParamPoly::cancel(num, den)
        };
        let (num, den) = ParamPoly::normalize_content(num, den);
        Self { num, den }
    }

    pub fn inv(&self) -> Result<Self, Error> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    /// Substitutes rational values for `m` and `b`.
    pub fn specialize(&self, m: &BigRational, b: &BigRational) -> Result<BigRational, Error> {
        let d = self.den.eval(m, b);
        if d.is_zero() {
            return Err(Error::DenominatorVanishes {
                value: self.to_string(),
            });
        }
        Ok(self.num.eval(m, b) / d)
    }

    /// True when the value is a polynomial with a single term.
    pub fn is_monomial(&self) -> bool {
        self.den.as_constant().is_some_and(|c| c.is_one()) && self.num.len() == 1
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.num == other.num && self.den == other.den {
            return true;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl Zero for RatFunc {
    fn zero() -> Self {
        Self {
            num: ParamPoly::zero(),
            den: ParamPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RatFunc {
    fn one() -> Self {
        Self::from_poly(ParamPoly::one())
    }
}

impl From<BigRational> for RatFunc {
    fn from(q: BigRational) -> Self {
        Self::from_poly(ParamPoly::constant(q))
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return Self::reduced(&self.num + &rhs.num, self.den);
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::reduced(num, &self.den * &rhs.den)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        self + (-rhs)
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        Self::reduced(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for RatFunc {
    type Output = RatFunc;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: RatFunc) -> RatFunc {
        self * rhs.inv().expect("RatFunc division by zero")
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        Self {
            num: -&self.num,
            den: self.den,
        }
    }
}

/// One factor: renders safely after `/` without parentheses.
fn is_atomic(p: &ParamPoly) -> bool {
    match p.len() {
        0 => true,
        1 => {
            let (&(dm, db), c) = p.leading().expect("nonempty");
            match (dm, db) {
                (0, 0) => c.is_integer(),
                (_, 0) | (0, _) => c.is_one(),
                _ => false,
            }
        }
        _ => false,
    }
}

/// Renders as `p(m,b)/q(m,b)`, e.g. `m/(m-1)` or `(m^2-1)/(2*m)`.
impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.as_constant().is_some_and(|c| c.is_one()) {
            return write!(f, "{}", self.num);
        }
        if self.num.len() > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        let den_neg = self.den.leading().is_some_and(|(_, c)| c.is_negative());
        if is_atomic(&self.den) && !den_neg {
            write!(f, "/{}", self.den)
        } else {
            write!(f, "/({})", self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> RatFunc {
        RatFunc::from(BigRational::from_integer(n.into()))
    }

    #[test]
    fn additive_inverse() {
        assert!((int(1) + int(-1)).is_zero());
    }

    #[test]
    fn common_denominator_collapses() {
        let mm1 = RatFunc::m() - int(1);
        let x = RatFunc::m() / mm1.clone() + int(-1) / mm1;
        assert_eq!(x, int(1));
        assert_eq!(x.to_string(), "1");
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(matches!(RatFunc::zero().inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    fn inverse_of_square() {
        let mm1 = RatFunc::m() - int(1);
        let sq = mm1.clone() * mm1;
        let inv = sq.inv().unwrap();
        assert_eq!(inv.to_string(), "1/(m^2-2*m+1)");
        assert_eq!(inv * sq, int(1));
    }

    #[test]
    fn rendering() {
        let mm1 = RatFunc::m() - int(1);
        assert_eq!((RatFunc::m() / mm1.clone()).to_string(), "m/(m-1)");
        assert_eq!((-RatFunc::b() / mm1).to_string(), "-b/(m-1)");
        assert_eq!((int(1) / RatFunc::m()).to_string(), "1/m");
        assert_eq!((int(1) / (RatFunc::m() * int(2))).to_string(), "1/(2*m)");
        assert_eq!((int(3) / int(4)).to_string(), "3/4");
    }

    #[test]
    fn specialize_identity() {
        let mm1 = RatFunc::m() - int(1);
        let x = (RatFunc::m() * RatFunc::m() - int(1)) / mm1.clone();
        assert_eq!(x, RatFunc::m() + int(1));
        let two = BigRational::from_integer(2.into());
        let five = BigRational::from_integer(5.into());
        assert_eq!(
            x.specialize(&two, &five).unwrap(),
            BigRational::from_integer(3.into())
        );
        assert!(matches!(
            (int(1) / mm1).specialize(&BigRational::one(), &five),
            Err(Error::DenominatorVanishes { .. })
        ));
    }
}
