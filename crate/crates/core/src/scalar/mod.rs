//! Exact coefficient fields and the twist parameters `m`, `b`.
//!
//! Two fields are supported: plain rationals (concrete mode, `m` and `b` are
//! numbers) and the rational-function field `Q(m, b)` (symbolic mode). The
//! rest of the crate is generic over [`Coeff`].

mod param_poly;
mod ratfunc;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::Error;

pub use param_poly::{Exponent, ParamPoly};
pub use ratfunc::RatFunc;

/// A coefficient field usable by the algebra engine.
pub trait Coeff:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + From<BigRational>
    + Send
    + Sync
    + 'static
{
    fn inv(&self) -> Result<Self, Error>;

    /// Sign of the leading coefficient; used to pull a minus sign out when
    /// rendering sums.
    fn is_negative(&self) -> bool;

    /// True when the rendering is a bare product (integer, `m`, `3*m^2*b`)
    /// that needs no parentheses in front of a word.
    fn is_atomic(&self) -> bool;

    fn from_int(n: i64) -> Self {
        Self::from(BigRational::from_integer(n.into()))
    }

    fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Coeff for BigRational {
    fn inv(&self) -> Result<Self, Error> {
        if self.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }

    fn is_atomic(&self) -> bool {
        self.is_integer()
    }
}

impl Coeff for RatFunc {
    fn inv(&self) -> Result<Self, Error> {
        RatFunc::inv(self)
    }

    fn is_negative(&self) -> bool {
        self.num()
            .leading()
            .is_some_and(|(_, c)| Signed::is_negative(c))
    }

    fn is_atomic(&self) -> bool {
        self.is_monomial()
            || self.num().as_constant().is_some()
                && self.den().as_constant().is_some_and(|c| c.is_one())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Symbolic,
    Concrete,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Symbolic => write!(f, "symbolic"),
            Mode::Concrete => write!(f, "concrete"),
        }
    }
}

/// Slope `m` and offset `b` of the twisting map `X -> mX + bI`.
///
/// Construction rejects `m = 0` and `m = 1`. `lie_ok` records whether `m` is
/// known not to be a root of unity, which among rationals means `m != -1`.
#[derive(Clone, Debug)]
pub struct TwistParams<F> {
    mode: Mode,
    m: F,
    b: F,
    lie_ok: bool,
}

impl TwistParams<RatFunc> {
    /// `m` and `b` as indeterminates.
    pub fn symbolic() -> Self {
        Self {
            mode: Mode::Symbolic,
            m: RatFunc::m(),
            b: RatFunc::b(),
            lie_ok: true,
        }
    }
}

impl TwistParams<BigRational> {
    pub fn concrete(m: BigRational, b: BigRational) -> Result<Self, Error> {
        if m.is_zero() || m.is_one() {
            return Err(Error::InvalidParams(format!(
                "slope parameter m = {m} is excluded (m must differ from 0 and 1)"
            )));
        }
        let lie_ok = m != -BigRational::one();
        Ok(Self {
            mode: Mode::Concrete,
            m,
            b,
            lie_ok,
        })
    }
}

impl<F: Coeff> TwistParams<F> {
    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn m(&self) -> &F {
        &self.m
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn lie_ok(&self) -> bool {
        self.lie_ok
    }

    /// Errors with [`Error::RootOfUnityParam`] unless `lie_ok`.
    pub fn require_lie(&self) -> Result<(), Error> {
        if self.lie_ok {
            Ok(())
        } else {
            Err(Error::RootOfUnityParam(self.m.to_string()))
        }
    }

    /// `m^k` for any integer `k`; negative exponents invert.
    pub fn m_power(&self, k: i64) -> F {
        let p = self.m.pow(k.unsigned_abs() as u32);
        if k < 0 {
            p.inv().expect("m is nonzero by construction")
        } else {
            p
        }
    }
}

/// Evaluates a symbolic scalar at concrete parameter values.
pub fn specialize(x: &RatFunc, params: &TwistParams<BigRational>) -> Result<BigRational, Error> {
    x.specialize(params.m(), params.b())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn params_guard() {
        assert!(matches!(
            TwistParams::concrete(q(1, 1), q(0, 1)),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            TwistParams::concrete(q(0, 1), q(3, 1)),
            Err(Error::InvalidParams(_))
        ));
        let p = TwistParams::concrete(q(-1, 1), q(0, 1)).unwrap();
        assert!(!p.lie_ok());
        assert!(matches!(p.require_lie(), Err(Error::RootOfUnityParam(_))));
        assert!(TwistParams::concrete(q(1, 2), q(0, 1)).unwrap().lie_ok());
        assert!(TwistParams::symbolic().lie_ok());
    }

    #[test]
    fn m_powers() {
        let s = TwistParams::symbolic();
        assert_eq!(s.m_power(0), RatFunc::one());
        assert_eq!(s.m_power(-2).to_string(), "1/m^2");
        assert_eq!(s.m_power(-2) * s.m_power(2), RatFunc::one());
        let c = TwistParams::concrete(q(3, 1), q(0, 1)).unwrap();
        assert_eq!(c.m_power(2), q(9, 1));
        assert_eq!(c.m_power(-1), q(1, 3));
    }

    #[test]
    fn specialize_examples() {
        let mm1 = RatFunc::m() - RatFunc::one();
        let p = TwistParams::concrete(q(2, 1), q(0, 1)).unwrap();
        assert_eq!(
            specialize(&(RatFunc::m() / mm1.clone()), &p).unwrap(),
            q(2, 1)
        );
        let p = TwistParams::concrete(q(2, 1), q(5, 1)).unwrap();
        let x = (RatFunc::m() * RatFunc::m() - RatFunc::one()) / mm1;
        assert_eq!(specialize(&x, &p).unwrap(), q(3, 1));
    }

    fn small_poly() -> impl Strategy<Value = ParamPoly> {
        prop::collection::vec(((0u32..3, 0u32..3), -4i64..5), 0..4)
            .prop_map(|ts| ParamPoly::from_terms(ts.into_iter().map(|(e, c)| (e, q(c, 1)))))
    }

    fn ratfunc() -> impl Strategy<Value = RatFunc> {
        (small_poly(), small_poly())
            .prop_filter_map("nonzero denominator", |(n, d)| RatFunc::new(n, d).ok())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(x in ratfunc(), y in ratfunc(), z in ratfunc()) {
            prop_assert_eq!((x.clone() + y.clone()) + z.clone(), x.clone() + (y.clone() + z.clone()));
            prop_assert_eq!((x.clone() * y.clone()) * z.clone(), x.clone() * (y.clone() * z.clone()));
            prop_assert_eq!(x.clone() * (y.clone() + z.clone()), x.clone() * y.clone() + x.clone() * z.clone());
            prop_assert_eq!(x.clone() + y.clone(), y.clone() + x.clone());
            prop_assert!((x.clone() - x.clone()).is_zero());
            if !x.is_zero() {
                prop_assert_eq!(x.clone() * x.inv().unwrap(), RatFunc::one());
            }
        }

        #[test]
        fn equality_respects_multiplication(x in ratfunc(), y in ratfunc(), k in 1i64..5) {
            // x and x*k/k are represented identically after cleanup; products agree
            let kk = RatFunc::from(q(k, 1));
            let x2 = (x.clone() * kk.clone()) / kk;
            prop_assert_eq!(x2.clone() * y.clone(), x * y);
        }

        #[test]
        fn specialize_is_homomorphism(x in ratfunc(), y in ratfunc()) {
            let p = TwistParams::concrete(q(3, 2), q(-2, 1)).unwrap();
            if let (Ok(sx), Ok(sy)) = (specialize(&x, &p), specialize(&y, &p)) {
                prop_assert_eq!(specialize(&(x.clone() + y.clone()), &p).unwrap(), &sx + &sy);
                prop_assert_eq!(specialize(&(x * y), &p).unwrap(), sx * sy);
            }
        }
    }
}
