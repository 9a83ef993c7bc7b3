//! Coefficient fields.
//!
//! Every algebraic structure in this crate is generic over a [`Field`]. The
//! default, [`Scalar`], is the field of rational numbers with arbitrary
//! precision numerator and denominator, which is what all the exact
//! computations use. Floating point types also implement [`Field`]; they are
//! handy for quick numerical experiments, but zero tests on them are exact
//! comparisons, so eliminations over `f64` are only as good as the rounding.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, Zero};

use crate::Error;

/// Exact rational scalar.
pub type Scalar = BigRational;

/// A commutative field as needed by the linear algebra and the algebra
/// engines.
pub trait Field: Num + Neg<Output = Self> + Clone + Debug + Send + Sync + 'static {
    fn from_int(n: i64) -> Self;

    fn from_frac(numer: i64, denom: i64) -> Self {
        Self::from_int(numer) / Self::from_int(denom)
    }

    fn half() -> Self {
        Self::from_frac(1, 2)
    }
}

impl Field for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_frac(numer: i64, denom: i64) -> Self {
        BigRational::new(BigInt::from(numer), BigInt::from(denom))
    }
}

macro_rules! float_field {
    ($($t:ty),*) => {
        $(
            impl Field for $t {
                fn from_int(n: i64) -> Self {
                    n as $t
                }
            }
        )*
    };
}

float_field!(f32, f64);

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses the `"p/q"` / `"p"` form written by [`format_scalar`].
pub fn parse_scalar(s: &str) -> Result<Scalar, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    match s.split_once('/') {
        None => s.parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn signum(x: &Scalar) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_frac(n, d)
    }

    #[test]
    fn formats_integers_without_denominator() {
        assert_eq!(format_scalar(&q(6, 3)), "2");
        assert_eq!(format_scalar(&q(-1, 2)), "-1/2");
        assert_eq!(format_scalar(&q(0, 5)), "0");
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(parse_scalar("4/-8").unwrap(), q(-1, 2));
        assert_eq!(parse_scalar(" 7 ").unwrap(), q(7, 1));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("x").is_err());
        let z = parse_scalar("0/3").unwrap();
        assert_eq!(z.denom(), &BigInt::from(1));
    }

    fn arb_q() -> impl Strategy<Value = Scalar> {
        (-1000i64..1000, 1i64..200).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn field_axioms(a in arb_q(), b in arb_q(), c in arb_q()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
            prop_assert!(a.denom() > &BigInt::from(0));
        }

        #[test]
        fn scalar_text_roundtrip(a in arb_q()) {
            prop_assert_eq!(parse_scalar(&format_scalar(&a)).unwrap(), a);
        }
    }
}
