use num_bigint::BigInt;

/// Exact rational number used for chance probabilities, utilities and
/// payoffs throughout the crate.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for the rational `n/d`. Panics if `d` is zero.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
