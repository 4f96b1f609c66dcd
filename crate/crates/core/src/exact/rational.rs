use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rising factorial `a (a+1) ... (a+l-1)`; the empty product is 1.
pub fn pochhammer(a: &Rational, l: usize) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..l {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Parses `p`, `-p`, `p/q` or `-p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational".into());
    }
    t.parse::<Rational>()
        .map_err(|e| format!("invalid rational `{t}`: {e}"))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn direct_product(a: &Rational, l: usize) -> Rational {
        (0..l).map(|i| a + int(i as i64)).product()
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(7, 3), 0), int(1));
        assert_eq!(pochhammer(&int(-2), 5), int(0));
        assert_eq!(pochhammer(&int(3), 4), direct_product(&int(3), 4));
        assert_eq!(pochhammer(&int(3), 4), int(360));
        assert_eq!(pochhammer(&rat(1, 2), 2), rat(3, 4));
    }

    #[test]
    fn negative_integer_pochhammer_sign() {
        // (-N)_N = (-1)^N N!
        for n in 0..10u64 {
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            let expected = sign * Rational::from_integer(factorial(n));
            assert_eq!(pochhammer(&-int(n as i64), n as usize), expected);
        }
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-2").unwrap(), int(-2));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rat(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert_eq!(fmt_rational(&rat(-6, 4)), "-3/2");
        assert_eq!(fmt_rational(&int(5)), "5");
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(20, 10), BigInt::from(184756));
    }

    proptest! {
        #[test]
        fn pochhammer_step(p in -20i64..20, q in 1i64..6, l in 0usize..12) {
            let a = rat(p, q);
            prop_assert_eq!(
                pochhammer(&a, l + 1),
                pochhammer(&a, l) * (&a + int(l as i64))
            );
        }

        #[test]
        fn reduced_construction_is_idempotent(p in -1000i64..1000, q in 1i64..1000) {
            let a = rat(p, q);
            let again = Rational::new(a.numer().clone(), a.denom().clone());
            prop_assert_eq!(&again, &a);
            prop_assert!(a.denom() > &BigInt::zero());
            prop_assert_eq!(num_integer::Integer::gcd(a.numer(), a.denom()) == BigInt::one() || a.is_zero(), true);
        }
    }
}
