//! Operator polynomials in the Dirac symbol `D` over the curvature ring.
//!
//! Curvature enters only through the formal parameter `c = 2J/n`. Its
//! square root exists as a second formal symbol `s` with `s^2 = c`, so
//! negative curvature stays exact and nothing is ever approximated.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::{factorial, int, AlgebraError, Poly, Rational, Ring, Var};

mod membership;
mod series;

pub use membership::{membership_decompose, membership_expand, MonomialCombo};
pub use series::{holographic_series, variation_series, FormalSeries, VariationSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("operator has a component proportional to sqrt(c); it cannot be specialized")]
    IrrationalPart,
    #[error("cannot absorb the curvature factor into monomial {monomial:?} at N = {n}")]
    Absorption { n: usize, monomial: Vec<u32> },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `a(c) + b(c) s` with `s^2 = c`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureScalar {
    pub a: Poly<Rational>,
    pub b: Poly<Rational>,
}

impl CurvatureScalar {
    pub fn from_c_poly(a: Poly<Rational>) -> Self {
        CurvatureScalar { a, b: Poly::zero(Var::C) }
    }

    /// The formal curvature parameter `c`.
    pub fn c() -> Self {
        Self::from_c_poly(Poly::x(Var::C))
    }

    /// The formal square root `s` of `c`.
    pub fn s() -> Self {
        CurvatureScalar { a: Poly::zero(Var::C), b: Poly::one(Var::C) }
    }

    pub fn has_root_part(&self) -> bool {
        !self.b.is_zero()
    }

    pub fn substitute_c(&self, c: &Rational) -> Result<Rational, OperatorError> {
        if self.has_root_part() {
            return Err(OperatorError::IrrationalPart);
        }
        Ok(self.a.eval(c))
    }
}

impl Ring for CurvatureScalar {
    fn zero() -> Self {
        CurvatureScalar { a: Poly::zero(Var::C), b: Poly::zero(Var::C) }
    }
    fn one() -> Self {
        Self::from_c_poly(Poly::one(Var::C))
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        CurvatureScalar { a: &self.a + &rhs.a, b: &self.b + &rhs.b }
    }
    fn sub(&self, rhs: &Self) -> Self {
        CurvatureScalar { a: &self.a - &rhs.a, b: &self.b - &rhs.b }
    }
    fn mul(&self, rhs: &Self) -> Self {
        // (a1 + b1 s)(a2 + b2 s) = a1 a2 + c b1 b2 + (a1 b2 + a2 b1) s
        CurvatureScalar {
            a: &(&self.a * &rhs.a) + &(&self.b * &rhs.b).shift(1),
            b: &(&self.a * &rhs.b) + &(&self.b * &rhs.a),
        }
    }
    fn neg(&self) -> Self {
        CurvatureScalar { a: self.a.neg(), b: self.b.neg() }
    }
    fn from_rational(q: &Rational) -> Self {
        Self::from_c_poly(Poly::constant(Var::C, q.clone()))
    }
}

impl fmt::Display for CurvatureScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "({})*s", self.b),
            (false, false) => write!(f, "{} + ({})*s", self.a, self.b),
        }
    }
}

/// Polynomial in `D` with [`CurvatureScalar`] coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorPoly(Poly<CurvatureScalar>);

/// How the curvature parameter `c = 2J/n` is carried.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvatureMode {
    Formal,
    Value(Rational),
}

impl CurvatureMode {
    /// `c = 2J / n`.
    pub fn from_einstein(j: &Rational, n: i64) -> Self {
        CurvatureMode::Value(int(2) * j / int(n))
    }

    fn scalar(&self) -> CurvatureScalar {
        match self {
            CurvatureMode::Formal => CurvatureScalar::c(),
            CurvatureMode::Value(c) => CurvatureScalar::from_rational(c),
        }
    }
}

impl OperatorPoly {
    pub fn new(p: Poly<CurvatureScalar>) -> Self {
        assert_eq!(p.var(), Var::D, "operator polynomials live in D");
        OperatorPoly(p)
    }

    pub fn d() -> Self {
        OperatorPoly(Poly::x(Var::D))
    }

    /// `D^k`
    pub fn d_pow(k: usize) -> Self {
        OperatorPoly(Poly::monomial(Var::D, CurvatureScalar::one(), k))
    }

    pub fn from_scalar(c: CurvatureScalar) -> Self {
        OperatorPoly(Poly::constant(Var::D, c))
    }

    /// Lifts a polynomial in `D` with rational coefficients.
    pub fn from_rational_poly(p: &Poly<Rational>) -> Self {
        OperatorPoly(p.clone().retag(Var::D).map_coeffs(CurvatureScalar::from_rational))
    }

    pub fn as_poly(&self) -> &Poly<CurvatureScalar> {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    pub fn coeff(&self, i: usize) -> CurvatureScalar {
        self.0.coeff(i)
    }

    pub fn has_root_part(&self) -> bool {
        self.0.coeffs().iter().any(CurvatureScalar::has_root_part)
    }

    /// Specializes `c`; the result has constant coefficients in `c`.
    pub fn substitute_c(&self, c: &Rational) -> Result<Self, OperatorError> {
        let p = self
            .0
            .try_map_coeffs(|k| k.substitute_c(c).map(|v| CurvatureScalar::from_rational(&v)))?;
        Ok(OperatorPoly(p))
    }

    /// The underlying polynomial in `D`, when every coefficient is a rational
    /// constant.
    pub fn to_rational_poly(&self) -> Option<Poly<Rational>> {
        let coeffs = self
            .0
            .coeffs()
            .iter()
            .map(|k| (!k.has_root_part() && k.a.degree().unwrap_or(0) == 0).then(|| k.a.coeff(0)))
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::new(Var::D, coeffs))
    }

    /// Coefficient rows `(power of D, power of c, value)` for the `c`-part,
    /// highest power of `D` first.
    pub fn c_table(&self) -> Vec<(usize, usize, Rational)> {
        let mut rows = Vec::new();
        for (dp, k) in self.0.terms() {
            for (cp, v) in k.a.terms() {
                rows.push((dp, cp, v.clone()));
            }
        }
        rows
    }
}

impl Ring for OperatorPoly {
    fn zero() -> Self {
        OperatorPoly(Poly::zero(Var::D))
    }
    fn one() -> Self {
        OperatorPoly(Poly::one(Var::D))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        OperatorPoly(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        OperatorPoly(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        OperatorPoly(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        OperatorPoly(self.0.neg())
    }
    fn from_rational(q: &Rational) -> Self {
        OperatorPoly::from_scalar(CurvatureScalar::from_rational(q))
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `D prod_{j=1}^N (D^2 - j^2 c)`; the empty product is 1.
pub fn conformal_power(n_order: usize, mode: &CurvatureMode) -> OperatorPoly {
    let c = mode.scalar();
    let d2 = OperatorPoly::d_pow(2);
    (1..=n_order as i64).fold(OperatorPoly::d(), |acc, j| {
        let shift = OperatorPoly::from_scalar(c.scale(&int(j * j)));
        acc.mul(&d2.sub(&shift))
    })
}

/// `prod_{j=1}^{2N+1} (D - (N - j + 1) s)` with `s^2 = c`.
pub fn expand_linear_factors(n_order: usize) -> OperatorPoly {
    let n = n_order as i64;
    (1..=2 * n + 1).fold(OperatorPoly::one(), |acc, j| {
        let shift = OperatorPoly::from_scalar(CurvatureScalar::s().scale(&int(n - j + 1)));
        acc.mul(&OperatorPoly::d().sub(&shift))
    })
}

/// Scalar `(-1)^N (N!)^2 c^N` in front of `D` in `M_{2N+1}`.
pub fn m_scalar(n_order: usize) -> CurvatureScalar {
    let f = factorial(n_order as u64);
    let mut v = Rational::from_integer(&f * &f);
    if n_order % 2 == 1 {
        v = -v;
    }
    CurvatureScalar::from_c_poly(Poly::monomial(Var::C, v, n_order))
}

/// `M_{2N+1} = (-1)^N (N!)^2 c^N D`.
pub fn m_sequence(n_order: usize) -> OperatorPoly {
    OperatorPoly::new(Poly::monomial(Var::D, m_scalar(n_order), 1))
}

pub(crate) fn big(n: &BigInt) -> Rational {
    Rational::from_integer(n.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn formal(rows: &[(usize, usize, i64)]) -> OperatorPoly {
        rows.iter().fold(OperatorPoly::zero(), |acc, &(dp, cp, v)| {
            let k = CurvatureScalar::from_c_poly(Poly::monomial(Var::C, int(v), cp));
            acc.add(&OperatorPoly::new(Poly::monomial(Var::D, k, dp)))
        })
    }

    #[test]
    fn conformal_power_examples() {
        assert_eq!(conformal_power(0, &CurvatureMode::Formal), OperatorPoly::d());
        assert_eq!(
            conformal_power(1, &CurvatureMode::Formal),
            formal(&[(3, 0, 1), (1, 1, -1)])
        );
        let p = conformal_power(2, &CurvatureMode::Value(int(1)));
        assert_eq!(p.to_rational_poly().unwrap(), Poly::from_ints(Var::D, &[0, 4, 0, -5, 0, 1]));
    }

    #[test]
    fn linear_factor_expansion() {
        assert_eq!(expand_linear_factors(0), OperatorPoly::d());
        assert_eq!(expand_linear_factors(1), formal(&[(3, 0, 1), (1, 1, -1)]));
        for n in 0..=8 {
            let e = expand_linear_factors(n);
            assert!(!e.has_root_part());
            assert_eq!(e, conformal_power(n, &CurvatureMode::Formal), "N={n}");
        }
    }

    #[test]
    fn m_sequence_values() {
        assert_eq!(m_sequence(0), OperatorPoly::d());
        assert_eq!(m_sequence(1), formal(&[(1, 1, -1)]));
        assert_eq!(m_sequence(2), formal(&[(1, 2, 4)]));
        for n in 1..15usize {
            let c = OperatorPoly::from_scalar(CurvatureScalar::c().scale(&int(-((n * n) as i64))));
            assert_eq!(m_sequence(n), c.mul(&m_sequence(n - 1)));
        }
    }

    #[test]
    fn root_symbol_squares_to_c() {
        let s = CurvatureScalar::s();
        assert_eq!(s.mul(&s), CurvatureScalar::c());
        assert!(s.substitute_c(&int(4)).is_err());
        assert_eq!(CurvatureScalar::c().substitute_c(&rat(3, 7)).unwrap(), rat(3, 7));
    }

    #[test]
    fn value_mode_matches_substituted_formal_mode() {
        for n in 0..6 {
            for c in [int(1), rat(-1, 2), rat(6, 7), int(0)] {
                let f = conformal_power(n, &CurvatureMode::Formal).substitute_c(&c).unwrap();
                assert_eq!(f, conformal_power(n, &CurvatureMode::Value(c.clone())));
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(conformal_power(1, &CurvatureMode::Formal).to_string(), "D^3 - c*D");
        assert_eq!(
            conformal_power(2, &CurvatureMode::Value(int(1))).to_string(),
            "D^5 - 5*D^3 + 4*D"
        );
    }
}
