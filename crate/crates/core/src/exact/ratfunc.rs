use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};


use super::{AlgebraError, Poly, Rational, Ring, Var};

/// Reduced quotient of two polynomials in the spectral parameter λ.
///
/// Numerator and denominator are coprime and the denominator is monic, so
/// structural equality coincides with equality of rational functions.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunction {
    num: Poly<Rational>,
    den: Poly<Rational>,
}

impl RationalFunction {
    pub fn new(num: Poly<Rational>, den: Poly<Rational>) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.var() != Var::Lambda || den.var() != Var::Lambda {
            let bad = if num.var() != Var::Lambda { num.var() } else { den.var() };
            return Err(AlgebraError::VariableMismatch {
                left: Var::Lambda,
                right: bad,
            });
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<Rational>, den: Poly<Rational>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (num, den) = if den.degree() == Some(0) {
            (num, den)
        } else {
            let g = num.gcd(&den).expect("same variable");
            if g.degree() == Some(0) {
                (num, den)
            } else {
                (
                    num.exact_div(&g).expect("gcd divides"),
                    den.exact_div(&g).expect("gcd divides"),
                )
            }
        };
        let lead = den.leading().expect("nonzero denominator").clone();
        if lead.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lead.recip();
            RationalFunction {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(num: Poly<Rational>) -> Self {
        Self::reduce(num, Poly::one(Var::Lambda))
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_poly(Poly::constant(Var::Lambda, c))
    }

    /// The spectral parameter λ itself.
    pub fn lambda() -> Self {
        Self::from_poly(Poly::x(Var::Lambda))
    }

    /// `a λ + b`
    pub fn affine(a: Rational, b: Rational) -> Self {
        Self::from_poly(Poly::new(Var::Lambda, vec![b, a]))
    }

    pub fn numer(&self) -> &Poly<Rational> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<Rational> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if rhs.num.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let lead = rhs.num.leading().expect("nonzero").recip();
        Ok(Self::cross_mul(&self.num, &self.den, &rhs.den.scale(&lead), &rhs.num.scale(&lead)))
    }

    /// `(a/b)(c/d)` for reduced `a/b`, `c/d` with monic `b`, `d`: cancels
    /// `gcd(a, d)` and `gcd(c, b)` before multiplying.
    fn cross_mul(a: &Poly<Rational>, b: &Poly<Rational>, c: &Poly<Rational>, d: &Poly<Rational>) -> Self {
        if a.is_zero() || c.is_zero() {
            return Self::zero();
        }
        let cancel = |x: &Poly<Rational>, y: &Poly<Rational>| {
            if y.degree() == Some(0) {
                return (x.clone(), y.clone());
            }
            let g = x.gcd(y).expect("same variable");
            if g.degree() == Some(0) {
                (x.clone(), y.clone())
            } else {
                (x.exact_div(&g).expect("gcd divides"), y.exact_div(&g).expect("gcd divides"))
            }
        };
        let (a, d) = cancel(a, d);
        let (c, b) = cancel(c, b);
        RationalFunction { num: &a * &c, den: &b * &d }
    }

    pub fn recip(&self) -> Result<Self, AlgebraError> {
        Self::one().checked_div(self)
    }

    /// Evaluates at `at`; a vanishing denominator is a pole error carrying
    /// the order of vanishing.
    pub fn eval_at(&self, at: &Rational) -> Result<Rational, AlgebraError> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return Err(AlgebraError::Pole {
                at: at.clone(),
                order: self.den.root_order(at),
            });
        }
        Ok(self.num.eval(at) / d)
    }
}

/// Value at `at` of the unreduced quotient `num / den`, after cancelling
/// every common factor. Fails with the residual pole order when the
/// denominator still vanishes after cancellation.
pub fn limit_form(
    num: &Poly<Rational>,
    den: &Poly<Rational>,
    at: &Rational,
) -> Result<Rational, AlgebraError> {
    RationalFunction::new(num.clone(), den.clone())?.eval_at(at)
}

impl Ring for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            num: Poly::zero(Var::Lambda),
            den: Poly::one(Var::Lambda),
        }
    }

    fn one() -> Self {
        RationalFunction {
            num: Poly::one(Var::Lambda),
            den: Poly::one(Var::Lambda),
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return Self::reduce(&self.num + &rhs.num, self.den.clone());
        }
        // Both operands are reduced, so only the common part `g` of the
        // denominators can divide the new numerator.
        let g = self.den.gcd(&rhs.den).expect("same variable");
        if g.degree() == Some(0) {
            return RationalFunction {
                num: &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
                den: &self.den * &rhs.den,
            };
        }
        let b = self.den.exact_div(&g).expect("gcd divides");
        let d = rhs.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        if num.is_zero() {
            return Self::zero();
        }
        let h = num.gcd(&g).expect("same variable");
        let den = &b * &rhs.den;
        if h.degree() == Some(0) {
            RationalFunction { num, den }
        } else {
            RationalFunction {
                num: num.exact_div(&h).expect("gcd divides"),
                den: den.exact_div(&h).expect("gcd divides"),
            }
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        Ring::add(self, &Ring::neg(rhs))
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            // Monic denominators of degree zero are exactly 1.
            return RationalFunction {
                num: &self.num * &rhs.num,
                den: Poly::one(Var::Lambda),
            };
        }
        Self::cross_mul(&self.num, &self.den, &rhs.num, &rhs.den)
    }

    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }

    fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        RationalFunction {
            num: self.num.scale(q),
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr for &RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: Self) -> RationalFunction {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &RationalFunction, b| Ring::add(a, b));
forward_binop!(Sub, sub, |a: &RationalFunction, b| Ring::sub(a, b));
forward_binop!(Mul, mul, |a: &RationalFunction, b| Ring::mul(a, b));
forward_binop!(Div, div, |a: &RationalFunction, b| a
    .checked_div(b)
    .expect("division by the zero rational function"));

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        Ring::neg(self)
    }
}
