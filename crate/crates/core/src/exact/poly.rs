use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};


use super::{int, AlgebraError, Rational, Ring, Var};

/// Dense univariate polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly<R> {
    var: Var,
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(var: Var, mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { var, coeffs }
    }

    pub fn zero(var: Var) -> Self {
        Poly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, R::one())
    }

    pub fn constant(var: Var, c: R) -> Self {
        Self::new(var, vec![c])
    }

    /// `c * var^deg`
    pub fn monomial(var: Var, c: R, deg: usize) -> Self {
        let mut coeffs = vec![R::zero(); deg];
        coeffs.push(c);
        Self::new(var, coeffs)
    }

    /// The variable itself.
    pub fn x(var: Var) -> Self {
        Self::monomial(var, R::one(), 1)
    }

    /// `var - a`
    pub fn linear_root(var: Var, a: R) -> Self {
        Self::new(var, vec![a.neg(), R::one()])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Ring::is_one)
    }

    /// Same coefficients under a different variable tag.
    pub fn retag(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    fn check_var(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(AlgebraError::VariableMismatch {
                left: self.var,
                right: other.var,
            })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Ok(Self::new(self.var, coeffs))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.var));
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Ok(Self::new(self.var, coeffs))
    }

    /// `self(inner)`, Horner's scheme over polynomials.
    pub fn checked_compose(&self, inner: &Self) -> Result<Self, AlgebraError> {
        self.check_var(inner)?;
        let mut acc = Self::zero(self.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.checked_mul(inner)?.checked_add(&Self::constant(self.var, c.clone()))?;
        }
        Ok(acc)
    }

    pub fn eval(&self, at: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.mul(at).add(c))
    }

    pub fn neg(&self) -> Self {
        Poly {
            var: self.var,
            coeffs: self.coeffs.iter().map(Ring::neg).collect(),
        }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &R) -> Self {
        Self::new(self.var, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { var: self.var, coeffs }
    }

    /// Divides by `var^k`; fails unless the low `k` coefficients vanish.
    pub fn unshift(&self, k: usize) -> Result<Self, AlgebraError> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(Poly {
            var: self.var,
            coeffs: self.coeffs.iter().skip(k).cloned().collect(),
        })
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl FnMut(&R) -> S) -> Poly<S> {
        Poly::new(self.var, self.coeffs.iter().map(f).collect())
    }

    pub fn try_map_coeffs<S: Ring, E>(
        &self,
        f: impl FnMut(&R) -> Result<S, E>,
    ) -> Result<Poly<S>, E> {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Poly::new(self.var, coeffs))
    }

    /// Keeps the even-degree part as a polynomial in `var^2`.
    /// Fails if any odd coefficient is nonzero.
    pub fn even_part_in_square(&self) -> Result<Self, AlgebraError> {
        if self.coeffs.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
            return Err(AlgebraError::InexactDivision);
        }
        Ok(Self::new(
            self.var,
            self.coeffs.iter().step_by(2).cloned().collect(),
        ))
    }

    /// Substitutes `var -> var^2`.
    pub fn spread_to_square(&self) -> Self {
        let mut coeffs = Vec::with_capacity(2 * self.coeffs.len());
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                coeffs.push(R::zero());
            }
            coeffs.push(c.clone());
        }
        Self::new(self.var, coeffs)
    }

    /// Monomials `(power, coefficient)` with nonzero coefficient, highest first.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
    }
}

impl Poly<Rational> {
    /// Euclidean division, `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self), AlgebraError> {
        self.check_var(divisor)?;
        let dlead = divisor.leading().ok_or(AlgebraError::DivisionByZero)?;
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return Ok((Self::zero(self.var), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + ddeg] / dlead;
            if c.is_zero() {
                continue;
            }
            for (i, d) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(ddeg);
        Ok((Self::new(self.var, quot), Self::new(self.var, rem)))
    }

    pub fn exact_div(&self, divisor: &Self) -> Result<Self, AlgebraError> {
        let (q, r) = self.div_rem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(AlgebraError::InexactDivision)
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) if !l.is_one() => {
                let inv = l.recip();
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r.monic();
        }
        Ok(a.monic())
    }

    /// Multiplicity of `at` as a root.
    pub fn root_order(&self, at: &Rational) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let factor = Self::linear_root(self.var, at.clone());
        let mut order = 0;
        let mut p = self.clone();
        while let Ok(q) = p.exact_div(&factor) {
            p = q;
            order += 1;
        }
        order
    }
}

/// Which family of shifted squares a [`shifted_product`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftKind {
    /// `prod_{j=1}^l (y - j^2)`
    Square,
    /// `prod_{j=1}^l (y - j(j-1))`
    Triangular,
}

pub fn shifted_product(kind: ShiftKind, l: usize) -> Poly<Rational> {
    (1..=l as i64).fold(Poly::one(Var::Y), |acc, j| &acc * &Poly::linear_root(Var::Y, kind.root(j)))
}

impl ShiftKind {
    /// `j^2` or `j(j-1)`.
    pub fn root(self, j: i64) -> Rational {
        match self {
            ShiftKind::Square => int(j * j),
            ShiftKind::Triangular => int(j * (j - 1)),
        }
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::neg(self)
    }
}

/// A coefficient that prints as a single factor needs no parentheses.
fn is_plain(s: &str) -> bool {
    !s.contains(' ')
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (pow, c) in self.terms() {
            let mut body = c.to_string();
            let negative = body.starts_with('-') && is_plain(&body);
            if negative {
                body.remove(0);
            }
            if !is_plain(&body) {
                body = format!("({body})");
            }
            let sep = match (first, negative) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            f.write_str(sep)?;
            let unit = body == "1";
            match pow {
                0 => f.write_str(&body)?,
                _ => {
                    if !unit {
                        write!(f, "{body}*")?;
                    }
                    if pow == 1 {
                        write!(f, "{}", self.var)?;
                    } else {
                        write!(f, "{}^{}", self.var, pow)?;
                    }
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl<R: Ring> Poly<R> {
    /// Coefficients rendered with their canonical `Display`, lowest degree first.
    pub fn coeff_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(ToString::to_string).collect()
    }
}

impl Poly<Rational> {
    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}
