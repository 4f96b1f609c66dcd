
use super::{big, m_sequence, CurvatureMode, OperatorPoly};
use crate::exact::{factorial, int, AlgebraError, Rational, Ring};

/// Power series in `r` truncated after `r^order`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormalSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> FormalSeries<R> {
    /// Pads or truncates `coeffs` to `order + 1` entries.
    pub fn new(order: usize, mut coeffs: Vec<R>) -> Self {
        coeffs.resize(order + 1, R::zero());
        FormalSeries { coeffs }
    }

    pub fn constant(order: usize, c: R) -> Self {
        Self::new(order, vec![c])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &R {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        FormalSeries {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.order(), rhs.order(), "series orders differ");
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(R::zero(), |acc, i| {
                    let (a, b) = (&self.coeffs[i], &rhs.coeffs[k - i]);
                    if a.is_zero() || b.is_zero() {
                        acc
                    } else {
                        acc.add(&a.mul(b))
                    }
                })
            })
            .collect();
        FormalSeries { coeffs }
    }

    /// Multiplies by a scalar series, coefficient-wise Cauchy product.
    pub fn scale_by(&self, scalars: &FormalSeries<Rational>) -> Self {
        assert_eq!(self.order(), scalars.order(), "series orders differ");
        let n = self.coeffs.len();
        let coeffs = (0..n)
            .map(|k| {
                (0..=k).fold(R::zero(), |acc, i| {
                    let s = &scalars.coeffs[k - i];
                    if s.is_zero() {
                        acc
                    } else {
                        acc.add(&self.coeffs[i].scale(s))
                    }
                })
            })
            .collect();
        FormalSeries { coeffs }
    }

    /// `i`-th derivative at `r = 0`, i.e. `i!` times the coefficient of `r^i`.
    pub fn derivative_at_zero(&self, i: usize) -> R {
        self.coeffs[i].scale(&big(&factorial(i as u64)))
    }
}

impl FormalSeries<Rational> {
    /// Multiplicative inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self, AlgebraError> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let inv0 = c0.recip();
        let mut out: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        out.push(inv0.clone());
        for k in 1..self.coeffs.len() {
            let s: Rational = (1..=k).map(|i| &self.coeffs[i] * &out[k - i]).sum();
            out.push(-s * &inv0);
        }
        Ok(FormalSeries { coeffs: out })
    }
}

/// `J / (2n)`, the coefficient of `r^2` in the conformal factor.
fn quarter_curvature(j: &Rational, n: i64) -> Rational {
    j / int(2 * n)
}

/// `1 - (J/2n) r^2`
fn defining_factor(order: usize, j: &Rational, n: i64) -> FormalSeries<Rational> {
    let mut coeffs = vec![int(1)];
    if order >= 2 {
        coeffs.push(int(0));
        coeffs.push(-quarter_curvature(j, n));
    }
    FormalSeries::new(order, coeffs)
}

/// `H(r) = sum_N (-1)^N / (N!)^2 (r/2)^{2N} M_{2N+1}` with `c = 2J/n`.
pub fn holographic_series(order: usize, j: &Rational, n: i64) -> FormalSeries<OperatorPoly> {
    let CurvatureMode::Value(c) = CurvatureMode::from_einstein(j, n) else {
        unreachable!()
    };
    let mut coeffs = vec![OperatorPoly::zero(); order + 1];
    for big_n in 0..=order / 2 {
        let f = big(&factorial(big_n as u64));
        let mut w = (&f * &f * int(4).pow(big_n as i32)).recip();
        if big_n % 2 == 1 {
            w = -w;
        }
        let m = m_sequence(big_n).substitute_c(&c).expect("no root part");
        coeffs[2 * big_n] = m.scale(&w);
    }
    FormalSeries::new(order, coeffs)
}

/// The four series describing the Einstein deformation `h_r` of `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct VariationSeries {
    /// `f_r = (1 - (J/2n) r^2)^{-1}`, obtained by series inversion.
    pub f_r: FormalSeries<Rational>,
    /// Conformal factor of `h_r = (1 - (J/2n) r^2)^2 h`.
    pub h_r: FormalSeries<Rational>,
    /// `D^{h_r}` pulled back to `h`: `f_r D`.
    pub dirac: FormalSeries<OperatorPoly>,
    /// Mean curvature `H_r = (J/n) r f_r`.
    pub mean_curvature: FormalSeries<Rational>,
}

pub fn variation_series(order: usize, j: &Rational, n: i64) -> VariationSeries {
    let base = defining_factor(order, j, n);
    let f_r = base.inverse().expect("constant term is 1");
    let h_r = base.mul(&base);
    let dirac = FormalSeries::constant(order, OperatorPoly::d()).scale_by(&f_r);
    let mut r = vec![int(0)];
    if order >= 1 {
        r.push(j / int(n));
    }
    let mean_curvature = FormalSeries::new(order, r).mul(&f_r);
    VariationSeries { f_r, h_r, dirac, mean_curvature }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn inverse_of_geometric_factor() {
        let s = FormalSeries::new(6, vec![int(1), int(-1)]);
        let inv = s.inverse().unwrap();
        assert!(inv.coeffs().iter().all(|c| *c == int(1)));
        assert!(FormalSeries::new(3, vec![int(0), int(1)]).inverse().is_err());
    }

    #[test]
    fn holographic_low_coefficients() {
        let h = holographic_series(6, &int(2), 4);
        assert_eq!(h.coeff(0), &OperatorPoly::d());
        assert_eq!(h.coeff(2), &OperatorPoly::d().scale(&rat(1, 4)));
        for i in [1, 3, 5] {
            assert!(h.coeff(i).is_zero());
        }
    }

    #[test]
    fn holographic_is_geometric() {
        for (j, n) in [(int(2), 4), (rat(3, 2), 3), (int(-2), 5), (rat(3, 7), 6)] {
            let h = holographic_series(16, &j, n);
            let q = quarter_curvature(&j, n);
            for big_n in 0..=8 {
                assert_eq!(h.coeff(2 * big_n), &OperatorPoly::d().scale(&q.pow(big_n as i32)));
            }
            let back = h.scale_by(&defining_factor(16, &j, n));
            assert_eq!(back, FormalSeries::constant(16, OperatorPoly::d()));
        }
    }

    #[test]
    fn variation_derivatives() {
        let j = rat(5, 2);
        let n = 5;
        let v = variation_series(17, &j, n);
        let q = quarter_curvature(&j, n);
        for l in 0..=8usize {
            let even = big(&factorial(2 * l as u64)) * q.pow(l as i32);
            assert_eq!(v.dirac.derivative_at_zero(2 * l), OperatorPoly::d().scale(&even));
            assert!(v.dirac.derivative_at_zero(2 * l + 1).is_zero());
            // (2l)!/2^l (J/n)^l
            let lemma = big(&factorial(2 * l as u64)) / int(2).pow(l as i32) * (&j / int(n)).pow(l as i32);
            assert_eq!(v.f_r.derivative_at_zero(2 * l), lemma);
            assert!(v.f_r.derivative_at_zero(2 * l + 1).is_zero());
        }
        assert_eq!(v.mean_curvature.coeff(1), &(&j / int(n)));
        assert!(v.mean_curvature.coeff(0).is_zero());
        // (1 - q r^2)^2 = 1 - 2q r^2 + q^2 r^4
        assert_eq!(v.h_r.coeff(2), &(int(-2) * &q));
        assert_eq!(v.h_r.coeff(4), &(&q * &q));
        assert!(v.h_r.coeffs()[5..].iter().all(Ring::is_zero));
    }

    #[test]
    fn zero_order_series() {
        let v = variation_series(0, &int(3), 3);
        assert_eq!(v.f_r.order(), 0);
        assert_eq!(v.dirac.coeff(0), &OperatorPoly::d());
        assert_eq!(holographic_series(0, &int(1), 3).coeff(0), &OperatorPoly::d());
    }
}
