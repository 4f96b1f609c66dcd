use super::{hyp_pfq_terminating, SpecialError};
use crate::exact::{int, Rational};

#[derive(Debug, Clone, PartialEq)]
pub struct HahnParams {
    pub alpha: Rational,
    pub beta: Rational,
    pub big_n: u64,
}

impl HahnParams {
    pub fn new(alpha: Rational, beta: Rational, big_n: u64) -> Result<Self, SpecialError> {
        if big_n == 0 {
            return Err(SpecialError::InvalidParameters("N must be at least 1".into()));
        }
        Ok(HahnParams { alpha, beta, big_n })
    }

    /// Dual Hahn lattice point `n (n + α + β + 1)`.
    pub fn lattice(&self, n: u64) -> Rational {
        let n = int(n as i64);
        &n * (&n + &self.alpha + &self.beta + int(1))
    }

    fn check_degree(&self, n: u64) -> Result<(), SpecialError> {
        if n + 1 > self.big_n {
            return Err(SpecialError::InvalidParameters(format!(
                "degree {n} exceeds N - 1 = {}",
                self.big_n - 1
            )));
        }
        Ok(())
    }
}

/// Hahn polynomial `Q_n(x; α, β, N) = 3F2[-n, -x, n+α+β+1; α+1, -N+1; 1]`.
pub fn hahn_q(n: u64, x: &Rational, p: &HahnParams) -> Result<Rational, SpecialError> {
    p.check_degree(n)?;
    let nr = int(n as i64);
    let upper = [-nr.clone(), -x.clone(), &nr + &p.alpha + &p.beta + int(1)];
    let lower = [&p.alpha + int(1), int(1) - int(p.big_n as i64)];
    hyp_pfq_terminating(&upper, &lower, &int(1))
}

/// Dual Hahn polynomial `R_k` on its lattice, `R_k(λ(n)) = Q_n(k)`.
pub fn dual_hahn_r(k: u64, n: u64, p: &HahnParams) -> Result<Rational, SpecialError> {
    hahn_q(n, &int(k as i64), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn trivial_values() {
        let p = HahnParams::new(rat(3, 2), rat(-1, 2), 6).unwrap();
        assert_eq!(hahn_q(0, &rat(7, 3), &p).unwrap(), int(1));
        assert_eq!(hahn_q(1, &int(0), &p).unwrap(), int(1));
        assert_eq!(dual_hahn_r(0, 3, &p).unwrap(), int(1));
        assert_eq!(dual_hahn_r(4, 0, &p).unwrap(), int(1));
    }

    #[test]
    fn direct_summation() {
        // Q_1(1; 1, 1, 5) = 1 + (-1)(-1)(4) / ((2)(-4)) = 1/2
        let p = HahnParams::new(int(1), int(1), 5).unwrap();
        assert_eq!(hahn_q(1, &int(1), &p).unwrap(), rat(1, 2));
        // R_2(λ(1); 1, 1, 4) = Q_1(2) = 1 + (-1)(-2)(4) / ((2)(-3)) = -1/3
        let p = HahnParams::new(int(1), int(1), 4).unwrap();
        assert_eq!(dual_hahn_r(2, 1, &p).unwrap(), rat(-1, 3));
        assert_eq!(p.lattice(1), int(4));
    }

    #[test]
    fn degree_bound() {
        let p = HahnParams::new(int(1), int(1), 3).unwrap();
        assert!(hahn_q(3, &int(1), &p).is_err());
        assert!(hahn_q(2, &int(1), &p).is_ok());
        assert!(HahnParams::new(int(0), int(0), 0).is_err());
    }

    #[test]
    fn duality_plumbing() {
        let p = HahnParams::new(int(2), int(-1), 5).unwrap();
        for k in 0..7 {
            for n in 0..5 {
                assert_eq!(dual_hahn_r(k, n, &p).unwrap(), hahn_q(n, &int(k as i64), &p).unwrap());
            }
        }
    }
}
