use std::fmt;

use num_traits::Signed;

use super::{hahn_q, hyp_pfq_terminating, HahnParams, SpecialError};
use crate::exact::{int, pochhammer, rat, Poly, Rational, ShiftKind, Var};

/// Which of the two polynomial families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `q̃_m`, built on the shifted squares `y - j^2`.
    Spinor,
    /// `q_m`, built on `y - j(j-1)`.
    Function,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Spinor => "spinor",
            Family::Function => "function",
        })
    }
}

/// Family plus the dimension `n` and order parameter `k`.
///
/// Both parameters are kept as rationals so that half-integer values can be
/// explored; [`QFamilySpec::new`] enforces the integer ranges `n >= 3`, `k >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct QFamilySpec {
    pub family: Family,
    pub n: Rational,
    pub k: Rational,
}

impl QFamilySpec {
    pub fn new(family: Family, n: i64, k: i64) -> Result<Self, SpecialError> {
        if n < 3 {
            return Err(SpecialError::InvalidParameters(format!("n = {n} must be at least 3")));
        }
        if k < 1 {
            return Err(SpecialError::InvalidParameters(format!("k = {k} must be at least 1")));
        }
        Ok(QFamilySpec { family, n: int(n), k: int(k) })
    }

    /// Unchecked rational parameters.
    pub fn with_rationals(family: Family, n: Rational, k: Rational) -> Self {
        QFamilySpec { family, n, k }
    }

    fn half_n(&self) -> Rational {
        &self.n / int(2)
    }

    /// Base of the Pochhammer factor: `n/2 + 1` (spinor) or `n/2` (function).
    fn base(&self) -> Rational {
        match self.family {
            Family::Spinor => self.half_n() + int(1),
            Family::Function => self.half_n(),
        }
    }

    fn shift_kind(&self) -> ShiftKind {
        match self.family {
            Family::Spinor => ShiftKind::Square,
            Family::Function => ShiftKind::Triangular,
        }
    }
}

/// Weights `w_l` of `prod_{j<=l} (y - s_j)` in the closed form of `q_m`,
/// built downward from `w_m = 1`.
fn closed_weights(spec: &QFamilySpec, m: usize) -> Vec<Rational> {
    let base = spec.base();
    let mut w = vec![int(0); m + 1];
    let (mut poch_base, mut poch_k, mut binom) = (int(1), int(1), int(1));
    for l in (0..=m).rev() {
        if l < m {
            let lr = int(l as i64);
            poch_base *= &base + &lr;
            poch_k *= &spec.k - &lr - int(1);
            binom = binom * int((l + 1) as i64) / int((m - l) as i64);
        }
        let v = &poch_base * &poch_k * &binom;
        w[l] = if (m - l).is_multiple_of(2) { v } else { -v };
    }
    w
}

/// Closed form
/// `sum_l (-1)^(m-l) (base+l)_(m-l) (k-m)_(m-l) C(m,l) prod_{j<=l} (y - s_j)`.
pub fn q_closed(spec: &QFamilySpec, m: usize) -> Poly<Rational> {
    let kind = spec.shift_kind();
    let weights = closed_weights(spec, m);
    let mut prod = Poly::one(Var::Y);
    let mut acc = Poly::zero(Var::Y);
    for (l, w) in weights.iter().enumerate() {
        if l > 0 {
            prod = &prod * &Poly::linear_root(Var::Y, kind.root(l as i64));
        }
        acc = &acc + &prod.scale(w);
    }
    acc
}

/// The closed form evaluated at `y` without expanding it.
pub fn q_closed_at(spec: &QFamilySpec, m: usize, y: &Rational) -> Rational {
    let kind = spec.shift_kind();
    let weights = closed_weights(spec, m);
    let mut prod = int(1);
    let mut acc = int(0);
    for (l, w) in weights.iter().enumerate() {
        if l > 0 {
            prod *= y - kind.root(l as i64);
        }
        acc += &prod * w;
    }
    acc
}

/// `(a_m, b_m)` with `q_{m+1} = (y - a_m) q_m - b_m q_{m-1}`.
pub fn recurrence_coefficients(spec: &QFamilySpec, m: usize) -> (Rational, Rational) {
    let mr = int(m as i64);
    let k = &spec.k;
    let h = spec.half_n();
    match spec.family {
        Family::Spinor => {
            let a = int(2) * &mr * (k - &mr - &h - rat(1, 2)) + &h * (k - int(1)) + k;
            let b = &mr * (&mr - k) * (&mr + &h) * (&mr - k + &h - int(1));
            (a, b)
        }
        Family::Function => {
            let a = int(2) * &mr * (k - &mr - &h) + &h * (k - int(1));
            let b = &mr * (&mr - k) * (&mr - int(1) + &h) * (&mr - int(1) + &h - k);
            (a, b)
        }
    }
}

/// Runs `q_{m+1} = (y - a_m) q_m - b_m q_{m-1}` from `q_{-1} = 0`, `q_0 = 1`.
pub fn three_term(
    mmax: usize,
    mut coeffs: impl FnMut(usize) -> (Rational, Rational),
) -> Vec<Poly<Rational>> {
    let mut out = Vec::with_capacity(mmax + 1);
    let mut prev = Poly::zero(Var::Y);
    let mut cur = Poly::one(Var::Y);
    out.push(cur.clone());
    for m in 0..mmax {
        let (a, b) = coeffs(m);
        let next = &(&Poly::linear_root(Var::Y, a) * &cur) - &prev.scale(&b);
        prev = std::mem::replace(&mut cur, next);
        out.push(cur.clone());
    }
    out
}

/// `[q_0, ..., q_mmax]` purely from the three-term recurrence.
pub fn q_recurrence(spec: &QFamilySpec, mmax: usize) -> Vec<Poly<Rational>> {
    three_term(mmax, |m| recurrence_coefficients(spec, m))
}

/// Both sides of the dual Hahn identification at one lattice point.
#[derive(Debug, Clone, PartialEq)]
pub struct DualHahnSides {
    /// Point at which the family polynomial is evaluated.
    pub argument: Rational,
    pub lhs: Rational,
    pub rhs: Rational,
    /// The same right-hand side routed through [`hahn_q`] when the lattice
    /// index lies inside `0..=N-1`.
    pub via_hahn: Option<Rational>,
}

impl DualHahnSides {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs && self.via_hahn.as_ref().is_none_or(|v| *v == self.rhs)
    }
}

/// Evaluates the family polynomial at the dual Hahn lattice point and the
/// normalized `3F2` it should equal.
///
/// Spinor: `q̃_m(t^2) = (-1)^m (n/2+1)_m (k-m)_m 3F2[-(t-1), -m, t+1; n/2+1, 1-k; 1]`.
/// With `λ(s) = s(s+2)` (α + β + 1 = 2) the evaluation point is `λ(t-1) + 1`.
///
/// Function: `q_m(t(t+1)) = (-1)^m (n/2)_m (k-m)_m 3F2[-t, -m, t+1; n/2, 1-k; 1]`,
/// the evaluation point being `λ(t)` with `λ(s) = s(s+1)` (α + β + 1 = 1).
///
/// The lower parameter `1 - k` forces `m <= k - 1` for integer `k`.
pub fn dual_hahn_identity(
    spec: &QFamilySpec,
    m: usize,
    yint: u64,
) -> Result<DualHahnSides, SpecialError> {
    if yint == 0 {
        return Err(SpecialError::InvalidParameters("lattice index must be at least 1".into()));
    }
    let k = &spec.k;
    if k.is_integer() && k.is_positive() && int(m as i64) >= *k {
        return Err(SpecialError::InvalidParameters(format!(
            "m = {m} must not exceed k - 1 = {}",
            k - int(1)
        )));
    }
    let t = int(yint as i64);
    let mr = int(m as i64);
    let base = spec.base();
    let (argument, lattice_index, upper0, alpha) = match spec.family {
        Family::Spinor => (&t * &t, yint - 1, -(&t - int(1)), spec.half_n()),
        Family::Function => (&t * (&t + int(1)), yint, -t.clone(), spec.half_n() - int(1)),
    };
    let lhs = q_closed_at(spec, m, &argument);

    let sign = if m.is_multiple_of(2) { int(1) } else { int(-1) };
    let norm = sign * pochhammer(&base, m) * pochhammer(&(k - &mr), m);
    let series = hyp_pfq_terminating(
        &[upper0, -mr.clone(), &t + int(1)],
        &[base.clone(), int(1) - k],
        &int(1),
    )?;
    let rhs = &norm * series;

    let via_hahn = if k.is_integer() && k.is_positive() {
        let big_n = k.to_integer().try_into().unwrap_or(u64::MAX);
        let params = HahnParams::new(alpha, int(1) - &spec.half_n(), big_n)?;
        (lattice_index < big_n)
            .then(|| hahn_q(lattice_index, &mr, &params))
            .transpose()?
            .map(|q| &norm * q)
    } else {
        None
    };

    Ok(DualHahnSides { argument, lhs, rhs, via_hahn })
}

pub fn dual_hahn_identity_check(
    spec: &QFamilySpec,
    m: usize,
    yint: u64,
) -> Result<bool, SpecialError> {
    dual_hahn_identity(spec, m, yint).map(|s| s.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::shifted_product;

    fn y(c: &[i64]) -> Poly<Rational> {
        Poly::from_ints(Var::Y, c)
    }

    fn spinor(n: i64, k: i64) -> QFamilySpec {
        QFamilySpec::new(Family::Spinor, n, k).unwrap()
    }

    fn function(n: i64, k: i64) -> QFamilySpec {
        QFamilySpec::new(Family::Function, n, k).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(q_closed(&spinor(7, 4), 0), y(&[1]));
        assert_eq!(q_closed(&spinor(4, 3), 1), y(&[-7, 1]));
        assert_eq!(q_closed(&function(4, 3), 1), y(&[-4, 1]));
        for n in 3..8 {
            for k in 1..6 {
                assert_eq!(
                    q_closed(&spinor(n, k), k as usize),
                    shifted_product(ShiftKind::Square, k as usize)
                );
            }
        }
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(q_recurrence(&spinor(5, 2), 0), vec![y(&[1])]);
        assert_eq!(q_recurrence(&spinor(4, 3), 1), vec![y(&[1]), y(&[-7, 1])]);
        let qs = q_recurrence(&spinor(6, 4), 4);
        assert_eq!(qs[4], shifted_product(ShiftKind::Square, 4));
    }

    #[test]
    fn closed_form_matches_recurrence() {
        for n in 3..=12 {
            for k in 1..=8 {
                for family in [Family::Spinor, Family::Function] {
                    let spec = QFamilySpec::new(family, n, k).unwrap();
                    let rec = q_recurrence(&spec, k as usize);
                    for (m, q) in rec.iter().enumerate() {
                        assert_eq!(q, &q_closed(&spec, m), "{family} n={n} k={k} m={m}");
                        assert_eq!(q.degree(), Some(m));
                        assert!(q.is_monic());
                    }
                }
            }
        }
    }

    #[test]
    fn half_integer_parameters_still_agree() {
        let spec = QFamilySpec::with_rationals(Family::Spinor, rat(7, 2), rat(5, 2));
        let rec = q_recurrence(&spec, 5);
        for (m, q) in rec.iter().enumerate() {
            assert_eq!(q, &q_closed(&spec, m));
        }
    }

    #[test]
    fn dual_hahn_examples() {
        assert!(dual_hahn_identity_check(&spinor(5, 3), 0, 4).unwrap());
        let s = dual_hahn_identity(&spinor(4, 3), 1, 2).unwrap();
        // q̃_1(y) = y - 7 at y = 4; rhs = -(3)(2) * (1 + 3/(3 * -2))
        assert_eq!(s.lhs, int(-3));
        assert_eq!(s.rhs, int(-3));
        assert_eq!(s.via_hahn, Some(int(-3)));
        let s = dual_hahn_identity(&function(4, 3), 1, 1).unwrap();
        // q_1(y) = y - 4 at y = 2; rhs = -(2)(2) * (1 - 1/2)
        assert_eq!(s.argument, int(2));
        assert_eq!(s.lhs, int(-2));
        assert!(s.holds());
    }

    #[test]
    fn dual_hahn_grid() {
        for n in 3..=12 {
            for k in 1..=8 {
                for family in [Family::Spinor, Family::Function] {
                    let spec = QFamilySpec::new(family, n, k).unwrap();
                    for m in 0..k as usize {
                        for t in 1..=8 {
                            let s = dual_hahn_identity(&spec, m, t).unwrap();
                            assert!(s.holds(), "{family} n={n} k={k} m={m} y={t}: {s:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn unshifted_lattice_argument_fails() {
        // Evaluating q̃_m at λ(t-1) = t^2 - 1 itself does not reproduce the 3F2.
        let spec = spinor(4, 3);
        let s = dual_hahn_identity(&spec, 1, 2).unwrap();
        let shifted = q_closed(&spec, 1).eval(&(&s.argument - int(1)));
        assert_ne!(shifted, s.rhs);
    }

    #[test]
    fn parameter_clash_is_an_error() {
        assert!(dual_hahn_identity(&spinor(4, 3), 3, 4).is_err());
        assert!(dual_hahn_identity(&spinor(4, 3), 1, 0).is_err());
        assert!(QFamilySpec::new(Family::Spinor, 2, 1).is_err());
        assert!(QFamilySpec::new(Family::Spinor, 3, 0).is_err());
    }
}
