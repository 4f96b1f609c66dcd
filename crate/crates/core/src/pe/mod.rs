//! Formal solution of the eigen-equation expansion on an Einstein boundary.
//!
//! The coefficients `θ_j^±` of the expansion are operators in the Dirac
//! symbol `D` applied to a seed spinor `ψ⁺`; their coefficients are rational
//! functions of the spectral parameter λ, kept symbolic throughout. Only the
//! `ψ⁺` branch is computed: the `ψ⁻` branch follows from `λ -> -λ`.

use thiserror::Error;

use crate::exact::{int, limit_form, pochhammer, rat, AlgebraError, Poly, Rational, RationalFunction, Ring, Var};
use crate::operator::{CurvatureScalar, OperatorPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeError {
    #[error("J = 0: the substitution y = (n/2J) D^2 is undefined; the flat operator is D^(2N+1)")]
    FlatCurvature,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Dimension and normalized scalar curvature of an Einstein manifold with
/// `Ric = 2(n-1)J/n h`.
#[derive(Debug, Clone, PartialEq)]
pub struct EinsteinParams {
    pub n: i64,
    pub j: Rational,
}

impl EinsteinParams {
    pub fn new(n: i64, j: Rational) -> Result<Self, PeError> {
        if n < 3 {
            return Err(PeError::InvalidParameters(format!("n = {n} must be at least 3")));
        }
        Ok(EinsteinParams { n, j })
    }

    /// `c = 2J / n`
    pub fn c(&self) -> Rational {
        int(2) * &self.j / int(self.n)
    }

    pub fn is_flat(&self) -> bool {
        Ring::is_zero(&self.j)
    }

    fn nr(&self) -> Rational {
        int(self.n)
    }
}

/// Polynomial in `D` with coefficients in `ℚ(λ)`.
pub type DOperator = Poly<RationalFunction>;

/// Polynomial in `y` with coefficients in `ℚ(λ)`.
pub type YPolyOverLambda = Poly<RationalFunction>;

/// `a λ + b` as a rational function.
fn affine(a: Rational, b: Rational) -> RationalFunction {
    RationalFunction::affine(a, b)
}

fn constant(c: Rational) -> RationalFunction {
    RationalFunction::constant(c)
}

fn d_times(p: &DOperator) -> DOperator {
    p.shift(1)
}

fn d2_times(p: &DOperator) -> DOperator {
    p.shift(2)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinorCoeffState {
    pub params: EinsteinParams,
    pub jmax: usize,
    pub theta_plus: Vec<DOperator>,
    pub theta_minus: Vec<DOperator>,
}

impl SpinorCoeffState {
    fn plus(&self, j: isize) -> DOperator {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.theta_plus.get(j).cloned())
            .unwrap_or_else(|| Poly::zero(Var::D))
    }

    fn minus(&self, j: isize) -> DOperator {
        usize::try_from(j)
            .ok()
            .and_then(|j| self.theta_minus.get(j).cloned())
            .unwrap_or_else(|| Poly::zero(Var::D))
    }

    /// `φ_l = θ⁻_{2l+1}`
    pub fn phi(&self, l: usize) -> Option<&DOperator> {
        self.theta_minus.get(2 * l + 1)
    }

    /// `θ⁺` vanishes at odd and `θ⁻` at even indices.
    pub fn parity_holds(&self) -> bool {
        self.theta_plus.iter().skip(1).step_by(2).all(Poly::is_zero)
            && self.theta_minus.iter().step_by(2).all(Poly::is_zero)
    }
}

/// One failed instance of an identity, kept for counterexample reports.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityFailure {
    pub relation: &'static str,
    pub index: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Solves the coupled system
///
/// ```text
/// j θ⁺_j        = D θ⁻_{j-1} + (n+j-2)/(2n) J θ⁺_{j-2}
/// (2λ+j) θ⁻_j   = D θ⁺_{j-1} + (2λ+n+j-2)/(2n) J θ⁻_{j-2}
/// ```
///
/// from `θ⁺_0 = ψ⁺`, `θ⁻_0 = 0`, dividing by `2λ+j` in `ℚ(λ)`.
pub fn solve_coupled(params: &EinsteinParams, jmax: usize) -> SpinorCoeffState {
    let n = params.nr();
    let j_curv = &params.j;
    let mut plus: Vec<DOperator> = vec![Poly::one(Var::D)];
    let mut minus: Vec<DOperator> = vec![Poly::zero(Var::D)];
    let zero = Poly::zero(Var::D);
    for j in 1..=jmax {
        let jr = int(j as i64);
        let prev2_plus = if j >= 2 { &plus[j - 2] } else { &zero };
        let prev2_minus = if j >= 2 { &minus[j - 2] } else { &zero };

        let plus_coeff = (&n + &jr - int(2)) / (int(2) * &n) * j_curv;
        let rhs = &d_times(&minus[j - 1]) + &prev2_plus.scale(&constant(plus_coeff));
        let theta_p = rhs.scale(&constant(jr.recip()));

        // (2λ + n + j - 2) J / (2n)
        let minus_coeff = affine(
            j_curv / &n,
            (&n + &jr - int(2)) * j_curv / (int(2) * &n),
        );
        let rhs = &d_times(&plus[j - 1]) + &prev2_minus.scale(&minus_coeff);
        let inv = affine(int(2), jr).recip().expect("2λ + j is not zero");
        let theta_m = rhs.scale(&inv);

        plus.push(theta_p);
        minus.push(theta_m);
    }
    SpinorCoeffState { params: params.clone(), jmax, theta_plus: plus, theta_minus: minus }
}

/// Checks the decoupled second-order relations for every `2 <= j <= jmax`.
pub fn decouple_verify(state: &SpinorCoeffState) -> Result<(), IdentityFailure> {
    let n = state.params.nr();
    let jc = &state.params.j;
    let j2 = jc * jc;
    let two_n = int(2) * &n;
    let four_n2 = int(4) * &n * &n;
    for j in 2..=state.jmax {
        let ji = j as isize;
        let jr = int(j as i64);

        // j θ⁺_j = (D²/(2λ+j-1) + [(2λ+n+j-3)(j-2) + (2λ+j-1)(n+j-2)] J / (2n(2λ+j-1))) θ⁺_{j-2}
        //          - (2λ+n+j-3)(n+j-4) J² / (4n²(2λ+j-1)) θ⁺_{j-4}
        let inv = affine(int(2), &jr - int(1)).recip().expect("2λ + j - 1 is not zero");
        let a = affine(int(2), &n + &jr - int(3));
        let b = affine(int(2), &jr - int(1));
        let mid = a
            .scale(&(&jr - int(2)))
            .add(&b.scale(&(&n + &jr - int(2))))
            .scale(&(jc / &two_n))
            .mul(&inv);
        let tail = a.scale(&((&n + &jr - int(4)) * &j2 / &four_n2)).mul(&inv);
        let prev = state.plus(ji - 2);
        let lhs = state.plus(ji).scale(&constant(jr.clone()));
        let rhs = &(&d2_times(&prev).scale(&inv) + &prev.scale(&mid)) - &state.plus(ji - 4).scale(&tail);
        if lhs != rhs {
            return Err(IdentityFailure {
                relation: "decoupled theta+",
                index: j,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }

        // (2λ+j) θ⁻_j = (D²/(j-1) + [(2λ+j-2)(n+j-3) + (2λ+n+j-2)(j-1)] J / (2n(j-1))) θ⁻_{j-2}
        //               - (2λ+n+j-4)(n+j-3) J² / (4n²(j-1)) θ⁻_{j-4}
        let inv = (&jr - int(1)).recip();
        let mid = affine(int(2), &jr - int(2))
            .scale(&(&n + &jr - int(3)))
            .add(&affine(int(2), &n + &jr - int(2)).scale(&(&jr - int(1))))
            .scale(&(jc / &two_n * &inv));
        let tail = affine(int(2), &n + &jr - int(4)).scale(&((&n + &jr - int(3)) * &j2 / &four_n2 * &inv));
        let prev = state.minus(ji - 2);
        let lhs = state.minus(ji).scale(&affine(int(2), jr.clone()));
        let rhs = &(&d2_times(&prev).scale(&constant(inv.clone())) + &prev.scale(&mid))
            - &state.minus(ji - 4).scale(&tail);
        if lhs != rhs {
            return Err(IdentityFailure {
                relation: "decoupled theta-",
                index: j,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(())
}

pub fn decouple_check(state: &SpinorCoeffState) -> bool {
    decouple_verify(state).is_ok()
}

/// Checks, for `1 <= l <= lmax`,
///
/// ```text
/// 2l(2λ+2l+1) φ_l = (D² + (2λ+2l-1)(n+2l-2) J/(2n) + 2l(2λ+n+2l-1) J/(2n)) φ_{l-1}
///                   - (2λ+n+2l-3)(n+2l-2) J²/(4n²) φ_{l-2}
/// ```
pub fn phi_recurrence_verify(state: &SpinorCoeffState, lmax: usize) -> Result<(), PeError> {
    if state.jmax < 2 * lmax + 1 {
        return Err(PeError::InvalidParameters(format!(
            "jmax = {} is below 2*lmax + 1 = {}",
            state.jmax,
            2 * lmax + 1
        )));
    }
    match phi_recurrence_failure(state, lmax) {
        None => Ok(()),
        Some(f) => Err(PeError::InvalidParameters(format!(
            "{} fails at {}: {} != {}",
            f.relation, f.index, f.lhs, f.rhs
        ))),
    }
}

/// First failing `l`, if any. Assumes `jmax >= 2 lmax + 1`.
pub fn phi_recurrence_failure(state: &SpinorCoeffState, lmax: usize) -> Option<IdentityFailure> {
    let n = state.params.nr();
    let jc = &state.params.j;
    let phi = |l: isize| state.minus(2 * l + 1);
    for l in 1..=lmax {
        let li = l as isize;
        let lr = int(l as i64);
        let two_l = int(2) * &lr;
        let lhs = phi(li).scale(&affine(int(2), &two_l + int(1)).scale(&two_l));
        let mid = affine(int(2), &two_l - int(1))
            .scale(&(&n + &two_l - int(2)))
            .add(&affine(int(2), &n + &two_l - int(1)).scale(&two_l))
            .scale(&(jc / (int(2) * &n)));
        let tail = affine(int(2), &n + &two_l - int(3))
            .scale(&((&n + &two_l - int(2)) * jc * jc / (int(4) * &n * &n)));
        let prev = phi(li - 1);
        let rhs = &(&d2_times(&prev) + &prev.scale(&mid)) - &phi(li - 2).scale(&tail);
        if lhs != rhs {
            return Some(IdentityFailure {
                relation: "phi recurrence",
                index: l,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    None
}

pub fn phi_recurrence_check(state: &SpinorCoeffState, lmax: usize) -> bool {
    phi_recurrence_verify(state, lmax).is_ok()
}

/// `4^l l! (n/2J)^l (λ + 3/2)_l (2λ + 1)` as a polynomial in λ.
fn normalization(params: &EinsteinParams, l: usize) -> Poly<Rational> {
    let scalar = int(4).pow(l as i32)
        * Rational::from_integer(crate::exact::factorial(l as u64))
        * (params.nr() / (int(2) * &params.j)).pow(l as i32);
    let mut p = Poly::from_ints(Var::Lambda, &[1, 2]).scale(&scalar);
    for i in 0..l {
        p = &p * &Poly::linear_root(Var::Lambda, -(rat(3, 2) + int(i as i64)));
    }
    p
}

/// Rewrites `(2λ+1) φ / D`, an even operator in `D`, as a polynomial in
/// `y = (n/2J) D²` by `D^{2i} -> (2J/n)^i y^i`.
fn to_y(params: &EinsteinParams, op: &DOperator) -> Result<Poly<RationalFunction>, AlgebraError> {
    let even = op.unshift(1)?.even_part_in_square()?;
    let c = params.c();
    let coeffs = even
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, k)| k.scale(&c.pow(i as i32)))
        .collect();
    Ok(Poly::new(Var::Y, coeffs))
}

/// Solution operators `q̃_0, ..., q̃_lmax` read off the solved system via
/// `4^l l! (n/2J)^l (λ+3/2)_l φ_l = q̃_l(y) φ_0`.
pub fn solution_operators(params: &EinsteinParams, lmax: usize) -> Result<Vec<YPolyOverLambda>, PeError> {
    if params.is_flat() {
        return Err(PeError::FlatCurvature);
    }
    let state = solve_coupled(params, 2 * lmax + 1);
    (0..=lmax)
        .map(|l| {
            let phi = state.phi(l).expect("solved far enough");
            let norm = RationalFunction::from_poly(normalization(params, l));
            Ok(to_y(params, &phi.scale(&norm))?)
        })
        .collect()
}

pub fn solution_operator(params: &EinsteinParams, l: usize) -> Result<YPolyOverLambda, PeError> {
    Ok(solution_operators(params, l)?.pop().expect("nonempty"))
}

/// The same operators from their own recurrence in λ, which involves no
/// curvature:
///
/// ```text
/// q̃_l = (y + (λ+l-1/2)(l+n/2-1) + l(λ+l+n/2-1/2)) q̃_{l-1}
///       - (l-1)(l+n/2-1)(l+λ-1/2)(l+λ+n/2-3/2) q̃_{l-2}
/// ```
pub fn solution_operators_by_recurrence(n: i64, lmax: usize) -> Vec<YPolyOverLambda> {
    let h = rat(n, 2);
    let mut out: Vec<YPolyOverLambda> = vec![Poly::one(Var::Y)];
    let mut prev: YPolyOverLambda = Poly::zero(Var::Y);
    for l in 1..=lmax {
        let lr = int(l as i64);
        let a = affine(int(1), &lr - rat(1, 2))
            .scale(&(&lr + &h - int(1)))
            .add(&affine(int(1), &lr + &h - rat(1, 2)).scale(&lr));
        let b = affine(int(1), &lr - rat(1, 2))
            .mul(&affine(int(1), &lr + &h - rat(3, 2)))
            .scale(&((&lr - int(1)) * (&lr + &h - int(1))));
        let cur = out.last().expect("nonempty").clone();
        let next = &(&Poly::new(Var::Y, vec![a, RationalFunction::one()]) * &cur) - &prev.scale(&b);
        prev = cur;
        out.push(next);
    }
    out
}

/// Specializes a λ-polynomial family member at `λ0`.
pub fn at_lambda(q: &YPolyOverLambda, lambda0: &Rational) -> Result<Poly<Rational>, AlgebraError> {
    q.try_map_coeffs(|k| k.eval_at(lambda0))
}

/// The obstruction at `λ = -(2N+1)/2`.
///
/// The normalization `(λ+3/2)_N (2λ+1)` vanishes there while `φ_N` has a
/// simple pole; each coefficient is evaluated on the unreduced product with
/// [`limit_form`] so the cancellation is carried out explicitly. The result
/// is `(n/2J)^{-N} q̃_N((n/2J) D²) D` with `c = 2J/n` substituted.
/// A flat boundary gives `D^{2N+1}`.
pub fn obstruction_extract(params: &EinsteinParams, n_order: usize) -> Result<OperatorPoly, PeError> {
    if params.is_flat() {
        return Ok(OperatorPoly::d_pow(2 * n_order + 1));
    }
    obstruction_from_state(&solve_coupled(params, 2 * n_order + 1), n_order)
}

/// As [`obstruction_extract`], reading `φ_N` off an already solved state.
pub fn obstruction_from_state(state: &SpinorCoeffState, n_order: usize) -> Result<OperatorPoly, PeError> {
    let params = &state.params;
    if params.is_flat() {
        return Ok(OperatorPoly::d_pow(2 * n_order + 1));
    }
    let phi = state.phi(n_order).ok_or_else(|| {
        PeError::InvalidParameters(format!("jmax = {} is below 2N + 1 = {}", state.jmax, 2 * n_order + 1))
    })?;
    let norm = normalization(params, n_order);
    let lambda0 = -rat(2 * n_order as i64 + 1, 2);
    let coeffs = phi
        .coeffs()
        .iter()
        .map(|k| limit_form(&(&norm * k.numer()), k.denom(), &lambda0))
        .collect::<Result<Vec<_>, _>>()?;
    let odd = Poly::new(Var::D, coeffs);
    let q_n = even_to_y(&odd.unshift(1)?.even_part_in_square()?, &params.c());
    Ok(y_poly_to_operator(&q_n, &CurvatureScalar::from_rational(&params.c()), n_order))
}

fn even_to_y(even: &Poly<Rational>, c: &Rational) -> Poly<Rational> {
    let coeffs = even
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, k)| k * c.pow(i as i32))
        .collect();
    Poly::new(Var::Y, coeffs)
}

/// `c^N q(D²/c) D = sum_i q_i c^{N-i} D^{2i+1}`; no division by `c` occurs
/// since `deg q <= N`.
fn y_poly_to_operator(q: &Poly<Rational>, c: &CurvatureScalar, n_order: usize) -> OperatorPoly {
    let deg = q.degree().unwrap_or(0);
    assert!(deg <= n_order, "degree of the solution operator exceeds N");
    let mut coeffs = vec![CurvatureScalar::zero(); 2 * n_order + 2];
    for (i, k) in q.coeffs().iter().enumerate() {
        coeffs[2 * i + 1] = c.pow((n_order - i) as u32).scale(k);
    }
    OperatorPoly::new(Poly::new(Var::D, coeffs))
}

/// Obstruction with `c` kept formal, through the curvature-free recurrence
/// for the solution operators.
pub fn obstruction_extract_formal(n: i64, n_order: usize) -> Result<OperatorPoly, PeError> {
    let q = solution_operators_by_recurrence(n, n_order).pop().expect("nonempty");
    let q_n = at_lambda(&q, &-rat(2 * n_order as i64 + 1, 2))?;
    Ok(y_poly_to_operator(&q_n, &CurvatureScalar::c(), n_order))
}

/// `(-N)_N`, the factor appearing in the obstruction normalization.
pub fn obstruction_sign_factor(n_order: usize) -> Rational {
    pochhammer(&-int(n_order as i64), n_order)
}
