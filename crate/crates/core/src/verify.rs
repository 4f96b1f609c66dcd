//! Grid verification of every identity the library implements.
//!
//! Each check walks a parameter grid, compares two independently computed
//! sides exactly, and reports the first failing point in grid order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact::{fmt_rational, int, rat, Poly, Rational, Ring, Var};
use crate::operator::{
    conformal_power, expand_linear_factors, holographic_series, m_scalar, m_sequence, membership_decompose,
    membership_expand, variation_series, CurvatureMode, CurvatureScalar, OperatorPoly,
};
use crate::par::{self, Execution};
use crate::pe::{
    at_lambda, decouple_verify, obstruction_extract_formal, obstruction_from_state, phi_recurrence_failure,
    solution_operators, solution_operators_by_recurrence, solve_coupled, EinsteinParams,
};
use crate::special::{
    dual_hahn_identity, q_closed, q_recurrence, recurrence_coefficients, three_term, Family, QFamilySpec,
};
use crate::sphere::{apply_power_spectrally, factored_value, kernel_expected, sphere_spectrum};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

/// Deliberate corruption used to confirm that the harness can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Fault {
    /// Negates `b_m` in the three-term recurrence.
    RecurrenceSignFlip,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: BTreeMap<String, String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub ok: bool,
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone)]
pub struct Grid {
    pub family_n: Vec<i64>,
    pub family_k: Vec<i64>,
    pub dual_hahn_y: Vec<u64>,
    pub einstein_n: Vec<i64>,
    pub max_order: usize,
    pub max_formal_order: usize,
    pub jmax: usize,
    pub sphere_n: Vec<i64>,
    pub sphere_kmax: u64,
    pub variation_l: usize,
    pub membership_max: usize,
    pub holographic_order: usize,
}

impl Grid {
    pub fn for_profile(profile: Profile) -> Self {
        match profile {
            Profile::Full => Grid {
                family_n: (3..=12).collect(),
                family_k: (1..=8).collect(),
                dual_hahn_y: (1..=8).collect(),
                einstein_n: (3..=10).collect(),
                max_order: 6,
                max_formal_order: 8,
                jmax: 17,
                sphere_n: vec![3, 4, 5, 6],
                sphere_kmax: 6,
                variation_l: 8,
                membership_max: 12,
                holographic_order: 16,
            },
            Profile::Quick => Grid {
                family_n: (3..=7).collect(),
                family_k: (1..=5).collect(),
                dual_hahn_y: (1..=5).collect(),
                einstein_n: (3..=6).collect(),
                max_order: 3,
                max_formal_order: 5,
                jmax: 9,
                sphere_n: vec![3, 4, 5, 6],
                sphere_kmax: 4,
                variation_l: 5,
                membership_max: 8,
                holographic_order: 10,
            },
        }
    }
}

/// `J ∈ {n/2, 1, -2, 3/7}`
pub fn curvature_samples(n: i64) -> [Rational; 4] {
    [rat(n, 2), int(1), int(-2), rat(3, 7)]
}

fn params_map(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn verdict(name: &str, checked: usize, counterexample: Option<Counterexample>) -> Verdict {
    Verdict { name: name.to_string(), ok: counterexample.is_none(), checked, counterexample }
}

/// Family points `(family, n, k)`.
fn family_points(grid: &Grid) -> Vec<(Family, i64, i64)> {
    let mut pts = Vec::new();
    for family in [Family::Spinor, Family::Function] {
        for &n in &grid.family_n {
            for &k in &grid.family_k {
                pts.push((family, n, k));
            }
        }
    }
    pts
}

fn einstein_points(grid: &Grid) -> Vec<(i64, Rational)> {
    grid.einstein_n
        .iter()
        .flat_map(|&n| curvature_samples(n).into_iter().map(move |j| (n, j)))
        .collect()
}

fn einstein_label(n: i64, j: &Rational) -> Vec<(&'static str, String)> {
    vec![("n", n.to_string()), ("J", fmt_rational(j))]
}

/// Three-term recurrence against the closed product form, `0 <= m <= k`.
pub fn check_recurrence(grid: &Grid, exec: Execution, fault: Option<Fault>) -> Verdict {
    let pts = family_points(grid);
    let cx = par::find_first(exec, &pts, |&(family, n, k)| {
        let spec = QFamilySpec::new(family, n, k).expect("valid grid point");
        let k = k as usize;
        let rec = match fault {
            None => q_recurrence(&spec, k),
            Some(Fault::RecurrenceSignFlip) => three_term(k, |m| {
                let (a, b) = recurrence_coefficients(&spec, m);
                (a, -b)
            }),
        };
        (0..=k).find_map(|m| {
            let closed = q_closed(&spec, m);
            (rec[m] != closed).then(|| Counterexample {
                params: params_map(&[
                    ("family", family.to_string()),
                    ("n", n.to_string()),
                    ("k", k.to_string()),
                    ("m", m.to_string()),
                ]),
                lhs: rec[m].to_string(),
                rhs: closed.to_string(),
            })
        })
    });
    verdict("recurrence_closed_form", pts.len(), cx)
}

/// Dual Hahn identification for `m <= k - 1` on the lattice.
pub fn check_dual_hahn(grid: &Grid, exec: Execution) -> Verdict {
    let pts = family_points(grid);
    let cx = par::find_first(exec, &pts, |&(family, n, k)| {
        let spec = QFamilySpec::new(family, n, k).expect("valid grid point");
        for m in 0..k as usize {
            for &y in &grid.dual_hahn_y {
                let label = || {
                    params_map(&[
                        ("family", family.to_string()),
                        ("n", n.to_string()),
                        ("k", k.to_string()),
                        ("m", m.to_string()),
                        ("y", y.to_string()),
                    ])
                };
                match dual_hahn_identity(&spec, m, y) {
                    Ok(s) if s.holds() => {}
                    Ok(s) => {
                        let rhs = match &s.via_hahn {
                            Some(h) if *h != s.rhs => format!("{} (via Hahn: {})", fmt_rational(&s.rhs), fmt_rational(h)),
                            _ => fmt_rational(&s.rhs),
                        };
                        return Some(Counterexample { params: label(), lhs: fmt_rational(&s.lhs), rhs });
                    }
                    Err(e) => return Some(Counterexample { params: label(), lhs: e.to_string(), rhs: String::new() }),
                }
            }
        }
        None
    });
    verdict("dual_hahn", pts.len(), cx)
}

/// Obstruction extracted from the solved system, the product formula and
/// the linear-factor expansion agree; also with `c` formal.
pub fn check_product_formula(grid: &Grid, exec: Execution) -> Verdict {
    let pts = einstein_points(grid);
    let max_order = grid.max_order;
    let linear: Vec<OperatorPoly> = (0..=max_order.max(grid.max_formal_order)).map(expand_linear_factors).collect();
    let cx = par::find_first(exec, &pts, |(n, j)| {
        let params = EinsteinParams::new(*n, j.clone()).expect("n >= 3");
        let state = solve_coupled(&params, 2 * max_order + 1);
        let c = params.c();
        (0..=max_order).find_map(|big_n| {
            let mut label = einstein_label(*n, j);
            label.push(("N", big_n.to_string()));
            let product = conformal_power(big_n, &CurvatureMode::Value(c.clone()));
            let derived = match obstruction_from_state(&state, big_n) {
                Ok(d) => d,
                Err(e) => {
                    return Some(Counterexample { params: params_map(&label), lhs: e.to_string(), rhs: product.to_string() })
                }
            };
            let expanded = linear[big_n].substitute_c(&c).expect("no sqrt(c) part survives");
            if derived != product {
                label.push(("compare", "obstruction vs product".into()));
                return Some(Counterexample { params: params_map(&label), lhs: derived.to_string(), rhs: product.to_string() });
            }
            (expanded != product).then(|| {
                label.push(("compare", "linear factors vs product".into()));
                Counterexample { params: params_map(&label), lhs: expanded.to_string(), rhs: product.to_string() }
            })
        })
    });
    let formal_pts: Vec<(i64, usize)> = grid
        .einstein_n
        .iter()
        .flat_map(|&n| (0..=grid.max_formal_order).map(move |k| (n, k)))
        .collect();
    let cx = cx.or_else(|| {
        par::find_first(exec, &formal_pts, |&(n, big_n)| {
            let product = conformal_power(big_n, &CurvatureMode::Formal);
            let derived = obstruction_extract_formal(n, big_n).map(|d| d.to_string());
            let label = params_map(&[("n", n.to_string()), ("N", big_n.to_string()), ("c", "formal".into())]);
            match derived {
                Ok(d) if d == product.to_string() && linear[big_n] == product => None,
                Ok(d) => Some(Counterexample { params: label, lhs: d, rhs: product.to_string() }),
                Err(e) => Some(Counterexample { params: label, lhs: e.to_string(), rhs: product.to_string() }),
            }
        })
    });
    verdict("product_formula", pts.len() + formal_pts.len(), cx)
}

/// Both constructions of the solution operators agree, and at
/// `λ = -(2N+1)/2` they reproduce the spinor family with `k = N`.
pub fn check_solution_operators(grid: &Grid, exec: Execution) -> Verdict {
    let pts = einstein_points(grid);
    let lmax = grid.max_order;
    let cx = par::find_first(exec, &pts, |(n, j)| {
        let params = EinsteinParams::new(*n, j.clone()).expect("n >= 3");
        let a = solution_operators(&params, lmax).expect("J != 0 on the grid");
        let b = solution_operators_by_recurrence(*n, lmax);
        if let Some(l) = (0..=lmax).find(|&l| a[l] != b[l]) {
            let mut label = einstein_label(*n, j);
            label.push(("l", l.to_string()));
            return Some(Counterexample { params: params_map(&label), lhs: a[l].to_string(), rhs: b[l].to_string() });
        }
        None
    });
    let subst_pts: Vec<(i64, usize)> = grid
        .einstein_n
        .iter()
        .flat_map(|&n| (1..=lmax).map(move |k| (n, k)))
        .collect();
    let cx = cx.or_else(|| {
        par::find_first(exec, &subst_pts, |&(n, big_n)| {
            let ops = solution_operators_by_recurrence(n, big_n);
            let lambda0 = -rat(2 * big_n as i64 + 1, 2);
            let spec = QFamilySpec::new(Family::Spinor, n, big_n as i64).expect("valid");
            let family = q_recurrence(&spec, big_n);
            (0..=big_n).find_map(|m| {
                let at = at_lambda(&ops[m], &lambda0).map(|p| p.to_string()).unwrap_or_else(|e| e.to_string());
                (at != family[m].to_string()).then(|| Counterexample {
                    params: params_map(&[("n", n.to_string()), ("N", big_n.to_string()), ("m", m.to_string())]),
                    lhs: at,
                    rhs: family[m].to_string(),
                })
            })
        })
    });
    verdict("solution_operators", pts.len() + subst_pts.len(), cx)
}

/// `D_{2N+1}` on the unit sphere (`J = n/2`) is `(D-N)...(D+N)` and acts on
/// the spectrum accordingly; kernels appear exactly on even spheres with
/// `n/2 + k <= N`.
pub fn check_sphere(grid: &Grid, exec: Execution) -> Verdict {
    let pts: Vec<(i64, usize)> = grid
        .sphere_n
        .iter()
        .flat_map(|&n| (0..=grid.max_order).map(move |k| (n, k)))
        .collect();
    let kmax = grid.sphere_kmax;
    let cx = par::find_first(exec, &pts, |&(n, big_n)| {
        let label = |extra: &[(&str, String)]| {
            let mut v = vec![("n", n.to_string()), ("N", big_n.to_string())];
            v.extend(extra.iter().cloned());
            params_map(&v)
        };
        let params = EinsteinParams::new(n, rat(n, 2)).expect("n >= 3");
        let derived = crate::pe::obstruction_extract(&params, big_n)
            .ok()
            .and_then(|d| d.to_rational_poly());
        let factored = (-(big_n as i64)..=big_n as i64)
            .fold(Poly::x(Var::D), |acc, j| if j == 0 { acc } else { &acc * &Poly::linear_root(Var::D, int(j)) });
        let derived = match derived {
            Some(d) if d == factored => d,
            other => {
                return Some(Counterexample {
                    params: label(&[]),
                    lhs: other.map_or_else(|| "not a rational operator".into(), |d| d.to_string()),
                    rhs: factored.to_string(),
                })
            }
        };
        for img in apply_power_spectrally(big_n, &sphere_spectrum(n, kmax)) {
            let direct = derived.eval(&img.eigenvalue_in);
            if direct != img.eigenvalue_out || img.in_kernel() != kernel_expected(n, img.k, big_n) {
                return Some(Counterexample {
                    params: label(&[("k", img.k.to_string()), ("sign", img.sign.to_string())]),
                    lhs: fmt_rational(&direct),
                    rhs: fmt_rational(&img.eigenvalue_out),
                });
            }
            let mirrored = factored_value(big_n, &-img.eigenvalue_in.clone());
            if mirrored != -img.eigenvalue_out.clone() {
                return Some(Counterexample {
                    params: label(&[("k", img.k.to_string()), ("check", "odd symmetry".into())]),
                    lhs: fmt_rational(&mirrored),
                    rhs: fmt_rational(&-img.eigenvalue_out),
                });
            }
        }
        None
    });
    verdict("sphere_corollary", pts.len(), cx)
}

/// Derivatives at `r = 0` of the Dirac family and of `f_r`.
pub fn check_variation(grid: &Grid, exec: Execution) -> Verdict {
    let pts = einstein_points(grid);
    let lmax = grid.variation_l;
    let cx = par::find_first(exec, &pts, |(n, j)| {
        let v = variation_series(2 * lmax + 1, j, *n);
        let q = j / int(2 * n);
        (0..=lmax).find_map(|l| {
            let fact = Rational::from_integer(crate::exact::factorial(2 * l as u64));
            let even = v.dirac.derivative_at_zero(2 * l);
            let want = OperatorPoly::d().scale(&(&fact * q.pow(l as i32)));
            let odd = v.dirac.derivative_at_zero(2 * l + 1);
            let f_even = v.f_r.derivative_at_zero(2 * l);
            let f_want = &fact / int(2).pow(l as i32) * (j / int(*n)).pow(l as i32);
            let f_odd = v.f_r.derivative_at_zero(2 * l + 1);
            let mut label = einstein_label(*n, j);
            label.push(("l", l.to_string()));
            if even != want {
                Some(Counterexample { params: params_map(&label), lhs: even.to_string(), rhs: want.to_string() })
            } else if !odd.is_zero() || !Ring::is_zero(&f_odd) {
                Some(Counterexample { params: params_map(&label), lhs: odd.to_string(), rhs: "0".into() })
            } else if f_even != f_want {
                Some(Counterexample { params: params_map(&label), lhs: fmt_rational(&f_even), rhs: fmt_rational(&f_want) })
            } else {
                None
            }
        })
    });
    verdict("dirac_variation", pts.len(), cx)
}

/// ℕ-presentation in the M-sequence and its round trip, plus
/// `M_{2N+1} = -N^2 c M_{2N-1}`.
pub fn check_membership(grid: &Grid, exec: Execution) -> Verdict {
    let pts: Vec<usize> = (0..=grid.membership_max).collect();
    let cx = par::find_first(exec, &pts, |&big_n| {
        let label = params_map(&[("N", big_n.to_string())]);
        let product = conformal_power(big_n, &CurvatureMode::Formal);
        let combo = match membership_decompose(big_n) {
            Ok(c) => c,
            Err(e) => return Some(Counterexample { params: label, lhs: e.to_string(), rhs: product.to_string() }),
        };
        let top = combo.coeff(&[2 * big_n as u32 + 1]);
        if top != 1u32.into() {
            return Some(Counterexample { params: label, lhs: format!("M_{} coefficient {top}", 2 * big_n + 1), rhs: "1".into() });
        }
        let expanded = membership_expand(&combo);
        if expanded != product {
            return Some(Counterexample { params: label, lhs: expanded.to_string(), rhs: product.to_string() });
        }
        if big_n >= 1 {
            let shift = CurvatureScalar::c().scale(&int(-((big_n * big_n) as i64)));
            let rhs = m_sequence(big_n - 1).mul(&OperatorPoly::from_scalar(shift));
            if m_sequence(big_n) != rhs {
                return Some(Counterexample { params: label, lhs: m_scalar(big_n).to_string(), rhs: rhs.to_string() });
            }
        }
        None
    });
    verdict("membership", pts.len(), cx)
}

/// `H(r) (1 - (J/2n) r^2) = D` up to the grid order.
pub fn check_holographic(grid: &Grid, exec: Execution) -> Verdict {
    let pts = einstein_points(grid);
    let order = grid.holographic_order;
    let cx = par::find_first(exec, &pts, |(n, j)| {
        let h = holographic_series(order, j, *n);
        let mut factor = vec![int(1)];
        if order >= 2 {
            factor.extend([int(0), -(j / int(2 * n))]);
        }
        let back = h.scale_by(&crate::operator::FormalSeries::new(order, factor));
        (0..=order).find_map(|i| {
            let want = if i == 0 { OperatorPoly::d() } else { OperatorPoly::zero() };
            (*back.coeff(i) != want).then(|| {
                let mut label = einstein_label(*n, j);
                label.push(("r_power", i.to_string()));
                Counterexample { params: params_map(&label), lhs: back.coeff(i).to_string(), rhs: want.to_string() }
            })
        })
    });
    verdict("holographic_series", pts.len(), cx)
}

/// Parity, decoupling and the `φ` recurrence on solved states.
pub fn check_system(grid: &Grid, exec: Execution) -> Verdict {
    let pts = einstein_points(grid);
    let jmax = grid.jmax;
    let cx = par::find_first(exec, &pts, |(n, j)| {
        let state = solve_coupled(&EinsteinParams::new(*n, j.clone()).expect("n >= 3"), jmax);
        let mut label = einstein_label(*n, j);
        label.push(("jmax", jmax.to_string()));
        if !state.parity_holds() {
            return Some(Counterexample { params: params_map(&label), lhs: "parity".into(), rhs: "violated".into() });
        }
        let failure = decouple_verify(&state).err().or_else(|| phi_recurrence_failure(&state, (jmax - 1) / 2));
        failure.map(|f| {
            label.push(("relation", f.relation.to_string()));
            label.push(("index", f.index.to_string()));
            Counterexample { params: params_map(&label), lhs: f.lhs, rhs: f.rhs }
        })
    });
    verdict("system_structure", pts.len(), cx)
}

pub fn verify_all(profile: Profile, exec: Execution, fault: Option<Fault>) -> Vec<Verdict> {
    let grid = Grid::for_profile(profile);
    vec![
        check_recurrence(&grid, exec, fault),
        check_dual_hahn(&grid, exec),
        check_product_formula(&grid, exec),
        check_solution_operators(&grid, exec),
        check_sphere(&grid, exec),
        check_variation(&grid, exec),
        check_membership(&grid, exec),
        check_holographic(&grid, exec),
        check_system(&grid, exec),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_profile_passes() {
        for v in verify_all(Profile::Quick, Execution::Parallel, None) {
            assert!(v.ok, "{v:?}");
            assert!(v.checked > 0);
        }
    }

    #[test]
    fn injected_fault_is_caught() {
        let grid = Grid::for_profile(Profile::Quick);
        let v = check_recurrence(&grid, Execution::Sequential, Some(Fault::RecurrenceSignFlip));
        assert!(!v.ok);
        let cx = v.counterexample.unwrap();
        assert_ne!(cx.lhs, cx.rhs);
        // the first point whose b_m is nonzero
        assert_eq!(cx.params["k"], "2");
        assert_eq!(cx.params["m"], "2");
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let a = verify_all(Profile::Quick, Execution::Sequential, Some(Fault::RecurrenceSignFlip));
        let b = verify_all(Profile::Quick, Execution::Parallel, Some(Fault::RecurrenceSignFlip));
        assert_eq!(a, b);
    }
}
