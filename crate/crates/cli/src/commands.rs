use std::collections::BTreeMap;
use std::path::PathBuf;

use conformal_dirac::exact::{factorial, fmt_rational, int, Rational, Ring};
use conformal_dirac::operator::{
    conformal_power, expand_linear_factors, holographic_series, membership_decompose, membership_expand,
    variation_series, CurvatureMode, FormalSeries, OperatorPoly,
};
use conformal_dirac::par::Execution;
use conformal_dirac::pe::{obstruction_extract, EinsteinParams};
use conformal_dirac::special::{dual_hahn_identity, q_closed, q_recurrence, Family, QFamilySpec};
use conformal_dirac::sphere::{
    apply_power_spectrally, factored_value, kernel_expected, parse_spectrum, sphere_spectrum,
};
use conformal_dirac::verify::{verify_all, Fault, Profile};
use serde_json::{json, Value};

use crate::report::{operator, poly, q, ReportVerdict, RunReport};

#[derive(Debug)]
pub enum CliError {
    /// Parameters that parse but violate a precondition.
    Usage(String),
    /// Unreadable or malformed input file.
    Input(String),
}

pub fn qtilde(n: i64, k: i64, mmax: usize, family: Family) -> Result<RunReport, CliError> {
    let spec = QFamilySpec::new(family, n, k).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut report = RunReport::new(
        "qtilde",
        &[("n", n.to_string()), ("k", k.to_string()), ("mmax", mmax.to_string()), ("family", family.to_string())],
    );
    let closed: Vec<_> = (0..=mmax).map(|m| q_closed(&spec, m)).collect();
    let rec = q_recurrence(&spec, mmax);
    let bad = (0..=mmax).find(|&m| closed[m] != rec[m]);
    let mut at = report.params.clone();
    if let Some(m) = bad {
        at.insert("m".into(), m.to_string());
    }
    let (lhs, rhs) = bad.map_or_else(Default::default, |m| (rec[m].to_string(), closed[m].to_string()));
    report.verdicts.push(ReportVerdict::check("recurrence_equals_closed_form", bad.is_none(), &at, lhs, rhs));
    report.payload = json!({
        "closed_form": closed.iter().map(poly).collect::<Vec<_>>(),
        "recurrence": rec.iter().map(poly).collect::<Vec<_>>(),
    });
    Ok(report)
}

fn einstein(n: i64, j: &Rational) -> Result<EinsteinParams, CliError> {
    EinsteinParams::new(n, j.clone()).map_err(|e| CliError::Usage(e.to_string()))
}

fn pairwise(report: &mut RunReport, items: &[(&str, &OperatorPoly)]) {
    for (i, (a, x)) in items.iter().enumerate() {
        for (b, y) in &items[i + 1..] {
            let name = format!("{a}_equals_{b}");
            let params = report.params.clone();
            report.verdicts.push(ReportVerdict::check(&name, x == y, &params, x.to_string(), y.to_string()));
        }
    }
}

pub fn derive_power(n: i64, j: &Rational, big_n: usize) -> Result<RunReport, CliError> {
    let params = einstein(n, j)?;
    let c = params.c();
    let mut report = RunReport::new(
        "derive-power",
        &[("n", n.to_string()), ("J", fmt_rational(j)), ("N", big_n.to_string())],
    );
    let obstruction = obstruction_extract(&params, big_n).map_err(|e| CliError::Usage(e.to_string()))?;
    let product = conformal_power(big_n, &CurvatureMode::Value(c.clone()));
    let linear = expand_linear_factors(big_n)
        .substitute_c(&c)
        .expect("the linear factors pair up into a polynomial in c");
    pairwise(
        &mut report,
        &[("obstruction", &obstruction), ("product", &product), ("linear_factors", &linear)],
    );
    report.payload = json!({
        "c": q(&c),
        "obstruction": operator(&obstruction),
        "product": operator(&product),
        "linear_factors": operator(&linear),
        "formal_c": operator(&conformal_power(big_n, &CurvatureMode::Formal)),
    });
    Ok(report)
}

pub fn sphere(n: i64, big_n: usize, kmax: u64, spectrum: Option<&PathBuf>) -> Result<RunReport, CliError> {
    if n < 2 {
        return Err(CliError::Usage(format!("sphere dimension n = {n} must be at least 2")));
    }
    let (lines, source) = match spectrum {
        None => (sphere_spectrum(n, kmax), "default".to_string()),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let lines =
                parse_spectrum(&text, n).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            (lines, path.display().to_string())
        }
    };
    let mut params = vec![("n", n.to_string()), ("N", big_n.to_string()), ("spectrum", source)];
    if spectrum.is_none() {
        params.push(("kmax", kmax.to_string()));
    }
    let mut report = RunReport::new("sphere", &params);
    let op = conformal_power(big_n, &CurvatureMode::Value(int(1)))
        .to_rational_poly()
        .expect("c = 1 is rational");
    let images = apply_power_spectrally(big_n, &lines);

    let label = |img: &conformal_dirac::sphere::SpectralImage| {
        let mut at = report.params.clone();
        at.insert("k".into(), img.k.to_string());
        at.insert("sign".into(), img.sign.to_string());
        at
    };
    let mismatch = images.iter().find(|i| op.eval(&i.eigenvalue_in) != i.eigenvalue_out);
    let v1 = match mismatch {
        Some(i) => ReportVerdict::check(
            "operator_matches_factored_form",
            false,
            &label(i),
            fmt_rational(&op.eval(&i.eigenvalue_in)),
            fmt_rational(&i.eigenvalue_out),
        ),
        None => ReportVerdict::check("operator_matches_factored_form", true, &report.params, String::new(), String::new()),
    };
    let asym = images
        .iter()
        .find(|i| factored_value(big_n, &-i.eigenvalue_in.clone()) != -i.eigenvalue_out.clone());
    let v2 = match asym {
        Some(i) => ReportVerdict::check(
            "odd_symmetry",
            false,
            &label(i),
            fmt_rational(&factored_value(big_n, &-i.eigenvalue_in.clone())),
            fmt_rational(&-i.eigenvalue_out.clone()),
        ),
        None => ReportVerdict::check("odd_symmetry", true, &report.params, String::new(), String::new()),
    };
    let mut verdicts = vec![v1, v2];
    if spectrum.is_none() {
        let wrong = images.iter().find(|i| i.in_kernel() != kernel_expected(n, i.k, big_n));
        verdicts.push(match wrong {
            Some(i) => ReportVerdict::check(
                "kernel_characterization",
                false,
                &label(i),
                i.in_kernel().to_string(),
                kernel_expected(n, i.k, big_n).to_string(),
            ),
            None => ReportVerdict::check("kernel_characterization", true, &report.params, String::new(), String::new()),
        });
    }
    report.verdicts = verdicts;

    let rows: Vec<Value> = images
        .iter()
        .map(|i| {
            json!({
                "k": i.k,
                "sign": i.sign.to_string(),
                "eigenvalue": q(&i.eigenvalue_in),
                "image": q(&i.eigenvalue_out),
                "multiplicity": i.multiplicity.to_string(),
            })
        })
        .collect();
    let kernel: Vec<Value> = images
        .iter()
        .filter(|i| i.in_kernel())
        .map(|i| {
            json!({
                "k": i.k,
                "sign": i.sign.to_string(),
                "eigenvalue": q(&i.eigenvalue_in),
                "multiplicity": i.multiplicity.to_string(),
            })
        })
        .collect();
    report.payload = json!({ "operator": poly(&op), "lines": rows, "kernel": kernel });
    Ok(report)
}

pub fn verify(profile: Profile, exec: Execution, fault: Option<Fault>) -> RunReport {
    let mut params = vec![
        ("profile", format!("{profile:?}").to_lowercase()),
        ("execution", format!("{exec:?}").to_lowercase()),
    ];
    if let Some(f) = fault {
        params.push(("fault", format!("{f:?}")));
    }
    let mut report = RunReport::new("verify-all", &params);
    let verdicts = verify_all(profile, exec, fault);
    let checked: BTreeMap<String, usize> = verdicts.iter().map(|v| (v.name.clone(), v.checked)).collect();
    report.verdicts = verdicts.into_iter().map(ReportVerdict::from).collect();
    report.payload = json!({ "checked": checked });
    report
}

pub fn holographic(n: i64, j: &Rational, order: usize) -> Result<RunReport, CliError> {
    let params = einstein(n, j)?;
    let mut report = RunReport::new(
        "holographic",
        &[("n", n.to_string()), ("J", fmt_rational(j)), ("order", order.to_string())],
    );
    let h = holographic_series(order, j, n);
    let quarter = j / int(2 * n);

    let geometric = (0..=order).find_map(|i| {
        let want = if i % 2 == 0 {
            OperatorPoly::d().scale(&quarter.pow((i / 2) as i32))
        } else {
            OperatorPoly::zero()
        };
        (*h.coeff(i) != want).then(|| (i, h.coeff(i).to_string(), want.to_string()))
    });
    let mut factor = vec![int(1)];
    if order >= 2 {
        factor.extend([int(0), -quarter.clone()]);
    }
    let back = h.scale_by(&FormalSeries::new(order, factor));
    let truncation = (0..=order).find_map(|i| {
        let want = if i == 0 { OperatorPoly::d() } else { OperatorPoly::zero() };
        (*back.coeff(i) != want).then(|| (i, back.coeff(i).to_string(), want.to_string()))
    });
    for (name, failure) in [("geometric_coefficients", geometric), ("times_defining_factor_is_d", truncation)] {
        let mut at = report.params.clone();
        let (lhs, rhs) = match failure.clone() {
            Some((i, l, r)) => {
                at.insert("r_power".into(), i.to_string());
                (l, r)
            }
            None => Default::default(),
        };
        report.verdicts.push(ReportVerdict::check(name, failure.is_none(), &at, lhs, rhs));
    }
    report.payload = json!({
        "c": q(&params.c()),
        "ratio": q(&quarter),
        "coefficients": h.coeffs().iter().map(operator).collect::<Vec<_>>(),
    });
    Ok(report)
}

pub fn membership(big_n: usize) -> RunReport {
    let mut report = RunReport::new("membership", &[("N", big_n.to_string())]);
    let product = conformal_power(big_n, &CurvatureMode::Formal);
    let params = report.params.clone();
    match membership_decompose(big_n) {
        Err(e) => {
            report
                .verdicts
                .push(ReportVerdict::check("decomposition_exists", false, &params, e.to_string(), product.to_string()));
        }
        Ok(combo) => {
            let top = combo.coeff(&[2 * big_n as u32 + 1]);
            report.verdicts.push(ReportVerdict::check(
                "top_coefficient_is_one",
                top == 1u32.into(),
                &params,
                top.to_string(),
                "1".into(),
            ));
            let expanded = membership_expand(&combo);
            report.verdicts.push(ReportVerdict::check(
                "expansion_equals_product",
                expanded == product,
                &params,
                expanded.to_string(),
                product.to_string(),
            ));
            let terms: Vec<Value> = combo
                .terms()
                .map(|(mono, k)| json!({ "monomial": monomial_text(mono), "factors": mono, "coeff": k.to_string() }))
                .collect();
            report.payload = json!({ "product": operator(&product), "terms": terms });
        }
    }
    report
}

/// `[1, 1, 3]` as `M_1^2 M_3`.
fn monomial_text(mono: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < mono.len() {
        let run = mono[i..].iter().take_while(|&&x| x == mono[i]).count();
        parts.push(if run == 1 {
            format!("M_{}", mono[i])
        } else {
            format!("M_{}^{run}", mono[i])
        });
        i += run;
    }
    parts.join(" ")
}

pub fn dual_hahn(n: i64, k: i64, m: usize, y: u64, family: Family) -> Result<RunReport, CliError> {
    let spec = QFamilySpec::new(family, n, k).map_err(|e| CliError::Usage(e.to_string()))?;
    let sides = dual_hahn_identity(&spec, m, y).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut report = RunReport::new(
        "dual-hahn",
        &[
            ("n", n.to_string()),
            ("k", k.to_string()),
            ("m", m.to_string()),
            ("y", y.to_string()),
            ("family", family.to_string()),
        ],
    );
    let params = report.params.clone();
    report.verdicts.push(ReportVerdict::check(
        "identity_holds",
        sides.holds(),
        &params,
        fmt_rational(&sides.lhs),
        fmt_rational(&sides.rhs),
    ));
    report.payload = json!({
        "argument": q(&sides.argument),
        "polynomial_side": q(&sides.lhs),
        "hypergeometric_side": q(&sides.rhs),
        "hahn_side": sides.via_hahn.as_ref().map(q),
    });
    Ok(report)
}

pub fn variation(n: i64, j: &Rational, order: usize) -> Result<RunReport, CliError> {
    einstein(n, j)?;
    let mut report = RunReport::new(
        "variation",
        &[("n", n.to_string()), ("J", fmt_rational(j)), ("order", order.to_string())],
    );
    let v = variation_series(order, j, n);
    let quarter = j / int(2 * n);
    let fact = |i: usize| Rational::from_integer(factorial(i as u64));

    let mut dirac_fail = None;
    let mut f_fail = None;
    let mut derivatives = Vec::new();
    for i in 0..=order {
        let d = v.dirac.derivative_at_zero(i);
        let f = v.f_r.derivative_at_zero(i);
        let (want_d, want_f) = if i % 2 == 0 {
            let l = (i / 2) as i32;
            (
                OperatorPoly::d().scale(&(fact(i) * quarter.pow(l))),
                fact(i) / int(2).pow(l) * (j / int(n)).pow(l),
            )
        } else {
            (OperatorPoly::zero(), int(0))
        };
        if dirac_fail.is_none() && d != want_d {
            dirac_fail = Some((i, d.to_string(), want_d.to_string()));
        }
        if f_fail.is_none() && f != want_f {
            f_fail = Some((i, fmt_rational(&f), fmt_rational(&want_f)));
        }
        derivatives.push(json!({ "order": i, "dirac": operator(&d), "f_r": q(&f) }));
    }
    for (name, failure) in [("dirac_derivatives", dirac_fail), ("f_r_derivatives", f_fail)] {
        let mut at = report.params.clone();
        let (lhs, rhs) = match failure.clone() {
            Some((i, l, r)) => {
                at.insert("derivative".into(), i.to_string());
                (l, r)
            }
            None => Default::default(),
        };
        report.verdicts.push(ReportVerdict::check(name, failure.is_none(), &at, lhs, rhs));
    }
    let series = |s: &FormalSeries<Rational>| s.coeffs().iter().map(q).collect::<Vec<_>>();
    report.payload = json!({
        "f_r": series(&v.f_r),
        "h_r": series(&v.h_r),
        "mean_curvature": series(&v.mean_curvature),
        "derivatives": derivatives,
    });
    Ok(report)
}
