//! Conformal Dirac powers on the unit round sphere, evaluated on the spectrum.
//!
//! The default spectrum is the classical one: eigenvalues `±(n/2 + k)` with
//! multiplicity `2^⌊n/2⌋ · C(k+n-1, k)` at level `k`. These formulas are
//! standard and not derived here; callers can supply their own spectrum with
//! [`parse_spectrum`].

use std::fmt;

use num_bigint::BigUint;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{binomial, fmt_rational, int, parse_rational, rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn apply(self, x: Rational) -> Rational {
        match self {
            Sign::Plus => x,
            Sign::Minus => -x,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumLine {
    pub k: u64,
    pub sign: Sign,
    pub eigenvalue: Rational,
    pub multiplicity: BigUint,
}

/// Levels `0..=kmax`, positive sign first.
pub fn sphere_spectrum(n: i64, kmax: u64) -> Vec<SpectrumLine> {
    assert!(n >= 2, "sphere dimension must be at least 2");
    let spinor_rank = BigUint::from(2u32).pow((n / 2) as u32);
    let mut lines = Vec::with_capacity(2 * (kmax as usize + 1));
    for k in 0..=kmax {
        let mult = &spinor_rank * binomial(k + n as u64 - 1, k).to_biguint().expect("positive");
        let abs = rat(n, 2) + int(k as i64);
        for sign in [Sign::Plus, Sign::Minus] {
            lines.push(SpectrumLine {
                k,
                sign,
                eigenvalue: sign.apply(abs.clone()),
                multiplicity: mult.clone(),
            });
        }
    }
    lines
}

/// `∏_{j=-N}^{N} (λ - j)`
pub fn factored_value(n_order: usize, lambda: &Rational) -> Rational {
    let n = n_order as i64;
    (-n..=n).fold(int(1), |acc, j| acc * (lambda - int(j)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralImage {
    pub k: u64,
    pub sign: Sign,
    pub eigenvalue_in: Rational,
    pub eigenvalue_out: Rational,
    pub multiplicity: BigUint,
}

impl SpectralImage {
    pub fn in_kernel(&self) -> bool {
        self.eigenvalue_out == int(0)
    }
}

/// Image of every line under `D_{2N+1} = (D-N)...(D+N)`.
pub fn apply_power_spectrally(n_order: usize, lines: &[SpectrumLine]) -> Vec<SpectralImage> {
    lines
        .iter()
        .map(|l| SpectralImage {
            k: l.k,
            sign: l.sign,
            eigenvalue_in: l.eigenvalue.clone(),
            eigenvalue_out: factored_value(n_order, &l.eigenvalue),
            multiplicity: l.multiplicity.clone(),
        })
        .collect()
}

pub fn kernel_report(images: &[SpectralImage]) -> Vec<&SpectralImage> {
    images.iter().filter(|i| i.in_kernel()).collect()
}

/// Whether level `k` of the `n`-sphere lies in the kernel of `D_{2N+1}`.
pub fn kernel_expected(n: i64, k: u64, n_order: usize) -> bool {
    n % 2 == 0 && n / 2 + k as i64 <= n_order as i64
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct SpectrumParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Parses `k sign eigenvalue multiplicity` records, one per line.
///
/// `sign` is `+`, `-`, `+1`, `-1` or `1`. Text after `#` is ignored, as are
/// blank lines. The eigenvalue must carry the stated sign and satisfy
/// `|λ| >= n/2`; multiplicities are positive.
pub fn parse_spectrum(text: &str, n: i64) -> Result<Vec<SpectrumLine>, SpectrumParseError> {
    let half = rat(n, 2);
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("");
        let fields = tokens(body);
        if fields.is_empty() {
            continue;
        }
        let err = |column: usize, message: String| SpectrumParseError { line, column, message };
        if fields.len() != 4 {
            let column = fields.get(4).map_or(raw.trim_end().chars().count() + 1, |f| f.0);
            return Err(err(column, format!("expected 4 fields, found {}", fields.len())));
        }
        let (kc, ks) = fields[0];
        let k: u64 = ks.parse().map_err(|_| err(kc, format!("invalid level `{ks}`")))?;
        let (sc, ss) = fields[1];
        let sign = match ss {
            "+" | "+1" | "1" => Sign::Plus,
            "-" | "-1" => Sign::Minus,
            _ => return Err(err(sc, format!("invalid sign `{ss}`"))),
        };
        let (ec, es) = fields[2];
        let eigenvalue = parse_rational(es).map_err(|e| err(ec, e))?;
        if eigenvalue.abs() < half {
            return Err(err(ec, format!("|{es}| is below n/2 = {}", fmt_rational(&half))));
        }
        if sign.apply(eigenvalue.clone()) < int(0) {
            return Err(err(ec, format!("eigenvalue {es} does not carry sign {sign}")));
        }
        let (mc, ms) = fields[3];
        let multiplicity: BigUint = ms
            .parse()
            .ok()
            .filter(|m: &BigUint| *m >= BigUint::from(1u32))
            .ok_or_else(|| err(mc, format!("invalid multiplicity `{ms}`")))?;
        out.push(SpectrumLine { k, sign, eigenvalue, multiplicity });
    }
    Ok(out)
}

/// Whitespace-separated tokens with their 1-based character columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    for (col, (byte, ch)) in s.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, byte)),
            (true, Some((c, b))) => {
                out.push((c, &s[b..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, b)) = start {
        out.push((c, &s[b..]));
    }
    out
}

/// Renders lines in the override format.
pub fn format_spectrum(lines: &[SpectrumLine]) -> String {
    let mut s = String::from("# k sign eigenvalue multiplicity\n");
    for l in lines {
        s.push_str(&format!("{} {} {} {}\n", l.k, l.sign, fmt_rational(&l.eigenvalue), l.multiplicity));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{conformal_power, CurvatureMode};
    use proptest::prelude::*;

    #[test]
    fn spectrum_examples() {
        let s = sphere_spectrum(3, 0);
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].eigenvalue, rat(3, 2));
        assert_eq!(s[1].eigenvalue, rat(-3, 2));
        assert_eq!(s[0].multiplicity, BigUint::from(2u32));
        let s = sphere_spectrum(4, 1);
        assert_eq!((s[2].eigenvalue.clone(), s[3].eigenvalue.clone()), (int(3), int(-3)));
        // 4 * C(4, 1)
        assert_eq!(s[2].multiplicity, BigUint::from(16u32));
    }

    #[test]
    fn application_examples() {
        assert_eq!(factored_value(1, &rat(3, 2)), rat(15, 8));
        assert_eq!(factored_value(1, &rat(-3, 2)), rat(-15, 8));
        let img = apply_power_spectrally(2, &sphere_spectrum(4, 0));
        assert_eq!(kernel_report(&img).len(), 2);
        assert!(img.iter().all(SpectralImage::in_kernel));
        let img = apply_power_spectrally(0, &sphere_spectrum(5, 3));
        assert!(img.iter().all(|i| i.eigenvalue_in == i.eigenvalue_out));
    }

    #[test]
    fn odd_spheres_have_no_kernel() {
        for n in [3, 5, 7] {
            for big_n in 0..6 {
                assert!(kernel_report(&apply_power_spectrally(big_n, &sphere_spectrum(n, 8))).is_empty());
            }
        }
    }

    #[test]
    fn kernel_characterization() {
        for n in 2..=8 {
            for big_n in 0..6 {
                for img in apply_power_spectrally(big_n, &sphere_spectrum(n, 6)) {
                    assert_eq!(img.in_kernel(), kernel_expected(n, img.k, big_n));
                }
            }
        }
    }

    #[test]
    fn agrees_with_expanded_operator() {
        for big_n in 0..5 {
            let op = conformal_power(big_n, &CurvatureMode::Value(int(1))).to_rational_poly().unwrap();
            for l in sphere_spectrum(5, 6) {
                assert_eq!(op.eval(&l.eigenvalue), factored_value(big_n, &l.eigenvalue));
            }
        }
    }

    #[test]
    fn override_round_trip() {
        let lines = sphere_spectrum(3, 4);
        let text = format_spectrum(&lines);
        assert_eq!(parse_spectrum(&text, 3).unwrap(), lines);
    }

    #[test]
    fn override_comments_and_signs() {
        let text = "# header\n\n0 +1 3/2 2   # trailing\n0 -1 -3/2 2\n";
        let lines = parse_spectrum(text, 3).unwrap();
        assert_eq!(lines, sphere_spectrum(3, 0));
    }

    #[test]
    fn override_errors_carry_positions() {
        let e = parse_spectrum("0 + 3/2 2\n1 * 5/2 6\n", 3).unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        let e = parse_spectrum("0 + 3/x 2", 3).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_spectrum("0 + 1 2", 3).unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        let e = parse_spectrum("0 - 3/2 2", 3).unwrap_err();
        assert_eq!(e.column, 5);
        let e = parse_spectrum("  0 + 3/2 0", 3).unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
        let e = parse_spectrum("0 + 3/2", 3).unwrap_err();
        assert_eq!((e.line, e.column), (1, 8));
        let e = parse_spectrum("0 + 3/2 2 9", 3).unwrap_err();
        assert_eq!((e.line, e.column), (1, 11));
    }

    proptest! {
        #[test]
        fn odd_symmetry(p in -200i64..200, q in 1i64..30, big_n in 0usize..6) {
            let x = rat(p, q);
            prop_assert_eq!(factored_value(big_n, &-x.clone()), -factored_value(big_n, &x));
        }
    }
}
