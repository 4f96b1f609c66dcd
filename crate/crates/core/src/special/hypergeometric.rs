use num_traits::{One, Signed, Zero};

use super::SpecialError;
use crate::exact::{int, Rational};

/// Nonnegative `t` when `-a = t` is an integer, i.e. `a` is a nonpositive integer.
fn nonpositive_integer(a: &Rational) -> Option<usize> {
    if a.is_integer() && !a.is_positive() {
        usize::try_from(-a.to_integer()).ok()
    } else {
        None
    }
}

/// Exact value of a terminating `pFq[upper; lower; z]`.
///
/// The sum stops at `l = L`, the smallest `-a` over nonpositive integer
/// upper parameters `a`; all later terms vanish. A lower parameter whose
/// Pochhammer symbol hits zero at some `l <= L` is an error, never a
/// silently skipped term.
pub fn hyp_pfq_terminating(
    upper: &[Rational],
    lower: &[Rational],
    z: &Rational,
) -> Result<Rational, SpecialError> {
    let last = upper
        .iter()
        .filter_map(nonpositive_integer)
        .min()
        .ok_or(SpecialError::NonTerminating)?;

    for b in lower {
        if let Some(t) = nonpositive_integer(b) {
            // (b)_l = 0 as soon as l > -b.
            if t < last {
                return Err(SpecialError::ZeroDenominator {
                    parameter: b.clone(),
                    index: t + 1,
                });
            }
        }
    }

    let mut sum = Rational::zero();
    let mut term = Rational::one();
    for l in 0..=last {
        sum += &term;
        if l == last {
            break;
        }
        let li = int(l as i64);
        let mut ratio = z / (&li + int(1));
        for a in upper {
            ratio *= a + &li;
        }
        for b in lower {
            ratio /= b + &li;
        }
        term *= ratio;
        if term.is_zero() {
            break;
        }
    }
    Ok(sum)
}
