use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{big, m_sequence, OperatorError, OperatorPoly};
use crate::exact::{Poly, Ring, Var};

/// Natural-number combination of monomials in `M_1, M_3, M_5, ...`.
///
/// Keys are multisets of odd indices stored as ascending vectors, so
/// `[1, 1, 3]` is `M_1^2 M_3`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialCombo {
    terms: BTreeMap<Vec<u32>, BigUint>,
}

impl MonomialCombo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, mut monomial: Vec<u32>, coeff: BigUint) {
        assert!(monomial.iter().all(|i| i % 2 == 1), "indices are odd");
        if coeff.is_zero() {
            return;
        }
        monomial.sort_unstable();
        *self.terms.entry(monomial).or_default() += coeff;
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigUint)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &[u32]) -> BigUint {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Replaces one factor of `monomial` so that the result equals `-c` times
/// it, up to the returned natural multiplier.
///
/// `-c M_{2a+1} = M_{2a+3} / (a+1)^2`, so an `M_1` is absorbed with no
/// loss. Monomials without `M_1` raise the smallest index whose `(a+1)^2`
/// divides `coeff`.
fn absorb(monomial: &[u32], coeff: &BigUint) -> Option<(Vec<u32>, BigUint)> {
    let mut seen = Vec::new();
    for (pos, &idx) in monomial.iter().enumerate() {
        if seen.contains(&idx) {
            continue;
        }
        seen.push(idx);
        let a1 = BigUint::from((idx as u64 - 1) / 2 + 1);
        let sq = &a1 * &a1;
        let (q, r) = coeff.div_rem(&sq);
        if r.is_zero() {
            let mut out = monomial.to_vec();
            out[pos] = idx + 2;
            out.sort_unstable();
            return Some((out, q));
        }
    }
    None
}

/// Inductive ℕ-presentation of `D_{2N+1}` in `M_1, ..., M_{2N+1}`.
///
/// From `D_{2N+1} = D_{2N-1} M_1^2 - N^2 c D_{2N-1}`: every monomial of the
/// previous step is multiplied by `M_1^2`, and `-N^2 c` is absorbed into one
/// of its factors. The singleton `M_{2N-1}` turns into `M_{2N+1}` with
/// coefficient 1. Since monomials are multisets, which copy of a repeated
/// factor is replaced does not matter.
pub fn membership_decompose(n_order: usize) -> Result<MonomialCombo, OperatorError> {
    let mut combo = MonomialCombo::new();
    combo.add_term(vec![1], BigUint::one());
    for n in 1..=n_order {
        let n2 = BigUint::from((n * n) as u64);
        let mut next = MonomialCombo::new();
        for (mono, coeff) in combo.terms() {
            let mut widened = mono.clone();
            widened.extend([1, 1]);
            next.add_term(widened, coeff.clone());

            let scaled = coeff * &n2;
            let (absorbed, mult) = absorb(mono, &scaled).ok_or_else(|| OperatorError::Absorption {
                n,
                monomial: mono.clone(),
            })?;
            next.add_term(absorbed, mult);
        }
        combo = next;
    }
    Ok(combo)
}

/// Substitutes every `M_{2k+1}` and sums.
pub fn membership_expand(combo: &MonomialCombo) -> OperatorPoly {
    let mut cache: BTreeMap<u32, OperatorPoly> = BTreeMap::new();
    let mut total = OperatorPoly::zero();
    for (mono, coeff) in combo.terms() {
        let mut term = OperatorPoly::new(Poly::constant(
            Var::D,
            super::CurvatureScalar::from_rational(&big(&coeff.clone().into())),
        ));
        for &idx in mono {
            let m = cache
                .entry(idx)
                .or_insert_with(|| m_sequence(((idx - 1) / 2) as usize));
            term = term.mul(m);
        }
        total = total.add(&term);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{conformal_power, CurvatureMode};

    fn combo(items: &[(&[u32], u64)]) -> MonomialCombo {
        let mut c = MonomialCombo::new();
        for (m, k) in items {
            c.add_term(m.to_vec(), BigUint::from(*k));
        }
        c
    }

    #[test]
    fn small_decompositions() {
        assert_eq!(membership_decompose(0).unwrap(), combo(&[(&[1], 1)]));
        assert_eq!(membership_decompose(1).unwrap(), combo(&[(&[1, 1, 1], 1), (&[3], 1)]));
        assert_eq!(
            membership_decompose(2).unwrap(),
            combo(&[(&[1, 1, 1, 1, 1], 1), (&[1, 1, 3], 5), (&[5], 1)])
        );
    }

    #[test]
    fn expansion_examples() {
        assert_eq!(membership_expand(&combo(&[(&[1], 1)])), OperatorPoly::d());
        for n in 0..3 {
            assert_eq!(
                membership_expand(&membership_decompose(n).unwrap()),
                conformal_power(n, &CurvatureMode::Formal)
            );
        }
    }

    #[test]
    fn monomials_without_m1_appear_and_are_absorbed() {
        // D_9 contains M_3^3, which carries no M_1 factor.
        let d9 = membership_decompose(4).unwrap();
        assert_eq!(d9.coeff(&[3, 3, 3]), BigUint::from(720u32));
        let d11 = membership_decompose(5).unwrap();
        assert!(d11.coeff(&[3, 3, 5]) > BigUint::zero());
        assert_eq!(membership_expand(&d11), conformal_power(5, &CurvatureMode::Formal));
    }

    #[test]
    fn absorb_prefers_m1() {
        let (m, k) = absorb(&[1, 3], &BigUint::from(7u32)).unwrap();
        assert_eq!((m, k), (vec![3, 3], BigUint::from(7u32)));
        let (m, k) = absorb(&[3, 3, 3], &BigUint::from(8u32)).unwrap();
        assert_eq!((m, k), (vec![3, 3, 5], BigUint::from(2u32)));
        assert!(absorb(&[3], &BigUint::from(3u32)).is_none());
    }

    #[test]
    fn round_trip_up_to_twelve() {
        for n in 0..=12 {
            let c = membership_decompose(n).unwrap();
            assert_eq!(c.coeff(&[2 * n as u32 + 1]), BigUint::one(), "N={n}");
            assert!(c.terms().all(|(_, k)| !k.is_zero()));
            assert_eq!(membership_expand(&c), conformal_power(n, &CurvatureMode::Formal), "N={n}");
        }
    }
}
