//! Charge-zero fermionic Fock space in the partition basis.
//!
//! A state `|v_lambda>` is the semi-infinite wedge of the occupied slots
//! `j_i = lambda_i - i` (slot `j` stands for the half-integer `j + 1/2`).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::qalgebra::{qnum_ratio, QRatio};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FockVector {
    terms: BTreeMap<Partition, QRatio>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn vacuum() -> Self {
        Self::basis(Partition::empty())
    }

    pub fn basis(lambda: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(lambda, QRatio::one());
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, QRatio)>) -> Self {
        let mut v = Self::zero();
        for (lambda, c) in terms {
            v.add_term(lambda, &c);
        }
        v
    }

    pub fn add_term(&mut self, lambda: Partition, c: &QRatio) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(lambda).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn coefficient(&self, lambda: &Partition) -> QRatio {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &QRatio)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &QRatio) -> Self {
        Self::from_terms(self.terms.iter().map(|(l, v)| (l.clone(), v * c)))
    }

    pub fn add(&self, other: &FockVector) -> Self {
        let mut out = self.clone();
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c);
        }
        out
    }
}

/// Slots `lambda_i - i` for `i = 1..=depth`, descending.
fn slots(lambda: &Partition, depth: usize) -> Vec<i64> {
    (1..=depth)
        .map(|i| lambda.parts().get(i - 1).copied().unwrap_or(0) as i64 - i as i64)
        .collect()
}

fn partition_from_slots(slots: &[i64]) -> Partition {
    let parts: Vec<u32> = slots
        .iter()
        .enumerate()
        .map(|(i, &s)| (s + i as i64 + 1) as u32)
        .filter(|&p| p > 0)
        .collect();
    Partition::from_parts(&parts)
}

/// Applies `E_c(n) = sum_k q^{n(k - c/2)} E_{k-c,k} + delta_{c,0}/[n]`.
pub fn apply_e(charge: i64, n: i64, v: &FockVector) -> Result<FockVector> {
    if charge == 0 && n == 0 {
        return Err(Error::InvalidInput("E_0(0) is undefined".into()));
    }
    let mut out = FockVector::zero();
    for (lambda, coeff) in v.terms() {
        let depth = lambda.len() + charge.unsigned_abs() as usize + 1;
        let occupied = slots(lambda, depth);
        let floor = -(depth as i64);
        if charge == 0 {
            let mut diag = QRatio::one() / qnum_ratio(n);
            for &j in occupied.iter().filter(|&&j| j >= 0) {
                diag += &QRatio::x_pow(n * (2 * j + 1));
            }
            for j in floor..0 {
                if !occupied.contains(&j) {
                    diag -= &QRatio::x_pow(n * (2 * j + 1));
                }
            }
            out.add_term(lambda.clone(), &(&diag * coeff));
            continue;
        }
        for (pos, &from) in occupied.iter().enumerate() {
            let to = from - charge;
            if to < floor || occupied.contains(&to) {
                continue;
            }
            let mut rest: Vec<i64> = occupied.clone();
            rest.remove(pos);
            let above = rest.iter().filter(|&&s| s > to).count();
            rest.insert(above, to);
            let sign_odd = (pos + above) % 2 == 1;
            let mut term = coeff.mul_x_pow(n * (2 * from + 1 - charge));
            if sign_odd {
                term = -term;
            }
            out.add_term(partition_from_slots(&rest), &term);
        }
    }
    Ok(out)
}

/// `<0| E_{c_1}(n_1) ... E_{c_l}(n_l) |0>`.
pub fn vev_fock(charges: &[i64], ns: &[i64]) -> Result<QRatio> {
    if charges.len() != ns.len() {
        return Err(Error::InvalidInput(format!(
            "operator word has {} charges but {} energies",
            charges.len(),
            ns.len()
        )));
    }
    if let Some(i) = (0..charges.len()).find(|&i| charges[i] == 0 && ns[i] == 0) {
        return Err(Error::InvalidInput(format!("operator {} is E_0(0)", i + 1)));
    }
    if charges.iter().sum::<i64>() != 0 {
        return Ok(QRatio::zero());
    }
    let mut state = FockVector::vacuum();
    for (&c, &n) in charges.iter().zip(ns).rev() {
        state = apply_e(c, n, &state)?;
        if state.is_zero() {
            return Ok(QRatio::zero());
        }
    }
    Ok(state.coefficient(&Partition::empty()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::partitions_of;
    use crate::qalgebra::t_ratio;

    fn p(parts: &[u32]) -> Partition {
        Partition::from_parts(parts)
    }

    #[test]
    fn vacuum_actions() {
        for n in [-2, 1, 3] {
            let v = apply_e(0, n, &FockVector::vacuum()).unwrap();
            assert_eq!(
                v,
                FockVector::vacuum().scale(&(QRatio::one() / qnum_ratio(n)))
            );
        }
        for c in 1..=3 {
            for n in 0..=3 {
                assert!(apply_e(c, n, &FockVector::vacuum()).unwrap().is_zero());
            }
        }
        assert_eq!(
            apply_e(-1, 0, &FockVector::vacuum()).unwrap(),
            FockVector::basis(p(&[1]))
        );
        assert!(apply_e(0, 0, &FockVector::vacuum()).is_err());
    }

    #[test]
    fn vev_examples() {
        for a in [-2, -1, 1, 2] {
            assert!(vev_fock(&[1, -1], &[0, a]).unwrap().is_one());
        }
        for c in 1..=3i64 {
            for d in 1..=3i64 {
                let expected = QRatio::from(2 * c) * qnum_ratio(c * d) / qnum_ratio(d);
                assert_eq!(vev_fock(&[c, c, -c, -c], &[0, 0, 0, d]).unwrap(), expected);
            }
        }
        assert_eq!(
            vev_fock(&[1, 1, -1, -1], &[0, 0, 1, 1]).unwrap(),
            t_ratio() + QRatio::from(2)
        );
        assert!(vev_fock(&[1, 1], &[0, 0]).unwrap().is_zero());
        assert!(vev_fock(&[1], &[0, 0]).is_err());
    }

    fn commutator_rhs(a: i64, m: i64, b: i64, n: i64, v: &FockVector) -> FockVector {
        // [E_a(m), E_b(n)] = [an - bm] E_{a+b}(m+n), or the scalar a when
        // (a+b, m+n) = (0, 0)
        if a + b == 0 && m + n == 0 {
            return v.scale(&QRatio::from(a));
        }
        let det = a * n - b * m;
        if det == 0 {
            return FockVector::zero();
        }
        apply_e(a + b, m + n, v).unwrap().scale(&qnum_ratio(det))
    }

    #[test]
    fn commutation_relations() {
        let mut states = Vec::new();
        for d in 0..=4 {
            for (i, lam) in partitions_of(d).iter().enumerate() {
                states.push((
                    lam.clone(),
                    QRatio::from(i as i64 + 1) / qnum_ratio(d as i64 + 1),
                ));
            }
        }
        let v = FockVector::from_terms(states);
        let ops = [
            (1, 0),
            (-1, 1),
            (2, -1),
            (0, 1),
            (0, -2),
            (-2, 0),
            (1, 1),
            (-1, -1),
        ];
        for &(a, m) in &ops {
            for &(b, n) in &ops {
                let ab = apply_e(a, m, &apply_e(b, n, &v).unwrap()).unwrap();
                let ba = apply_e(b, n, &apply_e(a, m, &v).unwrap()).unwrap();
                let lhs = ab.add(&ba.scale(&QRatio::from(-1)));
                assert_eq!(lhs, commutator_rhs(a, m, b, n, &v), "({a},{m}) ({b},{n})");
            }
        }
    }
}
