use std::collections::BTreeMap;

use num_traits::Zero;

use super::StructError;
use crate::exactlin::{q, qf, Rational};

/// Generators `L_k`, `|k| ≤ radius`, with brackets reported only in-window.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WittWindow {
    pub radius: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittBracket {
    InWindow { coeff: i64, index: i64 },
    OutOfWindow,
}

impl WittWindow {
    pub fn new(radius: i64) -> Self {
        WittWindow { radius }
    }

    pub fn contains(&self, k: i64) -> bool {
        k.abs() <= self.radius
    }

    /// `[L_n, L_m] = (n−m) L_{n+m}`.
    pub fn bracket(&self, n: i64, m: i64) -> Result<WittBracket, StructError> {
        for k in [n, m] {
            if !self.contains(k) {
                return Err(StructError::OutsideWindow(k));
            }
        }
        if !self.contains(n + m) {
            return Ok(WittBracket::OutOfWindow);
        }
        Ok(WittBracket::InWindow {
            coeff: n - m,
            index: n + m,
        })
    }
}

/// `ω(L_n, L_m) = δ_{n+m,0} n(n²−1)/12`.
pub fn witt_cocycle(n: i64, m: i64) -> Rational {
    if n + m != 0 {
        return Rational::zero();
    }
    qf(n * (n * n - 1), 12)
}

/// Element `Σ a_k L̂_k + c ẑ` of the Virasoro algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirasoroElement {
    pub l: BTreeMap<i64, Rational>,
    pub z: Rational,
}

impl VirasoroElement {
    pub fn l(k: i64) -> Self {
        let mut e = Self::default();
        e.l.insert(k, q(1));
        e
    }

    pub fn central() -> Self {
        VirasoroElement {
            l: BTreeMap::new(),
            z: q(1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.z.is_zero() && self.l.values().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.l {
            *out.l.entry(*k).or_insert_with(Rational::zero) += c;
        }
        out.l.retain(|_, c| !c.is_zero());
        out.z += &other.z;
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        let mut out = VirasoroElement {
            l: self.l.iter().map(|(k, c)| (*k, c * s)).collect(),
            z: &self.z * s,
        };
        out.l.retain(|_, c| !c.is_zero());
        out
    }

    /// `[L̂_n, L̂_m] = (n−m) L̂_{n+m} + δ_{n+m,0} n(n²−1)/12 ẑ`, `ẑ` central.
    pub fn bracket(&self, other: &Self) -> Self {
        let mut out = Self::default();
        for (n, a) in &self.l {
            for (m, b) in &other.l {
                let ab = a * b;
                let term = VirasoroElement {
                    l: [(n + m, q(n - m) * &ab)].into_iter().collect(),
                    z: witt_cocycle(*n, *m) * &ab,
                };
                out = out.add(&term);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witt_examples() {
        let w = WittWindow::new(5);
        assert_eq!(w.bracket(1, -1), Ok(WittBracket::InWindow { coeff: 2, index: 0 }));
        assert_eq!(w.bracket(2, 2), Ok(WittBracket::InWindow { coeff: 0, index: 4 }));
        assert_eq!(w.bracket(4, 3), Ok(WittBracket::OutOfWindow));
        assert_eq!(w.bracket(6, 0), Err(StructError::OutsideWindow(6)));
    }

    #[test]
    fn virasoro_examples() {
        let b = VirasoroElement::l(2).bracket(&VirasoroElement::l(-2));
        assert_eq!(b.l.get(&0), Some(&q(4)));
        assert_eq!(b.z, qf(1, 2));
        let b = VirasoroElement::l(1).bracket(&VirasoroElement::l(-1));
        assert_eq!(b.l.get(&0), Some(&q(2)));
        assert!(b.z.is_zero());
        assert!(VirasoroElement::central().bracket(&VirasoroElement::l(3)).is_zero());
    }
}
