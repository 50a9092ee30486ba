use std::cmp::Ordering;
use std::fmt;

/// Largest number of variables a polynomial may carry.
pub const MAX_VARS: usize = 6;

/// Exponent vector ordered by graded reverse lexicographic order with x1 > x2 > ... .
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_exps(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = Self::default();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot = u16::try_from(e).expect("exponent overflow");
        }
        m
    }

    pub fn var(i: usize) -> Self {
        let mut m = Self::default();
        m.exps[i] = 1;
        m
    }

    pub fn exp(&self, i: usize) -> u32 {
        u32::from(self.exps[i])
    }

    pub fn exps(&self, nvars: usize) -> Vec<u32> {
        self.exps[..nvars].iter().map(|&e| u32::from(e)).collect()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| u32::from(e)).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        m
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Self {
        let mut m = *other;
        for (a, b) in m.exps.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        m
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let mut m = *self;
        for (a, b) in m.exps.iter_mut().zip(other.exps.iter()) {
            *a = (*a).min(*b);
        }
        m
    }

    pub fn with_exp(&self, i: usize, e: u32) -> Self {
        let mut m = *self;
        m.exps[i] = u16::try_from(e).expect("exponent overflow");
        m
    }

    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut m = Self::default();
        for (i, &p) in perm.iter().enumerate() {
            m.exps[p] = self.exps[i];
        }
        m
    }

    pub(crate) fn fmt_with(&self, nvars: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..nvars {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..MAX_VARS).rev() {
            if self.exps[i] != other.exps[i] {
                return other.exps[i].cmp(&self.exps[i]);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_order() {
        // x1^2 > x1x2 > x2^2 > x1x3 > x2x3 > x3^2 in three variables
        let seq = [
            [2, 0, 0],
            [1, 1, 0],
            [0, 2, 0],
            [1, 0, 1],
            [0, 1, 1],
            [0, 0, 2],
        ];
        for w in seq.windows(2) {
            assert!(Monomial::from_exps(&w[0]) > Monomial::from_exps(&w[1]));
        }
        assert!(Monomial::from_exps(&[0, 0, 3]) > Monomial::from_exps(&[2, 0, 0]));
    }

    #[test]
    fn divisibility() {
        let a = Monomial::from_exps(&[1, 0, 2, 0]);
        let b = Monomial::from_exps(&[1, 1, 3, 0]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Monomial::from_exps(&[0, 1, 1, 0]));
        assert_eq!(a.gcd(&b), a);
    }
}
