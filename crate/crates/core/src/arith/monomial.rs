use std::cmp::Ordering;
use std::fmt;

/// Exponent vector of a (Laurent) monomial.
///
/// The derived-by-hand `Ord` is graded reverse lexicographic with variables
/// in declared order, which is the canonical term order of the crate.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<i32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[i32] {
        &self.0
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&e| e >= 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// Positive and negative parts, `self = plus - minus`.
    pub fn split_signs(&self) -> (Monomial, Monomial) {
        let plus = self.0.iter().map(|&e| e.max(0)).collect();
        let minus = self.0.iter().map(|&e| (-e).max(0)).collect();
        (Monomial(plus), Monomial(minus))
    }

    /// Integer pairing with a vector of the same length.
    pub fn pairing(&self, v: &[i64]) -> i64 {
        self.0.iter().zip(v).map(|(&a, &b)| a as i64 * b).sum()
    }

    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable is larger
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }

    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.0.cmp(&other.0)
    }

    pub(crate) fn fmt_with(&self, names: &[String], f: &mut impl fmt::Write) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_char('*')?;
            }
            first = false;
            f.write_str(&names[i])?;
            if e != 1 {
                if e < 0 {
                    write!(f, "^({e})")?;
                } else {
                    write!(f, "^{e}")?;
                }
            }
        }
        if first {
            f.write_char('1')?;
        }
        Ok(())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_basics() {
        // x1 > x2 > x3 in degree one
        let x1 = Monomial(vec![1, 0, 0]);
        let x2 = Monomial(vec![0, 1, 0]);
        let x3 = Monomial(vec![0, 0, 1]);
        assert!(x1 > x2 && x2 > x3);
        // x1*x3 < x2^2 under grevlex
        assert!(Monomial(vec![1, 0, 1]) < Monomial(vec![0, 2, 0]));
        assert!(Monomial(vec![0, 0, 2]) > x1);
    }

    #[test]
    fn split_signs_roundtrip() {
        let m = Monomial(vec![2, -1, 0, -3]);
        let (p, n) = m.split_signs();
        assert_eq!(p.0, vec![2, 0, 0, 0]);
        assert_eq!(n.0, vec![0, 1, 0, 3]);
        assert_eq!(p.div(&n), m);
    }
}
