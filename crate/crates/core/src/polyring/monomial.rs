use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A coordinate or parameter name.
///
/// Variables are compared by name, so the ordering is global and does not
/// depend on any registry.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(Var::new(&s))
    }
}

/// Sparse exponent vector: `(variable, exponent)` pairs sorted by variable,
/// with no zero exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeats and dropping
    /// zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut factors: Vec<(Var, u32)> = pairs.into_iter().filter(|(_, e)| *e > 0).collect();
        factors.sort_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Var, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.factors
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.factors
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.factors.iter().map(|(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.factors.len());
        let mut j = 0;
        for (v, e) in &self.factors {
            let mut sub = 0;
            if j < other.factors.len() {
                match other.factors[j].0.cmp(v) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        sub = other.factors[j].1;
                        j += 1;
                    }
                    Ordering::Greater => {}
                }
            }
            if sub > *e {
                return None;
            }
            if e - sub > 0 {
                out.push((v.clone(), e - sub));
            }
        }
        if j < other.factors.len() {
            return None;
        }
        Some(Monomial { factors: out })
    }

    /// Square root when every exponent is even.
    pub fn sqrt(&self) -> Option<Monomial> {
        if self.factors.iter().any(|(_, e)| e % 2 != 0) {
            return None;
        }
        Some(Monomial {
            factors: self
                .factors
                .iter()
                .map(|(v, e)| (v.clone(), e / 2))
                .collect(),
        })
    }

    /// Formal derivative with respect to `v`: returns the multiplier and the
    /// reduced monomial, or `None` when `v` does not occur.
    pub fn derivative(&self, v: &Var) -> Option<(u32, Monomial)> {
        let idx = self.factors.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let e = self.factors[idx].1;
        let mut factors = self.factors.clone();
        if e == 1 {
            factors.remove(idx);
        } else {
            factors[idx].1 = e - 1;
        }
        Some((e, Monomial { factors }))
    }
}

impl Ord for Monomial {
    /// Graded lexicographic order.
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (a, b) = (&self.factors, &other.factors);
        for (x, y) in a.iter().zip(b.iter()) {
            match x.0.cmp(&y.0) {
                // x's variable is absent from the other monomial at this
                // position, so x carries the larger exponent there.
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if x.1 != y.1 {
                        return x.1.cmp(&y.1);
                    }
                }
            }
        }
        a.len().cmp(&b.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, (v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(pairs: &[(&str, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|(v, e)| (Var::new(v), *e)))
    }

    #[test]
    fn graded_lex_order() {
        assert!(m(&[("x", 2)]) > m(&[("x", 1), ("y", 1)]));
        assert!(m(&[("x", 1), ("y", 1)]) > m(&[("y", 2)]));
        assert!(m(&[("y", 3)]) > m(&[("x", 2)]));
        assert!(m(&[]) < m(&[("z", 1)]));
        assert_eq!(m(&[("x", 1), ("x", 1)]), m(&[("x", 2)]));
    }

    #[test]
    fn divide_and_sqrt() {
        let a = m(&[("x", 3), ("y", 2)]);
        let b = m(&[("x", 1), ("y", 2)]);
        assert_eq!(a.div(&b), Some(m(&[("x", 2)])));
        assert_eq!(b.div(&a), None);
        assert_eq!(m(&[("y", 1)]).div(&m(&[("x", 1)])), None);
        assert_eq!(
            m(&[("x", 4), ("z", 2)]).sqrt(),
            Some(m(&[("x", 2), ("z", 1)]))
        );
        assert_eq!(m(&[("x", 3)]).sqrt(), None);
    }
}
