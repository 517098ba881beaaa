//! Chern-number vectors and rational linear functionals on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::combinatorics::IntegerPartition;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Chern numbers `c_λ[M]` of a complex-dimension-`n` manifold, indexed by `λ ⊢ n`.
/// Missing keys are zero; zero values are never stored.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(into = "ChernVectorRepr", try_from = "ChernVectorRepr")]
pub struct ChernVector {
    dim: u32,
    entries: BTreeMap<IntegerPartition, BigInt>,
}

impl ChernVector {
    pub fn zero(dim: u32) -> Self {
        Self {
            dim,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_entries<I, V>(dim: u32, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (IntegerPartition, V)>,
        V: Into<BigInt>,
    {
        let mut v = Self::zero(dim);
        for (key, value) in entries {
            v.set(key, value.into())?;
        }
        Ok(v)
    }

    /// Parses `"(1,1)=9,(2)=3"`. The empty string is the zero vector.
    pub fn parse(dim: u32, s: &str) -> Result<Self> {
        let mut v = Self::zero(dim);
        let mut rest = s.trim();
        while !rest.is_empty() {
            let bad = || Error::Parse(format!("malformed Chern vector {s:?}"));
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let key: IntegerPartition = body[..close].parse()?;
            let after = body[close + 1..].trim_start().strip_prefix('=').ok_or_else(bad)?;
            let end = after.find(',').unwrap_or(after.len());
            let value = BigInt::from_str(after[..end].trim()).map_err(|_| bad())?;
            v.set(key, value)?;
            rest = after[end..].trim_start_matches(',').trim();
        }
        Ok(v)
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn set(&mut self, key: IntegerPartition, value: BigInt) -> Result<()> {
        if key.weight() != self.dim {
            return Err(Error::WrongWeight { key, dim: self.dim });
        }
        if value.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, value);
        }
        Ok(())
    }

    pub fn get(&self, key: &IntegerPartition) -> BigInt {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    /// Nonzero entries in ascending partition order.
    pub fn support(&self) -> impl Iterator<Item = (&IntegerPartition, &BigInt)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

impl fmt::Display for ChernVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={v}")?;
        }
        Ok(())
    }
}

/// Wire form: integers as decimal strings so that arbitrarily large values survive JSON.
#[derive(Serialize, Deserialize)]
struct ChernVectorRepr {
    dim: u32,
    entries: BTreeMap<IntegerPartition, String>,
}

impl From<ChernVector> for ChernVectorRepr {
    fn from(v: ChernVector) -> Self {
        Self {
            dim: v.dim,
            entries: v.entries.into_iter().map(|(k, x)| (k, x.to_string())).collect(),
        }
    }
}

impl TryFrom<ChernVectorRepr> for ChernVector {
    type Error = Error;

    fn try_from(r: ChernVectorRepr) -> Result<Self> {
        let mut v = Self::zero(r.dim);
        for (k, x) in r.entries {
            let x = BigInt::from_str(&x).map_err(|_| Error::Parse(format!("not an integer: {x:?}")))?;
            v.set(k, x)?;
        }
        Ok(v)
    }
}

/// A rational linear combination of the Chern numbers of dimension `dim`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinearFunctional {
    dim: u32,
    coeffs: BTreeMap<IntegerPartition, Rational>,
}

impl LinearFunctional {
    pub fn zero(dim: u32) -> Self {
        Self {
            dim,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn add(&mut self, key: IntegerPartition, c: Rational) -> Result<()> {
        if key.weight() != self.dim {
            return Err(Error::WrongWeight { key, dim: self.dim });
        }
        let slot = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn coefficient(&self, key: &IntegerPartition) -> Rational {
        self.coeffs.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&IntegerPartition, &Rational)> {
        self.coeffs.iter()
    }

    pub fn apply(&self, v: &ChernVector) -> Result<Rational> {
        if v.dim() != self.dim {
            return Err(Error::InvalidArgument(format!(
                "functional of dimension {} applied to a vector of dimension {}",
                self.dim,
                v.dim()
            )));
        }
        Ok(v.support()
            .map(|(k, x)| self.coefficient(k) * Rational::from_integer(x.clone()))
            .sum())
    }
}

impl Serialize for LinearFunctional {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.coeffs.len()))?;
        for (k, v) in &self.coeffs {
            m.serialize_entry(k, &crate::rational::to_text(v))?;
        }
        m.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn parse_chern_vector() {
        let v = ChernVector::parse(2, "(1,1)=9,(2)=3").unwrap();
        assert_eq!(v.get(&"1,1".parse().unwrap()), BigInt::from(9));
        assert_eq!(v.get(&"2".parse().unwrap()), BigInt::from(3));
        assert_eq!(v.to_string(), "(1,1)=9,(2)=3");
        assert_eq!(ChernVector::parse(2, &v.to_string()).unwrap(), v);
        assert!(ChernVector::parse(2, "").unwrap().is_zero());
        assert!(ChernVector::parse(2, "(1,1)=0").unwrap().is_zero());
        assert!(matches!(ChernVector::parse(2, "(3)=1"), Err(Error::WrongWeight { .. })));
        assert!(ChernVector::parse(2, "(1,1)9").is_err());
        assert!(ChernVector::parse(2, "(1,1)=x").is_err());
    }

    #[test]
    fn apply_functional() {
        let mut f = LinearFunctional::zero(2);
        f.add("1,1".parse().unwrap(), ratio(1, 12)).unwrap();
        f.add("2".parse().unwrap(), ratio(1, 12)).unwrap();
        let v = ChernVector::parse(2, "(1,1)=9,(2)=3").unwrap();
        assert_eq!(f.apply(&v).unwrap(), ratio(1, 1));
        assert!(f.apply(&ChernVector::zero(3)).is_err());
    }
}
