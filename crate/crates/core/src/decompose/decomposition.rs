use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::DimVector;
use crate::roots::RootSystem;

/// A multiset of indecomposables, keyed by root dimension vector.
/// Zero multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    entries: BTreeMap<DimVector, BigUint>,
}

/// `{1,1,0: 2, 0,0,1: 1}`; the empty decomposition prints as `{}`.
impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("{")?;
        for (k, (v, n)) in self.entries.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}: {n}", v.id())?;
        }
        f.write_str("}")
    }
}

#[derive(Serialize)]
struct DecompositionJson {
    entries: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionInput {
    entries: BTreeMap<String, serde_json::Value>,
}

impl Decomposition {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, N>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (DimVector, N)>,
        N: Into<BigUint>,
    {
        let mut d = Decomposition::new();
        for (v, n) in pairs {
            d.add(v, n.into());
        }
        d
    }

    /// Parses `(id, multiplicity)` pairs such as `("1,1,0", 2)`.
    pub fn from_ids(pairs: &[(&str, u64)]) -> Result<Self> {
        let mut d = Decomposition::new();
        for &(id, n) in pairs {
            d.add(id.parse()?, BigUint::from(n));
        }
        Ok(d)
    }

    pub fn single(root: DimVector) -> Self {
        Self::from_pairs([(root, 1u32)])
    }

    pub fn add(&mut self, root: DimVector, n: BigUint) {
        if n.is_zero() {
            return;
        }
        *self.entries.entry(root).or_default() += n;
    }

    pub fn get(&self, root: &DimVector) -> BigUint {
        self.entries.get(root).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, &BigUint)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// `sum_d mult(d) * d`, as big integers per vertex.
    pub fn dim_vector(&self, len: usize) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); len];
        for (v, n) in &self.entries {
            for (slot, &x) in out.iter_mut().zip(&v.0) {
                *slot += n * x;
            }
        }
        out
    }

    /// Total dimension `sum_i dim M_i`.
    pub fn total_dim(&self) -> BigUint {
        self.entries.iter().map(|(v, n)| n * v.length()).sum()
    }

    /// Dense multiplicity vector in root order.
    pub fn to_dense(&self, roots: &RootSystem) -> Result<Vec<BigUint>> {
        let mut out = vec![BigUint::zero(); roots.len()];
        for (v, n) in &self.entries {
            out[roots.require_index(v)?] = n.clone();
        }
        Ok(out)
    }

    pub fn from_dense(roots: &RootSystem, dense: &[BigUint]) -> Self {
        Decomposition::from_pairs(
            dense.iter().enumerate().map(|(i, n)| (roots.root(i).vector.clone(), n.clone())),
        )
    }

    /// Checks that every key is a root of `roots`.
    pub fn validate(&self, roots: &RootSystem) -> Result<()> {
        self.to_dense(roots).map(|_| ())
    }

    /// Applies a map to every root vector, merging collisions.
    pub fn map_roots(&self, mut f: impl FnMut(&DimVector) -> Result<DimVector>) -> Result<Self> {
        let mut out = Decomposition::new();
        for (v, n) in &self.entries {
            out.add(f(v)?, n.clone());
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("decomposition serializes")
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw = DecompositionJson {
            entries: self.entries.iter().map(|(v, n)| (v.id(), n.to_string())).collect(),
        };
        serde_json::to_value(raw).expect("decomposition serializes")
    }

    /// Accepts multiplicities as decimal strings or JSON integers.
    pub fn from_json(s: &str) -> Result<Self> {
        Self::from_value(serde_json::from_str(s)?)
    }

    pub fn from_value(v: serde_json::Value) -> Result<Self> {
        let raw: DecompositionInput = serde_json::from_value(v)?;
        let mut d = Decomposition::new();
        for (k, n) in raw.entries {
            let text = match &n {
                serde_json::Value::String(s) => s.trim().to_string(),
                serde_json::Value::Number(x) => x.to_string(),
                _ => String::new(),
            };
            let n: BigUint =
                text.parse().map_err(|_| Error::Parse(format!("bad multiplicity {n} for {k:?}")))?;
            d.add(k.parse()?, n);
        }
        Ok(d)
    }
}
