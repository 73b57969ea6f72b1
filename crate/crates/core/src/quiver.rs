//! Quivers and dimension vectors.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with ordered, uniquely labeled vertices and named arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

#[derive(Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<String>,
    arrows: Vec<ArrowJson>,
}

#[derive(Serialize, Deserialize)]
struct ArrowJson {
    name: String,
    source: String,
    target: String,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label {v:?}")));
            }
        }
        let mut names = BTreeSet::new();
        for a in &arrows {
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {:?} has an endpoint out of range",
                    a.name
                )));
            }
            if !names.insert(a.name.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow name {:?}", a.name)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Convenience constructor from `(name, source, target)` index triples.
    pub fn from_edges(labels: &[&str], arrows: &[(&str, usize, usize)]) -> Result<Self> {
        Quiver::new(
            labels.iter().map(|s| s.to_string()).collect(),
            arrows
                .iter()
                .map(|&(n, s, t)| Arrow { name: n.to_string(), source: s, target: t })
                .collect(),
        )
    }

    /// The linearly oriented path `v1 -> v2 -> ... -> vl`.
    pub fn linear_a(l: usize) -> Self {
        let labels: Vec<String> = (1..=l).map(|i| format!("v{i}")).collect();
        let arrows = (0..l.saturating_sub(1))
            .map(|i| Arrow { name: format!("e{}", i + 1), source: i, target: i + 1 })
            .collect();
        Quiver::new(labels, arrows).expect("path quiver is valid")
    }

    /// `D(l)` with vertices `a, b, c1, ..., c{l-2}` in that order and every
    /// arrow pointing away from `c1`.
    pub fn outward_d(l: usize) -> Self {
        assert!(l >= 4, "type D needs at least four vertices");
        let mut labels = vec!["a".to_string(), "b".to_string()];
        labels.extend((1..=l - 2).map(|i| format!("c{i}")));
        let mut arrows = vec![
            Arrow { name: "alpha".into(), source: 2, target: 0 },
            Arrow { name: "beta".into(), source: 2, target: 1 },
        ];
        for k in 1..=l - 3 {
            arrows.push(Arrow { name: format!("gamma{k}"), source: k + 1, target: k + 2 });
        }
        Quiver::new(labels, arrows).expect("type D quiver is valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: QuiverJson = serde_json::from_str(s)?;
        let index: HashMap<&str, usize> =
            raw.vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let lookup = |label: &str| {
            index
                .get(label)
                .copied()
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex {label:?}")))
        };
        let mut arrows = Vec::with_capacity(raw.arrows.len());
        for a in &raw.arrows {
            arrows.push(Arrow { name: a.name.clone(), source: lookup(&a.source)?, target: lookup(&a.target)? });
        }
        Quiver::new(raw.vertices, arrows)
    }

    pub fn to_json(&self) -> String {
        let raw = QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| ArrowJson {
                    name: a.name.clone(),
                    source: self.vertices[a.source].clone(),
                    target: self.vertices[a.target].clone(),
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("quiver serializes")
    }

    /// Hex SHA-256 of the canonical JSON rendering.
    pub fn content_hash(&self) -> String {
        hex::encode(Sha256::digest(self.to_json().as_bytes()))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Neighbours in the underlying undirected multigraph, with multiplicity.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for a in &self.arrows {
            if a.source == v {
                out.push(a.target);
            }
            if a.target == v {
                out.push(a.source);
            }
        }
        out
    }

    /// Same underlying graph with the given arrows reversed.
    pub fn with_reversed(&self, reversed: &[usize]) -> Quiver {
        let mut q = self.clone();
        for &i in reversed {
            let a = &mut q.arrows[i];
            std::mem::swap(&mut a.source, &mut a.target);
        }
        q
    }

    /// All `2^#arrows` orientations of the underlying graph, in binary order of
    /// the reversal mask.
    pub fn orientations(&self) -> Vec<Quiver> {
        let n = self.arrows.len();
        (0u64..(1u64 << n))
            .map(|mask| {
                let rev: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
                self.with_reversed(&rev)
            })
            .collect()
    }

    /// Compact rendering of every arrow's direction, e.g. `alpha:c1->a`.
    pub fn orientation_signature(&self) -> String {
        self.arrows
            .iter()
            .map(|a| format!("{}:{}->{}", a.name, self.vertices[a.source], self.vertices[a.target]))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn zero_vector(&self) -> DimVector {
        DimVector(vec![0; self.vertices.len()])
    }

    pub fn unit_vector(&self) -> DimVector {
        DimVector(vec![1; self.vertices.len()])
    }
}

/// Nonnegative integer vector, one entry per vertex in quiver order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> Self {
        DimVector(entries)
    }

    pub fn simple(len: usize, k: usize) -> Self {
        let mut v = vec![0; len];
        v[k] = 1;
        DimVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_thin(&self) -> bool {
        self.0.iter().all(|&x| x <= 1)
    }

    /// Sum of entries.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i).collect()
    }

    fn check_len(&self, other: &DimVector) -> Result<()> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch { expected: self.len(), got: other.len() });
        }
        Ok(())
    }

    /// Entrywise product `(d * d')_i = d_i d'_i`.
    pub fn pointwise_product(&self, other: &DimVector) -> Result<DimVector> {
        self.check_len(other)?;
        Ok(DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a * b).collect()))
    }

    pub fn add(&self, other: &DimVector) -> Result<DimVector> {
        self.check_len(other)?;
        Ok(DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    /// Minimum positive entry.
    pub fn m_value(&self) -> Result<u32> {
        self.0.iter().copied().filter(|&x| x > 0).min().ok_or(Error::ZeroVector)
    }

    /// Entrywise `self >= other`.
    pub fn dominates(&self, other: &DimVector) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.0.iter().zip(&other.0).all(|(a, b)| a >= b))
    }

    /// Root identifier used in all I/O, e.g. `"1,1,2,1"`.
    pub fn id(&self) -> String {
        self.0.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for DimVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(DimVector(Vec::new()));
        }
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad root id {s:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(DimVector)
    }
}

impl From<DimVector> for String {
    fn from(d: DimVector) -> String {
        d.id()
    }
}

impl TryFrom<String> for DimVector {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(v: &[u32]) -> DimVector {
        DimVector(v.to_vec())
    }

    #[test]
    fn pointwise_product_examples() {
        assert_eq!(dv(&[1, 1, 0]).pointwise_product(&dv(&[0, 1, 1])).unwrap(), dv(&[0, 1, 0]));
        let d = dv(&[1, 1, 2, 1]);
        assert_eq!(d.pointwise_product(&dv(&[1, 1, 1, 1])).unwrap(), d);
        assert_eq!(d.pointwise_product(&dv(&[0, 0, 1, 0])).unwrap(), dv(&[0, 0, 2, 0]));
        assert!(matches!(d.pointwise_product(&dv(&[1])), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn m_value_examples() {
        assert_eq!(dv(&[1, 1, 2, 1]).m_value().unwrap(), 1);
        assert_eq!(dv(&[0, 0, 2, 0]).m_value().unwrap(), 2);
        assert_eq!(dv(&[0, 0, 0, 0]).m_value(), Err(Error::ZeroVector));
    }

    #[test]
    fn dominance_examples() {
        assert!(dv(&[1, 1, 2, 1]).dominates(&dv(&[1, 0, 1, 0])).unwrap());
        assert!(!dv(&[1, 0]).dominates(&dv(&[0, 1])).unwrap());
        let d = dv(&[2, 0, 1]);
        assert!(d.dominates(&d).unwrap());
        assert!(dv(&[1]).dominates(&dv(&[1, 1])).is_err());
    }

    #[test]
    fn root_id_roundtrip() {
        let d = dv(&[1, 1, 2, 1]);
        assert_eq!(d.id(), "1,1,2,1");
        assert_eq!("1,1,2,1".parse::<DimVector>().unwrap(), d);
        assert!("1,x".parse::<DimVector>().is_err());
    }

    #[test]
    fn quiver_json() {
        let s = r#"{"vertices":["a","b","c1","c2"],"arrows":[
            {"name":"alpha","source":"c1","target":"a"},
            {"name":"beta","source":"c1","target":"b"},
            {"name":"gamma1","source":"c1","target":"c2"}]}"#;
        let q = Quiver::from_json(s).unwrap();
        assert_eq!(q, Quiver::outward_d(4));
        assert_eq!(Quiver::from_json(&q.to_json()).unwrap(), q);
        assert_eq!(q.content_hash().len(), 64);
    }

    #[test]
    fn quiver_validation() {
        assert!(Quiver::from_edges(&["x", "x"], &[]).is_err());
        assert!(Quiver::from_edges(&["x", "y"], &[("e", 0, 2)]).is_err());
        assert!(Quiver::from_edges(&["x", "y"], &[("e", 0, 1), ("e", 1, 0)]).is_err());
        let bad = r#"{"vertices":["a"],"arrows":[{"name":"e","source":"a","target":"z"}]}"#;
        assert!(matches!(Quiver::from_json(bad), Err(Error::InvalidQuiver(_))));
        // loops are structurally fine
        assert!(Quiver::from_edges(&["x"], &[("l", 0, 0)]).is_ok());
    }

    #[test]
    fn orientations_enumerated() {
        let q = Quiver::linear_a(3);
        let all = q.orientations();
        assert_eq!(all.len(), 4);
        assert_eq!(all[0], q);
        assert_eq!(all[3].arrows()[0].source, 1);
    }
}
