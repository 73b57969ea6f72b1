//! Positive roots of type A and D quivers.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::quiver::DimVector;
use crate::shape::{Dynkin, ShapeInfo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootKind {
    Thin,
    /// `x_{i,j}` with `1 <= i < j <= l-2`.
    Twin { i: usize, j: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub vector: DimVector,
    pub kind: RootKind,
}

impl Root {
    pub fn is_thin(&self) -> bool {
        self.kind == RootKind::Thin
    }

    pub fn is_twin(&self) -> bool {
        !self.is_thin()
    }

    pub fn length(&self) -> u64 {
        self.vector.length()
    }

    pub fn id(&self) -> String {
        self.vector.id()
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RootKind::Thin => write!(f, "{}", self.vector),
            RootKind::Twin { i, j } => write!(f, "{} (x_{i},{j})", self.vector),
        }
    }
}

/// Indicator vectors of all connected vertex subsets.
fn connected_subsets(shape: &ShapeInfo) -> Vec<DimVector> {
    let q = shape.quiver();
    let n = q.vertex_count();
    let adj: Vec<Vec<usize>> = (0..n).map(|v| q.neighbours(v)).collect();
    let mut found: BTreeSet<Vec<bool>> = BTreeSet::new();
    let mut frontier: Vec<Vec<bool>> = (0..n)
        .map(|v| {
            let mut s = vec![false; n];
            s[v] = true;
            s
        })
        .collect();
    while let Some(set) = frontier.pop() {
        if !found.insert(set.clone()) {
            continue;
        }
        for v in (0..n).filter(|&v| set[v]) {
            for &w in &adj[v] {
                if !set[w] {
                    let mut next = set.clone();
                    next[w] = true;
                    if !found.contains(&next) {
                        frontier.push(next);
                    }
                }
            }
        }
    }
    found.into_iter().map(|s| DimVector(s.into_iter().map(u32::from).collect())).collect()
}

/// All positive roots, sorted lexicographically by dimension vector.
pub fn enumerate_positive_roots(shape: &ShapeInfo) -> Result<Vec<Root>> {
    let mut roots: Vec<Root> = match shape.dynkin() {
        Dynkin::General => {
            return Err(Error::UnsupportedShape(
                "root enumeration is only available for types A and D".into(),
            ))
        }
        Dynkin::A(_) | Dynkin::D(_) => connected_subsets(shape)
            .into_iter()
            .map(|vector| Root { vector, kind: RootKind::Thin })
            .collect(),
    };
    if let Dynkin::D(l) = shape.dynkin() {
        for i in 1..l - 2 {
            for j in i + 1..=l - 2 {
                roots.push(Root { vector: shape.twin_vector(i, j)?, kind: RootKind::Twin { i, j } });
            }
        }
    }
    roots.sort_by(|x, y| x.vector.cmp(&y.vector));
    Ok(roots)
}

/// The roots of a Dynkin quiver with an index for lookups by vector.
#[derive(Clone, Debug)]
pub struct RootSystem {
    shape: ShapeInfo,
    roots: Vec<Root>,
    index: HashMap<DimVector, usize>,
}

impl RootSystem {
    pub fn new(shape: ShapeInfo) -> Result<Self> {
        let roots = enumerate_positive_roots(&shape)?;
        let index = roots.iter().enumerate().map(|(i, r)| (r.vector.clone(), i)).collect();
        Ok(RootSystem { shape, roots, index })
    }

    pub fn shape(&self) -> &ShapeInfo {
        &self.shape
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn index_of(&self, v: &DimVector) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn require_index(&self, v: &DimVector) -> Result<usize> {
        self.index_of(v).ok_or_else(|| Error::NotARoot(v.id()))
    }

    /// Indices of roots of length 2, i.e. one per arrow.
    pub fn length_two(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.roots[i].length() == 2).collect()
    }

    /// Index of the full-support thin root, which is the tensor unit.
    pub fn unit_index(&self) -> Option<usize> {
        self.index_of(&self.shape.quiver().unit_vector())
    }
}
