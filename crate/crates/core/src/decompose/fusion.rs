//! Fusion table: decompositions of every pairwise tensor of representatives.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Decomposer, Decomposition};
use crate::error::{Error, Result};
use crate::quiver::DimVector;
use crate::roots::RootSystem;
use crate::scalar::Scalar;
use crate::shape::ShapeInfo;

/// Default bound on the number of vertices for table construction.
pub const DEFAULT_MAX_RANK: usize = 8;

pub const CACHE_VERSION: u32 = 1;

/// Sparse row of a table entry: `(root index, multiplicity)`.
pub type SparseEntry = Vec<(usize, u64)>;

#[derive(Clone, Debug)]
pub struct FusionTable {
    roots: RootSystem,
    hom: Vec<Vec<usize>>,
    order: Vec<usize>,
    /// Upper triangle, `i <= j`, packed row by row.
    products: Vec<SparseEntry>,
}

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + j - i
}

impl FusionTable {
    /// Builds the table with exact rational arithmetic and the default rank bound.
    pub fn new(shape: &ShapeInfo) -> Result<Self> {
        Self::build::<BigRational>(shape, DEFAULT_MAX_RANK)
    }

    pub fn build<F: Scalar>(shape: &ShapeInfo, max_rank: usize) -> Result<Self> {
        if shape.rank() > max_rank {
            return Err(Error::BoundExceeded(format!(
                "fusion table for {} vertices exceeds the configured bound {max_rank}",
                shape.rank()
            )));
        }
        let dec = Decomposer::<F>::new(shape)?;
        let n = dec.roots().len();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let products = pairs
            .par_iter()
            .map(|&(i, j)| {
                let t = dec.representative(i).pointwise_tensor(dec.representative(j))?;
                let dense = dec.decompose_dense(&t)?;
                Ok(dense
                    .into_iter()
                    .enumerate()
                    .filter(|(_, m)| !m.is_zero())
                    .map(|(k, m)| (k, u64::try_from(m).expect("table multiplicities are small")))
                    .collect())
            })
            .collect::<Result<Vec<SparseEntry>>>()?;
        Ok(FusionTable {
            roots: dec.roots().clone(),
            hom: dec.hom_matrix().to_vec(),
            order: dec.order().to_vec(),
            products,
        })
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn shape(&self) -> &ShapeInfo {
        self.roots.shape()
    }

    pub fn hom_matrix(&self) -> &[Vec<usize>] {
        &self.hom
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Sparse decomposition of `M(d_i) (x) M(d_j)`.
    pub fn entry(&self, i: usize, j: usize) -> &SparseEntry {
        &self.products[pair_index(self.roots.len(), i, j)]
    }

    pub fn entry_decomposition(&self, d: &DimVector, e: &DimVector) -> Result<Decomposition> {
        let (i, j) = (self.roots.require_index(d)?, self.roots.require_index(e)?);
        Ok(Decomposition::from_pairs(
            self.entry(i, j).iter().map(|&(k, m)| (self.roots.root(k).vector.clone(), m)),
        ))
    }

    /// Product of two multiplicity vectors in the fusion semiring.
    pub fn product(&self, x: &[BigUint], y: &[BigUint]) -> Vec<BigUint> {
        let n = self.roots.len();
        let mut out = vec![BigUint::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let c = xi * yj;
                for &(k, m) in self.entry(i, j) {
                    out[k] += &c * m;
                }
            }
        }
        out
    }

    /// Checks dimension consistency and unitriangularity of the stored Hom matrix.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.roots.len();
        for i in 0..n {
            for j in i..n {
                let want = self.roots.root(i).vector.pointwise_product(&self.roots.root(j).vector)?;
                let mut got = vec![0u64; want.len()];
                for &(k, m) in self.entry(i, j) {
                    for (g, &x) in got.iter_mut().zip(&self.roots.root(k).vector.0) {
                        *g += m * x as u64;
                    }
                }
                if got.iter().zip(&want.0).any(|(&g, &w)| g != w as u64) {
                    return Err(Error::Inconsistent(format!(
                        "table entry {{{}, {}}} does not add up to {}",
                        self.roots.root(i).vector,
                        self.roots.root(j).vector,
                        want
                    )));
                }
            }
        }
        if !super::krull_schmidt::is_unitriangular(&self.hom, &self.order) {
            return Err(Error::Inconsistent("Hom matrix is not unitriangular".into()));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    quiver_hash: String,
    quiver: String,
    roots: Vec<String>,
    order: Vec<usize>,
    hom: Vec<Vec<usize>>,
    products: Vec<Vec<(usize, u64)>>,
}

impl FusionTable {
    pub fn to_cache_json(&self) -> String {
        let q = self.shape().quiver();
        let file = CacheFile {
            version: CACHE_VERSION,
            quiver_hash: q.content_hash(),
            quiver: q.to_json(),
            roots: self.roots.roots().iter().map(|r| r.id()).collect(),
            order: self.order.clone(),
            hom: self.hom.clone(),
            products: self.products.clone(),
        };
        serde_json::to_string(&file).expect("cache serializes")
    }

    /// Restores a table written by [`FusionTable::to_cache_json`]; fails when
    /// the version, quiver hash or root list does not match `shape`.
    pub fn from_cache_json(shape: &ShapeInfo, s: &str) -> Result<Self> {
        let file: CacheFile = serde_json::from_str(s)?;
        if file.version != CACHE_VERSION {
            return Err(Error::Parse(format!("cache version {} is not supported", file.version)));
        }
        if file.quiver_hash != shape.quiver().content_hash() {
            return Err(Error::Parse("cache belongs to a different quiver".into()));
        }
        let roots = RootSystem::new(shape.clone())?;
        let ids: Vec<String> = roots.roots().iter().map(|r| r.id()).collect();
        let n = roots.len();
        if ids != file.roots || file.products.len() != n * (n + 1) / 2 {
            return Err(Error::Parse("cache root list does not match".into()));
        }
        if file.products.iter().flatten().any(|&(k, _)| k >= n) {
            return Err(Error::Parse("cache entry refers to an unknown root".into()));
        }
        let table = FusionTable { roots, hom: file.hom, order: file.order, products: file.products };
        if table.hom.len() != n || table.hom.iter().any(|r| r.len() != n) || table.order.len() != n {
            return Err(Error::Parse("cache Hom matrix has the wrong size".into()));
        }
        let mut sorted = table.order.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::Parse("cache order is not a permutation of the roots".into()));
        }
        table.check_invariants().map_err(|e| Error::Parse(format!("corrupt cache: {e}")))?;
        Ok(table)
    }

    pub fn cache_path(dir: &Path, shape: &ShapeInfo) -> PathBuf {
        dir.join(format!("fusion-{}.json", shape.quiver().content_hash()))
    }

    /// Loads the table from `dir` when a valid cache exists, otherwise builds
    /// it and writes the cache. Returns the table and whether it was a hit.
    pub fn load_or_build(shape: &ShapeInfo, dir: &Path, max_rank: usize) -> Result<(Self, bool)> {
        let path = Self::cache_path(dir, shape);
        if let Ok(s) = fs::read_to_string(&path) {
            if let Ok(t) = Self::from_cache_json(shape, &s) {
                return Ok((t, true));
            }
        }
        let t = Self::build::<BigRational>(shape, max_rank)?;
        fs::create_dir_all(dir)
            .and_then(|_| fs::write(&path, t.to_cache_json()))
            .map_err(|e| Error::InvalidArgument(format!("cannot write cache {}: {e}", path.display())))?;
        Ok((t, false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::shape::detect_shape;

    fn dv(s: &str) -> DimVector {
        s.parse().unwrap()
    }

    #[test]
    fn pair_indices_are_packed() {
        let n = 5;
        let mut seen = Vec::new();
        for i in 0..n {
            for j in i..n {
                seen.push(pair_index(n, i, j));
                assert_eq!(pair_index(n, i, j), pair_index(n, j, i));
            }
        }
        assert_eq!(seen, (0..n * (n + 1) / 2).collect::<Vec<_>>());
    }

    #[test]
    fn a3_entries() {
        let t = FusionTable::new(&detect_shape(&Quiver::linear_a(3))).unwrap();
        assert_eq!(
            t.entry_decomposition(&dv("1,1,0"), &dv("0,1,1")).unwrap(),
            Decomposition::from_ids(&[("0,1,0", 1)]).unwrap()
        );
        assert!(t.entry_decomposition(&dv("1,0,0"), &dv("0,0,1")).unwrap().is_empty());
        t.check_invariants().unwrap();
    }

    #[test]
    fn d4_entries() {
        let t = FusionTable::new(&detect_shape(&Quiver::outward_d(4))).unwrap();
        assert_eq!(
            t.entry_decomposition(&dv("1,1,2,1"), &dv("0,0,1,0")).unwrap(),
            Decomposition::from_ids(&[("0,0,1,0", 2)]).unwrap()
        );
        for r in t.roots().roots() {
            assert_eq!(
                t.entry_decomposition(&dv("1,1,1,1"), &r.vector).unwrap(),
                Decomposition::single(r.vector.clone())
            );
        }
        t.check_invariants().unwrap();
    }

    #[test]
    fn rank_bound() {
        let s = detect_shape(&Quiver::linear_a(9));
        assert!(matches!(FusionTable::new(&s), Err(Error::BoundExceeded(_))));
    }

    #[test]
    fn cache_roundtrip_and_invalidation() {
        let s = detect_shape(&Quiver::outward_d(4));
        let t = FusionTable::new(&s).unwrap();
        let js = t.to_cache_json();
        let back = FusionTable::from_cache_json(&s, &js).unwrap();
        assert_eq!(back.to_cache_json(), js);
        let other = detect_shape(&Quiver::outward_d(4).with_reversed(&[0]));
        assert!(FusionTable::from_cache_json(&other, &js).is_err());
        let bumped = js.replacen("\"version\":1", "\"version\":99", 1);
        assert!(FusionTable::from_cache_json(&s, &bumped).is_err());
    }
}
