//! Concrete representations: a vector space dimension per vertex and a
//! matrix per arrow.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::roots::{Root, RootKind};
use crate::scalar::Scalar;
use crate::shape::ShapeInfo;

/// A representation over the scalar field `F`. The matrix of an arrow
/// `s -> t` has shape `dims[t] x dims[s]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F> {
    quiver: Arc<Quiver>,
    dims: DimVector,
    maps: Vec<Matrix<F>>,
}

impl<F: Scalar> Representation<F> {
    pub fn new(quiver: Arc<Quiver>, dims: DimVector, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::LengthMismatch { expected: quiver.vertex_count(), got: dims.len() });
        }
        if maps.len() != quiver.arrow_count() {
            return Err(Error::RepMismatch(format!(
                "expected {} arrow matrices, got {}",
                quiver.arrow_count(),
                maps.len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&maps) {
            let want = (dims.0[a.target] as usize, dims.0[a.source] as usize);
            if m.shape() != want {
                return Err(Error::RepMismatch(format!(
                    "arrow {:?} carries a {}x{} matrix, expected {}x{}",
                    a.name,
                    m.rows(),
                    m.cols(),
                    want.0,
                    want.1
                )));
            }
        }
        Ok(Representation { quiver, dims, maps })
    }

    pub fn zero(quiver: Arc<Quiver>) -> Self {
        let dims = quiver.zero_vector();
        let maps = vec![Matrix::zeros(0, 0); quiver.arrow_count()];
        Representation { quiver, dims, maps }
    }

    /// The tensor unit: `k` at every vertex, identity on every arrow.
    pub fn unit(quiver: Arc<Quiver>) -> Self {
        let dims = quiver.unit_vector();
        let maps = vec![Matrix::identity(1); quiver.arrow_count()];
        Representation { quiver, dims, maps }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn dim_vector(&self) -> &DimVector {
        &self.dims
    }

    pub fn total_dim(&self) -> u64 {
        self.dims.length()
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn map(&self, arrow: usize) -> &Matrix<F> {
        &self.maps[arrow]
    }

    fn check_same_quiver(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver {
            Ok(())
        } else {
            Err(Error::RepMismatch("representations live on different quivers".into()))
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.check_same_quiver(other)?;
        let dims = self.dims.add(&other.dims)?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.block_diag(b)).collect();
        Ok(Representation { quiver: self.quiver.clone(), dims, maps })
    }

    /// Pointwise tensor product: Kronecker products at every vertex and arrow.
    pub fn pointwise_tensor(&self, other: &Self) -> Result<Self> {
        self.check_same_quiver(other)?;
        let dims = self.dims.pointwise_product(&other.dims)?;
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| a.kron(b)).collect();
        Ok(Representation { quiver: self.quiver.clone(), dims, maps })
    }

    /// Replaces the basis at every vertex: `M'_a = g_t M_a g_s^{-1}`.
    pub fn base_change(&self, g: &[Matrix<F>]) -> Result<Self> {
        if g.len() != self.dims.len() {
            return Err(Error::LengthMismatch { expected: self.dims.len(), got: g.len() });
        }
        let mut inverses = Vec::with_capacity(g.len());
        for (v, m) in g.iter().enumerate() {
            let d = self.dims.0[v] as usize;
            if m.shape() != (d, d) {
                return Err(Error::RepMismatch(format!("base change at vertex {v} has wrong size")));
            }
            inverses.push(
                m.inverse()
                    .ok_or_else(|| Error::InvalidArgument(format!("singular base change at vertex {v}")))?,
            );
        }
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(a, m)| g[a.target].mul(m).mul(&inverses[a.source]))
            .collect();
        Ok(Representation { quiver: self.quiver.clone(), dims: self.dims.clone(), maps })
    }

    /// Dimension of `Hom(self, other)`: the solution space of
    /// `f_t M_a = N_a f_s` over all arrows.
    pub fn hom_dimension(&self, other: &Self) -> Result<usize> {
        self.check_same_quiver(other)?;
        let system = HomSystem::build(self, other);
        Ok(system.unknowns - system.coefficients.rank())
    }
}

/// Linear system whose kernel is `Hom(M, N)`.
#[derive(Clone, Debug)]
pub struct HomSystem<F> {
    pub unknowns: usize,
    pub coefficients: Matrix<F>,
}

impl<F: Scalar> HomSystem<F> {
    pub fn build(m: &Representation<F>, n: &Representation<F>) -> Self {
        let q = &m.quiver;
        let md = |v: usize| m.dims.0[v] as usize;
        let nd = |v: usize| n.dims.0[v] as usize;
        // f_v is an nd(v) x md(v) block of unknowns, row-major
        let mut offset = Vec::with_capacity(q.vertex_count());
        let mut unknowns = 0;
        for v in 0..q.vertex_count() {
            offset.push(unknowns);
            unknowns += nd(v) * md(v);
        }
        let var = |v: usize, r: usize, c: usize| offset[v] + r * md(v) + c;

        let mut rows = Vec::new();
        for (k, a) in q.arrows().iter().enumerate() {
            let (s, t) = (a.source, a.target);
            let ma = &m.maps[k];
            let na = &n.maps[k];
            for p in 0..nd(t) {
                for c in 0..md(s) {
                    let mut row = vec![F::zero(); unknowns];
                    // (f_t M_a)[p][c] = sum_r f_t[p][r] M_a[r][c]
                    for r in 0..md(t) {
                        let x = &ma[(r, c)];
                        if !x.is_zero() {
                            let i = var(t, p, r);
                            row[i] = row[i].clone() + x.clone();
                        }
                    }
                    // (N_a f_s)[p][c] = sum_r N_a[p][r] f_s[r][c]
                    for r in 0..nd(s) {
                        let x = &na[(p, r)];
                        if !x.is_zero() {
                            let i = var(s, r, c);
                            row[i] = row[i].clone() - x.clone();
                        }
                    }
                    if row.iter().any(|x| !x.is_zero()) {
                        rows.push(row);
                    }
                }
            }
        }
        let coefficients = Matrix::from_rows(rows, unknowns).expect("rows have equal length");
        HomSystem { unknowns, coefficients }
    }
}

fn scalar_row<F: Scalar>(vals: &[i64]) -> Vec<F> {
    vals.iter().map(|&v| crate::scalar::from_i64(v)).collect()
}

fn row_matrix<F: Scalar>(vals: &[i64]) -> Matrix<F> {
    Matrix::from_rows(vec![scalar_row(vals)], vals.len()).expect("one row")
}

fn column_matrix<F: Scalar>(vals: &[i64]) -> Matrix<F> {
    row_matrix::<F>(vals).transpose()
}

/// The fixed indecomposable representative `M(d)` for a root `d`.
///
/// Thin roots get `k` on the support with identity maps on inner arrows.
/// Twin roots `x_{i,j}` get `k^2` on `c1..c_i`, `k` on `a`, `b` and
/// `c_(i+1)..c_j`, with the spur maps chosen by arrow direction:
///
/// | arrow | out of the `k^2` side | into the `k^2` side |
/// |-------|-----------------------|---------------------|
/// | alpha | `(0 1)`               | `(1 0)^T`           |
/// | beta  | `(1 0)`               | `(0 1)^T`           |
/// | gamma_i | `(1 1)`             | `(1 1)^T`           |
pub fn indecomposable_rep<F: Scalar>(
    shape: &ShapeInfo,
    quiver: Arc<Quiver>,
    root: &Root,
) -> Result<Representation<F>> {
    if quiver.as_ref() != shape.quiver() {
        return Err(Error::RepMismatch("quiver does not match shape".into()));
    }
    let dims = root.vector.clone();
    if dims.len() != quiver.vertex_count() {
        return Err(Error::LengthMismatch { expected: quiver.vertex_count(), got: dims.len() });
    }
    let zero_map = |k: usize| {
        let a = &quiver.arrows()[k];
        Matrix::<F>::zeros(dims.0[a.target] as usize, dims.0[a.source] as usize)
    };
    let maps = match root.kind {
        RootKind::Thin => {
            if !dims.is_thin() {
                return Err(Error::NotARoot(dims.id()));
            }
            (0..quiver.arrow_count())
                .map(|k| {
                    let a = &quiver.arrows()[k];
                    if dims.0[a.source] == 1 && dims.0[a.target] == 1 {
                        Matrix::identity(1)
                    } else {
                        zero_map(k)
                    }
                })
                .collect()
        }
        RootKind::Twin { i, j } => {
            let lab = shape.require_d()?;
            if shape.twin_vector(i, j)? != dims {
                return Err(Error::NotARoot(dims.id()));
            }
            let c1 = lab.c(1);
            let mut maps: Vec<Matrix<F>> = (0..quiver.arrow_count()).map(zero_map).collect();
            let out_of = |k: usize, v: usize| quiver.arrows()[k].source == v;
            maps[lab.alpha] = if out_of(lab.alpha, c1) {
                row_matrix(&[0, 1])
            } else {
                column_matrix(&[1, 0])
            };
            maps[lab.beta] = if out_of(lab.beta, c1) {
                row_matrix(&[1, 0])
            } else {
                column_matrix(&[0, 1])
            };
            for k in 1..j {
                let g = lab.gammas[k - 1];
                maps[g] = if k < i {
                    Matrix::identity(2)
                } else if k == i {
                    if out_of(g, lab.c(k)) {
                        row_matrix(&[1, 1])
                    } else {
                        column_matrix(&[1, 1])
                    }
                } else {
                    Matrix::identity(1)
                };
            }
            maps
        }
    };
    Representation::new(quiver, dims, maps)
}

#[derive(Serialize, Deserialize)]
struct RepJson {
    dims: Vec<u32>,
    #[serde(default)]
    maps: BTreeMap<String, Vec<Vec<String>>>,
}

impl<F: Scalar> Representation<F> {
    /// Parses the explicit form `{"dims":[..], "maps":{"alpha":[["1/2","0"],..]}}`.
    /// Arrows missing from `maps` carry the zero matrix.
    pub fn from_json(quiver: Arc<Quiver>, s: &str) -> Result<Self> {
        let raw: RepJson = serde_json::from_str(s)?;
        Self::from_raw(quiver, raw)
    }

    pub fn from_value(quiver: Arc<Quiver>, v: serde_json::Value) -> Result<Self> {
        let raw: RepJson = serde_json::from_value(v)?;
        Self::from_raw(quiver, raw)
    }

    fn from_raw(quiver: Arc<Quiver>, raw: RepJson) -> Result<Self> {
        let dims = DimVector(raw.dims);
        if dims.len() != quiver.vertex_count() {
            return Err(Error::LengthMismatch { expected: quiver.vertex_count(), got: dims.len() });
        }
        for name in raw.maps.keys() {
            if quiver.arrow_index(name).is_none() {
                return Err(Error::Parse(format!("unknown arrow {name:?}")));
            }
        }
        let mut maps = Vec::with_capacity(quiver.arrow_count());
        for a in quiver.arrows() {
            let (r, c) = (dims.0[a.target] as usize, dims.0[a.source] as usize);
            let m = match raw.maps.get(&a.name) {
                None => Matrix::zeros(r, c),
                Some(rows) => {
                    let parsed = rows
                        .iter()
                        .map(|row| {
                            row.iter()
                                .map(|x| {
                                    F::parse_scalar(x)
                                        .ok_or_else(|| Error::Parse(format!("bad scalar {x:?}")))
                                })
                                .collect::<Result<Vec<F>>>()
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Matrix::from_rows(parsed, c).ok_or_else(|| {
                        Error::RepMismatch(format!("arrow {:?}: rows must have {c} entries", a.name))
                    })?
                }
            };
            maps.push(m);
        }
        Representation::new(quiver, dims, maps)
    }

    pub fn to_json(&self) -> String {
        let raw = RepJson {
            dims: self.dims.0.clone(),
            maps: self
                .quiver
                .arrows()
                .iter()
                .zip(&self.maps)
                .map(|(a, m)| {
                    let rows = m
                        .to_rows()
                        .into_iter()
                        .map(|r| r.iter().map(|x| x.to_scalar_string()).collect())
                        .collect();
                    (a.name.clone(), rows)
                })
                .collect(),
        };
        serde_json::to_string(&raw).expect("representation serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::enumerate_positive_roots;
    use crate::scalar::from_i64;
    use crate::shape::detect_shape;
    use num_rational::BigRational;

    type Q = BigRational;

    fn setup(q: Quiver) -> (ShapeInfo, Arc<Quiver>, Vec<Root>) {
        let s = detect_shape(&q);
        let roots = enumerate_positive_roots(&s).unwrap();
        (s, Arc::new(q), roots)
    }

    fn rep(s: &ShapeInfo, q: &Arc<Quiver>, id: &str) -> Representation<Q> {
        let roots = enumerate_positive_roots(s).unwrap();
        let r = roots.iter().find(|r| r.id() == id).unwrap();
        indecomposable_rep(s, q.clone(), r).unwrap()
    }

    fn ints(m: &Matrix<Q>) -> Vec<Vec<i64>> {
        m.to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(|x| x.to_integer().try_into().unwrap()).collect())
            .collect()
    }

    #[test]
    fn thin_representative() {
        let (s, q, _) = setup(Quiver::linear_a(3));
        let m = rep(&s, &q, "1,1,0");
        assert_eq!(m.dim_vector().id(), "1,1,0");
        assert_eq!(ints(m.map(0)), vec![vec![1]]);
        assert_eq!(m.map(1).shape(), (0, 1));
    }

    #[test]
    fn twin_representative_outward() {
        let (s, q, _) = setup(Quiver::outward_d(4));
        let m = rep(&s, &q, "1,1,2,1");
        assert_eq!(ints(m.map(0)), vec![vec![0, 1]]);
        assert_eq!(ints(m.map(1)), vec![vec![1, 0]]);
        assert_eq!(ints(m.map(2)), vec![vec![1, 1]]);
    }

    #[test]
    fn twin_representative_inward() {
        let (s, q, _) = setup(Quiver::outward_d(4).with_reversed(&[0, 1, 2]));
        let m = rep(&s, &q, "1,1,2,1");
        assert_eq!(ints(m.map(0)), vec![vec![1], vec![0]]);
        assert_eq!(ints(m.map(1)), vec![vec![0], vec![1]]);
        assert_eq!(ints(m.map(2)), vec![vec![1], vec![1]]);
    }

    #[test]
    fn simple_has_zero_maps() {
        let (s, q, _) = setup(Quiver::outward_d(4));
        let m = rep(&s, &q, "0,0,1,0");
        assert!(m.maps().iter().all(|x| x.is_zero()));
        assert_eq!(m.total_dim(), 1);
    }

    #[test]
    fn every_representative_is_a_brick() {
        // End = k for every representative and every orientation
        for base in [Quiver::linear_a(4), Quiver::outward_d(4), Quiver::outward_d(5)] {
            for q in base.orientations() {
                let (s, q, roots) = setup(q);
                for r in &roots {
                    let m: Representation<Q> = indecomposable_rep(&s, q.clone(), r).unwrap();
                    assert_eq!(m.hom_dimension(&m).unwrap(), 1, "{r} on {}", q.orientation_signature());
                }
            }
        }
    }

    #[test]
    fn direct_sum_examples() {
        let (s, q, _) = setup(Quiver::linear_a(2));
        let s1 = rep(&s, &q, "1,0");
        let s2 = rep(&s, &q, "0,1");
        let sum = s1.direct_sum(&s2).unwrap();
        assert_eq!(sum.dim_vector().id(), "1,1");
        assert!(sum.map(0).is_zero());
        assert_eq!(sum.map(0).shape(), (1, 1));
        let z = Representation::zero(q.clone());
        assert_eq!(s1.direct_sum(&z).unwrap(), s1);

        let (s3, q3, _) = setup(Quiver::linear_a(3));
        let m = rep(&s3, &q3, "1,1,0").direct_sum(&rep(&s3, &q3, "0,1,1")).unwrap();
        assert_eq!(m.dim_vector().id(), "1,2,1");
        assert_eq!(ints(m.map(0)), vec![vec![1], vec![0]]);
        assert_eq!(ints(m.map(1)), vec![vec![0, 1]]);
    }

    #[test]
    fn tensor_examples() {
        let (s, q, _) = setup(Quiver::linear_a(3));
        let t = rep(&s, &q, "1,1,0").pointwise_tensor(&rep(&s, &q, "0,1,1")).unwrap();
        assert_eq!(t.dim_vector().id(), "0,1,0");
        assert!(t.maps().iter().all(|m| m.is_zero()));

        let (s, q, _) = setup(Quiver::outward_d(4));
        let t = rep(&s, &q, "1,1,2,1").pointwise_tensor(&rep(&s, &q, "0,0,1,0")).unwrap();
        assert_eq!(t.dim_vector().id(), "0,0,2,0");
        assert!(t.maps().iter().all(|m| m.is_zero()));

        let unit = Representation::<Q>::unit(q.clone());
        let x = rep(&s, &q, "1,1,2,1");
        assert_eq!(unit.pointwise_tensor(&x).unwrap(), x);
    }

    #[test]
    fn hom_examples() {
        let (s, q, _) = setup(Quiver::linear_a(2));
        let s1 = rep(&s, &q, "1,0");
        let s2 = rep(&s, &q, "0,1");
        let p = rep(&s, &q, "1,1");
        assert_eq!(s1.hom_dimension(&s2).unwrap(), 0);
        assert_eq!(s2.hom_dimension(&s1).unwrap(), 0);
        // arrow 1 -> 2: S_2 is a subrepresentation of M(11), not a quotient
        assert_eq!(s2.hom_dimension(&p).unwrap(), 1);
        assert_eq!(p.hom_dimension(&s2).unwrap(), 0);
    }

    #[test]
    fn hom_unknown_count() {
        let (s, q, _) = setup(Quiver::outward_d(4));
        let x = rep(&s, &q, "1,1,2,1");
        let y = rep(&s, &q, "1,0,1,1");
        let sys = HomSystem::build(&x, &y);
        assert_eq!(sys.unknowns, 1 + 0 + 2 + 1);
    }

    #[test]
    fn shape_mismatch_rejected() {
        let q = Arc::new(Quiver::linear_a(2));
        let bad = Representation::<Q>::new(
            q.clone(),
            DimVector(vec![1, 2]),
            vec![Matrix::zeros(1, 1)],
        );
        assert!(matches!(bad, Err(Error::RepMismatch(_))));
        let other = Representation::<Q>::unit(Arc::new(Quiver::linear_a(3)));
        let unit = Representation::<Q>::unit(q);
        assert!(unit.direct_sum(&other).is_err());
        assert!(unit.pointwise_tensor(&other).is_err());
        assert!(unit.hom_dimension(&other).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let q = Arc::new(Quiver::linear_a(2));
        let js = r#"{"dims":[2,1],"maps":{"e1":[["1/2","0"]]}}"#;
        let m = Representation::<Q>::from_json(q.clone(), js).unwrap();
        assert_eq!(m.map(0)[(0, 0)], Q::new(1.into(), 2.into()));
        assert_eq!(Representation::<Q>::from_json(q.clone(), &m.to_json()).unwrap(), m);
        let bad = r#"{"dims":[2,1],"maps":{"e1":[["1"]]}}"#;
        assert!(Representation::<Q>::from_json(q.clone(), bad).is_err());
        let unknown = r#"{"dims":[1,1],"maps":{"zz":[["1"]]}}"#;
        assert!(Representation::<Q>::from_json(q, unknown).is_err());
    }

    #[test]
    fn base_change_keeps_hom() {
        let (s, q, _) = setup(Quiver::outward_d(4));
        let x = rep(&s, &q, "1,1,2,1");
        let g: Vec<Matrix<Q>> = x
            .dim_vector()
            .0
            .iter()
            .map(|&d| {
                let d = d as usize;
                Matrix::from_fn(d, d, |i, j| from_i64(if i == j { 2 } else if i < j { 1 } else { 0 }))
            })
            .collect();
        let y = x.base_change(&g).unwrap();
        assert_ne!(x, y);
        assert_eq!(x.hom_dimension(&y).unwrap(), 1);
        assert_eq!(y.hom_dimension(&y).unwrap(), 1);
    }
}
