//! Krull-Schmidt decomposition of explicit representations.
//!
//! Dynkin quivers are representation-directed, so the matrix
//! `H[d][d'] = dim Hom(M(d), M(d'))` is unitriangular in a suitable
//! topological order of the roots. Multiplicities then follow from the
//! vector `h[d] = dim Hom(M(d), M)` by back-substitution.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::Decomposition;
use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::rep::{indecomposable_rep, Representation};
use crate::roots::RootSystem;
use crate::scalar::Scalar;
use crate::shape::ShapeInfo;

/// Topological order of the relation `H[d][d'] > 0`, smallest root index first
/// among the available candidates.
pub fn topological_order(hom: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = hom.len();
    let mut indegree = vec![0usize; n];
    for (d, row) in hom.iter().enumerate() {
        for (e, &h) in row.iter().enumerate() {
            if d != e && h > 0 {
                indegree[e] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&d| indegree[d] == 0).map(Reverse).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(Reverse(d)) = ready.pop() {
        order.push(d);
        for e in 0..n {
            if d != e && hom[d][e] > 0 {
                indegree[e] -= 1;
                if indegree[e] == 0 {
                    ready.push(Reverse(e));
                }
            }
        }
    }
    if order.len() != n {
        return Err(Error::Inconsistent("Hom relation between indecomposables has a cycle".into()));
    }
    Ok(order)
}

/// Checks `H[d][d] = 1` and `H[d][d'] = 0` whenever `d'` strictly precedes `d`.
pub fn is_unitriangular(hom: &[Vec<usize>], order: &[usize]) -> bool {
    let mut pos = vec![0; order.len()];
    for (p, &d) in order.iter().enumerate() {
        pos[d] = p;
    }
    (0..hom.len()).all(|d| {
        hom[d][d] == 1 && (0..hom.len()).all(|e| pos[e] >= pos[d] || hom[d][e] == 0)
    })
}

/// Representatives, Hom matrix and order for one Dynkin quiver.
#[derive(Clone, Debug)]
pub struct Decomposer<F> {
    roots: RootSystem,
    quiver: Arc<Quiver>,
    reps: Vec<Representation<F>>,
    hom: Vec<Vec<usize>>,
    order: Vec<usize>,
}

impl<F: Scalar> Decomposer<F> {
    pub fn new(shape: &ShapeInfo) -> Result<Self> {
        let roots = RootSystem::new(shape.clone())?;
        let quiver = Arc::new(shape.quiver().clone());
        let reps = roots
            .roots()
            .iter()
            .map(|r| indecomposable_rep(shape, quiver.clone(), r))
            .collect::<Result<Vec<_>>>()?;
        let hom = reps
            .par_iter()
            .map(|x| reps.iter().map(|y| x.hom_dimension(y)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let order = topological_order(&hom)?;
        if !is_unitriangular(&hom, &order) {
            return Err(Error::Inconsistent("Hom matrix is not unitriangular".into()));
        }
        Ok(Decomposer { roots, quiver, reps, hom, order })
    }

    /// Reuses a Hom matrix and order computed elsewhere (e.g. a cache).
    pub fn with_hom(shape: &ShapeInfo, hom: Vec<Vec<usize>>, order: Vec<usize>) -> Result<Self> {
        let roots = RootSystem::new(shape.clone())?;
        let quiver = Arc::new(shape.quiver().clone());
        let reps = roots
            .roots()
            .iter()
            .map(|r| indecomposable_rep(shape, quiver.clone(), r))
            .collect::<Result<Vec<_>>>()?;
        if hom.len() != roots.len() || order.len() != roots.len() || !is_unitriangular(&hom, &order) {
            return Err(Error::Inconsistent("supplied Hom matrix does not fit the roots".into()));
        }
        Ok(Decomposer { roots, quiver, reps, hom, order })
    }

    pub fn roots(&self) -> &RootSystem {
        &self.roots
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn representative(&self, i: usize) -> &Representation<F> {
        &self.reps[i]
    }

    pub fn hom_matrix(&self) -> &[Vec<usize>] {
        &self.hom
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Dense multiplicity vector of `m` in root order.
    pub fn decompose_dense(&self, m: &Representation<F>) -> Result<Vec<BigUint>> {
        if m.quiver().as_ref() != self.quiver.as_ref() {
            return Err(Error::RepMismatch("representation lives on another quiver".into()));
        }
        let n = self.roots.len();
        let mut h = vec![0i128; n];
        for (d, slot) in h.iter_mut().enumerate() {
            *slot = self.reps[d].hom_dimension(m)? as i128;
        }
        let mut a = vec![0i128; n];
        for &d in self.order.iter().rev() {
            let mut v = h[d];
            for (e, &x) in self.hom[d].iter().enumerate() {
                if e != d && x > 0 {
                    v -= x as i128 * a[e];
                }
            }
            if v < 0 {
                return Err(Error::Inconsistent(format!(
                    "negative multiplicity for {}",
                    self.roots.root(d).vector
                )));
            }
            a[d] = v;
        }
        let dense: Vec<BigUint> = a.iter().map(|&x| BigUint::from(x as u128)).collect();
        let dims = Decomposition::from_dense(&self.roots, &dense).dim_vector(m.dim_vector().len());
        let expected: Vec<BigUint> = m.dim_vector().0.iter().map(|&x| BigUint::from(x)).collect();
        if dims != expected {
            return Err(Error::Inconsistent(
                "recovered summands do not add up to the dimension vector".into(),
            ));
        }
        Ok(dense)
    }

    pub fn decompose(&self, m: &Representation<F>) -> Result<Decomposition> {
        Ok(Decomposition::from_dense(&self.roots, &self.decompose_dense(m)?))
    }

    /// Direct sum of representatives described by `a`.
    pub fn realize(&self, a: &Decomposition) -> Result<Representation<F>> {
        let mut out = Representation::zero(self.quiver.clone());
        for (v, n) in a.iter() {
            let i = self.roots.require_index(v)?;
            let count: u64 = n
                .try_into()
                .map_err(|_| Error::BoundExceeded(format!("multiplicity {n} is too large to realize")))?;
            for _ in 0..count {
                out = out.direct_sum(&self.reps[i])?;
            }
        }
        Ok(out)
    }
}

/// One-shot decomposition of an explicit representation of a type A or D quiver.
pub fn krull_schmidt<F: Scalar>(m: &Representation<F>, shape: &ShapeInfo) -> Result<Decomposition> {
    Decomposer::new(shape)?.decompose(m)
}
