//! Dynkin shape detection and canonical labeling.
//!
//! Type `D(l)` quivers are labeled as
//!
//! ```text
//!   a
//!     \
//!      c1 -- c2 -- ... -- c(l-2)
//!     /
//!   b
//! ```
//!
//! with `alpha` the arrow on `{a, c1}`, `beta` on `{b, c1}` and `gamma_k` on
//! `{c_k, c_(k+1)}`. `sigma(arrow) = 1` iff the arrow points toward `c1`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dynkin {
    A(usize),
    D(usize),
    General,
}

impl std::fmt::Display for Dynkin {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dynkin::A(l) => write!(f, "A({l})"),
            Dynkin::D(l) => write!(f, "D({l})"),
            Dynkin::General => f.write_str("general"),
        }
    }
}

/// Canonical labeling of a type `D(l)` quiver. Vertex and arrow fields hold
/// indices into the underlying [`Quiver`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DLabels {
    pub a: usize,
    pub b: usize,
    /// `c1, ..., c(l-2)`; `chain[0]` is the branch vertex.
    pub chain: Vec<usize>,
    pub alpha: usize,
    pub beta: usize,
    /// `gammas[k-1]` is the arrow between `c_k` and `c_(k+1)`.
    pub gammas: Vec<usize>,
    /// Indexed by arrow.
    pub sigma: Vec<u8>,
    /// `{1 <= k <= l-3 | sigma(gamma_k) != sigma(alpha)}`, 1-based.
    pub p_set: BTreeSet<usize>,
}

impl DLabels {
    pub fn same_spur_orientation(&self) -> bool {
        self.sigma[self.alpha] == self.sigma[self.beta]
    }

    /// Vertex index of `c_k` (1-based `k`).
    pub fn c(&self, k: usize) -> usize {
        self.chain[k - 1]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeInfo {
    quiver: Quiver,
    dynkin: Dynkin,
    /// For type A: vertices along the path, starting from the endpoint with
    /// the smaller input index.
    path: Vec<usize>,
    d_labels: Option<DLabels>,
}

impl ShapeInfo {
    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn dynkin(&self) -> Dynkin {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn path(&self) -> &[usize] {
        &self.path
    }

    pub fn d_labels(&self) -> Option<&DLabels> {
        self.d_labels.as_ref()
    }

    pub fn is_dynkin(&self) -> bool {
        !matches!(self.dynkin, Dynkin::General)
    }

    pub fn require_d(&self) -> Result<&DLabels> {
        self.d_labels
            .as_ref()
            .ok_or_else(|| Error::UnsupportedShape(format!("expected type D, found {:?}", self.dynkin)))
    }

    pub fn require_a(&self) -> Result<usize> {
        match self.dynkin {
            Dynkin::A(l) => Ok(l),
            other => Err(Error::UnsupportedShape(format!("expected type A, found {other:?}"))),
        }
    }

    /// Thin vector of `D^i = {a, b, c1, ..., c_i}`.
    pub fn d_support_root(&self, i: usize) -> Result<DimVector> {
        let lab = self.require_d()?;
        let mut v = vec![0; self.rank()];
        v[lab.a] = 1;
        v[lab.b] = 1;
        for k in 1..=i {
            v[lab.c(k)] = 1;
        }
        Ok(DimVector(v))
    }

    /// Dimension vector of the twin root `x_{i,j}`.
    pub fn twin_vector(&self, i: usize, j: usize) -> Result<DimVector> {
        let lab = self.require_d()?;
        let l = self.rank();
        if !(1 <= i && i < j && j <= l - 2) {
            return Err(Error::InvalidArgument(format!("no twin root x_({i},{j}) in D({l})")));
        }
        let mut v = vec![0; l];
        v[lab.a] = 1;
        v[lab.b] = 1;
        for k in 1..=j {
            v[lab.c(k)] = if k <= i { 2 } else { 1 };
        }
        Ok(DimVector(v))
    }
}

fn is_connected(q: &Quiver) -> bool {
    let n = q.vertex_count();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for w in q.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Walks a path from `start`, never returning to `prev`.
fn walk(q: &Quiver, prev: usize, start: usize) -> Vec<usize> {
    let mut out = vec![start];
    let (mut p, mut cur) = (prev, start);
    loop {
        let next: Vec<usize> = q.neighbours(cur).into_iter().filter(|&w| w != p).collect();
        match next.as_slice() {
            [w] => {
                out.push(*w);
                p = cur;
                cur = *w;
            }
            _ => return out,
        }
    }
}

fn arrow_between(q: &Quiver, u: usize, v: usize) -> usize {
    q.arrows()
        .iter()
        .position(|a| (a.source == u && a.target == v) || (a.source == v && a.target == u))
        .expect("adjacent vertices share an arrow")
}

fn general(q: &Quiver) -> ShapeInfo {
    ShapeInfo { quiver: q.clone(), dynkin: Dynkin::General, path: Vec::new(), d_labels: None }
}

/// Classifies the underlying graph as a path (`A`), a `D` tree, or general.
///
/// For `D(4)` all three arms have length one; the two leaves with the
/// smallest input indices become `a` and `b` and the remaining one `c2`.
pub fn detect_shape(q: &Quiver) -> ShapeInfo {
    let n = q.vertex_count();
    if n == 0 || q.arrow_count() != n - 1 || !is_connected(q) {
        return general(q);
    }
    let degree: Vec<usize> = (0..n).map(|v| q.neighbours(v).len()).collect();
    if degree.iter().all(|&d| d <= 2) {
        let path = if n == 1 {
            vec![0]
        } else {
            let start = (0..n).find(|&v| degree[v] == 1).expect("a path has endpoints");
            walk(q, usize::MAX, start)
        };
        return ShapeInfo { quiver: q.clone(), dynkin: Dynkin::A(n), path, d_labels: None };
    }
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] == 3).collect();
    if branch.len() != 1 || degree.iter().any(|&d| d > 3) || n < 4 {
        return general(q);
    }
    let c1 = branch[0];
    let mut arms: Vec<Vec<usize>> = q.neighbours(c1).into_iter().map(|w| walk(q, c1, w)).collect();
    // shortest arms first, ties by the index of the first vertex; the longest arm is the tail
    arms.sort_by_key(|arm| (arm.len(), arm[0]));
    if arms[0].len() != 1 || arms[1].len() != 1 {
        return general(q);
    }
    let (a, b) = (arms[0][0], arms[1][0]);
    let mut chain = vec![c1];
    chain.extend(arms[2].iter().copied());

    let alpha = arrow_between(q, a, c1);
    let beta = arrow_between(q, b, c1);
    let gammas: Vec<usize> = chain.windows(2).map(|w| arrow_between(q, w[0], w[1])).collect();

    let mut sigma = vec![0u8; q.arrow_count()];
    sigma[alpha] = (q.arrows()[alpha].target == c1) as u8;
    sigma[beta] = (q.arrows()[beta].target == c1) as u8;
    for (k, &g) in gammas.iter().enumerate() {
        // gamma_(k+1) joins chain[k] (nearer c1) and chain[k+1]
        sigma[g] = (q.arrows()[g].target == chain[k]) as u8;
    }
    let p_set = gammas
        .iter()
        .enumerate()
        .filter(|(_, &g)| sigma[g] != sigma[alpha])
        .map(|(k, _)| k + 1)
        .collect();

    ShapeInfo {
        quiver: q.clone(),
        dynkin: Dynkin::D(n),
        path: Vec::new(),
        d_labels: Some(DLabels { a, b, chain, alpha, beta, gammas, sigma, p_set }),
    }
}
