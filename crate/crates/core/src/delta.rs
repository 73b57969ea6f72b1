//! Partitioning morphisms and the `Delta`-tensor product.
//!
//! A partitioning morphism is determined by a partition `{E_k}` of
//! `Q_0 x Q_0` with `(k, k) in E_k`. Arrows act diagonally, so the
//! `Delta`-tensor of two representations is their pointwise tensor plus
//! simple summands at every vertex.

use std::collections::BTreeMap;
use std::sync::Arc;

use bitvec::prelude::*;
use num_bigint::BigUint;
use num_traits::{Pow, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::decompose::{b_n, tensor_power_decomposition, Decomposition, FusionTable};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{DimVector, Quiver};
use crate::rep::Representation;
use crate::scalar::Scalar;

/// Default bound on `|Q_0|^n` when chain sets are materialized.
pub const DEFAULT_CHAIN_BOUND: usize = 1_000_000;

/// Largest vertex count accepted by the exhaustive enumeration.
pub const MAX_ENUMERATION_VERTICES: usize = 4;

/// Largest number of unfiltered specs returned as a list.
pub const MAX_LISTED_SPECS: u64 = 1 << 20;

/// The blocks `E_k`, one per vertex, as sorted lists of ordered vertex pairs.
/// The data may violate the partition axioms; see [`validate_spec`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSpec {
    labels: Vec<String>,
    blocks: Vec<Vec<(usize, usize)>>,
}

/// Outcome of [`validate_spec`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub disjoint: bool,
    pub covered: bool,
    pub diagonal: bool,
    /// Human-readable descriptions of each failure.
    pub problems: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.disjoint && self.covered && self.diagonal
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "valid": self.is_valid(),
            "disjoint": self.disjoint,
            "covered": self.covered,
            "diagonal": self.diagonal,
            "problems": self.problems,
        })
    }
}

impl PartitionSpec {
    pub fn new(labels: Vec<String>, mut blocks: Vec<Vec<(usize, usize)>>) -> Result<Self> {
        let q = labels.len();
        if blocks.len() != q {
            return Err(Error::LengthMismatch { expected: q, got: blocks.len() });
        }
        if blocks.iter().flatten().any(|&(i, j)| i >= q || j >= q) {
            return Err(Error::InvalidPartition("pair refers to a vertex out of range".into()));
        }
        blocks.iter_mut().for_each(|b| b.sort_unstable());
        Ok(PartitionSpec { labels, blocks })
    }

    /// `E_k = {(k, i) | i in Q_0}`.
    pub fn canonical(labels: Vec<String>) -> Self {
        let q = labels.len();
        let blocks = (0..q).map(|k| (0..q).map(|i| (k, i)).collect()).collect();
        PartitionSpec { labels, blocks }
    }

    /// Builds the spec where pair `(i, j)` lies in block `assign[i * q + j]`.
    pub fn from_assignment(labels: Vec<String>, assign: &[usize]) -> Result<Self> {
        let q = labels.len();
        if assign.len() != q * q {
            return Err(Error::LengthMismatch { expected: q * q, got: assign.len() });
        }
        let mut blocks = vec![Vec::new(); q];
        for (p, &k) in assign.iter().enumerate() {
            if k >= q {
                return Err(Error::InvalidPartition(format!("block index {k} out of range")));
            }
            blocks[k].push((p / q, p % q));
        }
        Ok(PartitionSpec { labels, blocks })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn blocks(&self) -> &[Vec<(usize, usize)>] {
        &self.blocks
    }

    pub fn block(&self, k: usize) -> &[(usize, usize)] {
        &self.blocks[k]
    }

    fn pair_text(&self, (i, j): (usize, usize)) -> String {
        format!("[{:?},{:?}]", self.labels[i], self.labels[j])
    }

    /// `assign[i * q + j] = k` with `(i, j) in E_k`; requires a valid spec.
    pub fn assignment(&self) -> Result<Vec<usize>> {
        let report = validate_spec(self);
        if !report.is_valid() {
            return Err(Error::InvalidPartition(report.problems.join("; ")));
        }
        let q = self.vertex_count();
        let mut assign = vec![0; q * q];
        for (k, block) in self.blocks.iter().enumerate() {
            for &(i, j) in block {
                assign[i * q + j] = k;
            }
        }
        Ok(assign)
    }

    /// Parses `{"E": {"a": [["a","a"],["a","b"]], ...}}` against the vertex
    /// labels of `q`. A vertex without an entry gets an empty block.
    pub fn from_json(q: &Quiver, s: &str) -> Result<Self> {
        Self::from_value(q, serde_json::from_str(s)?)
    }

    pub fn from_value(q: &Quiver, v: Value) -> Result<Self> {
        let raw: BTreeMap<String, BTreeMap<String, Vec<(String, String)>>> =
            serde_json::from_value(v)?;
        let e = raw
            .get("E")
            .ok_or_else(|| Error::Parse("partition JSON needs an \"E\" object".into()))?;
        if raw.len() != 1 {
            return Err(Error::Parse("partition JSON has keys besides \"E\"".into()));
        }
        let lookup = |label: &str| {
            q.vertex_index(label)
                .ok_or_else(|| Error::Parse(format!("unknown vertex {label:?} in partition")))
        };
        let mut blocks = vec![Vec::new(); q.vertex_count()];
        for (k, pairs) in e {
            let k = lookup(k)?;
            for (a, b) in pairs {
                blocks[k].push((lookup(a)?, lookup(b)?));
            }
        }
        PartitionSpec::new(q.vertices().to_vec(), blocks)
    }

    pub fn to_json_value(&self) -> Value {
        let e: serde_json::Map<String, Value> = self
            .blocks
            .iter()
            .enumerate()
            .map(|(k, block)| {
                let pairs: Vec<Value> = block
                    .iter()
                    .map(|&(i, j)| json!([self.labels[i], self.labels[j]]))
                    .collect();
                (self.labels[k].clone(), Value::Array(pairs))
            })
            .collect();
        json!({ "E": e })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }
}

/// Checks disjointness, coverage of `Q_0 x Q_0` and `(k, k) in E_k`.
pub fn validate_spec(p: &PartitionSpec) -> ValidationReport {
    let q = p.vertex_count();
    let mut owner: Vec<Option<usize>> = vec![None; q * q];
    let mut report = ValidationReport { disjoint: true, covered: true, diagonal: true, problems: vec![] };
    for (k, block) in p.blocks.iter().enumerate() {
        for &pair in block {
            let slot = &mut owner[pair.0 * q + pair.1];
            match *slot {
                Some(prev) => {
                    report.disjoint = false;
                    report.problems.push(if prev == k {
                        format!("pair {} is listed twice in block {:?}", p.pair_text(pair), p.labels[k])
                    } else {
                        format!(
                            "pair {} lies in blocks {:?} and {:?}",
                            p.pair_text(pair),
                            p.labels[prev],
                            p.labels[k]
                        )
                    });
                }
                None => *slot = Some(k),
            }
        }
    }
    for (idx, o) in owner.iter().enumerate() {
        if o.is_none() {
            report.covered = false;
            report.problems.push(format!("pair {} is not in any block", p.pair_text((idx / q, idx % q))));
        }
    }
    for k in 0..q {
        if !p.blocks[k].contains(&(k, k)) {
            report.diagonal = false;
            report.problems.push(format!(
                "pair {} is not in block {:?}",
                p.pair_text((k, k)),
                p.labels[k]
            ));
        }
    }
    report
}

fn require_valid(p: &PartitionSpec) -> Result<()> {
    let report = validate_spec(p);
    if report.is_valid() {
        Ok(())
    } else {
        Err(Error::InvalidPartition(report.problems.join("; ")))
    }
}

/// Coassociativity of a valid spec. With `k(i, j)` the block holding
/// `(i, j)`, the condition `L_3 = R_3` says exactly that
/// `k(k(a, b), c) = k(a, k(b, c))` for all `a, b, c`.
pub fn is_coassociative(p: &PartitionSpec) -> Result<bool> {
    let assign = p.assignment()?;
    Ok(assignment_is_associative(p.vertex_count(), &assign))
}

fn assignment_is_associative(q: usize, assign: &[usize]) -> bool {
    (0..q).all(|a| {
        (0..q).all(|b| (0..q).all(|c| assign[assign[a * q + b] * q + c] == assign[a * q + assign[b * q + c]]))
    })
}

/// Materialized `L_{n,k}` and `R_{n,k}` for all `k`. Tuples are encoded as
/// base-`|Q_0|` numbers with `a_1` most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSets {
    n: usize,
    q: usize,
    left: Vec<BitVec>,
    right: Vec<BitVec>,
}

impl ChainSets {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.q
    }

    pub fn tuple_count(&self) -> usize {
        self.q.pow(self.n as u32)
    }

    pub fn encode(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &a| acc * self.q + a)
    }

    pub fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = idx % self.q;
            idx /= self.q;
        }
        out
    }

    pub fn left(&self, k: usize) -> &BitSlice {
        &self.left[k]
    }

    pub fn right(&self, k: usize) -> &BitSlice {
        &self.right[k]
    }

    pub fn in_left(&self, k: usize, tuple: &[usize]) -> bool {
        self.left[k][self.encode(tuple)]
    }

    pub fn in_right(&self, k: usize, tuple: &[usize]) -> bool {
        self.right[k][self.encode(tuple)]
    }

    pub fn left_tuples(&self, k: usize) -> Vec<Vec<usize>> {
        self.left[k].iter_ones().map(|i| self.decode(i)).collect()
    }

    pub fn right_tuples(&self, k: usize) -> Vec<Vec<usize>> {
        self.right[k].iter_ones().map(|i| self.decode(i)).collect()
    }

    /// `L_{n,k} = R_{n,k}` for every `k`.
    pub fn left_equals_right(&self) -> bool {
        self.left == self.right
    }

    fn is_partition(sets: &[BitVec], total: usize) -> bool {
        let mut seen = bitvec![0; total];
        for s in sets {
            for i in s.iter_ones() {
                if seen[i] {
                    return false;
                }
                seen.set(i, true);
            }
        }
        seen.all()
    }

    /// Whether `{L_{n,k}}_k` is a partition of `Q_0^n`.
    pub fn left_is_partition(&self) -> bool {
        Self::is_partition(&self.left, self.tuple_count())
    }

    pub fn right_is_partition(&self) -> bool {
        Self::is_partition(&self.right, self.tuple_count())
    }

    /// Whether `(k, ..., k)` lies in `L_{n,k}` and `R_{n,k}` for every `k`.
    pub fn constant_tuples_present(&self) -> bool {
        (0..self.q).all(|k| {
            let t = vec![k; self.n];
            self.in_left(k, &t) && self.in_right(k, &t)
        })
    }

    pub fn to_json_value(&self, labels: &[String]) -> Value {
        let render = |sets: &[BitVec]| -> serde_json::Map<String, Value> {
            sets.iter()
                .enumerate()
                .map(|(k, s)| {
                    let tuples: Vec<Value> = s
                        .iter_ones()
                        .map(|i| json!(self.decode(i).iter().map(|&a| &labels[a]).collect::<Vec<_>>()))
                        .collect();
                    (labels[k].clone(), Value::Array(tuples))
                })
                .collect()
        };
        json!({ "n": self.n, "L": render(&self.left), "R": render(&self.right) })
    }
}

/// `L_{n,k}` and `R_{n,k}` with the default materialization bound.
pub fn chain_sets(p: &PartitionSpec, n: usize) -> Result<ChainSets> {
    chain_sets_bounded(p, n, DEFAULT_CHAIN_BOUND)
}

/// Builds the chain sets by the recursions
/// `L_{n,k} = {(t, b) | t in L_{n-1,j}, (j, b) in E_k}` and
/// `R_{n,k} = {(a, t) | (a, j) in E_k, t in R_{n-1,j}}`, starting from
/// `L_{1,j} = R_{1,j} = {(j)}` so that `L_2 = R_2 = E`.
pub fn chain_sets_bounded(p: &PartitionSpec, n: usize, bound: usize) -> Result<ChainSets> {
    require_valid(p)?;
    if n < 2 {
        return Err(Error::InvalidArgument("chain sets are defined for n >= 2".into()));
    }
    let q = p.vertex_count();
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= bound)
        .ok_or_else(|| Error::BoundExceeded(format!("{q}^{n} tuples exceed the bound {bound}")))?;
    let singletons: Vec<BitVec> = (0..q)
        .map(|j| {
            let mut b = bitvec![0; q];
            b.set(j, true);
            b
        })
        .collect();
    let mut left = singletons.clone();
    let mut right = singletons;
    let mut size = q;
    for _ in 1..n {
        let next = size * q;
        let mut new_left = vec![bitvec![0; next]; q];
        let mut new_right = vec![bitvec![0; next]; q];
        for (k, block) in p.blocks.iter().enumerate() {
            for &(a, b) in block {
                for t in left[a].iter_ones() {
                    new_left[k].set(t * q + b, true);
                }
                for t in right[b].iter_ones() {
                    new_right[k].set(a * size + t, true);
                }
            }
        }
        left = new_left;
        right = new_right;
        size = next;
    }
    debug_assert_eq!(size, total);
    Ok(ChainSets { n, q, left, right })
}

/// `W_n[k] = sum over t in L_{n,k} of prod_s dims[t_s]`, without materializing.
pub fn chain_weights(p: &PartitionSpec, n: usize, dims: &[BigUint]) -> Result<Vec<BigUint>> {
    require_valid(p)?;
    if dims.len() != p.vertex_count() {
        return Err(Error::LengthMismatch { expected: p.vertex_count(), got: dims.len() });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut w = dims.to_vec();
    for _ in 1..n {
        w = p
            .blocks
            .iter()
            .map(|block| block.iter().map(|&(j, b)| &w[j] * &dims[b]).sum())
            .collect();
    }
    Ok(w)
}

/// Coefficients `c_{n,k}` of the simple summands in the `n`-th `Delta`-power:
/// the sum over non-constant tuples of `L_{n,k}` of `prod_s dims[a_s]`.
///
/// Uses `c_{1,k} = 0` and
/// `c_{m+1,k} = sum_{(a,b) in E_k, (a,b) != (k,k)} dims[a]^m dims[b]
///            + sum_i c_{m,i} sum_{(i,j) in E_k} dims[j]`.
pub fn delta_corrections(p: &PartitionSpec, n: u32, dims: &[BigUint]) -> Result<Vec<BigUint>> {
    require_valid(p)?;
    let q = p.vertex_count();
    if dims.len() != q {
        return Err(Error::LengthMismatch { expected: q, got: dims.len() });
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let mut c = vec![BigUint::zero(); q];
    let mut powers = dims.to_vec();
    for _ in 1..n {
        let next = p
            .blocks
            .iter()
            .enumerate()
            .map(|(k, block)| {
                let mut s = BigUint::zero();
                for &(a, b) in block {
                    if (a, b) != (k, k) {
                        s += &powers[a] * &dims[b];
                    }
                    if !c[a].is_zero() {
                        s += &c[a] * &dims[b];
                    }
                }
                s
            })
            .collect();
        c = next;
        for (pw, d) in powers.iter_mut().zip(dims) {
            *pw *= d;
        }
    }
    Ok(c)
}

fn require_coassociative(p: &PartitionSpec) -> Result<()> {
    if is_coassociative(p)? {
        Ok(())
    } else {
        Err(Error::NotCoassociative)
    }
}

fn add_simples(out: &mut Decomposition, coeffs: Vec<BigUint>) {
    let q = coeffs.len();
    for (k, c) in coeffs.into_iter().enumerate() {
        out.add(DimVector::simple(q, k), c);
    }
}

/// Decomposition of `M (x)^Delta N = (M (x) N) (+) (+)_k d_k M(1_k)` with
/// `d_k = sum_{(k,k) != (i,j) in E_k} dim M_i dim N_j`.
pub fn delta_tensor_decomposition(
    a_m: &Decomposition,
    a_n: &Decomposition,
    p: &PartitionSpec,
    t: &FusionTable,
) -> Result<Decomposition> {
    require_coassociative(p)?;
    let q = p.vertex_count();
    if q != t.shape().rank() {
        return Err(Error::LengthMismatch { expected: t.shape().rank(), got: q });
    }
    let roots = t.roots();
    let dense = t.product(&a_m.to_dense(roots)?, &a_n.to_dense(roots)?);
    let mut out = Decomposition::from_dense(roots, &dense);
    let (dm, dn) = (a_m.dim_vector(q), a_n.dim_vector(q));
    let d = p
        .blocks
        .iter()
        .enumerate()
        .map(|(k, block)| {
            block.iter().filter(|&&pair| pair != (k, k)).map(|&(i, j)| &dm[i] * &dn[j]).sum()
        })
        .collect();
    add_simples(&mut out, d);
    Ok(out)
}

/// Decomposition of the `n`-th `Delta`-tensor power of `M = (+)_d a_d M(d)`.
pub fn delta_power_decomposition(
    a: &Decomposition,
    n: u32,
    p: &PartitionSpec,
    t: &FusionTable,
) -> Result<Decomposition> {
    require_coassociative(p)?;
    let q = p.vertex_count();
    if q != t.shape().rank() {
        return Err(Error::LengthMismatch { expected: t.shape().rank(), got: q });
    }
    let mut out = tensor_power_decomposition(a, n, t)?;
    add_simples(&mut out, delta_corrections(p, n, &a.dim_vector(q))?);
    Ok(out)
}

/// `b_n^Delta(M) = b_n(M) + (dim M)^n - sum_k (dim M_k)^n`, which does not
/// depend on the partitioning morphism.
pub fn b_n_delta(a: &Decomposition, n: u32, t: &FusionTable) -> Result<BigUint> {
    let q = t.shape().rank();
    let dims = a.dim_vector(q);
    let total: BigUint = dims.iter().sum();
    let vertex: BigUint = dims.iter().map(|d| d.pow(n)).sum();
    Ok(b_n(a, n, t)? + total.pow(n) - vertex)
}

/// Explicit `M (x)^Delta N`. The space at `k` is `(+)_{(i,j) in E_k} M_i (x) N_j`
/// in block order; an arrow `s -> t` maps the `(s,s)` summand to the `(t,t)`
/// summand by `M_a (x) N_a` and kills everything else.
pub fn delta_tensor_representation<F: Scalar>(
    m: &Representation<F>,
    n: &Representation<F>,
    p: &PartitionSpec,
) -> Result<Representation<F>> {
    require_valid(p)?;
    let quiver: Arc<Quiver> = m.quiver().clone();
    if n.quiver().as_ref() != quiver.as_ref() {
        return Err(Error::RepMismatch("representations live on different quivers".into()));
    }
    let q = quiver.vertex_count();
    if q != p.vertex_count() {
        return Err(Error::LengthMismatch { expected: q, got: p.vertex_count() });
    }
    let (dm, dn) = (&m.dim_vector().0, &n.dim_vector().0);
    let mut dims = vec![0u32; q];
    let mut diag_offset = vec![0usize; q];
    for (k, block) in p.blocks.iter().enumerate() {
        for &(i, j) in block {
            if (i, j) == (k, k) {
                diag_offset[k] = dims[k] as usize;
            }
            dims[k] += dm[i] * dn[j];
        }
    }
    let maps = quiver
        .arrows()
        .iter()
        .enumerate()
        .map(|(idx, arrow)| {
            let (s, t) = (arrow.source, arrow.target);
            let block = m.map(idx).kron(n.map(idx));
            let mut out = Matrix::zeros(dims[t] as usize, dims[s] as usize);
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    out[(diag_offset[t] + r, diag_offset[s] + c)] = block[(r, c)].clone();
                }
            }
            out
        })
        .collect();
    Representation::new(quiver, DimVector(dims), maps)
}

/// Number of specs the enumeration produces before filtering, `q^(q^2 - q)`.
pub fn enumeration_size(q: usize) -> Option<u64> {
    (q as u64).checked_pow((q * q - q) as u32)
}

/// The spec with enumeration index `idx`: off-diagonal pairs in row-major
/// order, each a base-`q` digit naming its block, first pair most significant.
pub fn spec_from_index(labels: Vec<String>, idx: u64) -> Result<PartitionSpec> {
    let q = labels.len();
    PartitionSpec::from_assignment(labels, &assignment_from_index(q, idx))
}

fn assignment_from_index(q: usize, mut idx: u64) -> Vec<usize> {
    let mut assign = vec![0; q * q];
    let off: Vec<usize> = (0..q * q).filter(|p| p / q != p % q).collect();
    for &p in off.iter().rev() {
        assign[p] = (idx % q as u64) as usize;
        idx /= q as u64;
    }
    for k in 0..q {
        assign[k * q + k] = k;
    }
    assign
}

/// Every partitioning morphism on the vertices of `quiver` with the diagonal
/// fixed, in index order, optionally keeping only coassociative ones.
pub fn enumerate_partitioning_morphisms(quiver: &Quiver, coassociative_only: bool) -> Result<Vec<PartitionSpec>> {
    let q = quiver.vertex_count();
    if q > MAX_ENUMERATION_VERTICES {
        return Err(Error::BoundExceeded(format!(
            "enumeration supports at most {MAX_ENUMERATION_VERTICES} vertices, got {q}"
        )));
    }
    let count = enumeration_size(q).expect("small");
    if !coassociative_only && count > MAX_LISTED_SPECS {
        return Err(Error::BoundExceeded(format!(
            "{count} specs exceed the listing bound {MAX_LISTED_SPECS}; filter to coassociative ones"
        )));
    }
    let labels = quiver.vertices().to_vec();
    let kept: Vec<u64> = (0..count)
        .into_par_iter()
        .filter(|&idx| !coassociative_only || assignment_is_associative(q, &assignment_from_index(q, idx)))
        .collect();
    kept.into_iter().map(|idx| spec_from_index(labels.clone(), idx)).collect()
}

/// Sum of all coefficients, for checks: `sum_k c_{n,k}`.
pub fn correction_total(coeffs: &[BigUint]) -> BigUint {
    coeffs.iter().sum()
}

/// `(dim M)^n - sum_k (dim M_k)^n`.
pub fn closed_form_correction(dims: &[BigUint], n: u32) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let total: BigUint = dims.iter().sum();
    let vertex: BigUint = dims.iter().map(|d| d.pow(n)).sum();
    total.pow(n) - vertex
}

/// Membership in `L_{n,k}` straight from the definition, by witness search: some witnesses
/// `a_3', ..., a_n'` satisfy `(a_1,a_2) in E_{a_3'}`,
/// `(a_s', a_s) in E_{a_{s+1}'}` and `(a_n', a_n) in E_k`.
pub fn in_left_by_definition(p: &PartitionSpec, k: usize, t: &[usize]) -> bool {
    let n = t.len();
    let q = p.vertex_count();
    let in_block = |x: usize, y: usize, b: usize| p.block(b).contains(&(x, y));
    if n == 2 {
        return in_block(t[0], t[1], k);
    }
    let witnesses = q.pow(n as u32 - 2);
    (0..witnesses).any(|mut w| {
        let mut wit = vec![0; n - 2];
        for s in wit.iter_mut() {
            *s = w % q;
            w /= q;
        }
        // wit[s] plays a'_{s+3}
        if !in_block(t[0], t[1], wit[0]) {
            return false;
        }
        for s in 0..n - 3 {
            if !in_block(wit[s], t[s + 2], wit[s + 1]) {
                return false;
            }
        }
        in_block(wit[n - 3], t[n - 1], k)
    })
}

/// Membership in `R_{n,k}`: witnesses `a_1', ..., a_{n-2}'` with `(a_1, a_1') in E_k`,
/// `(a_s, a_s') in E_{a_{s-1}'}` and `(a_{n-1}, a_n) in E_{a_{n-2}'}`.
pub fn in_right_by_definition(p: &PartitionSpec, k: usize, t: &[usize]) -> bool {
    let n = t.len();
    let q = p.vertex_count();
    let in_block = |x: usize, y: usize, b: usize| p.block(b).contains(&(x, y));
    if n == 2 {
        return in_block(t[0], t[1], k);
    }
    let witnesses = q.pow(n as u32 - 2);
    (0..witnesses).any(|mut w| {
        let mut wit = vec![0; n - 2];
        for s in wit.iter_mut() {
            *s = w % q;
            w /= q;
        }
        if !in_block(t[0], wit[0], k) {
            return false;
        }
        for s in 1..n - 2 {
            if !in_block(t[s], wit[s], wit[s - 1]) {
                return false;
            }
        }
        in_block(t[n - 2], t[n - 1], wit[n - 3])
    })
}
