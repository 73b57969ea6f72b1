//! Closed forms for `b_n` on type A and D quivers.
//!
//! With `M = (+)_d a_d M(d)` and `M^(x)n = (+)_d a_d^(n) M(d)`:
//!
//! * type A: `b_n = sum_i (dim M_i)^n - sum_{l(d)=2} (sum_{d'>=d} a_d')^n`;
//! * type D: the same with weights `m(d'*d)` inside the inner sum, minus the
//!   twin coefficients `sum_{d twin} a_d^(n)`, which have their own closed form
//!   built from per-`i` terms.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_traits::{Pow, Signed, Zero};

use crate::decompose::{tensor_power_decomposition, Decomposition, FusionTable};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{Arrow, DimVector, Quiver};
use crate::rep::Representation;
use crate::roots::{RootKind, RootSystem};
use crate::scalar::Scalar;
use crate::shape::{detect_shape, Dynkin, ShapeInfo};

/// Which case split to use for the same-orientation twin terms.
///
/// `Lemma` attaches `n (row) (X_< + T)^(n-1)` to `i` outside `P` and the
/// difference of powers to `i` in `P`; `Prop` swaps the two.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum TwinBranch {
    #[default]
    Lemma,
    Prop,
}

impl FromStr for TwinBranch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemma" => Ok(TwinBranch::Lemma),
            "prop" => Ok(TwinBranch::Prop),
            other => Err(Error::Parse(format!("unknown twin branch {other:?} (expected lemma or prop)"))),
        }
    }
}

impl fmt::Display for TwinBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwinBranch::Lemma => "lemma",
            TwinBranch::Prop => "prop",
        })
    }
}

/// Orientation data of a type D quiver needed by the twin sums.
#[derive(Clone, Debug)]
pub struct TwinSumContext {
    l: usize,
    same_orientation: bool,
    p_set: BTreeSet<usize>,
    twins: HashMap<DimVector, (usize, usize)>,
    /// `d_support[i - 1] = 1_{D^i}` for `1 <= i <= l-2`.
    d_support: Vec<DimVector>,
}

/// Per-`i` aggregates of a decomposition entering the twin terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwinAggregates {
    pub i: usize,
    pub in_p: bool,
    /// `sum_{j>i} a_{x_{i,j}}`.
    pub row: BigUint,
    /// `sum_{p in P, p<i, j>i} a_{x_{p,j}}`.
    pub below: BigUint,
    /// `sum_{p in P, p<=i, j>i} a_{x_{p,j}}`.
    pub up_to: BigUint,
    /// `sum_{d thin, d > 1_{D^i}} a_d`.
    pub thin_above: BigUint,
    /// `sum_{i'>=i, j'>i'} a_{x_{i',j'}}`.
    pub tail_from: BigUint,
    /// `sum_{i'>i, j'>i'} a_{x_{i',j'}}`.
    pub tail_after: BigUint,
}

impl TwinSumContext {
    pub fn new(shape: &ShapeInfo) -> Result<Self> {
        let lab = shape.require_d()?;
        let l = shape.rank();
        let mut twins = HashMap::new();
        for i in 1..l - 2 {
            for j in i + 1..=l - 2 {
                twins.insert(shape.twin_vector(i, j)?, (i, j));
            }
        }
        let d_support = (1..=l - 2).map(|i| shape.d_support_root(i)).collect::<Result<_>>()?;
        Ok(TwinSumContext {
            l,
            same_orientation: lab.same_spur_orientation(),
            p_set: lab.p_set.clone(),
            twins,
            d_support,
        })
    }

    pub fn rank(&self) -> usize {
        self.l
    }

    pub fn same_orientation(&self) -> bool {
        self.same_orientation
    }

    pub fn p_set(&self) -> &BTreeSet<usize> {
        &self.p_set
    }

    /// `(i, j)` when `v` is the twin root `x_{i,j}`.
    pub fn twin_indices(&self, v: &DimVector) -> Option<(usize, usize)> {
        self.twins.get(v).copied()
    }

    /// Aggregates for `1 <= i <= l-3`.
    pub fn aggregates(&self, a: &Decomposition, i: usize) -> Result<TwinAggregates> {
        if !(1..=self.l - 3).contains(&i) {
            return Err(Error::InvalidArgument(format!("twin index {i} outside 1..={}", self.l - 3)));
        }
        let mut g = TwinAggregates {
            i,
            in_p: self.p_set.contains(&i),
            row: BigUint::zero(),
            below: BigUint::zero(),
            up_to: BigUint::zero(),
            thin_above: BigUint::zero(),
            tail_from: BigUint::zero(),
            tail_after: BigUint::zero(),
        };
        let base = &self.d_support[i - 1];
        for (v, n) in a.iter() {
            if v.len() != self.l {
                return Err(Error::LengthMismatch { expected: self.l, got: v.len() });
            }
            if let Some((p, j)) = self.twin_indices(v) {
                if p == i {
                    g.row += n;
                }
                if j > i && self.p_set.contains(&p) {
                    if p < i {
                        g.below += n;
                    }
                    if p <= i {
                        g.up_to += n;
                    }
                }
                if p >= i {
                    g.tail_from += n;
                }
                if p > i {
                    g.tail_after += n;
                }
            } else if v.is_thin() && v != base && v.dominates(base)? {
                g.thin_above += n;
            }
        }
        Ok(g)
    }
}

/// Closed form of `sum_{j>i} a_{x_{i,j}}^(n)` for one `i`.
pub fn twin_term(a: &Decomposition, n: u32, ctx: &TwinSumContext, i: usize, branch: TwinBranch) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let g = ctx.aggregates(a, i)?;
    let t = &g.thin_above;
    if !ctx.same_orientation {
        return Ok((&g.tail_from + t).pow(n) - (&g.tail_after + t).pow(n));
    }
    let product_form = || BigUint::from(n) * &g.row * (&g.below + t).pow(n - 1);
    let difference_form = || (&g.up_to + t).pow(n) - (&g.below + t).pow(n);
    let use_product = match branch {
        TwinBranch::Lemma => !g.in_p,
        TwinBranch::Prop => g.in_p,
    };
    Ok(if use_product { product_form() } else { difference_form() })
}

/// Closed form of `sum_{d twin} a_d^(n)`, summing [`twin_term`] over `1 <= i <= l-3`.
pub fn twin_sum(a: &Decomposition, n: u32, ctx: &TwinSumContext, branch: TwinBranch) -> Result<BigUint> {
    (1..=ctx.l - 3).map(|i| twin_term(a, n, ctx, i, branch)).sum()
}

/// `sum_{j>i} a_{x_{i,j}}` read off a decomposition, e.g. a brute-force power.
pub fn twin_row(a: &Decomposition, ctx: &TwinSumContext, i: usize) -> BigUint {
    a.iter()
        .filter(|(v, _)| matches!(ctx.twin_indices(v), Some((p, _)) if p == i))
        .map(|(_, n)| n)
        .sum()
}

/// `m(d'*d)` by the type D classification: 2 exactly when one root is a twin
/// `x_{i,j}` and the other is thin with support inside `{c_1, ..., c_i}`.
pub fn m_pair(roots: &RootSystem, d1: &DimVector, d2: &DimVector) -> Result<u32> {
    let r1 = roots.root(roots.require_index(d1)?);
    let r2 = roots.root(roots.require_index(d2)?);
    if d1.pointwise_product(d2)?.is_zero() {
        return Err(Error::ZeroVector);
    }
    let (twin, thin) = match (r1.kind, r2.kind) {
        (RootKind::Twin { i, .. }, RootKind::Thin) => (i, &r2.vector),
        (RootKind::Thin, RootKind::Twin { i, .. }) => (i, &r1.vector),
        _ => return Ok(1),
    };
    let lab = roots.shape().require_d()?;
    let inside: BTreeSet<usize> = (1..=twin).map(|k| lab.c(k)).collect();
    Ok(if thin.support().iter().all(|v| inside.contains(v)) { 2 } else { 1 })
}

fn check_roots(roots: &RootSystem, a: &Decomposition) -> Result<()> {
    a.validate(roots)
}

fn require_positive(n: u32) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    Ok(())
}

fn vertex_power_sum(a: &Decomposition, l: usize, n: u32) -> BigInt {
    a.dim_vector(l).iter().map(|d| BigInt::from(d.pow(n))).sum()
}

fn to_unsigned(v: BigInt, what: &str) -> Result<BigUint> {
    if v.is_negative() {
        return Err(Error::Inconsistent(format!("{what} evaluated to the negative value {v}")));
    }
    Ok(v.to_biguint().expect("nonnegative"))
}

/// `sum_i (dim M_i)^n - sum_{l(d)=2} (sum_{d'>=d} a_d')^n` on a type A quiver.
pub fn b_n_formula_type_a(roots: &RootSystem, a: &Decomposition, n: u32) -> Result<BigUint> {
    roots.shape().require_a()?;
    require_positive(n)?;
    check_roots(roots, a)?;
    let l = roots.shape().rank();
    let mut total = vertex_power_sum(a, l, n);
    for idx in roots.length_two() {
        let d = &roots.root(idx).vector;
        let mut inner = BigUint::zero();
        for (v, m) in a.iter() {
            if v.dominates(d)? {
                inner += m;
            }
        }
        total -= BigInt::from(inner.pow(n));
    }
    to_unsigned(total, "type A formula")
}

/// Type D closed form with the twin sum evaluated under `branch`.
pub fn b_n_formula_type_d(roots: &RootSystem, a: &Decomposition, n: u32, branch: TwinBranch) -> Result<BigUint> {
    let ctx = TwinSumContext::new(roots.shape())?;
    b_n_formula_type_d_with(roots, a, n, &ctx, branch)
}

pub fn b_n_formula_type_d_with(
    roots: &RootSystem,
    a: &Decomposition,
    n: u32,
    ctx: &TwinSumContext,
    branch: TwinBranch,
) -> Result<BigUint> {
    require_positive(n)?;
    check_roots(roots, a)?;
    let l = roots.shape().rank();
    let mut total = vertex_power_sum(a, l, n);
    for idx in roots.length_two() {
        let d = &roots.root(idx).vector;
        let mut inner = BigUint::zero();
        for (v, m) in a.iter() {
            if v.dominates(d)? {
                inner += m * m_pair(roots, v, d)?;
            }
        }
        total -= BigInt::from(inner.pow(n));
    }
    total -= BigInt::from(twin_sum(a, n, ctx, branch)?);
    to_unsigned(total, "type D formula")
}

/// Dispatches on the Dynkin type of `roots`.
pub fn b_n_formula(roots: &RootSystem, a: &Decomposition, n: u32, branch: TwinBranch) -> Result<BigUint> {
    match roots.shape().dynkin() {
        Dynkin::A(_) => b_n_formula_type_a(roots, a, n),
        Dynkin::D(_) => b_n_formula_type_d(roots, a, n, branch),
        Dynkin::General => Err(Error::UnsupportedShape("closed forms exist for types A and D only".into())),
    }
}

/// `S(d)`: roots `d'` such that `M(d)` is a summand of `M(d') (x) M(d'')`
/// for some `d''`, read from the fusion table.
pub fn s_set(d: &DimVector, t: &FusionTable) -> Result<Vec<DimVector>> {
    let roots = t.roots();
    let target = roots.require_index(d)?;
    let n = roots.len();
    Ok((0..n)
        .filter(|&i| (0..n).any(|j| t.entry(i, j).iter().any(|&(k, _)| k == target)))
        .map(|i| roots.root(i).vector.clone())
        .collect())
}

/// Both sides of `(sum_{d' in S(d)} m(d'*d) a_d')^n = sum_{d' in S(d)} m(d'*d) a_d'^(n)`.
pub fn power_identity_sides(
    a: &Decomposition,
    d: &DimVector,
    n: u32,
    t: &FusionTable,
) -> Result<(BigUint, BigUint)> {
    require_positive(n)?;
    if !d.is_thin() {
        return Err(Error::InvalidArgument(format!("{d} is not a thin root")));
    }
    let s = s_set(d, t)?;
    let power = tensor_power_decomposition(a, n, t)?;
    let mut lhs = BigUint::zero();
    let mut rhs = BigUint::zero();
    for dp in &s {
        let m = dp.pointwise_product(d)?.m_value()?;
        lhs += a.get(dp) * m;
        rhs += power.get(dp) * m;
    }
    Ok((lhs.pow(n), rhs))
}

pub fn verify_power_identity(a: &Decomposition, d: &DimVector, n: u32, t: &FusionTable) -> Result<bool> {
    let (lhs, rhs) = power_identity_sides(a, d, n, t)?;
    Ok(lhs == rhs)
}

/// A full-subquiver embedding `Q' -> Q` given by a vertex injection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingMap {
    source: Quiver,
    target: Quiver,
    map: Vec<usize>,
}

impl EmbeddingMap {
    /// Checks injectivity and that the arrows of `target` between image
    /// vertices are exactly the images of the arrows of `source`.
    pub fn new(source: Quiver, target: Quiver, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.vertex_count() {
            return Err(Error::LengthMismatch { expected: source.vertex_count(), got: map.len() });
        }
        let mut seen = vec![false; target.vertex_count()];
        for &v in &map {
            if v >= seen.len() || std::mem::replace(&mut seen[v], true) {
                return Err(Error::InvalidArgument("vertex map is not an injection".into()));
            }
        }
        let mut from_source: Vec<(usize, usize)> =
            source.arrows().iter().map(|a| (map[a.source], map[a.target])).collect();
        let mut in_target: Vec<(usize, usize)> = target
            .arrows()
            .iter()
            .filter(|a| seen[a.source] && seen[a.target])
            .map(|a| (a.source, a.target))
            .collect();
        from_source.sort_unstable();
        in_target.sort_unstable();
        if from_source != in_target {
            return Err(Error::InvalidArgument("vertex map is not a full subquiver embedding".into()));
        }
        Ok(EmbeddingMap { source, target, map })
    }

    pub fn identity(q: &Quiver) -> Self {
        EmbeddingMap { source: q.clone(), target: q.clone(), map: (0..q.vertex_count()).collect() }
    }

    pub fn source(&self) -> &Quiver {
        &self.source
    }

    pub fn target(&self) -> &Quiver {
        &self.target
    }

    pub fn vertex_map(&self) -> &[usize] {
        &self.map
    }

    /// Extends `d` by zeros.
    pub fn push_vector(&self, d: &DimVector) -> Result<DimVector> {
        if d.len() != self.map.len() {
            return Err(Error::LengthMismatch { expected: self.map.len(), got: d.len() });
        }
        let mut out = vec![0; self.target.vertex_count()];
        for (i, &v) in self.map.iter().enumerate() {
            out[v] = d.0[i];
        }
        Ok(DimVector(out))
    }

    /// The functor `H` on representations: zero spaces off the image.
    pub fn push_representation<F: Scalar>(&self, m: &Representation<F>) -> Result<Representation<F>> {
        if m.quiver().as_ref() != &self.source {
            return Err(Error::RepMismatch("representation is not on the source quiver".into()));
        }
        let dims = self.push_vector(m.dim_vector())?;
        let maps = self
            .target
            .arrows()
            .iter()
            .map(|a| {
                let src = self.map.iter().position(|&v| v == a.source);
                let tgt = self.map.iter().position(|&v| v == a.target);
                if let (Some(s), Some(t)) = (src, tgt) {
                    let idx = self
                        .source
                        .arrows()
                        .iter()
                        .position(|b| b.source == s && b.target == t)
                        .expect("full subquiver");
                    m.map(idx).clone()
                } else {
                    Matrix::zeros(dims.0[a.target] as usize, dims.0[a.source] as usize)
                }
            })
            .collect();
        Representation::new(Arc::new(self.target.clone()), dims, maps)
    }
}

/// Pushes every root of `a` through `e`, checking that images are roots of
/// the target when it is of type A or D.
pub fn embed_decomposition(a: &Decomposition, e: &EmbeddingMap) -> Result<Decomposition> {
    let shape = detect_shape(&e.target);
    let roots = if shape.is_dynkin() { Some(RootSystem::new(shape)?) } else { None };
    a.map_roots(|v| {
        let w = e.push_vector(v)?;
        if let Some(r) = &roots {
            r.require_index(&w)?;
        }
        Ok(w)
    })
}

fn fresh_label(taken: &BTreeSet<String>, base: &str) -> String {
    let mut s = base.to_string();
    while taken.contains(&s) {
        s.push('\'');
    }
    s
}

/// Embeds a type `A(l)` quiver as a full subquiver of `D(max(l+1, 4))`:
/// the path becomes `a, c1, ..., c(l-1)`, a new spur `b` hangs off `c1` and
/// the tail is padded when `l < 3`. Source vertices keep their indices.
pub fn embed_type_a_into_d(shape: &ShapeInfo) -> Result<EmbeddingMap> {
    let l = shape.require_a()?;
    let src = shape.quiver().clone();
    let path = shape.path().to_vec();
    let target_l = (l + 1).max(4);
    let mut labels: Vec<String> = src.vertices().to_vec();
    let mut taken: BTreeSet<String> = labels.iter().cloned().collect();
    let mut names: BTreeSet<String> = src.arrows().iter().map(|a| a.name.clone()).collect();
    let mut arrows: Vec<Arrow> = src.arrows().to_vec();
    // chain[0] plays `a`, chain[1..] plays c1, c2, ...
    let mut chain = path.clone();
    let mut add_vertex = |labels: &mut Vec<String>, base: &str| {
        let s = fresh_label(&taken, base);
        taken.insert(s.clone());
        labels.push(s);
        labels.len() - 1
    };
    let mut add_arrow = |arrows: &mut Vec<Arrow>, base: &str, source: usize, target: usize| {
        let s = fresh_label(&names, base);
        names.insert(s.clone());
        arrows.push(Arrow { name: s, source, target });
    };
    while chain.len() < target_l - 1 {
        let v = add_vertex(&mut labels, &format!("c{}", chain.len()));
        add_arrow(&mut arrows, &format!("gamma{}", chain.len()), *chain.last().expect("nonempty"), v);
        chain.push(v);
    }
    let b = add_vertex(&mut labels, "b");
    add_arrow(&mut arrows, "beta", chain[1], b);
    let target = Quiver::new(labels, arrows)?;
    debug_assert_eq!(detect_shape(&target).dynkin(), Dynkin::D(target_l));
    EmbeddingMap::new(src, target, (0..l).collect())
}

/// The type A closed form evaluated through the type D one on an over-quiver.
pub fn b_n_formula_type_a_via_d(shape: &ShapeInfo, a: &Decomposition, n: u32) -> Result<BigUint> {
    let e = embed_type_a_into_d(shape)?;
    let pushed = embed_decomposition(a, &e)?;
    let roots = RootSystem::new(detect_shape(e.target()))?;
    b_n_formula_type_d(&roots, &pushed, n, TwinBranch::default())
}
