//! One function per subcommand. Each returns the exit status on success.

use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use num_traits::Pow;
use serde_json::{json, Value};

use quiver_tensor::decompose::power::nth_root_decimal;
use quiver_tensor::decompose::{b_n, tensor_power_decomposition, Decomposition, FusionTable};
use quiver_tensor::delta::{
    chain_sets, delta_power_decomposition, delta_tensor_decomposition, delta_tensor_representation,
    enumerate_partitioning_morphisms, enumeration_size, is_coassociative, validate_spec, PartitionSpec,
};
use quiver_tensor::formulas::{b_n_formula, TwinBranch};
use quiver_tensor::verify::{run_suite, Suite, VerifyConfig};
use quiver_tensor::{ExactRep, RootKind, RootSystem};

use crate::input::{load_dynkin, load_partition, load_quiver, CliError, CliResult, Loaded};
use crate::output::{emit, Output, Table};
use crate::{Common, Method, EXIT_MISMATCH};

fn finish(common: &Common, out: Output) -> CliResult<u8> {
    emit(&out, common.format).map_err(|e| CliError::unsupported(format!("cannot write output: {e}")))?;
    Ok(0)
}

fn require_n(name: &str, n: u32) -> CliResult<()> {
    if n == 0 {
        return Err(CliError::unsupported(format!("{name} must be at least 1")));
    }
    Ok(())
}

fn root_ids(roots: &RootSystem) -> Vec<String> {
    roots.roots().iter().map(|r| r.id()).collect()
}

fn multiplicities(roots: &RootSystem, a: &Decomposition) -> Vec<String> {
    roots.roots().iter().map(|r| a.get(&r.vector).to_string()).collect()
}

fn decomposition_json(a: &Decomposition) -> Value {
    json!({ "entries": a.to_json_value()["entries"], "summands": a.total().to_string() })
}

pub fn roots(common: &Common) -> CliResult<u8> {
    let l = load_dynkin(common)?;
    let roots = RootSystem::new(l.shape.clone())?;
    let mut table = Table::new(["root", "kind", "length"]);
    let mut rows = Vec::new();
    for r in roots.roots() {
        let kind = match r.kind {
            RootKind::Thin => "thin".to_string(),
            RootKind::Twin { i, j } => format!("twin x_{{{i},{j}}}"),
        };
        table.push([r.id(), kind.clone(), r.length().to_string()]);
        rows.push(json!({ "root": r.id(), "kind": kind, "length": r.length() }));
    }
    let json = json!({
        "quiver_hash": l.quiver.content_hash(),
        "shape": l.shape.dynkin().to_string(),
        "vertices": l.quiver.vertices(),
        "roots": rows,
    });
    finish(common, Output { json, table })
}

pub fn decompose(common: &Common, module: &Path) -> CliResult<u8> {
    let l = load_dynkin(common)?;
    let t = l.table(common)?;
    let a = l.module(module, &t)?;
    let dims: Vec<String> = a.dim_vector(l.shape.rank()).iter().map(|d| d.to_string()).collect();
    let mut table = Table::new(root_ids(t.roots()));
    table.push(multiplicities(t.roots(), &a));
    let json = json!({ "dims": dims, "decomposition": decomposition_json(&a) });
    finish(common, Output { json, table })
}

/// Total dimension of the explicit product, checked before it is built.
fn check_dim(what: &str, dim: &BigUint, max_dim: u64) -> CliResult<()> {
    if *dim > BigUint::from(max_dim) {
        return Err(CliError::unsupported(format!(
            "{what} would have total dimension {dim}, above --max-dim {max_dim}; \
             drop --explicit to use the fusion table"
        )));
    }
    Ok(())
}

fn product_dim(dims: &[Vec<BigUint>], p: Option<&PartitionSpec>) -> BigUint {
    let mut acc = dims[0].clone();
    for d in &dims[1..] {
        acc = match p {
            None => acc.iter().zip(d).map(|(x, y)| x * y).collect(),
            Some(p) => p
                .blocks()
                .iter()
                .map(|block| block.iter().map(|&(i, j)| &acc[i] * &d[j]).sum())
                .collect(),
        };
    }
    acc.iter().sum()
}

fn explicit_product(reps: &[ExactRep], p: Option<&PartitionSpec>) -> CliResult<ExactRep> {
    let mut acc = reps[0].clone();
    for r in &reps[1..] {
        acc = match p {
            None => acc.pointwise_tensor(r)?,
            Some(p) => delta_tensor_representation(&acc, r, p)?,
        };
    }
    Ok(acc)
}

fn load_spec(l: &Loaded, path: Option<&Path>) -> CliResult<Option<PartitionSpec>> {
    let Some(path) = path else { return Ok(None) };
    let p = load_partition(&l.quiver, path)?;
    if !is_coassociative(&p)? {
        return Err(CliError::unsupported("the partitioning morphism is not coassociative"));
    }
    Ok(Some(p))
}

pub fn tensor(
    common: &Common,
    modules: &[PathBuf],
    partition: Option<&Path>,
    explicit: bool,
    max_dim: u64,
) -> CliResult<u8> {
    let l = load_dynkin(common)?;
    let t = l.table(common)?;
    let p = load_spec(&l, partition)?;
    let result = if explicit {
        let reps = modules.iter().map(|m| l.explicit_module(m, &t)).collect::<CliResult<Vec<_>>>()?;
        let dims: Vec<Vec<BigUint>> =
            reps.iter().map(|r| r.dim_vector().0.iter().map(|&x| BigUint::from(x)).collect()).collect();
        check_dim("the product", &product_dim(&dims, p.as_ref()), max_dim)?;
        l.decomposer(&t)?.decompose(&explicit_product(&reps, p.as_ref())?)?
    } else {
        let parts = modules.iter().map(|m| l.module(m, &t)).collect::<CliResult<Vec<_>>>()?;
        let mut acc = parts[0].clone();
        for b in &parts[1..] {
            acc = match &p {
                None => pair_product(&acc, b, &t)?,
                Some(p) => delta_tensor_decomposition(&acc, b, p, &t)?,
            };
        }
        acc
    };
    let mut table = Table::new(root_ids(t.roots()));
    table.push(multiplicities(t.roots(), &result));
    let json = json!({
        "factors": modules.len(),
        "delta": p.as_ref().map(|p| p.to_json_value()),
        "decomposition": decomposition_json(&result),
    });
    finish(common, Output { json, table })
}

fn pair_product(a: &Decomposition, b: &Decomposition, t: &FusionTable) -> CliResult<Decomposition> {
    let dense = t.product(&a.to_dense(t.roots())?, &b.to_dense(t.roots())?);
    Ok(Decomposition::from_dense(t.roots(), &dense))
}

pub fn power(
    common: &Common,
    module: &Path,
    n: Option<u32>,
    n_max: Option<u32>,
    partition: Option<&Path>,
    explicit: bool,
    max_dim: u64,
) -> CliResult<u8> {
    let range: Vec<u32> = match (n, n_max) {
        (Some(n), None) => vec![n],
        (None, Some(m)) => (1..=m).collect(),
        _ => return Err(CliError::parse("give exactly one of -n and --n-max")),
    };
    require_n("n", *range.last().unwrap_or(&0))?;
    require_n("n", range[0])?;
    let l = load_dynkin(common)?;
    let t = l.table(common)?;
    let p = load_spec(&l, partition)?;
    let mut results = Vec::new();
    if explicit {
        let m = l.explicit_module(module, &t)?;
        let dims: Vec<BigUint> = m.dim_vector().0.iter().map(|&x| BigUint::from(x)).collect();
        let top = *range.last().expect("nonempty");
        check_dim("the power", &product_dim(&vec![dims; top as usize], p.as_ref()), max_dim)?;
        let dec = l.decomposer(&t)?;
        let mut acc = m.clone();
        for k in 1..=top {
            if k > 1 {
                acc = explicit_product(&[acc, m.clone()], p.as_ref())?;
            }
            if range.contains(&k) {
                results.push((k, dec.decompose(&acc)?));
            }
        }
    } else {
        let a = l.module(module, &t)?;
        for &k in &range {
            let d = match &p {
                None => tensor_power_decomposition(&a, k, &t)?,
                Some(p) => delta_power_decomposition(&a, k, p, &t)?,
            };
            results.push((k, d));
        }
    }
    let mut table = Table::new(std::iter::once("n".to_string()).chain(root_ids(t.roots())));
    let mut rows = Vec::new();
    for (k, d) in &results {
        table.push(std::iter::once(k.to_string()).chain(multiplicities(t.roots(), d)));
        rows.push(json!({ "n": k, "decomposition": decomposition_json(d) }));
    }
    let json = json!({ "delta": p.as_ref().map(|p| p.to_json_value()), "powers": rows });
    finish(common, Output { json, table })
}

const BN_DIGITS: usize = 12;

pub fn bn(common: &Common, module: &Path, n_max: u32, branch: TwinBranch, method: Method) -> CliResult<u8> {
    require_n("--n-max", n_max)?;
    let l = load_dynkin(common)?;
    let t = l.table(common)?;
    let a = l.module(module, &t)?;
    let dims = a.dim_vector(l.shape.rank());
    let total: BigUint = dims.iter().sum();
    let mut table = Table::new(["n", "b_n", "b_n_delta", "b_n^(1/n)"]);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let b = match method {
            Method::Formula => b_n_formula(t.roots(), &a, n, branch)?,
            Method::Table => b_n(&a, n, &t)?,
        };
        let vertex: BigUint = dims.iter().map(|d| d.pow(n)).sum();
        let delta = &b + Pow::pow(&total, n) - vertex;
        let root = nth_root_decimal(&b, n, BN_DIGITS);
        table.push([n.to_string(), b.to_string(), delta.to_string(), root.clone()]);
        rows.push(json!({ "n": n, "b_n": b.to_string(), "b_n_delta": delta.to_string(), "b_n^(1/n)": root }));
    }
    let method = match method {
        Method::Formula => "formula",
        Method::Table => "table",
    };
    let json = json!({ "method": method, "twin_branch": branch.to_string(), "rows": rows });
    finish(common, Output { json, table })
}

pub fn beta(common: &Common, module: &Path, n_max: u32, digits: usize, branch: TwinBranch) -> CliResult<u8> {
    require_n("--n-max", n_max)?;
    let l = load_dynkin(common)?;
    let t = l.table(common)?;
    let a = l.module(module, &t)?;
    let dims = a.dim_vector(l.shape.rank());
    let mut table = Table::new(["n", "beta_estimate"]);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let est = nth_root_decimal(&b_n_formula(t.roots(), &a, n, branch)?, n, digits);
        table.push([n.to_string(), est.clone()]);
        rows.push(json!({ "n": n, "beta_estimate": est }));
    }
    let max = dims.iter().max().cloned().unwrap_or_default();
    let total: BigUint = dims.iter().sum();
    let json = json!({
        "estimates": rows,
        "max_vertex_dim": max.to_string(),
        "total_dim": total.to_string(),
    });
    finish(common, Output { json, table })
}

pub fn delta_enum(common: &Common, all: bool, partition: Option<&Path>, n: Option<u32>) -> CliResult<u8> {
    let q = load_quiver(common)?;
    let labels = q.vertices().to_vec();
    if let Some(path) = partition {
        let p = load_partition(&q, path)?;
        let report = validate_spec(&p);
        let mut json = json!({ "spec": p.to_json_value(), "validation": report.to_json_value() });
        let mut table = Table::new(["k", "|L_n,k|", "|R_n,k|"]);
        if !report.is_valid() {
            emit(&Output { json, table }, common.format)
                .map_err(|e| CliError::unsupported(format!("cannot write output: {e}")))?;
            return Err(CliError::unsupported("the partitioning morphism is not valid"));
        }
        json["coassociative"] = json!(is_coassociative(&p)?);
        if let Some(n) = n {
            let cs = chain_sets(&p, n as usize)?;
            json["chains"] = cs.to_json_value(&labels);
            json["left_equals_right"] = json!(cs.left_equals_right());
            json["left_is_partition"] = json!(cs.left_is_partition());
            json["right_is_partition"] = json!(cs.right_is_partition());
            for (k, label) in labels.iter().enumerate() {
                table.push([label.clone(), cs.left(k).count_ones().to_string(), cs.right(k).count_ones().to_string()]);
            }
        }
        return finish(common, Output { json, table });
    }
    let specs = enumerate_partitioning_morphisms(&q, !all)?;
    let mut table = Table::new(["index", "coassociative", "spec"]);
    let mut rows = Vec::new();
    for (i, p) in specs.iter().enumerate() {
        let co = is_coassociative(p)?;
        table.push([i.to_string(), co.to_string(), p.to_json()]);
        let mut v = p.to_json_value();
        v["coassociative"] = json!(co);
        rows.push(v);
    }
    let json = json!({
        "vertices": labels,
        "candidates": enumeration_size(q.vertex_count()).map(|c| c.to_string()),
        "coassociative_only": !all,
        "count": specs.len(),
        "specs": rows,
    });
    finish(common, Output { json, table })
}

#[allow(clippy::too_many_arguments)]
pub fn verify(
    common: &Common,
    suite: &str,
    trials: usize,
    seed: u64,
    n: Option<u32>,
    max_mult: u64,
    branch: TwinBranch,
    orientations: Option<usize>,
) -> CliResult<u8> {
    let suite: Suite = suite.parse().map_err(|e: quiver_tensor::Error| CliError::parse(e.to_string()))?;
    let q = load_quiver(common)?;
    let default_n = if suite == Suite::TwinBranch { 3 } else { 4 };
    let cfg = VerifyConfig {
        suite,
        trials,
        seed,
        n_max: n.unwrap_or(default_n),
        max_mult,
        branch,
        orientations,
        cache_dir: common.cache_dir.clone(),
    };
    let report = run_suite(&q, &cfg)?;
    let mut table = Table::new([
        "quiver_hash",
        "orientation",
        "M",
        "n",
        "formula_value",
        "oracle_value",
        "match",
        "label",
        "informational",
    ]);
    for p in &report.points {
        table.push([
            p.quiver_hash.clone(),
            p.orientation.clone(),
            p.module.to_string(),
            p.n.to_string(),
            p.formula_value.clone(),
            p.oracle_value.clone(),
            p.matches.to_string(),
            p.label.clone().unwrap_or_default(),
            p.informational.to_string(),
        ]);
    }
    let json = serde_json::to_value(&report).expect("report serializes");
    finish(common, Output { json, table })?;
    if report.passed {
        return Ok(0);
    }
    match report.first_mismatch() {
        Some(p) => eprintln!("first mismatch: {}", serde_json::to_string(p).expect("point serializes")),
        None => eprintln!("verification failed: {}", report.summary),
    }
    Ok(EXIT_MISMATCH)
}
