//! Loading quivers, modules and partition specs from JSON files.

use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use quiver_tensor::decompose::fusion::DEFAULT_MAX_RANK;
use quiver_tensor::delta::PartitionSpec;
use quiver_tensor::{detect_shape, Decomposition, Error, ExactDecomposer, ExactRep, FusionTable, Quiver, ShapeInfo};
use serde_json::Value;

use crate::{Common, EXIT_PARSE, EXIT_UNSUPPORTED};

/// An error together with the exit status it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn parse(message: impl Into<String>) -> Self {
        CliError { code: EXIT_PARSE, message: message.into() }
    }

    pub fn unsupported(message: impl Into<String>) -> Self {
        CliError { code: EXIT_UNSUPPORTED, message: message.into() }
    }

    pub fn exit_code(&self) -> u8 {
        self.code
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::InvalidQuiver(_) => EXIT_PARSE,
            _ => EXIT_UNSUPPORTED,
        };
        CliError { code, message: e.to_string() }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read_json(path: &Path) -> CliResult<Value> {
    let text =
        fs::read_to_string(path).map_err(|e| CliError::parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::parse(format!("{}: {e}", path.display())))
}

/// The quiver after `--reverse`, its shape, and a guarantee that it is of type A or D.
pub struct Loaded {
    pub quiver: Arc<Quiver>,
    pub shape: ShapeInfo,
}

pub fn load_quiver(common: &Common) -> CliResult<Quiver> {
    let v = read_json(&common.quiver)?;
    let q = Quiver::from_json(&v.to_string())
        .map_err(|e| CliError::parse(format!("{}: {e}", common.quiver.display())))?;
    let mut reversed = Vec::new();
    for name in &common.reverse {
        let idx = q.arrow_index(name).ok_or_else(|| CliError::parse(format!("--reverse: unknown arrow {name:?}")))?;
        reversed.push(idx);
    }
    Ok(q.with_reversed(&reversed))
}

pub fn load_dynkin(common: &Common) -> CliResult<Loaded> {
    let q = load_quiver(common)?;
    let shape = detect_shape(&q);
    if !shape.is_dynkin() {
        return Err(CliError::unsupported("only quivers of type A or D are supported"));
    }
    Ok(Loaded { quiver: Arc::new(q), shape })
}

impl Loaded {
    /// Fusion table, through the cache when `--cache-dir` is set.
    pub fn table(&self, common: &Common) -> CliResult<FusionTable> {
        Ok(match &common.cache_dir {
            Some(dir) => FusionTable::load_or_build(&self.shape, dir, DEFAULT_MAX_RANK)?.0,
            None => FusionTable::new(&self.shape)?,
        })
    }

    /// A module given by roots (`{"entries": ..}`) or explicit matrices
    /// (`{"dims": .., "maps": ..}`); explicit input is decomposed.
    pub fn module(&self, path: &Path, table: &FusionTable) -> CliResult<Decomposition> {
        self.module_from_value(path, read_json(path)?, table)
    }

    fn module_from_value(&self, path: &Path, v: Value, table: &FusionTable) -> CliResult<Decomposition> {
        let ctx = |e: Error| CliError::from(e).with_prefix(path);
        let obj = v.as_object().ok_or_else(|| CliError::parse(format!("{}: expected an object", path.display())))?;
        let a = if obj.contains_key("entries") {
            Decomposition::from_value(v).map_err(ctx)?
        } else if obj.contains_key("dims") {
            let rep = ExactRep::from_value(self.quiver.clone(), v).map_err(ctx)?;
            self.decomposer(table)?.decompose(&rep)?
        } else {
            return Err(CliError::parse(format!(
                "{}: a module needs either \"entries\" or \"dims\"",
                path.display()
            )));
        };
        a.validate(table.roots()).map_err(ctx)?;
        Ok(a)
    }

    pub fn explicit_module(&self, path: &Path, table: &FusionTable) -> CliResult<ExactRep> {
        let v = read_json(path)?;
        if v.get("dims").is_some() {
            return ExactRep::from_value(self.quiver.clone(), v).map_err(|e| CliError::from(e).with_prefix(path));
        }
        let a = self.module_from_value(path, v, table)?;
        Ok(self.decomposer(table)?.realize(&a)?)
    }

    pub fn decomposer(&self, table: &FusionTable) -> CliResult<ExactDecomposer> {
        Ok(ExactDecomposer::with_hom(&self.shape, table.hom_matrix().to_vec(), table.order().to_vec())?)
    }
}

pub fn load_partition(q: &Quiver, path: &Path) -> CliResult<PartitionSpec> {
    let v = read_json(path)?;
    PartitionSpec::from_value(q, v).map_err(|e| CliError::from(e).with_prefix(path))
}

impl CliError {
    fn with_prefix(mut self, path: &Path) -> Self {
        self.message = format!("{}: {}", path.display(), self.message);
        self
    }
}
