//! Declarative verification plans.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::checks;
use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    /// Largest field order any check may construct.
    pub max_field_size: u64,
    /// Largest number of flags, subspaces or group elements any check may enumerate.
    pub max_flags: u128,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_field_size: flagdescent::fields::DEFAULT_FIELD_BUDGET, max_flags: flagdescent::flags::DEFAULT_ENUMERATION_BUDGET }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckDescriptor {
    pub module: String,
    pub operation: String,
    #[serde(default = "empty_object")]
    pub params: Value,
}

fn empty_object() -> Value {
    Value::Object(Default::default())
}

impl CheckDescriptor {
    pub fn new(id: &str, params: Value) -> Self {
        let (module, operation) = id.split_once('.').unwrap_or((id, ""));
        CheckDescriptor { module: module.into(), operation: operation.into(), params }
    }

    pub fn id(&self) -> String {
        format!("{}.{}", self.module, self.operation)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct VerificationPlan {
    pub schema_version: u32,
    pub budget: Budget,
    /// Worker threads; 0 lets the pool decide.
    pub threads: usize,
    pub output: Option<PathBuf>,
    pub checks: Vec<CheckDescriptor>,
}

impl Default for VerificationPlan {
    fn default() -> Self {
        VerificationPlan { schema_version: SCHEMA_VERSION, budget: Budget::default(), threads: 0, output: None, checks: Vec::new() }
    }
}

impl VerificationPlan {
    pub fn from_suite(name: &str) -> Result<Self, CliError> {
        let descriptors = checks::suite(name).ok_or_else(|| CliError::Config(format!("unknown suite {name:?}; expected paper or smoke")))?;
        Ok(VerificationPlan {
            checks: descriptors.into_iter().map(|(id, params)| CheckDescriptor::new(id, params)).collect(),
            ..Default::default()
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e.to_string()))?;
        let plan: VerificationPlan = serde_json::from_str(&text).map_err(|e| CliError::Plan {
            path: path.display().to_string(),
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        plan.validate()?;
        Ok(plan)
    }

    /// Every descriptor names a registered check with well-formed parameters; budgets are positive.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::Config(format!("unsupported schema_version {}", self.schema_version)));
        }
        if self.budget.max_field_size == 0 || self.budget.max_flags == 0 {
            return Err(CliError::Config("budgets must be positive".into()));
        }
        for (i, d) in self.checks.iter().enumerate() {
            let id = d.id();
            let spec = checks::find(&id).ok_or_else(|| CliError::UnknownCheck(id.clone()))?;
            spec.validate(&d.params)
                .map_err(|e| CliError::Config(format!("checks[{i}] ({id}): {e}")))?;
        }
        Ok(())
    }
}
