use std::fs;

use freegroup::Alphabet;
use presentations::{builtin_model, KernelKind, KernelStream, Model, Presentation, PresentationFile, StagedKernel};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::SourceArgs;

/// Where the group comes from: a built-in model with its oracle, or a bare
/// presentation.
#[derive(Clone)]
pub enum Source {
    Builtin { name: String, model: Model },
    File(Presentation),
}

impl Source {
    pub fn builtin(name: &str) -> Result<Source, CliError> {
        Ok(Source::Builtin {
            name: name.to_string(),
            model: builtin_model(name)?,
        })
    }

    pub fn from_file(file: &PresentationFile) -> Result<Source, CliError> {
        match &file.builtin {
            Some(name) => Source::builtin(name),
            None => Ok(Source::File(file.presentation()?)),
        }
    }

    /// Reads back the `source` entry written into every output header.
    pub fn from_header(v: &Value) -> Result<Source, CliError> {
        if let Some(name) = v.get("builtin").and_then(Value::as_str) {
            return Source::builtin(name);
        }
        match v.get("presentation") {
            Some(p) => Source::from_file(&serde_json::from_value(p.clone())?),
            None => Err(CliError::Usage("source names neither a builtin nor a presentation".into())),
        }
    }

    pub fn header(&self) -> Value {
        match self {
            Source::Builtin { name, .. } => json!({ "builtin": name }),
            Source::File(p) => json!({ "presentation": p.to_file() }),
        }
    }

    pub fn model(&self) -> Option<&Model> {
        match self {
            Source::Builtin { model, .. } => Some(model),
            Source::File(_) => None,
        }
    }

    pub fn presentation(&self) -> &Presentation {
        match self {
            Source::Builtin { model, .. } => model.presentation(),
            Source::File(p) => p,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.presentation().alphabet()
    }

    /// The named kernel stream, or the default: syllable with an oracle,
    /// staged without.
    pub fn kernel_kind(&self, name: Option<&str>) -> Result<KernelKind, CliError> {
        match name {
            Some(s) => KernelKind::parse(s).ok_or_else(|| CliError::Usage(format!("unknown kernel {s:?}"))),
            None if self.model().is_some() => Ok(KernelKind::Syllable),
            None => Ok(KernelKind::Staged),
        }
    }

    pub fn kernel(&self, kind: KernelKind) -> Result<KernelStream, CliError> {
        match (self, kind) {
            (Source::Builtin { model, .. }, k) => Ok(k.stream(model)),
            (Source::File(p), KernelKind::Staged) => Ok(Box::new(StagedKernel::new(p))),
            (Source::File(_), _) => Err(CliError::Usage("only the staged kernel is available without a model".into())),
        }
    }
}

impl SourceArgs {
    pub fn resolve_optional(&self) -> Result<Option<Source>, CliError> {
        if let Some(name) = &self.builtin {
            return Source::builtin(name).map(Some);
        }
        let Some(path) = &self.presentation else {
            return Ok(None);
        };
        let text = fs::read_to_string(path)?;
        let file = Presentation::from_json(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        Source::from_file(&file).map(Some)
    }

    pub fn resolve(&self) -> Result<Source, CliError> {
        self.resolve_optional()?
            .ok_or_else(|| CliError::Usage("--builtin or --presentation is required".into()))
    }
}
