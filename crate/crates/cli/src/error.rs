use folner::FolnerError;
use freegroup::FreeGroupError;
use generic_ep::PipelineError;
use genericity::GenericityError;
use invariance::InvarianceError;
use presentations::PresentationError;
use sofic_wp::SoficError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("budget: {0}")]
    Budget(String),
    #[error("soundness violation: {0}")]
    Soundness(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 1 usage or parse, 2 budget, 3 soundness.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Soundness(_) => 3,
        }
    }
}

impl From<FreeGroupError> for CliError {
    fn from(e: FreeGroupError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<PresentationError> for CliError {
    fn from(e: PresentationError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<InvarianceError> for CliError {
    fn from(e: InvarianceError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("json: {e}"))
    }
}

impl From<FolnerError> for CliError {
    fn from(e: FolnerError) -> Self {
        match e {
            FolnerError::Guard { .. } | FolnerError::BudgetExhausted(_) => CliError::Budget(e.to_string()),
            FolnerError::Certificate(_) => CliError::Soundness(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<SoficError> for CliError {
    fn from(e: SoficError) -> Self {
        match e {
            SoficError::GapViolation { .. } | SoficError::Conflict { .. } | SoficError::NotInjective => {
                CliError::Soundness(e.to_string())
            }
            SoficError::KernelExhausted { .. } => CliError::Budget(e.to_string()),
            SoficError::Supplier(f) => f.into(),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<GenericityError> for CliError {
    fn from(e: GenericityError) -> Self {
        match e {
            GenericityError::Guard { .. } | GenericityError::NotFoundWithinBudget(_) | GenericityError::Undecided(_) => {
                CliError::Budget(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PipelineError> for CliError {
    fn from(e: PipelineError) -> Self {
        match e {
            PipelineError::Undecided { .. } | PipelineError::NoFamilies => CliError::Budget(e.to_string()),
            PipelineError::Sofic(s) => s.into(),
            PipelineError::Invariance(i) => i.into(),
        }
    }
}
