use folner::{FolnerCertificate, FolnerFile};
use invariance::{exact_invariance, CertificateFile, InvarianceCertificate, KappaRun};
use presentations::{ratio, KernelKind};
use serde_json::{json, Value};

use crate::error::CliError;
use crate::source::Source;
use crate::Report;

/// Revalidates a `reiter` output or a Følner certificate file.
///
/// Invariance certificates are checked against their own blocks, replayed
/// against the recorded kernel stream when one is named, and compared with
/// the exact invariance of the pushforward when a model is available.
/// Følner files need a model.
pub fn verify_document(doc: &Value, given: Option<&Source>) -> Result<Report, CliError> {
    let source = match (given, doc.get("source")) {
        (Some(s), _) => s.clone(),
        (None, Some(h)) => Source::from_header(h)?,
        (None, None) => return Err(CliError::Usage("no model given and the file names none".into())),
    };
    let alphabet = source.alphabet();
    let mut checks = Vec::new();
    if let Some(c) = doc.get("certificate") {
        let file: CertificateFile = serde_json::from_value(c.clone())?;
        let cert = InvarianceCertificate::from_file(&file, alphabet)?;
        cert.check(alphabet).map_err(|e| CliError::Soundness(e.to_string()))?;
        checks.push("blocks");
        if let Some(kind) = doc.get("kernel").and_then(Value::as_str) {
            let kind = KernelKind::parse(kind).ok_or_else(|| CliError::Usage(format!("unknown kernel {kind:?}")))?;
            let mut stream = source.kernel(kind)?;
            let mut run = KappaRun::new(cert.function.clone(), alphabet, cert.n)?;
            for _ in 0..cert.kernel_consumed {
                let eta = stream
                    .next()
                    .ok_or_else(|| CliError::Soundness("kernel stream ended before the recorded count".into()))?;
                run.step(&eta);
            }
            if run.certificate() != cert {
                return Err(CliError::Soundness("replaying the kernel gives different blocks".into()));
            }
            checks.push("replay");
        }
        if let Some(model) = source.model() {
            let bound = ratio::q(1, cert.n as i64);
            if exact_invariance(&cert.function, model.as_ref()).iter().any(|r| *r > bound) {
                return Err(CliError::Soundness("pushforward is not n-invariant".into()));
            }
            checks.push("exact");
        }
    } else if doc.get("words").is_some() {
        let model = source
            .model()
            .ok_or_else(|| CliError::Usage("Følner files need a built-in model".into()))?;
        let file: FolnerFile = serde_json::from_value(doc.clone())?;
        FolnerCertificate::from_file(&file, alphabet)?.validate(model.as_ref())?;
        checks.push("folner");
    } else {
        return Err(CliError::Usage("no certificate found in the file".into()));
    }
    let body = serde_json::to_string_pretty(&json!({ "verified": true, "checks": checks }))?;
    Ok(Report::ok(body))
}
