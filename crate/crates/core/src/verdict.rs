//! Three-valued answers for universally quantified conditions.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Proven,
    Refuted,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Proven => "proven",
            Status::Refuted => "refuted",
            Status::Unknown => "unknown",
        })
    }
}

/// A concrete object that refutes a condition; `data` holds a re-checkable serialization.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub description: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// The criterion used, or a summary of the evidence examined.
    pub evidence: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn proven(evidence: impl Into<String>) -> Self {
        Verdict { status: Status::Proven, evidence: evidence.into(), witness: None }
    }

    pub fn refuted(evidence: impl Into<String>, witness: Witness) -> Self {
        Verdict { status: Status::Refuted, evidence: evidence.into(), witness: Some(witness) }
    }

    pub fn unknown(evidence: impl Into<String>) -> Self {
        Verdict { status: Status::Unknown, evidence: evidence.into(), witness: None }
    }

    pub fn from_bool(holds: bool, evidence: impl Into<String>, witness: impl FnOnce() -> Witness) -> Self {
        if holds {
            Self::proven(evidence)
        } else {
            Self::refuted(evidence, witness())
        }
    }

    pub fn is_proven(&self) -> bool {
        self.status == Status::Proven
    }

    pub fn is_refuted(&self) -> bool {
        self.status == Status::Refuted
    }

    /// Conjunction: the first refutation wins, otherwise proven only if every part is.
    pub fn all(parts: impl IntoIterator<Item = Verdict>) -> Self {
        let parts: Vec<Verdict> = parts.into_iter().collect();
        if let Some(r) = parts.iter().find(|v| v.is_refuted()) {
            return r.clone();
        }
        let evidence = parts.iter().map(|v| v.evidence.as_str()).collect::<Vec<_>>().join("; ");
        if parts.iter().all(|v| v.is_proven()) {
            Self::proven(evidence)
        } else {
            Self::unknown(evidence)
        }
    }
}

impl Witness {
    pub fn new(description: impl Into<String>) -> Self {
        Witness { description: description.into(), data: None }
    }

    pub fn with_data(description: impl Into<String>, data: serde_json::Value) -> Self {
        Witness { description: description.into(), data: Some(data) }
    }
}
