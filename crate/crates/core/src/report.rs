use serde::Serialize;

use crate::partition::Partition;

/// Outcome of one verified instance of an identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub identity: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<Partition>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CaseReport {
    pub fn new(identity: impl Into<String>) -> Self {
        CaseReport {
            identity: identity.into(),
            lambda: None,
            mu: None,
            nu: None,
            d: None,
            m: None,
            n: None,
            pass: true,
            witness: None,
        }
    }

    pub fn lambda(mut self, p: &Partition) -> Self {
        self.lambda = Some(p.clone());
        self
    }

    pub fn mu(mut self, p: &Partition) -> Self {
        self.mu = Some(p.clone());
        self
    }

    pub fn nu(mut self, p: &Partition) -> Self {
        self.nu = Some(p.clone());
        self
    }

    pub fn d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    /// Records the outcome; a failing case keeps the witness text.
    pub fn outcome(mut self, pass: bool, witness: impl FnOnce() -> String) -> Self {
        self.pass = pass;
        if !pass {
            self.witness = Some(witness());
        }
        self
    }

    /// A case whose computation itself errored.
    pub fn errored(mut self, err: impl std::fmt::Display) -> Self {
        self.pass = false;
        self.witness = Some(format!("error: {err}"));
        self
    }
}
