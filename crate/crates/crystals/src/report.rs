//! Machine-readable claim reports for command runs.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

/// One checked claim: `pass` is true exactly when `observed` equals
/// `expected` (all comparisons in this crate are exact).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub expected: String,
    pub observed: String,
    pub pass: bool,
    pub millis: u128,
}

/// Stable-schema report: tool version, digest of the input description,
/// the seed in effect, and the ordered claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub claims: Vec<Claim>,
}

impl Report {
    pub fn new(input_description: &str, seed: Option<u64>) -> Self {
        Report {
            tool: format!("crystals {}", env!("CARGO_PKG_VERSION")),
            digest: digest_hex(input_description.as_bytes()),
            seed,
            claims: Vec::new(),
        }
    }

    /// Records a claim, timing nothing; use [`Report::check`] to time.
    pub fn record(&mut self, name: &str, expected: impl ToString, observed: impl ToString, millis: u128) {
        let expected = expected.to_string();
        let observed = observed.to_string();
        self.claims.push(Claim {
            name: name.to_string(),
            pass: expected == observed,
            expected,
            observed,
            millis,
        });
    }

    /// Runs a closure, records its observed value against the expectation,
    /// and reports whether this claim passed.
    pub fn check<T: ToString>(
        &mut self,
        name: &str,
        expected: impl ToString,
        observe: impl FnOnce() -> crate::error::Result<T>,
    ) -> crate::error::Result<bool> {
        let start = std::time::Instant::now();
        let observed = observe()?;
        self.record(name, expected, observed, start.elapsed().as_millis());
        Ok(self.claims.last().expect("just pushed").pass)
    }

    pub fn all_pass(&self) -> bool {
        self.claims.iter().all(|c| c.pass)
    }
}

pub fn digest_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    hex_string(&hasher.finalize())
}

fn hex_string(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}
