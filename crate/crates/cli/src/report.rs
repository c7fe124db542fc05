use std::path::Path;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Artifact {
    pub role: &'static str,
    pub path: String,
    pub sha256: String,
}

impl Artifact {
    pub fn new(role: &'static str, path: &Path, bytes: &[u8]) -> Artifact {
        Artifact { role, path: path.display().to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

#[derive(Debug, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub elapsed_ms: u64,
    pub result: Value,
}

/// One line of output per invocation.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: u64,
    pub pass: bool,
    pub checks: Vec<CheckResult>,
    pub artifacts: Vec<Artifact>,
    pub elapsed_ms: u64,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: u64) -> RunReport {
        RunReport {
            command,
            seed,
            pass: true,
            checks: Vec::new(),
            artifacts: Vec::new(),
            elapsed_ms: 0,
            started: Some(Instant::now()),
        }
    }

    /// Runs `f`, timing it, and records the outcome as a named check.
    pub fn check<T: Serialize>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> anyhow::Result<(bool, T)>,
    ) -> anyhow::Result<()> {
        let t = Instant::now();
        let (pass, value) = f()?;
        let result = serde_json::to_value(value)?;
        self.pass &= pass;
        self.checks.push(CheckResult { name: name.into(), pass, elapsed_ms: t.elapsed().as_millis() as u64, result });
        Ok(())
    }

    pub fn artifact(&mut self, a: Artifact) {
        self.artifacts.push(a);
    }

    pub fn finish(mut self) -> RunReport {
        if let Some(t) = self.started.take() {
            self.elapsed_ms = t.elapsed().as_millis() as u64;
        }
        self
    }

    pub fn summary(&self) -> String {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        let mut out = format!("ueb {}: {verdict} (seed {})\n", self.command.join(" "), self.seed);
        for c in &self.checks {
            let mark = if c.pass { "ok  " } else { "FAIL" };
            out.push_str(&format!("  {mark} {:<24} {:>8} ms\n", c.name, c.elapsed_ms));
        }
        for a in &self.artifacts {
            out.push_str(&format!("  {:<6} {} sha256:{}\n", a.role, a.path, &a.sha256[..16]));
        }
        out
    }
}
