use homcat::grphom::BarConfig;
use serde_json::{json, Map, Value};

/// Output of one command. Text mode prints `lines`; the JSON form adds the
/// command echo, input digests and the configuration.
pub struct Report {
    pub lines: Vec<String>,
    pub results: Map<String, Value>,
    pub verified: bool,
    pub inputs: Vec<(String, u64)>,
    pub config: BarConfig,
}

impl Default for Report {
    fn default() -> Self {
        Report { lines: Vec::new(), results: Map::new(), verified: true, inputs: Vec::new(), config: BarConfig::default() }
    }
}

impl Report {
    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.results.insert(key.to_string(), v.into());
    }

    /// Records a boolean check; a false one makes the command exit with 5.
    pub fn check(&mut self, key: &str, ok: bool) -> bool {
        self.set(key, ok);
        self.verified &= ok;
        ok
    }

    pub fn to_json(&self, argv: &[String]) -> String {
        let inputs: Vec<Value> = self.inputs.iter().map(|(p, h)| json!({ "path": p, "fnv1a64": format!("{h:016x}") })).collect();
        let v = json!({
            "command": argv,
            "inputs": inputs,
            "config": { "max_tuples": self.config.max_tuples, "max_entry_bits": self.config.max_entry_bits },
            "results": self.results,
            "lines": self.lines,
            "verified": self.verified,
        });
        serde_json::to_string_pretty(&v).expect("report serializes")
    }
}
