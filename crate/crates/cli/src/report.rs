//! One report per invocation, rendered as text or as a JSON document with
//! the same sections.

use serde::Serialize;
use serde_json::Value;
use sepalg::report::Clause;
use sepalg::{Algebra, ElemSet};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Capacity,
    PropertyFailure,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::PropertyFailure => 1,
            Status::Capacity => 3,
        }
    }
}

#[derive(Serialize)]
pub struct Fact {
    pub key: String,
    #[serde(skip)]
    text: String,
    pub value: Value,
}

#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl From<&Clause> for Check {
    fn from(c: &Clause) -> Self {
        Self { name: c.name.to_string(), holds: c.holds, detail: c.detail.clone() }
    }
}

#[derive(Serialize)]
pub struct Section {
    pub title: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<Fact>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Self {
        Self { title: title.into(), facts: Vec::new(), checks: Vec::new() }
    }

    pub fn fact(&mut self, key: impl Into<String>, text: impl Into<String>, value: Value) -> &mut Self {
        self.facts.push(Fact { key: key.into(), text: text.into(), value });
        self
    }

    pub fn text(&mut self, key: impl Into<String>, text: impl Into<String>) -> &mut Self {
        let text = text.into();
        self.fact(key, text.clone(), Value::String(text))
    }

    pub fn number(&mut self, key: impl Into<String>, n: usize) -> &mut Self {
        self.fact(key, n.to_string(), Value::from(n))
    }

    pub fn flag(&mut self, key: impl Into<String>, b: bool) -> &mut Self {
        self.fact(key, if b { "yes" } else { "no" }, Value::Bool(b))
    }

    pub fn set(&mut self, key: impl Into<String>, alg: &Algebra, s: ElemSet) -> &mut Self {
        self.fact(key, alg.format_set(s), names_value(alg, s))
    }

    pub fn clause(&mut self, c: &Clause) -> &mut Self {
        self.checks.push(c.into());
        self
    }

    pub fn clauses<'a>(&mut self, cs: impl IntoIterator<Item = &'a Clause>) -> &mut Self {
        for c in cs {
            self.clause(c);
        }
        self
    }

    pub fn check(&mut self, name: &str, holds: bool, detail: Option<String>) -> &mut Self {
        self.checks.push(Check { name: name.to_string(), holds, detail });
        self
    }

    fn failed(&self) -> bool {
        self.checks.iter().any(|c| !c.holds)
    }
}

pub fn names_value(alg: &Algebra, s: ElemSet) -> Value {
    Value::from(s.iter().map(|i| alg.carrier().name(i).to_string()).collect::<Vec<_>>())
}

#[derive(Serialize)]
pub struct Report {
    pub command: &'static str,
    pub file: String,
    pub seed: u64,
    pub status: Status,
    pub sections: Vec<Section>,
    #[serde(skip)]
    capacity_hit: bool,
}

impl Report {
    pub fn new(command: &'static str, file: String, seed: u64) -> Self {
        Self { command, file, seed, status: Status::Ok, sections: Vec::new(), capacity_hit: false }
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    /// Marks a check that was skipped because an enumeration cap was reached.
    pub fn capacity_skipped(&mut self) {
        self.capacity_hit = true;
    }

    /// Property failures take precedence over capacity skips.
    pub fn finish(mut self) -> Self {
        self.status = if self.sections.iter().any(Section::failed) {
            Status::PropertyFailure
        } else if self.capacity_hit {
            Status::Capacity
        } else {
            Status::Ok
        };
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("sepalg {}: {}\n", self.command, self.file);
        for s in &self.sections {
            out.push_str(&format!("\n== {} ==\n", s.title));
            for f in &s.facts {
                out.push_str(&format!("  {}: {}\n", f.key, f.text));
            }
            for c in &s.checks {
                let verdict = if c.holds { "pass" } else { "FAIL" };
                match &c.detail {
                    Some(d) => out.push_str(&format!("  {verdict}  {} ({d})\n", c.name)),
                    None => out.push_str(&format!("  {verdict}  {}\n", c.name)),
                }
            }
        }
        let status = match self.status {
            Status::Ok => "ok",
            Status::Capacity => "capacity exceeded",
            Status::PropertyFailure => "property failure",
        };
        out.push_str(&format!("\nstatus: {status}\n"));
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}
