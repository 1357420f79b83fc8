//! Structured pass/fail records shared by every diagnostic.

use serde::Serialize;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_ok(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Status::Pass
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub context: String,
    pub expression: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub check: String,
    pub status: Status,
    pub residuals: Vec<Residual>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(check: impl Into<String>) -> Self {
        Report {
            check: check.into(),
            status: Status::Pass,
            residuals: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn fail(&mut self, context: impl Into<String>, expression: impl Into<String>) {
        self.status = Status::Fail;
        self.residuals.push(Residual {
            context: context.into(),
            expression: expression.into(),
        });
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn passed(&self) -> bool {
        self.status.is_pass()
    }

    /// Folds another report's residuals into this one.
    pub fn absorb(&mut self, other: Report) {
        if !other.passed() {
            self.status = Status::Fail;
        }
        for r in other.residuals {
            self.residuals.push(Residual {
                context: format!("{}: {}", other.check, r.context),
                expression: r.expression,
            });
        }
        self.notes.extend(other.notes);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}: {}\n", self.check, self.status);
        for n in &self.notes {
            s.push_str(&format!("  note: {n}\n"));
        }
        for r in &self.residuals {
            s.push_str(&format!("  {} => {}\n", r.context, r.expression));
        }
        s
    }
}
