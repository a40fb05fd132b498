use std::io::{self, Write};

use ncbinom::report::{Status, VerificationReport};
use serde::Serialize;

use crate::{Format, EXIT_FAIL, EXIT_PASS};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Summary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = Summary { total: reports.len(), ..Summary::default() };
        for r in reports {
            match r.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            EXIT_PASS
        } else {
            EXIT_FAIL
        }
    }
}

#[derive(Serialize)]
struct SummaryLine<'a> {
    summary: &'a Summary,
}

fn params_text(r: &VerificationReport) -> String {
    r.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ")
}

/// Writes every report, then the summary, and returns the exit code.
pub fn emit(reports: &[VerificationReport], format: Format, out: &mut dyn Write) -> io::Result<i32> {
    let summary = Summary::of(reports);
    match format {
        Format::Json => {
            for r in reports {
                serde_json::to_writer(&mut *out, r)?;
                writeln!(out)?;
            }
            serde_json::to_writer(&mut *out, &SummaryLine { summary: &summary })?;
            writeln!(out)?;
        }
        Format::Text => {
            for r in reports {
                let tag = match r.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Skipped => "SKIP",
                };
                writeln!(out, "{tag} {} {}", r.suite, params_text(r))?;
                if r.status == Status::Fail {
                    writeln!(out, "    lhs:      {}", r.lhs)?;
                    writeln!(out, "    rhs:      {}", r.rhs)?;
                    writeln!(out, "    residual: {}", r.residual)?;
                }
            }
            writeln!(
                out,
                "{} cases: {} passed, {} failed, {} skipped",
                summary.total, summary.passed, summary.failed, summary.skipped
            )?;
        }
    }
    Ok(summary.exit_code())
}
