use std::fmt;

use serde::Serialize;

/// One checked inequality or identity. Values are exact, written as
/// `p/q` or `p/2^e`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub tag: String,
    pub subject: String,
    pub lhs: String,
    pub relation: &'static str,
    pub rhs: String,
    pub pass: bool,
}

impl Check {
    pub fn new(
        tag: impl Into<String>,
        subject: impl Into<String>,
        lhs: impl ToString,
        relation: &'static str,
        rhs: impl ToString,
        pass: bool,
    ) -> Self {
        Check {
            tag: tag.into(),
            subject: subject.into(),
            lhs: lhs.to_string(),
            relation,
            rhs: rhs.to_string(),
            pass,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}]: {} {} {}",
            if self.pass { "ok  " } else { "FAIL" },
            self.tag,
            self.subject,
            self.lhs,
            self.relation,
            self.rhs
        )
    }
}

/// A list of checks; passes iff every check does.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Summarizes a family of identical checks: a single passing record with
/// the count, or the first few failing witnesses.
pub(crate) struct Tally {
    tag: String,
    relation: &'static str,
    checked: usize,
    failures: Vec<Check>,
}

const WITNESSES: usize = 10;

impl Tally {
    pub(crate) fn new(tag: impl Into<String>, relation: &'static str) -> Self {
        Tally {
            tag: tag.into(),
            relation,
            checked: 0,
            failures: Vec::new(),
        }
    }

    pub(crate) fn record(&mut self, pass: bool, subject: impl FnOnce() -> (String, String, String)) {
        self.checked += 1;
        if !pass && self.failures.len() < WITNESSES {
            let (s, l, r) = subject();
            self.failures.push(Check::new(self.tag.clone(), s, l, self.relation, r, false));
        }
    }

    pub(crate) fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        let room = WITNESSES.saturating_sub(self.failures.len());
        self.failures.extend(other.failures.into_iter().take(room));
    }

    pub(crate) fn finish(self, report: &mut Report, scope: &str) {
        if self.failures.is_empty() {
            report.push(Check::new(
                self.tag,
                scope,
                format!("{} cases", self.checked),
                "all",
                "hold",
                true,
            ));
        } else {
            report.checks.extend(self.failures);
        }
    }
}

/// Labels carried by report records, naming the checked relation.
pub mod tag {
    pub const WINDOW_GAP: &str = "eq:14";
    pub const WINDOW_DISJOINT: &str = "eq:68";
    pub const LAYOUT: &str = "eq:56";
    pub const MEASURE_LAW: &str = "eq:23";
    pub const SANDWICH: &str = "eq:30";
    pub const SAME_INDEX: &str = "eq:28";
    pub const CROSS_TERM: &str = "eq:26";
    pub const TOWER_MEMBER: &str = "(m)(1)";
    pub const TOWER_CONTAINMENT: &str = "(m)(2)";
    pub const TOWER_CUBE_ROOT: &str = "(m)(3)";
    pub const TOWER_SLACK: &str = "(m)(4)";
    pub const EXTENDS_BASE: &str = "eq:41";
    pub const EXTENDED_GAP: &str = "eq:62";
    pub const REP_DISJOINT: &str = "l-3(a)";
    pub const REP_COORDS: &str = "l-3(b)";
    pub const REP_ERROR_A: &str = "l-3(c)";
    pub const REP_ERROR_B: &str = "l-3(d)";
    pub const REP_SLACK: &str = "eq:70";
    pub const TRUNCATED_DISAGREEMENT: &str = "eq:9";
    pub const INSTANCE: &str = "eq:52";
    pub const PAIR: &str = "eq:54";
    pub const CROSS_BOUND: &str = "eq:12";
    pub const TAIL: &str = "eq:21";
    pub const LATE_TAIL: &str = "eq:15";
    pub const CONDITION_FIT: &str = "eq:13";
    pub const MERGED_CONDITION: &str = "eq:38";
    pub const DECIDED_RANGE: &str = "c-1";
    pub const MIDDLE_RANGE: &str = "c-2";
    pub const FORWARD_BAD: &str = "eq:42";
    pub const BACKWARD_BAD: &str = "eq:45";
    pub const RESIDUAL: &str = "eq:18";
}
