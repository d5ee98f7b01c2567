//! Verification reports shared by every identity checker.

use std::fmt;

use crate::poly::LaurentPolynomial;

/// Enough data to reproduce a failure: the host map in file format and the
/// subgraph as a bitmask over the marked edges (bit `i` = `i`-th marked edge).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub host: String,
    pub mask: u64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub name: String,
    pub passed: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PolynomialReport {
    pub input: String,
    pub polynomials: Vec<(String, LaurentPolynomial)>,
    pub verdicts: Vec<Verdict>,
}

impl PolynomialReport {
    pub fn new(input: impl Into<String>) -> Self {
        Self { input: input.into(), ..Default::default() }
    }

    pub fn polynomial(&mut self, name: impl Into<String>, p: LaurentPolynomial) {
        self.polynomials.push((name.into(), p));
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.into(), passed: true, witness: None });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Witness) {
        self.verdicts.push(Verdict { name: name.into(), passed: false, witness: Some(witness) });
    }

    /// Records a pass, or a fail whose witness is produced lazily.
    pub fn check(&mut self, name: impl Into<String>, ok: bool, witness: impl FnOnce() -> Witness) {
        if ok {
            self.pass(name);
        } else {
            self.fail(name, witness());
        }
    }

    pub fn merge(&mut self, other: PolynomialReport) {
        self.polynomials.extend(other.polynomials);
        self.verdicts.extend(other.verdicts);
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| !v.passed)
    }
}

impl fmt::Display for PolynomialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, p) in &self.polynomials {
            writeln!(f, "{name} = {p}")?;
        }
        for v in &self.verdicts {
            if v.passed {
                writeln!(f, "PASS {}", v.name)?;
            } else {
                writeln!(f, "FAIL {}", v.name)?;
                if let Some(w) = &v.witness {
                    writeln!(f, "  mask: {:#b}", w.mask)?;
                    if !w.detail.is_empty() {
                        writeln!(f, "  {}", w.detail)?;
                    }
                    for line in w.host.lines() {
                        writeln!(f, "  | {line}")?;
                    }
                }
            }
        }
        write!(f, "{}", if self.all_passed() { "PASS" } else { "FAIL" })
    }
}
