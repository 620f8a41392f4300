//! Reports and their text and JSON renderings.
//!
//! Both renderings depend only on the report contents, and every list is in a
//! canonical order, so identical jobs produce identical bytes.

use std::fmt::{self, Write};

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub degree: usize,
    #[serde(flatten)]
    pub body: Body,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Body {
    Cohomology {
        open: Vec<String>,
        betti: Vec<usize>,
    },
    Ring {
        engine: String,
        open: Vec<String>,
        betti: Vec<usize>,
        strictly_graded_commutative: bool,
        products: Vec<ProductEntry>,
    },
    Checks {
        passed: bool,
        checks: Vec<CheckLine>,
    },
    Spectral {
        filtration: String,
        page: String,
        entries: Vec<PageLine>,
        abutment: Vec<usize>,
    },
    DirectImage {
        target: Vec<StalkLine>,
    },
}

/// `left · right = value` for basis classes `h<degree>_<index>`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

/// `dim E_r^{p,q}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PageLine {
    pub p: i64,
    pub q: i64,
    pub dim: usize,
}

/// Cohomology of the value of the direct image at one target element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalkLine {
    pub element: String,
    pub betti: Vec<usize>,
}

pub fn class_name(degree: usize, index: usize) -> String {
    format!("h{degree}_{index}")
}

/// `c_0 h_0 + c_1 h_1 + …` with the coefficients already rendered; `0` when empty.
pub fn combination(degree: usize, terms: &[(usize, String)]) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        let name = class_name(degree, *i);
        let (neg, mag) = match c.strip_prefix('-') {
            Some(m) => (true, m),
            None => (false, c.as_str()),
        };
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != "1" {
            let _ = write!(out, "{mag}*");
        }
        out.push_str(&name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn numbers(v: &[usize]) -> String {
    v.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// Whether every check in the report passed (always true for non-check reports).
    pub fn passed(&self) -> bool {
        match &self.body {
            Body::Checks { passed, .. } => *passed,
            _ => true,
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over {}, degrees 0..={}", self.command, self.field, self.degree)?;
        match &self.body {
            Body::Cohomology { open, betti } => {
                writeln!(f, "open: {}", open.join(" "))?;
                for (n, b) in betti.iter().enumerate() {
                    writeln!(f, "H^{n} = {b}")?;
                }
            }
            Body::Ring { engine, open, betti, strictly_graded_commutative, products } => {
                writeln!(f, "engine: {engine}")?;
                writeln!(f, "open: {}", open.join(" "))?;
                writeln!(f, "betti: {}", numbers(betti))?;
                writeln!(f, "strictly graded-commutative: {}", if *strictly_graded_commutative { "yes" } else { "no" })?;
                for p in products {
                    writeln!(f, "{} * {} = {}", p.left, p.right, p.value)?;
                }
            }
            Body::Checks { passed, checks } => {
                for c in checks {
                    match &c.witness {
                        Some(w) => writeln!(f, "[{}] {}: {w}", if c.passed { "PASS" } else { "FAIL" }, c.name)?,
                        None => writeln!(f, "[{}] {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?,
                    }
                }
                writeln!(f, "{}", if *passed { "all checks passed" } else { "some checks failed" })?;
            }
            Body::Spectral { filtration, page, entries, abutment } => {
                writeln!(f, "filtration: {filtration}")?;
                writeln!(f, "page: E_{page}")?;
                for e in entries {
                    writeln!(f, "E^{{{},{}}} = {}", e.p, e.q, e.dim)?;
                }
                writeln!(f, "abutment: {}", numbers(abutment))?;
            }
            Body::DirectImage { target } => {
                for s in target {
                    writeln!(f, "{}: {}", s.element, numbers(&s.betti))?;
                }
            }
        }
        Ok(())
    }
}
