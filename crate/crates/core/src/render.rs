//! Incidence diagrams: one text row per label, one column per atom.
//!
//! ```text
//!       0123
//! tumor ××..
//! cold  .××.
//! ```
//!
//! Above the rows sit the atom indices, one digit per line when there are more
//! than ten atoms. Markers:
//!
//! | view | cell                         | unicode | ascii |
//! |------|------------------------------|---------|-------|
//! | H    | covered by the hypothesis    | `×`     | `x`   |
//! | R    | covered by reality           | `○`     | `o`   |
//! | M    | agreement, both covering     | `⊗`     | `@`   |
//! | M    | agreement, neither covering  | `#`     | `#`   |
//! | any  | uncovered / disagreement     | `.`     | `.`   |

use std::fmt::Write as _;
use std::str::FromStr;

use crate::coevent::CoEvent;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Hypotheses,
    Reality,
    Match,
}

impl FromStr for View {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "H" | "h" => Ok(View::Hypotheses),
            "R" | "r" => Ok(View::Reality),
            "M" | "m" => Ok(View::Match),
            other => Err(format!("unknown view {other:?}; expected H, R or M")),
        }
    }
}

/// How hypothesis and reality relate on one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    HypothesisOnly,
    RealityOnly,
    Both,
    Neither,
}

impl Cell {
    pub fn classify(h: &CoEvent, r: &CoEvent, label: usize, atom: usize) -> Cell {
        match (h.contains(label, atom), r.contains(label, atom)) {
            (true, true) => Cell::Both,
            (true, false) => Cell::HypothesisOnly,
            (false, true) => Cell::RealityOnly,
            (false, false) => Cell::Neither,
        }
    }

    /// The marker this cell shows in `view`.
    pub fn marker(self, view: View, ascii: bool) -> char {
        let covered_h = matches!(self, Cell::Both | Cell::HypothesisOnly);
        let covered_r = matches!(self, Cell::Both | Cell::RealityOnly);
        match view {
            View::Hypotheses if covered_h => pick('×', 'x', ascii),
            View::Reality if covered_r => pick('○', 'o', ascii),
            View::Match if self == Cell::Both => pick('⊗', '@', ascii),
            View::Match if self == Cell::Neither => '#',
            _ => '.',
        }
    }
}

fn pick(unicode: char, plain: char, ascii: bool) -> char {
    if ascii {
        plain
    } else {
        unicode
    }
}

/// Draw `view` of the pair `(H, R)`; every line ends with a newline.
pub fn render_diagram(h: &CoEvent, r: &CoEvent, view: View, ascii: bool) -> Result<String> {
    h.check_compatible(r)?;
    let n = h.n_atoms();
    let width = h.labels().iter().map(|l| l.as_str().chars().count()).max().unwrap_or(0);
    let digits = (n - 1).to_string().len();
    let mut out = String::new();
    for d in 0..digits {
        out.push_str(&" ".repeat(width + 1));
        for atom in 0..n {
            let text = format!("{atom:>digits$}");
            out.push(text.as_bytes()[d] as char);
        }
        out.push('\n');
    }
    for (x, label) in h.labels().iter().enumerate() {
        let pad = width - label.as_str().chars().count();
        let _ = write!(out, "{label}{} ", " ".repeat(pad));
        for atom in 0..n {
            out.push(Cell::classify(h, r, x, atom).marker(view, ascii));
        }
        out.push('\n');
    }
    Ok(out)
}
