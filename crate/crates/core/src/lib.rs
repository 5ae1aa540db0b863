//! Co~event calculus over finite bra-ket spaces.
//!
//! Hypotheses and reality are both co~events: one ket-event per label over a
//! shared, weighted atom space. Their match `M = (H Δ R)^c` drives a
//! Bayes-style update of label believabilities, and iterating that update
//! concentrates belief on the labels that match reality best.
//!
//! ```
//! use std::sync::Arc;
//! use coevent::{bayes, rational::ratio, AtomSpace, BelievabilityDistribution, CoEvent};
//!
//! let space = Arc::new(AtomSpace::uniform(5).unwrap());
//! let h = CoEvent::from_rows(Arc::clone(&space), [("x", vec![0, 1]), ("y", vec![2, 3, 4])]).unwrap();
//! let r = CoEvent::from_rows(Arc::clone(&space), [("x", vec![0]), ("y", vec![2, 3, 4])]).unwrap();
//! let prior = BelievabilityDistribution::uniform(h.labels().to_vec()).unwrap();
//! let report = bayes::bayes_report(&h, &r, &prior).unwrap();
//! assert_eq!(report.mu.values()[0], ratio(4, 5));
//! assert_eq!(report.posterior.values()[1], ratio(5, 9));
//! ```

pub mod bayes;
pub mod coevent;
pub mod error;
pub mod labelling;
pub mod measures;
pub mod rational;
pub mod recurrence;
pub mod render;
pub mod report;
pub mod scenario;
pub mod space;

pub use crate::coevent::{complement, match_coevent, symmetric_difference, CoEvent};
pub use crate::error::{Error, ParseRationalError, Result};
pub use crate::bayes::{bayes_report, bra_posterior, mu_vector, BayesReport, MatchVector};
pub use crate::labelling::{labelling_of, minkowski_intersect, Labelling, Terrace};
pub use crate::measures::{certainty_of, BelievabilityDistribution, CertaintySpace, CertaintyTable};
pub use crate::rational::Rational;
pub use crate::recurrence::{limit_believability, run, IterationTrace, LimitResult, RunOptions};
pub use crate::render::{render_diagram, View};
pub use crate::report::{run_pipeline, write_report, Format, PipelineOptions, Report, Variant};
pub use crate::scenario::{parse_scenario, Scenario, ScenarioError};
pub use crate::space::{labels, AtomSpace, KetEvent, Label, LabelSet};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    struct Readme;
    #[doc = include_str!("../../../book/src/intro.md")]
    struct Intro;
    #[doc = include_str!("../../../book/src/coevents.md")]
    struct CoEvents;
    #[doc = include_str!("../../../book/src/measures.md")]
    struct Measures;
    #[doc = include_str!("../../../book/src/bayes.md")]
    struct Bayes;
    #[doc = include_str!("../../../book/src/recurrence.md")]
    struct Recurrence;
    #[doc = include_str!("../../../book/src/scenarios.md")]
    struct Scenarios;
}
