//! Versioned JSON documents for every artifact the pipeline produces.

use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::divisor_calculus::{ConfigSpace, MetricGraph, PLFunc};
use crate::error::{Error, Result};
use crate::lifting::LiftReport;
use crate::stable_intersection::IntersectionComplex;
use crate::tropical_curve::TropCurve;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Body {
    TropCurve {
        /// Canonical text of the source polynomial.
        polynomial: String,
        curve: TropCurve,
    },
    Divisor {
        divisor: Divisor,
    },
    PlFunc {
        graph: MetricGraph,
        function: Option<PLFunc>,
    },
    IntersectionComplex {
        complex: IntersectionComplex,
    },
    LiftReport {
        report: Box<LiftReport>,
    },
    ConfigCells {
        space: ConfigSpace,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Artifact {
    pub schema_version: u32,
    #[serde(flatten)]
    pub body: Body,
}

impl Artifact {
    pub fn new(body: Body) -> Self {
        Artifact { schema_version: SCHEMA_VERSION, body }
    }

    pub fn kind(&self) -> &'static str {
        match self.body {
            Body::TropCurve { .. } => "trop_curve",
            Body::Divisor { .. } => "divisor",
            Body::PlFunc { .. } => "pl_func",
            Body::IntersectionComplex { .. } => "intersection_complex",
            Body::LiftReport { .. } => "lift_report",
            Body::ConfigCells { .. } => "config_cells",
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("artifacts serialise");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Artifact> {
        let a: Artifact = serde_json::from_str(text)?;
        if a.schema_version != SCHEMA_VERSION {
            return Err(Error::Invalid(format!(
                "schema_version {} is not supported (expected {SCHEMA_VERSION})",
                a.schema_version
            )));
        }
        Ok(a)
    }
}
