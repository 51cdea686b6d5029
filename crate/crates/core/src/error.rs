use serde::Serialize;
use thiserror::Error;

use crate::complex::{Face, Label};

/// Every failure the library can report. The CLI maps these one-to-one onto
/// exit codes and JSON error objects, so the set is closed.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize)]
#[serde(tag = "error")]
pub enum Error {
    #[error("vertex {label} appears more than once in a face")]
    DuplicateVertexInFace { label: Label },
    #[error("vertex {label} is not in the vertex set")]
    VertexOutOfRange { label: Label },
    #[error("vertex labels must be positive integers")]
    NonPositiveLabel,
    #[error("{count} vertices exceeds the limit of {limit}")]
    TooManyVertices { count: usize, limit: usize },
    #[error("face {face} is not in the complex")]
    FaceNotInComplex { face: Face },
    #[error("vertex sets overlap in {shared:?}")]
    VertexSetsOverlap { shared: Vec<Label> },
    #[error("skeleton dimension {k} out of range for {n} vertices")]
    KOutOfRange { k: i64, n: usize },
    #[error("no multiplicity given for vertex {vertex}")]
    MissingMultiplicity { vertex: Label },
    #[error("multiplicity for vertex {vertex} must be positive")]
    NonpositiveMultiplicity { vertex: Label },
    #[error("the two complexes do not intersect exactly in the simplex {tau}")]
    OverlapNotExactlyTau { tau: Face },
    #[error("shared vertices {shared:?} differ from the gluing face {tau}")]
    OverlapNotTau { tau: Face, shared: Vec<Label> },
    #[error("not shifted: removing {removed} from {face} and inserting {inserted} leaves the complex")]
    NotShifted { face: Face, removed: Label, inserted: Label },
    #[error("no vertex order makes the complex shifted")]
    NoShiftedOrder,
    #[error("facet {facet} of step face {face} is not in the link of the minimal vertex")]
    BoundaryNotInLink { face: Face, facet: Face },
    #[error("invalid adjoin step: {reason}")]
    InvalidStep { reason: String },
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("index sets overlap in {shared:?}")]
    IndexSetsOverlap { shared: Vec<Label> },
    #[error("summand {summand} is not a suspension")]
    NotASuspension { summand: String },
    #[error("labels {shared:?} occur on both sides of an expansion")]
    OverlappingIndices { shared: Vec<Label> },
    #[error("product factor is empty")]
    EmptyFactor,
    #[error("{missing} is not available to subtract")]
    NotASubMultiset { missing: String },
    #[error("no substitution given for label {label}")]
    MissingSubstitution { label: Label },
    #[error("replacement label {label} is used more than once")]
    OverlappingReplacementLabels { label: Label },
    #[error("vertex {vertex} is not a face of the complex")]
    MissingSingleton { vertex: Label },
    #[error("complex has no vertices")]
    VoidComplex,
    #[error("torsion in the homology of full subcomplex {subset:?} of a shifted complex")]
    UnexpectedTorsion { subset: Vec<Label> },
    #[error("no sphere dimension given for label {label}")]
    MissingDimension { label: Label },
    #[error("sphere dimension for label {label} must be at least 1")]
    InvalidDimension { label: Label },
    #[error("parse error: {message}")]
    #[serde(rename = "ParseError")]
    Parse { message: String },
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DuplicateVertexInFace { .. } => "DuplicateVertexInFace",
            Error::VertexOutOfRange { .. } => "VertexOutOfRange",
            Error::NonPositiveLabel => "NonPositiveLabel",
            Error::TooManyVertices { .. } => "TooManyVertices",
            Error::FaceNotInComplex { .. } => "FaceNotInComplex",
            Error::VertexSetsOverlap { .. } => "VertexSetsOverlap",
            Error::KOutOfRange { .. } => "KOutOfRange",
            Error::MissingMultiplicity { .. } => "MissingMultiplicity",
            Error::NonpositiveMultiplicity { .. } => "NonpositiveMultiplicity",
            Error::OverlapNotExactlyTau { .. } => "OverlapNotExactlyTau",
            Error::OverlapNotTau { .. } => "OverlapNotTau",
            Error::NotShifted { .. } => "NotShifted",
            Error::NoShiftedOrder => "NoShiftedOrder",
            Error::BoundaryNotInLink { .. } => "BoundaryNotInLink",
            Error::InvalidStep { .. } => "InvalidStep",
            Error::EmptyIndexSet => "EmptyIndexSet",
            Error::IndexSetsOverlap { .. } => "IndexSetsOverlap",
            Error::NotASuspension { .. } => "NotASuspension",
            Error::OverlappingIndices { .. } => "OverlappingIndices",
            Error::EmptyFactor => "EmptyFactor",
            Error::NotASubMultiset { .. } => "NotASubMultiset",
            Error::MissingSubstitution { .. } => "MissingSubstitution",
            Error::OverlappingReplacementLabels { .. } => "OverlappingReplacementLabels",
            Error::MissingSingleton { .. } => "MissingSingleton",
            Error::VoidComplex => "VoidComplex",
            Error::UnexpectedTorsion { .. } => "UnexpectedTorsion",
            Error::MissingDimension { .. } => "MissingDimension",
            Error::InvalidDimension { .. } => "InvalidDimension",
            Error::Parse { .. } => "ParseError",
        }
    }

    pub fn is_parse_error(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
