use thiserror::Error;

use crate::band::BandKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported field size q = {0}; expected a prime power at most 9")]
    UnsupportedField(u32),
    #[error("unknown band kind `{0}`")]
    UnknownBand(String),
    #[error("`{element}` is not an element of {band}")]
    NotInBand { element: String, band: String },
    #[error("cannot parse `{0}` as a band element")]
    ParseElement(String),
    #[error("{0} is not enumerable")]
    InfiniteBand(BandKind),
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("missing coordinate for subset {0}")]
    MissingCoordinate(String),
    #[error("rank order violated: {0} > {1}")]
    RankOrder(usize, usize),
    #[error("type {sub:?} is not a subtype of {full:?}")]
    NotSubtype { sub: Vec<usize>, full: Vec<usize> },
    #[error("map is not a band morphism: {0}")]
    InvalidMorphism(String),
    #[error("empty basis family")]
    EmptyFamily,
    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(usize, usize),
    #[error("crowd is not a group: {reason} at {witness:?}")]
    ConditionsFail { reason: String, witness: Vec<usize> },
    #[error("activity is not a group action: {reason} at {witness:?}")]
    NotAGroupAction { reason: String, witness: Vec<String> },
    #[error("not a generalized polygon: girth {girth:?}, diameter {diameter:?}")]
    NotAPolygon {
        girth: Option<usize>,
        diameter: Option<usize>,
    },
    #[error("not an oval: {0}")]
    InvalidOval(String),
    #[error("class {0} is empty")]
    EmptyClass(u8),
    #[error("line {0} meets three classes")]
    LineMeetsThreeClasses(usize),
    #[error("edge {0}{1} is the image of no line")]
    EdgeUncovered(u8, u8),
    #[error("invalid structure: {0}")]
    InvalidStructure(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
