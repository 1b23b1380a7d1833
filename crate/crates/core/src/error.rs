use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse group generator `{0}` (expected r:a,b,c)")]
    Syntax(String),
    #[error("generator {0} is not in SL(3): weights do not sum to 0 mod r")]
    NotInSL3(String),
    #[error("no generators given")]
    EmptyGenerators,
    #[error("{0} is not a point of the weight lattice")]
    NotInLattice(String),
    #[error("cone rays are linearly dependent")]
    DegenerateCone,
    #[error("G-graph search found {found} graphs, expected {expected}")]
    SearchExhausted { found: usize, expected: usize },
    #[error("G-graph cone is not a full-dimensional simplicial cone: {0}")]
    LowerDimensionalCone(String),
    #[error("fan validation failed: {0}")]
    FanValidationFailed(String),
    #[error("cone is not a maximal cone of the fan")]
    UnknownCone,
    #[error("charts disagree on q for character {character} at ray {ray}")]
    InconsistentCharts { character: u32, ray: usize },
    #[error("edge {0} lies on the boundary of the junior simplex")]
    BoundaryEdge(usize),
    #[error("vertex {0} matches no case of the trichotomy")]
    UnclassifiableVertex(String),
    #[error("Reid's recipe inconsistency: {0}")]
    RecipeInconsistency(String),
    #[error("no orientation of the three carving ratios multiplies to a power of xyz")]
    NoOrientationWorks,
    #[error("arrow multiplicity {value} outside {{0,1}} (character {character}, ray {ray})")]
    MultiplicityOutOfRange { character: u32, ray: usize, value: String },
    #[error("spoke pattern {0} is not one of the 18 vertex classes")]
    InvalidSpokePattern(String),
    #[error("sink-source graph shape not recognized: {0}")]
    ShapeUnrecognized(String),
    #[error("walk did not terminate within |G| steps: {0}")]
    WalkDiverged(String),
    #[error("the trivial group has no exceptional locus")]
    NoExceptionalLocus,
    #[error("character {0} has support in more than one degree")]
    MultiDegreeSupport(u32),
    #[error("character {0} has empty support in every degree")]
    EmptySupport(u32),
    #[error("support of character {0} is not connected")]
    DisconnectedSupport(u32),
    #[error("unexpected support component: {0}")]
    UnexpectedSupport(String),
    #[error("independent computations disagree: {0}")]
    CrossCheckFailed(String),
}
