use core::fmt;

use crate::id::Id;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    EmptyDataset,
    InvalidScale(&'static str),
    RatingOutOfScale { value: f64 },
    DuplicatePair { user: Id, object: Id },
    UnknownUser(Id),
    UnknownObject(Id),
    /// Every rater of the object carries zero reputation, so the group sizes
    /// of that object cannot be normalized.
    ZeroColumnSum { object: Id },
    /// Quality estimate undefined: the raters' reputations sum to zero.
    ZeroReputationSum { object: Id },
    EmptyRewards,
    NegativeReputation,
    LengthMismatch { expected: usize, found: usize },
    TemporalReputationVanished,
    InvalidConfig(&'static str),
    InvalidRatio(f64),
    RatioTooSmall { p: f64, users: usize },
    NotEnoughUsers { requested: usize, available: usize },
    InvalidListLength { length: usize, users: usize },
    EmptyClass,
    TooFewSamples,
    ZeroVariance,
    DegenerateNormalization,
    InvalidBins(usize),
    InvalidBinWidth(f64),
    EqualDegrees,
    NonFinite,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyDataset => f.write_str("empty dataset"),
            Error::InvalidScale(why) => write!(f, "invalid rating scale: {why}"),
            Error::RatingOutOfScale { value } => {
                write!(f, "rating value {value} is not a member of the rating scale")
            }
            Error::DuplicatePair { user, object } => {
                write!(f, "duplicate rating for user {user} on object {object}")
            }
            Error::UnknownUser(id) => write!(f, "unknown user {id}"),
            Error::UnknownObject(id) => write!(f, "unknown object {id}"),
            Error::ZeroColumnSum { object } => write!(
                f,
                "group sizes of object {object} sum to zero (all raters have zero reputation)"
            ),
            Error::ZeroReputationSum { object } => {
                write!(f, "raters of object {object} have zero total reputation")
            }
            Error::NegativeReputation => f.write_str("reputations must be finite and nonnegative"),
            Error::EmptyRewards => f.write_str("reputation requested for an empty reward list"),
            Error::LengthMismatch { expected, found } => {
                write!(f, "length mismatch: expected {expected}, found {found}")
            }
            Error::TemporalReputationVanished => f.write_str("total temporal reputation vanished"),
            Error::InvalidConfig(why) => write!(f, "invalid method configuration: {why}"),
            Error::InvalidRatio(p) => write!(f, "spammer ratio {p} must lie strictly between 0 and 1"),
            Error::RatioTooSmall { p, users } => write!(
                f,
                "ratio too small for dataset: floor({p} * {users}) = 0 spammers"
            ),
            Error::NotEnoughUsers { requested, available } => write!(
                f,
                "requested {requested} users but only {available} qualify"
            ),
            Error::InvalidListLength { length, users } => write!(
                f,
                "ranking list length {length} must lie in 1..={users}"
            ),
            Error::EmptyClass => f.write_str("spammer and normal classes must both be nonempty"),
            Error::TooFewSamples => f.write_str("at least two samples are required"),
            Error::ZeroVariance => f.write_str("zero variance in correlation input"),
            Error::DegenerateNormalization => {
                f.write_str("normalization degenerate: indicator is constant")
            }
            Error::InvalidBins(bins) => write!(f, "bin count {bins} must be at least 2"),
            Error::InvalidBinWidth(w) => write!(f, "bin width {w} must lie in (0, 1]"),
            Error::EqualDegrees => f.write_str("all users have the same degree"),
            Error::NonFinite => f.write_str("non-finite value in input"),
        }
    }
}

impl core::error::Error for Error {}
