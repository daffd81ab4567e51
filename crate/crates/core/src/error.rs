use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters a={a}, b={b}: {reason}")]
    InvalidParams { a: f64, b: u32, reason: &'static str },

    #[error("unknown phi function `{id}` (valid ids: cos2pi, cos-unit, sin-unit)")]
    UnknownPhi { id: String },

    #[error("x = {x} lies outside [0, 1]")]
    OutOfDomain { x: f64 },

    #[error("iteration would produce {count} points, above the cap of {cap}")]
    TooManyPoints { count: u128, cap: usize },

    #[error("point set is empty")]
    EmptyPointSet,

    #[error("contraction factor h = {h} is not below 1, the Moran root is undefined")]
    BoundUndefined { h: f64 },

    #[error("no contraction factors given")]
    NoFactors,

    #[error("factor #{index} = {value} is outside (0, 1)")]
    InvalidFactor { index: usize, value: f64 },

    #[error("c = {c} is outside [0, 1]")]
    InvalidMvtConstant { c: f64 },

    #[error("negative eigenvalue discriminant {value}")]
    NegativeDiscriminant { value: f64 },

    #[error("epsilon = {epsilon} is not 2^-k for an integer k >= 1")]
    NonDyadicScale { epsilon: f64 },

    #[error("oversample factor {0} is below 4")]
    Oversample(usize),

    #[error("scale range k in [{k_min}, {k_max}] is invalid (need 2 <= k_min < k_max <= 14)")]
    ScaleRange { k_min: u32, k_max: u32 },
}
