//! JSON report schemas. Key names and order are part of the interface.

use fractal_bound_core::bounds::DimensionReport;
use fractal_bound_core::{BoxCountResult, HypothesisCheck};
use serde::{Serialize, Serializer};

/// Rounds to 15 significant digits; serde_json then prints the shortest
/// representation of the rounded value.
pub fn sig15(v: f64) -> f64 {
    if !v.is_finite() {
        return v;
    }
    format!("{v:.14e}").parse().expect("formatted float parses")
}

/// Plain-text number with 15 significant digits.
pub fn format_sig15(v: f64) -> String {
    sig15(v).to_string()
}

fn ser_f64<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(sig15(*v))
}

fn ser_opt_f64<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_f64(sig15(*v)),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Serialize)]
pub struct Hypotheses {
    pub cond_a2: bool,
    pub cond_b2: bool,
    pub cond_phi: bool,
    pub applicable: bool,
}

impl From<HypothesisCheck> for Hypotheses {
    fn from(h: HypothesisCheck) -> Self {
        Hypotheses { cond_a2: h.cond_a2, cond_b2: h.cond_b2, cond_phi: h.cond_phi, applicable: h.applicable }
    }
}

#[derive(Debug, Serialize)]
pub struct BoundsJson {
    #[serde(serialize_with = "ser_f64")]
    pub a: f64,
    pub b: u32,
    pub phi: String,
    pub hypotheses: Hypotheses,
    #[serde(serialize_with = "ser_f64")]
    pub h: f64,
    /// `null` when `h >= 1`.
    #[serde(serialize_with = "ser_opt_f64")]
    pub paper_bound: Option<f64>,
    #[serde(rename = "classical_D", serialize_with = "ser_f64")]
    pub classical_d: f64,
    pub paper_bound_exceeds_2: bool,
}

impl From<&DimensionReport> for BoundsJson {
    fn from(r: &DimensionReport) -> Self {
        BoundsJson {
            a: r.params.a(),
            b: r.params.b(),
            phi: r.phi_id.to_string(),
            hypotheses: r.hypothesis.into(),
            h: r.h,
            paper_bound: r.ifs_bound,
            classical_d: r.classical_dimension,
            paper_bound_exceeds_2: r.exceeds_planar,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct VerifyJson {
    #[serde(serialize_with = "ser_f64")]
    pub a: f64,
    pub b: u32,
    pub phi: String,
    pub samples: u64,
    pub seed: u64,
    #[serde(serialize_with = "ser_f64")]
    pub tol: f64,
    pub hypotheses: Hypotheses,
    #[serde(serialize_with = "ser_f64")]
    pub h: f64,
    #[serde(serialize_with = "ser_f64")]
    pub measured_sup_ratio: f64,
    #[serde(serialize_with = "ser_f64")]
    pub margin: f64,
    /// `false` when the hypotheses fail and no guarantee applies.
    pub contraction_checked: bool,
    pub contraction_pass: Option<bool>,
    pub self_affinity_samples: usize,
    #[serde(serialize_with = "ser_f64")]
    pub self_affinity_max_residual: f64,
    pub self_affinity_pass: bool,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct BoxcountJson {
    #[serde(serialize_with = "ser_f64")]
    pub a: f64,
    pub b: u32,
    pub phi: String,
    pub k_min: u32,
    pub k_max: u32,
    pub oversample: usize,
    pub counts: Vec<u64>,
    #[serde(serialize_with = "ser_f64")]
    pub slope: f64,
    #[serde(serialize_with = "ser_f64")]
    pub r_squared: f64,
    #[serde(rename = "classical_D", serialize_with = "ser_f64")]
    pub classical_d: f64,
}

impl BoxcountJson {
    pub fn new(a: f64, b: u32, phi: &str, fit: &BoxCountResult, classical_d: f64) -> Self {
        BoxcountJson {
            a,
            b,
            phi: phi.to_string(),
            k_min: fit.ks[0],
            k_max: *fit.ks.last().expect("non-empty fit"),
            oversample: fit.oversample,
            counts: fit.counts.clone(),
            slope: fit.slope,
            r_squared: fit.r_squared,
            classical_d,
        }
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}
