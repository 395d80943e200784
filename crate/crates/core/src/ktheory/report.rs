//! The K1 rank `s1(n)` of the companion action and the AF criterion.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;

use super::fixed::{fixed_rank_table, DegreeRank};
use crate::cyclotomic::{cyclotomic_companion, euler_phi, is_prime};
use crate::error::{Error, Result};
use crate::exactla::json::format_rational;
use crate::forms::is_invariant;
use crate::simplicity::{is_free_outside_origin, is_nondegenerate};
use crate::ParamMatrix;

pub const SCHEMA_VERSION: &str = "1";

/// Label attached to every AF statement: only the K-theoretic criterion is
/// computed, never the operator-algebra classification behind it.
pub const CRITERION_LEVEL: &str = "criterion-level";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AfStatus {
    #[serde(rename = "AF")]
    Af,
    #[serde(rename = "NOT_AF")]
    NotAf,
}

impl AfStatus {
    pub fn from_s1(s1: usize) -> Self {
        if s1 == 0 {
            Self::Af
        } else {
            Self::NotAf
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Af => "AF",
            Self::NotAf => "NOT_AF",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KReport {
    pub n: u64,
    pub d: usize,
    pub s1: usize,
    pub af: AfStatus,
    /// Always `"unknown"`: no formula for the K0 rank is available.
    pub s0: &'static str,
    pub per_degree_ranks: Vec<DegreeRank>,
    /// `(2^(n-1) - (n-1)^2) / (2n)` for odd prime `n`, else absent.
    pub prime_closed_form: Option<String>,
    pub hypotheses: Vec<String>,
    pub schema: &'static str,
}

impl KReport {
    pub fn to_json_value(&self) -> Value {
        serde_json::to_value(self).expect("report JSON")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report JSON")
    }

    /// Plain-text table, one line per exterior degree.
    pub fn to_table(&self) -> String {
        let mut out = format!("n = {}, d = {}\n", self.n, self.d);
        out.push_str(" l  rank  kernel-route\n");
        for r in &self.per_degree_ranks {
            let k = r
                .kernel_rank
                .map_or_else(|| "skipped".to_string(), |k| k.to_string());
            out.push_str(&format!("{:>2}  {:>4}  {k}\n", r.l, r.rank));
        }
        out.push_str(&format!("s1 = {}  ({})\n", self.s1, self.af.as_str()));
        if let Some(c) = &self.prime_closed_form {
            out.push_str(&format!("prime closed form = {c}\n"));
        }
        out.push_str("s0 = unknown\n");
        out
    }
}

/// `(2^(p-1) - (p-1)^2) / (2p)`.
pub fn prime_closed_form(p: u64) -> BigRational {
    let two_pow = BigInt::from(2).pow((p - 1) as u32);
    let sq = BigInt::from(p - 1).pow(2);
    BigRational::new(two_pow - sq, BigInt::from(2 * p))
}

/// Runs the rank formula for the companion matrix `C_n` acting on `Z^phi(n)`.
pub fn s1(n: u64) -> Result<KReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("s1 needs n >= 2, got {n}")));
    }
    let c = cyclotomic_companion(n)?;
    let d = euler_phi(n)? as usize;
    if !is_free_outside_origin(&c, n)? {
        return Err(Error::NotFreeOutsideOrigin(format!("C_{n}")));
    }
    let per_degree_ranks = fixed_rank_table(&c, n)?;
    let s1: usize = per_degree_ranks
        .iter()
        .filter(|r| r.l % 2 == 1)
        .map(|r| r.rank)
        .sum();
    let prime_closed_form = if n > 2 && is_prime(n) {
        let closed = prime_closed_form(n);
        if closed != BigRational::from_integer(s1.into()) {
            return Err(Error::CrossCheck(format!(
                "s1({n}) = {s1} but the closed form gives {closed}"
            )));
        }
        Some(format_rational(&closed))
    } else {
        None
    };
    Ok(KReport {
        n,
        d,
        s1,
        af: AfStatus::from_s1(s1),
        s0: "unknown",
        per_degree_ranks,
        prime_closed_form,
        hypotheses: vec![
            format!("C_{n} free outside the origin: verified"),
            "form parameters independent over Q with 1: assumed".into(),
        ],
        schema: SCHEMA_VERSION,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AfVerdict {
    pub n: u64,
    pub verdict: AfStatus,
    pub s1: usize,
    pub level: &'static str,
    pub justification: Vec<String>,
}

/// AF iff `s1(n) = 0`, for a nondegenerate `C_n`-invariant form.
pub fn af_verdict(n: u64, theta: &ParamMatrix) -> Result<AfVerdict> {
    let c = cyclotomic_companion(n)?;
    if theta.rows() != c.rows() || theta.cols() != c.cols() {
        return Err(Error::DimensionMismatch(format!(
            "C_{n} is {}x{}, form is {}x{}",
            c.rows(),
            c.cols(),
            theta.rows(),
            theta.cols()
        )));
    }
    if !is_invariant(&c, theta)? {
        return Err(Error::NotInvariant);
    }
    let verdict = is_nondegenerate(theta)?;
    if let Some(w) = verdict.witness {
        let w: Vec<String> = w.iter().map(ToString::to_string).collect();
        return Err(Error::Degenerate(format!("({})", w.join(", "))));
    }
    let report = s1(n)?;
    Ok(AfVerdict {
        n,
        verdict: report.af,
        s1: report.s1,
        level: CRITERION_LEVEL,
        justification: vec![
            "form is C_n-invariant".into(),
            "form is nondegenerate, so the torus algebra is simple".into(),
            "C_n is free outside the origin".into(),
            format!("K1 rank s1 = {}", report.s1),
        ],
    })
}
