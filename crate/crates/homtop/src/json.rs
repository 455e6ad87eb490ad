//! JSON documents for series, rank tables, groups, growth reports and
//! oracle reports.

use std::str::FromStr;

use homtop_core::decimal::Decimal;
use homtop_core::growth::REPORTED_DIGITS;
use homtop_core::oracle::linalg::FieldUsed;
use homtop_core::oracle::OracleReport;
use homtop_core::{FinAbGroup, GradedDims, GrowthReport, RankTable, TruncatedSeries};
use num_bigint::{BigInt, BigUint};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Number, Value};

/// `{"truncation_order": N, "coefficients": ["1", "-7/2", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub truncation_order: usize,
    pub coefficients: Vec<String>,
}

impl From<&TruncatedSeries> for SeriesDoc {
    fn from(s: &TruncatedSeries) -> Self {
        SeriesDoc {
            truncation_order: s.truncation_order(),
            coefficients: s.coefficient_strings(),
        }
    }
}

fn parse_rational(s: &str) -> Result<num_rational::BigRational, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator in {s:?}: {e}"))?;
    let den = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator in {s:?}: {e}"))?;
    if den == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(num_rational::BigRational::new(num, den))
}

impl SeriesDoc {
    pub fn to_series(&self) -> Result<TruncatedSeries, String> {
        if self.coefficients.len() != self.truncation_order + 1 {
            return Err("coefficient count must be truncation_order + 1".into());
        }
        let coeffs = self
            .coefficients
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<_, _>>()?;
        Ok(TruncatedSeries::new(coeffs))
    }
}

/// `{"betti": k, "ranks": {"pi_2": m_1, "pi_3": m_2, ...}}`, ranks as exact integers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankTableDoc {
    pub betti: u64,
    pub ranks: Map<String, Value>,
}

fn big_number(n: &BigUint) -> Value {
    Value::Number(Number::from_str(&n.to_string()).expect("integer literal"))
}

impl From<&RankTable> for RankTableDoc {
    fn from(t: &RankTable) -> Self {
        let ranks = t
            .ranks()
            .iter()
            .enumerate()
            .map(|(i, r)| (format!("pi_{}", i + 2), big_number(r)))
            .collect();
        RankTableDoc {
            betti: t.betti(),
            ranks,
        }
    }
}

impl RankTableDoc {
    pub fn to_table(&self) -> Result<RankTable, String> {
        let mut ranks = Vec::with_capacity(self.ranks.len());
        for (i, (key, value)) in self.ranks.iter().enumerate() {
            if *key != format!("pi_{}", i + 2) {
                return Err(format!("expected key pi_{}, found {key}", i + 2));
            }
            let text = match value {
                Value::Number(n) => n.to_string(),
                other => return Err(format!("{key}: expected an integer, found {other}")),
            };
            ranks.push(BigUint::from_str(&text).map_err(|e| format!("{key}: {e}"))?);
        }
        Ok(RankTable::from_big_ranks(self.betti, ranks))
    }
}

/// `{"free_rank": r, "torsion": [p^e, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDoc {
    pub free_rank: u64,
    pub torsion: Vec<u64>,
}

impl From<&FinAbGroup> for GroupDoc {
    fn from(g: &FinAbGroup) -> Self {
        GroupDoc {
            free_rank: g.free_rank(),
            torsion: g.torsion_orders(),
        }
    }
}

impl GroupDoc {
    pub fn to_group(&self) -> Result<FinAbGroup, String> {
        FinAbGroup::from_parts(self.free_rank, &self.torsion).map_err(|e| e.to_string())
    }
}

fn reported(d: &Option<Decimal>) -> Option<String> {
    d.as_ref().map(|d| d.to_string_digits(REPORTED_DIGITS))
}

/// Reals are decimal strings carrying `precision_digits` fractional digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthDoc {
    pub betti: u64,
    pub probe_degree: usize,
    pub classification: String,
    pub precision_digits: u32,
    pub growth_base: Option<String>,
    pub limit_residual: Option<String>,
    pub exponential_growth: bool,
    pub fitted_base: Option<String>,
    pub fitted_scale: Option<String>,
    pub cumulative_bound_ok: Vec<bool>,
}

impl From<&GrowthReport> for GrowthDoc {
    fn from(r: &GrowthReport) -> Self {
        GrowthDoc {
            betti: r.betti,
            probe_degree: r.probe_degree,
            classification: r.classification.as_str().into(),
            precision_digits: r.precision_digits(),
            growth_base: reported(&r.growth_base),
            limit_residual: reported(&r.limit_residual),
            exponential_growth: r.exponential_growth(),
            fitted_base: reported(&r.fit.as_ref().map(|f| f.base.clone())),
            fitted_scale: reported(&r.fit.as_ref().map(|f| f.scale.clone())),
            cumulative_bound_ok: r.cumulative_bound_ok.clone(),
        }
    }
}

pub fn field_name(f: FieldUsed) -> String {
    match f {
        FieldUsed::Prime(p) => format!("prime {p}"),
        FieldUsed::Rational => "rational".into(),
    }
}

fn dims(d: &GradedDims) -> Vec<Value> {
    d.as_slice().iter().map(big_number).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleDoc {
    pub betti_param: u64,
    pub max_degree: usize,
    pub tensor_dims: Vec<Value>,
    pub ideal_dims: Vec<Value>,
    pub quotient_dims: Vec<Value>,
    pub series_match: Vec<bool>,
    pub euler_ok: Vec<bool>,
    pub field_used: String,
}

impl From<&OracleReport> for OracleDoc {
    fn from(r: &OracleReport) -> Self {
        OracleDoc {
            betti_param: r.betti_param,
            max_degree: r.max_degree,
            tensor_dims: dims(&r.tensor_dims),
            ideal_dims: dims(&r.ideal_dims),
            quotient_dims: dims(&r.quotient_dims),
            series_match: r.series_match.clone(),
            euler_ok: r.euler_ok.clone(),
            field_used: field_name(r.field_used),
        }
    }
}
