//! Verification reports, sawtooth sweeps, and their on-disk formats.
//!
//! Reports are JSON documents carrying a `schema` identifier. Exact values are
//! always written as `"num/den"` strings; floats only appear in the advisory
//! columns of the sweep CSV.

use std::collections::{BTreeMap, BTreeSet};
use std::io::{self, Write};

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fraction_string, to_f64, Rational};
use crate::lemmas::LemmaWitness;
use crate::tail::{breakpoints, f_of_p, IidTwoPointInstance};

pub const REPORT_SCHEMA: &str = "feige-report/1";
pub const BUNDLE_SCHEMA: &str = "feige-verify/1";
pub const SWEEP_CSV_HEADER: &str = "p_num,p_den,p_float,f_num,f_den,f_float,is_breakpoint";

/// Serde adapter writing a [`Rational`] as a `"num/den"` string.
pub mod fraction_serde {
    use serde::{de, Deserialize, Deserializer, Serializer};

    use crate::exact::{fraction_string, parse_fraction_string, Rational};

    pub fn serialize<S: Serializer>(value: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fraction_string(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(d)?;
        parse_fraction_string(&text).map_err(de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(value: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
            match value {
                Some(v) => s.serialize_some(&fraction_string(v)),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|text| parse_fraction_string(&text).map_err(de::Error::custom))
                .transpose()
        }
    }
}

/// Pass/fail record for one verification suite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schema: String,
    pub suite: String,
    pub checks_run: u64,
    pub failures: Vec<LemmaWitness>,
    pub parameters: BTreeMap<String, String>,
    /// Outcomes that are recorded but not asserted.
    #[serde(default)]
    pub observations: BTreeMap<String, String>,
    /// Wall time; the only non-deterministic field.
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            schema: REPORT_SCHEMA.to_string(),
            suite: suite.into(),
            checks_run: 0,
            failures: Vec::new(),
            parameters: BTreeMap::new(),
            observations: BTreeMap::new(),
            elapsed_ms: 0,
        }
    }

    pub fn with_parameter(mut self, name: &str, value: impl ToString) -> Self {
        self.parameters.insert(name.to_string(), value.to_string());
        self
    }

    pub fn observe(&mut self, name: &str, value: impl ToString) {
        self.observations.insert(name.to_string(), value.to_string());
    }

    pub fn record(&mut self, witness: LemmaWitness) {
        self.checks_run += 1;
        if !witness.holds {
            self.failures.push(witness);
        }
    }

    pub fn absorb(&mut self, tally: Tally) {
        self.checks_run += tally.checks;
        self.failures.extend(tally.failures);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Partial result of a check scan; merged into a report in a fixed order.
#[derive(Debug, Default)]
pub struct Tally {
    pub checks: u64,
    pub failures: Vec<LemmaWitness>,
}

impl Tally {
    pub fn record(&mut self, witness: LemmaWitness) {
        self.checks += 1;
        if !witness.holds {
            self.failures.push(witness);
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

/// Collection of reports written by `feige verify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyBundle {
    pub schema: String,
    pub n_max: u32,
    pub reports: Vec<VerificationReport>,
}

impl VerifyBundle {
    pub fn new(n_max: u32, reports: Vec<VerificationReport>) -> Self {
        Self {
            schema: BUNDLE_SCHEMA.to_string(),
            n_max,
            reports,
        }
    }

    pub fn failure_count(&self) -> usize {
        self.reports.iter().map(|r| r.failures.len()).sum()
    }

    pub fn checks_run(&self) -> u64 {
        self.reports.iter().map(|r| r.checks_run).sum()
    }
}

pub fn serialize_report(report: &VerificationReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

pub fn parse_report(text: &str) -> Result<VerificationReport> {
    let report: VerificationReport =
        serde_json::from_str(text).map_err(|e| Error::MalformedReport(e.to_string()))?;
    if report.schema != REPORT_SCHEMA {
        return Err(Error::MalformedReport(format!("unknown schema {:?}", report.schema)));
    }
    Ok(report)
}

pub fn serialize_bundle(bundle: &VerifyBundle) -> String {
    serde_json::to_string_pretty(bundle).expect("bundle serializes")
}

pub fn parse_bundle(text: &str) -> Result<VerifyBundle> {
    let bundle: VerifyBundle =
        serde_json::from_str(text).map_err(|e| Error::MalformedReport(e.to_string()))?;
    if bundle.schema != BUNDLE_SCHEMA {
        return Err(Error::MalformedReport(format!("unknown schema {:?}", bundle.schema)));
    }
    Ok(bundle)
}

/// One evaluated point of the sawtooth.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub p: Rational,
    pub f_value: Rational,
    pub p_float: f64,
    pub f_float: f64,
    pub is_breakpoint: bool,
}

/// Evaluates `f` for `n` variables on the grid `j/(points+1)` together with every
/// breakpoint `m/(n+1)`, ascending in `p`, duplicates merged.
pub fn sweep(n: u32, points: u32) -> Result<Vec<SweepRecord>> {
    if n == 0 {
        return Err(Error::EmptyN);
    }
    if points < 2 {
        return Err(Error::TooFewPoints(points));
    }
    let grid_den = BigInt::from(u64::from(points) + 1);
    let mut ps: BTreeSet<Rational> = (1..=points)
        .map(|j| Rational::new(BigInt::from(j), grid_den.clone()))
        .collect();
    ps.extend(breakpoints(n));
    let n_plus_one = Rational::from_integer(BigInt::from(u64::from(n) + 1));
    let ps: Vec<Rational> = ps.into_iter().collect();
    Ok(ps
        .into_par_iter()
        .map(|p| {
            let inst = IidTwoPointInstance::new(n, p.clone()).expect("grid lies in (0, 1)");
            let f_value = f_of_p(&inst);
            SweepRecord {
                p_float: to_f64(&p),
                f_float: to_f64(&f_value),
                is_breakpoint: (&n_plus_one * &p).is_integer(),
                p,
                f_value,
            }
        })
        .collect())
}

/// Writes the sweep as CSV with [`SWEEP_CSV_HEADER`], LF line endings.
pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "{SWEEP_CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{:?},{},{},{:?},{}",
            r.p.numer(),
            r.p.denom(),
            r.p_float,
            r.f_value.numer(),
            r.f_value.denom(),
            r.f_float,
            r.is_breakpoint
        )?;
    }
    Ok(())
}

/// Record with the smallest `f_value`; ties go to the smallest `p`.
pub fn sweep_minimum(records: &[SweepRecord]) -> Option<&SweepRecord> {
    records.iter().reduce(|best, r| if r.f_value < best.f_value { r } else { best })
}

/// Human-readable `"num/den (float)"`.
pub fn describe(value: &Rational) -> String {
    format!("{} ({})", fraction_string(value), to_f64(value))
}
