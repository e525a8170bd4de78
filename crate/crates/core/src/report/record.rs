//! Wire formats. Both formats carry the same columns in the same order:
//!
//! `n, c, d, n_class, symbol_d, hypothesis_met, d_mod_n2, theorem_holds, rank, ms`
//!
//! `d_mod_n2` is a decimal string. `symbol_d` is null (empty in csv) for
//! composite `n`; `rank` and `ms` are null when not computed.

use serde::{Deserialize, Serialize};

use super::{Format, ParseError};
use crate::sun::{NClass, PrimePowerAudit, SunParams, VerificationRecord};

const RECORD_HEADER: &str = "n,c,d,n_class,symbol_d,hypothesis_met,d_mod_n2,theorem_holds,rank,ms";
const AUDIT_HEADER: &str = "n,p,alpha,valuation,bound,holds";

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RecordLine {
    n: u32,
    c: i64,
    d: i64,
    n_class: String,
    symbol_d: Option<i8>,
    hypothesis_met: bool,
    d_mod_n2: String,
    theorem_holds: bool,
    rank: Option<usize>,
    ms: Option<u64>,
}

impl From<&VerificationRecord> for RecordLine {
    fn from(r: &VerificationRecord) -> Self {
        Self {
            n: r.params.n(),
            c: r.params.c(),
            d: r.params.d(),
            n_class: r.n_class.as_str().to_string(),
            symbol_d: r.symbol_d,
            hypothesis_met: r.hypothesis_met,
            d_mod_n2: r.d_mod_n2.to_string(),
            theorem_holds: r.theorem_holds,
            rank: r.decomposition_rank,
            ms: r.elapsed_ms,
        }
    }
}

impl TryFrom<RecordLine> for VerificationRecord {
    type Error = ParseError;

    fn try_from(l: RecordLine) -> Result<Self, ParseError> {
        let n_class = match l.n_class.as_str() {
            "composite" => NClass::Composite,
            "prime" => NClass::Prime,
            other => return Err(ParseError(format!("unknown n_class {other:?}"))),
        };
        Ok(VerificationRecord {
            params: SunParams::new(l.n, l.c, l.d).map_err(|e| ParseError(e.to_string()))?,
            n_class,
            symbol_d: l.symbol_d,
            hypothesis_met: l.hypothesis_met,
            d_mod_n2: l
                .d_mod_n2
                .parse()
                .map_err(|e| ParseError(format!("d_mod_n2 {:?}: {e}", l.d_mod_n2)))?,
            theorem_holds: l.theorem_holds,
            decomposition_rank: l.rank,
            elapsed_ms: l.ms,
        })
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Header row for csv record output.
pub fn record_header() -> &'static str {
    RECORD_HEADER
}

/// One line, without the trailing newline.
pub fn serialize_record(rec: &VerificationRecord, format: Format) -> String {
    let line = RecordLine::from(rec);
    match format {
        Format::JsonLines => serde_json::to_string(&line).expect("plain data serializes"),
        Format::Csv => [
            line.n.to_string(),
            line.c.to_string(),
            line.d.to_string(),
            line.n_class,
            opt(line.symbol_d),
            line.hypothesis_met.to_string(),
            line.d_mod_n2,
            line.theorem_holds.to_string(),
            opt(line.rank),
            opt(line.ms),
        ]
        .join(","),
    }
}

/// Inverse of [`serialize_record`]. Csv input is a data row, not the header.
pub fn parse_record(text: &str, format: Format) -> Result<VerificationRecord, ParseError> {
    let line = match format {
        Format::JsonLines => {
            serde_json::from_str::<RecordLine>(text).map_err(|e| ParseError(e.to_string()))?
        }
        Format::Csv => {
            let fields: Vec<&str> = text.trim_end_matches(['\r', '\n']).split(',').collect();
            let [n, c, d, n_class, symbol_d, hyp, residue, holds, rank, ms] = fields[..] else {
                return Err(ParseError(format!("expected 10 columns, got {}", fields.len())));
            };
            fn num<T: std::str::FromStr>(name: &str, s: &str) -> Result<T, ParseError>
            where
                T::Err: std::fmt::Display,
            {
                s.parse().map_err(|e| ParseError(format!("{name} {s:?}: {e}")))
            }
            fn nullable<T: std::str::FromStr>(name: &str, s: &str) -> Result<Option<T>, ParseError>
            where
                T::Err: std::fmt::Display,
            {
                if s.is_empty() {
                    Ok(None)
                } else {
                    num(name, s).map(Some)
                }
            }
            RecordLine {
                n: num("n", n)?,
                c: num("c", c)?,
                d: num("d", d)?,
                n_class: n_class.to_string(),
                symbol_d: nullable("symbol_d", symbol_d)?,
                hypothesis_met: num("hypothesis_met", hyp)?,
                d_mod_n2: residue.to_string(),
                theorem_holds: num("theorem_holds", holds)?,
                rank: nullable("rank", rank)?,
                ms: nullable("ms", ms)?,
            }
        }
    };
    VerificationRecord::try_from(line)
}

/// One `(n, p)` row of a composite audit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditLine {
    pub n: u64,
    pub p: u64,
    pub alpha: u32,
    pub valuation: u64,
    pub bound: u64,
    pub holds: bool,
}

impl AuditLine {
    pub fn new(n: u64, f: &PrimePowerAudit) -> Self {
        Self {
            n,
            p: f.p,
            alpha: f.alpha,
            valuation: f.valuation,
            bound: f.bound,
            holds: f.holds(),
        }
    }
}

pub fn audit_header() -> &'static str {
    AUDIT_HEADER
}

pub fn serialize_audit(line: &AuditLine, format: Format) -> String {
    match format {
        Format::JsonLines => serde_json::to_string(line).expect("plain data serializes"),
        Format::Csv => format!(
            "{},{},{},{},{},{}",
            line.n, line.p, line.alpha, line.valuation, line.bound, line.holds
        ),
    }
}
