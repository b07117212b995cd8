//! Knot corpora with expected values, and the comparison table.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::alexander::state_sum_polynomial;
use crate::diagram::{parse_pd, DecoratedDiagram, EdgeId, PlanarDiagram};
use crate::error::{DiagramError, Error};
use crate::filtered::ComplexFile;
use crate::laurent::LaurentPoly;
use crate::report::{csv_field, interval_string, report, Computed, InvariantReport};
use crate::tau::{Hints, TorusHint};

const BUNDLED: &str = include_str!("../../../corpus/corpus.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Paper,
    Derived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Known<T> {
    pub value: T,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownValues {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<Known<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub determinant: Option<Known<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<Known<LaurentPoly>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau: Option<Known<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g4: Option<Known<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Known<i32>>,
    /// Crossing indices whose simultaneous change gives the unknot.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unknotting: Option<Known<Vec<usize>>>,
}

/// Quadruples, or PD text such as `"X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PdCode {
    Quads(Vec<[EdgeId; 4]>),
    Text(String),
}

fn default_decoration() -> EdgeId {
    1
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    pub pd: PdCode,
    #[serde(default = "default_decoration")]
    pub decoration: EdgeId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus: Option<TorusHint>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexFile>,
    #[serde(default)]
    pub known: KnownValues,
}

impl CorpusEntry {
    pub fn diagram(&self) -> Result<PlanarDiagram, DiagramError> {
        let d = match &self.pd {
            PdCode::Quads(q) if q.is_empty() => PlanarDiagram::unknot(),
            PdCode::Quads(q) => PlanarDiagram::from_pd(q.clone())?,
            PdCode::Text(t) => parse_pd(t)?,
        };
        Ok(d.with_name(self.name.clone()))
    }

    pub fn decorated(&self) -> Result<DecoratedDiagram, DiagramError> {
        DecoratedDiagram::new(&self.diagram()?, self.decoration)
    }

    pub fn hints(&self) -> Result<Hints, Error> {
        Ok(Hints {
            torus: self.torus,
            complex: match &self.complex {
                Some(c) => Some(c.clone().into_complex()?),
                None => None,
            },
            unknotting: self.known.unknotting.as_ref().map(|k| k.value.clone()),
        })
    }
}

/// A JSON array of entries.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>, Error> {
    serde_json::from_str(text).map_err(|e| Error::Corpus(e.to_string()))
}

pub fn bundled_corpus() -> Vec<CorpusEntry> {
    parse_corpus(BUNDLED).expect("bundled corpus parses")
}

pub fn bundled_entry(name: &str) -> Option<CorpusEntry> {
    bundled_corpus().into_iter().find(|e| e.name == name)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub field: &'static str,
    pub expected: String,
    pub computed: String,
    pub provenance: Provenance,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub knot: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub report: InvariantReport,
}

fn check<T: ToString>(field: &'static str, k: &Known<T>, computed: String, pass: bool) -> Check {
    Check {
        field,
        expected: k.value.to_string(),
        computed,
        provenance: k.provenance,
        pass,
    }
}

/// Compare computed values with the recorded ones.
///
/// τ passes when the certified interval contains the expected value; genus
/// and unknotting bounds pass when they do not exceed it.
pub fn evaluate(entry: &CorpusEntry) -> Result<TableRow, Error> {
    let d = entry.decorated()?;
    let hints = entry.hints()?;
    let r = report(&entry.name, &d, &hints);
    let k = &entry.known;
    let mut checks = Vec::new();
    if let Some(s) = &k.signature {
        checks.push(check(
            "signature",
            s,
            r.signature.to_string(),
            r.signature == s.value,
        ));
    }
    if let Some(det) = &k.determinant {
        let pass = r.determinant.value() == Some(&det.value);
        checks.push(check("determinant", det, r.determinant.to_string(), pass));
    }
    if let Some(a) = &k.alexander {
        let pass = r.alexander.value() == Some(&a.value);
        checks.push(check("alexander", a, r.alexander.to_string(), pass));
    }
    if let Some(t) = &k.tau {
        let (computed, pass) = match &r.tau {
            Computed::Value(c) => (interval_string(c), c.contains(t.value)),
            Computed::Undetermined(why) => (format!("undetermined: {why}"), false),
        };
        checks.push(check("tau", t, computed, pass));
    }
    for (field, known, bound) in [("g4", &k.g4, &r.g4_lower), ("u", &k.u, &r.u_lower)] {
        if let Some(g) = known {
            let pass = bound.value().is_some_and(|b| *b <= g.value);
            checks.push(check(field, g, format!(">= {bound}"), pass));
        }
    }
    if let Some(seq) = &k.unknotting {
        let (computed, pass) = unknotting_check(d.diagram(), &seq.value, &r, k.u.as_ref());
        checks.push(Check {
            field: "unknotting",
            expected: format!("{:?}", seq.value),
            computed,
            provenance: seq.provenance,
            pass,
        });
    }
    Ok(TableRow {
        knot: entry.name.clone(),
        pass: checks.iter().all(|c| c.pass),
        checks,
        report: r,
    })
}

/// The indices must be distinct crossings, the changed diagram must have
/// trivial Alexander polynomial, and the length must bound `|τ|` and `u`.
fn unknotting_check(
    d: &PlanarDiagram,
    seq: &[usize],
    r: &InvariantReport,
    u: Option<&Known<i32>>,
) -> (String, bool) {
    let distinct: BTreeSet<usize> = seq.iter().copied().collect();
    if distinct.len() != seq.len() || seq.iter().any(|&x| x >= d.crossing_count()) {
        return ("invalid crossing list".into(), false);
    }
    let changed = d.switch_crossings(seq);
    let delta = DecoratedDiagram::new(&changed, changed.traversal().first().copied().unwrap_or(1))
        .ok()
        .and_then(|dd| state_sum_polynomial(&dd).ok());
    let trivial = delta.as_ref() == Some(&LaurentPoly::one());
    let len = seq.len() as i32;
    let tau_ok = r.g4_lower.value().is_some_and(|&g| g <= len);
    let u_ok = u.is_none_or(|u| u.value <= len);
    let delta_text = delta.map_or("?".into(), |p| p.to_string());
    (
        format!("length {len}, changed diagram has Alexander polynomial {delta_text}"),
        trivial && tau_ok && u_ok,
    )
}

pub const TABLE_CSV_HEADER: &str = "knot,status,signature,signature_expected,determinant,determinant_expected,tau,tau_expected,method,g4_lower,u_lower";

impl TableRow {
    pub fn csv_row(&self) -> String {
        let expected = |f: &str| {
            self.checks
                .iter()
                .find(|c| c.field == f)
                .map_or(String::new(), |c| c.expected.clone())
        };
        let (tau, method) = match &self.report.tau {
            Computed::Value(c) => (interval_string(c), c.method.to_string()),
            Computed::Undetermined(_) => ("undetermined".into(), String::new()),
        };
        [
            self.knot.clone(),
            if self.pass { "pass" } else { "FAIL" }.to_string(),
            self.report.signature.to_string(),
            expected("signature"),
            self.report.determinant.to_string(),
            expected("determinant"),
            tau,
            expected("tau"),
            method,
            self.report.g4_lower.to_string(),
            self.report.u_lower.to_string(),
        ]
        .map(|f| csv_field(&f))
        .join(",")
    }

    /// One line per failed check.
    pub fn diff(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| {
                format!(
                    "{}: {} expected {} ({:?}), computed {}",
                    self.knot, c.field, c.expected, c.provenance, c.computed
                )
            })
            .collect()
    }
}
