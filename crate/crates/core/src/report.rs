//! Per-knot invariant reports.

use std::fmt::{self, Write as _};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::alexander::{determinant_of, state_sum_polynomial};
use crate::diagram::DecoratedDiagram;
use crate::laurent::LaurentPoly;
use crate::signature::signature;
use crate::tau::{certify, genus_lower_bound, unknotting_lower_bound, Hints, TauCertificate};

/// A value, or the reason it could not be computed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Computed<T> {
    Value(T),
    Undetermined(String),
}

impl<T> Computed<T> {
    pub fn value(&self) -> Option<&T> {
        match self {
            Computed::Value(v) => Some(v),
            Computed::Undetermined(_) => None,
        }
    }

    pub fn map<U>(&self, f: impl FnOnce(&T) -> U) -> Computed<U> {
        match self {
            Computed::Value(v) => Computed::Value(f(v)),
            Computed::Undetermined(r) => Computed::Undetermined(r.clone()),
        }
    }
}

impl<T: fmt::Display> fmt::Display for Computed<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Computed::Value(v) => v.fmt(f),
            Computed::Undetermined(r) => write!(f, "undetermined: {r}"),
        }
    }
}

impl<T: Serialize> Serialize for Computed<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Computed::Value(v) => v.serialize(s),
            Computed::Undetermined(r) => s.serialize_str(&format!("undetermined: {r}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub knot: String,
    pub crossings: usize,
    pub writhe: i32,
    pub alternating: bool,
    pub reduced: bool,
    pub alexander: Computed<LaurentPoly>,
    pub determinant: Computed<u64>,
    pub signature: i32,
    pub tau: Computed<TauCertificate>,
    pub g4_lower: Computed<i32>,
    pub u_lower: Computed<i32>,
}

pub fn report(name: &str, d: &DecoratedDiagram, hints: &Hints) -> InvariantReport {
    let pd = d.diagram();
    let alexander = match state_sum_polynomial(d) {
        Ok(p) => Computed::Value(p),
        Err(e) => Computed::Undetermined(e.to_string()),
    };
    let tau = match certify(d, hints) {
        Ok(c) => Computed::Value(c),
        Err(r) => Computed::Undetermined(r),
    };
    InvariantReport {
        knot: name.to_string(),
        crossings: pd.crossing_count(),
        writhe: pd.writhe(),
        alternating: pd.is_alternating(),
        reduced: pd.is_reduced(),
        determinant: alexander.map(|p| determinant_of(p).0),
        alexander,
        signature: signature(pd),
        g4_lower: tau.map(|c| genus_lower_bound(c, None)),
        u_lower: tau.map(unknotting_lower_bound),
        tau,
    }
}

/// Interval as `a` or `a..b`.
pub fn interval_string(c: &TauCertificate) -> String {
    if c.is_determined() {
        c.lower.to_string()
    } else {
        format!("{}..{}", c.lower, c.upper)
    }
}

impl InvariantReport {
    pub const CSV_HEADER: &'static str =
        "knot,crossings,writhe,alternating,reduced,alexander,determinant,signature,tau_lower,tau_upper,method,g4_lower,u_lower";

    pub fn csv_row(&self) -> String {
        let tau = |f: fn(&TauCertificate) -> String| match &self.tau {
            Computed::Value(c) => f(c),
            Computed::Undetermined(_) => "undetermined".into(),
        };
        let plain = |c: &Computed<i32>| c.value().map_or("undetermined".into(), |v| v.to_string());
        [
            self.knot.clone(),
            self.crossings.to_string(),
            self.writhe.to_string(),
            self.alternating.to_string(),
            self.reduced.to_string(),
            self.alexander
                .value()
                .map_or("undetermined".into(), |p| p.to_string()),
            self.determinant
                .value()
                .map_or("undetermined".into(), |v| v.to_string()),
            self.signature.to_string(),
            tau(|c| c.lower.to_string()),
            tau(|c| c.upper.to_string()),
            tau(|c| c.method.to_string()),
            plain(&self.g4_lower),
            plain(&self.u_lower),
        ]
        .map(|f| csv_field(&f))
        .join(",")
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "yes" } else { "no" };
        let tau = match &self.tau {
            Computed::Value(c) => format!("{} ({})", interval_string(c), c.method),
            Computed::Undetermined(r) => format!("undetermined: {r}"),
        };
        let mut s = String::new();
        let _ = writeln!(s, "knot:        {}", self.knot);
        let _ = writeln!(s, "crossings:   {}", self.crossings);
        let _ = writeln!(s, "writhe:      {}", self.writhe);
        let _ = writeln!(s, "alternating: {}", yes(self.alternating));
        let _ = writeln!(s, "reduced:     {}", yes(self.reduced));
        let _ = writeln!(s, "alexander:   {}", self.alexander);
        let _ = writeln!(s, "determinant: {}", self.determinant);
        let _ = writeln!(s, "signature:   {}", self.signature);
        let _ = writeln!(s, "tau:         {tau}");
        let _ = writeln!(s, "g4_lower:    {}", self.g4_lower);
        let _ = writeln!(s, "u_lower:     {}", self.u_lower);
        s
    }
}

pub(crate) fn csv_field(f: &str) -> String {
    if f.contains([',', '"', '\n']) {
        format!("\"{}\"", f.replace('"', "\"\""))
    } else {
        f.to_string()
    }
}

impl Serialize for InvariantReport {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("knot", &self.knot)?;
        m.serialize_entry("crossings", &self.crossings)?;
        m.serialize_entry("writhe", &self.writhe)?;
        m.serialize_entry("alternating", &self.alternating)?;
        m.serialize_entry("reduced", &self.reduced)?;
        m.serialize_entry("alexander", &self.alexander)?;
        m.serialize_entry("alexander_text", &self.alexander.to_string())?;
        m.serialize_entry("determinant", &self.determinant)?;
        m.serialize_entry("signature", &self.signature)?;
        m.serialize_entry("tau_lower", &self.tau.map(|c| c.lower))?;
        m.serialize_entry("tau_upper", &self.tau.map(|c| c.upper))?;
        m.serialize_entry("method", &self.tau.map(|c| c.method))?;
        m.serialize_entry("evidence", &self.tau.map(|c| c.evidence.clone()))?;
        m.serialize_entry("g4_lower", &self.g4_lower)?;
        m.serialize_entry("u_lower", &self.u_lower)?;
        m.end()
    }
}
