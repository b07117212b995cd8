//! Certified values and intervals for τ, and the genus bounds they imply.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alexander::{symmetric_degree, torus_alexander};
use crate::diagram::{DecoratedDiagram, EdgeId, PlanarDiagram};
use crate::error::TauError;
use crate::filtered::FilteredComplex;
use crate::laurent::LaurentPoly;
use crate::signature::signature;
use crate::states::{bigrading, essential_states, maximal_essential_interval};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Alternating,
    TorusKnot,
    LensSurgery,
    UniqueState,
    ExplicitComplex,
    ConnectedSum,
    Mirror,
    SkeinInterval,
    Unknot,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SkeinDirection {
    /// A positive crossing of the known knot becomes negative.
    PosToNeg,
    /// A negative crossing of the known knot becomes positive.
    NegToPos,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Evidence {
    Unknot {},
    Signature {
        signature: i32,
        crossings: usize,
    },
    Torus {
        p: i64,
        q: i64,
        positive: bool,
        alexander_degree: i32,
    },
    LensSurgery {
        alexander_degree: i32,
        positive: bool,
    },
    UniqueState {
        /// Marked edge, in the labels of the decorated diagram.
        mark: EdgeId,
        reversed: bool,
        interval: Vec<EdgeId>,
        essential_states: usize,
        regions: Vec<usize>,
        alexander: i32,
    },
    Complex {
        generators: usize,
        differential_entries: usize,
    },
    Sum {
        summands: Vec<TauCertificate>,
    },
    Mirror {
        of: Box<TauCertificate>,
    },
    Skein {
        from: Box<TauCertificate>,
        direction: SkeinDirection,
        crossing: Option<usize>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauCertificate {
    pub lower: i32,
    pub upper: i32,
    pub method: Method,
    pub evidence: Evidence,
}

impl TauCertificate {
    fn exact(value: i32, method: Method, evidence: Evidence) -> Self {
        TauCertificate {
            lower: value,
            upper: value,
            method,
            evidence,
        }
    }

    pub fn is_determined(&self) -> bool {
        self.lower == self.upper
    }

    pub fn value(&self) -> Option<i32> {
        self.is_determined().then_some(self.lower)
    }

    pub fn contains(&self, t: i32) -> bool {
        self.lower <= t && t <= self.upper
    }

    pub fn interval(&self) -> (i32, i32) {
        (self.lower, self.upper)
    }
}

impl fmt::Display for TauCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_determined() {
            write!(f, "{} ({})", self.lower, self.method)
        } else {
            write!(f, "[{}, {}] ({})", self.lower, self.upper, self.method)
        }
    }
}

/// A class in a negative-definite lattice, in a diagonal basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyClass {
    pub coefficients: Vec<i64>,
}

impl HomologyClass {
    pub fn new(coefficients: Vec<i64>) -> Self {
        HomologyClass { coefficients }
    }

    pub fn l1_norm(&self) -> i64 {
        self.coefficients.iter().map(|s| s.abs()).sum()
    }

    pub fn self_intersection(&self) -> i64 {
        -self.coefficients.iter().map(|s| s * s).sum::<i64>()
    }
}

pub fn tau_unknot() -> TauCertificate {
    TauCertificate::exact(0, Method::Unknot, Evidence::Unknot {})
}

/// `τ = -σ/2` for reduced alternating diagrams.
pub fn tau_alternating(d: &PlanarDiagram) -> Result<TauCertificate, TauError> {
    if !d.is_alternating() {
        return Err(TauError::NotAlternating);
    }
    if !d.is_reduced() {
        return Err(TauError::NotReduced);
    }
    let s = signature(d);
    Ok(TauCertificate::exact(
        -s / 2,
        Method::Alternating,
        Evidence::Signature {
            signature: s,
            crossings: d.crossing_count(),
        },
    ))
}

/// `±(pq - p - q + 1)/2`, positive for positive torus knots.
/// `T_{5,4}` gives 6, not 5.
pub fn tau_torus(p: i64, q: i64, positive: bool) -> Result<TauCertificate, TauError> {
    let delta = torus_alexander(p, q)?;
    let deg = symmetric_degree(&delta)?;
    let magnitude = ((p * q - p - q + 1) / 2) as i32;
    debug_assert_eq!(deg, magnitude);
    Ok(TauCertificate::exact(
        if positive { magnitude } else { -magnitude },
        Method::TorusKnot,
        Evidence::Torus {
            p,
            q,
            positive,
            alexander_degree: deg,
        },
    ))
}

/// `|τ|` is the degree of the symmetrized Alexander polynomial for a knot
/// with a lens space surgery; the caller vouches for that hypothesis.
pub fn tau_lens_surgery(
    alexander: &LaurentPoly,
    positive: bool,
) -> Result<TauCertificate, TauError> {
    let deg = symmetric_degree(alexander)?;
    Ok(TauCertificate::exact(
        if positive { deg } else { -deg },
        Method::LensSurgery,
        Evidence::LensSurgery {
            alexander_degree: deg,
            positive,
        },
    ))
}

/// τ from a unique E-essential state in Maslov grading 0.
pub fn tau_unique_state(d: &DecoratedDiagram) -> Option<TauCertificate> {
    let states = essential_states(d);
    let total = states.len();
    let zero: Vec<_> = states
        .into_iter()
        .map(|x| (bigrading(d, &x), x))
        .filter(|(g, _)| g.m == 0)
        .collect();
    if zero.len() != 1 {
        return None;
    }
    let (g, x) = &zero[0];
    Some(TauCertificate::exact(
        g.a,
        Method::UniqueState,
        Evidence::UniqueState {
            mark: d.marked_edge(),
            reversed: false,
            interval: maximal_essential_interval(d).edges(d),
            essential_states: total,
            regions: x.regions(d.diagram()),
            alexander: g.a,
        },
    ))
}

pub fn tau_explicit_complex(c: &FilteredComplex) -> Result<TauCertificate, TauError> {
    let t = c.tau()?;
    Ok(TauCertificate::exact(
        t,
        Method::ExplicitComplex,
        Evidence::Complex {
            generators: c.len(),
            differential_entries: c.differential().count(),
        },
    ))
}

/// Minkowski sum of the intervals.
pub fn combine_connected_sum(c1: &TauCertificate, c2: &TauCertificate) -> TauCertificate {
    TauCertificate {
        lower: c1.lower + c2.lower,
        upper: c1.upper + c2.upper,
        method: Method::ConnectedSum,
        evidence: Evidence::Sum {
            summands: vec![c1.clone(), c2.clone()],
        },
    }
}

pub fn combine_mirror(c: &TauCertificate) -> TauCertificate {
    TauCertificate {
        lower: -c.upper,
        upper: -c.lower,
        method: Method::Mirror,
        evidence: Evidence::Mirror {
            of: Box::new(c.clone()),
        },
    }
}

/// Interval for the knot after one crossing change.
pub fn skein_propagate(c: &TauCertificate, direction: SkeinDirection) -> TauCertificate {
    skein_step(c, direction, None)
}

fn skein_step(
    c: &TauCertificate,
    direction: SkeinDirection,
    crossing: Option<usize>,
) -> TauCertificate {
    let (lower, upper) = match direction {
        SkeinDirection::PosToNeg => (c.lower - 1, c.upper),
        SkeinDirection::NegToPos => (c.lower, c.upper + 1),
    };
    TauCertificate {
        lower,
        upper,
        method: Method::SkeinInterval,
        evidence: Evidence::Skein {
            from: Box::new(c.clone()),
            direction,
            crossing,
        },
    }
}

/// Intervals along a sequence of crossing changes, starting with `start`.
pub fn skein_sequence(
    start: &TauCertificate,
    directions: &[SkeinDirection],
) -> Vec<TauCertificate> {
    let mut out = vec![start.clone()];
    for &dir in directions {
        let next = skein_propagate(out.last().unwrap(), dir);
        out.push(next);
    }
    out
}

/// Interval for `d`, given crossings whose simultaneous change gives the
/// unknot. The changes are undone one at a time starting from the unknot.
pub fn tau_from_unknotting(d: &PlanarDiagram, crossings: &[usize]) -> TauCertificate {
    let mut c = tau_unknot();
    for &x in crossings {
        let dir = if d.sign(x) > 0 {
            SkeinDirection::NegToPos
        } else {
            SkeinDirection::PosToNeg
        };
        c = skein_step(&c, dir, Some(x));
    }
    c
}

fn ceil_half(n: i64) -> i64 {
    n.div_euclid(2) + n.rem_euclid(2)
}

/// Lower bound on the genus of a surface bounding the knot.
///
/// Without a class the surface lives in `B⁴` and the bound is the smallest
/// `|τ|` allowed by the interval. With a class in a negative-definite
/// four-manifold the bound is `⌈(2·lower + |[Σ]| + [Σ]·[Σ]) / 2⌉`, floored
/// at zero.
pub fn genus_lower_bound(c: &TauCertificate, cls: Option<&HomologyClass>) -> i32 {
    match cls {
        None => {
            if c.lower >= 0 {
                c.lower
            } else if c.upper <= 0 {
                -c.upper
            } else {
                0
            }
        }
        Some(h) => {
            let n = 2 * c.lower as i64 + h.l1_norm() + h.self_intersection();
            ceil_half(n).max(0) as i32
        }
    }
}

/// The unknotting number is at least the four-ball genus.
pub fn unknotting_lower_bound(c: &TauCertificate) -> i32 {
    genus_lower_bound(c, None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusHint {
    pub p: i64,
    pub q: i64,
    pub positive: bool,
}

/// Extra knowledge about a knot beyond its diagram.
#[derive(Clone, Debug, Default)]
pub struct Hints {
    pub torus: Option<TorusHint>,
    pub complex: Option<FilteredComplex>,
    pub unknotting: Option<Vec<usize>>,
}

/// Unique-state rule at the given mark, then at every other edge, then on
/// the reversed knot.
pub fn search_unique_state(d: &DecoratedDiagram) -> Option<TauCertificate> {
    if let Some(c) = tau_unique_state(d) {
        return Some(c);
    }
    let pd = d.diagram();
    for reversed in [false, true] {
        let base = if reversed { pd.reverse() } else { pd.clone() };
        for &e in base.traversal() {
            if !reversed && e == d.marked_edge() {
                continue;
            }
            let dd = DecoratedDiagram::new(&base, e).expect("edge of the diagram");
            if let Some(mut c) = tau_unique_state(&dd) {
                if let Evidence::UniqueState {
                    reversed: r, mark, ..
                } = &mut c.evidence
                {
                    *r = reversed;
                    *mark = dd.original_mark();
                }
                return Some(c);
            }
        }
    }
    None
}

/// Best certificate the rules give, or the reason none applies.
pub fn certify(d: &DecoratedDiagram, hints: &Hints) -> Result<TauCertificate, String> {
    let pd = d.diagram();
    if pd.crossing_count() == 0 {
        return Ok(tau_unknot());
    }
    if let Ok(c) = tau_alternating(pd) {
        return Ok(c);
    }
    if let Some(t) = hints.torus {
        let c = tau_torus(t.p, t.q, t.positive).map_err(|e| e.to_string())?;
        let delta = crate::alexander::state_sum_polynomial(d).map_err(|e| e.to_string())?;
        if delta != torus_alexander(t.p, t.q).map_err(|e| e.to_string())? {
            return Err(format!(
                "Alexander polynomial {delta} does not match T({}, {})",
                t.p, t.q
            ));
        }
        return Ok(c);
    }
    if let Some(cx) = &hints.complex {
        return tau_explicit_complex(cx).map_err(|e| e.to_string());
    }
    if let Some(c) = search_unique_state(d) {
        return Ok(c);
    }
    if let Some(seq) = &hints.unknotting {
        return Ok(tau_from_unknotting(pd, seq));
    }
    Err("no rule applies: non-alternating, no unique essential state in grading 0, and no complex or unknotting sequence given".into())
}
