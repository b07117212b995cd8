//! State-sum Alexander polynomial, determinant, torus-knot closed form and a
//! Conway skein oracle.

use std::collections::HashMap;

use num_integer::Integer;

use crate::diagram::{DecoratedDiagram, EdgeId, PlanarDiagram};
use crate::error::AlexanderError;
use crate::laurent::LaurentPoly;
use crate::states::{bigrading, enumerate_states};

pub const SKEIN_BUDGET: usize = 12;

/// `Σ (-1)^M T^A` over all states, normalized so that `P(1) = 1`.
pub fn state_sum_polynomial(d: &DecoratedDiagram) -> Result<LaurentPoly, AlexanderError> {
    let mut p = LaurentPoly::zero();
    for x in enumerate_states(d) {
        let g = bigrading(d, &x);
        p.add_term(g.a, if g.m.rem_euclid(2) == 0 { 1 } else { -1 });
    }
    if !p.is_symmetric() {
        return Err(AlexanderError::Asymmetric(p.to_string()));
    }
    match p.eval_unit(1) {
        1 => Ok(p),
        -1 => Ok(-&p),
        v => Err(AlexanderError::Normalization(v)),
    }
}

/// Alexander polynomial of an undecorated diagram, marked at edge 1.
pub fn alexander_polynomial(d: &PlanarDiagram) -> Result<LaurentPoly, AlexanderError> {
    let dd = DecoratedDiagram::new(d, d.traversal()[0]).expect("edge 1 exists");
    state_sum_polynomial(&dd)
}

/// `(|Δ(-1)|, sign Δ(-1))`.
pub fn determinant(d: &PlanarDiagram) -> Result<(u64, i8), AlexanderError> {
    Ok(determinant_of(&alexander_polynomial(d)?))
}

pub fn determinant_of(p: &LaurentPoly) -> (u64, i8) {
    let v = p.eval_unit(-1);
    (v.unsigned_abs(), if v < 0 { -1 } else { 1 })
}

pub fn symmetric_degree(p: &LaurentPoly) -> Result<i32, AlexanderError> {
    if p.is_zero() {
        return Err(AlexanderError::Zero);
    }
    if !p.is_symmetric() {
        return Err(AlexanderError::Asymmetric(p.to_string()));
    }
    Ok(p.degree().unwrap())
}

/// Symmetrized `(T^{pq} - 1)(T - 1) / ((T^p - 1)(T^q - 1))`.
pub fn torus_alexander(p: i64, q: i64) -> Result<LaurentPoly, AlexanderError> {
    if p < 2 || q < 2 || p.gcd(&q) != 1 {
        return Err(AlexanderError::TorusParameters(p, q));
    }
    let (p, q) = (p as i32, q as i32);
    let binom = |k: i32| LaurentPoly::from_terms([(k, 1), (0, -1)]);
    let num = &binom(p * q) * &binom(1);
    let den = &binom(p) * &binom(q);
    let quot = num.div_exact(&den).expect("cyclotomic division is exact");
    let deg = quot.degree().unwrap();
    Ok(quot.shift(-deg / 2))
}

/// Conway polynomial by the skein relation, returned in the symmetrized
/// Alexander variable via `z² = T - 2 + T^{-1}`.
pub fn conway_skein_oracle(d: &PlanarDiagram) -> Result<LaurentPoly, AlexanderError> {
    if d.crossing_count() > SKEIN_BUDGET {
        return Err(AlexanderError::Budget(d.crossing_count(), SKEIN_BUDGET));
    }
    let link = SkeinLink::from_diagram(d);
    let mut memo = HashMap::new();
    let z = conway(link, &mut memo);
    let z2 = LaurentPoly::from_terms([(1, 1), (0, -2), (-1, 1)]);
    let mut out = LaurentPoly::zero();
    for (k, c) in z.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        assert!(
            k % 2 == 0,
            "odd power of z in the Conway polynomial of a knot"
        );
        out = &out + &z2.pow(k as u32 / 2).scale(*c);
    }
    Ok(out)
}

/// Oriented crossing with its under and over strands as (in, out) edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct SkeinCrossing {
    under: (EdgeId, EdgeId),
    over: (EdgeId, EdgeId),
    sign: i8,
}

/// A link diagram reduced to Gauss data, plus a count of crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct SkeinLink {
    crossings: Vec<SkeinCrossing>,
    free_loops: usize,
}

impl SkeinLink {
    fn from_diagram(d: &PlanarDiagram) -> Self {
        if d.crossing_count() == 0 {
            return SkeinLink {
                crossings: Vec::new(),
                free_loops: 1,
            };
        }
        let crossings = d
            .crossings()
            .iter()
            .enumerate()
            .map(|(x, q)| {
                let ou = d.over_under(x);
                SkeinCrossing {
                    under: (q[0], q[2]),
                    over: (q[ou.over_in as usize], q[ou.over_out as usize]),
                    sign: d.sign(x),
                }
            })
            .collect();
        SkeinLink {
            crossings,
            free_loops: 0,
        }
    }

    /// Successor edge and (crossing, over?) at the head of each edge.
    fn heads(&self) -> HashMap<EdgeId, (usize, bool, EdgeId)> {
        let mut h = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            h.insert(c.under.0, (i, false, c.under.1));
            h.insert(c.over.0, (i, true, c.over.1));
        }
        h
    }

    /// Components as edge cycles, each starting at its smallest edge, sorted.
    fn components(&self) -> Vec<Vec<EdgeId>> {
        let heads = self.heads();
        let mut edges: Vec<EdgeId> = heads.keys().copied().collect();
        edges.sort_unstable();
        let mut seen = std::collections::HashSet::new();
        let mut comps = Vec::new();
        for e in edges {
            if seen.contains(&e) {
                continue;
            }
            let mut comp = Vec::new();
            let mut cur = e;
            while seen.insert(cur) {
                comp.push(cur);
                cur = heads[&cur].2;
            }
            comps.push(comp);
        }
        comps
    }

    /// Relabel edges in component traversal order.
    fn canonical(&self) -> SkeinLink {
        let mut label = HashMap::new();
        for e in self.components().into_iter().flatten() {
            let next = label.len() as EdgeId + 1;
            label.insert(e, next);
        }
        let mut crossings: Vec<SkeinCrossing> = self
            .crossings
            .iter()
            .map(|c| SkeinCrossing {
                under: (label[&c.under.0], label[&c.under.1]),
                over: (label[&c.over.0], label[&c.over.1]),
                sign: c.sign,
            })
            .collect();
        crossings.sort();
        SkeinLink {
            crossings,
            free_loops: self.free_loops,
        }
    }

    /// First crossing met on the under strand before the over strand, when
    /// components are walked in order from their base points.
    fn first_ascending(&self) -> Option<usize> {
        let heads = self.heads();
        let mut met = vec![false; self.crossings.len()];
        for comp in self.components() {
            for e in comp {
                let (x, over, _) = heads[&e];
                if !met[x] {
                    if !over {
                        return Some(x);
                    }
                    met[x] = true;
                }
            }
        }
        None
    }

    fn switched(&self, x: usize) -> SkeinLink {
        let mut out = self.clone();
        let c = &mut out.crossings[x];
        std::mem::swap(&mut c.under, &mut c.over);
        c.sign = -c.sign;
        out
    }

    /// Oriented smoothing: incoming under joins outgoing over and incoming
    /// over joins outgoing under.
    fn smoothed(&self, x: usize) -> SkeinLink {
        let c = self.crossings[x];
        let mut out = SkeinLink {
            crossings: self.crossings.clone(),
            free_loops: self.free_loops,
        };
        out.crossings.remove(x);
        for (keep, drop) in [(c.under.0, c.over.1), (c.over.0, c.under.1)] {
            if keep == drop {
                out.free_loops += 1;
                continue;
            }
            for k in out.crossings.iter_mut() {
                for e in [&mut k.under.0, &mut k.under.1, &mut k.over.0, &mut k.over.1] {
                    if *e == drop {
                        *e = keep;
                    }
                }
            }
        }
        out
    }
}

/// Coefficients of the Conway polynomial in `z`, lowest power first.
fn conway(link: SkeinLink, memo: &mut HashMap<SkeinLink, Vec<i64>>) -> Vec<i64> {
    let link = link.canonical();
    if let Some(v) = memo.get(&link) {
        return v.clone();
    }
    let split = link.free_loops > 1 || (link.free_loops == 1 && !link.crossings.is_empty());
    let result = match link.first_ascending() {
        _ if split => vec![0],
        None => {
            if link.components().len() + link.free_loops == 1 {
                vec![1]
            } else {
                vec![0]
            }
        }
        Some(x) => {
            let sign = link.crossings[x].sign as i64;
            let other = conway(link.switched(x), memo);
            let zero = conway(link.smoothed(x), memo);
            // ∇(L+) - ∇(L-) = z ∇(L0)
            let mut out = vec![0i64; other.len().max(zero.len() + 1)];
            for (i, c) in other.iter().enumerate() {
                out[i] += c;
            }
            for (i, c) in zero.iter().enumerate() {
                out[i + 1] += sign * c;
            }
            while out.len() > 1 && *out.last().unwrap() == 0 {
                out.pop();
            }
            out
        }
    };
    memo.insert(link, result.clone());
    result
}
