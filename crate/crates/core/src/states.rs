//! Kauffman states of a decorated diagram and their gradings.

use std::collections::{BTreeMap, BTreeSet};

use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;

use crate::diagram::{DecoratedDiagram, EdgeId, PlanarDiagram, Role, Strand};

/// A choice of one corner at every crossing, indexed by crossing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KauffmanState {
    corners: Vec<u8>,
}

impl KauffmanState {
    pub fn from_corners(corners: Vec<u8>) -> Self {
        KauffmanState { corners }
    }

    pub fn corners(&self) -> &[u8] {
        &self.corners
    }

    pub fn corner(&self, crossing: usize) -> u8 {
        self.corners[crossing]
    }

    /// The region assigned to each crossing.
    pub fn regions(&self, d: &PlanarDiagram) -> Vec<usize> {
        self.corners
            .iter()
            .enumerate()
            .map(|(x, &k)| d.corner_region(x, k))
            .collect()
    }

    /// Number of crossings where `self` and `other` differ.
    pub fn distance(&self, other: &KauffmanState) -> usize {
        self.corners
            .iter()
            .zip(&other.corners)
            .filter(|(a, b)| a != b)
            .count()
    }

    fn sort_key(&self, d: &PlanarDiagram) -> Vec<(usize, u8)> {
        self.corners
            .iter()
            .enumerate()
            .map(|(x, &k)| (d.corner_region(x, k), k))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Bigrading {
    #[serde(rename = "A")]
    pub a: i32,
    #[serde(rename = "M")]
    pub m: i32,
}

/// Alexander weight of a quadrant, in units of 1/2.
pub fn alexander_weight2(sign: i8, r: Role) -> i32 {
    let s = sign as i32;
    match r {
        Role::Back => -s,
        Role::Front => s,
        Role::Left | Role::Right => 0,
    }
}

/// Maslov weight of a quadrant.
pub fn maslov_weight(sign: i8, r: Role) -> i32 {
    match r {
        Role::Back => -(sign as i32),
        _ => 0,
    }
}

pub fn enumerate_states(d: &DecoratedDiagram) -> Vec<KauffmanState> {
    let pd = d.diagram();
    let n = pd.crossing_count();
    if n == 0 {
        return vec![KauffmanState::from_corners(Vec::new())];
    }
    let banned = d.marked_regions();
    let opts: Vec<Vec<(u8, usize)>> = (0..n)
        .map(|x| {
            (0..4)
                .map(|k| (k, pd.corner_region(x, k)))
                .filter(|(_, r)| !banned.contains(r))
                .collect()
        })
        .collect();
    let mut search = Search {
        opts: &opts,
        used: vec![false; pd.region_count()],
        assign: vec![None; n],
        out: Vec::new(),
    };
    for r in banned {
        search.used[r] = true;
    }
    search.run(n);
    let mut states: Vec<KauffmanState> = search
        .out
        .into_iter()
        .map(KauffmanState::from_corners)
        .collect();
    states.sort_by_cached_key(|x| x.sort_key(pd));
    states
}

struct Search<'a> {
    opts: &'a [Vec<(u8, usize)>],
    used: Vec<bool>,
    assign: Vec<Option<u8>>,
    out: Vec<Vec<u8>>,
}

impl Search<'_> {
    fn run(&mut self, remaining: usize) {
        if remaining == 0 {
            self.out
                .push(self.assign.iter().map(|k| k.unwrap()).collect());
            return;
        }
        // Every free region must still be reachable, and we branch on the
        // crossing with the fewest choices.
        let mut reachable = vec![false; self.used.len()];
        let mut best: Option<(usize, usize)> = None;
        for (x, opts) in self.opts.iter().enumerate() {
            if self.assign[x].is_some() {
                continue;
            }
            let mut count = 0;
            for &(_, r) in opts {
                if !self.used[r] {
                    count += 1;
                    reachable[r] = true;
                }
            }
            if count == 0 {
                return;
            }
            if best.is_none_or(|(_, c)| count < c) {
                best = Some((x, count));
            }
        }
        if self.used.iter().zip(&reachable).any(|(&u, &r)| !u && !r) {
            return;
        }
        let (x, _) = best.unwrap();
        for &(k, r) in &self.opts[x] {
            if self.used[r] {
                continue;
            }
            self.used[r] = true;
            self.assign[x] = Some(k);
            self.run(remaining - 1);
            self.assign[x] = None;
            self.used[r] = false;
        }
    }
}

pub fn alexander_grading(d: &DecoratedDiagram, x: &KauffmanState) -> i32 {
    let pd = d.diagram();
    let twice: i32 = x
        .corners
        .iter()
        .enumerate()
        .map(|(c, &k)| alexander_weight2(pd.sign(c), pd.role(c, k)))
        .sum();
    assert!(twice % 2 == 0, "odd doubled Alexander grading {twice}");
    twice / 2
}

pub fn maslov_grading(d: &DecoratedDiagram, x: &KauffmanState) -> i32 {
    let pd = d.diagram();
    x.corners
        .iter()
        .enumerate()
        .map(|(c, &k)| maslov_weight(pd.sign(c), pd.role(c, k)))
        .sum()
}

pub fn bigrading(d: &DecoratedDiagram, x: &KauffmanState) -> Bigrading {
    Bigrading {
        a: alexander_grading(d, x),
        m: maslov_grading(d, x),
    }
}

/// The arc ε_{-ℓ}, ..., ε₀, ..., ε_m.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialInterval {
    pub minus: usize,
    pub plus: usize,
}

impl EssentialInterval {
    /// Traversal indices `-ℓ..=m`.
    pub fn indices(&self) -> impl Iterator<Item = i64> {
        -(self.minus as i64)..=self.plus as i64
    }

    pub fn edges(&self, d: &DecoratedDiagram) -> Vec<EdgeId> {
        self.indices().map(|i| d.edge(i)).collect()
    }

    pub fn minus_edges(&self, d: &DecoratedDiagram) -> Vec<EdgeId> {
        (-(self.minus as i64)..0).map(|i| d.edge(i)).collect()
    }

    pub fn plus_edges(&self, d: &DecoratedDiagram) -> Vec<EdgeId> {
        (1..=self.plus as i64).map(|i| d.edge(i)).collect()
    }

    pub fn len(&self) -> usize {
        self.minus + self.plus + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Greedy maximal weakly essential interval: extend forward, then backward.
///
/// The arc must pass distinct crossings; its two ends may share a crossing.
pub fn maximal_essential_interval(d: &DecoratedDiagram) -> EssentialInterval {
    let n = d.edge_count();
    if d.diagram().crossing_count() == 0 {
        return EssentialInterval { minus: 0, plus: 0 };
    }
    let ok = |l: usize, m: usize| -> bool {
        if l + m + 1 > n {
            return false;
        }
        let (l, m) = (l as i64, m as i64);
        let verts: Vec<usize> = (-l..=m + 1).map(|i| d.vertex(i)).collect();
        let inner = &verts[1..verts.len() - 1];
        let distinct: BTreeSet<usize> = inner.iter().copied().collect();
        if distinct.len() != inner.len()
            || distinct.contains(&verts[0])
            || distinct.contains(verts.last().unwrap())
        {
            return false;
        }
        let constant = |r: std::ops::RangeInclusive<i64>| {
            let kinds: BTreeSet<bool> = r.map(|i| d.vertex_strand(i) == Strand::Over).collect();
            kinds.len() <= 1
        };
        constant(1..=m) && constant(-l + 1..=0)
    };
    let mut m = 0;
    while ok(0, m + 1) {
        m += 1;
    }
    let mut l = 0;
    while ok(l + 1, m) {
        l += 1;
    }
    EssentialInterval { minus: l, plus: m }
}

/// For each interior crossing of the interval, the regions containing the
/// edge through it that is farther from ε₀.
pub fn essential_constraints(
    d: &DecoratedDiagram,
    e: &EssentialInterval,
) -> BTreeMap<usize, [usize; 2]> {
    let pd = d.diagram();
    let mut out = BTreeMap::new();
    for i in 1..=e.plus as i64 {
        let t = d.tail(i);
        out.insert(
            t.crossing,
            [
                pd.corner_region(t.crossing, t.pos),
                pd.corner_region(t.crossing, (t.pos + 3) % 4),
            ],
        );
    }
    for i in -(e.minus as i64) + 1..=0 {
        let h = d.head(i - 1);
        out.insert(
            h.crossing,
            [
                pd.corner_region(h.crossing, h.pos),
                pd.corner_region(h.crossing, (h.pos + 3) % 4),
            ],
        );
    }
    out
}

pub fn is_essential(
    d: &DecoratedDiagram,
    constraints: &BTreeMap<usize, [usize; 2]>,
    x: &KauffmanState,
) -> bool {
    let pd = d.diagram();
    constraints
        .iter()
        .all(|(&c, rs)| rs.contains(&pd.corner_region(c, x.corner(c))))
}

pub fn essential_states(d: &DecoratedDiagram) -> Vec<KauffmanState> {
    let e = maximal_essential_interval(d);
    let cons = essential_constraints(d, &e);
    enumerate_states(d)
        .into_iter()
        .filter(|x| is_essential(d, &cons, x))
        .collect()
}

/// Values indexed by traversal position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct MultiFiltration {
    pub values: Vec<(i32, i32)>,
}

pub fn multi_filtration(d: &DecoratedDiagram, x: &KauffmanState) -> MultiFiltration {
    let n = d.edge_count();
    let mut values = Vec::with_capacity(n);
    values.push((0, 0));
    if d.diagram().crossing_count() == 0 {
        return MultiFiltration { values };
    }
    for i in 1..n as i64 {
        let arrive = d.head(i - 1);
        let k = x.corner(arrive.crossing);
        let left = k == arrive.pos || k == (arrive.pos + 1) % 4;
        let (a, b) = *values.last().unwrap();
        values.push(match (Strand::at(arrive.pos), left) {
            (Strand::Over, true) => (a, b - 1),
            (Strand::Over, false) => (a, b + 1),
            (Strand::Under, true) => (a + 1, b),
            (Strand::Under, false) => (a - 1, b),
        });
    }
    MultiFiltration { values }
}

/// How to read the comparison of multi-filtrations outside the interval.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Admissibility {
    /// Both coordinates of `M_x - M_y` are non-negative.
    #[default]
    NonNegative,
    /// Both coordinates of `M_x - M_y` are non-zero.
    NonZero,
}

pub fn differential_admissible(d: &DecoratedDiagram, x: &KauffmanState, y: &KauffmanState) -> bool {
    differential_admissible_with(d, x, y, Admissibility::NonNegative)
}

pub fn differential_admissible_with(
    d: &DecoratedDiagram,
    x: &KauffmanState,
    y: &KauffmanState,
    rule: Admissibility,
) -> bool {
    let n = d.edge_count() as i64;
    let e = maximal_essential_interval(d);
    let inside: BTreeSet<i64> = e.indices().map(|i| i.rem_euclid(n)).collect();
    let (mx, my) = (multi_filtration(d, x), multi_filtration(d, y));
    (0..n).filter(|i| !inside.contains(i)).all(|i| {
        let (p, q) = (mx.values[i as usize], my.values[i as usize]);
        let (da, db) = (p.0 - q.0, p.1 - q.1);
        match rule {
            Admissibility::NonNegative => da >= 0 && db >= 0,
            Admissibility::NonZero => da != 0 && db != 0,
        }
    })
}

/// Serialized form: `{"0": region, "1": region, ..., "A": a, "M": m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateRecord {
    pub regions: Vec<usize>,
    pub grading: Bigrading,
    pub multi_filtration: Option<MultiFiltration>,
}

impl StateRecord {
    pub fn new(d: &DecoratedDiagram, x: &KauffmanState, with_filtration: bool) -> Self {
        StateRecord {
            regions: x.regions(d.diagram()),
            grading: bigrading(d, x),
            multi_filtration: with_filtration.then(|| multi_filtration(d, x)),
        }
    }
}

impl Serialize for StateRecord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        for (c, r) in self.regions.iter().enumerate() {
            map.serialize_entry(&c.to_string(), r)?;
        }
        map.serialize_entry("A", &self.grading.a)?;
        map.serialize_entry("M", &self.grading.m)?;
        if let Some(f) = &self.multi_filtration {
            map.serialize_entry("multi_filtration", f)?;
        }
        map.end()
    }
}
