//! Planar diagrams given by PD codes.
//!
//! A crossing is a quadruple `[a, b, c, d]` of edge labels listed in
//! rotational order starting at the incoming under-strand, so the under
//! strand always runs from position 0 to position 2. The over strand runs
//! `b -> d` at a positive crossing and `d -> b` at a negative one.
//!
//! Corner `k` of a crossing is the quadrant between positions `k` and `k + 1`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;

pub type EdgeId = u32;

/// One end of an edge at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub crossing: usize,
    pub pos: u8,
}

impl Dart {
    pub fn new(crossing: usize, pos: u8) -> Self {
        Dart {
            crossing,
            pos: pos % 4,
        }
    }

    pub fn rotate(self, k: i32) -> Self {
        Dart::new(self.crossing, (self.pos as i32 + k).rem_euclid(4) as u8)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Which strand the knot is on when it passes a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strand {
    Over,
    Under,
}

impl Strand {
    pub fn at(pos: u8) -> Strand {
        if pos.is_multiple_of(2) {
            Strand::Under
        } else {
            Strand::Over
        }
    }
}

/// Position of a quadrant relative to the two strands of its crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    /// Between the incoming strands.
    Back,
    /// Between the outgoing strands.
    Front,
    /// Left of the under strand.
    Left,
    /// Right of the under strand.
    Right,
}

/// Over-strand data derived from the orientation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OverUnder {
    pub over_in: u8,
    pub over_out: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub boundary: Vec<(EdgeId, Side)>,
    pub corners: Vec<(usize, u8)>,
}

#[derive(Clone, Debug)]
pub struct PlanarDiagram {
    name: Option<String>,
    crossings: Vec<[EdgeId; 4]>,
    edge_count: usize,
    over_under: Vec<OverUnder>,
    signs: Vec<i8>,
    // indexed by edge label - 1: (tail, head)
    ends: Vec<(Dart, Dart)>,
    traversal: Vec<EdgeId>,
    corner_region: Vec<[usize; 4]>,
    regions: Vec<Region>,
}

impl PartialEq for PlanarDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.crossings == other.crossings
    }
}

impl Eq for PlanarDiagram {}

impl PlanarDiagram {
    /// The 0-crossing unknot: one edge, two regions.
    pub fn unknot() -> Self {
        PlanarDiagram {
            name: None,
            crossings: Vec::new(),
            edge_count: 1,
            over_under: Vec::new(),
            signs: Vec::new(),
            ends: Vec::new(),
            traversal: vec![1],
            corner_region: Vec::new(),
            regions: vec![
                Region {
                    boundary: vec![(1, Side::Left)],
                    corners: Vec::new(),
                },
                Region {
                    boundary: vec![(1, Side::Right)],
                    corners: Vec::new(),
                },
            ],
        }
    }

    pub fn from_pd(crossings: Vec<[EdgeId; 4]>) -> Result<Self, DiagramError> {
        if crossings.is_empty() {
            return Ok(Self::unknot());
        }
        let n = crossings.len();
        let max = crossings.iter().flatten().copied().max().unwrap_or(0);
        if crossings.iter().flatten().any(|&e| e == 0) {
            return Err(DiagramError::EdgeLabel(0));
        }
        let edge_count = max as usize;
        let mut occ: Vec<Vec<Dart>> = vec![Vec::new(); edge_count];
        for (x, quad) in crossings.iter().enumerate() {
            for (p, &e) in quad.iter().enumerate() {
                occ[e as usize - 1].push(Dart::new(x, p as u8));
            }
        }
        for (i, o) in occ.iter().enumerate() {
            if o.len() != 2 {
                return Err(DiagramError::EdgeMultiplicity {
                    edge: i as EdgeId + 1,
                    count: o.len(),
                });
            }
        }
        check_connected(n, &crossings, &occ)?;

        let other = |d: Dart| -> Dart {
            let e = crossings[d.crossing][d.pos as usize] as usize - 1;
            if occ[e][0] == d {
                occ[e][1]
            } else {
                occ[e][0]
            }
        };

        let mut ends = vec![None; edge_count];
        let mut over_in: Vec<Option<u8>> = vec![None; n];
        let mut traversal = Vec::with_capacity(edge_count);
        let start = Dart::new(0, 2);
        let mut dart = start;
        loop {
            let e = crossings[dart.crossing][dart.pos as usize];
            let head = other(dart);
            if ends[e as usize - 1].is_some() {
                return Err(DiagramError::Orientation {
                    crossing: head.crossing,
                });
            }
            ends[e as usize - 1] = Some((dart, head));
            traversal.push(e);
            dart = match head.pos {
                0 => head.rotate(2),
                2 => {
                    return Err(DiagramError::Orientation {
                        crossing: head.crossing,
                    })
                }
                p => {
                    over_in[head.crossing] = Some(p);
                    head.rotate(2)
                }
            };
            if dart == start {
                break;
            }
        }
        if traversal.len() != edge_count {
            return Err(DiagramError::MultipleComponents);
        }
        let over_under: Vec<OverUnder> = over_in
            .iter()
            .map(|o| {
                let over_in = o.expect("every crossing is visited twice");
                OverUnder {
                    over_in,
                    over_out: (over_in + 2) % 4,
                }
            })
            .collect();
        let signs = over_under
            .iter()
            .map(|ou| if ou.over_in == 1 { 1 } else { -1 })
            .collect();
        let ends: Vec<(Dart, Dart)> = ends.into_iter().map(|e| e.unwrap()).collect();

        // Faces are orbits of (X, q) -> next corner around the face; the dart
        // (Y, q) carries corner (Y, q - 1).
        let mut corner_region = vec![[usize::MAX; 4]; n];
        let mut regions = Vec::new();
        for x in 0..n {
            for k in 0..4u8 {
                if corner_region[x][k as usize] != usize::MAX {
                    continue;
                }
                let id = regions.len();
                let mut region = Region {
                    boundary: Vec::new(),
                    corners: Vec::new(),
                };
                let mut d = Dart::new(x, k + 1);
                loop {
                    let c = d.rotate(-1);
                    if corner_region[c.crossing][c.pos as usize] != usize::MAX {
                        break;
                    }
                    corner_region[c.crossing][c.pos as usize] = id;
                    region.corners.push((c.crossing, c.pos));
                    let e = crossings[d.crossing][d.pos as usize];
                    let side = if ends[e as usize - 1].0 == d {
                        Side::Left
                    } else {
                        Side::Right
                    };
                    region.boundary.push((e, side));
                    d = other(d).rotate(1);
                }
                regions.push(region);
            }
        }
        if regions.len() != n + 2 {
            return Err(DiagramError::NonPlanar {
                faces: regions.len(),
                expected: n + 2,
            });
        }

        Ok(PlanarDiagram {
            name: None,
            crossings,
            edge_count,
            over_under,
            signs,
            ends,
            traversal,
            corner_region,
            regions,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn crossings(&self) -> &[[EdgeId; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn over_under(&self, crossing: usize) -> OverUnder {
        self.over_under[crossing]
    }

    pub fn sign(&self, crossing: usize) -> i8 {
        self.signs[crossing]
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn writhe(&self) -> i32 {
        self.signs.iter().map(|&s| s as i32).sum()
    }

    /// Tail and head darts of an edge; `None` for the 0-crossing unknot.
    pub fn edge_ends(&self, e: EdgeId) -> Option<(Dart, Dart)> {
        self.ends.get(e as usize - 1).copied()
    }

    /// Edges in knot order starting with the edge leaving crossing 0 along
    /// the under strand.
    pub fn traversal(&self) -> &[EdgeId] {
        &self.traversal
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    pub fn region_count(&self) -> usize {
        self.regions.len()
    }

    pub fn corner_region(&self, crossing: usize, corner: u8) -> usize {
        self.corner_region[crossing][(corner % 4) as usize]
    }

    /// Region on the given side of an edge.
    pub fn edge_region(&self, e: EdgeId, side: Side) -> usize {
        match self.edge_ends(e) {
            None => match side {
                Side::Left => 0,
                Side::Right => 1,
            },
            Some((tail, _)) => match side {
                Side::Left => self.corner_region(tail.crossing, (tail.pos + 3) % 4),
                Side::Right => self.corner_region(tail.crossing, tail.pos),
            },
        }
    }

    pub fn role(&self, crossing: usize, corner: u8) -> Role {
        role(self.signs[crossing], corner)
    }

    /// The corner of a crossing playing the given role.
    pub fn corner_with_role(&self, crossing: usize, r: Role) -> u8 {
        (0..4).find(|&k| self.role(crossing, k) == r).unwrap()
    }

    pub fn is_alternating(&self) -> bool {
        if self.crossings.is_empty() {
            return true;
        }
        let kinds: Vec<Strand> = self
            .traversal
            .iter()
            .map(|&e| Strand::at(self.ends[e as usize - 1].1.pos))
            .collect();
        (0..kinds.len()).all(|i| kinds[i] != kinds[(i + 1) % kinds.len()])
    }

    /// No crossing has two opposite quadrants in the same region.
    pub fn is_reduced(&self) -> bool {
        self.corner_region
            .iter()
            .all(|c| c[0] != c[2] && c[1] != c[3])
    }

    /// Swap over and under at every crossing.
    pub fn mirror(&self) -> PlanarDiagram {
        let pd = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[a, b, c, d], &s)| if s > 0 { [b, c, d, a] } else { [d, a, b, c] })
            .collect();
        self.rebuild(pd)
    }

    /// Reverse the orientation of the knot.
    pub fn reverse(&self) -> PlanarDiagram {
        let pd = self
            .crossings
            .iter()
            .map(|&[a, b, c, d]| [c, d, a, b])
            .collect();
        self.rebuild(pd)
    }

    /// Change the given crossings from over to under.
    pub fn switch_crossings(&self, which: &[usize]) -> PlanarDiagram {
        let mut pd = self.crossings.clone();
        for &x in which {
            let [a, b, c, d] = pd[x];
            pd[x] = if self.signs[x] > 0 {
                [b, c, d, a]
            } else {
                [d, a, b, c]
            };
        }
        self.rebuild(pd)
    }

    /// Corner index in `self.mirror()` of corner `k` at `crossing`.
    pub fn mirror_corner(&self, crossing: usize, k: u8) -> u8 {
        if self.signs[crossing] > 0 {
            (k + 3) % 4
        } else {
            (k + 1) % 4
        }
    }

    fn rebuild(&self, pd: Vec<[EdgeId; 4]>) -> PlanarDiagram {
        let mut d = PlanarDiagram::from_pd(pd).expect("local moves keep the diagram valid");
        d.name = self.name.clone();
        d
    }

    pub fn to_pd_string(&self) -> String {
        if self.crossings.is_empty() {
            return "U".to_string();
        }
        self.crossings
            .iter()
            .map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]"))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            writeln!(f, "name: {name}")?;
        }
        write!(f, "{}", self.to_pd_string())
    }
}

pub fn role(sign: i8, corner: u8) -> Role {
    match (sign > 0, corner % 4) {
        (true, 0) | (false, 3) => Role::Back,
        (true, 2) | (false, 1) => Role::Front,
        (true, 1) | (false, 0) => Role::Left,
        _ => Role::Right,
    }
}

fn check_connected(
    n: usize,
    crossings: &[[EdgeId; 4]],
    occ: &[Vec<Dart>],
) -> Result<(), DiagramError> {
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(x) = queue.pop_front() {
        for &e in &crossings[x] {
            for d in &occ[e as usize - 1] {
                if !seen[d.crossing] {
                    seen[d.crossing] = true;
                    queue.push_back(d.crossing);
                }
            }
        }
    }
    if seen.iter().all(|&s| s) {
        Ok(())
    } else {
        Err(DiagramError::Disconnected)
    }
}

/// Parse the PD text grammar: optional `name: ...` line, then `X[a,b,c,d]`
/// tokens, or `U` for the unknot.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram, DiagramError> {
    let mut name = None;
    let mut body = String::new();
    for line in text.lines() {
        let t = line.trim();
        if let Some(rest) = t.strip_prefix("name:") {
            name = Some(rest.trim().to_string());
        } else {
            body.push_str(t);
            body.push(' ');
        }
    }
    let tokens = tokenize(&body)?;
    let mut quads = Vec::new();
    let mut unknot = false;
    for tok in &tokens {
        if tok == "U" {
            unknot = true;
            continue;
        }
        quads.push(parse_token(tok)?);
    }
    if unknot && !quads.is_empty() {
        return Err(DiagramError::Token("U".to_string()));
    }
    let d = PlanarDiagram::from_pd(quads)?;
    Ok(match name {
        Some(n) => d.with_name(n),
        None => d,
    })
}

fn tokenize(body: &str) -> Result<Vec<String>, DiagramError> {
    // Whitespace is allowed inside brackets: "X[1, 4, 2, 5]".
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0i32;
    for ch in body.chars() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            cur.push(ch);
            return Err(DiagramError::Token(cur));
        }
        if depth == 0 && (ch.is_whitespace() || ch == ',') {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else if !ch.is_whitespace() {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(DiagramError::Token(cur));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_token(tok: &str) -> Result<[EdgeId; 4], DiagramError> {
    let bad = || DiagramError::Token(tok.to_string());
    let inner = tok
        .strip_prefix("X[")
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(bad)?;
    let vals: Vec<EdgeId> = inner
        .split(',')
        .map(|s| s.trim().parse::<EdgeId>())
        .collect::<Result<_, _>>()
        .map_err(|_| bad())?;
    if vals.len() != 4 || vals.contains(&0) {
        return Err(bad());
    }
    Ok([vals[0], vals[1], vals[2], vals[3]])
}

/// JSON form `{"name": str, "pd": [[a,b,c,d], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PdJson {
    #[serde(default)]
    pub name: Option<String>,
    pub pd: Vec<[EdgeId; 4]>,
}

impl PdJson {
    pub fn into_diagram(self) -> Result<PlanarDiagram, DiagramError> {
        let d = PlanarDiagram::from_pd(self.pd)?;
        Ok(match self.name {
            Some(n) => d.with_name(n),
            None => d,
        })
    }
}

/// A diagram with a marked edge, relabelled so that the traversal from the
/// marked edge reads `1, 2, ..., N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedDiagram {
    diagram: PlanarDiagram,
    original_mark: EdgeId,
}

impl DecoratedDiagram {
    pub fn new(d: &PlanarDiagram, marked_edge: EdgeId) -> Result<Self, DiagramError> {
        if marked_edge == 0 || marked_edge as usize > d.edge_count() {
            return Err(DiagramError::EdgeLabel(marked_edge));
        }
        if d.crossing_count() == 0 {
            return Ok(DecoratedDiagram {
                diagram: d.clone(),
                original_mark: marked_edge,
            });
        }
        let trav = d.traversal();
        let start = trav.iter().position(|&e| e == marked_edge).unwrap();
        let n = trav.len();
        let mut label = vec![0; n];
        for i in 0..n {
            label[trav[(start + i) % n] as usize - 1] = i as EdgeId + 1;
        }
        let pd = d
            .crossings()
            .iter()
            .map(|q| q.map(|e| label[e as usize - 1]))
            .collect();
        let mut relabelled = PlanarDiagram::from_pd(pd)?;
        relabelled.name = d.name.clone();
        Ok(DecoratedDiagram {
            diagram: relabelled,
            original_mark: marked_edge,
        })
    }

    pub fn diagram(&self) -> &PlanarDiagram {
        &self.diagram
    }

    /// The marked edge in the labels of the diagram this was built from.
    pub fn original_mark(&self) -> EdgeId {
        self.original_mark
    }

    /// The marked edge in the relabelled diagram; always 1.
    pub fn marked_edge(&self) -> EdgeId {
        1
    }

    pub fn edge_count(&self) -> usize {
        self.diagram.edge_count()
    }

    /// Edge ε_i, indices taken mod N.
    pub fn edge(&self, i: i64) -> EdgeId {
        i.rem_euclid(self.edge_count() as i64) as EdgeId + 1
    }

    pub fn traversal(&self) -> Vec<EdgeId> {
        (1..=self.edge_count() as EdgeId).collect()
    }

    /// Tail dart of ε_i.
    pub fn tail(&self, i: i64) -> Dart {
        self.diagram.edge_ends(self.edge(i)).unwrap().0
    }

    /// Head dart of ε_i.
    pub fn head(&self, i: i64) -> Dart {
        self.diagram.edge_ends(self.edge(i)).unwrap().1
    }

    /// The crossing v_i between ε_{i-1} and ε_i.
    pub fn vertex(&self, i: i64) -> usize {
        self.tail(i).crossing
    }

    /// Strand the knot arrives on at v_i.
    pub fn vertex_strand(&self, i: i64) -> Strand {
        Strand::at(self.head(i - 1).pos)
    }

    /// The two regions adjoining ε₀.
    pub fn marked_regions(&self) -> [usize; 2] {
        [
            self.diagram.edge_region(1, Side::Left),
            self.diagram.edge_region(1, Side::Right),
        ]
    }

    /// The same diagram traversed in the opposite direction, still marked at ε₀.
    pub fn reversed(&self) -> DecoratedDiagram {
        DecoratedDiagram::new(&self.diagram.reverse(), 1).expect("reversal keeps the diagram valid")
    }

    pub fn mirror(&self) -> DecoratedDiagram {
        DecoratedDiagram::new(&self.diagram.mirror(), 1).expect("mirror keeps the diagram valid")
    }
}

/// Splice two decorated diagrams at their marked edges.
pub fn connected_sum(d1: &DecoratedDiagram, d2: &DecoratedDiagram) -> DecoratedDiagram {
    let (a, b) = (d1.diagram(), d2.diagram());
    if b.crossing_count() == 0 {
        return d1.clone();
    }
    if a.crossing_count() == 0 {
        return d2.clone();
    }
    let shift = a.edge_count() as EdgeId;
    let (_, h1) = a.edge_ends(1).unwrap();
    let (_, h2) = b.edge_ends(1).unwrap();
    let mut pd: Vec<[EdgeId; 4]> = a.crossings().to_vec();
    let offset = pd.len();
    pd.extend(b.crossings().iter().map(|q| q.map(|e| e + shift)));
    // ε₀ of d1 now ends where ε₀ of d2 ended, and vice versa.
    pd[h1.crossing][h1.pos as usize] = 1 + shift;
    pd[offset + h2.crossing][h2.pos as usize] = 1;
    let d = PlanarDiagram::from_pd(pd).expect("splicing two knots gives a knot");
    DecoratedDiagram::new(&d, 1).unwrap()
}
