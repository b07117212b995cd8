//! Seifert matrix of the surface built by Seifert's algorithm.
//!
//! Seifert circles bound disks stacked by nesting; each crossing is a
//! half-twisted band. Generators of H₁ are the fundamental cycles of the
//! Seifert graph. A loop runs along each band in its own lane and follows
//! the collar of every disk it visits. Linking numbers with the push-off
//! count crossings of lanes and collar runs.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::diagram::{Dart, PlanarDiagram, Role};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum End {
    A,
    B,
}

#[derive(Clone, Copy, Debug)]
struct Band {
    crossing: usize,
    from: usize,
    to: usize,
    from_end: End,
    to_end: End,
    lane: i64,
    key: (usize, usize),
}

#[derive(Clone, Copy, Debug)]
struct Run {
    circle: usize,
    start: i64,
    end: i64,
    key: (usize, usize),
}

struct Surface<'a> {
    d: &'a PlanarDiagram,
    circle_len: Vec<usize>,
    ccw: Vec<bool>,
    attach: HashMap<(usize, End), (usize, usize)>,
    folded: Vec<Option<usize>>,
    cycles: Vec<Vec<(usize, usize, usize)>>,
}

impl Surface<'_> {
    fn end_of(&self, crossing: usize, circle: usize) -> End {
        if self.attach[&(crossing, End::A)].0 == circle {
            End::A
        } else {
            End::B
        }
    }

    fn scale(&self) -> i64 {
        10 * (self.cycles.len() as i64 + 1)
    }

    /// Position of a lane where it meets a circle, on a scale where each
    /// attachment slot has width `scale()`.
    fn pos(&self, crossing: usize, end: End, lane: i64) -> i64 {
        let (_, k) = self.attach[&(crossing, end)];
        let g1 = self.cycles.len() as i64 + 1;
        let base = k as i64 * self.scale();
        match end {
            End::A => base + g1 + 8 * lane,
            End::B => base + 9 * g1 - 8 * lane,
        }
    }

    fn build(&self, c: usize) -> (Vec<Band>, Vec<Run>) {
        let cyc = &self.cycles[c];
        let lane = c as i64 + 1;
        let bands: Vec<Band> = cyc
            .iter()
            .enumerate()
            .map(|(si, &(y, s, t))| Band {
                crossing: y,
                from: s,
                to: t,
                from_end: self.end_of(y, s),
                to_end: self.end_of(y, t),
                lane,
                key: (c, si),
            })
            .collect();
        let runs = (0..bands.len())
            .map(|si| {
                let bin = bands[si];
                let bout = bands[(si + 1) % bands.len()];
                assert_eq!(bout.from, bin.to, "cycle is not closed");
                Run {
                    circle: bin.to,
                    start: self.pos(bin.crossing, bin.to_end, bin.lane),
                    end: self.pos(bout.crossing, bout.from_end, bout.lane),
                    key: (c, si),
                }
            })
            .collect();
        (bands, runs)
    }

    fn depth(&self, key: (usize, usize)) -> i64 {
        2 * (key.0 as i64 * (self.circle_len.len() as i64 + 2) + key.1 as i64 + 1)
    }

    fn circumference(&self, circle: usize) -> i64 {
        self.circle_len[circle] as i64 * self.scale()
    }

    fn linking(&self, ca: usize, cb: usize, built: &[(Vec<Band>, Vec<Run>)]) -> i64 {
        let (a_bands, a_runs) = &built[ca];
        let (b_bands, b_runs) = &built[cb];
        let mut total = 0;
        for ab in a_bands {
            for bb in b_bands {
                if ab.crossing != bb.crossing {
                    continue;
                }
                let eps = self.d.sign(ab.crossing) as i64;
                let a_over = if ab.key == bb.key {
                    let n_to = if self.ccw[ab.to] { 1 } else { -1 };
                    eps * n_to < 0
                } else {
                    ab.lane > bb.lane
                };
                if a_over {
                    let da = if ab.from_end == End::B { 1 } else { -1 };
                    let db = if bb.from_end == End::A { 1 } else { -1 };
                    total += eps * da * db;
                }
            }
        }
        for ra in a_runs {
            for rb in b_runs {
                if ra.circle != rb.circle || self.ccw[ra.circle] {
                    continue;
                }
                let c = self.circumference(ra.circle);
                let inward = if self.ccw[ra.circle] { 1 } else { -1 };
                let da = self.depth(ra.key);
                let db = self.depth(rb.key) + i64::from(ra.key == rb.key);
                if da < db {
                    for (x, dir) in [(rb.start, inward), (rb.end, -inward)] {
                        if in_span(x, ra.start, ra.end, c) {
                            total += cross((1, 0), (0, dir));
                        }
                    }
                } else if db < da {
                    for (x, dir) in [(ra.start, inward), (ra.end, -inward)] {
                        if in_span(x, rb.start, rb.end, c) {
                            total += cross((0, dir), (1, 0));
                        }
                    }
                }
            }
        }
        for ab in a_bands {
            let Some(oc) = self.folded[ab.crossing] else {
                continue;
            };
            let (x, sense) = if ab.from == oc {
                (self.pos(ab.crossing, ab.from_end, ab.lane), 1)
            } else {
                (self.pos(ab.crossing, ab.to_end, ab.lane), -1)
            };
            let inward = if self.ccw[oc] { 1 } else { -1 };
            for rb in b_runs {
                if rb.circle == oc
                    && in_span_closed_end(x, rb.start, rb.end, self.circumference(oc))
                {
                    total += cross((0, inward * sense), (1, 0));
                }
            }
        }
        total
    }
}

fn cross(o: (i64, i64), u: (i64, i64)) -> i64 {
    if o.0 * u.1 - o.1 * u.0 > 0 {
        1
    } else {
        -1
    }
}

/// Strictly inside the forward span from `a` to `b` on a circle of length `c`.
fn in_span(x: i64, a: i64, b: i64, c: i64) -> bool {
    let (x, a, b) = (x.rem_euclid(c), a.rem_euclid(c), b.rem_euclid(c));
    if a <= b {
        a < x && x < b
    } else {
        x > a || x < b
    }
}

/// Inside the forward span from `a` to `b`, counting `b` but not `a`.
fn in_span_closed_end(x: i64, a: i64, b: i64, c: i64) -> bool {
    in_span(x, a, b, c) || (x - b).rem_euclid(c) == 0 && (a - b).rem_euclid(c) != 0
}

/// A Seifert matrix `V` with `lk(α, β⁺)` in entry `(α, β)`.
pub fn seifert_matrix_oracle(d: &PlanarDiagram) -> Vec<Vec<i64>> {
    let n = d.crossing_count();
    if n == 0 {
        return Vec::new();
    }
    // Smoothing: incoming under continues on outgoing over (arc A), incoming
    // over continues on outgoing under (arc B).
    let mut smooth: HashMap<Dart, (Dart, End)> = HashMap::new();
    for x in 0..n {
        let ou = d.over_under(x);
        smooth.insert(Dart::new(x, 0), (Dart::new(x, ou.over_out), End::A));
        smooth.insert(Dart::new(x, ou.over_in), (Dart::new(x, 2), End::B));
    }
    let mut next: HashMap<Dart, (u32, Dart)> = HashMap::new();
    for e in 1..=d.edge_count() as u32 {
        let (t, h) = d.edge_ends(e).unwrap();
        next.insert(t, (e, h));
    }
    let mut circles: Vec<Vec<(u32, usize, End)>> = Vec::new();
    let mut seen = BTreeSet::new();
    for x in 0..n {
        for q in 0..4 {
            let start = Dart::new(x, q);
            if seen.contains(&start) || !next.contains_key(&start) {
                continue;
            }
            let mut cyc = Vec::new();
            let mut cur = start;
            while seen.insert(cur) {
                let (e, head) = next[&cur];
                let (out, end) = smooth[&head];
                cyc.push((e, head.crossing, end));
                cur = out;
            }
            circles.push(cyc);
        }
    }
    let mut edge_circle = HashMap::new();
    let mut attach = HashMap::new();
    for (ci, cyc) in circles.iter().enumerate() {
        for (k, &(e, y, end)) in cyc.iter().enumerate() {
            edge_circle.insert(e, ci);
            attach.insert((y, end), (ci, k));
        }
    }

    let left = |e: u32| {
        let t = d.edge_ends(e).unwrap().0;
        d.corner_region(t.crossing, (t.pos + 3) % 4)
    };
    let right = |e: u32| {
        let t = d.edge_ends(e).unwrap().0;
        d.corner_region(t.crossing, t.pos)
    };
    let mut adj: Vec<(usize, usize, Option<u32>)> = (1..=d.edge_count() as u32)
        .map(|e| (left(e), right(e), Some(e)))
        .collect();
    for x in 0..n {
        adj.push((
            d.corner_region(x, d.corner_with_role(x, Role::Back)),
            d.corner_region(x, d.corner_with_role(x, Role::Front)),
            None,
        ));
    }
    let component = |ci: usize, start: usize| -> BTreeSet<usize> {
        let mut comp = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            for &(a, b, e) in &adj {
                if e.is_some_and(|e| edge_circle[&e] == ci) {
                    continue;
                }
                for (u, v) in [(a, b), (b, a)] {
                    if u == f && comp.insert(v) {
                        stack.push(v);
                    }
                }
            }
        }
        comp
    };
    let outer = 0;
    let mut ccw = Vec::new();
    let mut interior = Vec::new();
    for (ci, cyc) in circles.iter().enumerate() {
        let e = cyc[0].0;
        let l = component(ci, left(e));
        let r = component(ci, right(e));
        assert!(l.is_disjoint(&r), "Seifert circle {ci} does not separate");
        if l.contains(&outer) {
            ccw.push(false);
            interior.push(r);
        } else {
            ccw.push(true);
            interior.push(l);
        }
    }
    let inside = |cj: usize, ci: usize| {
        let e = circles[cj][0].0;
        interior[ci].contains(&left(e)) && interior[ci].contains(&right(e))
    };
    let folded: Vec<Option<usize>> = (0..n)
        .map(|x| {
            let ca = attach[&(x, End::A)].0;
            let cb = attach[&(x, End::B)].0;
            if ca != cb && inside(cb, ca) {
                Some(ca)
            } else if ca != cb && inside(ca, cb) {
                Some(cb)
            } else {
                None
            }
        })
        .collect();

    // Spanning tree of the Seifert graph and its fundamental cycles.
    let nc = circles.len();
    let mut graph = vec![Vec::new(); nc];
    for x in 0..n {
        let ca = attach[&(x, End::A)].0;
        let cb = attach[&(x, End::B)].0;
        assert_ne!(ca, cb, "Seifert graph has a loop at crossing {x}");
        graph[ca].push((x, cb));
        graph[cb].push((x, ca));
    }
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; nc];
    let mut reached = vec![false; nc];
    reached[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(u) = queue.pop_front() {
        for &(x, v) in &graph[u] {
            if !reached[v] {
                reached[v] = true;
                parent[v] = Some((x, u));
                queue.push_back(v);
            }
        }
    }
    let tree: BTreeSet<usize> = parent.iter().flatten().map(|&(x, _)| x).collect();
    let path_to_root = |mut v: usize| {
        let mut p = Vec::new();
        while let Some((x, u)) = parent[v] {
            p.push((v, x, u));
            v = u;
        }
        p
    };
    let mut cycles = Vec::new();
    for x in 0..n {
        if tree.contains(&x) {
            continue;
        }
        let ca = attach[&(x, End::A)].0;
        let cb = attach[&(x, End::B)].0;
        let mut pa = path_to_root(ca);
        let mut pb = path_to_root(cb);
        while !pa.is_empty() && pa.last() == pb.last() {
            pa.pop();
            pb.pop();
        }
        let mut steps = vec![(x, ca, cb)];
        steps.extend(pb.iter().map(|&(v, y, u)| (y, v, u)));
        steps.extend(pa.iter().rev().map(|&(v, y, u)| (y, u, v)));
        cycles.push(steps);
    }

    let surface = Surface {
        d,
        circle_len: circles.iter().map(|c| c.len()).collect(),
        ccw,
        attach,
        folded,
        cycles,
    };
    let g = surface.cycles.len();
    let built: Vec<_> = (0..g).map(|c| surface.build(c)).collect();
    (0..g)
        .map(|a| (0..g).map(|b| surface.linking(a, b, &built)).collect())
        .collect()
}

/// Signature of `V + Vᵀ`.
pub fn seifert_signature(v: &[Vec<i64>]) -> i32 {
    let sym: Vec<Vec<i64>> = (0..v.len())
        .map(|i| (0..v.len()).map(|j| v[i][j] + v[j][i]).collect())
        .collect();
    crate::linalg::signature(&sym)
}
