//! Knot signature from a checkerboard coloring.

use std::collections::{BTreeMap, VecDeque};

use crate::diagram::{PlanarDiagram, Role};
use crate::linalg;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    White,
    Black,
}

#[derive(Clone, Debug)]
pub struct CheckerboardData {
    pub coloring: Vec<Color>,
    /// White regions, in the order used for the rows of `goeritz`; the first
    /// one has been deleted from the matrix.
    pub white: Vec<usize>,
    pub goeritz: Vec<Vec<i64>>,
    pub correction: i32,
}

/// Proper two-coloring of the regions; region 0 is white.
pub fn checkerboard_coloring(d: &PlanarDiagram) -> Vec<Color> {
    let n = d.region_count();
    if d.crossing_count() == 0 {
        return vec![Color::White, Color::Black];
    }
    let mut adj = vec![Vec::new(); n];
    for x in 0..d.crossing_count() {
        for k in 0..4 {
            let (f, g) = (d.corner_region(x, k), d.corner_region(x, k + 1));
            adj[f].push(g);
            adj[g].push(f);
        }
    }
    let mut col: Vec<Option<Color>> = vec![None; n];
    col[0] = Some(Color::White);
    let mut queue = VecDeque::from([0]);
    while let Some(f) = queue.pop_front() {
        let other = match col[f].unwrap() {
            Color::White => Color::Black,
            Color::Black => Color::White,
        };
        for &g in &adj[f] {
            match col[g] {
                None => {
                    col[g] = Some(other);
                    queue.push_back(g);
                }
                Some(c) => assert_eq!(c, other, "regions {f} and {g} share an edge and a color"),
            }
        }
    }
    col.into_iter().map(|c| c.unwrap()).collect()
}

pub fn checkerboard(d: &PlanarDiagram) -> CheckerboardData {
    let coloring = checkerboard_coloring(d);
    let white: Vec<usize> = (0..d.region_count())
        .filter(|&r| coloring[r] == Color::White)
        .collect();
    let index: BTreeMap<usize, usize> = white.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut g = vec![vec![0i64; white.len()]; white.len()];
    let mut correction = 0;
    for x in 0..d.crossing_count() {
        let wc: Vec<u8> = (0..4)
            .filter(|&k| coloring[d.corner_region(x, k)] == Color::White)
            .collect();
        let eta: i64 = if wc == [0, 2] { -1 } else { 1 };
        let roles = [d.role(x, wc[0]), d.role(x, wc[1])];
        if roles.contains(&Role::Left) && roles.contains(&Role::Right) {
            correction += eta as i32;
        }
        let (f, h) = (
            index[&d.corner_region(x, wc[0])],
            index[&d.corner_region(x, wc[1])],
        );
        if f != h {
            g[f][h] -= eta;
            g[h][f] -= eta;
            g[f][f] += eta;
            g[h][h] += eta;
        }
    }
    let goeritz = g.iter().skip(1).map(|r| r[1..].to_vec()).collect();
    CheckerboardData {
        coloring,
        white,
        goeritz,
        correction,
    }
}

/// σ(K), normalized so that the right-handed trefoil has σ = -2.
pub fn signature(d: &PlanarDiagram) -> i32 {
    let c = checkerboard(d);
    let s = linalg::signature(&c.goeritz) - c.correction;
    debug_assert!(s % 2 == 0);
    s
}
