//! Oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::Rng;

use tauknot_core::diagram::{DecoratedDiagram, PlanarDiagram};
use tauknot_core::filtered::{FilteredComplex, Generator};
use tauknot_core::laurent::LaurentPoly;
use tauknot_core::states::KauffmanState;

pub const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
pub const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";

// ---------------------------------------------------------------------------
// Alexander polynomial from the Wirtinger presentation.

/// Arc index of every edge: edges are glued across over strands.
fn arcs(d: &PlanarDiagram) -> Vec<usize> {
    let n = d.edge_count();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(p: &mut Vec<usize>, x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for q in d.crossings() {
        let (a, b) = (
            find(&mut parent, q[1] as usize),
            find(&mut parent, q[3] as usize),
        );
        parent[a] = b;
    }
    let roots: BTreeSet<usize> = (1..=n).map(|e| find(&mut parent, e)).collect();
    let roots: Vec<usize> = roots.into_iter().collect();
    (0..=n)
        .map(|e| {
            if e == 0 {
                0
            } else {
                roots.binary_search(&find(&mut parent, e)).unwrap()
            }
        })
        .collect()
}

fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// A first-minor of the Fox-calculus matrix evaluated at an integer `t`.
pub fn wirtinger_minor(d: &PlanarDiagram, t: i64) -> BigInt {
    let n = d.crossing_count();
    if n == 0 {
        return BigInt::one();
    }
    let arc = arcs(d);
    let t = BigInt::from(t);
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for (x, q) in d.crossings().iter().enumerate() {
        let (k, i, j) = (arc[q[1] as usize], arc[q[0] as usize], arc[q[2] as usize]);
        if d.sign(x) > 0 {
            m[x][k] += BigInt::one() - &t;
            m[x][i] += &t;
            m[x][j] -= BigInt::one();
        } else {
            m[x][k] += &t - BigInt::one();
            m[x][i] += BigInt::one();
            m[x][j] -= &t;
        }
    }
    let minor: Vec<Vec<BigInt>> = m[1..].iter().map(|r| r[1..].to_vec()).collect();
    bareiss_det(minor)
}

/// `|Δ(-1)|` from the Fox matrix.
pub fn fox_determinant(d: &PlanarDiagram) -> u64 {
    wirtinger_minor(d, -1).abs().to_u64().unwrap()
}

/// `t^deg · P(t)` for a symmetric `P`, an integer.
fn shifted_value(p: &LaurentPoly, t: i64) -> BigInt {
    let lo = p.valuation().unwrap_or(0);
    p.terms()
        .map(|(e, c)| BigInt::from(c) * BigInt::from(t).pow((e - lo) as u32))
        .sum()
}

/// Whether `p` agrees with the Wirtinger minor up to a unit `±t^k`, checked
/// at several integers with a common `k`.
pub fn matches_wirtinger(d: &PlanarDiagram, p: &LaurentPoly) -> bool {
    let mut exps = BTreeSet::new();
    for t in [2i64, 3, 5, 7, 11, 13] {
        let w = wirtinger_minor(d, t).abs();
        let v = shifted_value(p, t).abs();
        if v.is_zero() != w.is_zero() {
            return false;
        }
        if v.is_zero() {
            continue;
        }
        // w = t^k v or v = t^k w
        let (big, small, dir) = if w >= v { (w, v, 1i32) } else { (v, w, -1) };
        if !(&big % &small).is_zero() {
            return false;
        }
        let mut q = big / small;
        let mut k = 0;
        while q > BigInt::one() {
            if !(&q % t).is_zero() {
                return false;
            }
            q /= t;
            k += 1;
        }
        exps.insert(dir * k);
    }
    exps.len() == 1
}

// ---------------------------------------------------------------------------
// Naive state enumeration.

/// Every assignment of a corner to each crossing, filtered by the state rules.
pub fn brute_force_states(d: &DecoratedDiagram) -> Vec<Vec<u8>> {
    let pd = d.diagram();
    let n = pd.crossing_count();
    if n == 0 {
        return vec![vec![]];
    }
    let marked = d.marked_regions();
    let mut out = Vec::new();
    let mut corners = vec![0u8; n];
    'outer: loop {
        let regions: Vec<usize> = (0..n).map(|x| pd.corner_region(x, corners[x])).collect();
        let distinct: BTreeSet<usize> = regions.iter().copied().collect();
        if distinct.len() == n && !regions.iter().any(|r| marked.contains(r)) {
            out.push(corners.clone());
        }
        for x in 0..n {
            corners[x] += 1;
            if corners[x] < 4 {
                continue 'outer;
            }
            corners[x] = 0;
        }
        break;
    }
    out
}

// ---------------------------------------------------------------------------
// Multi-filtration from compass directions.

/// Compass direction of each position, 0 = S, 1 = E, 2 = N, 3 = W.
///
/// With the under strand running south to north, the right-hand rule puts
/// the tail of a positive over strand in the west, so positions go clockwise.
fn compass(pos: u8) -> u8 {
    [0, 3, 2, 1][pos as usize]
}

/// Multi-filtration recomputed from geometry; labels of a decorated diagram
/// are consecutive, so edge `i` arrives where edge `i + 1` leaves.
pub fn multi_filtration_oracle(d: &DecoratedDiagram, x: &KauffmanState) -> Vec<(i32, i32)> {
    let pd = d.diagram();
    let n = d.edge_count() as u32;
    let mut out = vec![(0, 0)];
    if pd.crossing_count() == 0 {
        return out;
    }
    for i in 1..n {
        let next = i + 1;
        let (cx, p) = pd
            .crossings()
            .iter()
            .enumerate()
            .find_map(|(cx, q)| {
                (0..4u8)
                    .find(|&p| q[p as usize] == i && q[((p + 2) % 4) as usize] == next)
                    .map(|p| (cx, p))
            })
            .expect("consecutive edges meet");
        let heading = compass((p + 2) % 4);
        // A quadrant is left of travel when it touches the direction a
        // quarter turn counterclockwise of the heading.
        let left_dir = (heading + 1) % 4;
        let k = x.corner(cx);
        let dirs = [compass(k), compass((k + 1) % 4)];
        let left = dirs.contains(&left_dir);
        let over = p % 2 == 1;
        let (a, b) = *out.last().unwrap();
        out.push(match (over, left) {
            (true, true) => (a, b - 1),
            (true, false) => (a, b + 1),
            (false, true) => (a + 1, b),
            (false, false) => (a - 1, b),
        });
    }
    out
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a prime.

pub const P: i64 = 2_147_483_647;

fn inv_mod(a: i64) -> i64 {
    let (mut r, mut e, mut b) = (1i128, (P - 2) as u128, a.rem_euclid(P) as i128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P as i128;
        }
        b = b * b % P as i128;
        e >>= 1;
    }
    r as i64
}

fn to_mod(q: &BigRational) -> i64 {
    let p = BigInt::from(P);
    let n = (q.numer() % &p + &p) % &p;
    let d = (q.denom() % &p + &p) % &p;
    let (n, d) = (n.to_i64().unwrap(), d.to_i64().unwrap());
    (n as i128 * inv_mod(d) as i128 % P as i128) as i64
}

fn reduce_mod(mut m: Vec<Vec<i64>>) -> (Vec<Vec<i64>>, Vec<usize>) {
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = inv_mod(m[r][c]);
        for v in m[r].iter_mut() {
            *v = (*v as i128 * inv as i128 % P as i128) as i64;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..cols {
                    m[i][j] = ((m[i][j] as i128 - f as i128 * m[r][j] as i128)
                        .rem_euclid(P as i128)) as i64;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank_mod_p(rows: &[Vec<i64>]) -> usize {
    let m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.rem_euclid(P)).collect())
        .collect();
    reduce_mod(m).1.len()
}

/// τ recomputed modulo `P`, directly from the definition.
pub fn tau_mod_p(c: &FilteredComplex) -> Option<i32> {
    let g = c.generators();
    let deg = |m: i32| -> Vec<usize> { (0..g.len()).filter(|&i| g[i].maslov == m).collect() };
    let (d0, d1, dm1) = (deg(0), deg(1), deg(-1));
    // Matrix of ∂ from `src` to `dst`, one row per target.
    let mat = |src: &[usize], dst: &[usize]| -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; src.len()]; dst.len()];
        for (f, t, q) in c.differential() {
            if let (Some(i), Some(j)) = (
                dst.iter().position(|&x| x == t),
                src.iter().position(|&x| x == f),
            ) {
                m[i][j] = to_mod(q);
            }
        }
        m
    };
    let levels: BTreeSet<i32> = g.iter().map(|x| x.alexander).collect();
    let boundary_cols = {
        let b = mat(&d1, &d0);
        // columns of b span B_0
        (0..d1.len())
            .map(|j| b.iter().map(|r| r[j]).collect::<Vec<i64>>())
            .collect::<Vec<_>>()
    };
    let base = rank_mod_p(&boundary_cols);
    for m in levels {
        let sub: Vec<usize> = d0
            .iter()
            .copied()
            .filter(|&i| g[i].alexander <= m)
            .collect();
        let dmat = mat(&sub, &dm1);
        // kernel of dmat (rows = targets) over Z/P
        let cols = sub.len();
        let (red, pivots) = reduce_mod(if dmat.is_empty() {
            vec![vec![0; cols]]
        } else {
            dmat
        });
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut vectors = boundary_cols.clone();
        for &f in &free {
            let mut v = vec![0i64; d0.len()];
            v[d0.iter().position(|&x| x == sub[f]).unwrap()] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[d0.iter().position(|&x| x == sub[pc]).unwrap()] = (P - red[row][f]) % P;
            }
            vectors.push(v);
        }
        if rank_mod_p(&vectors) > base {
            return Some(m);
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Random complexes with unknot-type homology.

pub struct RandomComplex {
    pub complex: FilteredComplex,
    pub tau: i32,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// One surviving generator plus acyclic pairs, scrambled by a filtered
/// unitriangular change of basis.
pub fn random_unknot_complex<R: Rng>(rng: &mut R) -> RandomComplex {
    let tau = rng.gen_range(-3..=3);
    let mut gens = vec![Generator::new("x", 0, tau)];
    let mut pairs = Vec::new();
    for i in 0..rng.gen_range(0..=4) {
        let m = rng.gen_range(-2..=2);
        let hi = rng.gen_range(-3..=3);
        let lo = hi - rng.gen_range(0..=2);
        pairs.push((gens.len(), gens.len() + 1));
        gens.push(Generator::new(format!("p{i}"), m + 1, hi));
        gens.push(Generator::new(format!("q{i}"), m, lo));
    }
    let n = gens.len();
    // D[t][f]: coefficient of t in ∂f
    let mut dm = vec![vec![q(0); n]; n];
    for &(f, t) in &pairs {
        dm[t][f] = q(1);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    // New basis g'_i = g_i + Σ λ g_j for j before i in `order`, same M, A_j ≤ A_i.
    let mut pm = vec![vec![q(0); n]; n];
    for i in 0..n {
        pm[i][i] = q(1);
    }
    for (oi, &i) in order.iter().enumerate() {
        for &j in &order[..oi] {
            if gens[j].maslov == gens[i].maslov
                && gens[j].alexander <= gens[i].alexander
                && rng.gen_bool(0.5)
            {
                let l = *[-2i64, -1, 1, 2].choose(rng).unwrap();
                pm[j][i] = q(l);
            }
        }
    }
    let pinv = invert(&pm);
    let d2 = matmul(&matmul(&pinv, &dm), &pm);
    let mut entries = Vec::new();
    for t in 0..n {
        for f in 0..n {
            if !d2[t][f].is_zero() {
                entries.push((f, t, d2[t][f].clone()));
            }
        }
    }
    RandomComplex {
        complex: FilteredComplex::new(gens, entries).expect("scrambled complex is valid"),
        tau,
    }
}

fn matmul(a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(q(0), |acc, k| acc + &a[i][k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn invert(a: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { q(1) } else { q(0) }));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("invertible");
        m.swap(c, p);
        let inv = m[c][c].recip();
        for v in m[c].iter_mut() {
            *v *= &inv;
        }
        let pivot = m[c].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != c && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot) {
                    *v -= &f * p;
                }
            }
        }
    }
    m.into_iter().map(|r| r[n..].to_vec()).collect()
}

pub fn sign_of(v: &BigInt) -> i8 {
    if v.is_negative() {
        -1
    } else {
        1
    }
}
