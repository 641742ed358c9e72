//! Independent oracles shared by the integration tests. Nothing here calls
//! into the pseudoinverse or kernel code paths under test.

#![allow(dead_code)]

use netid::{random_graph, MetrizedGraph, RandomGraphSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const PATH: &str = "a b 1\nb c 1";
pub const TRIANGLE: &str = "a b 1\nb c 1\nc a 1";

pub fn parse(text: &str) -> MetrizedGraph {
    MetrizedGraph::parse_edge_list(text).unwrap()
}

/// Weighted Laplacian of a multigraph: parallel conductances add, loops
/// carry no current.
pub fn multigraph_laplacian(g: &MetrizedGraph) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut l = vec![vec![0.0; n]; n];
    for e in g.edges() {
        if e.a == e.b {
            continue;
        }
        let c = 1.0 / e.length;
        l[e.a][e.b] -= c;
        l[e.b][e.a] -= c;
        l[e.a][e.a] += c;
        l[e.b][e.b] += c;
    }
    l
}

/// Gauss–Jordan inverse with partial pivoting.
pub fn invert(mut a: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut inv: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f64::from(u8::from(i == j))).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .unwrap();
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let d = a[col][col];
        assert!(d.abs() > 1e-300, "singular matrix in oracle");
        for j in 0..n {
            a[col][j] /= d;
            inv[col][j] /= d;
        }
        for row in 0..n {
            if row != col {
                let f = a[row][col];
                if f != 0.0 {
                    for j in 0..n {
                        a[row][j] -= f * a[col][j];
                        inv[row][j] -= f * inv[col][j];
                    }
                }
            }
        }
    }
    inv
}

/// Nodal-analysis resistances: for each ground `q`, solve `L v = e_p − e_q`
/// with `v_q = 0`; then `r(p,q) = v_p`, the diagonal of the inverse of the
/// grounded Laplacian.
pub fn nodal_resistances(g: &MetrizedGraph) -> Vec<Vec<f64>> {
    let l = multigraph_laplacian(g);
    let n = g.n();
    let mut r = vec![vec![0.0; n]; n];
    for q in 0..n {
        let keep: Vec<usize> = (0..n).filter(|&i| i != q).collect();
        let reduced: Vec<Vec<f64>> = keep
            .iter()
            .map(|&i| keep.iter().map(|&j| l[i][j]).collect())
            .collect();
        let inv = invert(reduced);
        for (slot, &p) in keep.iter().enumerate() {
            r[p][q] = inv[slot][slot];
        }
    }
    r
}

/// Sum over all walks `w = m0 ~ m1 ~ … ~ m_order = t` of
/// `C_{m0 m1}⋯C_{m_{order−1} t} / (C_{m1}⋯C_{m_{order−1}})`, by explicit enumeration.
pub fn enumerate_path_weights(g: &MetrizedGraph, order: usize) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut c = vec![vec![0.0; n]; n];
    for e in g.edges() {
        c[e.a][e.b] = 1.0 / e.length;
        c[e.b][e.a] = 1.0 / e.length;
    }
    let cv: Vec<f64> = c.iter().map(|row| row.iter().sum()).collect();
    let mut out = vec![vec![0.0; n]; n];
    fn walk(
        c: &[Vec<f64>],
        cv: &[f64],
        start: usize,
        at: usize,
        left: usize,
        weight: f64,
        out: &mut [Vec<f64>],
    ) {
        for next in 0..c.len() {
            if c[at][next] == 0.0 {
                continue;
            }
            let w = weight * c[at][next];
            if left == 1 {
                out[start][next] += w;
            } else {
                walk(c, cv, start, next, left - 1, w / cv[next], out);
            }
        }
    }
    for start in 0..n {
        walk(&c, &cv, start, start, order, 1.0, &mut out);
    }
    out
}

/// Corpus member `index`: `n` uniform in `n_range`, edge probability
/// uniform in [0.01, 0.3], lengths in [0.1, 10].
pub fn corpus_graph(index: u64, n_range: std::ops::RangeInclusive<usize>) -> MetrizedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + index);
    let n = rng.random_range(n_range);
    let prob = rng.random_range(0.01..0.3);
    random_graph(RandomGraphSpec::new(n, prob, rng.random())).unwrap()
}
