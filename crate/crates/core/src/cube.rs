//! The cube of resolutions and the bigraded Khovanov chain complex.
//!
//! Generators are enhanced states: a vertex of the cube (one smoothing bit per
//! crossing) together with a label `1` or `x` on every circle. Labels are kept
//! as a bitmask over circle indices, bit `k` set meaning circle `k` carries `x`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::diagram::{Crossing, Edge, PlanarDiagram};
use crate::error::{Error, Result};
use crate::zlinalg::SparseIntMatrix;

pub const DEFAULT_CAP: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bigrading {
    pub i: i32,
    pub j: i32,
}

impl Bigrading {
    pub fn new(i: i32, j: i32) -> Self {
        Bigrading { i, j }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    One,
    X,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionVertex {
    pub mask: u32,
    pub circles: usize,
    /// Circle index of every edge, in ascending label order.
    pub circle_of_edge: Vec<u8>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EdgeKind {
    Merge,
    Split,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeEdge {
    pub from: u32,
    pub to: u32,
    pub bit: usize,
    pub kind: EdgeKind,
    pub sign: i8,
    /// Image in `to` of each circle of `from` (for a split, the active
    /// circle is sent to `active_to[0]`).
    pub circle_map: Vec<u8>,
    /// Circles touching the changed crossing: two then one for a merge, one
    /// then two for a split (single circles are repeated).
    pub active_from: [u8; 2],
    pub active_to: [u8; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnhancedState {
    pub vertex: ResolutionVertex,
    pub labels: Vec<Label>,
}

/// Crossing sides as indices into the sorted edge list.
#[derive(Clone, Debug)]
struct EdgeIndex {
    labels: Vec<Edge>,
    sides: Vec<[usize; 4]>,
    free: usize,
}

impl EdgeIndex {
    fn new(d: &PlanarDiagram) -> Self {
        let labels = d.edges();
        let pos = |e: Edge| labels.binary_search(&e).expect("edge label present");
        let sides = d.crossings().iter().map(|c| c.edges.map(pos)).collect();
        EdgeIndex {
            labels,
            sides,
            free: d.free_circles(),
        }
    }

    fn resolve(&self, mask: u32) -> ResolutionVertex {
        let m = self.labels.len();
        let mut parent: Vec<usize> = (0..m).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (k, s) in self.sides.iter().enumerate() {
            for (a, b) in Crossing::smoothing(mask >> k & 1 == 1) {
                let (ra, rb) = (find(&mut parent, s[a]), find(&mut parent, s[b]));
                if ra != rb {
                    parent[ra.max(rb)] = ra.min(rb);
                }
            }
        }
        // roots are minimal members, so numbering by first appearance orders
        // circles by their smallest edge label
        let mut number = vec![u8::MAX; m];
        let mut circle_of_edge = vec![0u8; m];
        let mut next = 0u8;
        for e in 0..m {
            let r = find(&mut parent, e);
            if number[r] == u8::MAX {
                number[r] = next;
                next += 1;
            }
            circle_of_edge[e] = number[r];
        }
        ResolutionVertex {
            mask,
            circles: next as usize + self.free,
            circle_of_edge,
        }
    }
}

/// Circles of the resolution of `d` given by `mask` (bit `k` = smoothing at
/// crossing `k`).
pub fn resolve(d: &PlanarDiagram, mask: &[bool]) -> Result<ResolutionVertex> {
    if mask.len() != d.crossing_count() {
        return Err(Error::Shape(format!(
            "mask of length {} for {} crossings",
            mask.len(),
            d.crossing_count()
        )));
    }
    if mask.len() > 32 {
        return Err(Error::CapExceeded {
            crossings: mask.len(),
            cap: 32,
        });
    }
    let bits = mask
        .iter()
        .enumerate()
        .fold(0u32, |acc, (k, &b)| acc | (u32::from(b) << k));
    Ok(EdgeIndex::new(d).resolve(bits))
}

/// Circle counts of every vertex, indexed by mask.
pub(crate) fn all_circle_counts(d: &PlanarDiagram, cap: usize) -> Result<Vec<usize>> {
    check_cap(d, cap)?;
    let idx = EdgeIndex::new(d);
    Ok((0..1u32 << d.crossing_count())
        .map(|m| idx.resolve(m).circles)
        .collect())
}

fn check_cap(d: &PlanarDiagram, cap: usize) -> Result<()> {
    let n = d.crossing_count();
    if n > cap || n > 31 {
        return Err(Error::CapExceeded {
            crossings: n,
            cap: cap.min(31),
        });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct Cube {
    n: usize,
    n_plus: i32,
    n_minus: i32,
    vertices: Vec<ResolutionVertex>,
    edges: Vec<CubeEdge>,
    edge_start: Vec<usize>,
}

pub fn build_cube(d: &PlanarDiagram, cap: usize) -> Result<Cube> {
    check_cap(d, cap)?;
    let idx = EdgeIndex::new(d);
    let n = d.crossing_count();
    let vertices: Vec<ResolutionVertex> = (0..1u32 << n).map(|m| idx.resolve(m)).collect();
    let mut edges = Vec::with_capacity(n << n.saturating_sub(1));
    let mut edge_start = Vec::with_capacity(vertices.len() + 1);
    for v in &vertices {
        edge_start.push(edges.len());
        for bit in 0..n {
            if v.mask >> bit & 1 == 1 {
                continue;
            }
            let w = &vertices[(v.mask | 1 << bit) as usize];
            edges.push(cube_edge(&idx, v, w, bit));
        }
    }
    edge_start.push(edges.len());
    Ok(Cube {
        n,
        n_plus: d.n_plus() as i32,
        n_minus: d.n_minus() as i32,
        vertices,
        edges,
        edge_start,
    })
}

fn cube_edge(idx: &EdgeIndex, v: &ResolutionVertex, w: &ResolutionVertex, bit: usize) -> CubeEdge {
    let side = idx.sides[bit];
    let kind = if w.circles + 1 == v.circles {
        EdgeKind::Merge
    } else {
        debug_assert_eq!(w.circles, v.circles + 1);
        EdgeKind::Split
    };
    let edge_circles = v.circles - idx.free;
    let mut circle_map = vec![0u8; v.circles];
    for (e, &c) in v.circle_of_edge.iter().enumerate() {
        circle_map[c as usize] = w.circle_of_edge[e];
    }
    let w_edge_circles = w.circles - idx.free;
    for f in 0..idx.free {
        circle_map[edge_circles + f] = (w_edge_circles + f) as u8;
    }
    // the 0-smoothing pairs sides (0,1),(2,3); the 1-smoothing pairs (0,3),(1,2)
    let (active_from, active_to) = match kind {
        EdgeKind::Merge => {
            let a = v.circle_of_edge[side[0]];
            let b = v.circle_of_edge[side[2]];
            let m = w.circle_of_edge[side[0]];
            ([a, b], [m, m])
        }
        EdgeKind::Split => {
            let a = v.circle_of_edge[side[0]];
            let p = w.circle_of_edge[side[0]];
            let q = w.circle_of_edge[side[1]];
            circle_map[a as usize] = p;
            ([a, a], [p, q])
        }
    };
    let below = (v.mask & ((1u32 << bit) - 1)).count_ones();
    CubeEdge {
        from: v.mask,
        to: w.mask,
        bit,
        kind,
        sign: if below % 2 == 0 { 1 } else { -1 },
        circle_map,
        active_from,
        active_to,
    }
}

impl Cube {
    pub fn crossing_count(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[ResolutionVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[CubeEdge] {
        &self.edges
    }

    pub fn n_plus(&self) -> i32 {
        self.n_plus
    }

    pub fn n_minus(&self) -> i32 {
        self.n_minus
    }

    pub fn edge(&self, from: u32, bit: usize) -> &CubeEdge {
        debug_assert_eq!(from >> bit & 1, 0);
        let below_zero = bit as u32 - (from & ((1u32 << bit) - 1)).count_ones();
        &self.edges[self.edge_start[from as usize] + below_zero as usize]
    }

    /// Structured text dump: one line per vertex, then one per edge.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let width = self.n.max(1);
        for v in &self.vertices {
            let _ = writeln!(s, "vertex {:0width$b} circles={}", v.mask, v.circles);
        }
        for e in &self.edges {
            let kind = match e.kind {
                EdgeKind::Merge => "merge",
                EdgeKind::Split => "split",
            };
            let _ = writeln!(
                s,
                "edge {:0width$b} -> {:0width$b} {kind} sign={:+}",
                e.from, e.to, e.sign
            );
        }
        s
    }
}

fn quantum(circles: usize, xs: usize, height: i32, n_plus: i32, n_minus: i32) -> i32 {
    circles as i32 - 2 * xs as i32 + height + n_plus - 2 * n_minus
}

/// `i = |v| - n₋`, `j = #1 - #x + |v| + n₊ - 2n₋`.
pub fn gradings(d: &PlanarDiagram, state: &EnhancedState) -> Bigrading {
    let height = state.vertex.mask.count_ones() as i32;
    let n_plus = d.n_plus() as i32;
    let n_minus = d.n_minus() as i32;
    let xs = state.labels.iter().filter(|&&l| l == Label::X).count();
    Bigrading::new(
        height - n_minus,
        quantum(state.labels.len(), xs, height, n_plus, n_minus),
    )
}

/// Label codes of one circle count, grouped by number of `x` labels and
/// sorted lexicographically (circle 0 most significant, `1` before `x`).
#[derive(Clone, Debug)]
struct LabelOrder {
    by_xs: Vec<Vec<u32>>,
    rank_of: Vec<u32>,
}

impl LabelOrder {
    fn new(c: usize) -> Self {
        let key = |xs: u32| -> u32 {
            (0..c).fold(0, |acc, k| (acc << 1) | (xs >> k & 1))
        };
        let mut by_xs: Vec<Vec<u32>> = vec![Vec::new(); c + 1];
        for xs in 0..1u32 << c {
            by_xs[xs.count_ones() as usize].push(xs);
        }
        let mut rank_of = vec![0u32; 1 << c];
        for group in &mut by_xs {
            group.sort_by_key(|&xs| key(xs));
            for (r, &xs) in group.iter().enumerate() {
                rank_of[xs as usize] = r as u32;
            }
        }
        LabelOrder { by_xs, rank_of }
    }
}

/// Bases of every chain group `C^{i,j}`, ordered by vertex mask and then by
/// label vector.
pub struct ChainComplex<'a> {
    cube: &'a Cube,
    orders: HashMap<usize, LabelOrder>,
    by_height: Vec<Vec<u32>>,
}

impl<'a> ChainComplex<'a> {
    pub fn new(cube: &'a Cube) -> Self {
        let mut orders = HashMap::new();
        let mut by_height = vec![Vec::new(); cube.n + 1];
        for v in &cube.vertices {
            orders
                .entry(v.circles)
                .or_insert_with(|| LabelOrder::new(v.circles));
            by_height[v.mask.count_ones() as usize].push(v.mask);
        }
        ChainComplex {
            cube,
            orders,
            by_height,
        }
    }

    fn xs_count(&self, v: &ResolutionVertex, j: i32) -> Option<usize> {
        let h = v.mask.count_ones() as i32;
        let top = quantum(v.circles, 0, h, self.cube.n_plus, self.cube.n_minus);
        let diff = top - j;
        if diff < 0 || diff % 2 != 0 || diff / 2 > v.circles as i32 {
            return None;
        }
        Some(diff as usize / 2)
    }

    fn height(&self, i: i32) -> Option<usize> {
        let h = i + self.cube.n_minus;
        (0..=self.cube.n as i32).contains(&h).then_some(h as usize)
    }

    /// `(mask, first index, xs count)` for every vertex contributing to `C^{i,j}`.
    fn basis(&self, i: i32, j: i32) -> (Vec<(u32, usize, usize)>, usize) {
        let mut out = Vec::new();
        let mut total = 0;
        if let Some(h) = self.height(i) {
            for &m in &self.by_height[h] {
                let v = &self.cube.vertices[m as usize];
                if let Some(k) = self.xs_count(v, j) {
                    out.push((m, total, k));
                    total += self.orders[&v.circles].by_xs[k].len();
                }
            }
        }
        (out, total)
    }

    pub fn chain_rank(&self, i: i32, j: i32) -> usize {
        self.basis(i, j).1
    }

    pub fn chain_ranks(&self) -> BTreeMap<Bigrading, usize> {
        let mut out = BTreeMap::new();
        for v in &self.cube.vertices {
            let h = v.mask.count_ones() as i32;
            let i = h - self.cube.n_minus;
            for k in 0..=v.circles {
                let j = quantum(v.circles, k, h, self.cube.n_plus, self.cube.n_minus);
                *out.entry(Bigrading::new(i, j)).or_insert(0) +=
                    self.orders[&v.circles].by_xs[k].len();
            }
        }
        out
    }

    /// Matrix of `d: C^{i,j} -> C^{i+1,j}` (rows index the target basis).
    pub fn differential_matrix(&self, i: i32, j: i32) -> SparseIntMatrix {
        let (src, cols) = self.basis(i, j);
        let (dst, rows) = self.basis(i + 1, j);
        let target: HashMap<u32, usize> = dst.iter().map(|&(m, off, _)| (m, off)).collect();
        let mut triplets: Vec<(usize, usize, i64)> = Vec::new();
        for &(m, off, k) in &src {
            let v = &self.cube.vertices[m as usize];
            let order = &self.orders[&v.circles];
            for bit in 0..self.cube.n {
                if m >> bit & 1 == 1 {
                    continue;
                }
                let e = self.cube.edge(m, bit);
                let w = &self.cube.vertices[e.to as usize];
                let Some(&row0) = target.get(&e.to) else {
                    continue;
                };
                let w_order = &self.orders[&w.circles];
                let sign = i64::from(e.sign);
                for (r, &xs) in order.by_xs[k].iter().enumerate() {
                    let col = off + r;
                    let mut img = 0u32;
                    for c in 0..v.circles {
                        if xs >> c & 1 == 1 && !e.active_from.contains(&(c as u8)) {
                            img |= 1 << e.circle_map[c];
                        }
                    }
                    let row = |t: u32| row0 + w_order.rank_of[t as usize] as usize;
                    match e.kind {
                        EdgeKind::Merge => {
                            let xa = xs >> e.active_from[0] & 1;
                            let xb = xs >> e.active_from[1] & 1;
                            if xa + xb < 2 {
                                let t = img | ((xa | xb) << e.active_to[0]);
                                triplets.push((row(t), col, sign));
                            }
                        }
                        EdgeKind::Split => {
                            let (p, q) = (1u32 << e.active_to[0], 1u32 << e.active_to[1]);
                            if xs >> e.active_from[0] & 1 == 1 {
                                triplets.push((row(img | p | q), col, sign));
                            } else {
                                triplets.push((row(img | p), col, sign));
                                triplets.push((row(img | q), col, sign));
                            }
                        }
                    }
                }
            }
        }
        SparseIntMatrix::from_triplets(rows, cols, triplets)
            .expect("differential indices stay within the bases")
    }
}

/// Chain-group ranks of every populated bidegree.
pub fn chain_rank(d: &PlanarDiagram, cap: usize) -> Result<BTreeMap<Bigrading, usize>> {
    let cube = build_cube(d, cap)?;
    Ok(ChainComplex::new(&cube).chain_ranks())
}

pub fn differential_matrix(cube: &Cube, i: i32, j: i32) -> SparseIntMatrix {
    ChainComplex::new(cube).differential_matrix(i, j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{disjoint_union, parse_pd, torus_link_2, unknot};

    /// Counts circles by walking arcs, independently of the union-find.
    fn traced_circles(d: &PlanarDiagram, mask: u32) -> usize {
        let cs = d.crossings();
        let mut seen = vec![[false; 4]; cs.len()];
        let mut count = d.free_circles();
        let partner = |k: usize, p: usize| -> usize {
            let bit = mask >> k & 1 == 1;
            Crossing::smoothing(bit)
                .iter()
                .find_map(|&(a, b)| {
                    if a == p {
                        Some(b)
                    } else if b == p {
                        Some(a)
                    } else {
                        None
                    }
                })
                .unwrap()
        };
        let other = |k: usize, p: usize| -> (usize, usize) {
            let e = cs[k].edges[p];
            for (k2, c) in cs.iter().enumerate() {
                for p2 in 0..4 {
                    if c.edges[p2] == e && (k2, p2) != (k, p) {
                        return (k2, p2);
                    }
                }
            }
            unreachable!()
        };
        for k in 0..cs.len() {
            for p in 0..4 {
                if seen[k][p] {
                    continue;
                }
                count += 1;
                let (mut ck, mut cp) = (k, p);
                while !seen[ck][cp] {
                    seen[ck][cp] = true;
                    let q = partner(ck, cp);
                    seen[ck][q] = true;
                    (ck, cp) = other(ck, q);
                }
            }
        }
        count
    }

    #[test]
    fn unknot_resolution() {
        let v = resolve(&unknot(), &[]).unwrap();
        assert_eq!(v.circles, 1);
        let cube = build_cube(&unknot(), DEFAULT_CAP).unwrap();
        assert_eq!((cube.vertices().len(), cube.edges().len()), (1, 0));
    }

    #[test]
    fn trefoil_resolutions_match_tracing() {
        let t = torus_link_2(3).unwrap();
        // frozen from the arc-tracing oracle
        assert_eq!(traced_circles(&t, 0b000), 3);
        assert_eq!(traced_circles(&t, 0b111), 2);
        assert_eq!(resolve(&t, &[false; 3]).unwrap().circles, 3);
        assert_eq!(resolve(&t, &[true; 3]).unwrap().circles, 2);
        assert!(resolve(&t, &[true; 2]).is_err());
    }

    #[test]
    fn union_find_agrees_with_tracing() {
        let ds = [
            torus_link_2(5).unwrap(),
            parse_pd("X[1,4,2,5] X[3,8,4,1] X[5,2,6,3] X[6,8,7,7]").unwrap(),
            parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap(),
            disjoint_union(&torus_link_2(2).unwrap(), &unknot()),
        ];
        for d in &ds {
            let idx = EdgeIndex::new(d);
            for m in 0..1u32 << d.crossing_count() {
                assert_eq!(idx.resolve(m).circles, traced_circles(d, m));
            }
        }
    }

    #[test]
    fn trefoil_cube_shape() {
        let cube = build_cube(&torus_link_2(3).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(cube.vertices().len(), 8);
        assert_eq!(cube.edges().len(), 12);
        for e in cube.edges() {
            let (a, b) = (
                cube.vertices()[e.from as usize].circles,
                cube.vertices()[e.to as usize].circles,
            );
            match e.kind {
                EdgeKind::Merge => assert_eq!(b + 1, a),
                EdgeKind::Split => assert_eq!(b, a + 1),
            }
            let below = (e.from & ((1 << e.bit) - 1)).count_ones();
            assert_eq!(e.sign, if below % 2 == 0 { 1 } else { -1 });
        }
        assert!(cube.dump().contains("edge 000 -> 001 merge sign=+1"));
    }

    #[test]
    fn cap_is_enforced() {
        let t = torus_link_2(5).unwrap();
        assert!(matches!(
            build_cube(&t, 4),
            Err(Error::CapExceeded { crossings: 5, cap: 4 })
        ));
    }

    #[test]
    fn unknot_gradings() {
        let u = unknot();
        let vertex = resolve(&u, &[]).unwrap();
        let one = EnhancedState {
            vertex: vertex.clone(),
            labels: vec![Label::One],
        };
        let x = EnhancedState {
            vertex,
            labels: vec![Label::X],
        };
        assert_eq!(gradings(&u, &one), Bigrading::new(0, 1));
        assert_eq!(gradings(&u, &x), Bigrading::new(0, -1));
        let ranks = chain_rank(&u, DEFAULT_CAP).unwrap();
        assert_eq!(ranks[&Bigrading::new(0, 1)], 1);
        assert_eq!(ranks[&Bigrading::new(0, -1)], 1);
    }

    #[test]
    fn total_state_count() {
        let d = torus_link_2(4).unwrap();
        let cube = build_cube(&d, DEFAULT_CAP).unwrap();
        let total: usize = ChainComplex::new(&cube).chain_ranks().values().sum();
        let expect: usize = cube.vertices().iter().map(|v| 1 << v.circles).sum();
        assert_eq!(total, expect);
    }

    #[test]
    fn d_squared_vanishes_on_small_diagrams() {
        for d in [
            torus_link_2(3).unwrap(),
            torus_link_2(-4).unwrap(),
            parse_pd("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap(),
        ] {
            let cube = build_cube(&d, DEFAULT_CAP).unwrap();
            let cx = ChainComplex::new(&cube);
            for (&g, _) in &cx.chain_ranks() {
                let a = cx.differential_matrix(g.i, g.j);
                let b = cx.differential_matrix(g.i + 1, g.j);
                assert!(b.mul(&a).unwrap().is_zero(), "{g:?}");
            }
        }
    }
}
