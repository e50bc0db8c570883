//! Oriented 2-tangles, their composition and closure, and Conway mutation.
//!
//! Boundary points sit at the corners NW, NE, SW, SE of the tangle box.
//! Composition `t1 t2` places `t2` to the right of `t1`, gluing `t1.NE` to
//! `t2.NW` and `t1.SE` to `t2.SW`. The closure joins NW to NE over the top and
//! SW to SE under the bottom.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::diagram::{
    connected_sum, disjoint_union, orient, parse_records, torus_link_2, unknot, Crossing,
    Direction, Edge, PlanarDiagram, Record, Sign,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    NW,
    NE,
    SW,
    SE,
}

impl Slot {
    pub const ALL: [Slot; 4] = [Slot::NW, Slot::NE, Slot::SW, Slot::SE];

    fn index(self) -> usize {
        self as usize
    }

    fn name(self) -> &'static str {
        match self {
            Slot::NW => "NW",
            Slot::NE => "NE",
            Slot::SW => "SW",
            Slot::SE => "SE",
        }
    }

    fn from_name(s: &str) -> Option<Slot> {
        Slot::ALL.into_iter().find(|x| x.name() == s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Endpoint {
    pub edge: Edge,
    pub dir: Direction,
}

/// The three mutation involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mutation {
    /// Half-turn about the axis normal to the page; orientations kept.
    Rho1,
    /// Half-turn about the horizontal in-page axis, then all strings reversed.
    Rho2,
    /// Half-turn about the vertical in-page axis, then all strings reversed.
    Rho3,
}

impl Mutation {
    pub fn from_index(i: u8) -> Result<Mutation> {
        match i {
            1 => Ok(Mutation::Rho1),
            2 => Ok(Mutation::Rho2),
            3 => Ok(Mutation::Rho3),
            _ => Err(Error::InvalidArgument(format!("no involution rho{i}"))),
        }
    }

    fn slot_image(self, s: Slot) -> Slot {
        use Slot::*;
        match (self, s) {
            (Mutation::Rho1, NW) => SE,
            (Mutation::Rho1, SE) => NW,
            (Mutation::Rho1, NE) => SW,
            (Mutation::Rho1, SW) => NE,
            (Mutation::Rho2, NW) => SW,
            (Mutation::Rho2, SW) => NW,
            (Mutation::Rho2, NE) => SE,
            (Mutation::Rho2, SE) => NE,
            (Mutation::Rho3, NW) => NE,
            (Mutation::Rho3, NE) => NW,
            (Mutation::Rho3, SW) => SE,
            (Mutation::Rho3, SE) => SW,
        }
    }
}

/// The involution used to realise the figure3 mutant pair: the
/// knotted arc of the right-hand tangle is carried from the west side to the
/// east side while the boundary orientation pattern is preserved.
pub const FIGURE3_MUTATION: Mutation = Mutation::Rho1;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tangle {
    crossings: Vec<Crossing>,
    boundary: [Endpoint; 4],
    free_loops: usize,
}

impl Tangle {
    pub fn new(crossings: Vec<Crossing>, boundary: [Endpoint; 4], free_loops: usize) -> Result<Self> {
        let mut heads: BTreeMap<Edge, (usize, usize)> = BTreeMap::new();
        for c in &crossings {
            for (p, &e) in c.edges.iter().enumerate() {
                let h = heads.entry(e).or_default();
                if c.is_incoming(p) {
                    h.0 += 1;
                } else {
                    h.1 += 1;
                }
            }
        }
        for b in &boundary {
            let h = heads.entry(b.edge).or_default();
            // a strand leaving the box ends its edge there
            match b.dir {
                Direction::Out => h.0 += 1,
                Direction::In => h.1 += 1,
            }
        }
        for (&label, &(h, t)) in &heads {
            if h + t != 2 {
                return Err(Error::EdgeCount {
                    label,
                    count: h + t,
                });
            }
            if h != 1 {
                return Err(Error::Orientation(format!(
                    "edge {label} has {h} heads in the tangle"
                )));
            }
        }
        Ok(Tangle {
            crossings,
            boundary,
            free_loops,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn endpoint(&self, s: Slot) -> Endpoint {
        self.boundary[s.index()]
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    fn max_label(&self) -> Edge {
        self.crossings
            .iter()
            .flat_map(|c| c.edges)
            .chain(self.boundary.iter().map(|b| b.edge))
            .max()
            .unwrap_or(0)
    }

    fn relabeled(&self, f: impl Fn(Edge) -> Edge + Copy) -> Tangle {
        Tangle {
            crossings: self.crossings.iter().map(|c| c.relabeled(f)).collect(),
            boundary: self.boundary.map(|b| Endpoint {
                edge: f(b.edge),
                dir: b.dir,
            }),
            free_loops: self.free_loops,
        }
    }

    /// Two horizontal arcs, NW–NE and SW–SE. With `top_leftward` the top arc
    /// runs NE -> NW and the bottom arc SW -> SE; otherwise both run eastward.
    pub fn trivial(top_leftward: bool) -> Tangle {
        let (nw, ne) = if top_leftward {
            (Direction::Out, Direction::In)
        } else {
            (Direction::In, Direction::Out)
        };
        Tangle::new(
            Vec::new(),
            [
                Endpoint { edge: 1, dir: nw },
                Endpoint { edge: 1, dir: ne },
                Endpoint { edge: 2, dir: Direction::In },
                Endpoint { edge: 2, dir: Direction::Out },
            ],
            0,
        )
        .expect("trivial tangle is well formed")
    }

    /// Text form: PD records followed by `B[NW:e:dir,NE:e:dir,SW:e:dir,SE:e:dir]`.
    pub fn to_text(&self) -> String {
        let mut parts: Vec<String> = self.crossings.iter().map(|c| c.to_string()).collect();
        let base = self.max_label();
        for k in 0..self.free_loops {
            parts.push(format!("Loop[{}]", base + 1 + k as Edge));
        }
        let pts: Vec<String> = Slot::ALL
            .iter()
            .map(|&s| {
                let b = self.endpoint(s);
                let d = match b.dir {
                    Direction::In => "in",
                    Direction::Out => "out",
                };
                format!("{}:{}:{}", s.name(), b.edge, d)
            })
            .collect();
        parts.push(format!("B[{}]", pts.join(",")));
        parts.join(" ")
    }
}

impl fmt::Display for Tangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Parses one tangle. Boundary directions may be given explicitly
/// (`NW:3:in`) or inferred from the crossings and label order.
pub fn parse_tangle(text: &str) -> Result<Tangle> {
    let mut raw = Vec::new();
    let mut loops = 0;
    let mut bnd: Option<Vec<(String, Edge, Option<Direction>)>> = None;
    for r in parse_records(text)? {
        match r {
            Record::Cross(e) => raw.push(e),
            Record::Loop(_) => loops += 1,
            Record::Boundary(b) => {
                if bnd.replace(b).is_some() {
                    return Err(Error::MalformedRecord("second boundary record".into()));
                }
            }
        }
    }
    let bnd = bnd.ok_or_else(|| Error::MalformedRecord("tangle without B[...] record".into()))?;
    let mut slots: Vec<(Slot, Edge, Option<Direction>)> = Vec::new();
    for (name, e, d) in bnd {
        let s = Slot::from_name(&name)
            .ok_or_else(|| Error::MalformedRecord(format!("unknown boundary slot {name}")))?;
        if slots.iter().any(|x| x.0 == s) {
            return Err(Error::MalformedRecord(format!("slot {name} given twice")));
        }
        slots.push((s, e, d));
    }
    if slots.len() != 4 {
        return Err(Error::MalformedRecord("boundary needs NW, NE, SW and SE".into()));
    }
    slots.sort_by_key(|x| x.0);
    let pts: Vec<(Edge, Option<Direction>)> = slots.iter().map(|x| (x.1, x.2)).collect();
    let (crossings, dirs) = orient(&raw, &pts)?;
    let boundary = [0, 1, 2, 3].map(|k| Endpoint {
        edge: pts[k].0,
        dir: dirs[k],
    });
    Tangle::new(crossings, boundary, loops)
}

/// Parses a file holding several tangles, each ending with its `B[...]` record.
pub fn parse_tangles(text: &str) -> Result<Vec<Tangle>> {
    let mut out = Vec::new();
    let mut rest = text;
    while let Some(b) = rest.find("B[") {
        let close = rest[b..]
            .find(']')
            .map(|o| b + o)
            .ok_or_else(|| Error::MalformedRecord("unclosed B[".into()))?;
        out.push(parse_tangle(&rest[..=close])?);
        rest = &rest[close + 1..];
    }
    if !rest.trim().is_empty() {
        return Err(Error::MalformedRecord(format!(
            "trailing records without boundary: {}",
            rest.trim()
        )));
    }
    Ok(out)
}

/// Union-find over edge labels for gluing boundary points together.
#[derive(Default)]
struct LabelMerge {
    parent: BTreeMap<Edge, Edge>,
}

impl LabelMerge {
    fn find(&mut self, e: Edge) -> Edge {
        let p = *self.parent.get(&e).unwrap_or(&e);
        if p == e {
            return e;
        }
        let r = self.find(p);
        self.parent.insert(e, r);
        r
    }

    fn union(&mut self, a: Edge, b: Edge) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent.insert(hi, lo);
        }
    }
}

/// Relabels after gluing and counts glued classes that closed up into
/// crossingless loops.
fn glue(
    crossings: &[Crossing],
    kept: &[Edge],
    merge: &mut LabelMerge,
    glued: &[Edge],
) -> (Vec<Crossing>, Vec<Edge>, usize) {
    let crossings: Vec<Crossing> = crossings
        .iter()
        .map(|c| Crossing::new(c.edges.map(|e| merge.find(e)), c.sign))
        .collect();
    let kept: Vec<Edge> = kept.iter().map(|&e| merge.find(e)).collect();
    let used: BTreeSet<Edge> = crossings
        .iter()
        .flat_map(|c| c.edges)
        .chain(kept.iter().copied())
        .collect();
    let closed: BTreeSet<Edge> = glued
        .iter()
        .map(|&e| merge.find(e))
        .filter(|r| !used.contains(r))
        .collect();
    (crossings, kept, closed.len())
}

pub fn compose(t1: &Tangle, t2: &Tangle) -> Result<Tangle> {
    let offset = t1.max_label();
    let t2 = t2.relabeled(|e| e + offset);
    for (a, b) in [(Slot::NE, Slot::NW), (Slot::SE, Slot::SW)] {
        if t1.endpoint(a).dir == t2.endpoint(b).dir {
            return Err(Error::Orientation(format!(
                "interface {}/{} joins two {:?} ends",
                a.name(),
                b.name(),
                t1.endpoint(a).dir
            )));
        }
    }
    let mut merge = LabelMerge::default();
    merge.union(t1.endpoint(Slot::NE).edge, t2.endpoint(Slot::NW).edge);
    merge.union(t1.endpoint(Slot::SE).edge, t2.endpoint(Slot::SW).edge);
    let all: Vec<Crossing> = t1.crossings.iter().chain(&t2.crossings).copied().collect();
    let outer = [
        t1.endpoint(Slot::NW),
        t2.endpoint(Slot::NE),
        t1.endpoint(Slot::SW),
        t2.endpoint(Slot::SE),
    ];
    let kept: Vec<Edge> = outer.iter().map(|b| b.edge).collect();
    let glued = [t1.endpoint(Slot::NE).edge, t1.endpoint(Slot::SE).edge];
    let (crossings, kept, closed) = glue(&all, &kept, &mut merge, &glued);
    let boundary = [0, 1, 2, 3].map(|k| Endpoint {
        edge: kept[k],
        dir: outer[k].dir,
    });
    Tangle::new(crossings, boundary, t1.free_loops + t2.free_loops + closed)
}

pub fn closure(t: &Tangle) -> Result<PlanarDiagram> {
    for (a, b) in [(Slot::NW, Slot::NE), (Slot::SW, Slot::SE)] {
        if t.endpoint(a).dir == t.endpoint(b).dir {
            return Err(Error::Orientation(format!(
                "closure arc {}–{} joins two {:?} ends",
                a.name(),
                b.name(),
                t.endpoint(a).dir
            )));
        }
    }
    let mut merge = LabelMerge::default();
    merge.union(t.endpoint(Slot::NW).edge, t.endpoint(Slot::NE).edge);
    merge.union(t.endpoint(Slot::SW).edge, t.endpoint(Slot::SE).edge);
    let glued = [t.endpoint(Slot::NW).edge, t.endpoint(Slot::SW).edge];
    let (crossings, _, closed) = glue(&t.crossings, &[], &mut merge, &glued);
    PlanarDiagram::new(crossings, t.free_loops + closed)
}

pub fn mutate(t: &Tangle, which: Mutation) -> Tangle {
    let reverse = which != Mutation::Rho1;
    let crossings = if reverse {
        t.crossings
            .iter()
            .map(|c| c.half_turned_in_plane().reversed())
            .collect()
    } else {
        t.crossings.clone()
    };
    let mut boundary = t.boundary;
    for s in Slot::ALL {
        let b = t.endpoint(s);
        boundary[which.slot_image(s).index()] = Endpoint {
            edge: b.edge,
            dir: if reverse { b.dir.flip() } else { b.dir },
        };
    }
    Tangle {
        crossings,
        boundary,
        free_loops: t.free_loops,
    }
}

/// `(closure(t1 t2), closure(t1 ρ(t2)))`.
pub fn mutant_pair(
    t1: &Tangle,
    t2: &Tangle,
    which: Mutation,
) -> Result<(PlanarDiagram, PlanarDiagram)> {
    let l = closure(&compose(t1, t2)?)?;
    let lp = closure(&compose(t1, &mutate(t2, which))?)?;
    Ok((l, lp))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArcSide {
    /// Knotted arc on the east side, entering at NE and leaving at SE; plain
    /// arc SW -> NW.
    East,
    /// Knotted arc on the west side, entering at SW and leaving at NW; plain
    /// arc NE -> SE.
    West,
}

/// Cuts `d` open at its lowest edge and places the resulting knotted arc
/// along one side of a tangle, with a plain arc along the other.
pub fn knotted_arc_tangle(d: &PlanarDiagram, side: ArcSide) -> Result<Tangle> {
    if d.crossing_count() == 0 {
        return Err(Error::InvalidArgument(
            "knotted arc needs a diagram with crossings".into(),
        ));
    }
    let cut = d.edges()[0];
    let tail = d.endpoints()[&cut].tail;
    let out_label = d.max_label() + 1;
    let plain = d.max_label() + 2;
    let mut crossings = d.crossings().to_vec();
    crossings[tail.0].edges[tail.1] = out_label;
    let inn = |edge| Endpoint { edge, dir: Direction::In };
    let out = |edge| Endpoint { edge, dir: Direction::Out };
    let boundary = match side {
        // [NW, NE, SW, SE]
        ArcSide::East => [out(plain), inn(cut), inn(plain), out(out_label)],
        ArcSide::West => [out(out_label), inn(plain), inn(cut), out(plain)],
    };
    Tangle::new(crossings, boundary, d.free_circles())
}

/// The two tangles whose composite closes up to `U ⊔ (K1 # K2)`, where `Ki`
/// is the (2, ni) torus link; mutating the second by [`FIGURE3_MUTATION`]
/// gives `K1 ⊔ K2`.
pub fn figure3_tangles(n1: i64, n2: i64) -> Result<(Tangle, Tangle)> {
    let t1 = knotted_arc_tangle(&torus_link_2(n1)?, ArcSide::East)?;
    let t2 = knotted_arc_tangle(&torus_link_2(n2)?, ArcSide::West)?;
    Ok((t1, t2))
}

/// `(U ⊔ (K1 # K2), K1 ⊔ K2)` built from the link constructors.
pub fn figure3_pair(n1: i64, n2: i64) -> Result<(PlanarDiagram, PlanarDiagram)> {
    if n1 < 2 || n2 < 2 {
        return Err(Error::InvalidArgument(format!(
            "figure3_pair needs n1, n2 >= 2 (got {n1}, {n2})"
        )));
    }
    let k1 = torus_link_2(n1)?;
    let k2 = torus_link_2(n2)?;
    let l = disjoint_union(&unknot(), &connected_sum(&k1, &k2)?);
    let lp = disjoint_union(&k1, &k2);
    Ok((l, lp))
}

/// Same pair, built by closing the composite tangle and its mutant.
pub fn figure3_pair_via_tangles(n1: i64, n2: i64) -> Result<(PlanarDiagram, PlanarDiagram)> {
    let (t1, t2) = figure3_tangles(n1, n2)?;
    mutant_pair(&t1, &t2, FIGURE3_MUTATION)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeinTriple {
    pub l_plus: PlanarDiagram,
    pub l_minus: PlanarDiagram,
    pub l_zero: PlanarDiagram,
}

pub fn skein_triple(d: &PlanarDiagram, crossing_id: usize) -> Result<SkeinTriple> {
    let c = *d
        .crossings()
        .get(crossing_id)
        .ok_or(Error::UnknownCrossing(crossing_id))?;
    let with = |x: Crossing| {
        let mut cs = d.crossings().to_vec();
        cs[crossing_id] = x;
        PlanarDiagram::new(cs, d.free_circles())
    };
    let (pos, neg) = match c.sign {
        Sign::Positive => (c, c.mirrored()),
        Sign::Negative => (c.mirrored(), c),
    };
    // oriented smoothing joins each incoming side to the adjacent outgoing one
    let pairs = Crossing::smoothing(c.sign == Sign::Negative);
    let mut merge = LabelMerge::default();
    for (p, q) in pairs {
        merge.union(c.edges[p], c.edges[q]);
    }
    let rest: Vec<Crossing> = d
        .crossings()
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != crossing_id)
        .map(|(_, x)| *x)
        .collect();
    let (rest, _, closed) = glue(&rest, &[], &mut merge, &c.edges);
    Ok(SkeinTriple {
        l_plus: with(pos)?,
        l_minus: with(neg)?,
        l_zero: PlanarDiagram::new(rest, d.free_circles() + closed)?,
    })
}

impl Mutation {
    pub fn index(self) -> u8 {
        match self {
            Mutation::Rho1 => 1,
            Mutation::Rho2 => 2,
            Mutation::Rho3 => 3,
        }
    }
}
