//! Oriented link diagrams in planar-diagram (PD) form.
//!
//! A crossing is stored as `X[a,b,c,d]`: the four edge labels in
//! counterclockwise order, starting at the incoming under-strand `a`. The
//! under-strand runs `a -> c`; the over-strand runs `d -> b` on a positive
//! crossing and `b -> d` on a negative one.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;

use crate::error::{Error, Result};

pub type Edge = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

/// Strand direction at a tangle boundary point, seen from inside the tangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    In,
    Out,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::In => Direction::Out,
            Direction::Out => Direction::In,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub edges: [Edge; 4],
    pub sign: Sign,
}

impl Crossing {
    pub fn new(edges: [Edge; 4], sign: Sign) -> Self {
        Crossing { edges, sign }
    }

    /// Whether the strand at position `pos` enters the crossing.
    pub fn is_incoming(&self, pos: usize) -> bool {
        match (pos, self.sign) {
            (0, _) => true,
            (2, _) => false,
            (1, Sign::Negative) | (3, Sign::Positive) => true,
            _ => false,
        }
    }

    /// Position pairs joined by the 0- or 1-smoothing.
    pub fn smoothing(bit: bool) -> [(usize, usize); 2] {
        if bit {
            [(0, 3), (1, 2)]
        } else {
            [(0, 1), (2, 3)]
        }
    }

    /// The same crossing with over- and under-strand exchanged.
    pub fn mirrored(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        match self.sign {
            Sign::Positive => Crossing::new([d, a, b, c], Sign::Negative),
            Sign::Negative => Crossing::new([b, c, d, a], Sign::Positive),
        }
    }

    /// Both strands reversed; the sign is unchanged.
    pub fn reversed(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        Crossing::new([c, d, a, b], self.sign)
    }

    /// Image under a half-turn about an axis lying in the page: the
    /// projection is reflected and the depth order flips.
    pub fn half_turned_in_plane(&self) -> Crossing {
        let [a, b, c, d] = self.edges;
        match self.sign {
            Sign::Positive => Crossing::new([d, c, b, a], Sign::Positive),
            Sign::Negative => Crossing::new([b, a, d, c], Sign::Negative),
        }
    }

    pub fn relabeled(&self, f: impl Fn(Edge) -> Edge) -> Crossing {
        Crossing::new(self.edges.map(f), self.sign)
    }
}

impl fmt::Display for Crossing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.edges;
        write!(f, "X[{a},{b},{c},{d}]")
    }
}

/// An oriented link diagram. Crossing ids are positions in `crossings()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlanarDiagram {
    crossings: Vec<Crossing>,
    free_circles: usize,
    components: usize,
}

impl PlanarDiagram {
    /// Validates edge usage and orientation consistency.
    pub fn new(crossings: Vec<Crossing>, free_circles: usize) -> Result<Self> {
        let occ = occurrences(&crossings)?;
        for (&label, places) in &occ {
            let heads = places
                .iter()
                .filter(|&&(k, p)| crossings[k].is_incoming(p))
                .count();
            if heads != 1 {
                return Err(Error::Orientation(format!(
                    "edge {label} enters {heads} crossing sides"
                )));
            }
        }
        let components = count_components(&crossings, &occ) + free_circles;
        if components == 0 {
            return Err(Error::EmptyDiagram);
        }
        Ok(PlanarDiagram {
            crossings,
            free_circles,
            components,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_circles(&self) -> usize {
        self.free_circles
    }

    pub fn components(&self) -> usize {
        self.components
    }

    pub fn n_plus(&self) -> usize {
        self.crossings
            .iter()
            .filter(|c| c.sign == Sign::Positive)
            .count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossing_count() - self.n_plus()
    }

    pub fn writhe(&self) -> i64 {
        self.n_plus() as i64 - self.n_minus() as i64
    }

    pub fn edge_count(&self) -> usize {
        2 * self.crossings.len()
    }

    /// Sorted edge labels.
    pub fn edges(&self) -> Vec<Edge> {
        let set: BTreeSet<Edge> = self.crossings.iter().flat_map(|c| c.edges).collect();
        set.into_iter().collect()
    }

    pub fn max_label(&self) -> Edge {
        self.crossings
            .iter()
            .flat_map(|c| c.edges)
            .max()
            .unwrap_or(0)
    }

    /// `(crossing, position)` of the head and tail of every edge.
    pub(crate) fn endpoints(&self) -> BTreeMap<Edge, EdgeEnds> {
        let mut ends: BTreeMap<Edge, EdgeEnds> = BTreeMap::new();
        for (k, c) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                let e = ends.entry(c.edges[p]).or_default();
                if c.is_incoming(p) {
                    e.head = (k, p);
                } else {
                    e.tail = (k, p);
                }
            }
        }
        ends
    }

    /// Relabels edges `1..=E` consecutively along each component, taking
    /// components in order of their first outgoing occurrence.
    pub fn canonical(&self) -> PlanarDiagram {
        let ends = self.endpoints();
        let mut new_label: HashMap<Edge, Edge> = HashMap::new();
        let mut next = 1;
        for (k, c) in self.crossings.iter().enumerate() {
            for p in 0..4 {
                if c.is_incoming(p) || new_label.contains_key(&c.edges[p]) {
                    continue;
                }
                let (mut ck, mut cp) = (k, p);
                loop {
                    let e = self.crossings[ck].edges[cp];
                    if new_label.contains_key(&e) {
                        break;
                    }
                    new_label.insert(e, next);
                    next += 1;
                    let (hk, hp) = ends[&e].head;
                    ck = hk;
                    cp = hp ^ 2;
                }
            }
        }
        let crossings = self
            .crossings
            .iter()
            .map(|c| c.relabeled(|e| new_label[&e]))
            .collect();
        PlanarDiagram {
            crossings,
            free_circles: self.free_circles,
            components: self.components,
        }
    }

    /// PD text; crossingless circles are written as `Loop[e]` records.
    pub fn to_pd_string(&self) -> String {
        let mut parts: Vec<String> = self.crossings.iter().map(|c| c.to_string()).collect();
        let base = self.max_label();
        for k in 0..self.free_circles {
            parts.push(format!("Loop[{}]", base + 1 + k as Edge));
        }
        parts.join(" ")
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_pd_string())
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct EdgeEnds {
    pub head: (usize, usize),
    pub tail: (usize, usize),
}

fn occurrences(crossings: &[Crossing]) -> Result<BTreeMap<Edge, Vec<(usize, usize)>>> {
    let mut occ: BTreeMap<Edge, Vec<(usize, usize)>> = BTreeMap::new();
    for (k, c) in crossings.iter().enumerate() {
        for (p, &e) in c.edges.iter().enumerate() {
            occ.entry(e).or_default().push((k, p));
        }
    }
    for (&label, places) in &occ {
        if places.len() != 2 {
            return Err(Error::EdgeCount {
                label,
                count: places.len(),
            });
        }
    }
    Ok(occ)
}

fn count_components(crossings: &[Crossing], occ: &BTreeMap<Edge, Vec<(usize, usize)>>) -> usize {
    let mut seen: BTreeSet<Edge> = BTreeSet::new();
    let mut count = 0;
    for (&start, _) in occ {
        if seen.contains(&start) {
            continue;
        }
        count += 1;
        let mut e = start;
        while seen.insert(e) {
            let &(k, p) = occ[&e]
                .iter()
                .find(|&&(k, p)| crossings[k].is_incoming(p))
                .expect("validated orientation");
            e = crossings[k].edges[p ^ 2];
        }
    }
    count
}

// ---------------------------------------------------------------------------
// Parsing and orientation inference

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Record {
    Cross([Edge; 4]),
    Loop(Edge),
    Boundary(Vec<(String, Edge, Option<Direction>)>),
}

pub(crate) fn parse_records(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_whitespace() || ch == ',' || ch == ';' {
            i += 1;
            continue;
        }
        if ch == '#' {
            // comment to end of line
            i = text[i..].find('\n').map_or(bytes.len(), |o| i + o);
            continue;
        }
        let start = i;
        while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
            i += 1;
        }
        let name = &text[start..i];
        if name.is_empty() || i >= bytes.len() || bytes[i] != b'[' {
            let end = text[start..]
                .find(char::is_whitespace)
                .map_or(text.len(), |o| start + o);
            return Err(Error::MalformedRecord(text[start..end].to_string()));
        }
        let close = text[i..]
            .find(']')
            .map(|o| i + o)
            .ok_or_else(|| Error::MalformedRecord(text[start..].to_string()))?;
        let whole = &text[start..=close];
        let body = &text[i + 1..close];
        i = close + 1;
        let fields: Vec<&str> = body.split(',').map(str::trim).collect();
        let label = |s: &str| -> Result<Edge> {
            match s.parse::<Edge>() {
                Ok(v) if v > 0 => Ok(v),
                _ => Err(Error::MalformedRecord(whole.to_string())),
            }
        };
        match name {
            "X" => {
                if fields.len() != 4 {
                    return Err(Error::MalformedRecord(whole.to_string()));
                }
                let mut e = [0; 4];
                for (slot, f) in e.iter_mut().zip(&fields) {
                    *slot = label(f)?;
                }
                out.push(Record::Cross(e));
            }
            "Loop" => {
                if fields.len() != 1 {
                    return Err(Error::MalformedRecord(whole.to_string()));
                }
                out.push(Record::Loop(label(fields[0])?));
            }
            "B" => {
                let mut pts = Vec::new();
                for f in &fields {
                    let parts: Vec<&str> = f.split(':').map(str::trim).collect();
                    if parts.len() < 2 || parts.len() > 3 {
                        return Err(Error::MalformedRecord(whole.to_string()));
                    }
                    let dir = match parts.get(2) {
                        None => None,
                        Some(&"in") => Some(Direction::In),
                        Some(&"out") => Some(Direction::Out),
                        Some(_) => return Err(Error::MalformedRecord(whole.to_string())),
                    };
                    pts.push((parts[0].to_string(), label(parts[1])?, dir));
                }
                out.push(Record::Boundary(pts));
            }
            _ => return Err(Error::MalformedRecord(whole.to_string())),
        }
    }
    Ok(out)
}

/// Orients unsigned crossings (plus optional tangle boundary points) from the
/// under-strand rule `a -> c`, explicit boundary directions, and ascending
/// edge labels along each strand.
pub(crate) fn orient(
    raw: &[[Edge; 4]],
    boundary: &[(Edge, Option<Direction>)],
) -> Result<(Vec<Crossing>, Vec<Direction>)> {
    let n = raw.len();
    // nodes: 4k+p for crossing sides, 4n+s for boundary points
    let node_label = |v: usize| -> Edge {
        if v < 4 * n {
            raw[v / 4][v % 4]
        } else {
            boundary[v - 4 * n].0
        }
    };
    let total = 4 * n + boundary.len();
    let mut by_label: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for v in 0..total {
        by_label.entry(node_label(v)).or_default().push(v);
    }
    for (&label, nodes) in &by_label {
        if nodes.len() != 2 {
            return Err(Error::EdgeCount {
                label,
                count: nodes.len(),
            });
        }
    }
    let other_end = |v: usize| -> usize {
        let nodes = &by_label[&node_label(v)];
        if nodes[0] == v {
            nodes[1]
        } else {
            nodes[0]
        }
    };

    let mut visited = vec![false; total];
    let mut head = vec![false; total];
    let mut strands: Vec<(Vec<(usize, usize)>, bool)> = Vec::new();
    // open strands first, then closed loops
    let starts: Vec<usize> = (4 * n..total).chain(0..4 * n).collect();
    for s in starts {
        if visited[s] {
            continue;
        }
        let closed = s < 4 * n;
        let mut steps = Vec::new();
        let mut cur = s;
        loop {
            visited[cur] = true;
            let nxt = other_end(cur);
            steps.push((cur, nxt));
            visited[nxt] = true;
            if nxt >= 4 * n {
                break;
            }
            let through = (nxt & !3) | ((nxt % 4) ^ 2);
            if through == s {
                break;
            }
            visited[through] = true;
            cur = through;
        }
        strands.push((steps, closed));
    }

    for (steps, closed) in &strands {
        let (mut fwd, mut bwd) = (0usize, 0usize);
        for &(from, to) in steps {
            for (v, is_head) in [(from, false), (to, true)] {
                if v < 4 * n {
                    match (v % 4, is_head) {
                        (0, true) | (2, false) => fwd += 1,
                        (0, false) | (2, true) => bwd += 1,
                        _ => {}
                    }
                } else if let Some(d) = boundary[v - 4 * n].1 {
                    // a boundary head is where the strand leaves the tangle
                    match (d, is_head) {
                        (Direction::Out, true) | (Direction::In, false) => fwd += 1,
                        _ => bwd += 1,
                    }
                }
            }
        }
        if fwd > 0 && bwd > 0 {
            return Err(Error::Orientation(format!(
                "strand through edge {} has contradictory under-strand directions",
                node_label(steps[0].0)
            )));
        }
        let labels: Vec<Edge> = steps.iter().map(|&(f, _)| node_label(f)).collect();
        let by_labels = label_direction(&labels, *closed);
        let forward = match (fwd > 0, bwd > 0, by_labels) {
            (true, _, Some(false)) | (_, true, Some(true)) => {
                return Err(Error::Orientation(format!(
                    "edge labels along the strand through {} contradict its crossings",
                    labels[0]
                )))
            }
            (true, _, _) => true,
            (_, true, _) => false,
            (_, _, Some(d)) => d,
            (_, _, None) => {
                return Err(Error::Orientation(format!(
                    "cannot infer the direction of the strand through edge {}",
                    labels[0]
                )))
            }
        };
        for &(from, to) in steps {
            head[if forward { to } else { from }] = true;
        }
    }

    let crossings = raw
        .iter()
        .enumerate()
        .map(|(k, &edges)| {
            let sign = if head[4 * k + 3] {
                Sign::Positive
            } else {
                Sign::Negative
            };
            Crossing::new(edges, sign)
        })
        .collect();
    let dirs = (0..boundary.len())
        .map(|s| {
            if head[4 * n + s] {
                Direction::Out
            } else {
                Direction::In
            }
        })
        .collect();
    Ok((crossings, dirs))
}

/// `Some(true)` if labels ascend in walking order, `Some(false)` if they
/// ascend against it, `None` when ambiguous or scrambled.
fn label_direction(labels: &[Edge], closed: bool) -> Option<bool> {
    let m = labels.len();
    if m < 2 {
        return None;
    }
    let pairs = if closed { m } else { m - 1 };
    let descents = (0..pairs)
        .filter(|&i| labels[(i + 1) % m] < labels[i])
        .count();
    let ascents = pairs - descents;
    let limit = usize::from(closed);
    match (descents <= limit, ascents <= limit) {
        (true, false) => Some(true),
        (false, true) => Some(false),
        _ => None,
    }
}

/// Parses whitespace-separated `X[a,b,c,d]` records (and `Loop[e]` for
/// crossingless components) into an oriented diagram.
pub fn parse_pd(text: &str) -> Result<PlanarDiagram> {
    let records = parse_records(text)?;
    if records.is_empty() {
        return Err(Error::EmptyDiagram);
    }
    let mut raw = Vec::new();
    let mut loops: Vec<Edge> = Vec::new();
    for r in records {
        match r {
            Record::Cross(e) => raw.push(e),
            Record::Loop(e) => loops.push(e),
            Record::Boundary(_) => {
                return Err(Error::MalformedRecord(
                    "boundary record in a closed diagram".into(),
                ))
            }
        }
    }
    for &l in &loops {
        let uses = raw.iter().flatten().filter(|&&e| e == l).count()
            + 2 * loops.iter().filter(|&&e| e == l).count();
        if uses != 2 {
            return Err(Error::EdgeCount {
                label: l,
                count: uses,
            });
        }
    }
    let (crossings, _) = orient(&raw, &[])?;
    PlanarDiagram::new(crossings, loops.len())
}

// ---------------------------------------------------------------------------
// Constructors

pub fn unknot() -> PlanarDiagram {
    PlanarDiagram {
        crossings: Vec::new(),
        free_circles: 1,
        components: 1,
    }
}

/// Closure of the 2-strand braid with `|n|` crossings, both strands running
/// the same way. For `n > 0` every crossing is negative; `n < 0` gives the
/// mirror image.
pub fn torus_link_2(n: i64) -> Result<PlanarDiagram> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "torus_link_2(0) is the 2-component unlink; build it as disjoint_union(unknot(), unknot())"
                .into(),
        ));
    }
    let m = n.unsigned_abs() as usize;
    let left = |k: usize| (k % m) as Edge + 1;
    let right = |k: usize| (m + k % m) as Edge + 1;
    // under-strand bottom-left to top-right, over-strand bottom-right to top-left
    let crossings = (0..m)
        .map(|k| {
            Crossing::new(
                [left(k), right(k), right(k + 1), left(k + 1)],
                Sign::Negative,
            )
        })
        .collect();
    let d = PlanarDiagram::new(crossings, 0)?.canonical();
    Ok(if n < 0 { mirror(&d) } else { d })
}

pub fn disjoint_union(a: &PlanarDiagram, b: &PlanarDiagram) -> PlanarDiagram {
    let offset = a.max_label();
    let crossings: Vec<Crossing> = a
        .crossings
        .iter()
        .copied()
        .chain(b.crossings.iter().map(|c| c.relabeled(|e| e + offset)))
        .collect();
    PlanarDiagram {
        crossings,
        free_circles: a.free_circles + b.free_circles,
        components: a.components + b.components,
    }
}

/// Connected sum spliced at the lowest-numbered edge of each summand.
pub fn connected_sum(a: &PlanarDiagram, b: &PlanarDiagram) -> Result<PlanarDiagram> {
    // splicing into a crossingless circle just absorbs that circle
    if a.crossings.is_empty() {
        return Ok(PlanarDiagram {
            crossings: b.crossings.clone(),
            free_circles: b.free_circles + a.free_circles - 1,
            components: a.components + b.components - 1,
        });
    }
    if b.crossings.is_empty() {
        return Ok(PlanarDiagram {
            crossings: a.crossings.clone(),
            free_circles: a.free_circles + b.free_circles - 1,
            components: a.components + b.components - 1,
        });
    }
    let offset = a.max_label();
    let ea = a.edges()[0];
    let eb = b.edges()[0] + offset;
    let head_a = a.endpoints()[&ea].head;
    let mut crossings: Vec<Crossing> = a.crossings.clone();
    crossings.extend(b.crossings.iter().map(|c| c.relabeled(|e| e + offset)));
    let head_b = {
        let h = b.endpoints()[&(eb - offset)].head;
        (h.0 + a.crossings.len(), h.1)
    };
    crossings[head_a.0].edges[head_a.1] = eb;
    crossings[head_b.0].edges[head_b.1] = ea;
    let d = PlanarDiagram::new(crossings, a.free_circles + b.free_circles)?;
    debug_assert_eq!(d.components, a.components + b.components - 1);
    Ok(d.canonical())
}

pub fn mirror(d: &PlanarDiagram) -> PlanarDiagram {
    PlanarDiagram {
        crossings: d.crossings.iter().map(Crossing::mirrored).collect(),
        free_circles: d.free_circles,
        components: d.components,
    }
}

// ---------------------------------------------------------------------------
// Link descriptions

/// A buildable description of a link, e.g. `connect(torus2:3,mirror(torus2:3))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinkName {
    Unknot,
    Torus2(i64),
    Disjoint(Box<LinkName>, Box<LinkName>),
    Connect(Box<LinkName>, Box<LinkName>),
    Mirror(Box<LinkName>),
    Pd(String),
    File(PathBuf),
    Fixture(String),
    /// `figure3(n1,n2).L` or `figure3(n1,n2).Lp`
    Figure3 { n1: i64, n2: i64, primed: bool },
}

impl LinkName {
    pub fn build(&self) -> Result<PlanarDiagram> {
        match self {
            LinkName::Unknot => Ok(unknot()),
            LinkName::Torus2(n) => torus_link_2(*n),
            LinkName::Disjoint(a, b) => Ok(disjoint_union(&a.build()?, &b.build()?)),
            LinkName::Connect(a, b) => connected_sum(&a.build()?, &b.build()?),
            LinkName::Mirror(a) => Ok(mirror(&a.build()?)),
            LinkName::Pd(text) => parse_pd(text),
            LinkName::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                parse_pd(&text)
            }
            LinkName::Fixture(name) => crate::fixtures::fixture(name),
            LinkName::Figure3 { n1, n2, primed } => {
                let (l, lp) = crate::tangle::figure3_pair(*n1, *n2)?;
                Ok(if *primed { lp } else { l })
            }
        }
    }
}

impl std::str::FromStr for LinkName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = |m: &str| Error::LinkSpec(format!("{m} in `{s}`"));
        if s == "unknot" {
            return Ok(LinkName::Unknot);
        }
        if let Some(rest) = s.strip_prefix("pd:") {
            return Ok(LinkName::Pd(rest.to_string()));
        }
        if let Some(rest) = s.strip_prefix("file:") {
            return Ok(LinkName::File(PathBuf::from(rest)));
        }
        if let Some(rest) = s.strip_prefix("fixture:") {
            return Ok(LinkName::Fixture(rest.to_string()));
        }
        if let Some(rest) = s.strip_prefix("torus2:") {
            let n = rest.trim().parse().map_err(|_| err("bad torus parameter"))?;
            return Ok(LinkName::Torus2(n));
        }
        if let Some(rest) = s.strip_prefix("figure3(") {
            let (args, tail) = rest
                .split_once(')')
                .ok_or_else(|| err("unclosed figure3("))?;
            let (a, b) = args.split_once(',').ok_or_else(|| err("figure3 needs n1,n2"))?;
            let n1 = a.trim().parse().map_err(|_| err("bad n1"))?;
            let n2 = b.trim().parse().map_err(|_| err("bad n2"))?;
            let primed = match tail {
                ".L" => false,
                ".Lp" | ".L'" => true,
                _ => return Err(err("figure3(...) must end in .L or .Lp")),
            };
            return Ok(LinkName::Figure3 { n1, n2, primed });
        }
        for op in ["disjoint", "connect", "mirror"] {
            let Some(rest) = s.strip_prefix(op).and_then(|r| r.strip_prefix('(')) else {
                continue;
            };
            let inner = rest.strip_suffix(')').ok_or_else(|| err("missing `)`"))?;
            let args = split_top_level(inner);
            return match (op, args.as_slice()) {
                ("mirror", [a]) => Ok(LinkName::Mirror(Box::new(a.parse()?))),
                ("disjoint", [a, b]) => Ok(LinkName::Disjoint(
                    Box::new(a.parse()?),
                    Box::new(b.parse()?),
                )),
                ("connect", [a, b]) => Ok(LinkName::Connect(
                    Box::new(a.parse()?),
                    Box::new(b.parse()?),
                )),
                _ => Err(err("wrong number of arguments")),
            };
        }
        Err(err("unrecognised link name"))
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";

    #[test]
    fn parses_trefoil() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.components(), 1);
        assert_eq!(d.n_minus(), 3);
        assert_eq!(d.writhe(), -3);
    }

    #[test]
    fn rejects_bad_text() {
        assert_eq!(parse_pd(""), Err(Error::EmptyDiagram));
        assert_eq!(parse_pd("   "), Err(Error::EmptyDiagram));
        assert!(matches!(
            parse_pd("X[1,2,3]"),
            Err(Error::MalformedRecord(_))
        ));
        assert!(matches!(
            parse_pd("X[1,4,2,5] X[3,6,4,1] X[5,2,6,7]"),
            Err(Error::EdgeCount { .. })
        ));
        assert!(matches!(parse_pd("Y[1,2,3,4]"), Err(Error::MalformedRecord(_))));
        assert!(matches!(parse_pd("X[0,1,1,0]"), Err(Error::MalformedRecord(_))));
    }

    #[test]
    fn rejects_contradictory_under_strands() {
        // edge 1 enters both crossings as an under-strand
        assert!(matches!(
            parse_pd("X[1,3,2,4] X[1,4,2,3]"),
            Err(Error::Orientation(_)) | Err(Error::EdgeCount { .. })
        ));
        assert!(matches!(
            parse_pd("X[1,3,2,4] X[2,4,1,3]"),
            Err(Error::Orientation(_))
        ));
    }

    #[test]
    fn comments_are_skipped() {
        let d = parse_pd("# left-handed trefoil\nX[1,4,2,5] X[3,6,4,1]\nX[5,2,6,3] # last\n").unwrap();
        assert_eq!(d, parse_pd(TREFOIL).unwrap());
    }

    #[test]
    fn loop_records() {
        let d = parse_pd("Loop[1]").unwrap();
        assert_eq!(d, unknot());
        let d = parse_pd(&format!("{TREFOIL} Loop[7]")).unwrap();
        assert_eq!(d.components(), 2);
        assert_eq!(d.free_circles(), 1);
        assert!(parse_pd("Loop[1] X[1,4,2,5]").is_err());
    }

    #[test]
    fn unknot_counts() {
        let u = unknot();
        assert_eq!((u.n_plus(), u.n_minus(), u.components()), (0, 0, 1));
        assert_eq!(u.edge_count(), 0);
    }

    #[test]
    fn torus_links() {
        let t3 = torus_link_2(3).unwrap();
        assert_eq!((t3.crossing_count(), t3.components(), t3.n_minus()), (3, 1, 3));
        assert_eq!(torus_link_2(2).unwrap().components(), 2);
        assert_eq!(torus_link_2(1).unwrap().components(), 1);
        assert_eq!(torus_link_2(6).unwrap().components(), 2);
        let m = torus_link_2(-3).unwrap();
        assert_eq!((m.n_plus(), m.n_minus()), (3, 0));
        assert!(torus_link_2(0).is_err());
    }

    #[test]
    fn torus_twin_matches_atlas_code() {
        // the Knot Atlas trefoil is the all-negative one
        let t3 = torus_link_2(3).unwrap();
        let twin = parse_pd(TREFOIL).unwrap();
        assert_eq!(t3.n_minus(), twin.n_minus());
    }

    #[test]
    fn unions_and_sums() {
        let u2 = disjoint_union(&unknot(), &unknot());
        assert_eq!((u2.crossing_count(), u2.components()), (0, 2));
        let t = torus_link_2(3).unwrap();
        let tt = disjoint_union(&t, &t);
        assert_eq!((tt.crossing_count(), tt.components()), (6, 2));
        let granny = connected_sum(&t, &t).unwrap();
        assert_eq!((granny.crossing_count(), granny.components()), (6, 1));
        assert_eq!(granny.n_minus(), 6);
        let h = torus_link_2(2).unwrap();
        assert_eq!(connected_sum(&h, &h).unwrap().components(), 3);
        assert_eq!(connected_sum(&unknot(), &t).unwrap(), t);
    }

    #[test]
    fn mirror_is_involution() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(mirror(&mirror(&d)), d);
        let m = mirror(&torus_link_2(3).unwrap());
        assert_eq!((m.n_plus(), m.n_minus()), (3, 0));
    }

    #[test]
    fn canonical_labels_ascend() {
        // figure-eight with labels spread out
        let d = parse_pd("X[18,14,20,12] X[26,22,12,20] X[22,16,24,18] X[14,24,16,26]").unwrap();
        let c = d.canonical();
        assert_eq!(parse_pd(&c.to_pd_string()).unwrap(), c);
        assert_eq!(c.edges(), (1..=8).collect::<Vec<_>>());
        assert_eq!((c.n_plus(), c.n_minus()), (d.n_plus(), d.n_minus()));
    }

    #[test]
    fn link_spec_grammar() {
        let l: LinkName = "disjoint(unknot,connect(torus2:3,mirror(torus2:-3)))"
            .parse()
            .unwrap();
        let d = l.build().unwrap();
        assert_eq!((d.crossing_count(), d.components()), (6, 2));
        let l: LinkName = "disjoint(pd:X[1,4,2,5] X[3,6,4,1] X[5,2,6,3],torus2:2)"
            .parse()
            .unwrap();
        assert_eq!(l.build().unwrap().components(), 3);
        assert!("torus2:x".parse::<LinkName>().is_err());
        assert!("connect(unknot)".parse::<LinkName>().is_err());
        assert_eq!(
            "figure3(3,2).Lp".parse::<LinkName>().unwrap(),
            LinkName::Figure3 { n1: 3, n2: 2, primed: true }
        );
    }
}
