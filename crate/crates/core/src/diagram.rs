//! Front diagrams as event words.
//!
//! Slice `s` is the vertical line just before event `s` (slice `events.len()`
//! is the right end). A node `(s, p)` is strand `p` (1-based, from the top)
//! on slice `s`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Event {
    LeftCusp(usize),
    RightCusp(usize),
    Crossing(usize),
    Basepoint(usize),
}

impl Event {
    pub fn position(&self) -> usize {
        match *self {
            Event::LeftCusp(p) | Event::RightCusp(p) | Event::Crossing(p) | Event::Basepoint(p) => p,
        }
    }

    fn with_position(&self, p: usize) -> Event {
        match self {
            Event::LeftCusp(_) => Event::LeftCusp(p),
            Event::RightCusp(_) => Event::RightCusp(p),
            Event::Crossing(_) => Event::Crossing(p),
            Event::Basepoint(_) => Event::Basepoint(p),
        }
    }

    /// Strands consumed from the left slice and produced on the right slice.
    fn arity(&self) -> (usize, usize) {
        match self {
            Event::LeftCusp(_) => (0, 2),
            Event::RightCusp(_) => (2, 0),
            Event::Crossing(_) => (2, 2),
            Event::Basepoint(_) => (1, 1),
        }
    }

    fn token(&self) -> char {
        match self {
            Event::LeftCusp(_) => 'L',
            Event::RightCusp(_) => 'R',
            Event::Crossing(_) => 'X',
            Event::Basepoint(_) => '*',
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.token(), self.position())
    }
}

/// How two nodes on adjacent or equal slices are joined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Join {
    /// Same strand continues; potential and direction unchanged.
    Through,
    /// Cusp: first node is the upper strand; potential +1, direction flips.
    Cusp,
}

struct WeightedUf {
    parent: Vec<usize>,
    off: Vec<i64>,
}

impl WeightedUf {
    fn new(n: usize) -> Self {
        WeightedUf {
            parent: (0..n).collect(),
            off: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> (usize, i64) {
        let p = self.parent[x];
        if p == x {
            return (x, 0);
        }
        let (r, o) = self.find(p);
        self.parent[x] = r;
        self.off[x] += o;
        (r, self.off[x])
    }

    /// Impose value(a) = value(b) + d. Returns the discrepancy if violated.
    fn union(&mut self, a: usize, b: usize, d: i64) -> i64 {
        let (ra, oa) = self.find(a);
        let (rb, ob) = self.find(b);
        if ra == rb {
            return oa - ob - d;
        }
        self.parent[ra] = rb;
        self.off[ra] = ob + d - oa;
        0
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FrontDiagram {
    events: Vec<Event>,
    counts: Vec<usize>,
    offsets: Vec<usize>,
    components: usize,
    is_satellite: bool,
}

/// Per-node integers (potentials or orientations), indexed by slice then position.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NodeMap(Vec<Vec<i64>>);

impl NodeMap {
    pub fn at(&self, slice: usize, pos: usize) -> i64 {
        self.0[slice][pos - 1]
    }

    pub fn slice(&self, s: usize) -> &[i64] {
        &self.0[s]
    }

    pub fn from_slices(v: Vec<Vec<i64>>) -> Self {
        NodeMap(v)
    }
}

pub type MaslovPotential = NodeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassicalInvariants {
    pub tb: i64,
    pub rotation: i64,
    pub writhe: i64,
    pub right_cusps: usize,
    /// (event index, grading) for each crossing, when r = 0.
    pub crossing_gradings: Option<Vec<(usize, i64)>>,
    #[serde(skip)]
    pub potential: Option<MaslovPotential>,
}

fn strand_counts(events: &[Event]) -> std::result::Result<Vec<usize>, (usize, Error)> {
    let mut counts = vec![0];
    let mut k = 0usize;
    for (i, e) in events.iter().enumerate() {
        let p = e.position();
        let ok = match e {
            Event::LeftCusp(_) => p >= 1 && p <= k + 1,
            Event::RightCusp(_) | Event::Crossing(_) => p >= 1 && p < k,
            Event::Basepoint(_) => p >= 1 && p <= k,
        };
        if !ok {
            return Err((
                i,
                Error::InvalidPosition {
                    line: i + 1,
                    pos: p,
                    strands: k,
                },
            ));
        }
        let (a, b) = e.arity();
        k = k + b - a;
        counts.push(k);
    }
    if k != 0 {
        return Err((events.len(), Error::Unbalanced(k)));
    }
    Ok(counts)
}

impl FrontDiagram {
    /// A knot diagram: one component, exactly one basepoint.
    pub fn from_events(events: Vec<Event>) -> Result<Self> {
        let d = Self::build(events, false)?;
        let bps: Vec<usize> = d
            .events
            .iter()
            .enumerate()
            .filter(|(_, e)| matches!(e, Event::Basepoint(_)))
            .map(|(i, _)| i)
            .collect();
        match bps.len() {
            0 => return Err(Error::NoBasepoint),
            1 => {}
            _ => return Err(Error::MultipleBasepoints(bps[1] + 1)),
        }
        if let Some(i) = d.first_non_plat_event() {
            return Err(Error::NotPlat(i + 1));
        }
        if d.components != 1 {
            return Err(Error::MultipleComponents(d.components));
        }
        Ok(d)
    }

    /// A link diagram produced by a satellite construction; basepoints optional.
    pub fn satellite_from_events(events: Vec<Event>) -> Result<Self> {
        Self::build(events, true)
    }

    fn build(events: Vec<Event>, is_satellite: bool) -> Result<Self> {
        let counts = strand_counts(&events).map_err(|(_, e)| e)?;
        let mut offsets = Vec::with_capacity(counts.len());
        let mut acc = 0;
        for &c in &counts {
            offsets.push(acc);
            acc += c;
        }
        let mut d = FrontDiagram {
            events,
            counts,
            offsets,
            components: 0,
            is_satellite,
        };
        let mut uf = WeightedUf::new(d.node_count());
        for (a, b, _) in d.joins() {
            uf.union(a, b, 0);
        }
        let mut roots: Vec<usize> = (0..d.node_count()).map(|x| uf.find(x).0).collect();
        roots.sort_unstable();
        roots.dedup();
        d.components = roots.len();
        Ok(d)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (events, satellite) = parse_events(text)?;
        if satellite {
            return Self::satellite_from_events(events);
        }
        Self::from_events(events).map_err(|e| match e {
            Error::InvalidPosition { line, pos, strands } => Error::InvalidPosition {
                line: source_line(text, line),
                pos,
                strands,
            },
            Error::MultipleBasepoints(line) => Error::MultipleBasepoints(source_line(text, line)),
            Error::NotPlat(line) => Error::NotPlat(source_line(text, line)),
            other => other,
        })
    }

    /// Index of the first left cusp or crossing that follows a right cusp.
    fn first_non_plat_event(&self) -> Option<usize> {
        let first_r = self.events.iter().position(|e| matches!(e, Event::RightCusp(_)))?;
        (first_r..self.events.len()).find(|&i| matches!(self.events[i], Event::LeftCusp(_) | Event::Crossing(_)))
    }

    /// All right cusps come after every left cusp and crossing.
    pub fn is_plat(&self) -> bool {
        self.first_non_plat_event().is_none()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn is_satellite(&self) -> bool {
        self.is_satellite
    }

    pub fn components(&self) -> usize {
        self.components
    }

    /// Strand count on each slice; length `events.len() + 1`.
    pub fn strand_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn max_strands(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        self.offsets.last().unwrap() + self.counts.last().unwrap()
    }

    pub fn node(&self, slice: usize, pos: usize) -> usize {
        debug_assert!(pos >= 1 && pos <= self.counts[slice]);
        self.offsets[slice] + pos - 1
    }

    fn node_coords(&self, id: usize) -> (usize, usize) {
        let s = (0..self.counts.len())
            .find(|&t| self.offsets[t] <= id && id < self.offsets[t] + self.counts[t])
            .expect("node id out of range");
        (s, id - self.offsets[s] + 1)
    }

    /// (event index, strand position) of the basepoint, if any.
    pub fn basepoint(&self) -> Option<(usize, usize)> {
        self.events.iter().enumerate().find_map(|(i, e)| match e {
            Event::Basepoint(p) => Some((i, *p)),
            _ => None,
        })
    }

    fn joins(&self) -> Vec<(usize, usize, Join)> {
        let mut out = Vec::new();
        for (s, e) in self.events.iter().enumerate() {
            let k = self.counts[s];
            let p = e.position();
            match e {
                Event::LeftCusp(_) => {
                    out.push((self.node(s + 1, p), self.node(s + 1, p + 1), Join::Cusp));
                    for j in 1..=k {
                        let t = if j < p { j } else { j + 2 };
                        out.push((self.node(s, j), self.node(s + 1, t), Join::Through));
                    }
                }
                Event::RightCusp(_) => {
                    out.push((self.node(s, p), self.node(s, p + 1), Join::Cusp));
                    for j in 1..=k {
                        if j < p {
                            out.push((self.node(s, j), self.node(s + 1, j), Join::Through));
                        } else if j > p + 1 {
                            out.push((self.node(s, j), self.node(s + 1, j - 2), Join::Through));
                        }
                    }
                }
                Event::Crossing(_) => {
                    for j in 1..=k {
                        let t = if j == p {
                            p + 1
                        } else if j == p + 1 {
                            p
                        } else {
                            j
                        };
                        out.push((self.node(s, j), self.node(s + 1, t), Join::Through));
                    }
                }
                Event::Basepoint(_) => {
                    for j in 1..=k {
                        out.push((self.node(s, j), self.node(s + 1, j), Join::Through));
                    }
                }
            }
        }
        out
    }

    /// Component label of every node (labels are 0..components, in order of
    /// first appearance scanning slices left to right, top to bottom).
    pub fn component_labels(&self) -> NodeMap {
        let mut uf = WeightedUf::new(self.node_count());
        for (a, b, _) in self.joins() {
            uf.union(a, b, 0);
        }
        let mut label = std::collections::HashMap::new();
        let mut out = Vec::new();
        for s in 0..self.counts.len() {
            let mut row = Vec::new();
            for p in 1..=self.counts[s] {
                let r = uf.find(self.node(s, p)).0;
                let n = label.len() as i64;
                row.push(*label.entry(r).or_insert(n));
            }
            out.push(row);
        }
        NodeMap(out)
    }

    /// Direction of travel (+1 rightward, -1 leftward) at each node. The
    /// knot is oriented leftward at the basepoint; for links each component
    /// is oriented rightward at its first node unless `seed` fixes a value.
    pub fn orientation_with(&self, seed: &dyn Fn(usize, usize) -> Option<i64>) -> NodeMap {
        let mut uf = WeightedUf::new(self.node_count());
        for (a, b, j) in self.joins() {
            uf.union(a, b, if j == Join::Cusp { 1 } else { 0 });
        }
        let mut root_sign = std::collections::HashMap::new();
        for s in 0..self.counts.len() {
            for p in 1..=self.counts[s] {
                if let Some(v) = seed(s, p) {
                    let (r, o) = uf.find(self.node(s, p));
                    let parity = if o.rem_euclid(2) == 0 { 1 } else { -1 };
                    root_sign.entry(r).or_insert(v * parity);
                }
            }
        }
        let mut out = Vec::new();
        for s in 0..self.counts.len() {
            let mut row = Vec::new();
            for p in 1..=self.counts[s] {
                let (r, o) = uf.find(self.node(s, p));
                let parity = if o.rem_euclid(2) == 0 { 1 } else { -1 };
                let base = *root_sign.entry(r).or_insert(parity);
                row.push(base * parity);
            }
            out.push(row);
        }
        NodeMap(out)
    }

    pub fn orientation(&self) -> NodeMap {
        let bp = self.basepoint();
        self.orientation_with(&move |s, p| match bp {
            Some((bs, bpos)) if bs == s && bpos == p => Some(-1),
            _ => None,
        })
    }

    /// Maslov potential normalized to 0 at the basepoint (or at the first
    /// node of each component when there is none); `None` when r != 0.
    pub fn maslov_potential(&self) -> Option<MaslovPotential> {
        let mut uf = WeightedUf::new(self.node_count());
        for (a, b, j) in self.joins() {
            let d = if j == Join::Cusp { 1 } else { 0 };
            if uf.union(a, b, d) != 0 {
                return None;
            }
        }
        let mut base = std::collections::HashMap::new();
        if let Some((bs, bpos)) = self.basepoint() {
            let (r, o) = uf.find(self.node(bs, bpos));
            base.insert(r, o);
        }
        let mut out = Vec::new();
        for s in 0..self.counts.len() {
            let mut row = Vec::new();
            for p in 1..=self.counts[s] {
                let (r, o) = uf.find(self.node(s, p));
                let b = *base.entry(r).or_insert(o);
                row.push(o - b);
            }
            out.push(row);
        }
        Some(NodeMap(out))
    }

    /// Writhe for a given orientation.
    pub fn writhe_with(&self, orient: &NodeMap) -> i64 {
        self.events
            .iter()
            .enumerate()
            .filter_map(|(s, e)| match e {
                Event::Crossing(p) => Some(if orient.at(s, *p) == orient.at(s, p + 1) { 1 } else { -1 }),
                _ => None,
            })
            .sum()
    }

    pub fn right_cusp_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::RightCusp(_))).count()
    }

    pub fn rotation_with(&self, orient: &NodeMap) -> i64 {
        let (mut down, mut up) = (0i64, 0i64);
        for (s, e) in self.events.iter().enumerate() {
            match e {
                Event::LeftCusp(p) => {
                    if orient.at(s + 1, *p) < 0 {
                        down += 1
                    } else {
                        up += 1
                    }
                }
                Event::RightCusp(p) => {
                    if orient.at(s, *p) > 0 {
                        down += 1
                    } else {
                        up += 1
                    }
                }
                _ => {}
            }
        }
        (down - up) / 2
    }

    /// Grading of the crossing at event `s` under a potential: potential of
    /// the strand entering from the upper left minus the one entering from
    /// the lower left.
    pub fn crossing_grading(&self, potential: &MaslovPotential, s: usize) -> i64 {
        let p = self.events[s].position();
        potential.at(s, p) - potential.at(s, p + 1)
    }

    pub fn classical_invariants(&self) -> ClassicalInvariants {
        let orient = self.orientation();
        let writhe = self.writhe_with(&orient);
        let right_cusps = self.right_cusp_count();
        let potential = self.maslov_potential();
        let crossing_gradings = potential.as_ref().map(|mu| {
            self.events
                .iter()
                .enumerate()
                .filter(|(_, e)| matches!(e, Event::Crossing(_)))
                .map(|(s, _)| (s, self.crossing_grading(mu, s)))
                .collect()
        });
        ClassicalInvariants {
            tb: writhe - right_cusps as i64,
            rotation: self.rotation_with(&orient),
            writhe,
            right_cusps,
            crossing_gradings,
            potential,
        }
    }

    pub fn to_canonical_string(&self) -> String {
        let mut s = String::new();
        if self.is_satellite {
            s.push_str("# satellite\n");
        }
        for e in &self.events {
            s.push_str(&e.to_string());
            s.push('\n');
        }
        s
    }

    /// Exchange events `i` and `i+1` when they act on disjoint strand
    /// ranges (a planar isotopy). Returns `None` when they interact.
    pub fn commute(&self, i: usize) -> Option<FrontDiagram> {
        let (e1, e2) = (*self.events.get(i)?, *self.events.get(i + 1)?);
        let (in1, out1) = e1.arity();
        let (in2, out2) = e2.arity();
        let (p1, p2) = (e1.position(), e2.position());
        // blocks on the middle slice: e1 output [p1, p1+out1), e2 input [p2, p2+in2)
        let inside = |p: usize, a: usize, b: usize| a < p && p < b;
        let disjoint = match (out1, in2) {
            (0, 0) => p1 != p2,
            (0, _) => !inside(p1, p2, p2 + in2),
            (_, 0) => !inside(p2, p1, p1 + out1),
            _ => p2 >= p1 + out1 || p2 + in2 <= p1,
        };
        if !disjoint {
            return None;
        }
        let below = if out1 == 0 && in2 == 0 { p2 > p1 } else { p2 >= p1 + out1 };
        let new2 = if below { p2 + in1 - out1 } else { p2 };
        let new1 = if below { p1 } else { p1 + out2 - in2 };
        let mut events = self.events.clone();
        events[i] = e2.with_position(new2);
        events[i + 1] = e1.with_position(new1);
        let d = Self::build(events, self.is_satellite).ok()?;
        (d.components == self.components).then_some(d)
    }

    #[doc(hidden)]
    pub fn node_position(&self, id: usize) -> (usize, usize) {
        self.node_coords(id)
    }
}

fn source_line(text: &str, event_line: usize) -> usize {
    // event_line is 1-based index among event-bearing lines
    let mut count = 0;
    for (i, line) in text.lines().enumerate() {
        let content = line.split('#').next().unwrap_or("").trim();
        if !content.is_empty() {
            count += 1;
            if count == event_line {
                return i + 1;
            }
        }
    }
    event_line
}

fn parse_events(text: &str) -> Result<(Vec<Event>, bool)> {
    let mut events = Vec::new();
    let mut satellite = false;
    for (ln, line) in text.lines().enumerate() {
        let (content, comment) = match line.find('#') {
            Some(i) => (&line[..i], Some(&line[i + 1..])),
            None => (line, None),
        };
        if comment.is_some_and(|c| c.trim() == "satellite") && events.is_empty() {
            satellite = true;
        }
        let mut toks = Vec::new();
        let mut col = 0;
        for part in content.split_inclusive(char::is_whitespace) {
            let t = part.trim();
            if !t.is_empty() {
                toks.push((col + part.find(t).unwrap() + 1, t));
            }
            col += part.len();
        }
        if toks.is_empty() {
            continue;
        }
        let err = |col: usize, msg: String| Error::Syntax { line: ln + 1, col, msg };
        if toks.len() != 2 {
            let col = toks.get(2).map_or(toks[0].0, |t| t.0);
            return Err(err(col, format!("expected `<kind> <position>`, found {} tokens", toks.len())));
        }
        let (kc, kind) = toks[0];
        let (pc, pos) = toks[1];
        let p: usize = pos.parse().map_err(|_| err(pc, format!("invalid position `{pos}`")))?;
        if p == 0 {
            return Err(err(pc, "positions are 1-based".into()));
        }
        events.push(match kind {
            "L" => Event::LeftCusp(p),
            "R" => Event::RightCusp(p),
            "X" => Event::Crossing(p),
            "*" => Event::Basepoint(p),
            _ => return Err(err(kc, format!("unknown event `{kind}`"))),
        });
    }
    Ok((events, satellite))
}

pub const CATALOG: [&str; 4] = ["unknot", "trefoil", "unknot_s2", "figure8"];

pub fn catalog_text(name: &str) -> Result<&'static str> {
    Ok(match name {
        "unknot" => "L 1\n* 1\nR 1\n",
        "trefoil" => "L 1\nL 1\nX 2\nX 2\nX 2\n* 1\nR 1\nR 1\n",
        "unknot_s2" => "L 1\nL 1\nX 1\n* 3\nR 2\nR 1\n",
        "figure8" => "L 1\nL 1\nX 2\nX 1\nX 1\nX 1\nX 2\nX 2\nX 2\n* 1\nR 1\nR 1\n",
        _ => return Err(Error::UnknownCatalog(name.to_string())),
    })
}

pub fn catalog(name: &str) -> Result<FrontDiagram> {
    FrontDiagram::parse(catalog_text(name)?)
}

/// Seeded random fronts for testing and benchmarking.
pub mod random {
    use super::*;

    /// Small deterministic generator, stable across platforms.
    pub struct Lcg(pub u64);

    impl Lcg {
        pub fn below(&mut self, n: usize) -> usize {
            self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((self.0 >> 33) % n as u64) as usize
        }
    }

    /// A random plat event word with exactly one basepoint; may be a link.
    pub fn random_events(rng: &mut Lcg, max_strands: usize, len: usize) -> Vec<Event> {
        let mut ev = Vec::new();
        let mut k = 0;
        let steps = len - rng.below(2);
        for _ in 0..steps {
            let choice = rng.below(4);
            if k == 0 || (choice == 0 && k + 2 <= max_strands) {
                let p = rng.below(k + 1) + 1;
                ev.push(Event::LeftCusp(p));
                k += 2;
            } else {
                ev.push(Event::Crossing(rng.below(k - 1) + 1));
            }
        }
        while k > 0 {
            ev.push(Event::RightCusp(rng.below(k - 1) + 1));
            k -= 2;
        }
        // insert the basepoint on some slice with strands
        let mut counts = vec![0usize];
        let mut k = 0;
        for e in &ev {
            let (a, b) = e.arity();
            k = k + b - a;
            counts.push(k);
        }
        let candidates: Vec<usize> = (0..ev.len()).filter(|&s| counts[s] > 0).collect();
        let s = candidates[rng.below(candidates.len())];
        ev.insert(s, Event::Basepoint(rng.below(counts[s]) + 1));
        ev
    }

    /// Random knot fronts with r = 0.
    pub fn random_knots(seed: u64, count: usize, max_strands: usize, len: usize) -> Vec<FrontDiagram> {
        let mut rng = Lcg(seed);
        let mut out = Vec::new();
        let mut tries = 0;
        while out.len() < count && tries < 100_000 {
            tries += 1;
            let ev = random_events(&mut rng, max_strands, len);
            if let Ok(d) = FrontDiagram::from_events(ev) {
                if d.maslov_potential().is_some() {
                    out.push(d);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::random::*;
    use super::*;

    #[test]
    fn parses_catalog() {
        let u = catalog("unknot").unwrap();
        assert_eq!(u.events().len(), 3);
        let t = catalog("trefoil").unwrap();
        assert_eq!(t.events().iter().filter(|e| matches!(e, Event::Crossing(_))).count(), 3);
        assert!(matches!(catalog("nope"), Err(Error::UnknownCatalog(_))));
    }

    #[test]
    fn classical_values() {
        let expect = [("unknot", -1), ("trefoil", 1), ("unknot_s2", -3), ("figure8", -3)];
        for (name, tb) in expect {
            let ci = catalog(name).unwrap().classical_invariants();
            assert_eq!(ci.tb, tb, "{name}");
            assert_eq!(ci.rotation, 0, "{name}");
            assert!(ci.potential.is_some(), "{name}");
        }
    }

    #[test]
    fn trefoil_crossings_have_grading_zero() {
        let ci = catalog("trefoil").unwrap().classical_invariants();
        assert!(ci.crossing_gradings.unwrap().iter().all(|&(_, g)| g == 0));
    }

    #[test]
    fn basepoint_edge_has_potential_zero() {
        for name in CATALOG {
            let d = catalog(name).unwrap();
            let (s, p) = d.basepoint().unwrap();
            assert_eq!(d.maslov_potential().unwrap().at(s, p), 0);
        }
    }

    #[test]
    fn stabilized_unknot_has_rotation() {
        let d = FrontDiagram::parse("L 1\nL 2\nR 1\n* 1\nR 1").unwrap();
        let ci = d.classical_invariants();
        assert_eq!(ci.rotation.abs(), 1);
        assert!(ci.potential.is_none());
        assert!(ci.crossing_gradings.is_none());
        assert_eq!(ci.tb, -2);
    }

    #[test]
    fn diagnostics() {
        assert_eq!(FrontDiagram::parse("L 1\nR 1"), Err(Error::NoBasepoint));
        assert!(matches!(FrontDiagram::parse("L 1\n* 1\n* 2\nR 1"), Err(Error::MultipleBasepoints(3))));
        assert!(matches!(FrontDiagram::parse("L 1\n* 1"), Err(Error::Unbalanced(2))));
        assert!(matches!(
            FrontDiagram::parse("# c\nL 1\n* 1\nX 2\nR 1"),
            Err(Error::InvalidPosition { line: 4, pos: 2, strands: 2 })
        ));
        assert!(matches!(FrontDiagram::parse("L 1\nQ 1"), Err(Error::Syntax { line: 2, col: 1, .. })));
        assert!(matches!(FrontDiagram::parse("L 1\n* x"), Err(Error::Syntax { line: 2, col: 3, .. })));
        assert!(matches!(FrontDiagram::parse("L 1\nL 3\n* 1\nR 1\nR 1"), Err(Error::MultipleComponents(2))));
    }

    #[test]
    fn round_trip() {
        for name in CATALOG {
            let d = catalog(name).unwrap();
            let text = d.to_canonical_string();
            let again = FrontDiagram::parse(&text).unwrap();
            assert_eq!(again, d);
            assert_eq!(again.to_canonical_string(), text);
        }
        let with_comments = "# hello\n  L 1   # open\n* 1\n\nR 1\n";
        assert_eq!(FrontDiagram::parse(with_comments).unwrap(), catalog("unknot").unwrap());
    }

    #[test]
    fn tb_invariant_under_commuting_events() {
        let mut rng = Lcg(7);
        let mut moved = 0;
        for d in random_knots(11, 200, 6, 12) {
            let ci = d.classical_invariants();
            let mut cur = d.clone();
            for _ in 0..20 {
                let i = rng.below(cur.events().len() - 1);
                if let Some(next) = cur.commute(i) {
                    cur = next;
                    moved += 1;
                }
            }
            let cj = cur.classical_invariants();
            assert_eq!(ci.tb, cj.tb, "{}", d.to_canonical_string());
            assert_eq!(ci.rotation, cj.rotation);
            assert_eq!(cur.components(), 1);
            let recount = cur.writhe_with(&cur.orientation()) - cur.right_cusp_count() as i64;
            assert_eq!(recount, ci.tb);
        }
        assert!(moved > 100);
    }

    #[test]
    fn random_knots_have_consistent_parity() {
        // tb + r is odd for every Legendrian knot
        for d in random_knots(3, 100, 6, 14) {
            let ci = d.classical_invariants();
            assert_eq!((ci.tb + ci.rotation).rem_euclid(2), 1);
        }
    }
}
