use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::AnalyzeError;
use crate::construct::Polyline;
use crate::lattice::EisensteinInt;

/// A closed excursion of the polyline: `vertices[0] == vertices.last()`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Loop {
    pub start_index: usize,
    pub end_index: usize,
    pub vertices: Vec<EisensteinInt>,
}

impl Loop {
    pub fn displacement(&self) -> EisensteinInt {
        self.vertices[self.vertices.len() - 1] - self.vertices[0]
    }

    pub fn distinct_vertices(&self) -> usize {
        let mut v = self.vertices.clone();
        v.sort();
        v.dedup();
        v.len()
    }
}

/// Ways two edges of a polyline can meet other than at a shared vertex.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeContacts {
    /// Interiors cross at a single point.
    pub proper_crossings: usize,
    /// A vertex lies inside another edge.
    pub t_touches: usize,
    /// Collinear edges share more than a point.
    pub overlaps: usize,
    /// First offending edge pair, by edge index.
    pub first: Option<(usize, usize)>,
}

impl EdgeContacts {
    pub fn is_clean(&self) -> bool {
        self.proper_crossings == 0 && self.t_touches == 0 && self.overlaps == 0
    }
}

/// Iterates checked up to this depth before loop detection trusts that
/// every self-contact is a repeated vertex.
pub const CONTACT_CHECK_MAX_N: u32 = 6;

fn cross(o: EisensteinInt, a: EisensteinInt, b: EisensteinInt) -> i128 {
    // sign-preserving in the (a, b) basis since the basis change is affine
    (a.a - o.a) as i128 * (b.b - o.b) as i128 - (a.b - o.b) as i128 * (b.a - o.a) as i128
}

fn on_segment(p: EisensteinInt, a: EisensteinInt, b: EisensteinInt) -> bool {
    cross(a, b, p) == 0 && a.a.min(b.a) <= p.a && p.a <= a.a.max(b.a) && a.b.min(b.b) <= p.b && p.b <= a.b.max(b.b)
}

/// Exact classification of non-vertex contacts between the edges of a
/// closed or open lattice polyline.
pub fn edge_contacts(vertices: &[EisensteinInt]) -> EdgeContacts {
    let edges: Vec<_> = vertices.windows(2).map(|w| (w[0], w[1])).collect();
    let cell = 4i64;
    let mut grid: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
    for (i, (a, b)) in edges.iter().enumerate() {
        for x in a.a.min(b.a).div_euclid(cell)..=a.a.max(b.a).div_euclid(cell) {
            for y in a.b.min(b.b).div_euclid(cell)..=a.b.max(b.b).div_euclid(cell) {
                grid.entry((x, y)).or_default().push(i);
            }
        }
    }
    let mut out = EdgeContacts::default();
    let mut seen = std::collections::HashSet::new();
    let mut keys: Vec<_> = grid.keys().copied().collect();
    keys.sort_unstable();
    for key in keys {
        let ids = &grid[&key];
        for (x, &i) in ids.iter().enumerate() {
            for &j in &ids[x + 1..] {
                let (i, j) = (i.min(j), i.max(j));
                if !seen.insert((i, j)) {
                    continue;
                }
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                let (d1, d2) = (cross(a, b, c), cross(a, b, d));
                let (d3, d4) = (cross(c, d, a), cross(c, d, b));
                let mut bad = false;
                if d1 == 0 && d2 == 0 {
                    let inner = |p, s: EisensteinInt, t: EisensteinInt| p != s && p != t && on_segment(p, s, t);
                    let same = (a == c && b == d) || (a == d && b == c);
                    if same || inner(c, a, b) || inner(d, a, b) || inner(a, c, d) || inner(b, c, d) {
                        out.overlaps += 1;
                        bad = true;
                    }
                } else if (d1 > 0 && d2 < 0 || d1 < 0 && d2 > 0) && (d3 > 0 && d4 < 0 || d3 < 0 && d4 > 0) {
                    out.proper_crossings += 1;
                    bad = true;
                } else {
                    for (p, (s, t)) in [(c, (a, b)), (d, (a, b)), (a, (c, d)), (b, (c, d))] {
                        if p != s && p != t && on_segment(p, s, t) {
                            out.t_touches += 1;
                            bad = true;
                        }
                    }
                }
                if bad && out.first.is_none_or(|f| (i, j) < f) {
                    out.first = Some((i, j));
                }
            }
        }
    }
    out
}

/// Outermost closed loops, found by a stack scan with a first-visit map.
///
/// When a vertex repeats, everything pushed since its first visit is
/// popped and the span becomes a loop; spans nested inside it are dropped
/// so only outermost loops remain. Each loop keeps the original vertices
/// of its span, inner excursions included.
pub fn detect_loops(p: &Polyline) -> Result<Vec<Loop>, AnalyzeError> {
    if p.scale_exp <= CONTACT_CHECK_MAX_N {
        let c = edge_contacts(&p.vertices);
        if !c.is_clean() {
            return Err(AnalyzeError::Internal(format!("polyline has contacts without shared vertices: {c:?}")));
        }
    }
    let (spans, _) = scan(&p.vertices);
    Ok(spans
        .into_iter()
        .map(|(i, j)| Loop { start_index: i, end_index: j, vertices: p.vertices[i..=j].to_vec() })
        .collect())
}

/// The polyline with every loop cut out.
pub fn remove_loops(p: &Polyline) -> Polyline {
    let (_, kept) = scan(&p.vertices);
    Polyline::new(p.scale_exp, kept)
}

fn scan(vertices: &[EisensteinInt]) -> (Vec<(usize, usize)>, Vec<EisensteinInt>) {
    let mut stack: Vec<(EisensteinInt, usize)> = Vec::new();
    let mut pos: HashMap<EisensteinInt, usize> = HashMap::new();
    let mut spans: Vec<(usize, usize)> = Vec::new();
    for (j, &v) in vertices.iter().enumerate() {
        if let Some(&i) = pos.get(&v) {
            let first = stack[i].1;
            for (w, _) in stack.drain(i + 1..) {
                pos.remove(&w);
            }
            while spans.last().is_some_and(|s| s.0 >= first) {
                spans.pop();
            }
            spans.push((first, j));
        } else {
            pos.insert(v, stack.len());
            stack.push((v, j));
        }
    }
    (spans, stack.into_iter().map(|(v, _)| v).collect())
}
