use serde::{Deserialize, Serialize};

use crate::construct::z_stream;

/// Intervals `[start/denominator, end/denominator]` of the base segment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CantorIntervals {
    pub n: u32,
    pub denominator: i64,
    pub intervals: Vec<(i64, i64)>,
}

/// The parts of the base segment `[0, 1]` that the n-th iterate still
/// runs along, merged into maximal intervals.
pub fn cantor_remainder(n: u32) -> CantorIntervals {
    let end = 3i64.pow(n);
    let mut spans: Vec<(i64, i64)> = Vec::new();
    let mut prev = None;
    for z in z_stream(4usize.pow(n) + 1) {
        if let Some(p) = prev {
            let on_base = |q: crate::EisensteinInt| q.b == 0 && (0..=end).contains(&q.a);
            if on_base(p) && on_base(z) {
                spans.push((p.a.min(z.a), p.a.max(z.a)));
            }
        }
        prev = Some(z);
    }
    spans.sort_unstable();
    let mut merged: Vec<(i64, i64)> = Vec::new();
    for (a, b) in spans {
        match merged.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => merged.push((a, b)),
        }
    }
    CantorIntervals { n, denominator: end, intervals: merged }
}

/// The n-th middle-thirds iterate, built by recursive trisection.
pub fn middle_thirds(n: u32) -> CantorIntervals {
    let mut iv = vec![(0i64, 1i64)];
    for _ in 0..n {
        iv = iv.into_iter().flat_map(|(a, b)| [(3 * a, 3 * a + (b - a)), (3 * b - (b - a), 3 * b)]).collect();
    }
    CantorIntervals { n, denominator: 3i64.pow(n), intervals: iv }
}
