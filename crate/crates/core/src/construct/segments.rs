use rayon::prelude::*;

use super::{pow3, ConstructError, Polyline};
use crate::lattice::EisensteinInt;

/// Default cap on the vertex buffer of a materialized curve (512 MiB).
pub const DEFAULT_MEMORY_BUDGET: u128 = 512 << 20;

const PARALLEL_FROM: u32 = 7;

/// One substitution step: `A, A+v, A+(2+ω)v, A+2v, E` with `v = (E−A)/3`.
///
/// The spike `A+(2+ω)v` makes the third quarter an equilateral bump.
pub fn subdivide_segment(a: EisensteinInt, e: EisensteinInt) -> Result<[EisensteinInt; 5], ConstructError> {
    let d = e.checked_sub(a)?;
    let v = d.div_exact(3).map_err(|_| ConstructError::NotDivisible { what: d })?;
    let two_v = v.checked_scale(2)?;
    let c = a.checked_add(v.checked_mul(EisensteinInt::new(2, 1))?)?;
    Ok([a, a.checked_add(v)?, c, a.checked_add(two_v)?, e])
}

/// Vertices of the n-th iterate of the unit segment, at scale `3ⁿ`.
pub fn generate_segments(n: u32) -> Result<Polyline, ConstructError> {
    generate_segments_with_budget(n, DEFAULT_MEMORY_BUDGET)
}

pub fn generate_segments_with_budget(n: u32, budget: u128) -> Result<Polyline, ConstructError> {
    let count = 4u128.pow(n.min(60)) + 1;
    let bytes = count * std::mem::size_of::<EisensteinInt>() as u128;
    if n > 40 || bytes > budget {
        return Err(ConstructError::Resource { n, bytes, budget });
    }
    let end = EisensteinInt::from_int(pow3(n)?);
    let mut out = Vec::with_capacity(count as usize);
    out.push(EisensteinInt::ZERO);
    if n == 0 {
        out.push(end);
    } else if n < PARALLEL_FROM {
        expand(EisensteinInt::ZERO, end, n, &mut out)?;
    } else {
        let top = subdivide_segment(EisensteinInt::ZERO, end)?;
        let parts: Vec<Vec<EisensteinInt>> = (0..4)
            .into_par_iter()
            .map(|i| {
                let mut part = Vec::with_capacity(4usize.pow(n - 1));
                expand(top[i], top[i + 1], n - 1, &mut part).map(|_| part)
            })
            .collect::<Result<_, _>>()?;
        for p in parts {
            out.extend(p);
        }
    }
    Ok(Polyline::new(n, out))
}

/// Appends the vertices after `a` of the depth-`n` expansion of `a→e`.
fn expand(a: EisensteinInt, e: EisensteinInt, n: u32, out: &mut Vec<EisensteinInt>) -> Result<(), ConstructError> {
    if n == 0 {
        out.push(e);
        return Ok(());
    }
    let s = subdivide_segment(a, e)?;
    for w in s.windows(2) {
        expand(w[0], w[1], n - 1, out)?;
    }
    Ok(())
}
