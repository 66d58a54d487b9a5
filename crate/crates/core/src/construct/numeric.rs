use crate::lattice::EisensteinInt;

/// Counts of base-4 digits equal to 1 (`u`) and to 2 (`v`) in `k`,
/// maintained incrementally as `k` counts up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DigitCounters {
    pub k: u64,
    pub u: u32,
    pub v: u32,
}

impl DigitCounters {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn at(k: u64) -> Self {
        let (u, v) = digit_counts(k);
        Self { k, u, v }
    }

    /// Moves to `k+1`. Trailing 3s roll over to 0 and count for neither
    /// `u` nor `v`, so only the first non-3 digit matters.
    pub fn advance(&mut self) {
        let mut t = self.k;
        while t & 3 == 3 {
            t >>= 2;
        }
        match t & 3 {
            0 => self.u += 1,
            1 => {
                self.u -= 1;
                self.v += 1;
            }
            _ => self.v -= 1,
        }
        self.k += 1;
    }
}

/// From-scratch digit counts of `k` in base 4.
pub fn digit_counts(mut k: u64) -> (u32, u32) {
    let (mut u, mut v) = (0, 0);
    while k > 0 {
        match k & 3 {
            1 => u += 1,
            2 => v += 1,
            _ => {}
        }
        k >>= 2;
    }
    (u, v)
}

/// Streams `z_0, z_1, …` with `z_{k+1} = z_k + (1+ω)^{u_k} ω^{−2v_k}`.
///
/// State is the current point, the digit counters and a small table of
/// powers of `1+ω`; nothing grows with the number of points yielded.
#[derive(Debug, Clone)]
pub struct ZStream {
    z: EisensteinInt,
    counters: DigitCounters,
    remaining: usize,
    powers: [EisensteinInt; 33],
}

impl ZStream {
    pub fn new(count: usize) -> Self {
        let mut powers = [EisensteinInt::ONE; 33];
        for i in 1..powers.len() {
            powers[i] = powers[i - 1] * EisensteinInt::ONE_PLUS_OMEGA;
        }
        Self { z: EisensteinInt::ZERO, counters: DigitCounters::new(), remaining: count, powers }
    }

    fn increment(&self) -> EisensteinInt {
        let c = self.counters;
        self.powers[c.u as usize] * EisensteinInt::omega_pow(-2 * c.v as i64)
    }
}

impl Iterator for ZStream {
    type Item = EisensteinInt;

    fn next(&mut self) -> Option<EisensteinInt> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = self.z;
        if self.remaining > 0 {
            self.z = self.z + self.increment();
            self.counters.advance();
        }
        Some(out)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

impl ExactSizeIterator for ZStream {}

/// The first `count` points `z_0..z_{count−1}`.
pub fn z_stream(count: usize) -> ZStream {
    ZStream::new(count)
}

/// `z_k` computed directly from the base-4 digits of `k`.
///
/// Uses `z_{4m+d} = 3 z_m + z_d` for digits `d`, rotated and scaled by the
/// prefix: each digit contributes `3^{pos}·(partial sum)`. Handy as an
/// oracle for single indices.
pub fn z_at(k: u64) -> EisensteinInt {
    let mut acc = EisensteinInt::ZERO;
    let mut prefix = (0u32, 0u32);
    let mut digits = Vec::new();
    let mut t = k;
    while t > 0 {
        digits.push(t & 3);
        t >>= 2;
    }
    let len = digits.len() as u32;
    let table = [EisensteinInt::ZERO, EisensteinInt::new(1, 0), EisensteinInt::new(2, 1), EisensteinInt::new(2, 0)];
    for (i, &d) in digits.iter().rev().enumerate() {
        let pos = len - 1 - i as u32;
        let turn = EisensteinInt::ONE_PLUS_OMEGA.checked_pow(prefix.0).expect("z_at overflow")
            * EisensteinInt::omega_pow(-2 * prefix.1 as i64);
        acc = acc + turn * table[d as usize] * 3i64.pow(pos);
        match d {
            1 => prefix.0 += 1,
            2 => prefix.1 += 1,
            _ => {}
        }
    }
    acc
}
