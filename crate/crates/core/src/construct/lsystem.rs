use std::fmt;
use std::str::FromStr;

use super::{ConstructError, Polyline};
use crate::lattice::EisensteinInt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    /// Draw one step.
    S,
    /// Turn 30° left, stretch by √3.
    Star,
    /// Turn 150° right, shrink by √3.
    Slash,
    /// Turn 120° left.
    Plus,
}

impl Symbol {
    pub fn as_char(self) -> char {
        match self {
            Symbol::S => 'S',
            Symbol::Star => '*',
            Symbol::Slash => '/',
            Symbol::Plus => '+',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LSystemWord {
    pub symbols: Vec<Symbol>,
}

impl LSystemWord {
    pub fn axiom() -> Self {
        Self { symbols: vec![Symbol::S] }
    }

    pub fn count_steps(&self) -> usize {
        self.symbols.iter().filter(|s| **s == Symbol::S).count()
    }

    /// One parallel rewrite `S → S*S/S+S`.
    pub fn rewrite(&self) -> Self {
        use Symbol::*;
        let mut out = Vec::with_capacity(self.symbols.len() * 4);
        for &s in &self.symbols {
            if s == S {
                out.extend_from_slice(&[S, Star, S, Slash, S, Plus, S]);
            } else {
                out.push(s);
            }
        }
        Self { symbols: out }
    }
}

impl fmt::Display for LSystemWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.symbols {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for LSystemWord {
    type Err = ConstructError;
    fn from_str(s: &str) -> Result<Self, ConstructError> {
        let symbols = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                'S' => Ok(Symbol::S),
                '*' => Ok(Symbol::Star),
                '/' => Ok(Symbol::Slash),
                '+' => Ok(Symbol::Plus),
                other => Err(ConstructError::BadSymbol(other)),
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { symbols })
    }
}

/// `n` rewrites of the axiom `S`.
pub fn rewrite_lsystem(n: u32) -> LSystemWord {
    (0..n).fold(LSystemWord::axiom(), |w, _| w.rewrite())
}

/// `(Δa, Δh)` for each turn symbol; `a` is the exponent of `1+ω` and `h`
/// the heading in 30° units.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TurtleRules {
    pub star: (i64, i64),
    pub slash: (i64, i64),
    pub plus: (i64, i64),
}

impl Default for TurtleRules {
    fn default() -> Self {
        Self { star: (1, 1), slash: (-1, -5), plus: (0, 4) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TurtleState {
    pub pos: EisensteinInt,
    pub a: i64,
    /// Heading in 30° units, kept in `0..12`.
    pub h: i64,
}

impl TurtleState {
    /// Step vector `(1+ω)^a · ω^{(h−a)/2}`.
    pub fn step(&self, index: usize) -> Result<EisensteinInt, ConstructError> {
        if self.a < 0 {
            return Err(ConstructError::TurtleNegativeScale { index });
        }
        if (self.h - self.a).rem_euclid(2) != 0 {
            return Err(ConstructError::TurtleParity { index, a: self.a, h: self.h });
        }
        let scale = EisensteinInt::ONE_PLUS_OMEGA.checked_pow(self.a as u32)?;
        Ok(scale.checked_mul(EisensteinInt::omega_pow((self.h - self.a) / 2))?)
    }
}

pub fn turtle_run(word: &LSystemWord) -> Result<Polyline, ConstructError> {
    turtle_run_with(word, TurtleRules::default())
}

/// Runs the turtle from the origin with unit step. The result's scale
/// exponent is `n` when the word has `4ⁿ` steps and 0 otherwise.
pub fn turtle_run_with(word: &LSystemWord, rules: TurtleRules) -> Result<Polyline, ConstructError> {
    let mut st = TurtleState::default();
    let mut out = Vec::with_capacity(word.count_steps() + 1);
    out.push(st.pos);
    for (i, &s) in word.symbols.iter().enumerate() {
        let (da, dh) = match s {
            Symbol::S => {
                st.pos = st.pos.checked_add(st.step(i)?)?;
                out.push(st.pos);
                continue;
            }
            Symbol::Star => rules.star,
            Symbol::Slash => rules.slash,
            Symbol::Plus => rules.plus,
        };
        st.a += da;
        st.h = (st.h + dh).rem_euclid(12);
    }
    let steps = out.len() - 1;
    let n = if steps.is_power_of_two() && steps.trailing_zeros() % 2 == 0 { steps.trailing_zeros() / 2 } else { 0 };
    Ok(Polyline::new(n, out))
}
