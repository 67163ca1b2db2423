//! Triangle (`b = 0`) and hexagon (`b >= 1`) prefractals.
//!
//! A depth-`n` prefractal is a set of grid squares
//! `[i/m^n, (i+1)/m^n] x [j/m^n, (j+1)/m^n]` identified by integer pairs
//! `(i, j)`. It is produced either by iterating the lattice IFS starting
//! from the unit square, or directly from the digit condition
//! `-b <= d_t + e_t <= m-1-b` on the balanced expansions of `i` and `j`.
//! Both routes must give the same set.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::radix::{frac_digit_choices, int_to_digits_i64, DigitSystem, Rational};

/// Default cap on the number of squares a single prefractal may hold.
pub const DEFAULT_MAX_SQUARES: u64 = 10_000_000;

/// Default cap on membership automaton states.
pub const DEFAULT_MAX_STATES: usize = 5_000_000;

/// Shift pairs `(k, h)` with `k`, `h` and `k + h` all in the digit alphabet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorLattice {
    system: DigitSystem,
    points: Vec<(i64, i64)>,
}

impl GeneratorLattice {
    pub fn new(system: DigitSystem) -> Self {
        let points = system
            .alphabet()
            .flat_map(|k| system.alphabet().map(move |h| (k, h)))
            .filter(|&(k, h)| system.contains_digit(k + h))
            .collect();
        Self { system, points }
    }

    pub fn system(&self) -> DigitSystem {
        self.system
    }

    /// Sorted lexicographically.
    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

pub fn lattice(m: i64, b: i64) -> Result<GeneratorLattice> {
    Ok(GeneratorLattice::new(DigitSystem::new(m, b)?))
}

/// `m(m+1)/2 + b(m-1-b)`, the number of lattice shifts.
pub fn lattice_cardinality(m: i64, b: i64) -> Result<u64> {
    let sys = DigitSystem::new(m, b)?;
    Ok(cardinality(sys))
}

pub(crate) fn cardinality(sys: DigitSystem) -> u64 {
    let (m, b) = (sys.radix() as u64, sys.balance() as u64);
    m * (m + 1) / 2 + b * (m - 1 - b)
}

/// Number of squares at `depth`, or `None` if it does not fit in `u128`.
pub fn square_count(sys: DigitSystem, depth: u32) -> Option<u128> {
    (cardinality(sys) as u128).checked_pow(depth)
}

fn check_budget(sys: DigitSystem, depth: u32, max_squares: u64) -> Result<u128> {
    match square_count(sys, depth) {
        Some(needed) if needed <= max_squares as u128 => Ok(needed),
        needed => Err(Error::ResourceLimit {
            needed: needed.unwrap_or(u128::MAX),
            limit: max_squares as u128,
        }),
    }
}

/// Finite union of depth-`n` grid squares, kept sorted by `(i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefractal {
    system: DigitSystem,
    depth: u32,
    squares: Vec<(i64, i64)>,
}

#[derive(Serialize, Deserialize)]
struct PrefractalJson {
    m: i64,
    b: i64,
    depth: u32,
    count: usize,
    squares: Vec<[i64; 2]>,
}

impl Prefractal {
    /// Depth 0: the unit square `(0, 0)`.
    pub fn unit_square(system: DigitSystem) -> Self {
        Self {
            system,
            depth: 0,
            squares: vec![(0, 0)],
        }
    }

    /// Sorts the squares and rejects duplicates.
    pub fn from_squares(
        system: DigitSystem,
        depth: u32,
        mut squares: Vec<(i64, i64)>,
    ) -> Result<Self> {
        squares.sort_unstable();
        if let Some(w) = squares.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Internal(format!(
                "duplicate square ({}, {}) at depth {depth}",
                w[0].0, w[0].1
            )));
        }
        Ok(Self {
            system,
            depth,
            squares,
        })
    }

    pub fn system(&self) -> DigitSystem {
        self.system
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn squares(&self) -> &[(i64, i64)] {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }

    pub fn contains_square(&self, i: i64, j: i64) -> bool {
        self.squares.binary_search(&(i, j)).is_ok()
    }

    /// One IFS step: every square is shrunk by `m` and copied to each lattice
    /// shift. The shift enters as the new most significant digit.
    pub fn iterate(&self, lat: &GeneratorLattice, max_squares: u64) -> Result<Prefractal> {
        if lat.system() != self.system {
            return Err(Error::SystemMismatch {
                left: self.system.to_string(),
                right: lat.system().to_string(),
            });
        }
        let depth = self.depth + 1;
        let needed = self.squares.len() as u128 * lat.len() as u128;
        if needed > max_squares as u128 {
            return Err(Error::ResourceLimit {
                needed,
                limit: max_squares as u128,
            });
        }
        let scale = self.system.radix().pow(self.depth);
        let mut squares = Vec::with_capacity(needed as usize);
        for &(k, h) in lat.points() {
            let (dk, dh) = (k * scale, h * scale);
            squares.extend(self.squares.iter().map(|&(i, j)| (i + dk, j + dh)));
        }
        Self::from_squares(self.system, depth, squares)
    }

    /// Point lies in the closed union of grid squares.
    pub fn covers_point(&self, x: &Rational, y: &Rational) -> bool {
        self.covers_with_offsets(x, y, &Rational::zero(), &Rational::from_integer(1.into()))
    }

    /// Point lies in the closed union of tiles `(i + V)/m^n x (j + V)/m^n`,
    /// where `V` is the value interval of the system. Tiles are the images of
    /// the attractor's bounding box and coincide with grid squares when `b = 0`.
    pub fn tile_covers_point(&self, x: &Rational, y: &Rational) -> bool {
        let v = self.system.value_interval();
        self.covers_with_offsets(x, y, &v.lo, &v.hi)
    }

    fn covers_with_offsets(
        &self,
        x: &Rational,
        y: &Rational,
        lo: &Rational,
        hi: &Rational,
    ) -> bool {
        let scale = Rational::from_integer(BigInt::from(self.system.radix()).pow(self.depth));
        let candidates = |v: &Rational| -> Vec<i64> {
            let s = v * &scale;
            let first = (&s - hi).ceil().to_integer();
            let last = (&s - lo).floor().to_integer();
            let mut out = Vec::new();
            let mut c = first;
            while c <= last {
                if let Some(c) = c.to_i64() {
                    out.push(c);
                }
                c += 1;
            }
            out
        };
        let is = candidates(x);
        let js = candidates(y);
        is.iter()
            .any(|&i| js.iter().any(|&j| self.contains_square(i, j)))
    }

    /// `{"m":..,"b":..,"depth":..,"count":..,"squares":[[i,j],...]}`
    pub fn to_json(&self) -> String {
        let doc = PrefractalJson {
            m: self.system.radix(),
            b: self.system.balance(),
            depth: self.depth,
            count: self.squares.len(),
            squares: self.squares.iter().map(|&(i, j)| [i, j]).collect(),
        };
        serde_json::to_string(&doc).expect("prefractal serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PrefractalJson = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("prefractal json: {e}")))?;
        let system = DigitSystem::new(doc.m, doc.b)?;
        if doc.count != doc.squares.len() {
            return Err(Error::Parse(format!(
                "prefractal json: count {} but {} squares",
                doc.count,
                doc.squares.len()
            )));
        }
        let squares = doc.squares.into_iter().map(|[i, j]| (i, j)).collect();
        Self::from_squares(system, doc.depth, squares)
            .map_err(|e| Error::Parse(format!("prefractal json: {e}")))
    }
}

/// Unit square iterated `depth` times.
pub fn generate(system: DigitSystem, depth: u32, max_squares: u64) -> Result<Prefractal> {
    check_budget(system, depth, max_squares)?;
    let lat = GeneratorLattice::new(system);
    let mut p = Prefractal::unit_square(system);
    for _ in 0..depth {
        p = p.iterate(&lat, max_squares)?;
    }
    Ok(p)
}

/// Inclusive range of indices with a depth-`n` alphabet decomposition.
pub fn index_range(system: DigitSystem, depth: u32) -> (i64, i64) {
    let m = system.radix();
    let geometric = (m.pow(depth) - 1) / (m - 1);
    (
        system.min_digit() * geometric,
        system.max_digit() * geometric,
    )
}

/// All `(i, j)` whose depth-`n` decompositions satisfy the digit-sum
/// condition at every position. Every candidate index is decomposed with
/// the integer conversion of the radix module and tested pairwise.
pub fn prefractal_by_digits(system: DigitSystem, depth: u32) -> Prefractal {
    let (lo, hi) = index_range(system, depth);
    let n = depth as usize;
    let digits: Vec<Vec<i64>> = (lo..=hi)
        .map(|i| {
            let d = int_to_digits_i64(i, system).expect("index decomposes in its own range");
            debug_assert!(d.max_exponent().is_none_or(|e| (e as usize) < n));
            (0..n as i32).map(|t| d.digit(t)).collect()
        })
        .collect();
    let mut squares = Vec::new();
    for (a, di) in digits.iter().enumerate() {
        for (c, dj) in digits.iter().enumerate() {
            if di
                .iter()
                .zip(dj)
                .all(|(&x, &y)| system.contains_digit(x + y))
            {
                squares.push((lo + a as i64, lo + c as i64));
            }
        }
    }
    Prefractal {
        system,
        depth,
        squares,
    }
}

/// IFS prefractal and digit prefractal agree at `depth`.
pub fn equivalence_check(system: DigitSystem, depth: u32, max_squares: u64) -> Result<bool> {
    let ifs = generate(system, depth, max_squares)?;
    Ok(ifs == prefractal_by_digits(system, depth))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Status {
    OnPath,
    Alive,
    Dead,
}

type State = (Rational, Rational);

/// Depth-first search over remainder pairs `(rx, ry)`.
///
/// A transition picks valid next digits `dx`, `dy` for both coordinates with
/// `dx + dy` in the alphabet and moves to `(m rx - dx, m ry - dy)`. A point
/// belongs to the fractal iff an infinite path exists from its start state,
/// i.e. iff a cycle is reachable.
#[derive(Debug)]
pub struct MembershipAutomaton {
    system: DigitSystem,
    states: HashMap<State, Status>,
    max_states: usize,
}

struct Frame {
    state: State,
    successors: Vec<State>,
    next: usize,
}

impl MembershipAutomaton {
    pub fn new(system: DigitSystem) -> Self {
        Self::with_state_cap(system, DEFAULT_MAX_STATES)
    }

    pub fn with_state_cap(system: DigitSystem, max_states: usize) -> Self {
        Self {
            system,
            states: HashMap::new(),
            max_states,
        }
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    fn successors(&self, (rx, ry): &State) -> Result<Vec<State>> {
        let xs = frac_digit_choices(rx, self.system)?;
        let ys = frac_digit_choices(ry, self.system)?;
        let mut out = Vec::with_capacity(xs.len() * ys.len());
        for (dx, nx) in &xs {
            for (dy, ny) in &ys {
                if self.system.contains_digit(dx + dy) {
                    out.push((nx.clone(), ny.clone()));
                }
            }
        }
        Ok(out)
    }

    fn enter(&mut self, state: State) -> Result<Frame> {
        if self.states.len() >= self.max_states {
            return Err(Error::StateCap(self.max_states));
        }
        let successors = self.successors(&state)?;
        self.states.insert(state.clone(), Status::OnPath);
        Ok(Frame {
            state,
            successors,
            next: 0,
        })
    }

    pub fn decide(&mut self, x: &Rational, y: &Rational) -> Result<bool> {
        let interval = self.system.value_interval();
        if !interval.contains(x) || !interval.contains(y) {
            return Ok(false);
        }
        let start = (x.clone(), y.clone());
        match self.states.get(&start) {
            Some(Status::Alive) => return Ok(true),
            Some(Status::Dead) => return Ok(false),
            Some(Status::OnPath) => return Err(Error::Internal("re-entrant query".into())),
            None => {}
        }
        let mut stack = vec![self.enter(start)?];
        while let Some(frame) = stack.last_mut() {
            let Some(next) = frame.successors.get(frame.next).cloned() else {
                let done = stack.pop().expect("non-empty stack");
                self.states.insert(done.state, Status::Dead);
                continue;
            };
            frame.next += 1;
            match self.states.get(&next) {
                Some(Status::OnPath) | Some(Status::Alive) => {
                    // Every state on the path reaches the cycle.
                    for f in stack.drain(..) {
                        self.states.insert(f.state, Status::Alive);
                    }
                    return Ok(true);
                }
                Some(Status::Dead) => {}
                None => {
                    let frame = self.enter(next)?;
                    stack.push(frame);
                }
            }
        }
        Ok(false)
    }
}

/// Exact membership of a rational point, decided with a fresh automaton.
pub fn member(x: &Rational, y: &Rational, system: DigitSystem) -> Result<bool> {
    MembershipAutomaton::new(system).decide(x, y)
}
