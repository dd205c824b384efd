//! Integer-valued step functions on `[0, 1]` with exact rational breakpoints.
//!
//! A `StepFunction` is kept in canonical form: breakpoints strictly increase
//! from 0 to 1 and adjacent values differ. Two functions that agree away from
//! finitely many points therefore have identical representations, so `==` is
//! equality up to finite sets.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepFunction {
    breakpoints: Vec<Rational>,
    values: Vec<i64>,
}

/// Value of a step function at a point. At a breakpoint the two one-sided
/// limits are averaged and `jump` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointValue {
    pub value: Rational,
    pub jump: bool,
}

impl StepFunction {
    pub fn constant(value: i64) -> Self {
        Self { breakpoints: vec![Rational::zero(), Rational::one()], values: vec![value] }
    }

    /// Builds from explicit parts and canonicalises.
    pub fn from_parts(breakpoints: Vec<Rational>, values: Vec<i64>) -> Result<Self> {
        if breakpoints.len() != values.len() + 1 || values.is_empty() {
            return Err(Error::invalid("need exactly one value per interval"));
        }
        if !breakpoints[0].is_zero() || !breakpoints[breakpoints.len() - 1].is_one() {
            return Err(Error::invalid("breakpoints must start at 0 and end at 1"));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("breakpoints must be strictly increasing"));
        }
        Ok(Self::canonical(breakpoints, values))
    }

    /// `constant + sum of weight * indicator(a, b)`, with each interval clipped
    /// to `[0, 1]`. Empty or reversed intervals are ignored.
    pub fn from_intervals<I>(constant: i64, intervals: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational, i64)>,
    {
        let zero = Rational::zero();
        let one = Rational::one();
        let mut deltas: BTreeMap<Rational, i64> = BTreeMap::new();
        for (a, b, w) in intervals {
            let a = a.max(zero.clone());
            let b = b.min(one.clone());
            if a >= b || w == 0 {
                continue;
            }
            *deltas.entry(a).or_default() += w;
            *deltas.entry(b).or_default() -= w;
        }
        let mut breakpoints = vec![zero];
        let mut values = Vec::new();
        let mut current = constant;
        for (x, d) in deltas {
            if x.is_zero() {
                current += d;
                continue;
            }
            if x.is_one() {
                break;
            }
            values.push(current);
            breakpoints.push(x);
            current += d;
        }
        values.push(current);
        breakpoints.push(one);
        Self::canonical(breakpoints, values)
    }

    fn canonical(breakpoints: Vec<Rational>, values: Vec<i64>) -> Self {
        let mut bp = vec![breakpoints[0].clone()];
        let mut vals: Vec<i64> = Vec::with_capacity(values.len());
        for (i, v) in values.into_iter().enumerate() {
            if vals.last() == Some(&v) {
                *bp.last_mut().unwrap() = breakpoints[i + 1].clone();
            } else {
                vals.push(v);
                bp.push(breakpoints[i + 1].clone());
            }
        }
        Self { breakpoints: bp, values: vals }
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// `(start, end, value)` for each open interval.
    pub fn intervals(&self) -> impl Iterator<Item = (&Rational, &Rational, i64)> + '_ {
        self.breakpoints.windows(2).zip(&self.values).map(|(w, &v)| (&w[0], &w[1], v))
    }

    /// Interior breakpoints, i.e. the jump set inside `(0, 1)`.
    pub fn jumps(&self) -> &[Rational] {
        &self.breakpoints[1..self.breakpoints.len() - 1]
    }

    /// The value at `x`, treating `[0, 1]` as the circle: at 0 and 1 the
    /// one-sided limits are the first and last values.
    pub fn at(&self, x: &Rational) -> PointValue {
        assert!(rat::in_unit_interval(x), "x must lie in [0, 1]");
        let n = self.values.len();
        let (left, right) = match self.breakpoints.binary_search(x) {
            Ok(0) => (self.values[n - 1], self.values[0]),
            Ok(j) if j == n => (self.values[n - 1], self.values[0]),
            Ok(j) => (self.values[j - 1], self.values[j]),
            Err(j) => {
                let v = self.values[j - 1];
                (v, v)
            }
        };
        PointValue {
            value: Rational::new((left + right).into(), 2.into()),
            jump: left != right,
        }
    }

    /// The value on the open interval containing `x`; `None` at a breakpoint.
    pub fn value_off_jumps(&self, x: &Rational) -> Option<i64> {
        match self.breakpoints.binary_search(x) {
            Ok(_) => None,
            Err(0) => None,
            Err(j) if j > self.values.len() => None,
            Err(j) => Some(self.values[j - 1]),
        }
    }

    /// Exact integral over `[0, 1]`.
    pub fn integral(&self) -> Rational {
        self.intervals()
            .map(|(a, b, v)| (b - a) * Rational::from_integer(v.into()))
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    pub fn max_abs(&self) -> i64 {
        self.values.iter().map(|v| v.abs()).max().unwrap_or(0)
    }

    /// Invariance under `x -> 1 - x`.
    pub fn is_symmetric(&self) -> bool {
        let one = Rational::one();
        let n = self.values.len();
        (0..self.breakpoints.len())
            .all(|i| self.breakpoints[i] == &one - &self.breakpoints[self.breakpoints.len() - 1 - i])
            && (0..n).all(|i| self.values[i] == self.values[n - 1 - i])
    }

    fn combine(&self, other: &Self, op: impl Fn(i64, i64) -> i64) -> Self {
        let mut breakpoints = Vec::with_capacity(self.breakpoints.len() + other.breakpoints.len());
        let mut values = Vec::with_capacity(self.values.len() + other.values.len());
        breakpoints.push(Rational::zero());
        let (mut i, mut j) = (0, 0);
        while i < self.values.len() && j < other.values.len() {
            values.push(op(self.values[i], other.values[j]));
            let a = &self.breakpoints[i + 1];
            let b = &other.breakpoints[j + 1];
            match a.cmp(b) {
                std::cmp::Ordering::Less => {
                    breakpoints.push(a.clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    breakpoints.push(b.clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    breakpoints.push(a.clone());
                    i += 1;
                    j += 1;
                }
            }
        }
        Self::canonical(breakpoints, values)
    }

    /// CSV with header `x_start,x_end,value`, endpoints as `num/den`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x_start,x_end,value\n");
        for (a, b, v) in self.intervals() {
            let _ = writeln!(out, "{},{},{}", rat::format(a), rat::format(b), v);
        }
        out
    }

    /// Parses the output of [`StepFunction::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        match lines.next() {
            Some(h) if h.trim() == "x_start,x_end,value" => {}
            _ => return Err(Error::invalid("missing header x_start,x_end,value")),
        }
        let mut breakpoints = vec![];
        let mut values = vec![];
        for line in lines {
            let fields: Vec<&str> = line.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::invalid(format!("bad CSV row {line:?}")));
            }
            let a = rat::parse(fields[0])?;
            let b = rat::parse(fields[1])?;
            match breakpoints.last() {
                None => breakpoints.push(a),
                Some(last) if *last == a => {}
                Some(_) => return Err(Error::invalid("CSV intervals are not contiguous")),
            }
            breakpoints.push(b);
            values.push(
                fields[2].trim().parse().map_err(|_| Error::invalid(format!("bad value in {line:?}")))?,
            );
        }
        Self::from_parts(breakpoints, values)
    }

    /// Plot-ready `(x, value)` rows: every breakpoint appears twice (left and
    /// right limit) so that jumps render as vertical segments, and the uniform
    /// grid of `samples` points on `[0, 1]` is merged in.
    pub fn plot_rows(&self, samples: usize) -> Result<Vec<(Rational, i64)>> {
        if samples < 2 {
            return Err(Error::invalid("plot data needs at least 2 samples"));
        }
        let den = i64::try_from(samples - 1).map_err(|_| Error::invalid("too many samples"))?;
        let grid: Vec<Rational> = (0..=den).map(|k| rat::rat(k, den)).collect();
        let mut rows = Vec::new();
        let mut g = grid.iter().peekable();
        for (a, b, v) in self.intervals() {
            rows.push((a.clone(), v));
            while let Some(x) = g.peek() {
                if *x <= a {
                    g.next();
                } else if *x < b {
                    rows.push(((*x).clone(), v));
                    g.next();
                } else {
                    break;
                }
            }
            rows.push((b.clone(), v));
        }
        Ok(rows)
    }
}

impl Add for &StepFunction {
    type Output = StepFunction;

    fn add(self, rhs: Self) -> StepFunction {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &StepFunction {
    type Output = StepFunction;

    fn sub(self, rhs: Self) -> StepFunction {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Neg for &StepFunction {
    type Output = StepFunction;

    fn neg(self) -> StepFunction {
        StepFunction { breakpoints: self.breakpoints.clone(), values: self.values.iter().map(|v| -v).collect() }
    }
}

impl std::iter::Sum for StepFunction {
    fn sum<I: Iterator<Item = StepFunction>>(iter: I) -> Self {
        iter.fold(StepFunction::constant(0), |acc, f| &acc + &f)
    }
}

/// Exact `integral_0^1 f`.
pub fn integrate_step(f: &StepFunction) -> Rational {
    f.integral()
}

/// Equality away from a finite set. Canonical forms make this structural.
pub fn step_functions_almost_equal(f: &StepFunction, g: &StepFunction) -> bool {
    f == g
}
