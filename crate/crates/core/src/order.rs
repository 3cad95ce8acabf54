//! Computable orders: total, nondecreasing, unbounded `h : ℕ → ℕ`.
//!
//! Finite point lists describe infinite orders by continuing the last gap
//! between points (gap 1 when fewer than two points are given), so every
//! representation here is unbounded.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", try_from = "OrderSpec", into = "OrderSpec")]
pub enum ComputableOrder {
    /// `h(n) = n`
    Identity,
    /// `h(n) = values[n]`, then growing by `tail_slope` per step.
    Table { values: Vec<u64>, tail_slope: u64 },
    /// `h(p) = base + min{ i ≥ 1 : p ≤ p_i }` with `points = [p_1, p_2, …]`.
    Breakpoints { base: u64, points: Vec<u64> },
    /// `h(p) = min{ n ≥ base : p ≤ p_n }` with `points = [p_0, p_1, …]`.
    MinClause { base: u64, points: Vec<u64> },
}

// serde mirror so that deserialization goes through validation
#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum OrderSpec {
    Identity,
    Table { values: Vec<u64>, tail_slope: u64 },
    Breakpoints { base: u64, points: Vec<u64> },
    MinClause { base: u64, points: Vec<u64> },
}

impl TryFrom<OrderSpec> for ComputableOrder {
    type Error = Error;

    fn try_from(spec: OrderSpec) -> Result<Self> {
        let order = match spec {
            OrderSpec::Identity => ComputableOrder::Identity,
            OrderSpec::Table { values, tail_slope } => ComputableOrder::Table { values, tail_slope },
            OrderSpec::Breakpoints { base, points } => ComputableOrder::Breakpoints { base, points },
            OrderSpec::MinClause { base, points } => ComputableOrder::MinClause { base, points },
        };
        order.validate()?;
        Ok(order)
    }
}

impl From<ComputableOrder> for OrderSpec {
    fn from(order: ComputableOrder) -> Self {
        match order {
            ComputableOrder::Identity => OrderSpec::Identity,
            ComputableOrder::Table { values, tail_slope } => OrderSpec::Table { values, tail_slope },
            ComputableOrder::Breakpoints { base, points } => OrderSpec::Breakpoints { base, points },
            ComputableOrder::MinClause { base, points } => OrderSpec::MinClause { base, points },
        }
    }
}

/// A strictly increasing sequence given by a finite prefix and continued
/// arithmetically.
struct Extrapolated<'a> {
    points: &'a [u64],
}

impl Extrapolated<'_> {
    fn gap(&self) -> u64 {
        match self.points {
            [.., a, b] => b - a,
            _ => 1,
        }
    }

    /// Zero-based `n`-th point. With no points the sequence is `0, 1, 2, …`.
    fn at(&self, n: u64) -> u64 {
        match self.points.last() {
            None => n,
            Some(&last) => {
                let m = self.points.len() as u64;
                if n < m {
                    self.points[n as usize]
                } else {
                    last.saturating_add(self.gap().saturating_mul(n - (m - 1)))
                }
            }
        }
    }

    /// Least zero-based `n` with `p ≤ at(n)`.
    fn first_reaching(&self, p: u64) -> u64 {
        match self.points.last() {
            None => p,
            Some(&last) if p <= last => self.points.partition_point(|&x| x < p) as u64,
            Some(&last) => (self.points.len() as u64 - 1) + (p - last).div_ceil(self.gap()),
        }
    }
}

fn strictly_increasing(points: &[u64]) -> bool {
    points.windows(2).all(|w| w[0] < w[1])
}

impl ComputableOrder {
    pub fn breakpoints(base: u64, points: Vec<u64>) -> Result<Self> {
        let order = ComputableOrder::Breakpoints { base, points };
        order.validate()?;
        Ok(order)
    }

    pub fn min_clause(base: u64, points: Vec<u64>) -> Result<Self> {
        let order = ComputableOrder::MinClause { base, points };
        order.validate()?;
        Ok(order)
    }

    pub fn table(values: Vec<u64>, tail_slope: u64) -> Result<Self> {
        let order = ComputableOrder::Table { values, tail_slope };
        order.validate()?;
        Ok(order)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            ComputableOrder::Identity => Ok(()),
            ComputableOrder::Table { values, tail_slope } => {
                if values.is_empty() {
                    return Err(Error::InvalidOrder("table needs at least one value".into()));
                }
                if !values.windows(2).all(|w| w[0] <= w[1]) {
                    return Err(Error::InvalidOrder("table values must be nondecreasing".into()));
                }
                if *tail_slope == 0 {
                    return Err(Error::InvalidOrder("tail_slope must be at least 1".into()));
                }
                Ok(())
            }
            ComputableOrder::Breakpoints { points, .. } | ComputableOrder::MinClause { points, .. } => {
                if strictly_increasing(points) {
                    Ok(())
                } else {
                    Err(Error::InvalidOrder("points must be strictly increasing".into()))
                }
            }
        }
    }

    /// `h(n)`
    pub fn eval(&self, n: u64) -> u64 {
        match self {
            ComputableOrder::Identity => n,
            ComputableOrder::Table { values, tail_slope } => match values.get(n as usize) {
                Some(&v) => v,
                None => {
                    let last = *values.last().expect("validated table");
                    let steps = n - (values.len() as u64 - 1);
                    last.saturating_add(tail_slope.saturating_mul(steps))
                }
            },
            ComputableOrder::Breakpoints { base, points } => {
                // points are 1-based here: p_i = seq.at(i - 1)
                let seq = Extrapolated { points };
                base.saturating_add(seq.first_reaching(n) + 1)
            }
            ComputableOrder::MinClause { base, points } => {
                let seq = Extrapolated { points };
                seq.first_reaching(n).max(*base)
            }
        }
    }

    /// Least `n` with `h(n) ≥ m`.
    pub fn inverse_threshold(&self, m: u64) -> u64 {
        match self {
            ComputableOrder::Identity => m,
            ComputableOrder::Table { values, tail_slope } => {
                let n = values.partition_point(|&v| v < m);
                if n < values.len() {
                    n as u64
                } else {
                    let last = *values.last().expect("validated table");
                    (values.len() as u64 - 1) + (m - last).div_ceil(*tail_slope)
                }
            }
            ComputableOrder::Breakpoints { base, points } => {
                if m <= base.saturating_add(1) {
                    0
                } else {
                    // need min{i : p ≤ p_i} ≥ m - base, i.e. p > p_{m-base-1}
                    let seq = Extrapolated { points };
                    seq.at(m - base - 2).saturating_add(1)
                }
            }
            ComputableOrder::MinClause { base, points } => {
                if m <= *base {
                    0
                } else {
                    let seq = Extrapolated { points };
                    seq.at(m - 1).saturating_add(1)
                }
            }
        }
    }

    /// Short human-readable description.
    pub fn describe(&self) -> String {
        match self {
            ComputableOrder::Identity => "identity".into(),
            ComputableOrder::Table { values, tail_slope } => {
                format!("table{values:?}+{tail_slope}n")
            }
            ComputableOrder::Breakpoints { base, points } => format!("breakpoints({base};{points:?})"),
            ComputableOrder::MinClause { base, points } => format!("minclause({base};{points:?})"),
        }
    }
}
