//! Parameter and Bloch-sphere grid scans.
//!
//! Rows are evaluated on the rayon pool and collected in grid order, so the
//! output does not depend on scheduling. CSV numbers use 17 significant
//! digits.

use std::f64::consts::PI;
use std::fmt::Write as _;
use std::str::FromStr;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gate_power::boost_demo;
use crate::magic::{magic_entropic, magic_relative, qubit_qmax};
use crate::params::ParamPair;
use crate::stabilizer::{qutrit_t_state, StabilizerSet};
use crate::state::PureState;

/// Points closer than this to `alpha = 1` or `beta = 0` are dropped.
pub const EXCLUSION_TOL: f64 = 1e-12;

/// One grid axis, `name:start:stop:steps`.
#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    /// Periodic axes (`phi`) leave out the stop value.
    pub periodic: bool,
}

impl Axis {
    pub fn new(name: &str, start: f64, stop: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::Malformed(format!("axis {name}: steps must be at least 2")));
        }
        if !start.is_finite() || !stop.is_finite() {
            return Err(Error::Malformed(format!("axis {name}: bounds must be finite")));
        }
        Ok(Self {
            name: name.to_string(),
            start,
            stop,
            steps,
            periodic: name == "phi",
        })
    }

    /// Grid values with excluded points removed.
    pub fn values(&self) -> Vec<f64> {
        let n = self.steps;
        let denom = if self.periodic { n } else { n - 1 } as f64;
        (0..n)
            .map(|k| self.start + (self.stop - self.start) * k as f64 / denom)
            .filter(|&v| !self.excluded(v))
            .collect()
    }

    fn excluded(&self, v: f64) -> bool {
        match self.name.as_str() {
            "alpha" => (v - 1.0).abs() < EXCLUSION_TOL,
            "beta" => v.abs() < EXCLUSION_TOL,
            _ => false,
        }
    }
}

impl FromStr for Axis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(Error::Malformed(format!("grid {s:?}: expected var:start:stop:steps")));
        }
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Malformed(format!("grid {s:?}: bad number {t:?}")))
        };
        let steps = parts[3]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::Malformed(format!("grid {s:?}: bad step count {:?}", parts[3])))?;
        Axis::new(parts[0].trim(), num(parts[1])?, num(parts[2])?, steps)
    }
}

/// A two-axis grid; the first axis varies slowest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub outer: Axis,
    pub inner: Axis,
}

impl GridSpec {
    /// `theta` over `[0, pi]`, `phi` over `[0, 2 pi)`, 200 points each.
    pub fn example1() -> Self {
        Self {
            outer: Axis::new("theta", 0.0, PI, 200).expect("valid"),
            inner: Axis::new("phi", 0.0, 2.0 * PI, 200).expect("valid"),
        }
    }

    /// Cell centres: `alpha = 0.025 + 0.05 k`, `beta = -19.5 + k`, 40 each.
    pub fn example2() -> Self {
        Self {
            outer: Axis::new("alpha", 0.025, 1.975, 40).expect("valid"),
            inner: Axis::new("beta", -19.5, 19.5, 40).expect("valid"),
        }
    }

    /// `alpha` in `[1.02, 1.98]` and beta cell centres of `(-5, 1)`, 50 each.
    pub fn example3() -> Self {
        Self::example3_sized(50, 50)
    }

    pub fn example3_sized(na: usize, nb: usize) -> Self {
        let half = 3.0 / nb as f64;
        Self {
            outer: Axis::new("alpha", 1.02, 1.98, na).expect("valid"),
            inner: Axis::new("beta", -5.0 + half, 1.0 - half, nb).expect("valid"),
        }
    }

    /// Replaces axes by name.
    pub fn with_overrides(mut self, axes: &[Axis]) -> Result<Self> {
        for a in axes {
            if a.name == self.outer.name {
                self.outer = a.clone();
            } else if a.name == self.inner.name {
                self.inner = a.clone();
            } else {
                return Err(Error::Malformed(format!(
                    "grid axis {:?} not in ({}, {})",
                    a.name, self.outer.name, self.inner.name
                )));
            }
        }
        Ok(self)
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        let inner = self.inner.values();
        self.outer
            .values()
            .into_iter()
            .flat_map(|o| inner.iter().map(move |&i| (o, i)))
            .collect()
    }
}

/// Example 3 axes, as used by the boost scan.
pub fn example3_axes(na: usize, nb: usize) -> (Vec<f64>, Vec<f64>) {
    let g = GridSpec::example3_sized(na, nb);
    (g.outer.values(), g.inner.values())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Num(f64),
    Bool(bool),
}

/// Rows of named columns.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl ScanTable {
    fn new(columns: Vec<&'static str>, rows: Vec<Vec<Cell>>) -> Result<Self> {
        for row in &rows {
            for cell in row {
                if let Cell::Num(v) = cell {
                    if !v.is_finite() {
                        return Err(Error::BadParams(format!("non-finite value {v} in scan")));
                    }
                }
            }
        }
        Ok(Self { columns, rows })
    }

    pub fn column(&self, name: &str) -> Option<Vec<Cell>> {
        let k = self.columns.iter().position(|c| *c == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            for (k, cell) in row.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                }
                match cell {
                    Cell::Num(v) => write!(out, "{}", format_number(*v)).expect("string write"),
                    Cell::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: serde_json::Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, cell)| {
                        let v = match cell {
                            Cell::Num(x) => json!(x),
                            Cell::Bool(b) => json!(b),
                        };
                        (c.to_string(), v)
                    })
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({ "columns": self.columns, "rows": rows })
    }
}

/// 17 significant digits in scientific notation, locale independent.
pub fn format_number(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v:.16e}")
}

/// `theta, phi, q_max, M` over the Bloch sphere.
pub fn scan_example1(p: ParamPair, grid: &GridSpec) -> Result<ScanTable> {
    let set = StabilizerSet::new(2, 1)?;
    let rows = grid
        .points()
        .into_par_iter()
        .map(|(theta, phi)| {
            let m = magic_entropic(&PureState::bloch(theta, phi), p, &set)?;
            Ok(vec![
                Cell::Num(theta),
                Cell::Num(phi),
                Cell::Num(qubit_qmax(theta, phi)),
                Cell::Num(m.value),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    ScanTable::new(vec!["theta", "phi", "q_max", "M"], rows)
}

/// `alpha, beta, M_T, m_T` for the qutrit T state.
pub fn scan_example2(grid: &GridSpec) -> Result<ScanTable> {
    let set = StabilizerSet::new(3, 1)?;
    let psi = qutrit_t_state();
    let rows = grid
        .points()
        .into_par_iter()
        .map(|(alpha, beta)| {
            let p = ParamPair::new(alpha, beta)?;
            Ok(vec![
                Cell::Num(alpha),
                Cell::Num(beta),
                Cell::Num(magic_entropic(&psi, p, &set)?.value),
                Cell::Num(magic_relative(&psi, p, &set)?.value),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    ScanTable::new(vec!["alpha", "beta", "M_T", "m_T"], rows)
}

/// `alpha, beta, delta, power, boosted` for the `T^{1/4}` boost.
pub fn scan_example3(grid: &GridSpec) -> Result<ScanTable> {
    let set = StabilizerSet::new(2, 1)?;
    let rows = grid
        .points()
        .into_par_iter()
        .map(|(alpha, beta)| {
            let r = boost_demo(ParamPair::new(alpha, beta)?, &set)?;
            Ok(vec![
                Cell::Num(alpha),
                Cell::Num(beta),
                Cell::Num(r.delta),
                Cell::Num(r.power),
                Cell::Bool(r.boosted),
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    ScanTable::new(vec!["alpha", "beta", "delta", "power", "boosted"], rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing() {
        let a: Axis = "alpha:0.5:1.5:3".parse().unwrap();
        assert_eq!(a.values(), vec![0.5, 1.5]);
        assert!("alpha:0:1".parse::<Axis>().is_err());
        assert!("alpha:0:1:1".parse::<Axis>().is_err());
        assert!("alpha:x:1:3".parse::<Axis>().is_err());
        let b: Axis = "beta:-1:1:5".parse().unwrap();
        assert_eq!(b.values(), vec![-1.0, -0.5, 0.5, 1.0]);
    }

    #[test]
    fn default_grids() {
        let g = GridSpec::example1();
        let phis = g.inner.values();
        assert_eq!(phis.len(), 200);
        assert!(*phis.last().unwrap() < 2.0 * PI);
        assert_eq!(*g.outer.values().last().unwrap(), PI);

        let g = GridSpec::example2();
        let a = g.outer.values();
        assert_eq!(a.len(), 40);
        for (k, v) in a.iter().enumerate() {
            assert!((v - (0.025 + 0.05 * k as f64)).abs() < 1e-12);
        }
        let b = g.inner.values();
        assert_eq!(b.len(), 40);
        assert!((b[0] + 19.5).abs() < 1e-12 && (b[39] - 19.5).abs() < 1e-12);

        let (a, b) = example3_axes(50, 50);
        assert_eq!((a.len(), b.len()), (50, 50));
        for (k, v) in b.iter().enumerate() {
            assert!((v - (-5.0 + 6.0 * (k as f64 + 0.5) / 50.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn overrides() {
        let g = GridSpec::example1()
            .with_overrides(&["theta:0:1:3".parse().unwrap()])
            .unwrap();
        assert_eq!(g.points().len(), 3 * 200);
        assert!(GridSpec::example1()
            .with_overrides(&["alpha:0:1:3".parse().unwrap()])
            .is_err());
    }

    #[test]
    fn csv_layout() {
        let g = GridSpec::example1()
            .with_overrides(&[
                "theta:0:3.141592653589793:2".parse().unwrap(),
                "phi:0:1:2".parse().unwrap(),
            ])
            .unwrap();
        let t = scan_example1(ParamPair::new(0.5, 2.0).unwrap(), &g).unwrap();
        let csv = t.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "theta,phi,q_max,M");
        assert_eq!(lines.len(), 5);
        assert!(lines[1].starts_with("0.0000000000000000e0,0.0000000000000000e0,1.0000000000000000e0,"));
        assert!(!csv.contains('\r'));
    }

    #[test]
    fn example2_spot_values() {
        let g = GridSpec::example2();
        let t = scan_example2(&g).unwrap();
        let find = |a: f64, b: f64| {
            t.rows
                .iter()
                .find(|r| matches!((r[0], r[1]), (Cell::Num(x), Cell::Num(y)) if (x - a).abs() < 1e-9 && (y - b).abs() < 1e-9))
                .cloned()
                .unwrap()
        };
        let num = |c: Cell| match c {
            Cell::Num(v) => v,
            Cell::Bool(_) => unreachable!(),
        };
        // M(2 - alpha) = m(alpha) across mirrored rows
        let (r1, r2) = (find(0.475, 2.5), find(1.525, 2.5));
        assert!((num(r1[3]) - num(r2[2])).abs() < 1e-10);
    }

    #[test]
    fn example3_all_boosted() {
        let t = scan_example3(&GridSpec::example3_sized(6, 6)).unwrap();
        assert!(t.column("boosted").unwrap().iter().all(|c| *c == Cell::Bool(true)));
    }
}
