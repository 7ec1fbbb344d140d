//! Parameter sweeps, critical points and the preset figure grids.
//!
//! Grid points are independent, so evaluation is a data-parallel map when
//! the `parallel` feature is enabled. The assembled grid is identical to the
//! sequential result regardless of scheduling.

use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ground_state, ModelParams};
use crate::thermal::{concurrence_sign, thermal_concurrence, ConcurrenceMethod, Temperature};
use crate::tol;

/// A named model/thermal parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Param {
    J,
    Jz,
    /// Uniform field `B`.
    BigB,
    /// Inhomogeneous field `b`.
    SmallB,
    T,
}

impl Param {
    pub const ALL: [Param; 5] = [Param::J, Param::Jz, Param::BigB, Param::SmallB, Param::T];

    /// Case-insensitive-safe token used on the command line and in CSV headers.
    pub fn token(&self) -> &'static str {
        match self {
            Param::J => "j",
            Param::Jz => "jz",
            Param::BigB => "big-b",
            Param::SmallB => "b",
            Param::T => "t",
        }
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Param::ALL
            .into_iter()
            .find(|p| p.token() == s)
            .ok_or_else(|| Error::InvalidAxis(format!("unknown parameter `{s}` (expected j, jz, big-b, b or t)")))
    }
}

/// Inclusive, linearly spaced axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: Param,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Axis {
    /// `points == 1` is accepted only for a degenerate axis with
    /// `start == stop`.
    pub fn new(name: Param, start: f64, stop: f64, points: usize) -> Result<Self> {
        let axis = Self {
            name,
            start,
            stop,
            points,
        };
        axis.validate()?;
        Ok(axis)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidAxis(format!("{}: {msg}", self.name)));
        if !self.start.is_finite() || !self.stop.is_finite() {
            return bad("bounds must be finite".into());
        }
        match self.points {
            0 => return bad("needs at least one point".into()),
            1 if self.start != self.stop => return bad("a single-point axis needs start == stop".into()),
            1 => {}
            _ if self.start >= self.stop => {
                return bad(format!("start {} must be below stop {}", self.start, self.stop))
            }
            _ => {}
        }
        match self.name {
            Param::T if self.start <= 0.0 => bad("temperatures must be positive".into()),
            Param::BigB if self.start < 0.0 => bad("uniform field must be non-negative".into()),
            _ => Ok(()),
        }
    }

    /// The `i`-th coordinate. Symmetric axes (`start = −stop`) are exactly
    /// antisymmetric under `i → points − 1 − i`.
    pub fn value(&self, i: usize) -> f64 {
        let last = self.points - 1;
        if i == 0 {
            self.start
        } else if i == last {
            self.stop
        } else {
            (self.start * (last - i) as f64 + self.stop * i as f64) / last as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

/// How a point's named parameters map onto the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Parameterization {
    /// Parameters enter the Hamiltonian as written.
    #[default]
    Standard,
    /// Isotropic chain, `Jz = J`, evaluated at `(2J, 2J, 2B, 2b)`; `Jz` is
    /// ignored and cannot be swept.
    XxxRescaled,
}

/// Values of all five parameters at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointParams {
    pub j: f64,
    pub jz: f64,
    pub big_b: f64,
    pub b: f64,
    pub t: f64,
}

impl Default for PointParams {
    fn default() -> Self {
        Self {
            j: 1.0,
            jz: 0.0,
            big_b: 0.0,
            b: 0.0,
            t: 1.0,
        }
    }
}

impl PointParams {
    pub fn get(&self, p: Param) -> f64 {
        match p {
            Param::J => self.j,
            Param::Jz => self.jz,
            Param::BigB => self.big_b,
            Param::SmallB => self.b,
            Param::T => self.t,
        }
    }

    pub fn set(&mut self, p: Param, value: f64) {
        match p {
            Param::J => self.j = value,
            Param::Jz => self.jz = value,
            Param::BigB => self.big_b = value,
            Param::SmallB => self.b = value,
            Param::T => self.t = value,
        }
    }

    pub fn resolve(&self, parameterization: Parameterization) -> Result<(ModelParams, Temperature)> {
        let model = match parameterization {
            Parameterization::Standard => ModelParams::new(self.j, self.jz, self.big_b, self.b)?,
            Parameterization::XxxRescaled => ModelParams::xxx_rescaled(self.j, self.big_b, self.b)?,
        };
        Ok((model, Temperature::new(self.t)?))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Values for every parameter not covered by an axis; swept entries are
    /// ignored.
    pub fixed: PointParams,
    pub axes: Vec<Axis>,
    pub parameterization: Parameterization,
}

/// Hard cap on the number of grid points.
pub const MAX_GRID_POINTS: usize = 1001 * 1001;

/// Default resolution for the figure presets.
pub const DEFAULT_POINTS: usize = 201;

impl SweepSpec {
    pub fn new(fixed: PointParams, axes: Vec<Axis>) -> Self {
        Self {
            fixed,
            axes,
            parameterization: Parameterization::Standard,
        }
    }

    pub fn rescaled(mut self, parameterization: Parameterization) -> Self {
        self.parameterization = parameterization;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.axes.is_empty() || self.axes.len() > 2 {
            return Err(Error::InvalidAxis(format!(
                "expected 1 or 2 axes, got {}",
                self.axes.len()
            )));
        }
        for axis in &self.axes {
            axis.validate()?;
            if axis.name == Param::Jz && self.parameterization == Parameterization::XxxRescaled {
                return Err(Error::InvalidAxis(
                    "jz is tied to j in the rescaled isotropic chain".into(),
                ));
            }
        }
        if self.axes.len() == 2 && self.axes[0].name == self.axes[1].name {
            return Err(Error::InvalidAxis(format!("axis {} given twice", self.axes[0].name)));
        }
        if self.len() > MAX_GRID_POINTS {
            return Err(Error::InvalidAxis(format!(
                "{} grid points exceed the cap of {MAX_GRID_POINTS}",
                self.len()
            )));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(|a| a.points).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_swept(&self, p: Param) -> bool {
        self.axes.iter().any(|a| a.name == p)
    }

    /// Per-axis indices of flat index `i`; the first axis varies slowest.
    pub fn indices(&self, mut i: usize) -> Vec<usize> {
        let mut out = vec![0; self.axes.len()];
        for (k, axis) in self.axes.iter().enumerate().rev() {
            out[k] = i % axis.points;
            i /= axis.points;
        }
        out
    }

    /// Axis coordinates of flat index `i`.
    pub fn coordinates(&self, i: usize) -> Vec<f64> {
        self.indices(i)
            .into_iter()
            .zip(&self.axes)
            .map(|(k, axis)| axis.value(k))
            .collect()
    }

    pub fn point(&self, i: usize) -> PointParams {
        let mut p = self.fixed;
        for (axis, x) in self.axes.iter().zip(self.coordinates(i)) {
            p.set(axis.name, x);
        }
        p
    }
}

/// Tolerances that governed a grid evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceRecord {
    pub x_pattern: f64,
    pub density: f64,
    pub min_temperature: f64,
}

impl Default for ToleranceRecord {
    fn default() -> Self {
        Self {
            x_pattern: tol::X_PATTERN,
            density: tol::DENSITY,
            min_temperature: tol::MIN_TEMPERATURE,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMetadata {
    /// Distinct concurrence routes used across the grid, sorted.
    pub methods: Vec<ConcurrenceMethod>,
    pub tolerances: ToleranceRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    /// Row-major concurrence values, first axis slowest.
    pub values: Vec<f64>,
    pub metadata: GridMetadata,
}

impl SweepGrid {
    /// Value at per-axis indices.
    pub fn at(&self, idx: &[usize]) -> f64 {
        let flat = idx
            .iter()
            .zip(&self.spec.axes)
            .fold(0, |acc, (&k, axis)| acc * axis.points + k);
        self.values[flat]
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Values as nested rows (one row per first-axis index) for two axes, or
    /// a single row for one axis.
    pub fn rows(&self) -> Vec<Vec<f64>> {
        let inner = self.spec.axes.last().map_or(1, |a| a.points);
        self.values.chunks(inner).map(<[f64]>::to_vec).collect()
    }
}

/// Scheduling for grid evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    /// Default when the `parallel` feature is enabled.
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Order-preserving map over `0..n`.
pub(crate) fn map_indices<T, F>(n: usize, exec: Execution, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Execution::Sequential => (0..n).map(f).collect(),
        #[cfg(feature = "parallel")]
        Execution::Parallel => (0..n).into_par_iter().map(f).collect(),
    }
}

pub fn sweep(spec: &SweepSpec) -> Result<SweepGrid> {
    sweep_with(spec, Execution::default())
}

pub fn sweep_with(spec: &SweepSpec, exec: Execution) -> Result<SweepGrid> {
    spec.validate()?;
    let evaluated = map_indices(spec.len(), exec, |i| {
        let (model, t) = spec.point(i).resolve(spec.parameterization)?;
        thermal_concurrence(&model, t).map(|c| (c.value(), c.concurrence.method))
    });
    let mut values = Vec::with_capacity(evaluated.len());
    let mut methods = Vec::new();
    for r in evaluated {
        let (v, m) = r?;
        values.push(v);
        if !methods.contains(&m) {
            methods.push(m);
        }
    }
    methods.sort();
    Ok(SweepGrid {
        spec: spec.clone(),
        values,
        metadata: GridMetadata {
            methods,
            tolerances: ToleranceRecord::default(),
        },
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CriticalLocation {
    At(f64),
    NoFiniteRoot,
}

/// A sign change of the analytic sign function `g` along one axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriticalPoint {
    pub axis: Param,
    pub location: CriticalLocation,
    /// Final bisection bracket for a finite root, otherwise the searched
    /// domain.
    pub bracket: (f64, f64),
    /// `g` at the root, or at the bracket end that decided the outcome.
    pub residual: f64,
    pub diagnostic: Option<String>,
    /// Zero-temperature phase boundary `B^f = η + Jz` (uniform-field axis).
    pub zero_temperature_boundary: Option<f64>,
}

impl CriticalPoint {
    pub fn root(&self) -> Option<f64> {
        match self.location {
            CriticalLocation::At(x) => Some(x),
            CriticalLocation::NoFiniteRoot => None,
        }
    }
}

/// Temperature bracket searched for `Tc`.
pub const T_BRACKET: (f64, f64) = (1e-3, 50.0);
/// Upper end of the `|b|` (and uniform-field) search domain.
pub const FIELD_MAX: f64 = 100.0;
const MAX_BISECTIONS: usize = 200;

/// Bisects `f` on `[lo, hi]` given `f(lo) > 0 >= f(hi)` or the reverse,
/// until the bracket endpoints are adjacent floats. Returns the endpoint
/// with the smaller `|f|` and the final bracket.
fn bisect(f: impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64) -> Result<(f64, f64, (f64, f64))> {
    let lo_positive = f(lo)? > 0.0;
    for _ in 0..MAX_BISECTIONS {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        if (f(mid)? > 0.0) == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (flo, fhi) = (f(lo)?, f(hi)?);
    let (x, fx) = if flo.abs() <= fhi.abs() { (lo, flo) } else { (hi, fhi) };
    Ok((x, fx, (lo, hi)))
}

/// Temperature above which thermal concurrence vanishes.
///
/// `g` decreases monotonically in `T`, so at most one root exists in
/// [`T_BRACKET`]. The result does not depend on `B`.
pub fn critical_temperature(p: &ModelParams) -> Result<CriticalPoint> {
    p.require_xy_coupling()?;
    let g = |t: f64| concurrence_sign(p, Temperature::new(t)?);
    let (lo, hi) = T_BRACKET;
    let (glo, ghi) = (g(lo)?, g(hi)?);
    let unresolved = |residual: f64, diagnostic: String| CriticalPoint {
        axis: Param::T,
        location: CriticalLocation::NoFiniteRoot,
        bracket: T_BRACKET,
        residual,
        diagnostic: Some(diagnostic),
        zero_temperature_boundary: None,
    };
    if glo <= 0.0 {
        return Ok(unresolved(
            glo,
            format!("g <= 0 already at T = {lo}: no thermal entanglement in the bracket"),
        ));
    }
    if ghi > 0.0 {
        return Ok(unresolved(
            ghi,
            format!("g > 0 still at T = {hi}: entangled across the whole bracket"),
        ));
    }
    let (tc, residual, bracket) = bisect(g, lo, hi)?;
    Ok(CriticalPoint {
        axis: Param::T,
        location: CriticalLocation::At(tc),
        bracket,
        residual,
        diagnostic: None,
        zero_temperature_boundary: None,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldAxis {
    /// Inhomogeneous field `b`.
    Inhomogeneous,
    /// Uniform field `B`.
    Uniform,
}

/// Critical field at fixed temperature.
///
/// Along `b`, `g` is nondecreasing in `|b|`: a finite root marks the `|b|`
/// above which entanglement appears. Along `B` there is never a finite-`T`
/// root because `g` does not depend on `B`; the zero-temperature boundary
/// `B^f = η + Jz` is reported instead.
pub fn critical_field(p: &ModelParams, t: Temperature, axis: FieldAxis) -> Result<CriticalPoint> {
    p.require_xy_coupling()?;
    match axis {
        FieldAxis::Inhomogeneous => {
            let g = |b: f64| concurrence_sign(&p.with_b(b)?, t);
            let (g0, gmax) = (g(0.0)?, g(FIELD_MAX)?);
            let unresolved = |residual: f64, diagnostic: String| CriticalPoint {
                axis: Param::SmallB,
                location: CriticalLocation::NoFiniteRoot,
                bracket: (0.0, FIELD_MAX),
                residual,
                diagnostic: Some(diagnostic),
                zero_temperature_boundary: None,
            };
            if g0 > 0.0 {
                return Ok(unresolved(
                    g0,
                    "g > 0 for every b: concurrence stays positive and decays toward zero only asymptotically in |b|"
                        .into(),
                ));
            }
            if gmax <= 0.0 {
                return Ok(unresolved(
                    gmax,
                    format!("g <= 0 for every |b| <= {FIELD_MAX}: no thermal entanglement"),
                ));
            }
            let (bc, residual, bracket) = bisect(g, 0.0, FIELD_MAX)?;
            Ok(CriticalPoint {
                axis: Param::SmallB,
                location: CriticalLocation::At(bc),
                bracket,
                residual,
                diagnostic: Some("concurrence vanishes for |b| below this value and is positive above it".into()),
                zero_temperature_boundary: None,
            })
        }
        FieldAxis::Uniform => {
            let g = concurrence_sign(p, t)?;
            let boundary = ground_state(p)?.threshold_b;
            let diagnostic = if g > 0.0 {
                "g > 0 independently of B: finite-temperature concurrence stays positive for every B and decays only asymptotically"
            } else {
                "g <= 0 independently of B: concurrence vanishes for every B at this temperature"
            };
            Ok(CriticalPoint {
                axis: Param::BigB,
                location: CriticalLocation::NoFiniteRoot,
                bracket: (0.0, FIELD_MAX),
                residual: g,
                diagnostic: Some(format!("{diagnostic}; the T = 0 boundary B^f = eta + Jz is reported")),
                zero_temperature_boundary: Some(boundary),
            })
        }
    }
}

/// One named grid of a figure preset.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureGrid {
    pub name: String,
    pub grid: SweepGrid,
}

pub fn figure_data(id: u32) -> Result<Vec<FigureGrid>> {
    figure_data_with(id, DEFAULT_POINTS, Execution::default())
}

/// Preset grids for figure `id` (1..=5) with `points` per swept field axis.
pub fn figure_data_with(id: u32, points: usize, exec: Execution) -> Result<Vec<FigureGrid>> {
    figure_specs(id, points)?
        .into_iter()
        .map(|(name, spec)| {
            Ok(FigureGrid {
                name,
                grid: sweep_with(&spec, exec)?,
            })
        })
        .collect()
}

fn fixed(j: f64, jz: f64, big_b: f64, b: f64, t: f64) -> PointParams {
    PointParams { j, jz, big_b, b, t }
}

/// Axis ranges and fixed values behind each figure preset.
pub fn figure_specs(id: u32, n: usize) -> Result<Vec<(String, SweepSpec)>> {
    let axis = Axis::new;
    let specs = match id {
        1 => {
            let temps = axis(Param::T, 0.4, 1.0, 2)?;
            vec![
                (
                    "fig1_nonuniform".to_string(),
                    SweepSpec::new(
                        fixed(1.0, 0.0, 0.0, 0.0, 0.4),
                        vec![temps, axis(Param::SmallB, -6.0, 6.0, n)?],
                    ),
                ),
                (
                    "fig1_uniform".to_string(),
                    SweepSpec::new(
                        fixed(1.0, 0.0, 0.0, 0.0, 0.4),
                        vec![temps, axis(Param::BigB, 0.0, 6.0, n)?],
                    ),
                ),
            ]
        }
        2 => vec![(
            "fig2".to_string(),
            SweepSpec::new(
                fixed(-1.0, -1.0, 0.0, 0.458, 1.0),
                vec![axis(Param::BigB, 0.0, 1.0, n)?, axis(Param::T, 0.01, 1.0, n)?],
            )
            .rescaled(Parameterization::XxxRescaled),
        )],
        3 => [("fig3_jz0", 0.0), ("fig3_jz0.9", 0.9)]
            .into_iter()
            .map(|(name, jz)| {
                Ok((
                    name.to_string(),
                    SweepSpec::new(
                        fixed(1.0, jz, 0.0, 0.0, 1.0),
                        vec![axis(Param::SmallB, -4.0, 4.0, n)?, axis(Param::T, 0.02, 4.02, n)?],
                    ),
                ))
            })
            .collect::<Result<_>>()?,
        4 => [("fig4_jz0.9", 0.9), ("fig4_jz0.4", 0.4), ("fig4_jz0", 0.0)]
            .into_iter()
            .map(|(name, jz)| {
                Ok((
                    name.to_string(),
                    SweepSpec::new(fixed(1.0, jz, 0.8, 0.0, 0.6), vec![axis(Param::SmallB, 0.0, 4.0, n)?]),
                ))
            })
            .collect::<Result<_>>()?,
        5 => [("fig5_b0", 0.0), ("fig5_b0.8", 0.8)]
            .into_iter()
            .map(|(name, b)| {
                Ok((
                    name.to_string(),
                    SweepSpec::new(
                        fixed(1.0, 0.4, 0.0, b, 1.0),
                        vec![axis(Param::T, 0.01, 3.0, n)?, axis(Param::BigB, 0.0, 3.0, n)?],
                    ),
                ))
            })
            .collect::<Result<_>>()?,
        other => return Err(Error::UnknownFigure(other)),
    };
    Ok(specs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn params(j: f64, jz: f64, big_b: f64, b: f64) -> ModelParams {
        ModelParams::new(j, jz, big_b, b).unwrap()
    }

    const TC_XX: f64 = 1.134_592_657_106_511;

    #[test]
    fn axis_validation() {
        assert!(Axis::new(Param::T, 0.0, 1.0, 10).is_err());
        assert!(Axis::new(Param::BigB, -1.0, 1.0, 10).is_err());
        assert!(Axis::new(Param::SmallB, 1.0, 1.0, 10).is_err());
        assert!(Axis::new(Param::SmallB, 0.0, 1.0, 1).is_err());
        assert!(Axis::new(Param::SmallB, 0.5, 0.5, 1).is_ok());
        assert!(Axis::new(Param::SmallB, 0.0, 1.0, 0).is_err());
        assert!(Axis::new(Param::SmallB, 0.0, f64::NAN, 3).is_err());
        let a = Axis::new(Param::SmallB, -6.0, 6.0, 201).unwrap();
        for i in 0..201 {
            assert_eq!(a.value(i), -a.value(200 - i));
        }
        assert_eq!(a.value(100), 0.0);
    }

    #[test]
    fn param_tokens_round_trip() {
        for p in Param::ALL {
            assert_eq!(p.token().parse::<Param>().unwrap(), p);
        }
        assert!("B".parse::<Param>().is_err());
    }

    #[test]
    fn spec_validation() {
        let a = Axis::new(Param::SmallB, 0.0, 1.0, 3).unwrap();
        assert!(SweepSpec::new(PointParams::default(), vec![]).validate().is_err());
        assert!(SweepSpec::new(PointParams::default(), vec![a, a]).validate().is_err());
        assert!(SweepSpec::new(PointParams::default(), vec![a, a, a])
            .validate()
            .is_err());
        let big = Axis::new(Param::T, 0.1, 1.0, 1002).unwrap();
        let big2 = Axis::new(Param::SmallB, 0.0, 1.0, 1001).unwrap();
        assert!(SweepSpec::new(PointParams::default(), vec![big, big2])
            .validate()
            .is_err());
        let jz = Axis::new(Param::Jz, 0.0, 1.0, 3).unwrap();
        assert!(SweepSpec::new(PointParams::default(), vec![jz])
            .rescaled(Parameterization::XxxRescaled)
            .validate()
            .is_err());
    }

    #[test]
    fn single_point_grid_is_a_single_evaluation() {
        let spec = SweepSpec::new(
            PointParams::default(),
            vec![
                Axis::new(Param::SmallB, 0.3, 0.3, 1).unwrap(),
                Axis::new(Param::T, 0.7, 0.7, 1).unwrap(),
            ],
        );
        let grid = sweep(&spec).unwrap();
        let direct = thermal_concurrence(&params(1.0, 0.0, 0.0, 0.3), Temperature::new(0.7).unwrap()).unwrap();
        assert_eq!(grid.values, vec![direct.value()]);
    }

    #[test]
    fn row_major_layout() {
        let spec = SweepSpec::new(
            PointParams::default(),
            vec![
                Axis::new(Param::T, 0.5, 1.5, 3).unwrap(),
                Axis::new(Param::SmallB, -1.0, 1.0, 5).unwrap(),
            ],
        );
        let grid = sweep(&spec).unwrap();
        assert_eq!(grid.values.len(), 15);
        assert_eq!(spec.indices(7), vec![1, 2]);
        let p = spec.point(7);
        assert_eq!((p.t, p.b), (1.0, 0.0));
        let want = thermal_concurrence(&params(1.0, 0.0, 0.0, 0.0), Temperature::new(1.0).unwrap()).unwrap();
        assert_eq!(grid.at(&[1, 2]), want.value());
        assert_eq!(grid.rows().len(), 3);
    }

    #[test]
    fn nonuniform_sweep_is_symmetric() {
        let spec = SweepSpec::new(
            fixed(1.0, 0.0, 0.0, 0.0, 0.4),
            vec![Axis::new(Param::SmallB, -6.0, 6.0, 201).unwrap()],
        );
        let grid = sweep(&spec).unwrap();
        for i in 0..201 {
            assert_abs_diff_eq!(grid.values[i], grid.values[200 - i], epsilon = 1e-12);
            assert!((0.0..=1.0).contains(&grid.values[i]));
        }
        assert_eq!(grid.metadata.methods, vec![ConcurrenceMethod::XStateShortcut]);
    }

    #[test]
    fn sweep_rejects_domain_errors() {
        let spec = SweepSpec::new(
            fixed(1.0, 0.0, -1.0, 0.0, 1.0),
            vec![Axis::new(Param::SmallB, 0.0, 1.0, 3).unwrap()],
        );
        assert_eq!(sweep(&spec).unwrap_err(), Error::NegativeUniformField(-1.0));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential_bitwise() {
        let spec = figure_specs(5, 61).unwrap().remove(1).1;
        let seq = sweep_with(&spec, Execution::Sequential).unwrap();
        let par = sweep_with(&spec, Execution::Parallel).unwrap();
        assert!(seq
            .values
            .iter()
            .zip(&par.values)
            .all(|(a, b)| a.to_bits() == b.to_bits()));
    }

    #[test]
    fn repeated_sweeps_are_bitwise_identical() {
        let spec = figure_specs(3, 41).unwrap().remove(0).1;
        assert_eq!(sweep(&spec).unwrap(), sweep(&spec).unwrap());
    }

    #[test]
    fn critical_temperature_of_xx_chain() {
        let cp = critical_temperature(&params(1.0, 0.0, 0.0, 0.0)).unwrap();
        let tc = cp.root().unwrap();
        assert_abs_diff_eq!(tc, TC_XX, epsilon = 1e-12);
        assert!(cp.residual.abs() <= tol::ROOT);
        assert!(cp.bracket.1 - cp.bracket.0 <= 1e-9);
        let at = |t: f64| {
            thermal_concurrence(&params(1.0, 0.0, 0.0, 0.0), Temperature::new(t).unwrap())
                .unwrap()
                .value()
        };
        assert!(at(tc * (1.0 - 1e-4)) > 0.0);
        assert_eq!(at(tc * (1.0 + 1e-4)), 0.0);

        let with_field = critical_temperature(&params(1.0, 0.0, 2.0, 0.0)).unwrap();
        assert_eq!(with_field.root(), cp.root());
        let jz = critical_temperature(&params(1.0, 0.9, 0.0, 0.0)).unwrap();
        assert!(jz.root().unwrap() > TC_XX);
        // Independent root of e^(0.9/T)·sinh(1/T) = 1.
        assert_abs_diff_eq!(jz.root().unwrap(), 1.759_224_620_525_2, epsilon = 1e-9);
    }

    #[test]
    fn critical_temperature_outside_bracket() {
        let never = critical_temperature(&params(1.0, -3.0, 0.0, 0.0)).unwrap();
        assert_eq!(never.location, CriticalLocation::NoFiniteRoot);
        assert!(never.residual <= 0.0);
        let always = critical_temperature(&params(1.0, 200.0, 0.0, 0.0)).unwrap();
        assert_eq!(always.location, CriticalLocation::NoFiniteRoot);
        assert!(always.residual > 0.0);
    }

    #[test]
    fn tc_grows_with_jz_and_b() {
        let tc = |jz: f64, b: f64| critical_temperature(&params(1.0, jz, 0.0, b)).unwrap().root().unwrap();
        for k in 0..10 {
            let x = 0.2 * k as f64;
            assert!(tc(x + 0.2, 0.0) >= tc(x, 0.0));
            assert!(tc(0.0, x + 0.2) >= tc(0.0, x));
            assert!(tc(0.0, -(x + 0.2)) >= tc(0.0, -x));
        }
    }

    #[test]
    fn critical_inhomogeneous_field() {
        let t = Temperature::new(0.6).unwrap();
        let cp = critical_field(&params(1.0, 0.0, 0.0, 0.0), t, FieldAxis::Inhomogeneous).unwrap();
        assert_eq!(cp.location, CriticalLocation::NoFiniteRoot);
        assert!(cp.diagnostic.is_some());

        // Above Tc(b = 0) entanglement is restored by a large enough |b|.
        let t = Temperature::new(2.0).unwrap();
        let p = params(1.0, 0.0, 0.0, 0.0);
        let cp = critical_field(&p, t, FieldAxis::Inhomogeneous).unwrap();
        let bc = cp.root().unwrap();
        assert!(cp.residual.abs() <= tol::ROOT);
        assert!(concurrence_sign(&p.with_b(cp.bracket.0).unwrap(), t).unwrap() <= 0.0);
        assert!(concurrence_sign(&p.with_b(cp.bracket.1).unwrap(), t).unwrap() > 0.0);
        // sinh(η/2)/η = 1 at η = √(1 + bc²).
        let eta = bc.hypot(1.0);
        assert_abs_diff_eq!((eta / 2.0).sinh() / eta, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn critical_uniform_field_reports_zero_temperature_boundary() {
        let t = Temperature::new(0.01).unwrap();
        let cp = critical_field(&params(1.0, 0.4, 0.0, 0.8), t, FieldAxis::Uniform).unwrap();
        assert_eq!(cp.location, CriticalLocation::NoFiniteRoot);
        assert_abs_diff_eq!(
            cp.zero_temperature_boundary.unwrap(),
            1.680_624_847_486_569_7,
            epsilon = 1e-12
        );
        let at_zero = critical_field(&params(1.0, 0.4, 0.0, 0.0), t, FieldAxis::Uniform).unwrap();
        assert_abs_diff_eq!(at_zero.zero_temperature_boundary.unwrap(), 1.4, epsilon = 1e-15);
    }

    #[test]
    fn zero_coupling_is_rejected_by_finders() {
        let p = params(0.0, 0.0, 0.0, 0.0);
        assert_eq!(critical_temperature(&p), Err(Error::ZeroXyCoupling));
        assert_eq!(
            critical_field(&p, Temperature::new(1.0).unwrap(), FieldAxis::Uniform),
            Err(Error::ZeroXyCoupling)
        );
    }

    #[test]
    fn unknown_figure() {
        assert_eq!(figure_data(6).unwrap_err(), Error::UnknownFigure(6));
        assert_eq!(figure_data(0).unwrap_err(), Error::UnknownFigure(0));
    }

    #[test]
    fn figure_examples() {
        let fig2 = &figure_data_with(2, 51, Execution::default()).unwrap()[0].grid;
        let lowest = fig2.at(&[0, 0]);
        let target = crate::model::xxx_case_ground_concurrence(0.458);
        assert!(lowest <= target && target - lowest <= 1e-3);

        let fig3 = figure_data(3).unwrap();
        let grid = &fig3[0].grid;
        assert_eq!(grid.spec.axes[0].value(100), 0.0);
        assert_abs_diff_eq!(grid.spec.axes[1].value(49), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(grid.at(&[100, 49]), 0.068_893_290_777_046, epsilon = 1e-12);

        let fig4 = figure_data(4).unwrap();
        for i in 0..DEFAULT_POINTS {
            assert!(fig4[0].grid.values[i] >= fig4[1].grid.values[i]);
            assert!(fig4[1].grid.values[i] >= fig4[2].grid.values[i]);
        }
    }
}
