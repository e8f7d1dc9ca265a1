//! Scenario files and the runs they drive.
//!
//! A scenario is a TOML document naming one cavity, a wavenumber, an
//! incident field, output grids and a list of checks. Every run writes
//! `report.json` (all check reports, no timings), `timings.json`, and the
//! CSV files of whatever it computed.

use crate::error::{Error, Result};
use crate::geometry::{discretize, Curve, DiscreteBoundary, MIN_HALF_NODES};
use crate::incident::{check_exterior_point, check_sources_exterior, IncidentField, InteriorTestField};
use crate::kernels::{Complex, Direction, Point2, Wavenumber};
use crate::oracle::{mie_farfield, mie_solve};
use crate::solver::{check_evaluation_point, FarField, FieldValue, Solver};
use crate::verify::{self, phaseless_data, CheckReport, SymmetryComponent, Tolerances};
use serde::{Deserialize, Serialize};
use std::fs;
use std::path::{Path, PathBuf};

/// A parsed scenario file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub wavenumber: Wavenumber,
    /// Half the number of quadrature nodes.
    pub n: usize,
    pub shape: Curve,
    #[serde(default = "default_incident")]
    pub incident: IncidentField,
    #[serde(default)]
    pub grids: Grids,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phaseless: Option<PhaselessSpec>,
    /// Output directory; `--out` takes precedence.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

fn default_incident() -> IncidentField {
    IncidentField::plane(0.0)
}

/// Where fields and far fields are sampled.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Grids {
    /// Size of the equispaced far-field direction grid.
    pub directions: usize,
    /// Individual exterior field points.
    pub points: Vec<Point2>,
    /// Optional rectangular field grid; points inside the cavity or too
    /// close to it are written as NaN.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldGrid>,
    /// Radii for the decay check, along the check's ray.
    pub radii: Vec<f64>,
}

impl Default for Grids {
    fn default() -> Self {
        Grids {
            directions: 360,
            points: Vec::new(),
            field: None,
            radii: vec![3.0, 4.0, 5.0],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldGrid {
    pub x1: [f64; 2],
    pub x2: [f64; 2],
    pub count: [usize; 2],
}

impl FieldGrid {
    /// Row-major points, `x1` varying fastest.
    pub fn points(&self) -> Vec<Point2> {
        let axis = |range: [f64; 2], count: usize| -> Vec<f64> {
            if count == 1 {
                return vec![range[0]];
            }
            (0..count)
                .map(|i| range[0] + (range[1] - range[0]) * i as f64 / (count - 1) as f64)
                .collect()
        };
        let xs = axis(self.x1, self.count[0]);
        let ys = axis(self.x2, self.count[1]);
        ys.iter()
            .flat_map(|&y| xs.iter().map(move |&x| Point2::new(x, y)))
            .collect()
    }
}

/// Series truncation for the `oracle` command and the circle check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleSpec {
    pub order: usize,
}

/// Configuration of the phaseless experiment.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PhaselessSpec {
    /// The cavity compared against `shape`.
    pub other: Curve,
    pub z0: Point2,
    pub receivers: Vec<Point2>,
    pub sources: Vec<Point2>,
}

/// One requested check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "snake_case", deny_unknown_fields)]
pub enum CheckSpec {
    /// Needs a centred circle and a plane-wave incident field.
    CircleOracle,
    InteriorRepresentation {
        field: InteriorTestField,
    },
    ExteriorRepresentation,
    NullField,
    ManufacturedSolution,
    /// Uses the scenario's incident field.
    FarfieldEquivalence,
    MixedReciprocity {
        z: Point2,
        #[serde(default = "default_reciprocity_directions")]
        directions: usize,
    },
    Symmetry {
        x: Point2,
        z: Point2,
        component: SymmetryComponent,
    },
    /// Plane-wave direction taken from the incident field.
    TranslationInvariance {
        h: Point2,
    },
    /// Radii come from `grids.radii`.
    MDecay {
        #[serde(default = "default_ray")]
        direction: Direction,
    },
    AsymptoticExpansion {
        #[serde(default = "default_ray")]
        direction: Direction,
        r: f64,
    },
    /// Compares `base`, `2·base` and `4·base`; the scenario's `n` is not used.
    SelfConvergence {
        #[serde(default = "default_convergence_base")]
        base: usize,
    },
    /// Same-cavity discrepancy at the scenario's `n`; needs `[phaseless]`.
    PhaselessDiscrepancy,
    /// Needs `[phaseless]`.
    PhaselessDistinguishability,
}

fn default_reciprocity_directions() -> usize {
    8
}

fn default_convergence_base() -> usize {
    32
}

fn default_ray() -> Direction {
    Direction::new(0.0)
}

/// The subcommands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Solve,
    Verify,
    Oracle,
    Phaseless,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Verify => "verify",
            Command::Oracle => "oracle",
            Command::Phaseless => "phaseless",
        }
    }
}

fn config(field: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        field: field.to_string(),
        reason: reason.into(),
    }
}

impl Scenario {
    pub fn from_toml(text: &str, origin: &str) -> Result<Scenario> {
        toml::from_str(text).map_err(|e| Error::Parse {
            path: origin.to_string(),
            message: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Scenario> {
        let text = fs::read_to_string(path)?;
        Scenario::from_toml(&text, &path.display().to_string())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("scenario fields are all TOML-representable")
    }

    /// Short scene description used in error messages.
    pub fn scene(&self) -> String {
        format!(
            "{}: {}, kappa={}, n={}, {}",
            self.name,
            self.shape.describe(),
            self.wavenumber.get(),
            self.n,
            self.incident.describe()
        )
    }

    fn plane_theta(&self, field: &str) -> Result<f64> {
        match self.incident {
            IncidentField::PlaneWave { direction } => Ok(direction.theta()),
            _ => Err(config(field, "requires a plane-wave incident field")),
        }
    }

    fn oracle_order(&self) -> usize {
        let needed = (self.wavenumber.get() * self.shape.scale()).ceil() as usize + 20;
        self.oracle.as_ref().map_or(needed.max(40), |o| o.order)
    }

    /// Checks every constraint that does not need a solve.
    pub fn validate(&self, command: Command) -> Result<()> {
        if self.name.trim().is_empty() {
            return Err(config("name", "must not be empty"));
        }
        if self.n < MIN_HALF_NODES {
            return Err(config(
                "n",
                format!("must be at least {MIN_HALF_NODES}, got {}", self.n),
            ));
        }
        if self.grids.directions == 0 {
            return Err(config("grids.directions", "must be positive"));
        }
        if let Some(g) = &self.grids.field {
            if g.count[0] == 0 || g.count[1] == 0 {
                return Err(config("grids.field.count", "both counts must be positive"));
            }
            if !g.x1.iter().chain(&g.x2).all(|v| v.is_finite()) {
                return Err(config("grids.field", "bounds must be finite"));
            }
        }
        self.validate_tolerances()?;
        let bd = discretize(&self.shape, self.n).map_err(|e| e.in_scene(self.scene()))?;
        check_sources_exterior(&self.incident, &bd).map_err(|e| e.in_scene(self.scene()))?;
        for (i, &p) in self.grids.points.iter().enumerate() {
            check_evaluation_point(&bd, p).map_err(|e| config(&format!("grids.points[{i}]"), e.to_string()))?;
        }
        match command {
            Command::Solve => {}
            Command::Verify => {
                if self.checks.is_empty() {
                    return Err(config("checks", "verify needs at least one check"));
                }
                for (i, c) in self.checks.iter().enumerate() {
                    self.validate_check(c, &bd, &format!("checks[{i}]"))?;
                }
            }
            Command::Oracle => self.validate_check(&CheckSpec::CircleOracle, &bd, "shape")?,
            Command::Phaseless => self.validate_phaseless("phaseless")?,
        }
        Ok(())
    }

    fn validate_tolerances(&self) -> Result<()> {
        let value = serde_json::to_value(&self.tolerances)?;
        for (key, v) in value.as_object().into_iter().flatten() {
            match v.as_f64() {
                Some(t) if t.is_finite() && t >= 0.0 => {}
                _ => return Err(config(&format!("tolerances.{key}"), "must be finite and nonnegative")),
            }
        }
        Ok(())
    }

    fn validate_check(&self, check: &CheckSpec, bd: &DiscreteBoundary, field: &str) -> Result<()> {
        let scale = self.shape.scale();
        match check {
            CheckSpec::CircleOracle => {
                match *self.shape.shape() {
                    crate::geometry::Shape::Circle { center, .. } if center == Point2::ORIGIN => {}
                    _ => return Err(config(field, "the series oracle needs a circle centred at the origin")),
                }
                self.plane_theta(field)?;
                let needed = (self.wavenumber.get() * scale).ceil() as usize + 20;
                if self.oracle_order() < needed {
                    return Err(config("oracle.order", format!("must be at least {needed}")));
                }
            }
            CheckSpec::InteriorRepresentation { .. }
            | CheckSpec::ExteriorRepresentation
            | CheckSpec::NullField
            | CheckSpec::ManufacturedSolution => {
                if !bd.contains(bd.centroid()) {
                    return Err(config(
                        field,
                        "the manufactured source (centroid) lies outside the cavity",
                    ));
                }
            }
            CheckSpec::FarfieldEquivalence => {}
            CheckSpec::SelfConvergence { base } => {
                if *base < MIN_HALF_NODES {
                    return Err(config(
                        &format!("{field}.base"),
                        format!("must be at least {MIN_HALF_NODES}"),
                    ));
                }
                self.plane_theta(field)?;
            }
            CheckSpec::MixedReciprocity { z, directions } => {
                if *directions == 0 {
                    return Err(config(&format!("{field}.directions"), "must be positive"));
                }
                check_exterior_point(*z, bd).map_err(|e| config(&format!("{field}.z"), e.to_string()))?;
            }
            CheckSpec::Symmetry { x, z, .. } => {
                if x == z {
                    return Err(config(field, "x and z coincide"));
                }
                check_exterior_point(*x, bd).map_err(|e| config(&format!("{field}.x"), e.to_string()))?;
                check_exterior_point(*z, bd).map_err(|e| config(&format!("{field}.z"), e.to_string()))?;
            }
            CheckSpec::TranslationInvariance { h } => {
                if !h.is_finite() {
                    return Err(config(&format!("{field}.h"), "must be finite"));
                }
                self.plane_theta(field)?;
            }
            CheckSpec::MDecay { .. } => {
                let r = &self.grids.radii;
                if r.is_empty() || r.windows(2).any(|w| w[1] <= w[0]) || r[0] < 3.0 * scale {
                    return Err(config(
                        "grids.radii",
                        format!("must be increasing and at least {}", 3.0 * scale),
                    ));
                }
            }
            CheckSpec::AsymptoticExpansion { r, .. } => {
                let minimum = (25.0 * scale).max(crate::representation::MIN_ASYMPTOTIC_RADIUS * self.shape.reach());
                if !(*r >= minimum) {
                    return Err(config(&format!("{field}.r"), format!("must be at least {minimum}")));
                }
            }
            CheckSpec::PhaselessDiscrepancy | CheckSpec::PhaselessDistinguishability => {
                self.validate_phaseless(field)?;
            }
        }
        Ok(())
    }

    fn validate_phaseless(&self, field: &str) -> Result<()> {
        let p = self
            .phaseless
            .as_ref()
            .ok_or_else(|| config(field, "needs a [phaseless] section"))?;
        for curve in [&self.shape, &p.other] {
            let bd = discretize(curve, self.n)?;
            let outside = |what: &str, q: Point2| {
                check_exterior_point(q, &bd).map_err(|e| config(&format!("phaseless.{what}"), e.to_string()))
            };
            outside("z0", p.z0)?;
            for &q in &p.receivers {
                outside("receivers", q)?;
            }
            for &q in &p.sources {
                outside("sources", q)?;
            }
        }
        if p.receivers.is_empty() || p.sources.is_empty() {
            return Err(config("phaseless", "receivers and sources must be nonempty"));
        }
        if p.receivers.iter().any(|q| p.sources.contains(q)) {
            return Err(config("phaseless", "receivers and sources must be disjoint"));
        }
        if p.receivers.contains(&p.z0) || p.sources.contains(&p.z0) {
            return Err(config("phaseless.z0", "must differ from every receiver and source"));
        }
        Ok(())
    }
}

/// Outcome of one run, as written to `report.json`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub scenario: String,
    pub command: String,
    pub scene: String,
    pub checks: Vec<CheckReport>,
    pub all_pass: bool,
    /// Output files written besides the reports, relative to the output directory.
    pub files: Vec<String>,
}

/// Data produced by a run before it is written.
struct Outputs {
    checks: Vec<CheckReport>,
    far_fields: Vec<(String, FarField)>,
    fields: Vec<(String, Vec<FieldRow>)>,
    phaseless: Option<Vec<PhaselessRow>>,
}

struct FieldRow {
    point: Point2,
    value: Option<FieldValue>,
}

#[derive(Serialize)]
struct FarFieldRow {
    angle_radians: f64,
    re: f64,
    im: f64,
    abs: f64,
}

#[derive(Serialize)]
struct FieldCsvRow {
    x1: f64,
    x2: f64,
    re_u: f64,
    im_u: f64,
    #[serde(rename = "re_uH")]
    re_uh: f64,
    #[serde(rename = "im_uH")]
    im_uh: f64,
    #[serde(rename = "re_uM")]
    re_um: f64,
    #[serde(rename = "im_uM")]
    im_um: f64,
}

#[derive(Serialize)]
struct PhaselessRow {
    x1: f64,
    x2: f64,
    z1: f64,
    z2: f64,
    abs_v1_z0: f64,
    abs_v1_z: f64,
    abs_v1_sum: f64,
    abs_v2_z0: f64,
    abs_v2_z: f64,
    abs_v2_sum: f64,
}

/// Runs one command on a validated scenario and writes its outputs under
/// `out`. Returns the report that was written.
pub fn run(scenario: &Scenario, command: Command, out: &Path) -> Result<RunReport> {
    scenario.validate(command)?;
    let outputs = match command {
        Command::Solve => run_solve(scenario),
        Command::Verify => run_verify(scenario),
        Command::Oracle => run_oracle(scenario),
        Command::Phaseless => run_phaseless(scenario),
    }
    .map_err(|e| match e {
        Error::Scene { .. } | Error::Config { .. } => e,
        other => other.in_scene(scenario.scene()),
    })?;
    emit(scenario, command, out, outputs)
}

fn solve_summary(solver: &Solver, report: CheckReport) -> CheckReport {
    let mut report = report;
    report.details.insert("condition".into(), solver.condition());
    report
}

fn field_rows(solver: &Solver, ts: &crate::solver::TraceSolution, points: &[Point2]) -> Result<Vec<FieldRow>> {
    let bd = solver.boundary();
    let valid: Vec<Point2> = points
        .iter()
        .copied()
        .filter(|&p| check_evaluation_point(bd, p).is_ok())
        .collect();
    let mut values = solver.scattered(ts, &valid)?.into_iter();
    Ok(points
        .iter()
        .map(|&p| FieldRow {
            point: p,
            value: if check_evaluation_point(bd, p).is_ok() {
                values.next()
            } else {
                None
            },
        })
        .collect())
}

fn run_solve(s: &Scenario) -> Result<Outputs> {
    let solver = Solver::new(&s.shape, s.wavenumber, s.n)?;
    let ts = solver.solve(&s.incident)?;
    let dirs = Direction::grid(s.grids.directions);
    let far = solver.farfield(&ts, &dirs);
    let equivalence =
        verify::check_farfield_equivalence_on(&solver, &ts, &s.incident, s.tolerances.farfield_equivalence);
    let mut fields = Vec::new();
    if !s.grids.points.is_empty() {
        fields.push((
            "field_points.csv".to_string(),
            field_rows(&solver, &ts, &s.grids.points)?,
        ));
    }
    if let Some(g) = &s.grids.field {
        fields.push(("field_grid.csv".to_string(), field_rows(&solver, &ts, &g.points())?));
    }
    Ok(Outputs {
        checks: vec![solve_summary(&solver, equivalence)],
        far_fields: vec![("farfield.csv".to_string(), far)],
        fields,
        phaseless: None,
    })
}

/// Runs one check; the reported wall time covers any solve it needed.
fn run_check(s: &Scenario, check: &CheckSpec) -> Result<CheckReport> {
    let started = std::time::Instant::now();
    let mut report = run_check_untimed(s, check)?;
    report.wall_time = started.elapsed().as_secs_f64();
    Ok(report)
}

fn run_check_untimed(s: &Scenario, check: &CheckSpec) -> Result<CheckReport> {
    let (k, n, tol) = (s.wavenumber, s.n, &s.tolerances);
    let curve = &s.shape;
    match check {
        CheckSpec::CircleOracle => verify::check_circle_oracle(
            curve.scale(),
            k,
            s.plane_theta("check")?,
            n,
            s.oracle_order(),
            s.grids.directions,
            tol.circle_oracle,
        ),
        CheckSpec::InteriorRepresentation { field } => {
            verify::check_interior_representation(curve, k, n, field, tol.interior_representation)
        }
        CheckSpec::ExteriorRepresentation => {
            verify::check_exterior_representation(curve, k, n, tol.exterior_representation)
        }
        CheckSpec::NullField => verify::check_null_field(curve, k, n, tol.null_field),
        CheckSpec::ManufacturedSolution => verify::check_manufactured_solution(curve, k, n, tol.manufactured_field),
        CheckSpec::FarfieldEquivalence => {
            verify::check_farfield_equivalence(curve, k, n, &s.incident, tol.farfield_equivalence)
        }
        CheckSpec::MixedReciprocity { z, directions } => {
            verify::check_mixed_reciprocity(curve, k, n, *z, &Direction::grid(*directions), tol.mixed_reciprocity)
        }
        CheckSpec::Symmetry { x, z, component } => {
            verify::check_symmetry(curve, k, n, *x, *z, *component, tol.symmetry)
        }
        CheckSpec::TranslationInvariance { h } => verify::check_translation_invariance(
            curve,
            k,
            n,
            *h,
            s.plane_theta("check")?,
            tol.translation,
            tol.translation_phaseless,
        ),
        CheckSpec::MDecay { direction } => {
            let solver = Solver::new(curve, k, n)?;
            let ts = solver.solve(&s.incident)?;
            verify::check_m_decay(&solver, &ts, *direction, &s.grids.radii, tol.m_decay)
        }
        CheckSpec::AsymptoticExpansion { direction, r } => {
            let solver = Solver::new(curve, k, n)?;
            let ts = solver.solve(&s.incident)?;
            verify::check_asymptotic_expansion(&solver, &ts, *direction, *r, tol)
        }
        CheckSpec::SelfConvergence { base } => {
            verify::check_self_convergence(curve, k, *base, s.plane_theta("check")?, tol.self_convergence)
        }
        CheckSpec::PhaselessDiscrepancy => {
            let p = s
                .phaseless
                .as_ref()
                .ok_or_else(|| config("phaseless", "missing section"))?;
            verify::phaseless_discrepancy(curve, curve, k, n, p.z0, &p.receivers, &p.sources, tol.phaseless_noise)
        }
        CheckSpec::PhaselessDistinguishability => {
            let p = s
                .phaseless
                .as_ref()
                .ok_or_else(|| config("phaseless", "missing section"))?;
            verify::check_phaseless(curve, &p.other, k, n, p.z0, &p.receivers, &p.sources, tol)
        }
    }
}

fn run_verify(s: &Scenario) -> Result<Outputs> {
    let checks = s.checks.iter().map(|c| run_check(s, c)).collect::<Result<Vec<_>>>()?;
    Ok(Outputs {
        checks,
        far_fields: Vec::new(),
        fields: Vec::new(),
        phaseless: None,
    })
}

fn run_oracle(s: &Scenario) -> Result<Outputs> {
    let theta = s.plane_theta("incident")?;
    let dirs = Direction::grid(s.grids.directions);
    let solver = Solver::new(&s.shape, s.wavenumber, s.n)?;
    let ts = solver.solve(&s.incident)?;
    let series = mie_farfield(
        &mie_solve(s.shape.scale(), s.wavenumber, theta, s.oracle_order())?,
        &dirs,
    );
    let report = run_check(s, &CheckSpec::CircleOracle)?;
    Ok(Outputs {
        checks: vec![report],
        far_fields: vec![
            ("farfield.csv".to_string(), solver.farfield(&ts, &dirs)),
            ("oracle_farfield.csv".to_string(), series),
        ],
        fields: Vec::new(),
        phaseless: None,
    })
}

fn run_phaseless(s: &Scenario) -> Result<Outputs> {
    let p = s
        .phaseless
        .as_ref()
        .ok_or_else(|| config("phaseless", "missing section"))?;
    let identical = run_check(s, &CheckSpec::PhaselessDiscrepancy)?;
    let contrast = run_check(s, &CheckSpec::PhaselessDistinguishability)?;
    let s1 = Solver::new(&s.shape, s.wavenumber, s.n)?;
    let s2 = Solver::new(&p.other, s.wavenumber, s.n)?;
    let d1 = phaseless_data(&s1, p.z0, &p.receivers, &p.sources)?;
    let d2 = phaseless_data(&s2, p.z0, &p.receivers, &p.sources)?;
    let m = p.sources.len();
    let mut rows = Vec::with_capacity(p.receivers.len() * m);
    for (ix, x) in p.receivers.iter().enumerate() {
        for (jz, z) in p.sources.iter().enumerate() {
            let i = ix * m + jz;
            rows.push(PhaselessRow {
                x1: x.x1,
                x2: x.x2,
                z1: z.x1,
                z2: z.x2,
                abs_v1_z0: d1.single[ix],
                abs_v1_z: d1.pair[i],
                abs_v1_sum: d1.superposed[i],
                abs_v2_z0: d2.single[ix],
                abs_v2_z: d2.pair[i],
                abs_v2_sum: d2.superposed[i],
            });
        }
    }
    Ok(Outputs {
        checks: vec![identical, contrast],
        far_fields: Vec::new(),
        fields: Vec::new(),
        phaseless: Some(rows),
    })
}

fn write_farfield(path: &Path, ff: &FarField) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for (d, v) in ff.directions.iter().zip(&ff.values) {
        w.serialize(FarFieldRow {
            angle_radians: d.theta(),
            re: v.re,
            im: v.im,
            abs: v.norm(),
        })?;
    }
    w.flush()?;
    Ok(())
}

fn write_field(path: &Path, rows: &[FieldRow]) -> Result<()> {
    let nan = Complex::new(f64::NAN, f64::NAN);
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        let (u, uh, um) = row.value.as_ref().map_or((nan, nan, nan), |v| (v.u, v.u_h, v.u_m));
        w.serialize(FieldCsvRow {
            x1: row.point.x1,
            x2: row.point.x2,
            re_u: u.re,
            im_u: u.im,
            re_uh: uh.re,
            im_uh: uh.im,
            re_um: um.re,
            im_um: um.im,
        })?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct Timing<'a> {
    check: &'a str,
    seconds: f64,
}

fn emit(s: &Scenario, command: Command, out: &Path, outputs: Outputs) -> Result<RunReport> {
    fs::create_dir_all(out)?;
    let mut files = Vec::new();
    for (name, ff) in &outputs.far_fields {
        write_farfield(&out.join(name), ff)?;
        files.push(name.clone());
    }
    for (name, rows) in &outputs.fields {
        write_field(&out.join(name), rows)?;
        files.push(name.clone());
    }
    if let Some(rows) = &outputs.phaseless {
        let mut w = csv::Writer::from_path(out.join("phaseless.csv"))?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
        files.push("phaseless.csv".into());
    }
    let report = RunReport {
        scenario: s.name.clone(),
        command: command.name().to_string(),
        scene: s.scene(),
        all_pass: outputs.checks.iter().all(|c| c.pass),
        checks: outputs.checks,
        files,
    };
    fs::write(out.join("report.json"), serde_json::to_string_pretty(&report)? + "\n")?;
    let timings: Vec<Timing> = report
        .checks
        .iter()
        .map(|c| Timing {
            check: &c.name,
            seconds: c.wall_time,
        })
        .collect();
    fs::write(out.join("timings.json"), serde_json::to_string_pretty(&timings)? + "\n")?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
name = "tiny"
wavenumber = 1.0
n = 16

[shape]
kind = "circle"
radius = 1.0
"#;

    #[test]
    fn defaults_fill_in() {
        let s = Scenario::from_toml(MINIMAL, "inline").unwrap();
        assert_eq!(s.grids.directions, 360);
        assert_eq!(s.incident, IncidentField::plane(0.0));
        assert_eq!(s.tolerances, Tolerances::default());
        assert!(s.validate(Command::Solve).is_ok());
        assert!(matches!(s.validate(Command::Verify), Err(Error::Config { .. })));
    }

    #[test]
    fn negative_wavenumber_names_the_field() {
        let text = MINIMAL.replace("wavenumber = 1.0", "wavenumber = -1.0");
        let msg = Scenario::from_toml(&text, "inline").unwrap_err().to_string();
        assert!(msg.contains("wavenumber"), "{msg}");
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let top = format!("extra = 3\n{MINIMAL}");
        let msg = Scenario::from_toml(&top, "inline").unwrap_err().to_string();
        assert!(msg.contains("extra"), "{msg}");
        let nested = format!("{MINIMAL}radus = 2.0\n");
        let msg = Scenario::from_toml(&nested, "inline").unwrap_err().to_string();
        assert!(msg.contains("radus"), "{msg}");
    }

    #[test]
    fn toml_round_trip_is_idempotent() {
        let text = format!(
            "{MINIMAL}\n[[checks]]\ncheck = \"symmetry\"\nx = [2.5, 0.0]\nz = [0.0, 3.0]\ncomponent = \"M\"\n\n[[checks]]\ncheck = \"interior_representation\"\nfield = {{ kind = \"entire_modified\", direction = -0.4 }}\n\n[tolerances]\nsymmetry = 1e-7\n"
        );
        let s = Scenario::from_toml(&text, "inline").unwrap();
        assert_eq!(s.tolerances.symmetry, 1e-7);
        let once = s.to_toml();
        let again = Scenario::from_toml(&once, "roundtrip").unwrap();
        assert_eq!(again, s);
        assert_eq!(again.to_toml(), once);
    }

    #[test]
    fn interior_source_is_a_validation_error() {
        let text = format!("{MINIMAL}\n[incident]\nkind = \"point_source_bi\"\nz = [0.2, 0.0]\n");
        let s = Scenario::from_toml(&text, "inline").unwrap();
        let msg = s.validate(Command::Solve).unwrap_err().to_string();
        assert!(msg.contains("not outside"), "{msg}");
    }

    #[test]
    fn oracle_requires_centred_circle() {
        let text = MINIMAL.replace("radius = 1.0", "radius = 1.0\ncenter = [0.5, 0.0]");
        let s = Scenario::from_toml(&text, "inline").unwrap();
        assert!(s.validate(Command::Oracle).is_err());
    }

    #[test]
    fn field_grid_is_row_major() {
        let g = FieldGrid {
            x1: [0.0, 1.0],
            x2: [2.0, 3.0],
            count: [2, 3],
        };
        let p = g.points();
        assert_eq!(p.len(), 6);
        assert_eq!(p[1], Point2::new(1.0, 2.0));
        assert_eq!(p[2], Point2::new(0.0, 2.5));
    }
}
