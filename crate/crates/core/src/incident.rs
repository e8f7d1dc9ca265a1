//! Incident fields, the boundary data they induce, and entire test fields.

use crate::error::{Error, Result};
use crate::geometry::DiscreteBoundary;
use crate::kernels::{self, Complex, Direction, KernelKind, Point2, Wavenumber, I};
use crate::representation::CauchyData4;
use serde::{Deserialize, Serialize};
use std::ops::Add;

/// Relative clearance (times the shape scale) a point source must keep from Γ.
pub const SOURCE_CLEARANCE: f64 = 1e-6;

/// Incoming wave hitting the cavity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IncidentField {
    /// `e^{iκ d·x}` with `d = (cos θ, sin θ)`.
    PlaneWave { direction: Direction },
    /// `G_H(·, z)`.
    PointSourceH { z: Point2 },
    /// `G_M(·, z)`. Not a radiating biharmonic source on its own, but a valid
    /// boundary excitation; it drives the symmetry of the `M` component.
    PointSourceM { z: Point2 },
    /// `G(·, z)`.
    PointSourceBi { z: Point2 },
    /// `G(·, z0) + G(·, z)`.
    SuperpositionBi { z0: Point2, z: Point2 },
}

impl IncidentField {
    pub fn plane(theta: f64) -> Self {
        IncidentField::PlaneWave {
            direction: Direction::new(theta),
        }
    }

    /// Source locations, if any.
    pub fn sources(&self) -> Vec<Point2> {
        match *self {
            IncidentField::PlaneWave { .. } => vec![],
            IncidentField::PointSourceH { z }
            | IncidentField::PointSourceM { z }
            | IncidentField::PointSourceBi { z } => vec![z],
            IncidentField::SuperpositionBi { z0, z } => vec![z0, z],
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            IncidentField::PlaneWave { direction } => {
                format!("plane wave(theta={})", direction.theta())
            }
            IncidentField::PointSourceH { z } => format!("G_H point source(z={z})"),
            IncidentField::PointSourceM { z } => format!("G_M point source(z={z})"),
            IncidentField::PointSourceBi { z } => format!("G point source(z={z})"),
            IncidentField::SuperpositionBi { z0, z } => {
                format!("G point sources(z0={z0}, z={z})")
            }
        }
    }

    /// Value and normal derivative at `x` for the unit normal `normal`.
    pub fn value_and_normal(&self, kappa: Wavenumber, x: Point2, normal: Point2) -> Result<(Complex, Complex)> {
        let k = kappa.get();
        match *self {
            IncidentField::PlaneWave { direction } => {
                let d = direction.unit();
                let u = Complex::from_polar(1.0, k * d.dot(x));
                Ok((u, u * I * (k * d.dot(normal))))
            }
            IncidentField::PointSourceH { z } => point_source(KernelKind::Helmholtz, kappa, z, x, normal),
            IncidentField::PointSourceM { z } => point_source(KernelKind::Modified, kappa, z, x, normal),
            IncidentField::PointSourceBi { z } => point_source(KernelKind::Biharmonic, kappa, z, x, normal),
            IncidentField::SuperpositionBi { z0, z } => {
                let (a, da) = point_source(KernelKind::Biharmonic, kappa, z0, x, normal)?;
                let (b, db) = point_source(KernelKind::Biharmonic, kappa, z, x, normal)?;
                Ok((a + b, da + db))
            }
        }
    }

    /// Value at `x`.
    pub fn value(&self, kappa: Wavenumber, x: Point2) -> Result<Complex> {
        match *self {
            IncidentField::PlaneWave { direction } => {
                Ok(Complex::from_polar(1.0, kappa.get() * direction.unit().dot(x)))
            }
            IncidentField::PointSourceH { z } => kernels::eval_gh(kappa, x, z),
            IncidentField::PointSourceM { z } => kernels::eval_gm(kappa, x, z),
            IncidentField::PointSourceBi { z } => kernels::eval_g(kappa, x, z),
            IncidentField::SuperpositionBi { z0, z } => {
                Ok(kernels::eval_g(kappa, x, z0)? + kernels::eval_g(kappa, x, z)?)
            }
        }
    }
}

fn point_source(
    kind: KernelKind,
    kappa: Wavenumber,
    z: Point2,
    x: Point2,
    normal: Point2,
) -> Result<(Complex, Complex)> {
    Ok((
        kernels::eval_kernel(kind, kappa, z, x)?,
        kernels::dn_y_kernel(kind, kappa, z, x, normal)?,
    ))
}

/// Checks that every source lies outside the closed cavity with clearance.
pub fn check_sources_exterior(inc: &IncidentField, bd: &DiscreteBoundary) -> Result<()> {
    for z in inc.sources() {
        check_exterior_point(z, bd)?;
    }
    Ok(())
}

/// Winding number zero and distance at least `SOURCE_CLEARANCE · scale`.
pub fn check_exterior_point(z: Point2, bd: &DiscreteBoundary) -> Result<()> {
    let winding = bd.winding_number(z);
    let clearance = bd.distance(z);
    if winding != 0 || clearance < SOURCE_CLEARANCE * bd.curve().scale() {
        return Err(Error::SourceNotExterior {
            point: z,
            winding,
            clearance,
        });
    }
    Ok(())
}

/// Clamped-boundary data `f1 = −u^i`, `f2 = −∂_n u^i` at the nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryData {
    pub f1: Vec<Complex>,
    pub f2: Vec<Complex>,
}

impl BoundaryData {
    pub fn new(f1: Vec<Complex>, f2: Vec<Complex>) -> Result<Self> {
        if f1.len() != f2.len() {
            return Err(Error::LengthMismatch {
                expected: f1.len(),
                found: f2.len(),
            });
        }
        Ok(BoundaryData { f1, f2 })
    }

    pub fn zeros(len: usize) -> Self {
        BoundaryData {
            f1: vec![Complex::new(0.0, 0.0); len],
            f2: vec![Complex::new(0.0, 0.0); len],
        }
    }

    pub fn len(&self) -> usize {
        self.f1.len()
    }

    pub fn is_empty(&self) -> bool {
        self.f1.is_empty()
    }

    pub fn scaled(&self, s: Complex) -> Self {
        BoundaryData {
            f1: self.f1.iter().map(|v| v * s).collect(),
            f2: self.f2.iter().map(|v| v * s).collect(),
        }
    }
}

impl Add for &BoundaryData {
    type Output = BoundaryData;

    fn add(self, rhs: &BoundaryData) -> BoundaryData {
        assert_eq!(self.len(), rhs.len(), "boundary data on different grids");
        BoundaryData {
            f1: self.f1.iter().zip(&rhs.f1).map(|(a, b)| a + b).collect(),
            f2: self.f2.iter().zip(&rhs.f2).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Boundary data of the incident field on the node grid.
pub fn boundary_data(inc: &IncidentField, bd: &DiscreteBoundary, kappa: Wavenumber) -> Result<BoundaryData> {
    check_sources_exterior(inc, bd)?;
    let mut f1 = Vec::with_capacity(bd.len());
    let mut f2 = Vec::with_capacity(bd.len());
    for node in bd.nodes() {
        let (u, dn) = inc.value_and_normal(kappa, node.point, node.normal)?;
        f1.push(-u);
        f2.push(-dn);
    }
    Ok(BoundaryData { f1, f2 })
}

/// Incident field values at arbitrary points.
pub fn eval_incident(inc: &IncidentField, kappa: Wavenumber, points: &[Point2]) -> Result<Vec<Complex>> {
    points.iter().map(|&x| inc.value(kappa, x)).collect()
}

/// Entire solutions of `Δ²u = κ⁴u` used to exercise the interior representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InteriorTestField {
    /// `e^{iκ d·x}`, with `Δu = −κ²u`.
    EntirePlane { direction: Direction },
    /// `e^{κ d·x}`, with `Δu = κ²u`.
    EntireModified { direction: Direction },
}

impl InteriorTestField {
    pub fn value(&self, kappa: Wavenumber, x: Point2) -> Complex {
        let k = kappa.get();
        match *self {
            InteriorTestField::EntirePlane { direction } => Complex::from_polar(1.0, k * direction.unit().dot(x)),
            InteriorTestField::EntireModified { direction } => Complex::new((k * direction.unit().dot(x)).exp(), 0.0),
        }
    }

    /// `Δu / u`.
    pub fn laplacian_factor(&self, kappa: Wavenumber) -> f64 {
        let k2 = kappa.get() * kappa.get();
        match self {
            InteriorTestField::EntirePlane { .. } => -k2,
            InteriorTestField::EntireModified { .. } => k2,
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            InteriorTestField::EntirePlane { direction } => {
                format!("exp(i k d.x), theta={}", direction.theta())
            }
            InteriorTestField::EntireModified { direction } => {
                format!("exp(k d.x), theta={}", direction.theta())
            }
        }
    }
}

/// `(u, ∂_n u, Pu, Qu)` of a test field at the nodes.
pub fn interior_test_traces(f: &InteriorTestField, bd: &DiscreteBoundary, kappa: Wavenumber) -> CauchyData4 {
    let k = kappa.get();
    let lap = f.laplacian_factor(kappa);
    let mut data = CauchyData4::zeros(bd.len());
    for (j, node) in bd.nodes().iter().enumerate() {
        let u = f.value(kappa, node.point);
        let dn = match *f {
            InteriorTestField::EntirePlane { direction } => u * I * (k * direction.unit().dot(node.normal)),
            InteriorTestField::EntireModified { direction } => u * (k * direction.unit().dot(node.normal)),
        };
        data.v[j] = u;
        data.dn_v[j] = dn;
        data.pv[j] = u * lap;
        data.qv[j] = -dn * lap;
    }
    data
}
