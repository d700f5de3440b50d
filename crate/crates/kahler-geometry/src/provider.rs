use crate::error::GeomError;
use crate::jet::MetricJet;
use crate::linalg::{min_eigenvalue, CMat};
use crate::scalar::{Real, C};
use std::sync::Arc;

/// Smallest admissible eigenvalue of an evaluated metric.
pub const DEGENERACY_FLOOR: f64 = 1e-12;

/// A Hermitian metric field g_{ij̄} on one coordinate chart.
pub trait MetricProvider<T: Real>: Send + Sync {
    fn dim(&self) -> usize;

    fn label(&self) -> String;

    /// Highest order of ∂/∂̄ derivatives `jet_raw` can produce.
    fn max_order(&self) -> usize;

    fn contains(&self, _z: &[C<T>]) -> bool {
        true
    }

    fn eval(&self, z: &[C<T>]) -> CMat<T>;

    /// Unchecked jet; callers go through [`jet`].
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T>;
}

pub type SharedProvider<T> = Arc<dyn MetricProvider<T>>;

impl<T: Real, P: MetricProvider<T> + ?Sized> MetricProvider<T> for Arc<P> {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn label(&self) -> String {
        (**self).label()
    }
    fn max_order(&self) -> usize {
        (**self).max_order()
    }
    fn contains(&self, z: &[C<T>]) -> bool {
        (**self).contains(z)
    }
    fn eval(&self, z: &[C<T>]) -> CMat<T> {
        (**self).eval(z)
    }
    fn jet_raw(&self, z: &[C<T>], order: usize) -> MetricJet<T> {
        (**self).jet_raw(z, order)
    }
}

pub fn format_point<T: Real>(z: &[C<T>]) -> String {
    let parts: Vec<String> = z.iter().map(|w| format!("{}{:+}i", w.re, w.im)).collect();
    format!("({})", parts.join(", "))
}

pub(crate) fn check_point<T: Real, P: MetricProvider<T> + ?Sized>(
    p: &P,
    z: &[C<T>],
) -> Result<(), GeomError> {
    if z.len() != p.dim() {
        return Err(GeomError::DimensionMismatch { expected: p.dim(), found: z.len() });
    }
    if !p.contains(z) || z.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
        return Err(GeomError::OutsideChart { label: p.label(), point: format_point(z) });
    }
    Ok(())
}

/// Rejects non-Hermitian or (numerically) non-positive metric values.
pub fn check_metric<T: Real>(g: &CMat<T>) -> Result<(), GeomError> {
    let scale = g.max_abs().max(T::one());
    let defect = g.hermitian_defect();
    if !(defect <= scale * T::lit(1e-10)) {
        return Err(GeomError::NotHermitian { defect: defect.as_f64() });
    }
    let lmin = min_eigenvalue(g);
    if !(lmin >= T::lit(DEGENERACY_FLOOR)) {
        return Err(GeomError::Degenerate { min_eigenvalue: lmin.as_f64() });
    }
    Ok(())
}

/// Metric value at `z` with chart and positivity checks.
pub fn metric_at<T: Real, P: MetricProvider<T> + ?Sized>(
    p: &P,
    z: &[C<T>],
) -> Result<CMat<T>, GeomError> {
    check_point(p, z)?;
    let g = p.eval(z);
    check_metric(&g)?;
    Ok(g)
}

/// Jet up to `order`, failing fast when the provider cannot supply it.
pub fn jet<T: Real, P: MetricProvider<T> + ?Sized>(
    p: &P,
    z: &[C<T>],
    order: usize,
) -> Result<MetricJet<T>, GeomError> {
    check_point(p, z)?;
    if order > p.max_order() {
        return Err(GeomError::DerivativeOrder {
            label: p.label(),
            needed: order,
            available: p.max_order(),
        });
    }
    let j = p.jet_raw(z, order);
    check_metric(&j.g)?;
    Ok(j)
}
