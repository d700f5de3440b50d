use crate::linalg::CMat;
use crate::scalar::Real;

/// Metric values and derivatives at one point.
///
/// `dg[a]` holds ∂_a g_{kl̄} and `ddg[a * n + b]` holds ∂_a∂_b̄ g_{kl̄}. The
/// barred first derivative follows from Hermitian symmetry:
/// ∂_ā g_{kl̄} = conj(∂_a g_{lk̄}), i.e. `dg[a].adjoint()`.
#[derive(Clone, Debug)]
pub struct MetricJet<T> {
    pub g: CMat<T>,
    pub dg: Vec<CMat<T>>,
    pub ddg: Vec<CMat<T>>,
}

impl<T: Real> MetricJet<T> {
    pub fn order0(g: CMat<T>) -> Self {
        MetricJet { g, dg: Vec::new(), ddg: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn order(&self) -> usize {
        if !self.ddg.is_empty() {
            2
        } else if !self.dg.is_empty() {
            1
        } else {
            0
        }
    }

    pub fn d(&self, a: usize) -> &CMat<T> {
        &self.dg[a]
    }

    pub fn dbar(&self, a: usize) -> CMat<T> {
        self.dg[a].adjoint()
    }

    pub fn dd(&self, a: usize, b: usize) -> &CMat<T> {
        &self.ddg[a * self.dim() + b]
    }

    /// Drops derivatives above `order`.
    pub fn truncate(mut self, order: usize) -> Self {
        if order < 2 {
            self.ddg.clear();
        }
        if order < 1 {
            self.dg.clear();
        }
        self
    }

    pub fn scale(&self, c: T) -> Self {
        MetricJet {
            g: self.g.scale_re(c),
            dg: self.dg.iter().map(|m| m.scale_re(c)).collect(),
            ddg: self.ddg.iter().map(|m| m.scale_re(c)).collect(),
        }
    }
}
