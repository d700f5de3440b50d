//! Named metrics and conformal factors.
//!
//! Keys of the form `conformal:<base>:<factor>` are resolved on the fly from a
//! registered base metric and a registered factor.

use crate::conformal::ConformalProvider;
use crate::error::GeomError;
use crate::field::{ConstantField, RadialField, SharedField, TorusBump};
use crate::models::{BergmanBall, Euclidean, RadialN1, TorsionExample};
use crate::provider::SharedProvider;
use crate::pullback::MobiusPullback;
use crate::scalar::{Real, C};
use std::collections::BTreeMap;
use std::sync::Arc;

pub type MetricBuilder<T> = Arc<dyn Fn(usize) -> Result<SharedProvider<T>, GeomError> + Send + Sync>;
pub type FactorBuilder<T> = Arc<dyn Fn(usize) -> Result<SharedField<T>, GeomError> + Send + Sync>;

#[derive(Clone)]
pub struct MetricEntry<T> {
    pub description: String,
    /// None when any dimension is accepted.
    pub fixed_dim: Option<usize>,
    pub default_dim: usize,
    pub build: MetricBuilder<T>,
}

#[derive(Clone)]
pub struct FactorEntry<T> {
    pub description: String,
    pub build: FactorBuilder<T>,
}

#[derive(Clone)]
pub struct Catalog<T> {
    metrics: BTreeMap<String, MetricEntry<T>>,
    factors: BTreeMap<String, FactorEntry<T>>,
}

fn fixed<T: Real>(
    dim: usize,
    description: &str,
    f: impl Fn() -> SharedProvider<T> + Send + Sync + 'static,
) -> MetricEntry<T> {
    MetricEntry {
        description: description.into(),
        fixed_dim: Some(dim),
        default_dim: dim,
        build: Arc::new(move |_| Ok(f())),
    }
}

impl<T: Real> Default for Catalog<T> {
    fn default() -> Self {
        Self::standard()
    }
}

impl<T: Real> Catalog<T> {
    pub fn empty() -> Self {
        Catalog { metrics: BTreeMap::new(), factors: BTreeMap::new() }
    }

    pub fn standard() -> Self {
        let mut c = Self::empty();
        c.register_metric(
            "euclidean",
            MetricEntry {
                description: "flat identity metric on C^n".into(),
                fixed_dim: None,
                default_dim: 2,
                build: Arc::new(|n| Ok(Arc::new(Euclidean { n }) as SharedProvider<T>)),
            },
        );
        c.register_metric(
            "poincare-disk",
            fixed(1, "(1-|z|^2)^-2 on the unit disk", || Arc::new(RadialN1::<T>::poincare(T::one()))),
        );
        c.register_metric(
            "poincare-ke",
            fixed(1, "2(1-|z|^2)^-2, Kahler-Einstein with Ric = -g", || {
                Arc::new(RadialN1::<T>::poincare(T::lit(2.0)))
            }),
        );
        c.register_metric(
            "bergman-ball",
            MetricEntry {
                description: "ddbar(-log(1-|z|^2)) on the unit ball".into(),
                fixed_dim: None,
                default_dim: 2,
                build: Arc::new(|n| Ok(Arc::new(BergmanBall { n }) as SharedProvider<T>)),
            },
        );
        c.register_metric(
            "torsion-example-1",
            fixed(2, "diag(1, 1+|z1|^2) on C^2, not Kahler", || Arc::new(TorsionExample)),
        );
        c.register_metric(
            "fubini-study",
            fixed(1, "(1+|z|^2)^-2, round sphere in an affine chart", || {
                Arc::new(RadialN1::<T>::fubini_study())
            }),
        );
        c.register_metric(
            "hyperbolic-bump",
            fixed(1, "(1+0.1 cos^4 bump)(1-|z|^2)^-2, bump supported in |z|^2 < 0.64", || {
                let base: SharedProvider<T> = Arc::new(RadialN1::<T>::poincare(T::one()));
                let f: SharedField<T> = Arc::new(RadialField::log_bump(1, T::lit(0.1), T::lit(0.64)));
                Arc::new(ConformalProvider::new(base, f))
            }),
        );
        c.register_metric(
            "torus-bump",
            fixed(1, "exp(0.2 sin x cos y)|dz|^2, 2pi-periodic", || {
                let base: SharedProvider<T> = Arc::new(Euclidean { n: 1 });
                let f: SharedField<T> = Arc::new(TorusBump { eps: T::lit(0.1) });
                Arc::new(ConformalProvider::new(base, f))
            }),
        );
        c.register_metric(
            "mobius-pullback",
            fixed(1, "poincare-ke pulled back by z -> (z-0.3)/(1-0.3z)", || {
                let base: SharedProvider<T> = Arc::new(RadialN1::<T>::poincare(T::lit(2.0)));
                Arc::new(MobiusPullback { base, a: C::new(T::lit(0.3), T::zero()) })
            }),
        );

        c.register_factor(
            "zero",
            FactorEntry {
                description: "F = 0".into(),
                build: Arc::new(|n| Ok(Arc::new(ConstantField { n, c: T::zero() }) as SharedField<T>)),
            },
        );
        c.register_factor(
            "bump",
            FactorEntry {
                description: "F = log(1 + 0.1 b(|z|^2))/2 with a cos^4 bump on |z|^2 < 0.64".into(),
                build: Arc::new(|n| {
                    Ok(Arc::new(RadialField::log_bump(n, T::lit(0.1), T::lit(0.64))) as SharedField<T>)
                }),
            },
        );
        c.register_factor(
            "torus-bump",
            FactorEntry {
                description: "F = 0.1 sin x cos y (n = 1)".into(),
                build: Arc::new(|n| {
                    if n != 1 {
                        return Err(GeomError::DimensionMismatch { expected: 1, found: n });
                    }
                    Ok(Arc::new(TorusBump { eps: T::lit(0.1) }) as SharedField<T>)
                }),
            },
        );
        c
    }

    pub fn register_metric(&mut self, name: &str, entry: MetricEntry<T>) {
        self.metrics.insert(name.to_string(), entry);
    }

    pub fn register_factor(&mut self, name: &str, entry: FactorEntry<T>) {
        self.factors.insert(name.to_string(), entry);
    }

    pub fn metric_names(&self) -> Vec<String> {
        self.metrics.keys().cloned().collect()
    }

    pub fn factor_names(&self) -> Vec<String> {
        self.factors.keys().cloned().collect()
    }

    pub fn metric_entry(&self, name: &str) -> Option<&MetricEntry<T>> {
        self.metrics.get(name)
    }

    pub fn factor_entry(&self, name: &str) -> Option<&FactorEntry<T>> {
        self.factors.get(name)
    }

    /// Whether `key` resolves, without building anything.
    pub fn contains(&self, key: &str) -> bool {
        match key.strip_prefix("conformal:") {
            Some(rest) => match rest.rsplit_once(':') {
                Some((base, factor)) => self.contains(base) && self.factors.contains_key(factor),
                None => false,
            },
            None => self.metrics.contains_key(key),
        }
    }

    pub fn default_dim(&self, key: &str) -> Result<usize, GeomError> {
        match key.strip_prefix("conformal:") {
            Some(rest) => {
                let (base, _) = rest.rsplit_once(':').ok_or_else(|| GeomError::UnknownKey(key.into()))?;
                self.default_dim(base)
            }
            None => self
                .metrics
                .get(key)
                .map(|e| e.default_dim)
                .ok_or_else(|| GeomError::UnknownKey(key.into())),
        }
    }

    /// Builds `key` in dimension `dim` (the entry's default when None).
    pub fn build(&self, key: &str, dim: Option<usize>) -> Result<SharedProvider<T>, GeomError> {
        if let Some(rest) = key.strip_prefix("conformal:") {
            let (base, factor) = rest.rsplit_once(':').ok_or_else(|| GeomError::UnknownKey(key.into()))?;
            let g = self.build(base, dim)?;
            let fe = self.factors.get(factor).ok_or_else(|| GeomError::UnknownKey(factor.into()))?;
            let f = (fe.build)(g.dim())?;
            return Ok(Arc::new(ConformalProvider::new(g, f)));
        }
        let e = self.metrics.get(key).ok_or_else(|| GeomError::UnknownKey(key.into()))?;
        let n = dim.unwrap_or(e.default_dim);
        if let Some(d) = e.fixed_dim {
            if d != n {
                return Err(GeomError::DimensionMismatch { expected: d, found: n });
            }
        }
        if n == 0 {
            return Err(GeomError::DimensionMismatch { expected: 1, found: 0 });
        }
        (e.build)(n)
    }
}
