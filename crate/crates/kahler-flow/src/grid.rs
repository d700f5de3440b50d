//! Grids on a one-dimensional chart and their sparse difference operators.
//!
//! Every grid stores node positions, a flag saying which nodes evolve, and
//! two stencils evaluated at evolving nodes only: the Euclidean Laplacian
//! ∂²_x + ∂²_y (so ∂∂̄ = Δ/4) and the Wirtinger derivative ∂_z.

use kahler_geometry::{Real, C};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GridKind {
    /// Rotationally symmetric data sampled on 0 ≤ r ≤ r_max along the real axis.
    Radial,
    /// Periodic box [0, L)².
    Torus,
    /// Square lattice clipped to |z| < r_max; nodes just outside carry boundary data.
    Disk,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("grid resolution {0} is below the minimum of 8")]
    Resolution(usize),
    #[error("invalid extent {0}")]
    Extent(f64),
}

#[derive(Clone, Debug)]
struct Sparse<W> {
    start: Vec<usize>,
    idx: Vec<usize>,
    w: Vec<W>,
}

impl<W: Copy> Sparse<W> {
    fn new() -> Self {
        Sparse { start: vec![0], idx: Vec::new(), w: Vec::new() }
    }
    fn push_row(&mut self, row: &[(usize, W)]) {
        for &(i, w) in row {
            self.idx.push(i);
            self.w.push(w);
        }
        self.start.push(self.idx.len());
    }
}

#[derive(Clone, Debug)]
pub struct Grid<T> {
    pub kind: GridKind,
    pub step: T,
    /// r_max for radial and disk grids, the period for the torus.
    pub extent: T,
    pub points: Vec<C<T>>,
    pub active: Vec<bool>,
    /// Torus only: nodes per axis.
    pub side: usize,
    interior: Vec<usize>,
    exterior: Vec<usize>,
    lap: Sparse<T>,
    grad: Sparse<C<T>>,
}

impl<T: Real> Grid<T> {
    /// `points` nodes r_j = j·r_max/(points − 1); the last one is the boundary.
    ///
    /// Δ at the origin is 4(u₁ − u₀)/h² (even extension); elsewhere the
    /// conservative form [r_{j+½}(u_{j+1} − u_j) − r_{j−½}(u_j − u_{j−1})]/(r_j h²).
    pub fn radial(points: usize, r_max: f64) -> Result<Self, GridError> {
        if points < 8 {
            return Err(GridError::Resolution(points));
        }
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(GridError::Extent(r_max));
        }
        let n = points - 1;
        let h = T::lit(r_max / n as f64);
        let h2 = h * h;
        let half = T::lit(0.5);
        let quarter_h = T::one() / (T::lit(4.0) * h);
        let mut lap = Sparse::new();
        let mut grad = Sparse::new();
        let mut pts = Vec::with_capacity(points);
        let mut active = Vec::with_capacity(points);
        for j in 0..points {
            let r = h * T::from_usize_lossy(j);
            pts.push(C::new(r, T::zero()));
            active.push(j < n);
            if j == 0 {
                let c = T::lit(4.0) / h2;
                lap.push_row(&[(0, -c), (1, c)]);
                grad.push_row(&[]);
            } else if j < n {
                let jf = T::from_usize_lossy(j);
                let a = (jf - half) / (jf * h2);
                let b = (jf + half) / (jf * h2);
                lap.push_row(&[(j - 1, a), (j, -(a + b)), (j + 1, b)]);
                grad.push_row(&[(j - 1, C::new(-quarter_h, T::zero())), (j + 1, C::new(quarter_h, T::zero()))]);
            } else {
                lap.push_row(&[]);
                grad.push_row(&[]);
            }
        }
        Ok(Grid::assemble(GridKind::Radial, h, T::lit(r_max), pts, active, 0, lap, grad))
    }

    /// `side`² nodes on [0, length)² with periodic wrap.
    pub fn torus(side: usize, length: f64) -> Result<Self, GridError> {
        if side < 8 {
            return Err(GridError::Resolution(side));
        }
        if !(length > 0.0) {
            return Err(GridError::Extent(length));
        }
        let h = T::lit(length / side as f64);
        let id = |i: isize, j: isize| -> usize {
            let s = side as isize;
            (i.rem_euclid(s) * s + j.rem_euclid(s)) as usize
        };
        let mut lap = Sparse::new();
        let mut grad = Sparse::new();
        let mut pts = Vec::with_capacity(side * side);
        for i in 0..side as isize {
            for j in 0..side as isize {
                pts.push(C::new(h * T::lit(i as f64), h * T::lit(j as f64)));
                lap.push_row(&nine_point(h, |di, dj| id(i + di, j + dj)));
                grad.push_row(&wirtinger_row(h, |di, dj| id(i + di, j + dj)));
            }
        }
        Ok(Grid::assemble(GridKind::Torus, h, T::lit(length), pts, vec![true; side * side], side, lap, grad))
    }

    /// Lattice of spacing r_max/m; nodes with |z| < r_max evolve, and every
    /// other node reached by their stencils is kept as a boundary node.
    pub fn disk(m: usize, r_max: f64) -> Result<Self, GridError> {
        if m < 8 {
            return Err(GridError::Resolution(m));
        }
        if !(r_max > 0.0 && r_max < 1.0) {
            return Err(GridError::Extent(r_max));
        }
        let hf = r_max / m as f64;
        let h = T::lit(hf);
        let span = m as isize + 2;
        let inside = |i: isize, j: isize| ((i * i + j * j) as f64).sqrt() * hf < r_max - 1e-12;
        let width = (2 * span + 1) as usize;
        let mut slot = vec![usize::MAX; width * width];
        let key = |i: isize, j: isize| ((i + span) as usize) * width + (j + span) as usize;
        let mut coords = Vec::new();
        for i in -span..=span {
            for j in -span..=span {
                let keep = inside(i, j) || (-1..=1).any(|di| (-1..=1).any(|dj| inside(i + di, j + dj)));
                if keep {
                    slot[key(i, j)] = coords.len();
                    coords.push((i, j));
                }
            }
        }
        let mut lap = Sparse::new();
        let mut grad = Sparse::new();
        let mut pts = Vec::with_capacity(coords.len());
        let mut active = Vec::with_capacity(coords.len());
        for &(i, j) in &coords {
            pts.push(C::new(h * T::lit(i as f64), h * T::lit(j as f64)));
            let act = inside(i, j);
            active.push(act);
            if act {
                lap.push_row(&nine_point(h, |di, dj| slot[key(i + di, j + dj)]));
                grad.push_row(&wirtinger_row(h, |di, dj| slot[key(i + di, j + dj)]));
            } else {
                lap.push_row(&[]);
                grad.push_row(&[]);
            }
        }
        Ok(Grid::assemble(GridKind::Disk, h, T::lit(r_max), pts, active, m, lap, grad))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        kind: GridKind,
        step: T,
        extent: T,
        points: Vec<C<T>>,
        active: Vec<bool>,
        side: usize,
        lap: Sparse<T>,
        grad: Sparse<C<T>>,
    ) -> Self {
        let interior = (0..points.len()).filter(|&i| active[i]).collect();
        let exterior = (0..points.len()).filter(|&i| !active[i]).collect();
        Grid { kind, step, extent, points, active, side, interior, exterior, lap, grad }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn active_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.interior.iter().copied()
    }

    pub fn boundary_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.exterior.iter().copied()
    }

    /// |z| of node i (the radius for radial grids).
    pub fn radius(&self, i: usize) -> T {
        self.points[i].norm()
    }

    /// Euclidean Laplacian at evolving nodes; zero elsewhere.
    pub fn laplacian_into(&self, u: &[T], out: &mut [T]) {
        for (i, o) in out.iter_mut().enumerate() {
            let (a, b) = (self.lap.start[i], self.lap.start[i + 1]);
            let mut s = T::zero();
            for k in a..b {
                s += self.lap.w[k] * u[self.lap.idx[k]];
            }
            *o = s;
        }
    }

    pub fn laplacian(&self, u: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); u.len()];
        self.laplacian_into(u, &mut out);
        out
    }

    /// ∂_z u at evolving nodes; zero elsewhere.
    pub fn dz(&self, u: &[T]) -> Vec<C<T>> {
        (0..self.len())
            .map(|i| {
                let (a, b) = (self.grad.start[i], self.grad.start[i + 1]);
                (a..b).fold(C::new(T::zero(), T::zero()), |s, k| s + self.grad.w[k] * u[self.grad.idx[k]])
            })
            .collect()
    }
}

/// Isotropic nine-point Laplacian [4(E+W+N+S) + (corners) − 20u]/(6h²).
fn nine_point<T: Real>(h: T, at: impl Fn(isize, isize) -> usize) -> Vec<(usize, T)> {
    let d = T::one() / (T::lit(6.0) * h * h);
    let mut row = vec![(at(0, 0), T::lit(-20.0) * d)];
    for (di, dj) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
        row.push((at(di, dj), T::lit(4.0) * d));
    }
    for (di, dj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
        row.push((at(di, dj), d));
    }
    row
}

/// ½(∂_x − i∂_y) by central differences; the first lattice index is x.
fn wirtinger_row<T: Real>(h: T, at: impl Fn(isize, isize) -> usize) -> Vec<(usize, C<T>)> {
    let c = T::one() / (T::lit(4.0) * h);
    vec![
        (at(1, 0), C::new(c, T::zero())),
        (at(-1, 0), C::new(-c, T::zero())),
        (at(0, 1), C::new(T::zero(), -c)),
        (at(0, -1), C::new(T::zero(), c)),
    ]
}
