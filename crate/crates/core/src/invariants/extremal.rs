//! Discrete extremal distance through the Dirichlet problem.
//!
//! Nodes of a uniform grid are `Free`, `Outside`, or on one of the plates `E`
//! (`u = 0`) and `F` (`u = 1`). A grid square is active when none of its
//! corners is outside; each edge carries half a unit of weight per adjacent
//! active square, which is the piecewise-linear Dirichlet energy on the
//! triangulated squares. Missing squares give zero-flux boundaries. The
//! extremal distance is `1 / Σ w (Δu)²` at the discrete harmonic `u`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::Complex;

/// Relative residual at which conjugate gradients stop.
pub const CG_TOL: f64 = 1e-10;
const MIC_TAU: f64 = 0.97;
const MIC_SIGMA: f64 = 0.25;
/// Smallest grid accepted by [`extremal_distance_fd`].
pub const MIN_NODES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NodeKind {
    Outside,
    Free,
    E,
    F,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridDomain {
    pub nx: usize,
    pub ny: usize,
    pub origin: Complex,
    pub spacing: f64,
    pub kinds: Vec<NodeKind>,
}

fn segment_distance(p: Complex, a: Complex, b: Complex) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = (((p - a) * ab.conj()).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * s)).norm()
}

impl GridDomain {
    pub fn from_fn<F: Fn(Complex) -> NodeKind>(nx: usize, ny: usize, origin: Complex, spacing: f64, kind: F) -> GridDomain {
        let mut kinds = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                kinds.push(kind(origin + Complex::new(i as f64 * spacing, j as f64 * spacing)));
            }
        }
        GridDomain { nx, ny, origin, spacing, kinds }
    }

    pub fn node(&self, i: usize, j: usize) -> Complex {
        self.origin + Complex::new(i as f64 * self.spacing, j as f64 * self.spacing)
    }

    /// Unit square with `E` the left side and `F` the right side; `n`
    /// intervals per side.
    pub fn unit_square(n: usize) -> GridDomain {
        let h = 1.0 / n as f64;
        GridDomain::from_fn(n + 1, n + 1, Complex::new(0.0, 0.0), h, |p| {
            if p.re < 0.5 * h {
                NodeKind::E
            } else if p.re > 1.0 - 0.5 * h {
                NodeKind::F
            } else {
                NodeKind::Free
            }
        })
    }

    /// Grötzsch ring `𝔻 ∖ [0, r]` on `[-1, 1]²` with `n` intervals per side:
    /// `F` is the grid outside the open disk, `E` the nodes within `h/2` of
    /// the segment.
    pub fn grotzsch(r: f64, n: usize) -> Result<GridDomain> {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::OutOfRange(format!("Grötzsch radius {r} not in (0, 1)")));
        }
        let h = 2.0 / n as f64;
        let (a, b) = (Complex::new(0.0, 0.0), Complex::new(r, 0.0));
        Ok(GridDomain::from_fn(n + 1, n + 1, Complex::new(-1.0, -1.0), h, |p| {
            if segment_distance(p, a, b) <= 0.5 * h {
                NodeKind::E
            } else if p.norm() >= 1.0 {
                NodeKind::F
            } else {
                NodeKind::Free
            }
        }))
    }

    /// Marks every node within `h/2` of the polyline. Returns the indices
    /// whose previous kind was `F`.
    pub fn mark_polyline(&mut self, path: &[Complex], kind: NodeKind) -> Vec<usize> {
        let half = 0.5 * self.spacing;
        let mut clashes = Vec::new();
        let segments: Vec<(Complex, Complex)> = if path.len() == 1 {
            vec![(path[0], path[0])]
        } else {
            path.windows(2).map(|s| (s[0], s[1])).collect()
        };
        for j in 0..self.ny {
            for i in 0..self.nx {
                let p = self.node(i, j);
                if segments.iter().any(|(a, b)| segment_distance(p, *a, *b) <= half) {
                    let idx = j * self.nx + i;
                    if self.kinds[idx] == NodeKind::F && kind != NodeKind::F {
                        clashes.push(idx);
                    }
                    self.kinds[idx] = kind;
                }
            }
        }
        clashes
    }

    pub fn count(&self, kind: NodeKind) -> usize {
        self.kinds.iter().filter(|k| **k == kind).count()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FdSolution {
    pub lambda: f64,
    pub energy: f64,
    pub iterations: usize,
    pub residual: f64,
    pub unknowns: usize,
}

struct Laplacian {
    nx: usize,
    /// Weight of the edge to the right / upper neighbour.
    wx: Vec<f64>,
    wy: Vec<f64>,
}

impl Laplacian {
    fn build(d: &GridDomain) -> Laplacian {
        let (nx, ny) = (d.nx, d.ny);
        let active = |i: usize, j: usize| -> bool {
            [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)]
                .iter()
                .all(|&(a, b)| d.kinds[b * nx + a] != NodeKind::Outside)
        };
        let mut sq = vec![false; nx * ny];
        for j in 0..ny.saturating_sub(1) {
            for i in 0..nx.saturating_sub(1) {
                sq[j * nx + i] = active(i, j);
            }
        }
        let mut wx = vec![0.0; nx * ny];
        let mut wy = vec![0.0; nx * ny];
        for j in 0..ny {
            for i in 0..nx {
                let idx = j * nx + i;
                if i + 1 < nx {
                    let below = j > 0 && sq[(j - 1) * nx + i];
                    let above = j + 1 < ny && sq[idx];
                    wx[idx] = 0.5 * (below as u8 + above as u8) as f64;
                }
                if j + 1 < ny {
                    let left = i > 0 && sq[idx - 1];
                    let right = i + 1 < nx && sq[idx];
                    wy[idx] = 0.5 * (left as u8 + right as u8) as f64;
                }
            }
        }
        Laplacian { nx, wx, wy }
    }

    /// `(neighbour, weight)` over the four grid neighbours with positive weight.
    fn neighbours(&self, idx: usize, out: &mut Vec<(usize, f64)>) {
        out.clear();
        let nx = self.nx;
        let n = self.wx.len();
        if self.wx[idx] > 0.0 {
            out.push((idx + 1, self.wx[idx]));
        }
        if idx % nx > 0 && self.wx[idx - 1] > 0.0 {
            out.push((idx - 1, self.wx[idx - 1]));
        }
        if idx + nx < n && self.wy[idx] > 0.0 {
            out.push((idx + nx, self.wy[idx]));
        }
        if idx >= nx && self.wy[idx - nx] > 0.0 {
            out.push((idx - nx, self.wy[idx - nx]));
        }
    }
}

/// Extremal distance between `E` and `F` inside the grid domain.
pub fn extremal_distance_fd(domain: &GridDomain) -> Result<FdSolution> {
    let (nx, ny) = (domain.nx, domain.ny);
    if nx < MIN_NODES || ny < MIN_NODES || domain.kinds.len() != nx * ny {
        return Err(Error::InvalidArgument(format!("grid must be at least {MIN_NODES}×{MIN_NODES}")));
    }
    if domain.count(NodeKind::E) == 0 || domain.count(NodeKind::F) == 0 {
        return Err(Error::InvalidArgument("E and F must both be nonempty".into()));
    }
    let lap = Laplacian::build(domain);
    let n = nx * ny;
    let kinds = &domain.kinds;

    // free nodes connected to E; the domain is disconnected when F is not met
    let mut unknown = vec![false; n];
    let mut seen = vec![false; n];
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| kinds[i] == NodeKind::E).collect();
    for &i in &queue {
        seen[i] = true;
    }
    let mut reaches_f = false;
    let mut nb = Vec::with_capacity(4);
    while let Some(i) = queue.pop_front() {
        lap.neighbours(i, &mut nb);
        for &(j, _) in &nb {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            match kinds[j] {
                NodeKind::F => reaches_f = true,
                NodeKind::Free => {
                    unknown[j] = true;
                    queue.push_back(j);
                }
                _ => {}
            }
        }
    }
    if !reaches_f {
        return Err(Error::DisconnectedDomain);
    }

    let mut u = vec![0.0; n];
    for i in 0..n {
        if kinds[i] == NodeKind::F {
            u[i] = 1.0;
        }
    }
    let mut diag = vec![0.0; n];
    let mut rhs = vec![0.0; n];
    for i in 0..n {
        if !unknown[i] {
            continue;
        }
        lap.neighbours(i, &mut nb);
        for &(j, w) in &nb {
            diag[i] += w;
            if !unknown[j] {
                rhs[i] += w * u[j];
            }
        }
    }
    // off-diagonal couplings between unknowns, to the right and upwards
    let ax: Vec<f64> = (0..n).map(|i| if unknown[i] && i + 1 < n && unknown[i + 1] && i % nx + 1 < nx { -lap.wx[i] } else { 0.0 }).collect();
    let ay: Vec<f64> = (0..n).map(|i| if unknown[i] && i + nx < n && unknown[i + nx] { -lap.wy[i] } else { 0.0 }).collect();

    let unknowns = unknown.iter().filter(|b| **b).count();
    let (x, iterations, residual) = pcg(nx, &unknown, &diag, &ax, &ay, &rhs)?;
    for i in 0..n {
        if unknown[i] {
            u[i] = x[i];
        }
    }

    let mut energy = 0.0;
    for i in 0..n {
        if lap.wx[i] > 0.0 {
            energy += lap.wx[i] * (u[i + 1] - u[i]).powi(2);
        }
        if lap.wy[i] > 0.0 {
            energy += lap.wy[i] * (u[i + nx] - u[i]).powi(2);
        }
    }
    Ok(FdSolution { lambda: 1.0 / energy, energy, iterations, residual, unknowns })
}

fn apply(nx: usize, diag: &[f64], ax: &[f64], ay: &[f64], x: &[f64], out: &mut [f64]) {
    let n = x.len();
    for i in 0..n {
        let mut v = diag[i] * x[i];
        if ax[i] != 0.0 {
            v += ax[i] * x[i + 1];
        }
        if i >= 1 && ax[i - 1] != 0.0 {
            v += ax[i - 1] * x[i - 1];
        }
        if ay[i] != 0.0 {
            v += ay[i] * x[i + nx];
        }
        if i >= nx && ay[i - nx] != 0.0 {
            v += ay[i - nx] * x[i - nx];
        }
        out[i] = v;
    }
}

fn mic0(nx: usize, unknown: &[bool], diag: &[f64], ax: &[f64], ay: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut prec = vec![0.0; n];
    for i in 0..n {
        if !unknown[i] {
            continue;
        }
        let mut e = diag[i];
        if i >= 1 {
            let p = prec[i - 1];
            let l = ax[i - 1] * p;
            e -= l * l + MIC_TAU * ax[i - 1] * ay[i - 1] * p * p;
        }
        if i >= nx {
            let p = prec[i - nx];
            let l = ay[i - nx] * p;
            e -= l * l + MIC_TAU * ay[i - nx] * ax[i - nx] * p * p;
        }
        if e < MIC_SIGMA * diag[i] {
            e = diag[i];
        }
        prec[i] = 1.0 / e.sqrt();
    }
    prec
}

fn apply_mic(nx: usize, prec: &[f64], ax: &[f64], ay: &[f64], r: &[f64], q: &mut [f64], z: &mut [f64]) {
    let n = r.len();
    for i in 0..n {
        if prec[i] == 0.0 {
            q[i] = 0.0;
            continue;
        }
        let mut t = r[i];
        if i >= 1 {
            t -= ax[i - 1] * prec[i - 1] * q[i - 1];
        }
        if i >= nx {
            t -= ay[i - nx] * prec[i - nx] * q[i - nx];
        }
        q[i] = t * prec[i];
    }
    for i in (0..n).rev() {
        if prec[i] == 0.0 {
            z[i] = 0.0;
            continue;
        }
        let mut t = q[i];
        if i + 1 < n {
            t -= ax[i] * prec[i] * z[i + 1];
        }
        if i + nx < n {
            t -= ay[i] * prec[i] * z[i + nx];
        }
        z[i] = t * prec[i];
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn pcg(nx: usize, unknown: &[bool], diag: &[f64], ax: &[f64], ay: &[f64], b: &[f64]) -> Result<(Vec<f64>, usize, f64)> {
    let n = b.len();
    let prec = mic0(nx, unknown, diag, ax, ay);
    let b_norm = dot(b, b).sqrt();
    let mut x = vec![0.0; n];
    if b_norm == 0.0 {
        return Ok((x, 0, 0.0));
    }
    let mut r = b.to_vec();
    let mut q = vec![0.0; n];
    let mut z = vec![0.0; n];
    apply_mic(nx, &prec, ax, ay, &r, &mut q, &mut z);
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    let max_iter = 10 * (nx + n / nx) + 1000;
    let mut rel = 1.0;
    for it in 1..=max_iter {
        apply(nx, diag, ax, ay, &p, &mut ap);
        let alpha = rz / dot(&p, &ap);
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        rel = dot(&r, &r).sqrt() / b_norm;
        if rel <= CG_TOL {
            return Ok((x, it, rel));
        }
        if !rel.is_finite() {
            break;
        }
        apply_mic(nx, &prec, ax, ay, &r, &mut q, &mut z);
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::SolverDivergence { residual: rel })
}
