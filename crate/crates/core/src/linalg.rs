//! Small dense vector helpers on `&[f64]`.
//!
//! Everything here works in arbitrary dimension with plain slices; the
//! polytopes handled by the crate are small enough that a matrix library
//! would only add conversions.

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scaled(a: &[f64], s: f64) -> Vec<f64> {
    a.iter().map(|x| x * s).collect()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Returns `a / |a|`, or `None` when `|a|` is not above `eps`.
pub fn normalized(a: &[f64], eps: f64) -> Option<Vec<f64>> {
    let n = norm(a);
    (n > eps).then(|| scaled(a, 1.0 / n))
}

/// `target -= coef * v`
pub fn axpy(target: &mut [f64], coef: f64, v: &[f64]) {
    for (t, x) in target.iter_mut().zip(v) {
        *t -= coef * x;
    }
}

/// Incremental orthonormal basis built by modified Gram-Schmidt with one
/// reorthogonalization pass.
#[derive(Debug, Clone, Default)]
pub struct OrthoBasis {
    vectors: Vec<Vec<f64>>,
}

impl OrthoBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }

    /// Component of `v` orthogonal to the span of the basis.
    pub fn residual(&self, v: &[f64]) -> Vec<f64> {
        let mut r = v.to_vec();
        for _ in 0..2 {
            for b in &self.vectors {
                let c = dot(&r, b);
                axpy(&mut r, c, b);
            }
        }
        r
    }

    /// Adds `v` if its residual is longer than `eps`; returns whether it was added.
    pub fn try_push(&mut self, v: &[f64], eps: f64) -> bool {
        let r = self.residual(v);
        match normalized(&r, eps) {
            Some(u) => {
                self.vectors.push(u);
                true
            }
            None => false,
        }
    }

    /// Unit vectors completing the basis to an orthonormal basis of R^dim.
    pub fn complement(&self, dim: usize) -> Vec<Vec<f64>> {
        let mut full = self.clone();
        let mut out = Vec::new();
        while full.len() < dim {
            // Pick the coordinate axis with the largest residual for stability.
            let best = (0..dim)
                .map(|i| {
                    let mut e = vec![0.0; dim];
                    e[i] = 1.0;
                    full.residual(&e)
                })
                .max_by(|a, b| norm(a).total_cmp(&norm(b)))
                .expect("dim > 0");
            let u = normalized(&best, 0.0).expect("residual of an axis is nonzero while rank < dim");
            full.vectors.push(u.clone());
            out.push(u);
        }
        out
    }
}

/// Affine rank of a point set, with `eps` as the residual threshold.
pub fn affine_rank<P: AsRef<[f64]>>(points: &[P], eps: f64) -> usize {
    let Some(first) = points.first() else {
        return 0;
    };
    let origin = first.as_ref();
    let mut basis = OrthoBasis::new();
    for p in &points[1..] {
        basis.try_push(&sub(p.as_ref(), origin), eps);
        if basis.len() == origin.len() {
            break;
        }
    }
    basis.len()
}
