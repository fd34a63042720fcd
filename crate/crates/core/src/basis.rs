//! Total-degree bivariate polynomial bases in graded order.

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;

/// `dim P_d(R²) = (d+1)(d+2)/2`.
pub const fn basis_size(d: usize) -> usize {
    (d + 1) * (d + 2) / 2
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Dimension of `P_d` restricted to a planar algebraic curve of degree
/// `variety_degree`: `binom(d+2, 2) - binom(d+2-k, 2)`. For a circle
/// (`k = 2`) this is `2d + 1`.
pub fn restricted_dim(d: usize, variety_degree: usize) -> usize {
    let full = binom(d + 2, 2);
    let removed = if d >= variety_degree { binom(d - variety_degree + 2, 2) } else { 0 };
    full - removed
}

/// Dimension of `P_d` restricted to a sphere in `R^n`:
/// `binom(d+n, n) - binom(d+n-2, n)`.
pub fn sphere_restricted_dim(d: usize, n: usize) -> usize {
    binom(d + n, n) - if d + n >= 2 { binom(d + n - 2, n) } else { 0 }
}

/// Exponent pair `(a, b)` of `x^a y^b` or `T_a(x) T_b(y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex {
    pub a: usize,
    pub b: usize,
}

impl MultiIndex {
    pub fn degree(self) -> usize {
        self.a + self.b
    }

    /// Position in graded order: by total degree, then by `a` descending.
    pub fn position(self) -> usize {
        let t = self.degree();
        basis_size(t) - 1 - self.a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasisKind {
    Monomial,
    Chebyshev,
}

/// A total-degree basis with a fixed graded index order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "BasisRecord", into = "BasisRecord")]
pub struct BasisSpec {
    kind: BasisKind,
    degree: usize,
    indices: Vec<MultiIndex>,
}

#[derive(Serialize, Deserialize)]
struct BasisRecord {
    kind: BasisKind,
    degree: usize,
}

impl From<BasisRecord> for BasisSpec {
    fn from(r: BasisRecord) -> Self {
        BasisSpec::new(r.kind, r.degree)
    }
}

impl From<BasisSpec> for BasisRecord {
    fn from(b: BasisSpec) -> Self {
        BasisRecord { kind: b.kind, degree: b.degree }
    }
}

impl BasisSpec {
    pub fn new(kind: BasisKind, degree: usize) -> Self {
        let mut indices = Vec::with_capacity(basis_size(degree));
        for t in 0..=degree {
            for a in (0..=t).rev() {
                indices.push(MultiIndex { a, b: t - a });
            }
        }
        Self { kind, degree, indices }
    }

    pub fn chebyshev(degree: usize) -> Self {
        Self::new(BasisKind::Chebyshev, degree)
    }

    pub fn monomial(degree: usize) -> Self {
        Self::new(BasisKind::Monomial, degree)
    }

    pub fn kind(&self) -> BasisKind {
        self.kind
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// Same kind, lower degree. Its functions are a prefix of ours.
    pub fn truncated(&self, degree: usize) -> Self {
        Self::new(self.kind, degree.min(self.degree))
    }

    /// Writes all basis values at `p` into `out` (length `len()`).
    pub fn eval_into(&self, p: Point2, out: &mut [f64]) {
        let d = self.degree;
        let mut xs = [0.0; 64];
        let mut ys = [0.0; 64];
        assert!(d < 64, "degree {d} too large");
        univariate(self.kind, p.x, &mut xs[..=d]);
        univariate(self.kind, p.y, &mut ys[..=d]);
        for (o, m) in out.iter_mut().zip(&self.indices) {
            *o = xs[m.a] * ys[m.b];
        }
    }

    pub fn eval(&self, p: Point2) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        self.eval_into(p, &mut out);
        out
    }
}

fn univariate(kind: BasisKind, x: f64, out: &mut [f64]) {
    out[0] = 1.0;
    if out.len() == 1 {
        return;
    }
    out[1] = x;
    for k in 2..out.len() {
        out[k] = match kind {
            BasisKind::Monomial => out[k - 1] * x,
            BasisKind::Chebyshev => 2.0 * x * out[k - 1] - out[k - 2],
        };
    }
}

/// Free-function form of [`BasisSpec::eval`].
pub fn eval_basis(spec: &BasisSpec, point: Point2) -> Vec<f64> {
    spec.eval(point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn sizes() {
        assert_eq!(basis_size(0), 1);
        assert_eq!(basis_size(2), 6);
        assert_eq!(basis_size(15), 136);
        for d in 0..20 {
            assert_eq!(BasisSpec::chebyshev(d).len(), basis_size(d));
        }
    }

    #[test]
    fn restricted_dims() {
        assert_eq!(restricted_dim(0, 2), 1);
        assert_eq!(restricted_dim(1, 2), 3);
        assert_eq!(restricted_dim(2, 2), 5);
        assert_eq!(restricted_dim(4, 2), 9);
        for d in 0..30 {
            assert_eq!(restricted_dim(d, 2), 2 * d + 1);
            assert_eq!(sphere_restricted_dim(d, 2), 2 * d + 1);
        }
        // spherical harmonics in R^3: (d+1)^2
        for d in 0..10 {
            assert_eq!(sphere_restricted_dim(d, 3), (d + 1) * (d + 1));
        }
    }

    #[test]
    fn graded_order() {
        let b = BasisSpec::monomial(2);
        let idx: Vec<(usize, usize)> = b.indices().iter().map(|m| (m.a, m.b)).collect();
        assert_eq!(idx, vec![(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]);
    }

    #[test]
    fn evaluation_examples() {
        let m = BasisSpec::monomial(3);
        let v = m.eval(Point2::ORIGIN);
        assert_eq!(v[0], 1.0);
        assert!(v[1..].iter().all(|&x| x == 0.0));
        let c = BasisSpec::chebyshev(3);
        assert_eq!(c.eval(Point2::ORIGIN)[0], 1.0);

        let t = c.eval(Point2::new(0.5, 0.9));
        let pos = MultiIndex { a: 2, b: 0 }.position();
        assert!((t[pos] + 0.5).abs() < 1e-15);

        let v = m.eval(Point2::new(0.3, -0.2));
        let pos = MultiIndex { a: 1, b: 1 }.position();
        assert!((v[pos] + 0.06).abs() < 1e-15);
    }

    #[test]
    fn chebyshev_bounded_on_interval() {
        let spec = BasisSpec::chebyshev(15);
        for i in 0..100 {
            let x = -1.0 + 2.0 * i as f64 / 99.0;
            let v = spec.eval(Point2::new(x, 0.0));
            for (val, m) in v.iter().zip(spec.indices()) {
                if m.b == 0 {
                    assert!(val.abs() <= 1.0 + 1e-12, "T_{}({x}) = {val}", m.a);
                }
            }
        }
    }

    #[test]
    fn json_shape() {
        let s = serde_json::to_string(&BasisSpec::chebyshev(7)).unwrap();
        assert_eq!(s, r#"{"kind":"chebyshev","degree":7}"#);
        let back: BasisSpec = serde_json::from_str(&s).unwrap();
        assert_eq!(back, BasisSpec::chebyshev(7));
    }

    proptest! {
        #[test]
        fn position_round_trips(d in 0usize..25) {
            let spec = BasisSpec::monomial(d);
            for (i, m) in spec.indices().iter().enumerate() {
                prop_assert_eq!(m.position(), i);
                prop_assert_eq!(spec.indices()[m.position()], *m);
            }
        }
    }
}
