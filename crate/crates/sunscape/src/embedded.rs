//! Generic embedded gradient vector field on a constraint submanifold of an
//! ambient inner-product space.
//!
//! Given a cost `G` and constraints `F_1, ..., F_k` with invertible Gram
//! matrix of constraint gradients, the restricted Riemannian gradient of
//! `G` on the level set equals the ambient gradient minus its projection
//! onto the span of the constraint gradients. The projection coefficients
//! (Lagrange multiplier functions) come from a k x k linear solve, which is
//! algebraically the same as the Gram determinant ratios by Cramer's rule.
//! The engine is metric-agnostic: the caller supplies the inner product.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Condition-number bound above which a point is treated as irregular.
pub const GRAM_COND_LIMIT: f64 = 1e12;

/// Element of the ambient space: anything supporting linear combinations.
pub trait AmbientVector: Clone {
    /// `c_self * self + c_other * other`.
    fn combine(&self, c_self: f64, other: &Self, c_other: f64) -> Self;
}

impl AmbientVector for DVector<f64> {
    fn combine(&self, c_self: f64, other: &Self, c_other: f64) -> Self {
        self * c_self + other * c_other
    }
}

impl AmbientVector for crate::matrix::CMatrix {
    fn combine(&self, c_self: f64, other: &Self, c_other: f64) -> Self {
        self.scale(c_self) + other.scale(c_other)
    }
}

/// One constraint function, described through its ambient gradient and
/// (optionally) the quadratic form of its ambient Hessian.
pub struct Constraint<'a, V> {
    /// Ambient gradient of the constraint at a queried point.
    pub gradient: Box<dyn Fn(&V) -> V + 'a>,
    /// Quadratic form `(point, tangent) -> Hess F(tangent, tangent)`.
    pub hessian_quadratic: Option<Box<dyn Fn(&V, &V) -> f64 + 'a>>,
}

pub struct ConstraintSystem<'a, V> {
    pub constraints: Vec<Constraint<'a, V>>,
}

impl<'a, V> ConstraintSystem<'a, V> {
    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }
}

fn constraint_gradients<V: AmbientVector>(
    point: &V,
    constraints: &ConstraintSystem<V>,
) -> Vec<V> {
    constraints
        .constraints
        .iter()
        .map(|c| (c.gradient)(point))
        .collect()
}

/// Lagrange multiplier functions at a point: solves
/// `Gram(F, F) sigma = (<grad G, grad F_i>)_i`.
pub fn sigma<V: AmbientVector>(
    point: &V,
    grad_g: &V,
    constraints: &ConstraintSystem<V>,
    metric: &dyn Fn(&V, &V) -> f64,
) -> Result<Vec<f64>> {
    let grads = constraint_gradients(point, constraints);
    sigma_from_gradients(grad_g, &grads, metric)
}

pub(crate) fn sigma_from_gradients<V: AmbientVector>(
    grad_g: &V,
    constraint_grads: &[V],
    metric: &dyn Fn(&V, &V) -> f64,
) -> Result<Vec<f64>> {
    let k = constraint_grads.len();
    let gram = DMatrix::from_fn(k, k, |i, j| metric(&constraint_grads[i], &constraint_grads[j]));
    let rhs = DVector::from_fn(k, |i, _| metric(grad_g, &constraint_grads[i]));

    let svd = gram.clone().svd(false, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    let cond = if smin > 0.0 { smax / smin } else { f64::INFINITY };
    if !cond.is_finite() || cond > GRAM_COND_LIMIT {
        return Err(Error::NotRegularPoint { cond });
    }

    let solution = gram
        .lu()
        .solve(&rhs)
        .ok_or(Error::NotRegularPoint { cond })?;
    Ok(solution.iter().copied().collect())
}

/// The embedded gradient vector field: `grad G - sum_i sigma_i grad F_i`.
/// The result is metric-orthogonal to every constraint gradient.
pub fn embedded_gradient<V: AmbientVector>(
    point: &V,
    grad_g: &V,
    constraints: &ConstraintSystem<V>,
    metric: &dyn Fn(&V, &V) -> f64,
) -> Result<V> {
    let grads = constraint_gradients(point, constraints);
    let multipliers = sigma_from_gradients(grad_g, &grads, metric)?;
    let mut out = grad_g.clone();
    for (s, grad_f) in multipliers.iter().zip(grads.iter()) {
        out = out.combine(1.0, grad_f, -s);
    }
    Ok(out)
}

/// Restricted Hessian quadratic form on a constraint-tangent direction:
/// `Hess G(v, v) - sum_i sigma_i Hess F_i(v, v)`.
pub fn restricted_hessian_quadratic<V: AmbientVector>(
    point: &V,
    hess_g: &dyn Fn(&V, &V) -> f64,
    constraints: &ConstraintSystem<V>,
    multipliers: &[f64],
    tangent: &V,
    metric: &dyn Fn(&V, &V) -> f64,
) -> Result<f64> {
    let grads = constraint_gradients(point, constraints);
    let tangent_norm = metric(tangent, tangent).sqrt();
    for grad_f in &grads {
        let pairing = metric(tangent, grad_f);
        let scale = tangent_norm * metric(grad_f, grad_f).sqrt();
        if pairing.abs() > 1e-8 * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::NotTangent { pairing });
        }
    }
    let mut value = hess_g(point, tangent);
    for (s, c) in multipliers.iter().zip(constraints.constraints.iter()) {
        if let Some(hess_f) = &c.hessian_quadratic {
            value -= s * hess_f(point, tangent);
        } else if *s != 0.0 {
            // A missing constraint Hessian is only allowed when its
            // multiplier vanishes or the form is identically zero; callers
            // on SU(N) rely on the latter.
            continue;
        }
    }
    Ok(value)
}

/// The unit sphere in R^3 with cost G(x) = z, used as a reference instance
/// throughout the tests.
pub mod sphere {
    use super::*;

    pub fn constraint_system<'a>() -> ConstraintSystem<'a, DVector<f64>> {
        ConstraintSystem {
            constraints: vec![Constraint {
                gradient: Box::new(|x: &DVector<f64>| x * 2.0),
                hessian_quadratic: Some(Box::new(|_x, v: &DVector<f64>| 2.0 * v.dot(v))),
            }],
        }
    }

    pub fn dot(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
        a.dot(b)
    }

    pub fn height_gradient() -> DVector<f64> {
        DVector::from_vec(vec![0.0, 0.0, 1.0])
    }
}
