//! Chebyshev-Lobatto grid on [0, 1] with barycentric Lagrange evaluation.
//!
//! Nodes are the Chebyshev points of the second kind mapped to [0, 1],
//! stored ascending; the barycentric weights are (-1)^j, halved at the two
//! endpoints. The second barycentric form is numerically stable for any
//! evaluation point except an exact node hit, which is special-cased.

use std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct ChebyshevGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl ChebyshevGrid {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "need at least two nodes");
        let m = (n - 1) as f64;
        let nodes = (0..n)
            .map(|j| (1.0 - (PI * j as f64 / m).cos()) / 2.0)
            .collect();
        let mut weights: Vec<f64> = (0..n)
            .map(|j| if j % 2 == 0 { 1.0 } else { -1.0 })
            .collect();
        weights[0] *= 0.5;
        weights[n - 1] *= 0.5;
        ChebyshevGrid { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor requires n >= 2
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Values of all Lagrange basis polynomials at y, written into `row`.
    pub fn basis_row(&self, y: f64, row: &mut [f64]) {
        assert_eq!(row.len(), self.nodes.len());
        if let Some(hit) = self.nodes.iter().position(|&x| x == y) {
            row.fill(0.0);
            row[hit] = 1.0;
            return;
        }
        let mut denom = 0.0;
        for (r, (&x, &w)) in row.iter_mut().zip(self.nodes.iter().zip(&self.weights)) {
            *r = w / (y - x);
            denom += *r;
        }
        for r in row.iter_mut() {
            *r /= denom;
        }
    }

    /// Interpolate node values at y.
    pub fn interpolate(&self, values: &[f64], y: f64) -> f64 {
        let mut row = vec![0.0; self.len()];
        self.basis_row(y, &mut row);
        row.iter().zip(values).map(|(l, v)| l * v).sum()
    }
}
