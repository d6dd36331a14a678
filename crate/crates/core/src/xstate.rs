//! Two-qubit X-states: density matrices whose only non-zero entries lie on
//! the diagonal and the anti-diagonal, in the basis |00>, |01>, |10>, |11>.

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateDensityMatrix {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    /// `<00|rho|11>`
    pub r14: Complex64,
    /// `<01|rho|10>`
    pub r23: Complex64,
}

impl XStateDensityMatrix {
    /// The state to second order in the coupling for identical detectors
    /// with excitation probability `p`, coherence `x` and correlation `c`.
    pub fn perturbative(p: f64, x: Complex64, c: Complex64) -> Self {
        XStateDensityMatrix { r11: 1.0 - 2.0 * p, r22: p, r33: p, r44: 0.0, r14: x.conj(), r23: c.conj() }
    }

    pub fn trace(&self) -> f64 {
        self.r11 + self.r22 + self.r33 + self.r44
    }

    /// Eigenvalues of the matrix itself, ascending.
    pub fn eigenvalues(&self) -> [f64; 4] {
        let (a0, a1) = block_eigenvalues(self.r11, self.r44, self.r14.norm());
        let (b0, b1) = block_eigenvalues(self.r22, self.r33, self.r23.norm());
        sorted([a0, a1, b0, b1])
    }

    /// Eigenvalues of the partial transpose on the second qubit, ascending.
    /// Transposition moves the `r14` coherence into the inner block and
    /// `r23` into the outer one.
    pub fn partial_transpose_eigenvalues(&self) -> [f64; 4] {
        let (a0, a1) = block_eigenvalues(self.r11, self.r44, self.r23.norm());
        let (b0, b1) = block_eigenvalues(self.r22, self.r33, self.r14.norm());
        sorted([a0, a1, b0, b1])
    }

    /// Sum of the magnitudes of the negative partial-transpose eigenvalues.
    pub fn negativity(&self) -> f64 {
        self.partial_transpose_eigenvalues().iter().filter(|&&v| v < 0.0).map(|v| -v).sum()
    }
}

pub fn negativity_xstate(rho: &XStateDensityMatrix) -> f64 {
    rho.negativity()
}

/// Eigenvalues of `[[a, c], [c*, b]]` with `|c| = m`, smaller first. The
/// smaller one comes from the determinant so that it keeps its relative
/// accuracy when it is close to zero.
fn block_eigenvalues(a: f64, b: f64, m: f64) -> (f64, f64) {
    let mean = 0.5 * (a + b);
    let half_diff = 0.5 * (a - b);
    let root = half_diff.hypot(m);
    let det = a * b - m * m;
    if mean > 0.0 {
        let hi = mean + root;
        (det / hi, hi)
    } else if mean < 0.0 {
        let lo = mean - root;
        (lo, det / lo)
    } else {
        (-root, root)
    }
}

fn sorted(mut v: [f64; 4]) -> [f64; 4] {
    v.sort_by(f64::total_cmp);
    v
}
