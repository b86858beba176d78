//! Nelder-Mead downhill simplex with the standard coefficients
//! (reflection 1, expansion 2, contraction 0.5, shrink 0.5).

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_iterations: usize,
    /// Stop when `f_worst - f_best <= tolerance * |f_best|` on the simplex.
    pub tolerance: f64,
    /// Also stop once every vertex lies within this distance (max norm)
    /// of the best one; catches objectives flattened to rounding noise.
    pub x_tolerance: f64,
    /// Initial vertex offset along each coordinate.
    pub initial_step: f64,
    /// Maximum restarts from the best point after local convergence.
    pub max_restarts: usize,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions {
            max_iterations: 10_000,
            tolerance: 1e-8,
            x_tolerance: 1e-12,
            initial_step: 0.2,
            max_restarts: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimplexResult {
    pub x: Vec<f64>,
    pub f: f64,
    pub iterations: usize,
    pub evaluations: usize,
    pub converged: bool,
    /// Best objective after each iteration.
    pub history: Vec<f64>,
}

struct Simplex {
    vertices: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl Simplex {
    fn new<F: FnMut(&[f64]) -> f64>(f: &mut F, x0: &[f64], step: f64, evals: &mut usize) -> Self {
        let mut vertices = vec![x0.to_vec()];
        for i in 0..x0.len() {
            let mut v = x0.to_vec();
            v[i] += step;
            vertices.push(v);
        }
        let values = vertices.iter().map(|v| f(v)).collect::<Vec<_>>();
        *evals += vertices.len();
        let mut s = Simplex { vertices, values };
        s.sort();
        s
    }

    // Stable sort keeps the ordering deterministic on ties; NaN sorts last.
    fn sort(&mut self) {
        let mut order: Vec<usize> = (0..self.values.len()).collect();
        order.sort_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
        self.vertices = order.iter().map(|&i| self.vertices[i].clone()).collect();
        self.values = order.iter().map(|&i| self.values[i]).collect();
    }

    fn best(&self) -> (&[f64], f64) {
        (&self.vertices[0], self.values[0])
    }

    fn worst(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    fn diameter(&self) -> f64 {
        let best = &self.vertices[0];
        self.vertices[1..]
            .iter()
            .flat_map(|v| v.iter().zip(best).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max)
    }
}

fn along(centroid: &[f64], worst: &[f64], coeff: f64) -> Vec<f64> {
    centroid
        .iter()
        .zip(worst)
        .map(|(c, w)| c + coeff * (c - w))
        .collect()
}

/// Minimizes `f` starting from `x0`.
pub fn minimize<F>(mut f: F, x0: &[f64], options: &SimplexOptions) -> SimplexResult
where
    F: FnMut(&[f64]) -> f64,
{
    let n = x0.len();
    let mut evaluations = 0;
    let mut iterations = 0;
    let mut history = Vec::new();
    let mut simplex = Simplex::new(&mut f, x0, options.initial_step, &mut evaluations);
    let mut restarts = 0;
    let mut converged = false;
    let mut last_converged = None;

    while iterations < options.max_iterations {
        let (_, f_best) = simplex.best();
        let spread = simplex.worst() - f_best;
        if spread <= options.tolerance * f_best.abs() || spread == 0.0 || simplex.diameter() <= options.x_tolerance {
            // Converged locally. Restart around the best point until a
            // restart stops paying off; the best point is a vertex of the
            // fresh simplex, so the best value never rises.
            let stalled = last_converged
                .is_some_and(|prev: f64| prev - f_best <= options.tolerance * f_best.abs());
            if stalled || restarts == options.max_restarts {
                converged = true;
                break;
            }
            last_converged = Some(f_best);
            restarts += 1;
            let x_best = simplex.best().0.to_vec();
            simplex = Simplex::new(&mut f, &x_best, options.initial_step, &mut evaluations);
            continue;
        }
        iterations += 1;

        let centroid: Vec<f64> = (0..n)
            .map(|j| simplex.vertices[..n].iter().map(|v| v[j]).sum::<f64>() / n as f64)
            .collect();
        let worst = simplex.vertices[n].clone();
        let f_worst = simplex.values[n];
        let f_best = simplex.values[0];
        let f_second = simplex.values[n - 1];

        let xr = along(&centroid, &worst, REFLECT);
        let fr = f(&xr);
        evaluations += 1;

        if fr < f_best {
            let xe = along(&centroid, &worst, EXPAND);
            let fe = f(&xe);
            evaluations += 1;
            if fe < fr {
                simplex.vertices[n] = xe;
                simplex.values[n] = fe;
            } else {
                simplex.vertices[n] = xr;
                simplex.values[n] = fr;
            }
        } else if fr < f_second {
            simplex.vertices[n] = xr;
            simplex.values[n] = fr;
        } else {
            let (xc, fc) = if fr < f_worst {
                let xc = along(&centroid, &worst, CONTRACT * REFLECT);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(&centroid, &worst, -CONTRACT);
                let fc = f(&xc);
                (xc, fc)
            };
            evaluations += 1;
            if fc < f_worst.min(fr) {
                simplex.vertices[n] = xc;
                simplex.values[n] = fc;
            } else {
                let best = simplex.vertices[0].clone();
                for i in 1..=n {
                    let shrunk: Vec<f64> = best
                        .iter()
                        .zip(&simplex.vertices[i])
                        .map(|(b, v)| b + SHRINK * (v - b))
                        .collect();
                    simplex.values[i] = f(&shrunk);
                    simplex.vertices[i] = shrunk;
                }
                evaluations += n;
            }
        }
        simplex.sort();
        history.push(simplex.values[0]);
    }

    let (x, fx) = simplex.best();
    SimplexResult {
        x: x.to_vec(),
        f: fx,
        iterations,
        evaluations,
        converged,
        history,
    }
}
