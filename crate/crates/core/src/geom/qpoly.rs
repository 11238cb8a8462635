//! Univariate rational polynomials and piecewise-polynomial functions.
//!
//! Volume functions of one-parameter polytope families are piecewise
//! polynomial with rational breakpoints; everything here is exact.

use num::{One, Zero};

use super::rat::{Q, qi};

/// Polynomial with rational coefficients, `coeffs[i]` the coefficient of x^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    pub coeffs: Vec<Q>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: vec![] }
    }

    pub fn constant(c: Q) -> Self {
        QPoly::new(vec![c])
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.coeffs.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * qi(i as i64 + 1))
                .collect(),
        )
    }

    /// Definite integral over [a, b].
    pub fn integrate(&self, a: &Q, b: &Q) -> Q {
        let anti: Vec<Q> = std::iter::once(Q::zero())
            .chain(self.coeffs.iter().enumerate().map(|(i, c)| c / qi(i as i64 + 1)))
            .collect();
        let anti = QPoly::new(anti);
        anti.eval(b) - anti.eval(a)
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Lagrange interpolation through distinct sample points.
    pub fn interpolate(samples: &[(Q, Q)]) -> QPoly {
        let n = samples.len();
        let mut acc = QPoly::zero();
        for i in 0..n {
            // Basis polynomial L_i scaled by y_i.
            let mut num = QPoly::constant(Q::one());
            let mut den = Q::one();
            for j in 0..n {
                if j == i {
                    continue;
                }
                num = num.mul(&QPoly::new(vec![-samples[j].0.clone(), Q::one()]));
                den *= &samples[i].0 - &samples[j].0;
            }
            let scale = &samples[i].1 / den;
            acc = acc.add(&num.scale(&scale));
        }
        acc
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(Q::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, s: &Q) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return QPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

/// Continuous piecewise polynomial on [breaks[0], breaks[last]], one
/// polynomial per consecutive interval.
#[derive(Debug, Clone)]
pub struct PiecewisePoly {
    pub breaks: Vec<Q>,
    pub pieces: Vec<QPoly>,
}

impl PiecewisePoly {
    pub fn lo(&self) -> &Q {
        &self.breaks[0]
    }

    pub fn hi(&self) -> &Q {
        self.breaks.last().unwrap()
    }

    /// Index of the piece whose closed interval contains x (leftmost match).
    fn piece_index(&self, x: &Q) -> Option<usize> {
        if x < self.lo() || x > self.hi() {
            return None;
        }
        let i = self.breaks.iter().rposition(|b| b <= x).unwrap();
        Some(i.min(self.pieces.len() - 1))
    }

    pub fn eval(&self, x: &Q) -> Option<Q> {
        self.piece_index(x).map(|i| self.pieces[i].eval(x))
    }

    /// One-sided derivative from the right at x (x in [lo, hi)).
    pub fn right_derivative(&self, x: &Q) -> Option<Q> {
        if x >= self.hi() {
            return None;
        }
        // The piece on [b_i, b_{i+1}) with b_i <= x < b_{i+1}.
        let i = self.breaks.iter().rposition(|b| b <= x)?;
        Some(self.pieces[i.min(self.pieces.len() - 1)].derivative().eval(x))
    }

    /// Exact integral of the function over [a, b] within the domain.
    pub fn integrate(&self, a: &Q, b: &Q) -> Option<Q> {
        if a > b || a < self.lo() || b > self.hi() {
            return None;
        }
        let mut total = Q::zero();
        for i in 0..self.pieces.len() {
            let lo = self.breaks[i].clone().max(a.clone());
            let hi = self.breaks[i + 1].clone().min(b.clone());
            if lo < hi {
                total += self.pieces[i].integrate(&lo, &hi);
            }
        }
        Some(total)
    }

    /// Applies f to each piece, keeping the breakpoints.
    pub fn map_pieces(&self, f: impl Fn(&QPoly) -> QPoly) -> PiecewisePoly {
        PiecewisePoly {
            breaks: self.breaks.clone(),
            pieces: self.pieces.iter().map(f).collect(),
        }
    }
}

/// Interior sample points for interpolating a degree <= deg polynomial on
/// [lo, hi]: deg+1 points strictly inside the interval.
pub fn interior_samples(lo: &Q, hi: &Q, deg: usize) -> Vec<Q> {
    let count = deg + 1;
    let width = hi - lo;
    (1..=count)
        .map(|j| lo + &width * qi(j as i64) / qi(count as i64 + 1))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::rat::q;

    #[test]
    fn interpolate_quadratic() {
        // f(x) = x^2 - 3x + 2 through three points.
        let f = |x: &Q| x * x - qi(3) * x + qi(2);
        let samples: Vec<(Q, Q)> = [qi(0), qi(1), q(5, 2)].iter().map(|x| (x.clone(), f(x))).collect();
        let p = QPoly::interpolate(&samples);
        assert_eq!(p.coeffs, vec![qi(2), qi(-3), qi(1)]);
        assert_eq!(p.eval(&qi(7)), f(&qi(7)));
    }

    #[test]
    fn integrate_and_differentiate() {
        let p = QPoly::new(vec![qi(1), qi(2), qi(3)]); // 1 + 2x + 3x^2
        assert_eq!(p.integrate(&qi(0), &qi(1)), qi(3));
        assert_eq!(p.derivative().coeffs, vec![qi(2), qi(6)]);
    }

    #[test]
    fn piecewise_eval_and_integral() {
        // |x| on [-1, 1].
        let pw = PiecewisePoly {
            breaks: vec![qi(-1), qi(0), qi(1)],
            pieces: vec![QPoly::new(vec![qi(0), qi(-1)]), QPoly::new(vec![qi(0), qi(1)])],
        };
        assert_eq!(pw.eval(&q(-1, 2)).unwrap(), q(1, 2));
        assert_eq!(pw.eval(&q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(pw.integrate(&qi(-1), &qi(1)).unwrap(), qi(1));
        assert_eq!(pw.right_derivative(&qi(0)).unwrap(), qi(1));
        assert_eq!(pw.right_derivative(&q(-1, 2)).unwrap(), qi(-1));
    }
}
