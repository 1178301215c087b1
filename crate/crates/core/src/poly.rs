//! Dense real-coefficient polynomials.
//!
//! The carrier for the Dunkl derivative and for the moment test functions
//! `1, t, t²`. Coefficient `coeffs[j]` multiplies `x^j`; the zero polynomial
//! is the empty (or all-zero) list.

#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    /// The monomial `x^degree`.
    pub fn monomial(degree: usize) -> Self {
        let mut coeffs = vec![0.0; degree + 1];
        coeffs[degree] = 1.0;
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `x^j`, zero beyond the stored length.
    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    /// Highest index with a nonzero coefficient; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|&c| c != 0.0)
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|j| self.coeff(j) + other.coeff(j)).collect();
        Polynomial { coeffs }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial { coeffs }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_and_zero() {
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(Polynomial::new(vec![0.0, 0.0]).degree(), None);
        assert!(Polynomial::new(vec![0.0]).is_zero());
        assert_eq!(Polynomial::new(vec![1.0, 0.0, 3.0, 0.0]).degree(), Some(2));
        assert_eq!(Polynomial::monomial(5).degree(), Some(5));
    }

    #[test]
    fn horner_eval() {
        // 2 + 3x + x^2 at x = 2 -> 12
        let p = Polynomial::new(vec![2.0, 3.0, 1.0]);
        assert_eq!(p.eval(2.0), 12.0);
        assert_eq!(Polynomial::zero().eval(7.0), 0.0);
    }

    #[test]
    fn product() {
        // (1 + x)(1 - x) = 1 - x^2
        let p = Polynomial::new(vec![1.0, 1.0]).mul(&Polynomial::new(vec![1.0, -1.0]));
        assert_eq!(p.coeffs(), &[1.0, 0.0, -1.0]);
    }
}
