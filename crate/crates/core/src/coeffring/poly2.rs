use std::fmt;

use crate::coeffring::write_term;
use crate::coeffring::Polynomial;
use crate::scalar::Scalar;

/// Polynomial in `x` and `y`, stored as a rectangular grid with entry
/// `(i, j)` the coefficient of `x^i y^j`. Trailing zero rows and columns are
/// trimmed.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PlanePolynomial<S> {
    grid: Vec<Vec<S>>,
}

impl<S: Scalar> PlanePolynomial<S> {
    pub fn zero() -> Self {
        Self { grid: Vec::new() }
    }

    pub fn from_grid(grid: Vec<Vec<S>>) -> Self {
        let cols = grid.iter().map(Vec::len).max().unwrap_or(0);
        let mut grid: Vec<Vec<S>> = grid
            .into_iter()
            .map(|mut row| {
                row.resize(cols, S::zero());
                row
            })
            .collect();
        while grid.last().is_some_and(|r| r.iter().all(|c| c.is_zero())) {
            grid.pop();
        }
        let used = grid
            .iter()
            .filter_map(|r| r.iter().rposition(|c| !c.is_zero()))
            .max()
            .map_or(0, |j| j + 1);
        for row in &mut grid {
            row.truncate(used);
        }
        if used == 0 {
            grid.clear();
        }
        Self { grid }
    }

    /// `sum_j p_j(x) y^j` from the `y`-power coefficients.
    pub fn from_y_coefficients(parts: &[Polynomial<S>]) -> Self {
        let rows = parts.iter().filter_map(|p| p.degree()).max().map_or(0, |d| d + 1);
        let grid = (0..rows)
            .map(|i| parts.iter().map(|p| p.coeff(i)).collect())
            .collect();
        Self::from_grid(grid)
    }

    /// A polynomial in `x` alone.
    pub fn from_x(p: &Polynomial<S>) -> Self {
        Self::from_y_coefficients(std::slice::from_ref(p))
    }

    pub fn coeff(&self, i: usize, j: usize) -> S {
        self.grid
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(S::zero)
    }

    pub fn grid(&self) -> &[Vec<S>] {
        &self.grid
    }

    pub fn is_zero(&self) -> bool {
        self.grid.is_empty()
    }

    pub fn x_degree(&self) -> Option<usize> {
        self.grid.len().checked_sub(1)
    }

    pub fn y_degree(&self) -> Option<usize> {
        self.grid.first().and_then(|r| r.len().checked_sub(1))
    }

    /// Coefficient of `y^j` as a polynomial in `x`.
    pub fn y_coefficient(&self, j: usize) -> Polynomial<S> {
        Polynomial::from_coeffs(self.grid.iter().map(|r| r.get(j).cloned().unwrap_or_else(S::zero)).collect())
    }

    /// `F(x, q(x))`.
    pub fn substitute_y(&self, q: &Polynomial<S>) -> Polynomial<S> {
        let Some(ny) = self.y_degree() else {
            return Polynomial::zero();
        };
        (0..=ny).rev().fold(Polynomial::zero(), |acc, j| {
            &(&acc * q) + &self.y_coefficient(j)
        })
    }

    pub fn eval(&self, x: &S, y: &S) -> S {
        self.substitute_y(&Polynomial::constant(y.clone())).eval(x)
    }
}

impl<S: Scalar> fmt::Display for PlanePolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        // total degree descending, then x-power descending
        let mut terms: Vec<(usize, usize, &S)> = Vec::new();
        for (i, row) in self.grid.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    terms.push((i, j, c));
                }
            }
        }
        terms.sort_by_key(|t| std::cmp::Reverse((t.0 + t.1, t.0)));
        for (i, j, c) in terms {
            let neg = c.is_negative();
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            let mut mono = Vec::new();
            match i {
                0 => {}
                1 => mono.push("x".to_string()),
                n => mono.push(format!("x^{n}")),
            }
            match j {
                0 => {}
                1 => mono.push("y".to_string()),
                n => mono.push(format!("y^{n}")),
            }
            write_term(f, &c.abs(), &mono.join("*"))?;
            first = false;
        }
        Ok(())
    }
}

impl<S: Scalar> fmt::Debug for PlanePolynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly2({self})")
    }
}
