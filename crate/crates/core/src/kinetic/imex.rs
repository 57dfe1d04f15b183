use crate::error::{config, Result};

/// Double Butcher tableau of an IMEX Runge-Kutta method: explicit for
/// transport, diagonally implicit for relaxation.
#[derive(Clone, Debug, PartialEq)]
pub struct ImexTableau {
    explicit: Vec<Vec<f64>>,
    implicit: Vec<Vec<f64>>,
    explicit_weights: Vec<f64>,
    implicit_weights: Vec<f64>,
}

impl ImexTableau {
    pub fn new(
        explicit: Vec<Vec<f64>>,
        implicit: Vec<Vec<f64>>,
        explicit_weights: Vec<f64>,
        implicit_weights: Vec<f64>,
    ) -> Result<Self> {
        let n = explicit.len();
        if n == 0
            || implicit.len() != n
            || explicit_weights.len() != n
            || implicit_weights.len() != n
            || explicit.iter().chain(&implicit).any(|row| row.len() != n)
        {
            return config("IMEX tableau blocks must be square with matching weights");
        }
        for i in 0..n {
            if explicit[i][i..].iter().any(|&a| a != 0.0) {
                return config("explicit tableau must be strictly lower triangular");
            }
            if implicit[i][i + 1..].iter().any(|&a| a != 0.0) {
                return config("implicit tableau must be lower triangular");
            }
            if implicit[i][i] < 0.0 {
                return config("implicit diagonal must be non-negative");
            }
        }
        Ok(Self {
            explicit,
            implicit,
            explicit_weights,
            implicit_weights,
        })
    }

    /// The second-order, L-stable ARS(2,2,2) scheme with
    /// `g1 = 1 - 1/sqrt(2)` and `g2 = 1 - 1/(2 g1)`.
    pub fn ars222() -> Self {
        let g1 = 1.0 - 1.0 / 2f64.sqrt();
        let g2 = 1.0 - 1.0 / (2.0 * g1);
        Self::new(
            vec![vec![0.0, 0.0, 0.0], vec![g1, 0.0, 0.0], vec![g2, 1.0 - g2, 0.0]],
            vec![vec![0.0, 0.0, 0.0], vec![0.0, g1, 0.0], vec![0.0, 1.0 - g1, g1]],
            vec![g2, 1.0 - g2, 0.0],
            vec![0.0, 1.0 - g1, g1],
        )
        .expect("ARS(2,2,2) is well formed")
    }

    pub fn stages(&self) -> usize {
        self.explicit.len()
    }

    #[inline]
    pub fn explicit(&self, i: usize, j: usize) -> f64 {
        self.explicit[i][j]
    }

    #[inline]
    pub fn implicit(&self, i: usize, j: usize) -> f64 {
        self.implicit[i][j]
    }

    pub fn explicit_weight(&self, i: usize) -> f64 {
        self.explicit_weights[i]
    }

    pub fn implicit_weight(&self, i: usize) -> f64 {
        self.implicit_weights[i]
    }

    /// Whether the transport term of stage `j` enters a later stage or the update.
    pub(crate) fn needs_transport(&self, j: usize) -> bool {
        self.explicit_weights[j] != 0.0 || (j + 1..self.stages()).any(|i| self.explicit[i][j] != 0.0)
    }

    /// Whether the relaxation term of stage `j` enters a later stage or the update.
    pub(crate) fn needs_relaxation(&self, j: usize) -> bool {
        self.implicit_weights[j] != 0.0 || (j + 1..self.stages()).any(|i| self.implicit[i][j] != 0.0)
    }
}
