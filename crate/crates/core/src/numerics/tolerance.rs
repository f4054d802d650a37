use serde::{Deserialize, Serialize};

use super::NumericsError;

/// Which derivative route produced a quantity. Identity checks use the
/// tighter algebraic tolerance only when every derivative involved was
/// analytic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivPath {
    Analytic,
    Numeric,
}

impl DerivPath {
    /// The weaker of two paths.
    pub fn join(self, other: DerivPath) -> DerivPath {
        if self == DerivPath::Analytic && other == DerivPath::Analytic {
            DerivPath::Analytic
        } else {
            DerivPath::Numeric
        }
    }
}

/// Global tolerance policy shared by every geometric module.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct TolerancePolicy {
    /// Algebraic identities evaluated on analytic derivatives.
    pub tol_alg: f64,
    /// Identities involving finite-difference derivatives.
    pub tol_fd: f64,
    /// Finite-difference stencil step.
    pub h_fd: f64,
    /// Below this curvature the Frenet frame is undefined.
    pub kappa_min: f64,
    /// Below this value of EG - F^2 a chart point is irregular.
    pub reg_min: f64,
    /// Torsion on the finite-difference path.
    pub tol_torsion_fd: f64,
    /// Rectifying criterion |gamma . N| <= tol_rect.
    pub tol_rect: f64,
    /// Vanishing of k_g / k_n for curve classification.
    pub tol_class: f64,
    /// Metric equality across a surface pair.
    pub tol_iso: f64,
    /// Theorem identities, analytic path.
    pub tol_thm: f64,
    /// Theorem identities, finite-difference path.
    pub tol_thm_fd: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        Self {
            tol_alg: 1e-9,
            tol_fd: 1e-5,
            h_fd: 1e-4,
            kappa_min: 1e-8,
            reg_min: 1e-10,
            tol_torsion_fd: 1e-3,
            tol_rect: 1e-5,
            tol_class: 1e-6,
            tol_iso: 1e-9,
            tol_thm: 1e-5,
            tol_thm_fd: 1e-3,
        }
    }
}

impl TolerancePolicy {
    pub fn validate(&self) -> Result<(), NumericsError> {
        let fields = [
            ("tol_alg", self.tol_alg),
            ("tol_fd", self.tol_fd),
            ("h_fd", self.h_fd),
            ("kappa_min", self.kappa_min),
            ("reg_min", self.reg_min),
            ("tol_torsion_fd", self.tol_torsion_fd),
            ("tol_rect", self.tol_rect),
            ("tol_class", self.tol_class),
            ("tol_iso", self.tol_iso),
            ("tol_thm", self.tol_thm),
            ("tol_thm_fd", self.tol_thm_fd),
        ];
        for (name, value) in fields {
            if !(value > 0.0 && value.is_finite()) {
                return Err(NumericsError::InvalidTolerance(format!(
                    "{name} must be positive, got {value}"
                )));
            }
        }
        if self.tol_alg > self.tol_fd {
            return Err(NumericsError::InvalidTolerance(format!(
                "tol_alg ({}) must not exceed tol_fd ({})",
                self.tol_alg, self.tol_fd
            )));
        }
        Ok(())
    }

    /// Identity tolerance for a quantity produced along `path`.
    pub fn identity_tol(&self, path: DerivPath) -> f64 {
        match path {
            DerivPath::Analytic => self.tol_alg,
            DerivPath::Numeric => self.tol_fd,
        }
    }

    pub fn torsion_tol(&self, path: DerivPath) -> f64 {
        match path {
            DerivPath::Analytic => self.tol_alg,
            DerivPath::Numeric => self.tol_torsion_fd,
        }
    }

    pub fn theorem_tol(&self, path: DerivPath) -> f64 {
        match path {
            DerivPath::Analytic => self.tol_thm,
            DerivPath::Numeric => self.tol_thm_fd,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let p = TolerancePolicy::default();
        p.validate().unwrap();
        assert_eq!(p.tol_alg, 1e-9);
        assert_eq!(p.tol_fd, 1e-5);
        assert_eq!(p.h_fd, 1e-4);
        assert_eq!(p.kappa_min, 1e-8);
        assert_eq!(p.reg_min, 1e-10);
    }

    #[test]
    fn rejects_nonpositive_and_misordered() {
        let p = TolerancePolicy {
            h_fd: 0.0,
            ..Default::default()
        };
        assert!(p.validate().is_err());
        let p = TolerancePolicy {
            tol_alg: 1e-3,
            tol_fd: 1e-5,
            ..Default::default()
        };
        assert!(p.validate().is_err());
    }
}
