//! Single-impurity Anderson model builders.
//!
//! Mode layout for `N` bath sites: spin-up modes `0..=N` (impurity at 0), then
//! spin-down modes `N+1..=2N+1` (impurity at `N+1`).

use serde::{Deserialize, Serialize};

use crate::error::{Result, SwtError};
use crate::fermion::FermionOperator;

#[derive(Debug, Clone, PartialEq)]
pub struct SiamParams {
    pub n_bath: usize,
    pub u: f64,
    pub mu: f64,
    /// Two-site model: `[ε₂]`. Chain model: `[ε₀, ε₁, …, ε_N]`.
    pub eps: Vec<f64>,
    /// `[V₁, …, V_N]`
    pub v: Vec<f64>,
}

impl SiamParams {
    pub fn two_site(u: f64, mu: f64, eps2: f64, v: f64) -> Self {
        SiamParams {
            n_bath: 1,
            u,
            mu,
            eps: vec![eps2],
            v: vec![v],
        }
    }

    pub fn chain(u: f64, mu: f64, eps: Vec<f64>, v: Vec<f64>) -> Self {
        SiamParams {
            n_bath: v.len(),
            u,
            mu,
            eps,
            v,
        }
    }

    pub fn n_modes(&self) -> usize {
        2 * (self.n_bath + 1)
    }

    pub fn up(&self, site: usize) -> usize {
        site
    }

    pub fn down(&self, site: usize) -> usize {
        self.n_bath + 1 + site
    }

    fn check_common(&self) -> Result<()> {
        if self.n_bath == 0 {
            return Err(SwtError::InvalidParams("n_bath must be at least 1".into()));
        }
        if self.v.len() != self.n_bath {
            return Err(SwtError::InvalidParams(format!(
                "expected {} hybridizations, got {}",
                self.n_bath,
                self.v.len()
            )));
        }
        let all = [self.u, self.mu].into_iter().chain(self.eps.iter().copied()).chain(self.v.iter().copied());
        if all.into_iter().any(|p| !p.is_finite()) {
            return Err(SwtError::InvalidParams("parameters must be finite".into()));
        }
        if self.u < 0.0 {
            return Err(SwtError::InvalidParams(format!("U must be non-negative, got {}", self.u)));
        }
        Ok(())
    }
}

/// `U n_{0↓} n_{0↑} − μ Σ_σ n_{0σ} + ε₂ Σ_σ n_{1σ} + V Σ_σ (c†_{0σ} c_{1σ} + h.c.)` on 4 modes.
pub fn siam_two_site(p: &SiamParams) -> Result<FermionOperator> {
    p.check_common()?;
    if p.n_bath != 1 || p.eps.len() != 1 {
        return Err(SwtError::InvalidParams(format!(
            "two-site model needs n_bath = 1 and one bath level, got n_bath = {} and {} levels",
            p.n_bath,
            p.eps.len()
        )));
    }
    let mut h = FermionOperator::new(4);
    h.add_density_density(p.u, p.down(0), p.up(0))?;
    for spin in [p.up(0), p.down(0)] {
        h.add_number(-p.mu, spin)?;
    }
    for spin in [p.up(1), p.down(1)] {
        h.add_number(p.eps[0], spin)?;
    }
    for (imp, bath) in [(p.up(0), p.up(1)), (p.down(0), p.down(1))] {
        h.add_hopping(p.v[0], imp, bath)?;
    }
    Ok(h)
}

/// `Σ_{i,σ} V_i (c†_{0σ} c_{iσ} + h.c.) + U n_{0↓} n_{0↑} + Σ_{i,σ} (ε_i − μ) n_{iσ}` on `2(N+1)` modes.
pub fn siam_chain(p: &SiamParams) -> Result<FermionOperator> {
    p.check_common()?;
    if p.eps.len() != p.n_bath + 1 {
        return Err(SwtError::InvalidParams(format!(
            "chain model needs {} on-site energies, got {}",
            p.n_bath + 1,
            p.eps.len()
        )));
    }
    let mut h = FermionOperator::new(p.n_modes());
    for i in 1..=p.n_bath {
        h.add_hopping(p.v[i - 1], p.up(0), p.up(i))?;
        h.add_hopping(p.v[i - 1], p.down(0), p.down(i))?;
    }
    h.add_density_density(p.u, p.down(0), p.up(0))?;
    for i in 0..=p.n_bath {
        h.add_number(p.eps[i] - p.mu, p.up(i))?;
        h.add_number(p.eps[i] - p.mu, p.down(i))?;
    }
    Ok(h)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelKind {
    #[serde(rename = "siam2")]
    TwoSite,
    #[serde(rename = "siam_chain")]
    Chain,
}

/// `{"model": "siam2"|"siam_chain", "U": …, "mu": …, "eps": […], "V": […]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub model: ModelKind,
    #[serde(rename = "U")]
    pub u: f64,
    pub mu: f64,
    pub eps: Vec<f64>,
    #[serde(rename = "V")]
    pub v: Vec<f64>,
}

impl ModelConfig {
    pub fn params(&self) -> SiamParams {
        SiamParams {
            n_bath: self.v.len(),
            u: self.u,
            mu: self.mu,
            eps: self.eps.clone(),
            v: self.v.clone(),
        }
    }

    pub fn build(&self) -> Result<FermionOperator> {
        let p = self.params();
        match self.model {
            ModelKind::TwoSite => siam_two_site(&p),
            ModelKind::Chain => siam_chain(&p),
        }
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex64;

    use super::*;
    use crate::fermion::jw_map;
    use crate::pauli::PauliSum;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn two_site_golden_coefficients() {
        let q = jw_map(&siam_two_site(&SiamParams::two_site(4.0, 1.0, 0.5, 0.2)).unwrap()).unwrap();
        let expect = PauliSum::from_labels(
            4,
            [
                ("IIII", r(4.0 / 4.0 - 1.0 + 0.5)),
                ("ZIZI", r(1.0)),
                ("ZIII", r(-0.5)),
                ("IIZI", r(-0.5)),
                ("IZII", r(-0.25)),
                ("IIIZ", r(-0.25)),
                ("XXII", r(0.1)),
                ("YYII", r(0.1)),
                ("IIXX", r(0.1)),
                ("IIYY", r(0.1)),
            ],
        )
        .unwrap();
        assert!(q.max_diff(&expect).unwrap() < 1e-12, "{q}");
        assert_eq!(q.len(), expect.len());
    }

    #[test]
    fn two_site_without_hybridization_is_diagonal() {
        let q = jw_map(&siam_two_site(&SiamParams::two_site(3.0, 0.7, -0.2, 0.0)).unwrap()).unwrap();
        assert!(q.strings().all(|s| s.is_diagonal()));
    }

    #[test]
    fn pure_hopping() {
        let q = jw_map(&siam_two_site(&SiamParams::two_site(0.0, 0.0, 0.0, 1.0)).unwrap()).unwrap();
        let expect = PauliSum::from_labels(
            4,
            [("XXII", r(0.5)), ("YYII", r(0.5)), ("IIXX", r(0.5)), ("IIYY", r(0.5))],
        )
        .unwrap();
        assert_eq!(q, expect);
    }

    #[test]
    fn chain_with_one_bath_site_matches_two_site() {
        // (ε₀ − μ) = −μ and (ε₁ − μ) = ε₂ reproduce the two-site parameterization.
        let (u, mu, e2, v) = (3.0, 0.8, 0.3, 0.25);
        let two = jw_map(&siam_two_site(&SiamParams::two_site(u, mu, e2, v)).unwrap()).unwrap();
        let chain = jw_map(&siam_chain(&SiamParams::chain(u, mu, vec![0.0, e2 + mu], vec![v])).unwrap())
            .unwrap();
        assert!(two.max_diff(&chain).unwrap() < 1e-14);
    }

    #[test]
    fn chain_has_z_tails() {
        let p = SiamParams::chain(4.0, 1.0, vec![0.1, 0.5, -0.3, 0.9], vec![0.2, 0.15, 0.1]);
        let q = jw_map(&siam_chain(&p).unwrap()).unwrap();
        for label in ["XZZXIIII", "YZZYIIII", "IIIIXZZX", "IIIIYZZY", "XZXIIIII", "IIIIXXII"] {
            assert!(q.coeff_of(label).norm() > 0.0, "missing {label}");
        }
        assert!((q.coeff_of("XZZXIIII").re - 0.05).abs() < 1e-15);
    }

    #[test]
    fn chain_without_hybridization_is_diagonal() {
        let p = SiamParams::chain(4.0, 1.0, vec![0.1, 0.5, -0.3], vec![0.0, 0.0]);
        let q = jw_map(&siam_chain(&p).unwrap()).unwrap();
        assert!(q.strings().all(|s| s.is_diagonal()));
    }

    #[test]
    fn shape_errors() {
        assert!(siam_two_site(&SiamParams::chain(1.0, 0.0, vec![0.0, 0.0, 0.0], vec![0.1, 0.1])).is_err());
        assert!(siam_chain(&SiamParams::chain(1.0, 0.0, vec![0.0], vec![0.1])).is_err());
        assert!(siam_chain(&SiamParams::chain(-1.0, 0.0, vec![0.0, 0.0], vec![0.1])).is_err());
        assert!(siam_chain(&SiamParams::chain(1.0, 0.0, vec![0.0], vec![])).is_err());
    }

    #[test]
    fn config_json() {
        let text = r#"{"model": "siam2", "U": 4.0, "mu": 1.0, "eps": [0.5], "V": [0.2]}"#;
        let cfg: ModelConfig = serde_json::from_str(text).unwrap();
        assert_eq!(cfg.model, ModelKind::TwoSite);
        assert_eq!(cfg.params(), SiamParams::two_site(4.0, 1.0, 0.5, 0.2));
        assert!(cfg.build().is_ok());
    }
}
