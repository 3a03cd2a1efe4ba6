//! Named parameter sets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::SymbolParams;

#[derive(Debug, Clone, Serialize)]
pub struct Preset {
    pub name: &'static str,
    pub description: &'static str,
    pub params: SymbolParams,
    /// Needs float arithmetic somewhere (the exponential factor of Z).
    pub float_only: bool,
}

pub fn preset_catalog() -> Vec<Preset> {
    vec![
        Preset {
            name: "trivial",
            description: "all parameters zero; φ± = 1",
            params: SymbolParams::trivial(),
            float_only: false,
        },
        Preset {
            name: "widom-1",
            description: "φ₊ = 1 + 0.4z, φ₋ = (1 − 0.4/z)⁻¹",
            params: SymbolParams::widom(&[0.4], &[0.4]),
            float_only: false,
        },
        Preset {
            name: "widom-2",
            description: "r = {0.4, 0.3}, s = {0.35}",
            params: SymbolParams::widom(&[0.4, 0.3], &[0.35]),
            float_only: false,
        },
        Preset {
            name: "geometric",
            description: "single α⁺ = α⁻ = 0.5",
            params: SymbolParams {
                alpha_plus: vec![0.5],
                alpha_minus: vec![0.5],
                ..SymbolParams::default()
            },
            float_only: false,
        },
        Preset {
            name: "mixed",
            description: "α⁺ = 0.3, β⁺ = 0.2, α⁻ = 0.25, β⁻ = 0.15",
            params: SymbolParams {
                alpha_plus: vec![0.3],
                beta_plus: vec![0.2],
                alpha_minus: vec![0.25],
                beta_minus: vec![0.15],
                ..SymbolParams::default()
            },
            float_only: false,
        },
        Preset {
            name: "exp",
            description: "γ⁺ = γ⁻ = 0.5, no α or β",
            params: SymbolParams {
                gamma_plus: 0.5,
                gamma_minus: 0.5,
                ..SymbolParams::default()
            },
            float_only: true,
        },
    ]
}

pub fn preset(name: &str) -> Result<Preset> {
    preset_catalog()
        .into_iter()
        .find(|p| p.name == name)
        .ok_or_else(|| {
            let names: Vec<&str> = preset_catalog().iter().map(|p| p.name).collect();
            Error::Config(format!("unknown preset `{name}`; known presets: {}", names.join(", ")))
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};
    use crate::schur::cauchy_z;

    #[test]
    fn catalog_is_valid() {
        let cat = preset_catalog();
        assert!(cat.iter().any(|p| p.name == "widom-1"));
        for p in &cat {
            p.params.validate().unwrap();
        }
        assert!(preset("nope").is_err());
    }

    #[test]
    fn geometric_normalization() {
        let g = preset("geometric").unwrap();
        assert_eq!(cauchy_z::<Rational>(&g.params).unwrap(), ratio(4, 3));
    }
}
