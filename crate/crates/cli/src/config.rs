use std::path::Path;

use serde::Deserialize;
use symper_core::formula::FormulaCaps;
use symper_core::verify::VerifyConfig;
use symper_core::ClosureCaps;

use crate::Format;

/// Optional TOML file; every key may be omitted. Command-line flags win.
///
/// ```toml
/// format = "json"
/// [caps]
/// max_nvars = 5
/// [formula]
/// max_depth = 10
/// [verify]
/// seed = 7
/// formulas = 1000
/// ```
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub format: Option<Format>,
    #[serde(default)]
    pub caps: CapsSection,
    #[serde(default)]
    pub formula: FormulaSection,
    #[serde(default)]
    pub verify: VerifySection,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapsSection {
    pub max_nvars: Option<usize>,
    pub max_arity: Option<usize>,
    pub max_derived: Option<usize>,
    pub max_conjunctions: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FormulaSection {
    pub max_depth: Option<usize>,
    pub max_nodes: Option<usize>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySection {
    pub seed: Option<u64>,
    pub formulas: Option<usize>,
    pub max_formula_vars: Option<usize>,
    pub max_formula_depth: Option<usize>,
    pub max_n: Option<u64>,
    pub max_m: Option<u64>,
    pub max_l: Option<u64>,
    pub intersections: Option<usize>,
    pub max_intersection_n: Option<u64>,
    pub descriptors: Option<usize>,
    pub families: Option<usize>,
    pub rho_prefix: Option<u64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}

/// Settings after merging defaults, the config file and flags.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub format: Format,
    pub caps: ClosureCaps,
    pub formula: FormulaCaps,
    pub verify: VerifyConfig,
}

impl Settings {
    pub fn from_file(file: FileConfig) -> Result<Self, String> {
        let mut caps = ClosureCaps::default();
        let c = &file.caps;
        set(&mut caps.max_nvars, c.max_nvars);
        set(&mut caps.max_arity, c.max_arity);
        set(&mut caps.max_derived, c.max_derived);
        set(&mut caps.max_conjunctions, c.max_conjunctions);

        let mut formula = FormulaCaps::default();
        set(&mut formula.max_depth, file.formula.max_depth);
        set(&mut formula.max_nodes, file.formula.max_nodes);

        let mut verify = VerifyConfig::default();
        let v = &file.verify;
        set(&mut verify.seed, v.seed);
        set(&mut verify.formulas, v.formulas);
        set(&mut verify.max_formula_vars, v.max_formula_vars);
        set(&mut verify.max_formula_depth, v.max_formula_depth);
        set(&mut verify.max_n, v.max_n);
        set(&mut verify.max_m, v.max_m);
        set(&mut verify.max_l, v.max_l);
        set(&mut verify.intersections, v.intersections);
        set(&mut verify.max_intersection_n, v.max_intersection_n);
        set(&mut verify.descriptors, v.descriptors);
        set(&mut verify.families, v.families);
        set(&mut verify.rho_prefix, v.rho_prefix);

        let s = Settings {
            format: file.format.unwrap_or(Format::Text),
            caps,
            formula,
            verify,
        };
        s.check()?;
        Ok(s)
    }

    pub fn check(&self) -> Result<(), String> {
        let c = &self.caps;
        let f = &self.formula;
        if [c.max_nvars, c.max_arity, c.max_derived, c.max_conjunctions, f.max_depth, f.max_nodes].contains(&0) {
            return Err("caps must be positive".into());
        }
        Ok(())
    }
}

fn set<T>(slot: &mut T, value: Option<T>) {
    if let Some(v) = value {
        *slot = v;
    }
}
