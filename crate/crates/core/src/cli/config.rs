use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::criteria::{CheckOptions, FurstenbergFamily, SeriesTolerances};
use crate::dynamics::IncreasingSequence;
use crate::error::{Error, Result};

/// Prefix of the environment variables that override horizons.
pub const ENV_PREFIX: &str = "SHIFTDYN_";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyName {
    #[serde(rename = "example_3_2")]
    Rational,
    #[serde(rename = "example_3_6")]
    DisjointPair,
    #[serde(rename = "example_3_11")]
    Split,
    Constant,
    Custom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnitaryChoice {
    /// `I` for one shift; `(I, B)` for the pair.
    #[default]
    Standard,
    /// `B`, or `(B^{-1}, B)` for the pair.
    Alternate,
    InverseShift,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyConfig {
    pub name: FamilyName,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub unitary: UnitaryChoice,
    /// `constant`: `W_j e_k = scale · e_{k+offset}`; `custom`: the offset of the table operator.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    /// `custom`: coefficients `[[k, c(k)], …]`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub table: Vec<(i64, f64)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub default: Option<f64>,
}

impl FamilyConfig {
    pub fn custom_table(&self) -> BTreeMap<i64, f64> {
        self.table.iter().copied().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TruncationConfig {
    /// Dense window `[-M, M]`.
    pub half_width: u32,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        TruncationConfig { half_width: 40 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowConfig {
    pub j: u32,
    pub m: u32,
}

impl Default for WindowConfig {
    fn default() -> Self {
        WindowConfig { j: 1, m: 1 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Arithmetic {
    pub start: u64,
    pub step: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceSpec {
    Arithmetic(Arithmetic),
    Explicit(Vec<u64>),
}

impl SequenceSpec {
    /// The first `count` terms; an explicit list is used as given.
    pub fn build(&self, count: usize) -> Result<IncreasingSequence> {
        match self {
            SequenceSpec::Arithmetic(a) => IncreasingSequence::arithmetic(a.start, a.step, count),
            SequenceSpec::Explicit(v) => IncreasingSequence::new(v.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SequenceConfig {
    pub nk: SequenceSpec,
    pub tn: SequenceSpec,
}

impl Default for SequenceConfig {
    fn default() -> Self {
        let unit = SequenceSpec::Arithmetic(Arithmetic { start: 1, step: 1 });
        SequenceConfig { nk: unit.clone(), tn: unit }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HorizonConfig {
    pub l_max: usize,
    pub n: u64,
    pub k_count: usize,
}

impl Default for HorizonConfig {
    fn default() -> Self {
        HorizonConfig { l_max: 500, n: 200, k_count: 8 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ToleranceConfig {
    pub eps: f64,
    pub limit: f64,
    pub periodic: f64,
    pub series: SeriesTolerances,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        ToleranceConfig { eps: 0.1, limit: 1e-6, periodic: 1e-10, series: SeriesTolerances::default() }
    }
}

/// `F_{J,m}` inputs for witnesses and scans: `x_j = x_scale · P_m` and
/// `y^{(l)}_j = y_scales[l] · P_m` on `[J]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VectorConfig {
    pub x_scale: f64,
    pub y_scales: Vec<f64>,
}

impl Default for VectorConfig {
    fn default() -> Self {
        VectorConfig { x_scale: 1.0, y_scales: vec![1.0] }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NormsConfig {
    pub i_min: i64,
    pub i_max: i64,
    pub l_min: u64,
    pub l_max: u64,
}

impl Default for NormsConfig {
    fn default() -> Self {
        NormsConfig { i_min: 0, i_max: 3, l_min: 2, l_max: 10 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct StarConfig {
    /// Claimed `N_m`; the family's own threshold when absent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nm: Option<u64>,
    pub probe: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PeriodicConfig {
    /// Block `{j ↦ P_m}`.
    pub coordinate: i64,
    pub period: u64,
    pub copies: u64,
}

impl Default for PeriodicConfig {
    fn default() -> Self {
        PeriodicConfig { coordinate: 0, period: 4, copies: 20 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Kv,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct OutputConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub family: FamilyConfig,
    #[serde(default)]
    pub truncation: TruncationConfig,
    #[serde(default)]
    pub window: WindowConfig,
    #[serde(default)]
    pub sequence: SequenceConfig,
    #[serde(default)]
    pub horizons: HorizonConfig,
    #[serde(default)]
    pub tolerances: ToleranceConfig,
    #[serde(default = "default_furstenberg")]
    pub furstenberg: FurstenbergFamily,
    #[serde(default)]
    pub vectors: VectorConfig,
    #[serde(default)]
    pub norms: NormsConfig,
    #[serde(default)]
    pub star: StarConfig,
    #[serde(default)]
    pub periodic: PeriodicConfig,
    #[serde(default)]
    pub output: OutputConfig,
}

fn default_furstenberg() -> FurstenbergFamily {
    FurstenbergFamily::Cof
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::ConfigInvalid(msg.into())
}

impl RunConfig {
    pub fn for_family(name: FamilyName) -> Self {
        RunConfig {
            family: FamilyConfig {
                name,
                alpha: None,
                unitary: UnitaryChoice::Standard,
                offset: None,
                scale: None,
                table: Vec::new(),
                default: None,
            },
            truncation: TruncationConfig::default(),
            window: WindowConfig::default(),
            sequence: SequenceConfig::default(),
            horizons: HorizonConfig::default(),
            tolerances: ToleranceConfig::default(),
            furstenberg: default_furstenberg(),
            vectors: VectorConfig::default(),
            norms: NormsConfig::default(),
            star: StarConfig::default(),
            periodic: PeriodicConfig::default(),
            output: OutputConfig::default(),
        }
    }

    /// Strict parse followed by [`RunConfig::validate`].
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| invalid(e.message().to_string() + &span_hint(&e)))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| invalid(e.to_string()))
    }

    /// Applies `SHIFTDYN_L_MAX`, `SHIFTDYN_N` and `SHIFTDYN_K_COUNT` from
    /// `vars`; other variables are ignored.
    pub fn apply_env<I, K, V>(&mut self, vars: I) -> Result<()>
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: AsRef<str>,
    {
        for (k, v) in vars {
            let Some(key) = k.as_ref().strip_prefix(ENV_PREFIX) else {
                continue;
            };
            let v = v.as_ref().trim();
            let parse = |what: &str| -> Result<u64> {
                v.parse().map_err(|_| invalid(format!("{ENV_PREFIX}{what} must be a nonnegative integer, got {v:?}")))
            };
            match key {
                "L_MAX" => self.horizons.l_max = parse("L_MAX")? as usize,
                "N" => self.horizons.n = parse("N")?,
                "K_COUNT" => self.horizons.k_count = parse("K_COUNT")? as usize,
                _ => {}
            }
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        let f = &self.family;
        if self.window.j < 1 {
            return Err(invalid("window.j must be at least 1"));
        }
        if self.window.m < 1 {
            return Err(invalid("window.m must be at least 1"));
        }
        let eps = self.tolerances.eps;
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(invalid(format!("tolerances.eps must be positive, got {eps}")));
        }
        if self.tolerances.limit.is_nan()
            || self.tolerances.limit <= 0.0
            || self.tolerances.periodic.is_nan()
            || self.tolerances.periodic <= 0.0
        {
            return Err(invalid("tolerances.limit and tolerances.periodic must be positive"));
        }
        if self.horizons.k_count == 0 || self.horizons.l_max == 0 || self.horizons.n == 0 {
            return Err(invalid("horizons.l_max, horizons.n and horizons.k_count must be positive"));
        }
        match f.name {
            FamilyName::Split => {
                let a = f.alpha.ok_or_else(|| invalid("family.alpha is required for example_3_11"))?;
                if !(a > 1.0 && a.is_finite()) {
                    return Err(invalid(format!("family.alpha must be a finite number > 1, got {a}")));
                }
            }
            FamilyName::Constant => {
                if f.scale == Some(0.0) {
                    return Err(invalid("family.scale must be nonzero"));
                }
            }
            FamilyName::Custom => {
                if f.table.is_empty() && f.default.is_none() {
                    return Err(invalid("family.table or family.default is required for custom"));
                }
                if f.table.iter().any(|(_, c)| *c == 0.0) || f.default == Some(0.0) {
                    return Err(invalid("family.table and family.default must be nonzero"));
                }
            }
            FamilyName::Rational | FamilyName::DisjointPair => {}
        }
        if f.name != FamilyName::Split && f.alpha.is_some() {
            return Err(invalid("family.alpha only applies to example_3_11"));
        }
        if f.name == FamilyName::DisjointPair && f.unitary == UnitaryChoice::InverseShift {
            return Err(invalid("family.unitary for example_3_6 is standard or alternate"));
        }
        for (name, spec) in [("sequence.nk", &self.sequence.nk), ("sequence.tn", &self.sequence.tn)] {
            let ok = match spec {
                SequenceSpec::Arithmetic(a) => a.start >= 1 && a.step >= 1,
                SequenceSpec::Explicit(v) => IncreasingSequence::new(v.clone()).is_ok(),
            };
            if !ok {
                return Err(invalid(format!("{name} must be positive and strictly increasing")));
            }
        }
        let n = &self.norms;
        if n.i_min > n.i_max || n.l_min > n.l_max || n.l_min == 0 {
            return Err(invalid("norms ranges must be nonempty with l_min ≥ 1"));
        }
        // the dense cross-check must keep every image inside the window
        let needed = self.window.m as u64 + n.l_max;
        if (self.truncation.half_width as u64) < needed {
            return Err(invalid(format!(
                "truncation.half_width = {} is below m + norms.l_max = {needed}",
                self.truncation.half_width
            )));
        }
        if self.periodic.period == 0 {
            return Err(invalid("periodic.period must be positive"));
        }
        if self.vectors.y_scales.is_empty() {
            return Err(invalid("vectors.y_scales needs at least one entry"));
        }
        if let FurstenbergFamily::LowerDensity { delta } = self.furstenberg {
            FurstenbergFamily::lower_density(delta).map_err(|e| invalid(format!("furstenberg: {e}")))?;
        }
        Ok(())
    }

    pub fn check_options(&self) -> CheckOptions {
        CheckOptions {
            l_max: self.horizons.l_max,
            k_count: self.horizons.k_count,
            series: self.tolerances.series,
            limit_tol: self.tolerances.limit,
        }
    }
}

fn span_hint(e: &toml::de::Error) -> String {
    e.span().map(|s| format!(" (at bytes {}..{})", s.start, s.end)).unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_and_strict() {
        let cfg = RunConfig::from_toml("[family]\nname = \"example_3_2\"\n").unwrap();
        assert_eq!(cfg, RunConfig::for_family(FamilyName::Rational));
        let typo = RunConfig::from_toml("[family]\nname = \"example_3_2\"\n[window]\nJ = 2\n");
        assert!(matches!(typo, Err(Error::ConfigInvalid(msg)) if msg.contains('J')));
        assert!(RunConfig::from_toml("[family]\nname = \"example_3_11\"\n").is_err());
        assert!(RunConfig::from_toml("[family]\nname = \"example_3_11\"\nalpha = 2.0\n[tolerances]\neps = 0.0\n").is_err());
    }

    #[test]
    fn sequences_and_env() {
        let text = "[family]\nname = \"example_3_6\"\n[sequence]\nnk = [20, 40, 60]\ntn = { start = 3, step = 2 }\n";
        let mut cfg = RunConfig::from_toml(text).unwrap();
        assert_eq!(cfg.sequence.nk.build(8).unwrap().terms(), &[20, 40, 60]);
        assert_eq!(cfg.sequence.tn.build(3).unwrap().terms(), &[3, 5, 7]);
        cfg.apply_env([("SHIFTDYN_N", "50"), ("HOME", "/x"), ("SHIFTDYN_K_COUNT", "3")]).unwrap();
        assert_eq!((cfg.horizons.n, cfg.horizons.k_count), (50, 3));
        assert!(cfg.apply_env([("SHIFTDYN_L_MAX", "-1")]).is_err());
        assert_eq!(RunConfig::from_toml(&cfg.to_toml().unwrap()).unwrap(), cfg);
    }
}
