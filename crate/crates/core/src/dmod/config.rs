use std::fmt;

use super::DmodError;

/// One monomial factor `name^exponent` of `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub name: String,
    pub exponent: u32,
}

/// A graded engine for `f = x^n` or `f = x^n y^m`, with the truncation
/// parameters used by submodule generation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub factors: Vec<Factor>,
    /// Half-width of the box of degrees whose ideals are reported.
    pub window: i64,
    /// Extra layer computed around the window; also the enlargement step.
    pub margin: i64,
    /// Cap on propagation rounds, i.e. on the length of operator words.
    pub max_word_length: usize,
}

pub const DEFAULT_WINDOW: i64 = 12;
pub const DEFAULT_MARGIN: i64 = 3;
pub const DEFAULT_MAX_WORD_LENGTH: usize = 4096;

impl EngineConfig {
    pub fn new(factors: Vec<Factor>) -> Result<EngineConfig, DmodError> {
        let cfg = EngineConfig {
            factors,
            window: DEFAULT_WINDOW,
            margin: DEFAULT_MARGIN,
            max_word_length: DEFAULT_MAX_WORD_LENGTH,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `f = x^n`.
    pub fn single(n: u32) -> EngineConfig {
        EngineConfig::named(&[("x", n)])
    }

    /// `f = x^n y^m`.
    pub fn pair(n: u32, m: u32) -> EngineConfig {
        EngineConfig::named(&[("x", n), ("y", m)])
    }

    /// Panics on invalid input; for literals.
    pub fn named(factors: &[(&str, u32)]) -> EngineConfig {
        let factors = factors.iter().map(|&(name, exponent)| Factor { name: name.into(), exponent }).collect();
        EngineConfig::new(factors).expect("valid engine")
    }

    /// Parse `"x"`, `"x2"`, `"x^2,y"`, `"y3"`.
    pub fn parse(text: &str) -> Result<EngineConfig, DmodError> {
        let mut factors = Vec::new();
        for part in text.split(',') {
            let part = part.trim();
            let name: String = part.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
            let rest = part[name.len()..].trim_start_matches('^');
            let exponent = if rest.is_empty() {
                1
            } else {
                rest.parse::<u32>().map_err(|_| DmodError::Config(format!("bad exponent in '{part}'")))?
            };
            factors.push(Factor { name, exponent });
        }
        EngineConfig::new(factors)
    }

    pub fn with_window(mut self, window: i64) -> Result<EngineConfig, DmodError> {
        self.window = window;
        self.validate()?;
        Ok(self)
    }

    pub fn with_margin(mut self, margin: i64) -> Result<EngineConfig, DmodError> {
        self.margin = margin;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), DmodError> {
        if self.factors.is_empty() || self.factors.len() > 2 {
            return Err(DmodError::Config("one or two monomial factors are supported".into()));
        }
        for f in &self.factors {
            if f.name != "x" && f.name != "y" {
                return Err(DmodError::Config(format!("factor variable must be x or y, got '{}'", f.name)));
            }
            if f.exponent == 0 {
                return Err(DmodError::Config(format!("exponent of {} must be at least 1", f.name)));
            }
        }
        if self.factors.len() == 2 && self.factors[0].name == self.factors[1].name {
            return Err(DmodError::Config("factor variables must be distinct".into()));
        }
        if self.window < 4 {
            return Err(DmodError::Config("window must be at least 4".into()));
        }
        if self.margin < 2 {
            return Err(DmodError::Config("margin must be at least 2".into()));
        }
        if self.max_word_length == 0 {
            return Err(DmodError::Config("max word length must be positive".into()));
        }
        Ok(())
    }

    pub fn dims(&self) -> usize {
        self.factors.len()
    }

    pub fn exponents(&self) -> Vec<i64> {
        self.factors.iter().map(|f| i64::from(f.exponent)).collect()
    }

    pub fn factor_index(&self, name: &str) -> Option<usize> {
        self.factors.iter().position(|f| f.name == name)
    }

    /// The degree of `f^(s+1)`, i.e. of `t * f^s`.
    pub fn f_degree(&self) -> Vec<i64> {
        self.exponents()
    }
}

impl fmt::Display for EngineConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|x| if x.exponent == 1 { x.name.clone() } else { format!("{}^{}", x.name, x.exponent) })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_factor_specs() {
        let c = EngineConfig::parse("x2,y").unwrap();
        assert_eq!(c.exponents(), vec![2, 1]);
        assert_eq!(c.to_string(), "x^2*y");
        assert_eq!(EngineConfig::parse("y^3").unwrap().factor_index("y"), Some(0));
        assert!(EngineConfig::parse("z").is_err());
        assert!(EngineConfig::parse("x,x").is_err());
        assert!(EngineConfig::parse("x0").is_err());
        assert!(EngineConfig::parse("x,y,x").is_err());
        assert!(EngineConfig::single(1).with_window(3).is_err());
        assert!(EngineConfig::single(1).with_margin(1).is_err());
    }
}
