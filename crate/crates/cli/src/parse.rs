//! Textual grammar for state-family specifications.
//!
//! A spec is whitespace-separated tokens: a family name followed by
//! `key=value` parameters, e.g. `werner d=3 alpha=-1` or
//! `pure d=2 l0=0.8 l1=0.2`. The named fixed state is selected by
//! `named sigma_phi01`.
//!
//! For scans a spec may leave parameters unset; the grid axis then binds one
//! of them by name. A pure-state spec may additionally leave one Schmidt
//! coefficient unset after binding — it is filled with one minus the others.

use entwit::states::StateFamilySpec;
use std::collections::BTreeMap;
use std::fmt;

/// A parse or validation error, naming the offending token and its 1-based
/// position in the spec string.
#[derive(Debug, Clone, PartialEq)]
pub struct SpecError {
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for SpecError {}

fn err<T>(msg: impl Into<String>) -> Result<T, SpecError> {
    Err(SpecError {
        message: msg.into(),
    })
}

/// Family selector of a parsed template.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Pure,
    Werner,
    Isotropic,
    Gwer,
    RhoQ,
    MaxEnt,
    Named,
}

impl Family {
    fn token(self) -> &'static str {
        match self {
            Family::Pure => "pure",
            Family::Werner => "werner",
            Family::Isotropic => "isotropic",
            Family::Gwer => "gwer",
            Family::RhoQ => "rhoq",
            Family::MaxEnt => "maxent",
            Family::Named => "named",
        }
    }

    /// Real-valued parameter names this family accepts (`l*` covers the
    /// indexed Schmidt coefficients of `pure`).
    fn param_names(self, d: usize) -> Vec<String> {
        match self {
            Family::Pure => (0..d).map(|i| format!("l{i}")).collect(),
            Family::Werner => vec!["alpha".into()],
            Family::Isotropic => vec!["beta".into()],
            Family::Gwer => vec!["a".into(), "b".into()],
            Family::RhoQ => vec!["q".into()],
            Family::MaxEnt | Family::Named => vec![],
        }
    }

    fn takes_dimension(self) -> bool {
        matches!(
            self,
            Family::Pure | Family::Werner | Family::Isotropic | Family::Gwer | Family::MaxEnt
        )
    }
}

/// A family spec with possibly unbound parameters: the parse result of a
/// `--rho`/`--sigma` argument. Scans bind the free parameter per grid cell;
/// [`Template::build`] produces the concrete state description.
#[derive(Debug, Clone, PartialEq)]
pub struct Template {
    family: Family,
    d: Option<usize>,
    params: BTreeMap<String, f64>,
}

impl Template {
    /// Parses a spec string. Errors name the offending token and position.
    pub fn parse(spec: &str) -> Result<Self, SpecError> {
        let tokens: Vec<&str> = spec.split_whitespace().collect();
        if tokens.is_empty() {
            return err("empty state spec");
        }
        let family = match tokens[0] {
            "pure" => Family::Pure,
            "werner" => Family::Werner,
            "isotropic" => Family::Isotropic,
            "gwer" => Family::Gwer,
            "rhoq" => Family::RhoQ,
            "maxent" => Family::MaxEnt,
            "named" => Family::Named,
            other => {
                return err(format!(
                    "unknown family `{other}` at token 1 (expected one of \
                     pure, werner, isotropic, gwer, rhoq, maxent, named)"
                ))
            }
        };

        if family == Family::Named {
            return match tokens.get(1) {
                Some(&"sigma_phi01") if tokens.len() == 2 => Ok(Template {
                    family,
                    d: Some(2),
                    params: BTreeMap::new(),
                }),
                Some(other) if tokens.len() == 2 => err(format!(
                    "unknown named state `{other}` at token 2 (expected sigma_phi01)"
                )),
                Some(_) => err(format!(
                    "unexpected token `{}` at token 3 after named state",
                    tokens[2]
                )),
                None => err("missing state name at token 2 (expected sigma_phi01)"),
            };
        }

        let mut d: Option<usize> = None;
        let mut params = BTreeMap::new();
        for (idx, tok) in tokens.iter().enumerate().skip(1) {
            let pos = idx + 1;
            let (key, value) = match tok.split_once('=') {
                Some(kv) => kv,
                None => {
                    return err(format!(
                        "malformed token `{tok}` at token {pos} (expected key=value)"
                    ))
                }
            };
            if key == "d" {
                if d.is_some() {
                    return err(format!("duplicate `d` at token {pos}"));
                }
                if !family.takes_dimension() {
                    return err(format!(
                        "family `{}` takes no dimension, found `{tok}` at token {pos}",
                        family.token()
                    ));
                }
                match value.parse::<usize>() {
                    Ok(v) if v >= 2 => d = Some(v),
                    _ => {
                        return err(format!(
                            "bad dimension `{value}` at token {pos} (expected integer >= 2)"
                        ))
                    }
                }
                continue;
            }
            let parsed: f64 = match value.parse() {
                Ok(v) => v,
                Err(_) => {
                    return err(format!(
                        "bad value `{value}` for `{key}` at token {pos} (expected a real number)"
                    ))
                }
            };
            if params.insert(key.to_string(), parsed).is_some() {
                return err(format!("duplicate parameter `{key}` at token {pos}"));
            }
        }

        let template = Template { family, d, params };
        template.check_names()?;
        Ok(template)
    }

    fn dimension(&self) -> Result<usize, SpecError> {
        match self.family {
            Family::RhoQ | Family::Named => Ok(2),
            _ => match self.d {
                Some(d) => Ok(d),
                None => err(format!(
                    "family `{}` needs `d=<int>`",
                    self.family.token()
                )),
            },
        }
    }

    fn check_names(&self) -> Result<(), SpecError> {
        let d = self.dimension()?;
        let allowed = self.family.param_names(d);
        for key in self.params.keys() {
            if !allowed.iter().any(|a| a == key) {
                return err(format!(
                    "family `{}` has no parameter `{key}` (accepts: {})",
                    self.family.token(),
                    if allowed.is_empty() {
                        "none".to_string()
                    } else {
                        allowed.join(", ")
                    }
                ));
            }
        }
        Ok(())
    }

    /// Parameters the family accepts but the spec has not set.
    pub fn free_params(&self) -> Vec<String> {
        let d = match self.dimension() {
            Ok(d) => d,
            Err(_) => return vec![],
        };
        self.family
            .param_names(d)
            .into_iter()
            .filter(|name| !self.params.contains_key(name))
            .collect()
    }

    /// Returns a copy with `name` bound to `value`. The parameter must be
    /// free in this template.
    pub fn bind(&self, name: &str, value: f64) -> Result<Self, SpecError> {
        let d = self.dimension()?;
        if !self.family.param_names(d).iter().any(|a| a == name) {
            return err(format!(
                "family `{}` has no parameter `{name}` to bind",
                self.family.token()
            ));
        }
        if self.params.contains_key(name) {
            return err(format!("parameter `{name}` is already fixed in the spec"));
        }
        let mut bound = self.clone();
        bound.params.insert(name.to_string(), value);
        Ok(bound)
    }

    /// Builds the concrete family description. All parameters must be bound,
    /// except that a pure spec may leave exactly one Schmidt coefficient
    /// unset, which is filled with one minus the sum of the others (tiny
    /// negative fill values within 1e−12 of zero are clamped to zero).
    pub fn build(&self) -> Result<StateFamilySpec, SpecError> {
        let d = self.dimension()?;
        let free = self.free_params();
        match self.family {
            Family::Pure => {
                if free.len() > 1 {
                    return err(format!(
                        "pure spec leaves {} coefficients unset ({}); at most one \
                         may be derived",
                        free.len(),
                        free.join(", ")
                    ));
                }
                let mut lambdas = vec![0.0f64; d];
                for (name, &value) in &self.params {
                    let idx: usize = name[1..].parse().expect("validated l-index");
                    lambdas[idx] = value;
                }
                if let Some(name) = free.first() {
                    let idx: usize = name[1..].parse().expect("validated l-index");
                    let others: f64 = self.params.values().sum();
                    let mut fill = 1.0 - others;
                    if (-1e-12..0.0).contains(&fill) {
                        fill = 0.0;
                    }
                    lambdas[idx] = fill;
                }
                Ok(StateFamilySpec::PureSchmidt { lambdas })
            }
            _ if !free.is_empty() => err(format!(
                "missing parameter{} {} for family `{}`",
                if free.len() > 1 { "s" } else { "" },
                free.join(", "),
                self.family.token()
            )),
            Family::Werner => Ok(StateFamilySpec::Werner {
                d,
                alpha: self.params["alpha"],
            }),
            Family::Isotropic => Ok(StateFamilySpec::Isotropic {
                d,
                beta: self.params["beta"],
            }),
            Family::Gwer => Ok(StateFamilySpec::GeneralizedWerner {
                d,
                a: self.params["a"],
                b: self.params["b"],
            }),
            Family::RhoQ => Ok(StateFamilySpec::RhoQ {
                q: self.params["q"],
            }),
            Family::MaxEnt => Ok(StateFamilySpec::MaxEntangled { d }),
            Family::Named => Ok(StateFamilySpec::SigmaPhi01),
        }
    }
}
