//! The JSON system document.
//!
//! ```json
//! {
//!   "field": "Q",
//!   "generators": ["x", "y", "z"],
//!   "rules": [{"lhs": "x*y*z", "rhs": "x^3 + y^3 + z^3"}],
//!   "certificate": {"measure": {"x*y*z": 3, "y": 1}}
//! }
//! ```
//!
//! `field` is `"Q"` or `"Fp"` together with `"prime"`. A deglex certificate is
//! `{"deglex": {"weights": [..], "order": [..]}}`, with `order` listing the
//! generators from smallest to largest; both keys are optional.

use std::collections::BTreeMap;

use diamond_core::order::MeasureCertificate;
use diamond_core::{Alphabet, Certificate, DeglexOrder, Field, Rule, System};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemDocument {
    pub field: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub generators: Vec<String>,
    pub rules: Vec<RuleDocument>,
    pub certificate: CertificateDocument,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RuleDocument {
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum CertificateDocument {
    Deglex {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<u64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<Vec<String>>,
    },
    Measure(BTreeMap<String, u64>),
}

/// A validated document.
#[derive(Debug, Clone)]
pub struct Loaded {
    pub system: System,
    pub certificate: Certificate,
}

fn input(at: impl Into<String>, e: impl std::fmt::Display) -> CliError {
    CliError::Input(format!("{}: {e}", at.into()))
}

impl SystemDocument {
    pub fn from_json(text: &str) -> Result<SystemDocument, CliError> {
        serde_json::from_str(text).map_err(|e| input("document", e))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn load(&self) -> Result<Loaded, CliError> {
        let field = match (self.field.as_str(), self.prime) {
            ("Q", None) => Field::Rational,
            ("Q", Some(_)) => return Err(input("prime", "only allowed with field \"Fp\"")),
            ("Fp", Some(p)) => Field::prime(p).map_err(|e| input("prime", e))?,
            ("Fp", None) => return Err(input("prime", "field \"Fp\" needs a prime")),
            (other, _) => return Err(input("field", format!("expected \"Q\" or \"Fp\", got {other:?}"))),
        };
        let alphabet = Alphabet::new(&self.generators).map_err(|e| input("generators", e))?;
        let rules = self
            .rules
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let lhs = alphabet.word(&r.lhs).map_err(|e| input(format!("rules[{i}].lhs"), e))?;
                let rhs = alphabet
                    .parse_poly(&r.rhs, field)
                    .map_err(|e| input(format!("rules[{i}].rhs"), e))?;
                Ok(Rule::new(lhs, rhs))
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        let system = System::new(alphabet.clone(), field, rules).map_err(|e| input("rules", e))?;
        let certificate = match &self.certificate {
            CertificateDocument::Deglex { weights, order } => {
                let n = alphabet.len();
                let mut o = DeglexOrder::unit(n);
                if let Some(w) = weights {
                    o = o.with_weights(w.clone()).map_err(|e| input("certificate.deglex.weights", e))?;
                }
                if let Some(names) = order {
                    let perm = names
                        .iter()
                        .map(|g| {
                            alphabet.lookup(g).ok_or_else(|| {
                                input("certificate.deglex.order", format!("unknown generator {g:?}"))
                            })
                        })
                        .collect::<Result<Vec<u32>, CliError>>()?;
                    o = o.with_order(&perm).map_err(|e| input("certificate.deglex.order", e))?;
                }
                Certificate::Deglex(o)
            }
            CertificateDocument::Measure(patterns) => {
                let pats = patterns
                    .iter()
                    .map(|(p, c)| {
                        let w = alphabet
                            .word(p)
                            .map_err(|e| input(format!("certificate.measure[{p:?}]"), e))?;
                        Ok((w, *c))
                    })
                    .collect::<Result<Vec<_>, CliError>>()?;
                Certificate::Measure(
                    MeasureCertificate::new(pats).map_err(|e| input("certificate.measure", e))?,
                )
            }
        };
        Ok(Loaded {
            system,
            certificate,
        })
    }

    /// The document describing `system` under `certificate`.
    pub fn from_system(system: &System, certificate: &Certificate) -> SystemDocument {
        let (field, prime) = match system.field() {
            Field::Rational => ("Q".to_string(), None),
            Field::Prime(p) => ("Fp".to_string(), Some(p)),
        };
        let alphabet = system.alphabet();
        let certificate = match certificate {
            Certificate::Deglex(o) => CertificateDocument::Deglex {
                weights: Some(o.weights().to_vec()),
                order: Some(o.order().iter().map(|&x| alphabet.name(x).to_string()).collect()),
            },
            Certificate::Measure(m) => CertificateDocument::Measure(
                m.patterns()
                    .iter()
                    .map(|(w, c)| (alphabet.show(w), *c))
                    .collect(),
            ),
        };
        SystemDocument {
            field,
            prime,
            generators: alphabet.names().to_vec(),
            rules: system
                .rules()
                .iter()
                .map(|r| RuleDocument {
                    lhs: alphabet.show(&r.lhs),
                    rhs: system.show(&r.rhs),
                })
                .collect(),
            certificate,
        }
    }
}
