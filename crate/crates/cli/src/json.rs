//! JSON form of multivectors.
//!
//! `{"terms":[{"blade":[0,1],"coeff":[{"hb":2,"re":"0","im":"1/2"}],"exps":{"q1":2,"p0":1}}]}`

use std::collections::BTreeMap;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use starprod::algebra::{Blade, Monomial, Multivector, Rational, ScalarH, Var};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffJson {
    pub hb: i32,
    pub re: String,
    pub im: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub blade: Vec<usize>,
    pub coeff: Vec<CoeffJson>,
    #[serde(default)]
    pub exps: BTreeMap<String, u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultivectorJson {
    pub terms: Vec<TermJson>,
}

#[derive(Debug, thiserror::Error)]
pub enum JsonError {
    #[error("invalid JSON: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid multivector: {0}")]
    Value(String),
}

impl From<&Multivector> for MultivectorJson {
    fn from(mv: &Multivector) -> Self {
        let terms = mv
            .terms()
            .map(|(blade, mono, c)| TermJson {
                blade: blade.indices().collect(),
                coeff: c
                    .terms()
                    .map(|(hb, z)| CoeffJson { hb, re: z.re.to_string(), im: z.im.to_string() })
                    .collect(),
                exps: mono.factors().map(|(v, e)| (v.to_string(), e)).collect(),
            })
            .collect();
        MultivectorJson { terms }
    }
}

fn rational(s: &str) -> Result<Rational, JsonError> {
    Rational::from_str(s).map_err(|_| JsonError::Value(format!("'{s}' is not a rational number")))
}

impl TryFrom<&MultivectorJson> for Multivector {
    type Error = JsonError;

    fn try_from(js: &MultivectorJson) -> Result<Self, JsonError> {
        let mut out = Multivector::zero();
        for t in &js.terms {
            let blade = Blade::from_indices(&t.blade)
                .map_err(|e| JsonError::Value(format!("blade {:?}: {e}", t.blade)))?;
            let mut mono = Monomial::one();
            for (name, e) in &t.exps {
                let v = Var::from_str(name).map_err(|e| JsonError::Value(e.to_string()))?;
                mono = mono.with(v, *e);
            }
            let mut c = ScalarH::zero();
            for part in &t.coeff {
                c += &ScalarH::monomial(Complex::new(rational(&part.re)?, rational(&part.im)?), part.hb);
            }
            out += &Multivector::from_terms([(blade, mono, c)]);
        }
        Ok(out)
    }
}

pub fn to_json(mv: &Multivector) -> String {
    serde_json::to_string(&MultivectorJson::from(mv)).expect("serializable")
}

pub fn to_json_value(mv: &Multivector) -> serde_json::Value {
    serde_json::to_value(MultivectorJson::from(mv)).expect("serializable")
}

pub fn from_json(text: &str) -> Result<Multivector, JsonError> {
    let js: MultivectorJson = serde_json::from_str(text)?;
    Multivector::try_from(&js)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use starprod::sample::random_multivector;

    #[test]
    fn documented_shape() {
        let mv = crate::eval::eval_str("(3/2 + 1/2*i*hb^2)*q1^2*p0*g0g1", &Default::default())
            .unwrap()
            .into_multivector()
            .unwrap();
        let v = to_json_value(&mv);
        let expected = serde_json::json!({"terms":[{"blade":[0,1],
            "coeff":[{"hb":0,"re":"3/2","im":"0"},{"hb":2,"re":"0","im":"1/2"}],
            "exps":{"p0":1,"q1":2}}]});
        assert_eq!(v, expected);
    }

    #[test]
    fn round_trip_random() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let mv = random_multivector(&mut rng, 3, 6);
            let text = to_json(&mv);
            assert_eq!(from_json(&text).unwrap(), mv);
            assert_eq!(to_json(&from_json(&text).unwrap()), text);
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(from_json("{").is_err());
        assert!(from_json(r#"{"terms":[{"blade":[1,0],"coeff":[]}]}"#).is_err());
        assert!(from_json(r#"{"terms":[{"blade":[],"coeff":[{"hb":0,"re":"x","im":"0"}]}]}"#).is_err());
        assert!(from_json(r#"{"terms":[{"blade":[],"coeff":[],"exps":{"z":1}}]}"#).is_err());
        assert_eq!(from_json(r#"{"terms":[]}"#).unwrap(), Multivector::zero());
    }
}
