//! JSON schema for exact polynomials and the structured check reports.
//!
//! Polynomials serialize as
//! `{"ring":"Q"|"Q_u","vars":[...],"terms":[{"coeff":...,"exp2":[...]}]}`
//! with terms in the canonical (lexicographic on `exp2`) order, so equal
//! polynomials always produce byte-identical JSON.

use loopk_core::laurent::{Coeff, Poly, Rat, Ring};
use num_traits::One;
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(untagged)]
pub enum CoeffJson {
    /// Plain rational "p/q".
    Rational(String),
    /// Cyclotomic pair `["p/q", "r/s"]` for `re + im*u`.
    Cyclotomic([String; 2]),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct TermJson {
    pub coeff: CoeffJson,
    pub exp2: Vec<i32>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct PolyJson {
    pub ring: String,
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn poly_to_json(p: &Poly) -> PolyJson {
    let ring = match p.ring() {
        Ring::Q => "Q",
        Ring::QU => "Q_u",
    };
    let terms = p
        .terms()
        .map(|(e, c)| TermJson {
            coeff: coeff_to_json(c, p.ring()),
            exp2: e.to_vec(),
        })
        .collect();
    PolyJson {
        ring: ring.to_string(),
        vars: p.vars().names.clone(),
        terms,
    }
}

fn coeff_to_json(c: &Coeff, ring: Ring) -> CoeffJson {
    match ring {
        Ring::Q => CoeffJson::Rational(rat_string(&c.re)),
        Ring::QU => CoeffJson::Cyclotomic([rat_string(&c.re), rat_string(&c.im)]),
    }
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: num_bigint::BigInt = num.parse().map_err(|e| format!("bad numerator: {e}"))?;
    let d: num_bigint::BigInt = den.parse().map_err(|e| format!("bad denominator: {e}"))?;
    Ok(Rat::new(n, d))
}

pub fn poly_from_json(j: &PolyJson) -> Result<Poly, String> {
    let ring = match j.ring.as_str() {
        "Q" => Ring::Q,
        "Q_u" => Ring::QU,
        other => return Err(format!("unknown ring {other}")),
    };
    let vars = loopk_core::laurent::VarSet::new(j.vars.clone());
    let mut p = Poly::zero(&vars, ring);
    for t in &j.terms {
        let coeff = match (&t.coeff, ring) {
            (CoeffJson::Rational(s), Ring::Q) => Coeff::from_rat(parse_rat(s)?),
            (CoeffJson::Cyclotomic([re, im]), Ring::QU) => Coeff {
                re: parse_rat(re)?,
                im: parse_rat(im)?,
            },
            _ => return Err("coefficient form does not match ring".into()),
        };
        if t.exp2.len() != vars.len() {
            return Err("exponent vector length mismatch".into());
        }
        p = p.add(&Poly::monomial(&vars, ring, &t.exp2, coeff));
    }
    Ok(p)
}

/// One named check inside a suite report.
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct CheckJson {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<String>,
}

/// A deterministic suite report: identical inputs and seed give identical
/// bytes apart from the trailing wall-time field (zeroed unless timing is
/// requested).
#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct Report {
    pub suite: String,
    pub parameters: serde_json::Value,
    pub pass: bool,
    pub checks: Vec<CheckJson>,
    pub seed: u64,
    pub wall_ms: u64,
}

impl Report {
    pub fn new(suite: &str, parameters: serde_json::Value, seed: u64) -> Self {
        Report {
            suite: suite.to_string(),
            parameters,
            pass: true,
            checks: Vec::new(),
            seed,
            wall_ms: 0,
        }
    }

    pub fn check(&mut self, name: &str, pass: bool) {
        self.checks.push(CheckJson { name: name.to_string(), pass, details: None });
        self.pass &= pass;
    }

    pub fn check_detail(&mut self, name: &str, pass: bool, details: String) {
        self.checks.push(CheckJson { name: name.to_string(), pass, details: Some(details) });
        self.pass &= pass;
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,check,pass,details\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.suite,
                c.name,
                c.pass,
                c.details.clone().unwrap_or_default().replace(',', ";")
            ));
        }
        out.push_str(&format!("{},TOTAL,{},\n", self.suite, self.pass));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use loopk_core::laurent::{weight_a, VarSet};

    #[test]
    fn poly_json_roundtrip() {
        let vars = VarSet::t_z(2);
        let p = weight_a(&vars, Ring::Q, 1, 2).mul(&weight_a(&vars, Ring::Q, 2, 1));
        let j = poly_to_json(&p);
        let s = serde_json::to_string(&j).unwrap();
        let j2: PolyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(poly_from_json(&j2).unwrap(), p);
    }

    #[test]
    fn canonical_bytes() {
        let vars = VarSet::t_z(2);
        let p = weight_a(&vars, Ring::Q, 1, 2);
        let q = weight_a(&vars, Ring::Q, 1, 2);
        assert_eq!(
            serde_json::to_string(&poly_to_json(&p)).unwrap(),
            serde_json::to_string(&poly_to_json(&q)).unwrap()
        );
    }
}
