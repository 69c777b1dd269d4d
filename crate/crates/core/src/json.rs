//! JSON forms of rings, resolvents and lattice reports. Numbers are decimal
//! strings; rationals are written `a/b`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::corelin::{ExactMatrix, RationalLattice, Scalar, ScalarRing};
use crate::error::{Error, Result};
use crate::exterior::subsets;
use crate::latres::{AllResolvents, BoundingLattice, Conductor, ResolventLattice};
use crate::quintic::QuinticRing;
use crate::resolvent::ResolventData;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarTag {
    Named(String),
    Fp {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl From<ScalarRing> for ScalarTag {
    fn from(r: ScalarRing) -> Self {
        match r {
            ScalarRing::Integer => ScalarTag::Named("Z".into()),
            ScalarRing::Rational => ScalarTag::Named("Q".into()),
            ScalarRing::PrimeField(p) => ScalarTag::Fp { fp: p },
        }
    }
}

impl TryFrom<ScalarTag> for ScalarRing {
    type Error = Error;

    fn try_from(t: ScalarTag) -> Result<Self> {
        match t {
            ScalarTag::Named(s) if s == "Z" => Ok(ScalarRing::Integer),
            ScalarTag::Named(s) if s == "Q" => Ok(ScalarRing::Rational),
            ScalarTag::Named(s) => Err(Error::Parse(format!("unknown scalar ring {s:?}"))),
            ScalarTag::Fp { fp } => ScalarRing::prime_field(fp),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    scalar: ScalarTag,
    c: Vec<(usize, usize, Vec<String>)>,
}

#[derive(Serialize, Deserialize)]
struct ResolventJson {
    scalar: ScalarTag,
    phi: Vec<Vec<String>>,
    t: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    lattice: Option<Vec<Vec<String>>>,
}

/// One lattice of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub basis: Vec<Vec<String>>,
    pub numerical: bool,
    pub theta_index: String,
}

/// Output of the lattice commands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub conductor: String,
    #[serde(rename = "M0")]
    pub m0: Vec<Vec<String>>,
    pub resolvents: Vec<ReportEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partial: Option<bool>,
}

fn strings(v: &[Scalar]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn parse_all(ring: ScalarRing, v: &[String]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| Scalar::parse(ring, s)).collect()
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

pub fn lattice_rows(l: &RationalLattice) -> Vec<Vec<String>> {
    l.basis()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect()
}

pub fn lattice_from_strings(rows: &[Vec<String>]) -> Result<RationalLattice> {
    let rows = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_str(x).map_err(|e| Error::Parse(format!("{x:?}: {e}"))))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RationalLattice::from_rational_rows(&rows, 5)
}

pub fn ring_to_json(q: &QuinticRing) -> String {
    let c = q
        .entries()
        .into_iter()
        .map(|(i, j, v)| (i, j, strings(&v)))
        .collect();
    pretty(&RingJson {
        scalar: q.ring().into(),
        c,
    })
}

pub fn ring_from_json(s: &str) -> Result<QuinticRing> {
    let raw: RingJson = serde_json::from_str(s)?;
    let ring = ScalarRing::try_from(raw.scalar)?;
    let mut entries = Vec::with_capacity(raw.c.len());
    for (i, j, v) in raw.c {
        if !(1..=4).contains(&i) || !(1..=4).contains(&j) || v.len() != 5 {
            return Err(Error::Parse(format!(
                "bad structure-constant entry ({i}, {j})"
            )));
        }
        entries.push((i, j, parse_all(ring, &v)?));
    }
    QuinticRing::from_entries(ring, &entries)
}

pub fn resolvent_to_json(r: &ResolventData, lattice: Option<&RationalLattice>) -> String {
    let pairs = subsets(5, 2);
    let phi = r
        .phi()
        .iter()
        .map(|a| {
            pairs
                .iter()
                .map(|p| a.get(p[0], p[1]).to_string())
                .collect()
        })
        .collect();
    pretty(&ResolventJson {
        scalar: r.ring().into(),
        phi,
        t: r.t().to_string(),
        lattice: lattice.map(lattice_rows),
    })
}

pub fn resolvent_from_json(s: &str) -> Result<(ResolventData, Option<RationalLattice>)> {
    let raw: ResolventJson = serde_json::from_str(s)?;
    let ring = ScalarRing::try_from(raw.scalar)?;
    if raw.phi.len() != 4 || raw.phi.iter().any(|r| r.len() != 10) {
        return Err(Error::Parse("phi must hold 4 lists of 10 entries".into()));
    }
    let pairs = subsets(5, 2);
    let mut phi = Vec::with_capacity(4);
    for upper in &raw.phi {
        let vals = parse_all(ring, upper)?;
        let mut a = ExactMatrix::zeros(ring, 5, 5);
        for (p, v) in pairs.iter().zip(vals) {
            a.set(p[1], p[0], -v.clone());
            a.set(p[0], p[1], v);
        }
        phi.push(a);
    }
    let t = Scalar::parse(ring, &raw.t)?;
    let lattice = raw
        .lattice
        .as_deref()
        .map(lattice_from_strings)
        .transpose()?;
    Ok((ResolventData::new(ring, phi, t)?, lattice))
}

fn entry(r: &ResolventLattice) -> ReportEntry {
    ReportEntry {
        basis: lattice_rows(&r.lattice),
        numerical: r.numerical,
        theta_index: r.theta_index.to_string(),
    }
}

impl Report {
    pub fn numerical(bl: &BoundingLattice, cond: &Conductor, list: &[ResolventLattice]) -> Report {
        Report {
            conductor: cond.c.to_string(),
            m0: lattice_rows(&bl.m0),
            resolvents: list.iter().map(entry).collect(),
            partial: None,
        }
    }

    pub fn all(bl: &BoundingLattice, cond: &Conductor, all: &AllResolvents) -> Report {
        Report {
            partial: Some(all.partial),
            ..Report::numerical(bl, cond, &all.resolvents)
        }
    }

    pub fn conductor_value(&self) -> Result<BigInt> {
        BigInt::from_str(&self.conductor).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        pretty(self)
    }

    pub fn from_json(s: &str) -> Result<Report> {
        Ok(serde_json::from_str(s)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn ring_round_trip() {
        for ring in [
            ScalarRing::Integer,
            ScalarRing::Rational,
            ScalarRing::PrimeField(3),
        ] {
            let q = registry::example2_ring(ring, 3);
            let s = ring_to_json(&q);
            let back = ring_from_json(&s).unwrap();
            assert_eq!(back, q);
            assert_eq!(ring_to_json(&back), s);
        }
    }

    #[test]
    fn resolvent_round_trip() {
        let r = registry::example2_reference(2);
        let l = registry::example2_m0(2);
        let s = resolvent_to_json(&r, Some(&l));
        let (back, lat) = resolvent_from_json(&s).unwrap();
        assert_eq!(back, r);
        assert_eq!(lat.as_ref(), Some(&l));
        assert_eq!(resolvent_to_json(&back, lat.as_ref()), s);
    }

    #[test]
    fn report_round_trip() {
        use crate::latres;
        let q = registry::example2_ring(ScalarRing::Integer, 2);
        let bl = latres::compute_m0(&q, Some(&registry::example2_reference(2))).unwrap();
        let c = latres::conductor(&bl).unwrap();
        let budget = latres::SearchBudget::default();
        let all = latres::enumerate_all_resolvents(&bl, &c, &budget, &[]).unwrap();
        let report = Report::all(&bl, &c, &all);
        let s = report.to_json();
        let back = Report::from_json(&s).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), s);
        assert_eq!(back.conductor_value().unwrap(), BigInt::from(2));
        assert_eq!(back.resolvents.len(), 3);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ring_from_json(r#"{"scalar":"R","c":[]}"#).is_err());
        assert!(ring_from_json(r#"{"scalar":{"Fp":4},"c":[]}"#).is_err());
        assert!(ring_from_json(r#"{"scalar":"Z","c":[[0,1,["0","0","0","0","0"]]]}"#).is_err());
    }
}
