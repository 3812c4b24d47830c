//! Extremal witness sets and the explicit constructions from which lower
//! bounds are certified.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::gset::GSet;
use crate::sumset::{h_fold, h_fold_restricted, subset_sums};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    SumsetDeficient,
    RestrictedDeficient,
    SigmaDeficient,
    SumFree,
    ThreeOneSumFree,
}

/// A set certifying a bound, self-validating: `validate` recomputes the
/// certified property with the sumset engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessSet {
    pub group: GroupSpec,
    pub elements: Vec<usize>,
    pub certifies: Certificate,
    pub h: usize,
    /// Target element the sumset must miss, when the certificate is about
    /// a specific target.
    pub g: Option<usize>,
    /// Claimed sumset size, when the certificate pins one (rho minimizers).
    pub claimed_size: Option<usize>,
    /// Whether the search producing this witness was exhaustive.
    pub exact: bool,
}

#[derive(Serialize, Deserialize)]
struct WitnessRecord {
    group: String,
    quantity: Certificate,
    h: usize,
    g: Option<usize>,
    elements: Vec<usize>,
    exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
}

impl WitnessSet {
    pub fn set(&self) -> Result<GSet> {
        GSet::from_elements(self.group.clone(), &self.elements)
    }

    /// Recomputes the certified property; errors if it does not hold.
    pub fn validate(&self) -> Result<()> {
        let a = self.set()?;
        let computed = match self.certifies {
            Certificate::SumsetDeficient => h_fold(&a, self.h)?,
            Certificate::RestrictedDeficient => h_fold_restricted(&a, self.h)?,
            Certificate::SigmaDeficient => subset_sums(&a)?,
            Certificate::SumFree => {
                let doubled = h_fold(&a, 2)?;
                if a.intersects(&doubled) {
                    return Err(Error::invalid(format!("witness {a} is not sum-free")));
                }
                return Ok(());
            }
            Certificate::ThreeOneSumFree => {
                let tripled = h_fold(&a, 3)?;
                if a.intersects(&tripled) {
                    return Err(Error::invalid(format!("witness {a} is not (3,1)-sum-free")));
                }
                return Ok(());
            }
        };
        if let Some(size) = self.claimed_size {
            if computed.len() != size {
                return Err(Error::invalid(format!(
                    "witness sumset size {} != claimed {size}",
                    computed.len()
                )));
            }
        }
        if let Some(g) = self.g {
            if computed.contains(g) {
                return Err(Error::invalid(format!(
                    "witness sumset contains the excluded target {g}"
                )));
            }
        } else if self.claimed_size.is_none() && computed.is_full() {
            return Err(Error::invalid("witness sumset covers the whole group"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let rec = WitnessRecord {
            group: self.group.to_string(),
            quantity: self.certifies,
            h: self.h,
            g: self.g,
            elements: self.elements.clone(),
            exact: self.exact,
            size: self.claimed_size,
        };
        Ok(serde_json::to_string(&rec)?)
    }

    pub fn from_json(line: &str) -> Result<WitnessSet> {
        let rec: WitnessRecord = serde_json::from_str(line)?;
        Ok(WitnessSet {
            group: rec.group.parse()?,
            elements: rec.elements,
            certifies: rec.quantity,
            h: rec.h,
            g: rec.g,
            claimed_size: rec.size,
            exact: rec.exact,
        })
    }
}

/// The paper-derived explicit constructions.
#[derive(Clone, Debug)]
pub enum Construction {
    /// Cyclic only: A = { x : x mod d < c } with c = floor((d-2)/h) + 1,
    /// realizing v_1(n,h) with hA != Z_n when d maximizes the stripe.
    CosetStripe { n: usize, h: usize, d: usize },
    /// A = L union K where G = L u K u (-K) disjointly; |A| = (n+|L|)/2
    /// and 0 is not in 2^A. Needs exponent >= 3.
    TwoTorsionPlusHalforbit { group: GroupSpec },
    /// A = even elements of Z_n (n even): h^A stays inside one parity
    /// class, so it cannot be all of Z_n.
    EvenElements { n: usize, h: usize },
}

pub fn construct_witness(c: &Construction) -> Result<WitnessSet> {
    let w = match c {
        Construction::CosetStripe { n, h, d } => {
            let (n, h, d) = (*n, *h, *d);
            if h < 1 || d < 2 || d > n || n % d != 0 {
                return Err(Error::invalid(format!(
                    "coset_stripe: need h >= 1 and d | n with 2 <= d <= n, got n={n} h={h} d={d}"
                )));
            }
            let c = (d - 2) / h + 1;
            let group = GroupSpec::cyclic(n)?;
            let elements: Vec<usize> = (0..n).filter(|x| x % d < c).collect();
            WitnessSet {
                group,
                elements,
                certifies: Certificate::SumsetDeficient,
                h,
                g: None,
                claimed_size: None,
                exact: true,
            }
        }
        Construction::TwoTorsionPlusHalforbit { group } => {
            if group.exponent() < 3 {
                return Err(Error::invalid(
                    "two_torsion_plus_halforbit: group must have exponent >= 3",
                ));
            }
            let l = group.two_torsion();
            let mut a = l.clone();
            let mut taken = l;
            for x in 0..group.order() {
                if !taken.contains(x) {
                    a.insert(x);
                    taken.insert(x);
                    taken.insert(group.neg_unchecked(x));
                }
            }
            WitnessSet {
                group: group.clone(),
                elements: a.elements(),
                certifies: Certificate::RestrictedDeficient,
                h: 2,
                g: Some(0),
                claimed_size: None,
                exact: true,
            }
        }
        Construction::EvenElements { n, h } => {
            let (n, h) = (*n, *h);
            if n % 2 != 0 {
                return Err(Error::invalid("even_elements: n must be even"));
            }
            let group = GroupSpec::cyclic(n)?;
            let elements: Vec<usize> = (0..n).step_by(2).collect();
            WitnessSet {
                group,
                elements,
                certifies: Certificate::RestrictedDeficient,
                h,
                g: None,
                claimed_size: None,
                exact: true,
            }
        }
    };
    w.validate()?;
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn coset_stripe_witness() {
        let w = construct_witness(&Construction::CosetStripe { n: 10, h: 2, d: 2 }).unwrap();
        assert_eq!(w.elements, vec![0, 2, 4, 6, 8]);
        w.validate().unwrap();
        // the best stripe realizes v_1(n,h): check a few instances
        for (n, h) in [(10usize, 2usize), (12, 3), (20, 4), (21, 3)] {
            let v = crate::formulas::v_g_closed(n, h, 1).unwrap();
            let best = crate::divisors(n)
                .unwrap()
                .divisors
                .iter()
                .filter(|&&d| d >= 2)
                .filter_map(|&d| {
                    construct_witness(&Construction::CosetStripe { n, h, d })
                        .ok()
                        .map(|w| w.elements.len())
                })
                .max()
                .unwrap();
            assert_eq!(best, v, "n={n} h={h}");
        }
    }

    #[test]
    fn two_torsion_plus_halforbit_witness() {
        let z9 = GroupSpec::cyclic(9).unwrap();
        let w = construct_witness(&Construction::TwoTorsionPlusHalforbit { group: z9 }).unwrap();
        assert_eq!(w.elements.len(), (9 + 1) / 2);

        let g = make_group(&[2, 6]).unwrap();
        let w = construct_witness(&Construction::TwoTorsionPlusHalforbit { group: g }).unwrap();
        assert_eq!(w.elements.len(), (12 + 4) / 2);

        let e4 = make_group(&[2, 2]).unwrap();
        assert!(
            construct_witness(&Construction::TwoTorsionPlusHalforbit { group: e4 }).is_err()
        );
    }

    #[test]
    fn even_elements_witness() {
        let w = construct_witness(&Construction::EvenElements { n: 12, h: 3 }).unwrap();
        assert_eq!(w.elements, vec![0, 2, 4, 6, 8, 10]);
        assert!(construct_witness(&Construction::EvenElements { n: 9, h: 3 }).is_err());
    }

    #[test]
    fn witness_json_round_trip() {
        let w = construct_witness(&Construction::CosetStripe { n: 10, h: 2, d: 2 }).unwrap();
        let line = w.to_json().unwrap();
        let back = WitnessSet::from_json(&line).unwrap();
        assert_eq!(w, back);
        back.validate().unwrap();
    }

    #[test]
    fn validate_rejects_bogus_witness() {
        let z10 = GroupSpec::cyclic(10).unwrap();
        let w = WitnessSet {
            group: z10,
            elements: vec![0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
            certifies: Certificate::SumsetDeficient,
            h: 2,
            g: None,
            claimed_size: None,
            exact: true,
        };
        assert!(w.validate().is_err());
    }
}
