use serde::Serialize;

use crate::error::Result;

use super::{link_of, FlagComplex};

/// Homological `n`-connectivity: nonempty with `H~_i = 0` for `0 <= i <= n`.
/// Degree 0 is decided by graph connectivity; `n <= -2` holds vacuously.
pub fn homological_connectivity(k: &FlagComplex, n: i64, cap: u64) -> Result<bool> {
    if n <= -2 {
        return Ok(true);
    }
    if k.vertex_count() == 0 {
        return Ok(false);
    }
    if n == -1 {
        return Ok(true);
    }
    if !k.is_connected() {
        return Ok(false);
    }
    if n == 0 {
        return Ok(true);
    }
    Ok(k.homology(n as usize, cap)?.vanishes_through(n as usize))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum LcmVerdict {
    Pass {
        simplices_checked: u64,
    },
    Fail {
        simplex: Vec<usize>,
        required_connectivity: i64,
    },
    Inconclusive {
        simplices_checked: u64,
        reason: String,
    },
}

impl LcmVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, LcmVerdict::Pass { .. })
    }
}

/// Every `p`-simplex with `p <= p_cap` has an `(n - p - 2)`-connected link.
///
/// Links of `p`-simplices with `p >= n` only need `(-2)`-connectivity, which
/// is vacuous, so the check is complete once `p_cap >= n - 1`; otherwise
/// untested simplices make the verdict inconclusive.
pub fn lcm_check(k: &FlagComplex, n: i64, p_cap: usize, cap: u64) -> Result<LcmVerdict> {
    let needed = n - 1;
    let top = needed.min(p_cap as i64);
    let mut checked = 0u64;
    if top >= 0 {
        let simplices = k.simplices_up_to(top as usize, cap)?;
        for (p, list) in simplices.iter().enumerate() {
            let required = n - p as i64 - 2;
            for sigma in list {
                checked += 1;
                let link = link_of(k, sigma)?;
                if !homological_connectivity(&link, required, cap)? {
                    return Ok(LcmVerdict::Fail {
                        simplex: sigma.clone(),
                        required_connectivity: required,
                    });
                }
            }
        }
    }
    if (p_cap as i64) < needed && k.has_simplex_of_dim(p_cap + 1) {
        return Ok(LcmVerdict::Inconclusive {
            simplices_checked: checked,
            reason: format!(
                "simplices of dimension {} to {} were not examined",
                p_cap + 1,
                needed
            ),
        });
    }
    Ok(LcmVerdict::Pass {
        simplices_checked: checked,
    })
}

/// `(n - 1)`-connected and `lCM >= n`.
pub fn wcm_check(k: &FlagComplex, n: i64, p_cap: usize, cap: u64) -> Result<LcmVerdict> {
    if !homological_connectivity(k, n - 1, cap)? {
        return Ok(LcmVerdict::Fail {
            simplex: Vec::new(),
            required_connectivity: n - 1,
        });
    }
    lcm_check(k, n, p_cap, cap)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scomplex::SIMPLEX_CAP;

    #[test]
    fn connectivity_examples() {
        let pt = FlagComplex::empty(1);
        assert!(homological_connectivity(&pt, -1, SIMPLEX_CAP).unwrap());
        assert!(homological_connectivity(&FlagComplex::empty(0), -2, SIMPLEX_CAP).unwrap());
        assert!(!homological_connectivity(&FlagComplex::empty(0), -1, SIMPLEX_CAP).unwrap());
        assert!(!homological_connectivity(&FlagComplex::empty(2), 0, SIMPLEX_CAP).unwrap());
        assert!(homological_connectivity(&FlagComplex::complete(5), 2, SIMPLEX_CAP).unwrap());
        let c6 = FlagComplex::from_edges(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>())
            .unwrap();
        assert!(homological_connectivity(&c6, 0, SIMPLEX_CAP).unwrap());
        assert!(!homological_connectivity(&c6, 1, SIMPLEX_CAP).unwrap());
    }

    #[test]
    fn lcm_examples() {
        assert!(lcm_check(&FlagComplex::complete(5), 2, 4, SIMPLEX_CAP)
            .unwrap()
            .is_pass());
        let two_edges = FlagComplex::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(lcm_check(&two_edges, 1, 3, SIMPLEX_CAP).unwrap().is_pass());
        let c6 = FlagComplex::from_edges(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>())
            .unwrap();
        assert!(lcm_check(&c6, 1, 3, SIMPLEX_CAP).unwrap().is_pass());
        // vertex links of the 6-cycle are two points, not connected
        assert!(matches!(
            lcm_check(&c6, 2, 3, SIMPLEX_CAP).unwrap(),
            LcmVerdict::Fail {
                required_connectivity: 0,
                ..
            }
        ));
        // p_cap too small to see edges that matter at n = 3
        assert!(matches!(
            lcm_check(&FlagComplex::complete(4), 3, 0, SIMPLEX_CAP).unwrap(),
            LcmVerdict::Inconclusive { .. }
        ));
        assert!(!wcm_check(&two_edges, 1, 3, SIMPLEX_CAP).unwrap().is_pass());
    }
}
