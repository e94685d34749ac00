use serde::Serialize;

use crate::error::Result;
use crate::linking::{are_isomorphic_with_cap, k_rank, LinkingForm, RankBudget, ISO_SEARCH_CAP};

#[derive(Clone, Debug, Serialize)]
pub struct CancellationReport {
    /// `M ⊕ W_k ≅ N ⊕ W_k`.
    pub stabilized: bool,
    /// `M ≅ N`.
    pub unstabilized: bool,
    pub nonsingular: bool,
    /// The two answers coincide, as required on nonsingular inputs.
    pub agree: bool,
    /// `k_rank(M ⊕ W_k)`, a lower bound for its stable rank.
    pub sum_rank: usize,
    pub sum_rank_certified: bool,
    /// Rank at least 4 makes `L(M ⊕ W_k)_k` connected by the connectivity
    /// theorem, so the cancellation hypothesis holds.
    pub connected_by_rank: bool,
}

pub fn cancellation_check(
    m: &LinkingForm,
    n: &LinkingForm,
    k: u64,
    budget: &RankBudget,
) -> Result<CancellationReport> {
    let w = LinkingForm::standard_w(k)?;
    let (ms, ns) = (m.direct_sum(&w), n.direct_sum(&w));
    let stabilized = are_isomorphic_with_cap(&ms, &ns, ISO_SEARCH_CAP)?;
    let unstabilized = are_isomorphic_with_cap(m, n, ISO_SEARCH_CAP)?;
    let nonsingular = m.is_nonsingular() && n.is_nonsingular();
    let rank = k_rank(&ms, k, budget)?;
    Ok(CancellationReport {
        stabilized,
        unstabilized,
        nonsingular,
        agree: !nonsingular || stabilized == unstabilized,
        sum_rank: rank.rank,
        sum_rank_certified: rank.certified,
        connected_by_rank: rank.rank >= 4,
    })
}
