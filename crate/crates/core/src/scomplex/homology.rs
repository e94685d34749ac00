use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{smith_normal_form, IntMatrix};
use crate::error::{Error, Result};

use super::FlagComplex;

/// Default cap on the number of simplices enumerated for homology.
pub const SIMPLEX_CAP: u64 = 5_000_000;

/// A finite simplicial complex stored as all of its simplices by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    by_dim: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Downward closure of the given facets.
    pub fn from_facets(n: usize, facets: &[Vec<usize>]) -> Result<Self> {
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v >= n) {
                return Err(Error::VertexOutOfRange(v));
            }
            let m = f.len();
            for mask in 1u64..(1u64 << m) {
                let face: Vec<usize> = (0..m)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| f[i])
                    .collect();
                seen.insert(face);
            }
        }
        for v in 0..n {
            seen.insert(vec![v]);
        }
        Ok(Self::from_set(n, seen))
    }

    fn from_set(n: usize, set: HashSet<Vec<usize>>) -> Self {
        let top = set.iter().map(Vec::len).max().unwrap_or(0);
        let mut by_dim = vec![Vec::new(); top];
        for s in set {
            by_dim[s.len() - 1].push(s);
        }
        for d in &mut by_dim {
            d.sort();
        }
        SimplicialComplex { n, by_dim }
    }

    /// Boundary of the `d`-simplex on `d + 1` vertices.
    pub fn simplex_boundary(d: usize) -> Self {
        let facets: Vec<Vec<usize>> = (0..=d)
            .map(|skip| (0..=d).filter(|&v| v != skip).collect())
            .collect();
        Self::from_facets(d + 1, &facets).expect("vertices in range")
    }

    /// The flag complex with all of its cliques.
    pub fn from_flag(k: &FlagComplex, cap: u64) -> Result<Self> {
        let top = k.clique_number();
        let by_dim = if top == 0 {
            Vec::new()
        } else {
            k.simplices_up_to(top - 1, cap)?
        };
        Ok(SimplicialComplex {
            n: k.vertex_count(),
            by_dim,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// `-1` for the empty complex.
    pub fn dim(&self) -> isize {
        self.by_dim.len() as isize - 1
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.by_dim.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn counts(&self) -> Vec<u64> {
        self.by_dim.iter().map(|d| d.len() as u64).collect()
    }

    pub fn contains(&self, sigma: &[usize]) -> bool {
        if sigma.is_empty() {
            return true;
        }
        self.simplices(sigma.len() - 1)
            .binary_search(&sigma.to_vec())
            .is_ok()
    }

    /// Simplices disjoint from `sigma` whose union with it is a simplex.
    pub fn link(&self, sigma: &[usize]) -> Result<SimplicialComplex> {
        let mut sigma = sigma.to_vec();
        sigma.sort_unstable();
        if !self.contains(&sigma) {
            return Err(Error::NotASimplex);
        }
        let mut set = HashSet::new();
        for d in &self.by_dim {
            for s in d {
                if sigma.iter().all(|v| s.binary_search(v).is_ok()) && s.len() > sigma.len() {
                    set.insert(
                        s.iter()
                            .copied()
                            .filter(|v| sigma.binary_search(v).is_err())
                            .collect::<Vec<_>>(),
                    );
                }
            }
        }
        let mut out = Self::from_set(self.n, set);
        // only vertices of the link are kept
        out.n = self.n;
        Ok(out)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.by_dim
            .iter()
            .enumerate()
            .map(|(d, s)| {
                if d % 2 == 0 {
                    s.len() as i64
                } else {
                    -(s.len() as i64)
                }
            })
            .sum()
    }

    pub fn homology(&self) -> Result<HomologyResult> {
        let dims = self.by_dim.len();
        homology_of(&self.by_dim, dims.saturating_sub(1), true, |_| true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub betti: u64,
    /// Torsion coefficients greater than one, in divisibility order.
    pub torsion: Vec<u64>,
}

impl DegreeHomology {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomologyResult {
    /// Reduced (augmented) homology when set; otherwise ordinary or relative.
    pub reduced: bool,
    pub degrees: Vec<DegreeHomology>,
    /// Number of simplices (or relative cells) per dimension that were used.
    pub simplex_counts: Vec<u64>,
    /// Every simplex of the complex was seen, so all degrees are final.
    pub complete: bool,
    /// Alternating simplex count against Betti numbers, when `complete`.
    pub euler_consistent: Option<bool>,
}

impl HomologyResult {
    pub fn degree(&self, d: usize) -> Option<&DegreeHomology> {
        self.degrees.get(d)
    }

    pub fn betti(&self, d: usize) -> u64 {
        self.degrees.get(d).map_or(0, |h| h.betti)
    }

    pub fn torsion(&self, d: usize) -> &[u64] {
        self.degrees.get(d).map_or(&[], |h| h.torsion.as_slice())
    }

    /// All computed groups in degrees `0..=n` vanish.
    pub fn vanishes_through(&self, n: usize) -> bool {
        (0..=n).all(|d| self.degrees.get(d).is_none_or(DegreeHomology::is_zero))
    }
}

/// Homology of the cells kept by `keep` among `simplices` (grouped by
/// dimension), in degrees `0..=max_deg`. Faces that are not kept are dropped
/// from boundaries, which gives relative homology when `keep` excludes a
/// subcomplex. `simplices` must contain dimension `max_deg + 1` when present.
pub fn homology_of<F>(
    simplices: &[Vec<Vec<usize>>],
    max_deg: usize,
    augmented: bool,
    keep: F,
) -> Result<HomologyResult>
where
    F: Fn(&[usize]) -> bool,
{
    let cells: Vec<Vec<&Vec<usize>>> = simplices
        .iter()
        .map(|d| d.iter().filter(|s| keep(s)).collect())
        .collect();
    let count = |d: usize| cells.get(d).map_or(0, Vec::len);
    let top = cells.len();
    // rank and torsion of boundary d : C_d -> C_{d-1}, for d in 0..=max_deg+1
    let mut ranks = Vec::new();
    let mut torsions = Vec::new();
    for d in 0..=max_deg + 1 {
        if d >= top || count(d) == 0 {
            ranks.push(0);
            torsions.push(Vec::new());
            continue;
        }
        let (cols, nrows) = if d == 0 {
            if !augmented {
                ranks.push(0);
                torsions.push(Vec::new());
                continue;
            }
            (vec![vec![(0usize, 1i128)]; count(0)], 1)
        } else {
            let index: HashMap<&[usize], usize> = cells[d - 1]
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_slice(), i))
                .collect();
            let cols = cells[d]
                .iter()
                .map(|s| {
                    let mut col: Vec<(usize, i128)> = (0..s.len())
                        .filter_map(|i| {
                            let face: Vec<usize> = s
                                .iter()
                                .enumerate()
                                .filter(|&(j, _)| j != i)
                                .map(|(_, &v)| v)
                                .collect();
                            let sign = if i % 2 == 0 { 1 } else { -1 };
                            index.get(face.as_slice()).map(|&r| (r, sign))
                        })
                        .collect();
                    col.sort_unstable();
                    col
                })
                .collect();
            (cols, count(d - 1))
        };
        let (rank, torsion) = rank_and_torsion(cols, nrows)?;
        ranks.push(rank);
        torsions.push(torsion);
    }
    let degrees = (0..=max_deg)
        .map(|d| DegreeHomology {
            degree: d,
            betti: (count(d) - ranks[d] - ranks[d + 1]) as u64,
            torsion: torsions[d + 1].clone(),
        })
        .collect::<Vec<_>>();
    let complete = top <= max_deg + 1;
    let euler_consistent = complete.then(|| {
        let chi: i64 = (0..top)
            .map(|d| {
                if d % 2 == 0 {
                    count(d) as i64
                } else {
                    -(count(d) as i64)
                }
            })
            .sum();
        let chi = if augmented { chi - 1 } else { chi };
        let betti: i64 = degrees
            .iter()
            .map(|h| {
                if h.degree % 2 == 0 {
                    h.betti as i64
                } else {
                    -(h.betti as i64)
                }
            })
            .sum();
        // reduced homology of the empty complex lives in degree -1
        let betti = if augmented && count(0) == 0 {
            betti - 1
        } else {
            betti
        };
        chi == betti
    });
    Ok(HomologyResult {
        reduced: augmented,
        degrees,
        simplex_counts: (0..top).map(|d| count(d) as u64).collect(),
        complete,
        euler_consistent,
    })
}

impl FlagComplex {
    /// Reduced homology in degrees `0..=max_dim`.
    pub fn homology(&self, max_dim: usize, cap: u64) -> Result<HomologyResult> {
        let simplices = self.simplices_up_to(max_dim + 1, cap)?;
        if self.has_simplex_of_dim(max_dim + 2) {
            return homology_of(&simplices, max_dim, true, |_| true);
        }
        // nothing above max_dim + 1, so that degree is final as well
        homology_of(&simplices, max_dim + 1, true, |_| true)
    }
}

/// Rank and non-unit invariant factors of a sparse integer matrix given by
/// columns. Unit pivots are eliminated sparsely; the rest goes to dense SNF.
fn rank_and_torsion(cols: Vec<Vec<(usize, i128)>>, nrows: usize) -> Result<(usize, Vec<u64>)> {
    let ncols = cols.len();
    let mut cols = cols;
    let mut alive = vec![true; ncols];
    let mut row_cols: Vec<HashSet<usize>> = vec![HashSet::new(); nrows];
    for (c, col) in cols.iter().enumerate() {
        for &(r, _) in col {
            row_cols[r].insert(c);
        }
    }
    let mut rank = 0;
    let mut progress = true;
    'outer: while progress {
        progress = false;
        for c in 0..ncols {
            if !alive[c] || cols[c].is_empty() {
                continue;
            }
            let Some(&(r, pv)) = cols[c]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(r, _)| row_cols[*r].len())
            else {
                continue;
            };
            let pivot_col = std::mem::take(&mut cols[c]);
            let others: Vec<usize> = row_cols[r].iter().copied().filter(|&o| o != c).collect();
            let mut updates = Vec::with_capacity(others.len());
            for &o in &others {
                let factor = entry(&cols[o], r) * pv;
                match axpy(&cols[o], &pivot_col, factor) {
                    Some(new) => updates.push((o, new)),
                    None => {
                        cols[c] = pivot_col;
                        break 'outer;
                    }
                }
            }
            for (o, new) in updates {
                for &(row, _) in &cols[o] {
                    row_cols[row].remove(&o);
                }
                for &(row, _) in &new {
                    row_cols[row].insert(o);
                }
                cols[o] = new;
            }
            for &(row, _) in &pivot_col {
                row_cols[row].remove(&c);
            }
            alive[c] = false;
            rank += 1;
            progress = true;
        }
    }
    let rest: Vec<&Vec<(usize, i128)>> = (0..ncols)
        .filter(|&c| alive[c] && !cols[c].is_empty())
        .map(|c| &cols[c])
        .collect();
    if rest.is_empty() {
        return Ok((rank, Vec::new()));
    }
    let mut rows: Vec<usize> = rest
        .iter()
        .flat_map(|c| c.iter().map(|&(r, _)| r))
        .collect();
    rows.sort_unstable();
    rows.dedup();
    let pos: HashMap<usize, usize> = rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = IntMatrix::zeros(rows.len(), rest.len());
    for (j, col) in rest.iter().enumerate() {
        for &(r, v) in col.iter() {
            dense[(pos[&r], j)] = BigInt::from(v);
        }
    }
    let snf = smith_normal_form(&dense);
    let mut torsion = Vec::new();
    for d in snf.invariant_factors() {
        rank += 1;
        if !d.is_one() {
            torsion.push(d.to_u64().ok_or(Error::PrecisionOverflow { cap: 64 })?);
        }
    }
    Ok((rank, torsion))
}

fn entry(col: &[(usize, i128)], r: usize) -> i128 {
    col.binary_search_by_key(&r, |&(row, _)| row)
        .map_or(0, |i| col[i].1)
}

/// `a - factor * b` on sorted sparse columns; `None` on overflow.
fn axpy(a: &[(usize, i128)], b: &[(usize, i128)], factor: i128) -> Option<Vec<(usize, i128)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        let (r, v) = if take_a {
            i += 1;
            a[i - 1]
        } else if take_b {
            j += 1;
            (b[j - 1].0, factor.checked_mul(b[j - 1].1)?.checked_neg()?)
        } else {
            i += 1;
            j += 1;
            (
                a[i - 1].0,
                a[i - 1].1.checked_sub(factor.checked_mul(b[j - 1].1)?)?,
            )
        };
        if !v.is_zero() {
            out.push((r, v));
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rp2() -> SimplicialComplex {
        let facets = [
            [0, 1, 2],
            [0, 2, 3],
            [0, 3, 4],
            [0, 4, 5],
            [0, 5, 1],
            [1, 2, 4],
            [2, 3, 5],
            [3, 4, 1],
            [4, 5, 2],
            [5, 1, 3],
        ];
        SimplicialComplex::from_facets(6, &facets.map(|f| f.to_vec())).unwrap()
    }

    #[test]
    fn spheres() {
        for n in 1..=5 {
            let h = SimplicialComplex::simplex_boundary(n).homology().unwrap();
            for d in 0..n - 1 {
                assert!(h.degrees[d].is_zero(), "S^{} degree {d}", n - 1);
            }
            assert_eq!(h.betti(n - 1), 1);
            assert!(h.torsion(n - 1).is_empty());
            assert_eq!(h.euler_consistent, Some(true));
        }
    }

    #[test]
    fn projective_plane() {
        let k = rp2();
        assert_eq!(k.counts(), vec![6, 15, 10]);
        let h = k.homology().unwrap();
        assert!(h.degrees[0].is_zero());
        assert_eq!((h.betti(1), h.torsion(1)), (0, &[2u64][..]));
        assert!(h.degrees[2].is_zero());
        assert_eq!(h.euler_consistent, Some(true));
    }

    #[test]
    fn point_and_empty() {
        let pt = SimplicialComplex::from_facets(1, &[vec![0]]).unwrap();
        let h = pt.homology().unwrap();
        assert!(h.vanishes_through(0));
        let h = FlagComplex::empty(0).homology(1, SIMPLEX_CAP).unwrap();
        assert!(h.vanishes_through(1));
        assert_eq!(h.euler_consistent, Some(true));
    }

    #[test]
    fn flag_examples() {
        for m in 1..=8 {
            let h = FlagComplex::complete(m).homology(m, SIMPLEX_CAP).unwrap();
            assert!(h.vanishes_through(m), "K_{m}");
            assert_eq!(h.euler_consistent, Some(true));
        }
        let c6 = FlagComplex::from_edges(6, &(0..6).map(|i| (i, (i + 1) % 6)).collect::<Vec<_>>())
            .unwrap();
        let h = c6.homology(2, SIMPLEX_CAP).unwrap();
        assert_eq!((h.betti(0), h.betti(1)), (0, 1));
        let two = FlagComplex::empty(2);
        let h = two.homology(0, SIMPLEX_CAP).unwrap();
        assert_eq!(h.betti(0), 1);
    }

    #[test]
    fn triangle_boundary_link() {
        let tri = SimplicialComplex::simplex_boundary(2);
        let l = tri.link(&[0]).unwrap();
        assert_eq!(l.counts(), vec![2]);
        assert_eq!(l.simplices(0), &[vec![1], vec![2]]);
        assert_eq!(tri.link(&[]).unwrap(), tri);
        assert!(tri.link(&[0, 1, 2]).is_err());
    }

    #[test]
    fn sparse_matches_dense() {
        // a matrix whose unit eliminations create larger entries
        let cols = vec![vec![(0, 1), (1, 2)], vec![(0, 3), (1, 4)], vec![(1, 6)]];
        let (rank, torsion) = rank_and_torsion(cols, 2).unwrap();
        assert_eq!(rank, 2);
        assert_eq!(torsion, vec![2]);
    }
}
