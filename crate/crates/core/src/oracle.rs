//! Brute-force ground truth for persistence and image persistence.
//!
//! Ranks of the persistent homology maps are computed directly from the
//! vector spaces `Z_k(L_i) / (B_k(K_j) ∩ Z_k(L_i))` with dense ℤ₂ Gaussian
//! elimination, and barcodes are recovered from the ranks by
//! inclusion–exclusion. Nothing here shares code with [`crate::reduce`].

use serde::{Deserialize, Serialize};

use crate::complex::FilteredPair;
use crate::error::{Error, Result};
use crate::reduce::mixup_barcode_indices;

/// Largest filtration accepted by [`rank_function`].
pub const ORACLE_CELL_LIMIT: usize = 2_000;

/// Which persistence module to measure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RankMode {
    /// `H_k(L)`: cycles and boundaries of `L`.
    StandardL,
    /// `H_k(K)`: cycles and boundaries of `K`.
    StandardK,
    /// `im H_k(L) → H_k(K)`: cycles of `L`, boundaries of `K`.
    Image,
}

/// Dimensions `r(i, j)` of the persistent homology spaces for `0 ≤ i ≤ j ≤ n`,
/// with `r(0, j) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankFunction {
    pub degree: usize,
    n: usize,
    ids: Vec<usize>,
    table: Vec<u32>,
}

impl RankFunction {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank at filtration positions `i ≤ j` (1-based; 0 means "before the
    /// first cell").
    pub fn get(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i <= j && j <= self.n);
        self.table[i * (self.n + 1) + j]
    }

    /// Cell id at 1-based position `i`.
    pub fn id_at(&self, i: usize) -> usize {
        self.ids[i - 1]
    }

    /// `r(i, j) ≥ r(i, j + 1)` and `r(i, j) ≤ r(i + 1, j)` wherever defined.
    pub fn is_monotone(&self) -> bool {
        for i in 0..=self.n {
            for j in i..=self.n {
                if j < self.n && self.get(i, j) < self.get(i, j + 1) {
                    return false;
                }
                if i < j && self.get(i, j) > self.get(i + 1, j) {
                    return false;
                }
            }
        }
        true
    }
}

/// An interval `[birth, death)` of cell ids; `None` for an essential class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Interval {
    pub birth: usize,
    pub death: Option<usize>,
}

#[derive(Clone)]
struct BitVec(Vec<u64>);

impl BitVec {
    fn zeros(len: usize) -> Self {
        BitVec(vec![0; len.div_ceil(64).max(1)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn xor(&mut self, other: &BitVec) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn highest(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i * 64 + 63 - w.leading_zeros() as usize)
    }
}

/// Row-echelon basis of a subspace of ℤ₂^len.
#[derive(Clone)]
struct Echelon {
    by_pivot: Vec<Option<usize>>,
    rows: Vec<BitVec>,
}

impl Echelon {
    fn new(len: usize) -> Self {
        Echelon {
            by_pivot: vec![None; len],
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    fn insert(&mut self, mut v: BitVec) -> bool {
        while let Some(p) = v.highest() {
            match self.by_pivot[p] {
                Some(r) => v.xor(&self.rows[r]),
                None => {
                    self.by_pivot[p] = Some(self.rows.len());
                    self.rows.push(v);
                    return true;
                }
            }
        }
        false
    }
}

/// Cycles of the k-chains of the selected cells, discovered in filtration
/// order: entry `m` is `(position, cycle)` and the first `m` cycles span
/// `Z_k` of the prefix ending just before the next entry.
fn cycle_basis(
    fp: &FilteredPair,
    k: usize,
    k_index: &[Option<usize>],
    n_k: usize,
    face_index: &[Option<usize>],
    n_faces: usize,
    include: impl Fn(usize) -> bool,
) -> Vec<(usize, BitVec)> {
    // Track each reduced boundary together with the chain producing it.
    let mut by_pivot: Vec<Option<usize>> = vec![None; n_faces];
    let mut reduced: Vec<(BitVec, BitVec)> = Vec::new();
    let mut cycles = Vec::new();
    for (pos, cell) in fp.cells().iter().enumerate() {
        if cell.dim != k || !include(pos) {
            continue;
        }
        let mut boundary = BitVec::zeros(n_faces);
        for &f in &cell.boundary {
            let fpos = fp.position(f).expect("validated face");
            boundary.set(face_index[fpos].expect("face of dimension k - 1"));
        }
        let mut chain = BitVec::zeros(n_k);
        chain.set(k_index[pos].expect("k-cell"));
        loop {
            match boundary.highest() {
                None => {
                    cycles.push((pos, chain));
                    break;
                }
                Some(p) => match by_pivot[p] {
                    Some(r) => {
                        boundary.xor(&reduced[r].0);
                        chain.xor(&reduced[r].1);
                    }
                    None => {
                        by_pivot[p] = Some(reduced.len());
                        reduced.push((boundary, chain));
                        break;
                    }
                },
            }
        }
    }
    cycles
}

/// Computes the rank function of the chosen module in degree `k`.
pub fn rank_function(fp: &FilteredPair, k: usize, mode: RankMode) -> Result<RankFunction> {
    let n = fp.n();
    if n > ORACLE_CELL_LIMIT {
        return Err(Error::TooLarge {
            cells: n,
            limit: ORACLE_CELL_LIMIT,
        });
    }
    let cells = fp.cells();
    let index_dim = |d: Option<usize>| {
        let mut idx = vec![None; n];
        let mut count = 0;
        if let Some(d) = d {
            for (pos, c) in cells.iter().enumerate() {
                if c.dim == d {
                    idx[pos] = Some(count);
                    count += 1;
                }
            }
        }
        (idx, count)
    };
    let (k_index, n_k) = index_dim(Some(k));
    let (face_index, n_faces) = index_dim(k.checked_sub(1));

    let cycles_from_l = !matches!(mode, RankMode::StandardK);
    let boundaries_from_l = matches!(mode, RankMode::StandardL);
    let cycles = cycle_basis(fp, k, &k_index, n_k, &face_index, n_faces, |pos| {
        !cycles_from_l || cells[pos].in_l()
    });

    // Boundary vectors of the (k+1)-cells in filtration order.
    let boundaries: Vec<(usize, BitVec)> = cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.dim == k + 1 && (!boundaries_from_l || c.in_l()))
        .map(|(pos, c)| {
            let mut v = BitVec::zeros(n_k);
            for &f in &c.boundary {
                let fpos = fp.position(f).expect("validated face");
                v.set(k_index[fpos].expect("face of dimension k"));
            }
            (pos, v)
        })
        .collect();

    // rank(B_j) for every prefix length j = 0..=n.
    let mut b_rank = vec![0u32; n + 1];
    {
        let mut ech = Echelon::new(n_k);
        let mut next = 0;
        for (j, rank) in b_rank.iter_mut().enumerate().skip(1) {
            while next < boundaries.len() && boundaries[next].0 < j {
                ech.insert(boundaries[next].1.clone());
                next += 1;
            }
            *rank = ech.rank() as u32;
        }
    }

    // For each prefix of the cycle list, rank(Z + B_j) - rank(B_j).
    let mut per_z: Vec<Vec<u32>> = Vec::with_capacity(cycles.len() + 1);
    per_z.push(vec![0; n + 1]);
    for z in 1..=cycles.len() {
        let mut ech = Echelon::new(n_k);
        for (_, c) in &cycles[..z] {
            ech.insert(c.clone());
        }
        let mut row = vec![0u32; n + 1];
        let mut next = 0;
        for j in 1..=n {
            while next < boundaries.len() && boundaries[next].0 < j {
                ech.insert(boundaries[next].1.clone());
                next += 1;
            }
            row[j] = ech.rank() as u32 - b_rank[j];
        }
        per_z.push(row);
    }

    let width = n + 1;
    let mut table = vec![0u32; width * width];
    let mut z = 0;
    for i in 1..=n {
        while z < cycles.len() && cycles[z].0 < i {
            z += 1;
        }
        for j in i..=n {
            table[i * width + j] = per_z[z][j];
        }
    }
    Ok(RankFunction {
        degree: k,
        n,
        ids: cells.iter().map(|c| c.id).collect(),
        table,
    })
}

/// Recovers the barcode from a rank function by inclusion–exclusion:
/// the multiplicity of `[b, d)` is `r(b, d-1) - r(b, d) - r(b-1, d-1) + r(b-1, d)`.
pub fn barcode_from_ranks(rf: &RankFunction) -> Result<Vec<Interval>> {
    let n = rf.n();
    let r = |i: usize, j: usize| rf.get(i, j) as i64;
    let mut bars = Vec::new();
    for b in 1..=n {
        for d in (b + 1)..=n {
            let m = r(b, d - 1) - r(b, d) - r(b - 1, d - 1) + r(b - 1, d);
            push_bars(&mut bars, m, rf.id_at(b), Some(rf.id_at(d)))?;
        }
        let m = r(b, n) - r(b - 1, n);
        push_bars(&mut bars, m, rf.id_at(b), None)?;
    }
    bars.sort();
    Ok(bars)
}

fn push_bars(out: &mut Vec<Interval>, m: i64, birth: usize, death: Option<usize>) -> Result<()> {
    if m < 0 {
        return Err(Error::NegativeMultiplicity {
            birth,
            death: death.unwrap_or(usize::MAX),
        });
    }
    out.extend((0..m).map(|_| Interval { birth, death }));
    Ok(())
}

/// Outcome of checking the reduction against the oracle in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub degree: usize,
    pub triples: usize,
    pub persistence_matches: bool,
    pub image_matches: bool,
    pub ordered: bool,
    pub monotone: bool,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.persistence_matches && self.image_matches && self.ordered && self.monotone
    }
}

/// Compares the `(b, d)` and `(b, d')` multisets of the mixup barcode with
/// the barcodes recovered from the standard-`L` and image rank functions.
pub fn verify_pair(fp: &FilteredPair, k: usize) -> Result<VerifyReport> {
    let triples = mixup_barcode_indices(fp, k)?;
    let standard = rank_function(fp, k, RankMode::StandardL)?;
    let image = rank_function(fp, k, RankMode::Image)?;

    let mut pers: Vec<Interval> = triples
        .iter()
        .map(|t| Interval {
            birth: t.birth,
            death: t.death,
        })
        .collect();
    pers.sort();
    let mut img: Vec<Interval> = triples
        .iter()
        .filter(|t| t.death_img != Some(t.birth))
        .map(|t| Interval {
            birth: t.birth,
            death: t.death_img,
        })
        .collect();
    img.sort();

    Ok(VerifyReport {
        degree: k,
        triples: triples.len(),
        persistence_matches: pers == barcode_from_ranks(&standard)?,
        image_matches: img == barcode_from_ranks(&image)?,
        ordered: triples.iter().all(|t| t.is_ordered()),
        monotone: standard.is_monotone() && image.is_monotone(),
    })
}
