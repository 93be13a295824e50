//! Coordinated ℤ₂ boundary-matrix reduction.
//!
//! The same left-to-right column reduction runs twice per degree: once on
//! the boundary matrix of `L` (standard persistence) and once on the boundary
//! matrix of `K` with rows reordered so that cells of `L` come first (image
//! persistence). Reading both pivot tables from the birth column of each
//! class gives the triples `(b, d', d)`.

use serde::{Deserialize, Serialize};

use crate::complex::FilteredPair;
use crate::error::{Error, Result};

/// A total order on the rows of a boundary matrix, given as the cell ids in
/// increasing row-key order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowOrder {
    ids: Vec<usize>,
    key_of_position: Vec<usize>,
}

impl RowOrder {
    /// Rows in filtration order.
    pub fn filtration(fp: &FilteredPair) -> Self {
        let positions: Vec<usize> = (0..fp.n()).collect();
        Self::from_positions(fp, positions)
    }

    fn from_positions(fp: &FilteredPair, positions: Vec<usize>) -> Self {
        let mut key_of_position = vec![0; fp.n()];
        for (key, &pos) in positions.iter().enumerate() {
            key_of_position[pos] = key;
        }
        let ids = positions.iter().map(|&p| fp.cells()[p].id).collect();
        RowOrder {
            ids,
            key_of_position,
        }
    }

    /// Cell ids listed from smallest to greatest row key.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    pub fn key_of_position(&self, pos: usize) -> usize {
        self.key_of_position[pos]
    }

    pub fn id_of_key(&self, key: usize) -> usize {
        self.ids[key]
    }
}

/// Row order with every cell of `L` ahead of every cell of `K ∖ L`, each
/// block in filtration order.
pub fn image_row_order(fp: &FilteredPair) -> RowOrder {
    let (l, rest): (Vec<usize>, Vec<usize>) = (0..fp.n()).partition(|&p| fp.cells()[p].in_l());
    RowOrder::from_positions(fp, l.into_iter().chain(rest).collect())
}

/// Column-major sparse ℤ₂ matrix. Each column is a strictly increasing list
/// of row keys, so the pivot is its last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseBoundaryMatrix {
    col_ids: Vec<usize>,
    columns: Vec<Vec<usize>>,
    rows: usize,
}

impl SparseBoundaryMatrix {
    /// Builds a matrix from columns given as row keys in any order; keys
    /// appearing an even number of times cancel.
    pub fn new(col_ids: Vec<usize>, columns: Vec<Vec<usize>>, rows: usize) -> Self {
        assert_eq!(col_ids.len(), columns.len());
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                let mut out: Vec<usize> = Vec::with_capacity(c.len());
                for k in c {
                    assert!(k < rows, "row key {k} out of range");
                    if out.last() == Some(&k) {
                        out.pop();
                    } else {
                        out.push(k);
                    }
                }
                out
            })
            .collect();
        SparseBoundaryMatrix {
            col_ids,
            columns,
            rows,
        }
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    /// Id labelling column `j`.
    pub fn col_id(&self, j: usize) -> usize {
        self.col_ids[j]
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn pivot(&self, j: usize) -> Option<usize> {
        self.columns[j].last().copied()
    }

    /// Reduces in place: for each column left to right, while an earlier
    /// column has the same pivot, add that column to it modulo 2.
    pub fn reduce_in_place(&mut self) {
        let mut owner: Vec<Option<usize>> = vec![None; self.rows];
        let mut scratch = Vec::new();
        for j in 0..self.columns.len() {
            while let Some(p) = self.pivot(j) {
                match owner[p] {
                    Some(k) => {
                        let (left, right) = self.columns.split_at_mut(j);
                        add_mod2(&mut right[0], &left[k], &mut scratch);
                    }
                    None => {
                        owner[p] = Some(j);
                        break;
                    }
                }
            }
        }
    }

    /// Map from row key to the column index owning it as pivot.
    pub fn pivot_owners(&self) -> Vec<Option<usize>> {
        let mut owner = vec![None; self.rows];
        for j in 0..self.columns.len() {
            if let Some(p) = self.pivot(j) {
                owner[p] = Some(j);
            }
        }
        owner
    }

    /// Whether the nonzero columns have pairwise distinct pivots.
    pub fn is_reduced(&self) -> bool {
        let mut seen = vec![false; self.rows];
        for j in 0..self.columns.len() {
            if let Some(p) = self.pivot(j) {
                if seen[p] {
                    return false;
                }
                seen[p] = true;
            }
        }
        true
    }

    /// `(pivot row key, column id)` for every nonzero column.
    pub fn pairing(&self) -> Vec<(usize, usize)> {
        (0..self.columns.len())
            .filter_map(|j| self.pivot(j).map(|p| (p, self.col_ids[j])))
            .collect()
    }
}

/// `target += source` over ℤ₂, both sorted.
fn add_mod2(target: &mut Vec<usize>, source: &[usize], scratch: &mut Vec<usize>) {
    scratch.clear();
    scratch.reserve(target.len() + source.len());
    let (mut i, mut j) = (0, 0);
    while i < target.len() && j < source.len() {
        match target[i].cmp(&source[j]) {
            std::cmp::Ordering::Less => {
                scratch.push(target[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                scratch.push(source[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    scratch.extend_from_slice(&target[i..]);
    scratch.extend_from_slice(&source[j..]);
    std::mem::swap(target, scratch);
}

/// Returns the reduced form of `m`.
pub fn reduce(mut m: SparseBoundaryMatrix) -> SparseBoundaryMatrix {
    m.reduce_in_place();
    m
}

/// One triple of an index mixup barcode. `None` stands for a class that
/// never dies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IndexMixupTriple {
    pub degree: usize,
    pub birth: usize,
    pub death_img: Option<usize>,
    pub death: Option<usize>,
}

impl IndexMixupTriple {
    /// `b ≤ d' ≤ d`, with `None` above every index.
    pub fn is_ordered(&self) -> bool {
        let le = |x: Option<usize>, y: Option<usize>| match (x, y) {
            (_, None) => true,
            (None, Some(_)) => false,
            (Some(x), Some(y)) => x <= y,
        };
        le(Some(self.birth), self.death_img) && le(self.death_img, self.death)
    }
}

/// Boundary matrices of `K` and `L` in degree `k`, before reduction.
#[derive(Debug, Clone)]
pub struct DegreeMatrices {
    /// Columns of the k- and (k+1)-cells of `K`, rows in image order.
    pub bk: SparseBoundaryMatrix,
    /// `bk` with the columns and rows of `K ∖ L` emptied.
    pub bl: SparseBoundaryMatrix,
    pub rows: RowOrder,
}

/// Builds `BK` and `BL` for degree `k`.
pub fn degree_matrices(fp: &FilteredPair, k: usize) -> DegreeMatrices {
    let rows = image_row_order(fp);
    let cells = fp.cells();
    let mut col_ids = Vec::new();
    let mut bk_cols = Vec::new();
    let mut bl_cols = Vec::new();
    for cell in cells.iter().filter(|c| c.dim == k || c.dim == k + 1) {
        let keyed: Vec<usize> = cell
            .boundary
            .iter()
            .map(|&f| rows.key_of_position(fp.position(f).expect("validated face")))
            .collect();
        let in_l: Vec<usize> = if cell.in_l() {
            cell.boundary
                .iter()
                .filter(|&&f| fp.cell(f).is_some_and(|c| c.in_l()))
                .map(|&f| rows.key_of_position(fp.position(f).expect("validated face")))
                .collect()
        } else {
            Vec::new()
        };
        col_ids.push(cell.id);
        bk_cols.push(keyed);
        bl_cols.push(in_l);
    }
    let n = fp.n();
    DegreeMatrices {
        bk: SparseBoundaryMatrix::new(col_ids.clone(), bk_cols, n),
        bl: SparseBoundaryMatrix::new(col_ids, bl_cols, n),
        rows,
    }
}

/// Index mixup barcode of `L ↪ K` in degree `k`, one triple per
/// persistence class of `L`, ordered by birth.
pub fn mixup_barcode_indices(fp: &FilteredPair, k: usize) -> Result<Vec<IndexMixupTriple>> {
    match fp.max_dim() {
        Some(max) if k > max => return Err(Error::DegreeOutOfRange { degree: k, max }),
        None if k > 0 => return Err(Error::DegreeOutOfRange { degree: k, max: 0 }),
        _ => {}
    }
    fp.check_subcomplex()?;
    let DegreeMatrices {
        mut bk,
        mut bl,
        rows,
    } = degree_matrices(fp, k);
    bk.reduce_in_place();
    bl.reduce_in_place();
    let owner_k = bk.pivot_owners();
    let owner_l = bl.pivot_owners();

    let mut triples = Vec::new();
    for j in 0..bl.num_columns() {
        let id = bl.col_id(j);
        let pos = fp.position(id).expect("column of fp");
        let cell = &fp.cells()[pos];
        if cell.dim != k || !cell.in_l() || bl.pivot(j).is_some() {
            continue;
        }
        let key = rows.key_of_position(pos);
        let death = owner_l[key].map(|c| bl.col_id(c));
        let death_img = owner_k[key].map(|c| bk.col_id(c));
        triples.push(IndexMixupTriple {
            degree: k,
            birth: id,
            death_img,
            death,
        });
    }
    Ok(triples)
}

/// A mixup triple in filtration values. Infinite deaths are `f64::INFINITY`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ValueTriple {
    pub birth: f64,
    pub death_img: f64,
    pub death: f64,
}

impl ValueTriple {
    /// Bars whose birth and death share a value.
    pub fn is_zero_length(&self) -> bool {
        self.birth == self.death
    }
}

/// Replaces every index with the filtration value of its cell.
pub fn to_value_barcode(
    triples: &[IndexMixupTriple],
    fp: &FilteredPair,
) -> Result<Vec<ValueTriple>> {
    let value = |id: Option<usize>| -> Result<f64> {
        match id {
            Some(id) => fp.value(id),
            None => Ok(f64::INFINITY),
        }
    };
    triples
        .iter()
        .map(|t| {
            Ok(ValueTriple {
                birth: fp.value(t.birth)?,
                death_img: value(t.death_img)?,
                death: value(t.death)?,
            })
        })
        .collect()
}
