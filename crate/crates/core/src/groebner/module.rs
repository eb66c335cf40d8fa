//! Submodules of free modules, via tag variables: a vector `(v_1..v_r)` is
//! stored as `Σ v_i e_i` in a ring with extra variables `e_i`, and the
//! tagged Buchberger run keeps everything linear in the tags.

use std::sync::Arc;

use super::{buchberger, Ideal};
use crate::algebra::{Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::error::{Error, Result};

/// Rectangular polynomial matrix, row-major. A matrix with zero columns is
/// the zero submodule.
#[derive(Clone, Debug, PartialEq)]
pub struct ModuleMatrix {
    ring: Arc<PolyRing>,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl ModuleMatrix {
    pub fn new(ring: &Arc<PolyRing>, rows: usize, cols: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument(format!(
                "matrix of shape {rows}x{cols} needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if entries
            .iter()
            .any(|e| !(Arc::ptr_eq(e.ring(), ring) || **e.ring() == **ring))
        {
            return Err(Error::RingMismatch("matrix entries in different rings".into()));
        }
        Ok(ModuleMatrix {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: &Arc<PolyRing>, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::InvalidArgument("ragged matrix rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_columns(ring: &Arc<PolyRing>, rows: usize, columns: Vec<Vec<Polynomial>>) -> Result<Self> {
        let c = columns.len();
        if columns.iter().any(|col| col.len() != rows) {
            return Err(Error::InvalidArgument("column length differs from row count".into()));
        }
        let mut entries = Vec::with_capacity(rows * c);
        for i in 0..rows {
            for col in &columns {
                entries.push(col[i].clone());
            }
        }
        Self::new(ring, rows, c, entries)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Polynomial> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn transpose(&self) -> ModuleMatrix {
        let mut entries = Vec::with_capacity(self.entries.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.get(r, c).clone());
            }
        }
        ModuleMatrix {
            ring: self.ring.clone(),
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    /// `M · v`.
    pub fn apply(&self, v: &[Polynomial]) -> Vec<Polynomial> {
        (0..self.rows)
            .map(|r| (0..self.cols).fold(self.ring.zero(), |acc, c| acc.add(&self.get(r, c).mul(&v[c]))))
            .collect()
    }
}

/// Split a tag-linear polynomial into its components, mapping the untagged
/// variables into `target` through `var_map`.
pub(crate) fn tag_components(
    g: &Polynomial,
    tag_start: usize,
    ntags: usize,
    target: &Arc<PolyRing>,
    var_map: &[usize],
) -> Vec<Polynomial> {
    let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); ntags];
    let n = target.nvars();
    for (m, c) in g.terms() {
        let e = m.exponents();
        let k = (tag_start..tag_start + ntags)
            .find(|&v| e[v] > 0)
            .expect("tag-linear element");
        let mut out = Monomial::one(n);
        for (v, &x) in e.iter().enumerate() {
            if x > 0 && !(tag_start..tag_start + ntags).contains(&v) {
                out.exponents_mut()[var_map[v]] += x;
            }
        }
        parts[k - tag_start].push((out, *c));
    }
    parts.into_iter().map(|t| Polynomial::from_terms(target, t)).collect()
}

/// Columns `v` with `M v ≡ 0` modulo `I` in every coordinate.
///
/// Tags `e_1..e_r` (rows) sort above `f_1..f_n` (columns); the module
/// generated by `Σ_i M_ij e_i + f_j` and `h e_i` (h ∈ I) is computed
/// position-over-term, and basis elements led by an `f` tag are free of
/// `e` terms, hence are kernel vectors.
pub fn kernel_mod_ideal(m: &ModuleMatrix, ideal: &Ideal) -> Result<ModuleMatrix> {
    let ring = m.ring();
    if !(Arc::ptr_eq(ideal.ring(), ring) || **ideal.ring() == **ring) {
        return Err(Error::RingMismatch("matrix and ideal in different rings".into()));
    }
    let (r, n) = (m.rows(), m.cols());
    let nx = ring.nvars();
    let ntags = r + n;
    let mut names: Vec<String> = (0..r).map(|i| format!("%e{i}")).collect();
    names.extend((0..n).map(|j| format!("%f{j}")));
    names.extend(ring.names().iter().cloned());
    let aux = PolyRing::from_parts(*ring.field(), names, MonomialOrder::elimination(ntags));
    let up: Vec<usize> = (0..nx).map(|v| v + ntags).collect();
    let tags: Vec<bool> = (0..ntags + nx).map(|v| v < ntags).collect();
    let tag = |k: usize| Monomial::variable(ntags + nx, k);

    let mut gens = Vec::new();
    for j in 0..n {
        let mut g = aux.monomial(tag(r + j), 1);
        for i in 0..r {
            let entry = m.get(i, j);
            if !entry.is_zero() {
                g = g.add(&entry.map_into(&aux, &up).mul_term(&tag(i), 1));
            }
        }
        gens.push(g);
    }
    for i in 0..r {
        for h in ideal.generators() {
            gens.push(h.map_into(&aux, &up).mul_term(&tag(i), 1));
        }
    }
    let basis = buchberger::groebner(&aux, &gens, Some(&tags));
    let mut down = vec![0; ntags + nx];
    for v in 0..nx {
        down[v + ntags] = v;
    }
    let mut columns = Vec::new();
    for g in &basis {
        let lm = g.leading_monomial().unwrap();
        let lead_tag = (0..ntags).find(|&k| lm.exponents()[k] > 0).unwrap();
        if lead_tag >= r {
            let comps = tag_components(g, 0, ntags, ring, &down);
            columns.push(comps[r..].to_vec());
        }
    }
    ModuleMatrix::from_columns(ring, n, columns)
}

/// Generators of `{ v : M v = 0 }`.
pub fn syzygy_basis(m: &ModuleMatrix) -> Result<ModuleMatrix> {
    kernel_mod_ideal(m, &Ideal::zero(m.ring()))
}
