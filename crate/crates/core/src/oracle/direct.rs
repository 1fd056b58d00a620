//! The literal definition: list every monomial of degree `n`, every product
//! `m·r·m'`, and take ranks block by block. Exponentially slower than the
//! engine; kept as a second opinion at low degrees.

use std::collections::HashMap;

use crate::matrix::IntMatrix;

use super::linalg::{collect_row, rank, Domain, SparseRow};
use super::presentation::{GradedPresentation, Monomial};
use super::{OracleConfig, OracleError};

/// `monomials[n]` grouped by `(source, target)`.
struct MonomialTable {
    by_block: Vec<Vec<Vec<Monomial>>>,
}

fn central_exponents(degrees: &[usize], budget: usize) -> Vec<(Vec<u32>, usize)> {
    let mut out = vec![(Vec::new(), 0usize)];
    for &d in degrees {
        let mut next = Vec::new();
        for (e, w) in out {
            let mut k = 0u32;
            while w + k as usize * d <= budget {
                let mut e2 = e.clone();
                e2.push(k);
                next.push((e2, w + k as usize * d));
                k += 1;
            }
        }
        out = next;
    }
    out
}

impl MonomialTable {
    fn new(pres: &GradedPresentation, max_degree: usize, cap: usize) -> Result<Self, OracleError> {
        let r = pres.vertex_count();
        let arrows = pres.arrows();
        // paths[len][i * r + j]
        let mut paths: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); r * r]];
        for i in 0..r {
            paths[0][i * r + i].push(Vec::new());
        }
        for len in 1..=max_degree {
            let mut layer = vec![Vec::new(); r * r];
            for i in 0..r {
                for k in 0..r {
                    for p in &paths[len - 1][i * r + k] {
                        for (a, arrow) in arrows.iter().enumerate() {
                            if arrow.tail == k {
                                let mut q = p.clone();
                                q.push(a);
                                layer[i * r + arrow.head].push(q);
                            }
                        }
                    }
                }
            }
            paths.push(layer);
        }
        let degrees: Vec<usize> = pres.central().iter().map(|c| c.degree).collect();
        let exps = central_exponents(&degrees, max_degree);
        let mut by_block = Vec::with_capacity(max_degree + 1);
        for n in 0..=max_degree {
            let mut blocks = vec![Vec::new(); r * r];
            let mut count = 0usize;
            for (e, w) in exps.iter().filter(|(_, w)| *w <= n) {
                for (t, block) in blocks.iter_mut().enumerate() {
                    for p in &paths[n - w][t] {
                        block.push(Monomial {
                            source: t / r,
                            arrows: p.clone(),
                            central: e.clone(),
                        });
                        count += 1;
                    }
                }
            }
            if count > cap {
                return Err(OracleError::DegreeOverflow { degree: n, count, cap });
            }
            by_block.push(blocks);
        }
        Ok(MonomialTable { by_block })
    }
}

fn product(a: &Monomial, b: &Monomial) -> Monomial {
    let mut arrows = a.arrows.clone();
    arrows.extend(&b.arrows);
    Monomial {
        source: a.source,
        arrows,
        central: a.central.iter().zip(&b.central).map(|(x, y)| x + y).collect(),
    }
}

pub(super) fn slice_dims<D: Domain>(
    pres: &GradedPresentation,
    domain: &D,
    max_degree: usize,
    config: &OracleConfig,
) -> Result<Vec<IntMatrix>, OracleError> {
    let r = pres.vertex_count();
    let table = MonomialTable::new(pres, max_degree, config.monomial_cap)?;
    let mut out = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let dims = config.execution.map_indices(r * r, |t| {
            let (i, j) = (t / r, t % r);
            let basis = &table.by_block[n][t];
            let index: HashMap<&Monomial, u32> = basis.iter().enumerate().map(|(k, m)| (m, k as u32)).collect();
            let mut rows: Vec<SparseRow<D::Elem>> = Vec::new();
            for (ri, rel) in pres.relations().iter().enumerate() {
                let (d, a, b) = pres.relation_shape(ri);
                if d > n {
                    continue;
                }
                for p in 0..=n - d {
                    let q = n - d - p;
                    for left in &table.by_block[p][i * r + a] {
                        for right in &table.by_block[q][b * r + j] {
                            let entries = rel
                                .terms
                                .iter()
                                .map(|term| {
                                    let m = product(&product(left, &term.monomial), right);
                                    (index[&m], domain.embed(&term.coeff))
                                })
                                .collect();
                            let row = collect_row(domain, entries);
                            if !row.is_empty() {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
            basis.len() - rank(domain, basis.len(), rows)
        });
        let mut m = IntMatrix::zero(r);
        for (t, d) in dims.into_iter().enumerate() {
            m.set(t / r, t % r, d as i64);
        }
        out.push(m);
    }
    Ok(out)
}
