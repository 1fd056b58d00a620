//! Dynkin / extended Dynkin / wild classification, positive roots, Coxeter
//! numbers, Nakayama permutations and regularity of weight vectors.
//!
//! The verdict comes from the definiteness of the symmetrized Tits form
//! `2I - C`, never from shape matching. Shape matching is used only afterwards,
//! to relabel a Dynkin quiver onto its canonical diagram.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::field::WeightVector;
use crate::matrix::IntMatrix;
use crate::quiver::Quiver;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynkinError {
    #[error("quiver is not Dynkin ({0})")]
    NotDynkin(QuiverClass),
    #[error("weight vector has {got} entries, quiver has {expected} vertices")]
    WeightLength { expected: usize, got: usize },
}

/// Simply-laced Dynkin types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
}

impl DynkinType {
    pub fn rank(self) -> usize {
        match self {
            DynkinType::A(n) | DynkinType::D(n) => n,
            DynkinType::E6 => 6,
            DynkinType::E7 => 7,
            DynkinType::E8 => 8,
        }
    }

    /// Edges of the canonical diagram on labels `1..=n`.
    ///
    /// * `A_n`: the path `1 - 2 - ... - n`.
    /// * `D_n`: the path `1 - ... - (n-2)` with fork tips `n-1` and `n` on `n-2`.
    /// * `E_n`: the path `1 - 3 - 4 - ... - n` with `2` attached to `4`.
    pub fn canonical_edges(self) -> Vec<(usize, usize)> {
        match self {
            DynkinType::A(n) => (1..n).map(|k| (k, k + 1)).collect(),
            DynkinType::D(n) => {
                let mut e: Vec<_> = (1..n - 2).map(|k| (k, k + 1)).collect();
                e.push((n - 2, n - 1));
                e.push((n - 2, n));
                e
            }
            DynkinType::E6 | DynkinType::E7 | DynkinType::E8 => {
                let n = self.rank();
                let mut e = vec![(1, 3), (2, 4)];
                e.extend((3..n).map(|k| (k, k + 1)));
                e
            }
        }
    }

    /// The canonical diagram oriented from smaller to larger label.
    pub fn quiver(self) -> Quiver {
        let edges = self.canonical_edges();
        let names: Vec<String> = (1..=edges.len()).map(|k| format!("a{k}")).collect();
        let triples: Vec<(&str, usize, usize)> = edges
            .iter()
            .zip(&names)
            .map(|(&(s, t), name)| (name.as_str(), s, t))
            .collect();
        Quiver::from_edges(self.rank(), &triples).expect("canonical diagrams are valid quivers")
    }

    /// Vertex involution of the Nakayama automorphism on canonical labels
    /// (1-based in, 1-based out).
    pub fn nakayama_involution(self, label: usize) -> usize {
        match self {
            DynkinType::A(n) => n + 1 - label,
            DynkinType::D(n) if n % 2 == 1 => match label {
                l if l == n - 1 => n,
                l if l == n => n - 1,
                l => l,
            },
            DynkinType::E6 => match label {
                1 => 6,
                6 => 1,
                3 => 5,
                5 => 3,
                l => l,
            },
            _ => label,
        }
    }

    /// All types `A1..=A8`, `D4..=D8`, `E6..=E8`.
    pub fn small_types() -> Vec<DynkinType> {
        let mut v: Vec<_> = (1..=8).map(DynkinType::A).collect();
        v.extend((4..=8).map(DynkinType::D));
        v.extend([DynkinType::E6, DynkinType::E7, DynkinType::E8]);
        v
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E6 => write!(f, "E6"),
            DynkinType::E7 => write!(f, "E7"),
            DynkinType::E8 => write!(f, "E8"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverClass {
    /// `relabel[i]` is the canonical (1-based) label of vertex `i`.
    Dynkin { ty: DynkinType, relabel: Vec<usize> },
    ExtendedDynkin,
    Wild,
}

impl QuiverClass {
    pub fn is_dynkin(&self) -> bool {
        matches!(self, QuiverClass::Dynkin { .. })
    }

    pub fn dynkin_type(&self) -> Option<DynkinType> {
        match self {
            QuiverClass::Dynkin { ty, .. } => Some(*ty),
            _ => None,
        }
    }
}

impl fmt::Display for QuiverClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverClass::Dynkin { ty, .. } => write!(f, "Dynkin({ty})"),
            QuiverClass::ExtendedDynkin => write!(f, "ExtendedDynkin"),
            QuiverClass::Wild => write!(f, "Wild"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Definiteness {
    Positive,
    Semidefinite,
    Indefinite,
}

/// Sign analysis of a symmetric integer matrix by symmetric elimination over ℚ.
///
/// A zero pivot in a positive semidefinite matrix forces its whole remaining
/// row to vanish, so meeting a zero pivot with a nonzero row (or a negative
/// pivot) proves indefiniteness.
fn definiteness(m: &IntMatrix) -> Definiteness {
    let n = m.size();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| BigRational::from_integer(m.get(i, j).clone())).collect())
        .collect();
    let mut degenerate = false;
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return Definiteness::Indefinite;
        }
        if pivot.is_zero() {
            if (k + 1..n).any(|j| !a[k][j].is_zero()) {
                return Definiteness::Indefinite;
            }
            degenerate = true;
            continue;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let f = &a[i][k] / &pivot;
            for j in k..n {
                let delta = &f * &a[k][j];
                a[i][j] -= delta;
            }
        }
    }
    if degenerate {
        Definiteness::Semidefinite
    } else {
        Definiteness::Positive
    }
}

/// Symmetric matrix `2I - C` of the doubled Tits form (`dᵗ(2I - C)d = 2 q(d)`).
pub fn tits_matrix(q: &Quiver) -> IntMatrix {
    &IntMatrix::scalar(q.vertex_count(), 2) - &q.adjacency()
}

pub fn classify(q: &Quiver) -> QuiverClass {
    match definiteness(&tits_matrix(q)) {
        Definiteness::Positive => {
            let (ty, relabel) =
                canonical_relabel(q).expect("positive definite Tits form implies an ADE tree");
            QuiverClass::Dynkin { ty, relabel }
        }
        Definiteness::Semidefinite => QuiverClass::ExtendedDynkin,
        Definiteness::Indefinite => QuiverClass::Wild,
    }
}

/// Finds an isomorphism of the underlying graph onto a canonical ADE diagram.
///
/// Returns `None` if the graph is not a simply-laced ADE tree.
pub fn canonical_relabel(q: &Quiver) -> Option<(DynkinType, Vec<usize>)> {
    let n = q.vertex_count();
    if q.arrows().len() + 1 != n {
        return None;
    }
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); n];
    for a in q.arrows() {
        if nbrs[a.tail].contains(&a.head) {
            return None;
        }
        nbrs[a.tail].push(a.head);
        nbrs[a.head].push(a.tail);
    }
    for l in nbrs.iter_mut() {
        l.sort_unstable();
    }
    // walks from `start` away from `from` until a leaf
    let arm = |from: usize, start: usize| -> Option<Vec<usize>> {
        let mut path = vec![start];
        let (mut prev, mut cur) = (from, start);
        loop {
            let next: Vec<usize> = nbrs[cur].iter().copied().filter(|&x| x != prev).collect();
            match next.len() {
                0 => return Some(path),
                1 => {
                    prev = cur;
                    cur = next[0];
                    path.push(cur);
                }
                _ => return None,
            }
        }
    };

    let branch: Vec<usize> = (0..n).filter(|&v| nbrs[v].len() >= 3).collect();
    let mut relabel = vec![0usize; n];
    let ty = match branch.as_slice() {
        [] => {
            let start = (0..n).find(|&v| nbrs[v].len() <= 1)?;
            let mut order = vec![start];
            if n > 1 {
                order.extend(arm(start, nbrs[start][0])?);
            }
            for (k, &v) in order.iter().enumerate() {
                relabel[v] = k + 1;
            }
            DynkinType::A(n)
        }
        [b] if nbrs[*b].len() == 3 => {
            let b = *b;
            let mut arms: Vec<Vec<usize>> = nbrs[b]
                .iter()
                .map(|&s| arm(b, s))
                .collect::<Option<Vec<_>>>()?;
            arms.sort_by_key(|a| a.len());
            let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
            match lens.as_slice() {
                [1, 1, k] => {
                    // D_n with n = k + 3: long arm runs n-3 down to 1
                    let n_d = k + 3;
                    relabel[b] = n_d - 2;
                    for (idx, &v) in arms[2].iter().enumerate() {
                        relabel[v] = n_d - 3 - idx;
                    }
                    relabel[arms[0][0]] = n_d - 1;
                    relabel[arms[1][0]] = n_d;
                    DynkinType::D(n_d)
                }
                [1, 2, k @ 2..=4] => {
                    relabel[b] = 4;
                    relabel[arms[0][0]] = 2;
                    relabel[arms[1][0]] = 3;
                    relabel[arms[1][1]] = 1;
                    for (idx, &v) in arms[2].iter().enumerate() {
                        relabel[v] = 5 + idx;
                    }
                    match k {
                        2 => DynkinType::E6,
                        3 => DynkinType::E7,
                        _ => DynkinType::E8,
                    }
                }
                _ => return None,
            }
        }
        _ => return None,
    };

    // confirm the map is an isomorphism onto the stored diagram
    let mut mapped: BTreeSet<(usize, usize)> = q
        .arrows()
        .iter()
        .map(|a| {
            let (x, y) = (relabel[a.tail], relabel[a.head]);
            (x.min(y), x.max(y))
        })
        .collect();
    for e in ty.canonical_edges() {
        if !mapped.remove(&e) {
            return None;
        }
    }
    mapped.is_empty().then_some((ty, relabel))
}

/// Positive roots and Coxeter number of a Dynkin quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootData {
    pub positive_roots: Vec<Vec<i64>>,
    pub coxeter_number: usize,
}

/// Largest coefficient of any ADE highest root (attained in E8).
pub const ROOT_COEFFICIENT_BOUND: i64 = 6;

/// Positive roots of a Dynkin quiver, grown from the simple roots by adding one
/// simple root at a time while the Tits form stays equal to one.
///
/// Every non-simple positive root has a simple root whose removal leaves a
/// positive root, so this reaches all of them. The Coxeter number is
/// `h = 2 |Φ⁺| / r`.
pub fn root_data(q: &Quiver) -> Result<RootData, DynkinError> {
    let class = classify(q);
    if !class.is_dynkin() {
        return Err(DynkinError::NotDynkin(class));
    }
    let r = q.vertex_count();
    let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let mut e = vec![0; r];
            e[i] = 1;
            e
        })
        .collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for d in frontier {
            if !roots.insert(d.clone()) {
                continue;
            }
            for i in 0..r {
                let mut e = d.clone();
                e[i] += 1;
                if e[i] <= ROOT_COEFFICIENT_BOUND && q.tits_form(&e) == 1 && !roots.contains(&e) {
                    next.push(e);
                }
            }
        }
        frontier = next;
    }
    let mut positive_roots: Vec<Vec<i64>> = roots.into_iter().collect();
    positive_roots.sort_by_key(|d| d.iter().sum::<i64>());
    let coxeter_number = 2 * positive_roots.len() / r;
    debug_assert_eq!(coxeter_number * r, 2 * positive_roots.len());
    Ok(RootData {
        positive_roots,
        coxeter_number,
    })
}

/// The Nakayama vertex permutation and its matrix `P = (δ_{ν(i) j})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NakayamaData {
    /// 0-based images: `permutation[i] = ν(i)`.
    pub permutation: Vec<usize>,
    pub matrix: IntMatrix,
}

impl NakayamaData {
    pub fn from_permutation(permutation: Vec<usize>) -> Self {
        let matrix = IntMatrix::permutation(&permutation);
        NakayamaData {
            permutation,
            matrix,
        }
    }
}

/// Nakayama permutation of a Dynkin quiver, transported from the canonical
/// diagram through the relabeling found by [`classify`].
pub fn nakayama_matrix(q: &Quiver) -> Result<NakayamaData, DynkinError> {
    let (ty, relabel) = match classify(q) {
        QuiverClass::Dynkin { ty, relabel } => (ty, relabel),
        other => return Err(DynkinError::NotDynkin(other)),
    };
    let n = q.vertex_count();
    let mut vertex_of_label = vec![0usize; n + 1];
    for (v, &l) in relabel.iter().enumerate() {
        vertex_of_label[l] = v;
    }
    let permutation = (0..n)
        .map(|v| vertex_of_label[ty.nakayama_involution(relabel[v])])
        .collect();
    Ok(NakayamaData::from_permutation(permutation))
}

/// Every entry of `v` is nonzero.
pub fn is_sincere(v: &WeightVector) -> bool {
    v.is_sincere()
}

/// `Σ v_i d_i ≠ 0` in `v`'s field for every positive root `d`.
pub fn is_regular(q: &Quiver, v: &WeightVector, roots: &RootData) -> Result<bool, DynkinError> {
    let class = classify(q);
    if !class.is_dynkin() {
        return Err(DynkinError::NotDynkin(class));
    }
    if v.len() != q.vertex_count() {
        return Err(DynkinError::WeightLength {
            expected: q.vertex_count(),
            got: v.len(),
        });
    }
    Ok(roots.positive_roots.iter().all(|d| v.pairing_is_nonzero(d)))
}
