//! Sparse exact row reduction over `ℚ` (fraction-free, on integer rows) and
//! over `F_p`.
//!
//! Both domains share one elimination driver and therefore one pivot order:
//! the pivot of a row is its largest column index. Over the integers a row is
//! only meaningful up to a nonzero scalar, so every row is divided by its
//! content after each combination to keep entries small.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::field::{mod_inverse, Field};

/// Sorted `(column, value)` pairs with no zero values.
pub type SparseRow<E> = Vec<(u32, E)>;

/// `(coefficient, scale, row)`: the element `coefficient · row / scale`.
pub type ScaledTerm<E> = (E, E, SparseRow<E>);

/// Scalars the elimination driver can work with.
pub trait Domain: Clone + Sync + Send {
    type Elem: Clone + Send + Sync + PartialEq + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn embed(&self, x: &BigInt) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// `(α, β)` with `α·target − β·pivot = 0`, `α` nonzero.
    fn elimination_factors(&self, pivot: &Self::Elem, target: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Canonical scaling of a relation row (content removal or monic pivot).
    fn normalize(&self, row: &mut SparseRow<Self::Elem>);

    /// Rescales a pair `(scale, row)` that represents `row / scale`.
    fn normalize_scaled(&self, scale: &mut Self::Elem, row: &mut SparseRow<Self::Elem>);

    /// Combines `Σ c_k · (row_k / scale_k)` into a single row, up to a nonzero
    /// overall factor.
    fn combine_scaled(&self, terms: Vec<ScaledTerm<Self::Elem>>) -> SparseRow<Self::Elem>;
}

/// `ℚ` via integer rows and fraction-free elimination.
#[derive(Clone, Copy, Debug, Default)]
pub struct Integers;

/// `F_p` with residues in `u64` (`p < 2^31`).
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    pub p: u64,
}

fn content(row: &SparseRow<BigInt>) -> BigInt {
    let mut g = BigInt::zero();
    for (_, x) in row {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    g
}

impl Domain for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn embed(&self, x: &BigInt) -> BigInt {
        x.clone()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn elimination_factors(&self, pivot: &BigInt, target: &BigInt) -> (BigInt, BigInt) {
        let g = pivot.gcd(target);
        let (mut alpha, mut beta) = (pivot / &g, target / &g);
        if alpha.is_negative() {
            alpha = -alpha;
            beta = -beta;
        }
        (alpha, beta)
    }

    fn normalize(&self, row: &mut SparseRow<BigInt>) {
        let g = content(row);
        let flip = row.last().is_some_and(|(_, x)| x.is_negative());
        if g.is_zero() || (g.is_one() && !flip) {
            return;
        }
        let g = if flip { -g } else { g };
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }

    fn normalize_scaled(&self, scale: &mut BigInt, row: &mut SparseRow<BigInt>) {
        let mut g = content(row).gcd(scale);
        if scale.is_negative() {
            g = -g;
        }
        if g.is_zero() || g.is_one() {
            return;
        }
        *scale = &*scale / &g;
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }

    fn combine_scaled(&self, terms: Vec<ScaledTerm<BigInt>>) -> SparseRow<BigInt> {
        let l = terms.iter().fold(BigInt::one(), |acc, (_, s, _)| acc.lcm(s));
        let mut out: SparseRow<BigInt> = Vec::new();
        for (c, s, row) in terms {
            let f = c * (&l / s);
            out = axpy(self, &self.one(), &out, &f, &row);
        }
        self.normalize(&mut out);
        out
    }
}

impl PrimeField {
    fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }
}

impl Domain for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn embed(&self, x: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = x.mod_floor(&p);
        u64::try_from(r).expect("residue fits in u64")
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a * b)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a + b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }

    fn elimination_factors(&self, pivot: &u64, target: &u64) -> (u64, u64) {
        let inv = mod_inverse(*pivot, self.p).expect("pivot is nonzero");
        (1, self.mul(target, &inv))
    }

    fn normalize(&self, row: &mut SparseRow<u64>) {
        if let Some(&(_, lead)) = row.last() {
            if lead != 1 {
                let inv = mod_inverse(lead, self.p).expect("nonzero");
                for (_, x) in row.iter_mut() {
                    *x = self.mul(x, &inv);
                }
            }
        }
    }

    fn normalize_scaled(&self, scale: &mut u64, row: &mut SparseRow<u64>) {
        if *scale != 1 {
            let inv = mod_inverse(*scale, self.p).expect("scale is nonzero");
            for (_, x) in row.iter_mut() {
                *x = self.mul(x, &inv);
            }
            *scale = 1;
        }
    }

    fn combine_scaled(&self, terms: Vec<ScaledTerm<u64>>) -> SparseRow<u64> {
        let mut out: SparseRow<u64> = Vec::new();
        for (c, s, row) in terms {
            let inv = mod_inverse(s, self.p).expect("scale is nonzero");
            out = axpy(self, &1, &out, &self.mul(&c, &inv), &row);
        }
        out
    }
}

/// `a·x + b·y` for sorted sparse rows, dropping zeros.
pub fn axpy<D: Domain>(
    d: &D,
    a: &D::Elem,
    x: &SparseRow<D::Elem>,
    b: &D::Elem,
    y: &SparseRow<D::Elem>,
) -> SparseRow<D::Elem> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, d.mul(a, &x[i].1)));
            i += 1;
        } else if take_y {
            out.push((y[j].0, d.mul(b, &y[j].1)));
            j += 1;
        } else {
            let v = d.add(&d.mul(a, &x[i].1), &d.mul(b, &y[j].1));
            if !d.is_zero(&v) {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out.retain(|(_, v)| !d.is_zero(v));
    out
}

/// Builds a sorted sparse row from unsorted `(column, value)` pairs, summing
/// duplicates.
pub fn collect_row<D: Domain>(d: &D, mut entries: Vec<(u32, D::Elem)>) -> SparseRow<D::Elem> {
    entries.sort_by_key(|(c, _)| *c);
    let mut out: SparseRow<D::Elem> = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv = d.add(lv, &v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !d.is_zero(v));
    out
}

/// Row echelon form with pivot = largest column of each row.
///
/// `insert` top-reduces a new row and keeps it if it is independent;
/// `finish` turns the rows into reduced echelon form so that each row holds
/// exactly one pivot column.
pub struct Echelon<D: Domain> {
    domain: D,
    /// `pivot_row[c]` is the row whose pivot is column `c`.
    pivot_row: Vec<Option<u32>>,
    rows: Vec<SparseRow<D::Elem>>,
    reduced: bool,
}

impl<D: Domain> Echelon<D> {
    pub fn new(domain: D, columns: usize) -> Self {
        Echelon {
            domain,
            pivot_row: vec![None; columns],
            rows: Vec::new(),
            reduced: false,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.pivot_row.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Eliminates pivot columns from the top of `row` until its largest column
    /// is free. Returns the top-reduced row (empty if dependent).
    fn top_reduce(&self, mut row: SparseRow<D::Elem>) -> SparseRow<D::Elem> {
        while let Some((col, val)) = row.last().cloned() {
            let Some(r) = self.pivot_row[col as usize] else {
                break;
            };
            let pivot = &self.rows[r as usize];
            let pval = &pivot.last().expect("pivot rows are nonempty").1;
            let (alpha, beta) = self.domain.elimination_factors(pval, &val);
            row = axpy(&self.domain, &alpha, &row, &self.domain.neg(&beta), pivot);
            self.domain.normalize(&mut row);
        }
        row
    }

    /// Adds a relation; returns true if it increased the rank.
    pub fn insert(&mut self, row: SparseRow<D::Elem>) -> bool {
        debug_assert!(!self.reduced, "insert after finish");
        let mut row = row;
        self.domain.normalize(&mut row);
        let row = self.top_reduce(row);
        match row.last() {
            None => false,
            Some(&(col, _)) => {
                self.pivot_row[col as usize] = Some(self.rows.len() as u32);
                self.rows.push(row);
                true
            }
        }
    }

    /// Back-substitutes so that no row contains another row's pivot column.
    pub fn finish(&mut self) {
        if self.reduced {
            return;
        }
        // increasing pivot order: lower pivots are already fully reduced
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r].last().map(|e| e.0));
        for r in order {
            let row = std::mem::take(&mut self.rows[r]);
            let (pcol, _) = row.last().cloned().expect("nonempty");
            let mut head = row;
            // reduce every non-top pivot column, highest first
            loop {
                let target = head
                    .iter()
                    .rev()
                    .filter(|(c, _)| *c != pcol)
                    .find(|(c, _)| self.pivot_row[*c as usize].is_some())
                    .cloned();
                let Some((col, val)) = target else { break };
                let other = &self.rows[self.pivot_row[col as usize].unwrap() as usize];
                let oval = &other.last().expect("nonempty").1;
                let (alpha, beta) = self.domain.elimination_factors(oval, &val);
                head = axpy(&self.domain, &alpha, &head, &self.domain.neg(&beta), other);
            }
            self.domain.normalize(&mut head);
            self.rows[r] = head;
        }
        self.reduced = true;
    }

    /// Reduces an element `row / scale` modulo the relations (after `finish`),
    /// returning an equivalent pair supported on free columns only.
    pub fn reduce_scaled(
        &self,
        mut scale: D::Elem,
        mut row: SparseRow<D::Elem>,
    ) -> (D::Elem, SparseRow<D::Elem>) {
        debug_assert!(self.reduced, "reduce_scaled before finish");
        let pivots: Vec<(u32, D::Elem)> = row
            .iter()
            .filter(|(c, _)| self.pivot_row[*c as usize].is_some())
            .cloned()
            .collect();
        for (col, _) in pivots {
            let Some(val) = row.iter().find(|(c, _)| *c == col).map(|e| e.1.clone()) else {
                continue;
            };
            let other = &self.rows[self.pivot_row[col as usize].unwrap() as usize];
            let oval = &other.last().expect("nonempty").1;
            let (alpha, beta) = self.domain.elimination_factors(oval, &val);
            // α·row − β·other ≡ α·row, so the represented element is scaled by α
            row = axpy(&self.domain, &alpha, &row, &self.domain.neg(&beta), other);
            scale = self.domain.mul(&scale, &alpha);
        }
        self.domain.normalize_scaled(&mut scale, &mut row);
        (scale, row)
    }
}

/// Rank of a list of rows.
pub fn rank<D: Domain>(domain: &D, columns: usize, rows: impl IntoIterator<Item = SparseRow<D::Elem>>) -> usize {
    let mut e = Echelon::new(domain.clone(), columns);
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Dispatches `f` on the elimination domain for `field`.
pub fn with_domain<R>(field: Field, f: impl DomainVisitor<Output = R>) -> R {
    match field {
        Field::Rational => f.visit(&Integers),
        Field::Prime(p) => f.visit(&PrimeField { p }),
    }
}

/// Rank-2 generic callback, since closures cannot be generic over `D`.
pub trait DomainVisitor {
    type Output;
    fn visit<D: Domain>(self, domain: &D) -> Self::Output;
}
